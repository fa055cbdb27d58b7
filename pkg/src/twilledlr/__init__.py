"""Exact verification of Lie-Rinehart pairs, their bigraded bracket
algebras, generators and truncated universal objects over Q-algebras."""

__version__ = "0.1.0"
