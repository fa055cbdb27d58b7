"""Odd operators generating the bracket: round trips, exactness versus
flatness, the weak commutator equivalences, volume-form generators,
transport to the dual side, and the full solution family."""

import pytest

from twilledlr import catalog
from twilledlr.bv import (affine_spaces_equal, exact_generator_family,
                          exactness_flatness_harness, generator_check,
                          generator_from_connection, generator_square,
                          invariance_check, is_exact,
                          koszul_derivation_check,
                          right_connection_from_generator, transport_iso,
                          volume_connection, volume_family,
                          volume_generator, volume_invariance,
                          weak_dbv_check)
from twilledlr.gerstenhaber import Carrier
from twilledlr.lie_rinehart import is_flat, right_to_connection
from twilledlr.scalars import mat_is_zero

VOLUME = [n for n in catalog.names() if catalog.get(n).volume is not None]
SMALL_VOLUME = [n for n in VOLUME
                if Carrier(catalog.get(n).twilled).total_dim() <= 12]


def _flat_connections(entry):
    out = dict(entry.connections)
    if entry.volume is not None:
        out["volume"] = volume_connection(entry.twilled, entry.volume)
    return {k: v for k, v in out.items() if is_flat(v)}


@pytest.mark.parametrize("name", ["jet-line", "matched-rank1",
                                  "jet-line-invariant", "solvable-pair"])
def test_generator_identity_and_roundtrips(name):
    entry = catalog.get(name)
    T = entry.twilled
    for C in _flat_connections(entry).values():
        G = generator_from_connection(T, C)
        assert all(ok for _, ok, _ in generator_check(G))
        # generator -> right connection -> connection recovers the table
        Rc = right_connection_from_generator(G)
        assert right_to_connection(Rc).table == C.table
        # and rebuilding the generator reproduces every matrix
        G2 = generator_from_connection(T, right_to_connection(Rc))
        assert all(G2.maps[k].matrix == G.maps[k].matrix for k in G.maps)


def test_exact_iff_flat_both_directions():
    entry = catalog.get("nonflat-witness")
    h = exactness_flatness_harness(entry.twilled,
                                   entry.connections["nonflat"])
    assert h["agree"] and not h["flat"] and not h["exact"]
    assert any(not mat_is_zero(m)
               for m in generator_square(h["generator"]).values())

    entry = catalog.get("jet-line")
    for C in entry.connections.values():
        h = exactness_flatness_harness(entry.twilled, C)
        assert h["agree"] and h["flat"] and h["exact"]


@pytest.mark.parametrize("name", ["jet-line", "matched-rank1",
                                  "jet-line-invariant"])
def test_koszul_bracket_derivation_for_exact_generators(name):
    entry = catalog.get(name)
    for C in _flat_connections(entry).values():
        G = generator_from_connection(entry.twilled, C)
        assert is_exact(G)
        assert all(ok for _, ok, _ in koszul_derivation_check(G))


def test_weak_commutator_equivalences_both_branches():
    entry = catalog.get("jet-line")
    T = entry.twilled
    good = weak_dbv_check(T, entry.connections["invariant"])
    assert good["invariant"] and good["commutator-zero"]
    assert good["5.4.2-agree"] and good["5.4.5-agree"]
    bad = weak_dbv_check(T, entry.connections["noninvariant"])
    assert not bad["invariant"] and not bad["commutator-zero"]
    assert bad["5.4.2-agree"] and bad["5.4.5-agree"]
    assert not invariance_check(T, entry.connections["noninvariant"])[0][1]


@pytest.mark.parametrize("name", VOLUME)
def test_volume_generator_exact_and_commutes(name):
    entry = catalog.get(name)
    res = volume_generator(entry.twilled, entry.volume)
    assert res["exact"]
    assert res["commutes"], res["witness"]
    labels = invariance_check(entry.twilled, res["connection"])
    assert all(ok for _, ok, _ in labels)


def test_volume_generator_rejects_noninvariant_volume():
    T = catalog.get("jet-line").twilled
    omega = T.algebra.unit()
    assert not volume_invariance(T, omega)
    with pytest.raises(ValueError):
        volume_generator(T, omega)


@pytest.mark.parametrize("name", ["jet-line", "matched-rank1",
                                  "jet-line-invariant", "solvable-pair",
                                  "abelian"])
def test_transport_intertwines(name):
    entry = catalog.get(name)
    for C in _flat_connections(entry).values():
        ti = transport_iso(entry.twilled, C)
        assert all(ok for _, ok, _ in ti["report"]), ti["report"]


@pytest.mark.parametrize("name", SMALL_VOLUME)
def test_volume_family_matches_brute_force(name):
    entry = catalog.get(name)
    T = entry.twilled
    ent_v, p_v, dirs_v = volume_family(T, entry.volume)
    brute = exact_generator_family(Carrier(T))
    assert brute is not None
    ent_b, p_b, dirs_b = brute
    assert ent_v == ent_b
    assert affine_spaces_equal(p_v, dirs_v, p_b, dirs_b)
