"""Command line interface.

Runs the identity harnesses on a built-in instance or a JSON structure
file and reports per-identity verdicts, labeled by the identity numbers
used throughout the library reports.  Exit codes: 0 all checked
identities hold, 1 an identity failed (named, with witness), 2 input
error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import catalog
from .scalars import (CommAlgebra, Derivation, Q0, algebra_validate,
                      mat_is_zero, mat_mul)
from .forms import FreeModule
from .lie_rinehart import (Connection, RightConnection, connection_to_right,
                           lr_validate, make_lr, right_to_connection)
from .twilled import (AlmostTwilled, almost_twilled_validate, compat_check,
                      theorem115_harness)
from .gerstenhaber import (Carrier, bracket_properties, cor49_harness,
                           dG_harness, dg_failure_condition, dg_lie_harness,
                           dg_lie_failure_condition)
from .bv import (exact_generator_family, exactness_flatness_harness,
                 affine_spaces_equal, generator_check,
                 generator_from_connection, is_exact, invariance_check,
                 koszul_derivation_check, right_connection_from_generator,
                 transport_iso, volume_connection, volume_family,
                 volume_generator, volume_invariance, weak_dbv_check)
from .universal import (NotTwilledError, flatness_check_u, rinehart_complex,
                        standard_complex)
from .homology import duality_dims

ORACLE_DIM_LIMIT = 12


class ParseError(ValueError):
    pass


class MissingSection(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class UnknownExample(ParseError):
    pass


# ---------------------------------------------------------------------------
# exact (de)serialization; every number is a "p/q" string
# ---------------------------------------------------------------------------

def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _parse_frac(s, where: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError(f"bad rational {s!r} in {where}")


def _avec_json(a) -> list:
    return [_frac_str(c) for c in a]


def _avec_parse(lst, dim: int, where: str) -> tuple:
    if not isinstance(lst, list) or len(lst) != dim:
        raise ParseError(f"expected {dim} coefficients in {where}")
    return tuple(_parse_frac(c, where) for c in lst)


def _matrix_json(m) -> list:
    return [[_frac_str(c) for c in row] for row in m]


def _lr_to_json(L) -> dict:
    return {
        "rank": L.rank,
        "names": list(L.module.basis_names) if L.module.basis_names else [],
        "anchor": [_matrix_json(d.matrix) for d in L.anchor],
        "bracket": [[[_avec_json(L.bracket_table[i][j][k])
                      for k in range(L.rank)]
                     for j in range(L.rank)] for i in range(L.rank)],
    }


def serialize_structure(T: AlmostTwilled, volume=None, connections=None,
                        right_connection=None, cutoff=None) -> dict:
    A = T.algebra
    mult = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k, c in enumerate(A.mult_table[i][j]):
                if c != 0:
                    mult.append([i, j, k, _frac_str(c)])
    r1, r2 = T.left.rank, T.right.rank
    d = {
        "algebra": {"dim": A.dim, "names": list(A.basis_names),
                    "unit": A.unit_index, "mult": mult},
        "modules": {"left": _lr_to_json(T.left),
                    "right": _lr_to_json(T.right)},
        "actions": {
            "act_lr": [[[_avec_json(T.act_lr[i][j][s]) for s in range(r2)]
                        for j in range(r2)] for i in range(r1)],
            "act_rl": [[[_avec_json(T.act_rl[j][i][s]) for s in range(r1)]
                        for i in range(r1)] for j in range(r2)],
        },
    }
    if volume is not None:
        d["volume"] = _avec_json(volume)
    if connections:
        d["connections"] = {
            name: [_avec_json(C.table[i][0][0]) for i in range(r1)]
            for name, C in connections.items()}
    if right_connection is not None:
        d["right_connection"] = [_avec_json(v)
                                 for v in right_connection.values]
    if cutoff is not None:
        d["cutoff"] = cutoff
    return d


def _parse_lr(A: CommAlgebra, sec: dict, side: str):
    for key in ("rank", "anchor", "bracket"):
        if key not in sec:
            raise MissingSection(f"modules.{side}.{key}")
    rank = sec["rank"]
    if not isinstance(rank, int) or rank < 0:
        raise ParseError(f"modules.{side}.rank must be a nonnegative integer")
    names = tuple(sec.get("names", ()))
    if len(sec["anchor"]) != rank:
        raise ParseError(f"modules.{side}.anchor needs {rank} matrices")
    anchor = []
    for i, mat in enumerate(sec["anchor"]):
        if len(mat) != A.dim or any(len(row) != A.dim for row in mat):
            raise IndexOutOfRange(f"modules.{side}.anchor[{i}] shape")
        anchor.append(Derivation(A, tuple(
            tuple(_parse_frac(c, f"modules.{side}.anchor[{i}]") for c in row)
            for row in mat)))
    br = sec["bracket"]
    if len(br) != rank or any(len(row) != rank for row in br):
        raise IndexOutOfRange(f"modules.{side}.bracket shape")
    bracket = [[tuple(_avec_parse(br[i][j][k], A.dim,
                                  f"modules.{side}.bracket[{i}][{j}]")
                      for k in range(rank))
                for j in range(rank)] for i in range(rank)]
    return make_lr(A, rank, anchor, bracket, names)


def parse_structure(d: dict) -> dict:
    if not isinstance(d, dict):
        raise ParseError("structure file must be a JSON object")
    for key in ("algebra", "modules", "actions"):
        if key not in d:
            raise MissingSection(key)
    alg = d["algebra"]
    for key in ("dim", "mult"):
        if key not in alg:
            raise MissingSection(f"algebra.{key}")
    dim = alg["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError("algebra.dim must be a positive integer")
    names = tuple(alg.get("names", tuple(f"e{i}" for i in range(dim))))
    table = [[[Q0] * dim for _ in range(dim)] for _ in range(dim)]
    for ent in alg["mult"]:
        if len(ent) != 4:
            raise ParseError(f"algebra.mult entry {ent!r}")
        i, j, k, val = ent
        if not all(isinstance(x, int) and 0 <= x < dim for x in (i, j, k)):
            raise IndexOutOfRange(f"algebra.mult entry {ent!r}")
        table[i][j][k] = _parse_frac(val, "algebra.mult")
    A = CommAlgebra(dim, names,
                    tuple(tuple(tuple(row) for row in block)
                          for block in table),
                    alg.get("unit", 0))
    if not (0 <= A.unit_index < dim):
        raise IndexOutOfRange("algebra.unit")

    mods = d["modules"]
    for side in ("left", "right"):
        if side not in mods:
            raise MissingSection(f"modules.{side}")
    left = _parse_lr(A, mods["left"], "left")
    right = _parse_lr(A, mods["right"], "right")
    r1, r2 = left.rank, right.rank

    acts = d["actions"]
    for key in ("act_lr", "act_rl"):
        if key not in acts:
            raise MissingSection(f"actions.{key}")

    def parse_table(raw, rows, cols, mod_rank, where):
        if len(raw) != rows or any(len(r) != cols for r in raw):
            raise IndexOutOfRange(f"actions.{where} shape")
        return tuple(tuple(
            tuple(_avec_parse(raw[i][j][s], A.dim, f"actions.{where}")
                  for s in range(mod_rank))
            for j in range(cols)) for i in range(rows))

    act_lr = parse_table(acts["act_lr"], r1, r2, r2, "act_lr")
    act_rl = parse_table(acts["act_rl"], r2, r1, r1, "act_rl")
    T = AlmostTwilled(left, right, act_lr, act_rl)

    out = {"twilled": T, "volume": None, "connections": {},
           "right_connection": None, "cutoff": d.get("cutoff")}
    if "volume" in d:
        out["volume"] = _avec_parse(d["volume"], A.dim, "volume")
    if "connections" in d:
        volM = FreeModule(A, 1, ("vol",))
        for name, rows in d["connections"].items():
            if len(rows) != r1:
                raise IndexOutOfRange(f"connections.{name}")
            table = tuple(
                ((_avec_parse(rows[i], A.dim, f"connections.{name}"),),)
                for i in range(r1))
            out["connections"][name] = Connection(left, volM, table)
    if "right_connection" in d:
        rows = d["right_connection"]
        if len(rows) != r1:
            raise IndexOutOfRange("right_connection")
        out["right_connection"] = RightConnection(left, tuple(
            _avec_parse(rows[i], A.dim, "right_connection")
            for i in range(r1)))
    return out


def load_structure(arg: str) -> dict:
    if arg in catalog.names():
        e = catalog.get(arg)
        return {"twilled": e.twilled, "volume": e.volume,
                "connections": dict(e.connections),
                "right_connection": None, "cutoff": None, "name": e.name}
    if arg.endswith(".json"):
        try:
            with open(arg, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as ex:
            raise ParseError(f"cannot read {arg}: {ex}")
        except json.JSONDecodeError as ex:
            raise ParseError(f"{arg}: {ex}")
        bundle = parse_structure(raw)
        bundle["name"] = arg
        return bundle
    raise UnknownExample(
        f"unknown instance {arg!r}; built-in names: {', '.join(catalog.names())}"
    )


# ---------------------------------------------------------------------------
# subcommand runners; each appends (label, ok, witness) triples
# ---------------------------------------------------------------------------

class Session:
    def __init__(self, bundle, args):
        self.bundle = bundle
        self.T = bundle["twilled"]
        self.args = args
        self.results = {}   # section -> list of (label, ok, witness)

    def rng(self):
        return random.Random(self.args.seed)

    def add(self, section, triples):
        self.results.setdefault(section, []).extend(triples)

    def failures(self):
        out = []
        for section, triples in self.results.items():
            for label, ok, witness in triples:
                if not ok:
                    out.append((section, label, witness))
        return out

    def is_twilled(self):
        return all(ok for _, ok, _ in compat_check(self.T, self.rng()))

    # -- connections available for the generator pipeline ------------------
    def connection_pool(self):
        pool = dict(self.bundle["connections"])
        vol = self.bundle["volume"]
        A = self.T.algebra
        if vol is not None and A.is_invertible(vol):
            pool.setdefault("volume", volume_connection(self.T, vol))
        if not pool:
            pool["unit-volume"] = volume_connection(self.T, A.unit())
        if self.bundle["right_connection"] is not None:
            pool.setdefault(
                "right", right_to_connection(self.bundle["right_connection"]))
        return pool

    def run_validate(self):
        A = self.T.algebra
        self.add("algebra", algebra_validate(A))
        self.add("structure", almost_twilled_validate(self.T, self.rng()))

    def run_twilled(self):
        rep = theorem115_harness(self.T, self.rng())
        self.add("compat", rep["compat"])
        self.add("sum", [("sum-" + l, ok, w) for l, ok, w in rep["sum"]])
        self.add("bicomplex", rep["bicomplex"])
        self.add("theorem-1.15", [("1.15-agree", rep["agree"], rep["verdicts"])])
        if rep["betti_match"] is not None:
            self.add("theorem-6.15",
                     [("6.15", rep["betti_match"],
                       (rep["betti_total"], rep["betti_sum"]))])

    def run_dg(self):
        rep = dg_lie_harness(self.T)
        self.add("dg-lie", [(l, ok, w) for l, (ok, w) in rep.items()])
        cond = dg_lie_failure_condition(rep)
        if cond is not None:
            self.add("dg-lie", [("3.2-names-" + cond, False, None)])

    def run_gerst(self):
        rep = dG_harness(self.T)
        self.add("gerstenhaber", [(l, ok, w) for l, (ok, w) in rep.items()])
        cond = dg_failure_condition(rep)
        if cond is not None and cond != "other":
            self.add("gerstenhaber", [("4.4-names-" + cond, False, None)])
        self.add("bracket", bracket_properties(self.T, self.rng()))

    def run_bialg(self):
        rep = cor49_harness(self.T, self.rng())
        self.add("bialgebra", rep["bialgebra"])
        self.add("bialgebra", [("4.9-agree", rep["agree"],
                                [l for l, ok, _ in rep["compat"] if not ok])])
        if "cocycle-oracle" in rep:
            self.add("bialgebra",
                     [("4.7.2-oracle", rep["oracle-agrees"],
                       rep["cocycle-oracle"][1])])

    def _require_twilled(self, section):
        bad = [(l, ok, w) for l, ok, w in compat_check(self.T, self.rng())
               if not ok]
        if bad:
            self.add(section, bad)
            return False
        return True

    def run_bv(self):
        if not self._require_twilled("bv"):
            return
        T = self.T
        car = Carrier(T)
        for name, C in self.connection_pool().items():
            ef = exactness_flatness_harness(T, C)
            G = ef["generator"]
            self.add(f"bv[{name}]",
                     [("5.1",) + tuple(generator_check(G)[0][1:])])
            self.add(f"bv[{name}]",
                     [("flat-iff-exact", ef["agree"],
                       (ef["flat"], ef["exact"]))])
            # round trips
            Rc = connection_to_right(C)
            C2 = right_to_connection(Rc)
            self.add(f"bv[{name}]",
                     [("7.9-roundtrip", C2.table == C.table, None)])
            G2 = generator_from_connection(
                T, right_to_connection(right_connection_from_generator(G)))
            same = all(G.maps[k].matrix == G2.maps[k].matrix for k in G.maps)
            self.add(f"bv[{name}]", [("7.6-roundtrip", same, None)])
            if ef["exact"]:
                self.add(f"bv[{name}]", koszul_derivation_check(G))
            wd = weak_dbv_check(T, C)
            self.add(f"bv[{name}]",
                     [("5.4.2", wd["5.4.2-agree"],
                       (wd["product-derivation"], wd["bracket-derivation"])),
                      ("5.4.5", wd["5.4.5-agree"],
                       (wd["commutator-zero"], wd["invariant"]))])
            ti = transport_iso(T, C)
            self.add(f"bv[{name}]", ti["report"])
        vol = self.bundle["volume"]
        if vol is not None and T.algebra.is_invertible(vol) \
                and volume_invariance(T, vol):
            vg = volume_generator(T, vol)
            self.add("bv[volume]",
                     [("5.3.7-exact", vg["exact"], None),
                      ("5.4.4-commutes", vg["commutes"], vg["witness"])])
            if not self.args.skip_oracle and car.total_dim() <= ORACLE_DIM_LIMIT:
                ef = exact_generator_family(car)
                vf = volume_family(T, vol)
                ok = ef is not None and affine_spaces_equal(
                    ef[1], ef[2], vf[1], vf[2])
                self.add("bv[volume]", [("5.4.9", ok, None)])

    def run_universal(self):
        cutoff = self.bundle["cutoff"] or self.args.cutoff
        try:
            rep = flatness_check_u(self.T, cutoff, self.rng())
        except NotTwilledError as ex:
            self.add("universal", [(lbl, False, None) for lbl in ex.args[0]])
            return
        self.add("universal", [(l, ok, None) for l, ok in rep.items()])
        rc = rinehart_complex(self.T.left, cutoff)
        bad = None
        for j in sorted(rc["maps"]):
            if j - 1 in rc["maps"]:
                if not mat_is_zero(mat_mul(rc["maps"][j - 1].matrix,
                                           rc["maps"][j].matrix)):
                    bad = j
        self.add("universal", [("6.5-square-zero", bad is None, bad)])
        vol = self.bundle["volume"]
        if vol is not None and self.T.algebra.is_invertible(vol):
            C = volume_connection(self.T, vol)
            G = generator_from_connection(self.T, C)
            Rc = right_connection_from_generator(G)
            maps = standard_complex(self.T.left, Rc, cutoff + 1)
            agree = True
            for k in maps:
                gm, sm = G.maps[(0, k)], maps[k]
                gd = {((sk[1], sk[2]), (dk[1], dk[2])): gm.matrix[di][si]
                      for si, sk in enumerate(gm.src_keys)
                      for di, dk in enumerate(gm.dst_keys)}
                for si, sk in enumerate(sm.src_keys):
                    for di, dk in enumerate(sm.dst_keys):
                        if gd.get((sk, dk), Q0) != sm.matrix[di][si]:
                            agree = False
            self.add("universal", [("7.13", agree, None)])

    def run_homology(self):
        if not self._require_twilled("homology"):
            return
        rep = theorem115_harness(self.T, self.rng())
        if rep["betti_match"] is not None:
            self.add("homology",
                     [("6.15", rep["betti_match"],
                       (rep["betti_total"], rep["betti_sum"]))])
        vol = self.bundle["volume"]
        if vol is not None and self.T.algebra.is_invertible(vol) \
                and volume_invariance(self.T, vol):
            dd = duality_dims(self.T, volume_connection(self.T, vol))
            self.add("homology",
                     [("7.12", dd["7.12"],
                       (dd["generator-side"], dd["transported-side"]))])

    def run(self, sub):
        steps = {
            "validate": [self.run_validate],
            "twilled": [self.run_twilled],
            "dg": [self.run_dg],
            "gerst": [self.run_gerst],
            "bialg": [self.run_bialg],
            "bv": [self.run_bv],
            "universal": [self.run_universal],
            "homology": [self.run_homology],
            "all": [self.run_validate, self.run_twilled, self.run_dg,
                    self.run_gerst, self.run_bialg, self.run_bv,
                    self.run_universal, self.run_homology],
        }
        for step in steps[sub]:
            step()


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, Fraction):
        return _frac_str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return repr(x)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="twilledlr",
        description="Exact verification of paired Lie-Rinehart structures.")
    parser.add_argument("subcommand",
                        choices=["validate", "twilled", "dg", "gerst",
                                 "bialg", "bv", "universal", "homology",
                                 "all"])
    parser.add_argument("structure",
                        help="built-in instance name or path to a .json "
                             "structure file")
    parser.add_argument("--cutoff", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--skip-oracle", action="store_true")
    parser.add_argument("--json", dest="json_path", default=None,
                        help="write a machine report to this path")
    args = parser.parse_args(argv)

    try:
        bundle = load_structure(args.structure)
    except ParseError as ex:
        print(f"input error: {ex}", file=sys.stderr)
        return 2

    session = Session(bundle, args)
    session.run(args.subcommand)

    failures = session.failures()
    for section, triples in session.results.items():
        for label, ok, witness in triples:
            status = "ok" if ok else "FAIL"
            line = f"{section}: {label}: {status}"
            if not ok and witness is not None:
                line += f"  witness={witness!r}"
            print(line)
    if failures:
        names = sorted({label for _, label, _ in failures})
        print(f"FAILED identities: {', '.join(names)}")
    else:
        print("all identities hold")

    if args.json_path:
        report = {
            "subcommand": args.subcommand,
            "flags": {"cutoff": args.cutoff, "seed": args.seed,
                      "skip_oracle": args.skip_oracle},
            "structure": serialize_structure(
                session.T, bundle["volume"], bundle["connections"],
                bundle["right_connection"], bundle["cutoff"]),
            "verdicts": {
                section: [{"identity": label, "ok": ok,
                           "witness": _jsonable(witness)}
                          for label, ok, witness in triples]
                for section, triples in session.results.items()},
            "ok": not failures,
            "failures": [{"section": s, "identity": l,
                          "witness": _jsonable(w)}
                         for s, l, w in failures],
        }
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=1)

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
