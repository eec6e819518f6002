"""Verification commands, each producing a :class:`Report`."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .complex import SimplicialComplex, boundary_complex, delete_vertex
from .hochster import (
    HochsterClass,
    LimitError,
    cup_separation,
    golod_check,
    hochster_ring,
    pairing_rank,
    poincare_pairing,
    restriction_split,
    zk_cohomology,
)
from .homology import parse_coeffs, reduced_cohomology, ring_name
from .polytopes import (
    build_htype,
    build_lhat,
    build_stacked,
    connected_sum_betti,
    disjoint_points,
    htype_choices,
    random_history,
    validate_lemma_delete,
    wedge_betti,
)

BETTI_LIMIT = 20
CUP_LIMIT = 14


def plain(x: Any) -> Any:
    """JSON-friendly copy: fractions become ints or ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return x


@dataclass
class Check:
    name: str
    expected: Any
    actual: Any
    passed: bool
    witness: Any = None
    elapsed: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {"name": self.name, "expected": plain(self.expected), "actual": plain(self.actual), "pass": self.passed}
        if self.witness is not None:
            out["witness"] = plain(self.witness)
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@dataclass
class Report:
    command: str
    parameters: dict
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected: Any, actual: Any, passed: bool | None = None, witness: Any = None, elapsed: float = 0.0) -> Check:
        c = Check(name, expected, actual, expected == actual if passed is None else passed, witness, elapsed)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self):
        """Stamp the elapsed time on every check added inside the block."""
        start, first = time.perf_counter(), len(self.checks)
        yield
        dt = time.perf_counter() - start
        for c in self.checks[first:]:
            c.elapsed = dt

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "parameters": plain(self.parameters),
            "pass": self.passed,
            "checks": [c.to_dict(timing) for c in self.checks],
        }
        if self.data:
            out["data"] = plain(self.data)
        return out


def _limit(m: int, limit: int) -> None:
    if m > limit:
        raise LimitError(f"{m} vertices exceeds the limit of {limit}")


def _describe(c: HochsterClass) -> dict:
    return {"I": list(c.support), "degree": c.internal_degree, "total_degree": c.total_degree, "rep": list(c.rep)}


def cmd_betti(K: SimplicialComplex, coeffs: str | int | None = "z", zk: bool = False, limit: int = BETTI_LIMIT) -> Report:
    ring = parse_coeffs(coeffs)
    report = Report("betti", {"m": K.m, "coeffs": ring_name(ring), "zk": zk})
    report.data["reduced_cohomology"] = reduced_cohomology(K, ring).rows()
    if zk:
        _limit(K.m, limit)
        Z = zk_cohomology(K, ring, limit)
        report.data["zk_betti"] = list(Z.betti)
        if ring is None:
            report.data["zk_torsion"] = {str(p): list(t) for p, t in Z.torsion.items()}
        report.data["subsets"] = Z.table()
    return report


def _deletion_checks(report: Report, d: int, ell: int) -> None:
    with report.timed():
        rep = validate_lemma_delete(d, ell)
        for c in rep.checks:
            report.add(f"deletion.{c.name}", c.expected, c.actual, c.passed)


def cmd_check_panov(d: int, ell: int, field: int = 0, limit: int = CUP_LIMIT) -> Report:
    """Every cohomology-level consequence of the vertex-deletion picture for ``build_lhat(d, ell)``."""
    _limit(d + ell, limit)
    report = Report("check-panov", {"d": d, "ell": ell, "field": ring_name(field)})
    _deletion_checks(report, d, ell)

    B = boundary_complex(build_lhat(d, ell))
    D = delete_vertex(B, 1)
    with report.timed():
        zb = zk_cohomology(B, None, limit)
        report.add("betti_boundary_vs_connected_sum", list(connected_sum_betti(d, ell)), list(zb.betti))
        report.add("boundary_torsion_free", {}, {str(k): list(v) for k, v in zb.torsion.items()})
    with report.timed():
        zd = zk_cohomology(D, None, limit)
        zp = zk_cohomology(disjoint_points(ell), None, limit)
        report.add("betti_deleted_vs_wedge", list(wedge_betti(ell)), list(zd.betti))
        report.add("betti_deleted_vs_points", list(zp.betti), list(zd.betti))
    with report.timed():
        g = golod_check(D, field)
        wit = None if g.witness is None else [_describe(c) for c in g.witness]
        report.add("golod_deleted", True, g.is_golod, witness=wit)
    n = len(zb.betti) - 1
    R = hochster_ring(B, field, limit)
    with report.timed():
        splits = {p: restriction_split(B, 1, p, field) for p in range(n + 1)}
        image = [splits[p][1] for p in range(n + 1)]
        while len(image) > 1 and image[-1] == 0:
            image.pop()
        report.data["restriction_split"] = [
            {"degree": p, "ker_rank": k, "image_rank": i} for p, (k, i) in splits.items() if k or i
        ]
        report.add("restriction_image_vs_deleted_betti", list(zd.betti), image)
        report.add("restriction_image_vs_wedge", list(wedge_betti(ell)), image)
    if list(R.betti) != list(zb.betti) or R.betti[-1] != 1:
        report.add("top_class", 1, R.betti[-1])
        return report
    with report.timed():
        rows = cup_separation(B, 1, field)
        bad = [r.degree for r in rows if not r.passed]
        report.data["cup_separation"] = [
            {
                "degree": r.degree,
                "betti": r.betti,
                "ker_rank": r.ker_rank,
                "image_rank": r.image_rank,
                "image_block_zero": r.image_block_zero,
                "mixed_rank": r.mixed_rank,
            }
            for r in rows
        ]
        report.add("cup_separation", [], bad, witness=bad or None)
    with report.timed():
        dual = list(reversed(zb.betti)) == list(zb.betti)
        report.add("poincare_duality_betti", True, dual)
        deficient = []
        for p in range(n + 1):
            if not R.betti[p]:
                continue
            M = poincare_pairing(B, p, field)
            r = pairing_rank(M, field)
            if r != R.betti[p]:
                deficient.append({"degree": p, "rank": r, "betti": R.betti[p]})
        report.add("poincare_pairing_full_rank", [], deficient, witness=deficient or None)
    return report


def stack_betti_trials(d: int, ell: int, trials: int, seed: int, limit: int = BETTI_LIMIT):
    # one derived seed per trial, so any trial can be rerun on its own
    master = random.Random(seed)
    out = []
    for trial_seed in [master.getrandbits(64) for _ in range(trials)]:
        h = random_history(d, ell, random.Random(trial_seed))
        out.append((h, zk_cohomology(boundary_complex(build_stacked(h)), None, limit).betti))
    return out


def cmd_check_stack_invariance(d: int, ell: int, trials: int = 10, seed: int = 0, limit: int = BETTI_LIMIT) -> Report:
    if trials < 2:
        raise ValueError("need at least 2 trials")
    _limit(d + ell, limit)
    report = Report("check-stack-invariance", {"d": d, "ell": ell, "trials": trials, "seed": seed})
    with report.timed():
        runs = stack_betti_trials(d, ell, trials, seed, limit)
        first_h, first_b = runs[0]
        witness = None
        for h, b in runs[1:]:
            if b != first_b:
                witness = {"histories": [[list(s) for s in first_h.steps], [list(s) for s in h.steps]],
                           "betti": [list(first_b), list(b)]}
                break
        report.add("identical_betti", True, witness is None, witness=witness)
    report.data["betti"] = list(first_b)
    report.data["histories"] = [[list(s) for s in h.steps] for h, _ in runs]
    return report


def cmd_check_htype(k: int, ell: int, mode: str = "chain", seed: int = 0, limit: int = BETTI_LIMIT) -> Report:
    _limit(k + ell, limit)
    report = Report("check-htype", {"k": k, "ell": ell, "mode": mode, "seed": seed})
    choices = htype_choices(k, ell, mode, random.Random(seed))
    K = build_htype(k, ell, choices)
    with report.timed():
        bk = zk_cohomology(K, None, limit).betti
        bp = zk_cohomology(disjoint_points(ell), None, limit).betti
        report.add("betti_vs_points", list(bp), list(bk))
    report.data["complex"] = K.to_dict()
    return report


def cmd_check_golod(K: SimplicialComplex, field: int = 0, limit: int = CUP_LIMIT) -> Report:
    _limit(K.m, limit)
    report = Report("check-golod", {"m": K.m, "field": ring_name(field)})
    with report.timed():
        g = golod_check(K, field)
        wit = None if g.witness is None else [_describe(c) for c in g.witness]
        report.add("golod", True, g.is_golod, witness=wit)
    report.data["pairs_checked"] = g.pairs_checked
    return report


def cmd_cup(K: SimplicialComplex, I: Sequence[int], J: Sequence[int], field: int = 0, limit: int = CUP_LIMIT) -> Report:
    _limit(K.m, limit)
    I, J = tuple(sorted(I)), tuple(sorted(J))
    report = Report("cup", {"m": K.m, "I": list(I), "J": list(J), "field": ring_name(field)})
    if set(I) & set(J):
        report.data["verdict"] = "zero: supports intersect"
        report.data["products"] = []
        return report
    R = hochster_ring(K, field, limit)
    left = [c for c in R.all_classes(positive=False) if c.support == I]
    right = [c for c in R.all_classes(positive=False) if c.support == J]
    products = []
    for u in left:
        for v in right:
            w = R.product(u, v)
            products.append(
                {"u": _describe(u), "v": _describe(v), "product": None if w is None else _describe(w)}
            )
    nonzero = sum(1 for p in products if p["product"] is not None)
    report.data["products"] = products
    report.data["nonzero"] = nonzero
    report.data["verdict"] = "nonzero" if nonzero else "zero"
    return report
