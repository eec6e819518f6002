"""Stacked polytopes, disjoint points, gluing families and expected Betti vectors.

A stacked ``d``-ball starts as the simplex on ``1..d+1``; each stack glues a
new ``d``-simplex along a boundary ``(d-1)``-face, with the new vertex taking
the next free label.  ``build_lhat`` uses the fixed stacking order in which
every stack after the second sits on ``(1, ..., d-1, newest vertex)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .complex import (
    ComplexError,
    Face,
    SimplicialComplex,
    boundary_complex,
    delete_vertex,
    glue_along_face,
    new_complex,
    simplex,
)


@dataclass(frozen=True)
class StackHistory:
    d: int
    steps: tuple[Face, ...] = ()

    @property
    def stacks(self) -> int:
        return len(self.steps) + 1


def free_faces(L: SimplicialComplex) -> list[Face]:
    """Codimension-one faces of a pure complex lying in exactly one facet."""
    counts: dict[Face, int] = {}
    for f in L.facets:
        for r in combinations(f, len(f) - 1):
            counts[r] = counts.get(r, 0) + 1
    return sorted(r for r, c in counts.items() if c == 1)


def stack(L: SimplicialComplex, face: Sequence[int]) -> SimplicialComplex:
    """Glue a new top simplex onto the boundary face ``face`` of the ball ``L``."""
    sig = tuple(sorted(face))
    d = L.dim
    if len(sig) != d or sig not in free_faces(L):
        raise ComplexError(f"{list(sig)} is not a free facet of the ball")
    return glue_along_face(L, sig, d)


def build_stacked(history: StackHistory) -> SimplicialComplex:
    if history.d < 1:
        raise ComplexError("stacking dimension must be at least 1")
    L = simplex(range(1, history.d + 2))
    for step in history.steps:
        L = stack(L, step)
    return L


def _lhat_steps(d: int, ell: int) -> tuple[Face, ...]:
    steps: list[Face] = []
    if ell >= 2:
        steps.append(tuple(range(1, d + 1)))
    for k in range(3, ell + 1):
        steps.append(tuple(range(1, d)) + (d + k - 1,))
    return tuple(steps)


def build_lhat(d: int, ell: int) -> SimplicialComplex:
    """The stacked ``d``-ball with ``ell`` stacks in the prescribed order.

    The second stack sits on ``(1, ..., d)`` with new vertex ``d+2``; for
    ``2 < k <= ell`` stack ``k`` sits on ``(1, ..., d-1, d+k-1)`` and adds
    vertex ``d+k``.  For ``d = 1`` these faces are the singletons ``{1}``
    then ``{k}``.
    """
    if d < 1 or ell < 1:
        raise ComplexError("need d >= 1 and ell >= 1")
    return build_stacked(StackHistory(d, _lhat_steps(d, ell)))


def lhat_history(d: int, ell: int) -> StackHistory:
    return StackHistory(d, _lhat_steps(d, ell))


def random_history(d: int, ell: int, rng: random.Random) -> StackHistory:
    """Each stack on a uniformly chosen current free facet."""
    L = simplex(range(1, d + 2))
    steps = []
    for _ in range(ell - 1):
        face = rng.choice(free_faces(L))
        steps.append(face)
        L = stack(L, face)
    return StackHistory(d, tuple(steps))


def disjoint_points(ell: int) -> SimplicialComplex:
    if ell < 1:
        raise ComplexError("need at least one point")
    return new_complex(ell, [[i] for i in range(1, ell + 1)])


HTYPE_MODES = ("chain", "star", "random")


def htype_choices(k: int, ell: int, mode: str, rng: random.Random | None = None) -> list[Face]:
    """Gluing faces for ``build_htype``.

    ``chain`` glues each new simplex on the last ``k`` vertices of the one
    before it, ``star`` always glues on ``(1, ..., k)`` and ``random`` picks
    a uniform ``(k-1)``-face of the complex built so far.
    """
    if mode not in HTYPE_MODES:
        raise ValueError(f"unknown mode {mode!r}; use one of {', '.join(HTYPE_MODES)}")
    if mode == "star":
        return [tuple(range(1, k + 1))] * (ell - 1)
    if mode == "chain":
        return [tuple(range(i + 1, i + k + 1)) for i in range(1, ell)]
    rng = rng or random.Random(0)
    K = simplex(range(1, k + 2))
    out = []
    for _ in range(ell - 1):
        sigma = rng.choice(K.faces(k - 1))
        out.append(sigma)
        K = glue_along_face(K, sigma, k)
    return out


def build_htype(k: int, ell: int, choices: Sequence[Sequence[int]]) -> SimplicialComplex:
    """``Δ^k`` followed by ``ell - 1`` gluings of ``Δ^k`` along ``(k-1)``-faces."""
    if k < 1 or ell < 1:
        raise ComplexError("need k >= 1 and ell >= 1")
    if len(choices) != ell - 1:
        raise ComplexError(f"expected {ell - 1} gluing faces, got {len(choices)}")
    K = simplex(range(1, k + 2))
    for sigma in choices:
        K = glue_along_face(K, sigma, k)
    return K


def _wedge_coeff(ell: int, k: int) -> int:
    return (k - 2) * comb(ell, k - 1)


def wedge_betti(ell: int) -> tuple[int, ...]:
    """Betti vector of the wedge of ``(k-2)·C(ell, k-1)`` copies of ``S^k``, ``3 <= k <= ell+1``."""
    b = [0] * (max(ell + 1, 0) + 1)
    b[0] = 1
    for k in range(3, ell + 2):
        b[k] = _wedge_coeff(ell, k)
    return _trim(b)


def connected_sum_betti(d: int, ell: int) -> tuple[int, ...]:
    """Betti vector of the connected sum of ``(k-2)·C(ell,k-1)`` copies of ``S^k × S^{ell+2d-k}``."""
    n = ell + 2 * d
    b = [0] * (n + 1)
    b[0] = b[n] = 1
    for k in range(3, ell + 2):
        c = _wedge_coeff(ell, k)
        b[k] += c
        b[n - k] += c
    return _trim(b)


def sphere_betti(n: int) -> tuple[int, ...]:
    b = [0] * (n + 1)
    b[0] = 1
    b[n] += 1
    return tuple(b)


def _trim(b: list[int]) -> tuple[int, ...]:
    while len(b) > 1 and b[-1] == 0:
        b.pop()
    return tuple(b)


@dataclass(frozen=True)
class DeletionCheck:
    name: str
    expected: object
    actual: object
    passed: bool


@dataclass(frozen=True)
class DeletionReport:
    d: int
    ell: int
    checks: tuple[DeletionCheck, ...] = field(default_factory=tuple)
    boundary_facets: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> DeletionCheck:
        return next(c for c in self.checks if c.name == name)


def expected_avoiding_faces(d: int, ell: int) -> list[Face]:
    """The ``ell`` codimension-one faces of ``build_lhat(d, ell)`` missing vertex 1.

    ``(2..d, d+1)``, ``(2..d, d+2)`` and ``(2..d-1, d+k-1, d+k)`` for
    ``2 < k <= ell``; for ``d = 1`` the last family is the vertex ``d+k``.
    """
    out = [tuple(range(2, d + 2))]
    if ell >= 2:
        out.append(tuple(range(2, d + 1)) + (d + 2,))
    for k in range(3, ell + 1):
        if d == 1:
            out.append((d + k,))
        else:
            out.append(tuple(range(2, d)) + (d + k - 1, d + k))
    return out


def validate_lemma_delete(d: int, ell: int) -> DeletionReport:
    """Check the face counts and the gluing filtration of ``∂L̂ - {1}``.

    ``faces`` counts codimension-one faces of the ball itself, interior glued
    faces included; each stack contributes ``d+1`` of them and every gluing
    identifies two into one, giving ``ell·d + 1``.
    """
    L = build_lhat(d, ell)
    ridges = L.faces(d - 1)
    checks = [DeletionCheck("faces", ell * d + 1, len(ridges), len(ridges) == ell * d + 1)]

    avoiding = [r for r in ridges if 1 not in r]
    expected = sorted(expected_avoiding_faces(d, ell))
    checks.append(DeletionCheck("avoiding_count", ell, len(avoiding), len(avoiding) == ell))
    checks.append(
        DeletionCheck("avoiding_list", [list(f) for f in expected], [list(f) for f in avoiding], avoiding == expected)
    )

    B = boundary_complex(L)
    on_boundary = all(r in B.facets for r in avoiding)
    checks.append(DeletionCheck("avoiding_on_boundary", True, on_boundary, on_boundary))

    # M_1 = (2..d+1); M_k glues the next face along its (d-2)-face with M_{k-1}
    seq = expected_avoiding_faces(d, ell)
    glue_faces = [tuple(range(2, d + 1))] + [tuple(range(2, d)) + (d + k - 1,) for k in range(3, ell + 1)]
    if d == 1:
        glue_faces = [()] * (ell - 1)
    M = SimplicialComplex.generated(B.vertices[1:], [seq[0]])
    gluing_ok = True
    for face, sigma in zip(seq[1:], glue_faces):
        common = set(face) & {v for f in M.facets for v in f}
        if tuple(sorted(common)) != sigma or (sigma and sigma not in M):
            gluing_ok = False
        M = SimplicialComplex.generated(M.vertices, list(M.facets) + [face])
    deleted = delete_vertex(B, 1)
    checks.append(DeletionCheck("gluing_steps", True, gluing_ok, gluing_ok))
    same = deleted == M
    checks.append(
        DeletionCheck("filtration_equals_deletion", [list(f) for f in M.facets], [list(f) for f in deleted.facets], same)
    )
    return DeletionReport(d, ell, tuple(checks), boundary_facets=len(B.facets))
