"""Reduced simplicial (co)homology from augmented chain complexes.

Coefficients are selected per call: ``None`` means the integers, ``0`` the
rationals and a prime ``p`` the field ``Z/p``.  :func:`parse_coeffs` turns
the CLI spellings (``z``, ``q``, ``f2``, ``fp:<p>``) into that form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .complex import Face, SimplicialComplex
from .linalg import (
    check_field,
    nullspace_basis,
    rank_mod_p,
    row_space_basis,
    smith_normal_form,
    transpose,
)

Ring = int | None


def parse_coeffs(spec: str | int | None) -> Ring:
    if spec is None or isinstance(spec, int):
        if isinstance(spec, int):
            check_field(spec)
        return spec
    s = spec.strip().lower()
    if s == "z":
        return None
    if s == "q":
        return 0
    if s == "f2":
        return 2
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f"bad coefficient selector {spec!r}") from None
        check_field(p)
        if p == 0:
            raise ValueError("fp:<p> needs a prime")
        return p
    raise ValueError(f"bad coefficient selector {spec!r}; use z, q, f2 or fp:<p>")


def ring_name(ring: Ring) -> str:
    if ring is None:
        return "z"
    if ring == 0:
        return "q"
    return "f2" if ring == 2 else f"fp:{ring}"


@dataclass(frozen=True)
class ChainComplexData:
    faces: dict[int, list[Face]]
    # boundary[d] maps d-chains to (d-1)-chains; rows follow faces[d-1]
    boundary: dict[int, list[list[int]]]

    @property
    def top(self) -> int:
        return max(self.faces)


def _boundary_matrix(lower: list[Face], upper: list[Face]) -> list[list[int]]:
    index = {f: i for i, f in enumerate(lower)}
    M = [[0] * len(upper) for _ in lower]
    for j, face in enumerate(upper):
        for i in range(len(face)):
            M[index[face[:i] + face[i + 1:]]][j] = -1 if i % 2 else 1
    return M


@lru_cache(maxsize=None)
def chain_complex(K: SimplicialComplex) -> ChainComplexData:
    faces = {d: K.faces(d) for d in range(-1, K.dim + 1)} if K.facets else {-1: [()]}
    boundary = {d: _boundary_matrix(faces[d - 1], faces[d]) for d in faces if d >= 0}
    return ChainComplexData(faces, boundary)


def coboundary_matrix(K: SimplicialComplex, d: int) -> list[list[int]]:
    """Matrix of ``δ^d : C^d → C^{d+1}`` (rows indexed by the ``(d+1)``-faces)."""
    cc = chain_complex(K)
    if d + 1 not in cc.boundary:
        return []
    return transpose(cc.boundary[d + 1], cols=len(cc.faces.get(d, [])))


@dataclass(frozen=True)
class GradedModule:
    """Per-degree ranks with torsion divisors (only over the integers)."""

    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def __getitem__(self, degree: int) -> int:
        return self.betti.get(degree, 0)

    def is_zero(self) -> bool:
        return not any(self.betti.values()) and not any(self.torsion.values())

    def rows(self) -> list[dict]:
        degrees = sorted(set(self.betti) | set(self.torsion))
        return [
            {"degree": d, "betti": self.betti.get(d, 0), "torsion": list(self.torsion.get(d, ()))}
            for d in degrees
        ]


def _ranks(K: SimplicialComplex, ring: Ring) -> tuple[dict[int, int], dict[int, tuple[int, ...]]]:
    cc = chain_complex(K)
    ranks, tors = {}, {}
    for d, M in cc.boundary.items():
        if ring is None:
            snf = smith_normal_form(M)
            ranks[d] = snf.rank
            tors[d] = tuple(x for x in snf.divisors if x > 1)
        else:
            ranks[d] = rank_mod_p(M, ring)
    return ranks, tors


@lru_cache(maxsize=None)
def reduced_cohomology(K: SimplicialComplex, coeffs: Ring | str = None) -> GradedModule:
    ring = parse_coeffs(coeffs)
    cc = chain_complex(K)
    ranks, tors = _ranks(K, ring)
    betti, torsion = {}, {}
    for d, fs in cc.faces.items():
        betti[d] = len(fs) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        # universal coefficients: torsion of H^d is that of H_{d-1} = coker ∂_d
        if tors.get(d):
            torsion[d] = tors[d]
    return GradedModule(betti, torsion)


def cocycle_basis(K: SimplicialComplex, d: int, p: int) -> tuple[list[list], list[list]]:
    """Cocycles ``ker δ^d`` and a basis of coboundaries ``im δ^{d-1}`` in ``C^d``."""
    check_field(p)
    cc = chain_complex(K)
    n = len(cc.faces.get(d, []))
    if n == 0:
        return [], []
    delta = coboundary_matrix(K, d)
    cocycles = nullspace_basis(delta, p, cols=n)
    cobounds = row_space_basis(cc.boundary[d], p) if d >= 0 else []
    return cocycles, cobounds


def betti_vector(module: GradedModule) -> list[int]:
    top = max((d for d, b in module.betti.items() if b), default=-1)
    return [module.betti.get(d, 0) for d in range(0, top + 1)]

