"""Cohomology of moment-angle complexes through the Hochster decomposition.

``H^p(Z_K)`` is the direct sum over vertex subsets ``I`` of the reduced
cohomology ``H̃^{p-|I|-1}(K_I)``.  A class is recorded by its support ``I``,
its internal degree ``a`` and a cocycle on the ``a``-faces of ``K_I``.  For
disjoint supports the product is pulled back along ``K_{I∪J} → K_I * K_J``;
overlapping supports multiply to zero.

Products are computed over fields only (``p = 0`` for the rationals, or a
prime).  The join product of cochains uses the shuffle sign that puts the
concatenation ``(τ∩I, τ∩J)`` in ascending order; on top of that every
product carries the Koszul sign ``sgn(I, J) · (-1)^{(a+1)|J|}``, which makes
the ring graded commutative in total degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Iterator, Sequence

from .complex import Face, SimplicialComplex, full_subcomplex
from .homology import GradedModule, Ring, chain_complex, cocycle_basis, parse_coeffs, reduced_cohomology
from .linalg import SpanSolver, check_field, rank_mod_p

DEFAULT_LIMIT = 20


class LimitError(ValueError):
    """The vertex count exceeds the configured subset-enumeration limit."""


def _check_limit(K: SimplicialComplex, limit: int) -> None:
    if K.m > limit:
        raise LimitError(f"complex has {K.m} vertices; limit is {limit}")


def subsets(vertices: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All subsets in lexicographic order of their sorted tuples."""
    verts = sorted(vertices)

    def walk(prefix: tuple[int, ...], start: int):
        yield prefix
        for i in range(start, len(verts)):
            yield from walk(prefix + (verts[i],), i + 1)

    return walk((), 0)


def _inversions(left: Sequence[int], right: Sequence[int]) -> int:
    return sum(1 for x in left for y in right if x > y)


@dataclass(frozen=True)
class ZkCohomology:
    vertices: tuple[int, ...]
    ring: Ring
    summands: dict[tuple[int, ...], GradedModule]
    betti: tuple[int, ...]
    torsion: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def table(self) -> list[dict]:
        rows = []
        for I, mod in self.summands.items():
            for r in mod.rows():
                if r["betti"] or r["torsion"]:
                    row = {"I": list(I), "degree": r["degree"], "betti": r["betti"]}
                    if self.ring is None:
                        row["torsion"] = r["torsion"]
                    rows.append(row)
        return rows


def zk_cohomology(K: SimplicialComplex, coeffs: Ring | str = None, limit: int = DEFAULT_LIMIT) -> ZkCohomology:
    """Betti numbers (and integral torsion) of ``Z_K``."""
    ring = parse_coeffs(coeffs)
    _check_limit(K, limit)
    totals: dict[int, int] = {}
    torsion: dict[int, list[int]] = {}
    summands = {}
    for I in subsets(K.vertices):
        if K.is_simplex_on(I):
            continue
        mod = reduced_cohomology(full_subcomplex(K, I), ring)
        if mod.is_zero():
            continue
        summands[I] = mod
        for a, b in mod.betti.items():
            if b:
                totals[a + len(I) + 1] = totals.get(a + len(I) + 1, 0) + b
        for a, t in mod.torsion.items():
            torsion.setdefault(a + len(I) + 1, []).extend(t)
    top = max(totals, default=0)
    betti = tuple(totals.get(p, 0) for p in range(top + 1))
    return ZkCohomology(
        K.vertices, ring, summands, betti, {p: tuple(sorted(t)) for p, t in sorted(torsion.items())}
    )


@dataclass(frozen=True)
class HochsterClass:
    support: tuple[int, ...]
    internal_degree: int
    rep: tuple
    coords: tuple
    field: int
    complex: SimplicialComplex = field(repr=False, compare=False, default=None)

    @property
    def total_degree(self) -> int:
        return self.internal_degree + len(self.support) + 1

    def label(self) -> str:
        return f"I={list(self.support)} a={self.internal_degree} deg={self.total_degree}"


class _Summand:
    """Representatives and a coordinate solver for one ``H̃^a(K_I)``."""

    def __init__(self, K: SimplicialComplex, I: tuple[int, ...], a: int, p: int):
        self.sub = full_subcomplex(K, I)
        self.faces: list[Face] = chain_complex(self.sub).faces.get(a, [])
        self.index = {f: i for i, f in enumerate(self.faces)}
        cocycles, cobounds = cocycle_basis(self.sub, a, p)
        span = SpanSolver(cobounds, p, dim=len(self.faces))
        reps = [z for z in cocycles if span.add(z)]
        self.reps = reps
        self.n_cob = len(cobounds)
        self.solver = SpanSolver(list(cobounds) + reps, p, dim=len(self.faces))
        self.p = p

    @property
    def rank(self) -> int:
        return len(self.reps)

    def coordinates(self, w: Sequence) -> list:
        c = self.solver.coefficients(w)
        if c is None:
            raise ValueError("cochain is not a cocycle")
        return c[self.n_cob:]

    def combine(self, coords: Sequence) -> tuple:
        out = [Fraction(0) if self.p == 0 else 0] * len(self.faces)
        for c, r in zip(coords, self.reps):
            if c:
                out = [x + c * y for x, y in zip(out, r)]
        if self.p:
            out = [x % self.p for x in out]
        return tuple(out)


def join_cochain_product(
    K: SimplicialComplex,
    I: Sequence[int],
    a: int,
    u: Sequence,
    J: Sequence[int],
    b: int,
    v: Sequence,
    p: int = 0,
) -> list:
    """Pull back ``u * v`` along ``K_{I∪J} → K_I * K_J`` (no Koszul sign).

    ``u`` is indexed by the ``a``-faces of ``K_I``, ``v`` by the ``b``-faces
    of ``K_J``; the result lives on the ``(a+b+1)``-faces of ``K_{I∪J}``.
    """
    Iset, Jset = set(I), set(J)
    if Iset & Jset:
        raise ValueError("supports must be disjoint")
    fi = {f: k for k, f in enumerate(chain_complex(full_subcomplex(K, I)).faces.get(a, []))}
    fj = {f: k for k, f in enumerate(chain_complex(full_subcomplex(K, J)).faces.get(b, []))}
    target = chain_complex(full_subcomplex(K, Iset | Jset)).faces.get(a + b + 1, [])
    w = []
    for tau in target:
        ti = tuple(x for x in tau if x in Iset)
        tj = tuple(x for x in tau if x in Jset)
        if len(ti) != a + 1 or len(tj) != b + 1:
            w.append(0)
            continue
        val = u[fi[ti]] * v[fj[tj]]
        if _inversions(ti, tj) % 2:
            val = -val
        w.append(val % p if p else val)
    return w


class HochsterRing:
    """Lazily built Hochster ring of ``K`` over the field of characteristic ``p``."""

    def __init__(self, K: SimplicialComplex, p: int = 0, limit: int = DEFAULT_LIMIT):
        check_field(p)
        _check_limit(K, limit)
        self.K = K
        self.p = p
        self._summands: dict[tuple, _Summand] = {}
        self._zk = zk_cohomology(K, p, limit)
        self._bases: dict[int, list[HochsterClass]] = {}

    @property
    def betti(self) -> tuple[int, ...]:
        return self._zk.betti

    def summand(self, I: tuple[int, ...], a: int) -> _Summand:
        key = (I, a)
        if key not in self._summands:
            self._summands[key] = _Summand(self.K, I, a, self.p)
        return self._summands[key]

    def basis(self, total_degree: int) -> list[HochsterClass]:
        if total_degree in self._bases:
            return self._bases[total_degree]
        out = []
        if total_degree == 0:
            out.append(self._make((), -1, (1,)))
        for I, mod in self._zk.summands.items():
            a = total_degree - len(I) - 1
            if not I or not mod[a]:
                continue
            s = self.summand(I, a)
            for k in range(s.rank):
                coords = tuple(int(i == k) for i in range(s.rank))
                out.append(self._make(I, a, coords))
        self._bases[total_degree] = out
        return out

    def all_classes(self, positive: bool = True) -> list[HochsterClass]:
        start = 1 if positive else 0
        return [c for p in range(start, len(self.betti)) for c in self.basis(p)]

    def _make(self, I: tuple[int, ...], a: int, coords: Sequence) -> HochsterClass:
        s = self.summand(I, a)
        rep = s.combine(coords)
        return HochsterClass(I, a, rep, tuple(coords), self.p, self.K)

    def product(self, u: HochsterClass, v: HochsterClass) -> HochsterClass | None:
        if u.field != self.p or v.field != self.p:
            raise ValueError("classes were computed over a different field")
        if (u.complex is not None and u.complex != self.K) or (v.complex is not None and v.complex != self.K):
            raise ValueError("classes belong to a different complex")
        I, J = u.support, v.support
        if set(I) & set(J):
            return None
        a, b = u.internal_degree, v.internal_degree
        w = join_cochain_product(self.K, I, a, u.rep, J, b, v.rep, self.p)
        if (_inversions(I, J) + (a + 1) * len(J)) % 2:
            w = [(-x) % self.p if self.p else -x for x in w]
        U = tuple(sorted(set(I) | set(J)))
        c = a + b + 1
        if not any(w):
            return None
        s = self.summand(U, c)
        coords = s.coordinates(w)
        if not any(coords):
            return None
        return self._make(U, c, coords)


@lru_cache(maxsize=64)
def hochster_ring(K: SimplicialComplex, field: int = 0, limit: int = DEFAULT_LIMIT) -> HochsterRing:
    return HochsterRing(K, field, limit)


def hochster_basis(K: SimplicialComplex, total_degree: int, field: int = 0) -> list[HochsterClass]:
    return hochster_ring(K, field).basis(total_degree)


def cup_product(u: HochsterClass, v: HochsterClass, K: SimplicialComplex, field: int = 0) -> HochsterClass | None:
    """Product of two classes, ``None`` when it is zero in cohomology."""
    return hochster_ring(K, field).product(u, v)


@dataclass(frozen=True)
class GolodResult:
    is_golod: bool
    witness: tuple[HochsterClass, HochsterClass] | None = None
    pairs_checked: int = 0


def golod_check(K: SimplicialComplex, field: int = 0) -> GolodResult:
    """Whether every product of two positive-degree basis classes vanishes."""
    R = hochster_ring(K, field)
    classes = R.all_classes()
    checked = 0
    for i, u in enumerate(classes):
        for v in classes[i:]:
            if set(u.support) & set(v.support):
                continue
            checked += 1
            if R.product(u, v) is not None:
                return GolodResult(False, (u, v), checked)
    return GolodResult(True, None, checked)


def restriction_split(K: SimplicialComplex, v: int, total_degree: int, field: int = 0) -> tuple[int, int]:
    """Ranks of the kernel and image of restriction to ``Z_{K-v}`` in one degree.

    Summands whose support contains ``v`` die; the others are computed in the
    same full subcomplexes of ``K - v`` and map isomorphically.
    """
    basis = hochster_basis(K, total_degree, field)
    ker = sum(1 for c in basis if v in c.support)
    return ker, len(basis) - ker


def restrict(u: HochsterClass, K_minus_v: SimplicialComplex, v: int) -> HochsterClass | None:
    """Image of a class under restriction to the full subcomplex ``K - v``."""
    if v in u.support:
        return None
    return HochsterClass(u.support, u.internal_degree, u.rep, u.coords, u.field, K_minus_v)


def top_degree(K: SimplicialComplex, field: int = 0) -> int:
    R = hochster_ring(K, field)
    n = len(R.betti) - 1
    if R.betti[n] != 1:
        raise ValueError(f"top Betti number is {R.betti[n]}, expected 1")
    return n


def poincare_pairing(K: SimplicialComplex, p: int, field: int = 0) -> list[list]:
    """Matrix of ``H^p ⊗ H^{n-p} → H^n`` in the Hochster bases."""
    R = hochster_ring(K, field)
    n = top_degree(K, field)
    rows, cols = R.basis(p), R.basis(n - p)
    M = []
    for x in rows:
        line = []
        for y in cols:
            z = R.product(x, y)
            line.append(z.coords[0] if z is not None else 0)
        M.append(line)
    return M


def pairing_rank(M: list[list], field: int = 0) -> int:
    if not M or not M[0]:
        return 0
    return rank_mod_p(M, field)


@dataclass(frozen=True)
class SeparationRow:
    degree: int
    betti: int
    ker_rank: int
    image_rank: int
    image_block_zero: bool
    mixed_rank: int
    mixed_full_rank: bool
    count_matches: bool

    @property
    def passed(self) -> bool:
        return self.image_block_zero and self.mixed_full_rank and self.count_matches


def cup_separation(K: SimplicialComplex, v: int = 1, field: int = 0) -> list[SeparationRow]:
    """Block structure of the Poincaré pairing against restriction to ``K - v``.

    For each ``0 < p < n``: products of two restricted-nonzero classes never
    reach the top class, the pairing of kernel classes in degree ``p`` with
    image classes in degree ``n-p`` is perfect, and
    ``ker(p) + ker(n-p) = b_p``.
    """
    R = hochster_ring(K, field)
    n = top_degree(K, field)
    out = []
    for p in range(1, n):
        rows, cols = R.basis(p), R.basis(n - p)
        if not rows and not cols:
            continue
        M = poincare_pairing(K, p, field)
        ker_r = [i for i, c in enumerate(rows) if v in c.support]
        im_r = [i for i, c in enumerate(rows) if v not in c.support]
        ker_c = [j for j, c in enumerate(cols) if v in c.support]
        im_c = [j for j, c in enumerate(cols) if v not in c.support]
        image_zero = all(not M[i][j] for i in im_r for j in im_c)
        mixed = [[M[i][j] for j in im_c] for i in ker_r]
        mrank = pairing_rank(mixed, field) if ker_r and im_c else 0
        full = mrank == len(ker_r) == len(im_c)
        out.append(
            SeparationRow(
                degree=p,
                betti=len(rows),
                ker_rank=len(ker_r),
                image_rank=len(im_r),
                image_block_zero=image_zero,
                mixed_rank=mrank,
                mixed_full_rank=full,
                count_matches=len(ker_r) + len(ker_c) == len(rows),
            )
        )
    return out
