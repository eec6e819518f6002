"""Exact linear algebra over the integers, the rationals and prime fields.

Matrices are lists of rows of Python ints.  A *field selector* ``p`` is
``0`` for the rationals or a prime for ``Z/p``; rational arithmetic uses
:class:`fractions.Fraction`, prime-field arithmetic reduced ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_field(p: int) -> None:
    if p != 0 and not is_prime(p):
        raise ValueError(f"field characteristic must be 0 or a prime, got {p}")


def transpose(M: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(c) for c in zip(*M)]


@dataclass(frozen=True)
class SnfResult:
    rank: int
    divisors: tuple[int, ...] = field(default=())


def smith_normal_form(M: Sequence[Sequence[int]]) -> SnfResult:
    """Rank and elementary divisors of an integer matrix.

    Elimination with a minimal-absolute-value pivot on the remaining block;
    ties go to the smallest row, then column.  The diagonal is normalised to
    a divisibility chain at the end.
    """
    A = [list(map(int, r)) for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            Ai = A[i]
            for j in range(t, cols):
                a = Ai[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            for r in A:
                r[t], r[j] = r[j], r[t]
        while True:
            piv = A[t][t]
            for i in range(t + 1, rows):
                q = A[i][t] // piv
                if q:
                    Ai, At = A[i], A[t]
                    for j in range(t, cols):
                        Ai[j] -= q * At[j]
            for j in range(t + 1, cols):
                q = A[t][j] // piv
                if q:
                    for r in A[t:]:
                        r[j] -= q * r[t]
            # remainders are smaller than the pivot; restart with the smallest
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, rows) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, cols) if A[t][j]]
            if not cand:
                break
            _, i, j = min(cand)
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for r in A:
                    r[t], r[j] = r[j], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    n = len(diag)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g
    return SnfResult(rank=n, divisors=tuple(diag))


def _convert(x, p: int):
    return Fraction(x) if p == 0 else x % p


def _inv(x, p: int):
    return 1 / x if p == 0 else pow(x, -1, p)


def _reduce(x, p: int):
    return x if p == 0 else x % p


def rref(M: Sequence[Sequence[int]], p: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the field; returns nonzero rows and pivot columns."""
    check_field(p)
    A = [[_convert(x, p) for x in r] for r in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = next((i for i in range(r, rows) if A[i][c]), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = _inv(A[r][c], p)
        A[r] = [_reduce(x * inv, p) for x in A[r]]
        Ar = A[r]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [_reduce(x - f * y, p) for x, y in zip(A[i], Ar)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod_p(M: Sequence[Sequence[int]], p: int) -> int:
    """Rank over ``Q`` (``p = 0``) or ``Z/p``."""
    return len(rref(M, p)[1])


def nullspace_basis(M: Sequence[Sequence[int]], p: int, cols: int | None = None) -> list[list]:
    """Basis of ``{x : M x = 0}`` read off the reduced echelon form.

    ``cols`` is needed only when ``M`` has no rows.
    """
    check_field(p)
    ncols = len(M[0]) if M else (cols or 0)
    R, pivots = rref(M, p) if M else ([], [])
    pset = set(pivots)
    zero, one = _convert(0, p), _convert(1, p)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(R, pivots):
            v[pc] = _reduce(-row[free], p)
        basis.append(v)
    return basis


class SpanSolver:
    """Expresses vectors in terms of a fixed list of generators over a field.

    The generators need not be independent; :meth:`coefficients` returns one
    solution (deterministic) or ``None`` when the target is outside the span.
    """

    def __init__(self, vectors: Sequence[Sequence], p: int, dim: int | None = None):
        check_field(p)
        self.p = p
        self.dim = len(vectors[0]) if vectors else (dim or 0)
        self.count = len(vectors)
        zero, one = _convert(0, p), _convert(1, p)
        # echelon rows paired with the combination of generators producing them
        self._rows: list[tuple[int, list, list]] = []
        for k, v in enumerate(vectors):
            if len(v) != self.dim:
                raise ValueError("generators have inconsistent lengths")
            vec = [_convert(x, p) for x in v]
            comb = [zero] * self.count
            comb[k] = one
            vec, comb = self._eliminate(vec, comb)
            lead = next((i for i, x in enumerate(vec) if x), None)
            if lead is None:
                continue
            inv = _inv(vec[lead], p)
            vec = [_reduce(x * inv, p) for x in vec]
            comb = [_reduce(x * inv, p) for x in comb]
            self._rows.append((lead, vec, comb))

    def _eliminate(self, vec: list, comb: list) -> tuple[list, list]:
        p = self.p
        for lead, row, rc in self._rows:
            f = vec[lead]
            if f:
                vec = [_reduce(x - f * y, p) for x, y in zip(vec, row)]
                comb = [_reduce(x - f * y, p) for x, y in zip(comb, rc)]
        return vec, comb

    @property
    def rank(self) -> int:
        return len(self._rows)

    def contains(self, target: Sequence) -> bool:
        return self.coefficients(target) is not None

    def coefficients(self, target: Sequence) -> list | None:
        if len(target) != self.dim:
            raise ValueError(f"target has length {len(target)}, expected {self.dim}")
        p = self.p
        zero = _convert(0, p)
        rest = [_convert(x, p) for x in target]
        out = [zero] * self.count
        for lead, row, rc in self._rows:
            f = rest[lead]
            if f:
                rest = [_reduce(x - f * y, p) for x, y in zip(rest, row)]
                out = [_reduce(x + f * y, p) for x, y in zip(out, rc)]
        if any(rest):
            return None
        return out

    def add(self, vector: Sequence) -> bool:
        """Append a generator; returns whether it enlarged the span."""
        p = self.p
        zero, one = _convert(0, p), _convert(1, p)
        for i, (lead, row, rc) in enumerate(self._rows):
            self._rows[i] = (lead, row, rc + [zero])
        self.count += 1
        comb = [zero] * self.count
        comb[-1] = one
        vec, comb = self._eliminate([_convert(x, p) for x in vector], comb)
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            return False
        inv = _inv(vec[lead], p)
        self._rows.append(
            (lead, [_reduce(x * inv, p) for x in vec], [_reduce(x * inv, p) for x in comb])
        )
        return True


def in_span(vectors: Sequence[Sequence], target: Sequence, p: int) -> bool:
    if vectors and any(len(v) != len(target) for v in vectors):
        raise ValueError("dimension mismatch")
    return SpanSolver(vectors, p, dim=len(target)).contains(target)


def row_space_basis(M: Sequence[Sequence[int]], p: int) -> list[list]:
    return rref(M, p)[0] if M else []
