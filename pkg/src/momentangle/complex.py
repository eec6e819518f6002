"""Finite simplicial complexes stored by their facets.

Faces are sorted tuples of positive integer labels.  A complex carries its
vertex set explicitly, so a label may be a *ghost vertex*: it belongs to the
vertex set but is not a 0-face.  Full subcomplexes and vertex deletions keep
the original labels, which is what the Hochster bookkeeping relies on.

The complex with no facets at all is the empty complex.  For homology and
joins it behaves like the complex ``{∅}``: its reduced cohomology is the
coefficient ring in degree -1 and it is the unit for the join.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

Face = tuple[int, ...]


class ComplexError(ValueError):
    """Raised for malformed complexes or invalid combinatorial requests."""


def _maximal(faces: Iterable[frozenset[int]]) -> list[Face]:
    kept: list[frozenset[int]] = []
    for f in sorted(set(faces), key=len, reverse=True):
        if not f:
            continue
        if not any(f <= g for g in kept):
            kept.append(f)
    return sorted(tuple(sorted(f)) for f in kept)


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[int, ...]
    facets: tuple[Face, ...]

    @classmethod
    def generated(cls, vertices: Iterable[int], faces: Iterable[Sequence[int]]) -> SimplicialComplex:
        """The complex on ``vertices`` generated by ``faces``."""
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        sets = []
        for face in faces:
            fs = frozenset(face)
            if len(fs) != len(face):
                raise ComplexError(f"duplicate vertex in face {list(face)}")
            if not fs <= vset:
                bad = sorted(fs - vset)
                raise ComplexError(f"vertex label(s) {bad} out of range")
            sets.append(fs)
        return cls(verts, tuple(_maximal(sets)))

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_empty(self) -> bool:
        return not self.facets

    @cached_property
    def face_set(self) -> frozenset[Face]:
        out = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return frozenset(out)

    @cached_property
    def _faces_by_dim(self) -> dict[int, list[Face]]:
        by: dict[int, list[Face]] = {}
        for f in self.face_set:
            by.setdefault(len(f) - 1, []).append(f)
        return {d: sorted(fs) for d, fs in by.items()}

    def faces(self, d: int) -> list[Face]:
        """All ``d``-faces in lexicographic order (``d = -1`` gives ``[()]``)."""
        if d == -1:
            return [()]
        return list(self._faces_by_dim.get(d, []))

    def __contains__(self, face: object) -> bool:
        if not isinstance(face, (tuple, list)):
            return False
        return len(face) == 0 or tuple(sorted(face)) in self.face_set

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def ghost_vertices(self) -> tuple[int, ...]:
        used = {v for f in self.facets for v in f}
        return tuple(v for v in self.vertices if v not in used)

    def is_simplex_on(self, subset: Iterable[int]) -> bool:
        """True when ``subset`` (nonempty) is itself a face of the complex."""
        s = frozenset(subset)
        return bool(s) and any(s <= set(f) for f in self.facets)

    def to_dict(self) -> dict:
        out: dict = {"m": self.m, "facets": [list(f) for f in self.facets]}
        if self.vertices != tuple(range(1, self.m + 1)):
            out["vertices"] = list(self.vertices)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __str__(self) -> str:
        body = ", ".join("(" + ",".join(map(str, f)) + ")" for f in self.facets)
        return f"K[{','.join(map(str, self.vertices))}]{{{body}}}"


def new_complex(m: int, faces: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Complex on vertices ``1..m`` generated by ``faces``."""
    if m < 0:
        raise ComplexError("vertex count must be nonnegative")
    return SimplicialComplex.generated(range(1, m + 1), faces)


def simplex(vertices: Sequence[int]) -> SimplicialComplex:
    return SimplicialComplex.generated(vertices, [vertices])


def from_dict(data: dict) -> SimplicialComplex:
    """Read the JSON interchange form, rejecting anything non-canonical."""
    try:
        m = data["m"]
        facets = data["facets"]
    except (KeyError, TypeError) as exc:
        raise ComplexError("complex JSON needs keys 'm' and 'facets'") from exc
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ComplexError("'m' must be a nonnegative integer")
    vertices = data.get("vertices", list(range(1, m + 1)))
    if len(vertices) != m or len(set(vertices)) != m or any(
        not isinstance(v, int) or v < 1 for v in vertices
    ):
        raise ComplexError("'vertices' must list m distinct positive labels")
    if not isinstance(facets, list):
        raise ComplexError("'facets' must be a list")
    seen = []
    for f in facets:
        if not isinstance(f, list) or not f or any(not isinstance(v, int) for v in f):
            raise ComplexError(f"bad facet {f!r}")
        if list(f) != sorted(set(f)):
            raise ComplexError(f"facet {f} is not strictly ascending")
        seen.append(frozenset(f))
    if len(set(seen)) != len(seen):
        raise ComplexError("duplicate facets")
    for a in seen:
        if any(a < b for b in seen):
            raise ComplexError(f"facet {sorted(a)} is contained in another facet")
    return SimplicialComplex.generated(vertices, facets)


def from_json(text: str) -> SimplicialComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexError(f"invalid JSON: {exc}") from exc
    return from_dict(data)


def all_faces(K: SimplicialComplex, d: int) -> list[Face]:
    if d < 0:
        raise ComplexError("dimension must be nonnegative")
    return K.faces(d)


def full_subcomplex(K: SimplicialComplex, subset: Iterable[int]) -> SimplicialComplex:
    """Restriction ``K_I``: faces of ``K`` inside ``I``, on vertex set ``I``."""
    I = frozenset(subset)
    vset = set(K.vertices)
    if not I <= vset:
        raise ComplexError(f"vertex label(s) {sorted(I - vset)} out of range")
    pieces = (frozenset(f) & I for f in K.facets)
    return SimplicialComplex(tuple(sorted(I)), tuple(_maximal(pieces)))


def delete_vertex(K: SimplicialComplex, v: int) -> SimplicialComplex:
    if v not in K.vertices:
        raise ComplexError(f"vertex {v} out of range")
    return full_subcomplex(K, [u for u in K.vertices if u != v])


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> tuple[SimplicialComplex, int]:
    """Join with the labels of ``K2`` shifted past those of ``K1``.

    Returns the join and the offset added to the labels of ``K2``.
    """
    offset = max(K1.vertices, default=0)
    shifted = [tuple(v + offset for v in f) for f in K2.facets]
    verts = list(K1.vertices) + [v + offset for v in K2.vertices]
    if not K1.facets:
        return SimplicialComplex.generated(verts, shifted), offset
    if not shifted:
        return SimplicialComplex.generated(verts, K1.facets), offset
    facets = [f + g for f in K1.facets for g in shifted]
    return SimplicialComplex.generated(verts, facets), offset


def glue_along_face(K: SimplicialComplex, sigma: Sequence[int], k: int) -> SimplicialComplex:
    """Attach a ``k``-simplex along the ``(k-1)``-face ``sigma`` using a fresh vertex."""
    sig = tuple(sorted(sigma))
    if len(sig) != k:
        raise ComplexError(f"face {list(sig)} has {len(sig)} vertices, expected {k}")
    if k > 0 and sig not in K.face_set:
        raise ComplexError(f"{list(sig)} is not a face of the complex")
    new = max(K.vertices, default=0) + 1
    return SimplicialComplex.generated(K.vertices + (new,), list(K.facets) + [sig + (new,)])


def boundary_complex(L: SimplicialComplex) -> SimplicialComplex:
    """Boundary of a pure pseudomanifold-with-boundary.

    Generated by the codimension-one faces lying in exactly one facet; the
    vertex set is unchanged, so interior vertices become ghosts.
    """
    if not L.is_pure():
        raise ComplexError("complex is not pure")
    counts: dict[Face, int] = {}
    for f in L.facets:
        for ridge in combinations(f, len(f) - 1):
            counts[ridge] = counts.get(ridge, 0) + 1
    crowded = [r for r, c in counts.items() if c > 2]
    if crowded:
        raise ComplexError(f"face {list(min(crowded))} lies in {counts[min(crowded)]} facets")
    return SimplicialComplex.generated(L.vertices, [r for r, c in counts.items() if c == 1 and r])


def f_vector(K: SimplicialComplex) -> list[int]:
    return [len(K.faces(d)) for d in range(K.dim + 1)] if K.facets else []


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** d * f for d, f in enumerate(f_vector(K)))
