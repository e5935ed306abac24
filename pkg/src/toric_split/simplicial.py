"""Simplicial complexes on ``[m]``, full subcomplexes and reduced homology."""

from __future__ import annotations

import itertools
import random
from typing import Iterable

from .errors import InputError
from .linalg import Field, GradedChainComplex, QQ, SparseMatrix, betti_numbers
from .subsets import full, mask_of, members, size, submasks

__all__ = ["SimplicialComplex", "enumerate_complexes", "random_complex"]

MAX_VERTICES = 24


def _as_mask(face, m: int) -> int:
    if isinstance(face, int):
        if face < 0 or face >> m:
            raise InputError(f"subset mask {face:b} has bits beyond m={m}")
        return face
    return mask_of(face, m)


class SimplicialComplex:
    """A downward-closed family of subsets of ``[m]``, always containing the empty face.

    Vertices are 1-based.  Indices ``i`` with ``{i}`` not a face are ghost
    vertices; they are allowed so that ``K_I`` makes sense for every ``I``.
    Faces are stored as int bitmasks (see :mod:`toric_split.subsets`).
    """

    __slots__ = ("m", "faces", "facets", "_hash")

    def __init__(self, m: int, faces: Iterable[int]):
        faces = frozenset(faces) | {0}
        for f in faces:
            if f >> m:
                raise InputError(f"face {members(f)} not contained in [1, {m}]")
        self.m = m
        self.faces = faces
        bits = [1 << i for i in range(m)]
        self.facets = tuple(sorted(
            (f for f in faces if not any(not f & b and f | b in faces for b in bits)),
            key=lambda f: (size(f), members(f)),
        ))
        self._hash = hash((m, faces))

    @classmethod
    def from_facets(cls, m: int, facets: Iterable) -> "SimplicialComplex":
        """Downward closure of ``facets`` (iterables of 1-based vertices, or masks)."""
        if m < 0 or m > MAX_VERTICES:
            raise InputError(f"vertex count {m} outside [0, {MAX_VERTICES}]")
        faces = set()
        for facet in facets:
            mask = _as_mask(facet, m)
            if mask not in faces:
                faces.update(submasks(mask))
        return cls(m, faces)

    @classmethod
    def simplex(cls, m: int) -> "SimplicialComplex":
        return cls.from_facets(m, [full(m)])

    @classmethod
    def boundary_of_simplex(cls, m: int) -> "SimplicialComplex":
        return cls.from_facets(m, [full(m) & ~(1 << i) for i in range(m)])

    @classmethod
    def from_json(cls, obj) -> "SimplicialComplex":
        try:
            m = int(obj["m"])
            facets = [list(map(int, f)) for f in obj["facets"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"complex JSON must look like {{'m': int, 'facets': [[int, ...], ...]}}: {exc}") from exc
        return cls.from_facets(m, facets)

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [list(members(f)) for f in self.facets if f]}

    def __contains__(self, face) -> bool:
        return _as_mask(face, self.m) in self.faces

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.m == other.m and self.faces == other.faces

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex(m={self.m}, facets={[list(members(f)) for f in self.facets]})"

    def __len__(self):
        return len(self.faces)

    @property
    def vertices(self) -> int:
        """Mask of real vertices ``i`` with ``{i}`` in K."""
        return sum(1 << i for i in range(self.m) if (1 << i) in self.faces)

    @property
    def ghosts(self) -> int:
        return full(self.m) & ~self.vertices

    @property
    def dim(self) -> int:
        return max(size(f) for f in self.faces) - 1

    def faces_of_size(self, k: int) -> list:
        return sorted((f for f in self.faces if size(f) == k), key=members)

    def f_vector(self) -> tuple:
        """``(f_0, f_1, ...)``: numbers of faces of dimension 0, 1, ..."""
        counts = [0] * (self.dim + 1)
        for f in self.faces:
            if f:
                counts[size(f) - 1] += 1
        return tuple(counts)

    def full_subcomplex(self, subset) -> "SimplicialComplex":
        """``K_I``: faces of K inside ``I``.  The ambient index range ``[m]`` is kept."""
        mask = _as_mask(subset, self.m)
        return SimplicialComplex(self.m, (f for f in self.faces if f & mask == f))

    def relabel(self, perm) -> "SimplicialComplex":
        """Image under the vertex bijection ``i -> perm[i-1]``."""
        def image(f):
            return mask_of((perm[v - 1] for v in members(f)), self.m)
        return SimplicialComplex(self.m, (image(f) for f in self.faces))

    # -- homology ---------------------------------------------------------

    def chain_complex(self) -> GradedChainComplex:
        """Augmented simplicial chain complex; the empty face sits in degree -1."""
        by_size = {}
        for f in self.faces:
            by_size.setdefault(size(f), []).append(f)
        index = {}
        for k, fs in by_size.items():
            fs.sort(key=members)
            for j, f in enumerate(fs):
                index[f] = j
        dims = {k - 1: len(fs) for k, fs in by_size.items()}
        boundaries = {}
        for k, fs in by_size.items():
            if k == 0:
                continue
            entries = []
            for j, f in enumerate(fs):
                for pos, v in enumerate(members(f)):
                    entries.append((index[f & ~(1 << (v - 1))], j, -1 if pos % 2 else 1))
            boundaries[k - 1] = SparseMatrix(len(by_size[k - 1]), len(fs), tuple(entries))
        return GradedChainComplex(dims, boundaries)

    def reduced_betti(self, field=QQ) -> dict:
        """Reduced Betti numbers ``{q: b~_q}`` for q from -1 to dim K."""
        return betti_numbers(self.chain_complex(), Field.parse(field), check=False)


def _canonical(k: SimplicialComplex) -> tuple:
    return min(
        tuple(sorted(k.relabel(perm).faces))
        for perm in itertools.permutations(range(1, k.m + 1))
    )


def enumerate_complexes(m: int, up_to_isomorphism: bool = False) -> list:
    """Every simplicial complex on ``[m]`` (ghost vertices allowed).

    Grows complexes from ``{∅}`` by adjoining a minimal non-face at a time.
    With ``up_to_isomorphism`` one representative per relabelling class is kept.
    """
    start = SimplicialComplex(m, {0})
    seen = {start.faces}
    frontier = [start]
    out = [start]
    universe = range(1, 1 << m)
    while frontier:
        nxt = []
        for k in frontier:
            for s in universe:
                if s in k.faces:
                    continue
                if all(s & ~(1 << i) in k.faces for i in range(m) if s >> i & 1):
                    faces = k.faces | {s}
                    if faces not in seen:
                        seen.add(faces)
                        new = SimplicialComplex(m, faces)
                        nxt.append(new)
                        out.append(new)
        frontier = nxt
    if up_to_isomorphism:
        reps = {}
        for k in out:
            reps.setdefault(_canonical(k), k)
        out = list(reps.values())
    out.sort(key=lambda k: (len(k.faces), sorted(k.faces)))
    return out


def random_complex(m: int, rng: random.Random, max_facets: int | None = None) -> SimplicialComplex:
    """Downward closure of a few random subsets of ``[m]``; may contain ghost vertices."""
    max_facets = max_facets or m + 1
    nfacets = rng.randint(0, max_facets)
    facets = []
    for _ in range(nfacets):
        k = rng.randint(1, m)
        facets.append(rng.sample(range(1, m + 1), k))
    return SimplicialComplex.from_facets(m, facets)
