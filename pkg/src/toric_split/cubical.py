"""A cubical cell model of the real moment-angle complex and its quotients.

Each factor ``D^1 = [0, 1]`` is subdivided at 1/2, so a coordinate of a cell
is one of

    P0 = {0},  P1 = {1},  PH = {1/2},  L = [0, 1/2],  U = [1/2, 1].

A cell lies in ``RZ_K`` iff its support (coordinates not in ``{0, 1}``) is a
face of K.  The flip ``x -> 1 - x`` swaps P0/P1 and L/U and fixes PH, so an
element of ``F_2^m`` that maps a cell to itself fixes it pointwise.  The
orbit cells therefore form a CW structure on the quotient by any subgroup,
and its cellular chains are the coinvariants of the cellular chains of
``RZ_K``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import CapacityError, ComplexIntegrityError, InputError
from .lambdamap import LambdaMap, kernel_elements
from .linalg import Field, GradedChainComplex, QQ, SparseMatrix, betti_numbers
from .simplicial import SimplicialComplex
from .subsets import members, size

__all__ = [
    "P0", "P1", "PH", "L", "U",
    "act",
    "cell_dim",
    "support",
    "boundary",
    "count_cells",
    "GCWComplex",
    "QuotientComplex",
    "build_rzk",
    "build_quotient",
    "quotient_betti",
    "rzk_betti",
]

P0, P1, PH, L, U = 0, 1, 2, 3, 4
FACTOR_NAMES = ("P0", "P1", "PH", "L", "U")

_FLIP = (P1, P0, PH, U, L)
# (lower endpoint, upper endpoint) of the two half intervals
_ENDS = {L: (P0, PH), U: (PH, P1)}

MAX_VERTICES = 12
DEFAULT_MAX_CELLS = 2_000_000


def max_cells() -> int:
    raw = os.environ.get("TORIC_SPLIT_MAX_CELLS")
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"TORIC_SPLIT_MAX_CELLS must be an integer, got {raw!r}") from exc


def cell_dim(cell: tuple) -> int:
    return sum(1 for f in cell if f >= L)


def support(cell: tuple) -> int:
    return sum(1 << i for i, f in enumerate(cell) if f >= PH)


def act(g: int, cell: tuple) -> tuple:
    """Flip the coordinates in ``g``; returns ``(image, sign)``.

    Each flipped half interval reverses orientation, so ``g_*[cell] = sign * [image]``.
    """
    out = list(cell)
    sign = 1
    i = 0
    while g:
        if g & 1:
            f = cell[i]
            out[i] = _FLIP[f]
            if f >= L:
                sign = -sign
        g >>= 1
        i += 1
    return tuple(out), sign


def boundary(cell: tuple) -> list:
    """Cellular boundary as ``[(face, coefficient), ...]``.

    For interval coordinates ``i_1 < ... < i_d`` this is
    ``sum_k (-1)^(k-1) (cell[i_k -> upper] - cell[i_k -> lower])``.
    """
    out = []
    k = 0
    for i, f in enumerate(cell):
        if f < L:
            continue
        lo, hi = _ENDS[f]
        s = -1 if k % 2 else 1
        out.append((cell[:i] + (hi,) + cell[i + 1:], s))
        out.append((cell[:i] + (lo,) + cell[i + 1:], -s))
        k += 1
    return out


def count_cells(k: SimplicialComplex) -> int:
    m = k.m
    return sum(3 ** size(f) * 2 ** (m - size(f)) for f in k.faces)


def _check_capacity(k: SimplicialComplex) -> None:
    if k.m > MAX_VERTICES:
        raise CapacityError(f"m={k.m} exceeds the vertex bound {MAX_VERTICES}")
    n = count_cells(k)
    cap = max_cells()
    if n > cap:
        raise CapacityError(f"RZ_K would have {n} cells, above the cap {cap} (set TORIC_SPLIT_MAX_CELLS to raise it)")


def iter_cells(k: SimplicialComplex):
    """Every cell of ``RZ_K``, grouped by support face."""
    m = k.m
    for tau in sorted(k.faces):
        choices = [(PH, L, U) if tau >> i & 1 else (P0, P1) for i in range(m)]
        yield from itertools.product(*choices)


def _assemble(cells_by_dim: dict, index: dict, face_map) -> GradedChainComplex:
    """Integer chain complex; ``face_map(face)`` returns ``(column index, sign)``."""
    dims = {q: len(cs) for q, cs in cells_by_dim.items()}
    boundaries = {}
    for q, cs in cells_by_dim.items():
        if q == 0:
            continue
        acc = {}
        for j, c in enumerate(cs):
            for face, coef in boundary(c):
                row, s = face_map(face)
                key = (row, j)
                acc[key] = acc.get(key, 0) + s * coef
        boundaries[q] = SparseMatrix.from_dict(dims.get(q - 1, 0), len(cs), acc)
    return GradedChainComplex(dims, boundaries)


@dataclass
class GCWComplex:
    """The subdivided cubical model of ``RZ_K``."""

    complex: SimplicialComplex
    cells: dict  # dimension -> list of cells, sorted
    index: dict  # cell -> position within its dimension

    @property
    def m(self) -> int:
        return self.complex.m

    def __len__(self):
        return sum(len(cs) for cs in self.cells.values())

    def chain_complex(self) -> GradedChainComplex:
        return _assemble(self.cells, self.index, lambda face: (self.index[face], 1))

    def betti(self, field=QQ) -> dict:
        return betti_numbers(self.chain_complex(), Field.parse(field))

    def fixed_cell_defects(self, group) -> list:
        """Pairs ``(g, cell)`` where g maps the cell to itself but moves it pointwise.

        Empty for the midpoint subdivision; a nonempty answer would break the
        quotient CW structure.
        """
        bad = []
        for cs in self.cells.values():
            for c in cs:
                for g in group:
                    image, sign = act(g, c)
                    if image == c and (sign != 1 or any(c[i - 1] != PH for i in members(g))):
                        bad.append((g, c))
        return bad


def build_rzk(k: SimplicialComplex) -> GCWComplex:
    _check_capacity(k)
    cells = {}
    for c in iter_cells(k):
        cells.setdefault(cell_dim(c), []).append(c)
    index = {}
    for q in cells:
        cells[q].sort()
        for j, c in enumerate(cells[q]):
            index[c] = j
    return GCWComplex(k, dict(sorted(cells.items())), index)


@dataclass
class QuotientComplex:
    """Orbit cells of ``RZ_K`` under a subgroup of ``F_2^m``.

    ``representatives[q]`` are the lexicographically minimal cells of the
    dimension-q orbits; ``transport`` sends every cell of ``RZ_K`` to
    ``(orbit index, sign)`` with ``[cell] = sign * [representative]`` in the
    quotient chains.
    """

    complex: SimplicialComplex
    group: list
    representatives: dict
    orbit_sizes: dict
    transport: dict
    total_cells: int

    def chain_complex(self) -> GradedChainComplex:
        return _assemble(self.representatives, None, self.transport.__getitem__)

    def betti(self, field=QQ) -> dict:
        return betti_numbers(self.chain_complex(), Field.parse(field))

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(rs) for q, rs in self.representatives.items())

    def __len__(self):
        return sum(len(rs) for rs in self.representatives.values())


def build_quotient(k: SimplicialComplex, group) -> QuotientComplex:
    """Orbit-cell complex of ``RZ_K / group`` for a subgroup given by its elements."""
    _check_capacity(k)
    group = sorted(set(group))
    if 0 not in group:
        raise InputError("group must contain the identity")
    transport = {}
    reps = {}
    sizes = {}
    total = 0
    for c in iter_cells(k):
        total += 1
        if c in transport:
            continue
        images = {}
        for g in group:
            image, s = act(g, c)
            prev = images.get(image)
            if prev is None:
                images[image] = s
            elif prev != s:
                raise ComplexIntegrityError(f"cell {c} has a stabiliser acting by -1")
        rep = min(images)
        s0 = images[rep]
        q = cell_dim(c)
        bucket = reps.setdefault(q, [])
        idx = len(bucket)
        bucket.append(rep)
        sizes.setdefault(q, []).append(len(images))
        # [image] = s [c] and [rep] = s0 [c], so [image] = s * s0 [rep]
        for image, s in images.items():
            transport[image] = (idx, s * s0)
    return QuotientComplex(k, group, dict(sorted(reps.items())), sizes, transport, total)


def rzk_betti(k: SimplicialComplex, field=QQ) -> dict:
    return build_rzk(k).betti(field)


def quotient_betti(k: SimplicialComplex, lam: LambdaMap, field=QQ) -> dict:
    """Betti numbers of ``M(K, lambda) = RZ_K / ker lambda`` from the orbit-cell chains."""
    if lam.m != k.m:
        raise InputError(f"lambda has m={lam.m} but complex has m={k.m}")
    return build_quotient(k, kernel_elements(lam)).betti(field)
