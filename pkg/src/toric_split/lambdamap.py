"""Linear maps ``F_2^m -> F_2^n``: kernels, row spaces and the characteristic condition.

Vectors in ``F_2^m`` are identified with subsets of ``[m]`` (coordinate i set
iff i is in the subset) and stored as int bitmasks, bit ``i-1`` for ``i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .simplicial import SimplicialComplex
from .subsets import members

__all__ = [
    "LambdaMap",
    "span",
    "kernel_elements",
    "row_space",
    "is_characteristic",
    "free_action_violations",
    "all_row_spaces",
]


def _echelon(vectors) -> dict:
    """Reduced basis of the span, keyed by leading bit."""
    basis = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = v
                break
            v ^= b
    return basis


def f2_rank(vectors) -> int:
    return len(_echelon(vectors))


def span(vectors) -> list:
    """All F_2-combinations of ``vectors``, sorted, without repeats."""
    out = [0]
    for b in _echelon(vectors).values():
        out += [x ^ b for x in out]
    return sorted(out)


@dataclass(frozen=True)
class LambdaMap:
    """An ``n x m`` matrix over F_2.

    ``rows[j]`` is row ``j+1`` as a mask over the m columns; column ``i`` is
    the image of the i-th basis vector, ``lambda(i)``.
    """

    n: int
    m: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.n:
            raise InputError(f"expected {self.n} rows, got {len(rows)}")
        if any(r < 0 or r >> self.m for r in rows):
            raise InputError(f"row entries beyond m={self.m}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_matrix(cls, matrix) -> "LambdaMap":
        matrix = [list(r) for r in matrix]
        if not matrix:
            raise InputError("use LambdaMap.zero for a map with no rows")
        m = len(matrix[0])
        rows = []
        for r in matrix:
            if len(r) != m or any(int(x) not in (0, 1) for x in r):
                raise InputError("lambda rows must be equal-length lists of 0/1")
            rows.append(sum(1 << i for i, x in enumerate(r) if int(x)))
        return cls(len(rows), m, tuple(rows))

    @classmethod
    def identity(cls, m: int) -> "LambdaMap":
        return cls(m, m, tuple(1 << i for i in range(m)))

    @classmethod
    def zero(cls, n: int, m: int) -> "LambdaMap":
        return cls(n, m, (0,) * n)

    @classmethod
    def from_json(cls, obj) -> "LambdaMap":
        try:
            n, m, rows = int(obj["n"]), int(obj["m"]), obj["rows"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"lambda JSON must look like {{'n': int, 'm': int, 'rows': [[0/1, ...], ...]}}: {exc}") from exc
        if len(rows) != n:
            raise InputError(f"lambda JSON declares n={n} but has {len(rows)} rows")
        if n == 0:
            return cls.zero(0, m)
        lam = cls.from_matrix(rows)
        if lam.m != m:
            raise InputError(f"lambda JSON declares m={m} but rows have length {lam.m}")
        return lam

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "rows": self.matrix()}

    def matrix(self) -> list:
        return [[r >> i & 1 for i in range(self.m)] for r in self.rows]

    def column(self, i: int) -> int:
        """``lambda(i)`` as an n-bit mask (bit j-1 for row j), 1-based ``i``."""
        return sum(1 << j for j, r in enumerate(self.rows) if r >> (i - 1) & 1)

    @property
    def rank(self) -> int:
        return f2_rank(self.rows)

    def apply(self, g: int) -> int:
        """``lambda g`` as an n-bit mask."""
        return sum(1 << j for j, r in enumerate(self.rows) if (r & g).bit_count() % 2)

    def row_reduced(self) -> "LambdaMap":
        """Reduced row echelon form with zero rows dropped (same row space and kernel)."""
        basis = _echelon(self.rows)
        leads = sorted(basis, reverse=True)
        for a in leads:
            for b in leads:
                if a != b and basis[b] >> a & 1:
                    basis[b] ^= basis[a]
        return LambdaMap(len(leads), self.m, tuple(basis[a] for a in leads))

    def __repr__(self):
        return f"LambdaMap({self.matrix()})"


def kernel_basis(lam: LambdaMap) -> list:
    """A basis of ``ker lambda``: one vector per non-pivot column of the RREF."""
    rref = lam.row_reduced()
    pivots = {r.bit_length() - 1: r for r in rref.rows}
    basis = []
    for free in range(lam.m):
        if free in pivots:
            continue
        g = 1 << free
        for lead, r in pivots.items():
            if r >> free & 1:
                g |= 1 << lead
        basis.append(g)
    return basis


def kernel_elements(lam: LambdaMap) -> list:
    """All ``g`` with ``lambda g = 0``; there are ``2^(m - rank)`` of them."""
    return span(kernel_basis(lam))


def row_space(lam: LambdaMap) -> list:
    """``Row(lambda)``: the ``2^rank`` subsets spanned by the rows."""
    return span(lam.rows)


def is_characteristic(lam: LambdaMap, k: SimplicialComplex) -> bool:
    """Whether the columns over every face of ``k`` are linearly independent.

    Only facets are checked; subsets of independent sets are independent.
    """
    if lam.m != k.m:
        raise InputError(f"lambda has m={lam.m} but complex has m={k.m}")
    for facet in k.facets:
        cols = [lam.column(i) for i in members(facet)]
        if f2_rank(cols) != len(cols):
            return False
    return True


def free_action_violations(lam: LambdaMap, k: SimplicialComplex) -> list:
    """Nonzero ``g`` in ``ker lambda`` with ``supp(g)`` a face of ``k``.

    Such a ``g`` fixes the point with coordinates 1/2 on ``supp(g)`` and 0
    elsewhere, so the list is empty exactly when the action is free.
    """
    if lam.m != k.m:
        raise InputError(f"lambda has m={lam.m} but complex has m={k.m}")
    return [g for g in kernel_elements(lam) if g and g in k.faces]


def all_row_spaces(m: int) -> list:
    """One RREF representative for each subspace of ``F_2^m`` (every lambda up to row operations)."""
    out = []
    for pivots in range(1 << m):
        leads = [i for i in range(m) if pivots >> i & 1]
        # free entries of a pivot row: non-pivot columns below its leading bit
        slots = [(j, c) for j, a in enumerate(leads) for c in range(a) if not pivots >> c & 1]
        for fill in range(1 << len(slots)):
            rows = [1 << a for a in leads]
            for s, (j, c) in enumerate(slots):
                if fill >> s & 1:
                    rows[j] |= 1 << c
            out.append(LambdaMap(len(rows), m, tuple(rows)))
    return out


def random_lambda(m: int, rng: random.Random, n: int | None = None) -> LambdaMap:
    if n is None:
        n = rng.randint(1, m) if m else 0
    return LambdaMap(n, m, tuple(rng.getrandbits(m) if m else 0 for _ in range(n)))


def random_row_operations(lam: LambdaMap, rng: random.Random, steps: int = 8) -> LambdaMap:
    """Same row space, scrambled by random row additions and swaps."""
    rows = list(lam.rows)
    if len(rows) < 2:
        return lam
    for _ in range(steps):
        a, b = rng.sample(range(len(rows)), 2)
        if rng.random() < 0.5:
            rows[a] ^= rows[b]
        else:
            rows[a], rows[b] = rows[b], rows[a]
    return LambdaMap(lam.n, lam.m, tuple(rows))


def orthogonal(i: int, g: int) -> bool:
    return (i & g).bit_count() % 2 == 0
