"""Exact linear algebra over prime fields and the rationals.

Everything here is exact.  A :class:`Field` is either ``F_p`` for a
word-sized prime ``p`` (elements are ints reduced into ``[0, p)``) or the
rationals ``Q`` (``p = 0``, elements are :class:`fractions.Fraction`).

Rank is computed by sparse Gaussian elimination with a Markowitz-style
pivot rule (sparsest column first, then shortest row in that column).
Over ``Q`` the elimination is fraction-free on integer rows with content
removal, so intermediate entries stay small for the +-1 boundary matrices
this package produces.  ``F_2`` rows are packed into Python ints.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import CoefficientError, ComplexIntegrityError, InputError

__all__ = [
    "Field",
    "QQ",
    "SparseMatrix",
    "GradedChainComplex",
    "rank",
    "nullspace",
    "betti_numbers",
    "nonzero_part",
    "betti_tuple",
]

_WORD = 1 << 63


def _is_prime(n: int) -> bool:
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


@dataclass(frozen=True)
class Field:
    """A coefficient field: ``F_p`` for prime ``p``, or ``Q`` when ``p == 0``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and (self.p >= _WORD or not _is_prime(self.p)):
            raise InputError(f"field characteristic must be 0 or a word-sized prime, got {self.p}")

    @classmethod
    def parse(cls, desc) -> "Field":
        """Accept a Field, an int characteristic, or strings like ``q``, ``f3``, ``F_5``, ``0``."""
        if isinstance(desc, Field):
            return desc
        if isinstance(desc, int):
            return cls(desc)
        if isinstance(desc, str):
            s = desc.strip().lower().replace("_", "")
            if s in ("q", "0", "qq", "rational", "rationals"):
                return cls(0)
            if s.startswith("f"):
                s = s[1:]
            try:
                return cls(int(s))
            except ValueError:
                pass
        raise InputError(f"unrecognised field descriptor {desc!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def name(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __str__(self):
        return self.name

    # -- elements ---------------------------------------------------------

    def __call__(self, x):
        """Coerce an int or Fraction into this field's canonical representation."""
        p = self.p
        if p == 0:
            return Fraction(x)
        if isinstance(x, int):
            return x % p
        x = Fraction(x)
        if x.denominator % p == 0:
            raise CoefficientError(f"{x} has denominator divisible by {p}")
        return x.numerator * pow(x.denominator, p - 2, p) % p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def add(self, a, b):
        return a + b if self.p == 0 else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p == 0 else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p == 0 else (a * b) % self.p

    def neg(self, a):
        return -a if self.p == 0 else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / Fraction(a)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = Field(0)


@dataclass(frozen=True)
class SparseMatrix:
    """An immutable sparse matrix stored as ``(row, col, value)`` triples.

    Values are plain ints or Fractions; they are coerced into a field only
    when a field-dependent operation (rank, product over F_p) asks for it.
    Zero values are dropped on construction.
    """

    nrows: int
    ncols: int
    entries: tuple = dc_field(default=())

    def __post_init__(self):
        if self.nrows < 0 or self.ncols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        seen = set()
        kept = []
        for r, c, v in self.entries:
            if not (0 <= r < self.nrows and 0 <= c < self.ncols):
                raise InputError(f"entry ({r}, {c}) outside a {self.nrows}x{self.ncols} matrix")
            if (r, c) in seen:
                raise InputError(f"duplicate entry at ({r}, {c})")
            seen.add((r, c))
            if v:
                kept.append((r, c, v))
        object.__setattr__(self, "entries", tuple(kept))

    @classmethod
    def from_dict(cls, nrows: int, ncols: int, data: Mapping) -> "SparseMatrix":
        return cls(nrows, ncols, tuple((r, c, v) for (r, c), v in data.items()))

    @classmethod
    def from_dense(cls, rows) -> "SparseMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged dense matrix")
        return cls(len(rows), ncols, tuple((i, j, v) for i, r in enumerate(rows) for j, v in enumerate(r) if v))

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols, ())

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple((i, i, 1) for i in range(n)))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, tuple((c, r, v) for r, c, v in self.entries))

    def to_dense(self) -> list:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.entries:
            out[r][c] = v
        return out

    def row_dicts(self, field: Field | None = None) -> list:
        rows = [dict() for _ in range(self.nrows)]
        for r, c, v in self.entries:
            rows[r][c] = field(v) if field is not None else v
        if field is not None and field.p:
            for row in rows:
                for c in [c for c, v in row.items() if not v]:
                    del row[c]
        return rows

    def matmul(self, other: "SparseMatrix", field: Field | None = None) -> "SparseMatrix":
        """Matrix product, over ``field`` if given, else in exact ints/Fractions."""
        if self.ncols != other.nrows:
            raise InputError(f"cannot multiply {self.shape} by {other.shape}")
        by_row = defaultdict(list)
        for r, c, v in other.entries:
            by_row[r].append((c, v))
        acc = defaultdict(int)
        for r, k, v in self.entries:
            for c, w in by_row.get(k, ()):
                acc[r, c] += v * w
        if field is not None:
            acc = {rc: field(v) for rc, v in acc.items()}
        return SparseMatrix.from_dict(self.nrows, other.ncols, acc)

    def is_zero(self, field: Field | None = None) -> bool:
        if field is None or field.p == 0:
            return not self.entries
        return all(field(v) == 0 for _, _, v in self.entries)


# -- rank ----------------------------------------------------------------


def _rank_gf2(rows: Iterable[Mapping]) -> int:
    basis = {}
    for row in rows:
        bits = 0
        for c, v in row.items():
            if v % 2:
                bits |= 1 << c
        while bits:
            lead = bits.bit_length() - 1
            b = basis.get(lead)
            if b is None:
                basis[lead] = bits
                break
            bits ^= b
    return len(basis)


def _markowitz(rows: list, normalize: Callable, combine: Callable) -> int:
    """Sparse elimination counting pivots.

    ``normalize(prow, c)`` prepares the pivot row; ``combine(row, prow, c)``
    returns ``row`` with column ``c`` eliminated (a new dict, zeros dropped).
    """
    live = {i: r for i, r in enumerate(rows) if r}
    cols = defaultdict(set)
    for i, r in live.items():
        for c in r:
            cols[c].add(i)
    heap = [(len(s), c) for c, s in cols.items()]
    heapq.heapify(heap)
    rk = 0
    while heap:
        cnt, c = heapq.heappop(heap)
        members = cols.get(c)
        if not members or len(members) != cnt:
            continue
        piv = min(members, key=lambda i: (len(live[i]), i))
        prow = normalize(live.pop(piv), c)
        for cc in prow:
            cols[cc].discard(piv)
        touched = set(prow)
        for i in list(members):
            old = live[i]
            new = combine(old, prow, c)
            gone = old.keys() - new.keys()
            added = new.keys() - old.keys()
            for cc in gone:
                cols[cc].discard(i)
            for cc in added:
                cols[cc].add(i)
            touched.update(gone)
            touched.update(added)
            if new:
                live[i] = new
            else:
                del live[i]
        del cols[c]
        rk += 1
        for cc in touched:
            s = cols.get(cc)
            if s:
                heapq.heappush(heap, (len(s), cc))
    return rk


def _rank_mod_p(rows: list, p: int) -> int:
    def normalize(prow, c):
        inv = pow(prow[c], p - 2, p)
        return {cc: v * inv % p for cc, v in prow.items()} if inv != 1 else prow

    def combine(row, prow, c):
        f = row[c]
        new = dict(row)
        for cc, v in prow.items():
            nv = (new.get(cc, 0) - f * v) % p
            if nv:
                new[cc] = nv
            else:
                new.pop(cc, None)
        return new

    return _markowitz(rows, normalize, combine)


def _content(row: Mapping) -> int:
    g = 0
    for v in row.values():
        g = math.gcd(g, v)
        if g == 1:
            break
    return g


def _rank_integer(rows: list) -> int:
    def normalize(prow, c):
        return prow

    def combine(row, prow, c):
        a, b = prow[c], row[c]
        g = math.gcd(a, b)
        a, b = a // g, b // g
        new = {cc: a * v for cc, v in row.items()} if a != 1 else dict(row)
        for cc, v in prow.items():
            nv = new.get(cc, 0) - b * v
            if nv:
                new[cc] = nv
            else:
                new.pop(cc, None)
        g = _content(new)
        if g > 1:
            new = {cc: v // g for cc, v in new.items()}
        return new

    return _markowitz(rows, normalize, combine)


def _integerize(row: Mapping) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // math.gcd(den, v.denominator)
    if den == 1:
        return {c: int(v) for c, v in row.items()}
    return {c: int(v * den) for c, v in row.items()}


def rank(m: SparseMatrix, field=QQ) -> int:
    """Rank of ``m`` over ``field`` (a :class:`Field` or descriptor)."""
    field = Field.parse(field)
    if not m.entries:
        return 0
    rows = m.row_dicts(field)
    if field.p == 2:
        return _rank_gf2(rows)
    if field.p:
        return _rank_mod_p(rows, field.p)
    return _rank_integer([_integerize(r) for r in rows])


def nullspace(m: SparseMatrix, field=QQ) -> list:
    """A basis of ``{v : m v = 0}``, each vector a dict ``column -> value`` in ``field``."""
    field = Field.parse(field)
    pivots = {}  # pivot column -> reduced row (pivot entry 1)
    for row in m.row_dicts(field):
        row = {c: v for c, v in row.items() if v}
        for c, prow in pivots.items():
            f = row.get(c)
            if f:
                for cc, v in prow.items():
                    nv = field.sub(row.get(cc, field.zero), field.mul(f, v))
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        if not row:
            continue
        c = min(row)
        inv = field.inv(row[c])
        row = {cc: field.mul(v, inv) for cc, v in row.items()}
        for pc, prow in pivots.items():
            f = prow.get(c)
            if f:
                for cc, v in row.items():
                    nv = field.sub(prow.get(cc, field.zero), field.mul(f, v))
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        pivots[c] = row
    basis = []
    for free in range(m.ncols):
        if free in pivots:
            continue
        v = {free: field.one}
        for c, prow in pivots.items():
            f = prow.get(free)
            if f:
                v[c] = field.neg(f)
        basis.append(v)
    return basis


# -- chain complexes -----------------------------------------------------


@dataclass(frozen=True)
class GradedChainComplex:
    """Finite chain complex: ``dims[q]`` basis sizes, ``boundaries[q]`` is d_q: C_q -> C_{q-1}.

    Degrees missing from ``boundaries`` have zero differential.
    """

    dims: Mapping[int, int]
    boundaries: Mapping[int, SparseMatrix] = dc_field(default_factory=dict)

    def __post_init__(self):
        dims = {int(q): int(n) for q, n in self.dims.items()}
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "boundaries", dict(self.boundaries))
        for q, d in self.boundaries.items():
            want = (dims.get(q - 1, 0), dims.get(q, 0))
            if d.shape != want:
                raise ComplexIntegrityError(f"boundary in degree {q} has shape {d.shape}, expected {want}")

    @property
    def degrees(self) -> range:
        if not self.dims:
            return range(0)
        return range(min(self.dims), max(self.dims) + 1)

    def boundary(self, q: int) -> SparseMatrix:
        d = self.boundaries.get(q)
        if d is None:
            return SparseMatrix.zero(self.dims.get(q - 1, 0), self.dims.get(q, 0))
        return d

    def euler_characteristic(self) -> int:
        return sum((-1) ** (q % 2) * n for q, n in self.dims.items())

    def check(self, field=QQ) -> None:
        """Raise ComplexIntegrityError unless d_{q-1} d_q = 0 over ``field``."""
        field = Field.parse(field)
        for q in self.boundaries:
            if q - 1 in self.boundaries:
                prod = self.boundaries[q - 1].matmul(self.boundaries[q], field)
                if not prod.is_zero(field):
                    raise ComplexIntegrityError(f"d_{q - 1} . d_{q} != 0 over {field.name}")


def betti_numbers(c: GradedChainComplex, field=QQ, check: bool = True) -> dict:
    """Betti numbers ``{q: dim H_q}`` over the whole degree window of ``c``."""
    field = Field.parse(field)
    if check:
        c.check(field)
    ranks = {q: rank(d, field) for q, d in c.boundaries.items()}
    return {q: c.dims.get(q, 0) - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in c.degrees}


def nonzero_part(betti: Mapping[int, int]) -> dict:
    """Drop zero entries so Betti tables over different windows compare equal."""
    return {q: b for q, b in sorted(betti.items()) if b}


def betti_tuple(betti: Mapping[int, int], top: int | None = None, start: int = 0) -> tuple:
    """Betti table as a tuple indexed from ``start`` through ``top`` (default: last nonzero)."""
    nz = nonzero_part(betti)
    if top is None:
        top = max(nz, default=start)
    return tuple(betti.get(q, 0) for q in range(start, top + 1))
