"""Cai's differential graded algebra ``R_K`` and its ``ker lambda`` invariants.

``R_K`` is generated by ``u_i`` (degree 1) and ``t_i`` (degree 0) subject to

    u_i^2, u_i u_j + u_j u_i, u_i t_i - u_i, t_i u_i, t_i u_j - u_j t_i,
    t_i^2 - t_i, t_i t_j - t_j t_i, u_sigma (sigma not in K),

with ``d t_i = u_i``.  Every element has a unique normal form as a
combination of monomials ``u_sigma t_S`` with ``sigma`` in K and
``sigma ∩ S = ∅``; the index set of such a monomial is ``sigma ∪ S``.

The flip of coordinate i acts by ``t_i -> 1 - t_i`` and ``u_i -> -u_i`` on
normal-form monomials.  This is the cellular action on the cube-cochain
basis; it commutes with ``d`` but is *not* multiplicative at chain level
(``u_i t_i = u_i`` is not preserved), only in cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import CoefficientError, DomainError, InputError
from .lambdamap import LambdaMap, kernel_basis, kernel_elements, row_space
from .linalg import Field, GradedChainComplex, QQ, SparseMatrix, betti_numbers, nullspace, rank
from .simplicial import SimplicialComplex
from .subsets import full, members, size, submasks

__all__ = [
    "Monomial",
    "DgaElement",
    "CaiAlgebra",
    "multiply",
    "differential",
    "act_dga",
    "reynolds",
    "phi",
    "dga_betti",
    "submodule_basis",
    "to_simplicial_cochain",
    "simplicial_coboundary",
    "intertwining_sign",
    "invariant_betti",
]


class Monomial(NamedTuple):
    """``u_sigma t_rest`` with disjoint masks ``sigma`` and ``rest``."""

    sigma: int
    rest: int

    @property
    def degree(self) -> int:
        return size(self.sigma)

    @property
    def index_set(self) -> int:
        return self.sigma | self.rest

    def __str__(self):
        if not self.sigma and not self.rest:
            return "1"
        out = ""
        if self.sigma:
            out += "u" + "".join(map(str, members(self.sigma)))
        if self.rest:
            out += "t" + "".join(map(str, members(self.rest)))
        return out


ONE = Monomial(0, 0)


# -- monomial rules (integer coefficients) ---------------------------------


def _inversions(a: int, b: int) -> int:
    """Number of pairs ``(x in a, y in b)`` with ``x > y``."""
    count = 0
    while b:
        low = b & -b
        count += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return count


def mono_product(faces, x: Monomial, y: Monomial):
    """``(monomial, sign)`` for ``x * y``, or None when the product vanishes."""
    if x.rest & y.sigma or x.sigma & y.sigma:
        return None
    sigma = x.sigma | y.sigma
    if sigma not in faces:
        return None
    sign = -1 if _inversions(x.sigma, y.sigma) % 2 else 1
    return Monomial(sigma, (x.rest | y.rest) & ~sigma), sign


def mono_differential(faces, x: Monomial) -> list:
    """``d(u_sigma t_S) = sum_{i in S} (-1)^{#{j in sigma, j < i}} u_{sigma + i} t_{S - i}``.

    This is the derivation extending ``d t_i = u_i``: ``d`` passes the
    degree-``|sigma|`` factor ``u_sigma`` with sign ``(-1)^|sigma|``, and
    moving ``u_i`` into place inside ``u_sigma`` costs ``(-1)^{#{j > i}}``.
    """
    out = []
    s = x.rest
    while s:
        bit = s & -s
        s ^= bit
        sigma = x.sigma | bit
        if sigma in faces:
            below = (x.sigma & (bit - 1)).bit_count()
            out.append((Monomial(sigma, x.rest ^ bit), -1 if below % 2 else 1))
    return out


def mono_act(g: int, x: Monomial) -> list:
    """Expansion of ``g . x``: ``u_i -> -u_i`` and ``t_i -> 1 - t_i`` for i in g."""
    sign = -1 if (x.sigma & g).bit_count() % 2 else 1
    kept = x.rest & ~g
    flipped = x.rest & g
    return [
        (Monomial(x.sigma, kept | a), -sign if size(a) % 2 else sign)
        for a in submasks(flipped)
    ]


def group_sum(group, x: Monomial) -> dict:
    """``sum_{g in group} g . x`` with integer coefficients."""
    acc = {}
    for g in group:
        for y, s in mono_act(g, x):
            acc[y] = acc.get(y, 0) + s
    return {y: c for y, c in acc.items() if c}


# -- elements --------------------------------------------------------------


class DgaElement:
    """An element of ``R_K``: a finite map ``Monomial -> coefficient`` with no zeros."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "CaiAlgebra", terms=None):
        f = algebra.field
        self.algebra = algebra
        self.terms = {}
        for mono, c in (terms or {}).items():
            c = f(c)
            if c:
                self.terms[Monomial(*mono)] = c

    @property
    def field(self) -> Field:
        return self.algebra.field

    def _combine(self, other, sign):
        if not isinstance(other, DgaElement):
            return NotImplemented
        f = self.field
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = f.add(acc.get(mono, f.zero), c if sign > 0 else f.neg(c))
        return DgaElement(self.algebra, acc)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "DgaElement":
        f = self.field
        c = f(c)
        return DgaElement(self.algebra, {m: f.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DgaElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, DgaElement):
            return self.field == other.field and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def d(self) -> "DgaElement":
        return differential(self)

    @property
    def index_sets(self) -> set:
        return {m.index_set for m in self.terms}

    @property
    def degrees(self) -> set:
        return {m.degree for m in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        out = ""
        for mono, c in sorted(self.terms.items(), key=lambda kv: (-size(kv[0].index_set), kv[0])):
            neg = self.field.p == 0 and c < 0
            c = -c if neg else c
            word = str(c) if mono == ONE else (str(mono) if c == 1 else f"{c}{mono}")
            out += (" - " if neg else " + ") + word if out else ("-" if neg else "") + word
        return out


class CaiAlgebra:
    """``R_K`` over a field, with its monomial basis."""

    def __init__(self, k: SimplicialComplex, field=QQ):
        self.complex = k
        self.field = Field.parse(field)
        self.faces = k.faces
        self.m = k.m

    def __repr__(self):
        return f"CaiAlgebra(m={self.m}, field={self.field.name})"

    def element(self, terms=None) -> DgaElement:
        return DgaElement(self, terms)

    def monomial(self, sigma=(), rest=()) -> DgaElement:
        """``u_sigma t_rest`` reduced to normal form (zero if sigma is not a face)."""
        sigma = sigma if isinstance(sigma, int) else sum(1 << (i - 1) for i in sigma)
        rest = rest if isinstance(rest, int) else sum(1 << (i - 1) for i in rest)
        if sigma not in self.faces:
            return self.zero
        return DgaElement(self, {Monomial(sigma, rest & ~sigma): 1})

    @property
    def zero(self) -> DgaElement:
        return DgaElement(self)

    @property
    def one(self) -> DgaElement:
        return DgaElement(self, {ONE: 1})

    def u(self, i: int) -> DgaElement:
        return self.monomial([i])

    def t(self, i: int) -> DgaElement:
        return self.monomial((), [i])

    def basis(self, degree: int | None = None) -> list:
        """Normal-form monomials, optionally of one degree, in a fixed order."""
        top = full(self.m)
        out = [
            Monomial(sigma, rest)
            for sigma in self.faces
            if degree is None or size(sigma) == degree
            for rest in submasks(top & ~sigma)
        ]
        out.sort(key=lambda x: (x.degree, x.index_set, x.sigma))
        return out

    @property
    def top_degree(self) -> int:
        return max(size(f) for f in self.faces)

    def chain_complex(self) -> GradedChainComplex:
        """``(R_K, d)`` as an integer cochain complex; ``d`` raises degree."""
        bases = {q: self.basis(q) for q in range(self.top_degree + 1)}
        return _cochain_complex(bases, lambda x: mono_differential(self.faces, x))


def _cochain_complex(bases: dict, d) -> GradedChainComplex:
    """Encode a cochain complex as a chain complex in degrees ``-q``.

    Ranks and hence Betti numbers are unchanged; callers read the result
    back with ``q -> -q``.
    """
    index = {q: {x: j for j, x in enumerate(b)} for q, b in bases.items()}
    dims = {-q: len(b) for q, b in bases.items()}
    boundaries = {}
    for q, b in bases.items():
        if q + 1 not in bases:
            continue
        acc = {}
        for j, x in enumerate(b):
            for y, s in d(x):
                key = (index[q + 1][y], j)
                acc[key] = acc.get(key, 0) + s
        boundaries[-q] = SparseMatrix.from_dict(len(bases[q + 1]), len(b), acc)
    return GradedChainComplex(dims, boundaries)


def _check_same(x: DgaElement, y: DgaElement):
    if x.algebra is not y.algebra and (x.field != y.field or x.algebra.faces != y.algebra.faces):
        raise InputError("elements belong to different algebras")


def multiply(x: DgaElement, y: DgaElement) -> DgaElement:
    """Product in ``R_K``, extended bilinearly from the monomial rule."""
    _check_same(x, y)
    f = x.field
    faces = x.algebra.faces
    acc = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            r = mono_product(faces, a, b)
            if r is None:
                continue
            mono, s = r
            c = f.mul(ca, cb)
            acc[mono] = f.add(acc.get(mono, f.zero), c if s > 0 else f.neg(c))
    return DgaElement(x.algebra, acc)


def _linear(x: DgaElement, rule) -> DgaElement:
    f = x.field
    acc = {}
    for a, c in x.terms.items():
        for mono, s in rule(a):
            acc[mono] = f.add(acc.get(mono, f.zero), c if s > 0 else f.neg(c))
    return DgaElement(x.algebra, acc)


def differential(x: DgaElement) -> DgaElement:
    faces = x.algebra.faces
    return _linear(x, lambda a: mono_differential(faces, a))


def act_dga(g, x: DgaElement) -> DgaElement:
    """Action of ``g in F_2^m`` (a mask or iterable of vertices)."""
    if not isinstance(g, int):
        g = sum(1 << (i - 1) for i in g)
    return _linear(x, lambda a: mono_act(g, a))


def _check_group_order(field: Field, order: int):
    if field.p and order % field.p == 0:
        raise CoefficientError(f"|ker lambda| = {order} is not invertible in {field.name}")


def reynolds(x: DgaElement, kernel) -> DgaElement:
    """``N(x) = |G|^-1 sum_{g in G} g x`` for the group ``kernel`` (list of masks)."""
    kernel = list(kernel)
    f = x.field
    _check_group_order(f, len(kernel))
    acc = x.algebra.zero
    for g in kernel:
        acc = acc + act_dga(g, x)
    return acc.scale(f.inv(f(len(kernel))))


def is_invariant(x: DgaElement, lam: LambdaMap) -> bool:
    return all(act_dga(g, x) == x for g in kernel_basis(lam))


def project_row(x: DgaElement, rows) -> DgaElement:
    """Delete the monomials whose index set is not in ``rows``."""
    rows = set(rows)
    return DgaElement(x.algebra, {m: c for m, c in x.terms.items() if m.index_set in rows})


def phi(x: DgaElement, lam: LambdaMap) -> DgaElement:
    """Restrict an invariant element to the summands ``R_{K_I}`` with ``I in Row(lambda)``."""
    if not is_invariant(x, lam):
        raise DomainError(f"{x!r} is not ker(lambda)-invariant")
    return project_row(x, row_space(lam))


def submodule_basis(k: SimplicialComplex, subset) -> list:
    """``{u_sigma t_{I - sigma} : sigma in K_I}``, the basis of the summand ``R_{K_I}``."""
    i = subset if isinstance(subset, int) else sum(1 << (v - 1) for v in subset)
    faces = [f for f in k.faces if f & i == f]
    return sorted((Monomial(f, i & ~f) for f in faces), key=lambda x: (x.degree, x.sigma))


def dga_betti(k: SimplicialComplex, field=QQ) -> dict:
    """Cohomology dimensions of ``(R_K, d)``, indexed by degree."""
    alg = CaiAlgebra(k, field)
    b = betti_numbers(alg.chain_complex(), alg.field, check=False)
    return {-q: n for q, n in sorted(b.items(), reverse=True)}


# -- simplicial cochains ----------------------------------------------------


@dataclass(frozen=True)
class Cochain:
    """A cochain on the full subcomplex ``K_I`` of degree ``degree`` (-1 is the augmentation)."""

    index_set: int
    degree: int
    coefficients: dict


def to_simplicial_cochain(x: Monomial) -> Cochain:
    """``u_sigma t_{I - sigma} -> sigma^*`` in the augmented cochains of ``K_I``."""
    return Cochain(x.index_set, size(x.sigma) - 1, {x.sigma: 1})


def simplicial_coboundary(k: SimplicialComplex, c: Cochain) -> Cochain:
    """Augmented simplicial coboundary on ``K_I``, ``delta(sigma^*) = sum [tau : sigma] tau^*``."""
    acc = {}
    i = c.index_set
    for sigma, coef in c.coefficients.items():
        free = i & ~sigma
        while free:
            bit = free & -free
            free ^= bit
            tau = sigma | bit
            if tau in k.faces:
                s = -1 if (sigma & (bit - 1)).bit_count() % 2 else 1
                acc[tau] = acc.get(tau, 0) + s * coef
    return Cochain(i, c.degree + 1, {t: v for t, v in acc.items() if v})


def intertwining_sign(degree: int) -> int:
    """Sign ``e`` with ``psi(d x) = e * delta(psi(x))`` for x of the given ``R_K`` degree.

    With the Leibniz differential the unsigned map ``u_sigma t -> sigma^*``
    is already a cochain map, so the sign is 1 in every degree.
    """
    return 1


# -- invariants --------------------------------------------------------------


def _matrix(columns, row_index, nrows) -> SparseMatrix:
    acc = {}
    for j, col in enumerate(columns):
        for y, c in col.items():
            acc[row_index[y], j] = c
    return SparseMatrix.from_dict(nrows, len(columns), acc)


def _apply_d(faces, col: dict) -> dict:
    acc = {}
    for x, c in col.items():
        for y, s in mono_differential(faces, x):
            acc[y] = acc.get(y, 0) + s * c
    return {y: v for y, v in acc.items() if v}


def invariant_betti(k: SimplicialComplex, lam: LambdaMap, field=QQ) -> dict:
    """Cohomology of the ``ker lambda``-invariant subcomplex of ``R_K``.

    The invariant cochains in degree q are spanned by ``sum_g g x`` over all
    degree-q monomials x (valid when |ker lambda| is invertible), so only
    ranks of those spanning sets and of their differentials are needed.
    """
    field = Field.parse(field)
    group = kernel_elements(lam)
    _check_group_order(field, len(group))
    alg = CaiAlgebra(k, field)
    top = alg.top_degree
    bases = {q: alg.basis(q) for q in range(top + 2)}
    index = {q: {x: j for j, x in enumerate(b)} for q, b in bases.items()}
    dim_inv, rk_d = {}, {}
    for q in range(top + 1):
        cols = [group_sum(group, x) for x in bases[q]]
        dim_inv[q] = rank(_matrix(cols, index[q], len(bases[q])), field)
        dcols = [_apply_d(alg.faces, col) for col in cols]
        rk_d[q] = rank(_matrix(dcols, index[q + 1], len(bases[q + 1])), field)
    return {q: dim_inv[q] - rk_d[q] - rk_d.get(q - 1, 0) for q in range(top + 1)}


def invariant_basis(alg: CaiAlgebra, lam: LambdaMap) -> list:
    """``N(u_sigma t_{I - sigma})`` for ``I in Row(lambda)`` and ``sigma in K_I``."""
    group = kernel_elements(lam)
    out = []
    for i in row_space(lam):
        for mono in submodule_basis(alg.complex, i):
            out.append(reynolds(alg.element({mono: 1}), group))
    return out


def fixed_dimension(alg: CaiAlgebra, lam: LambdaMap, degree: int) -> int:
    """Dimension of the subspace of degree-``degree`` elements fixed by every ``g in ker lambda``."""
    basis = alg.basis(degree)
    index = {x: j for j, x in enumerate(basis)}
    gens = kernel_basis(lam)
    acc = {}
    for r, g in enumerate(gens):
        off = r * len(basis)
        for j, x in enumerate(basis):
            for y, s in mono_act(g, x):
                key = (off + index[y], j)
                acc[key] = acc.get(key, 0) + s
            key = (off + j, j)
            acc[key] = acc.get(key, 0) - 1
    m = SparseMatrix.from_dict(len(gens) * len(basis), len(basis), {k: v for k, v in acc.items() if v})
    return len(basis) - rank(m, alg.field)


def maximal_term_defects(k: SimplicialComplex, lam: LambdaMap, field=QQ) -> list:
    """Monomials ``x`` with ``I in Row(lambda)`` whose ``N(x)`` lacks ``x`` as unique maximal term.

    The check: ``x`` has coefficient 1 and every other monomial of ``N(x)``
    has index set strictly inside ``I``.
    """
    alg = CaiAlgebra(k, field)
    group = kernel_elements(lam)
    bad = []
    for i in row_space(lam):
        for mono in submodule_basis(k, i):
            n = reynolds(alg.element({mono: 1}), group)
            if n.terms.get(mono) != alg.field.one:
                bad.append(mono)
                continue
            for other in n.terms:
                if other != mono and not (other.index_set & i == other.index_set and other.index_set != i):
                    bad.append(mono)
                    break
    return bad


@dataclass
class PhiRankRow:
    degree: int
    invariant_dim: int
    target_dim: int
    phi_rank: int

    @property
    def bijective(self) -> bool:
        return self.invariant_dim == self.target_dim == self.phi_rank


def phi_rank_table(k: SimplicialComplex, lam: LambdaMap, field=QQ) -> list:
    """Per degree: dim of the invariants, dim of ``⊕_{I in Row} R_{K_I}``, and rank of Phi on the invariants."""
    field = Field.parse(field)
    group = kernel_elements(lam)
    _check_group_order(field, len(group))
    rows = set(row_space(lam))
    alg = CaiAlgebra(k, field)
    out = []
    for q in range(alg.top_degree + 1):
        basis = alg.basis(q)
        index = {x: j for j, x in enumerate(basis)}
        sums = [group_sum(group, x) for x in basis]
        projected = [{y: c for y, c in col.items() if y.index_set in rows} for col in sums]
        target = sum(1 for x in basis if x.index_set in rows)
        out.append(PhiRankRow(
            q,
            rank(_matrix(sums, index, len(basis)), field),
            target,
            rank(_matrix(projected, index, len(basis)), field),
        ))
    return out


def phi_multiplicativity_defects(k: SimplicialComplex, lam: LambdaMap, field=QQ, limit: int | None = None) -> list:
    """Pairs of invariant basis elements violating ``Phi(xy) = pi(Phi(x) Phi(y))`` at chain level.

    Each defect is ``(x, y, reason)``; ``reason`` is ``"product not invariant"``
    when ``xy`` leaves the invariants (so ``Phi(xy)`` is undefined), else
    ``"mismatch"``.  Stops after ``limit`` defects when given.
    """
    alg = CaiAlgebra(k, field)
    rows = row_space(lam)
    basis = invariant_basis(alg, lam)
    bad = []
    for x in basis:
        px = project_row(x, rows)
        for y in basis:
            xy = x * y
            if not is_invariant(xy, lam):
                bad.append((x, y, "product not invariant"))
            elif project_row(xy, rows) != project_row(px * project_row(y, rows), rows):
                bad.append((x, y, "mismatch"))
            if limit is not None and len(bad) >= limit:
                return bad
    return bad


def _in_span(vectors: list, target: dict, index: dict, field: Field) -> bool:
    """Whether ``target`` lies in the span of ``vectors`` (dicts keyed like ``index``)."""
    if not target:
        return True
    base = rank(_matrix(vectors, index, len(index)), field) if vectors else 0
    return rank(_matrix(vectors + [target], index, len(index)), field) == base


def invariant_cocycles(alg: CaiAlgebra, lam: LambdaMap, degree: int) -> list:
    """A basis of the degree-``degree`` cocycles of the invariant subcomplex."""
    basis = [x for x in invariant_basis(alg, lam) if x.degrees <= {degree} and x]
    if not basis:
        return []
    nxt = alg.basis(degree + 1)
    index = {y: j for j, y in enumerate(nxt)}
    dcols = [x.d().terms for x in basis]
    coeffs = nullspace(_matrix(dcols, index, len(nxt)), alg.field) if nxt else [{j: 1} for j in range(len(basis))]
    out = []
    for vec in coeffs:
        z = alg.zero
        for j, c in vec.items():
            z = z + basis[j].scale(c)
        out.append(z)
    return out


def phi_cohomology_defects(k: SimplicialComplex, lam: LambdaMap, field=QQ) -> list:
    """Invariant cocycle pairs for which ``pi(xy) - pi(pi(x) pi(y))`` is not a coboundary.

    This is the ring statement for ``Phi`` in cohomology; coboundaries are
    taken inside ``⊕_{I in Row(lambda)} R_{K_I}``.  It holds when K has no
    ghost vertices.  A ghost-only ``I`` in Row(lambda) has ``K_I = {∅}``,
    whose degree-0 class breaks the multiply-then-delete product.
    """
    alg = CaiAlgebra(k, field)
    rows = set(row_space(lam))
    cocycles = {q: invariant_cocycles(alg, lam, q) for q in range(alg.top_degree + 1)}
    boundaries = {}
    bad = []
    for p, zs in cocycles.items():
        for q, ws in cocycles.items():
            deg = p + q
            if deg > alg.top_degree:
                continue
            if deg not in boundaries:
                prev = [x for x in alg.basis(deg - 1) if x.index_set in rows] if deg else []
                index = {y: j for j, y in enumerate(alg.basis(deg))}
                boundaries[deg] = ([_apply_d(alg.faces, {x: 1}) for x in prev], index)
            images, index = boundaries[deg]
            images = [{y: alg.field(c) for y, c in col.items()} for col in images]
            for x in zs:
                px = project_row(x, rows)
                for y in ws:
                    diff = project_row(x * y, rows) - project_row(px * project_row(y, rows), rows)
                    if not _in_span(images, diff.terms, index, alg.field):
                        bad.append((x, y))
    return bad


def action_cohomology_defects(k: SimplicialComplex, g: int, field=QQ, limit: int | None = None) -> list:
    """Cocycle pairs ``(x, y)`` where ``g(xy) - g(x) g(y)`` is not a coboundary of ``R_K``."""
    alg = CaiAlgebra(k, field)
    top = alg.top_degree
    cocycles = {}
    for q in range(top + 1):
        basis = alg.basis(q)
        nxt = alg.basis(q + 1)
        index = {y: j for j, y in enumerate(nxt)}
        cols = [dict(mono_differential(alg.faces, x)) for x in basis]
        vecs = nullspace(_matrix(cols, index, len(nxt)), alg.field)
        cocycles[q] = [alg.element({basis[j]: c for j, c in v.items()}) for v in vecs][:limit]
    bad = []
    for p, zs in cocycles.items():
        for q, ws in cocycles.items():
            deg = p + q
            if deg > top:
                continue
            prev = alg.basis(deg - 1) if deg else []
            index = {y: j for j, y in enumerate(alg.basis(deg))}
            images = [{y: alg.field(s) for y, s in mono_differential(alg.faces, x)} for x in prev]
            for x in zs:
                for y in ws:
                    diff = act_dga(g, x * y) - act_dga(g, x) * act_dga(g, y)
                    if not _in_span(images, diff.terms, index, alg.field):
                        bad.append((x, y))
    return bad
