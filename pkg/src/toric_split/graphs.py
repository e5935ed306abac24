"""Graph associahedra: tubes, tubings, the map lambda_G and a-numbers.

For a connected graph G on nodes ``1..n+1`` a *tube* is a proper nonempty
node set inducing a connected subgraph.  Two distinct tubes are compatible
when nested, or disjoint with no edge between them; the boundary complex of
the graph associahedron has the tubes as vertices and the sets of pairwise
compatible tubes as faces.

One node is distinguished (default: the largest label).  The remaining
nodes, in increasing order, index the coordinates ``1..n`` of ``F_2^n``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field as dc_field
from functools import cached_property

from .cubical import build_quotient
from .decomposition import FAIL, PASS, rhs_betti
from .errors import InputError
from .lambdamap import LambdaMap, is_characteristic, kernel_elements, row_space
from .linalg import Field, nonzero_part
from .simplicial import SimplicialComplex
from .subsets import members, size, submasks

__all__ = [
    "SimpleGraph",
    "tubes",
    "compatible",
    "build_tubing_complex",
    "lambda_g",
    "sa",
    "a_number",
    "a_numbers",
    "phi_map",
    "row_element",
    "verify_graph_corollary",
    "compare_graphs",
    "GraphReport",
]

EQUIVALENT = "EQUIVALENT"
NOT_EQUIVALENT = "NOT-EQUIVALENT"


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on ``1..nodes``; edges are sorted pairs."""

    nodes: int
    edges: frozenset
    distinguished: int = 0

    def __post_init__(self):
        if self.nodes < 1:
            raise InputError("a graph needs at least one node")
        edges = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise InputError(f"loop at node {a}")
            if not (1 <= a <= self.nodes and 1 <= b <= self.nodes):
                raise InputError(f"edge ({a}, {b}) outside nodes 1..{self.nodes}")
            edges.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", frozenset(edges))
        dist = self.distinguished or self.nodes
        if not 1 <= dist <= self.nodes:
            raise InputError(f"distinguished node {dist} outside 1..{self.nodes}")
        object.__setattr__(self, "distinguished", dist)

    @classmethod
    def from_edges(cls, nodes: int, edges, distinguished: int = 0) -> "SimpleGraph":
        return cls(nodes, frozenset(tuple(e) for e in edges), distinguished)

    @classmethod
    def path(cls, nodes: int) -> "SimpleGraph":
        return cls.from_edges(nodes, [(i, i + 1) for i in range(1, nodes)])

    @classmethod
    def star(cls, leaves: int) -> "SimpleGraph":
        """Centre 1 joined to leaves ``2..leaves+1``; ``star(3)`` is the claw."""
        return cls.from_edges(leaves + 1, [(1, j) for j in range(2, leaves + 2)])

    @classmethod
    def complete(cls, nodes: int) -> "SimpleGraph":
        return cls.from_edges(nodes, [(a, b) for a in range(1, nodes + 1) for b in range(a + 1, nodes + 1)])

    @classmethod
    def from_json(cls, obj) -> "SimpleGraph":
        try:
            nodes = int(obj["nodes"])
            edges = [(int(a), int(b)) for a, b in obj["edges"]]
            dist = int(obj.get("distinguished") or 0)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"graph JSON must look like {{'nodes': int, 'edges': [[a, b], ...]}}: {exc}") from exc
        return cls.from_edges(nodes, edges, dist)

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "edges": [list(e) for e in sorted(self.edges)], "distinguished": self.distinguished}

    @property
    def n(self) -> int:
        return self.nodes - 1

    @cached_property
    def adjacency(self) -> tuple:
        """``adjacency[v-1]`` is the neighbour mask of node v."""
        adj = [0] * self.nodes
        for a, b in self.edges:
            adj[a - 1] |= 1 << (b - 1)
            adj[b - 1] |= 1 << (a - 1)
        return tuple(adj)

    @property
    def all_nodes(self) -> int:
        return (1 << self.nodes) - 1

    def neighbours(self, mask: int) -> int:
        out = 0
        for v in members(mask):
            out |= self.adjacency[v - 1]
        return out & ~mask

    def components(self, mask: int) -> list:
        """Node masks of the connected components of the induced subgraph on ``mask``."""
        comps = []
        left = mask
        while left:
            comp = left & -left
            frontier = comp
            while frontier:
                grow = 0
                for v in members(frontier):
                    grow |= self.adjacency[v - 1]
                frontier = grow & left & ~comp
                comp |= frontier
            comps.append(comp)
            left &= ~comp
        return comps

    def is_connected(self, mask: int | None = None) -> bool:
        mask = self.all_nodes if mask is None else mask
        return len(self.components(mask)) <= 1

    @property
    def coordinates(self) -> tuple:
        """Node labels of coordinates ``1..n``: every node but the distinguished one."""
        return tuple(v for v in range(1, self.nodes + 1) if v != self.distinguished)

    def require_connected(self):
        if not self.is_connected():
            raise InputError("graph must be connected")


def tubes(g: SimpleGraph) -> list:
    """Proper connected node sets, ordered by size then lexicographically."""
    g.require_connected()
    out = [t for t in range(1, g.all_nodes) if g.is_connected(t)]
    out.sort(key=lambda t: (size(t), members(t)))
    return out


def compatible(g: SimpleGraph, a: int, b: int) -> bool:
    if a == b:
        return False
    inter = a & b
    if inter == a or inter == b:
        return True
    return not inter and not g.neighbours(a) & b


def _maximal_cliques(adj: list) -> list:
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot_src = p | x
        pivot = (pivot_src & -pivot_src).bit_length() - 1
        cand = p & ~adj[pivot]
        while cand:
            bit = cand & -cand
            cand ^= bit
            v = bit.bit_length() - 1
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return out


def build_tubing_complex(g: SimpleGraph) -> SimplicialComplex:
    """Boundary complex of ``P_G``; vertex ``j`` is the j-th tube of :func:`tubes`."""
    ts = tubes(g)
    adj = [sum(1 << j for j, b in enumerate(ts) if compatible(g, a, b)) for a in ts]
    return SimplicialComplex.from_facets(len(ts), _maximal_cliques(adj))


def lambda_g(g: SimpleGraph) -> LambdaMap:
    """Column of tube T: ``sum_{t in T} e_t`` if T misses the distinguished node, else ``sum_{t not in T} e_t``."""
    ts = tubes(g)
    coords = g.coordinates
    rows = [0] * g.n
    for j, t in enumerate(ts):
        hit = t if not t >> (g.distinguished - 1) & 1 else g.all_nodes & ~t
        for r, v in enumerate(coords):
            if hit >> (v - 1) & 1:
                rows[r] |= 1 << j
    return LambdaMap(g.n, len(ts), tuple(rows))


class ANumberTable:
    """Memoised signed a-numbers of the induced subgraphs of one graph."""

    def __init__(self, g: SimpleGraph):
        self.graph = g
        self._memo = {0: 1}

    def sa(self, mask: int) -> int:
        memo = self._memo
        hit = memo.get(mask)
        if hit is not None:
            return hit
        if any(size(c) % 2 for c in self.graph.components(mask)):
            value = 0
        else:
            value = -sum(self.sa(t) for t in submasks(mask) if t != mask)
        memo[mask] = value
        return value

    def a(self, mask: int) -> int:
        return abs(self.sa(mask))


_TABLES = {}


def _table(g: SimpleGraph) -> ANumberTable:
    table = _TABLES.get(g)
    if table is None:
        table = _TABLES[g] = ANumberTable(g)
    return table


def sa(g: SimpleGraph, nodes=None) -> int:
    """Signed a-number of the induced subgraph on ``nodes`` (default: all of G)."""
    mask = g.all_nodes if nodes is None else (nodes if isinstance(nodes, int) else sum(1 << (v - 1) for v in nodes))
    return _table(g).sa(mask)


def a_number(g: SimpleGraph, nodes=None) -> int:
    return abs(sa(g, nodes))


def a_numbers(g: SimpleGraph) -> list:
    """``a_i(G) = sum_{|T| = 2i} a(G|_T)`` for ``0 <= i <= (n+1)/2``."""
    table = _table(g)
    out = [0] * (g.nodes // 2 + 1)
    for t in range(g.all_nodes + 1):
        if size(t) % 2 == 0:
            out[size(t) // 2] += table.a(t)
    return out


def _coord_mask(g: SimpleGraph, coords) -> int:
    if isinstance(coords, int):
        if coords >> g.n:
            raise InputError(f"coordinate mask beyond n={g.n}")
        return coords
    out = 0
    for c in coords:
        if not 1 <= c <= g.n:
            raise InputError(f"coordinate {c} outside 1..{g.n}")
        out |= 1 << (c - 1)
    return out


def phi_map(g: SimpleGraph, coords) -> int:
    """Node set paired with the rows ``coords``: their nodes, plus the distinguished node if odd."""
    s = _coord_mask(g, coords)
    nodes = 0
    for c in members(s):
        nodes |= 1 << (g.coordinates[c - 1] - 1)
    if size(s) % 2:
        nodes |= 1 << (g.distinguished - 1)
    return nodes


def row_element(g: SimpleGraph, coords, lam: LambdaMap | None = None) -> int:
    """Sum of the rows of ``lambda_G`` indexed by ``coords``, as a tube mask."""
    lam = lam or lambda_g(g)
    out = 0
    for c in members(_coord_mask(g, coords)):
        out ^= lam.rows[c - 1]
    return out


@dataclass
class Summand:
    coords: list
    row_element: list
    nodes: list
    a: int
    expected_degree: int
    reduced_betti: dict
    ok: bool


@dataclass
class GraphReport:
    graph: dict
    field: str
    tubes: list
    f_vector: list
    characteristic: bool
    a_numbers: list
    betti: list
    rhs: list
    summands: list = dc_field(default_factory=list)
    sphere_multiset: dict = dc_field(default_factory=dict)
    failures: list = dc_field(default_factory=list)
    cells: dict = dc_field(default_factory=dict)
    verdict: str = PASS

    def to_json(self) -> dict:
        out = asdict(self)
        for s in out["summands"]:
            s["reduced_betti"] = {str(k): v for k, v in s["reduced_betti"].items()}
        out["sphere_multiset"] = {str(k): v for k, v in self.sphere_multiset.items()}
        return {"kind": "graph_verify", **out}

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, obj) -> "GraphReport":
        obj = dict(obj)
        if obj.pop("kind", "graph_verify") != "graph_verify":
            raise InputError("not a graph_verify report")
        summands = []
        for s in obj.pop("summands", []):
            s = dict(s)
            s["reduced_betti"] = {int(k): v for k, v in s["reduced_betti"].items()}
            summands.append(Summand(**s))
        obj["sphere_multiset"] = {int(k): v for k, v in obj.get("sphere_multiset", {}).items()}
        return cls(summands=summands, **obj)


def verify_graph_corollary(g: SimpleGraph, p: int = 3) -> GraphReport:
    """Check the wedge-of-spheres description of ``M(G)`` at p (odd prime or 0).

    (a) each ``K_I`` for ``I in Row(lambda_G)`` has reduced homology ``a(phi(I))``
    concentrated in degree ``|phi(I)|/2 - 1``; (b) the Betti numbers of
    ``M(G)`` equal the a_i-numbers; (c) the Row(lambda) sum equals the
    quotient Betti numbers.
    """
    field = Field.parse(p)
    if field.p == 2:
        raise InputError("the graph statement is for odd primes or p = 0")
    k = build_tubing_complex(g)
    lam = lambda_g(g)
    table = _table(g)
    ts = tubes(g)
    failures = []

    char = is_characteristic(lam, k)
    if not char:
        failures.append("lambda_G is not characteristic on the tubing complex")

    summands = []
    spheres = Counter()
    seen_rows = set()
    for s in range(1 << g.n):
        i = row_element(g, s, lam)
        nodes = phi_map(g, s)
        seen_rows.add(i)
        a = table.a(nodes)
        deg = size(nodes) // 2 - 1
        rb = nonzero_part(k.full_subcomplex(i).reduced_betti(field))
        want = {deg: a} if a else {}
        ok = rb == want
        # tube T is in the row element iff it meets phi(S) in an odd number of nodes
        parity_ok = i == sum(1 << j for j, t in enumerate(ts) if size(t & nodes) % 2)
        if not parity_ok:
            ok = False
        summands.append(Summand(
            coords=list(members(s)),
            row_element=[list(members(ts[j - 1])) for j in members(i)],
            nodes=list(members(nodes)),
            a=a,
            expected_degree=deg,
            reduced_betti=rb,
            ok=ok,
        ))
        if not ok:
            failures.append(f"summand for rows {list(members(s))} (nodes {list(members(nodes))}): "
                            f"expected {want}, got {rb}" + ("" if parity_ok else "; row element parity mismatch"))
        if a:
            spheres[size(nodes) // 2 + 1] += a
    if seen_rows != set(row_space(lam)) or len(seen_rows) != 1 << g.n:
        failures.append("phi is not a bijection onto Row(lambda_G)")

    quotient = build_quotient(k, kernel_elements(lam))
    betti = quotient.betti(field)
    a_i = a_numbers(g)
    if nonzero_part(betti) != nonzero_part(dict(enumerate(a_i))):
        failures.append(f"Betti numbers {nonzero_part(betti)} differ from a-numbers {a_i}")
    rhs = rhs_betti(k, lam, field)
    if nonzero_part(rhs) != nonzero_part(betti):
        failures.append(f"Row(lambda) sum {nonzero_part(rhs)} differs from quotient {nonzero_part(betti)}")

    top = max(len(a_i) - 1, max(nonzero_part(betti), default=0), max(nonzero_part(rhs), default=0))
    return GraphReport(
        graph=g.to_json(),
        field=field.name,
        tubes=[list(members(t)) for t in ts],
        f_vector=list(k.f_vector()),
        characteristic=char,
        a_numbers=a_i,
        betti=[betti.get(q, 0) for q in range(top + 1)],
        rhs=[rhs.get(q, 0) for q in range(top + 1)],
        summands=summands,
        sphere_multiset=dict(sorted(spheres.items())),
        failures=failures,
        cells={"rzk": quotient.total_cells, "quotient": len(quotient), "kernel": len(quotient.group)},
        verdict=FAIL if failures else PASS,
    )


@dataclass
class CompareReport:
    first: GraphReport
    second: GraphReport
    verdict: str

    def to_json(self) -> dict:
        return {"kind": "graph_compare", "verdict": self.verdict,
                "first": self.first.to_json(), "second": self.second.to_json()}


def compare_graphs(g1: SimpleGraph, g2: SimpleGraph, p: int = 3) -> CompareReport:
    """EQUIVALENT when both graphs verify and share a-numbers and sphere multisets."""
    r1 = verify_graph_corollary(g1, p)
    r2 = verify_graph_corollary(g2, p)
    same = (
        r1.verdict == PASS and r2.verdict == PASS
        and r1.a_numbers == r2.a_numbers
        and r1.sphere_multiset == r2.sphere_multiset
    )
    return CompareReport(r1, r2, EQUIVALENT if same else NOT_EQUIVALENT)
