import random

import pytest

from toric_split.cubical import (
    L,
    P0,
    P1,
    PH,
    U,
    act,
    boundary,
    build_quotient,
    build_rzk,
    count_cells,
    quotient_betti,
    rzk_betti,
    support,
)
from toric_split.errors import CapacityError
from toric_split.lambdamap import (
    LambdaMap,
    free_action_violations,
    kernel_elements,
    random_lambda,
)
from toric_split.linalg import betti_tuple
from toric_split.simplicial import SimplicialComplex, random_complex
from toric_split.subsets import size

TRI = SimplicialComplex.from_facets(3, [[1, 2], [2, 3], [1, 3]])
RP2 = LambdaMap.from_matrix([[1, 0, 1], [0, 1, 1]])


def test_act_examples():
    assert act(0b1, (L,)) == ((U,), -1)
    assert act(0, (L, P1, PH)) == ((L, P1, PH), 1)
    assert act(0b11, (P0, PH)) == ((P1, PH), 1)
    assert act(0b11, (L, U)) == ((U, L), 1)


def test_boundary_of_interval():
    assert sorted(boundary((L,))) == sorted([((PH,), 1), ((P0,), -1)])
    assert boundary((P0, PH)) == []


def test_rzk_examples():
    z = build_rzk(TRI)
    assert len(z) == 98
    # 3^|s| 2^(3-|s|) cells per face s, grouped by face size
    by_support = {}
    for cells in z.cells.values():
        for c in cells:
            by_support[size(support(c))] = by_support.get(size(support(c)), 0) + 1
    assert by_support == {0: 8, 1: 36, 2: 54}
    assert {q: len(c) for q, c in z.cells.items()} == {0: 26, 1: 48, 2: 24}
    assert betti_tuple(z.betti("q")) == (1, 0, 1)
    empty = SimplicialComplex(1, {0})
    assert len(build_rzk(empty)) == 2
    assert betti_tuple(rzk_betti(empty)) == (2,)
    point = SimplicialComplex.simplex(1)
    assert len(build_rzk(point)) == 5
    assert betti_tuple(rzk_betti(point)) == (1,)


def test_quotient_examples():
    assert betti_tuple(quotient_betti(TRI, RP2, "q")) == (1,)
    assert betti_tuple(quotient_betti(TRI, RP2, "f2")) == (1, 1, 1)
    assert betti_tuple(quotient_betti(TRI, RP2, "f3")) == (1,)
    two = SimplicialComplex.from_facets(2, [[1], [2]])
    assert betti_tuple(quotient_betti(two, LambdaMap.from_matrix([[1, 1]]), "q")) == (1, 1)


def test_identity_and_zero_lambda():
    rng = random.Random(21)
    for _ in range(15):
        k = random_complex(rng.randint(1, 4), rng)
        assert quotient_betti(k, LambdaMap.identity(k.m), "f3") == rzk_betti(k, "f3")
        assert betti_tuple(quotient_betti(k, LambdaMap.zero(1, k.m), "f2")) == (1,)


def _cube_euler(k):
    # the unsubdivided cube structure: 2^(m - |s|) cubes of dimension |s| per face s
    return sum((-1) ** size(s) * 2 ** (k.m - size(s)) for s in k.faces)


def test_cells_and_euler_characteristic():
    rng = random.Random(22)
    for _ in range(30):
        k = random_complex(rng.randint(1, 5), rng)
        z = build_rzk(k)
        assert len(z) == count_cells(k)
        c = z.chain_complex()
        c.check("q")
        b = z.betti("q")
        assert c.euler_characteristic() == _cube_euler(k) == sum((-1) ** q * n for q, n in b.items())


def test_regular_action():
    rng = random.Random(23)
    for _ in range(20):
        k = random_complex(rng.randint(1, 4), rng)
        group = kernel_elements(random_lambda(k.m, rng))
        assert build_rzk(k).fixed_cell_defects(group) == []


def test_free_action_cell_count():
    rng = random.Random(24)
    checked = 0
    while checked < 25:
        k = random_complex(rng.randint(2, 5), rng)
        lam = random_lambda(k.m, rng)
        if free_action_violations(lam, k):
            continue
        group = kernel_elements(lam)
        quo = build_quotient(k, group)
        assert quo.total_cells == len(group) * len(quo)
        assert all(n == len(group) for sizes in quo.orbit_sizes.values() for n in sizes)
        assert len(group) * quo.euler_characteristic() == _cube_euler(k)
        quo.chain_complex().check("f3")
        checked += 1


def test_capacity(monkeypatch):
    monkeypatch.setenv("TORIC_SPLIT_MAX_CELLS", "50")
    with pytest.raises(CapacityError):
        build_rzk(TRI)
    with pytest.raises(CapacityError):
        build_quotient(SimplicialComplex.simplex(13), [0])
