import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from k0heap.lattice import (
    IntMatrix,
    InvariantFactors,
    det,
    hnf,
    identity_matrix,
    lattice_member,
    matmul,
    smith_decomposition,
    snf,
)
from oracles import det_cofactor, snf_oracle

entries = st.integers(min_value=-9, max_value=9)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


def test_intmatrix_shape_checked():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_hnf_identity():
    m = identity_matrix(2)
    h, u = hnf(m)
    assert h == m
    assert u == m


def test_hnf_zero_matrix():
    m = IntMatrix.from_rows([[0, 0], [0, 0]])
    h, u = hnf(m)
    assert h == m
    assert abs(det(u)) == 1


def test_hnf_example_2x2():
    m = IntMatrix.from_rows([[2, 4], [6, 8]])
    h, u = hnf(m)
    assert h.to_rows() == [[2, 0], [0, 4]]
    assert matmul(u, m) == h
    assert abs(det(u)) == 1
    # mutual row-space membership
    for i in range(2):
        assert lattice_member(m, h.row(i))
        assert lattice_member(h, m.row(i))


def test_snf_zero_matrix_is_free():
    assert snf(IntMatrix.from_rows([[0, 0], [0, 0]])) == InvariantFactors(rank=2, torsion=())


def test_snf_example_2x2():
    # determinant-divisor oracle: d1 = gcd of entries = 2, d1*d2 = |det| = 8
    assert snf(IntMatrix.from_rows([[2, 4], [6, 8]])) == InvariantFactors(rank=0, torsion=(2, 4))


def test_snf_single_pivot():
    assert snf(IntMatrix.from_rows([[1, 0]])) == InvariantFactors(rank=1, torsion=())


def test_lattice_member_examples():
    m = IntMatrix.from_rows([[2, 0]])
    assert lattice_member(m, [0, 0])
    assert not lattice_member(m, [1, 0])
    m2 = IntMatrix.from_rows([[1, -1, 0], [0, 1, -1]])
    assert lattice_member(m2, [1, 0, -1])
    with pytest.raises(ValueError):
        lattice_member(m2, [1, 0])


def test_invariant_factors_chain_enforced():
    with pytest.raises(ValueError):
        InvariantFactors(rank=0, torsion=(4, 2))
    with pytest.raises(ValueError):
        InvariantFactors(rank=0, torsion=(1,))


def _assert_hnf_shape(h):
    rows = h.to_rows()
    pivots = []
    for row in rows:
        cols = [j for j, x in enumerate(row) if x]
        pivots.append(cols[0] if cols else None)
    seen_zero = False
    last = -1
    for i, p in enumerate(pivots):
        if p is None:
            seen_zero = True
            continue
        assert not seen_zero, "zero row above a nonzero row"
        assert p > last
        last = p
        assert rows[i][p] > 0
        for k in range(i):
            assert 0 <= rows[k][p] < rows[i][p]


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=5))
def test_hnf_contract(rows):
    m = IntMatrix.from_rows(rows)
    h, u = hnf(m)
    assert matmul(u, m) == h
    assert abs(det_cofactor(u.to_rows())) == 1
    _assert_hnf_shape(h)
    for i in range(m.rows):
        assert lattice_member(h, m.row(i))
        assert lattice_member(m, h.row(i))


@settings(max_examples=100, deadline=None)
@given(square(4), st.randoms(use_true_random=False))
def test_hnf_invariant_under_row_permutation(rows, rng):
    m1 = IntMatrix.from_rows(rows)
    shuffled = list(rows)
    rng.shuffle(shuffled)
    m2 = IntMatrix.from_rows(shuffled)
    assert hnf(m1)[0] == hnf(m2)[0]


@settings(max_examples=150, deadline=None)
@given(square(4))
def test_snf_matches_minor_gcd_oracle(rows):
    oracle_rank, oracle_torsion = snf_oracle(rows)
    factors = snf(IntMatrix.from_rows(rows))
    assert factors.rank == 4 - oracle_rank
    assert factors.torsion == oracle_torsion


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=1, max_size=5))
def test_smith_decomposition_transforms(rows):
    m = IntMatrix.from_rows(rows)
    dec = smith_decomposition(m)
    product = matmul(matmul(dec.left, m), dec.right)
    for i in range(product.rows):
        for j, x in enumerate(product.row(i)):
            expected = dec.diagonal[i] if i == j and i < len(dec.diagonal) else 0
            assert x == expected
    assert abs(det_cofactor(dec.left.to_rows())) == 1
    assert abs(det_cofactor(dec.right.to_rows())) == 1


def test_member_of_every_row_randomized():
    rng = random.Random(7)
    for _ in range(50):
        rows = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(rng.randint(1, 4))]
        m = IntMatrix.from_rows(rows)
        for row in rows:
            assert lattice_member(m, row)


def test_bareiss_det_matches_cofactor():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det(IntMatrix.from_rows(rows)) == det_cofactor(rows)
