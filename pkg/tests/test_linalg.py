"""Exact linear algebra kernel: inverses, HNF, integer kernels."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from covmin.errors import InputError, Singular
from covmin.linalg import (
    clear_denominators,
    det,
    format_rat,
    hnf,
    identity,
    integer_kernel,
    mat,
    mat_inverse,
    mat_mul,
    nullspace,
    parse_rat,
    primitive,
    rank,
    vec,
)

F = Fraction


def int_mat(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


small_rat = st.fractions(min_value=-3, max_value=3, max_denominator=4)


class TestRationals:
    def test_parse_roundtrip(self):
        for text in ["3/4", "-1/2", "5", "0", "-7/3"]:
            assert format_rat(parse_rat(text)) == text

    def test_parse_int(self):
        assert parse_rat(7) == 7

    def test_floats_rejected(self):
        with pytest.raises(InputError):
            parse_rat(0.5)
        with pytest.raises(InputError):
            parse_rat("not a number")


class TestInverse:
    def test_identity(self):
        assert mat_inverse(identity(3)) == identity(3)

    def test_diagonal(self):
        assert mat_inverse(mat([[2, 0], [0, 2]])) == mat([[F(1, 2), 0], [0, F(1, 2)]])

    def test_unipotent(self):
        assert mat_inverse(mat([[1, 1], [0, 1]])) == mat([[1, -1], [0, 1]])

    def test_singular(self):
        with pytest.raises(Singular):
            mat_inverse(mat([[1, 2], [2, 4]]))

    @given(st.lists(st.lists(small_rat, min_size=3, max_size=3), min_size=3, max_size=3))
    def test_inverse_multiplies_to_identity(self, rows):
        m = mat(rows)
        if det(m) == 0:
            return
        assert mat_mul(m, mat_inverse(m)) == identity(3)


def assert_hnf_canonical(H):
    """Pivot columns strictly increase, pivots positive, entries above reduced."""
    last_pivot = -1
    seen_zero_row = False
    for row in H:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero_row = True
            continue
        assert not seen_zero_row, "zero row above a nonzero row"
        p = nz[0]
        assert p > last_pivot
        assert row[p] > 0
        last_pivot = p
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        for k in range(i):
            assert 0 <= H[k][p] < row[p]


class TestHNF:
    def test_identity(self):
        H, U = hnf(int_mat([[1, 0], [0, 1]]))
        assert H == ((1, 0), (0, 1))
        assert U == ((1, 0), (0, 1))

    def test_example_2x2(self):
        M = int_mat([[2, 4], [1, 3]])
        H, U = hnf(M)
        assert H[0][0] == 1
        assert mat_mul(mat(U), mat(M)) == mat(H)
        assert abs(det(mat(U))) == 1
        assert abs(det(mat(H))) == 2
        assert_hnf_canonical(H)

    def test_single_row(self):
        H, U = hnf(int_mat([[0, 3]]))
        assert mat_mul(mat(U), mat([[0, 3]])) == mat(H)
        assert abs(det(mat(U))) == 1
        assert_hnf_canonical(H)

    def test_negative_pivot_normalized(self):
        H, _ = hnf(int_mat([[-2, 0], [0, -5]]))
        assert H == ((2, 0), (0, 5))

    @given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=2, max_size=4))
    def test_hnf_properties(self, rows):
        M = int_mat(rows)
        H, U = hnf(M)
        assert mat_mul(mat(U), mat(M)) == mat(H)
        assert abs(det(mat(U))) == 1
        assert all(x == int(x) for row in U for x in row)
        assert_hnf_canonical(H)


class TestKernel:
    def test_simple_plane(self):
        # kernel of (1 1 1) over Z: rank-2 lattice of zero-sum vectors
        basis = integer_kernel([[1, 1, 1]])
        assert len(basis) == 2
        for v in basis:
            assert sum(v) == 0

    def test_kernel_annihilates(self):
        M = [[2, -1, 0, 3], [0, 4, -2, 1]]
        basis = integer_kernel(M)
        assert len(basis) == 2
        for v in basis:
            for row in M:
                assert sum(a * b for a, b in zip(row, v)) == 0

    def test_full_rank_kernel_empty(self):
        assert integer_kernel([[1, 0], [0, 1]]) == []

    def test_primitive_vector_recovered(self):
        # kernel of (2 -1) is generated by (1, 2), not a multiple
        basis = integer_kernel([[2, -1]])
        assert basis == [(1, 2)]


class TestMisc:
    def test_nullspace_orthogonal(self):
        ns = nullspace([vec([1, 1, 1])])
        assert len(ns) == 2
        for v in ns:
            assert sum(v) == 0

    def test_rank(self):
        assert rank([[1, 2], [2, 4]]) == 1
        assert rank([[1, 0], [0, 1]]) == 2
        assert rank([]) == 0

    def test_clear_denominators(self):
        ints, scale = clear_denominators([vec([F(1, 3), F(1, 2)])])
        assert scale == 6
        assert ints == [(2, 3)]

    def test_primitive(self):
        assert primitive((4, -6, 2)) == (2, -3, 1)
        assert primitive((0, 0)) == (0, 0)
