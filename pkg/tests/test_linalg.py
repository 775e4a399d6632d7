"""Exact linear algebra kernel: frozen examples plus randomized invariants."""

import random

import pytest

from rotabaxter.linalg import (
    Matrix, Q, SparseBuilder, TensorIndex, format_rational, homology_dim,
    inverse, kernel_basis, parse_rational, rank, rational, solve,
)


def mat(rows):
    return Matrix.from_rows([[Q(x) for x in r] for r in rows])


class TestRational:
    def test_parse_plain_and_fraction(self):
        assert parse_rational("3") == 3
        assert parse_rational("-7/2") == Q(-7, 2)
        assert parse_rational("4/6") == Q(2, 3)

    def test_parse_rejects_garbage(self):
        for bad in ["1/0", "x", "1.5", "1/ 2 /3", ""]:
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_format_round_trips(self):
        for s in ["0", "5", "-3", "1/2", "-9/7"]:
            assert format_rational(parse_rational(s)) == s

    def test_rational_constructor(self):
        assert rational(2, 4) == Q(1, 2)
        assert rational("5/3") == Q(5, 3)
        with pytest.raises(ValueError):
            rational(1, 0)


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(2)) == 2

    def test_zero(self):
        assert rank(Matrix.zero(2, 2)) == 0

    def test_dependent_rows(self):
        assert rank(mat([[1, 2], [2, 4]])) == 1


class TestKernelBasis:
    def test_injective(self):
        assert kernel_basis(Matrix.identity(2)) == []

    def test_zero_map(self):
        basis = kernel_basis(Matrix.zero(1, 2))
        assert len(basis) == 2

    def test_dependent_rows(self):
        (v,) = kernel_basis(mat([[1, 2], [2, 4]]))
        # proportional to (2, -1)
        assert v[0] * Q(-1) == v[1] * Q(2)
        assert any(x != 0 for x in v)


class TestSolve:
    def test_identity(self):
        assert solve(Matrix.identity(2), (3, 5)) == (3, 5)

    def test_inconsistent(self):
        assert solve(Matrix.zero(2, 2), (1, 0)) is None

    def test_diagonal(self):
        assert solve(mat([[2, 0], [0, 4]]), (1, 1)) == (Q(1, 2), Q(1, 4))

    def test_rhs_length_checked(self):
        with pytest.raises(ValueError):
            solve(Matrix.identity(2), (1, 2, 3))


class TestHomologyDim:
    def test_zero_differentials(self):
        assert homology_dim(Matrix.zero(1, 3), Matrix.zero(3, 1)) == 3

    def test_injective_out(self):
        assert homology_dim(Matrix.identity(2), Matrix.zero(2, 1)) == 0

    def test_exact_in_middle(self):
        assert homology_dim(mat([[1, 2]]), mat([[2], [-1]])) == 0

    def test_rejects_noncomplex(self):
        with pytest.raises(ValueError):
            homology_dim(Matrix.identity(2), Matrix.identity(2))

    def test_rejects_mismatch(self):
        with pytest.raises(ValueError):
            homology_dim(Matrix.zero(1, 2), Matrix.zero(3, 1))


class TestTensorIndex:
    def test_big_endian_order(self):
        ti = TensorIndex((2, 3))
        assert ti.flatten((1, 2)) == 5
        assert ti.flatten((1, 0)) == 3  # first factor varies slowest

    def test_flatten_unflatten_inverse(self):
        ti = TensorIndex((2, 3, 4))
        for flat in range(ti.size):
            assert ti.flatten(ti.unflatten(flat)) == flat

    def test_empty_factor_list_is_base_field(self):
        ti = TensorIndex(())
        assert ti.size == 1
        assert ti.flatten(()) == 0


def random_matrix(rng, rows, cols, density=0.7):
    return Matrix(rows, cols,
                  [Q(rng.randint(-4, 4), rng.randint(1, 3))
                   if rng.random() < density else Q(0)
                   for _ in range(rows * cols)])


class TestRandomizedInvariants:
    def test_rank_nullity_and_kernel_exactness(self):
        rng = random.Random(20260814)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
            basis = kernel_basis(m)
            assert rank(m) + len(basis) == m.cols
            for v in basis:
                assert all(x == 0 for x in m.apply(v))
            if basis:
                stacked = Matrix.from_rows([list(v) for v in basis])
                assert rank(stacked) == len(basis)

    def test_solve_consistency(self):
        rng = random.Random(99)
        for _ in range(40):
            m = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
            x0 = [Q(rng.randint(-3, 3)) for _ in range(m.cols)]
            rhs = m.apply(x0)
            x = solve(m, rhs)
            assert x is not None
            assert m.apply(x) == rhs

    def test_solve_reports_inconsistency_via_rank(self):
        rng = random.Random(7)
        hits = 0
        for _ in range(60):
            m = random_matrix(rng, rng.randint(2, 5), rng.randint(1, 4))
            rhs = tuple(Q(rng.randint(-3, 3)) for _ in range(m.rows))
            x = solve(m, rhs)
            aug = Matrix.from_rows(
                [list(m.row(i)) + [rhs[i]] for i in range(m.rows)])
            if x is None:
                hits += 1
                assert rank(aug) > rank(m)
            else:
                assert m.apply(x) == rhs
                assert rank(aug) == rank(m)
        assert hits > 0  # the sampler must hit some inconsistent systems

    def test_sparse_builder_matches_dense_product(self):
        rng = random.Random(5)
        for _ in range(20):
            a = random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 0.5)
            b = random_matrix(rng, a.cols, rng.randint(1, 5), 0.5)
            sa = SparseBuilder(a.rows, a.cols)
            for i in range(a.rows):
                for j in range(a.cols):
                    sa.add(i, j, a.at(i, j))
            sb = SparseBuilder(b.rows, b.cols)
            for i in range(b.rows):
                for j in range(b.cols):
                    sb.add(i, j, b.at(i, j))
            assert sa.to_matrix() == a
            assert sa.compose(sb).to_matrix() == a * b
            assert sb.apply([Q(1)] * b.cols) == b.apply([Q(1)] * b.cols)


class TestInverse:
    def test_two_by_two(self):
        assert inverse(mat([[2, 1], [1, 1]])) == mat([[1, -1], [-1, 2]])

    def test_identity_and_scaling(self):
        assert inverse(Matrix.identity(3)) == Matrix.identity(3)
        assert inverse(mat([[4]])) == mat([["1/4"]])

    def test_singular_returns_none(self):
        assert inverse(mat([[1, 2], [2, 4]])) is None
        assert inverse(Matrix.zero(2, 2)) is None

    def test_non_square_raises(self):
        with pytest.raises(ValueError):
            inverse(Matrix.zero(2, 3))

    def test_random_round_trip(self):
        rng = random.Random(9)
        invertible = 0
        for _ in range(40):
            m = random_matrix(rng, 3, 3)
            inv = inverse(m)
            if inv is None:
                assert rank(m) < 3
            else:
                invertible += 1
                assert inv * m == Matrix.identity(3)
                assert m * inv == Matrix.identity(3)
        assert invertible > 10
