"""Schur index machinery: mod-p radicals, lattice echelon forms, the
maximal-order backend on synthetic cyclic algebras with known invariants,
and the group-algebra component builder."""

from __future__ import annotations

import pytest

from iwadec.modp import (
    algebra_radical_mod_p,
    echelon_mod_pn,
    express_over_echelon,
    rref,
)


def span_dim(vectors, ell):
    if not vectors:
        return 0
    _, piv = rref(vectors, ell)
    return len(piv)


def group_algebra_sc(table, ell):
    n = len(table)
    sc = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sc[i][j][table[i][j]] = 1 % ell
    return sc


def matrix_algebra_sc(n, ell):
    """Structure constants of M_n(F_ell) on the basis E_{ab}, a*n+b."""
    dim = n * n
    sc = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    i, j = a * n + b, c * n + d
                    if b == c:
                        sc[i][j][a * n + d] = 1
    return sc


class TestEchelonModPn:
    def test_full_rank_identityish(self):
        rows = [[2, 1], [1, 1]]
        basis, pivots = echelon_mod_pn(rows, 3, 4)
        assert pivots == [(0, 0), (1, 0)]
        assert basis == [[1, 0], [0, 1]]

    def test_pivot_valuations(self):
        p, N = 3, 5
        rows = [[3, 1, 0], [0, 9, 3]]
        basis, pivots = echelon_mod_pn(rows, p, N)
        assert pivots == [(0, 1), (1, 2)]
        # span invariance: shuffled and recombined input gives the same form
        q = p**N
        alt = [
            [(a + b) % q for a, b in zip(rows[0], rows[1])],
            [(2 * b) % q for b in rows[1]],
        ]
        basis2, pivots2 = echelon_mod_pn(alt, p, N)
        assert (basis, pivots) == (basis2, pivots2)

    def test_zero_rows_dropped(self):
        basis, pivots = echelon_mod_pn([[0, 0], [5, 5]], 5, 3)
        assert len(basis) == 1 and pivots == [(0, 1)]

    def test_express_members_and_nonmembers(self):
        p, N = 5, 6
        rows = [[1, 2, 3], [0, 5, 10]]
        basis, pivots = echelon_mod_pn(rows, p, N)
        q = p**N
        target = [
            (7 * a + 5 * b) % q for a, b in zip(rows[0], rows[1])
        ]
        coeffs = express_over_echelon(target, basis, pivots, p, N)
        assert coeffs is not None
        rebuilt = [0, 0, 0]
        for c, row in zip(coeffs, basis):
            rebuilt = [(x + c * y) % q for x, y in zip(rebuilt, row)]
        assert rebuilt == [x % q for x in target]
        assert express_over_echelon([0, 1, 0], basis, pivots, p, N) is None
        assert express_over_echelon([0, 0, 1], basis, pivots, p, N) is None

    def test_full_lattice_coordinates_unique(self):
        p, N = 3, 8
        rows = [[1, 1, 0], [0, 3, 1], [0, 0, 9]]
        basis, pivots = echelon_mod_pn(rows, p, N)
        assert [c for c, _ in pivots] == [0, 1, 2]
        coeffs = express_over_echelon([1, 4, 10], basis, pivots, p, N)
        assert coeffs is not None


class TestAlgebraRadical:
    def test_group_algebra_modular_case(self):
        # F_3[C_3]: radical = augmentation ideal, dimension 2
        table = [[(i + j) % 3 for j in range(3)] for i in range(3)]
        rad = algebra_radical_mod_p(group_algebra_sc(table, 3), 3)
        assert span_dim(rad, 3) == 2
        for v in rad:
            assert sum(v) % 3 == 0

    def test_group_algebra_semisimple_case(self):
        # F_3[C_4]: 3 does not divide 4, semisimple
        table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
        rad = algebra_radical_mod_p(group_algebra_sc(table, 3), 3)
        assert rad == []

    def test_full_matrix_algebra(self):
        # M_3(F_3): the trace form vanishes identically, so the level-0
        # functional cuts nothing and the level-3 coefficient must finish
        rad = algebra_radical_mod_p(matrix_algebra_sc(3, 3), 3)
        assert rad == []

    def test_matrix_algebra_prime_to_p(self):
        rad = algebra_radical_mod_p(matrix_algebra_sc(2, 5), 5)
        assert rad == []

    def test_upper_triangular(self):
        # span{E_11, E_12, E_22} inside M_2(F_5): radical = F E_12
        ell = 5
        idx = {(0, 0): 0, (0, 1): 1, (1, 1): 2}
        sc = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        for (a, b), i in idx.items():
            for (c, d), j in idx.items():
                if b == c:
                    sc[i][j][idx[(a, d)]] = 1
        rad = algebra_radical_mod_p(sc, ell)
        assert span_dim(rad, ell) == 1
        assert rad[0][0] == 0 and rad[0][2] == 0 and rad[0][1] != 0

    def test_modular_group_algebra_c5(self):
        table = [[(i + j) % 5 for j in range(5)] for i in range(5)]
        rad = algebra_radical_mod_p(group_algebra_sc(table, 5), 5)
        assert span_dim(rad, 5) == 4

    def test_nonunital_nilpotent_algebra(self):
        # x with x^2 = 0: the radical is everything
        rad = algebra_radical_mod_p([[[0]]], 7)
        assert span_dim(rad, 7) == 1
