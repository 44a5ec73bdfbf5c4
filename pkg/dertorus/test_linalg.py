from fractions import Fraction
from unittest import TestCase

import sympy

from dertorus import sampling
from dertorus.linalg import EchelonBasis, SparseMatrix, axpy, rank, sparse


class TestEchelonBasis(TestCase):
    def test_000_add(self):
        basis = EchelonBasis()
        self.assertTrue(basis.add({'a': 1, 'b': 2}))
        self.assertTrue(basis.add({'b': 1}))
        self.assertFalse(basis.add({'a': 3, 'b': 5}))
        self.assertFalse(basis.add({}))
        self.assertEqual(basis.rank, 2)
        self.assertTrue(basis.contains({'a': 1}))
        self.assertFalse(basis.contains({'c': 1}))

    def test_001_coordinates(self):
        basis = EchelonBasis(track=True)
        first = {0: Fraction(1), 1: Fraction(1)}
        second = {1: Fraction(1), 2: Fraction(-1)}
        basis.add(first)
        basis.add(second)
        target = {0: 2, 1: Fraction(7, 2), 2: Fraction(-3, 2)}
        self.assertEqual(basis.coordinates(target),
                         {0: 2, 1: Fraction(3, 2)})
        with self.assertRaises(ValueError):
            basis.coordinates({2: 1})
        with self.assertRaises(ValueError):
            EchelonBasis().coordinates({0: 1})

    def test_002_rank_against_sympy(self):
        rng = sampling.suite_rng(0, 'test_rank')
        for _ in range(20):
            rows = [[sampling.random_rational(rng, spread=2)
                     for _ in range(5)] for _ in range(4)]
            # force a dependent row now and then
            if sampling.randint(rng, 0, 1):
                rows.append([a + b for a, b in zip(rows[0], rows[1])])
            expected = sympy.Matrix(
                [[sympy.Rational(x.numerator, x.denominator) for x in row]
                 for row in rows]).rank()
            self.assertEqual(rank(sparse(row) for row in rows), expected)

    def test_003_rows_pivots(self):
        basis = EchelonBasis()
        basis.add({(1, 'x'): 2, (0, 'y'): 4})
        basis.add({(1, 'x'): 1})
        pivots = [pivot for pivot, _ in basis.rows()]
        self.assertEqual(pivots, [(0, 'y'), (1, 'x')])

    def test_004_axpy(self):
        target = {'a': Fraction(1)}
        axpy(target, {'a': 1, 'b': 2}, -1)
        self.assertEqual(target, {'b': -2})


class TestSparseMatrix(TestCase):
    def test_000_matmul(self):
        a = SparseMatrix.from_dense([[1, 2], [0, 1]])
        b = SparseMatrix.from_dense([[0, 1], [1, 0]])
        self.assertEqual((a @ b).to_dense(), ((2, 1), (1, 0)))
        self.assertEqual(a.commutator(a), SparseMatrix(2))
        self.assertEqual(a.commutator(b).to_dense(), ((2, 0), (0, -2)))

    def test_001_apply(self):
        a = SparseMatrix.from_dense([[1, 2], [0, Fraction(1, 2)]])
        self.assertEqual(a.apply((1, 1)), (3, Fraction(1, 2)))
        self.assertEqual(a.apply_sparse({1: 2}), {0: 4, 1: 1})
        with self.assertRaises(ValueError):
            a.apply((1, 2, 3))

    def test_002_from_columns(self):
        m = SparseMatrix.from_columns(2, [{0: 1}, {0: 5, 1: -1}])
        self.assertEqual(m.to_dense(), ((1, 5), (0, -1)))
        self.assertEqual(m.with_entry(1, 1, 0).to_dense(), ((1, 5), (0, 0)))

    def test_003_identity(self):
        self.assertEqual(SparseMatrix.identity(2, Fraction(3, 2)).to_dense(),
                         ((Fraction(3, 2), 0), (0, Fraction(3, 2))))
        self.assertTrue((SparseMatrix.identity(3) -
                         SparseMatrix.identity(3)).is_zero())
        with self.assertRaises(IndexError):
            SparseMatrix(2, 2, {(2, 0): 1})
