from fractions import Fraction
from unittest import TestCase

import sympy

from dertorus import sampling
from dertorus.exact import (
    DimensionError, LatticeError, LaurentPoly, as_rational, euler_derive,
    format_multiset, in_jk, jet_at_one, jet_witness, multisets, p_k,
    poly_mul)

X = sympy.symbols('x1:4')


def to_sympy(f):
    return sum((sympy.Rational(c.numerator, c.denominator) *
                sympy.Mul(*[X[i] ** m[i] for i in range(f.d)])
                for m, c in f.items()), sympy.Integer(0))


class TestLaurentPoly(TestCase):
    def test_000_construct(self):
        f = LaurentPoly(2, {(1, 0): 2, (0, 1): 0})
        self.assertEqual(f.terms(), {(1, 0): 2})
        self.assertEqual(f + LaurentPoly(2, {(1, 0): -2}), LaurentPoly(2))
        self.assertEqual(LaurentPoly(2, {(0, 0): 0}), LaurentPoly.zero(2))
        self.assertTrue(LaurentPoly.zero(3).is_zero())

    def test_001_dimension_errors(self):
        with self.assertRaises(DimensionError):
            LaurentPoly(2, {(1, 2, 3): 1})
        with self.assertRaises(DimensionError):
            LaurentPoly.constant(2) + LaurentPoly.constant(3)
        with self.assertRaises(DimensionError):
            poly_mul(LaurentPoly.constant(2), LaurentPoly.constant(3))
        with self.assertRaises(DimensionError):
            euler_derive(LaurentPoly.constant(2), 2)

    def test_002_as_rational(self):
        self.assertEqual(as_rational('3/4'), Fraction(3, 4))
        self.assertEqual(as_rational(-2), Fraction(-2))
        with self.assertRaises(TypeError):
            as_rational(0.5)
        for text in ('0.5', '1e3', '2E-1'):
            with self.assertRaises(ValueError):
                as_rational(text)

    def test_003_poly_mul(self):
        one_minus = LaurentPoly(1, {(0,): 1, (1,): -1})
        one_plus = LaurentPoly(1, {(0,): 1, (1,): 1})
        self.assertEqual(one_minus * one_plus,
                         LaurentPoly(1, {(0,): 1, (2,): -1}))
        f = LaurentPoly(2, {(1, -1): Fraction(1, 2)})
        g = LaurentPoly(2, {(-1, 1): 2})
        self.assertEqual(f * g, LaurentPoly.constant(2))

    def test_004_poly_mul_against_sympy(self):
        rng = sampling.suite_rng(0, 'test_poly_mul')
        for _ in range(25):
            f = sampling.random_poly(rng, 3, 2, terms=4)
            g = sampling.random_poly(rng, 3, 2, terms=4)
            self.assertEqual(
                sympy.expand(to_sympy(poly_mul(f, g)) -
                             to_sympy(f) * to_sympy(g)), 0)

    def test_005_euler_derive(self):
        f = LaurentPoly(2, {(2, -1): 3, (0, 0): 5})
        self.assertEqual(euler_derive(f, 0), LaurentPoly(2, {(2, -1): 6}))
        self.assertEqual(euler_derive(f, 1), LaurentPoly(2, {(2, -1): -3}))

    def test_006_euler_derive_against_sympy(self):
        rng = sampling.suite_rng(0, 'test_euler')
        for _ in range(25):
            f = sampling.random_poly(rng, 3, 3, terms=4)
            for axis in range(3):
                expected = X[axis] * sympy.diff(to_sympy(f), X[axis])
                self.assertEqual(
                    sympy.expand(to_sympy(euler_derive(f, axis)) - expected),
                    0)

    def test_007_to_text(self):
        f = LaurentPoly(2, {(1, 0): Fraction(1, 2), (0, 0): -1})
        self.assertEqual(f.to_text(), '-1*t^(0,0) + 1/2*t^(1,0)')
        self.assertEqual(LaurentPoly.zero(2).to_text(), '0')

    def test_008_shift(self):
        f = LaurentPoly(2, {(1, 0): 1, (0, 1): 2})
        self.assertEqual(f.shift((-1, 1)),
                         LaurentPoly(2, {(0, 1): 1, (-1, 2): 2}))
        self.assertEqual(f.shift((3, 3)),
                         f * LaurentPoly.monomial((3, 3)))


class TestJets(TestCase):
    def test_000_multisets(self):
        self.assertEqual(list(multisets(2, 2)),
                         [(), (0,), (1,), (0, 0), (0, 1), (1, 1)])
        self.assertEqual(format_multiset((0, 0)), '{1,1}')

    def test_001_jet_at_one(self):
        f = LaurentPoly(2, {(0, 0): 1, (1, 0): -1})
        self.assertEqual(jet_at_one(f, 1),
                         {(): 0, (0,): -1, (1,): 0})
        with self.assertRaises(ValueError):
            jet_at_one(f, -1)

    def test_002_jet_against_sympy(self):
        rng = sampling.suite_rng(0, 'test_jets')
        ones = dict((x, 1) for x in X)
        for _ in range(10):
            f = sampling.random_poly(rng, 3, 2, terms=4)
            for ms, value in jet_at_one(f, 2).items():
                expr = to_sympy(f)
                for axis in ms:
                    expr = X[axis] * sympy.diff(expr, X[axis])
                self.assertEqual(expr.subs(ones),
                                 sympy.Rational(value.numerator,
                                                value.denominator))

    def test_003_p_k(self):
        self.assertEqual(p_k([(1, 0), (0, 1)]),
                         LaurentPoly(2, {(0, 0): 1, (1, 0): -1, (0, 1): -1,
                                         (1, 1): 1}))
        self.assertEqual(p_k([], d=2), LaurentPoly.constant(2))
        with self.assertRaises(LatticeError):
            p_k([(1, 0), (0, 0)])
        with self.assertRaises(DimensionError):
            p_k([])

    def test_004_in_jk(self):
        square = p_k([(1, 0), (1, 0)])
        self.assertTrue(in_jk(square, 1))
        self.assertTrue(in_jk(square, 2))
        self.assertFalse(in_jk(square, 3))
        self.assertEqual(jet_witness(square, 3), ((0, 0), 2))
        self.assertIsNone(jet_witness(square, 2))

    def test_005_ignore_constant(self):
        constant = LaurentPoly.constant(2, 7)
        self.assertFalse(in_jk(constant, 1))
        self.assertTrue(in_jk(constant, 4, ignore_constant=True))
        shifted = p_k([(1, 1), (0, 1)]).shift((2, -1)) + 3
        self.assertTrue(in_jk(shifted, 2, ignore_constant=True))
        self.assertFalse(in_jk(shifted, 3, ignore_constant=True))

    def test_006_generators_in_jk(self):
        rng = sampling.suite_rng(0, 'test_generators')
        for k in range(1, 5):
            for _ in range(10):
                ms = [sampling.random_nonzero_lattice(rng, 3, 2)
                      for _ in range(k)]
                f = p_k(ms).shift(sampling.random_lattice(rng, 3, 3))
                self.assertTrue(in_jk(f, k))
                # the order k jet is (-1)^k prod (m_i, s), never zero
                self.assertFalse(in_jk(f, k + 1))
                self.assertIsNotNone(jet_witness(f, k + 1))
