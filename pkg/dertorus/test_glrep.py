from fractions import Fraction
from unittest import TestCase

from dertorus import sampling
from dertorus.exact import DimensionError
from dertorus.glrep import (
    DominantWeight, build_irrep, check_grid, check_rep, dump_rep,
    generated_dimension, irreducibility_witness, weyl_dim)
from dertorus.linalg import SparseMatrix


class TestWeyl(TestCase):
    def test_000_weyl_dim(self):
        self.assertEqual(weyl_dim(DominantWeight((1, 1)), 3), 8)
        self.assertEqual(weyl_dim(DominantWeight((2,)), 2), 3)
        self.assertEqual(weyl_dim(DominantWeight((0, 0)), 3), 1)
        self.assertEqual(weyl_dim(DominantWeight((1, 0, 0)), 4), 4)
        self.assertEqual(weyl_dim(DominantWeight((0, 1, 0)), 4), 6)
        self.assertEqual(weyl_dim(DominantWeight((0, 3)), 3), 10)

    def test_001_weight_errors(self):
        with self.assertRaises(DimensionError):
            DominantWeight((1, 0)).partition(2)
        with self.assertRaises(DimensionError):
            DominantWeight.fundamental(2, 2)
        with self.assertRaises(ValueError):
            DominantWeight((-1,))
        self.assertEqual(DominantWeight((1, 2)).partition(3), (3, 2, 0))
        self.assertEqual(DominantWeight.fundamental(3, 2).coefficients,
                         (0, 1))


class TestBuildIrrep(TestCase):
    def test_000_trivial(self):
        rep = build_irrep(DominantWeight((0,), Fraction(3, 2)), 2)
        self.assertEqual(rep.dim, 1)
        self.assertEqual(rep.E(0, 0).to_dense(), ((Fraction(3, 4),),))
        self.assertTrue(rep.E(0, 1).is_zero())
        self.assertTrue(check_rep(rep).passed)

    def test_001_symmetric_square(self):
        rep = build_irrep(DominantWeight((2,), 3), 2)
        self.assertEqual(rep.dim, 3)
        trace = rep.E(0, 0) + rep.E(1, 1)
        self.assertEqual(trace, SparseMatrix.identity(3, 3))
        self.assertTrue(check_rep(rep).passed)
        # highest weight first: lambda = (2, 0) shifted by (3 - 2) / 2
        self.assertEqual(rep.weight_labels[0],
                         (Fraction(5, 2), Fraction(1, 2)))

    def test_002_adjoint_sl3(self):
        psi = DominantWeight((1, 1), Fraction(5, 7))
        rep = build_irrep(psi, 3)
        self.assertEqual(rep.dim, 8)
        report = check_rep(rep)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.instances_checked, 81 + 1 + 8)

    def test_003_grid(self):
        rng = sampling.suite_rng(0, 'test_grid')
        for report in check_grid(rng, dims=(2, 3), max_total=2):
            self.assertTrue(report.passed, report.to_json())
            self.assertGreater(report.instances_checked, 0)

    def test_004_four_dimensional(self):
        for coefficients in ((1, 0, 0), (0, 1, 0), (1, 0, 1)):
            psi = DominantWeight(coefficients, 1)
            rep = build_irrep(psi, 4)
            self.assertEqual(rep.dim, weyl_dim(psi, 4))
            self.assertTrue(check_rep(rep).passed)

    def test_005_irreducibility(self):
        rep = build_irrep(DominantWeight((1, 1)), 3)
        starts = [tuple(1 if i == k else 0 for i in range(8))
                  for k in range(8)]
        self.assertTrue(irreducibility_witness(rep, starts).passed)
        self.assertEqual(generated_dimension(rep, (0,) * 8), 0)

    def test_006_broken_entry(self):
        rep = build_irrep(DominantWeight((1,), 1), 2)
        broken = rep.with_entry(0, 1, 0, 0, 1)
        report = check_rep(broken)
        self.assertFalse(report.passed)
        self.assertIn('i', report.witness)
        self.assertTrue(check_rep(rep).passed)

    def test_007_dump(self):
        rep = build_irrep(DominantWeight((1,), 1), 2)
        lines = dump_rep(rep).splitlines()
        self.assertEqual(lines[:3], ['dim 2', 'weyl_dim 2', 'E11'])
        self.assertEqual(len(lines), 3 + 4 * 3 - 1)
