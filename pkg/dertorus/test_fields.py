from fractions import Fraction
from unittest import TestCase

from dertorus import sampling
from dertorus.exact import DimensionError, LaurentPoly
from dertorus.fields import (
    ADER_MODE, DER_MODE, ModuleParams, ScanError, TensorFieldVector,
    act_a_field, act_der_field, act_t_weightspace, check_module_axiom,
    check_weight_spaces, module_grid, submodule_scan, t_generated_dimension,
    t_via_field)
from dertorus.glrep import DominantWeight
from dertorus.witt import DerElement


def params(coefficients, b, alpha):
    return ModuleParams(DominantWeight(coefficients, b), alpha)


class TestActions(TestCase):
    def test_000_invariant_line(self):
        p = params((0,), 0, (0, 0))
        v = TensorFieldVector.single((0, 0), (1,))
        rng = sampling.suite_rng(0, 'test_invariant_line')
        for _ in range(20):
            x = DerElement.term(sampling.random_rational_vector(rng, 2),
                                sampling.random_lattice(rng, 2, 3))
            self.assertTrue(act_der_field(x, v, p).is_zero())

    def test_001_trivial_rep_shift(self):
        p = params((0,), Fraction(3, 2), (Fraction(1, 2), 0))
        v = TensorFieldVector.single((1, 2), (1,))
        result = act_der_field(DerElement.term((1, 0), (1, 0)), v, p)
        # m_1 + alpha_1 + b/d = 1 + 1/2 + 3/4
        self.assertEqual(result,
                         TensorFieldVector.single((2, 2), (Fraction(9, 4),)))

    def test_002_weight(self):
        p = params((1,), 1, (Fraction(1, 3), 0))
        v = TensorFieldVector.single((2, -1), (1, 2))
        result = act_der_field(DerElement.term((1, 1), (0, 0)), v, p)
        # (u, m+alpha) = 2 + 1/3 - 1, no operator part for r = 0
        self.assertEqual(result, v.scale(Fraction(4, 3)))

    def test_003_translation(self):
        v = TensorFieldVector.single((0, 0), (1, 0))
        self.assertEqual(act_a_field(LaurentPoly.monomial((1, 0)), v),
                         TensorFieldVector.single((1, 0), (1, 0)))
        self.assertEqual(act_a_field(LaurentPoly.constant(2), v), v)
        f = LaurentPoly(2, {(1, 0): 2, (0, -1): 1})
        g = LaurentPoly(2, {(3, 3): -1})
        self.assertEqual(act_a_field(f * g, v),
                         act_a_field(f, act_a_field(g, v)))

    def test_004_t_action(self):
        p = params((1,), Fraction(5, 7), (Fraction(1, 3), 0))
        w = (Fraction(2), Fraction(-1, 2))
        self.assertEqual(act_t_weightspace((1, 0), (0, 1), w, p),
                         p.rep.E(1, 0).apply(w))
        self.assertEqual(act_t_weightspace((1, 0), (0, 0), w, p), (0, 0))
        self.assertEqual(t_via_field((1, 0), (0, 1), w, (3, -2), p),
                         p.rep.E(1, 0).apply(w))

    def test_005_vector_errors(self):
        with self.assertRaises(DimensionError):
            TensorFieldVector(2, 2, {(0, 0): (1,)})
        with self.assertRaises(DimensionError):
            TensorFieldVector.single((0, 0), (1,)) + \
                TensorFieldVector.single((0, 0), (1, 0))
        self.assertTrue(TensorFieldVector(2, 1, {(0, 0): (0,)}).is_zero())


class TestModuleChecks(TestCase):
    def test_000_module_axiom(self):
        rng = sampling.suite_rng(0, 'test_module_axiom')
        p = params((1,), 1, (Fraction(1, 2), 0))
        report = check_module_axiom(p, 30, rng)
        self.assertTrue(report.passed, report.to_json())
        self.assertEqual(report.instances_checked, 30)
        with self.assertRaises(ValueError):
            check_module_axiom(p, 0, rng)

    def test_001_module_axiom_d3(self):
        rng = sampling.suite_rng(0, 'test_module_axiom_d3')
        p = params((1, 1), Fraction(5, 7), (Fraction(1, 2), 0, 0))
        self.assertTrue(check_module_axiom(p, 10, rng, radius=2).passed)

    def test_002_broken_rep(self):
        rng = sampling.suite_rng(0, 'test_broken_rep')
        p = params((1,), 1, (Fraction(1, 2), 0))
        broken = ModuleParams(p.psi, p.alpha, p.rep.with_entry(0, 1, 0, 0, 1))
        report = check_module_axiom(broken, 100, rng)
        self.assertFalse(report.passed)
        self.assertIn('difference', report.witness)

    def test_003_weight_spaces(self):
        rng = sampling.suite_rng(0, 'test_weight_spaces')
        for p in (params((1,), Fraction(5, 7), (Fraction(1, 3), 0)),
                  params((2,), 2, (0, 0)),
                  params((1, 0), 0, (0, Fraction(-1, 2), 1))):
            reports = check_weight_spaces(p, 10, rng)
            self.assertEqual(len(reports), 7)
            for report in reports:
                self.assertTrue(report.passed, report.to_json())

    def test_004_t_irreducible(self):
        p = params((1, 0), Fraction(1, 2), (0, Fraction(1, 3), 0))
        self.assertEqual(p.dim, 3)
        for m in ((0, 0, 0), (2, -1, 3)):
            self.assertEqual(t_generated_dimension(p, (0, 0, 1), m), 3)
        self.assertEqual(t_generated_dimension(p, (0, 0, 0), (0, 0, 0)), 0)
        # a single line when the module is the trivial one
        trivial = params((0,), 3, (0, 0))
        self.assertEqual(t_generated_dimension(trivial, (5,), (1, 1)), 1)

    def test_005_grid(self):
        grid = list(module_grid(2))
        self.assertEqual(len(grid), 2 * 4 * 2)
        self.assertEqual(sorted(set(p.dim for p in grid)), [1, 2])
        self.assertEqual(len(list(module_grid(3))), 3 * 4 * 2)


class TestScan(TestCase):
    def test_000_invariant_line(self):
        p = params((0,), 0, (0, 0))
        start = TensorFieldVector.single((0, 0), (1,))
        result = submodule_scan(p, start, mode=DER_MODE)
        self.assertTrue(result['proper_submodule'])
        self.assertFalse(result['saturated'])
        dims = dict((tuple(entry['weight']), entry['dim'])
                    for entry in result['per_weight_dims'])
        self.assertEqual(dims[0, 0], 1)
        self.assertEqual(sum(dims.values()), 1)
        self.assertEqual(result['witness']['closure'],
                         [{'weight': [0, 0], 'vector': [1]}])
        self.assertEqual(len(dims), 7 * 7)

    def test_001_translations_generate(self):
        p = params((0,), 0, (0, 0))
        start = TensorFieldVector.single((0, 0), (1,))
        result = submodule_scan(p, start, mode=ADER_MODE)
        self.assertFalse(result['proper_submodule'])
        self.assertTrue(result['saturated'])
        self.assertIsNone(result['witness'])
        self.assertIn('no proper submodule found', result['message'])

    def test_002_generic_saturates(self):
        rng = sampling.suite_rng(0, 'test_generic_scan')
        p = params((1,), Fraction(5, 7), (Fraction(1, 3), 0))
        start = TensorFieldVector.single(
            (0, 0), tuple(sampling.random_rational(rng, nonzero=True)
                          for _ in range(2)))
        result = submodule_scan(p, start, 6, 3, DER_MODE)
        self.assertTrue(result['saturated'])
        self.assertFalse(result['proper_submodule'])

    def test_003_generic_alpha(self):
        p = params((0,), 0, (Fraction(1, 3), Fraction(2, 5)))
        start = TensorFieldVector.single((0, 0), (1,))
        result = submodule_scan(p, start, 6, 3, DER_MODE)
        self.assertFalse(result['proper_submodule'])

    def test_004_errors(self):
        p = params((0,), 0, (0, 0))
        with self.assertRaises(ScanError):
            submodule_scan(p, TensorFieldVector(2, 1))
        start = TensorFieldVector.single((0, 0), (1,))
        with self.assertRaises(ValueError):
            submodule_scan(p, start, word_length=0)
        with self.assertRaises(ValueError):
            submodule_scan(p, start, mode='other')
