from fractions import Fraction
from unittest import TestCase

from dertorus import sampling
from dertorus.exact import LatticeError, LaurentPoly, p_k
from dertorus.fields import ModuleParams
from dertorus.glrep import DominantWeight
from dertorus.tcalc import (
    MixedDirectionError, TElement, TkSpec, act_t_element, bracket_t,
    check_representation_compatibility, check_t_jacobi, filtration_dims,
    ik_witness, in_ik, layer_closed_form, poly_model, t_mod_i2_reduce,
    tk_expand, to_gl, validate_jet_oracle, verify_euler_eigenvalue,
    verify_filtration_ideals, verify_gl_quotient, verify_layer_independence)

E1, E2 = (1, 0), (0, 1)


class TestTElement(TestCase):
    def test_000_bracket(self):
        x = TElement.term(E1, E2)
        y = TElement.term(E2, E1)
        self.assertEqual(bracket_t(x, y),
                         TElement(2, [(E2, (1, 0)), (E1, (0, -1)),
                                      ((1, 1), (-1, 1))]))
        self.assertTrue(bracket_t(x, x).is_zero())

    def test_001_bracket_opposite_shifts(self):
        x = TElement.term((1, 2), (1, 0))
        y = TElement.term((3, 1), (-1, 0))
        # the T(w, 0) term vanishes
        self.assertEqual(bracket_t(x, y),
                         TElement(2, [((1, 0), (3, 6)), ((-1, 0), (3, 1))]))

    def test_002_zero_shift_dropped(self):
        self.assertTrue(TElement.term(E1, (0, 0)).is_zero())
        self.assertEqual(TElement.term((2, 0), E1),
                         TElement.term(E1, E1) + TElement.term(E1, E1))
        self.assertEqual(TElement.term(E1, E1).to_text(), 'T((1,0),(1,0))')

    def test_003_tk(self):
        self.assertEqual(tk_expand(TkSpec((3, 1), (0, 0), [(2, -1)])),
                         TElement.term((3, 1), (2, -1)).scale(-1))
        spec = TkSpec(E1, (0, 0), [E1, E1])
        self.assertEqual(tk_expand(spec),
                         TElement.term((-2, 0), E1) +
                         TElement.term(E1, (2, 0)))
        self.assertEqual(spec.k, 2)
        with self.assertRaises(LatticeError):
            TkSpec(E1, (0, 0), [E1, (0, 0)])
        with self.assertRaises(ValueError):
            TkSpec(E1, (0, 0), [])

    def test_004_poly_model(self):
        x = TElement.term((2, 0), (1, 0)) + TElement.term((1, 0), (0, 2))
        # default direction is that of the smallest shift, (0, 2)
        self.assertEqual(poly_model(x),
                         LaurentPoly(2, {(1, 0): 2, (0, 2): 1}))
        self.assertEqual(poly_model(x, (2, 0)),
                         LaurentPoly(2, {(1, 0): 1, (0, 2): Fraction(1, 2)}))
        with self.assertRaises(MixedDirectionError):
            poly_model(TElement.term(E1, E1) + TElement.term(E2, E2))
        self.assertTrue(poly_model(TElement(2)).is_zero())

    def test_005_membership(self):
        x = tk_expand(TkSpec(E1, (0, 0), [E1, E1]))
        self.assertTrue(in_ik(x, 1))
        self.assertTrue(in_ik(x, 2))
        self.assertFalse(in_ik(x, 3))
        self.assertEqual(ik_witness(x, 3), (0, (0, 0), 2))
        self.assertFalse(in_ik(TElement.term(E1, E1), 2))
        with self.assertRaises(ValueError):
            ik_witness(x, 0)

    def test_006_reduce(self):
        self.assertEqual(t_mod_i2_reduce(TElement.term(E1, (2, 1))),
                         ((2, 1), (0, 0)))
        generator = tk_expand(TkSpec(E1, (1, 1), [E1, E2]))
        self.assertEqual(t_mod_i2_reduce(generator), ((0, 0), (0, 0)))
        bracket = bracket_t(TElement.term(E1, E2), TElement.term(E2, E1))
        self.assertEqual(t_mod_i2_reduce(bracket), ((-1, 0), (0, 1)))
        self.assertEqual(to_gl(TElement.term(E1, E2)).to_dense(),
                         ((0, 0), (1, 0)))

    def test_007_poly_model_of_generators(self):
        rng = sampling.suite_rng(0, 'test_poly_model_generators')
        for d in (2, 3):
            for k in (1, 2, 3):
                for _ in range(10):
                    u = sampling.random_nonzero_lattice(rng, d, 3)
                    r = sampling.random_lattice(rng, d, 2)
                    ms = [sampling.random_nonzero_lattice(rng, d, 2)
                          for _ in range(k)]
                    expected = p_k(ms).shift(r)
                    # T(u, 0) = 0, so the constant term is lost
                    expected -= LaurentPoly.constant(
                        d, expected.terms().get((0,) * d, 0))
                    self.assertEqual(
                        poly_model(tk_expand(TkSpec(u, r, ms)), u), expected)


class TestFiltration(TestCase):
    def test_000_gl_quotient(self):
        rng = sampling.suite_rng(0, 'test_gl_quotient')
        reports = verify_gl_quotient((2, 3), rng, 30)
        for report in reports:
            self.assertTrue(report.passed, report.to_json())
        self.assertEqual(reports[0].instances_checked, 2 ** 4 + 3 ** 4)
        self.assertEqual(verify_gl_quotient((2,))[1].instances_checked, 0)

    def test_001_euler_eigenvalue(self):
        rng = sampling.suite_rng(0, 'test_euler_eigenvalue')
        for d in (2, 3):
            report = verify_euler_eigenvalue(rng, d, 3, 5)
            self.assertTrue(report.passed, report.to_json())
            self.assertEqual(report.instances_checked, 15)

    def test_002_dims(self):
        report = filtration_dims(2, 3)
        self.assertTrue(report.passed)
        self.assertEqual([entry['total'] for entry in report.evidence],
                         [4, 6, 8])
        for entry in report.evidence:
            self.assertEqual(entry['total'], entry['closed_form'])
        self.assertEqual(filtration_dims(3, 1).evidence[0]['total'], 9)
        self.assertEqual(layer_closed_form(3, 2), 18)

    def test_003_dims_sampled(self):
        rng = sampling.suite_rng(0, 'test_dims_sampled')
        report = filtration_dims(2, 2, rng, samples=8)
        self.assertTrue(report.passed, report.to_json())
        for entry in report.evidence:
            self.assertLessEqual(entry['sampled_rank'],
                                 entry['per_direction'])

    def test_004_ideals(self):
        rng = sampling.suite_rng(0, 'test_ideals')
        reports = verify_filtration_ideals(rng, 2, 30, 3)
        self.assertEqual(len(reports), 6)
        for report in reports:
            self.assertTrue(report.passed, report.to_json())
            self.assertGreater(report.instances_checked, 0)
        with self.assertRaises(ValueError):
            verify_filtration_ideals(rng, 2, 30, 1)

    def test_005_layers(self):
        rng = sampling.suite_rng(0, 'test_layers')
        reports = verify_layer_independence(rng, 30, 3, dims=(2,))
        for report in reports:
            self.assertTrue(report.passed, report.to_json())
        certificates = reports[0].evidence
        self.assertEqual([c['k'] for c in certificates], [1, 2, 3])
        for certificate in certificates:
            self.assertNotEqual(certificate['value'], 0)

    def test_006_jet_oracle(self):
        report = validate_jet_oracle(2, 2)
        self.assertTrue(report.passed, report.to_json())
        first = report.evidence[0]
        # k = 1 without constants: f(1) = 0 on the 3x3 box
        self.assertEqual((first['span_dim'], first['kernel_dim']), (8, 8))


class TestTAction(TestCase):
    def setUp(self):
        psi = DominantWeight((1,), Fraction(5, 7))
        self.p = ModuleParams(psi, (Fraction(1, 3), 0))

    def test_000_jacobi(self):
        rng = sampling.suite_rng(0, 'test_t_jacobi')
        for report in check_t_jacobi(rng, 2, 3, 20):
            self.assertTrue(report.passed, report.to_json())

    def test_001_compatibility(self):
        rng = sampling.suite_rng(0, 'test_t_compatibility')
        report = check_representation_compatibility(self.p, rng, 30)
        self.assertTrue(report.passed, report.to_json())

    def test_002_identity_acts_by_b(self):
        w = (Fraction(1), Fraction(2))
        self.assertEqual(act_t_element(TElement.identity(2), w, self.p),
                         (Fraction(5, 7), Fraction(10, 7)))
