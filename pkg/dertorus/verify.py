'''Named verification suites and their deterministic execution.

Each suite is a function ``(config, rng) -> [Report]``. A suite gets its
own random stream derived from the run seed and its name, so suites may
run in any order, alone, or in worker processes without changing a single
sample.
'''

import concurrent.futures
import logging
from fractions import Fraction

from dertorus import exact, fields, glrep, sampling, tcalc, witt
from dertorus.report import Report

log = logging.getLogger('dertorus.verify')

#: structure constant perturbed by fault injection: [h, e] = 2e -> 3e
FAULT_CONSTANT = (1, 0, 0, Fraction(3))


def load_algebra(config):
    if config.algebra:
        algebra = witt.load_algebra_spec(config.algebra)
    else:
        algebra = witt.load_algebra_spec()
    if config.fault_inject:
        algebra = algebra.with_constant(*FAULT_CONSTANT)
        log.warning('fault injected: structure constant %r', FAULT_CONSTANT)
    return algebra


def module_params(config):
    psi = glrep.DominantWeight(config.weights, config.b)
    return fields.ModuleParams(psi, config.module_alpha)


def check_ring_properties(rng, d, radius, trials):
    '''Euler derivations commute and satisfy Leibniz over poly_mul.'''
    commute = Report('euler_commute', 'D_i D_j f = D_j D_i f')
    leibniz = Report('euler_leibniz', 'D_i (fg) = (D_i f) g + f (D_i g)')
    for _ in range(trials):
        f = sampling.random_poly(rng, d, radius)
        g = sampling.random_poly(rng, d, radius)
        i = sampling.randint(rng, 0, d - 1)
        j = sampling.randint(rng, 0, d - 1)
        commute.instances_checked += 1
        if (exact.euler_derive(exact.euler_derive(f, i), j) !=
                exact.euler_derive(exact.euler_derive(f, j), i)):
            commute.fail({'f': f, 'i': i + 1, 'j': j + 1})
        leibniz.instances_checked += 1
        if (exact.euler_derive(f * g, i) !=
                exact.euler_derive(f, i) * g + f * exact.euler_derive(g, i)):
            leibniz.fail({'f': f, 'g': g, 'i': i + 1})
    return [commute, leibniz]


def suite_exact(config, rng):
    return (check_ring_properties(rng, config.d, config.box, config.trials) +
            [tcalc.validate_jet_oracle()])


def suite_brackets(config, rng):
    return witt.witt_suites(config, rng, load_algebra(config))


def suite_gl_reps(config, rng):
    dims = tuple(range(2, max(4, config.d) + 1))
    return glrep.check_grid(rng, dims=dims)


def suite_modules(config, rng):
    return fields.fields_suites(config, rng, config.fault_inject)


def suite_frontier(config, rng):
    '''Spot checks of the reducibility frontier at the configured
    word length and window.'''
    report = Report('reducibility_frontier',
                    'v(0) spans a Der A submodule of F^0(0,0) and generates '
                    'it under A + Der A; generic modules saturate')
    scans = []

    def scan(d, coefficients, b, alpha, start, mode, expect_proper,
             expect_saturated):
        p = fields.ModuleParams(glrep.DominantWeight(coefficients, b), alpha)
        if start is None:
            start = fields.TensorFieldVector.single(
                exact.zero(d),
                tuple(sampling.random_rational(rng, nonzero=True)
                      for _ in range(p.dim)))
        result = fields.submodule_scan(p, start, config.word_length,
                                       config.window, mode)
        report.instances_checked += 1
        summary = {'params': result['params'], 'mode': mode,
                   'proper_submodule': result['proper_submodule'],
                   'saturated': result['saturated']}
        scans.append(summary)
        if (result['proper_submodule'] != expect_proper or
                (expect_saturated is not None and
                 result['saturated'] != expect_saturated)):
            report.fail(dict(summary, witness=result['witness']))

    origin = fields.TensorFieldVector.single((0, 0), (1,))
    scan(2, (0,), 0, (0, 0), origin, fields.DER_MODE, True, False)
    scan(2, (0,), 0, (0, 0), origin, fields.ADER_MODE, False, True)
    scan(2, (0,), 0, (Fraction(1, 3), Fraction(2, 5)), origin,
         fields.DER_MODE, False, True)
    for d in (2, 3):
        alpha = (Fraction(1, 3),) + (Fraction(0),) * (d - 1)
        delta_1 = (1,) + (0,) * (d - 2)
        scan(d, delta_1, Fraction(5, 7), alpha, None, fields.DER_MODE,
             False, True)
    report.evidence = scans
    return [report]


def suite_t_algebra(config, rng):
    return tcalc.check_t_jacobi(rng, config.d, config.box, config.trials) + [
        tcalc.check_representation_compatibility(
            module_params(config), rng, max(1, config.trials // 10),
            config.box)]


def suite_filtration(config, rng):
    return tcalc.verify_filtration_ideals(rng, config.d, config.trials,
                                          max(2, config.k_max), config.box)


def suite_layers(config, rng):
    return tcalc.verify_layer_independence(rng, config.trials, config.k_max,
                                           radius=config.box)


def suite_gl_quotient(config, rng):
    dims = tuple(range(2, max(4, config.d) + 1))
    return tcalc.verify_gl_quotient(dims, rng, max(1, config.trials // 10),
                                    config.box)


def suite_euler(config, rng):
    return [tcalc.verify_euler_eigenvalue(
        rng, config.d, config.k_max, max(1, config.trials // 10),
        config.box)]


def suite_dims(config, rng):
    return [tcalc.filtration_dims(config.d, config.k_max, rng)]


SUITES = {
    'brackets': suite_brackets,
    'dims': suite_dims,
    'euler': suite_euler,
    'exact': suite_exact,
    'filtration': suite_filtration,
    'frontier': suite_frontier,
    'gl_quotient': suite_gl_quotient,
    'gl_reps': suite_gl_reps,
    'layers': suite_layers,
    'modules': suite_modules,
    't_algebra': suite_t_algebra,
}


def run_suite(name, config):
    '''Run one suite on its own stream; returns JSON-ready entries.'''
    rng = sampling.suite_rng(config.seed, name)
    log.info('running suite %s', name)
    entries = []
    for report in SUITES[name](config, rng):
        entry = report.to_json()
        entry['suite'] = name
        entry['seed'] = config.seed
        entries.append(entry)
        if not report.passed:
            log.error('%s: %s failed', name, report.identity)
    return entries


def run_suites(config, names=None):
    '''Run the named suites (all by default), in a process pool when
    ``config.jobs`` > 1. Entries are ordered by suite name, then by their
    position inside the suite.'''
    names = sorted(names or SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise KeyError('unknown suite(s): {}'.format(', '.join(unknown)))
    if config.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(config.jobs) as pool:
            results = list(pool.map(run_suite, names,
                                    [config] * len(names)))
    else:
        results = [run_suite(name, config) for name in names]
    return [entry for entries in results for entry in entries]
