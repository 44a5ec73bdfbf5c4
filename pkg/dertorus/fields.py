# vim: fileencoding=utf-8

#
# dertorus - exact computations with vector fields on the d-torus
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
'''Tensor-field modules F^alpha(psi, b) = V(psi, b) (x) A.

v (x) t^m is written v(m). Der A acts by

    D(u,r) v(m) = (u, m+alpha) v(m+r) + (sum_ij u_i r_j E_ji v)(m+r)

and A by translation, t^m v(r) = v(m+r).
'''

import collections
import itertools
import logging
from fractions import Fraction

from dertorus import sampling
from dertorus.exact import (
    DimensionError, LaurentPoly, check_dim, dot, format_rational,
    format_vector, rational_vector, unit, vadd, vneg, zero)
from dertorus.glrep import DominantWeight, build_irrep
from dertorus.linalg import EchelonBasis, sparse
from dertorus.report import Report
from dertorus.witt import (
    DerElement, bracket_a_der, random_ader)

log = logging.getLogger('dertorus.fields')

DER_MODE = 'der'
ADER_MODE = 'ader'


class ScanError(ValueError):
    pass


class ModuleParams(object):
    '''(psi, b), alpha and the explicit gl_d-module V(psi, b).'''

    def __init__(self, psi, alpha, rep=None):
        self.psi = psi
        self.alpha = rational_vector(alpha)
        self.d = len(self.alpha)
        self.rep = rep if rep is not None else build_irrep(psi, self.d)
        if self.rep.d != self.d:
            raise DimensionError('representation of gl_{} for d={}'.format(
                self.rep.d, self.d))
        self._operators = {}

    @property
    def dim(self):
        return self.rep.dim

    def operator(self, u, r):
        '''sum u_i r_j E_ji, memoised per (u, r).'''
        key = (tuple(u), tuple(r))
        if key not in self._operators:
            self._operators[key] = self.rep.operator(u, r)
        return self._operators[key]

    def to_json(self):
        return {
            'd': self.d,
            'weights': list(self.psi.coefficients),
            'b': self.psi.b,
            'alpha': list(self.alpha),
            'dim': self.dim,
        }

    def __repr__(self):
        return 'ModuleParams({!r}, alpha={})'.format(
            self.psi, format_vector(self.alpha))


class TensorFieldVector(object):
    '''Finitely supported map m -> coordinate vector in V(psi, b).'''
    __slots__ = ('d', 'n', '_support')

    def __init__(self, d, n, support=None):
        self.d = d
        self.n = n
        merged = {}
        for m, w in (support or {}).items():
            m = tuple(int(x) for x in m)
            check_dim(d, m)
            if len(w) != n:
                raise DimensionError(
                    'coordinate vector of length {}, expected {}'.format(
                        len(w), n))
            w = tuple(Fraction(x) for x in w)
            if m in merged:
                w = tuple(a + b for a, b in zip(merged[m], w))
            merged[m] = w
        self._support = dict((m, w) for m, w in merged.items() if any(w))

    @classmethod
    def single(cls, m, w):
        '''The vector w(m).'''
        return cls(len(m), len(w), {tuple(m): w})

    @classmethod
    def basis(cls, m, index, n):
        return cls.single(m, tuple(1 if i == index else 0 for i in range(n)))

    def items(self):
        return sorted(self._support.items())

    def support(self):
        return sorted(self._support)

    def component(self, m):
        return self._support.get(tuple(m), (Fraction(0),) * self.n)

    def is_zero(self):
        return not self._support

    def __bool__(self):
        return bool(self._support)

    def _combine(self, other, sign):
        if (self.d, self.n) != (other.d, other.n):
            raise DimensionError('vectors of shape {} and {}'.format(
                (self.d, self.n), (other.d, other.n)))
        support = dict(self._support)
        for m, w in other._support.items():
            w = tuple(sign * x for x in w)
            if m in support:
                w = tuple(a + b for a, b in zip(support[m], w))
            support[m] = w
        return TensorFieldVector(self.d, self.n, support)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        c = Fraction(c)
        return TensorFieldVector(self.d, self.n, dict(
            (m, tuple(c * x for x in w)) for m, w in self._support.items()))

    def __neg__(self):
        return self.scale(-1)

    def __eq__(self, other):
        if not isinstance(other, TensorFieldVector):
            return NotImplemented
        return ((self.d, self.n) == (other.d, other.n) and
                self._support == other._support)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def to_text(self):
        if not self._support:
            return '0'
        return ' + '.join(
            '[{}]{}'.format(' '.join(format_rational(x) for x in w),
                            format_vector(m))
            for m, w in self.items())

    __str__ = to_text

    def __repr__(self):
        return 'TensorFieldVector({})'.format(self.to_text())


def _accumulate(support, m, w):
    if m in support:
        w = tuple(a + b for a, b in zip(support[m], w))
    support[m] = w


def act_der_field(x, v, p):
    '''Action of a Der A element on F^alpha(psi, b).'''
    if x.d != v.d or v.d != p.d:
        raise DimensionError('derivation, vector and module over d={}, {}, '
                             '{}'.format(x.d, v.d, p.d))
    support = {}
    for r, u in x.items():
        op = p.operator(u, r)
        for m, w in v.items():
            scalar = dot(u, vadd(m, p.alpha))
            image = op.apply(w)
            image = tuple(scalar * a + b for a, b in zip(w, image))
            _accumulate(support, vadd(m, r), image)
    return TensorFieldVector(v.d, v.n, support)


def act_a_field(f, v):
    '''t^m v(r) = v(m+r), extended linearly.'''
    if f.d != v.d:
        raise DimensionError('polynomial over d={} acting on d={}'.format(
            f.d, v.d))
    support = {}
    for m, c in f.items():
        for r, w in v.items():
            _accumulate(support, vadd(m, r), tuple(c * x for x in w))
    return TensorFieldVector(v.d, v.n, support)


def act_ader_field(x, v, p):
    return act_a_field(x.poly, v) + act_der_field(x.der, v, p)


def act_t_weightspace(u, r, w, p):
    '''T(u,r) = k(-r) D(u,r) - D(u,0) on a weight space: sum u_i r_j E_ji.

    The result does not depend on the weight space it is applied in.
    '''
    check_dim(p.d, u, r)
    return p.operator(tuple(Fraction(x) for x in u), tuple(r)).apply(
        tuple(Fraction(x) for x in w))


def t_via_field(u, r, w, m, p):
    '''T(u,r) on w(m) computed through the Der A and A actions.'''
    v = TensorFieldVector.single(m, w)
    shifted = act_der_field(DerElement.term(u, r), v, p)
    result = (act_a_field(LaurentPoly.monomial(vneg(r)), shifted) -
              act_der_field(DerElement.term(u, zero(p.d)), v, p))
    stray = [x for x in result.support() if x != tuple(m)]
    if stray:
        raise AssertionError('T(u,r) left the weight space {}: {!r}'.format(
            m, stray))
    return result.component(m)


def random_field_vector(rng, p, radius, terms=2):
    return TensorFieldVector(p.d, p.dim, dict(
        (sampling.random_lattice(rng, p.d, radius),
         tuple(sampling.random_rational(rng) for _ in range(p.dim)))
        for _ in range(sampling.randint(rng, 1, terms))))


def t_generated_dimension(p, w, m):
    '''Dimension of the span of w(m) under all words in the T(e_i, e_j).'''
    d = p.d
    space = EchelonBasis()
    if not space.add(sparse(w)):
        return 0
    queue = collections.deque([tuple(w)])
    steps = [(unit(d, i), unit(d, j)) for i in range(d) for j in range(d)]
    while queue and space.rank < p.dim:
        vector = queue.popleft()
        for u, r in steps:
            image = t_via_field(u, r, vector, m, p)
            if any(image) and space.add(sparse(image)):
                queue.append(image)
    return space.rank


def check_module_axiom(p, trials, rng, radius=3):
    '''[x,y] v = x(y v) - y(x v) for x, y in A + Der A.'''
    if trials < 1:
        raise ValueError('trials must be >= 1')
    report = Report('module_axiom',
                    '[x,y].v = x.(y.v) - y.(x.v) on F^alpha(psi,b)')
    for _ in range(trials):
        x = random_ader(rng, p.d, radius)
        y = random_ader(rng, p.d, radius)
        v = random_field_vector(rng, p, radius)
        report.instances_checked += 1
        lhs = act_ader_field(bracket_a_der(x, y), v, p)
        rhs = (act_ader_field(x, act_ader_field(y, v, p), p) -
               act_ader_field(y, act_ader_field(x, v, p), p))
        if lhs != rhs:
            report.fail({'params': p.to_json(), 'x': x, 'y': y, 'v': v,
                         'difference': lhs - rhs})
            log.error('module axiom fails for %r', p)
            break
    return report


def check_weight_spaces(p, trials, rng, radius=3):
    '''Weight-space properties of F^alpha(psi, b).

    Returns reports for: D(u,0) acting by (u, m+alpha); T(u,r) acting the
    same on every weight space; T_2-sums acting as zero; T(e_i,e_j)
    acting as E_ji; the mixed bracket [D(u,r), t^m] = (u,m) t^(r+m);
    [D(v,0), T(u,r)] = 0; and each weight space being T-irreducible.
    '''
    d, n = p.d, p.dim
    weights = Report('weight_consistency', 'D(u,0) v(m) = (u, m+alpha) v(m)')
    uniform = Report('t_action_uniform',
                     'T(u,r) on v(m) and on v(m\') agree in V(psi,b)')
    annihilate = Report('t2_annihilates_weight_spaces',
                        'T_2(u,r,m1,m2) acts as 0 on V(psi) (x) t^m')
    unit_action = Report('t_unit_is_e_ji', 'T(e_i,e_j) w = E_ji w')
    leibniz = Report('field_leibniz',
                     'D(u,r)(t^m v) - t^m (D(u,r) v) = (u,m) t^(r+m) v')
    commute = Report('t_commutes_with_degree',
                     '[D(v,0), T(u,r)] = 0 on V(psi) (x) t^m')
    irreducible = Report('t_irreducible_weight_spaces',
                         'T w(m) spans V(psi) (x) t^m for every w != 0')

    for _ in range(trials):
        u = sampling.random_rational_vector(rng, d)
        r = sampling.random_lattice(rng, d, radius)
        m = sampling.random_lattice(rng, d, radius)
        m2 = sampling.random_lattice(rng, d, radius)
        index = sampling.randint(rng, 0, n - 1)
        w = tuple(sampling.random_rational(rng) for _ in range(n))

        weights.instances_checked += 1
        basis = TensorFieldVector.basis(m, index, n)
        got = act_der_field(DerElement.term(u, zero(d)), basis, p)
        if got != basis.scale(dot(u, vadd(m, p.alpha))):
            weights.fail({'u': u, 'm': m, 'basis_vector': index})

        uniform.instances_checked += 1
        here = t_via_field(u, r, w, m, p)
        there = t_via_field(u, r, w, m2, p)
        if here != there or here != act_t_weightspace(u, r, w, p):
            uniform.fail({'u': u, 'r': r, 'm': m, 'm2': m2})

        annihilate.instances_checked += 1
        s1 = sampling.random_nonzero_lattice(rng, d, radius)
        s2 = sampling.random_nonzero_lattice(rng, d, radius)
        total = [Fraction(0)] * n
        for subset, sign in ((zero(d), 1), (s1, -1), (s2, -1),
                             (vadd(s1, s2), 1)):
            image = t_via_field(u, vadd(r, subset), w, m, p)
            total = [a + sign * b for a, b in zip(total, image)]
        if any(total):
            annihilate.fail({'u': u, 'r': r, 'm1': s1, 'm2': s2, 'm': m})

        leibniz.instances_checked += 1
        v = random_field_vector(rng, p, radius)
        x = DerElement.term(u, r)
        tm = LaurentPoly.monomial(m)
        lhs = (act_der_field(x, act_a_field(tm, v), p) -
               act_a_field(tm, act_der_field(x, v, p)))
        rhs = act_a_field(LaurentPoly.monomial(vadd(r, m), dot(u, m)), v)
        if lhs != rhs:
            leibniz.fail({'u': u, 'r': r, 'm': m, 'v': v})

        commute.instances_checked += 1
        degree = DerElement.term(sampling.random_rational_vector(rng, d),
                                 zero(d))
        after = act_der_field(
            degree, TensorFieldVector.single(m, t_via_field(u, r, w, m, p)),
            p).component(m)
        before = act_der_field(degree, TensorFieldVector.single(m, w),
                               p).component(m)
        if after != t_via_field(u, r, before, m, p):
            commute.fail({'u': u, 'r': r, 'm': m, 'degree': degree})

    for i, j in itertools.product(range(d), repeat=2):
        unit_action.instances_checked += 1
        ei = tuple(Fraction(x) for x in unit(d, i))
        ej = unit(d, j)
        if p.operator(ei, ej) != p.rep.E(j, i):
            unit_action.fail({'i': i + 1, 'j': j + 1})
            break
        for index in range(n):
            w = tuple(Fraction(1 if k == index else 0) for k in range(n))
            if act_t_weightspace(ei, ej, w, p) != p.rep.E(j, i).apply(w):
                unit_action.fail({'i': i + 1, 'j': j + 1,
                                  'basis_vector': index})
                break

    for _ in range(min(trials, 3)):
        m = sampling.random_lattice(rng, d, radius)
        w = sampling.random_rational_vector(rng, n, nonzero=True)
        irreducible.instances_checked += 1
        found = t_generated_dimension(p, w, m)
        if found != n:
            irreducible.fail({'m': m, 'start': list(w), 'generated': found,
                              'dim': n})

    reports = [weights, uniform, annihilate, unit_action, leibniz,
               commute, irreducible]
    for report in reports:
        if not report.passed:
            report.witness = dict(report.witness, params=p.to_json())
            log.error('%s fails for %r', report.identity, p)
    return reports


def module_grid(d, generic_alpha=None):
    '''Parameter grid: psi in {0, delta_1, delta_1 + delta_2}, b in
    {0, 1, 5/7, d}, alpha in {0, generic}.'''
    if generic_alpha is None:
        generic_alpha = tuple(Fraction(1, k + 2) * (-1) ** k
                              for k in range(d))
    psis = [(0,) * (d - 1), DominantWeight.fundamental(d, 1).coefficients]
    if d >= 3:
        psis.append(tuple(1 if i < 2 else 0 for i in range(d - 1)))
    for coefficients in psis:
        for b in (Fraction(0), Fraction(1), Fraction(5, 7), Fraction(d)):
            rep = build_irrep(DominantWeight(coefficients, b), d)
            for alpha in (zero(d), generic_alpha):
                yield ModuleParams(rep.weight, alpha, rep)


def _generators(p, mode):
    '''Unit-step generators as (shift, scalar function, operator) triples.

    A generator maps w(m) to (c(m) w + M w)(m + shift).
    '''
    d = p.d
    gens = []
    for i in range(d):
        u = tuple(Fraction(x) for x in unit(d, i))
        gens.append((zero(d), u, None))
        for j in range(d):
            for sign in (1, -1):
                r = tuple(sign * x for x in unit(d, j))
                gens.append((r, u, p.operator(u, r)))
    if mode == ADER_MODE:
        for i in range(d):
            for sign in (1, -1):
                gens.append((tuple(sign * x for x in unit(d, i)), None, None))
    return gens


def _apply_generator(gen, m, w, p):
    shift, u, op = gen
    if u is None:
        return vadd(m, shift), w
    scalar = dot(u, vadd(m, p.alpha))
    image = [scalar * x for x in w]
    if op is not None:
        image = [a + b for a, b in zip(image, op.apply(w))]
    return vadd(m, shift), tuple(image)


def submodule_scan(p, start, word_length=6, window=3, mode=DER_MODE):
    '''Close start under the unit-step generators up to word_length.

    The closure is tracked one weight space at a time. A weight inside the
    window is *interior* when it lies within word_length - 2 steps of the
    start support, so that words had room to reach it in several ways.
    A proper submodule is flagged when an interior weight stays below the
    full dimension N while the last word length did not grow it. This is a
    one-sided test: no flag only means no proper submodule was found at
    this word length and window.
    '''
    if word_length < 1:
        raise ValueError('word length must be >= 1')
    if mode not in (DER_MODE, ADER_MODE):
        raise ValueError('unknown scan mode {!r}'.format(mode))
    if start.is_zero():
        raise ScanError('empty start vector')
    n = p.dim
    gens = _generators(p, mode)
    spaces = collections.defaultdict(EchelonBasis)
    found = collections.defaultdict(list)
    frontier = []
    for m, w in start.items():
        if spaces[m].add(sparse(w)):
            found[m].append(w)
            frontier.append((m, w))

    starts = start.support()
    dims_before = {}
    level = 0
    while frontier and level < word_length:
        level += 1
        dims_before = dict((m, space.rank) for m, space in spaces.items())
        new_frontier = []
        for m, w in frontier:
            for gen in gens:
                target, image = _apply_generator(gen, m, w, p)
                if any(image) and spaces[target].add(sparse(image)):
                    found[target].append(image)
                    new_frontier.append((target, image))
        log.debug('scan level %d: %d new vectors', level, len(new_frontier))
        frontier = new_frontier
    stable = not frontier

    window_weights = list(itertools.product(range(-window, window + 1),
                                            repeat=p.d))
    per_weight = [(m, spaces[m].rank if m in spaces else 0)
                  for m in window_weights]
    interior = [m for m in window_weights
                if min(sum(abs(a - b) for a, b in zip(m, s))
                       for s in starts) <= word_length - 2]
    dims = dict(per_weight)
    saturated = all(dims[m] == n for m in interior)
    deficient = [m for m in interior
                 if dims[m] < n and
                 (stable or dims_before.get(m, 0) == dims[m])]
    proper = bool(deficient) and any(dims.values())

    witness = None
    if proper:
        closure = []
        for m in sorted(found):
            for w in found[m]:
                closure.append({'weight': list(m), 'vector': list(w)})
        witness = {
            'weight': list(deficient[0]),
            'dimension': dims[deficient[0]],
            'closure_complete': stable,
            'closure': closure[:16],
        }
    message = ('proper submodule found' if proper else
               'no proper submodule found at (L={}, window={})'.format(
                   word_length, window))
    return {
        'params': p.to_json(),
        'mode': mode,
        'window': window,
        'word_length': word_length,
        'levels': level,
        'per_weight_dims': [{'weight': list(m), 'dim': dim}
                            for m, dim in per_weight],
        'interior': len(interior),
        'saturated': saturated,
        'proper_submodule': proper,
        'witness': witness,
        'message': message,
    }


def fields_suites(config, rng, fault_inject=False):
    '''Module axiom and weight-space checks over the parameter grid.'''
    d, radius = config.d, config.box
    trials = max(1, config.trials // 2)
    axiom = Report('module_axiom',
                   '[x,y].v = x.(y.v) - y.(x.v) on F^alpha(psi,b)')
    weight_reports = None
    grid = list(module_grid(d))
    if fault_inject:
        # one matrix entry of E_12 in the first non-trivial module
        for index, p in enumerate(grid):
            if p.dim > 1:
                rep = p.rep.with_entry(0, 1, 0, 0, p.rep.E(0, 1).get(0, 0) + 1)
                grid[index] = ModuleParams(p.psi, p.alpha, rep)
                break
    for p in grid:
        single = check_module_axiom(p, trials, rng, radius)
        axiom.instances_checked += single.instances_checked
        if not single.passed:
            axiom.fail(single.witness)
        reports = check_weight_spaces(p, max(1, trials // 10), rng, radius)
        if weight_reports is None:
            weight_reports = reports
            continue
        for total, single in zip(weight_reports, reports):
            total.instances_checked += single.instances_checked
            if not single.passed:
                total.fail(single.witness)
    return [axiom] + weight_reports
