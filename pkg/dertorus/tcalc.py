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
'''The Lie algebra T of operators T(u,r) = k(-r) D(u,r) - D(u,0).

T(u, r) is linear in u and vanishes for r = 0. The alternating sums

    T_k(u, r, m_1..m_k) = sum over subsets S of (-1)^|S| T(u, r + sum_S m)

span the ideals I_k. Membership is decided in the polynomial model
T(u, r) -> t^r (one polynomial per coordinate direction), read modulo the
constants: an element lies in I_k iff every directional polynomial has
vanishing Euler-derivative jets of orders 1..k-1 at t = (1, ..., 1).
'''

import itertools
import logging
from fractions import Fraction
from math import factorial

from dertorus import sampling
from dertorus.exact import (
    DimensionError, LatticeError, LaurentPoly, check_dim, dot, format_multiset,
    format_vector, is_zero_vector, jet_value, jet_witness, lattice, multisets,
    p_k, rational_vector, unit, vadd, vneg, vscale, vsub, vsum, zero)
from dertorus.fields import act_t_weightspace
from dertorus.linalg import EchelonBasis, SparseMatrix, rank
from dertorus.report import Report
from dertorus.witt import check_antisymmetry, check_jacobi, merge_vector_terms

log = logging.getLogger('dertorus.tcalc')


class MixedDirectionError(ValueError):
    pass


class TElement(object):
    '''Finite sum of T(u, r), stored as {r: u} with r != 0.'''
    __slots__ = ('d', '_terms')

    def __init__(self, d, pairs=()):
        self.d = d
        if isinstance(pairs, dict):
            pairs = pairs.items()
        terms = merge_vector_terms(d, pairs)
        terms.pop(zero(d), None)
        self._terms = terms

    @classmethod
    def term(cls, u, r):
        return cls(len(r), [(r, u)])

    @classmethod
    def identity(cls, d):
        '''sum_i T(e_i, e_i), which acts like the identity matrix mod I_2.'''
        return cls(d, [(unit(d, i), unit(d, i)) for i in range(d)])

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if self.d != other.d:
            raise DimensionError(
                'elements over d={} and d={}'.format(self.d, other.d))

    def __add__(self, other):
        self._check(other)
        return TElement(
            self.d, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return TElement(
            self.d, [(r, vscale(c, u)) for r, u in self._terms.items()])

    def __eq__(self, other):
        if not isinstance(other, TElement):
            return NotImplemented
        return self.d == other.d and self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.d, frozenset(self._terms.items())))

    def to_text(self):
        if not self._terms:
            return '0'
        return ' + '.join(
            'T({},{})'.format(format_vector(u), format_vector(r))
            for r, u in self.items())

    __str__ = to_text

    def __repr__(self):
        return 'TElement({})'.format(self.to_text())


class TkSpec(object):
    '''Arguments of T_k(u, r, m_1, ..., m_k).'''
    __slots__ = ('u', 'r', 'ms')

    def __init__(self, u, r, ms):
        self.u = rational_vector(u)
        self.r = lattice(r)
        self.ms = tuple(lattice(m) for m in ms)
        if not self.ms:
            raise ValueError('T_k needs k >= 1 shifts')
        check_dim(len(self.u), self.r, *self.ms)
        for m in self.ms:
            if is_zero_vector(m):
                raise LatticeError('shift vectors must be nonzero')

    @property
    def k(self):
        return len(self.ms)

    @property
    def d(self):
        return len(self.r)

    def to_json(self):
        return {'u': list(self.u), 'r': list(self.r),
                'ms': [list(m) for m in self.ms]}

    def __repr__(self):
        return 'TkSpec(u={}, r={}, ms={})'.format(
            format_vector(self.u), format_vector(self.r),
            ', '.join(format_vector(m) for m in self.ms))


def bracket_t(x, y):
    '''[T(v,s), T(u,r)] = (u,s) T(v,s) - (v,r) T(u,r) + T(w, r+s)
    with w = (v,r) u - (u,s) v, extended bilinearly.'''
    x._check(y)
    pairs = []
    for s, v in x._terms.items():
        for r, u in y._terms.items():
            us = dot(u, s)
            vr = dot(v, r)
            pairs.append((s, vscale(us, v)))
            pairs.append((r, vscale(-vr, u)))
            pairs.append((vadd(r, s), vsub(vscale(vr, u), vscale(us, v))))
    return TElement(x.d, pairs)


def alternating_sum(u, r, ms):
    '''sum over subsets S of the shifts of (-1)^|S| T(u, r + sum_S m).'''
    d = len(r)
    pairs = []
    for mask in itertools.product((0, 1), repeat=len(ms)):
        shift = vsum((m for m, bit in zip(ms, mask) if bit), d)
        sign = -1 if sum(mask) % 2 else 1
        pairs.append((vadd(r, shift), vscale(sign, rational_vector(u))))
    return TElement(d, pairs)


def tk_expand(spec):
    return alternating_sum(spec.u, spec.r, spec.ms)


def directional_polys(x):
    '''[sum_r u_i t^r for each axis i]: the model of x along e_1..e_d.'''
    polys = []
    for axis in range(x.d):
        polys.append(LaurentPoly(x.d, dict(
            (r, u[axis]) for r, u in x._terms.items() if u[axis])))
    return polys


def poly_model(x, direction=None):
    '''T(c*u, r) -> c t^r, for elements whose terms all point along u.

    The direction defaults to that of the first term. The image never has
    a constant term; it is read modulo constants.

    :raises MixedDirectionError: a term is not a multiple of direction
    '''
    items = x.items()
    if direction is None:
        if not items:
            return LaurentPoly(x.d)
        direction = items[0][1]
    direction = rational_vector(direction)
    check_dim(x.d, direction)
    if is_zero_vector(direction):
        raise ValueError('direction must be nonzero')
    pivot = next(i for i, c in enumerate(direction) if c)
    terms = {}
    for r, u in items:
        c = u[pivot] / direction[pivot]
        if vscale(c, direction) != u:
            raise MixedDirectionError(
                'T({},{}) is not along {}'.format(
                    format_vector(u), format_vector(r),
                    format_vector(direction)))
        terms[r] = c
    return LaurentPoly(x.d, terms)


def ik_witness(x, k):
    '''(axis, jet multiset, value) certifying x is not in I_k, or None.'''
    if k < 1:
        raise ValueError('k must be >= 1, got {}'.format(k))
    for axis, poly in enumerate(directional_polys(x)):
        witness = jet_witness(poly, k, ignore_constant=True)
        if witness is not None:
            return (axis,) + witness
    return None


def in_ik(x, k):
    '''Membership in I_k. Always true for k = 1, since T = I_1.'''
    return ik_witness(x, k) is None


def t_mod_i2_reduce(x):
    '''Coordinates of x mod I_2 in the basis T(e_i, e_j).

    T(u, r) = sum_j r_j T(u, e_j) mod I_2, so entry (i, j) collects
    u_i r_j over all terms.
    '''
    d = x.d
    matrix = [[Fraction(0)] * d for _ in range(d)]
    for r, u in x._terms.items():
        for i in range(d):
            if u[i]:
                for j in range(d):
                    matrix[i][j] += u[i] * r[j]
    return tuple(tuple(row) for row in matrix)


def to_gl(x):
    '''Image in gl_d under T(e_i, e_j) -> E_ji.'''
    reduced = t_mod_i2_reduce(x)
    d = x.d
    return SparseMatrix(d, d, dict(
        ((j, i), reduced[i][j]) for i in range(d) for j in range(d)))


def act_t_element(x, w, p):
    '''Action of a T element on a weight space of a tensor-field module.'''
    result = tuple(Fraction(0) for _ in w)
    for r, u in x.items():
        image = act_t_weightspace(u, r, w, p)
        result = tuple(a + b for a, b in zip(result, image))
    return result


def random_t_element(rng, d, radius, terms=2):
    return TElement(d, [
        (sampling.random_lattice(rng, d, radius),
         sampling.random_rational_vector(rng, d))
        for _ in range(sampling.randint(rng, 1, terms))])


def random_tk_spec(rng, d, k, radius, shift_radius=2):
    return TkSpec(sampling.random_rational_vector(rng, d, nonzero=True),
                  sampling.random_lattice(rng, d, radius),
                  [sampling.random_nonzero_lattice(rng, d, shift_radius)
                   for _ in range(k)])


def _unit_vectors(d):
    return [unit(d, i) for i in range(d)]


def verify_filtration_ideals(rng, d=2, trials=1000, k_max=4, radius=3):
    '''Symmetry, recursion and ideal properties of the T_k and I_k.

    Permutation symmetry and the recursion are checked up to k_max + 1,
    the ideal containments up to order 3 and the closed-form bracket
    [T(v,s), T_k] up to k_max, all on max(1, trials // 10) samples per
    order.
    '''
    if k_max < 2:
        raise ValueError('k_max must be >= 2')
    per_order = max(1, trials // 10)
    symmetry = Report(
        'filtration_permutation_symmetry',
        'T_k(u,r,m_s(1)..m_s(k)) = T_k(u,r,m_1..m_k)')
    recursion = Report(
        'filtration_recursion',
        'T_k(u,r,m_1..m_k) = T_k-1(u,r,m_1..m_k-1) - '
        'T_k-1(u,r+m_k,m_1..m_k-1)')
    ideal = Report('filtration_ideal', '[T, I_k] in I_k')
    nested = Report('filtration_nested', 'I_k in I_k-1')
    product = Report('filtration_bracket_product', '[I_k, I_l] in I_k+l-1')
    formula = verify_tk_bracket_formula(rng, d, per_order, k_max, radius)

    for k in range(1, k_max + 2):
        for _ in range(per_order):
            spec = random_tk_spec(rng, d, k, radius)
            expanded = tk_expand(spec)
            symmetry.instances_checked += 1
            permuted = TkSpec(spec.u, spec.r,
                              sampling.shuffled(rng, spec.ms))
            if tk_expand(permuted) != expanded:
                symmetry.fail({'spec': spec.to_json(),
                               'permuted': permuted.to_json()})
            if k < 2:
                continue
            recursion.instances_checked += 1
            head = spec.ms[:-1]
            expected = (alternating_sum(spec.u, spec.r, head) -
                        alternating_sum(spec.u, vadd(spec.r, spec.ms[-1]),
                                        head))
            if expanded != expected:
                recursion.fail({'spec': spec.to_json()})

    ideal_order = min(k_max, 3)
    for k in range(1, ideal_order + 1):
        for _ in range(per_order):
            generator = tk_expand(random_tk_spec(rng, d, k, radius))
            ideal.instances_checked += 1
            x = random_t_element(rng, d, radius)
            if not in_ik(bracket_t(x, generator), k):
                ideal.fail({'x': x, 'generator': generator, 'k': k})
            if k >= 2:
                nested.instances_checked += 1
                if not in_ik(generator, k - 1):
                    nested.fail({'generator': generator, 'k': k})
            for l in range(1, ideal_order + 1):
                other = tk_expand(random_tk_spec(rng, d, l, radius))
                product.instances_checked += 1
                bracket = bracket_t(generator, other)
                if not in_ik(bracket, k + l - 1):
                    product.fail({'x': generator, 'y': other, 'k': k,
                                  'l': l})

    reports = [symmetry, recursion, ideal, nested, product, formula]
    for report in reports:
        if not report.passed:
            log.error('%s fails: %r', report.identity, report.witness)
    return reports


def tk_bracket_closed_form(v, s, spec):
    '''-(v,r) T_k+1(u,r,m..,s) - (u,s) T_k(v,r+s,m..)
    + sum_i (v,m_i) T_k(u, r+m_i, m.. without m_i, s).'''
    u, r, ms = spec.u, spec.r, spec.ms
    result = (alternating_sum(u, r, ms + (s,)).scale(-dot(v, r)) -
              alternating_sum(v, vadd(r, s), ms).scale(dot(u, s)))
    for i, m in enumerate(ms):
        rest = ms[:i] + ms[i + 1:] + (s,)
        result = result + alternating_sum(u, vadd(r, m), rest).scale(
            dot(v, m))
    return result


def verify_tk_bracket_formula(rng, d, per_order, k_max, radius=3):
    report = Report('tk_bracket_formula',
                    '[T(v,s), T_k(u,r,m)] = -(v,r) T_k+1(u,r,m,s) - '
                    '(u,s) T_k(v,r+s,m) + sum_i (v,m_i) '
                    'T_k(u,r+m_i,m^i,s)')
    for k in range(1, k_max + 1):
        for _ in range(per_order):
            spec = random_tk_spec(rng, d, k, radius)
            v = sampling.random_rational_vector(rng, d)
            s = sampling.random_nonzero_lattice(rng, d, radius)
            report.instances_checked += 1
            lhs = bracket_t(TElement.term(v, s), tk_expand(spec))
            if lhs != tk_bracket_closed_form(v, s, spec):
                report.fail({'spec': spec.to_json(), 'v': v, 's': s})
    return report


def verify_layer_independence(rng, trials=1000, k_max=4, dims=(2, 3),
                              radius=3):
    '''Non-membership certificates, additivity and the sign rule.'''
    if k_max < 1:
        raise ValueError('k_max must be >= 1')
    order = min(k_max, 4)
    per_order = max(1, trials // 10)
    separated = Report('layer_non_membership',
                       'T_k(u,s,m_1..m_k) in I_k and not in I_k+1')
    additive = Report('layer_additivity',
                      'T_k(u,s,m_1,..) + T_k(u,s,n,..) = '
                      'T_k(u,s,m_1+n,..) mod I_k+1')
    sign = Report('layer_sign_rule',
                  'T_k(u,s,-m_1,m_2..) = -T_k(u,s-m_1,m_1,m_2..)')
    certificates = []

    for d in dims:
        units = _unit_vectors(d)
        directions = [tuple(Fraction(x) for x in e) for e in units]
        directions.append(sampling.random_rational_vector(rng, d,
                                                          nonzero=True))
        for k in range(1, order + 1):
            first = None
            for ms in itertools.combinations_with_replacement(units, k):
                for u in directions:
                    spec = TkSpec(u, sampling.random_lattice(rng, d, radius),
                                  ms)
                    x = tk_expand(spec)
                    separated.instances_checked += 1
                    witness = ik_witness(x, k + 1)
                    if witness is None or not in_ik(x, k):
                        separated.fail({'spec': spec.to_json(), 'k': k,
                                        'in_ik': in_ik(x, k)})
                        continue
                    if first is None:
                        axis, jet, value = witness
                        first = {
                            'd': d, 'k': k, 'spec': spec.to_json(),
                            'axis': axis + 1, 'jet': format_multiset(jet),
                            'value': value,
                        }
            if first is not None:
                certificates.append(first)
    separated.evidence = certificates

    for _ in range(per_order):
        d = sampling.choice(rng, dims)
        k = sampling.randint(rng, 1, order)
        spec = random_tk_spec(rng, d, k, radius)
        while True:
            n = sampling.random_nonzero_lattice(rng, d, 2)
            if not is_zero_vector(vadd(spec.ms[0], n)):
                break
        rest = spec.ms[1:]
        difference = (
            tk_expand(spec) +
            alternating_sum(spec.u, spec.r, (n,) + rest) -
            alternating_sum(spec.u, spec.r, (vadd(spec.ms[0], n),) + rest))
        additive.instances_checked += 1
        if not in_ik(difference, k + 1):
            additive.fail({'spec': spec.to_json(), 'n': n})

        sign.instances_checked += 1
        lhs = alternating_sum(spec.u, spec.r, (vneg(spec.ms[0]),) + rest)
        rhs = alternating_sum(spec.u, vsub(spec.r, spec.ms[0]),
                              spec.ms).scale(-1)
        if lhs != rhs:
            sign.fail({'spec': spec.to_json()})

    reports = [separated, additive, sign]
    for report in reports:
        if not report.passed:
            log.error('%s fails: %r', report.identity, report.witness)
    return reports


def verify_gl_quotient(dims=(2, 3, 4), rng=None, trials=0, radius=3):
    '''T/I_2 is gl_d under T(e_i, e_j) -> E_ji.

    Sweeps all d^4 brackets of basis elements against
    [T(e_i,e_j), T(e_k,e_l)] = delta_il T(e_k,e_j) - delta_kj T(e_i,e_l)
    mod I_2, and with ``rng`` also checks the reduction is a Lie
    homomorphism on random elements and kills random T_2 generators.
    '''
    structure = Report('gl_quotient_structure',
                       '[T(e_i,e_j),T(e_k,e_l)] = d_il T(e_k,e_j) - '
                       'd_kj T(e_i,e_l) mod I_2')
    homomorphism = Report('gl_quotient_homomorphism',
                          'pi([x,y]) = [pi(x), pi(y)], pi(T(e_i,e_j)) = E_ji')
    annihilated = Report('i2_reduces_to_zero', 'I_2 = 0 in T/I_2')

    for d in dims:
        units = _unit_vectors(d)
        for i, j, k, l in itertools.product(range(d), repeat=4):
            structure.instances_checked += 1
            bracket = bracket_t(TElement.term(units[i], units[j]),
                                TElement.term(units[k], units[l]))
            expected = TElement(d)
            if i == l:
                expected = expected + TElement.term(units[k], units[j])
            if k == j:
                expected = expected - TElement.term(units[i], units[l])
            if t_mod_i2_reduce(bracket) != t_mod_i2_reduce(expected):
                structure.fail({'d': d, 'i': i + 1, 'j': j + 1,
                                'k': k + 1, 'l': l + 1})

    if rng is not None:
        for _ in range(trials):
            d = sampling.choice(rng, dims)
            x = random_t_element(rng, d, radius)
            y = random_t_element(rng, d, radius)
            homomorphism.instances_checked += 1
            if to_gl(bracket_t(x, y)) != to_gl(x).commutator(to_gl(y)):
                homomorphism.fail({'x': x, 'y': y})
            annihilated.instances_checked += 1
            generator = tk_expand(random_tk_spec(rng, d, 2, radius))
            if any(any(row) for row in t_mod_i2_reduce(generator)):
                annihilated.fail({'generator': generator})
    return [structure, homomorphism, annihilated]


def verify_euler_eigenvalue(rng, d=2, k_max=4, trials=100, radius=3):
    '''[sum_i T(e_i,e_i), T_k] - (k-1) T_k lies in I_k+1.'''
    if k_max < 1:
        raise ValueError('k_max must be >= 1')
    report = Report('euler_eigenvalue',
                    '[sum_i T(e_i,e_i), T_k(u,r,m)] = (k-1) T_k(u,r,m) '
                    'mod I_k+1')
    identity = TElement.identity(d)
    for k in range(1, k_max + 1):
        for _ in range(trials):
            spec = random_tk_spec(rng, d, k, radius)
            x = tk_expand(spec)
            remainder = bracket_t(identity, x) - x.scale(k - 1)
            report.instances_checked += 1
            witness = ik_witness(remainder, k + 1)
            if witness is not None:
                axis, jet, value = witness
                report.fail({'spec': spec.to_json(), 'k': k,
                             'axis': axis + 1, 'jet': format_multiset(jet),
                             'value': value})
                log.error('eigenvalue %d fails for %r', k - 1, spec)
                return report
    return report


def _jets_of_order(poly, k):
    return dict((ms, jet_value(poly, ms))
                for ms in itertools.combinations_with_replacement(
                    range(poly.d), k))


def layer_closed_form(d, k):
    '''d * C(d+k-1, k): one copy of the degree-k monomials per direction.'''
    return d * factorial(d + k - 1) // (factorial(k) * factorial(d - 1))


def filtration_dims(d, k_max, rng=None, samples=24, radius=2):
    '''Measured dim I_k/I_k+1 for k = 1..k_max.

    Per direction the layer is measured as the rank of the order-k jet
    functionals on the spanning set P_k(e_j1, ..., e_jk). Random
    generators t^r P_k(m) must vanish to order k and add nothing to that
    rank. The total must respect the bound d^(k+1) and equal d^2 at k = 1.
    '''
    if k_max < 1:
        raise ValueError('k_max must be >= 1')
    report = Report('filtration_dims',
                    'dim I_k/I_k+1 <= d^(k+1), dim I_1/I_2 = d^2')
    measured = []
    units = _unit_vectors(d)
    for k in range(1, k_max + 1):
        basis = EchelonBasis()
        for ms in itertools.combinations_with_replacement(units, k):
            basis.add(_jets_of_order(p_k(ms, d), k))
        per_direction = basis.rank
        total = d * per_direction
        entry = {'k': k, 'per_direction': per_direction, 'total': total,
                 'closed_form': layer_closed_form(d, k),
                 'bound': d ** (k + 1)}
        report.instances_checked += 1
        if total > d ** (k + 1) or (k == 1 and total != d * d):
            report.fail(entry)
        if rng is not None:
            sampled = []
            for _ in range(samples):
                ms = [sampling.random_nonzero_lattice(rng, d, radius)
                      for _ in range(k)]
                poly = p_k(ms, d).shift(
                    sampling.random_lattice(rng, d, radius))
                report.instances_checked += 1
                if jet_witness(poly, k, ignore_constant=True) is not None:
                    report.fail({'k': k, 'ms': ms,
                                 'reason': 'generator not in J_k'})
                jets = _jets_of_order(poly, k)
                sampled.append(jets)
                if not basis.contains(jets):
                    report.fail({'k': k, 'ms': ms,
                                 'reason': 'outside the spanning set'})
            entry['sampled_rank'] = rank(sampled)
        measured.append(entry)
        log.debug('layer %d: %d per direction', k, per_direction)
    report.evidence = measured
    return report


def check_t_jacobi(rng, d, radius, trials):
    sampler = lambda: random_t_element(rng, d, radius)
    return [check_antisymmetry(bracket_t, sampler, trials, 't_antisymmetry'),
            check_jacobi(bracket_t, sampler, trials, 't_jacobi')]


def check_representation_compatibility(p, rng, trials, radius=3):
    '''act([x,y]) = [act(x), act(y)] on a weight space V(psi) (x) t^m.'''
    report = Report('t_representation_compatibility',
                    '[x,y].w = x.(y.w) - y.(x.w) for x, y in T')
    for _ in range(trials):
        x = random_t_element(rng, p.d, radius)
        y = random_t_element(rng, p.d, radius)
        w = tuple(sampling.random_rational(rng) for _ in range(p.dim))
        report.instances_checked += 1
        lhs = act_t_element(bracket_t(x, y), w, p)
        first = act_t_element(x, act_t_element(y, w, p), p)
        second = act_t_element(y, act_t_element(x, w, p), p)
        if lhs != tuple(a - b for a, b in zip(first, second)):
            report.fail({'x': x, 'y': y, 'w': list(w),
                         'params': p.to_json()})
            break
    return report


def validate_jet_oracle(d=2, k_max=3, radius=2, inner=1):
    '''Brute-force check of the jet criterion inside an exponent box.

    Generators t^r P_k(m_1..m_k), the m_i running over the nonzero points
    of the box [-radius, radius]^d and the support kept inside it, span a
    subspace; its intersection with the polynomials
    supported in the inner box [-inner, inner]^d must be exactly the
    polynomials there whose jets of order < k vanish. The same is checked
    with the constants adjoined, against jets of orders 1..k-1.
    '''
    report = Report('jet_oracle_validation',
                    'span{t^r P_k(m)} = jet kernel of order < k in a box')
    box = list(itertools.product(range(-radius, radius + 1), repeat=d))
    shifts = [m for m in box if any(m)]
    inner_box = [m for m in box if all(abs(x) <= inner for x in m)]

    def keyed(poly):
        # outer coordinates first so that echelon pivots expose the
        # inner-box part of the span
        return dict(((0 if any(abs(x) > inner for x in m) else 1, m), c)
                    for m, c in poly.items())

    evidence = []
    for k in range(1, k_max + 1):
        for ignore_constant in (False, True):
            span = EchelonBasis()
            if ignore_constant:
                span.add(keyed(LaurentPoly.constant(d)))
            for ms in itertools.combinations_with_replacement(shifts, k):
                base = p_k(ms, d)
                support = base.support()
                low = [min(m[i] for m in support) for i in range(d)]
                high = [max(m[i] for m in support) for i in range(d)]
                # shifts r keeping the support inside the box
                for r in itertools.product(*[
                        range(-radius - lo, radius - hi + 1)
                        for lo, hi in zip(low, high)]):
                    poly = base.shift(r)
                    report.instances_checked += 1
                    if (not ignore_constant and
                            jet_witness(poly, k) is not None):
                        report.fail({'k': k, 'ms': [list(m) for m in ms],
                                     'r': list(r)})
                    span.add(keyed(poly))
            inner_rows = [row for pivot, row in span.rows()
                          if pivot[0] == 1]
            orders = [ms for ms in multisets(d, k - 1)
                      if ms or not ignore_constant]
            jet_rank = rank(
                dict((ms, jet_value(LaurentPoly.monomial(m), ms))
                     for ms in orders)
                for m in inner_box)
            kernel_dim = len(inner_box) - jet_rank
            for row in inner_rows:
                poly = LaurentPoly(d, dict((m, c) for (_, m), c in row.items()))
                if jet_witness(poly, k, ignore_constant) is not None:
                    report.fail({'k': k, 'ignore_constant': ignore_constant,
                                 'not_in_kernel': poly})
            if len(inner_rows) != kernel_dim:
                report.fail({'k': k, 'ignore_constant': ignore_constant,
                             'span_dim': len(inner_rows),
                             'kernel_dim': kernel_dim})
            evidence.append({'k': k, 'ignore_constant': ignore_constant,
                             'span_dim': len(inner_rows),
                             'kernel_dim': kernel_dim})
    report.evidence = evidence
    return report
