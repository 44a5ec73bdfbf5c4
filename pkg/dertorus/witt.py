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
'''Vector fields on the torus and the toroidal algebra.

``D(u, r) = sum_i u_i t^r t_i d/dt_i`` spans Der A; ``A + Der A`` adds the
multiplication operators t^r; the toroidal algebra adds a loop algebra
``G (x) A`` over a simple Lie algebra G and the center spanned by
``K(u, r) = sum_i u_i t^r K_i`` modulo the exact forms ``K(r, r)``.
'''

import logging
import os
from fractions import Fraction

from dertorus import sampling
from dertorus.exact import (
    DimensionError, LaurentPoly, check_dim, dot, format_rational,
    format_vector, is_zero_vector, rational_vector, vadd, vscale, vsub,
    zero)
from dertorus.report import Report

log = logging.getLogger('dertorus.witt')

DEFAULT_ALGEBRA = os.path.join(os.path.dirname(__file__), 'data', 'sl2.txt')


class AlgebraSpecError(ValueError):
    pass


class IncompatibleAlgebraError(ValueError):
    pass


def merge_vector_terms(d, pairs):
    '''Sum (r, u) pairs into {r: u}, dropping zero vectors.'''
    terms = {}
    for r, u in pairs:
        r = tuple(int(x) for x in r)
        check_dim(d, r, u)
        u = rational_vector(u)
        if r in terms:
            u = vadd(terms[r], u)
        terms[r] = u
    return dict((r, u) for r, u in terms.items() if not is_zero_vector(u))


class DerElement(object):
    '''Finite sum of D(u, r), stored as {r: u}.

    D(u, r) is linear in u, so terms with equal r are merged.
    '''
    __slots__ = ('d', '_terms')

    def __init__(self, d, pairs=()):
        self.d = d
        if isinstance(pairs, dict):
            pairs = pairs.items()
        self._terms = merge_vector_terms(d, pairs)

    @classmethod
    def term(cls, u, r):
        return cls(len(r), [(r, u)])

    @classmethod
    def basis(cls, d, axis, r):
        '''D^i(r) = D(e_i, r).'''
        u = [0] * d
        u[axis] = 1
        return cls(d, [(r, u)])

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
        return DerElement(
            self.d, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return DerElement(
            self.d, [(r, vscale(c, u)) for r, u in self._terms.items()])

    def __eq__(self, other):
        if not isinstance(other, DerElement):
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
            'D({},{})'.format(format_vector(u), format_vector(r))
            for r, u in self.items())

    __str__ = to_text

    def __repr__(self):
        return 'DerElement({})'.format(self.to_text())


def bracket_der(x, y):
    '''[D(u,r), D(v,s)] = D((u,s)v - (v,r)u, r+s), extended bilinearly.'''
    x._check(y)
    pairs = []
    for r, u in x._terms.items():
        for s, v in y._terms.items():
            w = vsub(vscale(dot(u, s), v), vscale(dot(v, r), u))
            pairs.append((vadd(r, s), w))
    return DerElement(x.d, pairs)


def act_on_poly(x, f):
    '''D(u,r) t^s = (u,s) t^(r+s), extended bilinearly.'''
    if x.d != f.d:
        raise DimensionError(
            'derivation over d={} acting on polynomial over d={}'.format(
                x.d, f.d))
    terms = {}
    for r, u in x._terms.items():
        for s, c in f.terms().items():
            coeff = dot(u, s) * c
            if coeff:
                key = vadd(r, s)
                terms[key] = terms.get(key, 0) + coeff
    return LaurentPoly(f.d, terms)


class ADerElement(object):
    '''Element f + X of the Lie algebra A + Der A.'''
    __slots__ = ('poly', 'der')

    def __init__(self, poly=None, der=None, d=None):
        if d is None:
            d = poly.d if poly is not None else der.d
        self.poly = poly if poly is not None else LaurentPoly(d)
        self.der = der if der is not None else DerElement(d)
        if self.poly.d != self.der.d:
            raise DimensionError('components over d={} and d={}'.format(
                self.poly.d, self.der.d))

    @property
    def d(self):
        return self.der.d

    def __add__(self, other):
        return ADerElement(self.poly + other.poly, self.der + other.der)

    def __neg__(self):
        return ADerElement(-self.poly, -self.der)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return ADerElement(self.poly.scale(c), self.der.scale(c))

    def is_zero(self):
        return self.poly.is_zero() and self.der.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ADerElement):
            return NotImplemented
        return self.poly == other.poly and self.der == other.der

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def to_text(self):
        return '[{}] + [{}]'.format(self.poly.to_text(), self.der.to_text())

    __str__ = to_text

    def __repr__(self):
        return 'ADerElement({})'.format(self.to_text())


def bracket_a_der(x, y):
    '''[f + X, g + Y] = (X.g - Y.f) + [X, Y]; A is abelian.'''
    if x.d != y.d:
        raise DimensionError(
            'elements over d={} and d={}'.format(x.d, y.d))
    poly = act_on_poly(x.der, y.poly) - act_on_poly(y.der, x.poly)
    return ADerElement(poly, bracket_der(x.der, y.der))


class SimpleAlgebraSpec(object):
    '''Structure constants and invariant form of a simple Lie algebra.

    ``constants[a, b]`` is the sparse dict ``{e: c_ab^e}`` so that
    ``[x_a, x_b] = sum_e c_ab^e x_e``; ``form[a, b]`` is <x_a, x_b>.
    '''

    def __init__(self, n, constants, form, name=None):
        self.n = n
        self.name = name
        self.constants = {}
        for (a, b, e), c in constants.items():
            self._check_index(a, b, e)
            if c:
                self.constants.setdefault((a, b), {})[e] = Fraction(c)
        self.form = {}
        for (a, b), value in form.items():
            self._check_index(a, b)
            if value:
                self.form[a, b] = Fraction(value)

    def _check_index(self, *indices):
        for index in indices:
            if not 0 <= index < self.n:
                raise AlgebraSpecError(
                    'basis index {} outside 0..{}'.format(index, self.n - 1))

    def bracket_basis(self, a, b):
        return self.constants.get((a, b), {})

    def bracket(self, x, y):
        '''Bracket of sparse coordinate dicts.'''
        result = {}
        for a, xa in x.items():
            for b, yb in y.items():
                for e, c in self.bracket_basis(a, b).items():
                    value = result.get(e, 0) + xa * yb * c
                    if value:
                        result[e] = value
                    else:
                        result.pop(e, None)
        return result

    def pairing(self, x, y):
        return sum((xa * yb * self.form.get((a, b), 0)
                    for a, xa in x.items() for b, yb in y.items()),
                   Fraction(0))

    def with_constant(self, a, b, e, value):
        '''Copy with one structure constant replaced, not validated.'''
        constants = dict(((i, j, k), c)
                         for (i, j), row in self.constants.items()
                         for k, c in row.items())
        constants[a, b, e] = value
        return SimpleAlgebraSpec(self.n, constants, self.form, self.name)

    def validate(self):
        '''Check antisymmetry, Jacobi, symmetry and invariance of the form.

        :raises AlgebraSpecError: naming the first failing index tuple
        '''
        basis = [{a: Fraction(1)} for a in range(self.n)]
        for a in range(self.n):
            for b in range(self.n):
                total = dict(self.bracket_basis(a, b))
                for e, c in self.bracket_basis(b, a).items():
                    total[e] = total.get(e, 0) + c
                if any(total.values()):
                    raise AlgebraSpecError(
                        'antisymmetry fails for ({}, {})'.format(a, b))
                if self.form.get((a, b), 0) != self.form.get((b, a), 0):
                    raise AlgebraSpecError(
                        'form is not symmetric at ({}, {})'.format(a, b))
        for a in range(self.n):
            for b in range(self.n):
                for c in range(self.n):
                    x, y, z = basis[a], basis[b], basis[c]
                    total = {}
                    for term in (self.bracket(x, self.bracket(y, z)),
                                 self.bracket(y, self.bracket(z, x)),
                                 self.bracket(z, self.bracket(x, y))):
                        for e, v in term.items():
                            total[e] = total.get(e, 0) + v
                    if any(total.values()):
                        raise AlgebraSpecError(
                            'Jacobi identity fails for ({}, {}, {})'.format(
                                a, b, c))
                    if (self.pairing(self.bracket(x, y), z) !=
                            self.pairing(x, self.bracket(y, z))):
                        raise AlgebraSpecError(
                            'form is not invariant at ({}, {}, {})'.format(
                                a, b, c))
        return self

    def __eq__(self, other):
        if not isinstance(other, SimpleAlgebraSpec):
            return NotImplemented
        return (self.n == other.n and self.constants == other.constants and
                self.form == other.form)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return 'SimpleAlgebraSpec({!r}, n={})'.format(self.name, self.n)


def parse_algebra_spec(text, name=None, validate=True):
    '''Parse the plain text format.

    ``a b e c`` lines are structure constants c_ab^e, ``a b value`` lines
    are form entries, an optional ``dim n`` line fixes the dimension
    (otherwise it is one more than the largest index), ``#`` starts a
    comment. Values may be written ``p/q``.
    '''
    constants = {}
    form = {}
    n = None
    largest = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == 'dim' and len(fields) == 2:
                n = int(fields[1])
                continue
            if len(fields) == 4:
                a, b, e = (int(f) for f in fields[:3])
                constants[a, b, e] = Fraction(fields[3])
                largest = max(largest, a, b, e)
            elif len(fields) == 3:
                a, b = (int(f) for f in fields[:2])
                form[a, b] = Fraction(fields[2])
                largest = max(largest, a, b)
            else:
                raise ValueError('expected 3 or 4 fields')
        except (ValueError, ZeroDivisionError) as e:
            raise AlgebraSpecError('line {}: {!r}: {}'.format(
                lineno, line, str(e)))
    if n is None:
        n = largest + 1
    if n < 1:
        raise AlgebraSpecError('empty algebra specification')
    spec = SimpleAlgebraSpec(n, constants, form, name)
    if validate:
        spec.validate()
    return spec


def load_algebra_spec(path=DEFAULT_ALGEBRA, validate=True):
    try:
        with open(path) as spec_file:
            text = spec_file.read()
    except OSError as e:
        raise AlgebraSpecError('cannot read {}: {}'.format(path, e.strerror))
    name = os.path.splitext(os.path.basename(path))[0]
    spec = parse_algebra_spec(text, name=name, validate=validate)
    log.debug('loaded algebra %s of dimension %d', name, spec.n)
    return spec


def canonical_k(u, r):
    '''Representative of K(u, r) modulo the exact forms K(r, r).

    For r != 0 with first nonzero coordinate p, subtract (u_p / r_p) r
    from u so that coordinate p of the result is zero.
    '''
    u = rational_vector(u)
    for p, rp in enumerate(r):
        if rp:
            return vsub(u, vscale(u[p] / rp, r))
    return u


def canonicalize_center(center):
    '''{r: u} -> canonical {r: u} with zero vectors dropped.'''
    result = {}
    for r, u in center.items():
        u = canonical_k(u, r)
        if not is_zero_vector(u):
            result[r] = u
    return result


class TauElement(object):
    '''Element of the toroidal algebra G(x)A + Omega_A/d_A + Der A.

    ``loop`` maps (basis index of G, r) to the coefficient of x_a (x) t^r,
    ``center`` maps r to u for K(u, r), ``der`` is a :class:`DerElement`.
    The center is always kept in canonical form.
    '''
    __slots__ = ('d', 'algebra', 'loop', 'center', 'der')

    def __init__(self, d, algebra=None, loop=None, center=None, der=None):
        self.d = d
        self.algebra = algebra
        self.loop = {}
        for (a, r), c in (loop or {}).items():
            r = tuple(int(x) for x in r)
            check_dim(d, r)
            if algebra is None:
                raise IncompatibleAlgebraError(
                    'loop component needs a simple algebra')
            if not 0 <= a < algebra.n:
                raise IncompatibleAlgebraError(
                    'basis index {} outside algebra of dimension {}'.format(
                        a, algebra.n))
            value = self.loop.get((a, r), 0) + Fraction(c)
            if value:
                self.loop[a, r] = value
            else:
                self.loop.pop((a, r), None)
        self.center = canonicalize_center(
            merge_vector_terms(d, (center or {}).items()))
        self.der = der if der is not None else DerElement(d)
        if self.der.d != d:
            raise DimensionError('derivation part over d={}, expected {}'.format(
                self.der.d, d))

    @classmethod
    def from_der(cls, der, algebra=None):
        return cls(der.d, algebra, der=der)

    @classmethod
    def loop_term(cls, algebra, a, r, c=1):
        return cls(len(r), algebra, loop={(a, tuple(r)): c})

    @classmethod
    def k_term(cls, u, r, algebra=None):
        return cls(len(r), algebra, center={tuple(r): u})

    def _algebra_with(self, other):
        if self.d != other.d:
            raise DimensionError(
                'elements over d={} and d={}'.format(self.d, other.d))
        if self.algebra is None:
            return other.algebra
        if other.algebra is not None and other.algebra != self.algebra:
            raise IncompatibleAlgebraError(
                'elements over {!r} and {!r}'.format(
                    self.algebra, other.algebra))
        return self.algebra

    def __add__(self, other):
        algebra = self._algebra_with(other)
        loop = dict(self.loop)
        for key, c in other.loop.items():
            loop[key] = loop.get(key, 0) + c
        center = list(self.center.items()) + list(other.center.items())
        return TauElement(self.d, algebra, loop,
                          merge_vector_terms(self.d, center),
                          self.der + other.der)

    def scale(self, c):
        c = Fraction(c)
        return TauElement(
            self.d, self.algebra,
            dict((key, c * v) for key, v in self.loop.items()),
            dict((r, vscale(c, u)) for r, u in self.center.items()),
            self.der.scale(c))

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.loop and not self.center and self.der.is_zero()

    def __eq__(self, other):
        if not isinstance(other, TauElement):
            return NotImplemented
        return (self.d == other.d and self.loop == other.loop and
                self.center == other.center and self.der == other.der)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def to_text(self):
        parts = ['{}*x{}@{}'.format(format_rational(c), a, format_vector(r))
                 for (a, r), c in sorted(self.loop.items())]
        parts += ['K({},{})'.format(format_vector(u), format_vector(r))
                  for r, u in sorted(self.center.items())]
        if self.der:
            parts.append(self.der.to_text())
        return ' + '.join(parts) or '0'

    __str__ = to_text

    def __repr__(self):
        return 'TauElement({})'.format(self.to_text())


def bracket_tau(x, y, g):
    '''Full bracket of the toroidal algebra over the simple algebra g.

    [X t^r, Y t^s] = [X,Y] t^(r+s) + <X,Y> K(r, r+s)
    [D(u,r), X t^s] = (u,s) X t^(r+s)
    [D(u,r), D(v,s)] = D(w, r+s) - (u,s)(v,r) K(r, r+s)
    [D(u,r), K(v,s)] = (u,s) K(v, r+s) + (u,v) K(r, r+s)
    K is central for the loop part and abelian.
    '''
    for element in (x, y):
        if element.algebra is not None and element.algebra != g:
            raise IncompatibleAlgebraError(
                'element over {!r} bracketed over {!r}'.format(
                    element.algebra, g))
    if x.d != y.d:
        raise DimensionError('elements over d={} and d={}'.format(x.d, y.d))
    d = x.d
    loop = {}
    center = []

    def add_loop(a, r, c):
        if c:
            loop[a, r] = loop.get((a, r), 0) + c

    def k_of(r, s):
        return vadd(r, s), tuple(Fraction(c) for c in r)

    for (a, r), c in x.loop.items():
        for (b, s), e in y.loop.items():
            rs = vadd(r, s)
            for f, cf in g.bracket_basis(a, b).items():
                add_loop(f, rs, c * e * cf)
            form = g.form.get((a, b), 0)
            if form:
                key, u = k_of(r, s)
                center.append((key, vscale(c * e * form, u)))

    for r, u in x.der._terms.items():
        for (b, s), e in y.loop.items():
            add_loop(b, vadd(r, s), e * dot(u, s))
    for s, v in y.der._terms.items():
        for (a, r), c in x.loop.items():
            add_loop(a, vadd(r, s), -c * dot(v, r))

    for r, u in x.der._terms.items():
        for s, v in y.der._terms.items():
            coeff = dot(u, s) * dot(v, r)
            if coeff:
                key, kr = k_of(r, s)
                center.append((key, vscale(-coeff, kr)))

    for r, u in x.der._terms.items():
        for s, v in y.center.items():
            center.append((vadd(r, s), vscale(dot(u, s), v)))
            key, kr = k_of(r, s)
            center.append((key, vscale(dot(u, v), kr)))
    for s, v in y.der._terms.items():
        for r, u in x.center.items():
            center.append((vadd(s, r), vscale(-dot(v, r), u)))
            key, ks = k_of(s, r)
            center.append((key, vscale(-dot(v, u), ks)))

    loop = dict((key, c) for key, c in loop.items() if c)
    algebra = x.algebra or y.algebra or (g if loop else None)
    return TauElement(d, algebra, loop, merge_vector_terms(d, center),
                      bracket_der(x.der, y.der))


def random_der(rng, d, radius, terms=2):
    return DerElement(d, [
        (sampling.random_lattice(rng, d, radius),
         sampling.random_rational_vector(rng, d))
        for _ in range(sampling.randint(rng, 1, terms))])


def random_ader(rng, d, radius, terms=2):
    return ADerElement(sampling.random_poly(rng, d, radius, terms),
                       random_der(rng, d, radius, terms))


def random_tau(rng, g, d, radius, terms=2):
    loop = dict(((sampling.randint(rng, 0, g.n - 1),
                  sampling.random_lattice(rng, d, radius)),
                 sampling.random_rational(rng))
                for _ in range(sampling.randint(rng, 0, terms)))
    center = dict((sampling.random_lattice(rng, d, radius),
                   sampling.random_rational_vector(rng, d))
                  for _ in range(sampling.randint(rng, 0, terms)))
    return TauElement(d, g, loop, center, random_der(rng, d, radius, terms))


def check_antisymmetry(bracket, sampler, trials, identity):
    report = Report(identity, '[x,y] + [y,x] = 0')
    for _ in range(trials):
        x, y = sampler(), sampler()
        report.instances_checked += 1
        total = bracket(x, y) + bracket(y, x)
        if not total.is_zero():
            report.fail({'x': x, 'y': y, 'sum': total})
            log.error('%s: antisymmetry fails for %s, %s', identity, x, y)
            break
    return report


def check_jacobi(bracket, sampler, trials, identity):
    '''[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0 on sampled triples.

    :param bracket: two-argument bracket
    :param sampler: callable returning one random element
    '''
    if trials < 1:
        raise ValueError('trials must be >= 1')
    report = Report(identity, '[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0')
    for _ in range(trials):
        x, y, z = sampler(), sampler(), sampler()
        report.instances_checked += 1
        total = (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) +
                 bracket(z, bracket(x, y)))
        if not total.is_zero():
            report.fail({'x': x, 'y': y, 'z': z, 'sum': total})
            log.error('%s: Jacobi fails for %s, %s, %s', identity, x, y, z)
            break
    return report


def check_action(rng, d, radius, trials):
    '''act([x,y], f) = act(x, act(y, f)) - act(y, act(x, f)).'''
    report = Report('der_action_on_poly',
                    '[x,y].f = x.(y.f) - y.(x.f) for x, y in Der A, f in A')
    for _ in range(trials):
        x, y = random_der(rng, d, radius), random_der(rng, d, radius)
        f = sampling.random_poly(rng, d, radius)
        report.instances_checked += 1
        lhs = act_on_poly(bracket_der(x, y), f)
        rhs = (act_on_poly(x, act_on_poly(y, f)) -
               act_on_poly(y, act_on_poly(x, f)))
        if lhs != rhs:
            report.fail({'x': x, 'y': y, 'f': f})
            log.error('Der A action is not a Lie action on %s', f)
            break
    return report


def check_leibniz(rng, d, radius, trials):
    '''x.(fg) = (x.f) g + f (x.g) for x in Der A.'''
    report = Report('der_leibniz', 'x.(fg) = (x.f)g + f(x.g) for x in Der A')
    for _ in range(trials):
        x = random_der(rng, d, radius)
        f = sampling.random_poly(rng, d, radius)
        g = sampling.random_poly(rng, d, radius)
        report.instances_checked += 1
        if act_on_poly(x, f * g) != (act_on_poly(x, f) * g +
                                     f * act_on_poly(x, g)):
            report.fail({'x': x, 'f': f, 'g': g})
            log.error('Leibniz rule fails for %s', x)
            break
    return report


def check_cartan_abelian(d, radius):
    '''[D(u,0), D(v,0)] = 0 on the coordinate basis.'''
    report = Report('cartan_abelian', '[D(e_i,0), D(e_j,0)] = 0')
    origin = zero(d)
    for i in range(d):
        for j in range(d):
            report.instances_checked += 1
            result = bracket_der(DerElement.basis(d, i, origin),
                                 DerElement.basis(d, j, origin))
            if not result.is_zero():
                report.fail({'i': i + 1, 'j': j + 1, 'bracket': result})
    return report


def witt_suites(config, rng, algebra):
    '''All bracket checks for Der A, A + Der A and the toroidal algebra.'''
    d, radius, trials = config.d, config.box, config.trials
    der_sampler = lambda: random_der(rng, d, radius)
    ader_sampler = lambda: random_ader(rng, d, radius)
    tau_sampler = lambda: random_tau(rng, algebra, d, radius)
    tau_bracket = lambda x, y: bracket_tau(x, y, algebra)
    return [
        check_antisymmetry(bracket_der, der_sampler, trials,
                           'der_antisymmetry'),
        check_jacobi(bracket_der, der_sampler, trials, 'der_jacobi'),
        check_cartan_abelian(d, radius),
        check_action(rng, d, radius, trials),
        check_leibniz(rng, d, radius, trials),
        check_antisymmetry(bracket_a_der, ader_sampler, trials,
                           'ader_antisymmetry'),
        check_jacobi(bracket_a_der, ader_sampler, trials, 'ader_jacobi'),
        check_antisymmetry(tau_bracket, tau_sampler, trials,
                           'tau_antisymmetry'),
        check_jacobi(tau_bracket, tau_sampler, trials, 'tau_jacobi'),
    ]
