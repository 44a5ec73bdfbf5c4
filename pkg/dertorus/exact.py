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
'''Exact scalars, lattice vectors and sparse Laurent polynomials.

Lattice vectors are tuples of ints, rational vectors are tuples of
:class:`fractions.Fraction`. Axes are numbered from 0 in code and from 1
in everything printed for humans.
'''

import itertools
from fractions import Fraction


class DimensionError(ValueError):
    pass


class LatticeError(ValueError):
    pass


def as_rational(value):
    '''Convert int, Fraction or a ``p/q`` string to a Fraction.

    Floats are refused: nothing in this package is allowed to round.
    '''
    if isinstance(value, float):
        raise TypeError('refusing float {!r}, use p/q'.format(value))
    if isinstance(value, str):
        value = value.strip()
        if any(c in value for c in '.eE'):
            raise ValueError('not of the form p/q: {!r}'.format(value))
        return Fraction(value)
    return Fraction(value)


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def lattice(coords):
    result = tuple(int(c) for c in coords)
    for orig, conv in zip(coords, result):
        if conv != orig:
            raise LatticeError('non-integer lattice coordinate {!r}'.format(
                orig))
    return result


def rational_vector(coords):
    return tuple(as_rational(c) for c in coords)


def unit(d, axis):
    if not 0 <= axis < d:
        raise DimensionError('axis {} out of range for d={}'.format(axis, d))
    return tuple(1 if i == axis else 0 for i in range(d))


def zero(d):
    return (0,) * d


def check_dim(d, *vectors):
    for vec in vectors:
        if len(vec) != d:
            raise DimensionError(
                'expected a vector of length {}, got {!r}'.format(d, vec))


def vadd(a, b):
    if len(a) != len(b):
        raise DimensionError('length mismatch: {!r} + {!r}'.format(a, b))
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    if len(a) != len(b):
        raise DimensionError('length mismatch: {!r} - {!r}'.format(a, b))
    return tuple(x - y for x, y in zip(a, b))


def vneg(a):
    return tuple(-x for x in a)


def vscale(c, a):
    return tuple(c * x for x in a)


def vsum(vectors, d):
    result = zero(d)
    for vec in vectors:
        result = vadd(result, vec)
    return result


def dot(a, b):
    '''The standard pairing (u, v) = sum u_i v_i.'''
    if len(a) != len(b):
        raise DimensionError('length mismatch: ({!r}, {!r})'.format(a, b))
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero_vector(a):
    return not any(a)


def format_vector(a):
    return '(' + ','.join(format_rational(x) for x in a) + ')'


class LaurentPoly(object):
    '''Finite linear combination of monomials t^m, m in Z^d.

    Values are immutable: every operation returns a new polynomial.
    Multiplication follows the group-algebra rule t^r * t^s = t^(r+s).
    '''
    __slots__ = ('d', '_terms')

    def __init__(self, d, terms=None):
        if d < 1:
            raise DimensionError('d must be positive, got {}'.format(d))
        self.d = d
        merged = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != d:
                raise DimensionError(
                    'exponent {!r} does not have {} coordinates'.format(
                        exponent, d))
            exponent = tuple(exponent)
            merged[exponent] = merged.get(exponent, 0) + as_rational(coeff)
        self._terms = dict((m, c) for m, c in merged.items() if c != 0)

    @classmethod
    def _raw(cls, d, terms):
        # terms already merged, zero-free and keyed by tuples
        poly = cls.__new__(cls)
        poly.d = d
        poly._terms = terms
        return poly

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        exponent = lattice(exponent)
        return cls(len(exponent), {exponent: coefficient})

    @classmethod
    def constant(cls, d, value=1):
        return cls(d, {zero(d): value})

    @classmethod
    def zero(cls, d):
        return cls(d)

    def items(self):
        '''Terms in canonical (lexicographic exponent) order.'''
        return sorted(self._terms.items())

    def terms(self):
        return dict(self._terms)

    def support(self):
        return sorted(self._terms)

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def _check_same_d(self, other):
        if self.d != other.d:
            raise DimensionError(
                'polynomials over d={} and d={}'.format(self.d, other.d))

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.d, other)
        self._check_same_d(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            value = terms.get(m, 0) + c
            if value:
                terms[m] = value
            else:
                terms.pop(m, None)
        return LaurentPoly._raw(self.d, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(
            self.d, dict((m, -c) for m, c in self._terms.items()))

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(self.d, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        value = as_rational(value)
        if value == 0:
            return LaurentPoly(self.d)
        return LaurentPoly._raw(
            self.d, dict((m, value * c) for m, c in self._terms.items()))

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return poly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, exponent):
        '''Multiply by the monomial t^exponent.'''
        check_dim(self.d, exponent)
        return LaurentPoly._raw(
            self.d,
            dict((vadd(m, exponent), c) for m, c in self._terms.items()))

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
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
        '''Canonical text form ``c*t^(a1,...,ad) + ...``.'''
        if not self._terms:
            return '0'
        return ' + '.join(
            '{}*t^({})'.format(
                format_rational(c), ','.join(str(x) for x in m))
            for m, c in self.items())

    __str__ = to_text

    def __repr__(self):
        return 'LaurentPoly({}, {})'.format(self.d, self.to_text())


def poly_mul(a, b):
    '''Exact product; supports are Minkowski-summed.'''
    if a.d != b.d:
        raise DimensionError(
            'polynomials over d={} and d={}'.format(a.d, b.d))
    terms = {}
    for m, c in a._terms.items():
        for n, e in b._terms.items():
            key = tuple(x + y for x, y in zip(m, n))
            terms[key] = terms.get(key, 0) + c * e
    return LaurentPoly._raw(
        a.d, dict((m, c) for m, c in terms.items() if c != 0))


def euler_derive(f, axis):
    '''Apply t_i d/dt_i: every term c t^m becomes c m_i t^m.'''
    if not 0 <= axis < f.d:
        raise DimensionError(
            'axis {} out of range for d={}'.format(axis, f.d))
    return LaurentPoly._raw(
        f.d,
        dict((m, c * m[axis]) for m, c in f._terms.items() if m[axis]))


def multisets(d, order):
    '''All multisets of axes of size <= order, smallest first.'''
    for size in range(order + 1):
        for combo in itertools.combinations_with_replacement(range(d), size):
            yield combo


def jet_value(f, multiset):
    '''(D_{i1} ... D_{ij} f)(1, ..., 1) for Euler derivations D_i.

    Monomials are eigenvectors of every D_i and equal 1 at t = 1, so the
    value is sum over terms of c * prod m_i.
    '''
    total = Fraction(0)
    for m, c in f._terms.items():
        weight = c
        for axis in multiset:
            weight *= m[axis]
            if not weight:
                break
        total += weight
    return total


def jet_at_one(f, order):
    if order < 0:
        raise ValueError('jet order must be >= 0, got {}'.format(order))
    return dict((ms, jet_value(f, ms)) for ms in multisets(f.d, order))


def jet_witness(f, k, ignore_constant=False):
    '''First nonzero jet entry of order < k, or None.

    A nonzero entry certifies that f is not in J_k (J_k + constants when
    ``ignore_constant`` is set).
    '''
    if k < 1:
        raise ValueError('k must be >= 1, got {}'.format(k))
    for ms in multisets(f.d, k - 1):
        if ignore_constant and not ms:
            continue
        value = jet_value(f, ms)
        if value:
            return ms, value
    return None


def in_jk(f, k, ignore_constant=False):
    '''Membership of f in the k-th power of the augmentation ideal.

    J_k, the ideal spanned by t^r (1-t^m1)...(1-t^mk), is the k-th power
    of the ideal of the point t = (1, ..., 1); a Laurent polynomial lies
    in it iff every Euler-derivative jet of order < k vanishes there.
    '''
    return jet_witness(f, k, ignore_constant) is None


def p_k(ms, d=None):
    '''The product (1 - t^m1) ... (1 - t^mk) over nonzero shifts.'''
    ms = [lattice(m) for m in ms]
    if d is None:
        if not ms:
            raise DimensionError('d is required for an empty product')
        d = len(ms[0])
    result = LaurentPoly.constant(d)
    for m in ms:
        check_dim(d, m)
        if is_zero_vector(m):
            raise LatticeError('shift vectors must be nonzero')
        factor = LaurentPoly._raw(d, {zero(d): Fraction(1), m: Fraction(-1)})
        result = poly_mul(result, factor)
    return result


def format_multiset(ms):
    '''Axes of a jet entry, 1-based, as printed in reports.'''
    return '{' + ','.join(str(axis + 1) for axis in ms) + '}'
