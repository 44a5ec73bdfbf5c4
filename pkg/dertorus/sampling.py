'''Seeded random streams and primitive samplers.

Every suite draws from its own ``numpy.random.Generator`` over the 64-bit
PCG64 bit generator. The stream is derived from the run seed and the suite
name only, so a suite sees the same samples whether it runs alone, with
other suites, or in a worker process.
'''

import zlib
from fractions import Fraction

import numpy

from dertorus.exact import LaurentPoly


def suite_rng(seed, name):
    seq = numpy.random.SeedSequence(
        int(seed), spawn_key=(zlib.crc32(name.encode('utf-8')),))
    return numpy.random.Generator(numpy.random.PCG64(seq))


def randint(rng, low, high):
    '''Uniform integer in [low, high], as a Python int.'''
    return int(rng.integers(low, high + 1))


def choice(rng, items):
    items = list(items)
    return items[randint(rng, 0, len(items) - 1)]


def shuffled(rng, items):
    items = list(items)
    order = rng.permutation(len(items))
    return [items[int(i)] for i in order]


def random_lattice(rng, d, radius):
    return tuple(randint(rng, -radius, radius) for _ in range(d))


def random_nonzero_lattice(rng, d, radius):
    radius = max(radius, 1)
    while True:
        vec = random_lattice(rng, d, radius)
        if any(vec):
            return vec


def random_rational(rng, spread=3, nonzero=False):
    while True:
        value = Fraction(randint(rng, -spread, spread), randint(rng, 1, spread))
        if value or not nonzero:
            return value


def random_rational_vector(rng, d, spread=3, nonzero=False):
    while True:
        vec = tuple(random_rational(rng, spread) for _ in range(d))
        if any(vec) or not nonzero:
            return vec


def random_poly(rng, d, radius, terms=3):
    return LaurentPoly(d, dict(
        (random_lattice(rng, d, radius), random_rational(rng))
        for _ in range(randint(rng, 1, terms))))
