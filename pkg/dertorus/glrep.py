'''Finite-dimensional irreducible gl_d-modules V(psi, b).

The module with highest weight lambda is cut out of the |lambda|-fold
tensor power of the natural module: start from the tensor product of the
column wedges e_1 ^ ... ^ e_h of the Young diagram and close under the
lowering operators E_ji, j > i. Every vector produced is a weight vector,
so the span is tracked one weight space at a time.
'''

import collections
import itertools
import logging
from fractions import Fraction

from dertorus import sampling
from dertorus.exact import DimensionError, format_rational
from dertorus.linalg import EchelonBasis, SparseMatrix, axpy, dense, sparse
from dertorus.report import Report

log = logging.getLogger('dertorus.glrep')


class DominantWeight(object):
    '''Fundamental-weight coefficients a_1..a_{d-1} and the scalar b of I.'''
    __slots__ = ('coefficients', 'b')

    def __init__(self, coefficients, b=0):
        self.coefficients = tuple(int(a) for a in coefficients)
        if any(a < 0 for a in self.coefficients):
            raise ValueError('weight coefficients must be non-negative, '
                             'got {!r}'.format(coefficients))
        self.b = Fraction(b)

    @classmethod
    def fundamental(cls, d, k, b=0):
        '''delta_k, the k-th fundamental weight (1 <= k <= d-1).'''
        if not 1 <= k <= d - 1:
            raise DimensionError(
                'no fundamental weight {} for d={}'.format(k, d))
        return cls([1 if i == k - 1 else 0 for i in range(d - 1)], b)

    def partition(self, d):
        '''lambda_i = a_i + ... + a_{d-1}, lambda_d = 0.'''
        if len(self.coefficients) != d - 1:
            raise DimensionError('{} weight coefficients for d={}'.format(
                len(self.coefficients), d))
        return tuple(sum(self.coefficients[i:]) for i in range(d - 1)) + (0,)

    def __eq__(self, other):
        if not isinstance(other, DominantWeight):
            return NotImplemented
        return (self.coefficients, self.b) == (other.coefficients, other.b)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.coefficients, self.b))

    def __repr__(self):
        return 'DominantWeight({!r}, b={})'.format(
            self.coefficients, format_rational(self.b))


def weyl_dim(psi, d):
    '''prod_{i<j} (lambda_i - lambda_j + j - i) / (j - i).'''
    lam = psi.partition(d)
    result = Fraction(1)
    for i, j in itertools.combinations(range(d), 2):
        result *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert result.denominator == 1
    return result.numerator


class GlRep(object):
    '''Explicit gl_d-module: one N x N matrix per E_ij.

    ``matrices[i, j]`` is the action of E_ij (axes from 0),
    ``weight_labels[k]`` the eigenvalues of E_11..E_dd on basis vector k.
    '''

    def __init__(self, d, dim, matrices, weight_labels, weight=None):
        self.d = d
        self.dim = dim
        self.matrices = dict(matrices)
        self.weight_labels = [tuple(Fraction(x) for x in label)
                              for label in weight_labels]
        self.weight = weight

    @property
    def b(self):
        return self.weight.b if self.weight is not None else None

    def E(self, i, j):
        return self.matrices[i, j]

    def operator(self, u, r):
        '''sum_{i,j} u_i r_j E_ji.'''
        result = SparseMatrix(self.dim)
        for i in range(self.d):
            if not u[i]:
                continue
            for j in range(self.d):
                if r[j]:
                    result = result + self.E(j, i).scale(u[i] * r[j])
        return result

    def with_entry(self, i, j, row, col, value):
        '''Copy with one matrix entry of E_ij replaced.'''
        matrices = dict(self.matrices)
        matrices[i, j] = matrices[i, j].with_entry(row, col, value)
        return GlRep(self.d, self.dim, matrices, self.weight_labels,
                     self.weight)

    def dump(self):
        '''Text dump: one row-major block per E_ij with exact entries.'''
        lines = []
        for i in range(self.d):
            for j in range(self.d):
                lines.append('E{}{}'.format(i + 1, j + 1))
                for row in self.E(i, j).to_dense():
                    lines.append(' '.join(format_rational(x) for x in row))
        return '\n'.join(lines)

    def __repr__(self):
        return 'GlRep(d={}, dim={}, {!r})'.format(
            self.d, self.dim, self.weight)


def _column_wedge(height):
    '''e_1 ^ ... ^ e_height as {index tuple: sign}.'''
    wedge = {}
    for perm in itertools.permutations(range(height)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2)
                         if a > b)
        wedge[perm] = Fraction(-1 if inversions % 2 else 1)
    return wedge


def _tensor(a, b):
    return dict((k1 + k2, v1 * v2)
                for k1, v1 in a.items() for k2, v2 in b.items())


def highest_weight_tensor(lam):
    vector = {(): Fraction(1)}
    for column in range(lam[0] if lam else 0):
        height = sum(1 for part in lam if part > column)
        vector = _tensor(vector, _column_wedge(height))
    return vector


def apply_unit(i, j, vector):
    '''E_ij on the tensor power: replace one factor e_j by e_i.'''
    result = {}
    for key, value in vector.items():
        for pos, index in enumerate(key):
            if index == j:
                new = key[:pos] + (i,) + key[pos + 1:]
                axpy(result, {new: value})
    return result


def build_irrep(psi, d):
    '''Construct V(psi, b) as a :class:`GlRep`.

    Basis order: weights from highest to lowest (lexicographically), and
    inside one weight the order in which the lowering closure found the
    vectors. sum_i E_ii acts as b.
    '''
    if d < 2:
        raise DimensionError('d must be >= 2, got {}'.format(d))
    lam = psi.partition(d)
    size = sum(lam)
    start = highest_weight_tensor(lam)

    spaces = collections.defaultdict(lambda: EchelonBasis(track=True))
    queue = collections.deque()
    spaces[tuple(lam)].add(start)
    queue.append((tuple(lam), start))
    lowering = [(j, i) for i in range(d) for j in range(i + 1, d)]
    while queue:
        weight, vector = queue.popleft()
        for j, i in lowering:
            image = apply_unit(j, i, vector)
            if not image:
                continue
            new_weight = list(weight)
            new_weight[j] += 1
            new_weight[i] -= 1
            new_weight = tuple(new_weight)
            if spaces[new_weight].add(image):
                queue.append((new_weight, image))

    weights = sorted((w for w in spaces if spaces[w].rank), reverse=True)
    offsets = {}
    labels = []
    shift = (psi.b - size) / d
    for weight in weights:
        offsets[weight] = len(labels)
        labels.extend(tuple(Fraction(x) + shift for x in weight)
                      for _ in range(spaces[weight].rank))
    dim = len(labels)
    log.debug('built irrep lambda=%r of dimension %d', lam, dim)

    matrices = {}
    for i in range(d):
        for j in range(d):
            columns = []
            for weight in weights:
                for vector in spaces[weight].originals:
                    column = {}
                    image = apply_unit(i, j, vector)
                    if image:
                        target = list(weight)
                        target[i] += 1
                        target[j] -= 1
                        target = tuple(target)
                        coords = spaces[target].coordinates(image)
                        for local, c in coords.items():
                            column[offsets[target] + local] = c
                    if i == j and shift:
                        axpy(column, {len(columns): shift})
                    columns.append(column)
            matrices[i, j] = SparseMatrix.from_columns(dim, columns)
    return GlRep(d, dim, matrices, labels, psi)


def dump_rep(rep):
    '''Constructed and Weyl-formula dimensions followed by the matrices.'''
    lines = ['dim {}'.format(rep.dim)]
    if rep.weight is not None:
        lines.append('weyl_dim {}'.format(weyl_dim(rep.weight, rep.d)))
    lines.append(rep.dump())
    return '\n'.join(lines)


def check_rep(rep):
    '''All d^4 relations [E_ij, E_kl] = d_jk E_il - d_li E_kj, the trace
    condition sum E_ii = b and the weight labels.'''
    d = rep.d
    report = Report('gl_bracket_relations',
                    '[E_ij,E_kl] = d_jk E_il - d_li E_kj; sum E_ii = b')
    for i, j, k, l in itertools.product(range(d), repeat=4):
        report.instances_checked += 1
        lhs = rep.E(i, j).commutator(rep.E(k, l))
        rhs = SparseMatrix(rep.dim)
        if j == k:
            rhs = rhs + rep.E(i, l)
        if l == i:
            rhs = rhs - rep.E(k, j)
        if lhs != rhs:
            report.fail({'i': i + 1, 'j': j + 1, 'k': k + 1, 'l': l + 1,
                         'weight': list(rep.weight.coefficients)
                         if rep.weight else None})
            log.error('gl relation fails at (%d,%d,%d,%d)',
                      i + 1, j + 1, k + 1, l + 1)
            return report
    if rep.b is not None:
        report.instances_checked += 1
        trace = SparseMatrix(rep.dim)
        for i in range(d):
            trace = trace + rep.E(i, i)
        if trace != SparseMatrix.identity(rep.dim, rep.b):
            report.fail({'trace': 'sum E_ii != b', 'b': rep.b})
            return report
    for index, label in enumerate(rep.weight_labels):
        report.instances_checked += 1
        basis = tuple(Fraction(1 if n == index else 0)
                      for n in range(rep.dim))
        for i in range(d):
            expected = tuple(label[i] * x for x in basis)
            if rep.E(i, i).apply(basis) != expected:
                report.fail({'basis_vector': index, 'axis': i + 1,
                             'label': label})
                return report
    return report


def generated_dimension(rep, start):
    '''Dimension of the span of all words in the E_ij applied to start.'''
    space = EchelonBasis()
    start = sparse(start)
    if not start:
        return 0
    space.add(start)
    queue = collections.deque([start])
    operators = list(rep.matrices.values())
    while queue and space.rank < rep.dim:
        vector = queue.popleft()
        for op in operators:
            image = op.apply_sparse(vector)
            if image and space.add(image):
                queue.append(image)
    return space.rank


def irreducibility_witness(rep, starts):
    '''Every start vector must generate the whole module.'''
    report = Report('gl_irreducibility',
                    'U(gl_d) v = V(psi,b) for every sampled v != 0')
    for start in starts:
        report.instances_checked += 1
        found = generated_dimension(rep, start)
        if found != rep.dim:
            report.fail({'start': list(start), 'generated': found,
                         'dim': rep.dim})
            break
    return report


def weight_grid(d, max_total):
    for coefficients in itertools.product(range(max_total + 1), repeat=d - 1):
        if sum(coefficients) <= max_total:
            yield coefficients


def check_grid(rng, dims=(2, 3, 4), max_total=3, b=Fraction(5, 7)):
    '''Construction, Weyl dimension, relations and irreducibility over a
    grid of dominant weights.'''
    dimension = Report('gl_weyl_dimension',
                       'dim build_irrep(psi) = Weyl dimension of psi')
    relations = Report('gl_bracket_relations',
                       '[E_ij,E_kl] = d_jk E_il - d_li E_kj; sum E_ii = b')
    irreducible = Report('gl_irreducibility',
                         'U(gl_d) v = V(psi,b) for every sampled v != 0')
    for d in dims:
        for coefficients in weight_grid(d, max_total):
            psi = DominantWeight(coefficients, b)
            rep = build_irrep(psi, d)
            expected = weyl_dim(psi, d)
            dimension.instances_checked += 1
            if rep.dim != expected:
                dimension.fail({'d': d, 'weight': list(coefficients),
                                'built': rep.dim, 'weyl': expected})
            single = check_rep(rep)
            relations.instances_checked += single.instances_checked
            if not single.passed:
                relations.fail(dict(single.witness, d=d))
            starts = [
                dense({0: 1}, rep.dim),
                dense({rep.dim - 1: 1}, rep.dim),
                tuple(sampling.random_rational(rng) for _ in range(rep.dim)),
            ]
            starts = [s for s in starts if any(s)]
            single = irreducibility_witness(rep, starts)
            irreducible.instances_checked += single.instances_checked
            if not single.passed:
                irreducible.fail(dict(single.witness, d=d,
                                      weight=list(coefficients)))
    return [dimension, relations, irreducible]
