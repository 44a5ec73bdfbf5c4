'''Exact sparse linear algebra over the rationals.

Vectors are dicts ``key -> Fraction`` with arbitrary sortable keys (lattice
points, tensor indices, ...). Zero entries are never stored.
'''

from fractions import Fraction


def axpy(target, vector, scale=1):
    '''target += scale * vector, in place, keeping target zero-free.'''
    if not scale:
        return target
    for key, value in vector.items():
        new = target.get(key, 0) + scale * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def sparse(vector):
    '''Drop zeros, turn a dense sequence or a dict into a sparse dict.'''
    if isinstance(vector, dict):
        return dict((k, Fraction(v)) for k, v in vector.items() if v)
    return dict((i, Fraction(v)) for i, v in enumerate(vector) if v)


def dense(vector, size):
    return tuple(Fraction(vector.get(i, 0)) for i in range(size))


class EchelonBasis(object):
    '''Incrementally maintained row echelon form.

    Row j has a zero at the pivot of every earlier row i < j, so reducing a
    vector by the rows in insertion order clears all pivots. With
    ``track=True`` each row also remembers which combination of the
    vectors passed to :meth:`add` produced it, which makes
    :meth:`coordinates` possible.
    '''

    def __init__(self, track=False):
        self.track = track
        self._rows = []
        #: vectors accepted by add(), in order
        self.originals = []

    def __len__(self):
        return len(self._rows)

    @property
    def rank(self):
        return len(self._rows)

    def rows(self):
        '''(pivot, normalised row) pairs in insertion order.'''
        return [(pivot, dict(row)) for pivot, row, _ in self._rows]

    def _reduce(self, vector):
        residual = sparse(vector)
        combo = {}
        for pivot, row, row_combo in self._rows:
            coeff = residual.get(pivot)
            if not coeff:
                continue
            axpy(residual, row, -coeff)
            if self.track:
                axpy(combo, row_combo, coeff)
        return residual, combo

    def contains(self, vector):
        return not self._reduce(vector)[0]

    def add(self, vector):
        '''Add a vector; return True iff it enlarged the span.'''
        residual, combo = self._reduce(vector)
        if not residual:
            return False
        pivot = min(residual)
        inv = 1 / residual[pivot]
        row = dict((k, v * inv) for k, v in residual.items())
        row_combo = {}
        if self.track:
            # residual = original - sum combo[j] * originals[j]
            row_combo = dict((j, -c * inv) for j, c in combo.items())
            row_combo[len(self.originals)] = inv
        self._rows.append((pivot, row, row_combo))
        self.originals.append(sparse(vector))
        return True

    def coordinates(self, vector):
        '''Coefficients expressing vector in the accepted originals.

        :raises ValueError: vector is not in the span
        '''
        if not self.track:
            raise ValueError('coordinates need a tracking basis')
        residual, combo = self._reduce(vector)
        if residual:
            raise ValueError('vector not in span')
        return combo


def rank(vectors):
    basis = EchelonBasis()
    for vector in vectors:
        basis.add(vector)
    return basis.rank


class SparseMatrix(object):
    '''Square or rectangular matrix stored as ``{row: {col: value}}``.'''
    __slots__ = ('nrows', 'ncols', '_rows')

    def __init__(self, nrows, ncols=None, entries=None):
        self.nrows = nrows
        self.ncols = nrows if ncols is None else ncols
        self._rows = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError('entry ({}, {}) outside {}x{}'.format(
                    i, j, self.nrows, self.ncols))
            if value:
                self._rows.setdefault(i, {})[j] = Fraction(value)

    @classmethod
    def identity(cls, n, scale=1):
        return cls(n, n, dict(((i, i), scale) for i in range(n)))

    @classmethod
    def from_columns(cls, nrows, columns):
        '''Build from a list of sparse column dicts.'''
        entries = {}
        for j, column in enumerate(columns):
            for i, value in column.items():
                entries[i, j] = value
        return cls(nrows, len(columns), entries)

    @classmethod
    def from_dense(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, dict(
            ((i, j), v) for i, r in enumerate(rows) for j, v in enumerate(r)))

    def get(self, i, j):
        return self._rows.get(i, {}).get(j, Fraction(0))

    def items(self):
        for i in sorted(self._rows):
            row = self._rows[i]
            for j in sorted(row):
                yield (i, j), row[j]

    def with_entry(self, i, j, value):
        entries = dict(self.items())
        entries[i, j] = value
        return SparseMatrix(self.nrows, self.ncols, entries)

    def is_zero(self):
        return not self._rows

    def to_dense(self):
        return tuple(tuple(self.get(i, j) for j in range(self.ncols))
                     for i in range(self.nrows))

    def _check_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError('shape mismatch {}x{} vs {}x{}'.format(
                self.nrows, self.ncols, other.nrows, other.ncols))

    def _from_rows(self, rows, nrows, ncols):
        result = SparseMatrix(nrows, ncols)
        result._rows = dict((i, r) for i, r in rows.items() if r)
        return result

    def __add__(self, other):
        self._check_shape(other)
        rows = dict((i, dict(r)) for i, r in self._rows.items())
        for i, r in other._rows.items():
            axpy(rows.setdefault(i, {}), r)
        return self._from_rows(rows, self.nrows, self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        value = Fraction(value)
        if not value:
            return SparseMatrix(self.nrows, self.ncols)
        rows = dict((i, dict((j, v * value) for j, v in r.items()))
                    for i, r in self._rows.items())
        return self._from_rows(rows, self.nrows, self.ncols)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError('cannot multiply {}x{} by {}x{}'.format(
                self.nrows, self.ncols, other.nrows, other.ncols))
        rows = {}
        for i, r in self._rows.items():
            out = {}
            for k, v in r.items():
                other_row = other._rows.get(k)
                if other_row:
                    axpy(out, other_row, v)
            if out:
                rows[i] = out
        return self._from_rows(rows, self.nrows, other.ncols)

    def commutator(self, other):
        return (self @ other) - (other @ self)

    def apply(self, vector):
        '''Matrix times a dense vector (tuple of Fractions).'''
        if len(vector) != self.ncols:
            raise ValueError('vector of length {} for {} columns'.format(
                len(vector), self.ncols))
        result = [Fraction(0)] * self.nrows
        for i, r in self._rows.items():
            result[i] = sum((v * vector[j] for j, v in r.items()),
                            Fraction(0))
        return tuple(result)

    def apply_sparse(self, vector):
        result = {}
        for i, r in self._rows.items():
            value = sum((v * vector[j] for j, v in r.items() if j in vector),
                        Fraction(0))
            if value:
                result[i] = value
        return result

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return ((self.nrows, self.ncols) == (other.nrows, other.ncols) and
                self._rows == other._rows)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    __hash__ = None

    def __repr__(self):
        return 'SparseMatrix({}x{}, {} nonzero)'.format(
            self.nrows, self.ncols, sum(len(r) for r in self._rows.values()))
