"""Exact rational linear algebra.

Everything in this package reduces to finite-dimensional linear algebra over the
rationals, done exactly: no floats anywhere.  This module provides the scalar
type, a dense row-major matrix, multi-index flattening for tensor powers, and
the four workhorses rank / kernel_basis / solve / homology_dim.

Conventions fixed here and relied on by every other module:

* scalars are reduced rationals with positive denominator (gmpy2.mpq when
  available, fractions.Fraction otherwise -- same interface, same semantics);
* matrices are dense, row-major; a linear map's matrix has codomain-dim rows
  and domain-dim columns, and acts on column vectors;
* tensor products flatten big-endian: the FIRST factor varies slowest.  So for
  factor dims (d1, d2) the pair (i1, i2) flattens to i1*d2 + i2.
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Q

ZERO = Q(0)
ONE = Q(1)

Rational = type(Q(0))


def rational(value, den=None):
    """Build a reduced Rational from int, string 'p' / 'p/q', or Rational."""
    if den is not None:
        if int(den) == 0:
            raise ValueError("zero denominator")
        return Q(value) / Q(den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        if isinstance(value, float):
            raise TypeError("floats are not accepted; use 'p/q' strings")
    return Q(value)


def parse_rational(text):
    """Parse 'p' or 'p/q' (q > 0 after reduction is automatic).  Strict."""
    if not isinstance(text, str):
        if isinstance(text, int):
            return Q(text)
        raise ValueError(f"rational must be a string or int, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ValueError(f"malformed rational {text!r}: zero denominator")
    return Q(n, d)


def format_rational(q):
    """Serialize as 'p' or 'p/q'.  Inverse of parse_rational."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Matrix:
    """Dense row-major matrix of Rationals.  Immutable once built."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(Q(e) for e in entries)
        assert len(entries) == rows * cols, "entry count must be rows*cols"
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def from_rows(rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        flat = []
        for r in rows_list:
            assert len(r) == cols, "ragged rows"
            flat.extend(r)
        return Matrix(rows, cols, flat)

    @staticmethod
    def zero(rows, cols):
        return Matrix(rows, cols, [ZERO] * (rows * cols))

    @staticmethod
    def identity(n):
        return Matrix(n, n, [ONE if i == j else ZERO
                             for i in range(n) for j in range(n)])

    def at(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self):
        return all(e == 0 for e in self.entries)

    def transpose(self):
        return Matrix(self.cols, self.rows,
                      [self.at(i, j) for j in range(self.cols)
                       for i in range(self.rows)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        assert self.rows == other.rows and self.cols == other.cols
        return Matrix(self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c):
        c = Q(c)
        return Matrix(self.rows, self.cols, [c * a for a in self.entries])

    def __mul__(self, other):
        """Matrix product, skipping zero entries of the right factor."""
        assert isinstance(other, Matrix)
        assert self.cols == other.rows, "inner dimensions must agree"
        # column-sparse view of self: for each k, the nonzeros of column k
        left_cols = [[] for _ in range(self.cols)]
        for i in range(self.rows):
            base = i * self.cols
            for k in range(self.cols):
                v = self.entries[base + k]
                if v:
                    left_cols[k].append((i, v))
        out = [[ZERO] * other.cols for _ in range(self.rows)]
        for k in range(other.rows):
            base = k * other.cols
            for j in range(other.cols):
                w = other.entries[base + j]
                if w:
                    for i, v in left_cols[k]:
                        out[i][j] += v * w
        return Matrix.from_rows(out) if self.rows else Matrix(0, other.cols, [])

    def apply(self, vec):
        """Apply to a column vector (any sequence of scalars)."""
        assert len(vec) == self.cols, "vector length must equal cols"
        vec = [Q(v) for v in vec]
        out = []
        for i in range(self.rows):
            base = i * self.cols
            s = ZERO
            for j, v in enumerate(vec):
                if v:
                    s += self.entries[base + j] * v
            out.append(s)
        return tuple(out)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(self.at(i, j))
                                  for j in range(self.cols))
                         for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"


class TensorIndex:
    """Big-endian mixed-radix flattening of a multi-index.

    factor_dims lists the dimension of each tensor factor; the first factor
    varies slowest.  flatten and unflatten are mutually inverse on the full
    range.  An empty factor list describes the base field (size 1, index ()).
    """

    __slots__ = ("factor_dims", "size")

    def __init__(self, factor_dims):
        factor_dims = tuple(int(d) for d in factor_dims)
        assert all(d >= 0 for d in factor_dims)
        object.__setattr__(self, "factor_dims", factor_dims)
        n = 1
        for d in factor_dims:
            n *= d
        object.__setattr__(self, "size", n)

    def __setattr__(self, *a):
        raise AttributeError("TensorIndex is immutable")

    def flatten(self, multi):
        assert len(multi) == len(self.factor_dims)
        flat = 0
        for i, d in zip(multi, self.factor_dims):
            assert 0 <= i < d, "index out of range"
            flat = flat * d + i
        return flat

    def unflatten(self, flat):
        assert 0 <= flat < self.size, "flat index out of range"
        multi = []
        for d in reversed(self.factor_dims):
            multi.append(flat % d)
            flat //= d
        return tuple(reversed(multi))

    def all_indices(self):
        """Iterate multi-indices in flattening order."""
        for flat in range(self.size):
            yield self.unflatten(flat)


def _echelon(rows_as_dicts, ncols):
    """Sparse forward elimination.  Returns (pivot rows, pivot cols).

    rows_as_dicts is consumed.  Each returned row is a dict col->value with its
    pivot at the matching entry of pivot_cols.  Deterministic: the pivot column
    is the smallest column carrying a nonzero; among candidate rows the one
    with fewest nonzeros (ties: first seen) is chosen.
    """
    live = [r for r in rows_as_dicts if r]
    pivots = []
    pivot_cols = []
    col = 0
    while live and col < ncols:
        cand = [r for r in live if col in r]
        if not cand:
            col += 1
            continue
        shortest = min(len(r) for r in cand)
        best = next(r for r in cand if len(r) == shortest)
        live.remove(best)
        pv = best[col]
        inv = ONE / pv
        best = {c: v * inv for c, v in best.items()}
        for r in live:
            f = r.get(col)
            if f:
                for c, v in best.items():
                    nv = r.get(c, ZERO) - f * v
                    if nv:
                        r[c] = nv
                    elif c in r:
                        del r[c]
        live = [r for r in live if r]
        pivots.append(best)
        pivot_cols.append(col)
        col += 1
    return pivots, pivot_cols


def _to_row_dicts(m):
    out = []
    for i in range(m.rows):
        base = i * m.cols
        row = {}
        for j in range(m.cols):
            v = m.entries[base + j]
            if v:
                row[j] = v
        out.append(row)
    return out


def rank(m):
    """Exact row rank over the rationals."""
    pivots, _ = _echelon(_to_row_dicts(m), m.cols)
    return len(pivots)


def _back_substitute(pivots, pivot_cols, free_assign, ncols):
    """Complete a kernel vector from values at non-pivot columns."""
    vec = [ZERO] * ncols
    for c, v in free_assign.items():
        vec[c] = v
    for row, pc in zip(reversed(pivots), reversed(pivot_cols)):
        s = ZERO
        for c, v in row.items():
            if c != pc and vec[c]:
                s += v * vec[c]
        vec[pc] = -s  # pivot entry normalized to 1
    return tuple(vec)


def kernel_basis(m):
    """Exact basis of the right null space, in deterministic order.

    One basis vector per non-pivot column, ascending; the vector carries 1 at
    its free column and 0 at the other free columns.
    """
    pivots, pivot_cols = _echelon(_to_row_dicts(m), m.cols)
    pivot_set = set(pivot_cols)
    basis = []
    for j in range(m.cols):
        if j in pivot_set:
            continue
        basis.append(_back_substitute(pivots, pivot_cols, {j: ONE}, m.cols))
    return basis


def solve(m, rhs):
    """Any exact solution x of m x = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    if len(rhs) != m.rows:
        raise ValueError(f"rhs length {len(rhs)} != rows {m.rows}")
    rows = _to_row_dicts(m)
    aug = m.cols  # rhs lives in an extra column
    for row, b in zip(rows, rhs):
        b = Q(b)
        if b:
            row[aug] = b
    pivots, pivot_cols = _echelon(rows, m.cols + 1)
    if aug in pivot_cols:
        return None  # a row reduced to 0 = nonzero
    vec = [ZERO] * (m.cols + 1)
    vec[aug] = -ONE  # so back substitution moves rhs to the other side
    for row, pc in zip(reversed(pivots), reversed(pivot_cols)):
        s = ZERO
        for c, v in row.items():
            if c != pc and vec[c]:
                s += v * vec[c]
        vec[pc] = -s
    return tuple(vec[:m.cols])


def inverse(m):
    """Exact inverse of a square matrix, or None when singular."""
    if m.rows != m.cols:
        raise ValueError(f"inverse needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    aug = [list(m.row(i)) + [ONE if j == i else ZERO for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = ONE / aug[col][col]
        aug[col] = [x * scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return Matrix.from_rows([row[n:] for row in aug])


def homology_dim(d_out, d_in):
    """dim ker(d_out) - rank(d_in) for consecutive differentials.

    d_in maps INTO the middle space, d_out maps OUT of it; requires
    cols(d_out) == rows(d_in) and d_out . d_in == 0.
    """
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"not composable: d_out has {d_out.cols} cols, "
            f"d_in has {d_in.rows} rows")
    if not (d_out * d_in).is_zero():
        raise ValueError("d_out . d_in != 0: not a complex")
    return (d_out.cols - rank(d_out)) - rank(d_in)


class SparseBuilder:
    """Column-sparse accumulator for big differential matrices.

    Internal plumbing: large coboundary matrices are built entry by entry and
    composed here, and only converted to dense Matrix when a caller needs one.
    """

    __slots__ = ("rows", "cols", "cols_data")

    def __init__(self, rows, cols):
        self.rows = rows
        self.cols = cols
        self.cols_data = [dict() for _ in range(cols)]

    def add(self, i, j, val):
        if not val:
            return
        col = self.cols_data[j]
        nv = col.get(i, ZERO) + val
        if nv:
            col[i] = nv
        elif i in col:
            del col[i]

    def compose(self, other):
        """self . other as SparseBuilder."""
        assert self.cols == other.rows
        out = SparseBuilder(self.rows, other.cols)
        for j, col in enumerate(other.cols_data):
            acc = out.cols_data[j]
            for k, w in col.items():
                for i, v in self.cols_data[k].items():
                    nv = acc.get(i, ZERO) + v * w
                    if nv:
                        acc[i] = nv
                    elif i in acc:
                        del acc[i]
        return out

    def is_zero(self):
        return all(not c for c in self.cols_data)

    def nonzero_items(self):
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                yield i, j, v

    def to_matrix(self):
        flat = [ZERO] * (self.rows * self.cols)
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                flat[i * self.cols + j] = v
        return Matrix(self.rows, self.cols, flat)

    def apply(self, vec):
        assert len(vec) == self.cols
        out = [ZERO] * self.rows
        for j, v in enumerate(vec):
            if v:
                for i, w in self.cols_data[j].items():
                    out[i] += w * v
        return tuple(out)
