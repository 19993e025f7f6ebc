"""Dense exact linear algebra over Q.

Row reduction runs fraction-free (Bareiss) on an integer copy of the matrix;
only the final normalization to reduced row-echelon form divides.  Matrices
here are small (a few hundred rows at most), so everything is a list of lists.
"""

from fractions import Fraction
from math import lcm

from .errors import DimensionError, InconsistentSystemError
from .series import format_rational

__all__ = ["RationalMatrix", "is_subspace", "kernel_basis", "rank", "rref", "solve"]


class RationalMatrix:
    """Rectangular matrix of Fractions, optionally with row/column labels."""

    def __init__(self, rows, ncols=None, row_labels=None, col_labels=None):
        rows = [[Fraction(v) for v in r] for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise DimensionError("ragged matrix")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        if row_labels is not None and len(row_labels) != self.nrows:
            raise DimensionError("row label count mismatch")
        if col_labels is not None and len(col_labels) != self.ncols:
            raise DimensionError("column label count mismatch")
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def columns(self, idx):
        idx = list(idx)
        labels = [self.col_labels[j] for j in idx] if self.col_labels else None
        return RationalMatrix(
            [[r[j] for j in idx] for r in self.rows], len(idx), self.row_labels, labels
        )

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch in vstack")
        labels = None
        if self.row_labels is not None and other.row_labels is not None:
            labels = self.row_labels + other.row_labels
        return RationalMatrix(self.rows + other.rows, self.ncols, labels, self.col_labels)

    def matvec(self, v):
        if len(v) != self.ncols:
            raise DimensionError("vector length mismatch")
        return [sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def to_tsv(self, label=str):
        lines = []
        if self.col_labels is not None:
            head = [""] if self.row_labels is not None else []
            lines.append("\t".join(head + [label(c) for c in self.col_labels]))
        for i, r in enumerate(self.rows):
            cells = [format_rational(v) for v in r]
            if self.row_labels is not None:
                cells = [label(self.row_labels[i])] + cells
            lines.append("\t".join(cells))
        return "\n".join(lines)

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols})"


def _as_rows(m):
    if isinstance(m, RationalMatrix):
        return m.rows, m.ncols
    rows = [[Fraction(v) for v in r] for r in m]
    return rows, (len(rows[0]) if rows else 0)


def _integer_rows(rows):
    out = []
    for r in rows:
        d = lcm(*(v.denominator for v in r)) if r else 1
        out.append([v.numerator * (d // v.denominator) for v in r])
    return out


def _bareiss_echelon(a, ncols):
    """In-place fraction-free forward elimination; returns pivot columns."""
    nrows = len(a)
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        k = next((i for i in range(r, nrows) if a[i][c]), None)
        if k is None:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
        piv = a[r][c]
        row_r = a[r]
        for i in range(r + 1, nrows):
            row_i = a[i]
            lead = row_i[c]
            if lead:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j] - lead * row_r[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    row_i[j] = (piv * row_i[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rref(m):
    """Reduced row-echelon form and ascending pivot columns.

    Returns ``(R, pivots)`` with ``R`` a RationalMatrix of the same shape
    (zero rows at the bottom).
    """
    rows, ncols = _as_rows(m)
    a = _integer_rows(rows)
    pivots = _bareiss_echelon(a, ncols)
    red = [[Fraction(v) for v in a[i]] for i in range(len(pivots))]
    # back substitution, bottom up
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        row = red[i]
        inv = 1 / row[c]
        if inv != 1:
            for j in range(c, ncols):
                if row[j]:
                    row[j] *= inv
        for k in range(i):
            other = red[k]
            f = other[c]
            if f:
                for j in range(c, ncols):
                    if row[j]:
                        other[j] -= f * row[j]
    red.extend([Fraction(0)] * ncols for _ in range(len(rows) - len(pivots)))
    col_labels = m.col_labels if isinstance(m, RationalMatrix) else None
    return RationalMatrix(red, ncols, col_labels=col_labels), pivots


def rank(m):
    rows, ncols = _as_rows(m)
    return len(_bareiss_echelon(_integer_rows(rows), ncols))


def kernel_basis(m):
    """Basis of ``{v : M v = 0}``: one vector per free column, 1 in that column."""
    red, pivots = rref(m)
    ncols = red.ncols
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red.rows[i][f]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of ``M x = b`` (free variables set to 0).

    Raises :class:`InconsistentSystemError` whose ``row`` is the first
    equation that contradicts the equations before it.
    """
    rows, ncols = _as_rows(m)
    if len(b) != len(rows):
        raise DimensionError(f"right-hand side has length {len(b)}, expected {len(rows)}")
    basis = {}  # pivot column -> reduced augmented row, monic at pivot
    for idx, (r, rhs) in enumerate(zip(rows, b)):
        row = list(r) + [Fraction(rhs)]
        for c, brow in basis.items():
            f = row[c]
            if f:
                for j in range(ncols + 1):
                    if brow[j]:
                        row[j] -= f * brow[j]
        c = next((j for j in range(ncols) if row[j]), None)
        if c is None:
            if row[ncols]:
                raise InconsistentSystemError(idx)
            continue
        inv = 1 / row[c]
        row = [v * inv for v in row]
        for other in basis.values():
            f = other[c]
            if f:
                for j in range(ncols + 1):
                    if row[j]:
                        other[j] -= f * row[j]
        basis[c] = row
    x = [Fraction(0)] * ncols
    for c, brow in basis.items():
        x[c] = brow[ncols]
    return x


def is_subspace(a_rows, b_rows, ncols):
    """True iff the row space of ``a_rows`` lies inside that of ``b_rows``."""
    if not a_rows:
        return True
    rb = rank(b_rows) if b_rows else 0
    return rank(list(b_rows) + list(a_rows)) == rb if b_rows else rank(a_rows) == 0
