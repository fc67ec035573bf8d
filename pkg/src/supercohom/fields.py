"""Exact scalar and dense-matrix arithmetic over F_p (p an odd prime) and Q.

Scalars are stored in canonical form: integers in [0, p) for F_p, reduced
``fractions.Fraction`` for Q.  Matrices are dense lists of rows of canonical
values tagged with their field.  Everything is deterministic: echelon forms
are fully reduced, so kernel bases and solutions are canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    """Field-tag mismatch or impossible field operation."""


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """A prime field F_p (p odd, p < 2**31) or the rationals Q.

    Instances are lightweight op tables working on canonical raw values
    (python ints mod p, Fractions over Q).
    """

    def __init__(self, char):
        if char == 0:
            self.p = 0
        else:
            if not _is_prime(char) or char == 2 or char >= 2 ** 31:
                raise FieldError("characteristic must be an odd prime < 2^31, or 0")
            self.p = char

    # -- canonical raw-value arithmetic --------------------------------
    def of(self, v):
        """Coerce an int, Fraction, or 'a/b' string to canonical form."""
        if isinstance(v, str):
            if "/" in v:
                num, den = v.split("/")
                v = Fraction(int(num), int(den))
            else:
                v = int(v)
        if self.p:
            if isinstance(v, Fraction):
                if v.denominator % self.p == 0:
                    raise FieldError("denominator divisible by p")
                return v.numerator * pow(v.denominator, -1, self.p) % self.p
            return v % self.p
        return Fraction(v)

    def zero(self):
        return 0 if self.p else Fraction(0)

    def one(self):
        return 1 if self.p else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


def GF(p):
    return Field(p)


QQ = Field(0)


@dataclass(frozen=True)
class FieldScalar:
    """An exact field element: canonical value plus its field tag."""

    value: object
    field: Field

    def _check(self, other):
        if not isinstance(other, FieldScalar):
            other = FieldScalar(self.field.of(other), self.field)
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldScalar(self.field.add(self.value, other.value), self.field)

    def __sub__(self, other):
        other = self._check(other)
        return FieldScalar(self.field.sub(self.value, other.value), self.field)

    def __mul__(self, other):
        other = self._check(other)
        return FieldScalar(self.field.mul(self.value, other.value), self.field)

    def __neg__(self):
        return FieldScalar(self.field.neg(self.value), self.field)

    def inv(self):
        return FieldScalar(self.field.inv(self.value), self.field)

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inv()

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"{self.value}"


class Matrix:
    """Dense matrix over a fixed field; rows of canonical raw values."""

    def __init__(self, field, rows, ncols=None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.rows:
            self.ncols = len(self.rows[0])
        else:
            self.ncols = 0 if ncols is None else ncols
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def from_entries(cls, field, rows):
        return cls(field, [[field.of(v) for v in r] for r in rows])

    @classmethod
    def zero(cls, field, nrows, ncols):
        z = field.zero()
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, field, n):
        m = cls.zero(field, n, n)
        one = field.one()
        for i in range(n):
            m.rows[i][i] = one
        return m

    def copy(self):
        return Matrix(self.field, self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows})"

    def __add__(self, other):
        if self.field != other.field:
            raise FieldError("field mismatch")
        add = self.field.add
        return Matrix(
            self.field,
            [
                [add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return self + other.scaled(self.field.neg(self.field.one()))

    def scaled(self, c):
        mul = self.field.mul
        return Matrix(self.field, [[mul(c, v) for v in r] for r in self.rows])

    def __matmul__(self, other):
        if self.field != other.field:
            raise FieldError("field mismatch")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        if self.ncols == 0:
            return Matrix.zero(f, self.nrows, other.ncols)
        ocols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in ocols:
                s = f.zero()
                for a, b in zip(r, c):
                    if a and b:
                        s = f.add(s, f.mul(a, b))
                row.append(s)
            out.append(row)
        return Matrix(f, out, ncols=other.ncols)

    def transpose(self):
        if not self.rows:
            return Matrix(self.field, [[] for _ in range(self.ncols)], ncols=0)
        return Matrix(self.field, [list(c) for c in zip(*self.rows)], ncols=self.nrows)

    def apply(self, vec):
        f = self.field
        out = []
        for r in self.rows:
            s = f.zero()
            for a, b in zip(r, vec):
                if a and b:
                    s = f.add(s, f.mul(a, b))
            out.append(s)
        return out

    def power(self, k):
        if self.nrows != self.ncols:
            raise ValueError("power of non-square matrix")
        acc = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                acc = acc @ base
            base = base @ base
            k >>= 1
        return acc

    def is_zero(self):
        z = self.field.zero()
        return all(v == z for r in self.rows for v in r)

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        f = self.field
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pr = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = f.inv(rows[r][c])
            rows[r] = [f.mul(inv, v) for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    m = rows[i][c]
                    rows[i] = [f.sub(a, f.mul(m, b)) for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(f, rows), pivots


def rank(m: Matrix) -> int:
    _, pivots = m.rref()
    return len(pivots)


def kernel_basis(m: Matrix):
    """Canonical basis of the right null space {x : m x = 0}.

    One vector per free column of the rref, with a 1 in the free position;
    lexicographic in column order, hence deterministic.
    """
    f = m.field
    red, pivots = m.rref()
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [f.zero()] * m.ncols
        v[fc] = f.one()
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(red.rows[r][fc])
        basis.append(v)
    return basis


def solve(m: Matrix, rhs):
    """A canonical solution of m x = rhs, or None when inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    f = m.field
    aug = Matrix(f, [list(r) + [b] for r, b in zip(m.rows, rhs)])
    red, pivots = aug.rref()
    for r in range(red.nrows):
        if len(pivots) > r and pivots[r] == m.ncols:
            return None
        if all(not v for v in red.rows[r][: m.ncols]) and red.rows[r][m.ncols]:
            return None
    x = [f.zero()] * m.ncols
    for r, pc in enumerate(pivots):
        if pc < m.ncols:
            x[pc] = red.rows[r][m.ncols]
    return x


def column_space_contains(m: Matrix, vec) -> bool:
    return solve(m, vec) is not None


def from_columns(field, cols, nrows=None):
    """Matrix whose columns are the given vectors."""
    if not cols:
        return Matrix(field, [[] for _ in range(nrows or 0)])
    return Matrix(field, [list(r) for r in zip(*cols)])


def span_dimension(field, vectors):
    if not vectors:
        return 0
    return rank(Matrix(field, vectors))


class SuperMatrix:
    """A Z_2-graded matrix: block form with (even, odd) row/column splits.

    Stored as a plain Matrix in the basis ordering "even coordinates first";
    row_dims and col_dims record the split.  blocks() returns the four
    blocks (ee, eo, oe, oo) mapping column sectors to row sectors.
    """

    def __init__(self, row_dims, col_dims, matrix: Matrix):
        self.row_dims = tuple(row_dims)
        self.col_dims = tuple(col_dims)
        if matrix.nrows != sum(row_dims) or matrix.ncols != sum(col_dims):
            raise ValueError("block dims inconsistent with matrix shape")
        self.matrix = matrix

    @property
    def field(self):
        return self.matrix.field

    def blocks(self):
        r0, _ = self.row_dims
        c0, _ = self.col_dims
        rows = self.matrix.rows
        ee = [r[:c0] for r in rows[:r0]]
        eo = [r[c0:] for r in rows[:r0]]
        oe = [r[:c0] for r in rows[r0:]]
        oo = [r[c0:] for r in rows[r0:]]
        f = self.field
        return (Matrix(f, ee), Matrix(f, eo), Matrix(f, oe), Matrix(f, oo))

    def parity_blocks_zero(self, parity):
        """True when the matrix is homogeneous of the given parity."""
        ee, eo, oe, oo = self.blocks()
        if parity == 0:
            return eo.is_zero() and oe.is_zero()
        return ee.is_zero() and oo.is_zero()

    def __matmul__(self, other):
        if self.col_dims != other.row_dims:
            raise ValueError("block shape mismatch")
        return SuperMatrix(self.row_dims, other.col_dims, self.matrix @ other.matrix)

    def __add__(self, other):
        if self.row_dims != other.row_dims or self.col_dims != other.col_dims:
            raise ValueError("block shape mismatch")
        return SuperMatrix(self.row_dims, self.col_dims, self.matrix + other.matrix)

    def __sub__(self, other):
        if self.row_dims != other.row_dims or self.col_dims != other.col_dims:
            raise ValueError("block shape mismatch")
        return SuperMatrix(self.row_dims, self.col_dims, self.matrix - other.matrix)

    def scaled(self, c):
        return SuperMatrix(self.row_dims, self.col_dims, self.matrix.scaled(c))

    def power(self, k):
        return SuperMatrix(self.row_dims, self.col_dims, self.matrix.power(k))

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and self.row_dims == other.row_dims
            and self.col_dims == other.col_dims
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"SuperMatrix({self.row_dims}, {self.col_dims}, {self.matrix.rows})"
