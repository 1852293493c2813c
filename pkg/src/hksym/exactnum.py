"""Exact arithmetic over the Gaussian rationals Q(i) and exact dense linear algebra.

Everything in this package computes over Q(i): numbers are pairs of
arbitrary-precision rationals, matrices are row-major tables of them, and all
eliminations use the canonical first-nonzero pivot so results are reproducible
byte for byte.  There is no floating point anywhere.
"""

import re as _re
from fractions import Fraction


class ScalarError(Exception):
    """Invalid scalar operation: division by zero or an unparseable literal."""


class ContractError(Exception):
    """A documented precondition was violated (e.g. non-Hermitian input)."""


_F0 = Fraction(0)
_F1 = Fraction(1)


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise ScalarError("rational component must be int or Fraction, got %r" % (x,))


class GaussRat:
    """An exact element a + b*i of Q(i), components stored as reduced Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    # -- parsing / formatting -------------------------------------------------

    _RAT = r"\d+(?:/\d+)?"
    _RE_BOTH = _re.compile(r"^(?P<re>[+-]?%s)(?P<im>[+-](?:%s)?)i$" % (_RAT, _RAT))
    _RE_IMAG = _re.compile(r"^(?P<im>[+-]?(?:%s)?)i$" % _RAT)
    _RE_REAL = _re.compile(r"^(?P<re>[+-]?%s)$" % _RAT)

    @classmethod
    def parse(cls, text):
        """Parse "a/b" with optional "+c/d i" imaginary part, e.g. "-3/4+1/2i".

        Whitespace-insensitive; accepts the unicode minus sign.  Zero
        denominators and non-rational syntax raise ScalarError.
        """
        if not isinstance(text, str):
            raise ScalarError("rational literal must be a string, got %r" % (text,))
        s = "".join(text.split()).replace("−", "-")
        m = cls._RE_BOTH.match(s) or cls._RE_IMAG.match(s) or cls._RE_REAL.match(s)
        if m is None:
            raise ScalarError("cannot parse rational literal %r" % text)
        groups = m.groupdict()
        try:
            re_part = Fraction(groups["re"]) if groups.get("re") else _F0
            im_text = groups.get("im")
            if im_text is None:
                im_part = _F0
            elif im_text in ("", "+"):
                im_part = _F1
            elif im_text == "-":
                im_part = -_F1
            else:
                im_part = Fraction(im_text)
        except ZeroDivisionError:
            raise ScalarError("zero denominator in %r" % text)
        return cls(re_part, im_part)

    def __str__(self):
        def rat(f):
            return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)

        if not self.im:
            return rat(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = rat(self.im) + "i"
        if not self.re:
            return imag
        sign = "+" if self.im > 0 and not imag.startswith("+") else ""
        return rat(self.re) + sign + imag

    def __repr__(self):
        return "GaussRat(%s)" % self

    # -- field operations -----------------------------------------------------

    def __add__(self, other):
        return GaussRat(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussRat(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other):
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ScalarError("division by zero in Q(i)")
        return GaussRat(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def inverse(self):
        return ONE / self

    def __eq__(self, other):
        return isinstance(other, GaussRat) and self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self):
        return not self.im

    def real_sign(self):
        """Sign (-1, 0, 1) of a real element; error on a non-real one."""
        if self.im:
            raise ContractError("real_sign of a non-real scalar %s" % self)
        return (self.re > 0) - (self.re < 0)


ZERO = GaussRat(0)
ONE = GaussRat(1)
I_UNIT = GaussRat(0, 1)
MINUS_ONE = GaussRat(-1)


def gr(re, im=0):
    """Shorthand constructor; accepts ints, Fractions or "a/b" strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussRat(re, im)


def field_ops(a, b, which):
    """Dispatch a single named field operation (add/sub/mul/div/conj/neg)."""
    if which == "add":
        return a + b
    if which == "sub":
        return a - b
    if which == "mul":
        return a * b
    if which == "div":
        return a / b
    if which == "conj":
        return a.conjugate()
    if which == "neg":
        return -a
    raise ScalarError("unknown field operation %r" % which)


# ---------------------------------------------------------------------------
# Matrices and vectors.  Vectors are plain tuples of GaussRat.
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over Q(i), row-major."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, rows):
        rows = tuple(tuple(e for e in row) for row in rows)
        if not rows:
            raise ContractError("matrix needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ContractError("ragged or empty matrix rows")
        for row in rows:
            for e in row:
                if not isinstance(e, GaussRat):
                    raise ContractError("matrix entries must be GaussRat")
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[ZERO] * ncols for _ in range(nrows)])

    @classmethod
    def from_strings(cls, rows):
        return cls([[GaussRat.parse(e) for e in row] for row in rows])

    def to_strings(self):
        return [[str(e) for e in row] for row in self.data]

    def entry(self, i, j):
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def rows_list(self):
        return [list(r) for r in self.data]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.data])

    def scale(self, c):
        return Matrix([[c * a for a in r] for r in self.data])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ContractError("matmul dimension mismatch")
        cols = [other.col(j) for j in range(other.ncols)]
        out = []
        for r in self.data:
            out_row = []
            for c in cols:
                s = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        s = s + a * b
                out_row.append(s)
            out.append(out_row)
        return Matrix(out)

    def transpose(self):
        return Matrix([self.col(j) for j in range(self.ncols)])

    def conj(self):
        return Matrix([[a.conjugate() for a in r] for r in self.data])

    def hermitian_transpose(self):
        return self.transpose().conj()

    def is_zero(self):
        return all(not e for r in self.data for e in r)

    def __repr__(self):
        return "Matrix(%s)" % (self.to_strings(),)


def mat_vec(m, v):
    """Matrix times column vector (tuple in, tuple out)."""
    if m.ncols != len(v):
        raise ContractError("mat_vec dimension mismatch")
    out = []
    for r in m.data:
        s = ZERO
        for a, b in zip(r, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return tuple(out)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def vec_conj(v):
    return tuple(a.conjugate() for a in v)


def vec_is_zero(v):
    return all(not a for a in v)


def zero_vec(n):
    return (ZERO,) * n


def unit_vec(n, k):
    return tuple(ONE if i == k else ZERO for i in range(n))


# ---------------------------------------------------------------------------
# Elimination.  All pivots are the first nonzero entry in column order, so
# every result below is deterministic for a fixed input.
# ---------------------------------------------------------------------------


def _rref(rows):
    """In-place reduced row echelon form; returns pivot column list."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * e for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [e - f * p for e, p in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m):
    """Reduced row echelon form of a Matrix; returns (Matrix, pivot_columns)."""
    rows = m.rows_list()
    pivots = _rref(rows)
    return Matrix(rows), pivots


def rank_kernel(m):
    """Exact rank, kernel basis and pivot columns of a matrix.

    The kernel basis is the reduced-echelon parametrization: one vector per
    free column f, with a 1 in position f and the negated pivot-row entries
    above it.  rank + len(kernel) == ncols always.
    """
    rows = m.rows_list()
    pivots = _rref(rows)
    rank = len(pivots)
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        v = [ZERO] * m.ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -rows[i][f]
        kernel.append(tuple(v))
    return rank, kernel, pivots


def solve_linear(m, b):
    """Solve m @ x = b exactly; returns the tuple x or None when inconsistent.

    Underdetermined systems get the canonical solution with zeros in all
    non-pivot coordinates.
    """
    if m.nrows != len(b):
        raise ContractError("solve_linear: matrix/vector size mismatch")
    rows = [list(r) + [be] for r, be in zip(m.data, b)]
    pivots = _rref(rows)
    if m.ncols in pivots:
        return None
    x = [ZERO] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = rows[i][m.ncols]
    return tuple(x)


def inverse(m):
    """Exact inverse of a square matrix; ContractError if singular."""
    if m.nrows != m.ncols:
        raise ContractError("inverse of a non-square matrix")
    n = m.nrows
    rows = [list(r) + list(Matrix.identity(n).row(i)) for i, r in enumerate(m.data)]
    pivots = _rref(rows)
    if len(pivots) < n:
        raise ContractError("matrix is singular")
    return Matrix([row[n:] for row in rows])


def hermitian_inertia(h):
    """Exact Sylvester inertia (positive, negative, null) of a Hermitian matrix.

    Recursive congruence pivoting over Q(i): split off a nonzero diagonal
    entry when one exists; when the whole diagonal vanishes, a nonzero
    off-diagonal pair is first mixed onto the diagonal by the elementary
    congruence e_j -> e_j + e_i (or e_j + i*e_i when the real part of the
    hyperbolic entry vanishes).  No eigenvalues, no square roots.
    """
    if h.nrows != h.ncols:
        raise ContractError("inertia needs a square matrix")
    if h != h.hermitian_transpose():
        raise ContractError("matrix is not Hermitian")
    rows = h.rows_list()
    live = list(range(h.nrows))
    pos = neg = 0

    def congruence_mix(i, j, c):
        # col_j += c * col_i, then row_j += conj(c) * row_i
        for k in live:
            rows[k][j] = rows[k][j] + c * rows[k][i]
        cc = c.conjugate()
        for k in live:
            rows[j][k] = rows[j][k] + cc * rows[i][k]

    while live:
        pivot = None
        for i in live:
            if rows[i][i]:
                pivot = i
                break
        if pivot is None:
            off = None
            for a in range(len(live)):
                for b in range(a + 1, len(live)):
                    i, j = live[a], live[b]
                    if rows[i][j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                break  # remaining block is zero: all null
            i, j = off
            if rows[i][j].re:
                congruence_mix(i, j, ONE)
            else:
                congruence_mix(i, j, I_UNIT)
            continue
        d = rows[pivot][pivot]
        if d.im:
            raise ContractError("Hermitian matrix with non-real diagonal")
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        live.remove(pivot)
        inv = d.inverse()
        pivot_row = {l: rows[pivot][l] for l in live}
        factors = {k: rows[k][pivot] * inv for k in live}
        for k in live:
            f = factors[k]
            if not f:
                continue
            for l in live:
                if pivot_row[l]:
                    rows[k][l] = rows[k][l] - f * pivot_row[l]
    return pos, neg, h.nrows - pos - neg


class SpanSolver:
    """Express vectors exactly in a fixed independent spanning set.

    Built once from basis rows B; coords(t) returns c with t = sum c_i B_i,
    or None when t lies outside the span.  Internally keeps the RREF of B
    together with the transform T with R = T B.
    """

    def __init__(self, basis_rows):
        self.basis = [tuple(r) for r in basis_rows]
        self.dim = len(self.basis)
        if self.dim == 0:
            self.width = None
            return
        self.width = len(self.basis[0])
        aug = [list(r) + [ONE if i == j else ZERO for j in range(self.dim)]
               for i, r in enumerate(self.basis)]
        pivots = _rref(aug)
        real_pivots = [p for p in pivots if p < self.width]
        if len(real_pivots) != self.dim:
            raise ContractError("SpanSolver needs independent rows")
        self.pivots = real_pivots
        self.rref_rows = [tuple(row[: self.width]) for row in aug]
        self.transform = [tuple(row[self.width:]) for row in aug]

    def coords(self, t):
        """Coordinates of t in the original basis, or None if outside the span."""
        if self.dim == 0:
            return () if vec_is_zero(t) else None
        t = list(t)
        d = [ZERO] * self.dim
        for i, p in enumerate(self.pivots):
            f = t[p]
            if not f:
                continue
            d[i] = f
            row = self.rref_rows[i]
            for l in range(self.width):
                if row[l]:
                    t[l] = t[l] - f * row[l]
        if not vec_is_zero(t):
            return None
        # t = d . R = d . (T B)  =>  coords = d . T
        out = []
        for j in range(self.dim):
            s = ZERO
            for i in range(self.dim):
                if d[i] and self.transform[i][j]:
                    s = s + d[i] * self.transform[i][j]
            out.append(s)
        return tuple(out)

    def contains(self, t):
        return self.coords(t) is not None


def echelon_basis(vectors):
    """Canonical RREF basis of the span of the given row vectors."""
    vecs = [v for v in vectors if not vec_is_zero(v)]
    if not vecs:
        return []
    rows = [list(v) for v in vecs]
    pivots = _rref(rows)
    return [tuple(rows[i]) for i in range(len(pivots))]
