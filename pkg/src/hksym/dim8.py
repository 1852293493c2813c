"""Orbit classification in dimensions 4 and 8: binary quartic invariants,
square-free multiplicity patterns, the quartic <-> traceless 3x3 dictionary,
and the real positive-scaling rotation invariants.

A binary quartic is kept in the classical weighted form
a0 x^4 + 4 a1 x^3 y + 6 a2 x^2 y^2 + 4 a3 x y^3 + a4 y^4, so the two classical
invariants are I = a0 a4 - 4 a1 a3 + 3 a2^2 and
J = a0 a2 a4 + 2 a1 a2 a3 - a0 a3^2 - a1^2 a4 - a2^3.  Root multiplicities are
found by exact gcd chains (Yun), never by extracting roots.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactnum import (
    ContractError,
    GaussRat,
    Matrix,
    ONE,
    ZERO,
    inverse,
)
from .symtensor import SymTensor, restrict_to_basis, support, tensor_in_subspace_power, tau
from .hkalgebra import find_lagrangian


_HALF = GaussRat(Fraction(1, 2))

# Module constant G for the 3-space W = S^2 C^2 in the basis (x^2, x v y, y^2).
# The volume form sigma(x, y) = 1 induces the covariant invariant form
#   <x^2, y^2> = 1, <xy, xy> = -1/2, everything else 0,
# and G is fixed as its INVERSE, so that for a contravariant symmetric tensor
# A (the matrix with f = sum A_ij u_i u_j) the invariant trace functional is
# literally trace(G^{-1} A) and the equivariant operator on W is G^{-1} A.
# (Taking G to be the covariant Gram itself would make trace(G^{-1}A) cut a
# non-invariant slice; explicit quartics with a double root then classify
# inconsistently between the two sides.)
GRAM = Matrix([
    [ZERO, ZERO, ONE],
    [ZERO, GaussRat(-2), ZERO],
    [ONE, ZERO, ZERO],
])
GRAM_INV = inverse(GRAM)  # the covariant form: [[0,0,1],[0,-1/2,0],[1,0,0]]

_PATTERN_TO_TYPE = {
    (1, 1, 1, 1): "I",
    (2, 1, 1): "II",
    (2, 2): "D",
    (3, 1): "III",
    (4,): "N",
    (): "O",
}


class BinaryQuartic:
    """Classical weighted binary quartic with exact Q(i) coefficients."""

    __slots__ = ("a",)

    def __init__(self, a0, a1, a2, a3, a4):
        object.__setattr__(self, "a", (a0, a1, a2, a3, a4))

    def __setattr__(self, name, value):
        raise AttributeError("BinaryQuartic is immutable")

    def __eq__(self, other):
        return isinstance(other, BinaryQuartic) and self.a == other.a

    def __repr__(self):
        return "BinaryQuartic(%s)" % (", ".join(str(c) for c in self.a))

    @classmethod
    def from_plain(cls, c):
        """From plain polynomial coefficients (of x^4, x^3y, x^2y^2, xy^3, y^4)."""
        four = GaussRat(4)
        six = GaussRat(6)
        return cls(c[0], c[1] / four, c[2] / six, c[3] / four, c[4])

    def plain(self):
        a0, a1, a2, a3, a4 = self.a
        return (a0, GaussRat(4) * a1, GaussRat(6) * a2, GaussRat(4) * a3, a4)

    def is_zero(self):
        return all(not c for c in self.a)

    @classmethod
    def from_symtensor(cls, s, basis_pair):
        """Restrict a quartic tensor supported on span(basis_pair) to 2 variables."""
        coeffs = restrict_to_basis(s, list(basis_pair))
        plain = [ZERO] * 5
        for beta, c in coeffs.items():
            plain[beta[1]] = c
        return cls.from_plain(plain)

    def to_symtensor(self, space, basis_pair):
        x = SymTensor.linear(space, basis_pair[0])
        y = SymTensor.linear(space, basis_pair[1])
        plain = self.plain()
        out = SymTensor.zero(space, 4)
        for k, c in enumerate(plain):
            if c:
                out = out + ((x ** (4 - k)) * (y ** k)).scale(c)
        return out


# ---------------------------------------------------------------------------
# Exact univariate helpers over Q(i) (dense low-to-high coefficient lists).
# ---------------------------------------------------------------------------


def _poly_strip(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_deg(p):
    return len(p) - 1


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _poly_strip(out)


def _poly_divmod(p, q):
    if not q:
        raise ContractError("polynomial division by zero")
    p = list(p)
    quot = [ZERO] * max(len(p) - len(q) + 1, 0)
    inv_lead = q[-1].inverse()
    while p and len(p) >= len(q):
        f = p[-1] * inv_lead
        k = len(p) - len(q)
        quot[k] = f
        for i, b in enumerate(q):
            p[k + i] = p[k + i] - f * b
        _poly_strip(p)
    return _poly_strip(quot), p


def _poly_monic(p):
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def _poly_gcd(p, q):
    p, q = list(p), list(q)
    while q:
        _, r = _poly_divmod(p, q)
        p, q = q, r
    return _poly_monic(p)


def _poly_diff(p):
    return _poly_strip([GaussRat(k) * c for k, c in enumerate(p)][1:])


def _yun_squarefree(p):
    """Yun's square-free decomposition; returns [(multiplicity, degree), ...]."""
    out = []
    g = _poly_gcd(p, _poly_diff(p))
    if _poly_deg(g) == 0:
        if _poly_deg(p) > 0:
            out.append((1, _poly_deg(p)))
        return out
    w, _ = _poly_divmod(p, g)
    y, _ = _poly_divmod(_poly_diff(p), g)
    z = _poly_strip([a - b for a, b in
                     zip(y + [ZERO] * max(0, len(_poly_diff(w)) - len(y)),
                         _poly_diff(w) + [ZERO] * max(0, len(y) - len(_poly_diff(w))))])
    i = 1
    while _poly_deg(w) > 0:
        gi = _poly_gcd(w, z)
        if _poly_deg(gi) > 0:
            out.append((i, _poly_deg(gi)))
        w, _ = _poly_divmod(w, gi)
        y, _ = _poly_divmod(z, gi)
        dw = _poly_diff(w)
        z = _poly_strip([a - b for a, b in
                         zip(y + [ZERO] * max(0, len(dw) - len(y)),
                             dw + [ZERO] * max(0, len(y) - len(dw)))])
        i += 1
    return out


def quartic_invariants(q):
    """The classical invariants I, J and the exact root-multiplicity pattern.

    The pattern is the sorted multiset of root multiplicities on the
    projective line (the point at infinity contributes 4 - deg of the
    dehomogenization), computed by Yun gcd chains over Q(i).
    """
    a0, a1, a2, a3, a4 = q.a
    three = GaussRat(3)
    four = GaussRat(4)
    two = GaussRat(2)
    inv_i = a0 * a4 - four * a1 * a3 + three * a2 * a2
    inv_j = a0 * a2 * a4 + two * a1 * a2 * a3 - a0 * a3 * a3 - a1 * a1 * a4 - a2 * a2 * a2
    if q.is_zero():
        return inv_i, inv_j, ()
    plain = q.plain()
    # dehomogenize at y = 1: p(t) = sum plain[k] t^(4-k)
    p = _poly_strip([plain[4 - d] for d in range(5)])
    mults = []
    for multiplicity, degree in _yun_squarefree(p):
        mults.extend([multiplicity] * degree)
    inf_mult = 4 - _poly_deg(p)
    if inf_mult:
        mults.append(inf_mult)
    return inv_i, inv_j, tuple(sorted(mults, reverse=True))


@dataclass(frozen=True)
class PetrovClass:
    type_tag: str
    multiplicity_pattern: tuple
    projective_invariant: Optional[tuple]  # normalized (I^3 : J^2) for type I

    def to_dict(self):
        return {
            "type": self.type_tag,
            "pattern": list(self.multiplicity_pattern),
            "invariant": (
                [str(self.projective_invariant[0]), str(self.projective_invariant[1])]
                if self.projective_invariant
                else None
            ),
        }


def _petrov_from_pattern(pattern):
    try:
        return _PATTERN_TO_TYPE[tuple(pattern)]
    except KeyError:
        raise ContractError("impossible multiplicity pattern %r" % (pattern,))


def classify_quartic(q):
    """PetrovClass of a binary quartic: pattern type plus, for type I, the
    canonical projective pair (I^3 : J^2) scaled so its first nonzero entry is 1."""
    inv_i, inv_j, pattern = quartic_invariants(q)
    tag = _petrov_from_pattern(pattern)
    proj = None
    if tag == "I":
        i3 = inv_i * inv_i * inv_i
        j2 = inv_j * inv_j
        if i3:
            proj = (ONE, j2 / i3)
        else:
            proj = (ZERO, ONE)  # "at infinity"
    return PetrovClass(tag, pattern, proj)


# ---------------------------------------------------------------------------
# The quartic <-> traceless symmetric 3x3 dictionary.
# ---------------------------------------------------------------------------


class TracelessSym3:
    """Symmetric 3x3 matrix over Q(i) with trace(G^{-1} A) = 0."""

    __slots__ = ("a",)

    def __init__(self, a):
        if a.nrows != 3 or a.ncols != 3:
            raise ContractError("need a 3x3 matrix")
        if a != a.transpose():
            raise ContractError("matrix is not symmetric")
        tr = ZERO
        op = GRAM_INV @ a
        for k in range(3):
            tr = tr + op.entry(k, k)
        if tr:
            raise ContractError("matrix is not G-traceless")
        object.__setattr__(self, "a", a)

    def __setattr__(self, name, value):
        raise AttributeError("TracelessSym3 is immutable")

    @property
    def gram(self):
        return GRAM

    def operator(self):
        """The endomorphism G^{-1} A of the 3-space; its Jordan type is the class."""
        return GRAM_INV @ self.a

    def __eq__(self, other):
        return isinstance(other, TracelessSym3) and self.a == other.a


def matrix_to_quartic(m):
    """Sum_ij A_ij u_i u_j with u = (x^2, xy, y^2), as a binary quartic."""
    a = m.a
    two = GaussRat(2)
    plain = (
        a.entry(0, 0),
        two * a.entry(0, 1),
        two * a.entry(0, 2) + a.entry(1, 1),
        two * a.entry(1, 2),
        a.entry(2, 2),
    )
    return BinaryQuartic.from_plain(plain)


def quartic_to_matrix(q):
    """Inverse of matrix_to_quartic onto the G-traceless slice (exact, unique).

    The trace condition A22 = 4 A13 combined with 2 A13 + A22 = c2 forces
    A13 = c2/6 and A22 = 2c2/3; in weighted coefficients the slice matrix is
    [[a0, 2a1, a2], [2a1, 4a2, 2a3], [a2, 2a3, a4]], whose operator
    G^{-1} A is (the transpose of) the classical contraction operator
    [[a2, -a1, a0], [2a3, -2a2, 2a1], [a4, -a3, a2]].
    """
    a0, a1, a2, a3, a4 = q.a
    two = GaussRat(2)
    rows = [
        [a0, two * a1, a2],
        [two * a1, GaussRat(4) * a2, two * a3],
        [a2, two * a3, a4],
    ]
    return TracelessSym3(Matrix(rows))


def _char_poly_3(m):
    """t^3 + c2 t^2 + c1 t + c0 of a 3x3 matrix, exactly."""
    tr = m.entry(0, 0) + m.entry(1, 1) + m.entry(2, 2)
    m2 = m @ m
    tr2 = m2.entry(0, 0) + m2.entry(1, 1) + m2.entry(2, 2)
    det = (
        m.entry(0, 0) * (m.entry(1, 1) * m.entry(2, 2) - m.entry(1, 2) * m.entry(2, 1))
        - m.entry(0, 1) * (m.entry(1, 0) * m.entry(2, 2) - m.entry(1, 2) * m.entry(2, 0))
        + m.entry(0, 2) * (m.entry(1, 0) * m.entry(2, 1) - m.entry(1, 1) * m.entry(2, 0))
    )
    c2 = -tr
    c1 = (tr * tr - tr2) * _HALF
    c0 = -det
    return c0, c1, c2


def petrov_from_matrix(m):
    """Type letter from the Jordan structure of the operator G^{-1} A.

    Exact over Q(i): the discriminant of the (traceless) characteristic
    polynomial separates I; p = q = 0 gives the nilpotent types split by the
    square; otherwise the double eigenvalue -3q/(2p) is rational and the
    degree-2 minimal polynomial test separates D from II.
    """
    op = m.operator()
    if op.is_zero():
        return "O"
    q0, p1, c2 = _char_poly_3(op)
    if c2:
        raise ContractError("operator is not traceless")
    p, q = p1, q0
    four = GaussRat(4)
    disc = -(four * p * p * p) - GaussRat(27) * q * q
    if disc:
        return "I"
    if not p and not q:
        if (op @ op).is_zero():
            return "N"
        return "III"
    lam = -(GaussRat(3) * q) / (GaussRat(2) * p)
    ident = Matrix.identity(3)
    factor1 = op - ident.scale(lam)
    factor2 = op + ident.scale(GaussRat(2) * lam)
    if (factor1 @ factor2).is_zero():
        return "D"
    return "II"


# ---------------------------------------------------------------------------
# Classification entry points on tensors.
# ---------------------------------------------------------------------------


def classify_complex8(s, e_plus):
    """PetrovClass of a quartic supported in a 2-dimensional e_plus (dim E = 4).

    The output is independent of the chosen e_plus basis: the pattern is a
    root structure and (I^3 : J^2) is weight-0 under GL(2) (I and J scale by
    det^4 and det^6).
    """
    if s.space.dim != 4:
        raise ContractError("complex dim-8 classification needs dim E = 4")
    if e_plus.dim != 2:
        raise ContractError("e_plus must be 2-dimensional")
    if not tensor_in_subspace_power(s, e_plus):
        raise ContractError("S is not supported in e_plus")
    bq = BinaryQuartic.from_symtensor(s, list(e_plus.basis))
    return classify_quartic(bq)


@dataclass(frozen=True)
class RealOrbitClass:
    """Complete invariant of the real orbit: char poly data of the real operator.

    kind "zero" for the zero matrix; otherwise the triple
    (sign p, sign q, q^2/p^3 when p != 0 else None) for t^3 + p t + q, which
    separates orbits exactly because positive scaling acts by
    (p, q) -> (c^2 p, c^3 q).
    """

    kind: str
    sign_p: Optional[int] = None
    sign_q: Optional[int] = None
    ratio: Optional[GaussRat] = None

    def to_dict(self):
        return {
            "kind": self.kind,
            "sign_p": self.sign_p,
            "sign_q": self.sign_q,
            "ratio": str(self.ratio) if self.ratio is not None else None,
        }


def real_orbit_class_from_char(p, q):
    """Orbit class of a real symmetric traceless operator from t^3 + p t + q.

    Positive scaling acts by (p, q) -> (c^2 p, c^3 q), so the complete
    invariant is the sign pair together with q^2/p^3 (the pair alone would
    identify e.g. diag(1,1,-2) with diag(-1,-1,2), which lie in different
    orbits).
    """
    if not p and not q:
        return RealOrbitClass(kind="zero")
    sign_p = p.real_sign()
    sign_q = q.real_sign()
    ratio = (q * q) / (p * p * p) if p else None
    return RealOrbitClass(kind="nonzero", sign_p=sign_p, sign_q=sign_q, ratio=ratio)


def real_class_of_symmetric(a_real, gram=None):
    """RealOrbitClass of a real symmetric 3x3 Gram matrix (Euclidean by default)."""
    g = gram if gram is not None else Matrix.identity(3)
    op = inverse(g) @ a_real
    q0, p1, c2 = _char_poly_3(op)
    if c2:
        raise ContractError("operator is not traceless")
    cls = real_orbit_class_from_char(p1, q0)
    if cls.kind == "zero" and not op.is_zero():
        raise ContractError("real symmetric operator nilpotent but nonzero")
    return cls


def _adapted_j_basis(e_plus, j):
    """Basis (v, jv) of a 2-dimensional j-invariant subspace."""
    v1 = e_plus.basis[0]
    v2 = j.apply(v1)
    if not e_plus.contains(v2):
        raise ContractError("e_plus is not j-invariant")
    return v1, v2


def classify_real8(s, j, e_plus):
    """Complete real orbit invariant of a tau-fixed quartic at m = 1.

    The quartic is rewritten in a j-adapted basis (v, jv) of e_plus and
    carried to the operator on W = S^2 e_plus.  tau-fixedness makes the
    operator commute with the induced real structure on W, so it restricts to
    a real matrix on the real slice spanned by (x^2 + y^2, i(x^2 - y^2), ixy)
    (certified exactly).  There it is self-adjoint for the positive definite
    restriction of the invariant form, hence orthogonally diagonalizable, and
    its characteristic data (p, q) is the complete positive-scaling rotation
    invariant.
    """
    if s.space.dim != 4:
        raise ContractError("real dim-8 classification needs dim E = 4")
    if tau(s, j) != s:
        raise ContractError("quartic is not tau-fixed")
    if s.is_zero():
        return RealOrbitClass(kind="zero")
    if e_plus.dim != 2:
        raise ContractError("e_plus must be 2-dimensional")
    if not tensor_in_subspace_power(s, e_plus):
        raise ContractError("S is not supported in e_plus")
    v1, v2 = _adapted_j_basis(e_plus, j)
    bq = BinaryQuartic.from_symtensor(s, [v1, v2])
    op = quartic_to_matrix(bq).operator()
    i_u = GaussRat(0, 1)
    # columns: r1 = u1 + u3, r2 = i u1 - i u3, r3 = i u2
    b_cols = Matrix([
        [ONE, i_u, ZERO],
        [ZERO, ZERO, i_u],
        [ONE, -i_u, ZERO],
    ])
    op_r = inverse(b_cols) @ op @ b_cols
    for row in op_r.data:
        for e in row:
            if e.im:
                raise ContractError("operator does not restrict to the real slice "
                                    "(quartic not tau-fixed for this j?)")
    q0, p1, c2 = _char_poly_3(op_r)
    if c2:
        raise ContractError("real operator is not traceless")
    cls = real_orbit_class_from_char(p1, q0)
    if cls.kind == "zero" and not op_r.is_zero():
        raise ContractError("self-adjoint operator nilpotent but nonzero (bug signal)")
    return cls


def isomorphic8(s1, s2, mode="complex", j=None):
    """Whether two quartics define isomorphic dim-8 symmetric spaces.

    Classifies both (deriving each Lagrangian from the support) and compares
    the full classification records.
    """
    if mode not in ("complex", "real"):
        raise ContractError("mode must be 'complex' or 'real'")
    records = []
    for s in (s1, s2):
        e_plus = find_lagrangian(s)
        if mode == "complex":
            records.append(classify_complex8(s, e_plus))
        else:
            if j is None:
                raise ContractError("real mode needs a quaternionic structure")
            if s.is_zero():
                records.append((classify_complex8(s, e_plus), RealOrbitClass(kind="zero")))
            else:
                sigma = support(s)
                records.append(
                    (classify_complex8(s, e_plus), classify_real8(s, j, sigma))
                )
    return records[0] == records[1]
