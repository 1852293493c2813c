"""Symmetric tensors S^dE as homogeneous polynomials, omega-contractions, the
sp(E) = S^2E identification, the derivation action, supports and the real
structure tau.

A tensor is stored as a multi-index coefficient table: the monomial alpha
stands for the product of basis "coordinate" functions e_k^alpha_k on E^*.
The three pinned conventions everything else hangs on:

* p_q = <p, omega q> = omega(q, p) = -1  (pairing direction),
* T_x = (1/d) * directional derivative of T along omega(x, .), so that
  S_{p,q} = -(1/4) mu p^2 for S = p^3(lambda p + mu q + w0) + p^2 B + pC + D,
* a quadratic B acts as the endomorphism x -> B_x, and A in sp(E) acts on
  tensors as MINUS the derivation extending A, so that
  pq . (lambda p^4 + mu p^3 q) = -2 lambda p^4 - mu p^3 q.
"""

from fractions import Fraction
from itertools import combinations_with_replacement

from .exactnum import (
    ContractError,
    GaussRat,
    Matrix,
    ONE,
    ZERO,
    mat_vec,
    vec_is_zero,
)
from .symplectic import omega_perp, span


class SymTensor:
    """Homogeneous degree-d element of S^dE as a sparse multi-index table."""

    __slots__ = ("space", "degree", "coeffs")

    def __init__(self, space, degree, coeffs):
        if degree < 0:
            raise ContractError("degree must be nonnegative")
        clean = {}
        for alpha, c in coeffs.items():
            if len(alpha) != space.dim or any(a < 0 for a in alpha):
                raise ContractError("bad multi-index %r" % (alpha,))
            if sum(alpha) != degree:
                raise ContractError("multi-index %r has degree != %d" % (alpha, degree))
            if c:
                clean[tuple(alpha)] = c
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymTensor is immutable")

    @classmethod
    def zero(cls, space, degree):
        return cls(space, degree, {})

    @classmethod
    def monomial(cls, space, alpha, coeff=ONE):
        return cls(space, sum(alpha), {tuple(alpha): coeff})

    @classmethod
    def linear(cls, space, vector):
        """The vector v as the degree-1 polynomial sum v_k e_k."""
        coeffs = {}
        for k, c in enumerate(vector):
            if c:
                alpha = [0] * space.dim
                alpha[k] = 1
                coeffs[tuple(alpha)] = c
        return cls(space, 1, coeffs)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (
            isinstance(other, SymTensor)
            and self.space == other.space
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.space, self.degree, tuple(sorted(self.coeffs.items(), key=lambda kv: kv[0]))))

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            v = out.get(a, ZERO) + c
            if v:
                out[a] = v
            elif a in out:
                del out[a]
        return SymTensor(self.space, self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SymTensor(self.space, self.degree, {a: -c for a, c in self.coeffs.items()})

    def scale(self, c):
        if not c:
            return SymTensor.zero(self.space, self.degree)
        return SymTensor(self.space, self.degree, {a: c * v for a, v in self.coeffs.items()})

    def __mul__(self, other):
        """Polynomial product (symmetric product of tensors)."""
        if self.space != other.space:
            raise ContractError("tensor product across different spaces")
        out = {}
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                key = tuple(x + y for x, y in zip(a, b))
                v = out.get(key, ZERO) + ca * cb
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return SymTensor(self.space, self.degree + other.degree, out)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ContractError("tensor power needs a nonnegative int")
        result = SymTensor.monomial(self.space, (0,) * self.space.dim)
        for _ in range(k):
            result = result * self
        return result

    def _check_compatible(self, other):
        if self.space != other.space or self.degree != other.degree:
            raise ContractError("tensors live in different S^dE")

    def __repr__(self):
        if not self.coeffs:
            return "SymTensor(0; degree %d)" % self.degree
        labels = self.space.basis_labels
        parts = []
        for alpha in sorted(self.coeffs, reverse=True):
            mono = "*".join(
                (labels[k] if e == 1 else "%s^%d" % (labels[k], e))
                for k, e in enumerate(alpha)
                if e
            ) or "1"
            parts.append("(%s)*%s" % (self.coeffs[alpha], mono))
        return " + ".join(parts)


def contract(t, x):
    """omega-contraction T_x = (1/d) * d_{omega x} T, a tensor of degree d-1."""
    if t.degree < 1:
        raise ContractError("cannot contract a degree-0 tensor")
    sp = t.space
    # d_{omega x} e_k = omega(x, e_k) = (x^t Omega)_k
    w = mat_vec(sp.omega.transpose(), tuple(x))
    inv_d = GaussRat(Fraction(1, t.degree))
    out = {}
    for alpha, c in t.coeffs.items():
        for k, e in enumerate(alpha):
            if not e or not w[k]:
                continue
            key = alpha[:k] + (e - 1,) + alpha[k + 1:]
            v = out.get(key, ZERO) + GaussRat(e) * w[k] * c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return SymTensor(sp, t.degree - 1, out).scale(inv_d)


def eval_on_vectors(t, xs):
    """Full polarization M_t(omega x_1, ..., omega x_d); symmetric in the xs.

    Computed by iterated contraction, which agrees with the inclusion-
    exclusion polarization because each contraction is one slot of the unique
    symmetric multilinear form with diagonal t.
    """
    if len(xs) != t.degree:
        raise ContractError("eval_on_vectors needs exactly %d vectors" % t.degree)
    cur = t
    for x in xs:
        cur = contract(cur, x)
    return cur.coeffs.get((0,) * t.space.dim, ZERO)


def endo_of_quadratic(b):
    """The endomorphism x -> B_x attached to a quadratic B under sp(E) = S^2E."""
    if b.degree != 2:
        raise ContractError("endo_of_quadratic needs degree 2")
    sp = b.space
    cols = []
    for k in range(sp.dim):
        ck = contract(b, sp.basis_vector(k))
        col = [ZERO] * sp.dim
        for alpha, c in ck.coeffs.items():
            col[alpha.index(1)] = c
        cols.append(col)
    return Matrix(cols).transpose()


def is_in_sp(space, a):
    """True iff omega(Ax, y) + omega(x, Ay) = 0 exactly."""
    return (a.transpose() @ space.omega + space.omega @ a).is_zero()


def sp_action(a, t):
    """Action of A in sp(E) on a tensor: minus the derivation extending A.

    On a monomial: A . e^alpha = - sum_k alpha_k A_{lk} e^(alpha - e_k + e_l).
    This is the sign that makes the pinned family identities hold:
    pq . (lambda p^4 + mu p^3 q) = -2 lambda p^4 - mu p^3 q and
    p^2 . S = mu p^4.
    """
    space = t.space
    if a.nrows != space.dim or a.ncols != space.dim:
        raise ContractError("endomorphism has wrong size")
    if not is_in_sp(space, a):
        raise ContractError("endomorphism is not in sp(E)")
    out = {}
    for alpha, c in t.coeffs.items():
        for k, e in enumerate(alpha):
            if not e:
                continue
            ec = GaussRat(e) * c
            for l in range(space.dim):
                alk = a.entry(l, k)
                if not alk:
                    continue
                key = list(alpha)
                key[k] -= 1
                key[l] += 1
                key = tuple(key)
                v = out.get(key, ZERO) - ec * alk
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
    return SymTensor(space, t.degree, out)


def double_contraction_endo(s, e, f):
    """S_{e,f} as an endomorphism of E; symmetric and bilinear in (e, f)."""
    if s.degree != 4:
        raise ContractError("double_contraction_endo needs degree 4")
    return endo_of_quadratic(contract(contract(s, e), f))


def support(t):
    """The support: span of all (d-1)-fold contractions read as vectors in E.

    Standard-basis tuples suffice by multilinearity; the result comes back
    with an echelonized basis so it is deterministic.
    """
    if t.degree < 2:
        raise ContractError("support needs degree >= 2")
    sp = t.space
    vectors = []
    basis = [sp.basis_vector(k) for k in range(sp.dim)]
    for combo in combinations_with_replacement(range(sp.dim), t.degree - 2):
        cur = t
        for k in combo:
            cur = contract(cur, basis[k])
        endo = endo_of_quadratic(cur)
        for k in range(sp.dim):
            col = endo.col(k)
            if not vec_is_zero(col):
                vectors.append(col)
    return span(sp, vectors)


def tau(t, j):
    """The real structure (tau T)(x_1..x_d) = conj(T(j x_1, ..., j x_d)).

    Reassembled through the polarization (not by conjugating coefficients), so
    it is correct for quaternionic structures not aligned with the basis.
    Antilinear and involutive on even degrees.
    """
    if t.degree % 2:
        raise ContractError("tau needs even degree")
    sp = t.space
    d = t.degree
    if d == 0:
        c = t.coeffs.get((0,) * sp.dim, ZERO)
        return SymTensor(sp, 0, {(0,) * sp.dim: c.conjugate()} if c else {})
    j_dual = [j.apply(sp.dual_vector(k)) for k in range(sp.dim)]
    fact_d = 1
    for i in range(2, d + 1):
        fact_d *= i
    out = {}

    def sweep(node, start, alpha, depth):
        if depth == d:
            c = node.coeffs.get((0,) * sp.dim, ZERO)
            if c:
                beta_fact = 1
                for e in alpha:
                    for i in range(2, e + 1):
                        beta_fact *= i
                w = GaussRat(Fraction(fact_d, beta_fact))
                key = tuple(alpha)
                out[key] = c.conjugate() * w
            return
        if node.is_zero():
            return
        for k in range(start, sp.dim):
            alpha[k] += 1
            sweep(contract(node, j_dual[k]), k, alpha, depth + 1)
            alpha[k] -= 1

    sweep(t, 0, [0] * sp.dim, 0)
    return SymTensor(sp, d, {a: c for a, c in out.items() if c})


def tensor_in_subspace_power(t, sub):
    """True iff t lies in S^d(sub): all omega-perp contractions of t vanish."""
    for v in omega_perp(sub).echelon():
        if not contract(t, v).is_zero():
            return False
    return True


def transform(t, m):
    """Push-forward of t along the invertible linear map with matrix m.

    Each generator e_k is substituted by the linear form of the k-th column
    of m, i.e. (m . t)(v_1 ... v_d) = (m v_1) ... (m v_d) on decomposables.
    """
    sp = t.space
    if m.nrows != sp.dim or m.ncols != sp.dim:
        raise ContractError("transform matrix has wrong size")
    images = [SymTensor.linear(sp, m.col(k)) for k in range(sp.dim)]
    power_cache = {}

    def image_power(k, e):
        if (k, e) not in power_cache:
            power_cache[(k, e)] = images[k] ** e
        return power_cache[(k, e)]

    result = SymTensor.zero(sp, t.degree)
    for alpha, c in t.coeffs.items():
        term = SymTensor.monomial(sp, (0,) * sp.dim, c)
        for k, e in enumerate(alpha):
            if e:
                term = term * image_power(k, e)
        result = result + term
    return result


def restrict_to_basis(t, vectors):
    """Coefficients of t in the symmetric powers of the given vectors.

    Solves the exact linear system expressing t as sum_b c_b * prod v_i^b_i
    over multi-indices b of degree t.degree; ContractError when t is not in
    the span (i.e. not supported in the subspace).
    """
    sp = t.space
    r = len(vectors)
    forms = [SymTensor.linear(sp, v) for v in vectors]
    betas = []
    for combo in combinations_with_replacement(range(r), t.degree):
        beta = [0] * r
        for k in combo:
            beta[k] += 1
        betas.append(tuple(beta))
    monomials = sorted(set(list(t.coeffs.keys()) + [a for b in betas for a in _expand(forms, b).coeffs]))
    index = {a: i for i, a in enumerate(monomials)}
    cols = []
    for b in betas:
        poly = _expand(forms, b)
        col = [ZERO] * len(monomials)
        for a, c in poly.coeffs.items():
            col[index[a]] = c
        cols.append(col)
    rhs = [ZERO] * len(monomials)
    for a, c in t.coeffs.items():
        rhs[index[a]] = c
    from .exactnum import solve_linear

    sol = solve_linear(Matrix(cols).transpose(), tuple(rhs))
    if sol is None:
        raise ContractError("tensor is not supported in the given subspace")
    # certify: the parametrized expansion reproduces t exactly
    check = SymTensor.zero(sp, t.degree)
    for b, c in zip(betas, sol):
        if c:
            check = check + _expand(forms, b).scale(c)
    if check != t:
        raise ContractError("restriction certification failed")
    return dict(zip(betas, sol))


def _expand(forms, beta):
    out = SymTensor.monomial(forms[0].space, (0,) * forms[0].space.dim)
    for k, e in enumerate(beta):
        for _ in range(e):
            out = out * forms[k]
    return out


# ---------------------------------------------------------------------------
# Quartic file format.
# ---------------------------------------------------------------------------


def quartic_to_dict(t):
    if t.degree != 4:
        raise ContractError("quartic serialization needs degree 4")
    coeffs = [
        {"monomial": list(alpha), "value": str(c)}
        for alpha, c in sorted(t.coeffs.items(), key=lambda kv: kv[0])
    ]
    return {"n": t.space.n, "degree": 4, "coeffs": coeffs}


def quartic_from_dict(data, space=None):
    from .symplectic import SymplecticSpace

    try:
        n = int(data["n"])
        degree = int(data["degree"])
        raw = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ContractError("malformed quartic record: %s" % exc)
    if degree != 4:
        raise ContractError("quartic file must have degree 4")
    sp = space if space is not None else SymplecticSpace(n)
    if sp.n != n:
        raise ContractError("quartic file dimension does not match the space")
    coeffs = {}
    for item in raw:
        alpha = tuple(int(a) for a in item["monomial"])
        if len(alpha) != sp.dim or any(a < 0 for a in alpha) or sum(alpha) != 4:
            raise ContractError("bad monomial %r" % (alpha,))
        value = GaussRat.parse(item["value"])
        if alpha in coeffs:
            raise ContractError("duplicate monomial %r" % (alpha,))
        if value:
            coeffs[alpha] = value
    return SymTensor(sp, 4, coeffs)
