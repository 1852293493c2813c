"""Complex symplectic vector spaces, isotropic/Lagrangian machinery and
quaternionic structures.

Conventions fixed here and inherited by everything downstream:

* (E, omega) is always in standard form: basis p_1..p_n, q_1..q_n with
  omega(p_a, q_b) = delta_ab and omega vanishing on p's and q's separately.
* The pairing <v, omega x> := omega(x, v), so that the coordinate p paired
  against q gives p_q = omega(q, p) = -1.
* A quaternionic structure j is the antilinear map v -> C . conj(v) with
  C conj(C) = -1 and C^t Omega C = conj(Omega); the Hermitian form
  gamma(x, y) = omega(x, j y) then has Gram matrix Omega C.
"""

from .exactnum import (
    ContractError,
    GaussRat,
    Matrix,
    ONE,
    SpanSolver,
    ZERO,
    echelon_basis,
    hermitian_inertia,
    inverse,
    mat_vec,
    rank_kernel,
    solve_linear,
    unit_vec,
    vec_conj,
    zero_vec,
)


class SymplecticSpace:
    """E = C^(2n) with the standard symplectic form and basis p_1..p_n, q_1..q_n."""

    __slots__ = ("n", "dim", "omega", "basis_labels", "_dual_cache")

    def __init__(self, n, label_pair=("p", "q")):
        if n < 1:
            raise ContractError("need n >= 1")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "dim", 2 * n)
        rows = []
        for i in range(2 * n):
            row = [ZERO] * (2 * n)
            if i < n:
                row[n + i] = ONE
            else:
                row[i - n] = -ONE
            rows.append(row)
        object.__setattr__(self, "omega", Matrix(rows))
        a, b = label_pair
        labels = ["%s%d" % (a, i + 1) for i in range(n)] + ["%s%d" % (b, i + 1) for i in range(n)]
        object.__setattr__(self, "basis_labels", tuple(labels))
        object.__setattr__(self, "_dual_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("SymplecticSpace is immutable")

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and self.n == other.n

    def __hash__(self):
        return hash(("SymplecticSpace", self.n))

    def basis_vector(self, k):
        return unit_vec(self.dim, k)

    def dual_vector(self, k):
        """The vector u_k with omega(u_k, .) equal to the k-th coordinate functional."""
        if k not in self._dual_cache:
            omega_t = self.omega.transpose()
            u = solve_linear(omega_t, unit_vec(self.dim, k))
            assert u is not None
            self._dual_cache[k] = u
        return self._dual_cache[k]


def omega_pair(sp, x, y):
    """omega(x, y) = x^t Omega y."""
    if len(x) != sp.dim or len(y) != sp.dim:
        raise ContractError("vector length does not match dim E = %d" % sp.dim)
    s = ZERO
    for a, row in zip(x, sp.omega.data):
        if not a:
            continue
        for b, w in zip(y, row):
            if b and w:
                s = s + a * w * b
    return s


class Subspace:
    """A subspace of E given by an explicit exactly-independent basis."""

    __slots__ = ("ambient", "basis", "_echelon", "_solver")

    def __init__(self, ambient, basis):
        basis = tuple(tuple(v) for v in basis)
        for v in basis:
            if len(v) != ambient.dim:
                raise ContractError("basis vector length does not match ambient")
        ech = echelon_basis(basis)
        if len(ech) != len(basis):
            raise ContractError("subspace basis is not linearly independent")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_echelon", tuple(ech))
        object.__setattr__(self, "_solver", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, [])

    @property
    def dim(self):
        return len(self.basis)

    def echelon(self):
        return self._echelon

    def _get_solver(self):
        if self._solver is None:
            object.__setattr__(self, "_solver", SpanSolver(self._echelon))
        return self._solver

    def contains(self, v):
        return self._get_solver().contains(tuple(v))

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self._echelon == other._echelon
        )

    def __hash__(self):
        return hash((self.ambient, self._echelon))

    def to_strings(self):
        return [[str(c) for c in v] for v in self.basis]


def span(ambient, vectors):
    """Subspace spanned by the vectors, with canonical echelonized basis."""
    return Subspace(ambient, echelon_basis(vectors))


def is_isotropic(sub):
    """True iff omega vanishes on all basis pairs of the subspace."""
    sp = sub.ambient
    b = sub.basis
    for i in range(len(b)):
        for j in range(i + 1, len(b)):
            if omega_pair(sp, b[i], b[j]):
                return False
    return True


def omega_perp(sub):
    """The omega-orthogonal {x : omega(x, v) = 0 for all v in the subspace}."""
    sp = sub.ambient
    if sub.dim == 0:
        return span(sp, [sp.basis_vector(k) for k in range(sp.dim)])
    # omega(x, v) = x^t Omega v ; constraints are rows v^t Omega^t = (Omega v)^t
    rows = [mat_vec(sp.omega, v) for v in sub.basis]
    _, kernel, _ = rank_kernel(Matrix(rows))
    return span(sp, kernel)


def extend_to_lagrangian(sub):
    """Greedy deterministic extension of an isotropic subspace to a Lagrangian.

    Standard basis vectors are tried in order first and kept when they
    preserve isotropy and independence.  For non-coordinate inputs that sweep
    routinely stalls below dimension n, so the completion continues with the
    first new vector of the omega-orthogonal complement of the current span,
    recomputed each round: any such vector extends isotropically, and the
    perp is strictly larger than an isotropic span of dimension < n, so the
    loop always terminates at a Lagrangian.  Fully deterministic either way.
    """
    sp = sub.ambient
    if not is_isotropic(sub):
        raise ContractError("extend_to_lagrangian needs an isotropic subspace")
    current = list(sub.basis)
    for v in (sp.basis_vector(k) for k in range(sp.dim)):
        if len(current) == sp.n:
            break
        if all(not omega_pair(sp, v, w) for w in current):
            if len(echelon_basis(current + [v])) == len(current) + 1:
                current.append(v)
    while len(current) < sp.n:
        cur_span = span(sp, current)
        fresh = None
        for v in omega_perp(cur_span).echelon():
            if not cur_span.contains(v):
                fresh = v
                break
        if fresh is None:
            raise ContractError("failed to complete isotropic subspace to a Lagrangian")
        current.append(fresh)
    out = Subspace(sp, current)
    assert is_isotropic(out)
    return out


def lagrangian_complement(lag):
    """Deterministic Lagrangian complement of a Lagrangian, as a dual basis.

    Returns (subspace, g) where g[i] satisfies omega(f_i, g_j) = delta_ij for
    the given basis f of the input and omega(g_i, g_j) = 0.  Existence is the
    classical completion of a partial symplectic family; each g_k is the
    canonical solution of the corresponding exact linear system.
    """
    sp = lag.ambient
    n = sp.n
    if lag.dim != n or not is_isotropic(lag):
        raise ContractError("lagrangian_complement needs a Lagrangian input")
    f = list(lag.basis)
    g = []
    for k in range(n):
        rows = [mat_vec(sp.omega.transpose(), fi) for fi in f]
        rhs = [ONE if i == k else ZERO for i in range(n)]
        for gj in g:
            rows.append(mat_vec(sp.omega.transpose(), gj))
            rhs.append(ZERO)
        # row v^t of constraints: omega(v, x) = (Omega^t v)^t x
        sol = solve_linear(Matrix(rows), tuple(rhs))
        if sol is None:
            raise ContractError("symplectic completion failed (corrupt input)")
        g.append(sol)
    comp = Subspace(sp, g)
    assert is_isotropic(comp)
    return comp, g


class QuaternionicStructure:
    """Antilinear j(v) = C . conj(v) with j^2 = -1 and omega(jx, jy) = conj(omega(x, y))."""

    __slots__ = ("ambient", "c_matrix")

    def __init__(self, ambient, c_matrix):
        if c_matrix.nrows != ambient.dim or c_matrix.ncols != ambient.dim:
            raise ContractError("c_matrix must be %dx%d" % (ambient.dim, ambient.dim))
        c = c_matrix
        if not (c @ c.conj() + Matrix.identity(ambient.dim)).is_zero():
            raise ContractError("j^2 = -1 fails: C conj(C) != -I")
        if c.transpose() @ ambient.omega @ c != ambient.omega.conj():
            raise ContractError("omega compatibility fails: C^t Omega C != conj(Omega)")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "c_matrix", c)

    def __setattr__(self, name, value):
        raise AttributeError("QuaternionicStructure is immutable")

    def apply(self, v):
        return mat_vec(self.c_matrix, vec_conj(v))

    def maps_subspace_to_itself(self, sub):
        return all(sub.contains(self.apply(v)) for v in sub.basis)

    def to_strings(self):
        return self.c_matrix.to_strings()


def standard_quaternionic(sp, lagrangian_split=None):
    """The standard compatible quaternionic structure on (E, omega).

    Without a split: j p_k = q_k, j q_k = -p_k, whose gamma is positive
    definite (this is j_H when n = 1).  With a Lagrangian split (E_+, E_-) and
    dim E = 4m: j preserves both halves, pairing consecutive coordinates by
    (z1, z2) -> (-conj(z2), conj(z1)) in omega-dual-adapted bases.
    """
    dim = sp.dim
    if lagrangian_split is None:
        # columns of C are j(basis): j p_k = q_k, j q_k = -p_k
        rows = []
        for i in range(dim):
            row = [ZERO] * dim
            if i < sp.n:
                row[sp.n + i] = -ONE
            else:
                row[i - sp.n] = ONE
            rows.append(row)
        return QuaternionicStructure(sp, Matrix(rows))

    e_plus, e_minus = lagrangian_split
    if dim % 4 != 0:
        raise ContractError("no compatible quaternionic structure for this split")
    m2 = dim // 2
    if e_plus.dim != m2 or e_minus.dim != m2:
        raise ContractError("split parts must each have dimension %d" % m2)
    if not (is_isotropic(e_plus) and is_isotropic(e_minus)):
        raise ContractError("split parts must be Lagrangian")
    f = list(e_plus.basis)
    # normalize the minus-side basis to be omega-dual to f
    pairing = Matrix([[omega_pair(sp, fi, gj) for gj in e_minus.basis] for fi in f])
    try:
        pinv = inverse(pairing)
    except ContractError:
        raise ContractError("split parts are not complementary")
    g = []
    for j in range(m2):
        col = pinv.col(j)
        acc = zero_vec(dim)
        for c_coef, gv in zip(col, e_minus.basis):
            acc = tuple(a + c_coef * b for a, b in zip(acc, gv))
        g.append(acc)
    basis_cols = Matrix([list(v) for v in (f + g)]).transpose()
    k_rows = []
    for i in range(dim):
        row = [ZERO] * dim
        half = 0 if i < m2 else m2
        local = i - half
        if local % 2 == 0:
            row[half + local + 1] = ONE
        else:
            row[half + local - 1] = -ONE
        k_rows.append(row)
    # antilinear pairing map in adapted coordinates: columns are j(adapted basis)
    k = Matrix(k_rows).transpose()
    c = basis_cols @ k @ inverse(basis_cols).conj()
    return QuaternionicStructure(sp, c)


def gamma_gram(j):
    """Gram matrix of gamma(x, y) = omega(x, j y); always Hermitian for valid j."""
    return j.ambient.omega @ j.c_matrix


def gamma_signature(j):
    """Exact inertia (positive, negative, null) of gamma; null must be 0."""
    p, n, z = hermitian_inertia(gamma_gram(j))
    if z:
        raise ContractError("gamma is degenerate: corrupted quaternionic structure")
    return p, n, z


# ---------------------------------------------------------------------------
# The fixed 2-dimensional space H with omega_H(h1, h2) = 1 and the unique j_H
# making gamma_H positive definite.
# ---------------------------------------------------------------------------

H_SPACE = SymplecticSpace(1, label_pair=("h", "h'"))
J_H = standard_quaternionic(H_SPACE)

# j_H h1 = h2, j_H h2 = -h1 encoded on coordinates (used by rho on H tensor E)
_JH_IMAGE = (mat_vec(J_H.c_matrix, unit_vec(2, 0)), mat_vec(J_H.c_matrix, unit_vec(2, 1)))


class RealStructureRho:
    """rho(h tensor e) = j_H h tensor j_E e on H tensor E; an antilinear involution.

    H tensor E coordinates are dicts {(a, k): GaussRat} with a in {0, 1} the
    h-index and k the E-index.
    """

    __slots__ = ("j_h", "j_e")

    def __init__(self, j_e, j_h=None):
        object.__setattr__(self, "j_h", j_h if j_h is not None else J_H)
        object.__setattr__(self, "j_e", j_e)

    def __setattr__(self, name, value):
        raise AttributeError("RealStructureRho is immutable")

    def apply(self, coords):
        dim = self.j_e.ambient.dim
        ch = self.j_h.c_matrix
        ce = self.j_e.c_matrix
        out = {}
        for (a, k), c in coords.items():
            cc = c.conjugate()
            if not cc:
                continue
            for b in range(2):
                ha = ch.entry(b, a)
                if not ha:
                    continue
                for l in range(dim):
                    ee = ce.entry(l, k)
                    if not ee:
                        continue
                    key = (b, l)
                    val = out.get(key, ZERO) + cc * ha * ee
                    if val:
                        out[key] = val
                    elif key in out:
                        del out[key]
        return out


def subspace_to_json(sub):
    return {"dim_ambient_half": sub.ambient.n, "basis": sub.to_strings()}


def subspace_from_json(data, ambient=None):
    sp = ambient if ambient is not None else SymplecticSpace(int(data["dim_ambient_half"]))
    basis = [tuple(GaussRat.parse(c) for c in row) for row in data["basis"]]
    return Subspace(sp, basis)


def quaternionic_to_json(j):
    return {"dim_ambient_half": j.ambient.n, "c_matrix": j.to_strings()}


def quaternionic_from_json(data, ambient=None):
    sp = ambient if ambient is not None else SymplecticSpace(int(data["dim_ambient_half"]))
    return QuaternionicStructure(sp, Matrix.from_strings(data["c_matrix"]))
