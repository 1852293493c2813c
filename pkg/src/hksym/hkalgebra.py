"""Construction and verification of the symmetric Lie algebra g = h + H(x)E
attached to an invariant quartic, with holonomy, curvature, support-based flat
splitting and the automorphism algebra.

The bracket data is the one the quartic dictates:
  [A, B]           = matrix commutator               (h with h),
  [A, h(x)e]       = h (x) Ae                        (h with m),
  [h(x)e, h'(x)e'] = omega_H(h, h') S_{e,e'}         (m with m),
and the metric on m is the Gram matrix of omega_H (x) omega_E.
"""

from dataclasses import dataclass
from typing import Optional

from .exactnum import (
    ContractError,
    Matrix,
    ONE,
    SpanSolver,
    ZERO,
    echelon_basis,
    hermitian_inertia,
    inverse,
    rank_kernel,
)
from .symplectic import (
    Subspace,
    extend_to_lagrangian,
    is_isotropic,
    lagrangian_complement,
    omega_pair,
    span,
)
from .symtensor import (
    double_contraction_endo,
    is_in_sp,
    sp_action,
    support,
    tensor_in_subspace_power,
)


class NotHyperKahlerError(Exception):
    """The quartic fails the invariance condition; carries the witness pair."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__("quartic is not invariant under its double contractions; "
                         "witness basis pair %s" % (witness,))


class TheoremViolationError(Exception):
    """An internal consistency guarantee failed (bug signal, not a data state)."""


def _flatten(m):
    return tuple(e for row in m.data for e in row)


def _unflatten(v, n):
    return Matrix([list(v[i * n:(i + 1) * n]) for i in range(n)])


def commutator(a, b):
    return a @ b - b @ a


@dataclass(frozen=True)
class HolonomyData:
    basis: tuple
    dimension: int
    is_abelian: bool
    is_solvable: bool
    derived_series_lengths: tuple


def check_invariance(s):
    """Whether S_{e,e'} . S = 0 for all basis pairs (sufficient by bilinearity).

    Returns (True, None) or (False, witness) with the first violating pair of
    basis indices in lexicographic order.
    """
    if s.degree != 4:
        raise ContractError("invariance check needs a quartic")
    sp = s.space
    basis = [sp.basis_vector(k) for k in range(sp.dim)]
    for a in range(sp.dim):
        for b in range(a, sp.dim):
            endo = double_contraction_endo(s, basis[a], basis[b])
            if not sp_action(endo, s).is_zero():
                return False, (a, b)
    return True, None


def _derived_series(basis_mats):
    """Dimensions of the derived series of the span of the given matrices."""
    dims = []
    current = list(basis_mats)
    while True:
        dims.append(len(current))
        if not current:
            break
        n = current[0].nrows
        commutators = []
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                c = commutator(current[i], current[j])
                if not c.is_zero():
                    commutators.append(_flatten(c))
        nxt = [_unflatten(v, n) for v in echelon_basis(commutators)]
        if len(nxt) == len(current):
            dims.append(len(nxt))
            break
        current = nxt
    return tuple(dims)


def holonomy(s):
    """Holonomy data: the span of all double contractions S_{e,e'} in sp(E)."""
    if s.degree != 4:
        raise ContractError("holonomy needs a quartic")
    sp = s.space
    basis = [sp.basis_vector(k) for k in range(sp.dim)]
    flats = []
    for a in range(sp.dim):
        for b in range(a, sp.dim):
            endo = double_contraction_endo(s, basis[a], basis[b])
            if not endo.is_zero():
                flats.append(_flatten(endo))
    ech = echelon_basis(flats)
    mats = tuple(_unflatten(v, sp.dim) for v in ech)
    abelian = all(
        commutator(mats[i], mats[j]).is_zero()
        for i in range(len(mats))
        for j in range(i + 1, len(mats))
    )
    series = _derived_series(mats)
    solvable = series[-1] == 0 if series else True
    return HolonomyData(
        basis=mats,
        dimension=len(mats),
        is_abelian=abelian,
        is_solvable=solvable,
        derived_series_lengths=series,
    )


# ---------------------------------------------------------------------------
# Lie algebra models.
# ---------------------------------------------------------------------------


class LieAlgebraModel:
    """Finite-dimensional algebra with labeled basis, exact structure constants
    and an invariant metric on the m-part.

    Basis order is h-part then m-part; brackets[a][b] is the coordinate dict
    of [x_a, x_b] over the full basis.
    """

    __slots__ = ("basis_labels", "dim_h", "dim_m", "brackets", "metric_on_m")

    def __init__(self, basis_labels, dim_h, dim_m, brackets, metric_on_m):
        self.basis_labels = tuple(basis_labels)
        self.dim_h = dim_h
        self.dim_m = dim_m
        if len(self.basis_labels) != dim_h + dim_m:
            raise ContractError("label count does not match dim h + dim m")
        self.brackets = brackets
        self.metric_on_m = metric_on_m

    @property
    def dim(self):
        return self.dim_h + self.dim_m

    def bracket(self, a, b):
        return self.brackets[a][b]

    def bracket_vectors(self, u, v):
        """Bilinear extension of the bracket to coordinate dicts."""
        out = {}
        for a, ca in u.items():
            for b, cb in v.items():
                f = ca * cb
                if not f:
                    continue
                for k, c in self.brackets[a][b].items():
                    val = out.get(k, ZERO) + f * c
                    if val:
                        out[k] = val
                    elif k in out:
                        del out[k]
        return out


def _dict_neg(d):
    return {k: -v for k, v in d.items()}


def verify_antisymmetry(model):
    for a in range(model.dim):
        for b in range(a, model.dim):
            if model.brackets[b][a] != _dict_neg(model.brackets[a][b]):
                return False, (model.basis_labels[a], model.basis_labels[b])
    return True, None


def verify_grading(model):
    """[h,h] in h, [h,m] in m, [m,m] in h, read off the structure constants."""
    dh = model.dim_h
    for a in range(model.dim):
        for b in range(model.dim):
            both_h = a < dh and b < dh
            both_m = a >= dh and b >= dh
            for k in model.brackets[a][b]:
                if (both_h or both_m) and k >= dh:
                    return False, (model.basis_labels[a], model.basis_labels[b])
                if not (both_h or both_m) and k < dh:
                    return False, (model.basis_labels[a], model.basis_labels[b])
    return True, None


def verify_jacobi(model):
    """Exhaustive exact Jacobi check; returns (ok, witness_triple_labels)."""
    dim = model.dim
    for a in range(dim):
        ua = {a: ONE}
        for b in range(a + 1, dim):
            ub = {b: ONE}
            ab = model.brackets[a][b]
            for c in range(b + 1, dim):
                uc = {c: ONE}
                acc = dict(model.bracket_vectors(ua, model.brackets[b][c]))
                for k, v in model.bracket_vectors(ub, _dict_neg(model.brackets[a][c])).items():
                    val = acc.get(k, ZERO) + v
                    if val:
                        acc[k] = val
                    elif k in acc:
                        del acc[k]
                for k, v in model.bracket_vectors(uc, ab).items():
                    val = acc.get(k, ZERO) + v
                    if val:
                        acc[k] = val
                    elif k in acc:
                        del acc[k]
                if acc:
                    return False, (
                        model.basis_labels[a],
                        model.basis_labels[b],
                        model.basis_labels[c],
                    )
    return True, None


def verify_metric(model):
    """Metric on m must be symmetric, nondegenerate and h-invariant."""
    g = model.metric_on_m
    if g.nrows != model.dim_m or g.ncols != model.dim_m:
        return False, "metric size"
    if g != g.transpose():
        return False, "metric not symmetric"
    rank, _, _ = rank_kernel(g)
    if rank != model.dim_m:
        return False, "metric degenerate"
    dh = model.dim_h
    for a in range(dh):
        for x in range(model.dim_m):
            ax = model.brackets[a][dh + x]  # coordinates in m-part
            for y in range(model.dim_m):
                ay = model.brackets[a][dh + y]
                s = ZERO
                for k, c in ax.items():
                    s = s + c * g.entry(k - dh, y)
                for k, c in ay.items():
                    s = s + c * g.entry(x, k - dh)
                if s:
                    return False, "metric not h-invariant at (%d, %d, %d)" % (a, x, y)
    return True, None


def verify_model(model):
    """All LieAlgebraModel invariants; raises TheoremViolationError on failure."""
    for check, name in (
        (verify_antisymmetry, "antisymmetry"),
        (verify_grading, "grading"),
        (verify_jacobi, "jacobi"),
        (verify_metric, "metric"),
    ):
        ok, witness = check(model)
        if not ok:
            raise TheoremViolationError("%s failed: %s" % (name, witness))
    return True


def build_complex_algebra(s, _invariance_known=False, _holonomy=None):
    """The complex symmetric decomposition g = h + H(x)E for an invariant quartic."""
    if not _invariance_known:
        ok, witness = check_invariance(s)
        if not ok:
            raise NotHyperKahlerError(witness)
    sp = s.space
    dim_e = sp.dim
    hol = _holonomy if _holonomy is not None else holonomy(s)
    dim_h = hol.dimension
    dim_m = 2 * dim_e
    labels = ["k%d" % (i + 1) for i in range(dim_h)]
    for a in (1, 2):
        labels += ["h%d*%s" % (a, sp.basis_labels[k]) for k in range(dim_e)]
    solver = SpanSolver([_flatten(m) for m in hol.basis])

    def h_coords(mat):
        c = solver.coords(_flatten(mat))
        if c is None:
            raise TheoremViolationError("bracket value escaped the holonomy span")
        return {i: v for i, v in enumerate(c) if v}

    dim = dim_h + dim_m
    brackets = [[{} for _ in range(dim)] for _ in range(dim)]

    def put(a, b, coords):
        brackets[a][b] = coords
        brackets[b][a] = _dict_neg(coords)

    # [h, h]: matrix commutators
    for i in range(dim_h):
        for j in range(i + 1, dim_h):
            put(i, j, h_coords(commutator(hol.basis[i], hol.basis[j])))
    # [h, m]: A . (h_a (x) e_k) = h_a (x) A e_k
    for i in range(dim_h):
        for a in range(2):
            for k in range(dim_e):
                col = hol.basis[i].col(k)
                coords = {
                    dim_h + a * dim_e + l: c for l, c in enumerate(col) if c
                }
                put(i, dim_h + a * dim_e + k, coords)
    # [m, m]: omega_H(h_a, h_b) S_{e_k, e_l}
    endo_table = {}
    basis = [sp.basis_vector(k) for k in range(dim_e)]
    for k in range(dim_e):
        for l in range(k, dim_e):
            endo_table[(k, l)] = double_contraction_endo(s, basis[k], basis[l])
    for k in range(dim_e):
        for l in range(dim_e):
            endo = endo_table[(k, l) if k <= l else (l, k)]
            coords = h_coords(endo) if not endo.is_zero() else {}
            # omega_H(h1, h2) = 1
            idx1 = dim_h + 0 * dim_e + k
            idx2 = dim_h + 1 * dim_e + l
            put(idx1, idx2, coords)
    # m-m brackets with equal H-slot are zero (omega_H(h_a, h_a) = 0): already {}

    metric_rows = []
    for a in range(2):
        for k in range(dim_e):
            row = []
            for b in range(2):
                wh = omega_pair_h(a, b)
                for l in range(dim_e):
                    row.append(wh * sp.omega.entry(k, l) if wh else ZERO)
            metric_rows.append(row)
    metric = Matrix(metric_rows)

    model = LieAlgebraModel(labels, dim_h, dim_m, brackets, metric)
    verify_model(model)
    return model


def omega_pair_h(a, b):
    """omega_H on the fixed basis (h1, h2)."""
    if a == b:
        return ZERO
    return ONE if (a, b) == (0, 1) else -ONE


def curvature_ricci(s, model=None):
    """Exact Ricci trace-form on m and the metric-invariance verdict.

    Ric(x, y) = trace(z -> R(z, x) y) with R(x, y) z = -[[x, y], z]; the
    bracket is the curvature, so everything reads off structure constants.
    """
    if model is None:
        model = build_complex_algebra(s)
    dh, dm = model.dim_h, model.dim_m
    ric = []
    for x in range(dm):
        row = []
        for y in range(dm):
            trace = ZERO
            for z in range(dm):
                zx = model.brackets[dh + z][dh + x]
                if not zx:
                    continue
                inner = model.bracket_vectors(zx, {dh + y: ONE})
                c = inner.get(dh + z)
                if c:
                    trace = trace - c
            row.append(trace)
        ric.append(row)
    ok, _ = verify_metric(model)
    return Matrix(ric), ok


def find_lagrangian(s, _invariance_known=False):
    """A Lagrangian E_+ with S in S^4 E_+, from the support of S.

    Requires invariance; raises TheoremViolationError when the support is not
    isotropic or the membership certificate fails (which the structure theorem
    for invariant quartics rules out).
    """
    if not _invariance_known:
        ok, witness = check_invariance(s)
        if not ok:
            raise NotHyperKahlerError(witness)
    sigma = support(s)
    if not is_isotropic(sigma):
        raise TheoremViolationError("support of an invariant quartic is not isotropic")
    e_plus = extend_to_lagrangian(sigma)
    if not tensor_in_subspace_power(s, e_plus):
        raise TheoremViolationError("S is not contained in S^4 of the found Lagrangian")
    return e_plus


def flat_decomposition(s, _invariance_known=False):
    """Split E = E^1 (+) E^0 with the flat directions in E^0.

    E^1_+ is the support, E^0_+ a deterministic complement of it inside E_+,
    and the minus-halves are cut out of the dual Lagrangian complement by the
    annihilator conditions.  Returns (e1, e0, flat_complex_dim) where the flat
    complex dimension counts the H (x) E^0 block, i.e. 2 dim E^0.
    """
    e_plus = find_lagrangian(s, _invariance_known=_invariance_known)
    sp = s.space
    sigma = support(s)
    # adapted basis of E_+: support first, then the deterministic completion
    adapted = list(sigma.echelon())
    for v in e_plus.echelon():
        if len(echelon_basis(adapted + [v])) == len(adapted) + 1:
            adapted.append(v)
    e_plus_adapted = Subspace(sp, adapted)
    _, g = lagrangian_complement(e_plus_adapted)
    r = sigma.dim
    e1_vectors = adapted[:r] + g[:r]
    e0_vectors = adapted[r:] + g[r:]
    e1 = Subspace(sp, e1_vectors) if e1_vectors else Subspace.zero(sp)
    e0 = Subspace(sp, e0_vectors) if e0_vectors else Subspace.zero(sp)
    # certificates: complementary, omega-nondegenerate, S supported in e1_+
    if e1.dim + e0.dim != sp.dim:
        raise TheoremViolationError("flat splitting is not complementary")
    if len(echelon_basis(list(e1.basis) + list(e0.basis))) != sp.dim:
        raise TheoremViolationError("flat splitting overlaps")
    for part in (e1, e0):
        if part.dim:
            gram = Matrix([[omega_pair(sp, u, v) for v in part.basis] for u in part.basis])
            rank, _, _ = rank_kernel(gram)
            if rank != part.dim:
                raise TheoremViolationError("flat splitting piece is omega-degenerate")
    if sigma.dim and not tensor_in_subspace_power(s, span(sp, adapted[:r])):
        raise TheoremViolationError("S not supported in E^1_+")
    return e1, e0, 2 * e0.dim


def embed_gl_eplus(e_plus, a_small):
    """Canonical embedding gl(E_+) -> sp(E): A on E_+, -A^t on the dual complement.

    The complement is the deterministic dual Lagrangian (omega(f_i, g_j) =
    delta_ij); in those bases the extension is blockdiag(A, -A^t), which is
    verified to preserve omega before returning.
    """
    sp = e_plus.ambient
    n = e_plus.dim
    if a_small.nrows != n or a_small.ncols != n:
        raise ContractError("gl(E_+) matrix has wrong size")
    _, g = lagrangian_complement(e_plus)
    cols = [list(v) for v in e_plus.basis] + [list(v) for v in g]
    basis_mat = Matrix(cols).transpose()
    neg_at = -a_small.transpose()
    block = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            block[i][j] = a_small.entry(i, j)
            block[n + i][n + j] = neg_at.entry(i, j)
    embedded = basis_mat @ Matrix(block) @ inverse(basis_mat)
    if not is_in_sp(sp, embedded):
        raise TheoremViolationError("gl(E_+) embedding failed to preserve omega")
    return embedded


def embed_gl_group(e_plus, t_small):
    """Extension of an invertible T in GL(E_+) to Sp(E): blockdiag(T, (T^t)^-1)
    in the omega-dual-adapted bases.  Symplectic by construction; verified."""
    sp = e_plus.ambient
    n = e_plus.dim
    if t_small.nrows != n or t_small.ncols != n:
        raise ContractError("GL(E_+) matrix has wrong size")
    _, g = lagrangian_complement(e_plus)
    cols = [list(v) for v in e_plus.basis] + [list(v) for v in g]
    basis_mat = Matrix(cols).transpose()
    dual_block = inverse(t_small.transpose())
    block = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            block[i][j] = t_small.entry(i, j)
            block[n + i][n + j] = dual_block.entry(i, j)
    embedded = basis_mat @ Matrix(block) @ inverse(basis_mat)
    if embedded.transpose() @ sp.omega @ embedded != sp.omega:
        raise TheoremViolationError("GL(E_+) group embedding is not symplectic")
    return embedded


def compute_aut(s, e_plus):
    """Echelonized basis of aut(S) = {A in gl(E_+) | A . S = 0}.

    The returned matrices are n x n in the coordinates of the e_plus basis;
    embed_gl_eplus lifts them to sp(E).
    """
    if not tensor_in_subspace_power(s, e_plus):
        raise ContractError("S is not supported in the given subspace")
    n = e_plus.dim
    images = []
    for flat_index in range(n * n):
        i, j = divmod(flat_index, n)
        small = [[ZERO] * n for _ in range(n)]
        small[i][j] = ONE
        images.append(sp_action(embed_gl_eplus(e_plus, Matrix(small)), s))
    monomials = sorted(set(a for img in images for a in img.coeffs))
    index = {m: i for i, m in enumerate(monomials)}
    height = max(len(monomials), 1)
    cols = []
    for img in images:
        col = [ZERO] * height
        for a, c in img.coeffs.items():
            col[index[a]] = c
        cols.append(col)
    _, kernel, _ = rank_kernel(Matrix(cols).transpose())
    basis = []
    for v in echelon_basis(kernel):
        basis.append(Matrix([list(v[i * n:(i + 1) * n]) for i in range(n)]))
    return basis


# ---------------------------------------------------------------------------
# Aggregate analysis.
# ---------------------------------------------------------------------------


@dataclass
class AnalysisReport:
    invariance_ok: bool
    invariance_witness: Optional[tuple] = None
    holonomy: Optional[HolonomyData] = None
    support_dim: Optional[int] = None
    support_isotropic: Optional[bool] = None
    lagrangian_found: Optional[Subspace] = None
    flat_complex_dim: Optional[int] = None
    jacobi_ok: Optional[bool] = None
    ricci_zero: Optional[bool] = None
    reality: Optional[dict] = None
    signature: Optional[tuple] = None
    classification: Optional[str] = None

    def to_dict(self):
        hol = None
        if self.holonomy is not None:
            hol = {
                "dimension": self.holonomy.dimension,
                "is_abelian": self.holonomy.is_abelian,
                "is_solvable": self.holonomy.is_solvable,
                "derived_series_lengths": list(self.holonomy.derived_series_lengths),
                "basis": [m.to_strings() for m in self.holonomy.basis],
            }
        return {
            "invariance_ok": self.invariance_ok,
            "invariance_witness": list(self.invariance_witness) if self.invariance_witness else None,
            "holonomy": hol,
            "support_dim": self.support_dim,
            "support_isotropic": self.support_isotropic,
            "lagrangian_found": self.lagrangian_found.to_strings() if self.lagrangian_found else None,
            "flat_complex_dim": self.flat_complex_dim,
            "jacobi_ok": self.jacobi_ok,
            "ricci_zero": self.ricci_zero,
            "reality": self.reality,
            "signature": list(self.signature) if self.signature else None,
            "classification": self.classification,
        }


def analyze_quartic(s, j=None, real=False):
    """Run the full verification pipeline; reality/signature only when real=True.

    The report mirrors the pipeline: invariance -> holonomy -> support and
    Lagrangian -> flat splitting -> algebra (Jacobi) -> Ricci -> optionally
    reality, real algebra, signature -> dim-8 classification when n = 2.
    """
    ok, witness = check_invariance(s)
    if not ok:
        return AnalysisReport(invariance_ok=False, invariance_witness=witness)
    hol = holonomy(s)
    sigma = support(s)
    e_plus = find_lagrangian(s, _invariance_known=True)
    _, _, flat_dim = flat_decomposition(s, _invariance_known=True)
    model = build_complex_algebra(s, _invariance_known=True, _holonomy=hol)
    jacobi_ok, _ = verify_jacobi(model)
    ricci, metric_ok = curvature_ricci(s, model=model)
    report = AnalysisReport(
        invariance_ok=True,
        holonomy=hol,
        support_dim=sigma.dim,
        support_isotropic=is_isotropic(sigma),
        lagrangian_found=e_plus,
        flat_complex_dim=flat_dim,
        jacobi_ok=jacobi_ok and metric_ok,
        ricci_zero=ricci.is_zero(),
    )
    if real:
        from . import realform
        from .symplectic import standard_quaternionic

        if j is None:
            if s.space.dim % 4 != 0:
                raise ContractError(
                    "no default quaternionic structure: dim E not divisible by 4; supply one"
                )
            half = s.space.n
            e_std_plus = span(s.space, [s.space.basis_vector(k) for k in range(half)])
            e_std_minus = span(s.space, [s.space.basis_vector(half + k) for k in range(half)])
            j = standard_quaternionic(s.space, (e_std_plus, e_std_minus))
        rep = realform.check_reality(s, j)
        report.reality = {
            "commutator_condition_ok": rep.commutator_condition_ok,
            "tau_fixed": rep.tau_fixed,
            "equivalent": rep.equivalent,
            "real_holonomy_dim": rep.real_holonomy_dim,
            "signature_on_m": list(rep.signature_on_m) if rep.signature_on_m else None,
        }
        if rep.commutator_condition_ok:
            real_model = realform.build_real_algebra(s, j)
            p, n, z = hermitian_inertia(real_model.metric_on_m)
            if z:
                raise TheoremViolationError("degenerate real metric")
            report.signature = (p, n)
            report.reality["signature_on_m"] = [p, n]
    if s.space.n == 2:
        from . import dim8

        report.classification = dim8.classify_complex8(s, e_plus).type_tag
    return report
