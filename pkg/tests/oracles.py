"""Independent oracles used to derive expected values.

Each one deliberately avoids the code path it checks: the polarization oracle
evaluates polynomials at covector sums with inclusion-exclusion (no iterated
contraction), the automorphism oracle builds the gl(E_+) action matrix by raw
monomial calculus (no sp-embedding, no contraction machinery), and the root
pattern oracle uses the derivative gcd chain instead of Yun's algorithm.
"""

from fractions import Fraction
from itertools import combinations

from hksym.exactnum import GaussRat, Matrix, ZERO, mat_vec, rank_kernel


def evaluate_at_covector(t, xi):
    """t(xi) for a covector xi given by dual-basis coordinates."""
    total = ZERO
    for alpha, c in t.coeffs.items():
        term = c
        for k, e in enumerate(alpha):
            for _ in range(e):
                term = term * xi[k]
        total = total + term
    return total


def polarization_inclusion_exclusion(t, xs):
    """M_t(omega x_1, ..., omega x_d) by the subset-sum polarization identity."""
    d = t.degree
    sp = t.space
    omega_t = sp.omega.transpose()
    covs = [mat_vec(omega_t, tuple(x)) for x in xs]
    total = ZERO
    indices = list(range(d))
    for size in range(1, d + 1):
        sign = GaussRat((-1) ** (d - size))
        for subset in combinations(indices, size):
            xi = [ZERO] * sp.dim
            for i in subset:
                for k in range(sp.dim):
                    xi[k] = xi[k] + covs[i][k]
            total = total + sign * evaluate_at_covector(t, xi)
    factorial = 1
    for i in range(2, d + 1):
        factorial *= i
    return total * GaussRat(Fraction(1, factorial))


def monomial_multiset(degree, nvars):
    out = []

    def rec(prefix, remaining, start):
        if len(prefix) == nvars - 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, start)

    rec([], degree, 0)
    return out


def aut_dimension_bruteforce(s, e_plus):
    """dim aut(S) by raw monomial calculus on the restricted polynomial.

    S is rewritten in e_plus coordinates; the elementary matrix E_{ij}
    (v_j -> v_i) acts on a monomial by
        E_{ij} . x^alpha = -alpha_j x^(alpha - e_j + e_i),
    matching the package-wide sign convention (minus the derivation).  The
    kernel dimension of the stacked action matrix is dim aut(S).
    """
    from hksym.symtensor import restrict_to_basis

    n = e_plus.dim
    restricted = {
        beta: c for beta, c in restrict_to_basis(s, list(e_plus.basis)).items() if c
    }
    monos = monomial_multiset(4, n)
    index = {m: i for i, m in enumerate(monos)}
    cols = []
    for i in range(n):
        for j in range(n):
            col = [ZERO] * len(monos)
            for beta, c in restricted.items():
                if not beta[j]:
                    continue
                target = list(beta)
                target[j] -= 1
                target[i] += 1
                k = index[tuple(target)]
                col[k] = col[k] - GaussRat(beta[j]) * c
            cols.append(col)
    _, kernel, _ = rank_kernel(Matrix(cols).transpose())
    return len(kernel)


def root_pattern_gcd_chain(plain_coeffs):
    """Multiplicity pattern of a binary quartic by the derivative gcd chain.

    deg gcd(p, p', .., p^(k)) = sum over roots of max(mult - k, 0); successive
    differences count the roots of each multiplicity.  Independent of Yun.
    """
    from hksym.dim8 import _poly_deg, _poly_diff, _poly_gcd, _poly_strip

    p = _poly_strip([plain_coeffs[4 - d] for d in range(5)])
    if not p:
        return ()
    inf_mult = 4 - _poly_deg(p)
    degs = [_poly_deg(p)]
    g = p
    deriv = p
    while _poly_deg(g) > 0:
        deriv = _poly_diff(deriv)
        g = _poly_gcd(g, deriv)
        degs.append(_poly_deg(g))
    degs += [0] * (6 - len(degs))
    # degs[k] = sum over roots of max(mult - k, 0); difference counts
    # roots with multiplicity >= k, one more difference gives exact counts
    ge = [degs[k - 1] - degs[k] for k in range(1, 6)]
    pattern = []
    for m in range(1, 5):
        exact = ge[m - 1] - ge[m] if m < 5 else ge[m - 1]
        pattern.extend([m] * exact)
    if inf_mult:
        pattern.append(inf_mult)
    return tuple(sorted(pattern, reverse=True))


def inertia_by_char_poly(h):
    """Hermitian inertia via Faddeev-LeVerrier and Descartes' rule.

    A Hermitian matrix has a real-rooted characteristic polynomial with real
    coefficients, so Descartes' sign-variation count is exact: positives are
    the variations of p(t), the null count is the multiplicity of the root 0,
    and negatives make up the rest.  Completely independent of the congruence
    pivoting in the module.
    """
    from fractions import Fraction

    n = h.nrows
    ident = Matrix.identity(n)
    m = Matrix.zeros(n, n)
    coeffs = [GaussRat(1)]  # leading coefficient of t^n
    for k in range(1, n + 1):
        m = h @ (m + ident.scale(coeffs[-1]))
        tr = ZERO
        for i in range(n):
            tr = tr + m.entry(i, i)
        ck = -(tr * GaussRat(Fraction(1, k)))
        assert ck.is_real
        coeffs.append(ck)
    # coeffs[i] multiplies t^(n-i); strip the trailing zeros (root 0)
    null = 0
    while coeffs and not coeffs[-1]:
        coeffs.pop()
        null += 1
    signs = [c.real_sign() for c in coeffs if c]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    return pos, n - pos - null, null


def ricci_by_adjoint_matrices(model):
    """Ricci form via explicit adjoint matrices and matrix traces.

    For each m-pair (x, y) the composite map z -> [[z, x], y] on m is formed
    as a product of two explicit matrices (m -> h, then h -> m); Ricci is
    minus its trace.  Independent of the structure-constant trace loop.
    """
    dh, dm = model.dim_h, model.dim_m
    # bracket-with-fixed-m-element matrices
    def m_to_h(x):
        rows = [[ZERO] * dm for _ in range(max(dh, 1))]
        for z in range(dm):
            for k, c in model.brackets[dh + z][dh + x].items():
                rows[k][z] = c
        return Matrix(rows)

    def h_to_m(y):
        rows = [[ZERO] * max(dh, 1) for _ in range(dm)]
        for w in range(dh):
            for k, c in model.brackets[w][dh + y].items():
                rows[k - dh][w] = c
        return Matrix(rows)

    bx = [m_to_h(x) for x in range(dm)]
    cy = [h_to_m(y) for y in range(dm)]
    rows = []
    for x in range(dm):
        row = []
        for y in range(dm):
            comp = cy[y] @ bx[x]
            trace = ZERO
            for z in range(dm):
                trace = trace + comp.entry(z, z)
            row.append(-trace)
        rows.append(row)
    return Matrix(rows)
