import pytest

from hksym.exactnum import ContractError, GaussRat, Matrix, ONE, ZERO, mat_vec
from hksym.symplectic import SymplecticSpace, is_isotropic, span
from hksym.symtensor import SymTensor, double_contraction_endo, endo_of_quadratic, support, transform
from hksym.hkalgebra import (
    NotHyperKahlerError,
    analyze_quartic,
    build_complex_algebra,
    check_invariance,
    compute_aut,
    curvature_ricci,
    embed_gl_eplus,
    embed_gl_group,
    find_lagrangian,
    flat_decomposition,
    holonomy,
    verify_grading,
    verify_jacobi,
    verify_metric,
)
from hksym.generators import (
    random_invertible,
    random_quartic_lagrangian,
    random_symplectic,
)

from oracles import aut_dimension_bruteforce, ricci_by_adjoint_matrices


def lin(sp, k):
    return SymTensor.linear(sp, sp.basis_vector(k))


@pytest.fixture
def p4():
    sp = SymplecticSpace(1)
    return lin(sp, 0) ** 4


class TestInvariance:
    def test_p4_invariant(self, p4):
        ok, witness = check_invariance(p4)
        assert ok and witness is None

    def test_p3q_rejected_with_witness(self):
        # first lexicographic violating pair is (p, q): S_{p,q} = -(1/4) p^2
        # and p^2 . (p^3 q) = p^4 != 0
        sp = SymplecticSpace(1)
        s = (lin(sp, 0) ** 3) * lin(sp, 1)
        ok, witness = check_invariance(s)
        assert not ok
        assert witness == (0, 1)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_lagrangian_quartics_invariant(self, n, rng):
        for _ in range(5):
            s = random_quartic_lagrangian(n, rng)
            ok, _ = check_invariance(s)
            assert ok


class TestHolonomy:
    def test_p4(self, p4):
        hol = holonomy(p4)
        assert hol.dimension == 1
        assert hol.is_abelian and hol.is_solvable
        assert hol.derived_series_lengths == (1, 0)
        # h = C p^2: the sole basis element is proportional to endo(p^2)
        sp = p4.space
        e_p2 = endo_of_quadratic(lin(sp, 0) ** 2)
        basis_mat = hol.basis[0]
        found = None
        for i in range(2):
            for j in range(2):
                if e_p2.entry(i, j):
                    found = basis_mat.entry(i, j) / e_p2.entry(i, j)
        assert found is not None
        assert basis_mat == e_p2.scale(found)

    def test_zero_quartic(self):
        sp = SymplecticSpace(2)
        hol = holonomy(SymTensor.zero(sp, 4))
        assert hol.dimension == 0
        assert hol.is_abelian and hol.is_solvable

    def test_lagrangian_quartics_abelian(self, rng):
        for n in (2, 3):
            s = random_quartic_lagrangian(n, rng)
            hol = holonomy(s)
            assert hol.is_abelian and hol.is_solvable

    def test_non_solvable_span_detected(self):
        # p^2 q^2 double-contracts onto all of sl(2): the span is its own
        # derived algebra, hence not solvable (and such a quartic is not
        # invariant, which is the point of the solvability argument)
        sp = SymplecticSpace(1)
        s = (lin(sp, 0) ** 2) * (lin(sp, 1) ** 2)
        hol = holonomy(s)
        assert hol.dimension == 3
        assert not hol.is_abelian
        assert not hol.is_solvable
        assert hol.derived_series_lengths[-1] == hol.derived_series_lengths[-2]
        assert not check_invariance(s)[0]

    def test_solvable_non_abelian_series(self):
        # p^3 q: holonomy span{p^2, pq} is a 2-step solvable Borel-type algebra
        sp = SymplecticSpace(1)
        s = (lin(sp, 0) ** 3) * lin(sp, 1)
        hol = holonomy(s)
        assert hol.dimension == 2
        assert not hol.is_abelian
        assert hol.is_solvable
        assert hol.derived_series_lengths == (2, 1, 0)

    def test_double_contractions_strictly_triangular(self, rng):
        # for S = lambda p^4 + p^3 w0 + p^2 B + p C + D in the splitting
        # E = P + W + Q, every S_{x,y} kills P, maps W and Q into P + W, and
        # has no Q-component at all; this strict triangularity is what makes
        # the holonomy solvable
        from fractions import Fraction

        sp = SymplecticSpace(2)
        p, w1, q, w2 = (lin(sp, k) for k in range(4))
        b = w1 * w2 + (w1 * w1).scale(GaussRat(3))
        c = (w2 ** 2) * w1
        d = (w1 ** 3) * w2
        s = (p ** 4).scale(GaussRat(Fraction(2, 3))) + (p ** 3) * (w1 - w2) \
            + (p ** 2) * b + p * c + d
        p_vec = sp.basis_vector(0)
        pw_space = span(sp, [sp.basis_vector(0), sp.basis_vector(1), sp.basis_vector(3)])
        basis = [sp.basis_vector(k) for k in range(4)]
        for a_idx in range(4):
            for b_idx in range(4):
                endo = double_contraction_endo(s, basis[a_idx], basis[b_idx])
                assert all(not e for e in mat_vec(endo, p_vec))
                for k in (1, 2, 3):
                    img = mat_vec(endo, basis[k])
                    assert pw_space.contains(img)
                    assert not img[2]  # no q1-component anywhere

    def test_derivation_identity_on_holonomy(self, rng):
        # [S_{e,e'}, S_{f,f'}] = -(S_{S_{e,e'}f, f'} + S_{f, S_{e,e'}f'}) when
        # S is invariant; closure of the holonomy span
        sp = SymplecticSpace(2)
        s = random_quartic_lagrangian(2, rng)
        basis = [sp.basis_vector(k) for k in range(sp.dim)]
        for a in range(sp.dim):
            for b in range(sp.dim):
                A = double_contraction_endo(s, basis[a], basis[b])
                for f in range(sp.dim):
                    for g in range(sp.dim):
                        s_fg = double_contraction_endo(s, basis[f], basis[g])
                        lhs = A @ s_fg - s_fg @ A
                        rhs = -(
                            double_contraction_endo(s, mat_vec(A, basis[f]), basis[g])
                            + double_contraction_endo(s, basis[f], mat_vec(A, basis[g]))
                        )
                        assert lhs == rhs


class TestBuildAlgebra:
    def test_p4_dimensions(self, p4):
        model = build_complex_algebra(p4)
        assert model.dim_h == 1
        assert model.dim_m == 4
        assert model.dim == 5

    def test_zero_quartic_abelian(self):
        sp = SymplecticSpace(1)
        model = build_complex_algebra(SymTensor.zero(sp, 4))
        assert model.dim_h == 0
        assert all(not model.brackets[a][b] for a in range(model.dim) for b in range(model.dim))

    def test_x4_in_n2(self):
        sp = SymplecticSpace(2)
        model = build_complex_algebra(lin(sp, 0) ** 4)
        assert model.dim_h == 1
        assert model.dim_m == 8

    def test_rejects_non_invariant(self):
        sp = SymplecticSpace(1)
        s = (lin(sp, 0) ** 3) * lin(sp, 1)
        with pytest.raises(NotHyperKahlerError) as err:
            build_complex_algebra(s)
        assert err.value.witness == (0, 1)

    def test_grading_and_metric(self, rng):
        model = build_complex_algebra(random_quartic_lagrangian(2, rng))
        assert verify_grading(model) == (True, None)
        assert verify_metric(model) == (True, None)

    def test_n4_pipeline(self, rng):
        # generic quartic on dim E = 8: holonomy fills S^2 E_+ (dimension 10)
        s = random_quartic_lagrangian(4, rng)
        model = build_complex_algebra(s)
        assert model.dim_h == 10
        assert model.dim_m == 16
        ric, metric_ok = curvature_ricci(s, model=model)
        assert ric.is_zero() and metric_ok


class TestJacobi:
    def test_p4_model(self, p4):
        model = build_complex_algebra(p4)
        assert verify_jacobi(model) == (True, None)

    def test_corrupted_structure_constant_detected(self, p4):
        model = build_complex_algebra(p4)
        # corrupt [m1, m2] by injecting a spurious h-component
        a, b = model.dim_h + 0, model.dim_h + 1
        model.brackets[a][b] = dict(model.brackets[a][b])
        model.brackets[a][b][0] = model.brackets[a][b].get(0, ZERO) + ONE
        ok, witness = verify_jacobi(model)
        assert not ok
        assert witness is not None and len(witness) == 3

    def test_abelian_model(self):
        sp = SymplecticSpace(1)
        model = build_complex_algebra(SymTensor.zero(sp, 4))
        assert verify_jacobi(model) == (True, None)


class TestRicci:
    def test_p4_ricci_zero(self, p4):
        ric, metric_ok = curvature_ricci(p4)
        assert ric.is_zero()
        assert metric_ok

    def test_zero_quartic(self):
        sp = SymplecticSpace(1)
        ric, _ = curvature_ricci(SymTensor.zero(sp, 4))
        assert ric.is_zero()

    def test_random_lagrangian_n2_with_adjoint_oracle(self, rng):
        s = random_quartic_lagrangian(2, rng)
        model = build_complex_algebra(s)
        ric, metric_ok = curvature_ricci(s, model=model)
        assert ric.is_zero()
        assert metric_ok
        assert ricci_by_adjoint_matrices(model) == ric


class TestFindLagrangian:
    def test_p4(self, p4):
        sp = p4.space
        assert find_lagrangian(p4) == span(sp, [sp.basis_vector(0)])

    def test_zero_quartic_greedy_default(self):
        sp = SymplecticSpace(2)
        out = find_lagrangian(SymTensor.zero(sp, 4))
        assert out == span(sp, [sp.basis_vector(0), sp.basis_vector(1)])

    def test_x4_plus_y4(self, rng):
        sp = SymplecticSpace(2)
        s = lin(sp, 0) ** 4 + lin(sp, 1) ** 4
        out = find_lagrangian(s)
        assert out == span(sp, [sp.basis_vector(0), sp.basis_vector(1)])

    def test_after_symplectic_scramble(self, rng):
        from hksym.symtensor import tensor_in_subspace_power

        sp = SymplecticSpace(2)
        s = random_quartic_lagrangian(2, rng)
        t = random_symplectic(sp, rng)
        scrambled = transform(s, t)
        out = find_lagrangian(scrambled)
        assert out.dim == sp.n and is_isotropic(out)
        assert tensor_in_subspace_power(scrambled, out)

    def test_rejects_non_invariant(self):
        sp = SymplecticSpace(1)
        with pytest.raises(NotHyperKahlerError):
            find_lagrangian((lin(sp, 0) ** 3) * lin(sp, 1))


class TestFlatDecomposition:
    def test_p4_has_no_flat_factor(self, p4):
        e1, e0, flat = flat_decomposition(p4)
        assert flat == 0
        assert e1.dim == 2 and e0.dim == 0

    def test_zero_quartic_fully_flat(self):
        sp = SymplecticSpace(1)
        e1, e0, flat = flat_decomposition(SymTensor.zero(sp, 4))
        assert flat == 4
        assert e0.dim == 2 and e1.dim == 0

    def test_x4_in_n2(self):
        sp = SymplecticSpace(2)
        e1, e0, flat = flat_decomposition(lin(sp, 0) ** 4)
        assert flat == 4
        assert e1.dim == 2 and e0.dim == 2
        assert e1.contains(sp.basis_vector(0))

    def test_pieces_are_omega_orthogonal(self, rng):
        from hksym.symplectic import omega_pair

        sp = SymplecticSpace(2)
        s = lin(sp, 0) ** 4
        e1, e0, _ = flat_decomposition(s)
        for u in e1.basis:
            for v in e0.basis:
                assert omega_pair(sp, u, v) == ZERO


class TestAut:
    def test_p4_trivial(self, p4):
        sp = p4.space
        basis = compute_aut(p4, span(sp, [sp.basis_vector(0)]))
        assert basis == []

    def test_zero_quartic_full_gl(self):
        sp = SymplecticSpace(2)
        e_plus = span(sp, [sp.basis_vector(0), sp.basis_vector(1)])
        basis = compute_aut(SymTensor.zero(sp, 4), e_plus)
        assert len(basis) == 4

    def test_x3y_one_dimensional(self):
        sp = SymplecticSpace(2)
        s = (lin(sp, 0) ** 3) * lin(sp, 1)
        e_plus = span(sp, [sp.basis_vector(0), sp.basis_vector(1)])
        basis = compute_aut(s, e_plus)
        assert len(basis) == 1
        # the diagonal direction with 3 a_x + a_y = 0, echelon-normalized
        assert basis[0] == Matrix([[ONE, ZERO], [ZERO, GaussRat(-3)]])

    def test_rejects_unsupported(self):
        sp = SymplecticSpace(2)
        e_plus = span(sp, [sp.basis_vector(0), sp.basis_vector(1)])
        with pytest.raises(ContractError):
            compute_aut(lin(sp, 2) ** 4, e_plus)

    def test_matches_bruteforce_oracle(self, rng):
        for n in (1, 2):
            sp = SymplecticSpace(n)
            e_plus = span(sp, [sp.basis_vector(k) for k in range(n)])
            for _ in range(5):
                s = random_quartic_lagrangian(n, rng)
                assert len(compute_aut(s, e_plus)) == aut_dimension_bruteforce(s, e_plus)

    def test_embedding_is_symplectic_lie(self, rng):
        from hksym.symtensor import is_in_sp

        sp = SymplecticSpace(2)
        e_plus = span(sp, [sp.basis_vector(0), sp.basis_vector(1)])
        a = Matrix([[GaussRat(1), GaussRat(2, 1)], [GaussRat(0, 1), GaussRat(-1)]])
        emb = embed_gl_eplus(e_plus, a)
        assert is_in_sp(sp, emb)
        # abstract brute force over sp(E) stabilizers agrees with the embedding
        for v in e_plus.basis:
            assert e_plus.contains(mat_vec(emb, v))


class TestGLEquivariance:
    def test_invariants_stable_under_gl_eplus(self, rng):
        sp = SymplecticSpace(2)
        e_plus = span(sp, [sp.basis_vector(0), sp.basis_vector(1)])
        for _ in range(5):
            s = random_quartic_lagrangian(2, rng)
            t_small = random_invertible(2, rng)
            big = embed_gl_group(e_plus, t_small)
            moved = transform(s, big)
            assert holonomy(moved).dimension == holonomy(s).dimension
            assert support(moved).dim == support(s).dim
            assert flat_decomposition(moved)[2] == flat_decomposition(s)[2]
            assert len(compute_aut(moved, e_plus)) == len(compute_aut(s, e_plus))


class TestAnalyze:
    def test_dim4_report(self, p4):
        report = analyze_quartic(p4)
        assert report.invariance_ok
        assert report.holonomy.dimension == 1
        assert report.support_dim == 1
        assert report.flat_complex_dim == 0
        assert report.jacobi_ok and report.ricci_zero
        d = report.to_dict()
        assert d["holonomy"]["is_abelian"] is True

    def test_rejected_report(self):
        sp = SymplecticSpace(1)
        s = (lin(sp, 0) ** 3) * lin(sp, 1)
        report = analyze_quartic(s)
        assert not report.invariance_ok
        assert report.invariance_witness == (0, 1)

    def test_report_field_consistency(self, rng):
        # flat_complex_dim = 0 exactly when the support fills a Lagrangian
        sp2 = SymplecticSpace(2)
        samples = [
            lin(sp2, 0) ** 4,
            lin(sp2, 0) ** 4 + lin(sp2, 1) ** 4,
            SymTensor.zero(sp2, 4),
            random_quartic_lagrangian(2, rng),
        ]
        for s in samples:
            report = analyze_quartic(s)
            assert (report.flat_complex_dim == 0) == (report.support_dim == sp2.n)
