import pytest

from triquot.errors import InputError, UnsupportedError
from triquot.exactalg import FieldSpec, Mat
from triquot.algrep import (
    MonomialAlgebra,
    Quiver,
    RepMap,
    chain_vertex_sequence,
    compose,
    cover_envelope,
    direct_sum,
    dual_map,
    dual_rep,
    hom_basis,
    injective_envelope,
    is_self_injective,
    kernel_cokernel,
    projective_cover,
    serial_algebra,
    serial_decompose,
)

from helpers import brute_force_hom_dim

F2 = FieldSpec.prime(2)


class TestAlgebraConstruction:
    def test_truncated_polynomial_basis(self, kx3):
        assert kx3.dimension == 3
        lengths = sorted(len(p[1]) for p in kx3.path_basis)
        assert lengths == [0, 1, 2]

    def test_cyclic_rad_square_zero(self, nak32):
        assert nak32.dimension == 6  # 3 idempotents + 3 arrows

    def test_infinite_dimensional_rejected(self):
        q = Quiver(("1",), (("1", "1", "x"),))
        with pytest.raises(UnsupportedError):
            MonomialAlgebra(q, [], F2, max_paths=64)

    def test_invalid_relation_rejected(self):
        q = Quiver(("1", "2"), (("1", "2", "a"),))
        with pytest.raises(InputError):
            MonomialAlgebra(q, [["a", "a"]], F2)  # not composable
        with pytest.raises(InputError):
            MonomialAlgebra(q, [["a"]], F2)  # too short

    def test_serial_recognition(self, kx3, nak32, a2_quiver_algebra):
        assert kx3.is_serial()
        assert nak32.is_serial()
        assert a2_quiver_algebra.is_serial()


class TestStandardModules:
    def test_projective_dimensions(self, kx3, nak32):
        assert kx3.projective(0).total_dim == 3
        assert nak32.projective(0).dims == (1, 1, 0)

    def test_intervals(self, kx3, nak23):
        for i in (1, 2, 3):
            assert kx3.interval(0, i).total_dim == i
        m22 = nak23.interval(1, 2)  # top at vertex "2"
        assert m22.dims == (1, 1)

    def test_interval_bounds(self, kx3):
        with pytest.raises(InputError):
            kx3.interval(0, 4)

    def test_interval_needs_serial(self):
        q = Quiver(("1", "2", "3"), (("1", "2", "a"), ("1", "3", "b")))
        alg = MonomialAlgebra(q, [], F2)
        with pytest.raises(UnsupportedError):
            alg.interval(0, 1)

    def test_simple_is_length_one_interval(self, nak32):
        assert nak32.simple(1).dims == nak32.interval(1, 1).dims


class TestHomSpaces:
    def test_identity_present_and_simples(self, nak32):
        for v in range(3):
            for w in range(3):
                dim = len(hom_basis(nak32.simple(v), nak32.simple(w)))
                assert dim == (1 if v == w else 0)

    def test_interval_hom_dims_match_brute_force(self, kx3):
        # dim Hom(M_i, M_j) = min(i, j) for k[x]/x^3
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                Mi, Mj = kx3.interval(0, i), kx3.interval(0, j)
                assert len(hom_basis(Mi, Mj)) == min(i, j)
                assert brute_force_hom_dim(Mi, Mj) == min(i, j)

    def test_socle_hom(self, nak23):
        s1 = nak23.simple(0)
        m22 = nak23.interval(1, 2)
        assert len(hom_basis(s1, m22)) == 1
        assert brute_force_hom_dim(s1, m22) == 1

    def test_hom_into_projective_counts_dim_at_vertex(self, nak32):
        # dim Hom(P(v), M) = dim M at v
        for v in range(3):
            P = nak32.projective(v)
            for w in range(3):
                M = nak32.projective(w)
                assert len(hom_basis(P, M)) == M.dims[v]

    def test_characteristic_free_on_serial(self, kx3, kx3_q, kx4, kx4_q):
        for (a, b) in [(kx3, kx3_q), (kx4, kx4_q)]:
            n = a.projective_length(0)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    d2 = len(hom_basis(a.interval(0, i), a.interval(0, j)))
                    dq = len(hom_basis(b.interval(0, i), b.interval(0, j)))
                    assert d2 == dq

    def test_algebra_mismatch(self, kx3, nak32):
        with pytest.raises(InputError):
            hom_basis(kx3.simple(0), nak32.simple(0))


class TestCompose:
    def test_identity_neutral(self, kx3):
        M = kx3.interval(0, 2)
        f = hom_basis(M, M)[0]
        assert compose(RepMap.identity(M), f) == f
        assert compose(f, RepMap.identity(M)) == f

    def test_zero_absorbs(self, kx3):
        M, N = kx3.interval(0, 2), kx3.interval(0, 3)
        f = hom_basis(M, N)[0]
        assert compose(RepMap.zero(N, M), f).is_zero()

    def test_quotient_after_socle_vanishes(self, kx3):
        M1, M2, M3 = (kx3.interval(0, i) for i in (1, 2, 3))
        socle = [f for f in hom_basis(M1, M3) if not f.is_zero()][0]
        quotients = [f for f in hom_basis(M3, M2) if not compose(f, RepMap.identity(M3)).is_zero()]
        surj = [f for f in quotients if f.mats[0].a[0, 0] != 0][0]
        assert compose(surj, socle).is_zero()


class TestKernelCokernel:
    def test_identity(self, kx3):
        M = kx3.interval(0, 2)
        ker, _, cok, _ = kernel_cokernel(RepMap.identity(M))
        assert ker.total_dim == 0 and cok.total_dim == 0

    def test_zero_map(self, kx3):
        M, N = kx3.interval(0, 2), kx3.interval(0, 1)
        ker, ki, cok, cp = kernel_cokernel(RepMap.zero(M, N))
        assert ker.dims == M.dims and cok.dims == N.dims

    def test_cokernel_of_socle_embedding(self, kx3):
        M1, M3 = kx3.interval(0, 1), kx3.interval(0, 3)
        socle = [f for f in hom_basis(M1, M3) if not f.is_zero()][0]
        _, _, cok, proj = kernel_cokernel(socle)
        assert cok.total_dim == 2
        # induced action is the k[x]/x^2 pattern: rank 1 nilpotent
        x = cok.mats[0]
        assert not x.is_zero() and (x @ x).is_zero()
        assert compose(proj, socle).is_zero()

    def test_rank_nullity_per_vertex(self, nak32):
        M = nak32.projective(0)
        N = nak32.simple(0)
        for f in hom_basis(M, N):
            ker, ki, cok, cp = kernel_cokernel(f)
            for v in range(3):
                from triquot.exactalg import rank as mrank
                assert ker.dims[v] + mrank(f.mats[v]) == M.dims[v]
                assert cok.dims[v] == N.dims[v] - mrank(f.mats[v])
            assert compose(f, ki).is_zero()
            assert compose(cp, f).is_zero()


class TestCoversEnvelopes:
    def test_cover_of_projective_is_iso(self, kx3):
        P = kx3.projective(0)
        Pc, cover = projective_cover(P)
        assert Pc.dims == P.dims
        ker, _, _, _ = kernel_cokernel(cover)
        assert ker.total_dim == 0

    def test_cover_of_simple(self, kx3):
        M1 = kx3.interval(0, 1)
        P, cover = projective_cover(M1)
        assert P.total_dim == 3
        ker, _, _, _ = kernel_cokernel(cover)
        assert ker.total_dim == 2  # the radical x*k[x]/x^3

    def test_envelope_detects_socle(self, nak32):
        # envelope of the simple S_2 is the projective P_1 (socle S_2)
        S2 = nak32.simple(1)
        I, env = injective_envelope(S2)
        assert I.dims == nak32.projective(0).dims
        ker, _, _, _ = kernel_cokernel(env)
        assert ker.total_dim == 0

    def test_cover_envelope_gate(self, a2_quiver_algebra):
        with pytest.raises(UnsupportedError):
            cover_envelope(a2_quiver_algebra.simple(0))

    def test_cover_envelope_on_self_injective(self, kx3):
        M = kx3.interval(0, 2)
        cover, env = cover_envelope(M)
        assert cover.target.dims == M.dims
        assert env.source.dims == M.dims


class TestSelfInjectivity:
    def test_truncated_polynomial(self, kx3, kx4):
        assert is_self_injective(kx3)
        assert is_self_injective(kx4)

    @pytest.mark.parametrize("n,L", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_cyclic_nakayama(self, n, L):
        assert is_self_injective(serial_algebra(F2, n, L))

    def test_a2_is_not(self, a2_quiver_algebra):
        assert not is_self_injective(a2_quiver_algebra)


class TestDirectSumAndDuality:
    def test_sum_with_zero_is_identity_data(self, kx3):
        M = kx3.interval(0, 2)
        total, incls, projs = direct_sum(kx3, [M, kx3.zero_module()])
        assert total.key() == M.key()

    def test_inclusion_projection_identities(self, nak32):
        M, N = nak32.simple(0), nak32.projective(1)
        total, incls, projs = direct_sum(nak32, [M, N])
        assert compose(projs[0], incls[0]) == RepMap.identity(M)
        assert compose(projs[1], incls[0]).is_zero()

    def test_dual_round_trip(self, nak32):
        M = nak32.projective(0)
        assert dual_rep(dual_rep(M)).key() == M.key()
        f = hom_basis(M, nak32.simple(0))[0]
        assert dual_map(dual_map(f)) == f

    def test_dual_swaps_projective_injective(self, nak32):
        P = nak32.projective(0)
        D = dual_rep(P)
        op = nak32.opposite()
        # D(P(0)) is an injective module over the opposite algebra
        I, env = injective_envelope(D)
        assert I.dims == D.dims


class TestSerialDecomposition:
    def test_projective_is_one_chain(self, kx3):
        chains = serial_decompose(kx3.projective(0))
        assert len(chains) == 1
        assert chains[0][1] == 3

    def test_direct_sum_recovers_parts(self, nak32):
        M, _, _ = direct_sum(nak32, [nak32.simple(0), nak32.projective(1), nak32.simple(0)])
        chains = serial_decompose(M)
        shapes = sorted((v, l) for v, l, _ in chains)
        assert shapes == [(0, 1), (0, 1), (1, 2)]

    def test_nontrivial_extension_found(self, kx3):
        # M_3 twisted by a change of basis still decomposes as one chain
        M3 = kx3.interval(0, 3)
        from triquot.algrep import Rep
        twist = Mat.from_rows(F2, [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
        inv = Mat.from_rows(F2, [[1, 1, 1], [0, 1, 1], [0, 0, 1]])
        x = twist @ M3.mats[0] @ inv
        M = Rep(kx3, M3.dims, (x,))
        chains = serial_decompose(M)
        assert [(c[0], c[1]) for c in chains] == [(0, 3)]

    def test_chain_vertex_sequence(self, nak32):
        assert chain_vertex_sequence(nak32, 1, 2) == [1, 2]
