"""The stable module category of a self-injective monomial algebra.

Objects are representations; morphisms are module maps modulo those
factoring through a projective. For self-injective algebras this category
is triangulated: the shift is cosyzygy/syzygy along canonical injective
envelopes / projective covers, and standard triangles are cokernels of
``m |-> (envelope(m), -f(m))``.

Everything is cached per object/morphism key, and over serial algebras
constructed objects are normalized to canonical sums of interval modules,
which keeps hom-space computations on small, heavily reused objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InternalConsistencyError, UnsupportedError
from .exactalg import LinSolver, Mat, span_basis
from .algrep import (
    MonomialAlgebra,
    Rep,
    RepMap,
    chain_vertex_sequence,
    compose,
    direct_sum,
    hom_basis,
    injective_envelope,
    is_self_injective,
    kernel_cokernel,
    map_from_vec,
    projective_cover,
    serial_decompose,
)


@dataclass(frozen=True)
class StMorphism:
    """Stable-category morphism: a module map taken modulo the projectives.

    Equality of stable morphisms is never representative identity; it is
    decided by :meth:`StableCategory.st_equal`.
    """

    source: Rep
    target: Rep
    rep: RepMap

    @staticmethod
    def of(rep: RepMap) -> "StMorphism":
        return StMorphism(rep.source, rep.target, rep)


@dataclass
class Sextuple:
    """Candidate (right) triangle A -> B -> C -> (shifted A).

    ``level`` is "ambient" (h targets A[1]) or "quotient" (h targets the
    suspension of A relative to a subcategory); ``provenance`` is a free-form
    construction note.
    """

    A: Rep
    B: Rep
    C: Rep
    f: RepMap
    g: RepMap
    h: RepMap
    level: str
    provenance: str = ""
    presentation: object = None  # attached by quotient-level constructors

    def maps(self) -> Tuple[RepMap, RepMap, RepMap]:
        return (self.f, self.g, self.h)


class HomSpace:
    """Canonical basis of Hom(M, N) with exact coordinate extraction."""

    def __init__(self, M: Rep, N: Rep):
        self.M = M
        self.N = N
        self.field = M.algebra.field
        self.basis = hom_basis(M, N)
        self.dim = len(self.basis)
        self.veclen = sum(dm * dn for dm, dn in zip(M.dims, N.dims))
        cols = [b.vec() for b in self.basis]
        self.mat = Mat.hstack(self.field, cols) if cols \
            else Mat.zeros(self.field, self.veclen, 0)
        self._solver = LinSolver(self.mat)

    def coords(self, f: RepMap) -> Mat:
        sol = self._solver.solve(f.vec())
        if sol is None:
            raise InternalConsistencyError("map outside its own hom space")
        return sol

    def from_coords(self, c: Mat) -> RepMap:
        vec = self.mat @ c
        return map_from_vec(self.M, self.N, vec, check=False)


class StHomData:
    """Stable hom data for a pair (M, N).

    Holds the projective-ideal subspace inside Hom(M, N), canonical coset
    representatives for the stable quotient, and a solver that writes any
    map as (stable coordinates, ideal coordinates).
    """

    def __init__(self, hom: HomSpace, ideal_coords: List[Mat]):
        self.hom = hom
        field = hom.field
        self.ideal_coords = ideal_coords
        self.ideal_dim = len(ideal_coords)
        from .exactalg import complement_basis
        self.st_coords_basis = complement_basis(ideal_coords, hom.dim, field) \
            if hom.dim else []
        self.dim = len(self.st_coords_basis)
        self.basis = [hom.from_coords(c) for c in self.st_coords_basis]
        cols = self.st_coords_basis + ideal_coords
        full = Mat.hstack(field, cols) if cols else Mat.zeros(field, hom.dim, 0)
        self._split = LinSolver(full)
        self.field = field

    def st_coords(self, f: RepMap) -> Mat:
        """Coordinates of the stable class of f in the canonical basis."""
        if self.hom.dim == 0:
            return Mat.zeros(self.field, 0, 1)
        c = self.hom.coords(f)
        sol = self._split.solve(c)
        if sol is None:
            raise InternalConsistencyError("hom coordinates failed to split")
        return Mat(self.field, sol.a[: self.dim, :].copy())

    def from_st_coords(self, c: Mat) -> RepMap:
        if self.dim == 0:
            return RepMap.zero(self.hom.M, self.hom.N)
        out = None
        for j, b in enumerate(self.basis):
            term = b.scale(c.a[j, 0])
            out = term if out is None else out + term
        return out


@dataclass
class NormalForm:
    """Stable normal form: K a canonical sum of non-projective intervals,
    r: M -> K and s: K -> M with r∘s = id exactly and s∘r stably the identity."""

    K: Rep
    r: RepMap
    s: RepMap
    summands: Tuple[Tuple[int, int], ...]


@dataclass
class SumData:
    total: Rep
    pieces: Tuple[Rep, ...]
    incls: Tuple[RepMap, ...]
    projs: Tuple[RepMap, ...]


@dataclass
class _ConeData:
    """Raw cone bookkeeping kept alongside a normalized standard triangle."""

    W: SumData            # I(M) (+) N
    u0: RepMap            # M -> W
    C_raw: Rep
    q: RepMap             # W -> C_raw
    q_sections: List[Mat]
    norm: NormalForm      # C_raw -> K


@dataclass
class Triangle:
    """Standard triangle with its raw cone data."""

    sext: Sextuple
    cone: _ConeData


class StableCategory:
    """Facade over one self-injective algebra; all operations cache per key."""

    def __init__(self, algebra: MonomialAlgebra):
        if not is_self_injective(algebra):
            raise UnsupportedError("stable category requires a self-injective algebra")
        self.algebra = algebra
        self.field = algebra.field
        self._hom: Dict[tuple, HomSpace] = {}
        self._st: Dict[tuple, StHomData] = {}
        self._env: Dict[tuple, tuple] = {}
        self._cov: Dict[tuple, tuple] = {}
        self._shift: Dict[tuple, tuple] = {}
        self._norm: Dict[tuple, NormalForm] = {}
        self._sum: Dict[tuple, SumData] = {}
        self._tri: Dict[tuple, Triangle] = {}
        self._fiber: Dict[tuple, Sextuple] = {}
        self._env_lift: Dict[tuple, RepMap] = {}
        self._cov_lift: Dict[tuple, RepMap] = {}
        self._shift_map: Dict[tuple, RepMap] = {}
        self._catalog: Dict[Tuple[int, int], Rep] = {}
        self._serial = algebra.is_serial()

    # -- plain hom spaces -------------------------------------------------
    def hom(self, M: Rep, N: Rep) -> HomSpace:
        key = (M.key(), N.key())
        hs = self._hom.get(key)
        if hs is None:
            hs = HomSpace(M, N)
            self._hom[key] = hs
        return hs

    # -- envelopes, covers, shifts -----------------------------------------
    def envelope(self, M: Rep):
        """(I(M), iota: M -> I(M), pi: I(M) -> M[1], sections of pi)."""
        key = M.key()
        if key not in self._env:
            I, iota = injective_envelope(M)
            _, _, coker, proj = kernel_cokernel(iota)
            sections = self._right_inverses(proj)
            self._env[key] = (I, iota, coker, proj, sections)
        return self._env[key]

    def cover(self, M: Rep):
        """(P(M), pi: P(M) -> M, iota: M[-1] -> P(M))."""
        key = M.key()
        if key not in self._cov:
            P, pi = projective_cover(M)
            ker, incl, _, _ = kernel_cokernel(pi)
            self._cov[key] = (P, pi, ker, incl)
        return self._cov[key]

    @staticmethod
    def _right_inverses(surj: RepMap) -> List[Mat]:
        out = []
        for m in surj.mats:
            if m.rows == 0:
                out.append(Mat.zeros(surj.source.algebra.field, m.cols, 0))
                continue
            inv = LinSolver(m).solve_many(Mat.identity(surj.source.algebra.field, m.rows))
            if inv is None:
                raise InternalConsistencyError("expected a vertex-wise surjection")
            out.append(inv)
        return out

    def shift(self, M: Rep, direction: int) -> Rep:
        """Cosyzygy (+1) or syzygy (-1); projectives shift to zero."""
        if direction not in (1, -1):
            raise InputError("direction must be +1 or -1")
        key = (M.key(), direction)
        if key not in self._shift:
            if direction == 1:
                _, _, coker, _, _ = self.envelope(M)
                self._shift[key] = coker
            else:
                _, _, ker, _ = self.cover(M)
                self._shift[key] = ker
        return self._shift[key]

    def envelope_lift(self, f: RepMap) -> RepMap:
        """Canonical lift I(M) -> I(N) over f through the envelopes."""
        key = f.key()
        if key not in self._env_lift:
            IM, iM, _, _, _ = self.envelope(f.source)
            IN, iN, _, _, _ = self.envelope(f.target)
            hs = self.hom(IM, IN)
            target = compose(iN, f)
            lam = self._solve_linear_map(hs, lambda lmap: compose(lmap, iM),
                                         self.hom(f.source, IN), target)
            if lam is None:
                raise InternalConsistencyError("envelope extension failed")
            self._env_lift[key] = lam
        return self._env_lift[key]

    def cover_lift(self, f: RepMap) -> RepMap:
        """Canonical lift P(M) -> P(N) under f through the covers."""
        key = f.key()
        if key not in self._cov_lift:
            PM, pM, _, _ = self.cover(f.source)
            PN, pN, _, _ = self.cover(f.target)
            hs = self.hom(PM, PN)
            target = compose(f, pM)
            mu = self._solve_linear_map(hs, lambda lmap: compose(pN, lmap),
                                        self.hom(PM, f.target), target)
            if mu is None:
                raise InternalConsistencyError("cover lift failed")
            self._cov_lift[key] = mu
        return self._cov_lift[key]

    def _solve_linear_map(self, domain: HomSpace, operator, codomain: HomSpace,
                          target: RepMap) -> Optional[RepMap]:
        """First solution lmap in `domain` with operator(lmap) == target exactly."""
        cols = [codomain.coords(operator(b)) for b in domain.basis]
        A = Mat.hstack(self.field, cols) if cols \
            else Mat.zeros(self.field, codomain.dim, 0)
        rhs = codomain.coords(target)
        sol = LinSolver(A).solve(rhs)
        if sol is None:
            return None
        return domain.from_coords(sol) if domain.dim else RepMap.zero(domain.M, domain.N)

    def shift_map(self, f: RepMap, direction: int) -> RepMap:
        """Functorial action of the shift on a module map."""
        key = (f.key(), direction)
        if key in self._shift_map:
            return self._shift_map[key]
        M, N = f.source, f.target
        if direction == 1:
            lam = self.envelope_lift(f)
            _, _, cokM, projM, secM = self.envelope(M)
            _, _, cokN, projN, _ = self.envelope(N)
            comp = compose(projN, lam)
            mats = [cm @ sm for cm, sm in zip(comp.mats, secM)]
            out = RepMap(cokM, cokN, mats, check=True)
        elif direction == -1:
            mu = self.cover_lift(f)
            _, _, kerM, inclM = self.cover(M)
            _, _, kerN, inclN = self.cover(N)
            comp = compose(mu, inclM)
            mats = []
            for v in range(self.algebra.quiver.n_vertices):
                if kerN.dims[v] == 0:
                    mats.append(Mat.zeros(self.field, 0, kerM.dims[v]))
                    continue
                sol = LinSolver(inclN.mats[v]).solve_many(comp.mats[v])
                if sol is None:
                    raise InternalConsistencyError("syzygy restriction failed")
                mats.append(sol)
            out = RepMap(kerM, kerN, mats, check=True)
        else:
            raise InputError("direction must be +1 or -1")
        self._shift_map[key] = out
        return out

    # -- stable hom spaces ---------------------------------------------------
    def proj_ideal_basis(self, M: Rep, N: Rep) -> List[RepMap]:
        """Basis of maps M -> N factoring through a projective.

        Computed as the span of (Hom(I(M), N) composed with the envelope),
        valid because projectives and injectives coincide.
        """
        return self.st_hom(M, N)._ideal_maps

    def st_hom(self, M: Rep, N: Rep) -> StHomData:
        key = (M.key(), N.key())
        data = self._st.get(key)
        if data is None:
            hom = self.hom(M, N)
            I, iota, _, _, _ = self.envelope(M)
            through = [compose(g, iota) for g in hom_basis(I, N)]
            coords = [hom.coords(t) for t in through] if hom.dim else []
            ideal_coords = span_basis(coords)
            data = StHomData(hom, ideal_coords)
            data._ideal_maps = [hom.from_coords(c) for c in ideal_coords]
            self._st[key] = data
        return data

    def st_hom_basis(self, M: Rep, N: Rep) -> Tuple[List[RepMap], int]:
        data = self.st_hom(M, N)
        return data.basis, data.dim

    def st_coords(self, f: RepMap) -> Mat:
        return self.st_hom(f.source, f.target).st_coords(f)

    def st_equal(self, f: RepMap, g: RepMap) -> bool:
        if f.source.key() != g.source.key() or f.target.key() != g.target.key():
            return False
        return self.st_zero(f - g)

    def st_zero(self, f: RepMap) -> bool:
        if f.is_zero():
            return True
        return self.st_coords(f).is_zero()

    # -- canonical sums and normal forms ----------------------------------
    def sum_of(self, pieces: Sequence[Rep]) -> SumData:
        key = tuple(p.key() for p in pieces)
        data = self._sum.get(key)
        if data is None:
            total, incls, projs = direct_sum(self.algebra, list(pieces))
            data = SumData(total, tuple(pieces), tuple(incls), tuple(projs))
            self._sum[key] = data
        return data

    def catalog_object(self, vertex: int, length: int) -> Rep:
        key = (vertex, length)
        if key not in self._catalog:
            self._catalog[key] = self.algebra.interval(vertex, length)
        return self._catalog[key]

    def catalog_sum(self, types: Sequence[Tuple[int, int]]) -> SumData:
        return self.sum_of([self.catalog_object(v, l) for v, l in types])

    def normalize(self, M: Rep) -> NormalForm:
        """Stable normal form over serial algebras; identity otherwise."""
        key = M.key()
        nf = self._norm.get(key)
        if nf is not None:
            return nf
        if not self._serial:
            nf = NormalForm(M, RepMap.identity(M), RepMap.identity(M), ())
            self._norm[key] = nf
            return nf
        alg = self.algebra
        chains = serial_decompose(M)
        kept = [(v, l, chain) for (v, l, chain) in chains
                if l != alg.projective_length(v)]
        dropped = [(v, l, chain) for (v, l, chain) in chains
                   if l == alg.projective_length(v)]
        types = tuple((v, l) for v, l, _ in kept)
        sd = self.catalog_sum(types)
        K = sd.total
        nv = alg.quiver.n_vertices
        # s: K -> M, columns are the chain vectors in canonical order
        s_cols: List[List[Mat]] = [[] for _ in range(nv)]
        order = kept + dropped
        kept_positions: List[List[int]] = [[] for _ in range(nv)]
        counter = [0] * nv
        for idx, (v, l, chain) in enumerate(order):
            seq = chain_vertex_sequence(alg, v, l)
            for j, vec in enumerate(chain):
                w = seq[j]
                s_cols[w].append(vec)
                if idx < len(kept):
                    kept_positions[w].append(counter[w])
                counter[w] += 1
        s_mats, r_mats = [], []
        for w in range(nv):
            cols = s_cols[w]
            B = Mat.hstack(self.field, cols) if cols \
                else Mat.zeros(self.field, M.dims[w], 0)
            if B.rows and B.cols:
                Binv = LinSolver(B).solve_many(Mat.identity(self.field, B.rows))
                if Binv is None:
                    raise InternalConsistencyError("chain basis is not invertible")
            else:
                Binv = Mat.zeros(self.field, B.cols, B.rows)
            sel = kept_positions[w]
            s_sel = self.field.zeros(M.dims[w], len(sel))
            r_sel = self.field.zeros(len(sel), M.dims[w])
            for i, pos in enumerate(sel):
                if M.dims[w]:
                    s_sel[:, i] = B.a[:, pos]
                    r_sel[i, :] = Binv.a[pos, :]
            s_mats.append(Mat(self.field, s_sel))
            r_mats.append(Mat(self.field, r_sel))
        s = RepMap(K, M, s_mats, check=True)
        r = RepMap(M, K, r_mats, check=True)
        nf = NormalForm(K, r, s, types)
        self._norm[key] = nf
        return nf

    def st_iso_witness(self, M: Rep, N: Rep) -> Optional[RepMap]:
        """A stable isomorphism M -> N from matching normal forms, or None."""
        nm, nn = self.normalize(M), self.normalize(N)
        if nm.summands != nn.summands:
            if self._serial:
                return None
            raise UnsupportedError("isomorphism search needs a serial algebra")
        return compose(nn.s, nm.r)

    # -- triangles -----------------------------------------------------------
    def _factor_through_quotient(self, target_map: RepMap, q: RepMap,
                                 sections: List[Mat], codomain: Rep) -> RepMap:
        """Map on coker(q's kernel): factor target_map (killing im) through q."""
        mats = [tm @ sec for tm, sec in zip(target_map.mats, sections)]
        return RepMap(q.target, codomain, mats, check=True)

    def std_triangle(self, f) -> Sextuple:
        return self.std_triangle_data(f).sext

    def std_triangle_data(self, f) -> Triangle:
        """Standard triangle on f: cone of m |-> (envelope(m), -f(m)).

        The cone is replaced by its stable normal form, with the triangle
        maps conjugated along the normalization witnesses.
        """
        if isinstance(f, StMorphism):
            f = f.rep
        key = f.key()
        tri = self._tri.get(key)
        if tri is not None:
            return tri
        M, N = f.source, f.target
        I, iota, M1, piM, _ = self.envelope(M)
        W = self.sum_of([I, N])
        u0 = compose(W.incls[0], iota) - compose(W.incls[1], f)
        _, _, C_raw, q = kernel_cokernel(u0)
        q_sections = self._right_inverses(q)
        g_raw = compose(q, W.incls[1])
        h_target = compose(piM, W.projs[0])  # W -> M[1], kills im u0
        h_raw = self._factor_through_quotient(h_target, q, q_sections, M1)
        norm = self.normalize(C_raw)
        g = compose(norm.r, g_raw)
        h = compose(h_raw, norm.s)
        sext = Sextuple(M, N, norm.K, f, g, h, level="ambient", provenance="cone")
        self._assert_triangle_shape(sext)
        tri = Triangle(sext, _ConeData(W, u0, C_raw, q, q_sections, norm))
        self._tri[key] = tri
        return tri

    def _assert_triangle_shape(self, T: Sextuple):
        if not self.st_zero(compose(T.g, T.f)):
            raise InternalConsistencyError("triangle: g∘f is not stably zero")
        if not self.st_zero(compose(T.h, T.g)):
            raise InternalConsistencyError("triangle: h∘g is not stably zero")

    def rotate(self, T: Sextuple) -> Sextuple:
        """(A,B,C,f,g,h) |-> (B,C,A[1],g,h,-f[1])."""
        if T.level != "ambient":
            raise InputError("rotation is an ambient-level operation")
        A1 = self.shift(T.A, 1)
        if T.h.target.key() != A1.key():
            raise InputError("triangle's connecting map has unexpected target")
        f1 = self.shift_map(T.f, 1)
        return Sextuple(T.B, T.C, A1, T.g, T.h, -f1,
                        level="ambient", provenance=f"rotate({T.provenance})")

    def fill_in(self, T1: Sextuple, T2: Sextuple, a: RepMap, b: RepMap) -> RepMap:
        """Complete (a, b) to a morphism of ambient triangles.

        Requires b∘f1 = f2∘a stably; the completing map c satisfies
        c∘g1 = g2∘b and h2∘c = a[1]∘h1 stably. Raises if the linear system
        is infeasible, which the axioms rule out for genuine triangles.
        """
        if not self.st_equal(compose(b, T1.f), compose(T2.f, a)):
            raise InputError("square does not commute stably")
        solver = self.fill_in_solver(T1, T2)
        c = solver(a, b)
        if c is None:
            raise InternalConsistencyError("fill-in system infeasible")
        return c

    def fill_in_solver(self, T1: Sextuple, T2: Sextuple):
        """Reusable solver returning c for each commuting (a, b), or None."""
        stC = self.st_hom(T1.C, T2.C)
        st1 = self.st_hom(T1.B, T2.C)
        st2 = self.st_hom(T1.C, T2.h.target)
        cols = []
        for e in stC.basis:
            top = st1.st_coords(compose(e, T1.g))
            bot = st2.st_coords(compose(T2.h, e))
            cols.append(Mat.vstack(self.field, [top, bot]))
        A = Mat.hstack(self.field, cols) if cols \
            else Mat.zeros(self.field, st1.dim + st2.dim, 0)
        solver = LinSolver(A)

        def run(a: RepMap, b: RepMap) -> Optional[RepMap]:
            a1 = self.shift_map(a, 1)
            rhs = Mat.vstack(self.field, [
                st1.st_coords(compose(T2.g, b)),
                st2.st_coords(compose(a1, T1.h)),
            ])
            sol = solver.solve(rhs)
            if sol is None:
                return None
            return stC.from_st_coords(sol)

        return run

    def is_st_iso(self, f: RepMap, with_witness: bool = False):
        """Stable isomorphism test via two linear feasibility solves."""
        M, N = f.source, f.target
        stNM = self.st_hom(N, M)
        stMM = self.st_hom(M, M)
        stNN = self.st_hom(N, N)
        left = self._solve_st(stNM, lambda g: compose(g, f), stMM,
                              RepMap.identity(M))
        right = self._solve_st(stNM, lambda g: compose(f, g), stNN,
                               RepMap.identity(N))
        ok = left is not None and right is not None
        if with_witness:
            return ok, left, right
        return ok

    def _solve_st(self, domain: StHomData, operator, codomain: StHomData,
                  target: RepMap) -> Optional[RepMap]:
        cols = [codomain.st_coords(operator(b)) for b in domain.basis]
        A = Mat.hstack(self.field, cols) if cols \
            else Mat.zeros(self.field, codomain.dim, 0)
        rhs = codomain.st_coords(target)
        sol = LinSolver(A).solve(rhs)
        if sol is None:
            return None
        if domain.dim == 0:
            cand = RepMap.zero(domain.hom.M, domain.hom.N)
        else:
            cand = domain.from_st_coords(sol)
        return cand

    def certify_triangle(self, T: Sextuple) -> Optional[RepMap]:
        """Witness that T is a genuine triangle: a stable iso to std(f)."""
        S = self.std_triangle(T.f)
        try:
            c = self.fill_in(T, S, RepMap.identity(T.A), RepMap.identity(T.B))
        except (InputError, InternalConsistencyError):
            return None
        return c if self.is_st_iso(c) else None

    # -- fibers (cocones) ------------------------------------------------------
    def fiber_triangle(self, f: RepMap) -> Sextuple:
        """Triangle (F, M, N, e, f, w) with F the homotopy fiber of f: M -> N.

        F = ker(P(N) (+) M -> N, (p, m) |-> pi(p) - f(m)); the connecting map
        w is transported from the standard triangle on e through an explicit
        stable isomorphism cone(e) -> N.
        """
        key = f.key()
        got = self._fiber.get(key)
        if got is not None:
            return got
        M, N = f.source, f.target
        P, piN, _, _ = self.cover(N)
        V = self.sum_of([P, M])
        phi = compose(piN, V.projs[0]) - compose(f, V.projs[1])
        F_raw, kappa, _, _ = kernel_cokernel(phi)
        e_raw = compose(V.projs[1], kappa)
        norm = self.normalize(F_raw)
        e = compose(e_raw, norm.s)
        tri = self.std_triangle_data(e)
        # comparison cone(e) -> N: on M use f, on I(F) use pi∘(extension of
        # the P-component of kappa along the envelope of F)
        IF, iotaF, _, _, _ = self.envelope(norm.K)
        p_comp = compose(V.projs[0], compose(kappa, norm.s))  # K -> P
        hsIF = self.hom(IF, P)
        rho0 = self._solve_linear_map(hsIF, lambda m: compose(m, iotaF),
                                      self.hom(norm.K, P), p_comp)
        if rho0 is None:
            raise InternalConsistencyError("fiber comparison extension failed")
        rho = compose(piN, rho0)  # I(F) -> N
        W = tri.cone.W
        chi_target = compose(rho, W.projs[0]) + compose(f, W.projs[1])
        chi_raw = self._factor_through_quotient(chi_target, tri.cone.q,
                                                tri.cone.q_sections, N)
        chi = compose(chi_raw, tri.cone.norm.s)  # K_cone -> N
        ok, chi_inv, _ = self.is_st_iso(chi, with_witness=True)
        if not ok:
            raise InternalConsistencyError("fiber comparison is not a stable iso")
        w = compose(tri.sext.h, chi_inv)  # N -> F[1]
        sext = Sextuple(norm.K, M, N, e, f, w, level="ambient", provenance="fiber")
        self._assert_triangle_shape(sext)
        self._fiber[key] = sext
        return sext

    # -- octahedron -------------------------------------------------------------
    def octahedron(self, f: RepMap, a: RepMap):
        """Octahedron data on composable f: A -> B, a: B -> X.

        Returns (T_f, T_a, T_af, s, t, column, identities) where the
        comparison maps come from explicit pushout maps between the cones
        and `column` is the triangle (C_f, C_af, C_a).
        """
        if f.target.key() != a.source.key():
            raise InputError("maps are not composable")
        af = compose(a, f)
        Tf = self.std_triangle_data(f)
        Ta = self.std_triangle_data(a)
        Taf = self.std_triangle_data(af)
        A = f.source
        IA = self.envelope(A)[0]
        IB = self.envelope(f.target)[0]
        lam = self.envelope_lift(f)
        Wf, Waf, Wa = Tf.cone.W, Taf.cone.W, Ta.cone.W
        # psi1: I(A)(+)B -> I(A)(+)X over (id, a)
        psi1 = compose(Waf.incls[0], Wf.projs[0]) + \
            compose(Waf.incls[1], compose(a, Wf.projs[1]))
        s_target = compose(Taf.cone.q, psi1)
        s_raw = self._factor_through_quotient(s_target, Tf.cone.q,
                                              Tf.cone.q_sections, Taf.cone.C_raw)
        s_map = compose(Taf.cone.norm.r, compose(s_raw, Tf.cone.norm.s))
        # psi2: I(A)(+)X -> I(B)(+)X over (lambda, id)
        psi2 = compose(Wa.incls[0], compose(lam, Waf.projs[0])) + \
            compose(Wa.incls[1], Waf.projs[1])
        t_target = compose(Ta.cone.q, psi2)
        t_raw = self._factor_through_quotient(t_target, Taf.cone.q,
                                              Taf.cone.q_sections, Ta.cone.C_raw)
        t_map = compose(Ta.cone.norm.r, compose(t_raw, Taf.cone.norm.s))
        w = compose(self.shift_map(Tf.sext.g, 1), Ta.sext.h)
        column = Sextuple(Tf.sext.C, Taf.sext.C, Ta.sext.C, s_map, t_map, w,
                          level="ambient", provenance="octahedron column")
        self._assert_triangle_shape(column)
        identities = {
            "middle_square": self.st_equal(compose(Taf.sext.g, a),
                                           compose(s_map, Tf.sext.g)),
            "connecting_square": self.st_equal(compose(Taf.sext.h, s_map), Tf.sext.h),
            "cone_square": self.st_equal(compose(t_map, Taf.sext.g), Ta.sext.g),
            "shifted_square": self.st_equal(compose(Ta.sext.h, t_map),
                                            compose(self.shift_map(f, 1), Taf.sext.h)),
        }
        return Tf.sext, Ta.sext, Taf.sext, s_map, t_map, column, identities
