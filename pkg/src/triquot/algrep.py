"""Quivers, monomial path algebras, and modules as quiver representations.

A module is a dimension vector plus one exact matrix per arrow; a morphism
is one matrix per vertex satisfying the intertwining condition, which is
asserted on every construction. Hom spaces, kernels/cokernels, projective
covers and injective envelopes all reduce to the solvers in ``exactalg``.

Paths are stored as ``(source_vertex_index, (arrow_index, ...))`` so that
trivial paths at different vertices stay distinct. A path ``(v, (a1, a2))``
traverses a1 first; its evaluation on a representation M is
``M[a2] @ M[a1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError, InternalConsistencyError, UnsupportedError
from .exactalg import (
    FieldSpec,
    LinSolver,
    Mat,
    complement_basis,
    extend_independent,
    kernel_basis,
)

Path = Tuple[int, Tuple[int, ...]]


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with labeled vertices and arrows."""

    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (source, target, label)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        labels = [a[2] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise InputError("duplicate arrow labels")
        vset = set(self.vertices)
        for s, t, lab in self.arrows:
            if s not in vset or t not in vset:
                raise InputError(f"arrow {lab!r} has unknown endpoint")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(label)
        except ValueError:
            raise InputError(f"unknown vertex {label!r}") from None

    def arrow_index(self, label: str) -> int:
        for i, (_, _, lab) in enumerate(self.arrows):
            if lab == label:
                return i
        raise InputError(f"unknown arrow {label!r}")

    def arrow_source(self, i: int) -> int:
        return self.vertex_index(self.arrows[i][0])

    def arrow_target(self, i: int) -> int:
        return self.vertex_index(self.arrows[i][1])

    def arrows_from(self, v: int) -> List[int]:
        return [i for i in range(self.n_arrows) if self.arrow_source(i) == v]

    def arrows_into(self, v: int) -> List[int]:
        return [i for i in range(self.n_arrows) if self.arrow_target(i) == v]


class MonomialAlgebra:
    """Path algebra of a quiver modulo monomial relations.

    The basis is the set of paths containing no relation as a contiguous
    subpath, enumerated breadth-first. Construction fails if that set
    exceeds ``max_paths`` (infinite-dimensional algebra).
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Sequence[str]],
                 field: FieldSpec, max_paths: int = 4096):
        self.quiver = quiver
        self.field = field
        rel_idx = []
        for rel in relations:
            idxs = tuple(quiver.arrow_index(lab) for lab in rel)
            if len(idxs) < 2:
                raise InputError("relations must be paths of length >= 2")
            for a, b in zip(idxs, idxs[1:]):
                if quiver.arrow_target(a) != quiver.arrow_source(b):
                    raise InputError("relation is not a composable path")
            rel_idx.append(idxs)
        self.relations: Tuple[Tuple[int, ...], ...] = tuple(rel_idx)
        self.path_basis: Tuple[Path, ...] = self._enumerate_paths(max_paths)
        self._paths_from: Dict[int, List[Path]] = {}
        self._paths_into: Dict[int, List[Path]] = {}
        for p in self.path_basis:
            self._paths_from.setdefault(p[0], []).append(p)
            self._paths_into.setdefault(self.path_target(p), []).append(p)
        self._self_injective: Optional[bool] = None
        self._opposite: Optional["MonomialAlgebra"] = None
        self._module_cache: Dict[tuple, "Rep"] = {}

    # paths --------------------------------------------------------------
    def _contains_relation(self, arrows: Tuple[int, ...]) -> bool:
        for rel in self.relations:
            k = len(rel)
            if k <= len(arrows):
                for start in range(len(arrows) - k + 1):
                    if arrows[start:start + k] == rel:
                        return True
        return False

    def _enumerate_paths(self, max_paths: int) -> Tuple[Path, ...]:
        q = self.quiver
        basis: List[Path] = [(v, ()) for v in range(q.n_vertices)]
        frontier = list(basis)
        while frontier:
            new_frontier: List[Path] = []
            for (v, arrows) in frontier:
                end = v if not arrows else q.arrow_target(arrows[-1])
                for a in q.arrows_from(end):
                    cand = (v, arrows + (a,))
                    if not self._contains_relation(cand[1]):
                        new_frontier.append(cand)
            basis.extend(new_frontier)
            if len(basis) > max_paths:
                raise UnsupportedError(
                    f"path basis exceeds {max_paths}; algebra looks infinite-dimensional")
            frontier = new_frontier
        basis.sort(key=lambda p: (len(p[1]), p[0], p[1]))
        return tuple(basis)

    def path_target(self, p: Path) -> int:
        v, arrows = p
        return v if not arrows else self.quiver.arrow_target(arrows[-1])

    @property
    def dimension(self) -> int:
        return len(self.path_basis)

    def paths_from(self, v: int) -> List[Path]:
        return list(self._paths_from.get(v, []))

    def paths_into(self, v: int) -> List[Path]:
        return list(self._paths_into.get(v, []))

    # serial structure -----------------------------------------------------
    def is_serial(self) -> bool:
        """Nakayama condition: every vertex has at most one arrow in and out."""
        q = self.quiver
        return all(len(q.arrows_from(v)) <= 1 and len(q.arrows_into(v)) <= 1
                   for v in range(q.n_vertices))

    def serial_path_from(self, v: int, length: int) -> Optional[Path]:
        """The unique relation-free path of given length starting at v, if any."""
        arrows: Tuple[int, ...] = ()
        cur = v
        for _ in range(length):
            outs = self.quiver.arrows_from(cur)
            if not outs:
                return None
            arrows = arrows + (outs[0],)
            if self._contains_relation(arrows):
                return None
            cur = self.quiver.arrow_target(outs[0])
        return (v, arrows)

    def projective_length(self, v: int) -> int:
        """Length of the uniserial projective at v (serial algebras)."""
        return len(self.paths_from(v))

    # standard modules ------------------------------------------------------
    def zero_module(self) -> "Rep":
        key = ("zero",)
        if key not in self._module_cache:
            q = self.quiver
            dims = tuple(0 for _ in range(q.n_vertices))
            mats = tuple(Mat.zeros(self.field, 0, 0) for _ in range(q.n_arrows))
            self._module_cache[key] = Rep(self, dims, mats)
        return self._module_cache[key]

    def simple(self, v) -> "Rep":
        v = self._vertex(v)
        key = ("simple", v)
        if key not in self._module_cache:
            q = self.quiver
            dims = tuple(1 if w == v else 0 for w in range(q.n_vertices))
            mats = []
            for i in range(q.n_arrows):
                mats.append(Mat.zeros(self.field, dims[q.arrow_target(i)],
                                      dims[q.arrow_source(i)]))
            self._module_cache[key] = Rep(self, dims, tuple(mats))
        return self._module_cache[key]

    def _vertex(self, v) -> int:
        if isinstance(v, str):
            return self.quiver.vertex_index(v)
        if not 0 <= v < self.quiver.n_vertices:
            raise InputError(f"vertex index {v} out of range")
        return int(v)

    def _module_on_paths(self, paths: List[Path], act, place=None) -> "Rep":
        """Representation with basis `paths`, arrows acting by `act(path, a)`.

        ``place`` sends a basis path to the vertex it sits at (the path
        target by default; injectives place paths at their source).
        """
        q = self.quiver
        if place is None:
            place = self.path_target
        by_vertex: Dict[int, List[Path]] = {w: [] for w in range(q.n_vertices)}
        for p in paths:
            by_vertex[place(p)].append(p)
        index = {p: (place(p), i)
                 for w in by_vertex for i, p in enumerate(by_vertex[w])}
        dims = tuple(len(by_vertex[w]) for w in range(q.n_vertices))
        mats = []
        for a in range(q.n_arrows):
            src, tgt = q.arrow_source(a), q.arrow_target(a)
            m = self.field.zeros(dims[tgt], dims[src])
            for p in by_vertex[src]:
                image = act(p, a)
                if image is not None and image in index:
                    _, j = index[image]
                    _, i = index[p]
                    m[j, i] = 1 if self.field.kind == "prime" else m[j, i] + 1
            mats.append(Mat(self.field, m))
        return Rep(self, dims, tuple(mats))

    def projective(self, v) -> "Rep":
        """Indecomposable projective: paths starting at v, arrows append."""
        v = self._vertex(v)
        key = ("projective", v)
        if key not in self._module_cache:
            paths = self.paths_from(v)

            def act(p: Path, a: int) -> Optional[Path]:
                cand = (p[0], p[1] + (a,))
                return cand if cand in self._pathset() else None

            self._module_cache[key] = self._module_on_paths(paths, act)
        return self._module_cache[key]

    def injective(self, v) -> "Rep":
        """Indecomposable injective: paths ending at v, arrows strip a prefix."""
        v = self._vertex(v)
        key = ("injective", v)
        if key not in self._module_cache:
            paths = self.paths_into(v)

            def act(p: Path, a: int) -> Optional[Path]:
                if p[1] and p[1][0] == a:
                    return (self.quiver.arrow_target(a), p[1][1:])
                return None

            self._module_cache[key] = self._module_on_paths(
                paths, act, place=lambda p: p[0])
        return self._module_cache[key]

    def interval(self, v, length: int) -> "Rep":
        """Uniserial module with top at v and the given length (serial only)."""
        if not self.is_serial():
            raise UnsupportedError("interval modules require a serial algebra")
        v = self._vertex(v)
        plen = self.projective_length(v)
        if not 1 <= length <= plen:
            raise InputError(f"interval length {length} outside 1..{plen}")
        key = ("interval", v, length)
        if key not in self._module_cache:
            paths = [p for p in self.paths_from(v) if len(p[1]) < length]

            def act(p: Path, a: int) -> Optional[Path]:
                cand = (p[0], p[1] + (a,))
                if len(cand[1]) >= length:
                    return None
                return cand if cand in self._pathset() else None

            self._module_cache[key] = self._module_on_paths(paths, act)
        return self._module_cache[key]

    def _pathset(self):
        ps = getattr(self, "_pathset_cache", None)
        if ps is None:
            ps = frozenset(self.path_basis)
            self._pathset_cache = ps
        return ps

    def stable_catalog(self) -> List[Tuple[int, int]]:
        """(vertex, length) labels of the non-projective intervals (serial)."""
        if not self.is_serial():
            raise UnsupportedError("stable catalog requires a serial algebra")
        out = []
        for v in range(self.quiver.n_vertices):
            for length in range(1, self.projective_length(v)):
                out.append((v, length))
        return out

    # opposite algebra -------------------------------------------------------
    def opposite(self) -> "MonomialAlgebra":
        """Opposite algebra: arrows reversed, relations reversed."""
        if self._opposite is None:
            q = self.quiver
            arrows = tuple((t, s, lab) for (s, t, lab) in q.arrows)
            opq = Quiver(q.vertices, arrows)
            rels = []
            for rel in self.relations:
                rels.append([q.arrows[i][2] for i in reversed(rel)])
            op = MonomialAlgebra(opq, rels, self.field)
            self._opposite = op
            op._opposite = self
        return self._opposite


def serial_algebra(field: FieldSpec, n: int, L: int) -> MonomialAlgebra:
    """Cyclic Nakayama algebra: n vertices in a cycle, paths of length L zero.

    ``serial_algebra(field, 1, L)`` is the truncated polynomial ring k[x]/x^L.
    """
    if n < 1 or L < 2:
        raise InputError("need n >= 1 and L >= 2")
    vertices = tuple(str(i + 1) for i in range(n))
    if n == 1:
        arrows = (("1", "1", "x"),)
        labels = ["x"] * L
        relations = [labels]
    else:
        arrows = tuple((str(i + 1), str((i + 1) % n + 1), f"a{i + 1}") for i in range(n))
        relations = []
        for start in range(n):
            relations.append([f"a{(start + j) % n + 1}" for j in range(L)])
    quiver = Quiver(vertices, arrows)
    return MonomialAlgebra(quiver, relations, field)


class Rep:
    """Finite-dimensional representation: dims per vertex, a Mat per arrow."""

    __slots__ = ("algebra", "dims", "mats", "_key")

    def __init__(self, algebra: MonomialAlgebra, dims: Sequence[int], mats: Sequence[Mat]):
        q = algebra.quiver
        dims = tuple(int(d) for d in dims)
        mats = tuple(mats)
        if len(dims) != q.n_vertices or len(mats) != q.n_arrows:
            raise InputError("dimension vector / arrow matrix count mismatch")
        for i, m in enumerate(mats):
            want = (dims[q.arrow_target(i)], dims[q.arrow_source(i)])
            if m.shape != want:
                raise InputError(f"arrow {q.arrows[i][2]!r}: matrix {m.shape}, expected {want}")
        self.algebra = algebra
        self.dims = dims
        self.mats = mats
        self._key = None
        for rel in algebra.relations:
            if not self.evaluate_path((q.arrow_source(rel[0]), rel)).is_zero():
                raise InputError("relation does not vanish on representation")

    def evaluate_path(self, p: Path) -> Mat:
        v, arrows = p
        q = self.algebra.quiver
        cur = Mat.identity(self.algebra.field, self.dims[v])
        for a in arrows:
            cur = self.mats[a] @ cur
        return cur

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.dims, tuple(m.key() for m in self.mats))
        return self._key

    def __repr__(self):
        return f"Rep(dims={self.dims})"


class RepMap:
    """Module homomorphism: one matrix per vertex, intertwining all arrows."""

    __slots__ = ("source", "target", "mats", "_key")

    def __init__(self, source: Rep, target: Rep, mats: Sequence[Mat], check: bool = True):
        if source.algebra is not target.algebra:
            raise InputError("source and target live over different algebras")
        q = source.algebra.quiver
        mats = tuple(mats)
        if len(mats) != q.n_vertices:
            raise InputError("need one matrix per vertex")
        for v, m in enumerate(mats):
            want = (target.dims[v], source.dims[v])
            if m.shape != want:
                raise InputError(f"vertex {q.vertices[v]!r}: matrix {m.shape}, expected {want}")
        self.source = source
        self.target = target
        self.mats = mats
        self._key = None
        if check:
            for a in range(q.n_arrows):
                u, v = q.arrow_source(a), q.arrow_target(a)
                lhs = target.mats[a] @ mats[u]
                rhs = mats[v] @ source.mats[a]
                if lhs != rhs:
                    raise InputError(f"map fails to intertwine arrow {q.arrows[a][2]!r}")

    # constructors ---------------------------------------------------------
    @staticmethod
    def identity(M: Rep) -> "RepMap":
        f = M.algebra.field
        return RepMap(M, M, [Mat.identity(f, d) for d in M.dims], check=False)

    @staticmethod
    def zero(M: Rep, N: Rep) -> "RepMap":
        f = M.algebra.field
        return RepMap(M, N, [Mat.zeros(f, dn, dm) for dm, dn in zip(M.dims, N.dims)], check=False)

    # algebra ----------------------------------------------------------------
    def __matmul__(self, other: "RepMap") -> "RepMap":
        return compose(self, other)

    def __add__(self, other: "RepMap") -> "RepMap":
        self._same_shape(other)
        return RepMap(self.source, self.target,
                      [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "RepMap") -> "RepMap":
        self._same_shape(other)
        return RepMap(self.source, self.target,
                      [a - b for a, b in zip(self.mats, other.mats)], check=False)

    def __neg__(self) -> "RepMap":
        return RepMap(self.source, self.target, [-a for a in self.mats], check=False)

    def scale(self, c) -> "RepMap":
        return RepMap(self.source, self.target, [a.scale(c) for a in self.mats], check=False)

    def _same_shape(self, other: "RepMap"):
        if self.source is not other.source or self.target is not other.target:
            if self.source.key() != other.source.key() or self.target.key() != other.target.key():
                raise InputError("maps have different endpoints")

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def __eq__(self, other):
        if not isinstance(other, RepMap):
            return NotImplemented
        return (self.source.key() == other.source.key()
                and self.target.key() == other.target.key()
                and all(a == b for a, b in zip(self.mats, other.mats)))

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.source.key(), self.target.key(),
                         tuple(m.key() for m in self.mats))
        return self._key

    def vec(self) -> Mat:
        """Row-major flattening of all vertex blocks into one column."""
        field = self.source.algebra.field
        cols = []
        for m in self.mats:
            if m.a.size:
                cols.append(Mat(field, m.a.reshape(-1, 1)))
        if not cols:
            return Mat.zeros(field, 0, 1)
        return Mat.vstack(field, cols)

    def __repr__(self):
        return f"RepMap({self.source.dims} -> {self.target.dims})"


def map_from_vec(M: Rep, N: Rep, vec: Mat, check: bool = True) -> RepMap:
    """Inverse of RepMap.vec for the (M, N) hom space."""
    field = M.algebra.field
    mats = []
    pos = 0
    for dm, dn in zip(M.dims, N.dims):
        size = dm * dn
        block = vec.a[pos:pos + size, 0].reshape(dn, dm) if size else field.zeros(dn, dm)
        mats.append(Mat(field, block.copy()))
        pos += size
    return RepMap(M, N, mats, check=check)


def compose(g: RepMap, f: RepMap) -> RepMap:
    """g after f."""
    if f.target.key() != g.source.key():
        raise InputError("maps are not composable")
    return RepMap(f.source, g.target,
                  [gm @ fm for gm, fm in zip(g.mats, f.mats)], check=False)


def hom_basis(M: Rep, N: Rep) -> List[RepMap]:
    """Canonical basis of the space of module maps M -> N.

    Solves the stacked intertwining system; the basis comes out of the
    reduced-echelon kernel, so it is deterministic.
    """
    if M.algebra is not N.algebra:
        raise InputError("modules over different algebras")
    alg = M.algebra
    field = alg.field
    q = alg.quiver
    nvars = sum(dm * dn for dm, dn in zip(M.dims, N.dims))
    if nvars == 0:
        return []
    offsets = []
    pos = 0
    for dm, dn in zip(M.dims, N.dims):
        offsets.append(pos)
        pos += dm * dn
    rows = []
    for a in range(q.n_arrows):
        u, v = q.arrow_source(a), q.arrow_target(a)
        du_m, dv_m = M.dims[u], M.dims[v]
        du_n, dv_n = N.dims[u], N.dims[v]
        neq = dv_n * du_m
        if neq == 0:
            continue
        block = field.zeros(neq, nvars)
        Na = N.mats[a].a  # dv_n x du_n
        Ma = M.mats[a].a  # dv_m x du_m
        # equation (N_a f_u - f_v M_a)[i, j] = 0, f_u is du_n x du_m row-major
        for i in range(dv_n):
            for j in range(du_m):
                r = i * du_m + j
                base_u = offsets[u]
                for k in range(du_n):
                    block[r, base_u + k * du_m + j] += Na[i, k]
                base_v = offsets[v]
                for l in range(dv_m):
                    block[r, base_v + i * dv_m + l] -= Ma[l, j]
        rows.append(Mat(field, block))
    if not rows:
        A = Mat.zeros(field, 0, nvars)
    else:
        A = Mat.vstack(field, rows)
    basis = kernel_basis(A)
    return [map_from_vec(M, N, v, check=False) for v in basis]


def kernel_cokernel(f: RepMap):
    """Vertex-wise exact kernel and cokernel with induced arrow actions.

    Returns (ker, ker_incl, coker, coker_proj); coker_proj∘f = 0 and
    f∘ker_incl = 0 exactly.
    """
    alg = f.source.algebra
    field = alg.field
    q = alg.quiver
    M, N = f.source, f.target

    ker_bases: List[List[Mat]] = []
    for v in range(q.n_vertices):
        ker_bases.append(kernel_basis(f.mats[v]))
    ker_dims = [len(b) for b in ker_bases]
    ker_incl_mats = [Mat.hstack(field, b) if b else Mat.zeros(field, M.dims[v], 0)
                     for v, b in enumerate(ker_bases)]
    ker_mats = []
    for a in range(q.n_arrows):
        u, v = q.arrow_source(a), q.arrow_target(a)
        img = M.mats[a] @ ker_incl_mats[u]
        if ker_dims[v] == 0:
            ker_mats.append(Mat.zeros(field, 0, ker_dims[u]))
            continue
        sol = LinSolver(ker_incl_mats[v]).solve_many(img)
        if sol is None:
            raise InternalConsistencyError("kernel is not arrow-stable")
        ker_mats.append(sol)
    ker = Rep(alg, ker_dims, ker_mats)
    ker_incl = RepMap(ker, M, ker_incl_mats, check=False)

    # cokernel: complement of the column space at each vertex
    im_bases: List[List[Mat]] = []
    comp_bases: List[List[Mat]] = []
    for v in range(q.n_vertices):
        cols = [f.mats[v].col(j) for j in range(f.mats[v].cols)]
        ib = extend_independent([], cols)
        im_bases.append(ib)
        comp_bases.append(complement_basis(ib, N.dims[v], field))
    cok_dims = [len(b) for b in comp_bases]
    proj_mats = []
    section_mats = []
    for v in range(q.n_vertices):
        full = im_bases[v] + comp_bases[v]
        B = Mat.hstack(field, full) if full else Mat.zeros(field, N.dims[v], 0)
        if N.dims[v] == 0:
            proj_mats.append(Mat.zeros(field, 0, 0))
            section_mats.append(Mat.zeros(field, 0, 0))
            continue
        Binv = LinSolver(B).solve_many(Mat.identity(field, N.dims[v]))
        if Binv is None:
            raise InternalConsistencyError("basis completion failed to invert")
        proj_mats.append(Mat(field, Binv.a[len(im_bases[v]):, :].copy()))
        sec = Mat.hstack(field, comp_bases[v]) if comp_bases[v] \
            else Mat.zeros(field, N.dims[v], 0)
        section_mats.append(sec)
    cok_mats = []
    for a in range(q.n_arrows):
        u, v = q.arrow_source(a), q.arrow_target(a)
        cok_mats.append(proj_mats[v] @ N.mats[a] @ section_mats[u])
    coker = Rep(alg, cok_dims, cok_mats)
    coker_proj = RepMap(N, coker, proj_mats, check=True)
    return ker, ker_incl, coker, coker_proj


def _radical_basis(M: Rep, v: int) -> List[Mat]:
    """Basis of the radical at v: span of images of incoming arrows."""
    q = M.algebra.quiver
    cols: List[Mat] = []
    for a in q.arrows_into(v):
        m = M.mats[a]
        cols.extend(m.col(j) for j in range(m.cols))
    return extend_independent([], cols)


def _socle_basis(M: Rep, v: int) -> List[Mat]:
    """Basis of the socle at v: joint kernel of outgoing arrows."""
    field = M.algebra.field
    q = M.algebra.quiver
    outs = [M.mats[a] for a in q.arrows_from(v)]
    if not outs:
        return [Mat.identity(field, M.dims[v]).col(j) for j in range(M.dims[v])]
    stacked = Mat.vstack(field, outs)
    return kernel_basis(stacked)


def projective_cover(M: Rep) -> Tuple[Rep, RepMap]:
    """Canonical projective cover P(M) -> M.

    P(M) = direct sum of projective(v) with multiplicity dim top(M) at v;
    generators map to a canonical complement of the radical, extended along
    paths. The kernel lies in the radical of P(M).
    """
    alg = M.algebra
    field = alg.field
    q = alg.quiver
    pieces: List[Rep] = []
    gens: List[Tuple[int, Mat]] = []  # (vertex, top lift)
    for v in range(q.n_vertices):
        rad = _radical_basis(M, v)
        lifts = complement_basis(rad, M.dims[v], field)
        for w in lifts:
            pieces.append(alg.projective(v))
            gens.append((v, w))
    if not pieces:
        P = alg.zero_module()
        return P, RepMap(P, M, [Mat.zeros(field, d, 0) for d in M.dims], check=False)
    P, incls, _ = direct_sum(alg, pieces)
    mats = [field.zeros(M.dims[w], P.dims[w]) for w in range(q.n_vertices)]
    for idx, ((v, wvec), piece) in enumerate(zip(gens, pieces)):
        paths = [p for p in alg.paths_from(v)]
        by_vertex: Dict[int, List[Path]] = {w: [] for w in range(q.n_vertices)}
        for p in paths:
            by_vertex[alg.path_target(p)].append(p)
        incl = incls[idx]
        for w in range(q.n_vertices):
            for i, p in enumerate(by_vertex[w]):
                imgvec = M.evaluate_path(p) @ Mat(field, wvec.a)
                col_in_P = incl.mats[w].col(i)
                j = _column_index(col_in_P)
                mats[w][:, j:j + 1] = imgvec.a
    cover = RepMap(P, M, [Mat(field, m) for m in mats], check=True)
    return P, cover


def _column_index(unit_col: Mat) -> int:
    """Index of the unique nonzero entry of a 0/1 inclusion column."""
    for i in range(unit_col.rows):
        if unit_col.a[i, 0] != 0:
            return i
    raise InternalConsistencyError("expected a unit column")


def injective_envelope(M: Rep) -> Tuple[Rep, RepMap]:
    """Canonical injective envelope M -> I(M).

    I(M) = direct sum of injective(v) with multiplicity dim soc(M) at v;
    component maps are path-evaluation functionals built from the dual of a
    canonical socle basis. The image contains the socle of I(M).
    """
    alg = M.algebra
    field = alg.field
    q = alg.quiver
    pieces: List[Rep] = []
    functionals: List[Tuple[int, Mat]] = []  # (vertex, row functional on M_v)
    for v in range(q.n_vertices):
        soc = _socle_basis(M, v)
        if not soc:
            continue
        comp = complement_basis(soc, M.dims[v], field)
        B = Mat.hstack(field, soc + comp)
        Binv = LinSolver(B).solve_many(Mat.identity(field, M.dims[v]))
        if Binv is None:
            raise InternalConsistencyError("socle basis completion failed")
        for i in range(len(soc)):
            pieces.append(alg.injective(v))
            functionals.append((v, Mat(field, Binv.a[i:i + 1, :].copy())))
    if not pieces:
        I = alg.zero_module()
        return I, RepMap(M, I, [Mat.zeros(field, 0, d) for d in M.dims], check=False)
    I, incls, _ = direct_sum(alg, pieces)
    mats = [field.zeros(I.dims[w], M.dims[w]) for w in range(q.n_vertices)]
    for idx, ((v, lam), piece) in enumerate(zip(functionals, pieces)):
        paths = alg.paths_into(v)
        by_vertex: Dict[int, List[Path]] = {w: [] for w in range(q.n_vertices)}
        for p in paths:
            by_vertex[p[0]].append(p)
        incl = incls[idx]
        for w in range(q.n_vertices):
            for i, p in enumerate(by_vertex[w]):
                # coefficient functional: m |-> lam(path(p) m)
                row = lam @ M.evaluate_path(p)
                col_in_I = incl.mats[w].col(i)
                j = _column_index(col_in_I)
                mats[w][j:j + 1, :] = row.a
    env = RepMap(M, I, [Mat(field, m) for m in mats], check=True)
    return I, env


def cover_envelope(M: Rep) -> Tuple[RepMap, RepMap]:
    """(projective cover P(M) ->> M, injective envelope M >-> I(M)).

    Only supported over self-injective algebras, where these drive the
    syzygy and cosyzygy shifts.
    """
    if not is_self_injective(M.algebra):
        raise UnsupportedError("covers/envelopes are exposed for self-injective algebras only")
    _, cover = projective_cover(M)
    _, env = injective_envelope(M)
    return cover, env


def is_self_injective(alg: MonomialAlgebra) -> bool:
    """True iff each indecomposable projective is injective.

    Checked by computing the injective envelope of every projective and
    testing that the envelope map is invertible at every vertex.
    """
    if alg._self_injective is None:
        result = True
        for v in range(alg.quiver.n_vertices):
            P = alg.projective(v)
            I, env = injective_envelope(P)
            if I.dims != P.dims:
                result = False
                break
            ok = True
            for m in env.mats:
                if m.rows != m.cols:
                    ok = False
                    break
                if m.rows and LinSolver(m).rank != m.rows:
                    ok = False
                    break
            if not ok:
                result = False
                break
        alg._self_injective = result
    return alg._self_injective


# direct sums -----------------------------------------------------------


def direct_sum(alg: MonomialAlgebra, pieces: Sequence[Rep]):
    """Direct sum with canonical inclusions and projections."""
    field = alg.field
    q = alg.quiver
    pieces = list(pieces)
    for p in pieces:
        if p.algebra is not alg:
            raise InputError("direct sum across algebras")
    dims = tuple(sum(p.dims[v] for p in pieces) for v in range(q.n_vertices))
    mats = []
    for a in range(q.n_arrows):
        mats.append(Mat.block_diag(field, [p.mats[a] for p in pieces]))
    total = Rep(alg, dims, tuple(mats))
    incls: List[RepMap] = []
    projs: List[RepMap] = []
    offsets = [0] * q.n_vertices
    for p in pieces:
        imats, pmats = [], []
        for v in range(q.n_vertices):
            d, D, off = p.dims[v], dims[v], offsets[v]
            im = field.zeros(D, d)
            pm = field.zeros(d, D)
            one = 1 if field.kind == "prime" else Fraction(1)
            for i in range(d):
                im[off + i, i] = one
                pm[i, off + i] = one
            imats.append(Mat(field, im))
            pmats.append(Mat(field, pm))
        incls.append(RepMap(p, total, imats, check=False))
        projs.append(RepMap(total, p, pmats, check=False))
        for v in range(q.n_vertices):
            offsets[v] += p.dims[v]
    return total, incls, projs


def stack_column(maps: Sequence[RepMap], total: Rep, incls: Sequence[RepMap]) -> RepMap:
    """(f_1, ..., f_k)^T : A -> B_1 (+) ... (+) B_k given the sum's inclusions."""
    out = RepMap.zero(maps[0].source, total)
    for f, incl in zip(maps, incls):
        out = out + (incl @ f)
    return out


def stack_row(maps: Sequence[RepMap], total: Rep, projs: Sequence[RepMap]) -> RepMap:
    """(f_1, ..., f_k) : A_1 (+) ... (+) A_k -> B given the sum's projections."""
    out = RepMap.zero(total, maps[0].target)
    for f, proj in zip(maps, projs):
        out = out + (f @ proj)
    return out


# duality ----------------------------------------------------------------


def dual_rep(M: Rep) -> Rep:
    """Transpose duality into the opposite algebra (k-linear dual)."""
    op = M.algebra.opposite()
    mats = [m.transpose() for m in M.mats]
    return Rep(op, M.dims, tuple(mats))


def dual_map(f: RepMap) -> RepMap:
    """Contravariant transport of a map across the transpose duality."""
    return RepMap(dual_rep(f.target), dual_rep(f.source),
                  [m.transpose() for m in f.mats], check=False)


# serial (Nakayama) decomposition ------------------------------------------


def serial_decompose(M: Rep) -> List[Tuple[int, int, List[Mat]]]:
    """Split a module over a serial algebra into uniserial chains.

    Returns a list of (top_vertex, length, chain) where chain[i] is the
    vector at vertex ``top+i`` obtained by acting with the unique length-i
    path. Deterministic: levels are processed top length first, vertices in
    order, with greedy canonical complements.
    """
    alg = M.algebra
    if not alg.is_serial():
        raise UnsupportedError("serial decomposition requires a serial algebra")
    field = alg.field
    q = alg.quiver
    maxlen = max((alg.projective_length(v) for v in range(q.n_vertices)), default=0)

    def step(v: int) -> Optional[Tuple[int, Mat]]:
        outs = q.arrows_from(v)
        if not outs:
            return None
        a = outs[0]
        return q.arrow_target(a), M.mats[a]

    def path_op(v: int, length: int) -> Optional[Mat]:
        """Evaluation of the unique length-`length` relation-free path from v."""
        p = alg.serial_path_from(v, length)
        if p is None:
            return None
        return M.evaluate_path(p)

    def ker_level(v: int, j: int) -> List[Mat]:
        """ker of acting by the length-j path from v (everything if path dies)."""
        op = path_op(v, j)
        if op is None:
            return [Mat.identity(field, M.dims[v]).col(i) for i in range(M.dims[v])]
        return kernel_basis(op)

    chains: List[Tuple[int, int, List[Mat]]] = []
    # heads[v] collects, per vertex, already-committed vectors by remaining length
    committed: Dict[Tuple[int, int], List[Mat]] = {}

    for j in range(maxlen, 0, -1):
        for v in range(q.n_vertices):
            if M.dims[v] == 0:
                continue
            space = ker_level(v, j)
            if not space:
                continue
            avoid = list(ker_level(v, j - 1)) if j > 1 else []
            avoid.extend(committed.get((v, j), []))
            avoid = extend_independent([], avoid)
            heads = extend_independent(avoid, space)
            for w in heads:
                chain = [w]
                cur_v, cur = v, w
                for i in range(1, j):
                    nxt = step(cur_v)
                    if nxt is None:
                        raise InternalConsistencyError("chain fell off the quiver")
                    cur_v2, mat = nxt
                    cur = mat @ cur
                    chain.append(cur)
                    cur_v = cur_v2
                chains.append((v, j, chain))
                # register every stage with its remaining length
                cur_v = v
                for i, vec in enumerate(chain):
                    committed.setdefault((cur_v, j - i), []).append(vec)
                    nxt = step(cur_v)
                    cur_v = nxt[0] if nxt else cur_v
    total = sum(length for (_, length, _) in chains)
    if total != M.total_dim:
        raise InternalConsistencyError("serial decomposition lost dimensions")
    chains.sort(key=lambda c: (c[0], c[1]))
    return chains


def chain_vertex_sequence(alg: MonomialAlgebra, v: int, length: int) -> List[int]:
    """Vertices visited by the unique length-(length-1) path from v."""
    seq = [v]
    cur = v
    for _ in range(length - 1):
        outs = alg.quiver.arrows_from(cur)
        cur = alg.quiver.arrow_target(outs[0])
        seq.append(cur)
    return seq
