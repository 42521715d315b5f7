"""Brute-force oracles shared by the test suite.

These deliberately avoid the library's solver paths: morphism spaces are
found by enumerating all candidate vertex matrices over a finite field and
keeping the ones that intertwine, so they can serve as independent checks.
"""

from itertools import product

from triquot.exactalg import Mat, span_basis
from triquot.algrep import Rep, RepMap, compose, hom_basis


def enumerate_matrices(field, rows, cols):
    """All rows x cols matrices over a prime field."""
    p = field.p
    cells = rows * cols
    for combo in product(range(p), repeat=cells):
        yield Mat.from_rows(field, [list(combo[r * cols:(r + 1) * cols]) for r in range(rows)]) \
            if cells else Mat.zeros(field, rows, cols)
        if cells == 0:
            return


def brute_force_hom(M: Rep, N: Rep):
    """All module maps M -> N found by exhaustive enumeration over F_p."""
    alg = M.algebra
    field = alg.field
    q = alg.quiver
    assert field.kind == "prime"
    per_vertex = []
    for v in range(q.n_vertices):
        per_vertex.append(list(enumerate_matrices(field, N.dims[v], M.dims[v])))
    maps = []
    for combo in product(*per_vertex):
        ok = True
        for a in range(q.n_arrows):
            u, v = q.arrow_source(a), q.arrow_target(a)
            if N.mats[a] @ combo[u] != combo[v] @ M.mats[a]:
                ok = False
                break
        if ok:
            maps.append(RepMap(M, N, list(combo), check=False))
    return maps


def brute_force_hom_dim(M: Rep, N: Rep) -> int:
    """log_p of the number of intertwiners (the hom space is linear)."""
    count = len(brute_force_hom(M, N))
    p = M.algebra.field.p
    dim = 0
    while p ** dim < count:
        dim += 1
    assert p ** dim == count
    return dim


def brute_force_projective_ideal_dim(M: Rep, N: Rep) -> int:
    """dim of maps M -> N factoring through some projective, by composing
    all hom-basis pairs through every indecomposable projective."""
    alg = M.algebra
    vecs = []
    for v in range(alg.quiver.n_vertices):
        P = alg.projective(v)
        for f in hom_basis(M, P):
            for g in hom_basis(P, N):
                vecs.append(compose(g, f).vec())
    return len(span_basis(vecs))
