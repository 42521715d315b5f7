"""Exact dense linear algebra over the rationals and prime fields.

Every categorical existence or uniqueness question downstream is reduced to
the solvers in this module, so results are exact (no floating point) and
bit-for-bit reproducible: leftmost-pivot Gaussian elimination, free
variables pinned to zero, kernels in reduced echelon form.

Prime-field matrices are stored as int64 numpy arrays of least nonnegative
residues; rational matrices as object arrays of ``fractions.Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InputError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: the rationals or a prime field F_p."""

    kind: str  # "rationals" | "prime"
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("rationals", "prime"):
            raise InputError(f"unknown field kind {self.kind!r}")
        if self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise InputError(f"modulus {self.p!r} is not prime")
        elif self.p is not None:
            raise InputError("rationals take no modulus")

    @staticmethod
    def rationals() -> "FieldSpec":
        return FieldSpec("rationals")

    @staticmethod
    def prime(p: int) -> "FieldSpec":
        return FieldSpec("prime", p)

    @property
    def is_prime_field(self) -> bool:
        return self.kind == "prime"

    def canon(self, x) -> object:
        """Canonical scalar: least residue mod p, or a reduced Fraction."""
        if self.kind == "prime":
            return int(x) % self.p
        return Fraction(x)

    def inverse(self, x):
        if self.kind == "prime":
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, self.p - 2, self.p)
        f = Fraction(x)
        if f == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / f

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.kind == "prime":
            return np.zeros((rows, cols), dtype=np.int64)
        a = np.empty((rows, cols), dtype=object)
        a[...] = Fraction(0)
        return a

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        one = 1 if self.kind == "prime" else Fraction(1)
        for i in range(n):
            a[i, i] = one
        return a

    def asarray(self, entries) -> np.ndarray:
        """Canonicalize a nested sequence / ndarray into field form."""
        raw = np.array(entries, dtype=object)
        if raw.ndim == 1:
            raw = raw.reshape(-1, 1) if raw.size else raw.reshape(0, 0)
        if self.kind == "prime":
            out = np.zeros(raw.shape, dtype=np.int64)
            it = np.nditer(out, flags=["multi_index"], op_flags=["writeonly"])
            for cell in it:
                cell[...] = int(raw[it.multi_index]) % self.p
            return out
        out = np.empty(raw.shape, dtype=object)
        it = np.nditer(np.zeros(raw.shape), flags=["multi_index"])
        for _ in it:
            out[it.multi_index] = Fraction(raw[it.multi_index])
        return out

    def label(self) -> str:
        return "Q" if self.kind == "rationals" else f"F{self.p}"


class Mat:
    """Immutable exact matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "a", "_key")

    def __init__(self, field: FieldSpec, a: np.ndarray):
        self.field = field
        arr = np.asarray(a)
        if field.kind == "prime":
            arr = np.mod(arr, field.p).astype(np.int64)
        arr.flags.writeable = False
        self.a = arr
        self._key = None

    # construction -----------------------------------------------------
    @staticmethod
    def from_rows(field: FieldSpec, rows: Sequence[Sequence]) -> "Mat":
        rows = list(rows)
        if rows:
            arr = field.asarray(rows)
        else:
            arr = field.zeros(0, 0)
        return Mat(field, arr)

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        return Mat(field, field.zeros(rows, cols))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        return Mat(field, field.eye(n))

    @staticmethod
    def column(field: FieldSpec, entries: Sequence) -> "Mat":
        arr = field.asarray([[e] for e in entries]) if len(entries) else field.zeros(0, 1)
        return Mat(field, arr)

    # shape ------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.a.shape

    # arithmetic -------------------------------------------------------
    def _wrap(self, arr: np.ndarray) -> "Mat":
        return Mat(self.field, arr)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.shape} @ {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Mat.zeros(self.field, self.rows, other.cols)
        return self._wrap(self.a.dot(other.a))

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} + {other.shape}")
        return self._wrap(self.a + other.a)

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise InputError(f"shape mismatch {self.shape} - {other.shape}")
        return self._wrap(self.a - other.a)

    def __neg__(self) -> "Mat":
        return self._wrap(-self.a)

    def scale(self, c) -> "Mat":
        c = self.field.canon(c)
        return self._wrap(self.a * c)

    def transpose(self) -> "Mat":
        return self._wrap(self.a.T.copy())

    def is_zero(self) -> bool:
        if self.a.size == 0:
            return True
        if self.field.kind == "prime":
            return not self.a.any()
        return all(x == 0 for x in self.a.flat)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and (self - other).is_zero()

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        if self._key is None:
            if self.field.kind == "prime":
                data = self.a.tobytes()
            else:
                data = tuple(self.a.flat)
            self._key = (self.field.kind, self.field.p, self.shape, data)
        return self._key

    def tolist(self) -> list:
        if self.field.kind == "prime":
            return [[int(x) for x in row] for row in self.a]
        return [[str(x) for x in row] for row in self.a]

    def __repr__(self):
        return f"Mat({self.field.label()}, {self.a.tolist()})"

    # block assembly ----------------------------------------------------
    @staticmethod
    def hstack(field: FieldSpec, mats: Sequence["Mat"]) -> "Mat":
        mats = list(mats)
        if not mats:
            return Mat.zeros(field, 0, 0)
        rows = mats[0].rows
        total = sum(m.cols for m in mats)
        out = field.zeros(rows, total)
        c = 0
        for m in mats:
            if m.rows != rows:
                raise InputError("hstack row mismatch")
            if m.cols:
                out[:, c:c + m.cols] = m.a
            c += m.cols
        return Mat(field, out)

    @staticmethod
    def vstack(field: FieldSpec, mats: Sequence["Mat"]) -> "Mat":
        mats = list(mats)
        if not mats:
            return Mat.zeros(field, 0, 0)
        cols = mats[0].cols
        total = sum(m.rows for m in mats)
        out = field.zeros(total, cols)
        r = 0
        for m in mats:
            if m.cols != cols:
                raise InputError("vstack col mismatch")
            if m.rows:
                out[r:r + m.rows, :] = m.a
            r += m.rows
        return Mat(field, out)

    @staticmethod
    def block_diag(field: FieldSpec, mats: Sequence["Mat"]) -> "Mat":
        mats = list(mats)
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = field.zeros(rows, cols)
        r = c = 0
        for m in mats:
            if m.rows and m.cols:
                out[r:r + m.rows, c:c + m.cols] = m.a
            r += m.rows
            c += m.cols
        return Mat(field, out)

    def col(self, j: int) -> "Mat":
        return self._wrap(self.a[:, j:j + 1].copy())

    def columns(self) -> List["Mat"]:
        return [self.col(j) for j in range(self.cols)]


def _rref_inplace(field: FieldSpec, R: np.ndarray, pivot_cols_limit: Optional[int] = None):
    """Fully reduced row echelon form in place; returns pivot column list.

    Pivots are chosen leftmost-column first, topmost nonzero row, so the
    result is canonical for a given input.
    """
    m, n = R.shape
    limit = n if pivot_cols_limit is None else pivot_cols_limit
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r >= m:
            break
        # find first nonzero entry at or below row r
        piv = -1
        for i in range(r, m):
            if R[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            R[[r, piv]] = R[[piv, r]]
        inv = field.inverse(R[r, c])
        R[r, :] = R[r, :] * inv
        if field.kind == "prime":
            R[r, :] %= field.p
        col = R[:, c].copy()
        col[r] = 0
        if field.kind == "prime":
            if col.any():
                R -= np.outer(col, R[r, :])
                R %= field.p
        else:
            nz = [i for i in range(m) if col[i] != 0]
            for i in nz:
                R[i, :] = R[i, :] - col[i] * R[r, :]
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form and pivot columns."""
    R = A.a.copy()
    pivots = _rref_inplace(A.field, R)
    return Mat(A.field, R), pivots


def rank(A: Mat) -> int:
    return len(rref(A)[1])


class LinSolver:
    """Factored solver for repeated exact solves against one matrix.

    Precomputes the row reduction of ``[A | I]`` so each ``solve`` is a
    single matrix product plus consistency check. The returned solution is
    canonical: free variables are zero.
    """

    def __init__(self, A: Mat):
        self.A = A
        field = A.field
        m, n = A.shape
        aug = field.zeros(m, n + m)
        if A.a.size:
            aug[:, :n] = A.a
        aug[:, n:] = field.eye(m)
        pivots = _rref_inplace(field, aug, pivot_cols_limit=n)
        self.field = field
        self.n = n
        self.m = m
        self.pivots = pivots
        self.rank = len(pivots)
        self.R = aug[:, :n]
        self.T = aug[:, n:]

    def solve(self, b: Mat) -> Optional[Mat]:
        """One solution of A x = b with free variables zero, or None."""
        if b.rows != self.m:
            raise InputError(f"rhs height {b.rows} != {self.m}")
        if b.cols != 1:
            raise InputError("rhs must be a column")
        y = self.T.dot(b.a) if self.m else self.field.zeros(0, 1)
        if self.field.kind == "prime" and y.size:
            y = np.mod(y, self.field.p)
        for i in range(self.rank, self.m):
            if y[i, 0] != 0:
                return None
        x = self.field.zeros(self.n, 1)
        for i, c in enumerate(self.pivots):
            x[c, 0] = y[i, 0]
        return Mat(self.field, x)

    def solve_many(self, B: Mat) -> Optional[Mat]:
        """Simultaneous solutions of A X = B (all-or-nothing)."""
        if B.rows != self.m:
            raise InputError(f"rhs height {B.rows} != {self.m}")
        if B.cols == 0:
            return Mat.zeros(self.field, self.n, 0)
        Y = self.T.dot(B.a) if self.m else self.field.zeros(0, B.cols)
        if self.field.kind == "prime" and Y.size:
            Y = np.mod(Y, self.field.p)
        for i in range(self.rank, self.m):
            for j in range(B.cols):
                if Y[i, j] != 0:
                    return None
        X = self.field.zeros(self.n, B.cols)
        for i, c in enumerate(self.pivots):
            X[c, :] = Y[i, :]
        return Mat(self.field, X)

    def kernel(self) -> List[Mat]:
        """Canonical kernel basis (reduced echelon convention)."""
        field = self.field
        free = [c for c in range(self.n) if c not in self.pivots]
        basis = []
        for fcol in free:
            v = field.zeros(self.n, 1)
            one = 1 if field.kind == "prime" else Fraction(1)
            v[fcol, 0] = one
            for i, c in enumerate(self.pivots):
                v[c, 0] = -self.R[i, fcol]
            if field.kind == "prime":
                v = np.mod(v, field.p)
            basis.append(Mat(field, v))
        return basis


def solve(A: Mat, b: Mat) -> Optional[Mat]:
    """Solve A x = b exactly; None iff b is outside the column space."""
    if A.rows != b.rows:
        raise InputError(f"dimension mismatch: {A.rows} rows vs rhs {b.rows}")
    return LinSolver(A).solve(b)


def kernel_basis(A: Mat) -> List[Mat]:
    """Basis of the right kernel of A; empty iff A is injective."""
    return LinSolver(A).kernel()


def in_span(v: Mat, S: Sequence[Mat]) -> bool:
    """True iff v lies in the linear span of the columns S."""
    S = list(S)
    if v.cols != 1:
        raise InputError("v must be a column")
    for s in S:
        if s.rows != v.rows:
            raise InputError("height mismatch in span test")
    if v.is_zero():
        return True
    if not S:
        return False
    A = Mat.hstack(v.field, S)
    return solve(A, v) is not None


def complement_basis(S: Sequence[Mat], V: int, field: Optional[FieldSpec] = None) -> List[Mat]:
    """Greedily complete independent columns S to a basis of k^V.

    Standard basis vectors are tried in order; the chosen complement is
    therefore canonical. Raises if S is dependent.
    """
    S = list(S)
    if field is None:
        if not S:
            raise InputError("field required when S is empty")
        field = S[0].field
    for s in S:
        if s.rows != V:
            raise InputError("ambient dimension mismatch")
    span = Mat.hstack(field, S) if S else Mat.zeros(field, V, 0)
    R = span.a.copy()
    pivots = _rref_inplace(field, R)
    if len(pivots) != len(S):
        raise InputError("S is linearly dependent")
    chosen: List[Mat] = []
    cur = [m for m in S]
    for i in range(V):
        if len(cur) == V:
            break
        e = field.zeros(V, 1)
        e[i, 0] = 1 if field.kind == "prime" else Fraction(1)
        ev = Mat(field, e)
        if not in_span(ev, cur):
            chosen.append(ev)
            cur.append(ev)
    return chosen


def extend_independent(S: Sequence[Mat], candidates: Iterable[Mat]) -> List[Mat]:
    """Greedy independent extension of S drawn from candidates (in order)."""
    cur = list(S)
    out: List[Mat] = []
    for v in candidates:
        if not in_span(v, cur):
            out.append(v)
            cur.append(v)
    return out


def span_basis(vectors: Sequence[Mat]) -> List[Mat]:
    """Greedy canonical basis of the span: first independent vectors kept."""
    return extend_independent([], vectors)
