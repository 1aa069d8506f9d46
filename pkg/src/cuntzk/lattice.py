"""Exact integer linear algebra: Smith normal form, kernels, cokernels and
induced endomorphisms on subquotients.

Matrices are plain lists of lists of Python ints, so all arithmetic is
arbitrary precision.  The SNF uses minimal-absolute-value pivoting with full
row and column reduction, which keeps intermediate entries small on the
dense little matrices this package produces.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, NotInvariant


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    assert all(len(row) == m for row in A)
    out = [[0] * p for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k in range(m):
            a = Ai[k]
            if a:
                Bk = B[k]
                row = out[i]
                for j in range(p):
                    row[j] += a * Bk[j]
    return out


def mat_vec(A, v):
    if A and len(A[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(A[0])} columns, vector has {len(v)}")
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)] if A else []


def copy_matrix(A):
    return [list(row) for row in A]


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D = diag(d_1 | d_2 | ...)."""

    U: list
    D: list
    V: list

    def diagonal(self):
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    def rank(self):
        return sum(1 for d in self.diagonal() if d != 0)


def smith_normal_form(M):
    """Smith normal form with unimodular transform certificates."""
    r = len(M)
    c = len(M[0]) if r else 0
    A = copy_matrix(M)
    U = identity_matrix(r)
    V = identity_matrix(c)

    def min_pivot(t):
        pivot = None
        best = None
        for i in range(t, r):
            Ai = A[i]
            for j in range(t, c):
                v = Ai[j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
        return pivot

    # Inside the active block only rows/columns >= t carry nonzeros, so all
    # updates are restricted to that block (U and V rows stay full width).
    t = 0
    while t < min(r, c):
        while True:
            # re-select the globally minimal pivot on every pass: keeping
            # the pivot no larger than anything it reduces is what bounds
            # intermediate entry growth
            pivot = min_pivot(t)
            if pivot is None:
                break
            i0, j0 = pivot
            if i0 != t:
                A[t], A[i0] = A[i0], A[t]
                U[t], U[i0] = U[i0], U[t]
            if j0 != t:
                for i in range(t, r):
                    Ai = A[i]
                    Ai[t], Ai[j0] = Ai[j0], Ai[t]
                for row in V:
                    row[t], row[j0] = row[j0], row[t]
            At = A[t]
            Ut = U[t]
            p = At[t]
            done = True
            for i in range(t + 1, r):
                Ai = A[i]
                if Ai[t] != 0:
                    q = -(Ai[t] // p)
                    for j in range(t, c):
                        Ai[j] += q * At[j]
                    Ui = U[i]
                    for j in range(r):
                        Ui[j] += q * Ut[j]
                    if Ai[t] != 0:
                        done = False
            for j in range(t + 1, c):
                if At[j] != 0:
                    q = -(At[j] // p)
                    for i in range(t, r):
                        Ai = A[i]
                        Ai[j] += q * Ai[t]
                    for row in V:
                        row[j] += q * row[t]
                    if At[j] != 0:
                        done = False
            if not done:
                continue
            # pivot must divide the whole trailing block
            culprit = None
            for i in range(t + 1, r):
                if any(A[i][j] % p for j in range(t + 1, c)):
                    culprit = i
                    break
            if culprit is None:
                break
            Ac, Uc = A[culprit], U[culprit]
            for j in range(t, c):
                At[j] += Ac[j]
            for j in range(r):
                Ut[j] += Uc[j]
        if pivot is None:
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1

    return SmithDecomposition(U, A, V)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group Z^rank + sum Z/d_i with a projection
    from an ambient Z^r.

    Coordinates are (torsion..., free...); torsion moduli satisfy
    d_i | d_{i+1} and invariant factors equal to 1 are dropped.
    """

    free_rank: int
    torsion: tuple
    ambient_dim: int
    proj_matrix: tuple  # rows of U picked out for the kept coordinates
    generators: tuple  # ambient lifts of the coordinate basis vectors

    @property
    def torsion_order(self):
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def project(self, v):
        """Coordinates of an ambient vector: torsion entries reduced mod d."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector length {len(v)} != ambient dimension {self.ambient_dim}"
            )
        raw = [sum(a * x for a, x in zip(row, v)) for row in self.proj_matrix]
        out = []
        for i, d in enumerate(self.torsion):
            out.append(raw[i] % d)
        out.extend(raw[len(self.torsion):])
        return out

    def is_zero(self, v):
        return all(x == 0 for x in self.project(v))

    def describe(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        return " + ".join(parts) if parts else "0"


def _unimodular_inverse(U):
    """Exact inverse of a unimodular integer matrix."""
    n = len(U)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U)]
    for col in range(n):
        piv = next(i for i in range(col, n) if A[i][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for i in range(n):
            if i != col and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[col])]
    out = [[int(A[i][n + j]) for j in range(n)] for i in range(n)]
    return out


def cokernel(M, snf=None):
    """Z^rows / im(M) as an FgAbelianGroup with projection data."""
    r = len(M)
    snf = snf or smith_normal_form(M)
    diag = snf.diagonal()
    rank = snf.rank()
    torsion_rows = [i for i, d in enumerate(diag) if d not in (0, 1)]
    free_rows = [i for i in range(r) if i >= len(diag) or diag[i] == 0]
    kept = torsion_rows + free_rows
    proj = tuple(tuple(snf.U[i]) for i in kept)
    Uinv = _unimodular_inverse(snf.U)
    gens = tuple(tuple(Uinv[row][i] for row in range(r)) for i in kept)
    return FgAbelianGroup(
        free_rank=r - rank,
        torsion=tuple(diag[i] for i in torsion_rows),
        ambient_dim=r,
        proj_matrix=proj,
        generators=gens,
    )


def kernel_basis(M, snf=None):
    """Z-basis of ker(M): the columns of V beyond the rank."""
    c = len(M[0]) if M else 0
    snf = snf or smith_normal_form(M)
    rank = snf.rank()
    return [[snf.V[i][j] for i in range(c)] for j in range(rank, c)]


def solve(M, b, snf=None):
    """One integer solution of M x = b, or None when none exists."""
    r = len(M)
    c = len(M[0]) if M else 0
    if len(b) != r:
        raise DimensionMismatch(f"matrix has {r} rows, vector has {len(b)}")
    snf = snf or smith_normal_form(M)
    ub = mat_vec(snf.U, b)
    diag = snf.diagonal()
    y = [0] * c
    for i in range(r):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    x = mat_vec(snf.V, y)
    assert mat_vec(M, x) == list(b)
    return x


def descend_endomorphism(N, M, coker=None, snf=None):
    """Matrix of the map induced by N on Z^r / im(M).

    Requires N * im(M) <= im(M); the check solves N m_j against M for each
    column m_j and reports a witnessing column on failure.
    """
    snf = snf or smith_normal_form(M)
    coker = coker or cokernel(M, snf)
    cols = len(M[0]) if M else 0
    for j in range(cols):
        col = [M[i][j] for i in range(len(M))]
        if solve(M, mat_vec(N, col), snf) is None:
            raise NotInvariant(j)
    out_cols = [coker.project(mat_vec(N, list(g))) for g in coker.generators]
    return transpose(out_cols) if out_cols else []


def restrict_endomorphism(N, basis):
    """Matrix of N restricted to the lattice spanned by ``basis`` vectors."""
    if not basis:
        return []
    K = transpose(basis)
    ksnf = smith_normal_form(K)
    cols = []
    for v in basis:
        y = solve(K, mat_vec(N, v), ksnf)
        if y is None:
            raise NotInvariant(len(cols))
        cols.append(y)
    return transpose(cols)
