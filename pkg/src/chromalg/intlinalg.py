"""Exact integer and field linear algebra: Smith normal form with unimodular
transforms, cokernel invariants, kernel lattices and membership tests.

Matrices are dense; the cobar and regularity matrices this library produces
stay small (at most a few hundred rows), so clarity and verifiability win
over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainMismatch
from .scalars import Domain


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    entries: tuple  # tuple of row tuples

    @staticmethod
    def make(rows_list) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows_list)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        return IntMatrix(rows)

    @staticmethod
    def zero(m: int, n: int) -> "IntMatrix":
        return IntMatrix(tuple((0,) * n for _ in range(m)))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def to_lists(self):
        return [list(r) for r in self.entries]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries)) if other.entries else []
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)) if self.entries else ())

    def det_sign_free_abs(self) -> int:
        """|det| for square matrices via fraction-free Gaussian elimination."""
        n = self.rows
        if n != self.cols:
            raise ValueError("determinant of non-square matrix")
        a = [[Fraction(x) for x in row] for row in self.entries]
        det = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, n):
                f = a[i][k] / a[k][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return abs(int(det)) if det.denominator == 1 else abs(det)


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ M @ V == D with U, V unimodular and positive divisors d_1 | d_2 | ..."""

    matrix: IntMatrix
    divisors: tuple
    U: IntMatrix
    V: IntMatrix

    @property
    def rank(self) -> int:
        return len(self.divisors)

    def diagonal_matrix(self) -> IntMatrix:
        m, n = self.matrix.rows, self.matrix.cols
        d = [[0] * n for _ in range(m)]
        for i, x in enumerate(self.divisors):
            d[i][i] = x
        return IntMatrix.make(d)

    def verify(self) -> bool:
        if (self.U @ self.matrix @ self.V).entries != self.diagonal_matrix().entries:
            return False
        if self.U.det_sign_free_abs() != 1 or self.V.det_sign_free_abs() != 1:
            return False
        return all(b % a == 0 for a, b in zip(self.divisors, self.divisors[1:]))


def _egcd(a: int, b: int):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _row_combine(A, U, i, j, x, y, u, v):
    # rows i, j <- (x*row_i + y*row_j, u*row_i + v*row_j); applied to A and U
    for M in (A, U):
        ri, rj = M[i], M[j]
        M[i] = [x * a + y * b for a, b in zip(ri, rj)]
        M[j] = [u * a + v * b for a, b in zip(ri, rj)]


def _col_combine(A, V, i, j, x, y, u, v):
    for M in (A, V):
        for row in M:
            a, b = row[i], row[j]
            row[i] = x * a + y * b
            row[j] = u * a + v * b


def smith_normal_form(M: IntMatrix) -> SmithDecomposition:
    """Diagonalize M over Z by unimodular row and column operations."""
    m, n = M.rows, M.cols
    A = M.to_lists()
    U = IntMatrix.identity(m).to_lists()
    V = IntMatrix.identity(n).to_lists()

    def clear_position(k):
        # gcd-pivot at (k, k); returns True when row/col k are clear
        while True:
            for i in range(k + 1, m):
                if A[i][k] != 0:
                    a, b = A[k][k], A[i][k]
                    if a != 0 and b % a == 0:
                        _row_combine(A, U, k, i, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = _egcd(a, b)
                        _row_combine(A, U, k, i, x, y, -(b // g), a // g)
            for j in range(k + 1, n):
                if A[k][j] != 0:
                    a, b = A[k][k], A[k][j]
                    if a != 0 and b % a == 0:
                        _col_combine(A, V, k, j, 1, 0, -(b // a), 1)
                    else:
                        g, x, y = _egcd(a, b)
                        _col_combine(A, V, k, j, x, y, -(b // g), a // g)
            if all(A[i][k] == 0 for i in range(k + 1, m)) and \
               all(A[k][j] == 0 for j in range(k + 1, n)):
                return

    r = 0
    for k in range(min(m, n)):
        # pull a nonzero entry of the trailing submatrix to (k, k)
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if A[i][j] != 0 and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != k:
            _row_combine(A, U, k, piv[0], 0, 1, -1, 0)
        if piv[1] != k:
            _col_combine(A, V, k, piv[1], 0, 1, -1, 0)
        clear_position(k)
        r = k + 1

    for k in range(r):
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]

    # enforce the divisibility chain d_k | d_{k+1}
    changed = True
    while changed:
        changed = False
        for k in range(r - 1):
            a, b = A[k][k], A[k + 1][k + 1]
            if b % a != 0:
                changed = True
                # row k <- row k + row k+1 exposes b to the gcd pivot at (k, k)
                _row_combine(A, U, k, k + 1, 1, 1, 0, 1)
                clear_position(k)
                if A[k][k] < 0:
                    A[k] = [-x for x in A[k]]
                    U[k] = [-x for x in U[k]]
                if A[k + 1][k + 1] < 0:
                    A[k + 1] = [-x for x in A[k + 1]]
                    U[k + 1] = [-x for x in U[k + 1]]

    divisors = tuple(A[k][k] for k in range(r) if A[k][k] != 0)
    return SmithDecomposition(M, divisors, IntMatrix.make(U), IntMatrix.make(V))


def cokernel_invariants(M: IntMatrix | None, ambient_rank: int) -> list:
    """Invariant factors of Z^ambient / column-span(M); 0 marks a free summand."""
    if M is None or M.cols == 0:
        return [0] * ambient_rank
    if M.rows != ambient_rank:
        raise ValueError(f"matrix has {M.rows} rows, ambient rank is {ambient_rank}")
    snf = smith_normal_form(M)
    finite = [d for d in snf.divisors if d != 1]
    return finite + [0] * (ambient_rank - snf.rank)


def kernel_basis_int(M: IntMatrix) -> list:
    """Basis of the kernel lattice {x in Z^cols : M x = 0}."""
    if M.cols == 0:
        return []
    if M.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(M.cols)) for j in range(M.cols)]
    snf = smith_normal_form(M)
    basis = []
    for j in range(snf.rank, M.cols):
        vec = tuple(snf.V.entries[i][j] for i in range(M.cols))
        lead = next((x for x in vec if x != 0), 1)
        if lead < 0:
            vec = tuple(-x for x in vec)
        basis.append(vec)
    return basis


def kernel_basis_field(rows, domain: Domain) -> list:
    """Kernel basis over Q or F_p; rows is a list of coefficient lists."""
    if domain.kind == "Fp":
        p = domain.p
        A = [[int(x) % p for x in row] for row in rows]
    elif domain.kind in ("Q", "Z", "Zp"):
        A = [[Fraction(x) for x in row] for row in rows]
    else:
        raise DomainMismatch(f"no field kernel over {domain}")
    ncols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for j in range(ncols):
        piv = next((i for i in range(rank, len(A)) if A[i][j] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(int(A[rank][j]), -1, domain.p) if domain.kind == "Fp" else 1 / A[rank][j]
        A[rank] = [(x * inv) % domain.p if domain.kind == "Fp" else x * inv for x in A[rank]]
        for i in range(len(A)):
            if i != rank and A[i][j] != 0:
                f = A[i][j]
                if domain.kind == "Fp":
                    A[i] = [(x - f * y) % domain.p for x, y in zip(A[i], A[rank])]
                else:
                    A[i] = [x - f * y for x, y in zip(A[i], A[rank])]
        pivots.append(j)
        rank += 1
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols if domain.kind != "Fp" else [0] * ncols
        vec[j] = Fraction(1) if domain.kind != "Fp" else 1
        for i, pj in enumerate(pivots):
            val = -A[i][j]
            vec[pj] = val % domain.p if domain.kind == "Fp" else val
        # normalize so the first nonzero coordinate is 1
        lead = next((x for x in vec if x != 0), None)
        if lead is not None and lead != 1:
            if domain.kind == "Fp":
                inv = pow(int(lead), -1, domain.p)
                vec = [(x * inv) % domain.p for x in vec]
            else:
                vec = [x / lead for x in vec]
        basis.append(tuple(vec))
    return basis


def rank_field(rows, domain: Domain) -> int:
    ncols = len(rows[0]) if rows else 0
    return ncols - len(kernel_basis_field(rows, domain)) if rows else 0


def solve_int(A: IntMatrix, b) -> list | None:
    """One integer solution x of A x = b, or None when unsolvable over Z."""
    if A.cols == 0:
        return [] if all(v == 0 for v in b) else None
    snf = smith_normal_form(A)
    ub = [sum(snf.U.entries[i][k] * b[k] for k in range(A.rows)) for i in range(A.rows)]
    y = [0] * A.cols
    for i in range(A.rows):
        d = snf.divisors[i] if i < snf.rank else 0
        if d == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % d != 0:
                return None
            y[i] = ub[i] // d
    return [sum(snf.V.entries[i][k] * y[k] for k in range(A.cols)) for i in range(A.cols)]


def in_column_span(A: IntMatrix, b) -> bool:
    return solve_int(A, b) is not None


def lattice_independent(vectors) -> list:
    """Subset of vectors forming a basis of the lattice they span (over Q-rank)."""
    basis = []
    rows = []
    for v in vectors:
        cand = rows + [list(map(Fraction, v))]
        if rank_field(cand, Domain("Q")) > len(rows):
            rows = cand
            basis.append(tuple(v))
    return basis


def kernel_into_lattice(Phi: IntMatrix, lattice_cols: IntMatrix | None) -> list:
    """Basis (over Q) of {x : Phi x lies in the integer span of lattice_cols},
    returned as integer vectors spanning that sublattice of Z^cols."""
    if lattice_cols is None or lattice_cols.cols == 0:
        return kernel_basis_int(Phi)
    rows = [list(Phi.entries[i]) + [-lattice_cols.entries[i][j] for j in range(lattice_cols.cols)]
            for i in range(Phi.rows)]
    full = kernel_basis_int(IntMatrix.make(rows))
    projected = [v[:Phi.cols] for v in full]
    return lattice_independent([v for v in projected if any(v)])
