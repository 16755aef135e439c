"""Exact linear algebra over the rationals.

Matrices are plain lists of rows; entries are converted to ``Fraction`` on
entry. Dimensions here are tiny (at most a few dozen), so straightforward
Gaussian elimination is the right tool.
"""

from fractions import Fraction
from math import gcd


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def frac_vector(v):
    return [Fraction(x) for x in v]


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def matvec(M, v):
    return [dot(row, v) for row in M]


def matmul(A, B):
    cols = list(zip(*B)) if B else []
    return [[dot(row, col) for col in cols] for row in A]


def transpose(M):
    return [list(col) for col in zip(*M)]


def rref(M, ncols=None):
    """Reduced row echelon form. Returns ``(R, pivot_columns)``."""
    R = frac_matrix(M)
    if not R:
        return [], []
    ncols = len(R[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(R)) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        p = R[r][c]
        R[r] = [x / p for x in R[r]]
        for i in range(len(R)):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == len(R):
            break
    return R[:r], pivots


def rank(M):
    if not M:
        return 0
    return len(rref(M)[1])


def nullspace(M, n=None):
    """Basis of ``{x : M x = 0}``; ``n`` is the number of columns when M is empty."""
    if not M:
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def row_space_basis(M):
    return rref(M)[0] if M else []


def solve(A, b):
    """Unique solution of a square nonsingular system, else ``None``."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(frac_matrix(A), frac_vector(b))]
    R, pivots = rref(aug, ncols=n)
    if len(pivots) < n:
        return None
    return [R[i][n] for i in range(n)]


def solve_any(A, b):
    """Some solution of ``A x = b`` (free variables zero), or ``None``."""
    if not A:
        return None
    n = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(frac_matrix(A), frac_vector(b))]
    R, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def det(M):
    A = frac_matrix(M)
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return d


def adjugate(M):
    n = len(M)
    if n == 1:
        return [[Fraction(1)]]
    adj = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(M) if k != i]
            adj[j][i] = (-1) ** (i + j) * det(minor)
    return adj


def is_positive_definite_matrix(Q):
    """Exact test via symmetric elimination: every pivot must be positive."""
    A = frac_matrix(Q)
    n = len(A)
    for c in range(n):
        if A[c][c] <= 0:
            return False
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return True


def primitive(v):
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    v = frac_vector(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def subspace_sum_dim(*spans):
    rows = [r for s in spans for r in s]
    return rank(rows) if rows else 0


def contains_vector(rows, v):
    """True iff ``v`` lies in the row span of ``rows``."""
    if all(x == 0 for x in v):
        return True
    if not rows:
        return False
    return rank(list(rows) + [list(v)]) == rank(rows)
