"""Exact dense linear algebra over the integers and rationals.

Everything here is plain list-of-lists with int or Fraction entries; no
floating point.  Sizes are Picard-rank sized (single digits), so clarity
wins over asymptotics throughout.
"""

from fractions import Fraction

from .errors import InvalidInput


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    if any(len(row) != k for row in a):
        raise InvalidInput("matrix dimension mismatch")
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(a, v):
    if any(len(row) != len(v) for row in a):
        raise InvalidInput("matrix/vector dimension mismatch")
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def mat_pow(a, k):
    n = len(a)
    result = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result


def transpose(a):
    return [list(col) for col in zip(*a)]


def charpoly(a):
    """Coefficients of det(tI - a), ascending, via the Berkowitz algorithm.

    Division-free, so exact for int entries; Fraction entries also work.
    """
    n = len(a)
    if n == 0:
        return [1]
    if any(len(row) != n for row in a):
        raise InvalidInput("charpoly needs a square matrix")
    # vectors[r] holds the char poly of the leading r x r principal
    # submatrix, highest degree first.
    poly = [1, -a[0][0]]
    for r in range(2, n + 1):
        m = [row[:r - 1] for row in a[:r - 1]]
        row = a[r - 1][:r - 1]
        col = [a[i][r - 1] for i in range(r - 1)]
        diag = a[r - 1][r - 1]
        # Toeplitz column: 1, -diag, -row.col, -row.m.col, -row.m^2.col, ...
        seq = [1, -diag]
        acc = col
        for _ in range(r - 1):
            seq.append(-sum(row[i] * acc[i] for i in range(r - 1)))
            acc = mat_vec(m, acc)
        new = [0] * (r + 1)
        for i in range(r + 1):
            s = 0
            for j in range(min(i, r) + 1):
                if i - j <= len(poly) - 1:
                    s += seq[j] * poly[i - j]
            new[i] = s
        poly = new
    return list(reversed(poly))


def det(a):
    """Exact determinant; det(a) = (-1)^n * charpoly(a)(0)."""
    n = len(a)
    c0 = charpoly(a)[0]
    return c0 if n % 2 == 0 else -c0


def solve_exact(a, rhs):
    """Solve a x = rhs over the rationals; None if singular."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(rhs[i])]
         for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def inverse_exact(a):
    """Exact inverse with Fraction entries; None if singular."""
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] +
         [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def inverse_unimodular(a):
    """Integer inverse of an integer matrix with determinant +-1."""
    inv = inverse_exact(a)
    if inv is None:
        raise InvalidInput("matrix is singular")
    out = []
    for row in inv:
        int_row = []
        for x in row:
            if x.denominator != 1:
                raise InvalidInput("matrix is not unimodular")
            int_row.append(int(x))
        out.append(int_row)
    return out


def rank(a):
    """Rank over the rationals."""
    if not a:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def nullspace(a):
    """Basis (list of Fraction vectors) of the right kernel of a."""
    if not a:
        return []
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis
