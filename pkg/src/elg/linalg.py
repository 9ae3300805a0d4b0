"""Exact rational linear algebra on plain list-of-list matrices.

All routines are over Q and return canonical (RREF) data, so subspace
comparisons are literal equality checks.
"""

from __future__ import annotations

from ._scalar import Rat, ZERO, ONE, rat

Vec = list
Mat = list  # list of rows


def zeros(r: int, c: int) -> Mat:
    return [[ZERO] * c for _ in range(r)]


def zero_vec(n: int) -> Vec:
    return [ZERO] * n


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_copy(m: Mat) -> Mat:
    return [row[:] for row in m]


def transpose(m: Mat) -> Mat:
    return [list(col) for col in zip(*m)]


def mat_add(a: Mat, b: Mat) -> Mat:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, m: Mat) -> Mat:
    c = rat(c)
    return [[c * x for x in row] for row in m]


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), ZERO)
             for col in bt] for row in a]


def mat_vec(m: Mat, v: Vec) -> Vec:
    return [sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in m]


def vec_add(a: Vec, b: Vec) -> Vec:
    return [x + y for x, y in zip(a, b)]


def vec_sub(a: Vec, b: Vec) -> Vec:
    return [x - y for x, y in zip(a, b)]


def vec_scale(c, v: Vec) -> Vec:
    c = rat(c)
    return [c * x for x in v]


def dot(a: Vec, b: Vec):
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def is_zero_vec(v: Vec) -> bool:
    return all(not x for x in v)


def is_zero_mat(m: Mat) -> bool:
    return all(is_zero_vec(row) for row in m)


def mat_eq(a: Mat, b: Mat) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(m: Mat):
    return sum((m[i][i] for i in range(len(m))), ZERO)


def flatten(m: Mat) -> Vec:
    return [x for row in m for x in row]


def unflatten(v: Vec, r: int, c: int) -> Mat:
    return [list(v[i * c:(i + 1) * c]) for i in range(r)]


def rref(rows: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(map(rat, row)) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Mat) -> int:
    return len(rref(rows)[0])


def reduce_against(basis_rref: Mat, pivots: list[int], v: Vec) -> Vec:
    """Residual of v after elimination against an RREF basis."""
    v = list(map(rat, v))
    for row, p in zip(basis_rref, pivots):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def in_span(basis_rref: Mat, pivots: list[int], v: Vec) -> bool:
    return is_zero_vec(reduce_against(basis_rref, pivots, v))


def coordinates_in(basis: Mat, v: Vec) -> Vec | None:
    """Coordinates of v in the span of the given (independent) rows, or None."""
    return _solve_columns(transpose(basis), v)


def _solve_columns(a: Mat, b: Vec) -> Vec | None:
    """Solve A x = b exactly (A given by rows); None if inconsistent.

    A's columns are assumed independent; a unique solution is returned.
    """
    n_unk = len(a[0]) if a else 0
    aug = [list(row) + [x] for row, x in zip(a, b)]
    red, piv = rref(aug)
    sol = zero_vec(n_unk)
    for row, p in zip(red, piv):
        if p == n_unk:
            return None  # inconsistent
        sol[p] = row[-1]
    # verify (guards against dependent columns)
    if mat_vec(a, sol) != list(map(rat, b)):
        return None
    return sol


def solve_matrix(a: Mat, b: Mat) -> Mat | None:
    """Solve A X = B exactly; None if inconsistent.

    Free variables (if any) are set to zero.
    """
    cols = []
    for j in range(len(b[0])):
        col = _solve_columns(a, [row[j] for row in b])
        if col is None:
            return None
        cols.append(col)
    return transpose(cols)


def nullspace(rows: Mat) -> Mat:
    """Basis (rows) of {x : M x = 0}."""
    if not rows:
        return []
    red, piv = rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for fc in free:
        v = zero_vec(n)
        v[fc] = ONE
        for row, p in zip(red, piv):
            v[p] = -row[fc]
        basis.append(v)
    return basis


def span_rref(rows: Mat) -> tuple[Mat, list[int]]:
    return rref(rows)


def span_equal(a: Mat, b: Mat) -> bool:
    ra, _ = rref(a)
    rb, _ = rref(b)
    return ra == rb


def span_contains(a: Mat, b: Mat) -> bool:
    """True iff span(b) is contained in span(a)."""
    ra, pa = rref(a)
    return all(in_span(ra, pa, row) for row in b)
