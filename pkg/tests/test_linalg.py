import random

from elg._scalar import rat
from elg import linalg


def _rand_mat(rng, r, c, lo=-5, hi=5):
    return [[rat(rng.randint(lo, hi)) for _ in range(c)] for _ in range(r)]


def test_rref_idempotent_and_rank():
    rng = random.Random(0)
    for _ in range(20):
        m = _rand_mat(rng, 4, 6)
        rows, pivots = linalg.rref(m)
        assert len(rows) == len(pivots) == linalg.rank(m)
        again, _ = linalg.rref(rows)
        assert again == rows


def test_nullspace_annihilates():
    rng = random.Random(1)
    for _ in range(20):
        m = _rand_mat(rng, 3, 5)
        for v in linalg.nullspace(m):
            assert linalg.is_zero_vec(linalg.mat_vec(m, v))
        assert linalg.rank(m) + len(linalg.nullspace(m)) == 5


def test_solve_matrix_inverse():
    rng = random.Random(2)
    while True:
        m = _rand_mat(rng, 4, 4)
        if linalg.rank(m) == 4:
            break
    inv = linalg.solve_matrix(m, linalg.identity(4))
    assert linalg.mat_mul(m, inv) == linalg.identity(4)


def test_in_span_and_coordinates():
    basis = [[rat(1), rat(0), rat(2)], [rat(0), rat(1), rat(3)]]
    v = [rat(2), rat(-1), rat(1)]
    co = linalg.coordinates_in(basis, v)
    assert co is not None
    got = [rat(0)] * 3
    for c, b in zip(co, basis):
        got = linalg.vec_add(got, linalg.vec_scale(c, b))
    assert got == v
    rows, pivots = linalg.rref(basis)
    assert linalg.in_span(rows, pivots, v)
    assert not linalg.in_span(rows, pivots, [rat(0), rat(0), rat(1)])


def test_span_equal_is_basis_independent():
    a = [[rat(1), rat(1)], [rat(0), rat(2)]]
    b = [[rat(3), rat(1)], [rat(1), rat(1)]]
    assert linalg.span_equal(a, b)
    assert not linalg.span_equal(a, [[rat(1), rat(0)]])


def test_commutator_and_trace():
    x = [[rat(0), rat(1)], [rat(0), rat(0)]]
    y = [[rat(0), rat(0)], [rat(1), rat(0)]]
    h = linalg.commutator(x, y)
    assert h == [[rat(1), rat(0)], [rat(0), rat(-1)]]
    assert linalg.trace(h) == 0
