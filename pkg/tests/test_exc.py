import random

import pytest

from elg._scalar import rat
from elg import linalg
from elg.multilinear import Alt
from elg.exc import (ExcElem, exc_dims, algebra_dim, exc_bracket, exc_basis,
                     embed_e_n, act_E, act_E_matrix, exp_nilpotent_matrix,
                     verify_algebra, evec_split, evec_join,
                     _flatten_elem, elem_from_flat)


def test_dimension_table():
    assert [exc_dims(n) for n in (3, 4, 5, 6)] == \
        [(6, 3), (10, 5), (16, 10), (27, 27)]
    assert [algebra_dim(n) for n in (3, 4, 5, 6)] == [12, 25, 46, 79]


def _rand_elem(rng, n):
    import math
    def f(deg):
        return Alt.from_coords(n, deg, [rat(rng.randint(-2, 2))
                                        for _ in range(math.comb(n, deg))])
    A = [[rat(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    six = {"a6": f(6), "w6": f(6)} if n >= 6 else {}
    return ExcElem.make(n, c=rng.randint(-2, 2), A=A, a3=f(3), w3=f(3),
                        **six)


def test_bracket_antisymmetric():
    rng = random.Random(0)
    for n in (3, 4, 5, 6):
        for _ in range(5):
            x, y = _rand_elem(rng, n), _rand_elem(rng, n)
            assert exc_bracket(x, y) == (-1) * exc_bracket(y, x)


def test_jacobi_random_triples():
    rng = random.Random(1)
    for n in (4, 6):
        for _ in range(5):
            x, y, z = (_rand_elem(rng, n) for _ in range(3))
            lhs = exc_bracket(x, exc_bracket(y, z))
            rhs = exc_bracket(exc_bracket(x, y), z) + \
                exc_bracket(y, exc_bracket(x, z))
            assert lhs == rhs


def test_act_is_representation_random():
    rng = random.Random(2)
    for n in (4, 6):
        for _ in range(5):
            x, y = _rand_elem(rng, n), _rand_elem(rng, n)
            lhs = linalg.commutator(act_E_matrix(x), act_E_matrix(y))
            assert lhs == act_E_matrix(exc_bracket(x, y))


def test_central_element_acts_as_identity_weight():
    n = 4
    one = ExcElem.make(n, c=1)
    u = [rat(i + 1) for i in range(exc_dims(n)[0])]
    assert act_E(one, u) == u


def test_embedding_fixes_central_charge():
    n = 5
    A = linalg.identity(n)
    x = embed_e_n(ExcElem.make(n, A=A))
    assert x.c == rat(n) / (9 - n)
    assert x.matrix_A() == A
    # traceless matrices embed with zero central charge
    B = [[rat(0)] * n for _ in range(n)]
    B[0][1] = rat(1)
    assert embed_e_n(ExcElem.make(n, A=B)).c == 0


def test_basis_spans_algebra_dim():
    for n in (3, 4, 5):
        basis = exc_basis(n)
        assert len(basis) == algebra_dim(n)
        mats = [linalg.flatten(act_E_matrix(b)) for _, _, b in basis]
        assert linalg.rank(mats) == algebra_dim(n)  # faithful


def test_exp_nilpotent_is_inverse_of_negative():
    rng = random.Random(3)
    n = 4
    for kind in ("a3", "w3"):
        form = Alt.from_coords(n, 3, [rat(rng.randint(-2, 2))
                                      for _ in range(4)])
        g = ExcElem.make(n, **{kind: form})
        m = exp_nilpotent_matrix(g)
        minv = exp_nilpotent_matrix((-1) * g)
        assert linalg.mat_mul(m, minv) == linalg.identity(exc_dims(n)[0])


def test_exp_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        exp_nilpotent_matrix(ExcElem.make(4, c=1))


def test_flatten_roundtrip():
    rng = random.Random(4)
    for n in (3, 5, 6):
        x = _rand_elem(rng, n)
        assert elem_from_flat(n, _flatten_elem(x)) == x
        assert len(_flatten_elem(x)) == algebra_dim(n)


def test_evec_split_join_roundtrip():
    n = 5
    dim_e, _ = exc_dims(n)
    u = [rat(i - 3) for i in range(dim_e)]
    assert evec_join(n, *evec_split(n, u)) == u


def test_verify_algebra_small():
    r = verify_algebra(3, full=True)
    assert r["pass"]
    assert r["dim"] == 12
    assert set(r["checks"]) >= {"dimension", "jacobi", "representation",
                                "faithful"}
