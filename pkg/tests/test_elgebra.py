import math
import random

import pytest

from elg._scalar import rat, ZERO, ONE
from elg import linalg
from elg.multilinear import Alt, LieAlg, wedge, interior, ce_differential
from elg.subspaces import (Subspace, _standard_colagrangian,
                           _standard_lagrangian, GroupWord)
from elg.exc import ExcElem
from elg.elgebra import (Twist, Elgebra, derive_D, jacobiator,
                         verify_elgebra, from_lie_twisted,
                         check_twist_integrability, image_D, quotient_gE,
                         is_subalgebra, check_parallelisation, duality_pair,
                         coordinate_bracket_identity, wedge2_so_elgebra)
from elg.randomized import random_form, random_lie4, random_twist


def test_abelian_elgebra_verifies(dataset):
    e = Elgebra.abelian(dataset("exc", 4))
    r = verify_elgebra(e)
    assert r["pass"]
    assert image_D(e).dim == 0


def test_untwisted_group_elgebra(dataset):
    e = from_lie_twisted(LieAlg.heisenberg(4))
    r = verify_elgebra(e)
    assert r["pass"]
    # quotient dimension = dimE - rank(D)
    g_e, proj = quotient_gE(e)
    assert g_e.dim == e.dim - image_D(e).dim
    assert coordinate_bracket_identity(e)


def test_derive_D_zero_for_lie_bracket(dataset):
    e = from_lie_twisted(LieAlg.abelian(4))
    assert linalg.is_zero_mat(e.D)
    r = verify_elgebra(e)
    assert r["pass"]


def test_constructor_rejects_mismatched_D(dataset):
    ds = dataset("exc", 4)
    e = from_lie_twisted(LieAlg.heisenberg(4))
    bad = [list(row) for row in e.D]
    bad[0][0] = bad[0][0] + 1
    with pytest.raises(ValueError):
        Elgebra(ds, e.ad, bad)


def test_gl_family_requires_antisymmetric(dataset):
    ds = dataset("gl", 2)
    # ad with a symmetric part cannot factor through N = 0
    ad = [linalg.zeros(2, 2) for _ in range(2)]
    ad[0][0][0] = ONE  # [e1,e1] = e1
    with pytest.raises(ValueError):
        Elgebra(ds, ad)


def test_twist_integrability_examples():
    k = LieAlg.heisenberg(4)
    zero1, zero4 = Alt.zero(4, 1), Alt.zero(4, 4)
    assert check_twist_integrability(k, Twist(zero1, zero4))
    # delta e^3 = -e^1 ^ e^2 != 0 for the Heisenberg relation [e1,e2]=e3
    assert ce_differential(k, Alt.basis(4, (3,))) == \
        -1 * Alt.basis(4, (1, 2))
    assert not check_twist_integrability(k, Twist(Alt.basis(4, (3,)), zero4))
    # abelian: every twist is integrable
    ab = LieAlg.abelian(4)
    assert check_twist_integrability(
        ab, Twist(Alt.basis(4, (1,)), Alt.basis(4, (1, 2, 3, 4))))


def _expected_jacobiator(k, t, x, y, s2):
    """sigma2 ^ i_Y i_X (dF4 + F1^F4 + dF1) split into its graded slots."""
    n = k.dim
    d_f1 = ce_differential(k, t.f1)
    top = ce_differential(k, t.f4) + wedge(t.f1, t.f4)
    def ii(a):
        return interior(Alt.from_vector(y), interior(Alt.from_vector(x), a))
    s2_slot = ii(d_f1).scalar_value() * s2
    s5_slot = wedge(s2, ii(top)) if n >= 5 else Alt.zero(n, min(5, n))
    out = [ZERO] * n + s2_slot.coords()
    if n >= 5:
        out += s5_slot.coords()
    return out


def test_jacobiator_witness_formula():
    rng = random.Random(0)
    for n, make_k in ((4, lambda: LieAlg.heisenberg(4)),
                      (5, lambda: LieAlg.heisenberg(5))):
        k = make_k()
        t = Twist(random_form(rng, n, 1), random_form(rng, n, 4))
        e = from_lie_twisted(k, t)
        for _ in range(5):
            x = [rat(rng.randint(-2, 2)) for _ in range(n)]
            y = [rat(rng.randint(-2, 2)) for _ in range(n)]
            s2 = random_form(rng, n, 2)
            u = x + [ZERO] * (e.dim - n)
            v = y + [ZERO] * (e.dim - n)
            w = [ZERO] * n + s2.coords() + \
                [ZERO] * (e.dim - n - math.comb(n, 2))
            assert jacobiator(e, u, v, w) == _expected_jacobiator(k, t, x, y,
                                                                  s2)


def test_jacobiator_vanishes_iff_integrable():
    rng = random.Random(1)
    hits = {True: 0, False: 0}
    for _ in range(20):
        k = random_lie4(rng)
        t = random_twist(rng, 4)
        e = from_lie_twisted(k, t)
        ok = verify_elgebra(e)["pass"]
        assert ok == check_twist_integrability(k, t)
        hits[ok] += 1
    assert hits[True] and hits[False]  # both branches exercised


def test_quotient_is_lie_algebra(dataset):
    e = from_lie_twisted(LieAlg.heisenberg(4))
    g_e, proj = quotient_gE(e)  # LieAlg constructor validates Jacobi
    assert len(proj) == g_e.dim
    # the projection intertwines brackets
    rng = random.Random(2)
    u = [rat(rng.randint(-2, 2)) for _ in range(e.dim)]
    v = [rat(rng.randint(-2, 2)) for _ in range(e.dim)]
    lhs = linalg.mat_vec(proj, e.bracket(u, v))
    rhs = g_e.bracket(linalg.mat_vec(proj, u), linalg.mat_vec(proj, v))
    assert lhs == rhs


def test_subalgebra_checks(dataset):
    e = Elgebra.abelian(dataset("exc", 3))
    full = Subspace(e.ds, "E", linalg.identity(e.dim))
    assert is_subalgebra(e, full)
    e2 = from_lie_twisted(LieAlg.heisenberg(4))
    v = _standard_colagrangian(e2.ds)
    assert is_subalgebra(e2, v)


def test_group_manifold_parallelisation():
    e = from_lie_twisted(LieAlg.heisenberg(4))
    cert = check_parallelisation(e, _standard_colagrangian(e.ds))
    assert cert["pass"]
    assert cert["g_E_dim"] - cert["g_V_dim"] == 4


def test_so5_elgebra_and_sphere():
    e = wedge2_so_elgebra(5)
    assert e.dim == 10 and e.ds.family == "slw2"
    assert verify_elgebra(e)["pass"]
    assert coordinate_bracket_identity(e)
    idx = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
    rows = [[ONE if k == m else ZERO for m in range(10)]
            for k, (i, j) in enumerate(idx) if j <= 4]
    cert = check_parallelisation(e, Subspace(e.ds, "E", rows))
    assert cert["pass"]
    assert (cert["g_E_dim"], cert["g_V_dim"]) == (10, 6)


def test_parallelisation_failure_modes(dataset):
    e = Elgebra.abelian(dataset("exc", 4))
    too_small = Subspace(e.ds, "E", _standard_colagrangian(e.ds).basis[:-1])
    cert = check_parallelisation(e, too_small)
    assert not cert["pass"]
    assert not cert["checks"]["codimension_n"]


def test_duality_pair_torus(dataset):
    ds = dataset("exc", 4)
    e = Elgebra.abelian(ds)
    v1 = _standard_colagrangian(ds)
    gen = ExcElem.make(4, w3=Alt.basis(4, (1, 2, 3)))
    v2 = GroupWord([gen]).apply_subspace(v1)
    assert v1 != v2
    cert = duality_pair(e, v1, v2)
    assert cert["pass"]
    assert cert["first"]["pass"] and cert["second"]["pass"]


def test_duality_pair_failure(dataset):
    ds = dataset("exc", 4)
    e = Elgebra.abelian(ds)
    v1 = _standard_colagrangian(ds)
    bad = Subspace(ds, "E", _standard_lagrangian(ds).basis
                   + v1.basis[:ds.dimE - 2 * ds.n])
    cert = duality_pair(e, v1, bad)
    assert not cert["pass"]
