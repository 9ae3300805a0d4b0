"""Elgebras: structure-constant brackets over a group data set.

An elgebra is a bracket on E (not necessarily antisymmetric) whose
symmetric part factors through N via a map D, whose adjoint operators lie
in g, and which satisfies the Leibniz identity.  This module verifies those
axioms exactly, builds (possibly twisted) elgebras out of Lie algebras,
forms the quotient Lie algebra by Im D, and certifies parallelisations and
duality pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._scalar import Rat, ZERO, ONE, rat
from . import linalg
from .multilinear import (Alt, LieAlg, wedge, interior, ce_differential,
                          lie_action_form, sorted_indices)
from . import exc as exc_mod
from .datasets import DataSet, build_dataset
from .subspaces import Subspace, is_colagrangian


@dataclass(frozen=True)
class Twist:
    """Closedness is not required here; see check_twist_integrability."""
    f1: Alt
    f4: Alt


class Elgebra:
    """Bracket structure constants over a data set, with D explicit.

    `ad` holds the operators B_a = [e_a, .]; the constructor re-derives D
    from the bracket and refuses a mismatched input D.
    """

    def __init__(self, ds: DataSet, ad: list, d_matrix: list | None = None):
        self.ds = ds
        if len(ad) != ds.dimE or any(len(m) != ds.dimE for m in ad):
            raise ValueError("ad tensor shape does not match dimE")
        self.ad = [[list(map(rat, row)) for row in m] for m in ad]
        derived = derive_D(ds, self.ad)
        if d_matrix is not None:
            d_matrix = [list(map(rat, row)) for row in d_matrix]
            if d_matrix != derived:
                raise ValueError("supplied D disagrees with the bracket")
        self.D = derived

    @property
    def dim(self) -> int:
        return self.ds.dimE

    def bracket(self, u, v) -> list:
        out = [ZERO] * self.dim
        for a, ua in enumerate(u):
            if ua:
                out = linalg.vec_add(out, linalg.vec_scale(
                    ua, linalg.mat_vec(self.ad[a], v)))
        return out

    def structure_constant(self, gamma: int, alpha: int, beta: int) -> Rat:
        return self.ad[alpha][gamma][beta]

    @classmethod
    def from_structure_constants(cls, ds: DataSet, entries,
                                 d_matrix=None) -> "Elgebra":
        """entries: iterable of (alpha, beta, gamma, value), 1-based."""
        ad = [linalg.zeros(ds.dimE, ds.dimE) for _ in range(ds.dimE)]
        for alpha, beta, gamma, val in entries:
            ad[alpha - 1][gamma - 1][beta - 1] = rat(val)
        return cls(ds, ad, d_matrix)

    @classmethod
    def abelian(cls, ds: DataSet) -> "Elgebra":
        return cls(ds, [linalg.zeros(ds.dimE, ds.dimE)
                        for _ in range(ds.dimE)])


def derive_D(ds: DataSet, ad: list) -> list:
    """The unique D with D (u (x) v)_N = [u,v] + [v,u]."""
    dim, dn = ds.dimE, ds.dimN
    sym_rows, rhs_rows = [], []
    for a in range(dim):
        for b in range(a, dim):
            sym_rows.append(ds._b_table[a][b])
            col_ab = [ad[a][g][b] for g in range(dim)]
            col_ba = [ad[b][g][a] for g in range(dim)]
            rhs_rows.append(linalg.vec_add(col_ab, col_ba))
    if dn == 0:
        if any(not linalg.is_zero_vec(r) for r in rhs_rows):
            raise ValueError("bracket violates the symmetry condition: "
                             "N = 0 requires an antisymmetric bracket")
        return [[] for _ in range(dim)]
    if linalg.rank(sym_rows) != dn:
        raise ValueError("the symmetric pairing does not span N; "
                         "D would not be unique")
    d_t = linalg.solve_matrix(sym_rows, rhs_rows)
    if d_t is None:
        raise ValueError("bracket violates the symmetry condition: "
                         "its symmetric part does not factor through N")
    return linalg.transpose(d_t)


def jacobiator(e: Elgebra, u, v, w) -> list:
    """J(u,v,w) = [u,[v,w]] - [[u,v],w] - [v,[u,w]]."""
    return linalg.vec_sub(
        linalg.vec_sub(e.bracket(u, e.bracket(v, w)),
                       e.bracket(e.bracket(u, v), w)),
        e.bracket(v, e.bracket(u, w)))


def verify_elgebra(e: Elgebra) -> dict:
    """Exact verification of all axioms plus the derived identities."""
    ds = e.ds
    dim = e.dim
    report = {"family": ds.family, "n": ds.n, "dim": dim, "checks": {}}

    # Leibniz: [B_a, B_b] = sum_g c^g_ab B_g as operators
    ok, witness = True, None
    for a in range(dim):
        for b in range(dim):
            lhs = linalg.commutator(e.ad[a], e.ad[b])
            rhs = linalg.zeros(dim, dim)
            for g in range(dim):
                cgab = e.ad[a][g][b]
                if cgab:
                    rhs = linalg.mat_add(rhs, linalg.mat_scale(cgab, e.ad[g]))
            if not linalg.mat_eq(lhs, rhs):
                ok, witness = False, {"pair": (a + 1, b + 1)}
                break
        if not ok:
            break
    report["checks"]["leibniz"] = {"pass": ok, "witness": witness}

    # symmetric part factors through N via the stored D
    ok, witness = True, None
    for a in range(dim):
        for b in range(a, dim):
            sym = [e.ad[a][g][b] + e.ad[b][g][a] for g in range(dim)]
            dn = linalg.mat_vec(e.D, ds._b_table[a][b]) if ds.dimN else \
                [ZERO] * dim
            if sym != dn:
                ok, witness = False, {"pair": (a + 1, b + 1)}
                break
        if not ok:
            break
    report["checks"]["symmetry_via_D"] = {"pass": ok, "witness": witness}

    # structure-group preservation: every [e_a, .] lies in g
    ok, witness = True, None
    for a in range(dim):
        if ds.g_coordinates(e.ad[a]) is None:
            ok, witness = False, {"basis_index": a + 1}
            break
    report["checks"]["ad_in_g"] = {"pass": ok, "witness": witness}

    report["checks"]["imageD_central"] = _check_imageD_central(e)
    report["checks"]["D_equivariant"] = _check_D_equivariant(e)
    report["pass"] = all(c["pass"] for c in report["checks"].values())
    return report


def _check_imageD_central(e: Elgebra) -> dict:
    """[D n, u] = 0 for every n."""
    for m in range(e.ds.dimN):
        dn = [row[m] for row in e.D]
        op = linalg.zeros(e.dim, e.dim)
        for a, c in enumerate(dn):
            if c:
                op = linalg.mat_add(op, linalg.mat_scale(c, e.ad[a]))
        if not linalg.is_zero_mat(op):
            return {"pass": False, "witness": {"n_index": m + 1}}
    return {"pass": True, "witness": None}


def _check_D_equivariant(e: Elgebra) -> dict:
    """[u, D n] = D [u, n], with [u, .] acting on N through g."""
    ds = e.ds
    if ds.dimN == 0:
        return {"pass": True, "witness": None}
    for a in range(e.dim):
        if ds.g_coordinates(e.ad[a]) is None:
            return {"pass": False,
                    "witness": {"basis_index": a + 1, "reason": "not in g"}}
        act_n = ds.act_on_N(e.ad[a])
        lhs = linalg.mat_mul(e.ad[a], e.D)
        rhs = linalg.mat_mul(e.D, act_n)
        if not linalg.mat_eq(lhs, rhs):
            return {"pass": False, "witness": {"basis_index": a + 1}}
    return {"pass": True, "witness": None}


# ---------------------------------------------------------------------------
# twisted elgebras from Lie algebras


def from_lie_twisted(k: LieAlg, t: Twist | None = None) -> Elgebra:
    """E = k + Lambda^2 k* + Lambda^5 k* with the group-manifold bracket,
    optionally twisted by (F1, F4)."""
    n = k.dim
    if not 3 <= n <= 6:
        raise ValueError("the Lie algebra must have dimension 3..6")
    ds = build_dataset("exc", n)
    f1 = t.f1 if t else Alt.zero(n, 1)
    f4 = t.f4 if t else Alt.zero(n, min(4, n))
    if f1.dim != n or f1.deg != 1 or f4.dim != n:
        raise ValueError("twist degrees do not match the Lie algebra")
    dim = ds.dimE
    ident = linalg.identity(dim)
    ad = []
    for a in range(dim):
        cols = [twisted_bracket(k, ident[a], ident[b], f1, f4)
                for b in range(dim)]
        ad.append(linalg.transpose(cols))
    return Elgebra(ds, ad)


def twisted_bracket(k: LieAlg, u, v, f1: Alt, f4: Alt) -> list:
    """The constant-section bracket, with the exterior derivative replaced
    by the Chevalley-Eilenberg differential of k."""
    n = k.dim
    x, s2, s5 = exc_mod.evec_split(n, u)
    y, t2, t5 = exc_mod.evec_split(n, v)
    xv, yv = x.to_vector(), y.to_vector()

    out_t = Alt.from_vector(k.bracket(xv, yv))

    ds2 = ce_differential(k, s2)
    r2 = lie_action_form(k, xv, t2) - interior(y, ds2)
    ixf1 = interior(x, f1)          # scalar (degree 0)
    c1 = ixf1.coords()[0] if ixf1.coords() else ZERO
    if n >= 4:
        r2 = r2 + interior(y, interior(x, f4))
    r2 = r2 + c1 * t2 - interior(y, wedge(f1, s2))

    if n >= 5:
        r5 = lie_action_form(k, xv, t5) - wedge(t2, ds2)
        if n >= 6:
            r5 = r5 - interior(y, ce_differential(k, s5))
        r5 = r5 + wedge(interior(x, f4), t2)
        if n >= 6:
            r5 = r5 - interior(y, wedge(f4, s2))
        r5 = r5 + 2 * c1 * t5 - wedge(wedge(f1, s2), t2)
        if n >= 6:
            r5 = r5 - 2 * interior(y, wedge(f1, s5))
        return exc_mod.evec_join(n, out_t, r2, r5)
    # for n <= 4 every degree-5 contribution vanishes identically
    return exc_mod.evec_join(n, out_t, r2, Alt.zero(n, min(5, n)))


def check_twist_integrability(k: LieAlg, t: Twist) -> bool:
    """dF1 = 0 and dF4 + F1 ^ F4 = 0 (with d the CE differential)."""
    n = k.dim
    if not ce_differential(k, t.f1).is_zero():
        return False
    if n < 5:
        return True  # dF4 and F1 ^ F4 are degree-5 forms, identically zero
    return (ce_differential(k, t.f4) + wedge(t.f1, t.f4)).is_zero()


# ---------------------------------------------------------------------------
# quotients, parallelisations, duality


def image_D(e: Elgebra) -> Subspace:
    cols = linalg.transpose(e.D) if e.ds.dimN else []
    return Subspace(e.ds, "E", cols)


def quotient_gE(e: Elgebra) -> tuple[LieAlg, list]:
    """The Lie algebra E / Im D with its projection matrix."""
    ds = e.ds
    dim = e.dim
    im = image_D(e)
    im_rref, im_piv = im.basis, im._pivots
    # ideal property: [Im D, E] = 0 and [E, Im D] inside Im D
    for m in range(ds.dimN):
        dn = [row[m] for row in e.D]
        op = linalg.zeros(dim, dim)
        for a, c in enumerate(dn):
            if c:
                op = linalg.mat_add(op, linalg.mat_scale(c, e.ad[a]))
        if not linalg.is_zero_mat(op):
            raise ValueError("Im D does not left-annihilate E")
    for a in range(dim):
        for col in im_rref:
            if not im.contains(linalg.mat_vec(e.ad[a], col)):
                raise ValueError("Im D is not a right ideal")
    free = [c for c in range(dim) if c not in im_piv]
    proj = []
    for c in range(dim):
        unit = [ONE if i == c else ZERO for i in range(dim)]
        red = linalg.reduce_against(im_rref, im_piv, unit)
        proj.append([red[fc] for fc in free])
    proj = linalg.transpose(proj)  # len(free) x dim
    f = {}
    for i, a in enumerate(free):
        for j, b in enumerate(free):
            if i >= j:
                continue
            br = [e.ad[a][g][b] for g in range(dim)]
            red = linalg.reduce_against(im_rref, im_piv, br)
            for g, fc in enumerate(free):
                if red[fc]:
                    f[(i + 1, j + 1, g + 1)] = red[fc]
    return LieAlg(len(free), f), proj


def is_subalgebra(e: Elgebra, v: Subspace) -> bool:
    return all(v.contains(e.bracket(x, y))
               for x in v.basis for y in v.basis)


def check_parallelisation(e: Elgebra, v: Subspace) -> dict:
    """V must be a co-Lagrangian subalgebra of codimension n containing
    Im D.  Reports the quotient dimensions as metadata."""
    ds = e.ds
    cert = {"family": ds.family, "n": ds.n, "checks": {}}
    cert["checks"]["subalgebra"] = is_subalgebra(e, v)
    cert["checks"]["colagrangian"] = is_colagrangian(v)
    cert["checks"]["codimension_n"] = (ds.dimE - v.dim == ds.n)
    im = image_D(e)
    cert["checks"]["imD_in_V"] = all(v.contains(b) for b in im.basis)
    cert["pass"] = all(cert["checks"].values())
    if cert["pass"]:
        g_e, proj = quotient_gE(e)
        gv_rank = linalg.rank([linalg.mat_vec(proj, b) for b in v.basis])
        cert["g_E_dim"] = g_e.dim
        cert["g_V_dim"] = gv_rank
    return cert


def duality_pair(e: Elgebra, v1: Subspace, v2: Subspace) -> dict:
    """Certify both subspaces as parallelisations of the same elgebra."""
    c1 = check_parallelisation(e, v1)
    c2 = check_parallelisation(e, v2)
    out = {"first": c1, "second": c2, "pass": c1["pass"] and c2["pass"]}
    if out["pass"]:
        _, proj = quotient_gE(e)
        p1 = [linalg.mat_vec(proj, b) for b in v1.basis]
        p2 = [linalg.mat_vec(proj, b) for b in v2.basis]
        r1, r2 = linalg.rank(p1), linalg.rank(p2)
        out["trivial_intersection"] = (
            r1 + r2 - linalg.rank(p1 + p2) == 0)
    return out


def coordinate_bracket_identity(e: Elgebra) -> bool:
    """Point-level reduction of the coordinate bracket formula: over a
    point the anchor and differential vanish, and the identity reduces to
    every adjoint operator decomposing inside g."""
    return all(e.ds.g_coordinates(m) is not None for m in e.ad)


# ---------------------------------------------------------------------------
# the so(5) example


def wedge2_so_elgebra(m: int = 5) -> Elgebra:
    """so(m) with the commutator bracket, under E = Lambda^2 R^m."""
    ds = build_dataset("slw2", m - 1)
    idxs = list(sorted_indices(m, 2))

    def to_matrix(coords):
        a = linalg.zeros(m, m)
        for (i, j), c in zip(idxs, coords):
            a[i - 1][j - 1] = c
            a[j - 1][i - 1] = -c
        return a

    def to_coords(a):
        return [a[i - 1][j - 1] for (i, j) in idxs]

    dim = ds.dimE
    ident = linalg.identity(dim)
    ad = []
    for a in range(dim):
        cols = [to_coords(linalg.commutator(to_matrix(ident[a]),
                                            to_matrix(ident[b])))
                for b in range(dim)]
        ad.append(linalg.transpose(cols))
    return Elgebra(ds, ad)
