"""The split exceptional Lie algebra (rank 3..6) plus a central line, realised
through its gl(T) grading, together with its actions on the representations
E = T + Lambda^2 T* + Lambda^5 T* and N = T* + Lambda^4 T* + (T* x Lambda^6 T*).

All brackets and actions are exact; `verify_algebra` checks the Jacobi
identity and the representation property on a full basis.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from ._scalar import Rat, ZERO, ONE, rat
from . import linalg
from .multilinear import (Alt, VecValued, wedge, interior, pairing, star,
                          jmap, gl_action, sorted_indices)

NILPOTENT_GRADES = ("a3", "a6", "w3", "w6")


def exc_dims(n: int) -> tuple[int, int]:
    """(dim E, dim N) of the exceptional model at rank n."""
    dim_e = n + math.comb(n, 2) + math.comb(n, 5)
    dim_n = n + math.comb(n, 4) + n * (1 if n >= 6 else 0) * math.comb(n, 6)
    return dim_e, dim_n


def algebra_dim(n: int) -> int:
    return 1 + n * n + 2 * math.comb(n, 3) + 2 * math.comb(n, 6)


@dataclass(frozen=True)
class ExcElem:
    """Element of R + gl(T) + Lambda^3 T* + Lambda^6 T* + Lambda^3 T + Lambda^6 T."""

    n: int
    c: Rat
    A: tuple  # n x n matrix, rows as tuples
    a3: Alt
    a6: Alt
    w3: Alt
    w6: Alt

    @classmethod
    def make(cls, n: int, c=0, A=None, a3=None, a6=None, w3=None, w6=None) -> "ExcElem":
        A = A if A is not None else linalg.zeros(n, n)
        return cls(n, rat(c), tuple(tuple(map(rat, row)) for row in A),
                   a3 or Alt.zero(n, min(3, n)),
                   a6 or Alt.zero(n, min(6, n)),
                   w3 or Alt.zero(n, min(3, n)),
                   w6 or Alt.zero(n, min(6, n)))

    def matrix_A(self) -> list:
        return [list(row) for row in self.A]

    def is_zero(self) -> bool:
        return (not self.c and linalg.is_zero_mat(self.matrix_A())
                and self.a3.is_zero() and self.a6.is_zero()
                and self.w3.is_zero() and self.w6.is_zero())

    def graded_pieces(self) -> list[str]:
        out = []
        if self.c:
            out.append("c")
        if not linalg.is_zero_mat(self.matrix_A()):
            out.append("gl")
        for name in NILPOTENT_GRADES:
            if getattr(self, name):
                out.append(name)
        return out

    def __add__(self, other: "ExcElem") -> "ExcElem":
        return ExcElem.make(self.n, self.c + other.c,
                            linalg.mat_add(self.matrix_A(), other.matrix_A()),
                            self.a3 + other.a3, self.a6 + other.a6,
                            self.w3 + other.w3, self.w6 + other.w6)

    def __sub__(self, other: "ExcElem") -> "ExcElem":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "ExcElem":
        s = rat(scalar)
        return ExcElem.make(self.n, s * self.c,
                            linalg.mat_scale(s, self.matrix_A()),
                            s * self.a3, s * self.a6, s * self.w3, s * self.w6)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExcElem) and self.n == other.n
                and self.c == other.c and self.A == other.A
                and self.a3 == other.a3 and self.a6 == other.a6
                and self.w3 == other.w3 and self.w6 == other.w6)


def exc_bracket(x: ExcElem, y: ExcElem) -> ExcElem:
    """Lie bracket in the gl(T)-graded presentation."""
    if x.n != y.n:
        raise ValueError("ambient dimension mismatch")
    n = x.n
    A, B = x.matrix_A(), y.matrix_A()

    glp = linalg.commutator(A, B)
    cp = ZERO

    # [w3, a3] = (a3 * w3 - 1/3 <a3,w3> 1) + 1/3 <a3,w3>
    if x.w3 and y.a3:
        p = pairing(y.a3, x.w3)
        glp = linalg.mat_add(glp, star(y.a3, x.w3))
        glp = linalg.mat_sub(glp, linalg.mat_scale(p / 3, linalg.identity(n)))
        cp += p / 3
    if y.w3 and x.a3:
        p = pairing(x.a3, y.w3)
        glp = linalg.mat_sub(glp, star(x.a3, y.w3))
        glp = linalg.mat_add(glp, linalg.mat_scale(p / 3, linalg.identity(n)))
        cp -= p / 3
    # [w6, a6] = (a6 * w6 - 2/3 <a6,w6> 1) + 2/3 <a6,w6>
    if x.w6 and y.a6:
        p = pairing(y.a6, x.w6)
        glp = linalg.mat_add(glp, star(y.a6, x.w6))
        glp = linalg.mat_sub(glp, linalg.mat_scale(2 * p / 3, linalg.identity(n)))
        cp += 2 * p / 3
    if y.w6 and x.a6:
        p = pairing(x.a6, y.w6)
        glp = linalg.mat_sub(glp, star(x.a6, y.w6))
        glp = linalg.mat_add(glp, linalg.mat_scale(2 * p / 3, linalg.identity(n)))
        cp -= 2 * p / 3

    a3p = gl_action(A, y.a3, dual=True) - gl_action(B, x.a3, dual=True)
    if x.a6 and y.w3:
        a3p = a3p + interior(y.w3, x.a6)
    if y.a6 and x.w3:
        a3p = a3p - interior(x.w3, y.a6)
    a6p = gl_action(A, y.a6, dual=True) - gl_action(B, x.a6, dual=True)
    if n >= 6:
        a6p = a6p - wedge(x.a3, y.a3)
    w3p = gl_action(A, y.w3, dual=False) - gl_action(B, x.w3, dual=False)
    if x.w6 and y.a3:
        w3p = w3p - interior(y.a3, x.w6)
    if y.w6 and x.a3:
        w3p = w3p + interior(x.a3, y.w6)
    w6p = gl_action(A, y.w6, dual=False) - gl_action(B, x.w6, dual=False)
    if n >= 6:
        w6p = w6p + wedge(x.w3, y.w3)

    return ExcElem.make(n, cp, glp, a3p, a6p, w3p, w6p)


def embed_e_n(x: ExcElem) -> ExcElem:
    """Project onto the exceptional subalgebra: c := tr(A)/(9-n)."""
    return ExcElem.make(x.n, linalg.trace(x.matrix_A()) / (9 - x.n),
                        x.matrix_A(), x.a3, x.a6, x.w3, x.w6)


# ---------------------------------------------------------------------------
# coordinates on E and N


def e_layout(n: int) -> list[tuple[str, tuple]]:
    lay = [("T", (i,)) for i in range(1, n + 1)]
    lay += [("s2", idx) for idx in sorted_indices(n, 2)]
    lay += [("s5", idx) for idx in sorted_indices(n, 5)]
    return lay


def n_layout(n: int) -> list[tuple[str, tuple]]:
    lay = [("n1", (i,)) for i in range(1, n + 1)]
    lay += [("n4", idx) for idx in sorted_indices(n, 4)]
    if n >= 6:
        lay += [("n7", (i,) + idx) for i in range(1, n + 1)
                for idx in sorted_indices(n, 6)]
    return lay


def evec_split(n: int, coords) -> tuple[Alt, Alt, Alt]:
    """Coordinate vector of E -> (X, sigma2, sigma5)."""
    c2 = math.comb(n, 2)
    x = Alt.from_coords(n, 1, coords[:n])
    s2 = Alt.from_coords(n, 2, coords[n:n + c2])
    s5 = Alt.from_coords(n, min(5, n), coords[n + c2:]) if n >= 5 \
        else Alt.zero(n, min(5, n))
    return x, s2, s5


def evec_join(n: int, x: Alt, s2: Alt, s5: Alt) -> list:
    out = x.coords() + s2.coords()
    if n >= 5:
        out += s5.coords()
    return out


def nvec_split(n: int, coords) -> tuple[Alt, Alt, VecValued]:
    c4 = math.comb(n, 4)
    n1 = Alt.from_coords(n, 1, coords[:n])
    n4 = Alt.from_coords(n, min(4, n), coords[n:n + c4]) if n >= 4 \
        else Alt.zero(n, min(4, n))
    n7 = VecValued.from_coords(n, 6, coords[n + c4:]) if n >= 6 \
        else VecValued(n, min(6, n))
    return n1, n4, n7


def nvec_join(n: int, n1: Alt, n4: Alt, n7: VecValued) -> list:
    out = n1.coords()
    if n >= 4:
        out += n4.coords()
    if n >= 6:
        out += n7.coords()
    return out


def act_E(x: ExcElem, u) -> list:
    """Action of the algebra on an E coordinate vector."""
    n = x.n
    X, s2, s5 = evec_split(n, u)
    A = x.matrix_A()

    tp = x.c * X + Alt.from_vector(linalg.mat_vec(A, X.to_vector()))
    s2p = x.c * s2 + gl_action(A, s2, dual=True)
    s5p = x.c * s5 + gl_action(A, s5, dual=True)

    if x.w3:
        if s2:
            tp = tp + interior(s2, x.w3)
        if s5:
            s2p = s2p + interior(x.w3, s5)
    if x.w6 and s5:
        tp = tp - interior(s5, x.w6)
    if x.a3:
        s2p = s2p + interior(X, x.a3)
        if n >= 5:
            s5p = s5p + wedge(x.a3, s2)
    if x.a6:
        s5p = s5p + interior(X, x.a6)
    return evec_join(n, tp, s2p, s5p)


def act_E_matrix(x: ExcElem) -> list:
    dim_e, _ = exc_dims(x.n)
    cols = [act_E(x, col) for col in linalg.identity(dim_e)]
    return linalg.transpose(cols)


def exc_basis(n: int) -> list[tuple[str, tuple, ExcElem]]:
    """Basis of the full algebra (central line + exceptional part).

    gl entries are embedded with the trace relation, so every element except
    the first spans the exceptional subalgebra.
    """
    out = [("c", (), ExcElem.make(n, c=1))]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            A = linalg.zeros(n, n)
            A[i - 1][j - 1] = ONE
            out.append(("gl", (i, j), embed_e_n(ExcElem.make(n, A=A))))
    for name, deg in (("a3", 3), ("a6", 6), ("w3", 3), ("w6", 6)):
        for idx in sorted_indices(n, deg):
            kw = {name: Alt.basis(n, idx)}
            out.append((name, idx, ExcElem.make(n, **kw)))
    return out


def exp_nilpotent_matrix(gen: ExcElem) -> list:
    """exp(act_E(gen)) for a generator in a single nilpotent grade."""
    pieces = gen.graded_pieces()
    if any(p not in NILPOTENT_GRADES for p in pieces):
        raise ValueError("generator must lie in the nilpotent grades")
    dim_e, _ = exc_dims(gen.n)
    m = act_E_matrix(gen)
    out = linalg.identity(dim_e)
    term = linalg.identity(dim_e)
    k = 1
    while True:
        term = linalg.mat_mul(term, m)
        if linalg.is_zero_mat(term):
            break
        out = linalg.mat_add(out, linalg.mat_scale(Rat(1, math.factorial(k)), term))
        k += 1
        if k > dim_e:  # the action of a nilpotent grade is nilpotent; guard anyway
            raise ValueError("generator action is not nilpotent")
    return out


def exp_nilpotent(gen: ExcElem, u) -> list:
    """Apply the one-parameter group element exp(gen) to an E vector."""
    return linalg.mat_vec(exp_nilpotent_matrix(gen), u)


def verify_algebra(n: int, full: bool = True) -> dict:
    """Exhaustive self-check of the algebra at rank n.

    Returns a report dict with per-check pass/fail and witnesses.
    """
    if not 2 <= n <= 6:
        raise ValueError("rank must be in 2..6")
    import numpy as np

    basis = exc_basis(n)
    dim = len(basis)
    report: dict = {"n": n, "dim": dim, "checks": {}}

    report["checks"]["dimension"] = {
        "pass": dim == algebra_dim(n), "expected": algebra_dim(n), "got": dim}

    # Coordinates in `basis` can be read off directly: each gl/nilpotent
    # basis element owns exactly one slot of the flattening, and the central
    # coordinate is whatever remains of c after the embedded trace part.
    def coords_of(z: ExcElem) -> list:
        v = _flatten_elem(z)
        out = list(v)
        out[0] = z.c - linalg.trace(z.matrix_A()) / (9 - n)
        return out

    f = np.zeros((dim, dim, dim), dtype=np.int64)
    scale = 9 - n  # all denominators divide 3*(9-n); use a safe common factor
    denom = 3 * (9 - n)
    for a in range(dim):
        for b in range(a + 1, dim):
            z = exc_bracket(basis[a][2], basis[b][2])
            if z.is_zero():
                continue
            co = coords_of(z)
            for c, v in enumerate(co):
                if v:
                    iv = v * denom
                    if iv.denominator != 1:
                        raise RuntimeError("unexpected denominator in structure constants")
                    f[a, b, c] = int(iv)
                    f[b, a, c] = -int(iv)

    # Jacobi: sum_m f[j,k,m] f[i,m,l] - f[i,j,m] f[m,k,l] - f[i,k,m] f[j,m,l] = 0
    ff = f.reshape(dim * dim, dim)
    H = (ff @ f.reshape(dim, dim * dim)).reshape(dim, dim, dim, dim)
    G = np.einsum("bcm,amd->abcd", f, f, optimize=True)
    jac = G - H - G.transpose(1, 0, 2, 3)
    ok = not jac.any()
    witness = None
    if not ok:
        idx = tuple(int(t) for t in np.argwhere(jac)[0])
        witness = {"triple": idx[:3],
                   "labels": [basis[i][0:2] for i in idx[:3]],
                   "component": idx[3]}
    report["checks"]["jacobi"] = {"pass": ok, "witness": witness}

    # representation property of act_E
    dim_e, _ = exc_dims(n)
    mats = [act_E_matrix(b[2]) for b in basis]
    mats_np = []
    mscale = denom
    for m in mats:
        mi = np.zeros((dim_e, dim_e), dtype=np.int64)
        for i in range(dim_e):
            for j in range(dim_e):
                v = m[i][j] * mscale
                if v.denominator != 1:
                    raise RuntimeError("unexpected denominator in act_E matrix")
                mi[i, j] = int(v)
        mats_np.append(mi)
    stack = np.stack(mats_np)
    ok = True
    witness = None
    for a in range(dim):
        for b in range(a + 1, dim):
            lhs = mats_np[a] @ mats_np[b] - mats_np[b] @ mats_np[a]  # scale denom^2
            rhs = np.tensordot(f[a, b], stack, axes=(0, 0))  # scale denom^2
            if not np.array_equal(lhs, rhs):
                ok = False
                witness = {"pair": (a, b), "labels": (basis[a][0:2], basis[b][0:2])}
                break
        if not ok:
            break
    report["checks"]["representation"] = {"pass": ok, "witness": witness}

    # faithfulness of act_E
    rank = linalg.rank([linalg.flatten(m) for m in mats])
    report["checks"]["faithful"] = {"pass": rank == dim, "rank": rank}

    if full and n >= 3:
        from .datasets import build_dataset
        ds = build_dataset("exc", n)
        report["checks"]["equivariance"] = _check_equivariance(ds, mats)
    report["pass"] = all(c["pass"] for c in report["checks"].values())
    return report


def _check_equivariance(ds, mats) -> dict:
    """sym_to_N(x.u, v) + sym_to_N(u, x.v) = x.sym_to_N(u, v) on all bases."""
    import numpy as np
    dim_e = ds.dimE
    ident = linalg.identity(dim_e)
    for m in mats:
        act_n = ds.act_on_N(m)
        for a in range(dim_e):
            ma = [row[a] for row in m]
            for b in range(a, dim_e):
                mb = [row[b] for row in m]
                lhs = linalg.vec_add(ds.sym_to_N(ma, ident[b]),
                                     ds.sym_to_N(ident[a], mb))
                rhs = linalg.mat_vec(act_n, ds.sym_to_N(ident[a], ident[b]))
                if lhs != rhs:
                    return {"pass": False, "witness": {"pair": (a, b)}}
    return {"pass": True, "witness": None}


def _flatten_elem(x: ExcElem) -> list:
    out = [x.c]
    out += linalg.flatten(x.matrix_A())
    if x.n >= 3:
        out += x.a3.coords()
    if x.n >= 6:
        out += x.a6.coords()
    if x.n >= 3:
        out += x.w3.coords()
    if x.n >= 6:
        out += x.w6.coords()
    return out


def elem_from_flat(n: int, v: list) -> ExcElem:
    c = v[0]
    pos = 1
    A = linalg.unflatten(v[pos:pos + n * n], n, n)
    pos += n * n
    c3, c6 = math.comb(n, 3), math.comb(n, 6)
    a3 = Alt.from_coords(n, 3, v[pos:pos + c3]) if n >= 3 else None; pos += c3
    a6 = Alt.from_coords(n, 6, v[pos:pos + c6]) if n >= 6 else None; pos += c6
    w3 = Alt.from_coords(n, 3, v[pos:pos + c3]) if n >= 3 else None; pos += c3
    w6 = Alt.from_coords(n, 6, v[pos:pos + c6]) if n >= 6 else None; pos += c6
    return ExcElem.make(n, c, A, a3, a6, w3, w6)
