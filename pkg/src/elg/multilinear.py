"""Exact exterior algebra over Q.

Alternating tensors (forms on T* as well as polyvectors on T) share one sparse
representation: a map from strictly increasing 1-based multi-indices to
rational coefficients.  Contraction of a polyvector into a form and of a form
into a polyvector are the same index calculus, so both go through
:func:`interior`.

Conventions (used consistently by every downstream formula):

* ``interior`` of a decomposable contractor x1^...^xm applies the single
  contractions innermost-first, i.e. i_{x1} first, then i_{x2}, ...  With this
  choice ``<e^I, e_I> = 1`` on every sorted multi-index.
* the Chevalley-Eilenberg differential satisfies (da)(x, y) = -a([x, y]) on
  1-forms and extends as an odd derivation.
"""

from __future__ import annotations

import itertools

from ._scalar import Rat, ZERO, ONE, rat
from . import linalg

Index = tuple[int, ...]


def sorted_indices(n: int, k: int) -> list[Index]:
    """All degree-k basis multi-indices of an n-dimensional space, lex order."""
    return list(itertools.combinations(range(1, n + 1), k))


def merge_sign(i: Index, j: Index) -> tuple[Index, int]:
    """Merge two disjoint sorted multi-indices; sign is the shuffle parity."""
    merged = []
    sign = 1
    a = b = 0
    while a < len(i) and b < len(j):
        if i[a] == j[b]:
            return (), 0
        if i[a] < j[b]:
            merged.append(i[a])
            a += 1
        else:
            # j[b] moves past the remaining len(i)-a entries of i
            if (len(i) - a) % 2:
                sign = -sign
            merged.append(j[b])
            b += 1
    merged.extend(i[a:])
    merged.extend(j[b:])
    return tuple(merged), sign


class Alt:
    """Sparse alternating tensor of fixed degree over an n-dimensional space."""

    __slots__ = ("dim", "deg", "c")

    def __init__(self, dim: int, deg: int, coeffs=None):
        if not 0 <= deg <= dim:
            if coeffs:
                raise ValueError(f"degree {deg} out of range for dim {dim}")
            deg = max(0, min(deg, dim))
        self.dim = dim
        self.deg = deg
        self.c: dict[Index, Rat] = {}
        if coeffs:
            for idx, v in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
                idx = tuple(idx)
                if len(idx) != self.deg:
                    raise ValueError(f"index {idx} has wrong degree")
                if not all(1 <= a <= dim for a in idx):
                    raise ValueError(f"index {idx} out of range")
                if list(idx) != sorted(set(idx)):
                    raise ValueError(f"index {idx} not strictly increasing")
                v = rat(v)
                if v:
                    w = self.c.get(idx, ZERO) + v
                    if w:
                        self.c[idx] = w
                    else:
                        self.c.pop(idx, None)

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, dim: int, deg: int) -> "Alt":
        return cls(dim, deg)

    @classmethod
    def basis(cls, dim: int, idx) -> "Alt":
        idx = tuple(idx)
        return cls(dim, len(idx), {idx: ONE})

    @classmethod
    def scalar(cls, dim: int, value) -> "Alt":
        return cls(dim, 0, {(): rat(value)})

    @classmethod
    def from_vector(cls, coords) -> "Alt":
        return cls(len(coords), 1,
                   {(i + 1,): rat(v) for i, v in enumerate(coords) if rat(v)})

    # -- basic structure ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Alt) and self.dim == other.dim
                and self.deg == other.deg and self.c == other.c)

    def __hash__(self):
        return hash((self.dim, self.deg, tuple(sorted(self.c.items()))))

    def __add__(self, other: "Alt") -> "Alt":
        self._check(other)
        out = dict(self.c)
        for idx, v in other.c.items():
            w = out.get(idx, ZERO) + v
            if w:
                out[idx] = w
            else:
                out.pop(idx, None)
        return Alt._raw(self.dim, self.deg, out)

    def __sub__(self, other: "Alt") -> "Alt":
        return self + (-other)

    def __neg__(self) -> "Alt":
        return Alt._raw(self.dim, self.deg, {i: -v for i, v in self.c.items()})

    def __rmul__(self, scalar) -> "Alt":
        s = rat(scalar)
        if not s:
            return Alt.zero(self.dim, self.deg)
        return Alt._raw(self.dim, self.deg, {i: s * v for i, v in self.c.items()})

    def scalar_value(self) -> Rat:
        if self.deg != 0:
            raise ValueError("not a degree-0 tensor")
        return self.c.get((), ZERO)

    def to_vector(self) -> list:
        if self.deg != 1:
            raise ValueError("not a degree-1 tensor")
        return [self.c.get((i,), ZERO) for i in range(1, self.dim + 1)]

    def coords(self) -> list:
        """Dense coefficient vector in lex basis order."""
        return [self.c.get(idx, ZERO) for idx in sorted_indices(self.dim, self.deg)]

    @classmethod
    def from_coords(cls, dim: int, deg: int, coords) -> "Alt":
        idxs = sorted_indices(dim, deg)
        if len(coords) != len(idxs):
            raise ValueError("coordinate vector has wrong length")
        return cls(dim, deg, {i: v for i, v in zip(idxs, coords) if rat(v)})

    @classmethod
    def _raw(cls, dim: int, deg: int, coeffs: dict) -> "Alt":
        out = cls(dim, deg)
        out.c = coeffs
        return out

    def _check(self, other: "Alt"):
        if self.dim != other.dim:
            raise ValueError("ambient dimension mismatch")
        if self.deg != other.deg:
            raise ValueError("degree mismatch")

    def __repr__(self):
        if not self.c:
            return f"Alt({self.dim},{self.deg};0)"
        terms = " + ".join(f"{v}*{list(i)}" for i, v in sorted(self.c.items()))
        return f"Alt({self.dim},{self.deg}; {terms})"


Form = Alt  # element of Lambda^k T*
Poly = Alt  # element of Lambda^k T


def wedge(a: Alt, b: Alt) -> Alt:
    """Graded-commutative exterior product."""
    if a.dim != b.dim:
        raise ValueError("ambient dimension mismatch")
    deg = a.deg + b.deg
    if deg > a.dim:
        return Alt.zero(a.dim, a.dim)
    out: dict[Index, Rat] = {}
    for i, u in a.c.items():
        for j, v in b.c.items():
            idx, sign = merge_sign(i, j)
            if sign:
                w = out.get(idx, ZERO) + sign * u * v
                if w:
                    out[idx] = w
                else:
                    out.pop(idx, None)
    return Alt._raw(a.dim, deg, out)


def wedge_all(*factors: Alt) -> Alt:
    out = factors[0]
    for f in factors[1:]:
        out = wedge(out, f)
    return out


def contract_index(i: int, a: Alt) -> Alt:
    """Single contraction i_{e_i} (front slot, sign by position)."""
    out: dict[Index, Rat] = {}
    for idx, v in a.c.items():
        if i in idx:
            p = idx.index(i)
            rest = idx[:p] + idx[p + 1:]
            sign = -1 if p % 2 else 1
            w = out.get(rest, ZERO) + sign * v
            if w:
                out[rest] = w
            else:
                out.pop(rest, None)
    return Alt._raw(a.dim, a.deg - 1, out)


def interior(w: Alt, a: Alt) -> Alt:
    """Iterated contraction of w into a (deg w <= deg a).

    For decomposable w = x1^...^xm this is i_{xm} o ... o i_{x1} (x1 applied
    first), which makes the full contraction agree with :func:`pairing`.
    """
    if w.dim != a.dim:
        raise ValueError("ambient dimension mismatch")
    if w.deg > a.deg:
        raise ValueError("contractor degree exceeds target degree")
    if w.deg == 0:
        return w.c.get((), ZERO) * a
    out = Alt.zero(a.dim, a.deg - w.deg)
    for idx, v in w.c.items():
        cur = a
        for i in idx:
            cur = contract_index(i, cur)
        out = out + v * cur
    return out


def pairing(a: Alt, w: Alt) -> Rat:
    """Determinant-convention pairing: <e^I, e_J> = delta_IJ."""
    if a.dim != w.dim:
        raise ValueError("ambient dimension mismatch")
    if a.deg != w.deg:
        raise ValueError("degree mismatch")
    return sum((v * w.c[i] for i, v in a.c.items() if i in w.c), ZERO)


def evaluate(a: Alt, vectors: list[list]) -> Rat:
    """Evaluate a degree-k tensor on k coordinate vectors (multilinear, alt)."""
    w = wedge_all(*[Alt.from_vector(v) for v in vectors]) if vectors \
        else Alt.scalar(a.dim, 1)
    return pairing(a, w)


def star(a: Alt, w: Alt) -> list:
    """gl(T) element A with <xi, A X> = <i_X a, i_xi w>, as an n x n matrix."""
    if a.deg != w.deg:
        raise ValueError("degree mismatch")
    if a.deg < 1:
        raise ValueError("degree must be at least 1")
    n = a.dim
    basis = [Alt.basis(n, (i,)) for i in range(1, n + 1)]
    mat = linalg.zeros(n, n)
    for j in range(n):
        ca = interior(basis[j], a)
        if ca.is_zero():
            continue
        for i in range(n):
            cw = interior(basis[i], w)
            mat[i][j] = pairing(ca, cw)
    return mat


class VecValued:
    """Element of T*(x)Lambda^k T* (or T(x)Lambda^k T): slot index -> Alt."""

    __slots__ = ("dim", "deg", "parts")

    def __init__(self, dim: int, deg: int, parts: dict[int, Alt] | None = None):
        self.dim = dim
        self.deg = deg
        self.parts: dict[int, Alt] = {}
        if parts:
            for i, a in parts.items():
                if a.deg != deg or a.dim != dim:
                    raise ValueError("component degree mismatch")
                if a:
                    self.parts[i] = a

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.parts.values())

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, VecValued):
            return NotImplemented
        keys = set(self.parts) | set(other.parts)
        empty = Alt.zero(self.dim, self.deg)
        return (self.dim, self.deg) == (other.dim, other.deg) and all(
            self.parts.get(i, empty) == other.parts.get(i, empty) for i in keys)

    def __add__(self, other: "VecValued") -> "VecValued":
        out = dict(self.parts)
        for i, a in other.parts.items():
            out[i] = out[i] + a if i in out else a
        return VecValued(self.dim, self.deg, out)

    def __rmul__(self, scalar) -> "VecValued":
        return VecValued(self.dim, self.deg,
                         {i: rat(scalar) * a for i, a in self.parts.items()})

    def __neg__(self):
        return VecValued(self.dim, self.deg, {i: -a for i, a in self.parts.items()})

    def component(self, i: int) -> Alt:
        return self.parts.get(i, Alt.zero(self.dim, self.deg))

    def coords(self) -> list:
        out = []
        for i in range(1, self.dim + 1):
            out.extend(self.component(i).coords())
        return out

    @classmethod
    def from_coords(cls, dim: int, deg: int, coords) -> "VecValued":
        per = len(sorted_indices(dim, deg))
        parts = {}
        for i in range(dim):
            a = Alt.from_coords(dim, deg, coords[i * per:(i + 1) * per])
            if a:
                parts[i + 1] = a
        return cls(dim, deg, parts)


def jmap(s2: Alt, s5: Alt) -> VecValued:
    """(j s2 ^ s5)(Y) = (i_Y s2) ^ s5, an element of T* (x) Lambda^6 T*."""
    if s2.dim != s5.dim:
        raise ValueError("ambient dimension mismatch")
    if s2.deg != 2 or (s2.dim >= 5 and s5.deg != 5):
        raise ValueError("degree mismatch: expected degrees 2 and 5")
    n = s2.dim
    if n < 6:
        return VecValued(n, min(6, n))  # Lambda^6 of a small space is zero
    parts = {}
    for i in range(1, n + 1):
        a = wedge(contract_index(i, s2), s5)
        if a:
            parts[i] = a
    return VecValued(n, 6, parts)


class LieAlg:
    """Finite-dimensional Lie algebra by structure constants f^k_{ij}.

    The constructor verifies antisymmetry bookkeeping and the Jacobi identity
    exactly, and rejects invalid input.
    """

    def __init__(self, dim: int, f: dict[tuple[int, int, int], Rat] | list):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.f: dict[tuple[int, int, int], Rat] = {}
        items = f.items() if isinstance(f, dict) else [((i, j, k), v) for i, j, k, v in f]
        for (i, j, k), v in items:
            if not (1 <= i <= dim and 1 <= j <= dim and 1 <= k <= dim):
                raise ValueError(f"structure constant index ({i},{j},{k}) out of range")
            if i == j:
                if rat(v):
                    raise ValueError("f is not antisymmetric: nonzero f^k_ii")
                continue
            if i > j:
                i, j, v = j, i, -rat(v)
            v = rat(v)
            if v:
                self.f[(i, j, k)] = self.f.get((i, j, k), ZERO) + v
                if not self.f[(i, j, k)]:
                    del self.f[(i, j, k)]
        self._check_jacobi()

    def structure_constant(self, i: int, j: int, k: int) -> Rat:
        if i == j:
            return ZERO
        if i < j:
            return self.f.get((i, j, k), ZERO)
        return -self.f.get((j, i, k), ZERO)

    def bracket_basis(self, i: int, j: int) -> list:
        """Coordinates of [e_i, e_j]."""
        return [self.structure_constant(i, j, k) for k in range(1, self.dim + 1)]

    def bracket(self, x: list, y: list) -> list:
        out = linalg.zero_vec(self.dim)
        for (i, j, k), v in self.f.items():
            c = v * (x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1])
            if c:
                out[k - 1] = out[k - 1] + c
        return out

    def ad(self, x: list) -> list:
        """Matrix of ad_x on the algebra itself."""
        cols = [self.bracket(x, row) for row in linalg.identity(self.dim)]
        return linalg.transpose(cols)

    def _check_jacobi(self):
        n = self.dim
        for i, j, k in itertools.combinations(range(1, n + 1), 3):
            for l in range(1, n + 1):
                s = ZERO
                for m in range(1, n + 1):
                    s += (self.structure_constant(i, j, m) * self.structure_constant(m, k, l)
                          + self.structure_constant(j, k, m) * self.structure_constant(m, i, l)
                          + self.structure_constant(k, i, m) * self.structure_constant(m, j, l))
                if s:
                    raise ValueError(
                        f"Jacobi identity fails on basis triple ({i},{j},{k}), "
                        f"component {l}: residual {s}")

    @classmethod
    def abelian(cls, dim: int) -> "LieAlg":
        return cls(dim, {})

    @classmethod
    def heisenberg(cls, dim: int = 3) -> "LieAlg":
        """Heisenberg algebra, optionally padded with abelian directions."""
        if dim < 3:
            raise ValueError("Heisenberg needs dimension >= 3")
        return cls(dim, {(1, 2, 3): ONE})


def ce_differential(k: LieAlg, a: Alt) -> Alt:
    """Chevalley-Eilenberg differential with trivial coefficients."""
    if a.dim != k.dim:
        raise ValueError("form does not live on this Lie algebra")
    n = k.dim
    out = Alt.zero(n, min(a.deg + 1, n))
    if a.deg >= n:
        return out
    for idx, v in a.c.items():
        # derivation expansion: d(e^{i1}^...) = sum_p (-1)^{p} ... with
        # d e^c = - sum_{i<j} f^c_{ij} e^i ^ e^j
        for p, cidx in enumerate(idx):
            rest = Alt.basis(n, idx[:p] + idx[p + 1:])
            dec = Alt(n, 2, {(i, j): -k.f.get((i, j, cidx), ZERO)
                             for i, j in itertools.combinations(range(1, n + 1), 2)
                             if k.f.get((i, j, cidx))})
            sign = -1 if p % 2 else 1
            out = out + (sign * v) * wedge(dec, rest)
    return out


def lie_action_form(k: LieAlg, x: list, a: Alt) -> Alt:
    """Coadjoint (Lie-derivative) action of x on a CE form: i_x d + d i_x."""
    xv = Alt.from_vector(x)
    out = Alt.zero(k.dim, a.deg)
    if a.deg >= 1:
        out = out + ce_differential(k, interior(xv, a))
    if a.deg < k.dim:
        out = out + interior(xv, ce_differential(k, a))
    return out


def gl_action(A: list, a: Alt, dual: bool) -> Alt:
    """Derivation action of A in gl(T) on Lambda^k T (dual=False) or T* (dual=True).

    On T: e_i -> sum_j A^j_i e_j.  On T*: e^i -> -sum_j A^i_j e^j.
    """
    n = a.dim
    out = Alt.zero(n, a.deg)
    for idx, v in a.c.items():
        for p, b in enumerate(idx):
            if dual:
                row = A[b - 1]
                repl = Alt(n, 1, {(j + 1,): -row[j] for j in range(n) if row[j]})
            else:
                repl = Alt(n, 1, {(j + 1,): A[j][b - 1] for j in range(n) if A[j][b - 1]})
            pre = Alt.basis(n, idx[:p])
            post = Alt.basis(n, idx[p + 1:])
            out = out + v * wedge_all(pre, repl, post)
    return out
