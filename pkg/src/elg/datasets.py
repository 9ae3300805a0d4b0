"""The four admissible group data sets.

A data set packages a representation E of a reductive group, a distinguished
summand N of S^2 E, the maps between them, and the induced projector
pi : End(E) -> g.  The embedding coefficient relating N to S^2 E
(`embed_scale`) is never hardcoded: `calibrate` solves for the unique scalar
making the projector land in g on every matrix unit.

Families:
  gl    -- E = R^n, N = 0, g = gl(n).
  opq   -- E = R^(p+q) with a diagonal inner product eta of signature (p,q),
           N = R via q(u) = eta(u,u), g = so(p,q).
  exc   -- E = T + Lambda^2 T* + Lambda^5 T*, N = T* + Lambda^4 T* +
           (T* x Lambda^6 T*), g = the exceptional algebra of `exc` acting
           through act_E (n=2 is supported internally as a recursion base).
  slw2  -- E = Lambda^2 W with W = R^(n+1), N = Lambda^4 W via the wedge,
           g = sl(n+1) + R acting through the induced representation.
"""

from __future__ import annotations

import math

from ._scalar import Rat, ZERO, ONE, rat
from . import linalg
from .multilinear import Alt, VecValued, wedge, interior, jmap, gl_action, \
    sorted_indices
from . import exc as exc_mod

FAMILIES = ("gl", "opq", "exc", "slw2")

_ALIASES = {"gl": "gl", "GL": "gl",
            "opq": "opq", "Opq": "opq", "onn": "opq",
            "exc": "exc", "Exceptional": "exc", "exceptional": "exc",
            "slw2": "slw2", "SLwedge2": "slw2", "slwedge2": "slw2"}


def canonical_family(family: str) -> str:
    try:
        return _ALIASES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None


class DataSet:
    """Immutable group data set; construct via build_dataset."""

    def __init__(self, family: str, n: int, *, p: int | None = None,
                 q: int | None = None):
        family = canonical_family(family)
        self.family = family
        self.n = n
        if family == "gl":
            if n < 1:
                raise ValueError("gl requires n >= 1")
            self.dimE, self.dimN = n, 0
        elif family == "opq":
            self.p = p if p is not None else n
            self.q = q if q is not None else n
            if self.p < 1 or self.q < 1:
                raise ValueError("opq requires p, q >= 1")
            self.dimE, self.dimN = self.p + self.q, 1
            self.eta = [[(ONE if i < self.p else -ONE) if i == j else ZERO
                         for j in range(self.dimE)] for i in range(self.dimE)]
        elif family == "exc":
            if not 2 <= n <= 6:
                raise ValueError("exc requires 2 <= n <= 6")
            self.dimE, self.dimN = exc_mod.exc_dims(n)
        elif family == "slw2":
            if n < 2:
                raise ValueError("slw2 requires n >= 2")
            w = n + 1
            self.dimE = math.comb(w, 2)
            self.dimN = math.comb(w, 4)
        self.g_basis = self._build_g_basis()
        self._g_rref, self._g_pivots = linalg.rref(
            [linalg.flatten(m) for m in self.g_basis])
        if len(self._g_rref) != len(self.g_basis):
            raise ValueError("g_basis is linearly dependent")
        # change of basis: original g rows in terms of the RREF rows
        change = [[row[c] for c in self._g_pivots]
                  for row in (linalg.flatten(m) for m in self.g_basis)]
        self._g_change_inv = linalg.solve_matrix(
            change, linalg.identity(len(change))) if change else []
        self._b_table = self._build_b_table()
        self._phi, self._lambda = self._build_section()
        self.embed_scale: Rat | None = None

    # -- construction ------------------------------------------------------

    def _build_g_basis(self) -> list:
        d = self.dimE
        if self.family == "gl":
            out = []
            for i in range(d):
                for j in range(d):
                    m = linalg.zeros(d, d)
                    m[i][j] = ONE
                    out.append(m)
            return out
        if self.family == "opq":
            # so(eta) = eta^{-1} * (antisymmetric matrices); eta is its own
            # inverse for a diagonal +-1 form
            out = []
            for i in range(d):
                for j in range(i + 1, d):
                    b = linalg.zeros(d, d)
                    b[i][j], b[j][i] = ONE, -ONE
                    out.append(linalg.mat_mul(self.eta, b))
            return out
        if self.family == "exc":
            return [exc_mod.act_E_matrix(elem)
                    for _, _, elem in exc_mod.exc_basis(self.n)]
        # slw2: induced action of sl(n+1) + R on Lambda^2 W
        w = self.n + 1
        gens = []
        for i in range(w):
            for j in range(w):
                if i != j:
                    m = linalg.zeros(w, w)
                    m[i][j] = ONE
                    gens.append(m)
        for i in range(w - 1):
            m = linalg.zeros(w, w)
            m[i][i], m[i + 1][i + 1] = ONE, -ONE
            gens.append(m)
        out = [self._induced_on_wedge2(g) for g in gens]
        out.append(linalg.identity(d))
        return out

    def _induced_on_wedge2(self, b: list) -> list:
        w = self.n + 1
        cols = []
        for idx in sorted_indices(w, 2):
            img = gl_action(b, Alt.basis(w, idx), dual=False)
            cols.append(img.coords())
        return linalg.transpose(cols)

    # -- the symmetric bilinear map b : E x E -> N -------------------------

    def sym_to_N(self, u, v) -> list:
        """b(u, v) on coordinate vectors; b(u,u) is the defining quadratic."""
        return self._bilinear(u, v, dual=False)

    def sym_to_Nstar(self, xi, eta) -> list:
        """The mirrored map on dual coordinates, with coefficient 1."""
        return self._bilinear(xi, eta, dual=True)

    def _bilinear(self, u, v, dual: bool) -> list:
        fam = self.family
        if fam == "gl":
            return []
        if fam == "opq":
            g = self.eta  # diagonal +-1, equal to its inverse on the dual side
            return [linalg.dot(u, linalg.mat_vec(g, v))]
        if fam == "slw2":
            w = self.n + 1
            a = Alt.from_coords(w, 2, u)
            b = Alt.from_coords(w, 2, v)
            return wedge(a, b).coords() if w >= 4 else \
                [ZERO] * self.dimN
        return self._exc_bilinear(u, v)

    def _exc_bilinear(self, u, v) -> list:
        # identical index formula on both E and its dual: the layouts are
        # mirror images and the contraction/wedge calculus is variance-blind
        n = self.n
        x, s2, s5 = exc_mod.evec_split(n, u)
        y, t2, t5 = exc_mod.evec_split(n, v)
        n1 = interior(x, t2) + interior(y, s2)
        out = n1.coords()
        if n >= 4:
            n4 = -wedge(s2, t2)
            if n >= 5:
                n4 = n4 + interior(x, t5) + interior(y, s5)
            out += n4.coords()
        if n >= 6:
            n7 = jmap(s2, t5) + jmap(t2, s5)
            out += n7.coords()
        return out

    def _build_b_table(self) -> list:
        d = self.dimE
        ident = linalg.identity(d)
        return [[self._bilinear(ident[a], ident[b], dual=False)
                 for b in range(d)] for a in range(d)]

    def _mu(self, m: list) -> list:
        """S^2 E -> N: apply b entrywise to a coefficient matrix."""
        out = [ZERO] * self.dimN
        for a in range(self.dimE):
            row = m[a]
            for b in range(self.dimE):
                if row[b]:
                    out = [x + row[b] * y for x, y in zip(out, self._b_table[a][b])]
        return out

    def _build_section(self):
        """Phi(n)^{ab} = <b*(eps_a, eps_b), n> and the scalar of mu o Phi."""
        d, dn = self.dimE, self.dimN
        if dn == 0:
            return [], ONE
        ident = linalg.identity(d)
        phi = [linalg.zeros(d, d) for _ in range(dn)]
        for a in range(d):
            for b in range(a, d):
                s = self._bilinear(ident[a], ident[b], dual=True)
                for m, val in enumerate(s):
                    if val:
                        phi[m][a][b] = val
                        phi[m][b][a] = val
        lam = None
        for m in range(dn):
            img = self._mu(phi[m])
            for k, val in enumerate(img):
                expect = (lam if k == m else ZERO)
                if k == m:
                    if lam is None:
                        lam = val
                    elif val != lam:
                        raise ValueError("mu o Phi is not scalar")
                elif val:
                    raise ValueError("mu o Phi is not scalar")
        if not lam:
            raise ValueError("degenerate pairing between N and its dual")
        return phi, lam

    # -- the section N -> S^2 E and derived maps ---------------------------

    def _section1(self, nvec) -> list:
        """The canonical section with coefficient 1 (identity on N)."""
        out = linalg.zeros(self.dimE, self.dimE)
        inv = ONE / self._lambda
        for m, val in enumerate(nvec):
            if val:
                out = linalg.mat_add(out, linalg.mat_scale(val * inv, self._phi[m]))
        return out

    def N_to_sym(self, nvec) -> list:
        self._require_calibrated()
        return linalg.mat_scale(self.embed_scale, self._section1(nvec))

    def xiN_to_E(self, xi, nvec) -> list:
        """(xi (x) n)_E: contract xi into the first slot of N_to_sym(n)."""
        self._require_calibrated()
        return linalg.mat_vec(linalg.transpose(self.N_to_sym(nvec)), xi)

    def pi_prime1_unit(self, k: int, j: int) -> list:
        """pi'_1 of the matrix unit E^k_j (embedding coefficient 1)."""
        # pi'(A)^i_l = P^{ij}_{kl} A^k_j with P = coefficients of
        # section o b : E (x) E -> E (x) E
        d = self.dimE
        out = linalg.zeros(d, d)
        for l in range(d):
            s = self._section1(self._b_table[k][l])
            for i in range(d):
                out[i][l] = s[i][j]
        return out

    def pi_prime(self, a: list) -> list:
        self._require_calibrated()
        d = self.dimE
        out = linalg.zeros(d, d)
        for k in range(d):
            for j in range(d):
                if a[k][j]:
                    unit = self.pi_prime1_unit(k, j)
                    out = linalg.mat_add(
                        out, linalg.mat_scale(self.embed_scale * a[k][j], unit))
        return out

    def pi(self, a: list) -> list:
        return linalg.mat_sub(a, self.pi_prime(a))

    def act_on_N(self, a: list) -> list:
        """Action induced on N by a in End(E), pushed through S^2 E."""
        self._require_calibrated()
        dn = self.dimN
        if dn == 0:
            return []
        cols = []
        inv = ONE / self.embed_scale
        for m in range(dn):
            nvec = [ONE if k == m else ZERO for k in range(dn)]
            s = self.N_to_sym(nvec)
            moved = linalg.mat_add(linalg.mat_mul(a, s),
                                   linalg.mat_mul(s, linalg.transpose(a)))
            cols.append([inv * x for x in self._mu(moved)])
        return linalg.transpose(cols)

    # -- admissibility -----------------------------------------------------

    def g_coordinates(self, m: list) -> list | None:
        """Coordinates of m in g_basis, or None if outside the span."""
        v = linalg.flatten(m)
        factors = [ZERO] * len(self._g_rref)
        v = list(v)
        for t, (row, piv) in enumerate(zip(self._g_rref, self._g_pivots)):
            if v[piv]:
                factors[t] = v[piv]
                f = v[piv]
                v = [x - f * y for x, y in zip(v, row)]
        if not linalg.is_zero_vec(v):
            return None
        return linalg.mat_vec(linalg.transpose(self._g_change_inv), factors) \
            if factors else []

    def check_admissible(self) -> dict:
        """Express pi(E^k_j) in g coordinates for every matrix unit."""
        self._require_calibrated()
        d = self.dimE
        table = []
        for k in range(d):
            for j in range(d):
                unit = linalg.zeros(d, d)
                unit[k][j] = ONE
                pa = linalg.mat_sub(
                    unit, linalg.mat_scale(self.embed_scale,
                                           self.pi_prime1_unit(k, j)))
                co = self.g_coordinates(pa)
                if co is None:
                    return {"pass": False, "family": self.family, "n": self.n,
                            "witness": {"unit": (k + 1, j + 1)}, "table": None}
                table.append([k + 1, j + 1, co])
        return {"pass": True, "family": self.family, "n": self.n,
                "embed_scale": self.embed_scale, "witness": None,
                "table": table}

    def check_g_closed(self) -> dict:
        """g_basis is closed under the matrix commutator."""
        for a in range(len(self.g_basis)):
            for b in range(a + 1, len(self.g_basis)):
                c = linalg.commutator(self.g_basis[a], self.g_basis[b])
                if self.g_coordinates(c) is None:
                    return {"pass": False, "witness": (a, b)}
        return {"pass": True, "witness": None}

    def _require_calibrated(self):
        if self.embed_scale is None:
            raise RuntimeError("data set is not calibrated")


def calibrate(ds: DataSet) -> Rat:
    """Solve for the unique c with E^k_j - c pi'_1(E^k_j) in g, all units."""
    d = ds.dimE
    equations = []  # (r1 component, r0 component) after reduction against g
    for k in range(d):
        for j in range(d):
            unit = linalg.zeros(d, d)
            unit[k][j] = ONE
            r0 = linalg.reduce_against(ds._g_rref, ds._g_pivots,
                                       linalg.flatten(unit))
            r1 = linalg.reduce_against(ds._g_rref, ds._g_pivots,
                                       linalg.flatten(ds.pi_prime1_unit(k, j)))
            for x0, x1 in zip(r0, r1):
                if x0 or x1:
                    equations.append((x1, x0))
    if not equations:
        ds.embed_scale = ONE  # pi'_1 = 0 and End(E) = g: any c works
        return ds.embed_scale
    c = None
    for x1, x0 in equations:
        if not x1:
            raise ValueError("not admissible: no embedding scale exists")
        val = x0 / x1
        if c is None:
            c = val
        elif val != c:
            raise ValueError("not admissible: no embedding scale exists")
    ds.embed_scale = c
    return c


def build_dataset(family: str, n: int, *, p: int | None = None,
                  q: int | None = None) -> DataSet:
    ds = DataSet(family, n, p=p, q=q)
    calibrate(ds)
    return ds
