"""Isotropy/coisotropy predicates and constructive normal forms.

Subspaces of E (or its dual) are stored as RREF bases, so equality of
subspaces is literal equality of matrices.  The normalization routines
return explicit words in the nilpotent part of the group whose action moves
the input to a canonical representative; every word is re-applied and the
result checked exactly before returning.
"""

from __future__ import annotations

import itertools

from ._scalar import Rat, ZERO, ONE, rat
from . import linalg
from .multilinear import Alt, wedge, wedge_all, interior, pairing, evaluate, \
    sorted_indices
from . import exc as exc_mod
from .exc import ExcElem
from .datasets import DataSet


class Subspace:
    """A subspace of E or E*, canonically presented."""

    def __init__(self, ds: DataSet, ambient: str, rows):
        if ambient not in ("E", "Edual"):
            raise ValueError("ambient must be 'E' or 'Edual'")
        self.ds = ds
        self.ambient = ambient
        rows = [list(map(rat, r)) for r in rows]
        for r in rows:
            if len(r) != ds.dimE:
                raise ValueError("basis width does not match dimE")
        self.basis, self._pivots = linalg.rref(rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return linalg.in_span(self.basis, self._pivots, v)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __repr__(self):
        return (f"Subspace({self.ds.family}, n={self.ds.n}, "
                f"{self.ambient}, dim={self.dim})")


def annihilator(v: Subspace) -> Subspace:
    """V° under the (diagonal) evaluation pairing; lives in the other ambient."""
    other = "Edual" if v.ambient == "E" else "E"
    if not v.basis:
        return Subspace(v.ds, other, linalg.identity(v.ds.dimE))
    return Subspace(v.ds, other, linalg.nullspace(v.basis))


def _bilinear_for(ds: DataSet, ambient: str):
    return ds.sym_to_N if ambient == "E" else ds.sym_to_Nstar


def is_isotropic(v: Subspace) -> bool:
    """(V (x) V)_N = 0 (dual form for ambient Edual)."""
    b = _bilinear_for(v.ds, v.ambient)
    return all(linalg.is_zero_vec(b(x, y))
               for i, x in enumerate(v.basis) for y in v.basis[i:])


def is_coisotropic(v: Subspace) -> bool:
    """(V° (x) V°)_{N*} = 0, cross-checked against (V° (x) N)_E ⊂ V."""
    if v.ambient != "E":
        raise ValueError("coisotropy is defined for subspaces of E")
    ann = annihilator(v)
    by_def = is_isotropic(ann)
    dn = v.ds.dimN
    by_contraction = all(
        v.contains(v.ds.xiN_to_E(xi, [ONE if k == m else ZERO
                                      for k in range(dn)]))
        for xi in ann.basis for m in range(dn))
    if by_def != by_contraction:
        raise RuntimeError(
            "coisotropy definition and contraction criterion disagree "
            f"(definition={by_def}, contraction={by_contraction})")
    return by_def


def _xiN_span(v: Subspace) -> Subspace:
    """(V° (x) N)_E as a subspace of E."""
    ds = v.ds
    rows = []
    for xi in annihilator(v).basis:
        for m in range(ds.dimN):
            nvec = [ONE if k == m else ZERO for k in range(ds.dimN)]
            rows.append(ds.xiN_to_E(xi, nvec))
    return Subspace(ds, "E", rows)


def is_colagrangian(v: Subspace) -> bool:
    """Minimal coisotropic subspaces, decided per family."""
    if v.ambient != "E":
        raise ValueError("co-Lagrangian is defined for subspaces of E")
    ds = v.ds
    if ds.family == "exc":
        return _xiN_span(v) == v
    if ds.family == "gl":
        return v.dim == 0
    if ds.family == "opq":
        return ds.p == ds.q and v.dim == ds.p and is_coisotropic(v)
    if ds.family == "slw2":
        return _slw2_type(v) is not None
    raise ValueError(f"unsupported family {ds.family!r}")


def _slw2_type(v: Subspace) -> int | None:
    """1 for V = Λ²U (U a hyperplane), 2 for V = (Λ²Ξ)° (Ξ of dim 3)."""
    w = v.ds.n + 1
    # type 1: U° = {xi in W* : i_xi V = 0} must be a line, and V = Λ²(ker xi)
    rows = []
    for b in v.basis:
        a = Alt.from_coords(w, 2, b)
        # i_xi a = sum_i xi_i * i_{e_i} a; stack the w x w coefficient blocks
        block = [interior(Alt.basis(w, (i,)), a).coords()
                 for i in range(1, w + 1)]
        rows.append(block)
    if rows:
        sys = [[rows[r][i][c] for i in range(w)]
               for r in range(len(rows)) for c in range(w)]
        kernel = linalg.nullspace(sys)
    else:
        kernel = linalg.identity(w)
    if len(kernel) == 1:
        xi = Alt.from_coords(w, 1, kernel[0])
        u_basis = linalg.nullspace([kernel[0]])
        lam2 = [wedge(Alt.from_vector(a), Alt.from_vector(b)).coords()
                for i, a in enumerate(u_basis) for b in u_basis[i + 1:]]
        if linalg.span_equal(v.basis, lam2):
            return 1
    # type 2: V° ⊂ Λ²W* equals Λ²Ξ for a 3-dimensional factor Ξ
    ann = annihilator(v)
    if ann.dim == 3:
        support = []
        for b in ann.basis:
            a = Alt.from_coords(w, 2, b)
            for i in range(1, w + 1):
                support.append(interior(Alt.basis(w, (i,)), a).coords())
        s_rref, _ = linalg.rref(support)
        if len(s_rref) == 3:
            lam2 = [wedge(Alt.from_coords(w, 1, a),
                          Alt.from_coords(w, 1, b)).coords()
                    for i, a in enumerate(s_rref) for b in s_rref[i + 1:]]
            if linalg.span_equal(ann.basis, lam2):
                return 2
    return None


# ---------------------------------------------------------------------------
# group words


class GroupWord:
    """Ordered list of nilpotent generators; entries are applied in order
    (the total action is exp(g_k) ... exp(g_1))."""

    def __init__(self, entries=()):
        self.entries = list(entries)
        for g in self.entries:
            pieces = g.graded_pieces()
            if len(pieces) != 1 or pieces[0] not in exc_mod.NILPOTENT_GRADES:
                raise ValueError("word entries must be purely graded nilpotents")

    def __len__(self):
        return len(self.entries)

    def inverse(self) -> "GroupWord":
        return GroupWord([(-1) * g for g in reversed(self.entries)])

    def matrix(self, n: int) -> list:
        dim_e, _ = exc_mod.exc_dims(n)
        out = linalg.identity(dim_e)
        for g in self.entries:
            out = linalg.mat_mul(exc_mod.exp_nilpotent_matrix(g), out)
        return out

    def matrix_dual(self, n: int) -> list:
        """Action on E*: inverse transpose of the action on E."""
        dim_e, _ = exc_mod.exc_dims(n)
        out = linalg.identity(dim_e)
        for g in self.entries:
            step = linalg.transpose(exc_mod.exp_nilpotent_matrix((-1) * g))
            out = linalg.mat_mul(step, out)
        return out

    def apply(self, u, dual: bool = False, n: int | None = None) -> list:
        n = n if n is not None else self.entries[0].n
        m = self.matrix_dual(n) if dual else self.matrix(n)
        return linalg.mat_vec(m, u)

    def apply_subspace(self, v: Subspace) -> Subspace:
        m = self.matrix(v.ds.n) if v.ambient == "E" else \
            self.matrix_dual(v.ds.n)
        return Subspace(v.ds, v.ambient, [linalg.mat_vec(m, b) for b in v.basis])


class NotLagrangianError(ValueError):
    """Isotropic but not maximal; carries an extension witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


# ---------------------------------------------------------------------------
# models: the same normalization code runs on E and (with mirrored generator
# grades and the inverse-transpose action) on E*


class _Model:
    def __init__(self, ds: DataSet, dual: bool):
        self.ds = ds
        self.n = ds.n
        self.dual = dual

    def split(self, u):
        return exc_mod.evec_split(self.n, u)

    def bilinear(self, u, v):
        return self.ds.sym_to_Nstar(u, v) if self.dual else \
            self.ds.sym_to_N(u, v)

    def make_gen(self, kind: str, alt: Alt) -> ExcElem:
        if self.dual:
            kind = {"a3": "w3", "a6": "w6", "w3": "a3", "w6": "a6"}[kind]
        return ExcElem.make(self.n, **{kind: alt})

    def step_matrix(self, gen: ExcElem) -> list:
        if self.dual:
            return linalg.transpose(exc_mod.exp_nilpotent_matrix((-1) * gen))
        return exc_mod.exp_nilpotent_matrix(gen)


class _Frame:
    """Adapted frame for the peeling recursion: active coordinate directions
    and a dual frame vanishing on everything peeled so far."""

    def __init__(self, n: int):
        self.n = n
        self.indices = list(range(1, n + 1))
        self.covecs = {i: Alt.basis(n, (i,)) for i in self.indices}

    @property
    def size(self):
        return len(self.indices)

    def x_coord(self, x: Alt, i: int):
        return pairing(self.covecs[i], x)

    def peel(self, u_tvec: list):
        """Remove the pivot direction of a pure-T vector; update the frame."""
        piv = next(i for i in self.indices if u_tvec[i - 1])
        xp = u_tvec[piv - 1]
        xi_p = self.covecs[piv]
        self.indices.remove(piv)
        del self.covecs[piv]
        for i in self.indices:
            xi = u_tvec[i - 1]
            if xi:
                self.covecs[i] = self.covecs[i] - (xi / xp) * xi_p
        return piv


def _model_form_coeff(frame: _Frame, form: Alt, idx: tuple):
    return pairing(form, wedge_all(*[Alt.basis(frame.n, (i,)) for i in idx]))


def _normalize_null_in_frame(model: _Model, frame: _Frame, u: list):
    """Move a null vector into the T-part of the sub-model; returns
    (entries, transformed u).  Replays the constructive proof."""
    n = model.n
    if linalg.is_zero_vec(u):
        raise ValueError("cannot normalize the zero vector")
    if not linalg.is_zero_vec(model.bilinear(u, u)):
        raise ValueError("vector is not null")
    entries = []
    for _ in range(4):  # at most w3, (w3,) a3, a6 steps are ever needed
        x, s2, s5 = model.split(u)
        if s2.is_zero() and s5.is_zero():
            return entries, u
        xc = {i: frame.x_coord(x, i) for i in frame.indices}
        if any(xc.values()):
            # branch 1: a3 then a6 built from xi with <xi, X> = 1
            i0 = next(i for i in frame.indices if xc[i])
            xi = (ONE / xc[i0]) * frame.covecs[i0]
            if not s2.is_zero():
                u = _apply_killer(model, frame, entries, u,
                                  "a3", wedge(s2, xi), check_slot=1)
                x, s2, s5 = model.split(u)
            if not s5.is_zero():
                if n < 6:
                    raise RuntimeError(
                        "degenerate state: top-degree part should have "
                        "vanished by nullity")
                u = _apply_killer(model, frame, entries, u,
                                  "a6", wedge(s5, xi), check_slot=2)
            return entries, u
        if not s2.is_zero():
            # branch 2: w3 = o ^ Y from a decomposable 2-form
            if not wedge(s2, s2).is_zero():
                raise RuntimeError(
                    "degenerate state: null vector with non-decomposable "
                    "2-form part")
            piv = next(idx for idx in itertools.combinations(frame.indices, 2)
                       if _model_form_coeff(frame, s2, idx))
            c = _model_form_coeff(frame, s2, piv)
            rows = [interior(Alt.basis(n, (i,)), s2).coords()
                    for i in frame.indices]
            kern = linalg.nullspace(linalg.transpose(rows))
            yvec = kern[0]
            y = Alt.from_vector(
                _embed_frame_vector(frame, yvec, n))
            o = (ONE / c) * wedge(Alt.basis(n, (piv[0],)),
                                  Alt.basis(n, (piv[1],)))
            w3 = wedge(o, y)
            if w3.is_zero():
                raise RuntimeError("degenerate state: vanishing w3 generator")
            u = _apply_step(model, entries, u, model.make_gen("w3", w3))
            continue
        # branch 3: only the 5-form part is present; force a 2-form part
        piv5 = next(idx for idx in itertools.combinations(frame.indices, 5)
                    if _model_form_coeff(frame, s5, idx))
        w3 = wedge_all(*[Alt.basis(n, (i,)) for i in piv5[:3]])
        u = _apply_step(model, entries, u, model.make_gen("w3", w3))
    raise RuntimeError("normalization did not terminate")


def _embed_frame_vector(frame: _Frame, coords: list, n: int) -> list:
    out = [ZERO] * n
    for i, c in zip(frame.indices, coords):
        out[i - 1] = c
    return out


def _apply_step(model: _Model, entries: list, u: list, gen: ExcElem) -> list:
    entries.append(gen)
    return linalg.mat_vec(model.step_matrix(gen), u)


def _apply_killer(model: _Model, frame: _Frame, entries: list, u: list,
                  kind: str, alt: Alt, check_slot: int) -> list:
    """Append ±alt as a generator, choosing the sign that clears the target
    graded slot of u (the two models differ by signs here)."""
    for sign in (-ONE, ONE):
        gen = model.make_gen(kind, sign * alt)
        cand = linalg.mat_vec(model.step_matrix(gen), u)
        if model.split(cand)[check_slot].is_zero():
            entries.append(gen)
            return cand
    raise RuntimeError("neither sign of the generator clears the slot")


def normalize_null(ds: DataSet, u) -> tuple[GroupWord, list]:
    """Word g with g·u ∈ T, for a null u in the exceptional family."""
    if ds.family != "exc":
        raise ValueError("normalize_null requires the exceptional family")
    entries, final = _normalize_null_in_frame(
        _Model(ds, dual=False), _Frame(ds.n), list(map(rat, u)))
    word = GroupWord(entries)
    check = word.apply(list(map(rat, u)), n=ds.n) if entries else list(map(rat, u))
    if check != final or not _is_pure_t(ds.n, final):
        raise RuntimeError("internal error: normalization check failed")
    return word, final


def _is_pure_t(n: int, u: list) -> bool:
    return linalg.is_zero_vec(u[n:])


def _peel_lagrangian(model: _Model, rows: list):
    """Shared recursion for normalize_lagrangian and normalize_pair.

    Returns (entries, peeled T-vectors, final 2-form generator or None).
    """
    ds = model.ds
    n = model.n
    frame = _Frame(n)
    gens = [list(map(rat, r)) for r in rows]
    entries: list[ExcElem] = []
    peeled: list[list] = []

    def transform_all(new_entries, start):
        for g in new_entries[start:]:
            m = model.step_matrix(g)
            for k in range(len(gens)):
                gens[k] = linalg.mat_vec(m, gens[k])
            for k in range(len(peeled)):
                moved = linalg.mat_vec(m, peeled[k])
                if moved != peeled[k]:
                    raise RuntimeError(
                        "internal error: generator moved a peeled vector")

    while True:
        gens = [g for g in gens if not linalg.is_zero_vec(g)]
        red, _ = linalg.rref(gens)
        gens = [list(r) for r in red]
        if not gens:
            return entries, peeled, None
        if frame.size == 2:
            return entries, peeled, _finish_base_case(
                model, frame, gens, peeled)
        start = len(entries)
        sub_entries, u = _normalize_null_in_frame(model, frame, gens[0])
        entries.extend(sub_entries)
        del gens[0]
        transform_all(entries, start)
        _check_in_frame_t(model, frame, u)
        peeled.append(u)
        piv = frame.peel(u[:n])
        # absorb multiples of the peeled vector so the remaining generators
        # have no T-component along the pivot
        for k in range(len(gens)):
            coef = gens[k][piv - 1]
            if coef:
                gens[k] = linalg.vec_sub(
                    gens[k], linalg.vec_scale(coef / u[piv - 1], u))


def _check_in_frame_t(model, frame, u):
    x, s2, s5 = model.split(u)
    if not (s2.is_zero() and s5.is_zero()):
        raise RuntimeError("internal error: peel did not land in T")


def _finish_base_case(model: _Model, frame: _Frame, gens: list, peeled: list):
    """Frame size 2: generators are pure T or a multiple of the model 2-form."""
    n = model.n
    two_form = None
    t_gens = []
    for g in gens:
        x, s2, s5 = model.split(g)
        if s2.is_zero() and s5.is_zero():
            t_gens.append(g)
        elif pairing_zero_t(x, frame):
            if two_form is not None or not s5.is_zero():
                raise RuntimeError("degenerate base case")
            two_form = g
        else:
            raise RuntimeError(
                "base case generator mixes T and 2-form parts; "
                "input was not isotropic")
    if two_form is not None and t_gens:
        raise RuntimeError(
            "base case holds both a T-generator and a 2-form generator; "
            "input was not isotropic")
    while t_gens:
        g = t_gens.pop(0)
        if linalg.is_zero_vec(g):
            continue
        _check_in_frame_t(model, frame, g)
        peeled.append(g)
        piv = frame.peel(g[:n])
        for k in range(len(t_gens)):
            coef = t_gens[k][piv - 1]
            if coef:
                t_gens[k] = linalg.vec_sub(
                    t_gens[k], linalg.vec_scale(coef / g[piv - 1], g))
    return two_form


def pairing_zero_t(x: Alt, frame: _Frame) -> bool:
    return all(not frame.x_coord(x, i) for i in frame.indices)


def normalize_lagrangian(w: Subspace) -> tuple[GroupWord, str]:
    """Canonical form of an isotropic subspace; label 'dim_n' or
    'dim_n_minus_1'.  Raises NotLagrangianError when not maximal."""
    ds = w.ds
    if ds.family != "exc":
        raise ValueError("normalize_lagrangian requires the exceptional family")
    if w.ambient != "E":
        raise ValueError("expected a subspace of E")
    if not is_isotropic(w):
        raise ValueError("subspace is not isotropic")
    n = ds.n
    model = _Model(ds, dual=False)
    entries, peeled, two_form = _peel_lagrangian(model, w.basis)
    word = GroupWord(entries)
    canon = peeled + ([two_form] if two_form is not None else [])
    moved = word.apply_subspace(w) if entries else w
    if moved != Subspace(ds, "E", canon):
        raise RuntimeError("internal error: word does not produce the "
                           "canonical form")
    if two_form is not None:
        if len(canon) != n - 1:
            raise RuntimeError("internal error: 2-form endpoint of wrong size")
        return word, "dim_n_minus_1"
    if len(peeled) == n:
        return word, "dim_n"
    # extension probe: adjoin a fresh T-direction and confirm the enlarged
    # subspace is still isotropic
    peeled_t = [p[:n] for p in peeled]
    fresh = next(i for i in range(1, n + 1)
                 if linalg.rank(peeled_t + [[ONE if j == i - 1 else ZERO
                                             for j in range(n)]])
                 > len(peeled_t))
    ext = [ZERO] * ds.dimE
    ext[fresh - 1] = ONE
    witness = linalg.mat_vec(word.inverse().matrix(n), ext)
    enlarged = Subspace(ds, "E", list(w.basis) + [witness])
    if not is_isotropic(enlarged):
        raise RuntimeError("internal error: extension witness is not isotropic")
    raise NotLagrangianError(
        f"isotropic of dimension {w.dim} but extendable: not Lagrangian",
        witness=witness)


def normalize_pair(v: Subspace, w: Subspace) -> GroupWord:
    """Word mapping (V, W) to (Λ²T* + Λ⁵T*, T)."""
    ds = v.ds
    n = ds.n
    if ds.family != "exc":
        raise ValueError("normalize_pair requires the exceptional family")
    if not is_colagrangian(v) or v.dim != ds.dimE - n:
        raise ValueError("V is not co-Lagrangian of codimension n")
    _, label = normalize_lagrangian(w)
    if label != "dim_n":
        raise ValueError("W is not an n-dimensional Lagrangian subspace")
    if linalg.rank(v.basis + w.basis) != ds.dimE:
        raise ValueError("V and W are not complementary")

    # phase 1: normalize V by peeling its annihilator in the dual model
    dual_model = _Model(ds, dual=True)
    vo = annihilator(v)
    entries, peeled, two_form = _peel_lagrangian(dual_model, vo.basis)
    if two_form is not None or len(peeled) != n:
        raise RuntimeError("internal error: V° did not peel to the dual T")
    word1 = GroupWord(entries)
    v1 = word1.apply_subspace(v) if entries else v
    if v1 != _standard_colagrangian(ds):
        raise RuntimeError("internal error: phase 1 did not standardize V")
    w1 = word1.apply_subspace(w) if entries else w

    # phase 2: move W to T with a3/a6 steps only (these preserve V)
    model = _Model(ds, dual=False)
    entries2, peeled2, two_form2 = _peel_lagrangian(model, w1.basis)
    if two_form2 is not None or len(peeled2) != n:
        raise RuntimeError("internal error: W did not peel to T")
    for g in entries2:
        if g.graded_pieces()[0] not in ("a3", "a6"):
            raise RuntimeError("internal error: phase 2 used a generator "
                               "that does not preserve V")
    word = GroupWord(entries + entries2)
    v2 = word.apply_subspace(v)
    w2 = word.apply_subspace(w)
    if v2 != _standard_colagrangian(ds) or w2 != _standard_lagrangian(ds):
        raise RuntimeError("internal error: pair normalization check failed")
    return word


def _standard_colagrangian(ds: DataSet) -> Subspace:
    rows = []
    for k in range(ds.n, ds.dimE):
        r = [ZERO] * ds.dimE
        r[k] = ONE
        rows.append(r)
    return Subspace(ds, "E", rows)


def _standard_lagrangian(ds: DataSet) -> Subspace:
    rows = []
    for k in range(ds.n):
        r = [ZERO] * ds.dimE
        r[k] = ONE
        rows.append(r)
    return Subspace(ds, "E", rows)


def _small_orbit_lagrangian(ds: DataSet) -> Subspace:
    """Canonical (n-1)-dimensional Lagrangian: the first n-2 tangent
    directions plus the 2-form supported on the remaining two."""
    n = ds.n
    rows = []
    for k in range(n - 2):
        r = [ZERO] * ds.dimE
        r[k] = ONE
        rows.append(r)
    pos = n + sorted_indices(n, 2).index((n - 1, n))
    r = [ZERO] * ds.dimE
    r[pos] = ONE
    rows.append(r)
    return Subspace(ds, "E", rows)
