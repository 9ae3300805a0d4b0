"""JSON (de)serialization for every value the CLI reads or writes.

Rationals serialize as strings "p/q" (or "p"); multi-indices as 1-based
sorted integer arrays.  Loading a data set rebuilds it from (family, n) and
cross-checks the stored embedding scale and g basis, so a tampered file is
rejected rather than trusted.
"""

from __future__ import annotations

import json

from ._scalar import rat, rat_str
from . import linalg
from .multilinear import Alt, LieAlg, sorted_indices
from .exc import ExcElem
from .datasets import DataSet, build_dataset
from .subspaces import Subspace, GroupWord
from .elgebra import Elgebra


def rat_mat(m) -> list:
    return [[rat_str(x) for x in row] for row in m]


def parse_mat(rows) -> list:
    return [[rat(x) for x in row] for row in rows]


# -- data sets --------------------------------------------------------------

def dataset_to_json(ds: DataSet) -> dict:
    out = {"family": ds.family, "n": ds.n,
           "embed_scale": rat_str(ds.embed_scale),
           "g_basis": [rat_mat(m) for m in ds.g_basis]}
    if ds.family == "opq":
        out["p"], out["q"] = ds.p, ds.q
    return out


def dataset_from_json(data: dict) -> DataSet:
    ds = build_dataset(data["family"], data["n"],
                       p=data.get("p"), q=data.get("q"))
    if rat(data["embed_scale"]) != ds.embed_scale:
        raise ValueError("stored embed_scale disagrees with calibration")
    if [parse_mat(m) for m in data["g_basis"]] != ds.g_basis:
        raise ValueError("stored g_basis disagrees with the reconstruction")
    return ds


# -- Lie algebras and forms -------------------------------------------------

def lie_to_json(k: LieAlg) -> dict:
    return {"dim": k.dim,
            "f": [[i, j, kk, rat_str(v)]
                  for (i, j, kk), v in sorted(k.f.items())]}


def lie_from_json(data: dict) -> LieAlg:
    return LieAlg(data["dim"],
                  [(i, j, k, rat(v)) for i, j, k, v in data["f"]])


def form_to_json(a: Alt) -> dict:
    return {"dim": a.dim, "deg": a.deg,
            "terms": [[list(idx), rat_str(c)]
                      for idx, c in sorted(a.c.items())]}


def form_from_json(data: dict) -> Alt:
    return Alt(data["dim"], data["deg"],
               {tuple(idx): rat(c) for idx, c in data["terms"]})


# -- subspaces and group words ---------------------------------------------

def subspace_to_json(v: Subspace) -> dict:
    return {"ambient": v.ambient, "dataset": dataset_to_json(v.ds),
            "basis": rat_mat(v.basis)}


def subspace_from_json(data: dict) -> Subspace:
    return Subspace(dataset_from_json(data["dataset"]), data["ambient"],
                    parse_mat(data["basis"]))


def word_to_json(w: GroupWord) -> dict:
    entries = []
    for g in w.entries:
        kind = g.graded_pieces()[0]
        entries.append([kind, [rat_str(c) for c in getattr(g, kind).coords()]])
    n = w.entries[0].n if w.entries else None
    return {"n": n, "entries": entries}


def word_from_json(data: dict) -> GroupWord:
    n = data["n"]
    entries = []
    for kind, coords in data["entries"]:
        deg = 3 if kind in ("a3", "w3") else 6
        alt = Alt.from_coords(n, deg, [rat(c) for c in coords])
        entries.append(ExcElem.make(n, **{kind: alt}))
    return GroupWord(entries)


# -- elgebras ---------------------------------------------------------------

def elgebra_to_json(e: Elgebra) -> dict:
    c = []
    for a in range(e.dim):
        for g in range(e.dim):
            for b in range(e.dim):
                v = e.ad[a][g][b]
                if v:
                    c.append([a + 1, b + 1, g + 1, rat_str(v)])
    d = [[i + 1, j + 1, rat_str(v)]
         for i, row in enumerate(e.D) for j, v in enumerate(row) if v]
    return {"dataset": dataset_to_json(e.ds), "c": c, "D": d}


def elgebra_from_json(data: dict) -> Elgebra:
    ds = dataset_from_json(data["dataset"])
    ad = [linalg.zeros(ds.dimE, ds.dimE) for _ in range(ds.dimE)]
    for a, b, g, v in data["c"]:
        ad[a - 1][g - 1][b - 1] = rat(v)
    d = None
    if data.get("D") is not None:
        d = linalg.zeros(ds.dimE, ds.dimN)
        for i, j, v in data["D"]:
            d[i - 1][j - 1] = rat(v)
    return Elgebra(ds, ad, d)


# -- files ------------------------------------------------------------------

def load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump(data: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")
