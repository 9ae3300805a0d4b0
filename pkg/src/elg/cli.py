"""Command-line front end.

Subcommands: dataset (build/verify), algebra (verify), subspace
(test/normalize), elgebra (from-lie/verify), parallelisation (check),
duality (check), suite.  Exit codes: 0 pass, 1 fail, 2 input error.

Reports are deterministic for fixed inputs: rationals print as "p/q",
iteration orders are fixed, and wall-clock timing lives in a separate
"timing_s" field outside the canonical body.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from ._scalar import Rat, rat_str
from .multilinear import Alt
from .exc import exc_dims, verify_algebra
from .datasets import FAMILIES, build_dataset
from .subspaces import (NotLagrangianError, is_isotropic, is_coisotropic,
                        is_colagrangian, normalize_lagrangian,
                        _standard_colagrangian, _standard_lagrangian,
                        _small_orbit_lagrangian)
from .elgebra import (Twist, from_lie_twisted, verify_elgebra,
                      check_twist_integrability, check_parallelisation,
                      duality_pair, wedge2_so_elgebra)
from . import serialize
from . import randomized


class InputError(Exception):
    pass


def _jsonable(x):
    """Canonical JSON form: rationals as strings, tuples as lists."""
    if isinstance(x, Rat):
        return rat_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _load(path: str) -> dict:
    try:
        return serialize.load(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}")


def _decode(path: str, decoder):
    data = _load(path)
    try:
        return decoder(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed {path}: {exc}")


def _emit(report: dict, out: str | None, started: float) -> int:
    body = _jsonable(report)
    print(json.dumps(body, indent=1, sort_keys=True))
    if out:
        serialize.dump({"report": body,
                        "timing_s": round(time.time() - started, 3)}, out)
    return 0 if report.get("pass", True) else 1


# -- subcommand handlers ----------------------------------------------------

def cmd_dataset_build(args, started) -> int:
    try:
        ds = build_dataset(args.family, args.n, p=args.p, q=args.q)
    except ValueError as exc:
        raise InputError(str(exc))
    serialize.dump(serialize.dataset_to_json(ds), args.out)
    return _emit({"command": "dataset build", "family": ds.family,
                  "n": ds.n, "dimE": ds.dimE, "dimN": ds.dimN,
                  "embed_scale": ds.embed_scale, "out": args.out,
                  "pass": True}, None, started)


def cmd_dataset_verify(args, started) -> int:
    ds = _decode(args.file, serialize.dataset_from_json)
    adm = ds.check_admissible()
    closed = ds.check_g_closed()
    report = {"command": "dataset verify", "family": ds.family, "n": ds.n,
              "checks": {"admissible": {"pass": adm["pass"],
                                        "witness": adm["witness"]},
                         "g_closed": closed},
              "embed_scale": ds.embed_scale,
              "pass": adm["pass"] and closed["pass"]}
    return _emit(report, args.out, started)


def _parse_range(spec: str) -> list[int]:
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(spec)]
    except ValueError:
        raise InputError(f"bad rank spec {spec!r} (use e.g. 4 or 4..6)")


def cmd_algebra_verify(args, started) -> int:
    ranks = _parse_range(args.n)
    report = {"command": "algebra verify", "ranks": {}, "pass": True}
    for n in ranks:
        try:
            r = verify_algebra(n, full=not args.quick)
        except ValueError as exc:
            raise InputError(str(exc))
        dim_e, dim_n = exc_dims(n)
        line = {"dimE": dim_e, "dimN": dim_n, "dim": r["dim"],
                "checks": {k: v["pass"] for k, v in r["checks"].items()},
                "pass": r["pass"]}
        report["ranks"][str(n)] = line
        report["pass"] = report["pass"] and r["pass"]
        status = "pass" if r["pass"] else "FAIL"
        print(f"n={n}  dimE={dim_e:3d}  dimN={dim_n:3d}  "
              f"dim={r['dim']:3d}  {status}")
    return _emit(report, args.out, started)


def cmd_subspace_test(args, started) -> int:
    v = _decode(args.file, serialize.subspace_from_json)
    check = args.check
    witness = None
    if check == "isotropic":
        ok = is_isotropic(v)
    elif check == "coisotropic":
        ok = is_coisotropic(v)
    elif check == "colagrangian":
        ok = is_colagrangian(v)
    else:
        if not is_isotropic(v):
            ok, witness = False, "not isotropic"
        else:
            try:
                _, label = normalize_lagrangian(v)
                ok, witness = True, f"label {label}"
            except NotLagrangianError:
                ok, witness = False, "isotropic but not maximal"
    report = {"command": "subspace test", "check": check,
              "family": v.ds.family, "n": v.ds.n, "dim": v.dim,
              "witness": witness, "pass": ok}
    return _emit(report, args.out, started)


def cmd_subspace_normalize(args, started) -> int:
    v = _decode(args.file, serialize.subspace_from_json)
    try:
        word, label = normalize_lagrangian(v)
    except NotLagrangianError as exc:
        return _emit({"command": "subspace normalize",
                      "error": str(exc), "pass": False}, args.out, started)
    except ValueError as exc:
        raise InputError(str(exc))
    if args.out_word:
        serialize.dump(serialize.word_to_json(word), args.out_word)
    report = {"command": "subspace normalize", "label": label,
              "word_length": len(word), "out": args.out_word, "pass": True}
    return _emit(report, args.out, started)


def cmd_elgebra_from_lie(args, started) -> int:
    k = _decode(args.lie, serialize.lie_from_json)
    f1 = (_decode(args.F1, serialize.form_from_json) if args.F1
          else Alt.zero(k.dim, 1))
    f4 = (_decode(args.F4, serialize.form_from_json) if args.F4
          else Alt.zero(k.dim, min(4, k.dim)))
    try:
        e = from_lie_twisted(k, Twist(f1, f4))
    except ValueError as exc:
        raise InputError(str(exc))
    if args.out_elgebra:
        serialize.dump(serialize.elgebra_to_json(e), args.out_elgebra)
    report = {"command": "elgebra from-lie", "n": k.dim, "dimE": e.dim,
              "twist_integrable": check_twist_integrability(k, Twist(f1, f4)),
              "out": args.out_elgebra, "pass": True}
    return _emit(report, args.out, started)


def cmd_elgebra_verify(args, started) -> int:
    e = _decode(args.file, serialize.elgebra_from_json)
    report = verify_elgebra(e)
    report["command"] = "elgebra verify"
    return _emit(report, args.out, started)


def cmd_parallelisation_check(args, started) -> int:
    e = _decode(args.elgebra, serialize.elgebra_from_json)
    v = _decode(args.subspace, serialize.subspace_from_json)
    cert = check_parallelisation(e, v)
    cert["command"] = "parallelisation check"
    return _emit(cert, args.out, started)


def cmd_duality_check(args, started) -> int:
    e = _decode(args.elgebra, serialize.elgebra_from_json)
    v1 = _decode(args.first, serialize.subspace_from_json)
    v2 = _decode(args.second, serialize.subspace_from_json)
    cert = duality_pair(e, v1, v2)
    cert["command"] = "duality check"
    return _emit(cert, args.out, started)


# -- suite ------------------------------------------------------------------

def _suite_checks(quick: bool, seed: int):
    """Yield (name, callable) pairs; each callable returns a report dict
    with at least a 'pass' entry."""
    n_max = 4 if quick else 6
    trials = 10 if quick else 50
    words = 20 if quick else 200

    def dims():
        table = {str(n): exc_dims(n) for n in range(3, 7)}
        want = {"3": (6, 3), "4": (10, 5), "5": (16, 10), "6": (27, 27)}
        return {"pass": {k: tuple(v) for k, v in table.items()} == want,
                "table": table}

    yield "dimension_table", dims

    def algebra():
        out = {"pass": True, "ranks": {}}
        for n in range(3, n_max + 1):
            r = verify_algebra(n, full=not quick)
            out["ranks"][str(n)] = r["pass"]
            out["pass"] = out["pass"] and r["pass"]
        return out

    yield "algebra_verification", algebra

    def admissibility():
        out = {"pass": True, "cases": {}}
        cases = ([("gl", n) for n in range(1, n_max + 1)]
                 + [("opq", n) for n in range(1, n_max + 1)]
                 + [("exc", n) for n in range(3, n_max + 1)]
                 + [("slw2", n) for n in range(2, n_max + 1)])
        for family, n in cases:
            ds = build_dataset(family, n)
            ok = ds.check_admissible()["pass"]
            out["cases"][f"{family}:{n}"] = ok
            out["pass"] = out["pass"] and ok
        return out

    yield "admissibility", admissibility

    def classification():
        rng = random.Random(seed)
        out = {"pass": True, "trials": 0}
        for n in range(3, n_max + 1):
            ds = build_dataset("exc", n)
            std = {"dim_n": _standard_lagrangian(ds),
                   "dim_n_minus_1": _small_orbit_lagrangian(ds)}
            per = max(1, words // (2 * (n_max - 2)))
            for label, w0 in std.items():
                for _ in range(per):
                    word = randomized.random_word(rng, n)
                    moved = word.apply_subspace(w0)
                    _, got = normalize_lagrangian(moved)
                    out["trials"] += 1
                    if got != label:
                        out["pass"] = False
                        out["witness"] = {"n": n, "expected": label,
                                          "got": got}
                        return out
        return out

    yield "two_orbit_classification", classification

    def colagrangian():
        out = {"pass": True}
        for n in range(3, n_max + 1):
            ds = build_dataset("exc", n)
            v = _standard_colagrangian(ds)
            if not is_colagrangian(v):
                out["pass"] = False
                out["witness"] = {"n": n, "case": "standard"}
                return out
            from .subspaces import Subspace
            big = Subspace(ds, "E", v.basis
                           + [[(1 if i == 0 else 0) for i in range(ds.dimE)]])
            if is_colagrangian(big) or not is_coisotropic(big):
                out["pass"] = False
                out["witness"] = {"n": n, "case": "extended"}
                return out
        return out

    yield "colagrangian_criterion", colagrangian

    def twists():
        rng = random.Random(seed + 1)
        out = {"pass": True, "trials": trials, "integrable": 0}
        for _ in range(trials):
            k = randomized.random_lie4(rng)
            t = randomized.random_twist(rng, 4)
            e = from_lie_twisted(k, t)
            good = verify_elgebra(e)["pass"]
            flat = check_twist_integrability(k, t)
            if good != flat:
                out["pass"] = False
                out["witness"] = {"leibniz": good, "integrable": flat}
                return out
            out["integrable"] += flat
        return out

    yield "twist_integrability_iff_leibniz", twists

    def sphere():
        e = wedge2_so_elgebra(5)
        ok1 = verify_elgebra(e)["pass"]
        from .subspaces import Subspace
        idx = [(i, j) for i in range(1, 6) for j in range(i + 1, 6)]
        rows = [[1 if k == m else 0 for m in range(10)]
                for k, (i, j) in enumerate(idx) if j <= 4]
        cert = check_parallelisation(e, Subspace(e.ds, "E", rows))
        return {"pass": ok1 and cert["pass"], "elgebra": ok1,
                "parallelisation": cert["checks"]}

    yield "so5_sphere_parallelisation", sphere

    def torus():
        from .elgebra import Elgebra
        from .subspaces import Subspace, GroupWord
        from .exc import ExcElem
        ds = build_dataset("exc", 4)
        e = Elgebra.abelian(ds)
        v1 = _standard_colagrangian(ds)
        gen = ExcElem.make(4, w3=Alt.basis(4, (1, 2, 3)))
        v2 = GroupWord([gen]).apply_subspace(v1)
        cert = duality_pair(e, v1, v2)
        return {"pass": cert["pass"] and v1 != v2,
                "distinct": v1 != v2,
                "trivial_intersection": cert.get("trivial_intersection")}

    yield "torus_duality_pair", torus


def cmd_suite(args, started) -> int:
    report = {"command": "suite", "quick": args.quick, "seed": args.seed,
              "checks": {}, "pass": True}
    for name, fn in _suite_checks(args.quick, args.seed):
        t0 = time.time()
        result = fn()
        report["checks"][name] = result
        report["pass"] = report["pass"] and result["pass"]
        status = "pass" if result["pass"] else "FAIL"
        print(f"{name:35s} {status}  ({time.time() - t0:.1f}s)")
    return _emit(report, args.out, started)


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="elg")
    sub = p.add_subparsers(dest="command", required=True)

    ds = sub.add_parser("dataset").add_subparsers(dest="action",
                                                  required=True)
    b = ds.add_parser("build")
    b.add_argument("--family", required=True, choices=sorted(FAMILIES))
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--p", type=int)
    b.add_argument("--q", type=int)
    b.add_argument("--out", required=True)
    b.set_defaults(fn=cmd_dataset_build)
    v = ds.add_parser("verify")
    v.add_argument("file")
    v.add_argument("--out")
    v.set_defaults(fn=cmd_dataset_verify)

    alg = sub.add_parser("algebra").add_subparsers(dest="action",
                                                   required=True)
    av = alg.add_parser("verify")
    av.add_argument("--n", required=True, help="rank or range, e.g. 4 or 4..6")
    av.add_argument("--quick", action="store_true")
    av.add_argument("--out")
    av.set_defaults(fn=cmd_algebra_verify)

    sp = sub.add_parser("subspace").add_subparsers(dest="action",
                                                   required=True)
    st = sp.add_parser("test")
    st.add_argument("file")
    st.add_argument("--check", required=True,
                    choices=["isotropic", "coisotropic", "lagrangian",
                             "colagrangian"])
    st.add_argument("--out")
    st.set_defaults(fn=cmd_subspace_test)
    sn = sp.add_parser("normalize")
    sn.add_argument("file")
    sn.add_argument("--out", dest="out_word")
    sn.add_argument("--report", dest="out")
    sn.set_defaults(fn=cmd_subspace_normalize, out=None)

    el = sub.add_parser("elgebra").add_subparsers(dest="action",
                                                  required=True)
    ef = el.add_parser("from-lie")
    ef.add_argument("lie")
    ef.add_argument("--F1")
    ef.add_argument("--F4")
    ef.add_argument("--out", dest="out_elgebra")
    ef.add_argument("--report", dest="out")
    ef.set_defaults(fn=cmd_elgebra_from_lie, out=None)
    ev = el.add_parser("verify")
    ev.add_argument("file")
    ev.add_argument("--out")
    ev.set_defaults(fn=cmd_elgebra_verify)

    pc = sub.add_parser("parallelisation").add_subparsers(dest="action",
                                                          required=True)
    pck = pc.add_parser("check")
    pck.add_argument("elgebra")
    pck.add_argument("subspace")
    pck.add_argument("--out")
    pck.set_defaults(fn=cmd_parallelisation_check)

    du = sub.add_parser("duality").add_subparsers(dest="action",
                                                  required=True)
    dck = du.add_parser("check")
    dck.add_argument("elgebra")
    dck.add_argument("first")
    dck.add_argument("second")
    dck.add_argument("--out")
    dck.set_defaults(fn=cmd_duality_check)

    su = sub.add_parser("suite")
    su.add_argument("--quick", action="store_true")
    su.add_argument("--seed", type=int, default=0)
    su.add_argument("--out")
    su.set_defaults(fn=cmd_suite)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.time()
    try:
        return args.fn(args, started)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
