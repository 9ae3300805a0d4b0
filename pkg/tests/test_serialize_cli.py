import json
import random

import pytest

from elg._scalar import rat
from elg import serialize
from elg.multilinear import Alt, LieAlg
from elg.exc import ExcElem
from elg.subspaces import GroupWord, _standard_colagrangian, \
    _standard_lagrangian
from elg.elgebra import Elgebra, from_lie_twisted
from elg.randomized import random_form, random_word
from elg.cli import run


def _roundtrip(data):
    return json.loads(json.dumps(data))


def test_dataset_roundtrip(dataset):
    ds = dataset("exc", 3)
    back = serialize.dataset_from_json(_roundtrip(serialize.dataset_to_json(ds)))
    assert back.family == "exc" and back.n == 3
    assert back.embed_scale == ds.embed_scale


def test_lie_roundtrip():
    k = LieAlg.heisenberg(4)
    assert serialize.lie_from_json(_roundtrip(serialize.lie_to_json(k))).f \
        == k.f


def test_form_roundtrip():
    rng = random.Random(0)
    a = random_form(rng, 5, 2)
    assert serialize.form_from_json(_roundtrip(serialize.form_to_json(a))) == a


def test_subspace_roundtrip(dataset):
    v = _standard_colagrangian(dataset("exc", 4))
    back = serialize.subspace_from_json(_roundtrip(serialize.subspace_to_json(v)))
    assert back == v and back.ambient == v.ambient


def test_word_roundtrip(dataset):
    rng = random.Random(1)
    w = random_word(rng, 4, length=3)
    back = serialize.word_from_json(_roundtrip(serialize.word_to_json(w)))
    assert back.matrix(4) == w.matrix(4)


def test_elgebra_roundtrip(dataset):
    e = from_lie_twisted(LieAlg.heisenberg(4))
    back = serialize.elgebra_from_json(_roundtrip(serialize.elgebra_to_json(e)))
    assert back.ad == e.ad and back.D == e.D


# -- CLI --------------------------------------------------------------------

def test_cli_dataset_build_and_verify(tmp_path):
    out = tmp_path / "ds.json"
    assert run(["dataset", "build", "--family", "exc", "--n", "3",
                "--out", str(out)]) == 0
    assert run(["dataset", "verify", str(out)]) == 0


def test_cli_dataset_verify_rejects_corruption(tmp_path):
    out = tmp_path / "ds.json"
    run(["dataset", "build", "--family", "opq", "--n", "2",
         "--out", str(out)])
    data = json.loads(out.read_text())
    data["g_basis"][0][0][1] = "7"
    out.write_text(json.dumps(data))
    assert run(["dataset", "verify", str(out)]) == 2


def test_cli_algebra_verify(capsys):
    assert run(["algebra", "verify", "--n", "3", "--quick"]) == 0
    text = capsys.readouterr().out
    assert "12" in text and "pass" in text


def test_cli_algebra_verify_bad_range():
    assert run(["algebra", "verify", "--n", "nope"]) == 2
    assert run(["algebra", "verify", "--n", "9"]) == 2


def test_cli_subspace_flow(tmp_path, dataset):
    ds = dataset("exc", 4)
    rng = random.Random(2)
    moved = random_word(rng, 4).apply_subspace(_standard_lagrangian(ds))
    path = tmp_path / "v.json"
    serialize.dump(serialize.subspace_to_json(moved), str(path))
    assert run(["subspace", "test", str(path), "--check", "isotropic"]) == 0
    assert run(["subspace", "test", str(path), "--check", "lagrangian"]) == 0
    assert run(["subspace", "test", str(path), "--check",
                "colagrangian"]) == 1
    word_path = tmp_path / "w.json"
    assert run(["subspace", "normalize", str(path), "--out",
                str(word_path)]) == 0
    word = serialize.word_from_json(serialize.load(str(word_path)))
    back = word.apply_subspace(moved)
    assert back == _standard_lagrangian(ds)


def test_cli_elgebra_flow(tmp_path):
    k_path = tmp_path / "k.json"
    serialize.dump(serialize.lie_to_json(LieAlg.heisenberg(4)), str(k_path))
    e_path = tmp_path / "e.json"
    assert run(["elgebra", "from-lie", str(k_path), "--out",
                str(e_path)]) == 0
    assert run(["elgebra", "verify", str(e_path)]) == 0

    f1_path = tmp_path / "f1.json"
    serialize.dump(serialize.form_to_json(Alt.basis(4, (3,))), str(f1_path))
    bad_path = tmp_path / "bad.json"
    assert run(["elgebra", "from-lie", str(k_path), "--F1", str(f1_path),
                "--out", str(bad_path)]) == 0
    assert run(["elgebra", "verify", str(bad_path)]) == 1


def test_cli_parallelisation_and_duality(tmp_path, dataset):
    ds = dataset("exc", 4)
    e_path = tmp_path / "e.json"
    serialize.dump(serialize.elgebra_to_json(Elgebra.abelian(ds)),
                   str(e_path))
    v1 = _standard_colagrangian(ds)
    gen = ExcElem.make(4, w3=Alt.basis(4, (1, 2, 3)))
    v2 = GroupWord([gen]).apply_subspace(v1)
    p1, p2 = tmp_path / "v1.json", tmp_path / "v2.json"
    serialize.dump(serialize.subspace_to_json(v1), str(p1))
    serialize.dump(serialize.subspace_to_json(v2), str(p2))
    assert run(["parallelisation", "check", str(e_path), str(p1)]) == 0
    assert run(["duality", "check", str(e_path), str(p1), str(p2)]) == 0


def test_cli_missing_file_is_input_error():
    assert run(["elgebra", "verify", "no-such-file.json"]) == 2


def test_cli_reports_are_deterministic(tmp_path, capsys):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(["algebra", "verify", "--n", "3", "--quick", "--out", str(out1)])
    run(["algebra", "verify", "--n", "3", "--quick", "--out", str(out2)])
    capsys.readouterr()
    r1 = json.loads(out1.read_text())
    r2 = json.loads(out2.read_text())
    assert r1["report"] == r2["report"]  # timing lives outside the body
