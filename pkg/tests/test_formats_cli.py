"""JSON formats and the command-line interface."""

import json

import pytest

from ltk import catalogue
from ltk.cli import main
from ltk.formats import (
    ParseError,
    dumps,
    parse_masa,
    parse_system,
    serialize_masa,
    serialize_system,
)

NAMES = ["zero:2", "n3", "sl2", "sl3", "dsum:sl2+sl2", "shuffle:5:sl2"]


@pytest.mark.parametrize("name", NAMES)
def test_roundtrip(name):
    ts = catalogue(name).system
    got_name, got = parse_system(json.loads(dumps(serialize_system(ts, name))))
    assert got_name == name
    assert got.equals(ts)


def test_masa_roundtrip_pairs():
    entry = catalogue("sl2")
    obj = serialize_masa(list(entry.masa_pairs), 3, coords="pairs")
    coords, vectors = parse_masa(json.loads(dumps(obj)), 3)
    assert coords == "pairs"
    assert tuple(vectors) == entry.masa_pairs


def test_parse_rejects_unknown_keys():
    obj = serialize_system(catalogue("sl2").system, "sl2")
    obj["extra"] = 1
    with pytest.raises(ParseError):
        parse_system(obj)


def test_parse_rejects_bad_index():
    obj = serialize_system(catalogue("sl2").system, "sl2")
    obj["products"][0]["args"] = [0, 0, 9]
    with pytest.raises(ParseError):
        parse_system(obj)


def test_parse_rejects_float_rational():
    obj = {
        "format": "ltk-triple-v1",
        "name": "x",
        "dim": 1,
        "basis": ["a"],
        "products": [{"args": [0, 0, 0], "out": {"0": 0.5}}],
    }
    with pytest.raises(ParseError):
        parse_system(obj)


def test_masa_rejects_dependent_vectors():
    obj = {
        "format": "ltk-masa-v1",
        "coords": "reduced",
        "vectors": [["1", "0"], ["2", "0"]],
    }
    with pytest.raises(ParseError):
        parse_masa(obj, 2)


@pytest.fixture()
def files(tmp_path):
    def gen(name, masa=False):
        out = tmp_path / f"{name.replace(':', '_').replace('+', '_')}.json"
        argv = ["gen", name, "--out", str(out)]
        mf = None
        if masa:
            mf = tmp_path / (out.stem + "_masa.json")
            argv += ["--masa-out", str(mf)]
        assert main(argv) == 0
        return (str(out), str(mf)) if masa else str(out)

    return gen


def test_cli_verify_ok(files, capsys):
    path = files("sl2")
    assert main(["verify", path]) == 0
    out = capsys.readouterr().out
    assert "identities: PASS, J: dim 0, lie: true" in out


def test_cli_embed_reduced_vs_free(files):
    path = files("sl2")
    assert main(["embed", path]) == 0
    assert main(["embed", path, "--no-reduce"]) == 1


def test_cli_roots_and_connect(files):
    path, masa = files("sl2", masa=True)
    assert main(["roots", path, "--masa", masa]) == 0
    assert main(["connect", path, "--masa", masa, "--from", "0", "--to", "1"]) == 0
    assert main(["connect", path, "--masa", masa, "--from", "0", "--to", "9"]) == 2


def test_cli_decompose_exit_codes(files):
    sl2, masa = files("sl2", masa=True)
    assert main(["decompose", sl2, "--masa", masa]) == 0
    n3 = files("n3")
    assert main(["decompose", n3, "--auto"]) == 3
    sl3, masa3 = files("sl3", masa=True)
    assert main(["decompose", sl3, "--masa", masa3]) == 0
    assert main(["decompose", sl3, "--masa", masa3, "--strict"]) == 4


def test_cli_parse_errors(tmp_path):
    missing = str(tmp_path / "missing.json")
    assert main(["verify", missing]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 2
    assert main(["gen", "bogus", "--out", str(tmp_path / "x.json")]) == 2


def test_cli_ann_and_gen_roundtrip(files, capsys):
    path = files("zero:3")
    assert main(["ann", path]) == 0
    assert "dim 3 of 3" in capsys.readouterr().out
    assert main(["verify", path]) == 0


def test_cli_json_byte_stable(files, capsys):
    sl2, masa = files("sl2", masa=True)
    capsys.readouterr()  # drop the gen output
    outputs = []
    for _ in range(2):
        assert main(["decompose", sl2, "--masa", masa, "--json"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    json.loads(outputs[0])  # well-formed


def test_shuffle_reproducible():
    a = catalogue("shuffle:5:sl2")
    b = catalogue("shuffle:5:sl2")
    assert a.system.equals(b.system)
    assert a.masa_pairs == b.masa_pairs
