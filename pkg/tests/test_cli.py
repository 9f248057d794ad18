import importlib
import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecclab.cli import (
    ConfigError,
    ExperimentConfig,
    InputError,
    format_words,
    main,
    parse_config,
    parse_words,
    wilson_interval,
)
from ecclab.cli.output import json_value, render


def run(tmp_path, command, cfg_text, *extra, name="out.txt"):
    cfg = tmp_path / f"{command}.cfg"
    cfg.write_text(cfg_text)
    out = tmp_path / name
    code = main([command, "--config", str(cfg), "--out", str(out), *extra])
    return code, out.read_text() if out.exists() else None


def test_config_round_trip():
    cfg = ExperimentConfig(family="hadamard", k=7, grid=(0.1, 0.25, 1 / 3), unsafe=True, seed=2**63)
    assert parse_config(cfg.to_text()) == cfg


@settings(max_examples=30)
@given(st.integers(0, 2**64 - 1), st.lists(st.floats(0, 1), max_size=5), st.floats(0, 0.999))
def test_config_round_trip_property(seed, grid, p):
    cfg = ExperimentConfig(seed=seed, grid=tuple(grid), p=p)
    assert parse_config(cfg.to_text()) == cfg


@pytest.mark.parametrize("text", ["nonsense", "colour = red", "k = five", "family = bch",
                                  "unsafe = maybe", "p = 1.5", "seed = -1"])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_config_comments_and_blank_lines():
    cfg = parse_config("# a comment\n\nk = 3\n  family = hadamard  \n")
    assert (cfg.k, cfg.family) == (3, "hadamard")


def test_word_format_round_trip():
    words = [(1, 2, 3), (0, 1, 1, 0, 1), (7,)]
    assert parse_words(format_words(words)) == words
    packed = [(1, 0, 1, 1, 0, 0, 0, 1, 1), (0, 0, 0)]
    text = format_words(packed, packed=True)
    assert text == "hex:9:163\n\nhex:3:0\n"
    assert parse_words(text) == packed


@pytest.mark.parametrize("text", ["1\nx\n", "hex:4:1f\n", "hex:zz\n", "1\nhex:2:1\n", "-3\n"])
def test_word_format_errors(text):
    with pytest.raises(InputError):
        parse_words(text)


def test_wilson_interval():
    lo, hi = wilson_interval(50, 50)
    assert hi == 1.0 and abs(lo - 0.928652) < 1e-6
    lo, hi = wilson_interval(5, 10)
    assert abs(lo - 0.236593) < 1e-6 and abs(hi - 0.763407) < 1e-6
    assert wilson_interval(0, 0) == (0.0, 1.0)


def test_json_floats_fixed_precision():
    assert json_value({"a": 0.5, "b": [1, True, None, "x"]}) == '{"a": 0.500000000, "b": [1, true, null, "x"]}'
    text = render([{"v": 1 / 3}], ["v"], "csv")
    assert text == "schema_version,v\n1,0.333333333\n"


RS_CFG = "family = rs\nq = 16\nn = 15\nk = 5\nchannel = adversarial\nerrors = 5\n"


def test_encode_decode_identity(tmp_path):
    msgs = tmp_path / "m.txt"
    msgs.write_text("1\n2\n3\n4\n5\n\n0\n0\n0\n0\n15\n")
    words = tmp_path / "w.txt"
    code, text = run(tmp_path, "encode", "family = rs\nchannel = none\n", str(msgs), "--words", str(words))
    assert code == 0 and text.splitlines()[1].endswith(",0")
    code, text = run(tmp_path, "decode", "family = rs\n", str(words), name="dec.txt")
    assert code == 0
    lines = text.splitlines()
    assert lines[1] == "1,0,ok,1 2 3 4 5,15" and lines[2] == "1,1,ok,0 0 0 0 15,15"


def test_rs_adversarial_recovery(tmp_path):
    rng = np.random.default_rng(0)
    msgs = tmp_path / "m.txt"
    msgs.write_text(format_words(rng.integers(0, 16, size=(1000, 5)).tolist()))
    words = tmp_path / "w.txt"
    code, text = run(tmp_path, "encode", RS_CFG, str(msgs), "--words", str(words))
    assert code == 0 and all(line.endswith(",5") for line in text.splitlines()[1:])
    code, text = run(tmp_path, "decode", RS_CFG, str(words), name="dec.txt")
    sent = [line.split(",")[2] for line in (tmp_path / "out.txt").read_text().splitlines()[1:]]
    got = [line.split(",")[3] for line in text.splitlines()[1:]]
    assert code == 0 and len(got) == 1000 and got == sent


def test_hadamard_and_concat_families(tmp_path):
    msgs = tmp_path / "m.txt"
    msgs.write_text("1\n0\n1\n1\n")
    words = tmp_path / "w.txt"
    cfg = "family = hadamard\nk = 4\neps = 0.2\nchannel = adversarial\nerrors = 2\n"
    assert run(tmp_path, "encode", cfg, str(msgs), "--words", str(words))[0] == 0
    assert words.read_text().startswith("hex:16:")
    code, text = run(tmp_path, "decode", cfg, str(words), name="d.txt")
    assert code == 0 and text.splitlines()[1] == "1,0,ok,1 0 1 1,14"
    code, text = run(tmp_path, "list-decode", cfg, str(words), "--format", "json", name="l.txt")
    rec = json.loads(text)
    assert code == 0 and "1 0 1 1" in rec["candidates"]

    ccfg = "family = concat\ninner_k = 2\nn = 4\nk = 2\neps = 0.2\nt = 3\nchannel = none\n"
    msgs.write_text("1\n0\n0\n1\n")
    assert run(tmp_path, "encode", ccfg, str(msgs), "--words", str(words))[0] == 0
    code, text = run(tmp_path, "decode", ccfg, str(words), name="d.txt")
    assert code == 0 and text.splitlines()[1] == "1,0,ok,1 0 0 1,16"
    code, text = run(tmp_path, "list-decode", ccfg, str(words), name="l.txt")
    assert code == 0 and "1 0 0 1" in text


def test_multilinear_family(tmp_path):
    msgs = tmp_path / "m.txt"
    msgs.write_text("1\n2\n3\n")
    words = tmp_path / "w.txt"
    cfg = "family = multilinear\nq = 4\nm = 3\nd = 2\nchannel = adversarial\nerrors = 3\n"
    assert run(tmp_path, "encode", cfg, str(msgs), "--words", str(words))[0] == 0
    code, text = run(tmp_path, "decode", cfg, str(words), name="d.txt")
    assert code == 0 and text.splitlines()[1].startswith("1,0,ok,1 2 3,")
    assert run(tmp_path, "list-decode", cfg, str(words), name="l.txt")[0] == 2


def test_input_errors_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n2\n")
    assert run(tmp_path, "encode", RS_CFG, str(bad))[0] == 3
    bad.write_text("1\n2\n3\n4\n99\n")
    assert run(tmp_path, "encode", RS_CFG, str(bad))[0] == 3
    assert run(tmp_path, "decode", RS_CFG, str(tmp_path / "missing.txt"))[0] == 3
    assert "input error" in capsys.readouterr().err


def test_config_errors_exit_2(tmp_path):
    words = tmp_path / "w.txt"
    words.write_text("0\n")
    assert run(tmp_path, "decode", "family = rs\nn = 20\n", str(words))[0] == 2
    assert run(tmp_path, "gl-demo", "eps = 0.5\n")[0] == 2
    assert run(tmp_path, "learn-fourier", "theta = 1.2\n")[0] == 2
    assert run(tmp_path, "learn-fourier", "function = sparse\ncoefficients = 1:0.9,2:0.9\nk = 4\n")[0] == 2
    assert run(tmp_path, "pir-demo", "scheme = hadamard-direct\nk = 4\n")[0] == 2
    assert main(["gl-demo", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_contract_violation_exit_4(tmp_path, monkeypatch):
    msgs = tmp_path / "m.txt"
    msgs.write_text("1\n2\n3\n4\n5\n")
    words = tmp_path / "w.txt"
    run(tmp_path, "encode", RS_CFG, str(msgs), "--words", str(words))
    cli_main = importlib.import_module("ecclab.cli.main")
    real = cli_main.build_family

    def broken(cfg):
        fam = real(cfg)
        fam.decode = lambda y: (0, 0, 0, 0, 1)
        return fam
    monkeypatch.setattr(cli_main, "build_family", broken)
    assert run(tmp_path, "decode", RS_CFG, str(words), name="d.txt")[0] == 4


def test_simulate_rs_cliff(tmp_path):
    code, text = run(tmp_path, "simulate", RS_CFG + "grid = 4,5,6\ntrials = 40\n")
    rates = [float(line.split(",")[4]) for line in text.splitlines()[1:]]
    assert code == 0 and rates[:2] == [1.0, 1.0] and rates[2] < 0.5


def test_simulate_hadamard_tracks_bound(tmp_path):
    code, text = run(tmp_path, "simulate", "family = hadamard\nk = 8\ngrid = 0.05,0.1,0.2\ntrials = 2000\n")
    assert code == 0
    for line in text.splitlines()[1:]:
        _, delta, _, _, _, lo, hi, queries = line.split(",")
        assert float(hi) >= 1 - 2 * float(delta)
        assert float(queries) == 2.0


def test_simulate_empty_grid_header_only(tmp_path):
    code, text = run(tmp_path, "simulate", "family = rs\nchannel = bsc\ngrid =\n")
    assert code == 0
    assert text == "schema_version,param,trials,successes,rate,ci_low,ci_high,mean_queries\n"


def test_pir_demo(tmp_path):
    code, text = run(tmp_path, "pir-demo", "scheme = hadamard\nk = 8\nretrievals = 8\n", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["audit"]["max_distance"] == 0 and doc["communication_bits"] == 18
    assert all(t["output"] == t["expected"] for t in doc["transcripts"])
    code, text = run(tmp_path, "pir-demo", "scheme = hadamard-direct\nk = 4\nunsafe = true\n", "--format", "json")
    assert code == 0 and json.loads(text)["audit"]["max_distance"] > 0
    code, text = run(tmp_path, "pir-demo", "scheme = multilinear\nq = 4\nm = 3\nd = 2\nretrievals = 3\n")
    assert code == 0 and text.splitlines()[1].split(",")[7] == "0.000000000"


def test_gl_demo_recovery(tmp_path):
    code, text = run(tmp_path, "gl-demo", "k = 8\nruns = 40\neps = 0.15\nagreement = 0.65\n")
    flags = [line.split(",")[3] for line in text.splitlines()[1:]]
    assert code == 0 and flags.count("true") >= 30


def test_learn_fourier_cross_check(tmp_path):
    code, text = run(tmp_path, "learn-fourier", "k = 6\nfunction = majority\ninputs = 0,2,4\ntheta = 0.25\n")
    rows = [line.split(",") for line in text.splitlines()[1:]]
    assert code == 0 and len(rows) == 4
    assert all(r[2] == "true" and r[5] == "true" for r in rows)
    assert sorted(r[4] for r in rows) == ["-0.500000000", "0.500000000", "0.500000000", "0.500000000"]


DETERMINISM = [
    ("encode", RS_CFG, True),
    ("decode", RS_CFG, True),
    ("list-decode", "family = rs\nt = 13\n", True),
    ("simulate", "family = rs\nchannel = bsc\ngrid = 0.1,0.3\ntrials = 30\n", False),
    ("pir-demo", "scheme = hadamard\nk = 6\n", False),
    ("gl-demo", "k = 6\nruns = 5\n", False),
    ("learn-fourier", "k = 8\nfunction = random\ntheta = 0.15\n", False),
]


@pytest.mark.parametrize("command,cfg,needs_input", DETERMINISM, ids=[d[0] for d in DETERMINISM])
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_rerun_is_byte_identical(tmp_path, command, cfg, needs_input, fmt):
    extra = ["--seed", "12345", "--format", fmt]
    if needs_input:
        words = tmp_path / "in.txt"
        rng = np.random.default_rng(1)
        size = 5 if command == "encode" else 15
        words.write_text(format_words(rng.integers(0, 16, size=(4, size)).tolist()))
        extra.append(str(words))
    first = run(tmp_path, command, cfg, *extra, name="a.txt")
    second = run(tmp_path, command, cfg, *extra, name="b.txt")
    assert first[0] == second[0] == 0
    assert first[1] == second[1] and first[1]
