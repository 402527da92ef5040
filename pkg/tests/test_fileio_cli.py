"""File formats, CLI commands, exit codes, and golden reproducibility."""

import io
import json
import pathlib
import sys

import pytest

from latticegames import catalog
from latticegames.cli import run_command
from latticegames.errors import FileFormatError
from latticegames.fileio import (
    canonical_json,
    lattice_from_spec,
    load_covers_spec,
    load_json,
    load_strategy_spec,
)
from latticegames.symbolic import FiniteCofiniteLattice

DATA = pathlib.Path(__file__).parent / "data"
GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(argv, capsys):
    code = run_command(argv)
    out = capsys.readouterr().out
    return code, out


# -- file formats -----------------------------------------------------------------


def test_lattice_kinds():
    m3 = lattice_from_spec(load_json(str(DATA / "m3.json")))
    assert len(m3) == 5
    b2 = lattice_from_spec(load_json(str(DATA / "b2.json")))
    assert len(b2) == 4
    sp = lattice_from_spec(load_json(str(DATA / "sierpinski_topology.json")))
    assert len(sp) == 3
    ch = lattice_from_spec({"kind": "chain", "length": 4})
    assert len(ch) == 4
    pr = lattice_from_spec({"kind": "product",
                            "factors": [{"kind": "chain", "length": 2},
                                        {"kind": "chain", "length": 2}]})
    assert len(pr) == 4
    fc = lattice_from_spec({"kind": "finite_cofinite"})
    assert isinstance(fc, FiniteCofiniteLattice)
    named = lattice_from_spec("m3")
    assert len(named) == 5


def test_topology_closure_validated():
    with pytest.raises(FileFormatError):
        lattice_from_spec({"kind": "topology", "points": ["x", "y"],
                           "opens": [[], ["x"], ["y"], ["x", "y"], ["x"]]} |
                          {"opens": [[], ["x"], ["y"]]})
    with pytest.raises(FileFormatError):
        lattice_from_spec({"kind": "topology", "points": ["x"], "opens": [["x"]]})


def test_covers_and_strategy_files():
    L, covers, bounds = load_covers_spec(load_json(str(DATA / "covers_b2.json")))
    assert len(covers) == 2 and bounds == [1, 1]
    strat = load_strategy_spec(load_json(str(DATA / "tree_strategy.json")),
                               L, L.top)
    first = strat.answer(())
    assert first.labels() == ["{x}", "{y}"]
    nxt = strat.answer((L.by_label("{x}"),))
    assert nxt.labels() == ["{y}", "{x,y}"]


def test_bad_label_diagnostics():
    with pytest.raises(FileFormatError) as exc:
        load_covers_spec({"lattice": "b2", "target": "{x,y}",
                          "items": ["{x}", "nope"]})
    assert "nope" in str(exc.value)


# -- CLI ---------------------------------------------------------------------------


def test_classify_m3_cli(capsys):
    code, out = run(["classify", "--lattice", str(DATA / "m3.json")], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["enough_primes"] is False
    assert body["is_pre_pawlikowski"] is False
    assert body["witnesses"]["enough_primes"] == ["a", "0"]


def test_classify_catalog_name(capsys):
    code, out = run(["classify", "--lattice", "b2"], capsys)
    assert code == 0 and json.loads(out)["is_pawlikowski"] is True


def test_primes_cli(capsys):
    code, out = run(["primes", "--lattice", "powerset(3)"], capsys)
    assert code == 0
    assert json.loads(out)["primes"] == ["{x,y}", "{x,z}", "{y,z}"]


def test_spectrum_cli(capsys):
    code, out = run(["spectrum", "--lattice", "b2"], capsys)
    body = json.loads(out)
    assert code == 0 and body["faithful"] is True and len(body["points"]) == 2


def test_check_cover_cli(capsys):
    code, out = run(["check-cover", "--covers", str(DATA / "covers_b2.json")], capsys)
    assert code == 0
    body = json.loads(out)
    assert all(c["is_cover"] for c in body["covers"])


def test_select_s1_cli(capsys):
    code, out = run(["select", "s1", "--covers", str(DATA / "covers_b2.json")], capsys)
    assert code == 0
    assert json.loads(out)["picks"] == ["{x}", "{y}"]


def test_select_unsatisfiable_exit_one(capsys):
    code, out = run(["select", "fbounded", "--covers",
                     str(DATA / "covers_unsat.json")], capsys)
    assert code == 1
    assert json.loads(out)["result"] == "none"


def test_select_sfin_cli(capsys):
    code, out = run(["select", "sfin", "--covers", str(DATA / "covers_b2.json")],
                    capsys)
    assert code == 0
    assert json.loads(out)["picks"] == [["{x}", "{y}"], []]


def test_simulate_cli(capsys):
    code, out = run(["simulate", "--lattice", "b2",
                     "--strategy", str(DATA / "const_xy.json"),
                     "--depth", "4", "--pick-policy", "cycle"], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["outcome"] == {"status": "WonByII", "inning": 1}


def test_counterplay_menger_cli(capsys):
    code, out = run(["counterplay", "menger", "--lattice", "b2",
                     "--strategy", str(DATA / "const_xy.json"),
                     "--depth", "4"], capsys)
    assert code == 0
    body = json.loads(out)
    assert body["transcript"]["outcome"]["status"] == "WonByII"
    assert all(lv["tail_set_verified"] for lv in body["levels"])


def test_counterplay_refuses_m3_cli(capsys):
    code, out = run(["counterplay", "menger", "--lattice", str(DATA / "m3.json"),
                     "--strategy", str(DATA / "const_m3.json")], capsys)
    assert code == 1  # strategy file missing is also fine as long as exit is 1


def test_counterplay_m3_gate_cli(tmp_path, capsys):
    strat = tmp_path / "s.json"
    strat.write_text(json.dumps({"kind": "constant", "cover": ["a", "b"]}))
    code, out = run(["counterplay", "menger", "--lattice", str(DATA / "m3.json"),
                     "--strategy", str(strat), "--depth", "3"], capsys)
    assert code == 1
    assert json.loads(out)["error"] == "NotEnoughPrimes"


def test_usage_error_exit_two(capsys):
    assert run_command(["select"]) == 2
    assert run_command(["no-such-command"]) == 2


def test_seed_surfaced_in_header(capsys):
    code, out = run(["classify", "--lattice", "b2", "--seed", "9"], capsys)
    assert json.loads(out)["seed"] == 9


# -- golden reproducibility -----------------------------------------------------------


GOLDEN_COMMANDS = {
    "classify_m3.json": ["classify", "--lattice", str(DATA / "m3.json")],
    "classify_topology.json": ["classify", "--lattice", "topology(4,42)"],
    "select_sfin.json": ["select", "sfin", "--covers", str(DATA / "covers_b2.json")],
    "counterplay_menger_b2.json": [
        "counterplay", "menger", "--lattice", "b2",
        "--strategy", str(DATA / "const_xy.json"), "--depth", "4", "--seed", "7"],
    "counterplay_severe_chain.json": [
        "counterplay", "severe", "--lattice", "chain(3)",
        "--strategy", str(DATA / "const_chain.json"),
        "--depth", "4", "--width", "4", "--recurrence", "2", "--seed", "7"],
    "counterplay_rothberger_seeded.json": [
        "counterplay", "rothberger", "--lattice", "topology(4,42)",
        "--strategy", str(DATA / "seeded_topology_strategy.json"),
        "--depth", "5", "--seed", "11"],
    "simulate_seeded.json": [
        "simulate", "--lattice", "b2",
        "--strategy", str(DATA / "seeded_strategy.json"),
        "--depth", "4", "--seed", "3"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_golden_byte_identical(name, capsys):
    code, out = run(GOLDEN_COMMANDS[name], capsys)
    assert code == 0
    golden = (GOLDEN / name).read_text()
    assert out == golden


def test_repl_smoke(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO("catalog\nprimes b2\nquit\n"))
    assert run_command(["repl"]) == 0
    out = capsys.readouterr().out
    assert "b2" in out and '"{x}"' in out


def test_malformed_json_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "chain",\n  "length": }\n')
    code, out = run(["classify", "--lattice", str(bad)], capsys)
    assert code == 1
    body = json.loads(out)
    assert body["error"] == "FileFormatError" and "line 2" in body["detail"]
