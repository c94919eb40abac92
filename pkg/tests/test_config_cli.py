import io
import json
import os
import subprocess
import sys

import pytest

from makerbreaker.cli import main
from makerbreaker.config import load_config, ConfigError, OUT_DIR_ENV


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


BASE_TREE = {
    "kind": "tree-embed",
    "seeds": {"count": 2, "base": 0},
    "tree": {"family": "path", "n": 20},
    "breaker": "random",
}


def test_config_parses_and_defaults(tmp_path):
    cfg = load_config(_write(tmp_path, "c.json", {**BASE_TREE, "out_dir": str(tmp_path)}))
    assert cfg.kind == "tree-embed"
    assert cfg.seeds == [0, 1]
    assert cfg.bias_p == 1 and cfg.bias_q == 1
    assert cfg.first == "breaker"
    assert cfg.figures is True


def test_config_rejects_unknown_keys(tmp_path):
    bad = dict(BASE_TREE)
    bad["typo_field"] = 1
    with pytest.raises(ConfigError) as err:
        load_config(_write(tmp_path, "c.json", bad))
    assert "typo_field" in str(err.value)


def test_config_rejects_kind_mismatched_keys(tmp_path):
    bad = dict(BASE_TREE)
    bad["m"] = 5  # a box key on a tree-embed config
    with pytest.raises(ConfigError):
        load_config(_write(tmp_path, "c.json", bad))


def test_config_rejects_bad_values(tmp_path):
    for mutation in (
        {"kind": "chess"},
        {"seeds": []},
        {"seeds": {"count": 0}},
        {"bias": {"p": 0}},
        {"first": "nobody"},
        {"figures": "yes"},
        {"move_cap": -1},
        {"tree": {"family": "path", "n": 20, "weird": 1}},
    ):
        bad = {**BASE_TREE, **mutation}
        with pytest.raises(ConfigError):
            load_config(_write(tmp_path, "c.json", bad))


def test_config_env_var_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path / "envout"))
    cfg = load_config(_write(tmp_path, "c.json", BASE_TREE))
    assert str(cfg.out_dir) == str(tmp_path / "envout")


def test_cli_run_and_audit_roundtrip(tmp_path):
    cfg_path = _write(tmp_path, "c.json", {
        **BASE_TREE,
        "out_dir": str(tmp_path / "out"),
        "figures": False,
    })
    assert main(["run", str(cfg_path)]) == 0
    transcripts = sorted((tmp_path / "out").glob("*.jsonl"))
    assert len(transcripts) == 2
    assert (tmp_path / "out" / "summary.csv").exists()
    assert main(["audit"] + [str(p) for p in transcripts]) == 0


def test_cli_run_determinism_byte_identical(tmp_path):
    outs = []
    for name in ("a", "b"):
        cfg_path = _write(tmp_path, f"{name}.json", {
            **BASE_TREE,
            "out_dir": str(tmp_path / name),
            "figures": False,
        })
        assert main(["run", str(cfg_path)]) == 0
        outs.append((tmp_path / name / "tree-embed-0.jsonl").read_bytes())
    assert outs[0] == outs[1]


def test_cli_config_error_exit_2(tmp_path):
    bad = _write(tmp_path, "bad.json", {"kind": "nope", "seeds": [1]})
    assert main(["run", str(bad)]) == 2
    missing_keys = _write(tmp_path, "bad2.json", {**BASE_TREE, "bogus": True})
    assert main(["run", str(missing_keys)]) == 2


def test_cli_audit_exit_3_on_violation(tmp_path):
    cfg_path = _write(tmp_path, "c.json", {
        **BASE_TREE,
        "seeds": [0],
        "out_dir": str(tmp_path / "out"),
        "figures": False,
    })
    main(["run", str(cfg_path)])
    victim = tmp_path / "out" / "tree-embed-0.jsonl"
    records = [json.loads(ln) for ln in victim.read_text().splitlines()]
    moves = [r for r in records if r["record"] == "move"]
    moves[5]["elements"] = [moves[3]["elements"][0]]
    victim.write_text("\n".join(json.dumps(r) for r in records) + "\n")
    assert main(["audit", str(victim)]) == 3


def test_cli_solve_and_beck(tmp_path, capsys):
    hg = tmp_path / "hg.txt"
    hg.write_text("4\n0 1\n2 3\n")
    assert main(["solve", str(hg), "--bias", "1:1", "--first", "breaker"]) == 0
    out = capsys.readouterr().out
    assert "breaker wins" in out
    assert main(["beck", str(hg), "--bias", "1:1"]) == 0
    out = capsys.readouterr().out
    assert "0.5" in out and "does not hold" in out


def test_cli_box_run_emits_traces_and_figure(tmp_path):
    cfg_path = _write(tmp_path, "box.json", {
        "kind": "box",
        "seeds": [1, 2],
        "m": 5,
        "q": 2,
        "rounds": 50,
        "adversary": "uniform",
        "out_dir": str(tmp_path / "out"),
    })
    assert main(["run", str(cfg_path)]) == 0
    out = tmp_path / "out"
    assert (out / "box-trace-1.csv").exists()
    assert (out / "box-trace-2.csv").exists()
    assert (out / "box-weights.png").exists()
    assert main(["audit", str(out / "box-1.jsonl")]) == 0


def test_cli_game_run_emits_outcome_figure(tmp_path):
    cfg_path = _write(tmp_path, "c.json", {
        **BASE_TREE,
        "out_dir": str(tmp_path / "out"),
    })
    assert main(["run", str(cfg_path)]) == 0
    assert (tmp_path / "out" / "outcomes.png").exists()


def test_play_session_with_piped_input(tmp_path):
    from makerbreaker.play import play_session
    from makerbreaker.config import load_config

    cfg_path = _write(tmp_path, "c.json", {
        **BASE_TREE,
        "seeds": [0],
        "tree": {"family": "path", "n": 8},
        "out_dir": str(tmp_path / "out"),
    })
    cfg = load_config(cfg_path)
    # an illegal entry, then passes for the rest of the game
    lines = io.StringIO("0 0\n" + "\n" * 40)
    echoed = []
    rc = play_session(cfg, stdin=lines, echo=echoed.append)
    assert rc == 0
    saved = tmp_path / "out" / "play-0.jsonl"
    assert saved.exists()
    from makerbreaker.audit import audit_path

    report = audit_path(saved)
    assert report.ok, report.render()
    # passing every turn is the null-breaker playout: n-1 maker claims
    from makerbreaker.transcript import Transcript

    t = Transcript.load(saved)
    assert t.outcome.kind == "maker_win"
    assert t.stats["maker_claims"] == 7


def test_console_script_entrypoint_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "makerbreaker.cli", "--help"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "run" in proc.stdout and "audit" in proc.stdout
