from __future__ import annotations

import subprocess
import sys

import pytest

from emlang.corpus import serialize_corpus
from emlang.schema import render_schema
from emlang.synth import moprd_schema


def run_cli(*args: str, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "emlang", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


@pytest.fixture(scope="module")
def workdir(tmp_path_factory, reference_corpus):
    path = tmp_path_factory.mktemp("cli")
    (path / "corpus.jsonl").write_text(serialize_corpus(reference_corpus), encoding="utf-8")
    (path / "schema.json").write_text(render_schema(moprd_schema()), encoding="utf-8")
    return path


def test_extract_markdown(workdir):
    result = run_cli(
        "extract", "--corpus", str(workdir / "corpus.jsonl"),
        "--schema", str(workdir / "schema.json"), "--format", "markdown",
    )
    assert result.returncode == 0
    assert "General pattern: 13-12-XX-10-10-10-10-10-YY-ZZ" in result.stdout
    assert result.stdout.count("\n|") >= 6


def test_extract_builtin_schema(workdir):
    by_file = run_cli(
        "extract", "--corpus", str(workdir / "corpus.jsonl"),
        "--schema", str(workdir / "schema.json"),
    )
    builtin = run_cli("extract", "--corpus", str(workdir / "corpus.jsonl"), "--schema", "moprd")
    assert by_file.returncode == builtin.returncode == 0
    assert by_file.stdout == builtin.stdout


def test_distance():
    result = run_cli("distance", "--a", "1,2,3", "--b", "1,3,3")
    assert result.returncode == 0
    assert result.stdout == "1\n"


def test_missing_corpus_reports_code():
    result = run_cli("extract", "--corpus", "missing.jsonl", "--schema", "moprd")
    assert result.returncode == 1
    assert result.stderr.startswith("NotFound")


def test_malformed_corpus_reports_syntax_error(workdir):
    bad = workdir / "bad.jsonl"
    bad.write_text("{broken\n", encoding="utf-8")
    result = run_cli("extract", "--corpus", str(bad), "--schema", "moprd")
    assert result.returncode == 1
    assert result.stderr.startswith("SyntaxError")


def test_usage_error_exits_two():
    assert run_cli("extract").returncode == 2
    assert run_cli("no-such-command").returncode == 2
    assert run_cli("synth", "--kind", "compositional", "--schema", "moprd").returncode == 2  # no seed


def test_zero_min_freq_reproduces_unfiltered(workdir, tmp_path):
    # add a 5%-share synonym; at 0.15 it disappears, at 0 it stays
    lines = (workdir / "corpus.jsonl").read_text(encoding="utf-8").splitlines()
    record = lines[1].replace('"count": 1', '"count": 19')
    noisy = "\n".join([lines[0], record, lines[1].replace('"msg": [13,', '"msg": [14,')] + lines[2:])
    target = tmp_path / "noisy.jsonl"
    target.write_text(noisy + "\n", encoding="utf-8")
    filtered = run_cli("extract", "--corpus", str(target), "--schema", "moprd")
    unfiltered = run_cli("extract", "--corpus", str(target), "--schema", "moprd", "--min-freq", "0")
    assert filtered.returncode == unfiltered.returncode == 0
    assert filtered.stdout != unfiltered.stdout


def test_synth_topsim_game_pipeline(tmp_path):
    corpus_path = tmp_path / "lang.jsonl"
    truth_path = tmp_path / "truth.json"
    synth = run_cli(
        "synth", "--kind", "compositional", "--schema", "moprd",
        "--msg-len", "10", "--vocab", "20", "--seed", "3",
        "--out", str(corpus_path), "--truth-out", str(truth_path),
    )
    assert synth.returncode == 0
    assert corpus_path.is_file() and truth_path.is_file()

    ts = run_cli("topsim", "--corpus", str(corpus_path), "--schema", "moprd", "--format", "markdown")
    assert ts.returncode == 0
    assert ts.stdout == "TopSim: 1.0000 (4950 pairs, exact)\n"

    game = run_cli(
        "game", "--corpus", str(corpus_path), "--schema", "moprd",
        "--candidates", "5", "--episodes", "50", "--seed", "2", "--format", "markdown",
    )
    assert game.returncode == 0
    assert "Per-speaker mean: 1.0000" in game.stdout


def test_synth_noisy_and_render(tmp_path, workdir):
    noisy_path = tmp_path / "noisy.jsonl"
    result = run_cli(
        "synth", "--kind", "noisy", "--schema", str(workdir / "schema.json"),
        "--corpus", str(workdir / "corpus.jsonl"), "--seed", "4",
        "--minority-share", "0.2", "--out", str(noisy_path),
    )
    assert result.returncode == 0

    table_path = tmp_path / "table.json"
    extract = run_cli(
        "extract", "--corpus", str(noisy_path), "--schema", "moprd",
        "--out", str(table_path),
    )
    assert extract.returncode == 0
    rendered = run_cli(
        "render", "--in", str(table_path), "--format", "markdown", "--schema", "moprd"
    )
    assert rendered.returncode == 0
    assert "General pattern:" in rendered.stdout
    round_trip = run_cli("render", "--in", str(table_path), "--format", "structured")
    assert round_trip.stdout == table_path.read_text(encoding="utf-8")


def test_render_metrics_document(tmp_path, workdir):
    doc = tmp_path / "topsim.json"
    run_cli(
        "topsim", "--corpus", str(workdir / "corpus.jsonl"), "--schema", "moprd",
        "--out", str(doc),
    )
    result = run_cli("render", "--in", str(doc), "--format", "markdown")
    assert result.returncode == 0
    assert result.stdout.startswith("TopSim:")
