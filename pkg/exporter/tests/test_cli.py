import json
import subprocess
import sys

import pytest

from sentorder_exporter.cli import main

from conftest import write_shuffled, write_word_vectors


def test_static_word_cli(tmp_path, capsys):
    shuffled = write_shuffled(tmp_path / "s.jsonl")
    vectors = write_word_vectors(tmp_path / "v.txt")
    out = tmp_path / "emb.jsonl"
    rc = main(
        [
            "--input", str(shuffled),
            "--encoder", "static-word",
            "--vectors", str(vectors),
            "--out", str(out),
        ]
    )
    assert rc == 0
    assert "wrote 6 records" in capsys.readouterr().out
    assert json.loads(out.read_text(encoding="utf-8").splitlines()[0])["encoder_tag"] == "static-word"


def test_model_unavailable_exits_nonzero(tmp_path, capsys):
    shuffled = write_shuffled(tmp_path / "s.jsonl")
    rc = main(["--input", str(shuffled), "--encoder", "sbert-wk", "--out", str(tmp_path / "o.jsonl")])
    assert rc == 1
    assert "sbert-wk" in capsys.readouterr().err


def test_unknown_encoder_rejected(tmp_path):
    with pytest.raises(SystemExit):
        main(["--input", "x", "--encoder", "elmo", "--out", "y"])


def test_module_invocation(tmp_path):
    shuffled = write_shuffled(tmp_path / "s.jsonl")
    vectors = write_word_vectors(tmp_path / "v.txt")
    out = tmp_path / "emb.jsonl"
    proc = subprocess.run(
        [
            sys.executable, "-m", "sentorder_exporter.cli",
            "--input", str(shuffled),
            "--encoder", "static-word",
            "--vectors", str(vectors),
            "--out", str(out),
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


def test_full_pipeline_through_toolkit_cli(tmp_path):
    """corpus -> shuffle -> export -> order, all through the two CLIs."""
    corpus = tmp_path / "corpus.csv"
    rows = [
        ["storyid", "storytitle", "sentence1", "sentence2", "sentence3", "sentence4", "sentence5"],
        ["e2e-1", "t", "Anna packed her bag.", "The train left at dawn.",
         "She slept through the ride.", "Rain hit the window.", "The cat watched the drops."],
        ["e2e-2", "t", "The cat watched the drops.", "It purred quietly.",
         "Anna packed her bag.", "The train left at dawn.", "Rain hit the window."],
    ]
    corpus.write_text("\n".join(",".join(f'"{c}"' for c in r) for r in rows) + "\n", encoding="utf-8")

    shuffled = tmp_path / "shuffled.jsonl"
    proc = subprocess.run(
        [sys.executable, "-m", "sentorder.cli", "shuffle",
         "--corpus", str(corpus), "--seed", "7", "--out", str(shuffled)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr

    vectors = write_word_vectors(tmp_path / "v.txt")
    emb = tmp_path / "emb.jsonl"
    assert main(
        ["--input", str(shuffled), "--encoder", "static-word",
         "--vectors", str(vectors), "--out", str(emb)]
    ) == 0

    run_dir = tmp_path / "run"
    proc = subprocess.run(
        [sys.executable, "-m", "sentorder.cli", "order",
         "--corpus", str(corpus), "--split", "all",
         "--scorer", "cbow-cosine", "--orderer", "brute-force",
         "--embeddings", str(emb), "--seed", "7", "--out", str(run_dir)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    report = json.loads((run_dir / "report.json").read_text(encoding="utf-8"))
    assert report["count"] == 2
