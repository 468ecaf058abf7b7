import json

import pytest

from sentorder.cli import main

from conftest import build_fixture


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    return build_fixture(tmp_path_factory.mktemp("cli"), n_stories=10, seed=42)


def test_shuffle_subcommand(tmp_path, fixture_dir, capsys):
    out = tmp_path / "shuffled.jsonl"
    rc = main(["shuffle", "--corpus", str(fixture_dir["corpus"]), "--out", str(out)])
    assert rc == 0
    assert "wrote 10 shuffled instances" in capsys.readouterr().out
    lines = [json.loads(l) for l in out.read_text(encoding="utf-8").splitlines()]
    assert len(lines) == 10
    assert {"story_id", "seed", "shuffled", "gold_perm"} <= set(lines[0])


def test_order_evaluate_compare_pipeline(tmp_path, fixture_dir, capsys):
    shuffled = tmp_path / "shuffled.jsonl"
    assert main(["shuffle", "--corpus", str(fixture_dir["corpus"]), "--out", str(shuffled)]) == 0

    run_a = tmp_path / "bf"
    rc = main(
        [
            "order",
            "--corpus", str(fixture_dir["corpus"]),
            "--split", "all",
            "--scorer", "cosine-sentence",
            "--orderer", "brute-force",
            "--embeddings", str(fixture_dir["sentence_vectors"]),
            "--out", str(run_a),
        ]
    )
    assert rc == 0
    assert "mean_tau" in capsys.readouterr().out

    run_b = tmp_path / "ngram"
    rc = main(
        [
            "order",
            "--corpus", str(fixture_dir["corpus"]),
            "--split", "all",
            "--scorer", "ngram-overlap",
            "--orderer", "nearest-neighbor",
            "--out", str(run_b),
        ]
    )
    assert rc == 0
    capsys.readouterr()

    eval_out = tmp_path / "eval"
    rc = main(
        [
            "evaluate",
            "--orderings", str(run_a / "orderings.jsonl"),
            "--shuffled", str(shuffled),
            "--out", str(eval_out),
        ]
    )
    assert rc == 0
    run_report = json.loads((run_a / "report.json").read_text(encoding="utf-8"))
    eval_report = json.loads((eval_out / "report.json").read_text(encoding="utf-8"))
    assert eval_report["mean_tau"] == run_report["mean_tau"]
    capsys.readouterr()

    cmp_out = tmp_path / "cmp"
    rc = main(
        [
            "compare",
            str(run_a / "report.json"),
            str(run_b / "report.json"),
            "--out", str(cmp_out),
        ]
    )
    assert rc == 0
    table = capsys.readouterr().out
    assert "configuration" in table and "mean_tau" in table
    assert (cmp_out / "comparison.csv").exists()
    assert (cmp_out / "comparison.png").exists()


def test_order_requires_embeddings_for_cosine(fixture_dir, tmp_path, capsys):
    rc = main(
        [
            "order",
            "--corpus", str(fixture_dir["corpus"]),
            "--scorer", "cosine-sentence",
            "--out", str(tmp_path / "x"),
        ]
    )
    assert rc == 1
    assert "embeddings" in capsys.readouterr().err


def test_missing_corpus_is_a_clean_error(tmp_path, capsys):
    rc = main(["shuffle", "--corpus", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "o")])
    assert rc == 1
    assert "not found" in capsys.readouterr().err


def test_unknown_subcommand_exits_nonzero():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
