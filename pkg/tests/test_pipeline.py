# tests/test_pipeline.py

from __future__ import annotations

import csv
import json
from io import StringIO

import pytest

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import BicliqueWitness, DegeneracyCertificate, InducedEmbedding
from graph_core.degeneracy_service import certificate_violation
from graph_core.errors import GraphFormatError
from graph_core.graph_io import write_certificate, write_graph
from graph_core.validators import validate_biclique, validate_embedding
from harness.experiment_runner import COLUMNS, expand_config, parse_config, run_experiment
from harness.generators import ScaffoldSpec, gen_planted
from harness.pipeline_manager import OUTCOME_KINDS, PipelineManager, pipeline
from harness.verifier import EXIT_INVALID, EXIT_MALFORMED, EXIT_VALID, verify

SWEEP = """
# three seeded G(n, p) hosts
generator = gnp
n = 8
p = 0.3
seed = 1, 2, 3
tree = path:3
t = 2
"""


# ================= PIPELINE =================

def test_small_host_gets_a_certificate(c5):
    outcome = pipeline(c5, AbstractTree.path(3), 2)
    assert (outcome.kind, outcome.stage) == ("certificate", "degeneracy")
    assert outcome.within_bound
    assert outcome.attempts == (("degeneracy", "degeneracy 2"),)
    assert certificate_violation(c5, outcome.certificate) is None


def test_eager_run_finds_the_biclique(k22_with_pendant):
    outcome = pipeline(k22_with_pendant, AbstractTree.path(3), 2, eager=True)
    assert (outcome.kind, outcome.stage) == ("biclique", "biclique")
    assert validate_biclique(k22_with_pendant, outcome.certificate)


def test_eager_run_on_a_planted_host():
    g = gen_planted(ScaffoldSpec.parse("uniform:3x2"), 0.0, seed=0)
    outcome = pipeline(g, AbstractTree.path(3), 2, eager=True)
    assert (outcome.kind, outcome.stage) == ("induced_tree", "induced_search")
    assert validate_embedding(g, outcome.certificate)
    assert [stage for stage, _ in outcome.attempts] == ["degeneracy", "biclique", "induced_search"]


def test_eager_run_falls_back_to_the_certificate(c5):
    outcome = pipeline(c5, AbstractTree.star(3), 2, eager=True)
    assert (outcome.kind, outcome.stage) == ("certificate", "degeneracy")
    assert [stage for stage, _ in outcome.attempts] == ["degeneracy", "biclique", "induced_search", "growth"]
    assert all(result == "none" for _, result in outcome.attempts[1:])


def test_exhausted_budget_is_reported(petersen):
    outcome = pipeline(petersen, AbstractTree.path(3), 2, budget_nodes=0, eager=True)
    assert outcome.kind == "budget"
    assert outcome.certificate is None and outcome.message
    assert [result for _, result in outcome.attempts[1:]] == ["budget"] * 3


def test_manager_resets_attempts_between_runs(c5, petersen):
    manager = PipelineManager()
    manager.run(c5, AbstractTree.path(3), 2)
    outcome = manager.run(petersen, AbstractTree.path(3), 2)
    assert len(outcome.attempts) == 1
    assert set(OUTCOME_KINDS) == {"certificate", "biclique", "induced_tree", "budget"}


# ================= VERIFIER =================

@pytest.fixture
def c5_file(tmp_path, c5):
    path = tmp_path / "c5.txt"
    write_graph(c5, path)
    return path


def test_verify_accepts_valid_certificates(tmp_path, c5_file, c5, k22_with_pendant):
    cert_path = tmp_path / "cert.json"
    write_certificate(pipeline(c5, AbstractTree.path(3), 2).certificate, cert_path, "c5.txt")
    code, message = verify(cert_path)
    assert code == EXIT_VALID and "bound 2" in message

    embedding_path = tmp_path / "embedding.json"
    write_certificate(InducedEmbedding(AbstractTree.path(3), (0, 1, 2)), embedding_path, "c5.txt")
    assert verify(embedding_path)[0] == EXIT_VALID

    host = tmp_path / "k22.txt"
    write_graph(k22_with_pendant, host)
    witness_path = tmp_path / "witness.json"
    write_certificate(BicliqueWitness(frozenset({0, 1}), frozenset({2, 3})), witness_path)
    assert verify(witness_path, host) == (EXIT_VALID, "valid K_2,2 witness")


def test_verify_rejects_tampered_certificates(tmp_path, c5_file):
    tampered = tmp_path / "tampered.json"
    write_certificate(DegeneracyCertificate((0, 1, 2, 3, 4), 1), tampered, "c5.txt")
    assert verify(tampered)[0] == EXIT_INVALID

    chord = tmp_path / "chord.json"
    write_certificate(InducedEmbedding(AbstractTree.path(3), (0, 1, 3)), chord, "c5.txt")
    assert verify(chord)[0] == EXIT_INVALID

    fake = tmp_path / "fake.json"
    write_certificate(BicliqueWitness(frozenset({0, 1}), frozenset({2, 3})), fake, "c5.txt")
    assert verify(fake)[0] == EXIT_INVALID


def test_verify_reports_malformed_input(tmp_path, c5_file):
    garbage = tmp_path / "garbage.json"
    garbage.write_text("not json", encoding="utf-8")
    assert verify(garbage)[0] == EXIT_MALFORMED

    anonymous = tmp_path / "anonymous.json"
    write_certificate(DegeneracyCertificate((0, 1, 2, 3, 4), 2), anonymous)
    assert verify(anonymous) == (EXIT_MALFORMED, "certificate names no graph file")

    dangling = tmp_path / "dangling.json"
    write_certificate(DegeneracyCertificate((0,), 0), dangling, "missing.txt")
    assert verify(dangling)[0] == EXIT_MALFORMED

    assert verify(tmp_path / "absent.json")[0] == EXIT_MALFORMED


# ================= EXPERIMENTS =================

def test_config_parsing_and_expansion():
    entries = parse_config("a = 1, 2  # sweep\nb = x, y\n\n")
    assert entries == [("a", ["1", "2"]), ("b", ["x", "y"])]
    assert expand_config(entries) == [
        {"a": "1", "b": "x"}, {"a": "1", "b": "y"}, {"a": "2", "b": "x"}, {"a": "2", "b": "y"},
    ]
    for bad in ("generator gnp", "a = 1\na = 2", "seed = 1,", "= 3"):
        with pytest.raises(GraphFormatError):
            parse_config(bad)


def test_experiment_output_is_deterministic():
    first, second = StringIO(), StringIO()
    rows = run_experiment(SWEEP, first)
    run_experiment(SWEEP, second, workers=3)
    assert first.getvalue() == second.getvalue()
    lines = first.getvalue().splitlines()
    assert lines[0] == ",".join(COLUMNS)
    assert len(lines) == 4
    assert [row.seed for row in rows] == [1, 2, 3]
    assert all(row.runtime_ms == 0 and row.outcome == "certificate" for row in rows)
    assert rows[0].params == "n=8;p=0.3"


def test_experiment_writes_verifiable_witnesses(tmp_path):
    output = StringIO()
    run_experiment(SWEEP + "witness_dir = witnesses\n", output, base_dir=tmp_path)
    records = list(csv.DictReader(StringIO(output.getvalue())))
    assert [record["seed"] for record in records] == ["1", "2", "3"]
    for index in range(3):
        cert_file = tmp_path / "witnesses" / f"{index:04d}_certificate.json"
        assert json.loads(cert_file.read_text(encoding="utf-8"))["graph"] == f"{index:04d}_graph.txt"
        assert verify(cert_file)[0] == EXIT_VALID


def test_experiment_needs_a_generator():
    with pytest.raises(GraphFormatError):
        run_experiment("seed = 1", StringIO())
