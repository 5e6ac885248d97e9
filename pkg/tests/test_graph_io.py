# tests/test_graph_io.py

from __future__ import annotations

import io
import json

import pytest

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import BicliqueWitness, DegeneracyCertificate, InducedEmbedding
from graph_core.errors import GraphFormatError
from graph_core.graph import cycle_graph
from graph_core.graph_io import (
    certificate_to_json,
    format_graph,
    parse_graph,
    parse_tree,
    read_certificate,
    read_graph,
    read_tree,
    write_certificate,
    write_graph,
    write_tree,
)


def test_parse_skips_comments_and_blank_lines():
    g = parse_graph("# a triangle\np 3 3\n\ne 0 1\ne 1 2  # closing soon\ne 0 2\n")
    assert g.vertex_count == 3 and g.edge_count == 3
    assert g.labels is None


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 0 1\np 2 1\n", 1),
        ("p 2 1\nq 0 1\n", 2),
        ("p 2 1\ne 1 1\n", 2),
        ("p 3 2\ne 0 1\ne 1 0\n", 3),
        ("p 2\n", 1),
        ("p 2 1\np 2 1\ne 0 1\n", 2),
    ],
)
def test_malformed_lines_are_named(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_edge_count_must_match_header():
    with pytest.raises(GraphFormatError):
        parse_graph("p 3 2\ne 0 1\n")
    with pytest.raises(GraphFormatError):
        parse_graph("# nothing here\n")


def test_labels_get_dense_ids():
    g = parse_graph("p 4 2\ne alice bob\ne bob carol\n")
    assert g.labels == ("alice", "bob", "carol", "3")
    assert g.has_edge(0, 1) and g.has_edge(1, 2)
    assert g.degree(3) == 0


def test_graph_file_round_trip(tmp_path):
    g = cycle_graph(6)
    path = tmp_path / "c6.txt"
    write_graph(g, path)
    assert path.read_text(encoding="utf-8").splitlines()[0] == "p 6 6"
    assert read_graph(path) == g

    stream = io.StringIO()
    write_graph(g, stream)
    assert stream.getvalue() == format_graph(g)


def test_tree_files(tmp_path):
    tree = parse_tree("p 3 2\nr 1\ne 0 1\ne 1 2\n")
    assert tree.root == 1 and tree.height == 1
    assert parse_tree("p 1 0\n") == AbstractTree.single()

    path = tmp_path / "tree.txt"
    write_tree(AbstractTree.spider(2, 2).rerooted(4), path)
    back = read_tree(path)
    assert back.root == 4 and back.height == 4


@pytest.mark.parametrize(
    "text",
    [
        "p 3 3\ne 0 1\ne 1 2\ne 2 0\n",
        "p 3 1\ne 0 1\n",
        "p 2 1\ne 0 x\n",
        "p 2 1\nr 5\ne 0 1\n",
    ],
)
def test_bad_trees(text):
    with pytest.raises(GraphFormatError):
        parse_tree(text)


def test_certificates_are_stable_json(tmp_path):
    cert = DegeneracyCertificate((2, 0, 1), 1)
    first = certificate_to_json(cert, "g.txt")
    assert first == certificate_to_json(DegeneracyCertificate((2, 0, 1), 1), "g.txt")
    assert json.loads(first) == {"kind": "degeneracy", "ordering": [2, 0, 1], "bound": 1, "graph": "g.txt"}

    path = tmp_path / "w.json"
    witness = BicliqueWitness(frozenset({0, 1}), frozenset({2, 3}))
    write_certificate(witness, path, "g.txt")
    assert read_certificate(path) == (witness, "g.txt")

    embedding = InducedEmbedding(AbstractTree.star(2), (1, 0, 2))
    write_certificate(embedding, path)
    loaded, graph_path = read_certificate(path)
    assert graph_path is None
    assert loaded == embedding


@pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"kind": "degeneracy", "graph": 3, "ordering": [], "bound": 0}'])
def test_unreadable_certificates(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(GraphFormatError):
        read_certificate(path)
