# graph_core/graph_io.py

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Dict, List, Optional, TextIO, Tuple, Union

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import Certificate, certificate_from_dict
from graph_core.errors import GraphFormatError, PreconditionError
from graph_core.graph import Graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


# ==================================================
# EDGE-LIST TEXT FORMAT
# ==================================================

def _records(text: str):
    """Yield ``(line_number, tokens)`` for every non-blank, non-comment line."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _parse(text: str) -> Tuple[int, List[Tuple[str, str, int]], Optional[Tuple[str, int]]]:
    header: Optional[Tuple[int, int]] = None
    edges: List[Tuple[str, str, int]] = []
    root: Optional[Tuple[str, int]] = None
    for number, tokens in _records(text):
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise GraphFormatError("repeated header", number)
            if len(tokens) != 3:
                raise GraphFormatError("header must read 'p <n> <m>'", number)
            try:
                header = (int(tokens[1]), int(tokens[2]))
            except ValueError:
                raise GraphFormatError("header counts must be integers", number) from None
            if header[0] < 0 or header[1] < 0:
                raise GraphFormatError("header counts must be non-negative", number)
        elif tag == "e":
            if header is None:
                raise GraphFormatError("edge before header", number)
            if len(tokens) != 3:
                raise GraphFormatError("edge must read 'e <u> <v>'", number)
            edges.append((tokens[1], tokens[2], number))
        elif tag == "r":
            if len(tokens) != 2 or root is not None:
                raise GraphFormatError("root must be a single 'r <root>' line", number)
            root = (tokens[1], number)
        else:
            raise GraphFormatError(f"unknown record {tag!r}", number)
    if header is None:
        raise GraphFormatError("missing 'p <n> <m>' header")
    n, m = header
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return n, edges, root


def _as_id(token: str, n: int) -> Optional[int]:
    try:
        value = int(token)
    except ValueError:
        return None
    return value if 0 <= value < n else None


def parse_graph(text: str) -> Graph:
    """
    Parse the ``p <n> <m>`` / ``e <u> <v>`` edge-list format.

    Endpoints are 0-based ids. If any endpoint is not an id in range, every
    endpoint is read as a label instead; labels get dense ids in order of
    first appearance and the label map is kept on the graph.

    :param text: File contents
    :type text: str
    :return: The graph
    :rtype: Graph
    :raises GraphFormatError: On a malformed line, a loop, a repeated edge or
        an edge count differing from the header
    """
    n, records, _ = _parse(text)
    numeric = all(_as_id(u, n) is not None and _as_id(v, n) is not None for u, v, _ in records)
    labels: Optional[List[str]] = None
    index: Dict[str, int] = {}
    if not numeric:
        for u, v, number in records:
            for token in (u, v):
                if token not in index:
                    if len(index) == n:
                        raise GraphFormatError(f"more than {n} distinct vertex labels", number)
                    index[token] = len(index)
        labels = list(index) + [str(i) for i in range(len(index), n)]
        if len(set(labels)) != n:
            raise GraphFormatError("vertex labels collide with padding ids of isolated vertices")
        logger.info("relabelled %d vertex labels to dense ids", len(index))

    adjacency = [0] * n
    for u, v, number in records:
        a = int(u) if numeric else index[u]
        b = int(v) if numeric else index[v]
        if a == b:
            raise GraphFormatError(f"loop at vertex {u}", number)
        if adjacency[a] >> b & 1:
            raise GraphFormatError(f"repeated edge {u}-{v}", number)
        adjacency[a] |= 1 << b
        adjacency[b] |= 1 << a
    return Graph(n, adjacency, labels)


def parse_tree(text: str) -> AbstractTree:
    """
    Parse a rooted target tree: the edge-list format plus one ``r <root>`` line
    (root 0 when absent).

    :raises GraphFormatError: If the file is malformed or not a tree
    """
    n, records, root = _parse(text)
    edges = []
    for u, v, number in records:
        a, b = _as_id(u, n), _as_id(v, n)
        if a is None or b is None:
            raise GraphFormatError(f"tree edge {u}-{v} must use ids below {n}", number)
        edges.append((a, b))
    root_id = 0
    if root is not None:
        root_id = _as_id(root[0], n)
        if root_id is None:
            raise GraphFormatError(f"root {root[0]} is not a vertex id", root[1])
    try:
        return AbstractTree(n, edges, root=root_id)
    except PreconditionError as exc:
        raise GraphFormatError(str(exc)) from exc


def read_graph(path: PathLike) -> Graph:
    with open(path, "r", encoding="utf-8") as file:
        return parse_graph(file.read())


def read_tree(path: PathLike) -> AbstractTree:
    with open(path, "r", encoding="utf-8") as file:
        return parse_tree(file.read())


def format_graph(g: Graph) -> str:
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_tree(h: AbstractTree) -> str:
    lines = [f"p {h.vertex_count} {len(h.edges)}", f"r {h.root}"]
    lines.extend(f"e {u} {v}" for u, v in h.edges)
    return "\n".join(lines) + "\n"


def write_graph(g: Graph, target: Union[PathLike, TextIO]) -> None:
    """
    Write ``g`` in the edge-list format, edges in lexicographic order.

    :param g: Graph to write
    :type g: Graph
    :param target: File path or open text stream
    :type target: Union[PathLike, TextIO]
    """
    text = format_graph(g)
    if hasattr(target, "write"):
        target.write(text)
        return
    with open(target, "w", encoding="utf-8", newline="\n") as file:
        file.write(text)


def write_tree(h: AbstractTree, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(format_tree(h))


# ==================================================
# CERTIFICATES (JSON)
# ==================================================

def certificate_to_json(cert: Certificate, graph_path: Optional[str] = None) -> str:
    """
    Serialize a certificate, optionally naming the graph file it refers to.

    Keys are sorted so identical certificates give identical bytes.
    """
    data = cert.to_dict()
    if graph_path is not None:
        data["graph"] = graph_path
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_certificate(cert: Certificate, path: PathLike, graph_path: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        file.write(certificate_to_json(cert, graph_path))


def read_certificate(path: PathLike) -> Tuple[Certificate, Optional[str]]:
    """
    Load a certificate and the graph path recorded in it.

    :param path: JSON certificate file
    :type path: PathLike
    :return: The certificate and its ``graph`` field (``None`` if absent)
    :rtype: Tuple[Certificate, Optional[str]]
    :raises GraphFormatError: If the file is not a JSON certificate
    """
    try:
        with open(path, "r", encoding="utf-8") as file:
            data = json.load(file)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"certificate is not valid JSON: {exc.msg}", exc.lineno) from exc
    if not isinstance(data, dict):
        raise GraphFormatError("certificate must be a JSON object")
    graph_path = data.get("graph")
    if graph_path is not None and not isinstance(graph_path, str):
        raise GraphFormatError("certificate 'graph' field must be a path string")
    return certificate_from_dict(data), graph_path
