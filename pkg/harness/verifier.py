# harness/verifier.py

from __future__ import annotations

import logging
from typing import Optional, Tuple

from graph_core.certificates import BicliqueWitness, DegeneracyCertificate, InducedEmbedding
from graph_core.degeneracy_service import certificate_violation
from graph_core.errors import GraphFormatError
from graph_core.graph_io import read_certificate, read_graph
from graph_core.validators import validate_biclique, validate_embedding
from utils.path_utils import PathLike, resolve_from

logger = logging.getLogger(__name__)

EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2


def verify(path: PathLike, graph_path: Optional[PathLike] = None) -> Tuple[int, str]:
    """
    Re-validate a serialized certificate against its graph file.

    The graph is the one named by ``graph_path`` or, failing that, by the
    certificate's ``graph`` field resolved relative to the certificate.

    :param path: Certificate JSON file
    :type path: PathLike
    :param graph_path: Optional graph file overriding the recorded one
    :type graph_path: Optional[PathLike]
    :return: Exit code (0 valid, 1 invalid, 2 malformed) and a message
    :rtype: Tuple[int, str]
    """
    try:
        cert, recorded = read_certificate(path)
        if graph_path is None:
            if recorded is None:
                return EXIT_MALFORMED, "certificate names no graph file"
            graph_path = resolve_from(path, recorded)
        g = read_graph(graph_path)
    except GraphFormatError as exc:
        return EXIT_MALFORMED, f"malformed input: {exc}"
    except OSError as exc:
        return EXIT_MALFORMED, f"cannot read input: {exc}"

    if isinstance(cert, DegeneracyCertificate):
        position = certificate_violation(g, cert)
        if position is not None:
            return EXIT_INVALID, f"certificate violated at position {position}"
        return EXIT_VALID, f"valid degeneracy certificate, bound {cert.bound}"
    if isinstance(cert, InducedEmbedding):
        if not validate_embedding(g, cert):
            return EXIT_INVALID, "embedding is not an induced copy of its pattern"
        return EXIT_VALID, f"valid induced embedding of a {cert.pattern.vertex_count}-vertex pattern"
    if isinstance(cert, BicliqueWitness):
        if not validate_biclique(g, cert):
            return EXIT_INVALID, "witness is not a complete bipartite subgraph"
        return EXIT_VALID, f"valid K_{cert.s},{cert.t} witness"
    return EXIT_MALFORMED, f"unsupported certificate kind {cert.kind}"
