# harness/experiment_runner.py

from __future__ import annotations

import csv
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from itertools import product
from pathlib import Path
from typing import Dict, List, Mapping, Optional, TextIO, Tuple

from graph_core.abstract_tree import AbstractTree
from graph_core.degeneracy_service import color_count, degeneracy, greedy_color
from graph_core.errors import GraphFormatError
from graph_core.graph_io import write_certificate, write_graph
from harness.generators import describe, generate
from harness.pipeline_manager import pipeline
from utils.path_utils import PathLike, relative_from
from witness_search.biclique_search import tau_lower_bound
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)

RESERVED_KEYS = ("generator", "seed", "tree", "t", "budget_nodes", "eager", "timing", "witness_dir", "workers")


@dataclass(frozen=True)
class ExperimentRow:
    """One CSV row; field order is the column order."""

    seed: int
    generator: str
    params: str
    n: int
    m: int
    degeneracy: int
    greedy_chi: int
    tau: int
    tau_exact: bool
    outcome: str
    runtime_ms: int


COLUMNS = tuple(f.name for f in fields(ExperimentRow))


# ================= CONFIG =================

def parse_config(text: str) -> List[Tuple[str, List[str]]]:
    """
    Read ``key = value`` lines, ``#`` starting a comment.

    A value with commas is a sweep axis. Keys keep their file order.

    :raises GraphFormatError: On a line without ``=`` or a repeated key
    """
    entries: List[Tuple[str, List[str]]] = []
    seen = set()
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise GraphFormatError("expected 'key = value'", number)
        if key in seen:
            raise GraphFormatError(f"key {key!r} repeated", number)
        seen.add(key)
        values = [v.strip() for v in value.split(",")]
        if any(not v for v in values):
            raise GraphFormatError(f"empty value for {key!r}", number)
        entries.append((key, values))
    return entries


def expand_config(entries: List[Tuple[str, List[str]]]) -> List[Dict[str, str]]:
    """Cartesian product of every axis, the first axis varying slowest."""
    keys = [key for key, _ in entries]
    return [dict(zip(keys, combo)) for combo in product(*(values for _, values in entries))]


def _flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


# ================= RUNS =================

@dataclass(frozen=True)
class _Run:
    index: int
    settings: Dict[str, str]
    witness_dir: Optional[Path]


def _run_one(run: _Run) -> ExperimentRow:
    settings = run.settings
    seed = int(settings.get("seed", "0"))
    name = settings["generator"]
    params = {k: v for k, v in settings.items() if k not in RESERVED_KEYS}
    budget_nodes = int(settings["budget_nodes"]) if "budget_nodes" in settings else None
    timing = _flag(settings.get("timing", "false"))
    started = time.perf_counter()

    g = generate(name, params, seed)
    h = AbstractTree.parse_spec(settings.get("tree", "path:3"))
    t = int(settings.get("t", "2"))
    cert = degeneracy(g)
    chi = color_count(greedy_color(g, cert)) if g.vertex_count else 0
    tau, exact = tau_lower_bound(g, SearchBudget(budget_nodes))
    outcome = pipeline(g, h, t, budget_nodes=budget_nodes, eager=_flag(settings.get("eager", "false")))

    if run.witness_dir is not None and outcome.certificate is not None:
        run.witness_dir.mkdir(parents=True, exist_ok=True)
        graph_file = run.witness_dir / f"{run.index:04d}_graph.txt"
        cert_file = run.witness_dir / f"{run.index:04d}_{outcome.kind}.json"
        write_graph(g, graph_file)
        write_certificate(outcome.certificate, cert_file, relative_from(cert_file, graph_file))

    runtime = int((time.perf_counter() - started) * 1000) if timing else 0
    logger.info("run %d: %s n=%d -> %s", run.index, name, g.vertex_count, outcome.kind)
    return ExperimentRow(
        seed=seed,
        generator=name,
        params=describe(params),
        n=g.vertex_count,
        m=g.edge_count,
        degeneracy=cert.bound,
        greedy_chi=chi,
        tau=tau,
        tau_exact=exact,
        outcome=outcome.kind,
        runtime_ms=runtime,
    )


def run_experiment(
    config_text: str,
    output: TextIO,
    base_dir: Optional[PathLike] = None,
    workers: Optional[int] = None,
    defaults: Optional[Mapping[str, str]] = None,
) -> List[ExperimentRow]:
    """
    Run every configuration of a sweep and write one CSV row per run.

    Rows are written in configuration order whatever order the runs
    finish in. A key set in the config wins over ``defaults``.

    :param config_text: Experiment config
    :type config_text: str
    :param output: Text stream receiving the CSV
    :type output: TextIO
    :param base_dir: Directory a relative ``witness_dir`` is resolved against
    :type base_dir: Optional[PathLike]
    :param workers: Threads, default the config's ``workers`` or 1
    :type workers: Optional[int]
    :param defaults: Values for reserved keys such as ``seed``, ``budget_nodes`` or ``eager``
    :type defaults: Optional[Mapping[str, str]]
    :rtype: List[ExperimentRow]
    :raises GraphFormatError: On a malformed config
    """
    settings_list = [{**(defaults or {}), **s} for s in expand_config(parse_config(config_text))]
    if not settings_list or any("generator" not in s for s in settings_list):
        raise GraphFormatError("experiment config must set 'generator'")
    runs = []
    for index, settings in enumerate(settings_list):
        witness_dir = None
        if "witness_dir" in settings:
            witness_dir = Path(base_dir or ".") / settings["witness_dir"]
        runs.append(_Run(index, settings, witness_dir))
    threads = workers if workers is not None else int(settings_list[0].get("workers", "1"))
    logger.info("experiment with %d runs on %d threads", len(runs), threads)

    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        rows = list(pool.map(_run_one, runs))

    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow(astuple(row))
    return rows
