# cli_app.py

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO

from graph_core.abstract_tree import AbstractTree
from graph_core.errors import BudgetExhausted, ConstructionError, GraphFormatError, PreconditionError
from graph_core.degeneracy_service import color_count, degeneracy, greedy_color
from graph_core.graph import Graph
from graph_core.graph_io import read_graph, read_tree, write_certificate, write_graph
from harness.experiment_runner import run_experiment
from harness.generators import GENERATORS, generate
from harness.pipeline_manager import pipeline
from harness.verifier import EXIT_INVALID, EXIT_MALFORMED, EXIT_VALID, verify
from utils.log_utils import configure_logging
from utils.path_utils import relative_from
from utils.settings_manager import SettingsManager
from witness_search.biclique_search import find_biclique, tau_lower_bound
from witness_search.budget import SearchBudget

logger = logging.getLogger(__name__)


class CliApp:
    """
    Command-line front end of the lab.

    Owns the argument parser, reads user defaults from
    :class:`SettingsManager` and turns every command into an exit code:
    0 success or valid, 1 invalid certificate or failed validation,
    2 malformed input or usage error.
    """

    def __init__(
        self,
        settings: Optional[SettingsManager] = None,
        out: Optional[TextIO] = None,
        err: Optional[TextIO] = None,
    ) -> None:
        """
        :param settings: Persisted defaults, a fresh manager if omitted
        :type settings: Optional[SettingsManager]
        :param out: Stream for command output, stdout if omitted
        :type out: Optional[TextIO]
        :param err: Stream for diagnostics, stderr if omitted
        :type err: Optional[TextIO]
        """
        self.settings = settings or SettingsManager()
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.parser = self._build_parser()

    # ================= PARSER =================

    def _build_parser(self) -> argparse.ArgumentParser:
        defaults = self.settings.defaults()

        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
        common.add_argument("--seed", type=int, default=int(defaults["seed"]), help="random seed")
        common.add_argument(
            "--budget-nodes", type=int, default=defaults["budget_nodes"],
            help="search node budget per stage (0 for unlimited)",
        )
        common.add_argument("--eager", action="store_true", help="skip the degeneracy bound comparison")
        common.add_argument("--format", choices=("text", "json"), default=defaults["format"])
        last_dir = defaults.get("last_output_dir")
        common.add_argument(
            "--output-dir", type=Path, default=Path(last_dir) if last_dir else None,
            help="folder for relative output paths, default the last one written to",
        )

        parser = argparse.ArgumentParser(
            prog="degeneracy-lab",
            description="Certificate-producing degeneracy, biclique and induced-tree searches.",
        )
        sub = parser.add_subparsers(dest="command", required=True)

        gen = sub.add_parser("gen", parents=[common], help="generate a host graph")
        gen.add_argument("generator", choices=sorted(GENERATORS))
        gen.add_argument("params", nargs="*", metavar="KEY=VALUE", help="generator parameters")
        gen.add_argument("-o", "--output", type=Path, help="graph file, stdout if omitted")

        analyze = sub.add_parser("analyze", parents=[common], help="degeneracy, colouring and biclique number")
        analyze.add_argument("graph", type=Path)
        analyze.add_argument("-t", type=int, default=None, help="also look for a K_{t,t}")
        analyze.add_argument("--certificate", type=Path, help="write the degeneracy certificate here")

        pipe = sub.add_parser("pipeline", parents=[common], help="certificate, biclique or induced tree")
        pipe.add_argument("graph", type=Path)
        pipe.add_argument("--tree", default="path:3", help="tree file or spec such as path:4, star:3, uniform:2x2")
        pipe.add_argument("-t", type=int, default=2, help="biclique side size")
        pipe.add_argument("-o", "--output", type=Path, help="write the emitted certificate here")

        check = sub.add_parser("verify", parents=[common], help="re-validate a certificate file")
        check.add_argument("certificate", type=Path)
        check.add_argument("--graph", type=Path, help="graph file overriding the recorded one")

        experiment = sub.add_parser("experiment", parents=[common], help="run a seeded sweep to CSV")
        experiment.add_argument("config", type=Path)
        experiment.add_argument("-o", "--output", type=Path, help="CSV file, stdout if omitted")
        experiment.add_argument("--workers", type=int, default=None)

        return parser

    # ================= RUN =================

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Parse ``argv`` and run the selected command.

        :param argv: Arguments without the program name, ``sys.argv`` if omitted
        :type argv: Optional[Sequence[str]]
        :return: Exit code
        :rtype: int
        """
        try:
            args = self.parser.parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)

        configure_logging(args.verbose)
        logger.info("command %s", args.command)
        handler = getattr(self, f"_cmd_{args.command}")
        try:
            return handler(args)
        except ConstructionError as exc:
            logger.error("construction failed: %s", exc)
            self._fail(f"construction failed: {exc}")
            return EXIT_INVALID
        except (GraphFormatError, PreconditionError) as exc:
            self._fail(f"malformed input: {exc}")
            return EXIT_MALFORMED
        except OSError as exc:
            self._fail(f"cannot access file: {exc}")
            return EXIT_MALFORMED
        except ValueError as exc:
            self._fail(f"invalid value: {exc}")
            return EXIT_MALFORMED

    def _fail(self, message: str) -> None:
        print(f"error: {message}", file=self.err)

    def _emit(self, args: argparse.Namespace, data: Dict[str, Any], text_lines: List[str]) -> None:
        if args.format == "json":
            print(json.dumps(data, indent=2, sort_keys=True), file=self.out)
        else:
            for line in text_lines:
                print(line, file=self.out)

    def _remember_output(self, path: Path) -> None:
        self.settings.set("last_output_dir", str(path.resolve().parent))

    @staticmethod
    def _output_path(args: argparse.Namespace, path: Optional[Path]) -> Optional[Path]:
        if path is None or path.is_absolute() or args.output_dir is None:
            return path
        return args.output_dir / path

    @staticmethod
    def _budget(args: argparse.Namespace) -> Optional[int]:
        return args.budget_nodes or None

    # ================= COMMANDS =================

    def _cmd_gen(self, args: argparse.Namespace) -> int:
        params: Dict[str, str] = {}
        for item in args.params:
            key, sep, value = item.partition("=")
            if not sep or not key:
                raise PreconditionError(f"generator parameter {item!r} is not KEY=VALUE")
            params[key] = value
        g = generate(args.generator, params, args.seed)
        logger.info("generated %s: n=%d m=%d", args.generator, g.vertex_count, g.edge_count)
        output = self._output_path(args, args.output)
        if output is None:
            write_graph(g, self.out)
        else:
            write_graph(g, output)
            self._remember_output(output)
            logger.info("wrote %s", output)
        return EXIT_VALID

    def _cmd_analyze(self, args: argparse.Namespace) -> int:
        g = read_graph(args.graph)
        cert = degeneracy(g)
        chi = color_count(greedy_color(g, cert)) if g.vertex_count else 0
        tau, exact = tau_lower_bound(g, SearchBudget(self._budget(args)))
        data: Dict[str, Any] = {
            "n": g.vertex_count,
            "m": g.edge_count,
            "degeneracy": cert.bound,
            "greedy_chi": chi,
            "tau": tau,
            "tau_exact": exact,
        }
        lines = [
            f"vertices: {g.vertex_count}",
            f"edges: {g.edge_count}",
            f"degeneracy: {cert.bound}",
            f"greedy colours: {chi}",
            f"tau: {tau}" + ("" if exact else " (lower bound, budget exhausted)"),
        ]
        if args.t is not None:
            found = self._biclique_status(g, args.t, args)
            data["biclique"] = found
            lines.append(f"K_{{{args.t},{args.t}}}: {found}")
        cert_path = self._output_path(args, args.certificate)
        if cert_path is not None:
            write_certificate(cert, cert_path, relative_from(cert_path, args.graph))
            self._remember_output(cert_path)
        self._emit(args, data, lines)
        return EXIT_VALID

    def _biclique_status(self, g: Graph, t: int, args: argparse.Namespace) -> str:
        budget = SearchBudget(self._budget(args))
        try:
            witness = find_biclique(g, t, t, budget)
        except BudgetExhausted as exc:
            logger.warning("biclique search stopped: %s", exc)
            return "budget"
        return "none" if witness is None else f"{list(witness.side_a)} x {list(witness.side_b)}"

    def _load_tree(self, spec: str) -> AbstractTree:
        path = Path(spec)
        if path.is_file():
            return read_tree(path)
        return AbstractTree.parse_spec(spec)

    def _cmd_pipeline(self, args: argparse.Namespace) -> int:
        g = read_graph(args.graph)
        h = self._load_tree(args.tree)
        if args.t < 1:
            raise PreconditionError("t must be at least 1")
        outcome = pipeline(g, h, args.t, budget_nodes=self._budget(args), eager=args.eager)
        output = self._output_path(args, args.output)
        if outcome.certificate is not None and output is not None:
            write_certificate(outcome.certificate, output, relative_from(output, args.graph))
            self._remember_output(output)
        data: Dict[str, Any] = {
            "kind": outcome.kind,
            "stage": outcome.stage,
            "within_bound": outcome.within_bound,
            "attempts": [list(a) for a in outcome.attempts],
            "message": outcome.message,
            "certificate": outcome.certificate.to_dict() if outcome.certificate is not None else None,
        }
        lines = [f"outcome: {outcome.kind} (stage {outcome.stage})"]
        lines.extend(f"  {stage}: {result}" for stage, result in outcome.attempts)
        if outcome.message:
            lines.append(outcome.message)
        self._emit(args, data, lines)
        return EXIT_VALID

    def _cmd_verify(self, args: argparse.Namespace) -> int:
        code, message = verify(args.certificate, args.graph)
        self._emit(args, {"exit": code, "message": message}, [message])
        if code != EXIT_VALID:
            logger.warning("verification of %s failed: %s", args.certificate, message)
        return code

    def _cmd_experiment(self, args: argparse.Namespace) -> int:
        text = args.config.read_text(encoding="utf-8")
        base_dir = args.config.resolve().parent
        defaults = {"seed": str(args.seed), "eager": "true" if args.eager else "false"}
        if args.budget_nodes:
            defaults["budget_nodes"] = str(args.budget_nodes)
        output = self._output_path(args, args.output)
        if output is None:
            run_experiment(text, self.out, base_dir=base_dir, workers=args.workers, defaults=defaults)
            return EXIT_VALID
        with open(output, "w", encoding="utf-8", newline="") as file:
            rows = run_experiment(text, file, base_dir=base_dir, workers=args.workers, defaults=defaults)
        self._remember_output(output)
        logger.info("wrote %d rows to %s", len(rows), output)
        return EXIT_VALID


def main(argv: Optional[Sequence[str]] = None) -> int:
    return CliApp().run(argv)
