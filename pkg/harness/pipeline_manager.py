# harness/pipeline_manager.py

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from graph_core.abstract_tree import AbstractTree
from graph_core.certificates import Certificate, DegeneracyCertificate
from graph_core.degeneracy_service import certificate_violation, degeneracy
from graph_core.errors import BudgetExhausted, ConstructionError
from graph_core.graph import Graph
from graph_core.validators import validate_biclique, validate_embedding
from tree_grower.bounds import degeneracy_bound
from tree_grower.grow_service import grow_to_target
from witness_search.biclique_search import find_biclique
from witness_search.budget import SearchBudget
from witness_search.induced_search import find_induced_tree

logger = logging.getLogger(__name__)

OUTCOME_KINDS = ("certificate", "biclique", "induced_tree", "budget")
STAGES = ("degeneracy", "biclique", "induced_search", "growth")


@dataclass(frozen=True)
class PipelineOutcome:
    """
    First validated outcome of the pipeline.

    ``stage`` names the stage that produced it and ``attempts`` records
    ``(stage, result)`` for every stage tried, in order.
    """

    kind: str
    certificate: Optional[Certificate] = None
    stage: str = ""
    within_bound: Optional[bool] = None
    attempts: Tuple[Tuple[str, str], ...] = ()
    message: str = ""


@dataclass
class PipelineManager:
    """
    Runs the certificate trichotomy for one target tree on host graphs.

    Stages run in order: degeneracy against the growth bound, a
    ``K_{t,t}`` search, a direct induced search for the target and finally
    constructive growth. Each search stage gets its own node budget. With
    ``eager`` the bound comparison is skipped so the witness stages run.
    """

    budget_nodes: Optional[int] = None
    eager: bool = False
    attempts: List[Tuple[str, str]] = field(default_factory=list)

    # ================= STAGES =================

    def _degeneracy_stage(self, g: Graph, h: AbstractTree, t: int) -> Tuple[Optional[DegeneracyCertificate], bool]:
        cert = degeneracy(g)
        bounds = degeneracy_bound(h, max(h.spread, 1), max(h.height, 1), t)
        below = bounds.main.exceeds(cert.bound) or bounds.main.value == cert.bound
        self.attempts.append(("degeneracy", f"degeneracy {cert.bound}"))
        return cert, below

    def _search(self, stage: str, run: Callable[[SearchBudget], Optional[Certificate]]) -> Tuple[Optional[Certificate], bool]:
        try:
            found = run(SearchBudget(self.budget_nodes))
        except BudgetExhausted as exc:
            logger.warning("stage %s stopped: %s", stage, exc)
            self.attempts.append((stage, "budget"))
            return None, True
        self.attempts.append((stage, "found" if found is not None else "none"))
        return found, False

    def _grow(self, g: Graph, h: AbstractTree, t: int, budget: SearchBudget) -> Optional[Certificate]:
        outcome = grow_to_target(g, h, t, budget=budget)
        if outcome.status == "budget":
            raise BudgetExhausted(budget.spent, budget.limit or 0)
        if outcome.status == "embedded":
            return outcome.embedding
        if outcome.status == "biclique":
            return outcome.witness
        return None

    # ================= RUN =================

    def run(self, g: Graph, h: AbstractTree, t: int) -> PipelineOutcome:
        """
        Produce the first validated outcome for host ``g``, target ``h`` and ``K_{t,t}``.

        :param g: Host graph
        :type g: Graph
        :param h: Rooted target tree
        :type h: AbstractTree
        :param t: Biclique side size
        :type t: int
        :return: Certificate, biclique, induced tree or a budget report
        :rtype: PipelineOutcome
        :raises ConstructionError: If an emitted object fails validation
        """
        self.attempts = []
        cert, below = self._degeneracy_stage(g, h, t)
        if below and not self.eager:
            return self._emit("certificate", cert, "degeneracy", g, below)

        exhausted = []
        witness, out = self._search("biclique", lambda b: find_biclique(g, t, t, b))
        if witness is not None:
            return self._emit("biclique", witness, "biclique", g, below)
        exhausted.append(out)

        embedding, out = self._search("induced_search", lambda b: find_induced_tree(g, h, budget=b))
        if embedding is not None:
            return self._emit("induced_tree", embedding, "induced_search", g, below)
        exhausted.append(out)

        grown, out = self._search("growth", lambda b: self._grow(g, h, t, b))
        if grown is not None:
            kind = "biclique" if grown.kind == "biclique" else "induced_tree"
            return self._emit(kind, grown, "growth", g, below)
        exhausted.append(out)

        if all(exhausted):
            return PipelineOutcome("budget", stage="growth", within_bound=below,
                                   attempts=tuple(self.attempts), message="every search stage ran out of budget")
        return self._emit("certificate", cert, "degeneracy", g, below)

    def _emit(self, kind: str, cert: Certificate, stage: str, g: Graph, below: bool) -> PipelineOutcome:
        if kind == "certificate":
            position = certificate_violation(g, cert)
            if position is not None:
                raise ConstructionError(f"degeneracy certificate violated at position {position}")
        elif kind == "biclique" and not validate_biclique(g, cert):
            raise ConstructionError("biclique witness does not validate")
        elif kind == "induced_tree" and not validate_embedding(g, cert):
            raise ConstructionError("induced embedding does not validate")
        logger.info("pipeline emitted %s from stage %s", kind, stage)
        return PipelineOutcome(kind, cert, stage, below, tuple(self.attempts))


def pipeline(
    g: Graph,
    h: AbstractTree,
    t: int,
    budget_nodes: Optional[int] = None,
    eager: bool = False,
) -> PipelineOutcome:
    """Run a fresh :class:`PipelineManager` once."""
    return PipelineManager(budget_nodes, eager).run(g, h, t)
