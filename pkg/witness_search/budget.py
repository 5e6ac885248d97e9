# witness_search/budget.py

from __future__ import annotations

from typing import Optional

from graph_core.errors import BudgetExhausted


class SearchBudget:
    """
    Node counter shared by the searches of one run.

    ``limit=None`` means unlimited. One budget may be threaded through several
    searches so that a whole pipeline stage is bounded, not each call.
    """

    def __init__(self, limit: Optional[int] = None) -> None:
        if limit is not None and limit < 0:
            raise ValueError("budget limit must be non-negative")
        self.limit: Optional[int] = limit
        self.spent: int = 0

    def spend(self, nodes: int = 1) -> None:
        """
        :raises BudgetExhausted: Once the limit is passed
        """
        self.spent += nodes
        if self.limit is not None and self.spent > self.limit:
            raise BudgetExhausted(self.spent, self.limit)

    @property
    def remaining(self) -> Optional[int]:
        return None if self.limit is None else max(self.limit - self.spent, 0)

    def __repr__(self) -> str:
        return f"SearchBudget(spent={self.spent}, limit={self.limit})"


def ensure_budget(budget: Optional[SearchBudget]) -> SearchBudget:
    return budget if budget is not None else SearchBudget()
