"""Brute-force work budgets shared by the verification loops."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 10**8
ENV_VAR = "GROUPOMEGA_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when a brute-force search would exceed its operation budget."""


def default_budget() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {raw!r}")
    return value


def check_budget(cost: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if cost > limit:
        raise BudgetExceeded(f"{what}: {cost} operations exceeds budget {limit}")
