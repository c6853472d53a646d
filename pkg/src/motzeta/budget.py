"""Enumeration budget shared by all brute-force loops."""

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8


def enumeration_budget() -> int:
    """Return the budget, honouring the ``ZETA_BUDGET`` environment variable."""
    raw = os.environ.get("ZETA_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise BudgetExceeded(f"ZETA_BUDGET is not a number: {raw!r}") from None
    return max(value, 0)


def check_budget(cost: int, what: str, budget: int | None = None) -> int:
    """Raise BudgetExceeded if ``cost`` exceeds the budget; return the cost."""
    limit = enumeration_budget() if budget is None else budget
    if cost > limit:
        raise BudgetExceeded(f"{what}: {cost} evaluations exceed budget {limit}")
    return cost
