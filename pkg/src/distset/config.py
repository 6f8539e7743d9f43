from __future__ import annotations

import os
from dataclasses import dataclass, replace

BUDGET_ENV = "DISTSET_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    """Caps on exhaustive enumeration.

    ``spectrum_tuples`` bounds the point multisets visited by ``spectrum``,
    ``search_nodes`` the backtracking nodes of the realizability search and
    ``oracle_colorings`` the plain enumeration of the brute-force oracle.
    """

    spectrum_tuples: int = 2_000_000
    search_nodes: int = 20_000_000
    oracle_colorings: int = 10_000_000

    @classmethod
    def from_env(cls) -> "Budget":
        raw = os.environ.get(BUDGET_ENV)
        if not raw:
            return cls()
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise ValueError(f"{BUDGET_ENV} must be positive")
        return replace(cls(), spectrum_tuples=value, search_nodes=value)
