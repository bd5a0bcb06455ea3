"""Three-valued verdicts and search budgets.

Every search that stands in for an unbounded quantifier returns a
:class:`Verdict`.  ``UNKNOWN`` always carries the budget that ran out, so a
caller can tell an exhausted search from a definite answer.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Generic, Optional, TypeVar

T = TypeVar("T")


class Status(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Budget:
    """Bounds for the unbounded quantifiers of the local criterion.

    ``t_samples`` overrides the default sample of thresholds
    ``{0, max_t/4, max_t/2, max_t}`` used by :func:`~.criterion.find_k`.
    ``window`` bounds 1-D periodicity checks; ``max_section`` bounds the
    section coordinate searched for non-definable sections.
    """

    max_k: int = 4
    max_s: int = 8
    max_t: int = 64
    coord_bound: int = 10_000
    window: int = 2_000
    max_section: int = 16
    theta: int = 3
    t_samples: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "t_samples":
                if value is not None and any(v < 0 for v in value):
                    raise ValueError("t_samples must be naturals")
                continue
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"budget field {f.name} must be >= 1, got {value!r}")

    def samples(self) -> tuple[int, ...]:
        if self.t_samples is not None:
            return tuple(sorted(set(self.t_samples)))
        m = self.max_t
        return tuple(sorted({0, m // 4, m // 2, m}))

    def reduced(self) -> "Budget":
        """Budget for recursive calls on sections."""
        return replace(
            self,
            max_section=max(1, self.max_section // 2),
            max_t=max(1, self.max_t // 2),
            coord_bound=max(1, min(self.coord_bound, 256)),
        )

    def describe(self) -> str:
        parts = []
        for key, value in asdict(self).items():
            if value is None:
                continue
            if isinstance(value, tuple):
                value = ",".join(map(str, value))
            parts.append(f"{key}={value}")
        return " ".join(parts)


@dataclass(frozen=True)
class Verdict(Generic[T]):
    status: Status
    value: Optional[T] = None
    budget: Any = None
    note: str = ""

    @classmethod
    def holds(cls, value=None, budget=None, note=""):
        return cls(Status.HOLDS, value, budget, note)

    @classmethod
    def fails(cls, budget=None, note=""):
        return cls(Status.FAILS, None, budget, note)

    @classmethod
    def unknown(cls, budget, note=""):
        return cls(Status.UNKNOWN, None, budget, note)

    @property
    def is_holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    def __str__(self) -> str:
        text = self.status.value
        if self.is_holds and self.value is not None:
            text += f"({self.value})"
        if self.budget is not None:
            b = self.budget.describe() if isinstance(self.budget, Budget) else self.budget
            text += f" [{b}]"
        if self.note:
            text += f" {self.note}"
        return text
