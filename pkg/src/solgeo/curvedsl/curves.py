"""Plane curves given by two component expressions."""

from dataclasses import dataclass, field

import numpy as np

from ..utils.exceptions import EvaluationError
from .calculus import differentiate, evaluate, to_text
from .nodes import Expr
from .parser import parse

FINITENESS_SAMPLES = 33


@dataclass(frozen=True)
class CurveSpec:
    """gamma(u) = (gamma1(u), gamma2(u)) on ``interval`` with exact derivatives to order 2."""

    gamma1: Expr
    gamma2: Expr
    interval: tuple[float, float]
    _derivatives: tuple[tuple[Expr, Expr], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        lo, hi = (float(v) for v in self.interval)
        if not lo < hi:
            raise ValueError(f"curve interval must satisfy lo < hi, got {self.interval}")
        object.__setattr__(self, "interval", (lo, hi))
        first = (differentiate(self.gamma1), differentiate(self.gamma2))
        second = (differentiate(first[0]), differentiate(first[1]))
        object.__setattr__(self, "_derivatives", ((self.gamma1, self.gamma2), first, second))

    @classmethod
    def from_text(cls, gamma1: str, gamma2: str, interval: tuple[float, float]) -> "CurveSpec":
        """Parse both components and check they are finite on the interval.

        Raises:
            CurveSyntaxError: a component does not parse
            EvaluationError: a component is not finite somewhere on the interval
        """
        spec = cls(parse(gamma1), parse(gamma2), interval)
        spec.check_finite()
        return spec

    def check_finite(self, samples: int = FINITENESS_SAMPLES) -> None:
        for u in np.linspace(*self.interval, samples):
            for order in range(3):
                try:
                    self.evaluate(float(u), order)
                except EvaluationError as e:
                    raise EvaluationError(f"curve {self.describe()} at u={u:.6g}: {e}") from e

    def evaluate(self, u: float, order: int = 0) -> tuple[float, float]:
        """The ``order``-th derivative of gamma at u (order 0, 1 or 2)."""
        if order not in (0, 1, 2):
            raise ValueError("order must be 0, 1 or 2")
        component1, component2 = self._derivatives[order]
        return evaluate(component1, u), evaluate(component2, u)

    def describe(self) -> str:
        return f"({to_text(self.gamma1)}, {to_text(self.gamma2)})"
