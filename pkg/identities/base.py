"""Shared base class and report types for identity checks."""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from typing import Any, ClassVar, Dict, Iterable, List, Optional, Sequence, Tuple

from map_formulas import Bracket, Deformation, FormulaEvaluator
from parametrization import Mode
from power_series import TruncatedSeries

SidePair = Tuple[TruncatedSeries, TruncatedSeries]


@dataclass
class Failure:
    """First coefficient where the two sides of an identity disagree."""

    mode: str
    indices: Tuple[int, ...]
    g_order: int
    lhs: str
    rhs: str


@dataclass
class VerificationReport:
    identity: str
    status: str
    checked: int
    first_failure: Optional[Failure] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        if self.first_failure is not None:
            payload["first_failure"]["indices"] = list(self.first_failure.indices)
        return payload


class Identity:
    """An equation between two series, checked over a range of indices.

    Subclasses set ``modes`` and ``arity`` and implement :meth:`pairs`,
    which yields ``(lhs, rhs)`` for one index tuple.
    """

    name: ClassVar[Optional[str]] = None
    modes: ClassVar[Tuple[Mode, ...]] = ()
    arity: ClassVar[int] = 2
    description: ClassVar[str] = ""

    def index_tuples(self, limit: int) -> Iterable[Tuple[int, ...]]:
        return itertools.product(range(1, limit + 1), repeat=self.arity)

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        raise NotImplementedError


def first_difference(lhs: TruncatedSeries, rhs: TruncatedSeries) -> Optional[int]:
    for k, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            return k
    return None


def brackets(ev: FormulaEvaluator, numerator: Sequence[Tuple[int, Deformation]],
             denominator: Sequence[Tuple[int, Deformation]] = ()) -> TruncatedSeries:
    """Ratio of bracket products, each factor given as ``(exponent, deformation)``."""

    top = ev.zero() + 1
    for s, deformation in numerator:
        top = top * ev.bracket(Bracket(s, deformation))
    bottom = ev.zero() + 1
    for s, deformation in denominator:
        bottom = bottom * ev.bracket(Bracket(s, deformation))
    return top / bottom


def product(factors: Iterable[TruncatedSeries]) -> TruncatedSeries:
    items: List[TruncatedSeries] = list(factors)
    result = items[0]
    for item in items[1:]:
        result = result * item
    return result
