"""Recursions and consistency checks for general maps counted by edges."""
from __future__ import annotations

from typing import Iterable, Tuple

from map_formulas import FormulaEvaluator
from parametrization import Mode

from .base import Identity, SidePair, product
from .registry import register_identity

UNIVARIATE = (Mode.UNIVARIATE_GENERAL,)
ALL_MODES = tuple(Mode)


@register_identity("recurX")
class RecurX(Identity):
    """Chain decomposition at the first return to label 0."""

    modes = UNIVARIATE

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f, g = ev.family, ev.g
        ts_tt_x = f("T", s) * f("T", t) * f("X", s, t)
        rhs = 1 + g * ts_tt_x + g * g * ts_tt_x * f("T", s + 1) * f("T", t + 1) * f("X", s + 1, t + 1)
        yield f("X", s, t), rhs


@register_identity("XtoN")
class XToN(Identity):
    modes = UNIVARIATE

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f = ev.family
        x = f("X", s, t)
        yield f("N", s, t), x / (1 + ev.g * f("T", s) * f("T", t) * x)


@register_identity("recurN")
class RecurN(Identity):
    modes = UNIVARIATE

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f, g = ev.family, ev.g
        inner = f("T", s + 1) * f("T", t + 1) * f("N", s + 1, t + 1)
        rhs = 1 + g * g * f("T", s) * f("T", t) * f("N", s, t) * inner / (1 - g * inner)
        yield f("N", s, t), rhs


@register_identity("recurY")
class RecurY(Identity):
    modes = UNIVARIATE
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f, g = ev.family, ev.g
        rhs = 1 + g ** 3 * product([
            f("T", s), f("T", t), f("T", u),
            f("X", s + 1, t + 1), f("X", s + 1, u + 1), f("X", t + 1, u + 1),
            f("T", s + 1), f("T", t + 1), f("T", u + 1),
            f("Y", s + 1, t + 1, u + 1),
        ])
        yield f("Y", s, t, u), rhs


@register_identity("evenAssembly")
class EvenAssembly(Identity):
    """Even three-point function as chains glued around a Y-diagram."""

    modes = (Mode.UNIVARIATE_GENERAL, Mode.BIVARIATE_GENERAL)
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f = ev.family
        y = f("Y", s, t, u)
        yield f("Feven", s, t, u), f("N", s, t) * f("N", s, u) * f("N", t, u) * y * y


@register_identity("oddAssembly")
class OddAssembly(Identity):
    modes = UNIVARIATE
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f = ev.family
        y = f("Y", s, t, u)
        yield f("Fodd", s, t, u), f("O", s, t) * f("O", s, u) * f("O", t, u) * y * y


@register_identity("routeEquivalence", aliases=("routes",))
class RouteEquivalence(Identity):
    """Every two-point route, over every admissible split, agrees with the direct one."""

    modes = ALL_MODES
    arity = 1

    def index_tuples(self, limit: int) -> Iterable[Tuple[int, ...]]:
        return ((d,) for d in range(1, limit + 2))

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        (d,) = indices
        direct = ev.two_point(d, "direct")
        yield direct, ev.two_point(d, "ratio")
        for s in range(1, d):
            yield direct, ev.two_point(d, "typeA", (s, d - s))
        if ev.mode.family.value == "general":
            for s in range(1, d + 1):
                yield direct, ev.two_point(d, "typeB", (s, d + 1 - s))


@register_identity("telescoping")
class Telescoping(Identity):
    """Partial sums of the two-point function telescope to ``log R_D``."""

    modes = ALL_MODES
    arity = 1

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        (top,) = indices
        total = ev.zero()
        for d in range(1, top + 1):
            total = total + ev.two_point(d)
        r_name = "Rtilde" if ev.mode.family.value == "bipartite" else "R"
        yield total, ev.family(r_name, top).log()
        yield ev.family(r_name, top), ev.r_from_definition(top)


@register_identity("productFormulaR", aliases=("product",))
class ProductFormulaR(Identity):
    """``N_{s,t} prod_{u<=s} R_u prod_{u<=t} R_u = prod_{u<=s+t} R_u``."""

    modes = ALL_MODES

    def index_tuples(self, limit: int) -> Iterable[Tuple[int, ...]]:
        cap = min(limit, 4)
        return ((s, t) for s in range(1, cap + 1) for t in range(1, cap + 1))

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        r = [ev.r_from_definition(u) for u in range(0, s + t + 1)]
        lhs = ev.family(ev.chain_family(), s, t) * product(r[: s + 1]) * product(r[: t + 1])
        yield lhs, product(r)
