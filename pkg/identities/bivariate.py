"""Recursions and limits for general maps counted by edges and faces."""
from __future__ import annotations

from typing import Iterable, Tuple

from map_formulas import Deformation, FormulaEvaluator, tree_limit_three_point
from parametrization import Mode

from .base import Identity, SidePair, brackets, product
from .registry import register_identity

BIVARIATE = (Mode.BIVARIATE_GENERAL,)
ONE = Deformation.NONE
A = Deformation.ALPHA
A2 = Deformation.ALPHA2


@register_identity("recurNbiv")
class RecurNBivariate(Identity):
    modes = BIVARIATE

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f, g = ev.family, ev.g
        d_next = f("D", s + 1, t + 1)
        rhs = 1 + g * g * f("U", s) * f("U", t) * f("N", s, t) * d_next / (1 - g * d_next)
        yield f("N", s, t), rhs


@register_identity("DstClosed")
class DClosedForm(Identity):
    """Closed bracket form of ``g D_{s,t}``."""

    modes = BIVARIATE

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        alpha = ev.params.alpha_or_one()
        rhs = alpha * ev.x_power(1) * brackets(
            ev,
            [(1, ONE), (s, ONE), (t, ONE), (s + t + 3, A2)],
            [(2, A), (s + 1, A), (t + 1, A), (s + t + 2, A)],
        )
        yield ev.g * ev.family("D", s, t), rhs


@register_identity("recurYbiv")
class RecurYBivariate(Identity):
    modes = BIVARIATE
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f, g, z = ev.family, ev.g, ev.z
        chains = product(1 / (1 - g * f("D", a + 1, b + 1)) for a, b in ((s, t), (s, u), (t, u)))
        inner = product([
            f("N", s + 1, t + 1), f("N", s + 1, u + 1), f("N", t + 1, u + 1),
            f("U", s + 1), f("U", t + 1), f("U", u + 1),
            f("Y", s + 1, t + 1, u + 1),
        ]) + (z - 1) * f("W", s + 1) * f("W", t + 1) * f("W", u + 1)
        rhs = 1 + g ** 3 * f("U", s) * f("U", t) * f("U", u) * chains * inner
        yield f("Y", s, t, u), rhs


@register_identity("oddAssemblyBiv")
class OddAssemblyBivariate(Identity):
    """Odd three-point function from its five-piece decomposition."""

    modes = BIVARIATE
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f, g, z = ev.family, ev.g, ev.z
        chains = product(1 / (1 - g * f("D", a, b)) for a, b in ((s, t), (s, u), (t, u)))
        core = product([
            f("N", s, t), f("N", s, u), f("N", t, u),
            f("U", s), f("U", t), f("U", u),
            f("Y", s, t, u),
        ]) + (z - 1) * f("W", s) * f("W", t) * f("W", u)
        yield f("Fodd", s, t, u), g ** 3 * chains * core * core


class _TreeLimit(Identity):
    arity = 3
    parity = "even"
    family_name = "Feven"
    z_power = 1

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        leading = ev.finite_difference(self.family_name, indices, (0, 1, 2)).z_coefficient(self.z_power)
        yield leading, tree_limit_three_point(self.parity, indices, ev.order)


@register_identity("treeLimitEven")
class TreeLimitEven(_TreeLimit):
    """Linear term in ``z`` of the even function counts tri-pointed trees."""

    modes = BIVARIATE


@register_identity("treeLimitOdd")
class TreeLimitOdd(_TreeLimit):
    modes = BIVARIATE
    parity = "odd"
    family_name = "Fodd"
    z_power = 2


@register_identity("specialization")
class Specialization(Identity):
    """Bivariate families at ``z = 1`` reduce to their univariate forms."""

    modes = (Mode.BIVARIATE_GENERAL, Mode.BIVARIATE_BIPARTITE)
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        flat = FormulaEvaluator(ev.params.at_unit_face_weight())
        if ev.mode is Mode.BIVARIATE_GENERAL:
            checks = [("T", (s,)), ("N", (s, t)), ("Y", (s, t, u)), ("Feven", (s, t, u)), ("Fodd", (s, t, u))]
            yield ev.family("U", s).specialize(1), flat.family("T", s)
        else:
            checks = [("Ttilde", (s,)), ("Xtilde", (s, t)), ("Ytilde", (s, t, u)), ("Ftilde", (s, t, u))]
            yield ev.family("Utilde", s).specialize(1), flat.family("Ttilde", s)
        for name, idx in checks:
            yield ev.family(name, *idx).specialize(1), flat.family(name, *idx)
