"""Recursions for bipartite maps (very-well-labelled chains and Y-diagrams)."""
from __future__ import annotations

from typing import Iterable, Tuple

from map_formulas import FormulaEvaluator
from parametrization import Mode

from .base import Identity, SidePair, product
from .bivariate import _TreeLimit
from .registry import register_identity


@register_identity("recurXtilde")
class RecurXTilde(Identity):
    modes = (Mode.UNIVARIATE_BIPARTITE,)

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f, g = ev.family, ev.g
        rhs = 1 + g * g * product([
            f("Ttilde", s), f("Ttilde", t), f("Xtilde", s, t),
            f("Ttilde", s + 1), f("Ttilde", t + 1), f("Xtilde", s + 1, t + 1),
        ])
        yield f("Xtilde", s, t), rhs


@register_identity("recurXtildeBiv")
class RecurXTildeBivariate(Identity):
    """The face-weight correction uses ``Wtilde`` at the shifted indices."""

    modes = (Mode.BIVARIATE_BIPARTITE,)

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t = indices
        f, g, z = ev.family, ev.g, ev.z
        inner = (
            f("Utilde", s + 1) * f("Utilde", t + 1) * f("Xtilde", s + 1, t + 1)
            + (z - 1) * f("Wtilde", s + 1) * f("Wtilde", t + 1)
        )
        rhs = 1 + g * g * f("Utilde", s) * f("Utilde", t) * f("Xtilde", s, t) * inner
        yield f("Xtilde", s, t), rhs


@register_identity("recurYtilde")
class RecurYTilde(Identity):
    modes = (Mode.UNIVARIATE_BIPARTITE,)
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f, g = ev.family, ev.g
        rhs = 1 + g ** 3 * product([
            f("Ttilde", s), f("Ttilde", t), f("Ttilde", u),
            f("Xtilde", s + 1, t + 1), f("Xtilde", s + 1, u + 1), f("Xtilde", t + 1, u + 1),
            f("Ttilde", s + 1), f("Ttilde", t + 1), f("Ttilde", u + 1),
            f("Ytilde", s + 1, t + 1, u + 1),
        ])
        yield f("Ytilde", s, t, u), rhs


@register_identity("recurYtildeBiv")
class RecurYTildeBivariate(Identity):
    modes = (Mode.BIVARIATE_BIPARTITE,)
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f, g, z = ev.family, ev.g, ev.z
        inner = product([
            f("Xtilde", s + 1, t + 1), f("Xtilde", s + 1, u + 1), f("Xtilde", t + 1, u + 1),
            f("Utilde", s + 1), f("Utilde", t + 1), f("Utilde", u + 1),
            f("Ytilde", s + 1, t + 1, u + 1),
        ]) + (z - 1) * f("Wtilde", s + 1) * f("Wtilde", t + 1) * f("Wtilde", u + 1)
        rhs = 1 + g ** 3 * f("Utilde", s) * f("Utilde", t) * f("Utilde", u) * inner
        yield f("Ytilde", s, t, u), rhs


@register_identity("bipAssembly")
class BipartiteAssembly(Identity):
    modes = (Mode.UNIVARIATE_BIPARTITE, Mode.BIVARIATE_BIPARTITE)
    arity = 3

    def pairs(self, ev: FormulaEvaluator, indices: Tuple[int, ...]) -> Iterable[SidePair]:
        s, t, u = indices
        f = ev.family
        y = f("Ytilde", s, t, u)
        yield f("Ftilde", s, t, u), f("Xtilde", s, t) * f("Xtilde", s, u) * f("Xtilde", t, u) * y * y


@register_identity("treeLimitBip")
class TreeLimitBipartite(_TreeLimit):
    modes = (Mode.BIVARIATE_BIPARTITE,)
    parity = "bipartite"
    family_name = "Ftilde"
