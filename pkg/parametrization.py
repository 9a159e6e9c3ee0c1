"""Order-by-order solvers for the parametrizations ``x(g)`` and ``alpha(g; z)``.

General maps::

    g = x (1 - a x)^3 (1 - a x^3) / P^2
    z = a (1 - x)^3 (1 - a^2 x^3) / ((1 - a x)^3 (1 - a x^3))
    P = 1 + x + a x - 6 a x^2 + a x^3 + a^2 x^3 + a^2 x^4

Bipartite maps::

    g = x (1 - a x)^2 (1 - a x^4) / ((1 + x)^2 (1 - a x^2)^3)
    z = a (1 - x)^2 (1 - x^2) (1 + a x^2) / ((1 - a x)^2 (1 - a x^4))

At ``z = 1`` one has ``a = 1`` and the univariate relations follow.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Tuple, Union

from power_series import (
    RATIONALS,
    Z_POLYNOMIALS,
    CoefficientRing,
    TruncatedSeries,
    ZPolynomial,
    catalan_series,
)

logger = logging.getLogger(__name__)


class ParametrizationError(RuntimeError):
    """Raised when the bivariate linear step is singular (internal error)."""


class Family(str, Enum):
    GENERAL = "general"
    BIPARTITE = "bipartite"


class Mode(str, Enum):
    UNIVARIATE_GENERAL = "univariate-general"
    UNIVARIATE_BIPARTITE = "univariate-bipartite"
    BIVARIATE_GENERAL = "bivariate-general"
    BIVARIATE_BIPARTITE = "bivariate-bipartite"

    @property
    def family(self) -> Family:
        return Family.BIPARTITE if self.value.endswith("bipartite") else Family.GENERAL

    @property
    def bivariate(self) -> bool:
        return self.value.startswith("bivariate")

    @property
    def ring(self) -> CoefficientRing:
        return Z_POLYNOMIALS if self.bivariate else RATIONALS

    @classmethod
    def of(cls, family: Union[Family, str], bivariate: bool) -> "Mode":
        family = Family(family)
        prefix = "bivariate" if bivariate else "univariate"
        return cls(f"{prefix}-{family.value}")


Relation = Callable[[TruncatedSeries, TruncatedSeries, TruncatedSeries, TruncatedSeries], TruncatedSeries]


def _general_g_relation(g: TruncatedSeries, z: TruncatedSeries, x: TruncatedSeries, a: TruncatedSeries) -> TruncatedSeries:
    x2 = x * x
    x3 = x2 * x
    p = 1 + x + a * x - 6 * a * x2 + a * x3 + a * a * x3 + a * a * x2 * x2
    return g * p * p - x * (1 - a * x) ** 3 * (1 - a * x3)


def _general_z_relation(g: TruncatedSeries, z: TruncatedSeries, x: TruncatedSeries, a: TruncatedSeries) -> TruncatedSeries:
    x3 = x * x * x
    return z * (1 - a * x) ** 3 * (1 - a * x3) - a * (1 - x) ** 3 * (1 - a * a * x3)


def _bipartite_g_relation(g: TruncatedSeries, z: TruncatedSeries, x: TruncatedSeries, a: TruncatedSeries) -> TruncatedSeries:
    x2 = x * x
    return g * (1 + x) ** 2 * (1 - a * x2) ** 3 - x * (1 - a * x) ** 2 * (1 - a * x2 * x2)


def _bipartite_z_relation(g: TruncatedSeries, z: TruncatedSeries, x: TruncatedSeries, a: TruncatedSeries) -> TruncatedSeries:
    x2 = x * x
    return z * (1 - a * x) ** 2 * (1 - a * x2 * x2) - a * (1 - x) ** 2 * (1 - x2) * (1 + a * x2)


RELATIONS = {
    Family.GENERAL: (_general_g_relation, _general_z_relation),
    Family.BIPARTITE: (_bipartite_g_relation, _bipartite_z_relation),
}


@dataclass(frozen=True)
class ParamSolution:
    """Series ``x`` (and ``alpha`` in bivariate mode) solving the relations."""

    x: TruncatedSeries
    alpha: Optional[TruncatedSeries]
    mode: Mode

    @property
    def order(self) -> int:
        return self.x.order

    @property
    def ring(self) -> CoefficientRing:
        return self.x.ring

    @property
    def family(self) -> Family:
        return self.mode.family

    def alpha_or_one(self) -> TruncatedSeries:
        if self.alpha is None:
            return TruncatedSeries.one(self.order, self.ring)
        return self.alpha

    def g(self) -> TruncatedSeries:
        return TruncatedSeries.generator(self.order, self.ring)

    def z(self) -> TruncatedSeries:
        """The face weight as a constant series (``1`` in univariate mode)."""

        if self.mode.bivariate:
            return TruncatedSeries.constant(ZPolynomial.z(), self.order, self.ring)
        return TruncatedSeries.one(self.order, self.ring)

    def residuals(self) -> Tuple[TruncatedSeries, TruncatedSeries]:
        """Both cleared-denominator relations evaluated at the solution."""

        g_relation, z_relation = RELATIONS[self.family]
        a = self.alpha_or_one()
        return (
            g_relation(self.g(), self.z(), self.x, a),
            z_relation(self.g(), self.z(), self.x, a),
        )

    def is_consistent(self) -> bool:
        return all(residual.is_zero() for residual in self.residuals())

    def at_unit_face_weight(self) -> "ParamSolution":
        """Set ``z = 1`` in a bivariate solution (``alpha`` becomes 1)."""

        if not self.mode.bivariate:
            return self
        alpha = self.alpha.specialize(1) if self.alpha is not None else None
        if alpha is not None and alpha != TruncatedSeries.one(self.order):
            raise ParametrizationError("alpha does not specialize to 1 at z = 1")
        return ParamSolution(self.x.specialize(1), None, Mode.of(self.family, bivariate=False))


def solve_x_univariate(family: Union[Family, str], order: int) -> ParamSolution:
    """Solve for ``x(g)`` by exact fixed-point iteration.

    Each pass of ``x <- g * phi(x)`` fixes one more coefficient, so ``order``
    passes starting from ``x = 0`` give the exact truncation.
    """

    family = Family(family)
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    g = TruncatedSeries.generator(order)
    x = TruncatedSeries.zero(order)
    for _ in range(order):
        x2 = x * x
        if family is Family.GENERAL:
            x = g * (1 + 4 * x + x2) ** 2 / (1 + x + x2)
        else:
            x = g * (1 + x) ** 4 / (1 + x2)
    logger.debug("univariate %s parametrization solved to order %s", family.value, order)
    return ParamSolution(x=x, alpha=None, mode=Mode.of(family, bivariate=False))


def _series_from(values: List, order: int) -> TruncatedSeries:
    return TruncatedSeries(values, order, Z_POLYNOMIALS)


def solve_params_bivariate(family: Union[Family, str], order: int) -> ParamSolution:
    """Solve for ``x(g; z)`` and ``alpha(g; z)`` order by order.

    At order ``k`` both relations are affine in the unknown coefficients
    ``(x_k, alpha_k)``; the affine map is probed at three points and the 2x2
    system is solved by Cramer's rule. Its determinant is a nonzero constant.
    """

    family = Family(family)
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    g_relation, z_relation = RELATIONS[family]
    zero = Z_POLYNOMIALS.zero
    one = Z_POLYNOMIALS.one
    x_coeffs: List[ZPolynomial] = [zero]
    a_coeffs: List[ZPolynomial] = [ZPolynomial.z()]

    for k in range(1, order + 1):
        g = TruncatedSeries.generator(k, Z_POLYNOMIALS)
        z = TruncatedSeries.constant(ZPolynomial.z(), k, Z_POLYNOMIALS)

        def probe(dx: ZPolynomial, da: ZPolynomial) -> Tuple[ZPolynomial, ZPolynomial]:
            x = _series_from(x_coeffs + [dx], k)
            a = _series_from(a_coeffs + [da], k)
            return g_relation(g, z, x, a).coefficient(k), z_relation(g, z, x, a).coefficient(k)

        c1, c2 = probe(zero, zero)
        e1, e2 = probe(one, zero)
        f1, f2 = probe(zero, one)
        j11, j21 = e1 - c1, e2 - c2
        j12, j22 = f1 - c1, f2 - c2
        det = j11 * j22 - j12 * j21
        if det.is_zero() or not det.is_constant():
            raise ParametrizationError(f"singular linear step at order {k}: determinant {det!r}")
        inv_det = 1 / det.coefficient(0)
        x_k = (j12 * c2 - j22 * c1) * inv_det
        a_k = (j21 * c1 - j11 * c2) * inv_det
        x_coeffs.append(x_k)
        a_coeffs.append(a_k)
        logger.debug("bivariate %s: order %s solved", family.value, k)

    solution = ParamSolution(
        x=_series_from(x_coeffs, order),
        alpha=_series_from(a_coeffs, order),
        mode=Mode.of(family, bivariate=True),
    )
    logger.info("bivariate %s parametrization solved to order %s", family.value, order)
    return solution


def solve(mode: Union[Mode, str], order: int) -> ParamSolution:
    mode = Mode(mode)
    if mode.bivariate:
        return solve_params_bivariate(mode.family, order)
    return solve_x_univariate(mode.family, order)


def tree_x(order: int) -> TruncatedSeries:
    """``g * Cat(g)^2``, the value of ``x`` in the tree limit ``z -> 0``."""

    cat = catalan_series(order)
    return TruncatedSeries.generator(order) * cat * cat
