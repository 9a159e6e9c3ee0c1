"""Numeric side of the planar-map generating functions near their critical line.

Everything here works in doubles.  The critical line is parametrized by
``r`` in ``(0, 3]`` for general maps and by ``v`` in ``(0, 1/2]`` for
bipartite maps; ``z`` decreases along both parameters and equals ``1`` at
``r = 1`` and ``v = 1/4``.  Near the critical line the discrete two- and
three-point functions, with distances rescaled by ``eps`` where
``g = g_crit (1 - eps**4)``, approach universal continuum functions in
which ``z`` only enters through the scaling factor ``gamma``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from scipy.optimize import brentq

from parametrization import Family

logger = logging.getLogger(__name__)

_RTOL = 4 * np.finfo(float).eps
_XTOL = 1e-15

TABLE_COLUMNS = ["eps", "g", "d", "discrete", "continuum", "rel_error"]


class RootFindingError(RuntimeError):
    """A bracketed root search could not start or did not converge."""

    def __init__(self, message: str, bracket: Tuple[float, float], values: Tuple[float, float]):
        super().__init__(f"{message} (bracket={bracket}, values={values})")
        self.bracket = bracket
        self.values = values


def _family(family: Union[Family, str]) -> Family:
    try:
        return Family(family)
    except ValueError as exc:
        raise ValueError(f"unknown family {family!r}, expected general or bipartite") from exc


def _require_positive_z(z: float) -> float:
    z = float(z)
    if not z > 0 or not math.isfinite(z):
        raise ValueError(f"z must be a positive finite number, got {z}")
    return z


def _bracketed_root(
    fn: Callable[[float], float], lo: float, hi: float, what: str
) -> float:
    f_lo, f_hi = fn(lo), fn(hi)
    if not (np.isfinite(f_lo) and np.isfinite(f_hi)) or f_lo * f_hi > 0:
        raise RootFindingError(f"no sign change while solving for {what}", (lo, hi), (f_lo, f_hi))
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    try:
        root, info = brentq(fn, lo, hi, xtol=_XTOL, rtol=_RTOL, maxiter=500, full_output=True)
    except (ValueError, RuntimeError) as exc:
        raise RootFindingError(f"brentq failed for {what}: {exc}", (lo, hi), (f_lo, f_hi)) from exc
    if not info.converged:
        raise RootFindingError(f"brentq did not converge for {what}", (lo, hi), (f_lo, f_hi))
    return root


# -- critical line ---------------------------------------------------------


def critical_z(family: Union[Family, str], param: float) -> float:
    """``z`` as a function of the critical-line parameter."""

    family = _family(family)
    if family is Family.GENERAL:
        r = param
        return (3 - r) ** 3 * (r + 1) / (16 * r**3)
    v = param
    return (1 - 2 * v) ** 3 / ((3 - 4 * v) * v**2)


def _log_critical_z(family: Family, param: float) -> float:
    if family is Family.GENERAL:
        r = param
        return 3 * math.log(3 - r) + math.log1p(r) - math.log(16) - 3 * math.log(r)
    v = param
    return 3 * math.log1p(-2 * v) - math.log(3 - 4 * v) - 2 * math.log(v)


def _g_crit(family: Family, param: float) -> float:
    if family is Family.GENERAL:
        r = param
        return 4 * r**3 / (3 * (r**2 + 3) ** 2)
    v = param
    return (3 - 4 * v) * v**2


def _gamma(family: Family, param: float) -> float:
    if family is Family.GENERAL:
        r = param
        return math.sqrt(3 * (3 - r) * math.sqrt(r**2 + 3) / (2 * r * (r + 3)))
    v = param
    return math.sqrt(math.sqrt(3) * (1 - 2 * v) / (2 * math.sqrt(v * (1 - v))))


@dataclass(frozen=True)
class CriticalPoint:
    family: Family
    z: float
    param: float
    g_crit: float
    gamma: float

    def to_dict(self) -> Dict[str, object]:
        data = asdict(self)
        data["family"] = self.family.value
        return data


def critical_point(family: Union[Family, str], z: float) -> CriticalPoint:
    """Locate the critical line at face weight ``z``.

    The parameter is recovered by inverting the monotone map ``param -> z``
    in log scale with Brent's method.
    """

    family = _family(family)
    z = _require_positive_z(z)
    upper = 3.0 if family is Family.GENERAL else 0.5
    if z == 1:
        param = 1.0 if family is Family.GENERAL else 0.25
    else:
        target = math.log(z)
        lo, hi = 1e-12 * upper, upper * (1 - 1e-15)
        param = _bracketed_root(
            lambda p: _log_critical_z(family, p) - target, lo, hi, f"the critical parameter at z={z}"
        )
    point = CriticalPoint(family, z, param, _g_crit(family, param), _gamma(family, param))
    logger.debug("critical point %s", point)
    return point


def critical_line(family: Union[Family, str], z_values: Iterable[float]) -> pd.DataFrame:
    rows = [critical_point(family, z).to_dict() for z in z_values]
    return pd.DataFrame(rows, columns=["z", "param", "g_crit", "gamma"])


def dual_parameter(r: float) -> float:
    """General-family duality ``r -> (3 - r)/(1 + r)``, sending ``z`` to ``1/z``."""

    return (3 - r) / (1 + r)


# -- observables -----------------------------------------------------------


@dataclass(frozen=True)
class Observables:
    family: Family
    z: float
    geodesic_vertices: float
    geodesic_edges: Optional[float]
    vertex_fraction: float
    face_fraction: float

    def to_dict(self) -> Dict[str, object]:
        data = {
            "family": self.family.value,
            "z": self.z,
            "N_geod_vertices": self.geodesic_vertices,
            "n_v_fraction": self.vertex_fraction,
            "n_f_fraction": self.face_fraction,
        }
        if self.geodesic_edges is not None:
            data["N_geod_edges"] = self.geodesic_edges
        return data


def observables(family: Union[Family, str], z: float) -> Observables:
    """Average geodesic counts and vertex/face fractions at criticality.

    No geodesic-edge count is available for bipartite maps; the field is
    ``None`` there.
    """

    point = critical_point(family, z)
    if point.family is Family.GENERAL:
        r = point.param
        return Observables(
            point.family,
            point.z,
            geodesic_vertices=6 / (3 + r),
            geodesic_edges=(3 + r) / (2 * r),
            vertex_fraction=8 * r**2 / ((3 + r) * (3 + r**2)),
            face_fraction=(1 + r) * (3 - r) ** 2 / ((3 + r) * (3 + r**2)),
        )
    v = point.param
    return Observables(
        point.family,
        point.z,
        geodesic_vertices=3 - 4 * v,
        geodesic_edges=None,
        vertex_fraction=v * (3 - 4 * v) / (1 - v),
        face_fraction=(1 - 2 * v) ** 2 / (1 - v),
    )


@dataclass(frozen=True)
class AsymptoticCounts:
    """Leading large-``n`` behaviour of map counts with ``n`` edges at fixed ``z``.

    Bi-pointed and pointed-rooted counts grow as
    ``c g_crit**-n / (2 sqrt(pi) n**(3/2))``, tri-pointed counts as
    ``c g_crit**-n / (sqrt(pi) n**(1/2))``.
    """

    family: Family
    z: float
    g_crit: float
    bipointed: float
    pointed_rooted: float
    tripointed: float

    def at(self, n: int) -> Dict[str, float]:
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        growth = math.exp(-n * math.log(self.g_crit))
        three_halves = growth / (2 * math.sqrt(math.pi) * n**1.5)
        one_half = growth / (math.sqrt(math.pi) * math.sqrt(n))
        return {
            "bipointed": self.bipointed * three_halves,
            "pointed_rooted": self.pointed_rooted * three_halves,
            "tripointed": self.tripointed * one_half,
        }


def asymptotic_prefactors(family: Union[Family, str], z: float) -> AsymptoticCounts:
    point = critical_point(family, z)
    gamma2 = point.gamma**2
    if point.family is Family.GENERAL:
        r = point.param
        bipointed = gamma2 / 3
        pointed_rooted = (3 + r) * (3 + r**2) * gamma2 / (12 * r**2)
        tripointed = 3 * (3 - r) ** 2 / ((3 + r) ** 3 * gamma2)
    else:
        v = point.param
        bipointed = 2 * gamma2 / 3
        pointed_rooted = 4 * (1 - v) * gamma2 / (3 * v * (3 - 4 * v))
        tripointed = (1 - 2 * v) ** 2 * (3 - 4 * v) / (4 * (1 - v) ** 2 * gamma2)
    return AsymptoticCounts(point.family, point.z, point.g_crit, bipointed, pointed_rooted, tripointed)


def asymptotic_counts(family: Union[Family, str], z: float, n: int) -> Dict[str, float]:
    return asymptotic_prefactors(family, z).at(n)


# -- continuum functions ---------------------------------------------------


def _coth(x: float) -> float:
    q = math.exp(-2 * x)
    return (1 + q) / (1 - q)


def _csch2(x: float) -> float:
    q = math.exp(-2 * x)
    return 4 * q / (1 - q) ** 2


def _one_minus_exp(x: float) -> float:
    return -math.expm1(-2 * x)


def continuous_two_point(family: Union[Family, str], D: float, z: float) -> float:
    """``c gamma**3 cosh(gamma D) / sinh(gamma D)**3`` with ``c = 2`` (general) or ``4``."""

    family = _family(family)
    if not D > 0:
        raise ValueError(f"D must be positive, got {D}")
    gamma = critical_point(family, z).gamma
    prefactor = 2.0 if family is Family.GENERAL else 4.0
    q = math.exp(-2 * gamma * D)
    # cosh(y)/sinh(y)**3 == 4 q (1 + q) / (1 - q)**3 with q = exp(-2y)
    return prefactor * gamma**3 * 4 * q * (1 + q) / (1 - q) ** 3


@dataclass(frozen=True)
class ContinuumPoint:
    D12: float
    D13: float
    D23: float
    S: float
    T: float
    U: float
    value: Optional[float] = None

    @classmethod
    def from_distances(cls, D12: float, D13: float, D23: float) -> "ContinuumPoint":
        S = (D12 + D13 - D23) / 2
        T = (D12 + D23 - D13) / 2
        U = (D13 + D23 - D12) / 2
        if min(D12, D13, D23) <= 0 or min(S, T, U) <= 0:
            raise ValueError(f"distances {(D12, D13, D23)} violate the strict triangle inequality")
        return cls(D12, D13, D23, S, T, U)


def _three_point_constant(family: Family, param: float, gamma: float) -> float:
    if family is Family.GENERAL:
        r = param
        return 3 * (3 - r) ** 2 / (2 * (3 + r) ** 3 * gamma**2)
    v = param
    return (1 - 2 * v) ** 2 * (3 - 4 * v) / (4 * (1 - v) ** 2 * gamma**2)


def _bracket_factor(gamma: float, S: float, T: float, U: float) -> float:
    # 2 sh(gS')sh(gS)sh(gT)sh(gU) / (sh(g(S+T))sh(g(T+U))sh(g(U+S))), exponentials cancelled
    sigma = S + T + U
    numerator = 1.0
    for arg in (sigma, S, T, U):
        numerator *= _one_minus_exp(gamma * arg)
    denominator = 1.0
    for arg in (S + T, T + U, U + S):
        denominator *= _one_minus_exp(gamma * arg)
    return numerator / denominator


def three_point_potential(family: Union[Family, str], S: float, T: float, U: float, z: float) -> float:
    """Continuum limit of ``eps**2 F(S/eps, T/eps, U/eps)``; tends to a constant at infinity."""

    point = critical_point(family, z)
    if min(S, T, U) <= 0:
        raise ValueError(f"S, T, U must be positive, got {(S, T, U)}")
    constant = _three_point_constant(point.family, point.param, point.gamma)
    return constant * _bracket_factor(point.gamma, S, T, U) ** 2


def third_mixed_derivative(family: Union[Family, str], S: float, T: float, U: float, z: float) -> float:
    """Analytic ``d^3/dS dT dU`` of :func:`three_point_potential`.

    With ``L = log H`` and the potential ``C exp(2L)``, the derivative is
    ``C exp(2L) [8 L_S L_T L_U + 4 (L_ST L_U + L_SU L_T + L_TU L_S) + 2 L_STU]``.
    """

    point = critical_point(family, z)
    if min(S, T, U) <= 0:
        raise ValueError(f"S, T, U must be positive, got {(S, T, U)}")
    g = point.gamma
    sigma = S + T + U
    c_sigma = _coth(g * sigma)
    c_st, c_tu, c_us = _coth(g * (S + T)), _coth(g * (T + U)), _coth(g * (U + S))

    l_s = g * (c_sigma + _coth(g * S) - c_st - c_us)
    l_t = g * (c_sigma + _coth(g * T) - c_st - c_tu)
    l_u = g * (c_sigma + _coth(g * U) - c_tu - c_us)

    k_sigma = _csch2(g * sigma)
    l_st = g**2 * (_csch2(g * (S + T)) - k_sigma)
    l_su = g**2 * (_csch2(g * (U + S)) - k_sigma)
    l_tu = g**2 * (_csch2(g * (T + U)) - k_sigma)
    l_stu = 2 * g**3 * k_sigma * c_sigma

    bracket = 8 * l_s * l_t * l_u + 4 * (l_st * l_u + l_su * l_t + l_tu * l_s) + 2 * l_stu
    constant = _three_point_constant(point.family, point.param, g)
    return constant * _bracket_factor(g, S, T, U) ** 2 * bracket


def _ridders(fn: Callable[[float], float], h0: float, *, shrink: float = 1.4, table: int = 10) -> Tuple[float, float]:
    """Richardson-extrapolated limit of ``fn(h)`` as ``h -> 0`` for an even error series."""

    shrink2 = shrink * shrink
    tableau: List[List[float]] = [[0.0] * table for _ in range(table)]
    h = h0
    tableau[0][0] = fn(h)
    best, error = tableau[0][0], math.inf
    for i in range(1, table):
        h /= shrink
        tableau[0][i] = fn(h)
        factor = shrink2
        for j in range(1, i + 1):
            tableau[j][i] = (tableau[j - 1][i] * factor - tableau[j - 1][i - 1]) / (factor - 1)
            factor *= shrink2
            trial = max(
                abs(tableau[j][i] - tableau[j - 1][i]),
                abs(tableau[j][i] - tableau[j - 1][i - 1]),
            )
            if trial <= error:
                error, best = trial, tableau[j][i]
        if abs(tableau[i][i] - tableau[i - 1][i - 1]) >= 2 * error:
            break
    return best, error


def finite_difference_third_derivative(
    family: Union[Family, str], S: float, T: float, U: float, z: float, *, h0: float = 0.1
) -> Tuple[float, float]:
    """Central 8-point stencil for the mixed derivative, extrapolated in the step.

    Returns ``(value, error_estimate)``.
    """

    h0 = min(h0, min(S, T, U) / 2)

    def potential(s: float, t: float, u: float) -> float:
        return three_point_potential(family, s, t, u, z)

    def stencil(h: float) -> float:
        total = 0.0
        for ds in (1, -1):
            for dt in (1, -1):
                for du in (1, -1):
                    total += ds * dt * du * potential(S + ds * h, T + dt * h, U + du * h)
        return total / (8 * h**3)

    return _ridders(stencil, h0)


def continuous_three_point(
    family: Union[Family, str], D12: float, D13: float, D23: float, z: float
) -> float:
    """Continuum three-point function; half the mixed derivative for bipartite maps."""

    family = _family(family)
    point = ContinuumPoint.from_distances(D12, D13, D23)
    derivative = third_mixed_derivative(family, point.S, point.T, point.U, z)
    return derivative if family is Family.GENERAL else derivative / 2


def three_point_cross_check(
    family: Union[Family, str], D12: float, D13: float, D23: float, z: float
) -> Dict[str, float]:
    point = ContinuumPoint.from_distances(D12, D13, D23)
    analytic = third_mixed_derivative(family, point.S, point.T, point.U, z)
    numeric, estimate = finite_difference_third_derivative(family, point.S, point.T, point.U, z)
    return {
        "analytic": analytic,
        "finite_difference": numeric,
        "error_estimate": estimate,
        "rel_error": abs(analytic - numeric) / abs(analytic),
    }


# -- discrete side in floating point ---------------------------------------


def relation_g(family: Union[Family, str], x: float, alpha: float) -> float:
    family = _family(family)
    a = alpha
    if family is Family.GENERAL:
        p = 1 + x + a * x - 6 * a * x**2 + a * x**3 + a**2 * x**3 + a**2 * x**4
        return x * (1 - a * x) ** 3 * (1 - a * x**3) / p**2
    return x * (1 - a * x) ** 2 * (1 - a * x**4) / ((1 + x) ** 2 * (1 - a * x**2) ** 3)


def relation_z(family: Union[Family, str], x: float, alpha: float) -> float:
    family = _family(family)
    a = alpha
    if family is Family.GENERAL:
        return a * (1 - x) ** 3 * (1 - a**2 * x**3) / ((1 - a * x) ** 3 * (1 - a * x**3))
    return a * (1 - x) ** 2 * (1 - x**2) * (1 + a * x**2) / ((1 - a * x) ** 2 * (1 - a * x**4))


@dataclass(frozen=True)
class NumericParameters:
    family: Family
    g: float
    z: float
    x: float
    alpha: float


def _alpha_for(family: Family, x: float, z: float) -> float:
    if z == 1:
        return 1.0
    if z < 1:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = 1.0, (1 - 1e-13) / x
    return _bracketed_root(lambda a: relation_z(family, x, a) - z, lo, hi, f"alpha at x={x}, z={z}")


def numeric_parameters(family: Union[Family, str], g: float, z: float) -> NumericParameters:
    """Solve the parametrization for ``(x, alpha)`` at ``0 < g < g_crit(z)``.

    ``alpha`` is eliminated at fixed ``x`` by one Brent search; the outer
    search in ``x`` starts from the bracket suggested by
    ``x ~ 1 - 2 gamma eps`` with ``g = g_crit (1 - eps**4)``.
    """

    family = _family(family)
    point = critical_point(family, z)
    if not 0 < g < point.g_crit:
        raise ValueError(f"g must lie in (0, g_crit={point.g_crit}), got {g}")
    eps = (1 - g / point.g_crit) ** 0.25
    spread = point.gamma * eps

    def residual(x: float) -> float:
        return relation_g(family, x, _alpha_for(family, x, point.z)) - g

    lo = max(1e-12, 1 - 4 * spread)
    hi = 1 - 0.5 * spread
    if hi <= lo:
        hi = (1 + lo) / 2
    for _ in range(60):
        value = residual(hi)
        if np.isfinite(value) and value > 0:
            break
        hi = 1 - (1 - hi) / 2
    for _ in range(60):
        value = residual(lo)
        if np.isfinite(value) and value < 0:
            break
        lo = max(1e-12, lo / 2)
    x = _bracketed_root(residual, lo, hi, f"x at g={g}, z={z}")
    alpha = _alpha_for(family, x, point.z)
    logger.debug("numeric parameters %s g=%r z=%r -> x=%r alpha=%r", family.value, g, z, x, alpha)
    return NumericParameters(family, g, point.z, x, alpha)


def _log_bracket(s: int, x: float, alpha: float, power: int = 1) -> float:
    return math.log1p(-(alpha**power) * x**s)


def discrete_two_point(family: Union[Family, str], d: int, x: float, alpha: float) -> float:
    """Closed-form two-point function ``G_d`` evaluated at numeric ``(x, alpha)``."""

    family = _family(family)
    if d < 1:
        raise ValueError(f"distance must be at least 1, got {d}")
    b = lambda s: _log_bracket(s, x, alpha)  # noqa: E731
    if family is Family.GENERAL:
        return 3 * b(d + 1) + b(d + 3) - b(d) - 3 * b(d + 2)
    return 2 * b(d + 1) + b(d + 4) - b(d) - 2 * b(d + 3)


def _three_point_family(family: Family, s: int, t: int, u: int, x: float, alpha: float) -> float:
    def br(k: int, power: int = 1) -> float:
        return 1 - alpha**power * x**k

    if family is Family.GENERAL:
        core = br(s + 2) * br(t + 2) * br(u + 2) * br(s + t + u + 3)
        denominator = br(2) ** 3
        for k in (s + t + 2, t + u + 2, u + s + 2, s + t + 3, t + u + 3, u + s + 3):
            denominator *= br(k)
        return br(3) * core**2 / denominator
    core = alpha * x * br(3) * br(s + 1, 0) * br(t + 1, 0) * br(u + 1, 0) * br(s + t + u + 5, 2)
    core += br(1) * br(s + 3) * br(t + 3) * br(u + 3) * br(s + t + u + 3)
    denominator = br(2) ** 3 * br(3) ** 2
    for k in (s + t + 2, t + u + 2, u + s + 2, s + t + 4, t + u + 4, u + s + 4):
        denominator *= br(k)
    return br(4) * core**2 / denominator


def discrete_three_point_even(
    family: Union[Family, str], s: int, t: int, u: int, x: float, alpha: float
) -> float:
    """Triple finite difference of the even three-point family at ``s, t, u >= 1``."""

    family = _family(family)
    if min(s, t, u) < 1:
        raise ValueError(f"s, t, u must be at least 1, got {(s, t, u)}")
    total = 0.0
    for ds in (0, 1):
        for dt in (0, 1):
            for du in (0, 1):
                sign = -1 if (ds + dt + du) % 2 else 1
                total += sign * _three_point_family(family, s - ds, t - dt, u - du, x, alpha)
    return total


# -- convergence -----------------------------------------------------------


def _rounded_distance(value: float, eps: float, *, even: bool) -> int:
    if even:
        return max(2, 2 * int(round(value / (2 * eps))))
    return max(1, int(round(value / eps)))


def convergence_table(
    family: Union[Family, str],
    D: Union[float, Sequence[float]],
    z: float,
    eps_list: Sequence[float],
    *,
    three_point: bool = False,
) -> pd.DataFrame:
    """Compare rescaled discrete values with their continuum limit along ``eps``.

    Two-point rows report ``eps**-3 G_d`` against the continuum two-point
    function at ``D`` (``d`` even for bipartite maps).  With ``three_point``
    ``D`` is a triple ``(D12, D13, D23)`` and rows report
    ``eps**-1 G_{d12,d13,d23}`` against the mixed derivative of the
    continuum potential, which for bipartite maps is twice the continuum
    three-point function.
    """

    family = _family(family)
    point = critical_point(family, z)
    if three_point:
        distances = tuple(float(v) for v in (D if isinstance(D, Sequence) else (D, D, D)))
        if len(distances) != 3:
            raise ValueError("three-point convergence needs (D12, D13, D23)")
        target = ContinuumPoint.from_distances(*distances)
        continuum = third_mixed_derivative(family, target.S, target.T, target.U, z)
    else:
        if isinstance(D, Sequence):
            raise ValueError("two-point convergence takes a single distance")
        continuum = continuous_two_point(family, float(D), z)

    rows = []
    for eps in sorted((float(e) for e in eps_list), reverse=True):
        if not 0 < eps <= 0.2:
            raise ValueError(f"eps must lie in (0, 0.2], got {eps}")
        g = point.g_crit * (1 - eps**4)
        params = numeric_parameters(family, g, z)
        if three_point:
            s, t, u = (max(1, int(round(v / eps))) for v in (target.S, target.T, target.U))
            d = s + t
            discrete = discrete_three_point_even(family, s, t, u, params.x, params.alpha) / eps
        else:
            d = _rounded_distance(float(D), eps, even=family is Family.BIPARTITE)
            discrete = discrete_two_point(family, d, params.x, params.alpha) / eps**3
        rows.append(
            {
                "eps": eps,
                "g": g,
                "d": d,
                "discrete": discrete,
                "continuum": continuum,
                "rel_error": abs(discrete - continuum) / abs(continuum),
            }
        )
    table = pd.DataFrame(rows, columns=TABLE_COLUMNS)
    if not table["rel_error"].is_monotonic_decreasing:
        logger.warning(
            "relative error is not decreasing along eps for %s z=%s: %s",
            family.value,
            z,
            table["rel_error"].tolist(),
        )
    return table
