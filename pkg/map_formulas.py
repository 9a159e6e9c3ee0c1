"""Bracket calculus, generating-function families and distance-dependent functions.

All closed forms are ratios of brackets ``[s]_{x,a} = 1 - a x^s`` evaluated
over one :class:`parametrization.ParamSolution`. In univariate mode the
deformation ``alpha`` is the constant series 1, so the same code serves all
four regimes.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional, Sequence, Tuple, Union

from parametrization import Family, Mode, ParamSolution, tree_x
from power_series import TruncatedSeries

logger = logging.getLogger(__name__)


class FamilyError(ValueError):
    """Unknown family, wrong arity or family unavailable in a regime."""


class DistanceError(ValueError):
    """Invalid pair or triple of distances."""


class Deformation(str, Enum):
    NONE = "none"
    ALPHA = "alpha"
    ALPHA2 = "alpha2"
    UNIT = "unit"


_DEFORMATION_POWER = {
    Deformation.NONE: 0,
    Deformation.UNIT: 0,
    Deformation.ALPHA: 1,
    Deformation.ALPHA2: 2,
}


@dataclass(frozen=True)
class Bracket:
    exponent: int
    deformation: Deformation = Deformation.NONE

    def __post_init__(self) -> None:
        if self.exponent < 0:
            raise FamilyError(f"bracket exponent must be non-negative, got {self.exponent}")


class Route(str, Enum):
    DIRECT = "direct"
    RATIO = "ratio"
    TYPE_A = "typeA"
    TYPE_B = "typeB"


FAMILY_ARITY: Dict[str, int] = {
    "T": 1, "U": 1, "W": 1, "R": 1,
    "X": 2, "N": 2, "O": 2, "D": 2,
    "Y": 3, "Feven": 3, "Fodd": 3,
    "Ttilde": 1, "Utilde": 1, "Wtilde": 1, "Rtilde": 1,
    "Xtilde": 2, "Ntilde": 2, "Otilde": 2,
    "Ytilde": 3, "Ftilde": 3,
}

_BIVARIATE_ONLY = {"U", "W", "D", "Utilde", "Wtilde"}
_UNIVARIATE_ONLY = {"X", "O"}


@dataclass(frozen=True)
class FamilyId:
    name: str
    indices: Tuple[int, ...]

    def validate(self, mode: Mode) -> None:
        if self.name not in FAMILY_ARITY:
            raise FamilyError(f"unknown family '{self.name}' (known: {sorted(FAMILY_ARITY)})")
        arity = FAMILY_ARITY[self.name]
        if len(self.indices) != arity:
            raise FamilyError(f"family {self.name} takes {arity} indices, got {len(self.indices)}")
        tilde = self.name.endswith("tilde")
        if tilde != (mode.family is Family.BIPARTITE):
            raise FamilyError(f"family {self.name} is not defined for {mode.value} maps")
        if not mode.bivariate and self.name in _BIVARIATE_ONLY:
            raise FamilyError(f"family {self.name} degenerates in univariate mode; use the T family")
        if mode.bivariate and self.name in _UNIVARIATE_ONLY:
            raise FamilyError(f"family {self.name} has no bivariate closed form")


@dataclass(frozen=True)
class DistanceSpec:
    """Validated distance pair or triple with its derived indices."""

    distances: Tuple[int, ...]
    parity: Optional[str] = None
    stu: Tuple[int, ...] = field(default=())
    aligned: bool = False

    @classmethod
    def two(cls, d12: int) -> "DistanceSpec":
        if d12 < 1:
            raise DistanceError(f"distance must be positive, got {d12}")
        return cls(distances=(d12,), parity=None, stu=(d12,), aligned=False)

    @classmethod
    def three(cls, d12: int, d13: int, d23: int, *, bipartite: bool = False) -> "DistanceSpec":
        distances = (d12, d13, d23)
        if min(distances) < 1:
            raise DistanceError(f"distance must be positive, got {distances}")
        if d12 > d13 + d23 or d13 > d12 + d23 or d23 > d12 + d13:
            raise DistanceError(f"triangular inequality violated by {distances}")
        total = d12 + d13 + d23
        if total % 2 == 0:
            stu = ((d12 + d13 - d23) // 2, (d12 + d23 - d13) // 2, (d13 + d23 - d12) // 2)
            zeros = stu.count(0)
            if zeros > 1:
                raise DistanceError("at most one of s, t, u can be zero")
            return cls(distances=distances, parity="even", stu=stu, aligned=zeros == 1)
        if bipartite:
            raise DistanceError(f"bipartite requires even total distance, got {distances}")
        stu = ((d12 + d13 - d23 + 1) // 2, (d12 + d23 - d13 + 1) // 2, (d13 + d23 - d12 + 1) // 2)
        return cls(distances=distances, parity="odd", stu=stu, aligned=False)

    @classmethod
    def parse(cls, values: Sequence[int], *, bipartite: bool = False) -> "DistanceSpec":
        if len(values) == 1:
            return cls.two(values[0])
        if len(values) == 3:
            return cls.three(values[0], values[1], values[2], bipartite=bipartite)
        raise DistanceError(f"expected 1 or 3 distances, got {len(values)}")


FamilyFn = Callable[..., TruncatedSeries]


def finite_difference(fn: FamilyFn, indices: Sequence[int], which: Iterable[int]) -> TruncatedSeries:
    """Alternating sum of ``fn`` over the corners obtained by lowering ``which`` positions."""

    positions = list(which)
    total: Optional[TruncatedSeries] = None
    for shifts in itertools.product((0, 1), repeat=len(positions)):
        corner = list(indices)
        for position, shift in zip(positions, shifts):
            corner[position] -= shift
        term = fn(*corner)
        if sum(shifts) % 2:
            term = -term
        total = term if total is None else total + term
    assert total is not None
    return total


class FormulaEvaluator:
    """Evaluates brackets and families for one parametrization, with caching."""

    def __init__(
        self,
        params: ParamSolution,
        overrides: Optional[Dict[str, FamilyFn]] = None,
    ) -> None:
        self.params = params
        self.mode = params.mode
        self.order = params.order
        self.ring = params.ring
        self._x = params.x
        self._alpha = params.alpha_or_one()
        self._alpha_powers = {0: self._one(), 1: self._alpha, 2: self._alpha * self._alpha}
        self._g = params.g()
        self._z = params.z()
        self._x_powers = [self._one()]
        self._cache: Dict[Tuple, TruncatedSeries] = {}
        self._overrides: Dict[str, FamilyFn] = dict(overrides or {})

    def with_overrides(self, **overrides: FamilyFn) -> "FormulaEvaluator":
        """Copy of this evaluator where the named families are replaced."""

        return FormulaEvaluator(self.params, {**self._overrides, **overrides})

    # -- primitives -----------------------------------------------------
    def _one(self) -> TruncatedSeries:
        return TruncatedSeries.one(self.params.order, self.params.ring)

    def zero(self) -> TruncatedSeries:
        return TruncatedSeries.zero(self.order, self.ring)

    @property
    def g(self) -> TruncatedSeries:
        return self._g

    @property
    def z(self) -> TruncatedSeries:
        return self._z

    def x_power(self, s: int) -> TruncatedSeries:
        while len(self._x_powers) <= s:
            self._x_powers.append(self._x_powers[-1] * self._x)
        return self._x_powers[s]

    def _br(self, s: int, power: int = 1) -> TruncatedSeries:
        """``1 - alpha^power x^s``."""

        key = ("bracket", s, power)
        if key not in self._cache:
            self._cache[key] = 1 - self._alpha_powers[power] * self.x_power(s)
        return self._cache[key]

    def bracket(self, bracket: Bracket) -> TruncatedSeries:
        power = _DEFORMATION_POWER[Deformation(bracket.deformation)]
        if power and not self.mode.bivariate:
            raise FamilyError(f"deformation {bracket.deformation.value} needs bivariate parameters")
        return self._br(bracket.exponent, power)

    def _brackets(self, *factors: Tuple[int, int]) -> TruncatedSeries:
        result = self._one()
        for s, power in factors:
            result = result * self._br(s, power)
        return result

    def _ratio(self, numerator: Iterable[Tuple[int, int]], denominator: Iterable[Tuple[int, int]]) -> TruncatedSeries:
        return self._brackets(*numerator) / self._brackets(*denominator)

    # -- families -------------------------------------------------------
    def family(self, name: str, *indices: int) -> TruncatedSeries:
        """Value of family ``name`` at ``indices`` with boundary conventions."""

        if name not in FAMILY_ARITY:
            raise FamilyError(f"unknown family '{name}' (known: {sorted(FAMILY_ARITY)})")
        if len(indices) != FAMILY_ARITY[name]:
            raise FamilyError(f"family {name} takes {FAMILY_ARITY[name]} indices, got {len(indices)}")
        if name in self._overrides:
            return self._overrides[name](*indices)
        key = (name, indices)
        if key not in self._cache:
            self._cache[key] = getattr(self, f"_family_{name}")(*indices)
        return self._cache[key]

    def _require_non_negative(self, name: str, indices: Sequence[int]) -> None:
        if min(indices) < 0:
            raise FamilyError(f"family {name} has no convention for negative index {tuple(indices)}")

    def _base(self, name: str) -> TruncatedSeries:
        key = ("base", name)
        if key in self._cache:
            return self._cache[key]
        x, a = self._x, self._alpha
        if name in ("T", "U"):
            x2 = self.x_power(2)
            x3 = self.x_power(3)
            p = 1 + x + a * x - 6 * a * x2 + a * x3 + a * a * x3 + a * a * self.x_power(4)
            if name == "T":
                value = a * self._br(1, 0) ** 2 * p / (self._br(1) ** 3 * self._br(3))
            else:
                value = p / (self._br(1) * self._br(3))
        elif name == "Ttilde":
            value = a * self._br(2, 0) ** 2 * self._br(2) / (self._br(1) ** 2 * self._br(4))
        elif name == "Utilde":
            value = (1 + x) * self._br(2) ** 2 / (self._br(1) * self._br(4))
        else:
            raise FamilyError(f"no base series for {name}")
        self._cache[key] = value
        return value

    def _family_T(self, s: int) -> TruncatedSeries:
        self._require_non_negative("T", (s,))
        if s == 0:
            return self.zero()
        return self._base("T") * self._ratio([(s, 0), (s + 3, 2)], [(s + 1, 1), (s + 2, 1)])

    def _family_U(self, s: int) -> TruncatedSeries:
        self._require_non_negative("U", (s,))
        if s == 0:
            return self.zero()
        return self._base("U") * self._ratio([(s, 0), (s + 3, 1)], [(s + 1, 0), (s + 2, 1)])

    def _family_W(self, s: int) -> TruncatedSeries:
        u = self.family("U", s)
        return u / (1 + self._g * u * self.family("T", s + 1))

    def _family_R(self, u: int) -> TruncatedSeries:
        self._require_non_negative("R", (u,))
        return self._ratio([(2, 1), (2, 1), (u + 1, 1), (u + 3, 1)], [(1, 1), (3, 1), (u + 2, 1), (u + 2, 1)])

    def _family_N(self, s: int, t: int) -> TruncatedSeries:
        self._require_non_negative("N", (s, t))
        if s == 0 or t == 0:
            return self._one()
        return self._ratio(
            [(3, 1), (s + 2, 1), (t + 2, 1), (s + t + 3, 1)],
            [(2, 1), (s + 3, 1), (t + 3, 1), (s + t + 2, 1)],
        )

    def _family_X(self, s: int, t: int) -> TruncatedSeries:
        self._require_non_negative("X", (s, t))
        if s == 0 or t == 0:
            return self._one()
        return self._ratio(
            [(3, 1), (s + 1, 1), (t + 1, 1), (s + t + 3, 1)],
            [(1, 1), (s + 3, 1), (t + 3, 1), (s + t + 1, 1)],
        )

    def _family_O(self, s: int, t: int) -> TruncatedSeries:
        self._require_non_negative("O", (s, t))
        if s == 0 or t == 0:
            return self.zero()
        return self._x * self._ratio(
            [(3, 1), (s, 1), (t, 1), (s + t + 3, 1), (s + t + 3, 1)],
            [(2, 1), (s + 3, 1), (t + 3, 1), (s + t + 1, 1), (s + t + 2, 1)],
        )

    def _family_D(self, s: int, t: int) -> TruncatedSeries:
        value = self.family("U", s) * self.family("U", t) * self.family("N", s, t)
        if self.mode.bivariate:
            value = value + (self._z - 1) * self.family("W", s) * self.family("W", t)
        return value

    def _family_Y(self, s: int, t: int, u: int) -> TruncatedSeries:
        self._require_non_negative("Y", (s, t, u))
        return self._ratio(
            [(s + 3, 1), (t + 3, 1), (u + 3, 1), (s + t + u + 3, 1)],
            [(3, 1), (s + t + 3, 1), (t + u + 3, 1), (u + s + 3, 1)],
        )

    def _family_Feven(self, s: int, t: int, u: int) -> TruncatedSeries:
        if min(s, t, u) < 0:
            return self.zero()
        if 0 in (s, t, u):
            rest = sorted((s, t, u), reverse=True)
            return self.family("N", rest[0], rest[1])
        numerator = [(3, 1)] + [(k, 1) for k in (s + 2, t + 2, u + 2, s + t + u + 3)] * 2
        denominator = [(2, 1)] * 3 + [
            (k, 1) for k in (s + t + 2, t + u + 2, u + s + 2, s + t + 3, t + u + 3, u + s + 3)
        ]
        return self._ratio(numerator, denominator)

    def _family_Fodd(self, s: int, t: int, u: int) -> TruncatedSeries:
        if min(s, t, u) <= 0:
            return self.zero()
        core = self._alpha * self._brackets((s, 0), (t, 0), (u, 0), (s + t + u + 3, 2))
        denominator = [(2, 1)] * 3 + [
            (k, 1) for k in (s + t + 1, t + u + 1, u + s + 1, s + t + 2, t + u + 2, u + s + 2)
        ]
        return self.x_power(3) * self._br(3) * core * core / self._brackets(*denominator)

    def _family_Ttilde(self, s: int) -> TruncatedSeries:
        self._require_non_negative("Ttilde", (s,))
        if s == 0:
            return self.zero()
        return self._base("Ttilde") * self._ratio([(s, 0), (s + 4, 2)], [(s + 1, 1), (s + 3, 1)])

    def _family_Utilde(self, s: int) -> TruncatedSeries:
        self._require_non_negative("Utilde", (s,))
        if s == 0:
            return self.zero()
        return self._base("Utilde") * self._ratio([(s, 0), (s + 4, 1)], [(s + 1, 0), (s + 3, 1)])

    def _family_Wtilde(self, s: int) -> TruncatedSeries:
        u = self.family("Utilde", s)
        return u / (1 + self._g * u * self.family("Ttilde", s + 1))

    def _family_Rtilde(self, u: int) -> TruncatedSeries:
        self._require_non_negative("Rtilde", (u,))
        return self._ratio([(2, 1), (3, 1), (u + 1, 1), (u + 4, 1)], [(1, 1), (4, 1), (u + 2, 1), (u + 3, 1)])

    def _family_Xtilde(self, s: int, t: int) -> TruncatedSeries:
        self._require_non_negative("Xtilde", (s, t))
        if s == 0 or t == 0:
            return self._one()
        return self._ratio(
            [(4, 1), (s + 2, 1), (t + 2, 1), (s + t + 4, 1)],
            [(2, 1), (s + 4, 1), (t + 4, 1), (s + t + 2, 1)],
        )

    def _family_Ntilde(self, s: int, t: int) -> TruncatedSeries:
        return self.family("Xtilde", s, t)

    def _family_Otilde(self, s: int, t: int) -> TruncatedSeries:
        self._require_non_negative("Otilde", (s, t))
        return self.zero()

    def _ytilde_core(self, s: int, t: int, u: int) -> TruncatedSeries:
        first = self._alpha * self._x * self._br(3) * self._brackets(
            (s + 1, 0), (t + 1, 0), (u + 1, 0), (s + t + u + 5, 2)
        )
        second = self._brackets((1, 1), (s + 3, 1), (t + 3, 1), (u + 3, 1), (s + t + u + 3, 1))
        return first + second

    def _family_Ytilde(self, s: int, t: int, u: int) -> TruncatedSeries:
        self._require_non_negative("Ytilde", (s, t, u))
        prefactor = self._ratio(
            [(s + 4, 1), (t + 4, 1), (u + 4, 1)],
            [(3, 1), (4, 1), (s + 2, 1), (t + 2, 1), (u + 2, 1), (s + t + 4, 1), (t + u + 4, 1), (u + s + 4, 1)],
        )
        return prefactor * self._ytilde_core(s, t, u)

    def _family_Ftilde(self, s: int, t: int, u: int) -> TruncatedSeries:
        if min(s, t, u) < 0:
            return self.zero()
        if 0 in (s, t, u):
            rest = sorted((s, t, u), reverse=True)
            return self.family("Xtilde", rest[0], rest[1])
        core = self._ytilde_core(s, t, u)
        denominator = [(2, 1)] * 3 + [(3, 1)] * 2 + [
            (k, 1) for k in (s + t + 2, t + u + 2, u + s + 2, s + t + 4, t + u + 4, u + s + 4)
        ]
        return self._br(4) * core * core / self._brackets(*denominator)

    # -- derived quantities --------------------------------------------
    def _tilde(self, name: str) -> str:
        return f"{name}tilde" if self.mode.family is Family.BIPARTITE else name

    def r_from_definition(self, u: int) -> TruncatedSeries:
        """``1 + g U_u T_{u+1}`` (tilde families for bipartite maps)."""

        if u < 0:
            raise FamilyError(f"R has no convention for negative index {u}")
        upper = self.family(self._tilde("U"), u) if self.mode.bivariate else self.family(self._tilde("T"), u)
        return 1 + self._g * upper * self.family(self._tilde("T"), u + 1)

    def chain_family(self) -> str:
        """Name of the chain family entering the type-A route and aligned case."""

        return "Xtilde" if self.mode.family is Family.BIPARTITE else "N"

    def log_family(self, name: str, *indices: int) -> TruncatedSeries:
        key = ("log", name, indices)
        if key not in self._cache:
            self._cache[key] = self.family(name, *indices).log()
        return self._cache[key]

    def finite_difference(
        self,
        family: Union[str, FamilyFn],
        indices: Sequence[int],
        which: Iterable[int],
    ) -> TruncatedSeries:
        fn: FamilyFn
        if isinstance(family, str):
            name = family
            fn = lambda *idx: self.family(name, *idx)  # noqa: E731
        else:
            fn = family
        return finite_difference(fn, indices, which)

    def _log_inverse_one_minus_gd(self, s: int, t: int) -> TruncatedSeries:
        key = ("logB", s, t)
        if key not in self._cache:
            if s < 0 or t < 0:
                raise FamilyError(f"no convention for negative index {(s, t)}")
            if s == 0 or t == 0:
                self._cache[key] = self.zero()
            else:
                self._cache[key] = -(1 - self._g * self.family("D", s, t)).log()
        return self._cache[key]

    def two_point(
        self,
        distance: Union[int, DistanceSpec],
        route: Union[Route, str] = Route.DIRECT,
        split: Optional[Tuple[int, int]] = None,
    ) -> TruncatedSeries:
        spec = distance if isinstance(distance, DistanceSpec) else DistanceSpec.two(distance)
        if len(spec.distances) != 1:
            raise DistanceError("two-point functions take a single distance")
        d = spec.distances[0]
        route = Route(route)
        bipartite = self.mode.family is Family.BIPARTITE

        if route is Route.DIRECT:
            if bipartite:
                return self._ratio([(d + 1, 1), (d + 1, 1), (d + 4, 1)], [(d, 1), (d + 3, 1), (d + 3, 1)]).log()
            return self._ratio(
                [(d + 1, 1)] * 3 + [(d + 3, 1)],
                [(d, 1)] + [(d + 2, 1)] * 3,
            ).log()

        if route is Route.RATIO:
            return (self.r_from_definition(d) / self.r_from_definition(d - 1)).log()

        if route is Route.TYPE_A:
            s, t = split if split is not None else (math.ceil(d / 2), d - math.ceil(d / 2))
            if s < 1 or t < 1 or s + t != d:
                raise DistanceError(f"type A route needs s, t >= 1 with s + t = {d}, got {(s, t)}")
            name = self.chain_family()
            return self.finite_difference(lambda a, b: self.log_family(name, a, b), (s, t), (0, 1))

        if bipartite:
            raise DistanceError("type B route does not exist for bipartite maps")
        s, t = split if split is not None else (math.ceil((d + 1) / 2), d + 1 - math.ceil((d + 1) / 2))
        if s < 1 or t < 1 or s + t - 1 != d:
            raise DistanceError(f"type B route needs s, t >= 1 with s + t - 1 = {d}, got {(s, t)}")
        return self.finite_difference(self._log_inverse_one_minus_gd, (s, t), (0, 1))

    def three_point(self, spec: Union[DistanceSpec, Sequence[int]]) -> TruncatedSeries:
        bipartite = self.mode.family is Family.BIPARTITE
        if not isinstance(spec, DistanceSpec):
            spec = DistanceSpec.parse(tuple(spec), bipartite=bipartite)
        if len(spec.distances) != 3:
            raise DistanceError("three-point functions take three distances")
        if bipartite and spec.parity != "even":
            raise DistanceError(f"bipartite requires even total distance, got {spec.distances}")
        if spec.aligned:
            s, t = sorted(spec.stu, reverse=True)[:2]
            return self.finite_difference(self.chain_family(), (s, t), (0, 1))
        if bipartite:
            name = "Ftilde"
        else:
            name = "Feven" if spec.parity == "even" else "Fodd"
        return self.finite_difference(name, spec.stu, (0, 1, 2))


@lru_cache(maxsize=16)
def evaluator_for(params: ParamSolution) -> FormulaEvaluator:
    return FormulaEvaluator(params)


def _check_regime(params: ParamSolution, regime: Optional[Union[Mode, str]]) -> None:
    if regime is not None and Mode(regime) is not params.mode:
        raise FamilyError(f"regime {Mode(regime).value} does not match parameters {params.mode.value}")


def eval_bracket(bracket: Bracket, params: ParamSolution) -> TruncatedSeries:
    return evaluator_for(params).bracket(bracket)


def eval_family(family: FamilyId, params: ParamSolution) -> TruncatedSeries:
    family.validate(params.mode)
    return evaluator_for(params).family(family.name, *family.indices)


def two_point(
    distance: Union[int, DistanceSpec],
    params: ParamSolution,
    route: Union[Route, str] = Route.DIRECT,
    *,
    split: Optional[Tuple[int, int]] = None,
    regime: Optional[Union[Mode, str]] = None,
) -> TruncatedSeries:
    _check_regime(params, regime)
    return evaluator_for(params).two_point(distance, route, split)


def three_point(
    distances: Union[DistanceSpec, Sequence[int]],
    params: ParamSolution,
    *,
    regime: Optional[Union[Mode, str]] = None,
) -> TruncatedSeries:
    _check_regime(params, regime)
    return evaluator_for(params).three_point(distances)


def two_point_table(params: ParamSolution, max_distance: int) -> Dict[int, TruncatedSeries]:
    evaluator = evaluator_for(params)
    return {d: evaluator.two_point(d) for d in range(1, max_distance + 1)}


def valid_triples(max_distance: int, *, bipartite: bool = False) -> Iterable[DistanceSpec]:
    for d12, d13, d23 in itertools.product(range(1, max_distance + 1), repeat=3):
        try:
            yield DistanceSpec.three(d12, d13, d23, bipartite=bipartite)
        except DistanceError:
            continue


def three_point_table(params: ParamSolution, max_distance: int) -> Dict[Tuple[int, int, int], TruncatedSeries]:
    evaluator = evaluator_for(params)
    bipartite = params.family is Family.BIPARTITE
    return {
        spec.distances: evaluator.three_point(spec)
        for spec in valid_triples(max_distance, bipartite=bipartite)
    }


def tree_limit_three_point(parity: str, stu: Sequence[int], order: int) -> TruncatedSeries:
    """Leading ``z``-coefficient of the three-point function as ``z -> 0``.

    Even and bipartite cases give ``2 x^(s+t+u)``, the odd case
    ``x^(s+t+u) * prod_i (2 - x^i - x^(i-1)) / (1 - x)`` with ``x = g Cat(g)^2``.
    """

    if len(stu) != 3 or min(stu) < 1:
        raise DistanceError(f"tree limit needs three positive indices, got {tuple(stu)}")
    x = tree_x(order)
    total = sum(stu)
    if parity in ("even", "bipartite"):
        return 2 * x ** total
    if parity != "odd":
        raise DistanceError(f"unknown parity '{parity}'")
    result = x ** total
    for i in stu:
        result = result * (2 - x ** i - x ** (i - 1)) / (1 - x)
    return result
