"""Exact truncated power series in ``g`` over the rationals or over ``Q[z]``.

Coefficients are :class:`fractions.Fraction` values (ring ``Q``) or
:class:`ZPolynomial` values (ring ``Q[z]``, ``z`` being the face weight).
Every operation keeps the truncation order of its operands and never rounds.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction, "ZPolynomial"]


class SeriesError(ArithmeticError):
    """Raised on invalid series arithmetic (ring/order mismatch, non-units)."""


def format_rational(value: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when integral)."""

    return str(Fraction(value))


def parse_rational(raw: Union[str, int]) -> Fraction:
    return Fraction(raw)


class ZPolynomial:
    """Polynomial in ``z`` with rational coefficients, stored canonically.

    ``coeffs[k]`` is the coefficient of ``z**k``; trailing zeros are stripped
    so that equal polynomials have equal coefficient tuples.  ``max_degree``
    bounds the degree after stripping; counting coefficients of maps with
    ``n`` edges pass ``n + 1``, the largest possible number of faces.
    """

    __slots__ = ("coeffs",)

    def __init__(
        self, coeffs: Iterable[Union[int, Fraction]] = (), *, max_degree: Optional[int] = None
    ) -> None:
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        if max_degree is not None and len(values) - 1 > max_degree:
            raise SeriesError(f"z-degree {len(values) - 1} exceeds the bound {max_degree}")
        self.coeffs: Tuple[Fraction, ...] = tuple(values)

    @classmethod
    def constant(cls, value: Union[int, Fraction]) -> "ZPolynomial":
        return cls((value,))

    @classmethod
    def z(cls) -> "ZPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree of the polynomial, ``-1`` for the zero polynomial."""

        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def evaluate(self, value: Union[int, Fraction, float]) -> Any:
        if isinstance(value, float):
            total = 0.0
            for coeff in reversed(self.coeffs):
                total = total * value + float(coeff)
            return total
        result = Fraction(0)
        for coeff in reversed(self.coeffs):
            result = result * value + coeff
        return result

    @staticmethod
    def _coerce(other: object) -> "ZPolynomial":
        if isinstance(other, ZPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return ZPolynomial.constant(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "ZPolynomial":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        size = max(len(self.coeffs), len(rhs.coeffs))
        return ZPolynomial(self.coefficient(k) + rhs.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self) -> "ZPolynomial":
        return ZPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: object) -> "ZPolynomial":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "ZPolynomial":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "ZPolynomial":
        if isinstance(other, (int, Fraction)):
            return ZPolynomial(c * other for c in self.coeffs)
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        if not self.coeffs or not rhs.coeffs:
            return ZPolynomial()
        product = [Fraction(0)] * (len(self.coeffs) + len(rhs.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(rhs.coeffs):
                product[i + j] += a * b
        return ZPolynomial(product)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ZPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ZPolynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("ZPolynomial", self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*z")
            else:
                terms.append(f"{c}*z^{k}")
        return " + ".join(terms)

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, raw: Sequence[Union[str, int]]) -> "ZPolynomial":
        return cls(parse_rational(item) for item in raw)


@dataclass(frozen=True)
class CoefficientRing:
    """Descriptor of a coefficient ring usable by :class:`TruncatedSeries`."""

    name: str
    zero: Any
    one: Any
    coerce: Callable[[Any], Any]
    is_unit: Callable[[Any], bool]
    inverse: Callable[[Any], Any]
    to_json: Callable[[Any], Any]
    from_json: Callable[[Any], Any]


def _coerce_rational(value: Any) -> Fraction:
    if isinstance(value, ZPolynomial):
        if value.is_constant():
            return value.coefficient(0)
        raise SeriesError("cannot coerce a non-constant z-polynomial into Q")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise SeriesError(f"unsupported rational coefficient {value!r}")


def _coerce_polynomial(value: Any) -> ZPolynomial:
    if isinstance(value, ZPolynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return ZPolynomial.constant(value)
    raise SeriesError(f"unsupported z-polynomial coefficient {value!r}")


def _invert_rational(value: Fraction) -> Fraction:
    if value == 0:
        raise SeriesError("division by zero")
    return 1 / value


def _invert_polynomial(value: ZPolynomial) -> ZPolynomial:
    if value.is_zero() or not value.is_constant():
        raise SeriesError(f"z-polynomial {value!r} is not invertible")
    return ZPolynomial.constant(1 / value.coefficient(0))


RATIONALS = CoefficientRing(
    name="Q",
    zero=Fraction(0),
    one=Fraction(1),
    coerce=_coerce_rational,
    is_unit=lambda value: value != 0,
    inverse=_invert_rational,
    to_json=format_rational,
    from_json=parse_rational,
)

Z_POLYNOMIALS = CoefficientRing(
    name="Q[z]",
    zero=ZPolynomial(),
    one=ZPolynomial.constant(1),
    coerce=_coerce_polynomial,
    is_unit=lambda value: (not value.is_zero()) and value.is_constant(),
    inverse=_invert_polynomial,
    to_json=lambda value: value.to_json(),
    from_json=ZPolynomial.from_json,
)

RINGS: Dict[str, CoefficientRing] = {ring.name: ring for ring in (RATIONALS, Z_POLYNOMIALS)}


def ring_by_name(name: str) -> CoefficientRing:
    """Return the ring registered under *name* (``"Q"``, ``"Q[z]"`` or ``"qz"``)."""

    normalized = {"q": "Q", "qz": "Q[z]", "q[z]": "Q[z]"}.get(name.lower(), name)
    if normalized not in RINGS:
        raise KeyError(f"Unknown coefficient ring '{name}' (known: {sorted(RINGS)})")
    return RINGS[normalized]


class TruncatedSeries:
    """Power series ``sum c_k g^k`` known exactly up to ``g**order``."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(
        self,
        coeffs: Iterable[Any],
        order: int,
        ring: CoefficientRing = RATIONALS,
    ) -> None:
        if order < 0:
            raise SeriesError(f"truncation order must be non-negative, got {order}")
        values = [ring.coerce(c) for c in coeffs][: order + 1]
        values.extend([ring.zero] * (order + 1 - len(values)))
        self.ring = ring
        self.order = order
        self.coeffs: Tuple[Any, ...] = tuple(values)

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, value: Scalar, order: int, ring: CoefficientRing = RATIONALS) -> "TruncatedSeries":
        return cls((value,), order, ring)

    @classmethod
    def zero(cls, order: int, ring: CoefficientRing = RATIONALS) -> "TruncatedSeries":
        return cls((), order, ring)

    @classmethod
    def one(cls, order: int, ring: CoefficientRing = RATIONALS) -> "TruncatedSeries":
        return cls((ring.one,), order, ring)

    @classmethod
    def generator(cls, order: int, ring: CoefficientRing = RATIONALS) -> "TruncatedSeries":
        """The series ``g`` itself."""

        return cls((ring.zero, ring.one), order, ring)

    # -- access -------------------------------------------------------
    def coefficient(self, k: int) -> Any:
        if k < 0 or k > self.order:
            raise SeriesError(f"coefficient {k} outside truncation order {self.order}")
        return self.coeffs[k]

    def __getitem__(self, k: int) -> Any:
        return self.coefficient(k)

    def __len__(self) -> int:
        return self.order + 1

    def is_zero(self) -> bool:
        return all(c == self.ring.zero for c in self.coeffs)

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, ``order + 1`` for zero."""

        for k, c in enumerate(self.coeffs):
            if c != self.ring.zero:
                return k
        return self.order + 1

    # -- helpers ------------------------------------------------------
    def _operand(self, other: object) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            if other.ring is not self.ring:
                raise SeriesError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
            if other.order != self.order:
                raise SeriesError(f"order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction, ZPolynomial)):
            return TruncatedSeries.constant(other, self.order, self.ring)
        return NotImplemented  # type: ignore[return-value]

    def _new(self, coeffs: Iterable[Any]) -> "TruncatedSeries":
        return TruncatedSeries(coeffs, self.order, self.ring)

    # -- ring operations ----------------------------------------------
    def __add__(self, other: object) -> "TruncatedSeries":
        rhs = self._operand(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self._new(a + b for a, b in zip(self.coeffs, rhs.coeffs))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return self._new(-c for c in self.coeffs)

    def __sub__(self, other: object) -> "TruncatedSeries":
        rhs = self._operand(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self._new(a - b for a, b in zip(self.coeffs, rhs.coeffs))

    def __rsub__(self, other: object) -> "TruncatedSeries":
        lhs = self._operand(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self._new(c * other for c in self.coeffs)
        rhs = self._operand(other)
        if rhs is NotImplemented:
            return NotImplemented
        zero = self.ring.zero
        product = [zero] * (self.order + 1)
        left = self.coeffs
        right = rhs.coeffs
        for i, a in enumerate(left):
            if a == zero:
                continue
            for j in range(self.order + 1 - i):
                b = right[j]
                if b != zero:
                    product[i + j] = product[i + j] + a * b
        return self._new(product)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; the constant term must be a ring unit."""

        head = self.coeffs[0]
        if not self.ring.is_unit(head):
            raise SeriesError(f"constant term {head!r} is not invertible in {self.ring.name}")
        inv_head = self.ring.inverse(head)
        zero = self.ring.zero
        result = [inv_head]
        for k in range(1, self.order + 1):
            acc = zero
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if a != zero:
                    acc = acc + a * result[k - j]
            result.append(-(acc * inv_head))
        return self._new(result)

    def __truediv__(self, other: object) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise SeriesError("division by zero")
            return self * (1 / Fraction(other))
        rhs = self._operand(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> "TruncatedSeries":
        lhs = self._operand(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int):
            raise SeriesError("only integer powers are supported")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.one(self.order, self.ring)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- calculus -----------------------------------------------------
    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; the top coefficient becomes unknown and is set to 0."""

        return self._new(self.coeffs[k] * k for k in range(1, self.order + 1))

    def integral(self) -> "TruncatedSeries":
        """Formal antiderivative with zero constant term."""

        return self._new(
            [self.ring.zero] + [self.coeffs[k - 1] * Fraction(1, k) for k in range(1, self.order + 1)]
        )

    def log(self) -> "TruncatedSeries":
        """Logarithm of a series with constant term 1, as the integral of a'/a."""

        if self.coeffs[0] != self.ring.one:
            raise SeriesError(f"log requires constant term 1, got {self.coeffs[0]!r}")
        return (self.derivative() * self.inverse()).integral()

    def exp(self) -> "TruncatedSeries":
        if self.coeffs[0] != self.ring.zero:
            raise SeriesError(f"exp requires constant term 0, got {self.coeffs[0]!r}")
        zero = self.ring.zero
        result = [self.ring.one]
        for k in range(1, self.order + 1):
            acc = zero
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if a != zero:
                    acc = acc + a * result[k - j] * j
            result.append(acc * Fraction(1, k))
        return self._new(result)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``g**k`` (``k >= 0``)."""

        if k < 0:
            raise SeriesError(f"negative shift {k} would need coefficients beyond the series")
        return self._new([self.ring.zero] * k + list(self.coeffs))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute ``inner`` (zero constant term) for ``g``."""

        inner = self._operand(inner)
        if inner.coeffs[0] != self.ring.zero:
            raise SeriesError("composition requires an inner series with zero constant term")
        result = TruncatedSeries.zero(self.order, self.ring)
        for coeff in reversed(self.coeffs):
            result = result * inner + TruncatedSeries.constant(coeff, self.order, self.ring)
        return result

    # -- structural ---------------------------------------------------
    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order, self.ring)

    def map_coeffs(self, fn: Callable[[Any], Any], ring: CoefficientRing) -> "TruncatedSeries":
        """Apply a coefficient-wise ring map, e.g. ``z -> 1`` or ``[z^k]``."""

        return TruncatedSeries((fn(c) for c in self.coeffs), self.order, ring)

    def specialize(self, value: Union[int, Fraction]) -> "TruncatedSeries":
        """Evaluate every ``Q[z]`` coefficient at ``z = value``."""

        if self.ring is RATIONALS:
            return self
        return self.map_coeffs(lambda poly: poly.evaluate(Fraction(value)), RATIONALS)

    def z_coefficient(self, k: int) -> "TruncatedSeries":
        """Series in ``g`` of the ``z**k`` coefficients."""

        if self.ring is RATIONALS:
            raise SeriesError("z-coefficient extraction needs a Q[z] series")
        return self.map_coeffs(lambda poly: poly.coefficient(k), RATIONALS)

    def respects_face_bound(self, extra: int = 1) -> bool:
        """Whether each ``[g^n]`` coefficient has ``z``-degree at most ``n + extra``."""

        if self.ring is RATIONALS:
            return True
        return all(poly.degree <= k + extra for k, poly in enumerate(self.coeffs))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring is other.ring and self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring.name, self.order, self.coeffs))

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == self.ring.zero:
                continue
            text = f"({c!r})" if isinstance(c, ZPolynomial) else str(c)
            terms.append(text if k == 0 else f"{text}*g^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(g^{self.order + 1})"

    # -- serialization ------------------------------------------------
    def to_json(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "ring": self.ring.name,
            "coeffs": [self.ring.to_json(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> "TruncatedSeries":
        try:
            ring = ring_by_name(str(payload["ring"]))
            order = int(payload["order"])
            raw = payload["coeffs"]
        except KeyError as exc:
            raise SeriesError(f"missing field {exc} in series payload") from exc
        if len(raw) != order + 1:
            raise SeriesError(f"expected {order + 1} coefficients, got {len(raw)}")
        return cls((ring.from_json(item) for item in raw), order, ring)


def series_arith(op: str, a: TruncatedSeries, b: Any = None) -> TruncatedSeries:
    """Dispatch ``add|sub|mul|div|log|pow|shift`` by name."""

    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "log":
        return a.log()
    if op == "pow":
        return a ** int(b)
    if op == "shift":
        return a.shift(int(b))
    raise KeyError(f"Unknown series operation '{op}'")


def catalan_series(order: int) -> TruncatedSeries:
    """``Cat(g) = sum_n C_n g^n`` with the Catalan numbers ``C_n``."""

    coeffs: List[int] = [1]
    for n in range(order):
        coeffs.append(coeffs[-1] * 2 * (2 * n + 1) // (n + 2))
    return TruncatedSeries(coeffs, order)
