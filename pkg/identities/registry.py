"""Dynamic identity registry with auto-discovery of the bundled checks."""
from __future__ import annotations

import importlib
import logging
import pkgutil
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Tuple, Type, TypeVar

from map_formulas import FormulaEvaluator
from parametrization import Mode, ParamSolution, solve
from power_series import TruncatedSeries

from .base import Failure, Identity, VerificationReport, first_difference

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 16
DEFAULT_BIVARIATE_ORDER = 10
DEFAULT_LIMIT = 5
DEFAULT_BIVARIATE_LIMIT = 3

T = TypeVar("T", bound=Identity)
Override = Callable[..., TruncatedSeries]


@dataclass
class IdentityMetadata:
    """Metadata describing a registered identity."""

    name: str
    cls: Type[Identity]
    aliases: Tuple[str, ...]


class IdentityRegistry:
    """Registry exposing identity checks by name."""

    def __init__(self) -> None:
        self._identities: Dict[str, IdentityMetadata] = {}
        self._metadata_by_name: Dict[str, IdentityMetadata] = {}

    def register(self, name: str, cls: Type[T], *, aliases: Optional[Iterable[str]] = None) -> Type[T]:
        """Register *cls* under *name* and optional *aliases*."""

        metadata = IdentityMetadata(name=name, cls=cls, aliases=tuple(aliases or ()))
        for key in {name.lower(), *(alias.lower() for alias in metadata.aliases)}:
            self._identities[key] = metadata
        self._metadata_by_name[name] = metadata
        if cls.name is None:
            cls.name = name
        return cls

    def get(self, name: str) -> IdentityMetadata:
        """Return identity metadata for *name* or raise ``KeyError``."""

        normalized = name.lower()
        if normalized not in self._identities:
            raise KeyError(f"Identity '{name}' is not registered (known: {', '.join(self.names())})")
        return self._identities[normalized]

    def create(self, name: str) -> Identity:
        return self.get(name).cls()

    def names(self) -> List[str]:
        return sorted(self._metadata_by_name)


identity_registry = IdentityRegistry()


def register_identity(name: str, *, aliases: Optional[Iterable[str]] = None) -> Callable[[Type[T]], Type[T]]:
    """Decorator used by identity modules to register themselves."""

    def decorator(cls: Type[T]) -> Type[T]:
        identity_registry.register(name, cls, aliases=aliases)
        return cls

    return decorator


def discover_builtin_identities() -> None:
    """Import every identity module within the package."""

    package_path = Path(__file__).resolve().parent
    package_name = __name__.rsplit(".", 1)[0]

    for module in pkgutil.iter_modules([str(package_path)]):
        module_name = module.name
        if module_name.startswith("_"):
            continue
        if module_name in {"__init__", "base", "registry"}:
            continue
        importlib.import_module(f"{package_name}.{module_name}")


@lru_cache(maxsize=16)
def _params(mode: Mode, order: int) -> ParamSolution:
    return solve(mode, order)


def verify(
    name: str,
    *,
    order: Optional[int] = None,
    bivariate_order: Optional[int] = None,
    limit: Optional[int] = None,
    bivariate_limit: Optional[int] = None,
    overrides: Optional[Dict[str, Override]] = None,
) -> VerificationReport:
    """Check identity *name* coefficient by coefficient over its index range.

    ``overrides`` maps a family name to ``fn(original_evaluator, *indices)``
    and replaces that family everywhere (used for mutation tests).
    """

    identity = identity_registry.create(name)
    checked = 0
    for mode in identity.modes:
        if mode.bivariate:
            mode_order = DEFAULT_BIVARIATE_ORDER if bivariate_order is None else bivariate_order
            mode_limit = DEFAULT_BIVARIATE_LIMIT if bivariate_limit is None else bivariate_limit
        else:
            mode_order = DEFAULT_ORDER if order is None else order
            mode_limit = DEFAULT_LIMIT if limit is None else limit
        evaluator = FormulaEvaluator(_params(mode, mode_order))
        if overrides:
            original = evaluator
            evaluator = original.with_overrides(
                **{family: _bind(fn, original) for family, fn in overrides.items()}
            )
        for indices in identity.index_tuples(mode_limit):
            for lhs, rhs in identity.pairs(evaluator, tuple(indices)):
                checked += 1
                k = first_difference(lhs, rhs)
                if k is not None:
                    failure = Failure(
                        mode=mode.value,
                        indices=tuple(indices),
                        g_order=k,
                        lhs=repr(lhs.coeffs[k]),
                        rhs=repr(rhs.coeffs[k]),
                    )
                    logger.warning("identity %s fails at %s, g^%s", identity.name, indices, k)
                    return VerificationReport(identity.name or name, "fail", checked, failure)
        logger.debug("identity %s holds in %s mode at order %s", identity.name, mode.value, mode_order)
    return VerificationReport(identity.name or name, "pass", checked)


def _bind(fn: Override, original: FormulaEvaluator) -> Override:
    def bound(*indices: int) -> TruncatedSeries:
        return fn(original, *indices)

    return bound


def verify_all(
    order: Optional[int] = None,
    *,
    bivariate_order: Optional[int] = None,
    limit: Optional[int] = None,
    bivariate_limit: Optional[int] = None,
    names: Optional[Iterable[str]] = None,
) -> List[VerificationReport]:
    """Run every registered identity; reports are sorted by identity name."""

    if order is not None and bivariate_order is None:
        bivariate_order = min(order, DEFAULT_BIVARIATE_ORDER)
    selected = sorted(names) if names is not None else identity_registry.names()
    reports = [
        verify(
            name,
            order=order,
            bivariate_order=bivariate_order,
            limit=limit,
            bivariate_limit=bivariate_limit,
        )
        for name in selected
    ]
    failed = [report.identity for report in reports if not report.passed]
    logger.info("verified %s identities, %s failing", len(reports), len(failed))
    return reports
