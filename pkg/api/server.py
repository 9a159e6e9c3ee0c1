"""FastAPI service exposing exact series and critical-line values."""
from __future__ import annotations

from typing import Any, Dict, List, Optional

from fastapi import FastAPI, HTTPException, Query

import settings
from identities import identity_registry
from map_formulas import DistanceError, DistanceSpec, FamilyError, three_point, two_point
from parametrization import Family, Mode, solve
import scaling_limit

app = FastAPI(title="Planar Maps API", version="0.1.0")

MAX_API_ORDER = 40


def _mode(family: Family, ring: str) -> Mode:
    if ring not in ("q", "qz"):
        raise HTTPException(status_code=422, detail=f"unknown ring '{ring}' (expected q or qz)")
    return Mode.of(family, bivariate=ring == "qz")


def _order(order: Optional[int], mode: Mode) -> int:
    if order is None:
        return settings.bivariate_order() if mode.bivariate else settings.series_order()
    if not 0 <= order <= MAX_API_ORDER:
        raise HTTPException(status_code=422, detail=f"order must lie in [0, {MAX_API_ORDER}]")
    return order


@app.get("/health", summary="Liveness probe")
def health() -> Dict[str, str]:
    return {"status": "ok"}


@app.get("/two-point", summary="Two-point series G_d")
def get_two_point(
    d: int,
    family: Family = Family.GENERAL,
    ring: str = "q",
    order: Optional[int] = None,
) -> Dict[str, Any]:
    """Exact ``G_d`` up to ``g**order``, coefficients serialized as ``"p/q"``."""

    mode = _mode(family, ring)
    try:
        spec = DistanceSpec.two(d)
        series = two_point(spec, solve(mode, _order(order, mode)))
    except (DistanceError, FamilyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {"family": family.value, "ring": ring, "distances": [d], "series": series.to_json()}


@app.get("/three-point", summary="Three-point series G_{d12,d13,d23}")
def get_three_point(
    d: List[int] = Query(..., description="three pairwise distances"),
    family: Family = Family.GENERAL,
    ring: str = "q",
    order: Optional[int] = None,
) -> Dict[str, Any]:
    mode = _mode(family, ring)
    if len(d) != 3:
        raise HTTPException(status_code=422, detail=f"expected 3 distances, got {len(d)}")
    try:
        spec = DistanceSpec.three(*d, bipartite=family is Family.BIPARTITE)
        series = three_point(spec, solve(mode, _order(order, mode)))
    except (DistanceError, FamilyError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {
        "family": family.value,
        "ring": ring,
        "distances": list(spec.distances),
        "parity": spec.parity,
        "series": series.to_json(),
    }


@app.get("/critical-point", summary="Critical line at a face weight")
def get_critical_point(z: float = 1.0, family: Family = Family.GENERAL) -> Dict[str, Any]:
    try:
        point = scaling_limit.critical_point(family, z)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    return {**point.to_dict(), "observables": scaling_limit.observables(family, z).to_dict()}


@app.get("/identities", summary="Registered identity checks")
def list_identities() -> Dict[str, List[str]]:
    return {"identities": identity_registry.names()}
