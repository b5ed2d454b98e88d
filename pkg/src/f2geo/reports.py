"""JSON report builders matching data/report.schema.json."""
from __future__ import annotations

import json
from importlib import resources

from .algebra import DISPLAY_NAMES, StructureConstants, calculus_relations, find_unit, generic_names
from .geometry import Connection, Metric, curvature, is_flat, torsion
from .orbits import OrbitReport

HEISENBERG_NOTE = (
    "all listed geometries hold verbatim for Heisenberg-type coordinate "
    "relations [x^mu, x^nu] = Theta^{mu nu}: the calculus and the constant-"
    "coefficient metric/connection data are unchanged; Theta is metadata only"
)


def load_schema() -> dict:
    with resources.files("f2geo.data").joinpath("report.schema.json").open() as fh:
        return json.load(fh)


def _metadata(heisenberg_theta: str | None = None) -> dict:
    return {"heisenberg_note": HEISENBERG_NOTE, "heisenberg_theta": heisenberg_theta}


def _names(n: int):
    return DISPLAY_NAMES.get(n, generic_names(n))


def enumerate_report(
    n: int, mode: str, solutions: list[StructureConstants], heisenberg_theta=None
) -> dict:
    sols = []
    for v in solutions:
        unit = find_unit(v)
        sols.append(
            {
                "hex": v.to_hex(),
                "relations": calculus_relations(v, _names(n)),
                "theta": unit.name(_names(n)) if unit else None,
            }
        )
    return {
        "kind": "enumerate",
        "n": n,
        "mode": mode,
        "count": len(solutions),
        "solutions": sols,
        "metadata": _metadata(heisenberg_theta),
    }


def classify_report(n: int, reports: list[OrbitReport], heisenberg_theta=None) -> dict:
    return {
        "kind": "classify",
        "n": n,
        "orbit_count": len(reports),
        "orbits": [
            {
                "canonical_hex": r.canonical.to_hex(),
                "size": r.orbit_size,
                "isotropy_order": r.isotropy_order,
                "label": r.label,
                "relations": calculus_relations(r.canonical, _names(n)),
            }
            for r in reports
        ],
        "metadata": _metadata(heisenberg_theta),
    }


def _curvature_components(c: Connection) -> list:
    return [sorted(list(t) for t in omega.terms()) for omega in curvature(c)]


def connection_report(c: Connection) -> dict:
    width4 = (c.n**4 + 3) // 4
    width3 = (c.n**3 + 3) // 4
    return {
        "gamma_hex": f"{c.gamma:0{width3}x}",
        "sigma_hex": f"{c.sigma.bits:0{width4}x}",
        "curvature_zero": is_flat(c),
        "curvature_components": _curvature_components(c),
        "wedge_torsion_zero": all(t.is_zero() for t in torsion(c)),
    }


def geometry_report(
    label: str,
    v: StructureConstants,
    metrics_with_qlcs: list[tuple[Metric, list[Connection]]],
    heisenberg_theta=None,
) -> dict:
    out_metrics = []
    for g, qlcs in metrics_with_qlcs:
        width = (v.n**2 + 3) // 4
        out_metrics.append(
            {
                "matrix_hex": f"{g.packed():0{width}x}",
                "matrix": g.to_lists(),
                "qlc_count_nonzero": sum(1 for c in qlcs if not c.is_zero),
                "qlcs": [connection_report(c) for c in qlcs],
            }
        )
    return {
        "kind": "geometry",
        "n": v.n,
        "label": label,
        "relations": calculus_relations(v, _names(v.n)),
        "metrics": out_metrics,
        "metadata": _metadata(heisenberg_theta),
    }
