"""JSON serialization of analysis reports.

Rationals are written as ``{"num": "...", "den": "..."}`` decimal strings.
Key order is fixed and timings can be zeroed, so identical runs serialize to
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

from . import __version__
from .certify import Certificate, Conclusion, OrderVerdict
from .coset_enum import CosetTable, EnumerationStats, standardize
from .orbicomplex import EulerReport


def rational(q: Fraction | int) -> dict[str, str]:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _value(v: Any) -> Any:
    if isinstance(v, Fraction):
        return rational(v)
    return v


def conclusion_json(c: Conclusion) -> dict[str, Any]:
    return {"kind": c.kind.value, "value": _value(c.value)}


def verdict_json(v: OrderVerdict, cert: Certificate) -> dict[str, Any]:
    rel = cert.presentation.relators[v.relator]
    return {
        "relator": v.relator,
        "base": cert.presentation.format_word(rel.base),
        "claimed": v.claimed,
        "status": v.status.value,
        "method": v.method.value if v.method else None,
        "actual": v.actual,
        "routes": [
            {"method": r.method.value, "status": r.status.value, "actual": r.actual} for r in v.routes
        ],
    }


def certificate_json(cert: Certificate) -> dict[str, Any]:
    return {
        "presentation": str(cert.presentation),
        "d": cert.d,
        "r": cert.r,
        "sum_inv_m": rational(cert.sum_inv_m),
        "chi_orb": rational(cert.chi_orb),
        "order_verdicts": [verdict_json(v, cert) for v in cert.order_verdicts],
        "group_size": cert.group_size,
        "conclusions": [conclusion_json(c) for c in cert.conclusions],
        "abelianization": {
            "invariants": list(cert.abelian_invariants),
            "infinite": cert.infinite_abelianization,
            "note": "independent cross-check; not one of the theorem conclusions",
        },
    }


def euler_json(e: EulerReport) -> dict[str, Any]:
    return {
        "betti": list(e.betti),
        "group_order": e.group_order,
        "chi_orb": rational(e.chi_orb),
        "lhs": rational(e.lhs),
        "identity_holds": e.identity_holds,
        "b1_vanishes": e.b1_vanishes,
        "b2_predicted": e.b2_predicted,
        "b2_matches": e.b2_matches,
    }


@dataclass
class Report:
    input: dict[str, Any]
    certificate: Certificate
    coset_stats: dict[str, Any]
    euler: EulerReport | None = None
    timings: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_json(self, deterministic: bool = False) -> dict[str, Any]:
        timings = {k: (0.0 if deterministic else round(v, 3)) for k, v in self.timings.items()}
        return {
            "version": __version__,
            "input": self.input,
            "certificate": certificate_json(self.certificate),
            "coset_stats": self.coset_stats,
            "euler": euler_json(self.euler) if self.euler else None,
            "timings": timings,
        }

    def dumps(self, deterministic: bool = False) -> str:
        return json.dumps(self.to_json(deterministic), indent=2, ensure_ascii=False) + "\n"


def coset_stats_json(
    stats: EnumerationStats | None,
    table: CosetTable | None,
    strategy: str | None,
    max_cosets: int,
) -> dict[str, Any]:
    if stats is None:
        return {
            "strategy": strategy,
            "max_cosets": max_cosets,
            "cosets_defined": 0,
            "max_live": 0,
            "closed": False,
            "table": None,
        }
    return {
        "strategy": strategy,
        "max_cosets": max_cosets,
        "cosets_defined": stats.cosets_defined,
        "max_live": stats.max_live,
        "closed": stats.closed,
        "table": [list(row) for row in standardize(table).action] if table is not None else None,
    }


def load_schema() -> dict[str, Any]:
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())
