"""Verdicts and the replayable certificates they carry.

A verdict is either ``LargeCertified`` with a certificate, or ``Unknown``
with whatever bounded evidence the search collected.  Non-largeness is
never asserted: the finite residual is not computable from finite data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

from .linalg import AbelianInvariants
from .presentation import Chi, Presentation

LARGE = "LargeCertified"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class DeficiencyAtLeastTwo:
    """The presentation reached by replaying ``moves`` has deficiency >= 2."""

    moves: tuple[tuple, ...]
    presentation: Presentation

    kind = "DeficiencyAtLeastTwo"


@dataclass(frozen=True)
class AlexanderVanishes:
    """Delta vanishes for the last subgroup of the chain (over F_p when ``prime``).

    ``subgroups[0]`` is a table over the root presentation; each later table
    is over the raw Reidemeister-Schreier presentation of the previous one.
    ``chi`` lives on the generators of the last presentation in the chain.
    """

    subgroups: tuple
    chi: Chi
    prime: int | None = None

    kind = "AlexanderVanishes"


@dataclass(frozen=True)
class HeightOneBigAbelianization:
    subgroup: Any  # CosetTable over the root presentation
    invariants: AbelianInvariants

    kind = "HeightOneBigAbelianization"


Certificate = Union[DeficiencyAtLeastTwo, AlexanderVanishes, HeightOneBigAbelianization]


@dataclass
class Verdict:
    status: str
    certificate: Certificate | None = None
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.status == LARGE) != (self.certificate is not None):
            raise ValueError("status LargeCertified iff a certificate is present")

    @property
    def is_large(self) -> bool:
        return self.status == LARGE


# --- JSON ----------------------------------------------------------------------------


def certificate_to_json(c: Certificate) -> dict:
    out: dict = {"kind": c.kind, "chi": None, "prime": None, "subgroup_tables": [], "abelian_invariants": None}
    if isinstance(c, DeficiencyAtLeastTwo):
        out["tietze_moves"] = [list(m) for m in c.moves]
        out["presentation"] = str(c.presentation)
    elif isinstance(c, AlexanderVanishes):
        out["chi"] = list(c.chi.values)
        out["prime"] = c.prime
        out["subgroup_tables"] = [t.to_json() for t in c.subgroups]
    elif isinstance(c, HeightOneBigAbelianization):
        out["subgroup_tables"] = [c.subgroup.to_json()]
        out["abelian_invariants"] = c.invariants.to_json()
    return out


def certificate_from_json(data: dict, root: Presentation) -> Certificate:
    from .cosets import CosetTable, rs_presentation
    from .parsing import parse_presentation

    kind = data["kind"]
    if kind == DeficiencyAtLeastTwo.kind:
        moves = tuple(tuple(m) for m in data.get("tietze_moves", []))
        return DeficiencyAtLeastTwo(moves, parse_presentation(data["presentation"]))
    if kind == AlexanderVanishes.kind:
        tables = []
        cur = root
        for tj in data.get("subgroup_tables", []):
            t = CosetTable.from_json(tj, cur)
            tables.append(t)
            cur = rs_presentation(cur, t)
        return AlexanderVanishes(tuple(tables), Chi(tuple(data["chi"])), data.get("prime"))
    if kind == HeightOneBigAbelianization.kind:
        t = CosetTable.from_json(data["subgroup_tables"][0], root)
        inv = data["abelian_invariants"]
        return HeightOneBigAbelianization(t, AbelianInvariants(int(inv["rank"]), tuple(inv["torsion"])))
    raise ValueError(f"unknown certificate kind {kind!r}")


def verdict_to_json(v: Verdict, presentation: Presentation | None = None, seed: int | None = None) -> dict:
    from . import __version__

    out = {
        "status": v.status,
        "certificate": certificate_to_json(v.certificate) if v.certificate is not None else None,
        "evidence": v.evidence,
        "seed": seed,
        "versions": {"largeness": __version__, "format": 1},
    }
    if presentation is not None:
        out["presentation"] = str(presentation)
    return out


def verdict_from_json(data: dict, root: Presentation) -> Verdict:
    cert = certificate_from_json(data["certificate"], root) if data.get("certificate") else None
    return Verdict(data["status"], cert, data.get("evidence", {}))
