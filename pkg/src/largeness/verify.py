"""Independent replay of largeness certificates."""

from __future__ import annotations

from dataclasses import dataclass

from .alexander import ResourceLimit, alexander_polynomial
from .cosets import CosetTable, DEFAULT_MAX_COSETS, rs_presentation, todd_coxeter
from .linalg import abelian_invariants
from .presentation import Presentation, PresentationError, deficiency, replay_tietze
from .verdict import AlexanderVanishes, DeficiencyAtLeastTwo, HeightOneBigAbelianization


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _same_presentation(p: Presentation, q: Presentation) -> bool:
    return p.names == q.names and p.relators == q.relators


def _replay_table(parent: Presentation, table: CosetTable, max_cosets: int) -> str | None:
    """Return a reason string when the table fails to re-verify over ``parent``."""
    if not _same_presentation(table.origin, parent):
        return "table is recorded over a different presentation"
    problems = table.check()
    if problems:
        return "; ".join(problems)
    again = todd_coxeter(parent, table.subgroup_gens, max_cosets)
    if again.action != table.action:
        return f"coset enumeration of the recorded generators gives index {again.index}, table has {table.index}"
    return None


def check_certificate(
    p: Presentation, c, max_cosets: int = DEFAULT_MAX_COSETS, raise_on_budget: bool = False
) -> CheckResult:
    """Replay ``c`` against ``p``; the result is falsy with a reason on failure.

    A replay that runs out of coset budget counts as a failure unless
    ``raise_on_budget`` is set, in which case ``ResourceLimit`` propagates.
    """
    try:
        return _check(p, c, max_cosets)
    except ResourceLimit as exc:
        if raise_on_budget:
            raise
        return CheckResult(False, f"replay failed: {exc}")
    except (PresentationError, ValueError, ArithmeticError) as exc:
        return CheckResult(False, f"replay failed: {exc}")


def _check(p: Presentation, c, max_cosets: int) -> CheckResult:
    if isinstance(c, DeficiencyAtLeastTwo):
        q = replay_tietze(p, c.moves)
        if not _same_presentation(q, c.presentation):
            return CheckResult(False, "replayed Tietze moves give a different presentation")
        d = deficiency(q)
        if d < 2:
            return CheckResult(False, f"deficiency {d} < 2")
        return CheckResult(True, f"deficiency {d}")

    if isinstance(c, AlexanderVanishes):
        cur = p
        for k, table in enumerate(c.subgroups):
            why = _replay_table(cur, table, max_cosets)
            if why:
                return CheckResult(False, f"subgroup {k}: {why}")
            cur = rs_presentation(cur, table)
        if len(c.chi.values) != cur.ngens or not c.chi.vanishes_on(cur):
            return CheckResult(False, "chi is not a homomorphism on the final subgroup")
        if not c.chi.is_surjective:
            return CheckResult(False, "chi is not surjective")
        delta = alexander_polynomial(cur, c.chi, modulus=c.prime)
        field = f"F_{c.prime}" if c.prime else "Z"
        if not delta.is_zero():
            return CheckResult(False, f"Alexander polynomial over {field} is {delta}, not zero")
        return CheckResult(True, f"Alexander polynomial vanishes over {field}")

    if isinstance(c, HeightOneBigAbelianization):
        from .onerelator import height_one_basis

        if p.ngens != 2 or p.nrels != 1:
            return CheckResult(False, "root is not a 2-generator 1-relator presentation")
        if height_one_basis(p) is None:
            return CheckResult(False, "relator does not have height 1")
        why = _replay_table(p, c.subgroup, max_cosets)
        if why:
            return CheckResult(False, why)
        inv = abelian_invariants(rs_presentation(p, c.subgroup))
        if inv != c.invariants:
            return CheckResult(False, f"abelianization is {inv}, recorded {c.invariants}")
        if inv.min_generators < 3:
            return CheckResult(False, f"abelianization {inv} needs fewer than 3 generators")
        return CheckResult(True, f"index {c.subgroup.index} subgroup with abelianization {inv}")

    return CheckResult(False, f"unknown certificate type {type(c).__name__}")
