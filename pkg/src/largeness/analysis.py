"""Top-level analysis: pick the cheapest applicable largeness test."""

from __future__ import annotations

import itertools
import random
from math import gcd

from .alexander import ResourceLimit, howie_large_test
from .cosets import low_index_subgroups, rs_presentation
from .linalg import abelian_invariants, integer_kernel, relation_matrix
from .onerelator import height1_largeness_driver, height1_presentation, height_one_basis
from .presentation import Chi, Presentation, deficiency, simplify
from .verdict import LARGE, UNKNOWN, AlexanderVanishes, DeficiencyAtLeastTwo, Verdict

MAX_CHI = 200
MAX_CHI_PER_SUBGROUP = 20
CHI_RANGE = 2


def chi_candidates(p: Presentation, limit: int = MAX_CHI) -> list[Chi]:
    """Surjections onto Z with coordinates in ``[-2, 2]`` over a basis of Hom(G, Z).

    Primitive coefficient vectors only, one of each sign pair, in a fixed
    order (fewest nonzero coordinates first), at most ``limit`` of them.
    """
    basis = integer_kernel(relation_matrix(p), p.ngens) if p.relators else [
        [int(i == j) for j in range(p.ngens)] for i in range(p.ngens)
    ]
    b = len(basis)
    coeffs = []
    for c in itertools.product(range(-CHI_RANGE, CHI_RANGE + 1), repeat=b):
        nz = [x for x in c if x]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for x in c:
            g = gcd(g, x)
        if g != 1:
            continue
        coeffs.append(c)
    coeffs.sort(key=lambda c: (sum(1 for x in c if x), sum(abs(x) for x in c), [-x for x in c]))
    out: list[Chi] = []
    seen = set()
    for c in coeffs:
        vals = [sum(c[i] * basis[i][j] for i in range(b)) for j in range(p.ngens)]
        g = 0
        for v in vals:
            g = gcd(g, v)
        if g == 0:
            continue
        vals = tuple(v // g for v in vals)
        if vals in seen:
            continue
        seen.add(vals)
        out.append(Chi(vals))
        if len(out) >= limit:
            break
    return out


def _evidence(max_index: int) -> dict:
    return {"max_index": max_index, "chi_set": [], "scans": []}


def analyze(p: Presentation, max_index: int = 8, max_degree: int = 5) -> Verdict:
    """Deficiency, then the height-1 driver, then Howie tests over a declared
    set of maps to Z on the group and on its low-index subgroups."""
    evidence = _evidence(max_index)
    q, moves = simplify(p)
    if deficiency(q) >= 2:
        evidence["path"] = "deficiency"
        return Verdict(LARGE, DeficiencyAtLeastTwo(tuple(moves), q), evidence)

    if p.ngens == 2 and p.nrels == 1 and height_one_basis(p) is not None:
        v = height1_largeness_driver(p, max_index=max_index, max_degree=max_degree)
        v.evidence["path"] = "height-one"
        return v

    evidence["path"] = "generic"
    skipped = []
    for chi in chi_candidates(p):
        evidence["chi_set"].append(list(chi.values))
        try:
            cert = howie_large_test(p, chi)
        except ResourceLimit as exc:
            skipped.append({"chi": list(chi.values), "reason": str(exc)})
            continue
        if cert is not None:
            if skipped:
                evidence["skipped"] = skipped
            return Verdict(LARGE, cert, evidence)

    for table in low_index_subgroups(p, max_index):
        if table.index == 1:
            continue
        h = rs_presentation(p, table)
        inv = abelian_invariants(h)
        scan = {"index": table.index, "invariants": inv.to_json(), "chi_tried": 0}
        evidence["scans"].append(scan)
        if inv.rank == 0:
            continue
        for chi in chi_candidates(h, MAX_CHI_PER_SUBGROUP):
            scan["chi_tried"] += 1
            try:
                cert = howie_large_test(h, chi)
            except ResourceLimit as exc:
                skipped.append({"index": table.index, "chi": list(chi.values), "reason": str(exc)})
                continue
            if cert is not None:
                if skipped:
                    evidence["skipped"] = skipped
                return Verdict(LARGE, AlexanderVanishes((table,), chi, cert.prime), evidence)
    if skipped:
        evidence["skipped"] = skipped
    return Verdict(UNKNOWN, None, evidence)


def census(k: int, bound: int, samples: int, seed: int, max_index: int = 4, max_degree: int = 3) -> dict:
    """Run the height-1 driver on random exponent vectors ``i_1..i_2k``."""
    if k < 1 or bound < 1 or samples < 0:
        raise ValueError("k and bound must be positive, samples nonnegative")
    rng = random.Random(seed)
    values = [v for v in range(-bound, bound + 1) if v]
    records = []
    histogram: dict[str, int] = {}
    large = 0
    for _ in range(samples):
        ex = [rng.choice(values) for _ in range(2 * k)]
        v = height1_largeness_driver(height1_presentation(ex), max_index=max_index, max_degree=max_degree)
        kind = v.certificate.kind if v.certificate is not None else None
        if v.is_large:
            large += 1
            histogram[kind] = histogram.get(kind, 0) + 1
        records.append({"exponents": ex, "status": v.status, "kind": kind})
    return {
        "k": k,
        "bound": bound,
        "samples": samples,
        "seed": seed,
        "max_index": max_index,
        "large_fraction": large / samples if samples else 0.0,
        "unknown_fraction": (samples - large) / samples if samples else 0.0,
        "histogram": histogram,
        "records": records,
    }
