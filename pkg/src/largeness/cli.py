"""Command-line interface.

Exit codes: 0 success, 1 unparseable input (including bad arguments),
2 a resource budget was exceeded, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .alexander import ResourceLimit, alexander_mod_p, alexander_polynomial
from .analysis import analyze, census
from .cosets import DEFAULT_MAX_COSETS, low_index_subgroups, rs_presentation
from .freebycyclic import FreeEndomorphism, double, mapping_torus
from .linalg import abelian_invariants
from .onerelator import (
    bs_presentation,
    cmn_presentation,
    height1_alexander,
    higman_relator,
    hnn_conjugate_extension,
    zero_exponent_basis,
    moldavanskii_rewrite,
)
from .parsing import parse_presentation, parse_word
from .permgroups import OrderGuard
from .presentation import Chi, Presentation, PresentationError
from .verdict import certificate_from_json, verdict_to_json
from .verify import check_certificate

EXIT_OK, EXIT_PARSE, EXIT_RESOURCE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def read_presentation(source: str) -> Presentation:
    """Inline text (starting with an angle bracket), ``-`` for stdin, or a file path."""
    text = source
    stripped = source.lstrip()
    if source == "-":
        text = sys.stdin.read()
    elif not stripped.startswith(("<", "⟨")):
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"no such file and not an inline presentation: {source!r}")
        text = path.read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    return parse_presentation(" ".join(lines))


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _parse_chi(text: str | None, p: Presentation) -> Chi:
    if text is None:
        from .analysis import chi_candidates

        cands = chi_candidates(p, 1)
        if not cands:
            raise PresentationError("the group has no surjection onto Z")
        return cands[0]
    if "=" in text:
        values = [0] * p.ngens
        for part in text.split(","):
            name, _, v = part.partition("=")
            values[p.index_of(name.strip())] = int(v)
        return Chi(tuple(values))
    return Chi(tuple(int(x) for x in text.split(",")))


# --- commands ---------------------------------------------------------------------


def cmd_analyze(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    v = analyze(p, max_index=args.max_index, max_degree=args.degree)
    data = verdict_to_json(v, p, seed=args.seed)
    if args.json:
        return _dump(data), EXIT_OK
    lines = [f"presentation: {p}", f"status: {v.status}"]
    if v.certificate is not None:
        c = data["certificate"]
        lines.append(f"certificate: {c['kind']}")
        if c["chi"] is not None:
            lines.append(f"  chi: {c['chi']}")
        if c["prime"]:
            lines.append(f"  prime: {c['prime']}")
        if c["subgroup_tables"]:
            lines.append(f"  subgroup indices: {[t['index'] for t in c['subgroup_tables']]}")
        if c["abelian_invariants"]:
            lines.append(f"  abelian invariants: {c['abelian_invariants']}")
    lines.append(f"evidence: path={v.evidence.get('path')} max_index={v.evidence['max_index']} "
                 f"scanned subgroups={len(v.evidence['scans'])}")
    return "\n".join(lines), EXIT_OK


def cmd_census(args) -> tuple[str, int]:
    report = census(args.k, args.bound, args.samples, args.seed, max_index=args.max_index, max_degree=args.degree)
    if args.json:
        return _dump(report), EXIT_OK
    return (
        f"samples: {report['samples']}  large: {report['large_fraction']:.3f}  "
        f"unknown: {report['unknown_fraction']:.3f}  histogram: {report['histogram']}"
    ), EXIT_OK


def _ints(fam: str, params: list[str], n: int) -> list[int]:
    if len(params) != n:
        raise UsageError(f"{fam} needs {n} integer parameters")
    try:
        return [int(x) for x in params]
    except ValueError:
        raise UsageError(f"{fam} parameters must be integers") from None


def _construct(args) -> Presentation:
    fam, params = args.family, args.params
    if fam == "bs":
        m, n = _ints(fam, params, 2)
        return bs_presentation(m, n)
    if fam == "cmn":
        m, n = _ints(fam, params, 2)
        return cmn_presentation(m, n)
    if fam == "higman":
        # higman W V k m n  (words over a, t)
        if len(params) != 5:
            raise UsageError("higman needs W V k m n")
        names = ("a", "t")
        w, v = parse_word(params[0], names), parse_word(params[1], names)
        k, m, n = (int(x) for x in params[2:])
        return Presentation(names, (higman_relator(w, v, k, m, n),))
    if fam == "hnn-iterate":
        # hnn-iterate PRESENTATION [times]
        if not params:
            raise UsageError("hnn-iterate needs a presentation and optionally a count")
        p = read_presentation(params[0])
        times = int(params[1]) if len(params) > 1 else 1
        for _ in range(times):
            p = hnn_conjugate_extension(p)
            p = Presentation(("a", "t"), p.relators)
        return p
    if fam in ("mapping-torus", "double"):
        if not params:
            raise UsageError(f"{fam} needs generator images, e.g. 'y' 'z' 'x y'")
        f = FreeEndomorphism.parse(params)
        if fam == "double":
            f = double(f)
        return mapping_torus(f)
    raise UsageError(f"unknown family {fam!r}")


def cmd_construct(args) -> tuple[str, int]:
    p = _construct(args)
    if args.json:
        return _dump({"presentation": str(p), "deficiency": p.ngens - p.nrels}), EXIT_OK
    return str(p), EXIT_OK


def cmd_verify(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    try:
        data = json.loads(Path(args.verdict).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read verdict: {exc}") from None
    cert = data.get("certificate")
    if cert is None:
        result = {"ok": False, "reason": "verdict carries no certificate"}
    else:
        r = check_certificate(p, certificate_from_json(cert, p), max_cosets=args.max_cosets, raise_on_budget=True)
        result = {"ok": r.ok, "reason": r.reason}
    if args.json:
        return _dump(result), EXIT_OK
    return f"{'true' if result['ok'] else 'false'}: {result['reason']}", EXIT_OK


def cmd_lowindex(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    rows = []
    for t in low_index_subgroups(p, args.max_index):
        rows.append((t, abelian_invariants(rs_presentation(p, t))))
    if args.json:
        return _dump([{"index": t.index, "invariants": inv.to_json(), "table": t.to_json()} for t, inv in rows]), EXIT_OK
    return "\n".join(f"index {t.index}: {inv}" for t, inv in rows), EXIT_OK


def cmd_alex(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    chi = _parse_chi(args.chi, p)
    if args.prime:
        delta = alexander_mod_p(p, chi, args.prime)
    else:
        delta = alexander_polynomial(p, chi)
    if args.json:
        return _dump({"chi": list(chi.values), "prime": args.prime, "alexander": delta.to_json(),
                      "text": str(delta)}), EXIT_OK
    return str(delta), EXIT_OK


def cmd_abelian(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    inv = abelian_invariants(p)
    if args.json:
        return _dump(inv.to_json()), EXIT_OK
    return str(inv), EXIT_OK


def cmd_height(args) -> tuple[str, int]:
    p = read_presentation(args.input)
    out = []
    for cand in zero_exponent_basis(p):
        h = moldavanskii_rewrite(cand.presentation.relators[0])
        row = {"letter": cand.letter, "presentation": str(cand.presentation), "chi": list(cand.chi.values),
               **h.to_json()}
        if h.height == 1:
            row["alexander"] = str(height1_alexander(h))
        out.append(row)
    if args.json:
        return _dump(out), EXIT_OK
    return "\n".join(
        f"{r['letter']}: height {r['height']}" + (f", exponents {r['exponents']}, Delta = {r['alexander']}"
                                                    if r["height"] == 1 else "")
        for r in out
    ), EXIT_OK


# --- wiring -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def common(sp, max_index=8, degree=5):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--max-index", type=int, default=max_index)
        sp.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
        sp.add_argument("--degree", type=int, default=degree, help="largest permutation degree for finite images")
        sp.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="largeness", description="Largeness certificates for finitely presented groups.")
    parser.add_argument("--version", action="version", version=f"largeness {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, *positional, **defaults):
        sp = sub.add_parser(name, help=help_)
        common(sp, **defaults)
        for pos, kw in positional:
            sp.add_argument(pos, **kw)
        sp.set_defaults(func=func)
        return sp

    inp = ("input", {"help": "presentation text, a file, or - for stdin"})
    add("analyze", cmd_analyze, "certify largeness or report bounded evidence", inp)
    sp = add("census", cmd_census, "height-1 statistics over random exponent vectors", max_index=4, degree=3)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--samples", type=int, default=20)
    add("construct", cmd_construct, "print a member of a group family",
        ("family", {"choices": ["bs", "cmn", "higman", "hnn-iterate", "mapping-torus", "double"]}),
        ("params", {"nargs": "*"}))
    add("verify", cmd_verify, "replay the certificate in a verdict file", inp, ("verdict", {}))
    add("lowindex", cmd_lowindex, "subgroups of small index with their abelianizations", inp)
    sp = add("alex", cmd_alex, "Alexander polynomial", inp)
    sp.add_argument("--chi", help="values per generator, e.g. 0,1 or t=1,a=0")
    sp.add_argument("--prime", type=int)
    add("abelian", cmd_abelian, "abelian invariants", inp)
    add("height", cmd_height, "height of a 2-generator 1-relator presentation", inp)
    return parser


def _positive(args) -> None:
    for name in ("max_index", "max_cosets", "degree"):
        if getattr(args, name, 1) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _positive(args)
        text, code = args.func(args)
    except (UsageError, ValueError) as exc:  # parse errors and invalid input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ResourceLimit, OrderGuard) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
