"""Command-line entry point: ``qhitchin <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from .exactalg.matrix import Matrix
from .exactalg.ratfunc import Poly, RatFunc
from .rootdata import ColoredDivisor, DynkinType, QuiverOrientation, base_dimension, moduli_dimension, reduced_dimension

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 0


class UsageError(ValueError):
    """Bad flags that argparse cannot catch by itself."""


def _fractions(text: str) -> List[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from exc


def _ratfunc_text(f: RatFunc) -> str:
    def poly(p: Poly) -> str:
        terms = [f"{c}*z^{k}" if k else str(c) for k, c in enumerate(p.coeffs) if c]
        return " + ".join(terms) or "0"

    if f.den.degree == 0:
        return poly(f.num)
    return f"({poly(f.num)}) / ({poly(f.den)})"


def _orientation(args) -> Optional[QuiverOrientation]:
    return QuiverOrientation.parse(args.orientation) if args.orientation else None


def _emit(args, payload: Dict[str, Any], text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        print(text)


# -- subcommands ---------------------------------------------------------------


def cmd_qchar(args) -> int:
    from .qchar import qcharacter

    qc = qcharacter(args.type, args.node, _orientation(args))
    payload = {"type": args.type, "node": args.node, "terms": qc.poly.to_json(), "text": qc.poly.to_text(),
               "monomials": qc.dimension}
    _emit(args, payload, qc.poly.to_text())
    return EXIT_OK


def cmd_triangularize(args) -> int:
    from .qtriang import triangularize_symbolic

    res = triangularize_symbolic(args.type, _orientation(args))
    u = {str(a): v.to_text() for a, v in sorted(res.u.items())}
    t = {str(i + 1): v.to_text() for i, v in enumerate(res.tprime)}
    payload = {"type": args.type, "root_order": res.root_order, "u": u, "tprime": t,
               "residual_checked": res.residual_checked}
    lines = [f"u{a} = {v}" for a, v in u.items()] + [f"t'{i} = {v}" for i, v in t.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify_reference(args) -> int:
    from .qtriang import compare_with_golden, load_golden, triangularize_symbolic

    golden = load_golden(args.type, Path(args.golden_dir) if args.golden_dir else None)
    res = triangularize_symbolic(args.type)
    checks = compare_with_golden(res, golden)
    ok = all(c.ok for c in checks)
    lines = []
    for c in checks:
        status = "ok" if c.ok else "MISMATCH"
        sign = " (sign -1)" if c.sign < 0 else ""
        lines.append(f"{c.name:<6} {status:<8} {c.terms:>3} terms{sign}")
        if c.first_difference:
            mono, got, want = c.first_difference
            lines.append(f"       first difference at {mono}: derived {got}, reference {want}")
    lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} formulas agree")
    _emit(args, {"type": args.type, "ok": ok, "checks": [c.to_json() for c in checks]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_classical_check(args) -> int:
    from .steinberg import NonAffineDiscrepancy, classical_chevalley_check

    try:
        consts = classical_chevalley_check(args.type, trials=args.trials, seed=args.seed)
    except NonAffineDiscrepancy as exc:
        _emit(args, {"type": args.type, "ok": False, "error": str(exc)}, f"not an affine shift: {exc}")
        return EXIT_MISMATCH
    text = "(" + ",".join(str(c) for c in consts) + ")"
    _emit(args, {"type": args.type, "ok": True, "offsets": [str(c) for c in consts], "trials": args.trials}, text)
    return EXIT_OK


def cmd_dim(args) -> int:
    dt = DynkinType.parse(args.type)
    divisor = ColoredDivisor.from_json(args.divisor)
    base = base_dimension(dt, divisor)
    total = moduli_dimension(dt, divisor)
    payload: Dict[str, Any] = {"type": args.type, "base": base, "moduli": total}
    value = total
    if args.torus_rank is not None:
        value = reduced_dimension(dt, divisor, args.torus_rank)
        payload["reduced"] = value
    _emit(args, payload, str(value))
    return EXIT_OK


def _bracket_table(g, functions: Sequence[Any]) -> List[Dict[str, str]]:
    from .sklyanin import sklyanin_bracket

    rows = []
    for i, phi in enumerate(functions):
        for psi in functions[i + 1:]:
            if phi.point == psi.point:
                continue
            rows.append({"phi": str(phi), "psi": str(psi), "bracket": str(sklyanin_bracket(phi, psi, g))})
    return rows


def cmd_gl2_moduli(args) -> int:
    from .mhiggs import gl2_minuscule_space, hitchin_fibration
    from .sklyanin import EvaluationFunction

    space = gl2_minuscule_space(args.z1, args.z2, _fractions(args.framing))
    lin, quad = space.relations_text()
    payload: Dict[str, Any] = {"z1": str(space.z1), "z2": str(space.z2), "relations": [lin, quad]}
    if args.point is None:
        _emit(args, payload, f"{lin}\n{quad}")
        return EXIT_OK
    point = _fractions(args.point)
    member = space.contains(point)
    payload["point"] = [str(x) for x in point]
    payload["member"] = member
    if member:
        g = space.group_map(point)
        trace, det = hitchin_fibration(g)
        payload["invariants"] = {"trace": _ratfunc_text(trace), "det": _ratfunc_text(det)}
        u, v = _fractions(args.points)
        funcs = [EvaluationFunction.entry(a, b, w) for w in (u, v) for a in (1, 2) for b in (1, 2)]
        payload["brackets"] = _bracket_table(g, funcs)
    _emit(args, payload, json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK if member else EXIT_MISMATCH


def cmd_bracket(args) -> int:
    from .sklyanin import EvaluationFunction, GroupRatMap, sklyanin_bracket

    g = GroupRatMap.from_json(Path(args.g).read_text(encoding="utf-8"))
    phi = EvaluationFunction.parse(args.phi)
    psi = EvaluationFunction.parse(args.psi)
    value = sklyanin_bracket(phi, psi, g)
    _emit(args, {"phi": str(phi), "psi": str(psi), "bracket": str(value)}, str(value))
    return EXIT_OK


def cmd_bethe(args) -> int:
    from .qchar import bethe_condition, bethe_residues

    Q = Poly.from_roots(_fractions(args.roots))
    p = Poly(_fractions(args.p))
    q = Fraction(args.q)
    residues = bethe_residues(Q, p, q)
    conditions = bethe_condition(Q, p, q)
    regular = all(r == 0 for _, r in residues)
    payload = {"poles": [str(z) for z, _ in residues], "residues": [str(r) for _, r in residues],
               "conditions": [str(c) for c in conditions], "regular": regular}
    lines = [f"z = {z}: residue {r}" for z, r in residues] + [f"regular: {regular}"]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


COMMANDS: Dict[str, Callable[[Any], int]] = {
    "qchar": cmd_qchar,
    "triangularize": cmd_triangularize,
    "verify-appendix": cmd_verify_reference,
    "classical-check": cmd_classical_check,
    "gl2-moduli": cmd_gl2_moduli,
    "bracket": cmd_bracket,
    "dim": cmd_dim,
    "bethe": cmd_bethe,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = argparse.ArgumentParser(prog="qhitchin", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qchar", parents=[common], help="fundamental q-character")
    p.add_argument("--type", required=True)
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--orientation", help="arrows like 2>1,3>2")

    p = sub.add_parser("triangularize", parents=[common], help="solve the gauge and section coefficients")
    p.add_argument("--type", required=True)
    p.add_argument("--orientation")

    p = sub.add_parser("verify-appendix", parents=[common], help="compare derived formulas with reference files")
    p.add_argument("--type", default="D4")
    p.add_argument("--golden-dir", help="directory of reference JSON files")

    p = sub.add_parser("classical-check", parents=[common], help="q = 1 offsets against classical characters")
    p.add_argument("--type", required=True)
    p.add_argument("--trials", type=int, default=20)

    p = sub.add_parser("gl2-moduli", parents=[common], help="the GL2 minuscule quadric")
    p.add_argument("--z1", type=Fraction, required=True)
    p.add_argument("--z2", type=Fraction, required=True)
    p.add_argument("--framing", default="1,0,0,1")
    p.add_argument("--point", help="a0,b0,c0,d0")
    p.add_argument("--points", default="5,7", help="two evaluation points for the bracket table")

    p = sub.add_parser("bracket", parents=[common], help="Sklyanin bracket of two evaluation functions")
    p.add_argument("--g", required=True, help="JSON file with the rational map")
    p.add_argument("--phi", required=True)
    p.add_argument("--psi", required=True)

    p = sub.add_parser("dim", parents=[common], help="moduli dimensions of a coloured divisor")
    p.add_argument("--type", required=True)
    p.add_argument("--divisor", required=True, help='JSON list of {"z": ..., "coweight": [...]}')
    p.add_argument("--torus-rank", type=int)

    p = sub.add_parser("bethe", parents=[common], help="rank-one Bethe regularity")
    p.add_argument("--roots", required=True, help="roots of Q")
    p.add_argument("--p", required=True, help="twist polynomial coefficients, constant term first")
    p.add_argument("--q", required=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
