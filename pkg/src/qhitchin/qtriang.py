"""q-triangularization of the p-twisted section.

Symbolically we solve ``S_{-1}(u) g^t = g^y u`` for the unipotent gauge
``u = prod exp(u_a e_a)`` and the section coefficients ``t'_i`` as Laurent
polynomials in the shift symbols.  Numerically we solve the A1 equation as
truncated series in ``1/z``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .chevrep import ChevalleyRep, default_rep, exp_nilpotent
from .exactalg.matrix import Matrix
from .exactalg.ratfunc import Poly, RatFunc, rational_roots
from .exactalg.shiftpoly import ShiftPoly, Symbol, P, U, Y
from .rootdata import DynkinType, QuiverOrientation
from .steinberg import steinberg_section, symbolic_twisted_section


class EliminationStalled(RuntimeError):
    """No residual entry is linear in a single unknown with a monomial coefficient."""


class NonIntegralExponent(ArithmeticError):
    """A solved expression still carries fractional powers."""


class NonRegularFraming(ValueError):
    """The leading coefficient of the framing does not separate the eigenvalues."""


class RecursionSingular(ZeroDivisionError):
    """A coefficient needed for division in the series recursion vanishes."""


UNKNOWN_FAMILIES = ("T", "U")


@dataclass
class TriangularizationResult:
    """Solved gauge coefficients u_a and section coefficients t'_i."""

    type: DynkinType
    rep: ChevalleyRep
    orientation: QuiverOrientation
    order: List[int]
    root_order: List[int]
    vectors: Dict[int, Matrix]
    u: Dict[int, ShiftPoly]
    tprime: List[ShiftPoly]
    residual_checked: bool = False
    steps: List[Symbol] = field(default_factory=list)

    def u_matrix(self, shift_by: int = 0) -> Matrix:
        coeffs = {a: v.shift(shift_by) for a, v in self.u.items()}
        return gauge_matrix(self.vectors, coeffs, self.root_order)


def gauge_matrix(vectors: Dict[int, Matrix], coeffs: Dict[int, Any], root_order: Sequence[int]) -> Matrix:
    """prod over roots in the given order of exp(c_a e_a)."""
    m = Matrix.identity(next(iter(vectors.values())).n)
    for a in root_order:
        m = m * exp_nilpotent(coeffs[a], vectors[a])
    return m


def default_root_data(rep: ChevalleyRep, orientation: QuiverOrientation) -> Tuple[List[int], Dict[int, Matrix]]:
    """Convex root order and root vectors for the Coxeter element read sources first.

    The Coxeter element lists the nodes in reverse topological order, the
    reduced word of the longest element is the greedy subword of its powers,
    and each root vector is the matching braid-group translate of a simple one.
    """
    coxeter = list(reversed(orientation.node_order(rep.rank)))
    word, root_order = rep.rs.sorting_word(coxeter)
    return root_order, rep.braid_root_vectors(word)


def lower_form(rep: ChevalleyRep, order: Sequence[int], y: Sequence[Any], p: Sequence[Any]) -> Matrix:
    """prod_i exp(f_i / y_i) y_i^(coroot_i) p_i^(-w_i) in the given node order."""
    g = Matrix.identity(rep.dim)
    for i in order:
        yi = y[i - 1]
        neg_w = tuple(-c for c in rep.fundamental_coweight(i))
        g = (
            g
            * exp_nilpotent(1 / yi if isinstance(yi, (int, Fraction)) else yi**-1, rep.f[i - 1])
            * rep.cocharacter(rep.coroot(i), yi)
            * rep.cocharacter(neg_w, p[i - 1])
        )
    return g


def _apply(m: Matrix, fn) -> Matrix:
    return m.map(lambda x: fn(x) if isinstance(x, ShiftPoly) else x)


def _as_sp(x: Any) -> ShiftPoly:
    return x if isinstance(x, ShiftPoly) else ShiftPoly.const(x)


def triangularize_symbolic(
    dtype: str | DynkinType,
    orientation: Optional[QuiverOrientation] = None,
    root_order: Optional[Sequence[int]] = None,
) -> TriangularizationResult:
    """Solve for u_a and t'_i, then re-verify the full matrix identity."""
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    rep = default_rep(dt)
    orientation = orientation or QuiverOrientation.default(dt)
    orientation.validate(dt)
    order = orientation.node_order(dt.rank)
    roots = [r.index for r in rep.rs.positive_roots]
    convex_order, vectors = default_root_data(rep, orientation)
    root_order = list(root_order) if root_order is not None else convex_order
    if sorted(root_order) != roots:
        raise ValueError("root order must list every positive root once")

    r = dt.rank
    gt = symbolic_twisted_section(rep, order)
    gy = lower_form(rep, order, [Y(i) for i in range(1, r + 1)], [P(i) for i in range(1, r + 1)])
    u0 = gauge_matrix(vectors, {a: U(a, 0) for a in roots}, root_order)
    u_prev = gauge_matrix(vectors, {a: U(a, -1) for a in roots}, root_order)
    residual = u_prev * gt - gy * u0

    entries = [_as_sp(x) for row in residual.rows for x in row]
    solved: Dict[Tuple[str, int], Tuple[int, ShiftPoly]] = {}
    steps: List[Symbol] = []
    total = len(roots) + r

    def lookup(sym: Symbol):
        hit = solved.get((sym[0], sym[1]))
        if hit is None:
            return None
        k, expr = hit
        return expr.shift(sym[2] - k)

    while len(solved) < total:
        pick = _pick_equation(entries)
        if pick is None:
            open_syms = sorted({s for e in entries for s in e.symbols() if s[0] in UNKNOWN_FAMILIES})
            raise EliminationStalled(f"stalled with unknowns {open_syms[:6]}")
        sym, value = pick
        solved[(sym[0], sym[1])] = (sym[2], value)
        steps.append(sym)
        # earlier solutions may still mention the unknown just solved
        for key, (k, expr) in list(solved.items()):
            if _family_syms(expr, sym):
                solved[key] = (k, expr.substitute(lookup))
        entries = [x.substitute(lookup) if _family_syms(x, sym) else x for x in entries]

    u = {a: lookup(("U", a, 0)) for a in roots}
    tprime = [lookup(("T", i, 0)) for i in range(1, r + 1)]
    for expr in list(u.values()) + tprime:
        if expr.has_fractional_exponents():
            raise NonIntegralExponent(f"fractional powers survive in {expr.to_text()}")

    result = TriangularizationResult(dt, rep, orientation, order, root_order, vectors, u, tprime, False, steps)
    result.residual_checked = verify_residual(result)
    if not result.residual_checked:
        raise ArithmeticError("solved gauge does not satisfy the triangularization identity")
    return result


def _pick_equation(entries: List[ShiftPoly]) -> Optional[Tuple[Symbol, ShiftPoly]]:
    """Choose an entry and an unknown to solve for.

    The unknown must occur linearly with a monomial coefficient free of
    unknowns, and the rest of the entry must not involve the same unknown at
    another shift.  Entries with a single unknown win, then the shortest.
    """
    best = None
    for e in entries:
        if e.is_zero():
            continue
        unknowns = {s for s in e.symbols() if s[0] in UNKNOWN_FAMILIES}
        if not unknowns:
            continue
        for sym in sorted(unknowns):
            if any(o[:2] == sym[:2] and o != sym for o in unknowns):
                continue
            split = e.split_linear(sym)
            if split is None:
                continue
            a, b = split
            if not a.is_monomial() or any(s[0] in UNKNOWN_FAMILIES for s in a.symbols()):
                continue
            rank = (len(unknowns), len(e), sym)
            if best is None or rank < best[0]:
                best = (rank, sym, -b * a.inverse_monomial())
    if best is None:
        return None
    return best[1], best[2]


def _family_syms(x: ShiftPoly, sym: Symbol) -> set:
    return {s for s in x.symbols() if s[0] == sym[0] and s[1] == sym[1]}


def verify_residual(res: TriangularizationResult) -> bool:
    """Substitute the solution and check S_{-1}(u) g^t = g^y u exactly."""
    rep, r = res.rep, res.type.rank
    tsub = {("T", i, 0): res.tprime[i - 1] for i in range(1, r + 1)}
    gt = _apply(symbolic_twisted_section(rep, res.order), lambda x: x.substitute(tsub))
    gy = lower_form(rep, res.order, [Y(i) for i in range(1, r + 1)], [P(i) for i in range(1, r + 1)])
    return (res.u_matrix(-1) * gt - gy * res.u_matrix(0)).is_zero()


def classical_value(expr: ShiftPoly, y: Sequence[Fraction]) -> Fraction:
    """Evaluate at q = 1 with every p = 1 and y_i(q^k z) = y_i."""

    def val(sym: Symbol):
        if sym[0] == "P":
            return Fraction(1)
        if sym[0] == "Y":
            return Fraction(y[sym[1] - 1])
        return None

    return expr.evaluate(val)


def evaluate_classical(res: TriangularizationResult, y: Sequence[Fraction]):
    """Section coordinates t, the Steinberg point, the lower form and the gauge at q = 1."""
    rep = res.rep
    t = [classical_value(x, y) for x in res.tprime]
    gt = steinberg_section(rep, t, res.order)
    gy = lower_form(rep, res.order, [Fraction(v) for v in y], [Fraction(1)] * rep.rank)
    u = gauge_matrix(res.vectors, {a: classical_value(v, y) for a, v in res.u.items()}, res.root_order)
    return t, gt, gy, u


# -- golden comparison --------------------------------------------------------

GOLDEN_ENV = "QHITCHIN_GOLDEN_DIR"


def golden_dir() -> Path:
    """Directory of reference formula files; the environment variable overrides the bundled copy."""
    override = os.environ.get(GOLDEN_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "golden"


def load_golden(dtype: str | DynkinType, directory: Optional[Path] = None) -> dict:
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    path = (directory or golden_dir()) / f"{str(dt).lower()}.json"
    if not path.exists():
        raise FileNotFoundError(f"no reference formulas for {dt} at {path}")
    return json.loads(path.read_text(encoding="utf-8"))


@dataclass
class FormulaCheck:
    """Outcome of comparing one derived expression with its reference."""

    name: str
    ok: bool
    sign: int
    terms: int
    first_difference: Optional[Tuple[str, str, str]] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "sign": self.sign, "terms": self.terms}
        if self.first_difference is not None:
            mono, got, want = self.first_difference
            out["first_difference"] = {"monomial": mono, "derived": got, "reference": want}
        return out


def untwist(expr: ShiftPoly) -> ShiftPoly:
    """Set every P symbol to 1."""
    return expr.substitute(lambda sym: ShiftPoly.const(1) if sym[0] == "P" else None)


def _first_difference(got: ShiftPoly, want: ShiftPoly) -> Tuple[str, str, str]:
    diff = got - want
    mono = next(iter(diff))[0]
    got_c = dict(iter(got)).get(mono, Fraction(0))
    want_c = dict(iter(want)).get(mono, Fraction(0))
    return ShiftPoly.monomial(mono).to_text(), str(got_c), str(want_c)


def _check(name: str, got: ShiftPoly, want: ShiftPoly, allow_sign: bool) -> FormulaCheck:
    if got == want:
        return FormulaCheck(name, True, 1, len(want))
    if allow_sign and got == -want:
        return FormulaCheck(name, True, -1, len(want))
    return FormulaCheck(name, False, 1, len(want), _first_difference(got, want))


def compare_with_golden(res: TriangularizationResult, golden: dict) -> List[FormulaCheck]:
    """Check every u_a (up to a sign per root) and every t'_i (exactly) against reference data."""
    prep = (lambda x: x) if golden.get("twisted", True) else untwist
    checks = []
    for key, entry in sorted(golden["u"].items(), key=lambda kv: int(kv[0])):
        want = ShiftPoly.from_json(entry["terms"])
        checks.append(_check(f"u{key}", prep(res.u[int(key)]), want, allow_sign=True))
    for key, entry in sorted(golden["tprime"].items(), key=lambda kv: int(kv[0])):
        want = ShiftPoly.from_json(entry["terms"])
        checks.append(_check(f"t'{key}", prep(res.tprime[int(key) - 1]), want, allow_sign=False))
    return checks


# -- numeric q-eigenvalues for 2x2 -----------------------------------------


@dataclass
class SeriesEigenvalues:
    """Truncated series in 1/z: entry k of each list is the coefficient of z^-k."""

    y: List[List[Fraction]]
    a: List[Fraction]
    order: int
    q: Fraction


def _series(g: Sequence[Sequence[Any]], n: int) -> List[List[Fraction]]:
    entries = [x if isinstance(x, RatFunc) else RatFunc(x) for row in g for x in row]
    if len(entries) != 4:
        raise ValueError("expected a 2x2 matrix")
    return [x.laurent_expand_at_infinity(n) for x in entries]


def _cauchy(x: Sequence[Fraction], y: Sequence[Fraction], k: int) -> Fraction:
    return sum((x[j] * y[k - j] for j in range(k + 1)), Fraction(0))


def _equation_coeff(k: int, a, ap, A, B, C, D) -> Fraction:
    """Coefficient of z^-k in B + a'D - aA - a a'C for the given truncations."""
    aap = [_cauchy(a, ap, j) for j in range(k + 1)]
    return B[k] + _cauchy(ap, D, k) - _cauchy(a, A, k) - _cauchy(aap, C, k)


def series_q_eigenvalues(g: Sequence[Sequence[Any]], q: Fraction, N: int) -> SeriesEigenvalues:
    """Gauge g = [[A, B], [C, D]] into lower-triangular form to order z^-N.

    With u = [[1, a], [0, 1]] and a'(z) = a(z/q), the matrix u(z/q) g u(z)^-1 is
    lower triangular exactly when B + a'D - aA - a a'C = 0; its diagonal is
    then (A + a'C, D - aC).  All entries must be regular at infinity.
    """
    q = Fraction(q)
    A, B, C, D = _series(g, N)
    disc = (A[0] - D[0]) ** 2 + 4 * B[0] * C[0]
    if disc == 0:
        raise NonRegularFraming("leading coefficient has a repeated eigenvalue")
    if C[0] == 0:
        a0 = B[0] / (A[0] - D[0])
    else:
        roots = rational_roots(Poly((-B[0], A[0] - D[0], C[0])))
        if not roots:
            raise NonRegularFraming("leading eigenvalues are not rational")
        a0 = max(roots)
    a = [a0] + [Fraction(0)] * N
    for k in range(1, N + 1):
        ap = [q**j * a[j] for j in range(N + 1)]
        rest = _equation_coeff(k, a, ap, A, B, C, D)
        lead = q**k * (D[0] - a0 * C[0]) - (A[0] + a0 * C[0])
        if lead == 0:
            raise RecursionSingular(f"vanishing pivot at order {k}")
        a[k] = -rest / lead
    ap = [q**j * a[j] for j in range(N + 1)]
    y1 = [A[k] + _cauchy(ap, C, k) for k in range(N + 1)]
    y2 = [D[k] - _cauchy(a, C, k) for k in range(N + 1)]
    return SeriesEigenvalues([y1, y2], a, N, q)


def series_residual(g: Sequence[Sequence[Any]], se: SeriesEigenvalues) -> List[Fraction]:
    """Coefficients z^0..z^-N of B + a'D - aA - a a'C for the computed a."""
    A, B, C, D = _series(g, se.order)
    ap = [se.q**j * x for j, x in enumerate(se.a)]
    return [_equation_coeff(k, se.a, ap, A, B, C, D) for k in range(se.order + 1)]
