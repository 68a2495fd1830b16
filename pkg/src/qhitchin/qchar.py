"""q-characters by monomial expansion, their classical limits, and Bethe-root regularity in rank one."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .exactalg.ratfunc import Poly, RatFunc, rational_roots, residue_at
from .exactalg.shiftpoly import Monomial, ShiftPoly, make_monomial, mono_mul
from .rootdata import Character, DynkinType, QuiverOrientation

MONOMIAL_BUDGET = 10_000


class NoReflectableFactor(ValueError):
    """The monomial has no positive power of Y at the requested node."""


class ExpansionBudgetExceeded(RuntimeError):
    """The expansion produced more monomials than the budget allows."""


class DegeneratePole(ValueError):
    """Two apparent poles of the substituted character coincide."""


def _parse_type(dtype: str | DynkinType) -> DynkinType:
    return DynkinType.parse(dtype) if isinstance(dtype, str) else dtype


def inverse_root_monomial(i: int, k: int, orientation: QuiverOrientation) -> Monomial:
    """A_{i,k}^-1: lowers Y(i,k) to Y(i,k-1)^-1 and picks up neighbours and the twist.

    Y(i,k)^-1 Y(i,k-1)^-1 * prod_{i->j} Y(j,k) * prod_{j->i} Y(j,k-1) * P(i,k-1).
    """
    factors = [(("Y", i, k), -1), (("Y", i, k - 1), -1), (("P", i, k - 1), 1)]
    factors += [(("Y", j, k), 1) for j in orientation.outgoing(i)]
    factors += [(("Y", j, k - 1), 1) for j in orientation.incoming(i)]
    return make_monomial(factors)


def _y_part(mono: Monomial, i: int) -> Dict[int, int]:
    return {sym[2]: int(e) for sym, e in mono if sym[0] == "Y" and sym[1] == i}


def iweyl_reflect(
    monomial: ShiftPoly, i: int, orientation: QuiverOrientation, shift: Optional[int] = None
) -> ShiftPoly:
    """Replace one positive Y(i,k) by its reflection, i.e. multiply by A_{i,k}^-1.

    Without an explicit shift the highest k with a positive exponent is used.
    """
    coeff, mono = monomial.as_monomial()
    positive = sorted((k for k, e in _y_part(mono, i).items() if e > 0), reverse=True)
    if shift is None:
        if not positive:
            raise NoReflectableFactor(f"no positive Y({i},k) in {monomial.to_text()}")
        shift = positive[0]
    elif shift not in positive:
        raise NoReflectableFactor(f"Y({i},{shift}) does not occur positively in {monomial.to_text()}")
    return ShiftPoly.monomial(mono_mul(mono, inverse_root_monomial(i, shift, orientation)), coeff)


def _strings(shifts: Dict[int, int]) -> List[List[int]]:
    """Split a multiset of shifts into strings k, k-1, ..., k-l+1 in general position."""
    pool = dict(shifts)
    out = []
    while any(pool.values()):
        top = max(k for k, n in pool.items() if n > 0)
        run = []
        k = top
        while pool.get(k, 0) > 0:
            pool[k] -= 1
            run.append(k)
            k -= 1
        out.append(run)
    return out


def _sl2_expansion(mono: Monomial, i: int, orientation: QuiverOrientation) -> List[Tuple[Monomial, Tuple[int, ...]]]:
    """Monomials of the rank-one character through an i-dominant monomial.

    Each string contributes its own lowering choices: the j lowest members of
    the string are lowered, for j = 0..length.
    """
    strings = _strings({k: e for k, e in _y_part(mono, i).items() if e > 0})
    out = []
    for choice in product(*(range(len(s) + 1) for s in strings)):
        m = mono
        lowered: List[int] = []
        for s, j in zip(strings, choice):
            for k in s[len(s) - j:]:
                m = mono_mul(m, inverse_root_monomial(i, k, orientation))
                lowered.append(k)
        out.append((m, tuple(lowered)))
    return out


@dataclass
class QCharacter:
    """A fundamental q-character with the log of the expansion that produced it."""

    node: int
    poly: ShiftPoly
    generation_log: List[Tuple[str, int, Tuple[int, ...]]] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        """Number of monomials counted with multiplicity."""
        return int(sum(c for _, c in self.poly))


def qcharacter(
    dtype: str | DynkinType,
    node: int,
    orientation: Optional[QuiverOrientation] = None,
    budget: int = MONOMIAL_BUDGET,
) -> QCharacter:
    """Expand Y(node,0) by rank-one strings, tracking per-node colourings of each monomial.

    A monomial that is dominant for node i passes its not yet explained
    multiplicity on to the monomials of its rank-one character at i.
    """
    dt = _parse_type(dtype)
    if not 1 <= node <= dt.rank:
        raise ValueError(f"node {node} outside 1..{dt.rank}")
    orientation = orientation or QuiverOrientation.default(dt)
    orientation.validate(dt)

    top = make_monomial([(("Y", node, 0), 1)])
    coeff: Dict[Monomial, int] = {top: 1}
    colour: Dict[Monomial, Dict[int, int]] = defaultdict(lambda: defaultdict(int))
    levels: Dict[int, List[Monomial]] = defaultdict(list)
    level_of: Dict[Monomial, int] = {top: 0}
    levels[0].append(top)
    log: List[Tuple[str, int, Tuple[int, ...]]] = []

    depth = 0
    while depth in levels:
        for m in levels[depth]:
            for i in range(1, dt.rank + 1):
                if any(e < 0 for e in _y_part(m, i).values()):
                    continue
                extra = coeff[m] - colour[m][i]
                if extra <= 0:
                    continue
                for m2, lowered in _sl2_expansion(m, i, orientation):
                    colour[m2][i] += extra
                    if m2 == m:
                        continue
                    if m2 not in level_of:
                        if len(level_of) >= budget:
                            raise ExpansionBudgetExceeded(f"more than {budget} monomials")
                        level_of[m2] = depth + len(lowered)
                        levels[depth + len(lowered)].append(m2)
                        coeff[m2] = 0
                        log.append((ShiftPoly.monomial(m).to_text(), i, lowered))
                    coeff[m2] = max(coeff[m2], colour[m2][i])
        depth += 1

    poly = ShiftPoly({m: c for m, c in coeff.items() if c})
    return QCharacter(node, poly, log)


def classical_limit(qc: QCharacter | ShiftPoly, rank: int) -> Character:
    """Drop all shifts and set every P to 1, returning a Laurent polynomial in y_1..y_r."""
    poly = qc.poly if isinstance(qc, QCharacter) else qc
    terms: Dict[Tuple[int, ...], int] = defaultdict(int)
    for mono, c in poly:
        exps = [0] * rank
        for sym, e in mono:
            if sym[0] == "Y":
                exps[sym[1] - 1] += int(e)
            elif sym[0] != "P":
                raise ValueError(f"unexpected symbol {sym} in a character")
        if c.denominator != 1:
            raise ValueError("character coefficients must be integers")
        terms[tuple(exps)] += int(c)
    return Character(rank, {k: v for k, v in terms.items() if v})


# -- Bethe roots in rank one --------------------------------------------------


def _substituted_character(Q: Poly, p: Poly, q: Fraction) -> RatFunc:
    """t(z) = y(z) + p(z/q) / y(z/q) with y(z) = Q(z) / Q(z/q)."""
    q = Fraction(q)
    Qz = RatFunc(Q)
    Q1 = RatFunc(Q.scale(1 / q))
    Q2 = RatFunc(Q.scale(1 / q**2))
    return Qz / Q1 + RatFunc(p.scale(1 / q)) * Q2 / Q1


def apparent_poles(Q: Poly, q: Fraction) -> List[Fraction]:
    """Zeros of Q(z/q), i.e. q times the roots of Q."""
    roots = rational_roots(Q)
    if len(roots) != Q.degree:
        raise ValueError("Q must be squarefree with rational roots")
    return sorted(Fraction(q) * w for w in roots)


def bethe_residues(Q: Poly, p: Poly, q: Fraction) -> List[Tuple[Fraction, Fraction]]:
    """Residues of t(z) at each apparent pole z = q w after substituting the Bethe ansatz.

    ``Q`` is squarefree with rational roots w; ``p`` is the twist polynomial.
    Raises DegeneratePole when two apparent poles coincide with each other or
    with a zero of Q that would cancel them ambiguously.
    """
    q = Fraction(q)
    poles = apparent_poles(Q, q)
    if len(set(poles)) != len(poles):
        raise DegeneratePole("apparent poles collide")
    if q != 1 and any(Q(z) == 0 for z in poles):
        raise DegeneratePole("an apparent pole meets a root of Q")
    t = _substituted_character(Q, p, q)
    return [(z, residue_at(t, z)) for z in poles]


def bethe_condition(Q: Poly, p: Poly, q: Fraction) -> List[Fraction]:
    """Q(q w) + p(w) Q(w/q) at every root w of Q; all zero exactly when the poles cancel."""
    q = Fraction(q)
    return [Q(q * w) + p(w) * Q(w / q) for w in sorted(rational_roots(Q))]


__all__ = [
    "DegeneratePole",
    "ExpansionBudgetExceeded",
    "MONOMIAL_BUDGET",
    "NoReflectableFactor",
    "QCharacter",
    "apparent_poles",
    "bethe_condition",
    "bethe_residues",
    "classical_limit",
    "inverse_root_monomial",
    "iweyl_reflect",
    "qcharacter",
]
