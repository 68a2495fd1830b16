"""Steinberg sections, their p-twisted variant, and the classical Chevalley-map check."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from .chevrep import ChevalleyRep, default_rep, exp_nilpotent
from .exactalg.matrix import Matrix
from .exactalg.shiftpoly import P, T


class NonAffineDiscrepancy(ArithmeticError):
    """The difference between q-character values and section coordinates is not constant."""


@dataclass(frozen=True)
class SectionPoint:
    """Coefficients t_1..t_r, optionally with twist parameters p_1..p_r."""

    t: tuple
    p: Optional[tuple] = None

    @property
    def twisted(self) -> bool:
        return self.p is not None


def steinberg_section(rep: ChevalleyRep, t: Sequence[Any], order: Optional[Sequence[int]] = None) -> Matrix:
    """prod_i exp(t_i e_i) sigma_i over the nodes in ``order`` (default ascending)."""
    if len(t) != rep.rank:
        raise ValueError(f"need {rep.rank} coefficients")
    order = list(order) if order is not None else list(range(1, rep.rank + 1))
    g = Matrix.identity(rep.dim)
    for i in order:
        g = g * exp_nilpotent(t[i - 1], rep.e[i - 1]) * rep.weyl_representative(i)
    return g


def p_twisted_section(
    rep: ChevalleyRep, t: Sequence[Any], p: Sequence[Any], order: Optional[Sequence[int]] = None
) -> Matrix:
    """prod_i exp(t_i e_i) sigma_i p_i^(-w_i) with fundamental coweights w_i."""
    if len(t) != rep.rank or len(p) != rep.rank:
        raise ValueError(f"need {rep.rank} coefficients and twists")
    order = list(order) if order is not None else list(range(1, rep.rank + 1))
    g = Matrix.identity(rep.dim)
    for i in order:
        neg_w = tuple(-c for c in rep.fundamental_coweight(i))
        g = g * exp_nilpotent(t[i - 1], rep.e[i - 1]) * rep.weyl_representative(i) * rep.cocharacter(neg_w, p[i - 1])
    return g


def symbolic_twisted_section(rep: ChevalleyRep, order: Optional[Sequence[int]] = None) -> Matrix:
    """The p-twisted section with placeholders T(i,0) and P(i,0)."""
    r = rep.rank
    return p_twisted_section(rep, [T(i) for i in range(1, r + 1)], [P(i) for i in range(1, r + 1)], order)


def gl2_steinberg(trace: Any, det: Any) -> Matrix:
    """Companion-type GL2 section [[trace, -det], [1, 0]] with the given invariants."""
    return Matrix([[trace, -det], [Fraction(1), Fraction(0)]])


def gl2_from_eigenvalues(s: Any, t: Any) -> Matrix:
    """GL2 section point with eigenvalues s and t."""
    return gl2_steinberg(s + t, s * t)


def charpoly_coefficients(m: Matrix) -> List[Fraction]:
    """e_1..e_n of the eigenvalues, via Faddeev-LeVerrier (exact over Q)."""
    n = m.n
    coeffs: List[Fraction] = []
    M = Matrix.zeros(n)
    ident = Matrix.identity(n)
    c_prev = Fraction(1)
    for k in range(1, n + 1):
        M = m * M + ident.scale(c_prev) if k > 1 else ident
        AM = m * M
        c = -AM.trace() / k
        coeffs.append(c)
        c_prev = c
    # char poly x^n + c_1 x^{n-1} + ... ; e_k = (-1)^k c_k
    return [(-1) ** (k + 1) * c for k, c in enumerate(coeffs)]


def classical_chevalley_check(dtype: str, trials: int = 20, seed: int = 0) -> List[Fraction]:
    """Constants c_i with t_i = chi_{w_i}(y) + c_i at q = 1 on the Steinberg section.

    For random torus points y, the q=1 limit of each t'_i evaluated at y gives
    section coordinates t; the section point sigma(t) is then checked to be
    conjugate to the lower-triangular element with diagonal y through the
    solved gauge u, and the classical fundamental characters at y are compared
    with t.  Raises NonAffineDiscrepancy when the offsets vary.
    """
    from .qtriang import triangularize_symbolic, evaluate_classical
    from .rootdata import RootSystem

    res = triangularize_symbolic(dtype)
    rep = res.rep
    rs: RootSystem = rep.rs
    chars = [rs.classical_character(rs.fundamental_weight(i)) for i in range(1, rs.rank + 1)]
    rng = random.Random(seed)
    consts: Optional[List[Fraction]] = None
    for _ in range(trials):
        y = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(rs.rank)]
        t, gt, gy, u = evaluate_classical(res, y)
        if u.inverse() * gy * u != gt:
            raise NonAffineDiscrepancy("gauge does not conjugate the section to the triangular form")
        if gt != steinberg_section(rep, t, res.order):
            raise NonAffineDiscrepancy("evaluated section differs from the Steinberg section")
        # section coordinate minus the ordinary fundamental character
        c = [t[i] - chars[i].evaluate(y) for i in range(rs.rank)]
        if consts is None:
            consts = c
        elif c != consts:
            raise NonAffineDiscrepancy(f"offsets vary: {consts} vs {c}")
    assert consts is not None
    return consts
