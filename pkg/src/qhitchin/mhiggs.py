"""Explicit rational multiplicative Higgs moduli: the GL2 minuscule quadric and the GL_n Hitchin map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from .exactalg.matrix import Matrix
from .exactalg.ratfunc import Poly, RatFunc, poly_gcd
from .rootdata import ColoredDivisor
from .sklyanin import GroupRatMap
from .steinberg import charpoly_coefficients


class CoincidentSingularities(ValueError):
    """The two singular points of the minuscule divisor coincide."""


class SingularFraming(ValueError):
    """The framing at infinity is not invertible."""


class ZeroB(ValueError):
    """The Darboux coordinate b must be nonzero."""


class DegreeMismatch(ValueError):
    """Hitchin-section data of inconsistent degrees."""


Quad = Tuple[Fraction, Fraction, Fraction, Fraction]


def _quad(xs: Sequence[Any]) -> Quad:
    if len(xs) != 4:
        raise ValueError("expected four entries a, b, c, d")
    a, b, c, d = (Fraction(x) for x in xs)
    return a, b, c, d


@dataclass(frozen=True)
class GL2MinusculeSpace:
    """Points (a0, b0, c0, d0) with g(z) = (g_inf z - g0) / (z - z2) and det g = (z - z1)/(z - z2) det g_inf."""

    z1: Fraction
    z2: Fraction
    framing: Quad

    @property
    def det_inf(self) -> Fraction:
        a, b, c, d = self.framing
        return a * d - b * c

    def linear_relation(self, point: Sequence[Any]) -> Fraction:
        """Left minus right side of the hyperplane equation."""
        a0, b0, c0, d0 = _quad(point)
        a, b, c, d = self.framing
        return -a0 * d - a * d0 + b0 * c + b * c0 - (-self.z1 - self.z2) * self.det_inf

    def quadric_relation(self, point: Sequence[Any]) -> Fraction:
        a0, b0, c0, d0 = _quad(point)
        return a0 * d0 - b0 * c0 - self.z1 * self.z2 * self.det_inf

    def contains(self, point: Sequence[Any]) -> bool:
        return self.linear_relation(point) == 0 and self.quadric_relation(point) == 0

    def relations_text(self) -> Tuple[str, str]:
        a, b, c, d = self.framing
        lin = f"-({d})*a0 - ({a})*d0 + ({c})*b0 + ({b})*c0 = {(-self.z1 - self.z2) * self.det_inf}"
        quad = f"a0*d0 - b0*c0 = {self.z1 * self.z2 * self.det_inf}"
        return lin, quad

    def group_map(self, point: Sequence[Any]) -> GroupRatMap:
        """The GL2-valued map attached to a point; the point must lie on the variety."""
        if not self.contains(point):
            raise ValueError(f"{tuple(str(x) for x in _quad(point))} is not on the variety")
        z = RatFunc.z()
        pole = z - self.z2
        entries = [(gi * z - g0) / pole for gi, g0 in zip(self.framing, _quad(point))]
        divisor = ColoredDivisor((self.z1, self.z2), ((1, 0), (0, -1)))
        return GroupRatMap(Matrix([entries[:2], entries[2:]]), divisor=divisor)


def gl2_minuscule_space(z1: Any, z2: Any, framing: Sequence[Any]) -> GL2MinusculeSpace:
    z1, z2 = Fraction(z1), Fraction(z2)
    if z1 == z2:
        raise CoincidentSingularities(f"z1 = z2 = {z1}")
    fr = _quad(framing)
    if fr[0] * fr[3] - fr[1] * fr[2] == 0:
        raise SingularFraming("framing has zero determinant")
    return GL2MinusculeSpace(z1, z2, fr)


def darboux_chart(m: Any, a: Any, b: Any) -> Quad:
    """(a0, b0, c0, d0) = (a, b(m - a), (m + a)/b, -a) on a0^2 + b0 c0 = m^2."""
    m, a, b = Fraction(m), Fraction(a), Fraction(b)
    if b == 0:
        raise ZeroB("b = 0 is outside the chart")
    return a, b * (m - a), (m + a) / b, -a


def darboux_inverse(m: Any, point: Sequence[Any]) -> Tuple[Fraction, Fraction]:
    """Recover (a, b) from a chart point with a0 != m."""
    a0, b0, _, _ = _quad(point)
    m = Fraction(m)
    if a0 == m:
        raise ZeroB("a0 = m: b is not determined by b0")
    return a0, b0 / (m - a0)


def darboux_space(m: Any) -> GL2MinusculeSpace:
    """Identity framing with z1 = -m, z2 = m."""
    return gl2_minuscule_space(-Fraction(m), Fraction(m), (1, 0, 0, 1))


def hitchin_fibration(g: GroupRatMap | Matrix) -> List[RatFunc]:
    """Elementary symmetric functions e_1..e_n of the eigenvalues of g(z); for GL2, (trace, det)."""
    m = g.matrix if isinstance(g, GroupRatMap) else g
    m = m.map(lambda x: x if isinstance(x, RatFunc) else RatFunc(x))
    return [c if isinstance(c, RatFunc) else RatFunc(c) for c in charpoly_coefficients(m)]


def hitchin_section_gl2(p1: Poly, p2: Poly, qpoly: Poly) -> GroupRatMap:
    """[[q/p2, -p1/p2], [1, 0]] for monic p1, p2 of equal degree d and deg q < d."""
    if p1.is_zero() or p2.is_zero() or p1.lead() != 1 or p2.lead() != 1:
        raise DegreeMismatch("p1 and p2 must be monic")
    if p1.degree != p2.degree:
        raise DegreeMismatch(f"deg p1 = {p1.degree} but deg p2 = {p2.degree}")
    if not qpoly.is_zero() and qpoly.degree >= p2.degree:
        raise DegreeMismatch(f"deg q = {qpoly.degree} must be below {p2.degree}")
    one, zero = RatFunc(1), RatFunc(0)
    return GroupRatMap(Matrix([[RatFunc(qpoly, p2), -RatFunc(p1, p2)], [one, zero]]))


def check_framing(g_inf: Matrix) -> bool:
    """True iff the characteristic polynomial is squarefree."""
    e = charpoly_coefficients(g_inf.map(Fraction))
    n = g_inf.n
    # det(x - g) = sum_k (-1)^k e_k x^(n-k), listed low degree first
    coeffs = [Fraction((-1) ** (n - j)) * ([Fraction(1)] + e)[n - j] for j in range(n + 1)]
    p = Poly(coeffs)
    return poly_gcd(p, p.derivative()).degree == 0
