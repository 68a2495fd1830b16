"""Univariate polynomials and rational functions in ``z`` over the rationals.

Everything is exact.  A :class:`RatFunc` is always stored in lowest terms with a
monic denominator, so two equal functions have identical representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, List, Sequence, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial or rational function."""


class PoleAtEvaluationPoint(ValueError):
    """A rational function was evaluated at one of its poles."""


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"


INF = _Infinity()


def as_rational(x: Union[int, str, Fraction]) -> Fraction:
    """Parse ``"n/d"``, ``"n"`` or an int into a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def _strip(coeffs: Iterable[Scalar]) -> Tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Dense polynomial, coefficients listed from the constant term up."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        self.coeffs: Tuple[Fraction, ...] = _strip(coeffs)

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Poly":
        p = cls.const(1)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({[str(c) for c in self.coeffs]})"

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return Poly(quot), Poly(rem[:dq] if dq > 0 else [])

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.lead()
        return Poly(c / lead for c in self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def scale(self, s: Scalar) -> "Poly":
        """The polynomial ``z -> p(s*z)``."""
        s = Fraction(s)
        return Poly(c * s**i for i, c in enumerate(self.coeffs))

    def translate(self, a: Scalar) -> "Poly":
        """The polynomial ``s -> p(a + s)``."""
        out = Poly()
        base = Poly((Fraction(a), 1))
        for c in reversed(self.coeffs):
            out = out * base + Poly.const(c)
        return out


def _as_poly(x: Union[Poly, Scalar]) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (the zero polynomial only when both inputs vanish)."""
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


class RatFunc:
    """A rational function ``num/den`` in canonical form.

    The denominator is monic and coprime to the numerator; zero is ``0/1``.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, Scalar, Sequence[Scalar]], den: Union[Poly, Scalar, Sequence[Scalar]] = 1):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly.const(1)
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.lead()
        self.num = Poly(c / lead for c in num.coeffs)
        self.den = Poly(c / lead for c in den.coeffs)

    @classmethod
    def z(cls) -> "RatFunc":
        return cls(Poly.z())

    @classmethod
    def const(cls, c: Scalar) -> "RatFunc":
        return cls(Poly.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_const(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFunc(other)
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFunc({[str(c) for c in self.num.coeffs]}, {[str(c) for c in self.den.coeffs]})"

    def __add__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num, out.den = -self.num, self.den
        return out

    def __sub__(self, other) -> "RatFunc":
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other) -> "RatFunc":
        return _as_ratfunc(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = _as_ratfunc(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return _as_ratfunc(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc.const(1) / (self ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def __call__(self, x) -> Fraction:
        return self.eval(x)

    def eval(self, x) -> Fraction:
        """Value at a rational point, or at :data:`INF`."""
        if x is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                raise PoleAtEvaluationPoint("pole at infinity")
            return self.num.lead() / self.den.lead() if dn == dd else Fraction(0)
        d = self.den(x)
        if d == 0:
            raise PoleAtEvaluationPoint(f"pole at z = {x}")
        return self.num(x) / d

    def scale(self, s: Scalar) -> "RatFunc":
        """The function ``z -> f(s*z)``."""
        return RatFunc(self.num.scale(s), self.den.scale(s))

    def derivative(self) -> "RatFunc":
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def poles(self) -> List[Fraction]:
        """Rational poles (roots of the denominator) found by the rational-root test."""
        return rational_roots(self.den)

    def order_at_infinity(self) -> int:
        """deg(den) - deg(num); positive means a zero at infinity."""
        if self.is_zero():
            raise ValueError("order of the zero function")
        return self.den.degree - self.num.degree

    def laurent_expand_at_infinity(self, order: int) -> List[Fraction]:
        """Coefficients of ``z^0, z^-1, ..., z^-order`` of the expansion at infinity.

        The function must be regular at infinity.
        """
        if not self.is_zero() and self.num.degree > self.den.degree:
            raise PoleAtEvaluationPoint("not regular at infinity")
        return series_at_infinity(self.num, self.den, order)

    def taylor_at(self, a: Scalar, lo: int, hi: int) -> List[Fraction]:
        """Laurent coefficients of ``f(a + s)`` for powers ``s^lo .. s^hi``."""
        return laurent_at(self.num, self.den, Fraction(a), lo, hi)

    def pole_order_at(self, a: Scalar) -> int:
        m = 0
        d = self.den
        a = Fraction(a)
        while d(a) == 0:
            d = d.divmod(Poly((-a, 1)))[0]
            m += 1
        return m


def _coerce_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return Poly(x)


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc(x)


def series_at_infinity(num: Poly, den: Poly, order: int) -> List[Fraction]:
    """Long division of ``num/den`` in descending powers of ``z``.

    Returns the coefficients of ``z^0 .. z^-order``.  Terms of positive degree
    must be absent (checked by the caller).
    """
    if num.is_zero():
        return [Fraction(0)] * (order + 1)
    dd = den.degree
    rev_den = list(reversed(den.coeffs))  # den = z^dd * (rev_den[0] + rev_den[1]/z + ...)
    # num / z^dd expanded in w = 1/z: coefficient of w^k is num.coeffs[dd - k]
    n = [num.coeffs[dd - k] if 0 <= dd - k < len(num.coeffs) else Fraction(0) for k in range(order + 1)]
    out: List[Fraction] = []
    for k in range(order + 1):
        acc = n[k]
        for j in range(1, min(k, len(rev_den) - 1) + 1):
            acc -= rev_den[j] * out[k - j]
        out.append(acc / rev_den[0])
    return out


def laurent_at(num: Poly, den: Poly, a: Fraction, lo: int, hi: int) -> List[Fraction]:
    """Coefficients of ``s^lo .. s^hi`` in the Laurent expansion of num/den at ``z = a + s``."""
    n = num.translate(a)
    d = den.translate(a)
    m = 0
    while d.coeffs and d.coeffs[0] == 0:
        d = Poly(d.coeffs[1:])
        m += 1
    # f = s^-m * n(s)/d(s) with d(0) != 0; power series of n/d
    length = hi + m + 1
    series: List[Fraction] = []
    for k in range(max(length, 0)):
        acc = n.coeffs[k] if k < len(n.coeffs) else Fraction(0)
        for j in range(1, min(k, len(d.coeffs) - 1) + 1):
            acc -= d.coeffs[j] * series[k - j]
        series.append(acc / d.coeffs[0])
    out = []
    for p in range(lo, hi + 1):
        k = p + m
        out.append(series[k] if 0 <= k < len(series) else Fraction(0))
    return out


def residue_at(f: RatFunc, a) -> Fraction:
    """Residue of ``f(z) dz`` at a rational point or at :data:`INF`.

    At infinity the residue is minus the coefficient of ``z^-1`` in the
    expansion there, so the residues of a rational function sum to zero.
    """
    if f.is_zero():
        return Fraction(0)
    if a is INF:
        # f = polynomial part + proper part; only the proper part contributes
        q, r = f.num.divmod(f.den)
        if r.is_zero():
            return Fraction(0)
        return -series_at_infinity(r, f.den, 1)[1]
    a = Fraction(a)
    if f.den(a) != 0:
        return Fraction(0)
    return laurent_at(f.num, f.den, a, -1, -1)[0]


def rational_roots(p: Poly) -> List[Fraction]:
    """Distinct rational roots of ``p``, sorted.

    Real roots of the squarefree part are isolated with a Sturm sequence and
    narrowed until the unique fraction with denominator dividing the leading
    coefficient can be read off; every candidate is then checked exactly.
    """
    if p.degree <= 0:
        return []
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [c * den for c in p.coeffs]
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    q = Poly(ints[shift:])
    if q.degree <= 0:
        return sorted(roots)
    lead = abs(int(q.lead()))
    sq = q.divmod(poly_gcd(q, q.derivative()))[0]
    roots.update(_isolate_rational(sq, lead))
    return sorted(roots)


def _sign_changes(seq: List[Poly], x: Fraction) -> int:
    signs = [v for v in (s(x) for s in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _isolate_rational(p: Poly, lead: int) -> set:
    """Rational roots of a squarefree p whose denominators divide ``lead``."""
    found = set()
    while p.degree > 0:
        seq = [p, p.derivative()]
        while seq[-1].degree > 0:
            seq.append(-seq[-2].divmod(seq[-1])[1])
        bound = 1 + max(abs(c / p.lead()) for c in p.coeffs)
        width = Fraction(1, 2 * lead * lead)
        stack = [(-bound, bound)]
        hit = None
        while stack:
            a, b = stack.pop()
            count = _sign_changes(seq, a) - _sign_changes(seq, b)
            if count == 0:
                continue
            if count == 1 and b - a < width:
                c = ((a + b) / 2).limit_denominator(lead)
                if a < c <= b and p(c) == 0:
                    found.add(c)
                continue
            m = (a + b) / 2
            if p(m) == 0:
                hit = m
                break
            stack += [(a, m), (m, b)]
        if hit is None:
            break
        # a root landed on a bisection point: keep it, deflate and start over
        found.add(hit)
        p = p.divmod(Poly((-hit, 1)))[0]
    return found
