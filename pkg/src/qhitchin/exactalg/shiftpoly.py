"""Laurent polynomials in shift symbols ``F(i,k)`` and their fractions.

A symbol ``Y(i,k)`` stands for ``y_i(q^k z)``.  Families are ``P`` (twist
parameters), ``T`` (section coefficients), ``U`` (unipotent gauge unknowns) and
``Y`` (eigenvalue functions).  Exponents are integers, except that ``P`` may
carry fractional exponents, which appear transiently in cocharacters.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

Symbol = Tuple[str, int, int]
Exponent = Union[int, Fraction]
Monomial = Tuple[Tuple[Symbol, Exponent], ...]

FAMILIES = ("P", "T", "U", "Y")
ONE: Monomial = ()


class FractionalExponentOutsideP(ValueError):
    """A fractional power was attached to a symbol that is not a ``P``."""


class ParseError(ValueError):
    """Malformed text or JSON for a shift expression."""


def _norm_exp(e: Exponent) -> Exponent:
    if isinstance(e, Fraction) and e.denominator == 1:
        return int(e)
    return e


def _check_factor(sym: Symbol, e: Exponent) -> None:
    if isinstance(e, Fraction) and sym[0] != "P":
        raise FractionalExponentOutsideP(f"fractional power on {format_symbol(sym)}")


def make_monomial(factors: Iterable[Tuple[Symbol, Exponent]]) -> Monomial:
    """Combine factors into a canonical monomial key."""
    acc: Dict[Symbol, Exponent] = {}
    for sym, e in factors:
        if sym[0] not in FAMILIES:
            raise ValueError(f"unknown symbol family {sym[0]!r}")
        acc[sym] = acc.get(sym, 0) + e
    out = []
    for sym in sorted(acc):
        e = _norm_exp(acc[sym])
        if e:
            _check_factor(sym, e)
            out.append((sym, e))
    return tuple(out)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        sa, ea = a[i]
        sb, eb = b[j]
        if sa == sb:
            e = _norm_exp(ea + eb)
            if e:
                out.append((sa, e))
            i += 1
            j += 1
        elif sa < sb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_pow(a: Monomial, n: Exponent) -> Monomial:
    if n == 0:
        return ONE
    out = []
    for s, e in a:
        ne = _norm_exp(e * n)
        _check_factor(s, ne)
        out.append((s, ne))
    return tuple(out)


def mono_inv(a: Monomial) -> Monomial:
    return tuple((s, -e) for s, e in a)


def mono_shift(a: Monomial, m: int) -> Monomial:
    # shifting preserves the sort order since it is uniform in the last slot
    return tuple(((f, i, k + m), e) for (f, i, k), e in a)


def format_symbol(sym: Symbol) -> str:
    f, i, k = sym
    return f"{f}({i},{k})"


def _format_exp(e: Exponent) -> str:
    if isinstance(e, Fraction):
        return f"({e.numerator}/{e.denominator})"
    return str(e)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(coeff: Fraction, mono: Monomial) -> str:
    """``coeff * F(i,k)^e * ...``; a unit coefficient is written only as a sign."""
    parts = [format_symbol(s) + ("" if e == 1 else "^" + _format_exp(e)) for s, e in mono]
    if not parts:
        return _format_coeff(coeff)
    if coeff == 1:
        return " * ".join(parts)
    return " * ".join([_format_coeff(coeff)] + parts)


class ShiftPoly:
    """A Laurent polynomial in shift symbols with rational coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Union[int, Fraction]]] = None):
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = Fraction(c)
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "ShiftPoly":
        out = cls.__new__(cls)
        out.terms = terms
        out._hash = None
        return out

    @classmethod
    def const(cls, c: Union[int, Fraction]) -> "ShiftPoly":
        return cls({ONE: c})

    @classmethod
    def symbol(cls, family: str, node: int, shift: int = 0, exp: Exponent = 1) -> "ShiftPoly":
        return cls({make_monomial([((family, node, shift), exp)]): 1})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: Union[int, Fraction] = 1) -> "ShiftPoly":
        return cls({mono: coeff})

    # -- basic queries -------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def as_monomial(self) -> Tuple[Fraction, Monomial]:
        if len(self.terms) != 1:
            raise ValueError("not a single monomial")
        (m, c), = self.terms.items()
        return c, m

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("not a constant")
        return self.terms.get(ONE, Fraction(0))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def symbols(self) -> set:
        return {s for m in self.terms for s, _ in m}

    def has_fractional_exponents(self) -> bool:
        return any(isinstance(e, Fraction) for m in self.terms for _, e in m)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ShiftPoly.const(other)
        if isinstance(other, ShiftFrac):
            return other == self
        return isinstance(other, ShiftPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"ShiftPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- ring operations -----------------------------------------------
    def __add__(self, other) -> "ShiftPoly":
        if isinstance(other, ShiftFrac):
            return NotImplemented
        other = _as_shiftpoly(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ShiftPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "ShiftPoly":
        return ShiftPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "ShiftPoly":
        if isinstance(other, ShiftFrac):
            return NotImplemented
        return self + (-_as_shiftpoly(other))

    def __rsub__(self, other) -> "ShiftPoly":
        return _as_shiftpoly(other) - self

    def __mul__(self, other) -> "ShiftPoly":
        if isinstance(other, ShiftFrac):
            return NotImplemented
        if isinstance(other, (int, Fraction)):
            if not other:
                return ShiftPoly()
            return ShiftPoly._raw({m: c * other for m, c in self.terms.items()})
        other = _as_shiftpoly(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return ShiftPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: Exponent) -> "ShiftPoly":
        n = _norm_exp(n)
        if isinstance(n, Fraction) or n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have inverses or fractional powers in the Laurent ring")
            c, m = self.as_monomial()
            if isinstance(n, Fraction):
                if c != 1:
                    raise ValueError("fractional power of a monomial with non-unit coefficient")
                return ShiftPoly._raw({mono_pow(m, n): Fraction(1)})
            return ShiftPoly._raw({mono_pow(m, n): c**n})
        out = ShiftPoly.const(1)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __truediv__(self, other) -> "ShiftPoly | ShiftFrac":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a shift polynomial by zero")
            return self * (1 / Fraction(other))
        other = _as_shiftpoly(other) if not isinstance(other, ShiftFrac) else other
        if isinstance(other, ShiftPoly) and other.is_monomial():
            return self * other.inverse_monomial()
        return ShiftFrac(self) / other

    def __rtruediv__(self, other):
        return ShiftFrac(_as_shiftpoly(other)) / self

    def inverse_monomial(self) -> "ShiftPoly":
        c, m = self.as_monomial()
        return ShiftPoly._raw({mono_inv(m): 1 / c})

    # -- structural maps ------------------------------------------------
    def shift(self, m: int) -> "ShiftPoly":
        """Replace every ``F(i,k)`` by ``F(i,k+m)``."""
        if m == 0:
            return self
        return ShiftPoly._raw({mono_shift(mo, m): c for mo, c in self.terms.items()})

    def map_coefficients(self, fn: Callable[[Fraction], Fraction]) -> "ShiftPoly":
        return ShiftPoly({m: fn(c) for m, c in self.terms.items()})

    def map_monomials(self, fn: Callable[[Monomial], Monomial]) -> "ShiftPoly":
        """Apply a monomial map and collect like terms."""
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = fn(m)
            out[nm] = out.get(nm, 0) + c
        return ShiftPoly(out)

    def substitute(self, mapping: Union[Mapping[Symbol, "ShiftPoly"], Callable[[Symbol], Optional["ShiftPoly"]]]) -> "ShiftPoly":
        """Replace symbols by shift polynomials.

        ``mapping`` is a dict or a callable returning ``None`` for symbols that
        stay put.  Negative powers are only allowed for monomial images.
        """
        get = mapping.get if isinstance(mapping, Mapping) else mapping
        cache: Dict[Tuple[Symbol, Exponent], ShiftPoly] = {}
        acc: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            kept = []
            factor: Optional[ShiftPoly] = None
            for sym, e in mono:
                img = get(sym)
                if img is None:
                    kept.append((sym, e))
                    continue
                key = (sym, e)
                p = cache.get(key)
                if p is None:
                    p = _as_shiftpoly(img) ** e
                    cache[key] = p
                factor = p if factor is None else factor * p
            base = tuple(kept)
            if factor is None:
                acc[base] = acc.get(base, 0) + c
            else:
                for m2, c2 in factor.terms.items():
                    nm = mono_mul(base, m2)
                    acc[nm] = acc.get(nm, 0) + c * c2
        return ShiftPoly(acc)

    def evaluate(self, values: Union[Mapping[Symbol, object], Callable[[Symbol], object]], one=None):
        """Evaluate with every symbol sent to a ring element.

        Values may be Fractions, RatFuncs or anything with ``*``, ``+`` and
        integer ``**``.  Fractional powers need a rational value with an exact
        rational root.
        """
        get = values.get if isinstance(values, Mapping) else values
        total = None
        for mono, c in self.terms.items():
            term = c if one is None else one * c
            for sym, e in mono:
                v = get(sym)
                if v is None:
                    raise KeyError(f"no value for {format_symbol(sym)}")
                term = term * _power(v, e)
            total = term if total is None else total + term
        if total is None:
            return Fraction(0) if one is None else one * 0
        return total

    def split_linear(self, sym: Symbol) -> Optional[Tuple["ShiftPoly", "ShiftPoly"]]:
        """Write ``self = A*sym + B`` with ``A``, ``B`` free of ``sym``.

        Returns ``None`` when ``sym`` occurs with any exponent other than 1.
        """
        a: Dict[Monomial, Fraction] = {}
        b: Dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for s, x in mono:
                if s == sym:
                    e = x
                else:
                    rest.append((s, x))
            if e == 0:
                b[mono] = c
            elif e == 1:
                a[tuple(rest)] = c
            else:
                return None
        return ShiftPoly._raw(a), ShiftPoly._raw(b)

    # -- serialization ---------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self):
            if idx == 0:
                out.append(format_monomial(c, m))
            elif c < 0:
                out.append(" - " + format_monomial(-c, m))
            else:
                out.append(" + " + format_monomial(c, m))
        return "".join(out)

    def to_json(self) -> List[dict]:
        return [
            {
                "coeff": _format_coeff(c),
                "factors": [
                    {"sym": s[0], "node": s[1], "shift": s[2], "exp": _format_coeff(Fraction(e))}
                    for s, e in m
                ],
            }
            for m, c in self
        ]

    @classmethod
    def from_json(cls, data: List[dict]) -> "ShiftPoly":
        try:
            acc: Dict[Monomial, Fraction] = {}
            for term in data:
                mono = make_monomial(
                    ((f["sym"], int(f["node"]), int(f["shift"])), _norm_exp(Fraction(f.get("exp", "1"))))
                    for f in term["factors"]
                )
                acc[mono] = acc.get(mono, 0) + Fraction(term.get("coeff", "1"))
            return cls(acc)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad shift-polynomial JSON: {exc}") from exc

    @classmethod
    def parse(cls, text: str) -> "ShiftPoly":
        value = _Parser(text).parse()
        if isinstance(value, ShiftFrac):
            value = value.to_poly()
        return value


def _power(v, e: Exponent):
    if isinstance(e, int):
        return v**e
    if isinstance(v, (int, Fraction)):
        r = exact_root(Fraction(v), e.denominator)
        if r is None:
            raise ValueError(f"{v} has no rational root of order {e.denominator}")
        return r**e.numerator
    if e.denominator == 1:
        return v ** int(e)
    raise ValueError("fractional power of a non-rational value")


def exact_root(v: Fraction, n: int) -> Optional[Fraction]:
    """The rational n-th root of v (the positive one for even n), or None."""
    if n == 1:
        return v
    if v < 0:
        if n % 2 == 0:
            return None
        r = exact_root(-v, n)
        return None if r is None else -r
    parts = []
    for x in (v.numerator, v.denominator):
        r = round(x ** (1.0 / n)) if x < 2**50 else _int_root(x, n)
        hit = next((c for c in (r - 1, r, r + 1) if c >= 0 and c**n == x), None)
        if hit is None:
            return None
        parts.append(hit)
    return Fraction(parts[0], parts[1])


def _int_root(x: int, n: int) -> int:
    lo, hi = 0, 1 << (x.bit_length() // n + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _as_shiftpoly(x) -> ShiftPoly:
    if isinstance(x, ShiftPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return ShiftPoly.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to ShiftPoly")


def shift(expr, m: int):
    """Shift every symbol index by ``m``; works on polys, fractions and containers."""
    if isinstance(expr, (ShiftPoly, ShiftFrac)):
        return expr.shift(m)
    if isinstance(expr, (int, Fraction)):
        return expr
    if isinstance(expr, list):
        return [shift(x, m) for x in expr]
    if isinstance(expr, tuple):
        return tuple(shift(x, m) for x in expr)
    raise TypeError(f"cannot shift {type(expr).__name__}")


def Y(i: int, k: int = 0, e: Exponent = 1) -> ShiftPoly:
    return ShiftPoly.symbol("Y", i, k, e)


def P(i: int, k: int = 0, e: Exponent = 1) -> ShiftPoly:
    return ShiftPoly.symbol("P", i, k, e)


def T(i: int, k: int = 0, e: Exponent = 1) -> ShiftPoly:
    return ShiftPoly.symbol("T", i, k, e)


def U(i: int, k: int = 0, e: Exponent = 1) -> ShiftPoly:
    return ShiftPoly.symbol("U", i, k, e)


class ShiftFrac:
    """A quotient of shift polynomials.

    Monomial denominators are folded into the numerator, so fractions that
    are really Laurent polynomials are stored with denominator 1.  Otherwise
    the denominator is scaled so that its least monomial has coefficient 1;
    no multivariate gcd is taken, and equality is tested by cross-multiplying.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_shiftpoly(num) if not isinstance(num, ShiftPoly) else num
        den = ShiftPoly.const(1) if den is None else _as_shiftpoly(den)
        if den.is_zero():
            raise ZeroDivisionError("shift fraction with zero denominator")
        if num.is_zero():
            num, den = ShiftPoly(), ShiftPoly.const(1)
        elif den.is_monomial():
            num, den = num * den.inverse_monomial(), ShiftPoly.const(1)
        else:
            least = min(den.terms)
            c = den.terms[least]
            if c != 1:
                num, den = num * (1 / c), den * (1 / c)
        self.num = num
        self.den = den

    def is_poly(self) -> bool:
        return self.den.is_const()

    def to_poly(self) -> ShiftPoly:
        if not self.is_poly():
            raise ValueError("not a Laurent polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, ShiftPoly)):
            other = ShiftFrac(other)
        if not isinstance(other, ShiftFrac):
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self) -> int:
        # equal fractions may have different representations unless polynomial
        return hash(self.num) if self.is_poly() else hash(len(self.num.terms))

    def __repr__(self) -> str:
        return f"ShiftFrac({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def __add__(self, other) -> "ShiftFrac":
        o = _as_frac(other)
        if self.den == o.den:
            return ShiftFrac(self.num + o.num, self.den)
        return ShiftFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ShiftFrac":
        return ShiftFrac(-self.num, self.den)

    def __sub__(self, other) -> "ShiftFrac":
        return self + (-_as_frac(other))

    def __rsub__(self, other) -> "ShiftFrac":
        return _as_frac(other) - self

    def __mul__(self, other) -> "ShiftFrac":
        o = _as_frac(other)
        return ShiftFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ShiftFrac":
        o = _as_frac(other)
        if o.is_zero():
            raise ZeroDivisionError("division by a zero shift fraction")
        return ShiftFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "ShiftFrac":
        return _as_frac(other) / self

    def __pow__(self, n: int) -> "ShiftFrac":
        if n < 0:
            return ShiftFrac(1) / (self ** (-n))
        return ShiftFrac(self.num**n, self.den**n)

    def shift(self, m: int) -> "ShiftFrac":
        return ShiftFrac(self.num.shift(m), self.den.shift(m))

    def symbols(self) -> set:
        return self.num.symbols() | self.den.symbols()

    def substitute(self, mapping) -> "ShiftFrac":
        return _frac_substitute(self.num, mapping) / _frac_substitute(self.den, mapping)

    def evaluate(self, values, one=None):
        return self.num.evaluate(values, one) / self.den.evaluate(values, one)

    def to_text(self) -> str:
        if self.is_poly():
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "ShiftFrac":
        if isinstance(data, list):
            return cls(ShiftPoly.from_json(data))
        try:
            return cls(ShiftPoly.from_json(data["num"]), ShiftPoly.from_json(data.get("den", [{"coeff": "1", "factors": []}])))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad shift-fraction JSON: {exc}") from exc

    @classmethod
    def parse(cls, text: str) -> "ShiftFrac":
        return _as_frac(_Parser(text).parse())


def _frac_substitute(p: ShiftPoly, mapping) -> ShiftFrac:
    get = mapping.get if isinstance(mapping, Mapping) else mapping
    total = ShiftFrac(0)
    for mono, c in p.terms.items():
        term = ShiftFrac(c)
        kept = []
        for sym, e in mono:
            img = get(sym)
            if img is None:
                kept.append((sym, e))
            else:
                term = term * (_as_frac(img) ** e)
        total = total + term * ShiftPoly.monomial(tuple(kept))
    return total


def _as_frac(x) -> ShiftFrac:
    return x if isinstance(x, ShiftFrac) else ShiftFrac(x)


_TOKEN = re.compile(
    r"\s*(?:(?P<sym>[PTUY])\(\s*(?P<node>-?\d+)\s*,\s*(?P<shift>-?\d+)\s*\)"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[-+*/^()]))"
)


class _Parser:
    """Recursive-descent parser for the canonical text form (and a bit more)."""

    def __init__(self, text: str):
        self.tokens: List[Tuple[str, object]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected input at {pos}: {text[pos:pos + 10]!r}")
            pos = m.end()
            if m.group("sym"):
                self.tokens.append(("sym", (m.group("sym"), int(m.group("node")), int(m.group("shift")))))
            elif m.group("num"):
                self.tokens.append(("num", Fraction(m.group("num"))))
            elif m.group("op"):
                self.tokens.append(("op", m.group("op")))
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.tokens):
            raise ParseError("trailing input")
        return val

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.power()
                acc = acc * rhs if val == "*" else _as_frac(acc) / rhs
                if isinstance(acc, ShiftFrac) and acc.is_poly():
                    acc = acc.num
            else:
                return acc

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            e = self.exponent()
            if isinstance(base, ShiftFrac):
                return base ** int(e)
            return base**e
        return base

    def exponent(self) -> Exponent:
        kind, val = self.take()
        if kind == "op" and val == "(":
            sign = 1
            k2, v2 = self.take()
            if k2 == "op" and v2 == "-":
                sign = -1
                k2, v2 = self.take()
            if k2 != "num":
                raise ParseError("bad exponent")
            self.expect(")")
            return _norm_exp(sign * v2)
        sign = 1
        if kind == "op" and val == "-":
            sign = -1
            kind, val = self.take()
        if kind != "num":
            raise ParseError("bad exponent")
        return _norm_exp(sign * val)

    def atom(self):
        kind, val = self.take()
        if kind == "sym":
            return ShiftPoly.symbol(*val)
        if kind == "num":
            return ShiftPoly.const(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise ParseError(f"unexpected token {val!r}")


def parse_expr(text: str) -> Union[ShiftPoly, ShiftFrac]:
    """Parse text into a ShiftPoly when possible, otherwise a ShiftFrac."""
    val = _Parser(text).parse()
    if isinstance(val, ShiftFrac) and val.is_poly():
        return val.num
    return val
