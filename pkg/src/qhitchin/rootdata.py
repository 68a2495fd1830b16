"""Simply-laced root data, characters and moduli dimension counts."""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vec = Tuple[int, ...]


class UnsupportedType(ValueError):
    """Root system outside the simply-laced A, D, E series."""


class NegativeDimension(ValueError):
    """A reduction would produce a space of negative dimension."""


class InvalidDivisor(ValueError):
    """Divisor points coincide or a coweight is not dominant."""


def _mat_inverse(a: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class DynkinType:
    """A Dynkin label such as ``A2``, ``D4``, ``E6`` or the ``GL2`` variant."""

    series: str
    rank: int
    gl: bool = False

    def __post_init__(self):
        if self.rank < 1:
            raise UnsupportedType("rank must be positive")
        if self.gl:
            if self.series != "A":
                raise UnsupportedType("GL variant only exists for type A")
        elif self.series == "D" and self.rank < 4:
            raise UnsupportedType("D_n needs n >= 4")
        elif self.series == "E" and self.rank not in (6, 7, 8):
            raise UnsupportedType("E_n needs n in 6..8")
        elif self.series not in "ADE":
            raise UnsupportedType(f"{self.series} is not simply laced")

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        m = re.fullmatch(r"\s*(GL|[A-Za-z])(\d+)\s*", text)
        if not m:
            raise UnsupportedType(f"cannot parse type {text!r}")
        s, n = m.group(1).upper(), int(m.group(2))
        if s == "GL":
            if n < 2:
                raise UnsupportedType("GL_n needs n >= 2")
            # stored by the rank of the semisimple part A_{n-1}
            return cls("A", n - 1, gl=True)
        return cls(s, n)

    def __str__(self) -> str:
        return f"GL{self.rank + 1}" if self.gl else f"{self.series}{self.rank}"

    def cartan(self) -> List[List[int]]:
        n = self.rank
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i, j in self.edges():
            a[i - 1][j - 1] = a[j - 1][i - 1] = -1
        return a

    def edges(self) -> List[Tuple[int, int]]:
        """Undirected Dynkin edges as pairs of 1-based nodes."""
        n = self.rank
        if self.series == "A":
            return [(i, i + 1) for i in range(1, n)]
        if self.series == "D":
            # chain 1..n-2, then n-1 and n both attached to n-2; D4 has 2 central
            if n == 4:
                return [(1, 2), (2, 3), (2, 4)]
            return [(i, i + 1) for i in range(1, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
        # E_n in Bourbaki labelling: chain 1-3-4-5-...-n with 2 attached to 4
        return [(1, 3), (3, 4), (2, 4)] + [(i, i + 1) for i in range(4, n)]


@dataclass(frozen=True)
class QuiverOrientation:
    """A direction ``source -> target`` for every Dynkin edge."""

    arrows: Tuple[Tuple[int, int], ...]

    @classmethod
    def default(cls, dtype: DynkinType) -> "QuiverOrientation":
        if dtype.series == "A":
            return cls(tuple((i + 1, i) for i in range(1, dtype.rank)))
        if dtype.series == "D" and dtype.rank == 4:
            return cls(((2, 1), (3, 2), (4, 2)))
        # higher-numbered endpoint points to the lower one
        return cls(tuple((max(e), min(e)) for e in dtype.edges()))

    @classmethod
    def parse(cls, text: str) -> "QuiverOrientation":
        """Parse ``"2>1,3>2,4>2"``."""
        arrows = []
        for part in text.split(","):
            a, b = part.split(">")
            arrows.append((int(a), int(b)))
        return cls(tuple(arrows))

    def validate(self, dtype: DynkinType) -> None:
        want = {frozenset(e) for e in dtype.edges()}
        got = [frozenset(a) for a in self.arrows]
        if len(got) != len(set(got)) or set(got) != want:
            raise ValueError("orientation must direct each Dynkin edge exactly once")

    def outgoing(self, i: int) -> List[int]:
        return [b for a, b in self.arrows if a == i]

    def incoming(self, i: int) -> List[int]:
        return [a for a, b in self.arrows if b == i]

    def node_order(self, rank: int) -> List[int]:
        """Nodes sorted so that each arrow ``j -> i`` places ``i`` before ``j``.

        Ties go to the smaller node, so the default orientations give 1..r.
        """
        indeg = {i: 0 for i in range(1, rank + 1)}
        for a, b in self.arrows:
            indeg[a] += 1
        order: List[int] = []
        ready = sorted(i for i, d in indeg.items() if d == 0)
        while ready:
            i = ready.pop(0)
            order.append(i)
            for a, b in self.arrows:
                if b == i:
                    indeg[a] -= 1
                    if indeg[a] == 0:
                        ready.append(a)
                        ready.sort()
        if len(order) != rank:
            raise ValueError("orientation has a cycle")
        return order


@dataclass(frozen=True)
class Root:
    index: int
    coeffs: Vec

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_simple(self) -> bool:
        return self.height == 1


class RootSystem:
    """Cartan data for a simply-laced type with pairings in fundamental bases."""

    def __init__(self, dtype: DynkinType):
        if dtype.gl:
            raise UnsupportedType("use GLData for GL_n")
        self.type = dtype
        self.rank = dtype.rank
        self.cartan = dtype.cartan()

    @classmethod
    def of(cls, name: str) -> "RootSystem":
        return cls(DynkinType.parse(name))

    @cached_property
    def cartan_inverse(self) -> List[List[Fraction]]:
        return _mat_inverse(self.cartan)

    @cached_property
    def positive_roots(self) -> List[Root]:
        """Positive roots ordered by height, then coefficient vector descending."""
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for i in range(n):
                    if self.root_coroot_pairing(beta, i) == -1:
                        gamma = tuple(b + int(j == i) for j, b in enumerate(beta))
                        if gamma not in found:
                            found.add(gamma)
                            nxt.append(gamma)
            frontier = nxt
        ordered = sorted(found, key=lambda v: (sum(v), tuple(-x for x in v)))
        return [Root(k + 1, v) for k, v in enumerate(ordered)]

    def root_coroot_pairing(self, beta: Sequence[int], i: int) -> int:
        """<beta, alpha_i^vee> for beta in the simple-root basis (0-based i)."""
        return sum(b * self.cartan[j][i] for j, b in enumerate(beta))

    def root(self, index: int) -> Root:
        return self.positive_roots[index - 1]

    def root_index(self, coeffs: Sequence[int]) -> int:
        for r in self.positive_roots:
            if r.coeffs == tuple(coeffs):
                return r.index
        raise KeyError(coeffs)

    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def root_to_weight(self, coeffs: Sequence[int]) -> Vec:
        """Simple-root coordinates to fundamental-weight (Dynkin label) coordinates."""
        return tuple(sum(c * self.cartan[j][i] for j, c in enumerate(coeffs)) for i in range(self.rank))

    def weight_to_root(self, labels: Sequence[Fraction]) -> Tuple[Fraction, ...]:
        """Dynkin labels to (rational) simple-root coordinates."""
        inv = self.cartan_inverse
        return tuple(sum(Fraction(labels[j]) * inv[j][i] for j in range(self.rank)) for i in range(self.rank))

    def coweight_pairing(self, coweight: Sequence[Fraction], labels: Sequence[Fraction]) -> Fraction:
        """<lambda^vee, mu> for a coweight in the fundamental-coweight basis and a weight in Dynkin labels.

        Simply-laced, so coweights and weights are identified and the pairing
        is the inverse Cartan form.
        """
        inv = self.cartan_inverse
        return sum(
            (Fraction(coweight[k]) * Fraction(labels[j]) * inv[j][k] for j in range(self.rank) for k in range(self.rank)),
            Fraction(0),
        )

    def weight_inner(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
        """Normalized invariant form (alpha, alpha) = 2 on Dynkin labels."""
        return self.coweight_pairing(a, b)

    def rho_pairing(self, coweight: Sequence[Fraction]) -> Fraction:
        """<rho, lambda^vee> with lambda^vee in the fundamental-coweight basis."""
        return self.coweight_pairing(coweight, (1,) * self.rank)

    def coroot_as_coweight(self, i: int) -> Vec:
        """alpha_i^vee in the fundamental-coweight basis (1-based i)."""
        return tuple(self.cartan[i - 1])

    def reflect(self, labels: Sequence[int], i: int) -> Vec:
        """Simple reflection s_i on a weight in Dynkin labels (0-based i)."""
        c = labels[i]
        return tuple(l - c * self.cartan[i][j] for j, l in enumerate(labels))

    def reflect_root(self, coeffs: Sequence[int], i: int) -> Vec:
        """Simple reflection s_i on a vector in simple-root coordinates (0-based i)."""
        c = sum(v * self.cartan[i][j] for j, v in enumerate(coeffs))
        return tuple(v - c * int(j == i) for j, v in enumerate(coeffs))

    def sorting_word(self, coxeter: Sequence[int]) -> Tuple[List[int], List[int]]:
        """Greedy reduced word for the longest element inside c c c ...

        ``coxeter`` lists the 1-based nodes of c from left to right.  Returns
        the word and the induced convex order of positive roots, where the k-th
        root is s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}).
        """
        if sorted(coxeter) != list(range(1, self.rank + 1)):
            raise ValueError("a Coxeter element uses every node exactly once")
        word: List[int] = []
        order: List[int] = []
        total = len(self.positive_roots)
        while len(order) < total:
            for i in coxeter:
                v: Vec = tuple(int(j == i - 1) for j in range(self.rank))
                for m in reversed(word):
                    v = self.reflect_root(v, m - 1)
                if all(c >= 0 for c in v):
                    word.append(i)
                    order.append(self.root_index(v))
        return word, order

    def dominant_conjugate(self, labels: Sequence[int]) -> Vec:
        w = tuple(labels)
        while True:
            for i, c in enumerate(w):
                if c < 0:
                    w = self.reflect(w, i)
                    break
            else:
                return w

    # -- characters ---------------------------------------------------------
    def weight_multiplicities(self, highest: Sequence[int]) -> Dict[Vec, int]:
        """Freudenthal's recursion for the irreducible module of the given highest weight."""
        lam = tuple(int(x) for x in highest)
        if any(x < 0 for x in lam):
            raise ValueError("highest weight must be dominant")
        n = self.rank
        simple_w = [self.root_to_weight(tuple(int(i == j) for j in range(n))) for i in range(n)]
        pos_w = [self.root_to_weight(r.coeffs) for r in self.positive_roots]

        def in_module(mu: Vec) -> bool:
            diff = self.weight_to_root(tuple(a - b for a, b in zip(lam, self.dominant_conjugate(mu))))
            return all(d.denominator == 1 and d >= 0 for d in diff)

        # breadth-first from lam downward by simple roots, grouped by depth
        depth = {lam: 0}
        queue = deque([lam])
        while queue:
            mu = queue.popleft()
            for a in simple_w:
                nu = tuple(x - y for x, y in zip(mu, a))
                if nu not in depth and in_module(nu):
                    depth[nu] = depth[mu] + 1
                    queue.append(nu)
        rho = (1,) * n
        lr = tuple(a + b for a, b in zip(lam, rho))
        norm_lr = self.weight_inner(lr, lr)
        mult: Dict[Vec, int] = {lam: 1}
        for mu in sorted(depth, key=lambda m: depth[m]):
            if mu == lam:
                continue
            mr = tuple(a + b for a, b in zip(mu, rho))
            denom = norm_lr - self.weight_inner(mr, mr)
            total = Fraction(0)
            for a in pos_w:
                k = 1
                while True:
                    nu = tuple(x + k * y for x, y in zip(mu, a))
                    if nu not in depth:
                        break
                    total += mult.get(nu, 0) * self.weight_inner(nu, a)
                    k += 1
            m = 2 * total / denom
            if m.denominator != 1:
                raise ArithmeticError("non-integral multiplicity")
            if m:
                mult[mu] = int(m)
        return mult

    def classical_character(self, highest: Sequence[int]) -> "Character":
        return Character(self.rank, self.weight_multiplicities(highest))

    def fundamental_weight(self, i: int) -> Vec:
        return tuple(int(j == i - 1) for j in range(self.rank))


@dataclass(frozen=True)
class Character:
    """A Laurent polynomial in y_1..y_r: exponent vector to multiplicity."""

    rank: int
    terms: Dict[Vec, int] = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return sum(self.terms.values())

    def __len__(self) -> int:
        return len(self.terms)

    def evaluate(self, ys: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for exps, m in self.terms.items():
            v = Fraction(m)
            for y, e in zip(ys, exps):
                v *= Fraction(y) ** e
            total += v
        return total

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Character) and self.terms == other.terms

    def __sub__(self, other: "Character") -> "Character":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) - v
            if not out[k]:
                del out[k]
        return Character(self.rank, out)

    def __add__(self, other: "Character") -> "Character":
        return self - Character(other.rank, {k: -v for k, v in other.terms.items()})

    def to_text(self) -> str:
        parts = []
        for exps in sorted(self.terms, reverse=True):
            m = self.terms[exps]
            fac = [f"y{j + 1}" + ("" if e == 1 else f"^{e}") for j, e in enumerate(exps) if e]
            s = " * ".join(([str(m)] if m != 1 or not fac else []) + fac)
            parts.append(s)
        return " + ".join(parts) if parts else "0"


def classical_character(dtype: str | DynkinType, highest: Sequence[int]) -> Character:
    """Weight multiplicities of the irreducible module, as a Laurent polynomial."""
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    return RootSystem(dt).classical_character(highest)


def positive_roots(dtype: str | DynkinType) -> List[Root]:
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    return RootSystem(dt).positive_roots


# -- divisors and dimensions ------------------------------------------------


@dataclass(frozen=True)
class ColoredDivisor:
    """Distinct rational points, each carrying a dominant coweight."""

    points: Tuple[Fraction, ...]
    coweights: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.points) != len(self.coweights):
            raise InvalidDivisor("one coweight per point")
        if len(set(self.points)) != len(self.points):
            raise InvalidDivisor("divisor points must be distinct")

    @classmethod
    def from_json(cls, text: str | list) -> "ColoredDivisor":
        data = json.loads(text) if isinstance(text, str) else text
        try:
            pts = tuple(Fraction(str(d["z"])) for d in data)
            cws = tuple(tuple(int(x) for x in d["coweight"]) for d in data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidDivisor(f"bad divisor JSON: {exc}") from exc
        return cls(pts, cws)

    def __add__(self, other: "ColoredDivisor") -> "ColoredDivisor":
        return ColoredDivisor(self.points + other.points, self.coweights + other.coweights)


class GLData:
    """GL_n in the epsilon basis: coweights are integer n-tuples."""

    def __init__(self, n: int):
        self.n = n

    def rho(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(self.n - 1, 2) - i for i in range(self.n))

    def is_dominant(self, cw: Sequence[int]) -> bool:
        return all(cw[i] >= cw[i + 1] for i in range(len(cw) - 1))

    def rho_pairing(self, cw: Sequence[int]) -> Fraction:
        if len(cw) != self.n:
            raise InvalidDivisor(f"GL{self.n} coweights have {self.n} entries")
        return sum((r * c for r, c in zip(self.rho(), cw)), Fraction(0))


def _pairing_fn(dtype: DynkinType):
    if dtype.gl:
        gd = GLData(dtype.rank + 1)

        def pair(cw):
            if not gd.is_dominant(cw):
                raise InvalidDivisor(f"coweight {cw} is not dominant")
            return gd.rho_pairing(cw)

        return pair
    rs = RootSystem(dtype)

    def pair(cw):
        if len(cw) != rs.rank:
            raise InvalidDivisor(f"{dtype} coweights have {rs.rank} entries")
        if any(c < 0 for c in cw):
            raise InvalidDivisor(f"coweight {cw} is not dominant")
        return rs.rho_pairing(cw)

    return pair


def base_dimension(dtype: str | DynkinType, divisor: ColoredDivisor) -> int:
    """Sum of <rho, coweight> over the divisor."""
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    pair = _pairing_fn(dt)
    total = sum((pair(cw) for cw in divisor.coweights), Fraction(0))
    if total.denominator != 1:
        raise ValueError(f"half-integral base dimension {total}")
    return int(total)


def moduli_dimension(dtype: str | DynkinType, divisor: ColoredDivisor) -> int:
    """Twice the base dimension."""
    return 2 * base_dimension(dtype, divisor)


def reduced_dimension(dtype: str | DynkinType, divisor: ColoredDivisor, rank_torus: int) -> int:
    """Dimension after reducing by a torus of the given rank."""
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    if rank_torus < 0 or rank_torus > dt.rank:
        raise ValueError("torus rank out of range")
    d = moduli_dimension(dt, divisor) - 2 * rank_torus
    if d < 0:
        raise NegativeDimension(f"reduced dimension would be {d}")
    return d


def quiver_divisor(r: int, n: int) -> ColoredDivisor:
    """A_{r-1} divisor with n points of coweight w_1 and n of coweight w_{r-1}."""
    first = tuple(int(j == 0) for j in range(r - 1))
    last = tuple(int(j == r - 2) for j in range(r - 1))
    if r == 2:
        first = last = (1,)
    pts = tuple(Fraction(k) for k in range(1, 2 * n + 1))
    return ColoredDivisor(pts, (first,) * n + (last,) * n)
