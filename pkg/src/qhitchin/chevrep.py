"""Exact matrices for Chevalley generators and the group elements built from them."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, List, Sequence, Tuple

from .exactalg.matrix import Matrix, is_zero
from .exactalg.shiftpoly import FractionalExponentOutsideP, ShiftPoly, exact_root
from .rootdata import DynkinType, RootSystem, UnsupportedType


class NotNilpotent(ValueError):
    """exp_nilpotent was handed a matrix with N^d != 0."""


def exp_nilpotent(coeff: Any, N: Matrix) -> Matrix:
    """The finite sum ``I + cN + c^2 N^2/2! + ...`` for a nilpotent N."""
    d = N.n
    powers = [Matrix.identity(d)]
    while not powers[-1].is_zero():
        if len(powers) > d:
            raise NotNilpotent("matrix is not nilpotent")
        powers.append(powers[-1] * N)
    out = powers[0]
    if is_zero(coeff):
        return out
    c_pow: Any = Fraction(1)
    fact = 1
    for k in range(1, len(powers) - 1):
        c_pow = c_pow * coeff
        fact *= k
        out = out + powers[k].scale(c_pow * Fraction(1, fact))
    return out


class ChevalleyRep:
    """A faithful representation with Chevalley generators e_i, f_i, h_i.

    ``weights[k]`` holds the Dynkin labels of the k-th basis vector.
    """

    def __init__(self, rs: RootSystem, e: List[Matrix], f: List[Matrix], name: str):
        self.rs = rs
        self.e = e
        self.f = f
        self.h = [ei.commutator(fi) for ei, fi in zip(e, f)]
        self.name = name
        self.dim = e[0].n
        for h in self.h:
            if not h.is_diagonal():
                raise ValueError("basis is not a weight basis")
        self.weights: List[Tuple[int, ...]] = [
            tuple(int(self.h[i][k, k]) for i in range(rs.rank)) for k in range(self.dim)
        ]

    @property
    def rank(self) -> int:
        return self.rs.rank

    @cached_property
    def root_vectors(self) -> Dict[int, Matrix]:
        """e_alpha for every positive root, built by nested commutators [e_beta, e_i]."""
        out: Dict[int, Matrix] = {}
        for root in self.rs.positive_roots:
            if root.is_simple():
                out[root.index] = self.e[root.coeffs.index(1)]
                continue
            for i in range(self.rank):
                if root.coeffs[i] == 0:
                    continue
                beta = tuple(c - int(j == i) for j, c in enumerate(root.coeffs))
                try:
                    b = self.rs.root_index(beta)
                except KeyError:
                    continue
                out[root.index] = out[b].commutator(self.e[i])
                break
        return out

    def braid_root_vectors(self, word: Sequence[int]) -> Dict[int, Matrix]:
        """Root vectors from conjugating e_i by inverse Weyl representatives along a reduced word.

        The k-th letter i_k gives the vector for s_{i_1}...s_{i_{k-1}}(alpha_{i_k}),
        conjugating e_{i_k} by sigma_{i_{k-1}}^-1 ... sigma_{i_1}^-1.
        """
        out: Dict[int, Matrix] = {}
        conj = Matrix.identity(self.dim)
        conj_inv = Matrix.identity(self.dim)
        letters = list(word)
        for k, i in enumerate(letters):
            v = tuple(int(j == i - 1) for j in range(self.rank))
            for m in reversed(letters[:k]):
                v = self.rs.reflect_root(v, m - 1)
            try:
                a = self.rs.root_index(v)
            except KeyError:
                raise ValueError("word is not a reduced word of the longest element") from None
            out[a] = conj * self.e[i - 1] * conj_inv
            s = self.weyl_representative(i)
            conj = conj * s.inverse()
            conj_inv = s * conj_inv
        if len(out) != len(self.rs.positive_roots):
            raise ValueError("word is not a reduced word of the longest element")
        return out

    def serre_ok(self) -> bool:
        """Check the defining relations of the Chevalley generators exactly."""
        A = self.rs.cartan
        r = self.rank
        for i in range(r):
            for j in range(r):
                if self.h[i].commutator(self.e[j]) != self.e[j].scale(A[i][j]):
                    return False
                if self.h[i].commutator(self.f[j]) != self.f[j].scale(-A[i][j]):
                    return False
                if i != j and not self.e[i].commutator(self.f[j]).is_zero():
                    return False
                if i != j:
                    k = 1 - A[i][j]
                    x = self.e[j]
                    y = self.f[j]
                    for _ in range(k):
                        x = self.e[i].commutator(x)
                        y = self.f[i].commutator(y)
                    if not (x.is_zero() and y.is_zero()):
                        return False
        return True

    def weyl_representative(self, i: int) -> Matrix:
        """sigma_i = exp(-e_i) exp(f_i) exp(-e_i) for 1-based node i.

        In the two-dimensional representation this is [[0,-1],[1,0]].
        """
        e, f = self.e[i - 1], self.f[i - 1]
        m = exp_nilpotent(Fraction(-1), e)
        return m * exp_nilpotent(Fraction(1), f) * m

    def coweight_exponents(self, coweight: Sequence[Fraction]) -> List[Fraction]:
        """<coweight, mu> for every basis weight mu (coweight in fundamental-coweight basis)."""
        return [self.rs.coweight_pairing(coweight, mu) for mu in self.weights]

    def cocharacter(self, coweight: Sequence[Fraction], s: Any) -> Matrix:
        """diag(s^<coweight, mu>) over the weights mu of the representation."""
        return Matrix.diag([_power(s, e) for e in self.coweight_exponents(coweight)])

    def fundamental_coweight(self, i: int) -> Tuple[int, ...]:
        return tuple(int(j == i - 1) for j in range(self.rank))

    def coroot(self, i: int) -> Tuple[int, ...]:
        return self.rs.coroot_as_coweight(i)


def _power(s: Any, e: Fraction) -> Any:
    e = Fraction(e)
    if e.denominator == 1:
        k = int(e)
        if isinstance(s, (int, Fraction)):
            return Fraction(s) ** k
        return s**k
    if isinstance(s, ShiftPoly):
        if not s.is_monomial():
            raise FractionalExponentOutsideP("fractional power of a non-monomial")
        return s**e
    if isinstance(s, (int, Fraction)):
        r = exact_root(Fraction(s), e.denominator)
        if r is None:
            raise ValueError(f"{s} has no rational root of order {e.denominator}")
        return r**e.numerator
    raise FractionalExponentOutsideP("fractional powers are only supported on P symbols")


def type_a_rep(n: int) -> ChevalleyRep:
    """The (n+1)-dimensional defining representation of sl_{n+1}."""
    d = n + 1
    e = [Matrix.unit(d, i, i + 1) for i in range(n)]
    f = [m.transpose() for m in e]
    return ChevalleyRep(RootSystem(DynkinType("A", n)), e, f, f"A{n} defining")


def type_d_rep(n: int) -> ChevalleyRep:
    """The 2n-dimensional vector representation of so_{2n}.

    Basis v_1..v_n, v_{-n}..v_{-1}; the invariant form pairs slot i with 2n-1-i.
    Simple roots e_i - e_{i+1} (i < n) and e_{n-1} + e_n.
    """
    d = 2 * n

    def bar(i: int) -> int:
        return d - 1 - i

    def E(i: int, j: int) -> Matrix:
        return Matrix.unit(d, i, j)

    e = []
    for i in range(n - 1):
        e.append(E(i, i + 1) - E(bar(i + 1), bar(i)))
    e.append(E(n - 2, bar(n - 1)) - E(n - 1, bar(n - 2)))
    f = [m.transpose() for m in e]
    return ChevalleyRep(RootSystem(DynkinType("D", n)), e, f, f"D{n} vector")


def default_rep(dtype: str | DynkinType) -> ChevalleyRep:
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    if dt.gl:
        raise UnsupportedType("GL_n uses gl_defining helpers")
    if dt.series == "A":
        return type_a_rep(dt.rank)
    if dt.series == "D":
        return type_d_rep(dt.rank)
    raise UnsupportedType(f"no matrix representation shipped for {dt}")


def gl_cocharacter(coweight: Sequence[int], s: Any) -> Matrix:
    """GL_n cocharacter in the defining basis: diag(s^c_1, ..., s^c_n)."""
    return Matrix.diag([_power(s, Fraction(c)) for c in coweight])


def rep_to_json(rep: ChevalleyRep) -> dict:
    def m2j(m: Matrix) -> List[List[str]]:
        return [[str(x) for x in row] for row in m.rows]

    return {
        "representation": rep.name,
        "dimension": rep.dim,
        "weights": [list(w) for w in rep.weights],
        "e": [m2j(m) for m in rep.e],
        "f": [m2j(m) for m in rep.f],
        "h": [m2j(m) for m in rep.h],
    }
