"""Rational Poisson-Lie geometry of GL_n-valued rational maps framed at infinity.

Conventions, fixed once:

* the invariant pairing is the trace form ``kappa(X, Y) = tr(XY)``;
* a scalar function phi on GL_n has differential ``dphi_M(Y) = tr(G Y)`` with
  ``G = grad_matrix(M)``, so the left and right gradients are ``M G`` and ``G M``;
* a tangent pair ``(X^L, X^R)`` moves g by ``X^L g + g X^R``; two pairs are
  equivalent when they differ by ``(X, -g^-1 X g)``;
* the Hamiltonian field of phi acts on functions by ``X_phi(psi) = {psi, phi}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exactalg.matrix import Matrix, rank, solve_linear
from .exactalg.ratfunc import INF, Poly, RatFunc, poly_gcd, rational_roots, residue_at
from .rootdata import ColoredDivisor, DynkinType, RootSystem


# Omega(X_phi, X_psi) = -OMEGA_CONSTANT * {phi, psi}, measured on the GL2 quadric leaf
OMEGA_CONSTANT = Fraction(1)


class CoincidentPoints(ValueError):
    """The bracket of evaluation functions needs two distinct points."""


class NotTangent(ValueError):
    """No local frame change makes the pair regular: it is not tangent to the leaf."""


class NotRegularSemisimple(ValueError):
    """The framing has a root equal to one, so its centralizer is too large."""


# -- dual numbers for first-order checks --------------------------------------


@dataclass(frozen=True)
class Dual:
    """a + b*eps with eps^2 = 0."""

    a: Any
    b: Any = Fraction(0)

    def _lift(self, other: Any) -> "Dual":
        return other if isinstance(other, Dual) else Dual(other, Fraction(0))

    def __add__(self, other: Any) -> "Dual":
        o = self._lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "Dual":
        return Dual(-self.a, -self.b)

    def __sub__(self, other: Any) -> "Dual":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "Dual":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "Dual":
        o = self._lift(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "Dual":
        o = self._lift(other)
        return Dual(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, other: Any) -> "Dual":
        return self._lift(other) / self

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0


# -- group-valued rational maps -------------------------------------------------


def _ratfunc_to_json(f: RatFunc) -> dict:
    return {"num": [str(c) for c in f.num.coeffs], "den": [str(c) for c in f.den.coeffs]}


def _ratfunc_from_json(d: Any) -> RatFunc:
    if isinstance(d, (int, str)):
        return RatFunc(Fraction(d))
    return RatFunc(Poly([Fraction(c) for c in d["num"]]), Poly([Fraction(c) for c in d.get("den", ["1"])]))


class GroupRatMap:
    """A GL_n-valued rational function of z with a fixed value at infinity."""

    def __init__(self, matrix: Matrix, divisor: Optional[ColoredDivisor] = None, check: bool = True):
        self.matrix = _rat_matrix(matrix)
        self.n = matrix.n
        self.divisor = divisor
        self._inverse: Optional[Matrix] = None
        self._singular: Optional[List[Fraction]] = None
        self.framing = self.matrix.map(lambda f: f.eval(INF))
        if check and self.framing.det() == 0:
            raise ValueError("value at infinity is not invertible")

    @classmethod
    def affine(cls, framing: Matrix, residues: Sequence[Tuple[Fraction, Matrix]]) -> "GroupRatMap":
        """g(z) = framing + sum A_k / (z - z_k)."""
        z = RatFunc.z()
        m = framing.map(RatFunc)
        for point, A in residues:
            m = m + A.map(lambda x: RatFunc(x) / (z - point))
        return cls(m)

    def at(self, u: Any) -> Matrix:
        return self.matrix.map(lambda f: f.eval(u))

    def inverse(self) -> Matrix:
        if self._inverse is None:
            self._inverse = _rat_matrix(self.matrix.inverse(one=RatFunc(1)))
        return self._inverse

    def det(self) -> RatFunc:
        return self.matrix.det()

    def singular_points(self) -> List[Fraction]:
        """Rational poles of g and of g^-1."""
        if self._singular is None:
            dens = [f.den for m in (self.matrix, self.inverse()) for row in m.rows for f in row]
            common = dens[0]
            for d in dens[1:]:
                common = common * d.divmod(poly_gcd(common, d))[0]
            self._singular = rational_roots(common)
        return list(self._singular)

    def to_json(self) -> dict:
        out: Dict[str, Any] = {
            "matrix": [[_ratfunc_to_json(f) for f in row] for row in self.matrix.rows],
            "framing": [[str(x) for x in row] for row in self.framing.rows],
        }
        if self.divisor is not None:
            out["divisor"] = [
                {"z": str(p), "coweight": list(c)} for p, c in zip(self.divisor.points, self.divisor.coweights)
            ]
        return out

    @classmethod
    def from_json(cls, data: dict | str) -> "GroupRatMap":
        if isinstance(data, str):
            data = json.loads(data)
        divisor = ColoredDivisor.from_json(data["divisor"]) if "divisor" in data else None
        g = cls(Matrix([[_ratfunc_from_json(x) for x in row] for row in data["matrix"]]), divisor)
        if "framing" in data:
            want = Matrix([[Fraction(x) for x in row] for row in data["framing"]])
            if want != g.framing:
                raise ValueError("framing block disagrees with the value at infinity")
        return g


# -- evaluation functions ----------------------------------------------------


def _charpoly_gradient(M: Matrix, k: int) -> Matrix:
    """G with d e_k(M)(Y) = tr(G Y): sum_j (-1)^j e_{k-1-j}(M) M^j."""
    from .steinberg import charpoly_coefficients

    e = [Fraction(1)] + charpoly_coefficients(M)
    out = Matrix.zeros(M.n)
    power = Matrix.identity(M.n)
    for j in range(k):
        out = out + power.scale((-1) ** j * e[k - 1 - j])
        power = power * M
    return out


@dataclass(frozen=True)
class EvaluationFunction:
    """phi_u(g) = phi(g(u)) for phi an entry, the trace, or a characteristic coefficient."""

    kind: str
    point: Fraction
    a: int = 1
    b: int = 1

    def __post_init__(self):
        if self.kind not in ("entry", "trace", "charpoly"):
            raise ValueError(f"unknown evaluation function {self.kind}")
        object.__setattr__(self, "point", Fraction(self.point))

    @classmethod
    def entry(cls, a: int, b: int, point: Any) -> "EvaluationFunction":
        return cls("entry", Fraction(point), a, b)

    @classmethod
    def trace(cls, point: Any) -> "EvaluationFunction":
        return cls("trace", Fraction(point))

    @classmethod
    def charpoly(cls, k: int, point: Any) -> "EvaluationFunction":
        """The k-th elementary symmetric function of the eigenvalues."""
        return cls("charpoly", Fraction(point), k)

    @classmethod
    def parse(cls, text: str) -> "EvaluationFunction":
        """``entry:1,2@3/2``, ``trace@0`` or ``charpoly:2@-1``."""
        m = re.fullmatch(r"\s*(entry|trace|charpoly)(?::([0-9,\s]+))?@(\S+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse evaluation function {text!r}")
        kind, args, point = m.groups()
        nums = [int(x) for x in args.split(",")] if args else []
        if kind == "entry" and len(nums) == 2:
            return cls.entry(nums[0], nums[1], Fraction(point))
        if kind == "trace" and not nums:
            return cls.trace(Fraction(point))
        if kind == "charpoly" and len(nums) == 1:
            return cls.charpoly(nums[0], Fraction(point))
        raise ValueError(f"wrong arguments in {text!r}")

    def __str__(self) -> str:
        args = {"entry": f":{self.a},{self.b}", "trace": "", "charpoly": f":{self.a}"}[self.kind]
        return f"{self.kind}{args}@{self.point}"

    @property
    def invariant(self) -> bool:
        return self.kind != "entry"

    def value_at(self, M: Matrix) -> Any:
        if self.kind == "entry":
            return M[self.a - 1, self.b - 1]
        if self.kind == "trace":
            return M.trace()
        from .steinberg import charpoly_coefficients

        return charpoly_coefficients(M)[self.a - 1]

    def grad_matrix(self, M: Matrix) -> Matrix:
        if self.kind == "entry":
            return Matrix.unit(M.n, self.b - 1, self.a - 1)
        if self.kind == "trace":
            return Matrix.identity(M.n)
        return _charpoly_gradient(M, self.a)

    def __call__(self, g: GroupRatMap) -> Fraction:
        return self.value_at(g.at(self.point))


def kappa(X: Matrix, Y: Matrix) -> Any:
    return (X * Y).trace()


def _kappa_rf(X: Matrix, Y: Matrix) -> RatFunc:
    v = kappa(X, Y)
    return v if isinstance(v, RatFunc) else RatFunc(v)


@dataclass(frozen=True)
class LieBasis:
    """A basis of gl_n with its dual under the trace form."""

    basis: Tuple[Matrix, ...]
    dual: Tuple[Matrix, ...]

    @classmethod
    def gl(cls, n: int) -> "LieBasis":
        return cls(
            tuple(Matrix.unit(n, a, b) for a in range(n) for b in range(n)),
            tuple(Matrix.unit(n, b, a) for a in range(n) for b in range(n)),
        )

    def is_dual(self) -> bool:
        return all(
            kappa(x, y) == int(i == j) for i, x in enumerate(self.basis) for j, y in enumerate(self.dual)
        )

    def casimir_pairing(self, left: Matrix, right: Matrix) -> Any:
        """sum_i kappa(X^i, left) kappa(X_i, right), which equals kappa(left, right)."""
        return sum((kappa(x, left) * kappa(y, right) for x, y in zip(self.basis, self.dual)), Fraction(0))


def gl_basis(n: int) -> Tuple[List[Matrix], List[Matrix]]:
    """Matrix units E_ab and their trace-form duals E_ba."""
    b = LieBasis.gl(n)
    return list(b.basis), list(b.dual)


def gradients(phi: EvaluationFunction, g: GroupRatMap | Matrix) -> Tuple[Matrix, Matrix]:
    """Left and right gradients at g(u), identified with gl_n through the trace form."""
    M = g if isinstance(g, Matrix) else g.at(phi.point)
    G = phi.grad_matrix(M)
    return M * G, G * M


def gradients_by_derivative(phi: EvaluationFunction, M: Matrix) -> Tuple[Matrix, Matrix]:
    """The same gradients from first-order directional derivatives (independent route)."""
    basis, dual = gl_basis(M.n)
    left = Matrix.zeros(M.n)
    right = Matrix.zeros(M.n)
    for X, Xd in zip(basis, dual):
        step = X.map(lambda x: Dual(Fraction(0), x)) + Matrix.identity(M.n)
        dl = phi.value_at(step * M)
        dr = phi.value_at(M * step)
        left = left + Xd.scale(dl.b if isinstance(dl, Dual) else Fraction(0))
        right = right + Xd.scale(dr.b if isinstance(dr, Dual) else Fraction(0))
    return left, right


def bracket_at(phi: EvaluationFunction, psi: EvaluationFunction, Mu: Matrix, Mv: Matrix) -> Any:
    """The closed bracket formula with g(u) = Mu and g(v) = Mv supplied directly."""
    u, v = phi.point, psi.point
    if u == v:
        raise CoincidentPoints(f"both functions are evaluated at {u}")
    Lp, Rp = gradients(phi, Mu)
    Lq, Rq = gradients(psi, Mv)
    return (kappa(Lp, Lq) - kappa(Rp, Rq)) * Fraction(1) / (u - v)


def sklyanin_bracket(phi: EvaluationFunction, psi: EvaluationFunction, g: GroupRatMap) -> Fraction:
    """{phi_u, psi_v}(g) = (kappa(L phi, L psi) - kappa(R phi, R psi)) / (u - v)."""
    if phi.point == psi.point:
        raise CoincidentPoints(f"both functions are evaluated at {phi.point}")
    return bracket_at(phi, psi, g.at(phi.point), g.at(psi.point))


def bracket_r_matrix_oracle(phi: EvaluationFunction, psi: EvaluationFunction, g: GroupRatMap, N: int) -> Fraction:
    """Partial sum through k = N of the pairing with Omega z^(-k-1) w^k.

    The loop-algebra direction X z^(-k-1) acts on phi_u through X u^(-k-1); the
    derivatives are taken with dual numbers rather than the closed gradients.
    """
    u, v = phi.point, psi.point
    Mu, Mv = g.at(u), g.at(v)
    basis, dual = gl_basis(g.n)
    ident = Matrix.identity(g.n)

    def d(f: EvaluationFunction, X: Matrix, M: Matrix, left: bool) -> Fraction:
        step = ident + X.map(lambda x: Dual(Fraction(0), x))
        val = f.value_at(step * M if left else M * step)
        return val.b if isinstance(val, Dual) else Fraction(0)

    # Omega = sum_i X^i (x) X_i with X_i the trace-form dual basis
    pair = Fraction(0)
    for X, Xd in zip(basis, dual):
        pair += d(phi, X, Mu, True) * d(psi, Xd, Mv, True) - d(phi, X, Mu, False) * d(psi, Xd, Mv, False)
    if u == 0:
        raise ZeroDivisionError("the expansion is in powers of 1/u")
    partial = sum((v**k / u ** (k + 1) for k in range(N + 1)), Fraction(0))
    return partial * pair


# -- tangent vectors -----------------------------------------------------------


@dataclass
class TangentPair:
    """A representative (X^L, X^R) of a tangent vector; ``frame`` records where it is regular."""

    XL: Matrix
    XR: Matrix
    frame: str = "global"

    def __post_init__(self):
        self.XL = _rat_matrix(self.XL)
        self.XR = _rat_matrix(self.XR)

    def variation(self, g: GroupRatMap) -> Matrix:
        """delta g = X^L g + g X^R."""
        return _rat_matrix(self.XL * g.matrix + g.matrix * self.XR)

    def shifted(self, X: Matrix, g: GroupRatMap, frame: Optional[str] = None) -> "TangentPair":
        """The equivalent pair (X^L + X, X^R - g^-1 X g)."""
        return TangentPair(self.XL + X, self.XR - g.inverse() * X * g.matrix, frame or self.frame)

    def equivalent(self, other: "TangentPair", g: GroupRatMap) -> bool:
        return self.variation(g) == other.variation(g)

    def is_regular_at(self, a: Any) -> bool:
        entries = [f for m in (self.XL, self.XR) for row in m.rows for f in row]
        if a is INF:
            return all(_regular_at_inf(f) for f in entries)
        return all(f.pole_order_at(a) == 0 for f in entries)

    def vanishes_at_infinity(self) -> bool:
        return all(f.is_zero() or f.order_at_infinity() > 0 for m in (self.XL, self.XR) for row in m.rows for f in row)


def _regular_at_inf(f: RatFunc) -> bool:
    return f.is_zero() or f.order_at_infinity() >= 0


def _rat_matrix(m: Matrix) -> Matrix:
    return m.map(lambda x: x if isinstance(x, RatFunc) else RatFunc(x))


def tangent_from_variation(dg: Matrix, g: GroupRatMap) -> TangentPair:
    """The left-frame pair (dg g^-1, 0) of a variation."""
    XL = _rat_matrix(dg) * g.inverse()
    return TangentPair(XL, Matrix.zeros(g.n).map(RatFunc), "left")


def hamiltonian_field(phi: EvaluationFunction, g: GroupRatMap) -> TangentPair:
    """Left-frame representative ((L phi - Ad_g(z) R phi) / (z - u), 0); regular at u."""
    u = phi.point
    L, R = gradients(phi, g)
    z = RatFunc.z()
    ginv = g.inverse()
    XL = (_rat_matrix(L) - g.matrix * _rat_matrix(R) * ginv).scale(1 / (z - u))
    return TangentPair(XL, Matrix.zeros(g.n).map(RatFunc), "left")


def hamiltonian_field_singular_frame(phi: EvaluationFunction, g: GroupRatMap) -> TangentPair:
    """The representative (L phi, -R phi) / (z - u): regular at every singular point and at infinity."""
    u = phi.point
    L, R = gradients(phi, g)
    s = 1 / (RatFunc.z() - u)
    return TangentPair(_rat_matrix(L).scale(s), (-_rat_matrix(R)).scale(s), "regular-off-u")


def _laurent(m: Matrix, a: Fraction, lo: int, hi: int) -> List[Matrix]:
    """Matrix Laurent coefficients at a for orders lo..hi."""
    coeffs = [[f.taylor_at(a, lo, hi) for f in row] for row in _rat_matrix(m).rows]
    return [Matrix([[c[k] for c in row] for row in coeffs]) for k in range(hi - lo + 1)]


def _pole_order(m: Matrix, a: Fraction) -> int:
    return max((f.pole_order_at(a) for row in _rat_matrix(m).rows for f in row if not f.is_zero()), default=0)


def local_frames(X: TangentPair, g: GroupRatMap, a: Any) -> TangentPair:
    """An equivalent pair that is regular at z = a.

    Writes the frame change as -X^L + h with h polynomial in (z - a) and solves
    the truncated Laurent system making X^R + g^-1 X^L g - g^-1 h g regular.
    """
    a = Fraction(a)
    if X.is_regular_at(a):
        return TangentPair(X.XL, X.XR, f"at {a}")
    ginv = g.inverse()
    W = X.XR + ginv * X.XL * g.matrix
    p, s = _pole_order(ginv, a), _pole_order(g.matrix, a)
    depth = max(_pole_order(W, a), p + s)
    K = p + s
    n = g.n
    Gc = _laurent(ginv, a, -p, depth)
    Hc = _laurent(g.matrix, a, -s, depth)
    Wc = _laurent(W, a, -depth, -1)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    basis = [Matrix.unit(n, i, j) for i in range(n) for j in range(n)]
    for m_ord in range(-depth, 0):
        # coefficient of t^m_ord in g^-1 h g, linear in the unknown h_k entries
        blocks = []
        for k in range(K):
            acc = [Matrix.zeros(n) for _ in basis]
            for jg in range(-p, depth + 1):
                jl = m_ord - k - jg
                if jl < -s or jl > depth:
                    continue
                G = Gc[jg + p]
                H = Hc[jl + s]
                acc = [acc[b] + G * E * H for b, E in enumerate(basis)]
            blocks.append(acc)
        target = Wc[m_ord + depth]
        for i in range(n):
            for j in range(n):
                rows.append([blocks[k][b][i, j] for k in range(K) for b in range(len(basis))])
                rhs.append(target[i, j])
    sol = solve_linear(rows, rhs) if rows else []
    if sol is None:
        raise NotTangent(f"pair cannot be made regular at {a}")
    t = RatFunc.z() - a
    h = Matrix.zeros(n).map(RatFunc)
    for k in range(K):
        coeff = Matrix([[sol[k * n * n + i * n + j] for j in range(n)] for i in range(n)])
        h = h + _rat_matrix(coeff).scale(t**k)
    out = TangentPair(h, W - ginv * h * g.matrix, f"at {a}")
    if not out.is_regular_at(a):
        raise NotTangent(f"pair cannot be made regular at {a}")
    return out


def regular_frame_change(g: GroupRatMap, a: Any, constant: Matrix) -> Matrix:
    """(z - a)^k * constant with k large enough that conjugating by g stays regular at a."""
    a = Fraction(a)
    k = _pole_order(g.inverse(), a) + _pole_order(g.matrix, a)
    t = (RatFunc.z() - a) ** k
    return _rat_matrix(constant).map(lambda f: f * t)


def is_leaf_tangent(X: TangentPair, g: GroupRatMap) -> bool:
    """Whether local_frames succeeds at every singular point."""
    try:
        for a in g.singular_points():
            local_frames(X, g, a)
    except NotTangent:
        return False
    return True


def omega_form(
    X: TangentPair,
    Xp: TangentPair,
    g: GroupRatMap,
    frames: Optional[Dict[Fraction, TangentPair]] = None,
) -> Fraction:
    """Sum over singular points and infinity of res (kappa(X^L_i, X'^L_0) - kappa(X^R_i, X'^R_0)).

    ``Xp`` is used as the frame away from the singular points, so it must be
    regular there; the frames of X at each singular point come from
    ``local_frames`` unless supplied.
    """
    points = g.singular_points()
    for m in (Xp.XL, Xp.XR):
        for row in m.rows:
            for f in row:
                stray = [z for z in f.poles() if z not in points]
                if stray:
                    raise ValueError(f"second argument is singular at {stray[0]} away from the divisor")
    frames = dict(frames or {})
    total = Fraction(0)
    for a in points:
        Xi = frames.get(a) or local_frames(X, g, a)
        total += residue_at(_kappa_rf(Xi.XL, Xp.XL) - _kappa_rf(Xi.XR, Xp.XR), a)
    if not X.vanishes_at_infinity():
        raise ValueError("tangent vectors must vanish at infinity")
    total += residue_at(_kappa_rf(X.XL, Xp.XL) - _kappa_rf(X.XR, Xp.XR), INF)
    return total


def directional_derivative(psi: EvaluationFunction, X: TangentPair, g: GroupRatMap) -> Fraction:
    """d psi (delta g) evaluated at psi's point."""
    M = g.at(psi.point)
    dM = X.variation(g).map(lambda f: f.eval(psi.point))
    return kappa(psi.grad_matrix(M), dM)


def jacobi_cyclic_sum(
    phi: EvaluationFunction, psi: EvaluationFunction, chi: EvaluationFunction, g: GroupRatMap
) -> Fraction:
    """Sum over cyclic permutations of {{phi, psi}, chi}, with the outer bracket a first-order flow.

    {F, chi}(g) = dF(delta_chi g), where delta_chi g is the variation of chi's
    Hamiltonian field; F = {phi, psi} depends on g only through g(u), g(v).
    """

    def outer(f1, f2, f3) -> Fraction:
        field = hamiltonian_field_singular_frame(f3, g).variation(g)
        Mu = g.at(f1.point)
        Mv = g.at(f2.point)
        du = field.map(lambda f: f.eval(f1.point))
        dv = field.map(lambda f: f.eval(f2.point))
        Mu_e = Matrix([[Dual(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(Mu.rows, du.rows)])
        Mv_e = Matrix([[Dual(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(Mv.rows, dv.rows)])
        val = bracket_at(f1, f2, Mu_e, Mv_e)
        return val.b if isinstance(val, Dual) else Fraction(0)

    return outer(phi, psi, chi) + outer(psi, chi, phi) + outer(chi, phi, psi)


# -- moment maps -------------------------------------------------------------


@dataclass
class MomentResidue:
    value: Fraction
    field: Matrix


def moment_residue(g: GroupRatMap, power: int = 1) -> MomentResidue:
    """Residue at infinity of z -> tr(g(z)^power) and the constant Lie element it generates.

    The value is minus the residue at infinity (the z^-1 coefficient); the field
    is the limit of the left gradient power * g(z)^power as z -> infinity.
    """
    gp = g.matrix
    for _ in range(power - 1):
        gp = gp * g.matrix
    gp = _rat_matrix(gp)
    value = -residue_at(gp.trace(), INF)
    field = gp.map(lambda f: f.eval(INF)).scale(Fraction(power))
    return MomentResidue(value, field)


def residue_field(g: GroupRatMap, w: Any, power: int = 1) -> Matrix:
    """Value at w of the residue at infinity of the left-frame field of tr(g(z)^power)."""
    z = RatFunc.z()
    grad = _rat_matrix((g.matrix**power).scale(RatFunc(Fraction(power))))
    gw = g.at(w)
    F = _rat_matrix(grad - gw * grad * gw.inverse()).map(lambda f: f / (RatFunc(Fraction(w)) - z))
    return F.map(lambda f: residue_at(f, INF))


def torus_framing_roots(rs: RootSystem, qs: Sequence[Fraction]) -> List[Fraction]:
    """alpha(g_inf) for every positive root, with g_inf = prod q_k^(coweight_k)."""
    vals = []
    for root in rs.positive_roots:
        v = Fraction(1)
        for q, c in zip(qs, root.coeffs):
            v *= Fraction(q) ** c
        vals.append(v)
    return vals


@dataclass
class TorusReport:
    vectors: List[Tuple[Fraction, ...]]
    rank: int
    semisimple_rank: int

    @property
    def full(self) -> bool:
        return self.rank == self.semisimple_rank


def torus_independence(
    dtype: str | DynkinType, qs: Sequence[Fraction], highest_weights: Optional[Sequence[Sequence[int]]] = None
) -> TorusReport:
    """Rank of the span of X_rho = sum_w w * prod_k q_k^(-n_k(w)) over the weights of each rho.

    Here highest - w = sum_k n_k(w) alpha_k; this differs from the sum over
    q^<w, coweight> by one nonzero scalar per rho, so the span is unchanged.
    """
    dt = DynkinType.parse(dtype) if isinstance(dtype, str) else dtype
    rs = RootSystem(dt)
    qs = [Fraction(q) for q in qs]
    if len(qs) != rs.rank:
        raise ValueError(f"need {rs.rank} torus parameters")
    if any(q == 0 for q in qs) or any(v == 1 for v in torus_framing_roots(rs, qs)):
        raise NotRegularSemisimple("some root takes the value 1 on the framing")
    hws = highest_weights or [rs.fundamental_weight(i) for i in range(1, rs.rank + 1)]
    vectors = []
    for hw in hws:
        mult = rs.weight_multiplicities(hw)
        acc = [Fraction(0)] * rs.rank
        for w, m in mult.items():
            diff = rs.weight_to_root(tuple(a - b for a, b in zip(hw, w)))
            scale = Fraction(m)
            for q, n in zip(qs, diff):
                scale *= q ** (-int(n))
            for k in range(rs.rank):
                acc[k] += scale * w[k]
        vectors.append(tuple(acc))
    return TorusReport(vectors, rank(vectors), rs.rank)
