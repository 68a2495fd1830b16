"""Random points on symplectic leaves, shared by the geometry tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from qhitchin.exactalg.matrix import Matrix
from qhitchin.exactalg.ratfunc import RatFunc
from qhitchin.mhiggs import darboux_chart, darboux_space
from qhitchin.sklyanin import EvaluationFunction, GroupRatMap, sklyanin_bracket, tangent_from_variation


def rand_frac(rng: random.Random, lo: int = -6, hi: int = 6, nonzero: bool = False) -> Fraction:
    while True:
        x = Fraction(rng.randint(lo, hi), rng.randint(1, 4))
        if x or not nonzero:
            return x


def rand_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = Matrix([[rand_frac(rng) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def leaf_point(rng: random.Random, n: int, poles: Sequence[int] = (1, -2)) -> GroupRatMap:
    """g_inf * prod_k (1 + B_k / (z - z_k)) with B_k diagonalisable over Q."""
    z = RatFunc.z()
    g = rand_invertible(rng, n).map(RatFunc)
    for a in poles:
        S = rand_invertible(rng, n)
        lam = Matrix.diag([rand_frac(rng, nonzero=True) for _ in range(n)])
        B = S * lam * S.inverse()
        g = g * (Matrix.identity(n).map(RatFunc) + B.map(lambda x: RatFunc(x) / (z - a)))
    return GroupRatMap(g)


def quadric_point(rng: random.Random):
    """(m, a, b, g) with g on the identity-framed quadric through the Darboux chart."""
    m = rand_frac(rng, 1, 5, nonzero=True)
    while True:
        a, b = rand_frac(rng), rand_frac(rng, nonzero=True)
        if a != m:
            break
    return m, a, b, darboux_space(m).group_map(darboux_chart(m, a, b))


def rand_point(rng: random.Random, avoid: Sequence[Fraction]) -> Fraction:
    while True:
        x = rand_frac(rng, -9, 9)
        if x not in avoid:
            return x


def rand_entry(rng: random.Random, n: int, g: GroupRatMap, avoid=()) -> EvaluationFunction:
    u = rand_point(rng, list(g.singular_points()) + list(avoid))
    return EvaluationFunction.entry(rng.randint(1, n), rng.randint(1, n), u)


def rand_invariant(rng: random.Random, n: int, g: GroupRatMap, avoid=()) -> EvaluationFunction:
    u = rand_point(rng, list(g.singular_points()) + list(avoid))
    if rng.random() < 0.3:
        return EvaluationFunction.trace(u)
    return EvaluationFunction.charpoly(rng.randint(1, n), u)


def darboux_bracket(m, a, g: GroupRatMap, u: Fraction, v: Fraction) -> Fraction:
    """{a, b} from entry brackets: a0 = m - (u-m)(g11(u) - 1), b0 = -(v-m) g12(v), b = b0/(m - a0)."""
    br = sklyanin_bracket(EvaluationFunction.entry(1, 1, u), EvaluationFunction.entry(1, 2, v), g)
    return (u - m) * (v - m) * br / (m - a)


def darboux_fields(m, a, b, g: GroupRatMap):
    """Tangent pairs of the coordinate directions d/da and d/db."""
    z = RatFunc.z()
    pole = lambda x: RatFunc(x) / (z - m)
    da = Matrix([[-1, b], [-1 / b, 1]]).map(pole)
    db = Matrix([[0, a - m], [(m + a) / b**2, 0]]).map(pole)
    return tangent_from_variation(da, g), tangent_from_variation(db, g)
