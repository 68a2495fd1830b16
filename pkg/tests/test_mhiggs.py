from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from leaves import quadric_point, rand_frac, rand_invertible
from qhitchin.exactalg.matrix import Matrix
from qhitchin.exactalg.ratfunc import Poly, RatFunc
from qhitchin.mhiggs import (
    CoincidentSingularities,
    DegreeMismatch,
    SingularFraming,
    ZeroB,
    check_framing,
    darboux_chart,
    darboux_inverse,
    darboux_space,
    gl2_minuscule_space,
    hitchin_fibration,
    hitchin_section_gl2,
)
from qhitchin.sklyanin import EvaluationFunction, sklyanin_bracket

z = RatFunc.z()
seeds = st.integers(0, 10**6)


def point_with_framing(rng, framing: Matrix, z1, z2):
    """g0 = F S diag(z1, z2) S^-1, so that F^-1 g0 has eigenvalues z1, z2."""
    S = rand_invertible(rng, 2)
    g0 = framing * S * Matrix.diag([Fraction(z1), Fraction(z2)]) * S.inverse()
    return [g0[0, 0], g0[0, 1], g0[1, 0], g0[1, 1]]


def test_identity_framing_relations():
    m = Fraction(3)
    space = darboux_space(m)
    assert space.contains((m, 0, 0, -m))
    assert space.contains((0, 1, m**2, 0))
    # trace condition d0 = -a0
    assert not space.contains((1, 0, 0, 1))
    for a0, b0, c0, d0 in [(1, 2, 4, -1), (2, 5, 1, -2)]:
        assert space.contains((a0, b0, c0, d0)) == (a0**2 + b0 * c0 == m**2)


def test_rotated_framing_relations():
    space = gl2_minuscule_space(-2, 2, (0, -1, 1, 0))
    # b0 = c0 and a0 d0 - b0^2 = -4
    assert space.contains((1, 2, 2, 0))
    assert space.contains((2, 4, 4, 6))
    assert not space.contains((1, 2, 3, 0))


@given(seeds)
def test_points_from_eigenvalues_lie_on_the_variety(seed):
    rng = random.Random(seed)
    F = rand_invertible(rng, 2)
    z1, z2 = rand_frac(rng), rand_frac(rng)
    if z1 == z2:
        z2 += 1
    space = gl2_minuscule_space(z1, z2, [F[0, 0], F[0, 1], F[1, 0], F[1, 1]])
    point = point_with_framing(rng, F, z1, z2)
    assert space.contains(point)
    g = space.group_map(point)
    trace, det = hitchin_fibration(g)
    assert det == (z - z1) / (z - z2) * F.det()
    assert trace.den == Poly.from_roots([z2]) or trace.den.degree == 0
    assert g.framing == F


@given(seeds)
def test_darboux_chart_lands_on_the_quadric(seed):
    rng = random.Random(seed)
    m, a, b, g = quadric_point(rng)
    point = darboux_chart(m, a, b)
    assert darboux_space(m).contains(point)
    assert darboux_inverse(m, point) == (a, b)
    trace, det = hitchin_fibration(g)
    assert det == (z + m) / (z - m)
    assert trace == (2 * z) / (z - m)


def test_darboux_edges():
    with pytest.raises(ZeroB):
        darboux_chart(2, 1, 0)
    # a = m puts b0 = 0, so b cannot be read back
    point = darboux_chart(2, 2, 5)
    assert point[1] == 0
    with pytest.raises(ZeroB):
        darboux_inverse(2, point)


def test_space_errors():
    with pytest.raises(CoincidentSingularities):
        gl2_minuscule_space(1, 1, (1, 0, 0, 1))
    with pytest.raises(SingularFraming):
        gl2_minuscule_space(0, 1, (1, 2, 2, 4))
    with pytest.raises(ValueError):
        darboux_space(1).group_map((5, 0, 0, 5))


def test_section_example():
    m = Fraction(3)
    a0 = Fraction(2)
    g = hitchin_section_gl2(Poly.from_roots([-m]), Poly.from_roots([m]), Poly.const(a0))
    want = Matrix([[RatFunc(a0) / (z - m), -(z + m) / (z - m)], [RatFunc(1), RatFunc(0)]])
    assert g.matrix == want
    trace, det = hitchin_fibration(g)
    assert trace == RatFunc(a0) / (z - m)
    assert det == (z + m) / (z - m)
    # the same matrix is a point of the rotated-framing quadric
    space = gl2_minuscule_space(-m, m, (0, -1, 1, 0))
    assert space.group_map((-a0, m, m, 0)).matrix == want


@given(seeds)
def test_section_inverts_fibration(seed):
    rng = random.Random(seed)
    z1, z2 = rand_frac(rng), rand_frac(rng)
    if z1 == z2:
        z2 += 1
    F = Matrix([[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]])
    space = gl2_minuscule_space(z1, z2, (0, -1, 1, 0))
    point = point_with_framing(rng, F, z1, z2)
    trace, det = hitchin_fibration(space.group_map(point))
    # trace has a constant numerator with this framing
    section = hitchin_section_gl2(Poly.from_roots([z1]), Poly.from_roots([z2]), trace.num * (trace.den.lead()))
    assert hitchin_fibration(section) == [trace, det]


def test_equal_polynomials_give_unit_determinant():
    p = Poly.from_roots([1, -2])
    g = hitchin_section_gl2(p, p, Poly([3, 1]))
    assert g.det() == RatFunc(1)


def test_section_degree_checks():
    with pytest.raises(DegreeMismatch):
        hitchin_section_gl2(Poly.from_roots([1]), Poly.from_roots([1, 2]), Poly.const(0))
    with pytest.raises(DegreeMismatch):
        hitchin_section_gl2(Poly.from_roots([1]), Poly.from_roots([2]), Poly([0, 1]))
    with pytest.raises(DegreeMismatch):
        hitchin_section_gl2(Poly([1, 2]), Poly.from_roots([2]), Poly.const(0))


def test_check_framing():
    assert check_framing(Matrix.diag([2, 3]))
    assert not check_framing(Matrix.identity(2))
    assert not check_framing(Matrix([[1, 1], [0, 1]]))
    assert check_framing(Matrix([[0, -1], [1, 0]]))


@given(seeds)
def test_fibration_is_involutive(seed):
    rng = random.Random(seed)
    _, _, _, g = quadric_point(rng)
    u, v = (rand_frac(rng, -9, 9) for _ in range(2))
    sing = g.singular_points()
    if u == v or u in sing or v in sing:
        return
    assert sklyanin_bracket(EvaluationFunction.trace(u), EvaluationFunction.trace(v), g) == 0
