from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhitchin.rootdata import (
    ColoredDivisor,
    DynkinType,
    InvalidDivisor,
    NegativeDimension,
    QuiverOrientation,
    RootSystem,
    UnsupportedType,
    base_dimension,
    classical_character,
    moduli_dimension,
    positive_roots,
    quiver_divisor,
    reduced_dimension,
)

GL2_DIVISOR = ColoredDivisor((Fraction(-1), Fraction(1)), ((1, 0), (0, -1)))


def test_root_counts():
    assert [r.coeffs for r in positive_roots("A1")] == [(1,)]
    assert sorted(r.coeffs for r in positive_roots("A2")) == [(0, 1), (1, 0), (1, 1)]
    assert len(positive_roots("D4")) == 12
    assert len(positive_roots("E6")) == 36


def test_d4_labelling_matches_reference_file():
    data = json.loads(resources.files("qhitchin").joinpath("golden/d4.json").read_text())
    got = [list(r.coeffs) for r in positive_roots("D4")]
    assert got == [data["positive_roots"][str(k)] for k in range(1, 13)]
    assert got[4] == [1, 1, 0, 0] and got[11] == [1, 2, 1, 1]


def _closure(cartan):
    """Positive roots by repeatedly adding simple roots while the string condition allows."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for i in range(n):
                # alpha_i can be added when <r, alpha_i^vee> < 0 in a simply-laced system
                pairing = sum(r[j] * cartan[j][i] for j in range(n))
                s = tuple(c + int(j == i) for j, c in enumerate(r))
                if pairing < 0 and s not in roots:
                    roots.add(s)
                    new.append(s)
        frontier = new
    return roots


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A5", "D4", "D5", "E6"])
def test_roots_agree_with_closure(name):
    rs = RootSystem(DynkinType.parse(name))
    assert {r.coeffs for r in rs.positive_roots} == _closure(rs.cartan)


def _weyl_dimension(rs: RootSystem, lam) -> Fraction:
    rho = (1,) * rs.rank
    lr = tuple(a + b for a, b in zip(lam, rho))
    out = Fraction(1)
    for r in rs.positive_roots:
        w = rs.root_to_weight(r.coeffs)
        out *= rs.weight_inner(lr, w) / rs.weight_inner(rho, w)
    return out


@given(st.sampled_from(["A1", "A2", "A3", "D4"]), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_freudenthal_matches_weyl_dimension(name, labels):
    rs = RootSystem(DynkinType.parse(name))
    lam = tuple(labels[: rs.rank])
    if sum(lam) > 3:
        return
    assert rs.classical_character(lam).dimension == _weyl_dimension(rs, lam)


@given(st.sampled_from(["A2", "A3", "D4"]), st.integers(1, 4), st.integers(1, 4))
def test_characters_are_weyl_invariant(name, i, node):
    rs = RootSystem(DynkinType.parse(name))
    if i > rs.rank or node > rs.rank:
        return
    ch = rs.classical_character(rs.fundamental_weight(i))
    assert all(ch.terms.get(rs.reflect(w, node - 1)) == m for w, m in ch.terms.items())


def test_character_examples():
    assert classical_character("A1", (1,)).terms == {(1,): 1, (-1,): 1}
    assert classical_character("D4", (1, 0, 0, 0)).dimension == 8
    adj = classical_character("D4", (0, 1, 0, 0))
    assert adj.dimension == 28 and adj.terms[(0, 0, 0, 0)] == 4


def test_dimension_examples():
    assert moduli_dimension("GL2", GL2_DIVISOR) == 2
    assert base_dimension("GL2", GL2_DIVISOR) == 1
    assert moduli_dimension("A2", ColoredDivisor((), ())) == 0
    # sum of the simple coroots of A3 is (1,0,1) in fundamental coweights
    one_point = ColoredDivisor((Fraction(0),), ((1, 0, 1),))
    assert moduli_dimension("A3", one_point) == 2 * 3
    assert reduced_dimension("GL2", GL2_DIVISOR, 1) == 0
    assert reduced_dimension("GL2", GL2_DIVISOR, 0) == 2


@pytest.mark.parametrize("n,r", [(2, 2), (3, 4), (4, 3), (5, 2)])
def test_quiver_reduced_dimension(n, r):
    assert reduced_dimension(f"A{r - 1}", quiver_divisor(r, n), r - 1) == 2 * (n - 1) * (r - 1)


@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=0, max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=0, max_size=3))
def test_dimension_is_additive(cw1, cw2):
    d1 = ColoredDivisor(tuple(Fraction(k) for k in range(len(cw1))), tuple(cw1))
    d2 = ColoredDivisor(tuple(Fraction(10 + k) for k in range(len(cw2))), tuple(cw2))
    assert moduli_dimension("A2", d1 + d2) == moduli_dimension("A2", d1) + moduli_dimension("A2", d2)


def test_divisor_errors():
    with pytest.raises(InvalidDivisor):
        ColoredDivisor((Fraction(1), Fraction(1)), ((1,), (1,)))
    with pytest.raises(InvalidDivisor):
        base_dimension("GL2", ColoredDivisor((Fraction(0),), ((0, 1),)))
    with pytest.raises(NegativeDimension):
        reduced_dimension("A2", ColoredDivisor((), ()), 1)
    with pytest.raises(InvalidDivisor):
        ColoredDivisor.from_json('[{"z": "1"}]')


def test_divisor_json():
    d = ColoredDivisor.from_json('[{"z":"-1","coweight":[1,0]},{"z":"1","coweight":[0,-1]}]')
    assert d == GL2_DIVISOR


def test_type_parsing():
    assert str(DynkinType.parse("d4")) == "D4"
    assert str(DynkinType.parse("GL3")) == "GL3"
    for bad in ("B2", "D3", "E5", "X"):
        with pytest.raises(UnsupportedType):
            DynkinType.parse(bad)


def test_orientation():
    o = QuiverOrientation.parse("2>1,3>2,4>2")
    assert o == QuiverOrientation.default(DynkinType.parse("D4"))
    assert o.outgoing(2) == [1] and o.incoming(2) == [3, 4]
    assert o.node_order(4) == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        QuiverOrientation.parse("2>1").validate(DynkinType.parse("A3"))


def test_sorting_word_is_reduced_longest_element():
    rs = RootSystem(DynkinType.parse("D4"))
    word, order = rs.sorting_word([4, 3, 2, 1])
    assert len(word) == 12
    assert sorted(order) == list(range(1, 13))
    assert order == [4, 3, 10, 11, 6, 7, 12, 2, 9, 8, 5, 1]
