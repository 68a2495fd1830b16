"""End-to-end acceptance checks, one test per criterion, each printing a PASS/FAIL line."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from leaves import (
    darboux_bracket,
    darboux_fields,
    leaf_point,
    quadric_point,
    rand_entry,
    rand_frac,
    rand_invariant,
    rand_invertible,
)
from qhitchin.exactalg.matrix import Matrix
from qhitchin.exactalg.ratfunc import Poly, RatFunc
from qhitchin.exactalg.shiftpoly import ShiftPoly
from qhitchin.qchar import bethe_condition, bethe_residues, qcharacter
from qhitchin.qtriang import (
    compare_with_golden,
    load_golden,
    series_q_eigenvalues,
    series_residual,
    triangularize_symbolic,
    untwist,
)
from qhitchin.rootdata import base_dimension, moduli_dimension, quiver_divisor, reduced_dimension, ColoredDivisor
from qhitchin.sklyanin import (
    OMEGA_CONSTANT,
    EvaluationFunction,
    NotRegularSemisimple,
    bracket_r_matrix_oracle,
    hamiltonian_field,
    jacobi_cyclic_sum,
    local_frames,
    moment_residue,
    omega_form,
    regular_frame_change,
    residue_field,
    sklyanin_bracket,
    torus_independence,
)
from qhitchin.steinberg import classical_chevalley_check

SEED = 20240601
sp = ShiftPoly.parse
z = RatFunc.z()


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number: int, label: str):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"\nFAIL criterion {number}: {label}")
            raise
        with capsys.disabled():
            print(f"\nPASS criterion {number}: {label}")

    return run


def test_d4_reference_reproduction(criterion):
    with criterion(1, "D4 gauge and section coefficients match the reference files"):
        start = time.perf_counter()
        res = triangularize_symbolic("D4")
        elapsed = time.perf_counter() - start
        checks = compare_with_golden(res, load_golden("D4"))
        assert len(checks) == 16
        assert all(c.ok for c in checks), [c.to_json() for c in checks if not c.ok]
        # section coefficients must match with no sign freedom
        assert all(c.sign == 1 for c in checks if c.name.startswith("t'"))
        assert [sum(c for _, c in t) for t in res.tprime] == [8, 29, 8, 8]
        assert elapsed < 60


def test_rank_one_and_two_examples(criterion):
    with criterion(2, "A1 and A2 closed formulas"):
        start = time.perf_counter()
        a1 = triangularize_symbolic("A1")
        assert a1.tprime[0] == sp("Y(1,0) + P(1,-1) * Y(1,-1)^-1")
        assert untwist(a1.u[1]) == sp("-1 * Y(1,0)^-1")
        a2 = triangularize_symbolic("A2")
        assert a2.tprime[0] == sp("Y(1,0) + P(1,-1) * Y(2,-1) * Y(1,-1)^-1 + P(1,-1) * P(2,-2) * Y(2,-2)^-1")
        assert a2.tprime[1] == sp("Y(2,0) + P(2,-1) * Y(1,0) * Y(2,-1)^-1 + P(1,-1) * P(2,-1) * Y(1,-1)^-1")
        assert a2.u[2] == sp("-1 * P(2,0) * Y(2,0)^-1")
        assert a2.u[3] == sp("-1 * P(1,0) * P(2,0) * Y(1,0)^-1")
        assert time.perf_counter() - start < 5


def test_qcharacters_equal_section_coefficients(criterion, d4_result):
    with criterion(3, "q-characters equal the solved section coefficients"):
        for name in ("A1", "A2", "D4"):
            res = d4_result if name == "D4" else triangularize_symbolic(name)
            for node, t in enumerate(res.tprime, start=1):
                assert qcharacter(name, node).poly == t, (name, node)


def test_classical_affine_shift(criterion):
    with criterion(4, "classical offsets (0), (0,0), (0,1,0,0)"):
        want = {"A1": [0], "A2": [0, 0], "D4": [0, 1, 0, 0]}
        for name, offsets in want.items():
            assert classical_chevalley_check(name, trials=20, seed=SEED) == offsets


def test_dimension_formulas(criterion):
    with criterion(5, "moduli, base and reduced quiver dimensions"):
        start = time.perf_counter()
        gl2 = ColoredDivisor((Fraction(-1), Fraction(1)), ((1, 0), (0, -1)))
        assert moduli_dimension("GL2", gl2) == 2
        assert base_dimension("GL2", gl2) == 1
        for n, r in [(2, 2), (3, 4), (4, 3)]:
            assert reduced_dimension(f"A{r - 1}", quiver_divisor(r, n), r - 1) == 2 * (n - 1) * (r - 1)
        assert time.perf_counter() - start < 1


def test_sklyanin_suite(criterion):
    with criterion(6, "Sklyanin bracket: antisymmetry, involutivity, Jacobi, r-matrix series"):
        rng = random.Random(SEED)
        for k in range(50):
            n = 2 + k % 2
            g = leaf_point(rng, n)
            phi = rand_entry(rng, n, g)
            psi = rand_entry(rng, n, g, avoid=[phi.point])
            assert sklyanin_bracket(phi, psi, g) == -sklyanin_bracket(psi, phi, g)
            f = rand_invariant(rng, n, g)
            h = rand_invariant(rng, n, g, avoid=[f.point])
            assert sklyanin_bracket(f, h, g) == 0
        for k in range(10):
            n = 2 + k % 2
            g = leaf_point(rng, n)
            f1 = rand_entry(rng, n, g)
            f2 = rand_entry(rng, n, g, avoid=[f1.point])
            f3 = rand_entry(rng, n, g, avoid=[f1.point, f2.point])
            assert jacobi_cyclic_sum(f1, f2, f3, g) == 0
        # the expansion in v/u terminates when v = 0
        for _ in range(10):
            g = leaf_point(rng, 2, poles=(1, 2))
            phi = rand_entry(rng, 2, g, avoid=[0])
            psi = EvaluationFunction.entry(rng.randint(1, 2), rng.randint(1, 2), 0)
            closed = sklyanin_bracket(phi, psi, g)
            assert all(bracket_r_matrix_oracle(phi, psi, g, N) == closed for N in (0, 3))


def test_symplectic_compatibility(criterion):
    with criterion(7, "symplectic form against the bracket, Darboux chart, frame independence"):
        rng = random.Random(SEED + 7)
        ratios = set()
        for _ in range(20):
            _, _, _, g = quadric_point(rng)
            phi = rand_entry(rng, 2, g)
            psi = rand_entry(rng, 2, g, avoid=[phi.point])
            br = sklyanin_bracket(phi, psi, g)
            om = omega_form(hamiltonian_field(phi, g), hamiltonian_field(psi, g), g)
            if br == 0:
                assert om == 0
            else:
                ratios.add(-om / br)
        assert ratios == {OMEGA_CONSTANT}
        for _ in range(5):
            m, a, b, g = quadric_point(rng)
            da, db = darboux_fields(m, a, b, g)
            assert omega_form(da, db, g) == 1 / b
            assert darboux_bracket(m, a, g, Fraction(11), Fraction(-13, 2)) == -OMEGA_CONSTANT * b
        for _ in range(20):
            _, _, _, g = quadric_point(rng)
            phi = rand_entry(rng, 2, g)
            psi = rand_entry(rng, 2, g, avoid=[phi.point])
            X, Y = hamiltonian_field(phi, g), hamiltonian_field(psi, g)
            frames = {}
            for p in g.singular_points():
                h = regular_frame_change(g, p, Matrix([[rand_frac(rng) for _ in range(2)] for _ in range(2)]))
                frames[p] = local_frames(X, g, p).shifted(h, g)
            assert omega_form(X, Y, g, frames) == omega_form(X, Y, g)


def test_moment_maps(criterion):
    with criterion(8, "moment residues and torus independence"):
        rng = random.Random(SEED + 8)
        for k in range(20):
            n = 2 + k % 2
            g = leaf_point(rng, n)
            mr = moment_residue(g, 1 + k % 2)
            assert mr.field.commutator(g.framing).is_zero()
            w = rng.choice([x for x in range(-9, 10) if x not in g.singular_points()])
            gw = g.at(w)
            assert residue_field(g, w, 1 + k % 2) == mr.field - gw * mr.field * gw.inverse()
        tenth = Fraction(1, 10)
        assert torus_independence("A1", [tenth]).full
        assert torus_independence("A2", [tenth, tenth]).full
        with pytest.raises(NotRegularSemisimple):
            torus_independence("A1", [Fraction(1)])
        with pytest.raises(NotRegularSemisimple):
            torus_independence("A2", [Fraction(1), Fraction(1)])


def test_bethe_regularity(criterion):
    with criterion(9, "Bethe roots cancel the apparent poles"):
        for w, q in [(Fraction(2), Fraction(2)), (Fraction(-3, 4), Fraction(1, 3)), (Fraction(5), Fraction(3))]:
            Q = Poly.from_roots([w])
            p = Poly((q - 7 * w, 7))  # p(w) = q
            assert bethe_condition(Q, p, q) == [0]
            assert all(r == 0 for _, r in bethe_residues(Q, p, q))
            bad = Poly((q + 1 - 7 * w, 7))
            assert any(r != 0 for _, r in bethe_residues(Q, bad, q))


def test_series_eigenvalues(criterion):
    with criterion(10, "series q-eigenvalues solve the gauge equation to order 8"):
        rng = random.Random(SEED + 10)
        for q in (Fraction(1), Fraction(2), Fraction(1, 3)):
            for k in range(10):
                if k % 2:
                    # leading eigenvalues 3 and 5/2 have a ratio that is no power of q
                    S = rand_invertible(rng, 2)
                    g0 = S * Matrix.diag([Fraction(3), Fraction(5, 2)]) * S.inverse()
                    g = [[RatFunc(g0[i, j]) + rand_frac(rng) / z + rand_frac(rng) / z**2 for j in range(2)]
                         for i in range(2)]
                else:
                    s = rng.choice([Fraction(5, 2), Fraction(-7, 3), Fraction(4, 3), Fraction(6, 5)])
                    t = RatFunc(s + 1 / s) + rand_frac(rng) / z + rand_frac(rng) / z**3
                    g = [[t, RatFunc(-1)], [RatFunc(1), RatFunc(0)]]
                se = series_q_eigenvalues(g, q, 8)
                assert len(se.a) == 9
                assert all(r == 0 for r in series_residual(g, se))
