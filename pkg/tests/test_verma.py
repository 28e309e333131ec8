"""Verma modules: PBW bases, Shapovalov forms, quotients."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ns2engine.algebra import HALF, ns2
from ns2engine.minimal import central_charge
from ns2engine.scalars import Scalar
from ns2engine.verma import (IrreducibleQuotient, MatrixModule, VacuumAlgebra,
                             VermaModule, VermaParams, enumerate_basis,
                             monomial_charge, monomial_level, omega,
                             product_series_dims, verma_dims)

rationals = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=8)


def half_levels(bound):
    lv = Fraction(0)
    while lv <= bound:
        yield lv
        lv += HALF


def test_basis_counts_match_product_series():
    cutoff = Fraction(4)
    assert verma_dims(cutoff) == product_series_dims(cutoff)


def test_level_one_charge_zero_count():
    # J(-1), L(-1), G+(-1/2)G-(-1/2)
    assert len(enumerate_basis(1, 0)) == 3


def test_basis_monomials_are_graded():
    for lv in half_levels(Fraction(5, 2)):
        for q in (-2, -1, 0, 1, 2):
            for mono in enumerate_basis(lv, q):
                assert monomial_level(mono) == lv
                assert monomial_charge(mono) == q


def test_charged_fermion_exclusion():
    # charge 2 first appears at level 1/2 + 3/2 = 2
    assert enumerate_basis(1, 2) == []
    assert len(enumerate_basis(2, 2)) == 1


def test_omega_involution():
    for x in (ns2("L", 3), ns2("J", -2), ns2("G+", HALF),
              ns2("G-", -Fraction(3, 2))):
        assert omega(omega(x)) == x
    assert omega(ns2("G+", HALF)) == ns2("G-", -HALF)


@given(rationals, rationals)
@settings(max_examples=20, deadline=None)
def test_half_level_gram_entries(h, q):
    # <G-+(-1/2)v, G-+(-1/2)v> = 2h -+ q
    mod = VermaModule(VermaParams(Fraction(1), h, q, 1))
    _, plus = mod.gram_matrix(HALF, 1)
    _, minus = mod.gram_matrix(HALF, -1)
    two_h = Scalar.from_fraction(2 * h, 1)
    qs = Scalar.from_fraction(q, 1)
    assert plus[0][0] == two_h - qs
    assert minus[0][0] == two_h + qs


def test_gram_contravariance_samples():
    mod = VermaModule(VermaParams(Fraction(1), Fraction(1, 3), Fraction(1, 5), 1))
    one = Scalar.one(1)
    for x in (ns2("L", -1), ns2("J", -1), ns2("G+", -HALF), ns2("G-", -HALF)):
        for lv in half_levels(Fraction(3, 2)):
            for q in (-1, 0, 1):
                for u in enumerate_basis(lv, q):
                    xu = mod.act(x, {u: one})
                    wq = q + (1 if x.kind == "G+" else -1 if x.kind == "G-" else 0)
                    for v in enumerate_basis(lv - x.index, wq):
                        lhs = Scalar.zero(1)
                        for mo, c in xu.items():
                            lhs = lhs + c * mod.gram_entry(mo, v)
                        rhs = Scalar.zero(1)
                        for mo, c in mod.act(omega(x), {v: one}).items():
                            rhs = rhs + c * mod.gram_entry(u, mo)
                        assert lhs == rhs, (x, u, v)


def test_vacuum_verma_singular_vectors():
    # at h = q = 0 the charged fermions G+-(-1/2)|0> are singular
    mod = VermaModule(VermaParams(Fraction(1), 0, 0, 1))
    assert len(mod.singular_vectors(HALF, 1)) == 1
    assert len(mod.singular_vectors(HALF, -1)) == 1


def test_gram_matrix_symmetry():
    mod = VermaModule(VermaParams(central_charge(2), Fraction(1, 8),
                                  Fraction(1, 4), 2))
    for lv in (1, Fraction(3, 2)):
        _, rows = mod.gram_matrix(lv, 0)
        n = len(rows)
        for i in range(n):
            for j in range(n):
                assert rows[i][j] == rows[j][i]


def test_vacuum_algebra_truncation():
    params = VermaParams(central_charge(1), 0, 0, 1)
    vac = VacuumAlgebra(params)
    v = vac.vacuum()
    for x in (ns2("L", -1), ns2("G+", -HALF), ns2("G-", -HALF)):
        assert vac.act(x, v) == {}
    # J(-1), L(-2), G+-(-3/2) survive
    assert vac.dim(1, 0) == 1
    assert vac.dim(Fraction(3, 2), 1) == 1
    # level 2, charge 0: J(-1)^2, J(-2) (= L(-1)J(-1) here), L(-2)
    assert vac.dim(2, 0) == 3


@pytest.mark.parametrize("m", [1, 2])
def test_matrix_module_matches_gram_quotient(m):
    params = VermaParams(central_charge(m), 0, 0, m)
    mat = MatrixModule(params)
    irr = IrreducibleQuotient(params)
    for lv in half_levels(Fraction(3)):
        for q in (-2, -1, 0, 1, 2):
            if not enumerate_basis(lv, q):
                continue
            assert mat.dim(lv, q) == irr.dim(lv, q), (lv, q)


def test_inductive_radical_matches_gram_radical():
    m = 1
    params = VermaParams(central_charge(m), 0, 0, m)
    verma = VermaModule(params)
    irr = IrreducibleQuotient(params)
    for lv in half_levels(Fraction(5, 2)):
        for q in (-1, 0, 1):
            basis = enumerate_basis(lv, q)
            if not basis:
                continue
            _, kern = verma.radical_vectors(lv, q)
            assert irr.dim(lv, q) == len(basis) - len(kern), (lv, q)


def test_matrix_module_bracket_relations():
    # x(y v) - (-1)^{|x||y|} y(x v) = [x, y] v on the matrix realization
    from ns2engine.algebra import bracket
    m = 1
    params = VermaParams(central_charge(m), 0, 0, m)
    mod = MatrixModule(params)
    one = Scalar.one(m)
    modes = [ns2("L", 1), ns2("L", -1), ns2("J", 1), ns2("J", -1),
             ns2("G+", HALF), ns2("G-", -HALF), ns2("G+", -Fraction(3, 2))]
    vectors = []
    for lv in half_levels(Fraction(2)):
        for q in (-1, 0, 1):
            vectors.extend(mod.basis(lv, q))
    for x in modes:
        for y in modes:
            sgn = -1 if x.parity and y.parity else 1
            expected = bracket(x, y, m)
            for label in vectors:
                v = {label: one}
                lhs: dict = {}
                for mo, c in mod.act(x, mod.act(y, v)).items():
                    lhs[mo] = lhs.get(mo, Scalar.zero(m)) + c
                for mo, c in mod.act(y, mod.act(x, v)).items():
                    lhs[mo] = lhs.get(mo, Scalar.zero(m)) - c * sgn
                rhs: dict = {}
                for ms, sc in expected.items():
                    if ms.central:
                        rhs[label] = rhs.get(label, Scalar.zero(m)) + \
                            sc * params.c
                    else:
                        for mo, c in mod.act(ms, v).items():
                            rhs[mo] = rhs.get(mo, Scalar.zero(m)) + c * sc
                diff = dict(lhs)
                for mo, c in rhs.items():
                    diff[mo] = diff.get(mo, Scalar.zero(m)) - c
                assert all(c.is_zero() for c in diff.values()), (x, y, label)


def test_matrix_module_unitary_label_dims():
    # m = 2, (j, k) = (1/2, 3/2): h = 1/8, q = -1/4
    params = VermaParams(central_charge(2), Fraction(1, 8), Fraction(-1, 4), 2)
    mat = MatrixModule(params)
    irr = IrreducibleQuotient(params)
    for lv in half_levels(Fraction(2)):
        for q in (-1, 0, 1):
            if not enumerate_basis(lv, q):
                continue
            assert mat.dim(lv, q) == irr.dim(lv, q), (lv, q)
