"""Odd-lattice vertex superalgebra and Liouville Heisenberg modules."""

from fractions import Fraction

import pytest

from ns2engine.lattice import (HeisState, LatticeState, apply_alpha,
                               enumerate_lattice_states, exp_mode,
                               grade_of_lattice, lattice_vacuum,
                               modified_virasoro_mode, state_weight)
from ns2engine.scalars import Scalar

M = 1


def scaled(state, c):
    return {k: v * c for k, v in state.items()}


def sub(a, b):
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k, Scalar.zero(M)) - v
        if cur.is_zero():
            out.pop(k, None)
        else:
            out[k] = cur
    return out


def test_oscillator_brackets():
    # [alpha(p), alpha(-p)] = -p on the lattice side, +p for Liouville
    for pairing in (-1, 1):
        st = {LatticeState((3, 1), 2): Scalar.one(M)}
        for p in (1, 2, 3):
            lhs = sub(apply_alpha(p, apply_alpha(-p, st, M, pairing), M, pairing),
                      apply_alpha(-p, apply_alpha(p, st, M, pairing), M, pairing))
            assert lhs == scaled(st, Scalar.from_fraction(pairing * p, M)), p


def test_alpha_zero_eigenvalue():
    st = {LatticeState((), 3): Scalar.one(M)}
    out = apply_alpha(0, st, M, pairing=-1)
    assert out == scaled(st, Scalar.from_fraction(-3, M))


def test_sector_weights():
    # weight of e^{p alpha} is p(1-p)/2, certified through the modified
    # Virasoro zero mode (not assumed)
    for p in range(-3, 4):
        assert state_weight(LatticeState((), p), M) == Fraction(p * (1 - p), 2)


def test_exp_mode_vacuum_creation():
    # x^0 coefficient of Y(e^{alpha}, x) on the vacuum is e^{alpha} itself
    vac = lattice_vacuum(M, 0)
    out = exp_mode(1, 0, vac, M)
    assert out == {LatticeState((), 1): Scalar.one(M)}
    # lower coefficients vanish (creation property)
    for e in (-1, -2, -3):
        assert exp_mode(1, e, vac, M) == {}


def test_exp_mode_sector_exponent_rule():
    st = {LatticeState((), 1): Scalar.one(M)}
    with pytest.raises(ValueError):
        exp_mode(1, Fraction(1, 2), st, M)  # exponents lie in Z on sector 1
    # leading coefficient carries the cocycle sign (-1)^{1*1}
    out = exp_mode(1, -1, st, M)
    assert out == {LatticeState((), 2): Scalar.from_fraction(-1, M)}


def test_exp_modes_anticommutator_depends_on_total_mode():
    # <alpha, alpha> = -1 gives Y(e,x)Y(e,w) a first-order pole, so the
    # mode anticommutator collapses to a single delta term: {e_a, e_b}
    # depends on a + b only
    def anti(a, b, st):
        out = exp_mode(1, a, exp_mode(1, b, st, M), M)
        for k, v in exp_mode(1, b, exp_mode(1, a, st, M), M).items():
            cur = out.get(k, Scalar.zero(M)) + v
            if cur.is_zero():
                out.pop(k, None)
            else:
                out[k] = cur
        return out

    for st in (lattice_vacuum(M, 0),
               {LatticeState((2, 1), -1): Scalar.one(M)}):
        for total in (-2, -1, 0, 1):
            ref = anti(-1, total + 1, st)
            for a in (0, 1, 2):
                assert anti(a, total - a, st) == ref, (total, a)


@pytest.mark.parametrize("which", ["V_L", "Liouville"])
def test_modified_virasoro_central_charge_4(which):
    """[L~(p), L~(n)] = (p-n)L~(p+n) + (4/12)(p^3-p) delta on states of
    weight <= 3."""
    s0 = Scalar.zero(M)
    if which == "V_L":
        tests = [{st: Scalar.one(M)}
                 for st, w in enumerate_lattice_states(Fraction(3), 2, M)]
        kw = {}
    else:
        tests = [{HeisState(osc): Scalar.one(M)}
                 for osc in [(), (1,), (2,), (1, 1), (2, 1), (3,)]]
        kw = {"s": s0}
    for p in (-2, -1, 0, 1, 2):
        for n in (-2, -1, 0, 1, 2):
            for v in tests:
                lhs = sub(
                    modified_virasoro_mode(which, p,
                        modified_virasoro_mode(which, n, v, M, **kw), M, **kw),
                    modified_virasoro_mode(which, n,
                        modified_virasoro_mode(which, p, v, M, **kw), M, **kw))
                rhs = scaled(modified_virasoro_mode(which, p + n, v, M, **kw),
                             Scalar.from_fraction(p - n, M))
                if p + n == 0:
                    cterm = Scalar.from_fraction(
                        Fraction(4 * (p ** 3 - p), 12), M)
                    for k, c in v.items():
                        cur = rhs.get(k, Scalar.zero(M)) + c * cterm
                        if cur.is_zero():
                            rhs.pop(k, None)
                        else:
                            rhs[k] = cur
                assert sub(lhs, rhs) == {}, (which, p, n, v)


def test_enumerate_lattice_states_graded():
    for st, w in enumerate_lattice_states(Fraction(5, 2), 2, M):
        assert w <= Fraction(5, 2)
        assert state_weight(st, M) == w
        gw, charge, parity = grade_of_lattice({st: Scalar.one(M)}, M)
        assert gw == w
        assert charge == -st.sector
        assert parity == st.sector % 2


def test_state_validation():
    with pytest.raises(ValueError):
        LatticeState((1, 3), 0)  # must be descending
    with pytest.raises(ValueError):
        LatticeState((0,), 0)
    with pytest.raises(ValueError):
        HeisState((-1,))
