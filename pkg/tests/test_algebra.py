"""Structure constants: bracket tables, skew-symmetry, Jacobi, grading."""

from fractions import Fraction

import pytest

from ns2engine.algebra import HALF, LinComb, ModeSymbol, bracket, grading, ns2, sym
from ns2engine.scalars import Scalar


def ns2_generators(bound):
    out = [ns2("C")]
    n = -bound
    while n <= bound:
        out.append(ns2("L", n))
        out.append(ns2("J", n))
        n += 1
    r = -bound + HALF
    while r <= bound:
        out.append(ns2("G+", r))
        out.append(ns2("G-", r))
        r += 1
    return out


def lin_bracket(x, comb: LinComb, m: int) -> LinComb:
    """[x, -] extended linearly over a LinComb ([x, central] = 0)."""
    out = LinComb(m)
    for k, v in comb.items():
        if k.central:
            continue
        for k2, v2 in bracket(x, k, m).items():
            out.add(k2, v2 * v)
    return out


def test_table_examples():
    m = 1
    b = bracket(ns2("L", 2), ns2("L", -2), m)
    want = LinComb(m, {ns2("L", 0): 4, ns2("C"): Fraction(1, 2)})
    assert b == want
    b = bracket(ns2("G+", HALF), ns2("G-", -HALF), m)
    assert b == LinComb(m, {ns2("L", 0): 2, ns2("J", 0): 1})
    assert bracket(ns2("G+", HALF), ns2("G+", -HALF), m).is_zero()
    b = bracket(ns2("J", 1), ns2("G+", HALF), m)
    assert b == LinComb(m, {ns2("G+", Fraction(3, 2)): 1})
    b = bracket(ns2("J", 1), ns2("G-", HALF), m)
    assert b == LinComb(m, {ns2("G-", Fraction(3, 2)): -1})


def test_gg_central_term():
    # {G+(r), G-(-r)} = 2L(0) + 2r J(0) + (C/3)(r^2 - 1/4)
    m = 1
    r = Fraction(5, 2)
    b = bracket(ns2("G+", r), ns2("G-", -r), m)
    want = LinComb(m, {ns2("L", 0): 2, ns2("J", 0): 2 * r,
                       ns2("C"): Fraction(r * r - Fraction(1, 4), 3)})
    assert b == want


def test_super_skew_symmetry_exhaustive():
    m = 2
    gens = ns2_generators(4)
    for x in gens:
        for y in gens:
            sgn = -1 if x.parity and y.parity else 1
            lhs = bracket(x, y, m)
            rhs = bracket(y, x, m).scaled(Scalar.from_fraction(-sgn, m))
            assert lhs == rhs, (x, y)


def test_super_jacobi_exhaustive():
    # (-1)^{|x||z|}[x,[y,z]] + cyclic = 0, |index| <= 3, central included
    m = 1
    gens = ns2_generators(3)
    for x in gens:
        for y in gens:
            for z in gens:
                acc = LinComb(m)
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    if a.central:
                        continue
                    inner = bracket(b, c, m) if not (b.central or c.central) \
                        else LinComb(m)
                    term = lin_bracket(a, inner, m)
                    sgn = -1 if a.parity and c.parity else 1
                    acc = acc + term.scaled(Scalar.from_fraction(sgn, m))
                assert acc.is_zero(), (x, y, z)


def test_bracket_output_homogeneous():
    gens = [g for g in ns2_generators(3) if not g.central]
    for x in gens:
        for y in gens:
            wx, qx = grading(x)
            wy, qy = grading(y)
            for k, _ in bracket(x, y, 2).items():
                if k.central:
                    continue
                wk, qk = grading(k)
                assert (wk, qk) == (wx + wy, qx + qy), (x, y, k)


def test_grading_examples():
    assert grading(ns2("G+", -HALF)) == (HALF, 1)
    assert grading(ns2("L", -2)) == (2, 0)
    assert grading(ns2("J", 3)) == (-3, 0)


def test_heisenberg_bracket():
    m = 1
    b = bracket(sym("heisenberg", "a", 3), sym("heisenberg", "a", -3), m)
    assert b == LinComb(m, {sym("heisenberg", "d"): 3})
    assert bracket(sym("heisenberg", "a", 3),
                   sym("heisenberg", "a", 2), m).is_zero()


def test_affine_sl2_table():
    m = 1
    b = bracket(sym("affine-sl2", "E", 2), sym("affine-sl2", "F", -2), m)
    assert b == LinComb(m, {sym("affine-sl2", "H", 0): 1,
                            sym("affine-sl2", "K"): 2})
    b = bracket(sym("affine-sl2", "H", 1), sym("affine-sl2", "E", 0), m)
    assert b == LinComb(m, {sym("affine-sl2", "E", 1): 2})
    b = bracket(sym("affine-sl2", "H", 1), sym("affine-sl2", "H", -1), m)
    assert b == LinComb(m, {sym("affine-sl2", "K"): 2})


def test_mode_symbol_validation():
    with pytest.raises(ValueError):
        ns2("G+", 1)  # G indices lie in Z + 1/2
    with pytest.raises(ValueError):
        ns2("L", HALF)
    with pytest.raises(ValueError):
        ns2("C", 0)  # central element carries no index
    with pytest.raises(ValueError):
        sym("virasoro", "J", 0)
    with pytest.raises(ValueError):
        bracket(ns2("L", 1), sym("virasoro", "L", -1), 1)


def test_render():
    assert ns2("G+", -Fraction(3, 2)).render() == "G+[-3/2]"
    assert ns2("L", -2).render() == "L[-2]"
    assert ns2("C").render() == "C"
