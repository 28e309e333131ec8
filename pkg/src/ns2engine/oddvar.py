"""Odd-formal-variable calculus on the N=2 vacuum algebra V_ns2(c,0,0).

Vertex operators Y(u,x) are reconstructed from the generator mode
families through the standard iterate (normal-ordered product) formula

    (a_(m) b)_(k) = sum_j (-1)^j C(m,j) [ a_(m-j) b_(k+j)
                    - (-1)^{m+|a||b|} b_(m+k-j) a_(j) ],

and assembled into odd-variable operators

    Y(u,(x,phi_1,phi_2)) = Y(u,x) + phi_1 Y(G_1(-1/2)u,x)
                           + phi_2 Y(G_2(-1/2)u,x)
                           + phi_1 phi_2 Y(G_2(-1/2)G_1(-1/2)u,x)

with G_1 = (G+ + G-)/sqrt(2), G_2 = (G+ - G-)/sqrt(-2).  The checks
below verify the vacuum, creation, G_i(-1/2)-derivative, L(-1)-derivative
and skew-symmetry identities slot by slot, exactly, below a weight
truncation, together with the reproduction of the N=2 bracket table by
the reconstructed generator modes.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from .algebra import HALF, ModeSymbol, bracket, ns2
from .minimal import central_charge
from .scalars import Scalar
from .verma import (Monomial, VacuumAlgebra, VermaParams, monomial_charge,
                    monomial_level, monomial_parity)


def _accum(d: dict, k, v) -> None:
    cur = d.get(k)
    new = v if cur is None else cur + v
    if new.is_zero():
        d.pop(k, None)
    else:
        d[k] = new


def _scale(state: dict, c) -> dict:
    out = {}
    for k, v in state.items():
        cv = v * c
        if not cv.is_zero():
            out[k] = cv
    return out


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        _accum(out, k, v)
    return out


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        _accum(out, k, -v)
    return out


def general_binomial(m: int, j: int) -> Fraction:
    """C(m, j) for arbitrary integer m and j >= 0."""
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(m - i, i + 1)
    return out


# FLM index maps for the generators: a_(j) as an algebra mode
_GENERATOR_MODE = {
    "mu": lambda j: ns2("J", j),
    "omega": lambda j: ns2("L", j - 1),
    "tau+": lambda j: ns2("G+", j - HALF),
    "tau-": lambda j: ns2("G-", j - HALF),
}
_GENERATOR_WEIGHT = {"mu": Fraction(1), "omega": Fraction(2),
                     "tau+": Fraction(3, 2), "tau-": Fraction(3, 2)}
_GENERATOR_PARITY = {"mu": 0, "omega": 0, "tau+": 1, "tau-": 1}


class VertexCalculus:
    """Reconstruction of Y(u,x) on the vacuum algebra V_ns2(c_m,0,0).

    States are dicts mapping PBW monomials to Scalars.  Modes follow the
    weight-free convention Y(u,x) = sum_k u_(k) x^{-k-1}.
    """

    def __init__(self, m: int):
        self.m = m
        self.c = central_charge(m)
        self.V = VacuumAlgebra(VermaParams(self.c, 0, 0, m))
        self._mode_cache: dict = {}
        sm = Scalar.sqrt2(m)
        self._inv_sqrt2 = sm.inverse()
        self._inv_sqrtm2 = (Scalar.i(m) * sm).inverse()

    # -- states -----------------------------------------------------------

    def vacuum(self) -> dict:
        return {(): Scalar.one(self.m)}

    def generator_state(self, name: str) -> dict:
        one = Scalar.one(self.m)
        mono = {
            "mu": (ns2("J", -1),),
            "omega": (ns2("L", -2),),
            "tau+": (ns2("G+", -Fraction(3, 2)),),
            "tau-": (ns2("G-", -Fraction(3, 2)),),
        }[name]
        return {mono: one}

    def weight(self, state: dict) -> Fraction:
        levels = {monomial_level(mo) for mo in state}
        if len(levels) != 1:
            raise ValueError("inhomogeneous state")
        return levels.pop()

    def parity(self, state: dict) -> int:
        ps = {monomial_parity(mo) for mo in state}
        if len(ps) != 1:
            raise ValueError("state of mixed parity")
        return ps.pop()

    def basis_states(self, max_weight) -> list[dict]:
        out = []
        lv = Fraction(0)
        one = Scalar.one(self.m)
        while lv <= Fraction(max_weight):
            qmax = int(2 * lv) + 1
            for q in range(-qmax, qmax + 1):
                for mono in self.V.basis(lv, q):
                    out.append({mono: one})
            lv += HALF
        return out

    # -- reconstructed modes ----------------------------------------------

    def mode_apply(self, u_state: dict, k, w_state: dict) -> dict:
        """u_(k) w for a (not necessarily homogeneous) state u."""
        k = Fraction(k)
        if k.denominator != 1:
            raise ValueError("mode indices are integers in this convention")
        k = int(k)
        out: dict = {}
        for mono, coef in u_state.items():
            part = self._mono_mode(mono, k, w_state)
            for mo, c in part.items():
                _accum(out, mo, c * coef)
        return out

    def coeff(self, u_state: dict, s, w_state: dict) -> dict:
        """Coefficient of x^s of Y(u,x) w."""
        return self.mode_apply(u_state, -Fraction(s) - 1, w_state)

    def _mode_state(self, mono: Monomial, k: int, state: dict) -> dict:
        out: dict = {}
        for wm, coef in state.items():
            key = (mono, k, wm)
            res = self._mode_cache.get(key)
            if res is None:
                res = self._mono_mode_single(mono, k, wm)
                self._mode_cache[key] = res
            for mo, c in res.items():
                _accum(out, mo, c * coef)
        return out

    def _mono_mode(self, mono: Monomial, k: int, state: dict) -> dict:
        return self._mode_state(mono, k, state)

    def _mono_mode_single(self, mono: Monomial, k: int, wm: Monomial) -> dict:
        m = self.m
        w_state = {wm: Scalar.one(m)}
        if not mono:
            return dict(w_state) if k == -1 else {}
        x = mono[0]
        b = mono[1:]
        if x.kind == "L" and x.index == -1:
            # Y(L(-1)b, x) = d/dx Y(b, x)
            return _scale(self._mode_state(b, k - 1, w_state),
                          Scalar.from_fraction(-k, m))
        if x.kind == "J":
            a_name, m_idx = "mu", int(x.index)
        elif x.kind == "L":
            a_name, m_idx = "omega", int(x.index) + 1
        else:
            a_name = "tau+" if x.kind == "G+" else "tau-"
            m_idx = int(x.index + HALF)
        pa = _GENERATOR_PARITY[a_name]
        pb = monomial_parity(b)
        flip = -1 if (m_idx + pa * pb) % 2 else 1
        wt_w = monomial_level(wm)
        wt_b = monomial_level(b)
        wt_a = _GENERATOR_WEIGHT[a_name]
        gen = _GENERATOR_MODE[a_name]
        out: dict = {}
        # term a_(m-j) b_(k+j) w: b_(k+j) kills w once k+j+1 > wt_w + wt_b
        j = 0
        while k + j <= wt_w + wt_b - 1:
            bw = self._mode_state(b, k + j, w_state)
            if bw:
                coef = general_binomial(m_idx, j) * (-1 if j % 2 else 1)
                part = self.V.act(gen(m_idx - j), bw)
                for mo, c in part.items():
                    _accum(out, mo, c * coef)
            j += 1
        # term b_(m+k-j) a_(j) w: a_(j) kills w once j+1 > wt_w + wt_a
        j = 0
        while j <= wt_w + wt_a - 1:
            aw = self.V.act(gen(j), w_state)
            if aw:
                coef = general_binomial(m_idx, j) * (-1 if j % 2 else 1) * (-flip)
                part = self._mode_state(b, m_idx + k - j, aw)
                for mo, c in part.items():
                    _accum(out, mo, c * coef)
            j += 1
        return out

    # -- odd-variable assembly --------------------------------------------

    def g1(self, state: dict) -> dict:
        """G_1(-1/2) = (G+(-1/2) + G-(-1/2))/sqrt(2)."""
        return _scale(_add(self.V.act(ns2("G+", -HALF), state),
                           self.V.act(ns2("G-", -HALF), state)),
                      self._inv_sqrt2)

    def g2(self, state: dict) -> dict:
        """G_2(-1/2) = (G+(-1/2) - G-(-1/2))/sqrt(-2)."""
        return _scale(_sub(self.V.act(ns2("G+", -HALF), state),
                           self.V.act(ns2("G-", -HALF), state)),
                      self._inv_sqrtm2)


class OddVertexOperator:
    """The quadruple of ordinary vertex operators behind
    Y(u,(x,phi_1,phi_2)); components indexed by the Grassmann basis
    (), (1,), (2,), (1,2)."""

    def __init__(self, calc: VertexCalculus, u_state: dict):
        self.calc = calc
        self.u = u_state
        g1u = calc.g1(u_state)
        self.components = {
            (): u_state,
            (1,): g1u,
            (2,): calc.g2(u_state),
            (1, 2): calc.g2(g1u),
        }

    def slot(self, s, w_state: dict, cap=None) -> "GrassmannState":
        """Coefficient of x^s of Y(u,(x,phi_1,phi_2)) w as a Grassmann
        polynomial with state coefficients.

        The x^s coefficient of Y(A,x)w is homogeneous of weight
        wt(A) + wt(w) + s, so with a weight cap the components landing
        above it are dropped without computing them.
        """
        out = GrassmannState(self.calc.m)
        if cap is not None and w_state:
            wt_w = max(monomial_level(mo) for mo in w_state)
        for mu, comp in self.components.items():
            if not comp:
                continue
            if cap is not None:
                if not w_state:
                    continue
                wt_comp = max(monomial_level(mo) for mo in comp)
                if wt_comp + wt_w + s > cap:
                    continue
            st = self.calc.coeff(comp, s, w_state)
            if st:
                out.terms[mu] = st
        return out


def assemble_odd(calc: VertexCalculus, u_state: dict, cutoff) -> OddVertexOperator:
    if calc.weight(u_state) > Fraction(cutoff) - HALF:
        raise ValueError("state weight beyond the odd-variable cutoff")
    return OddVertexOperator(calc, u_state)


class GrassmannState:
    """Polynomial in phi_1, phi_2 with state-dict coefficients; basis
    monomials are the index tuples (), (1,), (2,), (1,2)."""

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms: dict = {}
        if terms:
            for mu, st in terms.items():
                if st:
                    self.terms[mu] = dict(st)

    def is_zero(self) -> bool:
        return not any(self.terms.values())

    def add(self, other: "GrassmannState") -> "GrassmannState":
        out = GrassmannState(self.m, self.terms)
        for mu, st in other.terms.items():
            cur = out.terms.setdefault(mu, {})
            for k, v in st.items():
                _accum(cur, k, v)
            if not cur:
                del out.terms[mu]
        return out

    def scale(self, c) -> "GrassmannState":
        return GrassmannState(self.m, {mu: _scale(st, c)
                                       for mu, st in self.terms.items()})

    def sub(self, other: "GrassmannState") -> "GrassmannState":
        return self.add(other.scale(Scalar.from_fraction(-1, self.m)))

    def mul_var(self, i: int) -> "GrassmannState":
        """Left multiplication by phi_i (phi_i^2 = 0, phi_2 phi_1 = -phi_1 phi_2)."""
        out = GrassmannState(self.m)
        for mu, st in self.terms.items():
            if i in mu:
                continue
            new = tuple(sorted(mu + (i,)))
            sign = 1
            # count transpositions moving phi_i from the left into place
            sign = -1 if sum(1 for j in mu if j < i) % 2 else 1
            out.terms[new] = _scale(st, Scalar.from_fraction(sign, self.m))
        return out

    def dphi(self, i: int) -> "GrassmannState":
        """Left derivative with respect to phi_i."""
        out = GrassmannState(self.m)
        for mu, st in self.terms.items():
            if i not in mu:
                continue
            pos = mu.index(i)
            new = mu[:pos] + mu[pos + 1:]
            sign = -1 if pos % 2 else 1
            out.terms[new] = _scale(st, Scalar.from_fraction(sign, self.m))
        return out

    def apply(self, fn, parity: int) -> "GrassmannState":
        """Apply a state operator through the Grassmann variables with
        the Koszul sign (-1)^{parity * deg}."""
        out = GrassmannState(self.m)
        for mu, st in self.terms.items():
            sign = -1 if (parity * len(mu)) % 2 else 1
            res = fn(st)
            if sign < 0:
                res = _scale(res, Scalar.from_fraction(-1, self.m))
            if res:
                out.terms[mu] = res
        return out

    def __eq__(self, other):
        if not isinstance(other, GrassmannState):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for mu in keys:
            if _sub(self.terms.get(mu, {}), other.terms.get(mu, {})):
                return False
        return True

    def describe(self):
        out = {}
        for mu, st in sorted(self.terms.items()):
            name = "".join("phi%d" % i for i in mu) or "1"
            out[name] = {str(mo): c.render() for mo, c in st.items()}
        return out


def check_mu_expansion(calc: VertexCalculus) -> dict:
    """Pin the odd-variable expansion of the current generator mu:

        Y(mu,(x,phi_1,phi_2)) = Y(mu,x) - i phi_1 Y(tau_2,x)
                                + i phi_2 Y(tau_1,x) - 2i phi_1 phi_2 Y(omega,x)

    with tau_1 = (tau+ + tau-)/sqrt(2), tau_2 = (tau+ - tau-)/sqrt(-2).
    Under phi+- = (-+phi_1 + i phi_2)/sqrt(2) this is exactly
    phi+ Y(tau+) + phi- Y(tau-) + 2 phi+ phi- Y(omega) added to Y(mu),
    since phi+ phi- = -i phi_1 phi_2."""
    m = calc.m
    op = OddVertexOperator(calc, calc.generator_state("mu"))
    i_sc = Scalar.i(m)
    tp = calc.generator_state("tau+")
    tm = calc.generator_state("tau-")
    tau1 = _scale(_add(tp, tm), calc._inv_sqrt2)
    tau2 = _scale(_sub(tp, tm), calc._inv_sqrtm2)
    expected = {
        (): calc.generator_state("mu"),
        (1,): _scale(tau2, -i_sc),
        (2,): _scale(tau1, i_sc),
        (1, 2): _scale(calc.generator_state("omega"),
                       i_sc * Scalar.from_fraction(-2, m)),
    }
    failures = [mu for mu in expected
                if _sub(op.components[mu], expected[mu])]
    return {"checked": len(expected),
            "failures": [{"component": list(mu)} for mu in failures],
            "pass": not failures}


# -- identity checks -------------------------------------------------------


def check_vacuum_property(calc: VertexCalculus, max_weight, cutoff) -> dict:
    """Y(1,(x,phi_1,phi_2)) = identity: slot 0 acts as the identity and
    every other slot (and every phi-component) vanishes."""
    op = OddVertexOperator(calc, calc.vacuum())
    checked = 0
    failures = []
    for w in calc.basis_states(max_weight):
        for s in range(-int(Fraction(cutoff)) - 2, int(Fraction(cutoff)) + 3):
            got = op.slot(s, w)
            want = GrassmannState(calc.m, {(): w} if s == 0 else {})
            checked += 1
            if got != want:
                failures.append({"slot": s, "vector": _render_state(w)})
    return {"checked": checked, "failures": failures}


def check_creation_property(calc: VertexCalculus, max_weight) -> dict:
    """Y(u,(x,phi_1,phi_2))1 has no negative x-powers in any component
    and its x^0 coefficient in the phi-free component is u itself."""
    vac = calc.vacuum()
    checked = 0
    failures = []
    for u in calc.basis_states(max_weight):
        op = OddVertexOperator(calc, u)
        got = op.slot(0, vac).terms.get((), {})
        checked += 1
        if _sub(got, u):
            failures.append({"slot": 0, "state": _render_state(u)})
        bound = int(2 * calc.weight(u)) + 3
        for s in range(-bound, 0):
            checked += 1
            if not op.slot(s, vac).is_zero():
                failures.append({"slot": s, "state": _render_state(u)})
    return {"checked": checked, "failures": failures}


def check_derivative_properties(calc: VertexCalculus, u_state: dict,
                                cutoff, max_weight=Fraction(2)) -> dict:
    """G_i(-1/2)-derivative: Y(G_i(-1/2)u,(x,phi)) =
    (d/dphi_i + phi_i d/dx) Y(u,(x,phi)); L(-1)-derivative:
    Y(L(-1)u,(x,phi)) = d/dx Y(u,(x,phi)).  Slot-by-slot, exact, on all
    test vectors of weight <= max_weight, result weight <= cutoff."""
    cutoff = Fraction(cutoff)
    op = OddVertexOperator(calc, u_state)
    wt_u = calc.weight(u_state)
    report = {}
    for i in (1, 2):
        gi = calc.g1(u_state) if i == 1 else calc.g2(u_state)
        lhs_op = OddVertexOperator(calc, gi) if gi else None
        checked = 0
        failures = []
        for w in calc.basis_states(max_weight):
            wt_w = calc.weight(w)
            s_lo = ceil(-wt_w - wt_u - 1)
            s_hi = int(cutoff - wt_u - wt_w) + 1
            for s in range(s_lo, s_hi + 1):
                lhs = (lhs_op.slot(s, w, cap=cutoff) if lhs_op
                       else GrassmannState(calc.m))
                # both sides of each phi-component share one result
                # weight, so the uniform cap is an exact truncation
                rhs = op.slot(s, w, cap=cutoff).dphi(i).add(
                    op.slot(s + 1, w, cap=cutoff).scale(
                        Scalar.from_fraction(s + 1, calc.m)).mul_var(i))
                checked += 1
                if lhs != rhs:
                    failures.append({"i": i, "slot": s,
                                     "vector": _render_state(w)})
        report["G%d-derivative" % i] = {"checked": checked, "failures": failures}
    # L(-1)-derivative
    lmu = calc.V.act(ns2("L", -1), u_state)
    lhs_op = OddVertexOperator(calc, lmu) if lmu else None
    checked = 0
    failures = []
    for w in calc.basis_states(max_weight):
        wt_w = calc.weight(w)
        s_lo = ceil(-wt_w - wt_u - 2)
        s_hi = int(cutoff - wt_u - wt_w) + 1
        for s in range(s_lo, s_hi + 1):
            lhs = (lhs_op.slot(s, w, cap=cutoff) if lhs_op
                   else GrassmannState(calc.m))
            rhs = op.slot(s + 1, w, cap=cutoff).scale(
                Scalar.from_fraction(s + 1, calc.m))
            checked += 1
            if lhs != rhs:
                failures.append({"slot": s, "vector": _render_state(w)})
    report["L(-1)-derivative"] = {"checked": checked, "failures": failures}
    report["pass"] = all(not r["failures"] for r in report.values())
    return report


def check_skew_symmetry(calc: VertexCalculus, u_state: dict, v_state: dict,
                        cutoff) -> dict:
    """Y(u,(x,phi_1,phi_2))v = (-1)^{|u||v|}
    e^{xL(-1)+phi_1 G_1(-1/2)+phi_2 G_2(-1/2)} Y(v,(-x,-phi_1,-phi_2))u,
    compared slot by slot on integer x-exponents."""
    cutoff = Fraction(cutoff)
    m = calc.m
    op_u = OddVertexOperator(calc, u_state)
    op_v = OddVertexOperator(calc, v_state)
    wt_u = calc.weight(u_state)
    wt_v = calc.weight(v_state)
    pu = calc.parity(u_state)
    pv = calc.parity(v_state)
    front = Scalar.from_fraction(-1 if pu * pv else 1, m)

    def q_slot(t):
        # Y(v, (-x, -phi_1, -phi_2)) u at x^t; the later G_i(-1/2) and
        # L(-1) applications only raise weight, so terms already above
        # the cutoff here cannot contribute below it
        base = op_v.slot(t, u_state, cap=cutoff)
        out = GrassmannState(m)
        for mu, st in base.terms.items():
            sign = (-1 if t % 2 else 1) * (-1 if len(mu) % 2 else 1)
            out.terms[mu] = _scale(st, Scalar.from_fraction(sign, m))
        return out

    def exp_odd(g: GrassmannState) -> GrassmannState:
        # (1 + phi_1 G_1 + phi_2 G_2 - phi_1 phi_2 G_1 G_2), modes at -1/2
        g1 = g.apply(calc.g1, 1)
        g2 = g.apply(calc.g2, 1)
        g12 = g.apply(calc.g2, 1).apply(calc.g1, 1)
        return (g.add(g1.mul_var(1)).add(g2.mul_var(2))
                .sub(g12.mul_var(2).mul_var(1)))

    t_min = ceil(-wt_u - wt_v - 1)
    s_hi = int(cutoff - wt_u - wt_v) + 2
    # assemble rhs for every slot in one pass: for each inner slot t walk
    # j -> j+1 by a single L(-1) application.  The phi-component mu at
    # stage j is homogeneous of weight wt_u + wt_v + |mu|/2 + t + j, the
    # target weight of slot t + j, and L(-1) only raises weight, so
    # components above the cutoff are pruned for good.
    rhs_by_slot = {s: GrassmannState(m) for s in range(t_min, s_hi + 1)}
    for t in range(t_min, s_hi + 1):
        stage = exp_odd(q_slot(t))
        j = 0
        while t + j <= s_hi and stage.terms:
            s = t + j
            for mu in list(stage.terms):
                if wt_u + wt_v + Fraction(len(mu), 2) + s > cutoff:
                    del stage.terms[mu]
                    continue
                res = _scale(stage.terms[mu], Fraction(1, _fact(j)))
                if res:
                    cur = rhs_by_slot[s].terms.setdefault(mu, {})
                    for k, v in res.items():
                        _accum(cur, k, v)
                    if not cur:
                        del rhs_by_slot[s].terms[mu]
            j += 1
            if t + j <= s_hi and stage.terms:
                stage = stage.apply(
                    lambda st: calc.V.act(ns2("L", -1), st), 0)
    checked = 0
    failures = []
    for s in range(t_min, s_hi + 1):
        lhs = op_u.slot(s, v_state, cap=cutoff)
        rhs = rhs_by_slot[s].scale(front)
        checked += 1
        if lhs != rhs:
            failures.append({"slot": s})
    return {"checked": checked, "failures": failures, "pass": not failures}


def _fact(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def check_generator_brackets(calc: VertexCalculus, idx_bound=2,
                             max_weight=Fraction(2)) -> dict:
    """Mode brackets of reconstructed generator operators reproduce the
    N=2 table: for generators a, b and algebra modes x = a-mode, y = b-mode
    with |index| <= idx_bound, [x, y] (super) computed by composing
    reconstructed modes equals the table's value on every test vector."""
    m = calc.m
    gens = {
        "mu": ("J", Fraction(0)),
        "omega": ("L", Fraction(1)),
        "tau+": ("G+", HALF),
        "tau-": ("G-", HALF),
    }
    checked = 0
    failures = []
    basis = calc.basis_states(max_weight)
    for an, (akind, ashift) in gens.items():
        a_state = calc.generator_state(an)
        for bn, (bkind, bshift) in gens.items():
            b_state = calc.generator_state(bn)
            for xi in _indices(akind, idx_bound):
                for yi in _indices(bkind, idx_bound):
                    x = ns2(akind, xi)
                    y = ns2(bkind, yi)
                    expected = bracket(x, y, m)
                    sgn = -1 if x.parity and y.parity else 1
                    kx = xi + ashift
                    ky = yi + bshift
                    for w in basis:
                        lhs = _sub(
                            calc.mode_apply(a_state, kx,
                                            calc.mode_apply(b_state, ky, w)),
                            _scale(calc.mode_apply(
                                b_state, ky,
                                calc.mode_apply(a_state, kx, w)),
                                Scalar.from_fraction(sgn, m)))
                        rhs: dict = {}
                        for ms, sc in expected.items():
                            if ms.kind == "C":
                                cc = sc * Scalar.from_fraction(calc.c, m)
                                for mo, cw in w.items():
                                    _accum(rhs, mo, cw * cc)
                            else:
                                for mo, cw in calc.V.act(ms, w).items():
                                    _accum(rhs, mo, cw * sc)
                        checked += 1
                        if _sub(lhs, rhs):
                            failures.append({
                                "x": x.render(), "y": y.render(),
                                "vector": _render_state(w)})
    return {"checked": checked, "failures": failures, "pass": not failures}


def _indices(kind: str, bound: int):
    if kind in ("G+", "G-"):
        r = -bound + HALF
        while r <= bound:
            yield r
            r += 1
    else:
        yield from range(-bound, bound + 1)


def _render_state(state: dict) -> str:
    parts = []
    for mo, c in sorted(state.items(), key=str):
        body = " ".join(x.render() for x in mo) if mo else "1"
        parts.append("(%s)*%s" % (c.render(), body))
    return " + ".join(parts) if parts else "0"


def run_oddvar_checks(m: int, cutoff=Fraction(7, 2), max_weight=Fraction(2),
                      idx_bound: int = 2) -> dict:
    """Full identity suite on V_ns2(c_m,0,0): vacuum, creation, derivative
    and skew-symmetry properties for all states of weight <= max_weight,
    plus generator-mode bracket reproduction."""
    calc = VertexCalculus(m)
    report = {
        "c": str(calc.c),
        "vacuum": check_vacuum_property(calc, max_weight, cutoff),
        "creation": check_creation_property(calc, max_weight),
    }
    deriv = {"checked": 0, "failures": []}
    for u in calc.basis_states(max_weight):
        sub = check_derivative_properties(calc, u, cutoff, max_weight)
        for name, r in sub.items():
            if name == "pass":
                continue
            deriv["checked"] += r["checked"]
            deriv["failures"].extend(r["failures"])
    report["derivative"] = deriv
    skew = {"checked": 0, "failures": []}
    states = calc.basis_states(max_weight)
    for u in states:
        for v in states:
            r = check_skew_symmetry(calc, u, v, cutoff)
            skew["checked"] += r["checked"]
            skew["failures"].extend(r["failures"])
    report["skew_symmetry"] = skew
    report["brackets"] = check_generator_brackets(calc, idx_bound, max_weight)
    report["mu_expansion"] = check_mu_expansion(calc)
    report["pass"] = all(
        not report[k]["failures"]
        for k in ("vacuum", "creation", "derivative", "skew_symmetry",
                  "brackets", "mu_expansion"))
    return report
