"""Anti-Kazama-Suzuki construction: a level-m affine sl2 action plus a
commuting Heisenberg field inside L_ns2(c_m, h, q) (x) V_L.

The distinguished states (kappa = (m+2)/2) are

    e   = G+(-3/2)1 (x) e^{-alpha}
    f   = kappa * G-(-3/2)1 (x) e^{alpha}
    h   = -m * 1 (x) alpha(-1) + (m+2) * J(-1)1 (x) 1
    rho = sqrt(kappa) * (J(-1)1 (x) 1 - 1 (x) alpha(-1))

with modes E(n), F(n), H(n), R(n) the coefficients of x^{-n-1} in the
corresponding tensor-product fields, and two Virasoro-type states

    omega_sl2   = omega (x) 1 + ((m+2)/4) J(-1)^2 1 (x) 1
                  - ((m+2)/2) J(-1)1 (x) alpha(-1) + (m/4) 1 (x) alpha(-1)^2
    omega_total = omega (x) 1 + 1 (x) omega~_{V_L}

whose modes are coefficients of x^{-n-2}.  All mode applications are
exact: the tensor convolution is a finite sum because x-coefficients of
a field raise the weight of the (weight-bounded-below) left factor and
annihilation degrees on the right factor are bounded by the oscillator
content.  E and F are built from one odd N=2 generator and one odd
lattice sector each, so they act as even operators overall; the affine
relation suite therefore uses plain commutators, with the Koszul sign
(-1)^{|v||w_left|} inside the convolution.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from .algebra import HALF, ModeSymbol, bracket, ns2, sym
from .lattice import LatticeState, apply_alpha, exp_mode, state_weight
from .linalg import SubspaceReducer, kernel_basis, rank
from .minimal import central_charge
from .scalars import Scalar
from .verma import (MatrixModule, Monomial, VermaParams, enumerate_basis,
                    monomial_charge, monomial_level, monomial_parity)

# x-coefficient families of the left tensor factor: the x^s coefficient
# of Y(u, x) raises the weight by s + wt(u).
_LEFT_WEIGHT = {
    "one": Fraction(0),
    "mu": Fraction(1),
    "tau+": Fraction(3, 2),
    "tau-": Fraction(3, 2),
    "omega": Fraction(2),
    "J2": Fraction(2),
}


def _accum(d: dict, k, v) -> None:
    cur = d.get(k)
    new = v if cur is None else cur + v
    if new.is_zero():
        d.pop(k, None)
    else:
        d[k] = new


def _scale(state: dict, c) -> dict:
    return {k: v * c for k, v in state.items()}


def _sub(a: dict, b: dict, m: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        _accum(out, k, -v)
    return out


class WindowError(ValueError):
    """An operator image left the truncated basis."""


class CosetModule:
    """L_ns2(c_m, h, q) (x) V_L with the anti-Kazama-Suzuki operators.

    Tensor states are dicts mapping (Monomial, LatticeState) to Scalar;
    the left Monomial is always a basis label of the simple quotient in
    its matrix realization.
    """

    def __init__(self, m: int, h=0, q=0):
        self.m = m
        self.h0 = Fraction(h)
        self.q0 = Fraction(q)
        self.left = MatrixModule(
            VermaParams(central_charge(m), self.h0, self.q0, m))
        self.kappa = Fraction(m + 2, 2)
        self.sqrt_kappa = Scalar.sqrt_half_level(m)
        one = Scalar.one(m)
        self._fields = {
            "E": ((one, "tau+", ("exp", -1)),),
            "F": ((Scalar.from_fraction(self.kappa, m), "tau-", ("exp", 1)),),
            "H": ((Scalar.from_fraction(-m, m), "one", ("alpha", 1)),
                  (Scalar.from_fraction(m + 2, m), "mu", ("one",))),
            "R": ((self.sqrt_kappa, "mu", ("one",)),
                  (-self.sqrt_kappa, "one", ("alpha", 1))),
            "Lsl2": ((one, "omega", ("one",)),
                     (Scalar.from_fraction(Fraction(m + 2, 4), m), "J2", ("one",)),
                     (Scalar.from_fraction(Fraction(-(m + 2), 2), m), "mu", ("alpha", 1)),
                     (Scalar.from_fraction(Fraction(m, 4), m), "one", ("alpha11",))),
            "Ltot": ((one, "omega", ("one",)),
                     (Scalar.from_fraction(Fraction(-1, 2), m), "one", ("alpha11",)),
                     (Scalar.from_fraction(Fraction(1, 2), m), "one", ("alpha", 2))),
        }
        # n-th mode of field X = coefficient of x^{-n - shift}
        self._shift = {"E": 1, "F": 1, "H": 1, "R": 1, "Lsl2": 2, "Ltot": 2}
        self._left_cache: dict = {}
        self._right_cache: dict = {}
        self._op_cache: dict = {}

    # -- gradings ---------------------------------------------------------

    def key_grade(self, key):
        """(total weight, left charge, sector) of a basis key."""
        mono, lat = key
        w = self.h0 + monomial_level(mono) + state_weight(lat, self.m)
        return (w, self.q0 + monomial_charge(mono), lat.sector)

    def key_parity(self, key) -> int:
        mono, lat = key
        return (monomial_parity(mono) + lat.parity) % 2

    def h_eigenvalue(self, key) -> Fraction:
        """H(0) is diagonal on basis keys: (m+2) q + m p."""
        mono, lat = key
        q = self.q0 + monomial_charge(mono)
        return (self.m + 2) * q + self.m * lat.sector

    def sigma(self, key) -> Fraction:
        """q + p, invariant under E, F, H, R."""
        mono, lat = key
        return self.q0 + monomial_charge(mono) + lat.sector

    # -- single-factor mode families --------------------------------------

    def _left_apply(self, lname: str, s: int, mono: Monomial) -> dict:
        key = (lname, s, mono)
        res = self._left_cache.get(key)
        if res is not None:
            return res
        st = {mono: Scalar.one(self.m)}
        if lname == "one":
            res = dict(st) if s == 0 else {}
        elif lname == "mu":
            res = self.left.act(ns2("J", -s - 1), st)
        elif lname == "omega":
            res = self.left.act(ns2("L", -s - 2), st)
        elif lname == "tau+":
            res = self.left.act(ns2("G+", -s - Fraction(3, 2)), st)
        elif lname == "tau-":
            res = self.left.act(ns2("G-", -s - Fraction(3, 2)), st)
        elif lname == "J2":
            # sum over k of :J(k)J(-s-2-k):, annihilator applied first
            res = {}
            d = monomial_level(mono)
            for k in range(ceil(-s - 2 - d), int(d) + 1):
                lo, hi = sorted((k, -s - 2 - k))
                tmp = self.left.act(ns2("J", hi), st)
                if tmp:
                    tmp = self.left.act(ns2("J", lo), tmp)
                    for mo, c in tmp.items():
                        _accum(res, mo, c)
        else:
            raise ValueError("unknown left family %r" % (lname,))
        self._left_cache[key] = res
        return res

    def _right_min_exp(self, rspec, lat: LatticeState) -> int:
        kind = rspec[0]
        w = lat.osc_weight()
        if kind == "one":
            return 0
        if kind == "alpha":
            return -w - rspec[1]
        if kind == "alpha11":
            return -w - 2
        if kind == "exp":
            return -rspec[1] * lat.sector - w
        raise ValueError("unknown right family %r" % (rspec,))

    def _right_parity(self, rspec) -> int:
        return rspec[1] % 2 if rspec[0] == "exp" else 0

    def _right_apply(self, rspec, e: int, lat: LatticeState) -> dict:
        key = (rspec, e, lat)
        res = self._right_cache.get(key)
        if res is not None:
            return res
        m = self.m
        st = {lat: Scalar.one(m)}
        kind = rspec[0]
        if kind == "one":
            res = dict(st) if e == 0 else {}
        elif kind == "alpha":
            if rspec[1] == 1:
                res = apply_alpha(-e - 1, st, m)
            else:
                # Y(alpha(-2)1, x) = d/dx Y(alpha(-1)1, x)
                res = _scale(apply_alpha(-e - 2, st, m),
                             Scalar.from_fraction(e + 1, m)) if e != -1 else {}
        elif kind == "alpha11":
            res = {}
            w = lat.osc_weight()
            for k in range(-e - 2 - w, w + 1):
                lo, hi = sorted((k, -e - 2 - k))
                tmp = apply_alpha(hi, st, m)
                if tmp:
                    tmp = apply_alpha(lo, tmp, m)
                    for ls, c in tmp.items():
                        _accum(res, ls, c)
        elif kind == "exp":
            res = exp_mode(rspec[1], e, st, m)
        else:
            raise ValueError("unknown right family %r" % (rspec,))
        self._right_cache[key] = res
        return res

    # -- tensor modes ------------------------------------------------------

    def tensor_mode(self, components, t, state: dict) -> dict:
        """x^t-coefficient of a sum of Y(u,x) (x) Y(v,x) applied to a
        tensor state; components is a tuple of (coef, left, right)."""
        t = Fraction(t)
        if t.denominator != 1:
            raise ValueError(
                "exponent %s not allowed on this module (allowed: integers)" % t)
        t = int(t)
        out: dict = {}
        for (mono, lat), coef in state.items():
            lp = monomial_parity(mono)
            for ccoef, lname, rspec in components:
                sign = -1 if (lp and self._right_parity(rspec)) else 1
                c0 = ccoef * sign * coef
                s_min = ceil(-monomial_level(mono) - _LEFT_WEIGHT[lname])
                s_max = t - self._right_min_exp(rspec, lat)
                for s in range(s_min, s_max + 1):
                    lres = self._left_apply(lname, s, mono)
                    if not lres:
                        continue
                    rres = self._right_apply(rspec, t - s, lat)
                    if not rres:
                        continue
                    get = out.get
                    for lm, lc in lres.items():
                        lcc = lc * c0
                        for rs2, rc in rres.items():
                            k2 = (lm, rs2)
                            cur = get(k2)
                            new = lcc * rc if cur is None else cur + lcc * rc
                            if new.is_zero():
                                out.pop(k2, None)
                            else:
                                out[k2] = new
        return out

    def mode(self, name: str, n, state: dict) -> dict:
        """n-th mode of one of the named fields E, F, H, R, Lsl2, Ltot."""
        n = Fraction(n)
        comp = self._fields[name]
        t = -n - self._shift[name]
        out: dict = {}
        one = Scalar.one(self.m)
        for key, coef in state.items():
            ck = (name, n, key)
            res = self._op_cache.get(ck)
            if res is None:
                res = self.tensor_mode(comp, t, {key: one})
                self._op_cache[ck] = res
            for k2, c2 in res.items():
                _accum(out, k2, c2 * coef)
        return out

    # -- distinguished states ---------------------------------------------

    def vacuum_state(self) -> dict:
        return {((), LatticeState((), 0)): Scalar.one(self.m)}

    def _tensor_state(self, entries) -> dict:
        out: dict = {}
        for coef, left_raw, lat in entries:
            c = Scalar.from_fraction(coef, self.m) if not isinstance(coef, Scalar) else coef
            for mo, lc in self.left.reduce_state(left_raw).items():
                _accum(out, (mo, lat), lc * c)
        return out

    def generator_states(self) -> dict:
        m = self.m
        one = Scalar.one(m)
        lat0 = LatticeState((), 0)
        a1 = LatticeState((1,), 0)
        a11 = LatticeState((1, 1), 0)
        a2 = LatticeState((2,), 0)
        vac = {(): one}
        mu = {(ns2("J", -1),): one}
        omega = {(ns2("L", -2),): one}
        jj = {(ns2("J", -1), ns2("J", -1)): one}
        return {
            "e": self._tensor_state([(1, {(ns2("G+", -Fraction(3, 2)),): one},
                                      LatticeState((), -1))]),
            "f": self._tensor_state([(self.kappa,
                                      {(ns2("G-", -Fraction(3, 2)),): one},
                                      LatticeState((), 1))]),
            "h": self._tensor_state([(-m, vac, a1), (m + 2, mu, lat0)]),
            "rho": self._tensor_state([(self.sqrt_kappa, mu, lat0),
                                       (-self.sqrt_kappa, vac, a1)]),
            "omega_sl2": self._tensor_state([
                (1, omega, lat0),
                (Fraction(m + 2, 4), jj, lat0),
                (Fraction(-(m + 2), 2), mu, a1),
                (Fraction(m, 4), vac, a11)]),
            "omega_total": self._tensor_state([
                (1, omega, lat0),
                (Fraction(-1, 2), vac, a11),
                (Fraction(1, 2), vac, a2)]),
        }

    def omega_rho_state(self) -> dict:
        """Virasoro state of the rho-Heisenberg, built from engine R-modes
        through the identification a(n) -> i R(n):
        (1/2) a(-1)^2 1 + (i/2) a(-2) 1  ->  -(1/2) R(-1)R(-1)vac - (1/2) R(-2)vac.
        """
        vac = self.vacuum_state()
        half = Scalar.from_fraction(HALF, self.m)
        quad = self.mode("R", -1, self.mode("R", -1, vac))
        lin = self.mode("R", -2, vac)
        out = _scale(quad, -half)
        for k, v in _scale(lin, -half).items():
            _accum(out, k, v)
        return out

    # -- truncated bases ---------------------------------------------------

    def left_charges(self, level: Fraction):
        """Charges with nonzero quotient dimension at the given level."""
        qmax = 1
        while Fraction(qmax * qmax, 2) <= level:
            qmax += 1
        out = []
        for q in range(-qmax, qmax + 1):
            if enumerate_basis(level, q) and self.left.dim(level, q) > 0:
                out.append(q)
        return out

    def _left_levels(self, budget: Fraction):
        lv = Fraction(0)
        while lv <= budget:
            yield lv
            lv += HALF

    def window_basis(self, max_weight, max_sector: int):
        """All tensor basis keys of total weight <= max_weight with
        |sector| <= max_sector, deterministically ordered."""
        max_weight = Fraction(max_weight)
        keys = []
        for p in range(-max_sector, max_sector + 1):
            wb = state_weight(LatticeState((), p), self.m)
            for osc in _osc_multisets_upto(max_weight - self.h0 - wb):
                lat = LatticeState(osc, p)
                budget = max_weight - self.h0 - wb - lat.osc_weight()
                for lv in self._left_levels(budget):
                    for q in self.left_charges(lv):
                        for mono in self.left.basis(lv, q):
                            keys.append((mono, lat))
        keys.sort(key=_key_sort)
        return keys

    def operator_matrix(self, name: str, n, basis) -> list[list[Scalar]]:
        """Matrix of mode(name, n) on the span of the given basis keys;
        raises WindowError if the image leaves the window (columns indexed
        by input basis, rows by output basis position)."""
        index = {k: i for i, k in enumerate(basis)}
        zero = Scalar.zero(self.m)
        one = Scalar.one(self.m)
        cols = []
        for key in basis:
            img = self.mode(name, n, {key: one})
            col = [zero] * len(basis)
            for k2, c in img.items():
                if k2 not in index:
                    raise WindowError(
                        "%s(%s) image leaves the window at %s" % (name, n, (k2,)))
                col[index[k2]] = c
            cols.append(col)
        return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def _key_sort(key):
    mono, lat = key
    return (monomial_level(mono) + Fraction(lat.osc_weight()), lat.sector,
            monomial_charge(mono), len(mono),
            tuple((x.kind, x.index) for x in mono), lat.oscillators)


def _osc_multisets_upto(budget: Fraction):
    if budget < 0:
        return []
    b = int(budget)
    res = [()]

    def rec(rem, mx, acc):
        for n in range(min(rem, mx), 0, -1):
            res.append(tuple(sorted(acc + [n], reverse=True)))
            rec(rem - n, n, acc + [n])

    rec(b, b, [])
    return res


# -- relation suites -------------------------------------------------------


def _expected_bracket(x_name: str, p: int, y_name: str, q: int, m: int):
    """Expected value of the commutator [X(p), Y(q)] as (mode terms,
    central scalar): affine sl2 at level m for E, F, H; R is a commuting
    Heisenberg mode with [R(p), R(q)] = -p delta_{p+q,0} (<rho,rho> = -1)."""
    if x_name == "R" or y_name == "R":
        if x_name == "R" and y_name == "R":
            central = Fraction(-p) if p + q == 0 else Fraction(0)
            return [], central
        return [], Fraction(0)
    lc = bracket(sym("affine-sl2", x_name, p), sym("affine-sl2", y_name, q), m)
    terms = []
    central = Fraction(0)
    for ms, sc in lc.items():
        if ms.kind == "K":
            central += sc.as_fraction() * m
        else:
            terms.append((sc, ms.kind, ms.index))
    return terms, central


def verify_affine_relations(m: int, cutoff=Fraction(5, 2), max_sector: int = 2,
                            idx_bound: int = 2, h=0, q=0,
                            module: CosetModule | None = None) -> dict:
    """Check every commutator among E, F, H, R with mode indices
    |n| <= idx_bound on all tensor basis vectors of weight <= cutoff,
    |sector| <= max_sector; measure the level from [E(p), F(-p)] on the
    vacuum for p in {1, 2}."""
    mod = module or CosetModule(m, h, q)
    basis = mod.window_basis(cutoff, max_sector)
    one = Scalar.one(m)
    pairs = [("E", "E"), ("E", "F"), ("E", "H"), ("E", "R"),
             ("F", "F"), ("F", "H"), ("F", "R"),
             ("H", "H"), ("H", "R"), ("R", "R")]
    relations = {}
    ok = True
    for x_name, y_name in pairs:
        checked = 0
        failures = []
        for p in range(-idx_bound, idx_bound + 1):
            for n in range(-idx_bound, idx_bound + 1):
                terms, central = _expected_bracket(x_name, p, y_name, n, m)
                for key in basis:
                    v = {key: one}
                    lhs = _sub(mod.mode(x_name, p, mod.mode(y_name, n, v)),
                               mod.mode(y_name, n, mod.mode(x_name, p, v)), m)
                    rhs: dict = {}
                    for sc, kind, idx in terms:
                        for k2, c in mod.mode(kind, idx, v).items():
                            _accum(rhs, k2, c * sc)
                    if central:
                        _accum(rhs, key, Scalar.from_fraction(central, m))
                    checked += 1
                    if _sub(lhs, rhs, m):
                        failures.append({"p": p, "q": n,
                                         "vector": _render_key(key)})
        relations["[%s,%s]" % (x_name, y_name)] = {
            "checked": checked, "failures": failures}
        ok = ok and not failures
    # level: [E(p), F(-p)] vac = H(0) vac + p * level * vac, H(0) vac = 0
    vac_key = ((), LatticeState((), 0))
    level = {}
    level_ok = True
    if (mod.h0, mod.q0) == (0, 0):
        for p in (1, 2):
            v = {vac_key: one}
            comm = _sub(mod.mode("E", p, mod.mode("F", -p, v)),
                        mod.mode("F", -p, mod.mode("E", p, v)), m)
            coef = comm.get(vac_key, Scalar.zero(m))
            rest = dict(comm)
            rest.pop(vac_key, None)
            measured = coef.as_fraction() / p if coef.is_rational() and not rest else None
            level[str(p)] = str(measured) if measured is not None else "undefined"
            level_ok = level_ok and measured == m
    return {"relations": relations, "level": level,
            "level_ok": level_ok, "pass": ok and level_ok}


def verify_rho_and_virasoro(m: int, cutoff=Fraction(5, 2), max_sector: int = 2,
                            idx_bound: int = 2, h=0, q=0,
                            module: CosetModule | None = None) -> dict:
    """(a) [R(p), E/F/H(q)] = 0 on the window; (b) the state identity
    omega_sl2 + omega_rho = omega_total, with the exact residual reported;
    (c) Virasoro relations for the omega_sl2 modes, with the central
    charge measured from [L(2), L(-2)] vac and required to be 3m/(m+2)."""
    mod = module or CosetModule(m, h, q)
    basis = mod.window_basis(cutoff, max_sector)
    one = Scalar.one(m)
    report: dict = {}
    # (a) commutant
    checked = 0
    failures = []
    for other in ("E", "F", "H"):
        for p in range(-idx_bound, idx_bound + 1):
            for n in range(-idx_bound, idx_bound + 1):
                for key in basis:
                    v = {key: one}
                    comm = _sub(mod.mode("R", p, mod.mode(other, n, v)),
                                mod.mode(other, n, mod.mode("R", p, v)), m)
                    checked += 1
                    if comm:
                        failures.append({"other": other, "p": p, "q": n,
                                         "vector": _render_key(key)})
    report["commutant"] = {"checked": checked, "failures": failures}
    # (b) state identity
    states = mod.generator_states()
    lhs = dict(states["omega_sl2"])
    for k, v in mod.omega_rho_state().items():
        _accum(lhs, k, v)
    residual = _sub(lhs, states["omega_total"], m)
    report["state_identity"] = {
        "holds": not residual,
        "residual": [{"key": _render_key(k), "coef": c.render()}
                     for k, c in sorted(residual.items(),
                                        key=lambda kv: _render_key(kv[0]))],
    }
    # (c) Virasoro relations for Lsl2 modes
    vir_checked = 0
    vir_failures = []
    for p in range(-idx_bound, idx_bound + 1):
        for n in range(-idx_bound, idx_bound + 1):
            for key in basis:
                v = {key: one}
                lhs = _sub(mod.mode("Lsl2", p, mod.mode("Lsl2", n, v)),
                           mod.mode("Lsl2", n, mod.mode("Lsl2", p, v)), m)
                rhs = _scale(mod.mode("Lsl2", p + n, v),
                             Scalar.from_fraction(p - n, m))
                if p + n == 0:
                    cterm = central_charge(m) * Fraction(p ** 3 - p, 12)
                    _accum(rhs, key, Scalar.from_fraction(cterm, m))
                vir_checked += 1
                if _sub(lhs, rhs, m):
                    vir_failures.append({"p": p, "q": n,
                                         "vector": _render_key(key)})
    vac_key = ((), LatticeState((), 0))
    cc = None
    if (mod.h0, mod.q0) == (0, 0):
        v = {vac_key: one}
        comm = _sub(mod.mode("Lsl2", 2, mod.mode("Lsl2", -2, v)),
                    mod.mode("Lsl2", -2, mod.mode("Lsl2", 2, v)), m)
        coef = comm.get(vac_key, Scalar.zero(m))
        if coef.is_rational() and list(comm) == [vac_key]:
            cc = coef.as_fraction() * 2
    report["virasoro"] = {"checked": vir_checked, "failures": vir_failures,
                          "central_charge": str(cc) if cc is not None else "undefined",
                          "central_charge_ok": cc == central_charge(m)}
    report["pass"] = (not failures and report["state_identity"]["holds"]
                      and not vir_failures and report["virasoro"]["central_charge_ok"])
    return report


def _render_key(key) -> str:
    mono, lat = key
    left = " ".join(x.render() for x in mono) if mono else "1"
    osc = " ".join("alpha[-%d]" % n for n in lat.oscillators)
    right = (osc + " " if osc else "") + "e^{%d alpha}" % lat.sector
    return "%s (x) %s" % (left, right)


# -- highest-weight search and decomposition witness -----------------------


def _min_verma_level(charge: int) -> Fraction:
    """Lowest PBW level carrying the given charge: q distinct charged
    fermion modes G(-1/2), ..., G(-(2q-1)/2)."""
    q = abs(charge)
    return Fraction(q * q, 2)


def _support_floor(m: int, charge: int) -> Fraction:
    """Charge-support floor of the simple left factor: states of
    relative charge d sit at relative level >= (m+2)d^2/(2m) - (m+1)|d|.
    The quadratic term is the extremal parabola of the charged fermion
    chains surviving in the simple quotient; the linear slack absorbs
    the offsets of non-vacuum highest weights.  The floor is re-verified
    against every grade of the left factor that actually gets built (see
    the support_bound block of the decomposition report)."""
    d = abs(charge)
    return Fraction((m + 2) * d * d, 2 * m) - (m + 1) * d


def _sector_active(mod: CosetModule, charge: int, budget: Fraction,
                   level_cap: Fraction):
    """Does the left factor contribute to a grade whose sector budget
    (relative left level before lattice oscillators) is `budget`?
    Oscillators absorb integer weight, so only left levels congruent to
    the budget mod 1 matter.  Returns True, False, or "undecided" when
    settling the question would require building beyond level_cap."""
    if (2 * budget).denominator != 1:
        return False
    floor = max(_min_verma_level(charge), _support_floor(mod.m, charge),
                Fraction(0))
    undecided = False
    lv = budget
    while lv >= floor:
        if lv > level_cap:
            undecided = True
        elif enumerate_basis(lv, charge) and mod.left.dim(lv, charge) > 0:
            return True
        lv -= 1
    return "undecided" if undecided else False


def find_affine_hw(m: int, max_weight=Fraction(2), max_sector: int = 2,
                   h=0, q=0, module: CosetModule | None = None) -> dict:
    """Vectors annihilated by E(n), F(n), H(n), R(n) for n > 0 and by
    F(0), classified by the sl2 spin label k (minus the H(0) eigenvalue
    of the multiplet-bottom vector found) and the R(0)-eigenvalue s,
    plus a completeness certificate: on every (weight, sigma) grade fully
    contained in the window, descendants of the found vectors under
    negative modes and E(0)-powers span the grade.

    The search window extends to weight max_weight + m/2 so that
    E(0)-strings starting above certified grades are not missed.
    """
    mod = module or CosetModule(m, h, q)
    max_weight = Fraction(max_weight)
    search_weight = max_weight + Fraction(m, 2)
    search_sector = max_sector + m
    basis = mod.window_basis(search_weight, search_sector)
    one = Scalar.one(m)
    zero = Scalar.zero(m)

    # blocks by (weight, left charge, sector): H(0) and R(0) are diagonal
    # on basis keys and constraints preserve sigma = q + p
    blocks: dict = {}
    for key in basis:
        w, qq, p = mod.key_grade(key)
        blocks.setdefault((w, qq, p), []).append(key)

    found = []
    for (w, qq, p), keys in sorted(blocks.items()):
        constraints = _hw_constraints(mod, w, p)
        # impose one operator at a time: the joint kernel shrinks fast,
        # so later eliminations act on a nearly-solved space
        kern = [[one if i == j else zero for j in range(len(keys))]
                for i in range(len(keys))]
        for name, n in constraints:
            if not kern:
                break
            images = [mod.mode(name, n, {k: one}) for k in keys]
            support = sorted({k2 for img in images for k2 in img},
                             key=_key_sort)
            if not support:
                continue
            sidx = {k2: i for i, k2 in enumerate(support)}
            img_rows = []
            for vec in kern:
                acc = [zero] * len(support)
                for j, cf in enumerate(vec):
                    if cf.is_zero():
                        continue
                    for k2, c2 in images[j].items():
                        i2 = sidx[k2]
                        acc[i2] = acc[i2] + c2 * cf
                img_rows.append(acc)
            mat = [[img_rows[i][s] for i in range(len(kern))]
                   for s in range(len(support))]
            combos = kernel_basis(mat, m, width=len(kern))
            new_kern = []
            for combo in combos:
                vec = [zero] * len(keys)
                for i, lam in enumerate(combo):
                    if lam.is_zero():
                        continue
                    base = kern[i]
                    for j in range(len(keys)):
                        b = base[j]
                        if not b.is_zero():
                            vec[j] = vec[j] + lam * b
                new_kern.append(vec)
            kern = new_kern
        for vec in kern:
            state = {k: c for k, c in zip(keys, vec) if not c.is_zero()}
            # F(0)-annihilated vectors sit at the bottom of their sl2
            # multiplet, so the spin label is minus the H(0) eigenvalue
            k_eig = -((m + 2) * qq + m * p)
            s_eig = mod.sqrt_kappa * Fraction(qq + p)
            found.append({"k": k_eig, "sigma": qq + p, "s": s_eig,
                          "weight": w, "charge": qq, "sector": p,
                          "state": state})

    k_values = sorted({int(rec["k"]) if Fraction(rec["k"]).denominator == 1
                       else str(rec["k"]) for rec in found},
                      key=lambda x: (isinstance(x, str), x))
    certificate = _completeness_certificate(mod, found, max_weight, max_sector,
                                            search_sector)
    support_bound = _verify_support_floor(mod)
    report = {
        "vectors": [{
            "k": str(rec["k"]), "s": rec["s"].render(),
            "sigma": str(rec["sigma"]), "weight": str(rec["weight"]),
            "charge": str(rec["charge"]), "sector": rec["sector"],
            "state": [{"key": _render_key(kk), "coef": c.render()}
                      for kk, c in sorted(rec["state"].items(),
                                          key=lambda kv: _render_key(kv[0]))],
        } for rec in found],
        "k_values": [str(k) for k in k_values],
        "k_in_range": all(
            Fraction(rec["k"]).denominator == 1 and 0 <= rec["k"] <= m
            for rec in found),
        "certificate": certificate,
        "support_bound": support_bound,
    }
    report["pass"] = (report["k_in_range"] and support_bound["pass"]
                      and all(g["pass"] for g in certificate.values()))
    return report


def _hw_constraints(mod: CosetModule, w: Fraction, p: int):
    """Annihilation operators to impose on a (weight w, sector p) block:
    positive modes up to the index beyond which the image weight falls
    below the minimum lattice weight of the target sector, plus F(0)."""
    out = [("F", 0)]
    # weight shifts: E(n): -n-1/2 (sector p-1), F(n): -n+1/2 (sector p+1),
    # H(n), R(n): -n (sector p)
    for name, dw, dp in (("E", Fraction(-1, 2), -1), ("F", Fraction(1, 2), 1),
                         ("H", Fraction(0), 0), ("R", Fraction(0), 0)):
        floor_w = state_weight(LatticeState((), p + dp), mod.m)
        n = 1
        while w - n + dw >= floor_w:
            out.append((name, n))
            n += 1
    return out


_DESC_SHIFTS = [("E", Fraction(1, 2)), ("F", Fraction(3, 2)),
                ("H", Fraction(1)), ("R", Fraction(1))]


def _descendant_monomials(budget: Fraction):
    """Multisets of negative modes {E(-n), F(-n), H(-n), R(-n)} with total
    weight gain exactly budget (shifts: E(-n): n-1/2, F(-n): n+1/2,
    H(-n), R(-n): n)."""
    out = []

    def rec(rem, start, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(_DESC_SHIFTS)):
            name, base = _DESC_SHIFTS[i]
            n = 1
            while base + (n - 1) <= rem:
                rec(rem - (base + n - 1), i, acc + [(name, -n)])
                n += 1

    rec(budget, 0, [])
    return out


def _completeness_certificate(mod: CosetModule, found, max_weight,
                              max_sector: int, search_sector: int) -> dict:
    """Per (weight, sigma) grade with weight <= max_weight that is fully
    contained in the window: rank of the descendant span must equal the
    grade dimension."""
    m = mod.m
    one = Scalar.one(m)
    zero = Scalar.zero(m)
    basis = mod.window_basis(max_weight, search_sector)
    grades: dict = {}
    for key in basis:
        w, qq, p = mod.key_grade(key)
        grades.setdefault((w, qq + p), []).append(key)
    level_cap = Fraction(max_weight) + 2 * m + 5
    cert = {}
    for (w, sigma), keys in sorted(grades.items()):
        contained, scan = _grade_contained(mod, w, sigma, search_sector,
                                           level_cap)
        label = "weight %s sigma %s" % (w, sigma)
        if not contained:
            cert[label] = {"dim": len(keys), "contained": False,
                           "scan": scan, "pass": True, "skipped": True}
            continue
        index = {k: i for i, k in enumerate(keys)}
        rows = []
        escaped = False
        for rec in found:
            if rec["sigma"] != sigma:
                continue
            k_eig = rec["k"]
            if Fraction(k_eig).denominator != 1 or not 0 <= k_eig <= m:
                continue
            v = dict(rec["state"])
            for a in range(int(k_eig) + 1):
                if a:
                    v = mod.mode("E", 0, v)
                    if not v:
                        break
                budget = w - (rec["weight"] - Fraction(a, 2))
                if budget < 0 or (2 * budget).denominator != 1:
                    continue
                for monos in _descendant_monomials(budget):
                    desc = v
                    for name, n in reversed(monos):
                        desc = mod.mode(name, n, desc)
                        if not desc:
                            break
                    if not desc:
                        continue
                    row = [zero] * len(keys)
                    good = True
                    for k2, c in desc.items():
                        if k2 not in index:
                            good = False
                            break
                        row[index[k2]] = c
                    if not good:
                        escaped = True
                        continue
                    rows.append(row)
        span = rank(rows) if rows else 0
        cert[label] = {"dim": len(keys), "contained": True, "scan": scan,
                       "span": span, "escaped": escaped,
                       "pass": span == len(keys)}
    return cert


def _grade_contained(mod: CosetModule, w: Fraction, sigma: Fraction,
                     search_sector: int, level_cap: Fraction,
                     scan_margin: int = 3):
    """Does the full module's (weight w, sigma) block lie inside sectors
    |p| <= search_sector?  Scan outward; a sector p contributes iff the
    left factor has a state of charge sigma - p at relative level
    <= w - h0 - (lattice minimum weight at p).  Far sectors are ruled
    out by the charge-support floor, whose quadratic growth beats the
    budget's; sectors the floor cannot settle get direct dimension
    queries capped at level_cap.  Conservative throughout: undecided
    sectors and hard-cap exits mark the grade as not contained."""
    scan = {"checked": [], "hard_cap": False, "undecided": []}
    if (sigma - mod.q0).denominator != 1:
        return False, scan
    hard = search_sector + 2 * mod.m + 8
    for direction in (1, -1):
        floor_run = 0
        p = direction * (search_sector + 1)
        while abs(p) <= hard:
            budget = w - mod.h0 - state_weight(LatticeState((), p), mod.m)
            charge = sigma - mod.q0 - p
            active = False
            by_floor = True
            if budget >= 0 and charge.denominator == 1:
                d = int(charge)
                if max(_min_verma_level(d), _support_floor(mod.m, d)) <= budget:
                    by_floor = False
                    got = _sector_active(mod, d, budget, level_cap)
                    if got == "undecided":
                        scan["undecided"].append(p)
                        return False, scan
                    active = bool(got)
            scan["checked"].append(p)
            if active:
                return False, scan
            floor_run = floor_run + 1 if by_floor else 0
            if floor_run >= scan_margin:
                break
            p += direction
        else:
            scan["hard_cap"] = True
            return False, scan
    return True, scan


def _verify_support_floor(mod: CosetModule) -> dict:
    """Check the charge-support floor against every grade of the left
    factor built so far; any populated grade below the floor is a
    violation and invalidates floor-based sector exclusions."""
    violations = []
    built = getattr(mod.left, "_built", None)
    grades = getattr(mod.left, "_labels", None)
    if grades is not None:
        for (lv, d), labels in sorted(grades.items()):
            if labels and lv < _support_floor(mod.m, d):
                violations.append({"level": str(lv), "charge": d,
                                   "dim": len(labels)})
    return {
        "floor": "(m+2)*d^2/(2m) - (m+1)*|d| at relative charge d",
        "verified_through_level": str(built) if built is not None else None,
        "violations": violations,
        "pass": not violations,
    }


def extract_affine_modes(m: int, cutoff, max_sector: int, indices,
                         h=0, q=0, module: CosetModule | None = None) -> dict:
    """Matrices of E(n), F(n), H(n), R(n) on the truncated window basis
    for each requested index n; raises WindowError when a component's
    image is not contained in the window."""
    mod = module or CosetModule(m, h, q)
    basis = mod.window_basis(cutoff, max_sector)
    out = {"basis": [_render_key(k) for k in basis], "operators": {}}
    for name in ("E", "F", "H", "R"):
        for n in indices:
            mat = mod.operator_matrix(name, n, basis)
            out["operators"]["%s(%s)" % (name, n)] = [
                [c.render() for c in row] for row in mat]
    return out
