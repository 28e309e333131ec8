"""Command-line front end: configuration, result cache and JSON/CSV
emission for the engine operations.

Exit codes: 0 success, 2 invalid input, 3 verification failure (the
engine ran and produced a report with failures).  JSON is the canonical
format; rationals serialize as "p/q" strings so output is exact and
byte-deterministic.  Results are cached content-addressed by command
plus canonical parameters; the cached payload is served verbatim with a
cache-hit marker on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .cache import ResultCache, cache_roundtrip
from .coset import (CosetModule, WindowError, find_affine_hw,
                    verify_affine_relations)
from .minimal import (CONVENTIONS, CharacterSeries, MinimalLabel,
                      central_charge, classify_chirality, fusion_upper_bound,
                      leading_exponent, spectrum)
from .oddvar import run_oddvar_checks
from .verma import MatrixModule, VermaModule, VermaParams, enumerate_basis


@dataclass
class SessionConfig:
    m: int
    convention: str = "standard"
    cutoff: Fraction = Fraction(4)
    window: int = 3
    cache_dir: str | None = None
    fmt: str = "json"
    use_cache: bool = True

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.convention not in CONVENTIONS:
            raise ValueError("unknown convention %r" % (self.convention,))
        if self.cutoff < 0 or (2 * self.cutoff).denominator != 1:
            raise ValueError("cutoff must be a nonnegative half-integer")
        if self.window < 0:
            raise ValueError("window must be >= 0")
        if self.fmt not in ("json", "csv"):
            raise ValueError("unknown format %r" % (self.fmt,))


# -- argument parsing -------------------------------------------------------


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % (text,))


def _label_arg(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("label must be j,k")
    try:
        return (Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational pair: %r" % (text,))


def _labels_arg(text: str):
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        out.append(_label_arg(chunk))
    return out


def _add_common(sp) -> None:
    sp.add_argument("--m", type=int, required=True, help="level m >= 1")
    sp.add_argument("--level", type=_fraction_arg, help="PBW level")
    sp.add_argument("--charge", type=int, default=0, help="J(0) charge offset")
    sp.add_argument("--label", type=_label_arg, help="spectrum label j,k")
    sp.add_argument("--labels", type=_labels_arg,
                    help='triple "(j1,k1);(j2,k2);(j3,k3)"')
    sp.add_argument("--cutoff", type=_fraction_arg, help="weight cutoff")
    sp.add_argument("--window", type=int, help="lattice sector window")
    sp.add_argument("--convention", choices=CONVENTIONS, default="standard")
    sp.add_argument("--format", choices=("json", "csv"), default="json",
                    dest="fmt")
    sp.add_argument("--cache-dir", dest="cache_dir")
    sp.add_argument("--no-cache", action="store_true", dest="no_cache")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ns2engine",
        description="exact N=2 superconformal algebra engine")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("spectrum", "gram", "singular", "character",
                 "fusion-bound", "chirality"):
        _add_common(sub.add_parser(name))
    coset = sub.add_parser("coset")
    csub = coset.add_subparsers(dest="subcommand", required=True)
    _add_common(csub.add_parser("verify"))
    _add_common(csub.add_parser("decompose"))
    oddvar = sub.add_parser("oddvar")
    osub = oddvar.add_subparsers(dest="subcommand", required=True)
    _add_common(osub.add_parser("check"))
    return p


# -- command implementations ------------------------------------------------


def _render_mono(mono) -> str:
    return " ".join(x.render() for x in mono) if mono else "1"


def _params_for(ns, cfg: SessionConfig) -> VermaParams:
    if ns.label is not None:
        return MinimalLabel(cfg.m, *ns.label).params()
    return VermaParams(central_charge(cfg.m), 0, 0, cfg.m)


def _cmd_spectrum(ns, cfg):
    labels = spectrum(cfg.m, cfg.convention)
    return [l.to_json() for l in labels], True


def _cmd_gram(ns, cfg):
    if ns.level is None:
        raise ValueError("gram requires --level")
    params = _params_for(ns, cfg)
    basis, rows = VermaModule(params).gram_matrix(ns.level, ns.charge)
    report = {
        "c": params.c.render(), "h": params.h.render(), "q": params.q.render(),
        "level": str(Fraction(ns.level)), "charge": ns.charge,
        "basis": [_render_mono(mo) for mo in basis],
        "entries": [[e.render() for e in row] for row in rows],
    }
    return report, True


def _cmd_singular(ns, cfg):
    if ns.level is None:
        raise ValueError("singular requires --level")
    params = _params_for(ns, cfg)
    vectors = VermaModule(params).singular_vectors(ns.level, ns.charge)
    report = {
        "c": params.c.render(), "h": params.h.render(), "q": params.q.render(),
        "level": str(Fraction(ns.level)), "charge": ns.charge,
        "vectors": [
            sorted(({"monomial": _render_mono(mo), "coef": c.render()}
                    for mo, c in vec.items()),
                   key=lambda t: t["monomial"])
            for vec in vectors],
    }
    return report, True


def _cmd_character(ns, cfg):
    params = _params_for(ns, cfg)
    module = MatrixModule(params)
    h0 = params.h.as_fraction()
    q0 = params.q.as_fraction()
    series = CharacterSeries(h0 + cfg.cutoff)
    lv = Fraction(0)
    while lv <= cfg.cutoff:
        qmax = 1
        while Fraction(qmax * qmax, 2) <= lv:
            qmax += 1
        for q in range(-qmax, qmax + 1):
            if not enumerate_basis(lv, q):
                continue
            d = module.dim(lv, q)
            if d:
                series.add(h0 + lv, q0 + q, d)
        lv += Fraction(1, 2)
    report = {
        "c": params.c.render(), "h": params.h.render(), "q": params.q.render(),
        "character": series.to_json(),
    }
    return report, True


def _cmd_fusion_bound(ns, cfg):
    if ns.labels is None or len(ns.labels) != 3:
        raise ValueError('fusion-bound requires --labels with three pairs')
    l1, l2, l3 = (MinimalLabel(cfg.m, j, k) for j, k in ns.labels)
    report = {
        "labels": [l.to_json() for l in (l1, l2, l3)],
        "bound": fusion_upper_bound(l1, l2, l3),
        "leading_exponent": str(leading_exponent(l1, l2, l3)),
    }
    return report, True


def _cmd_chirality(ns, cfg):
    if ns.label is not None:
        labels = [MinimalLabel(cfg.m, *ns.label)]
    else:
        labels = spectrum(cfg.m, cfg.convention)
    report = [{"label": l.to_json(), "chirality": classify_chirality(l)}
              for l in labels]
    return report, True


def _cmd_coset_verify(ns, cfg):
    params = _params_for(ns, cfg)
    cutoff = ns.cutoff if ns.cutoff is not None else Fraction(5, 2)
    h0 = params.h.as_fraction()
    q0 = params.q.as_fraction()
    mod = CosetModule(cfg.m, h0, q0)
    report = verify_affine_relations(cfg.m, cutoff, cfg.window,
                                     h=h0, q=q0, module=mod)
    return report, report["pass"]


def _cmd_coset_decompose(ns, cfg):
    params = _params_for(ns, cfg)
    cutoff = ns.cutoff if ns.cutoff is not None else Fraction(2)
    report = find_affine_hw(cfg.m, cutoff, cfg.window,
                            h=params.h.as_fraction(), q=params.q.as_fraction())
    return report, report["pass"]


def _cmd_oddvar_check(ns, cfg):
    cutoff = ns.cutoff if ns.cutoff is not None else Fraction(7, 2)
    max_weight = cutoff - Fraction(3, 2)
    if max_weight < 0:
        max_weight = Fraction(0)
    if max_weight > 2:
        max_weight = Fraction(2)
    report = run_oddvar_checks(cfg.m, cutoff, max_weight)
    return report, report["pass"]


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "gram": _cmd_gram,
    "singular": _cmd_singular,
    "character": _cmd_character,
    "fusion-bound": _cmd_fusion_bound,
    "chirality": _cmd_chirality,
    ("coset", "verify"): _cmd_coset_verify,
    ("coset", "decompose"): _cmd_coset_decompose,
    ("oddvar", "check"): _cmd_oddvar_check,
}


# -- emission ---------------------------------------------------------------


def render_json(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _flat_table(report):
    # list of flat same-key dicts renders as a table
    if not (isinstance(report, list) and report
            and all(isinstance(r, dict) for r in report)):
        return None
    keys = sorted(report[0])
    for r in report:
        if sorted(r) != keys:
            return None
        if any(isinstance(v, (dict, list)) for v in r.values()):
            return None
    return keys


def render_csv(report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    keys = _flat_table(report)
    if keys is not None:
        writer.writerow(keys)
        for r in report:
            writer.writerow([r[k] for k in keys])
        return buf.getvalue()
    rows: list = []
    _flatten(report, (), rows)
    writer.writerow(["field", "value"])
    for path, value in rows:
        writer.writerow([path, value])
    return buf.getvalue()


def _flatten(obj, prefix, rows) -> None:
    if isinstance(obj, dict):
        for k in sorted(obj, key=str):
            _flatten(obj[k], prefix + (str(k),), rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(v, prefix + (str(i),), rows)
    else:
        rows.append((".".join(prefix), obj))


def render(report, fmt: str) -> str:
    return render_csv(report) if fmt == "csv" else render_json(report)


# -- driver -----------------------------------------------------------------


def _canonical_params(ns, cfg: SessionConfig) -> dict:
    out = {"m": cfg.m, "convention": cfg.convention,
           "window": cfg.window, "charge": ns.charge}
    out["cutoff"] = str(ns.cutoff) if ns.cutoff is not None else None
    out["level"] = str(ns.level) if ns.level is not None else None
    out["label"] = ([str(x) for x in ns.label]
                    if ns.label is not None else None)
    out["labels"] = ([[str(j), str(k)] for j, k in ns.labels]
                     if ns.labels is not None else None)
    return out


def run_command(argv) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    name = ns.command
    if getattr(ns, "subcommand", None):
        key_name = "%s %s" % (name, ns.subcommand)
        impl = _COMMANDS[(name, ns.subcommand)]
    else:
        key_name = name
        impl = _COMMANDS[name]
    try:
        cfg = SessionConfig(
            m=ns.m, convention=ns.convention,
            cutoff=ns.cutoff if ns.cutoff is not None else Fraction(4),
            window=ns.window if ns.window is not None else 3,
            cache_dir=ns.cache_dir, fmt=ns.fmt,
            use_cache=not ns.no_cache)
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    key = json.dumps({"command": key_name, "format": cfg.fmt,
                      "params": _canonical_params(ns, cfg)}, sort_keys=True)
    cache = ResultCache(cfg.cache_dir, enabled=cfg.use_cache)

    def compute() -> str:
        report, ok = impl(ns, cfg)
        return json.dumps({"status": 0 if ok else 3,
                           "text": render(report, cfg.fmt)})

    try:
        payload, hit = cache_roundtrip(cache, key, compute)
    except (ValueError, ZeroDivisionError, WindowError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if hit:
        print("cache hit: %s" % key_name, file=sys.stderr)
    entry = json.loads(payload)
    sys.stdout.write(entry["text"])
    return entry["status"]


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
