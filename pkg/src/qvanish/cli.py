"""Command-line surface: coeffs, classify, mf, scan.

JSON output is key-sorted and timestamp-free, so identical invocations are
byte-identical.  Exit codes: 0 success, 2 usage or input errors, 3 when a
scan hit contradicts a proven guarantee (which would mean a bug here, not
new mathematics).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Callable

from . import ec, forms, vanish
from .arith import is_prime
from .forms import FormSpec
from .hecke import CoefficientOracle
from .series import LANE_PRIMES, QSeries

CACHE_ENV = "QVANISH_CACHE_DIR"
DEFAULT_CACHE = os.path.join("~", ".cache", "qvanish")
FULL_LEHMER_BOUND = 3316799  # smallest n with tau(n) = 0 exceeds this
SCAN_GATE = 200000
ZEROS_CAP = 1000


@dataclass
class ResolvedForm:
    spec: FormSpec
    kind: str  # "product" (sparse eta pipeline), "oracle" (curve), "series"
    exact_series: Callable[[int], QSeries]
    residue_series: Callable[[int, int], object] | None = None
    exact_coeff: Callable[[int], int] | None = None
    oracle_factory: Callable[[int], CoefficientOracle] | None = None
    budget: int | None = None
    cacheable: bool = False


def _resolve_form(args, parser) -> ResolvedForm:
    chosen = [
        name
        for name in ("form", "curve", "fixture", "file")
        if getattr(args, name, None)
    ]
    if len(chosen) != 1:
        parser.error("select exactly one of --form / --curve / --fixture / --file")
    if args.form:
        name = args.form
        if name == "delta":
            return ResolvedForm(
                spec=forms.delta_spec(),
                kind="product",
                exact_series=forms.delta_eta,
                residue_series=forms.delta_eta_mod,
                exact_coeff=forms.delta_coefficient,
                budget=5000,
                cacheable=True,
            )
        if name in ("e4", "e6"):
            half = 2 if name == "e4" else 3
            spec = FormSpec(
                weight=2 * half, level=1, label=name, source=f"eisenstein:{name}"
            )
            return ResolvedForm(
                spec=spec,
                kind="series",
                exact_series=lambda b, h=half: forms.eisenstein_coeffs(h, b),
                budget=200000,
            )
        if name.startswith("eta-quotient:"):
            try:
                level = int(name.split(":", 1)[1])
            except ValueError:
                parser.error(f"bad eta quotient selector {name!r}")
            if level not in forms.ETA_QUOTIENT_LEVELS:
                parser.error(
                    f"eta quotient level must be one of {forms.ETA_QUOTIENT_LEVELS}"
                )
            spec, _ = forms.eta_quotient(level, 1)
            return ResolvedForm(
                spec=spec,
                kind="product",
                exact_series=lambda b, lv=level: forms.eta_quotient(lv, b)[1],
                residue_series=lambda b, m, lv=level: forms.eta_quotient_mod(lv, b, m),
                exact_coeff=lambda n, lv=level: forms.eta_quotient_coefficient(lv, n),
                budget=5000,
                cacheable=True,
            )
        parser.error(f"unknown form selector {name!r}")
    if args.curve or args.fixture:
        if args.fixture:
            curve = ec.FIXTURES.get(args.fixture)
            if curve is None:
                parser.error(f"unknown fixture {args.fixture!r}; have {sorted(ec.FIXTURES)}")
        else:
            try:
                curve = ec.parse_curve(args.curve)
            except ValueError as exc:
                parser.error(str(exc))
        return ResolvedForm(
            spec=ec.curve_form(curve),
            kind="oracle",
            exact_series=lambda b, c=curve: _curve_series(c, b),
            oracle_factory=lambda b, c=curve: ec.oracle_for_curve(c, b),
            budget=100000,
            cacheable=True,
        )
    try:
        spec, qs = forms.ingest_qexp(args.file)
    except (OSError, ValueError) as exc:
        parser.error(f"cannot ingest {args.file}: {exc}")
    return ResolvedForm(
        spec=spec,
        kind="series",
        exact_series=lambda b, q=qs: _slice_series(q, b, args.file),
    )


def _curve_series(curve, bound):
    from .hecke import qexp_from_primes

    return qexp_from_primes(ec.prime_table(curve, max(bound, 2)), bound)


def _slice_series(qs: QSeries, bound: int, path) -> QSeries:
    if bound > qs.trunc_bound:
        raise ValueError(
            f"{path} covers n <= {qs.trunc_bound}, below requested {bound}"
        )
    return QSeries(qs.coeffs[: bound + 1])


def _form_dict(spec: FormSpec) -> dict:
    return {
        "character": spec.character,
        "label": spec.label,
        "level": spec.level,
        "source": spec.source,
        "weight": spec.weight,
    }


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# ---------------------------------------------------------------- cache

def _cache_dir() -> str:
    return os.path.expanduser(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _cache_key(spec: FormSpec, bound: int) -> str:
    ident = f"{spec.source}|weight={spec.weight}|level={spec.level}|bound={bound}"
    return hashlib.sha256(ident.encode("ascii")).hexdigest()


def _cached_series(rf: ResolvedForm, bound: int) -> QSeries:
    if not rf.cacheable:
        return rf.exact_series(bound)
    path = os.path.join(_cache_dir(), _cache_key(rf.spec, bound) + ".qexp")
    if os.path.exists(path):
        _, qs = forms.ingest_qexp(path)
        return qs
    qs = rf.exact_series(bound)
    payload = forms.export_qexp(rf.spec, qs)
    os.makedirs(_cache_dir(), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=_cache_dir(), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return qs


# ---------------------------------------------------------------- commands

def _check_budget(rf: ResolvedForm, limit: int, args, parser) -> None:
    if rf.budget is not None and limit > rf.budget and not args.allow_large:
        parser.error(
            f"limit {limit} exceeds the compute budget ({rf.budget}) for "
            f"{rf.spec.label}; pass --allow-large to compute anyway"
        )


def cmd_coeffs(args, parser) -> int:
    rf = _resolve_form(args, parser)
    if args.limit < 1:
        parser.error("--limit must be >= 1")
    if args.mod:
        for m in args.mod:
            if m % 2 == 0 or not is_prime(m):
                parser.error(f"--mod {m}: modulus must be an odd prime")
        exact = None
        if rf.kind != "product":
            # non-product forms have no direct residue pipeline: compute the
            # exact coefficients once and reduce per modulus
            _check_budget(rf, args.limit, args, parser)
            if rf.kind == "oracle":
                oracle = rf.oracle_factory(max(args.limit, 2))
                exact = [oracle.coeff(n) for n in range(1, args.limit + 1)]
            else:
                qs = rf.exact_series(args.limit)
                exact = [qs[n] for n in range(1, args.limit + 1)]
        blocks = {}
        for m in args.mod:
            if exact is None:
                lane = rf.residue_series(args.limit, m)
                blocks[m] = [int(v) for v in lane.coeffs[1 : args.limit + 1]]
            else:
                blocks[m] = [c % m for c in exact]
        if args.json:
            _emit_json(
                {
                    "form": _form_dict(rf.spec),
                    "residues": {str(m): [[n + 1, r] for n, r in enumerate(v)]
                                 for m, v in blocks.items()},
                }
            )
        else:
            for m in args.mod:
                print(f"# modulus: {m}")
                print(f"# weight: {rf.spec.weight}")
                print(f"# level: {rf.spec.level}")
                print("# character: trivial")
                print(f"# label: {rf.spec.label}")
                for n, r in enumerate(blocks[m], start=1):
                    print(f"{n} {r}")
        return 0
    _check_budget(rf, args.limit, args, parser)
    qs = _cached_series(rf, args.limit)
    if args.json:
        _emit_json(
            {
                "coefficients": [[n, qs[n]] for n in range(1, args.limit + 1)],
                "form": _form_dict(rf.spec),
            }
        )
    else:
        if qs[0] != 0:
            print(f"# constant-term: {qs[0]}")
        sys.stdout.write(forms.export_qexp(rf.spec, _zero_constant(qs)))
    return 0


def _zero_constant(qs: QSeries) -> QSeries:
    if qs[0] == 0:
        return qs
    return QSeries((0,) + qs.coeffs[1:])


def cmd_classify(args, parser) -> int:
    if args.k % 2 or args.k < 2:
        parser.error("even weight only (k must be even and >= 2)")
    if not is_prime(args.p):
        parser.error(f"--p {args.p} is not prime")
    vc = vanish.classify(args.ap, args.p, args.k, p_divides_level=args.bad)
    out = {"kind": vc.kind, "zeros_sample": sorted(vanish.zeros_up_to(vc, 50))}
    if vc.order is not None:
        out["order"] = vc.order
    if vc.witness is not None:
        out["witness"] = vc.witness
    _emit_json(out)
    return 0


def _a2_a3(rf: ResolvedForm) -> tuple[int, int]:
    if rf.kind == "oracle":
        oracle = rf.oracle_factory(3)
        return oracle.coeff(2), oracle.coeff(3)
    qs = rf.exact_series(3)
    return qs[2], qs[3]


def _mf_payload(rf: ResolvedForm):
    a2, a3 = _a2_a3(rf)
    mf = vanish.compute_mf(rf.spec.level, a2, a3, rf.spec.weight)
    reasons = {str(p): rec for p, rec in sorted(mf.justification.items())}
    return mf, {"kept": list(mf.factors_kept), "mf": mf.value, "reasons": reasons}


def cmd_mf(args, parser) -> int:
    rf = _resolve_form(args, parser)
    _, payload = _mf_payload(rf)
    _emit_json(payload)
    return 0


def cmd_scan(args, parser) -> int:
    rf = _resolve_form(args, parser)
    limit = args.limit
    if args.full_lehmer:
        limit = FULL_LEHMER_BOUND
    if limit is None:
        parser.error("--limit is required (or pass --full-lehmer)")
    if limit < 1:
        parser.error("--limit must be >= 1")
    if limit > SCAN_GATE and not (args.allow_large or args.full_lehmer):
        parser.error(
            f"scan limit {limit} exceeds {SCAN_GATE}; pass --allow-large "
            f"(or --full-lehmer for the classical tau bound)"
        )

    coprime_to = None
    mf_value = None
    if args.coprime_mf:
        mf, _ = _mf_payload(rf)
        mf_value = mf.value
        coprime_to = mf.value

    if rf.kind == "product":
        lanes = [rf.residue_series(limit, m) for m in LANE_PRIMES]
        source = vanish.ResidueLaneSource(lanes=lanes, exact=rf.exact_coeff)
    elif rf.kind == "oracle":
        source = rf.oracle_factory(max(limit, 2))
    else:
        source = rf.exact_series(limit)

    report = vanish.first_vanishing(
        source,
        limit,
        coprime_to=coprime_to,
        mf_guarantee=args.coprime_mf,
        form=rf.spec,
    )
    cert = report.certification
    payload = {
        "bound": report.bound,
        "certification": {
            "exact": cert.count(vanish.CERT_EXACT),
            "residue": cert.count(vanish.CERT_RESIDUE),
            "zero": cert.count(vanish.CERT_ZERO),
        },
        "coprime_to": report.coprime_to,
        "first_zero": report.first_zero,
        "first_zero_coprime": report.first_zero_coprime,
        "first_zero_coprime_divides_level": report.first_zero_coprime_divides_level,
        "first_zero_coprime_is_prime": report.first_zero_coprime_is_prime,
        "first_zero_divides_level": report.first_zero_divides_level,
        "first_zero_is_prime": report.first_zero_is_prime,
        "form": _form_dict(rf.spec),
        "lane_moduli": list(report.lane_moduli),
        "mf": mf_value,
        "zeros": report.zeros[:ZEROS_CAP],
        "zeros_omitted": max(0, len(report.zeros) - ZEROS_CAP),
    }
    _emit_json(payload)
    return 0


# ---------------------------------------------------------------- parser

def _add_form_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--form",
        help="named form: delta, e4, e6, or eta-quotient:N with N in {2,3,5,11}",
    )
    sub.add_argument("--curve", help="elliptic curve, five integers a1,a2,a3,a4,a6")
    sub.add_argument("--fixture", help="named curve fixture: 37a1 or 53a1")
    sub.add_argument("--file", help="path to a q-expansion file")
    sub.add_argument(
        "--allow-large",
        action="store_true",
        help="override the compute-budget guard on large limits",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvanish",
        description=(
            "Exact Fourier coefficients of classical newforms, their prime-power "
            "vanishing, the obstruction modulus M_f, and first-vanishing scans."
        ),
        epilog=f"Coefficient cache directory: ${CACHE_ENV} (default {DEFAULT_CACHE})",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_coeffs = subs.add_parser("coeffs", help="print exact coefficients (or residues)")
    _add_form_args(p_coeffs)
    p_coeffs.add_argument("--limit", type=int, required=True, help="largest index n")
    p_coeffs.add_argument(
        "--mod",
        type=int,
        action="append",
        help="emit residues modulo this odd prime (repeatable)",
    )
    p_coeffs.add_argument("--json", action="store_true", help="JSON instead of text")
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_classify = subs.add_parser(
        "classify", help="classify the zero set of r -> a(p^r) from a_p"
    )
    p_classify.add_argument("--p", type=int, required=True, help="the prime p")
    p_classify.add_argument("--ap", type=int, required=True, help="the eigenvalue a(p)")
    p_classify.add_argument("--k", type=int, required=True, help="the (even) weight")
    p_classify.add_argument(
        "--bad", action="store_true", help="p divides the level (bad prime)"
    )
    p_classify.set_defaults(func=cmd_classify)

    p_mf = subs.add_parser("mf", help="compute the obstruction modulus M_f | 6")
    _add_form_args(p_mf)
    p_mf.set_defaults(func=cmd_mf)

    p_scan = subs.add_parser("scan", help="first-vanishing scan up to a bound")
    _add_form_args(p_scan)
    p_scan.add_argument("--limit", type=int, help="scan 1 <= n <= limit")
    p_scan.add_argument(
        "--coprime-mf",
        action="store_true",
        help="also report the first zero coprime to M_f (hits must be prime)",
    )
    p_scan.add_argument(
        "--full-lehmer",
        action="store_true",
        help=f"scan to the classical tau bound {FULL_LEHMER_BOUND} (long-running)",
    )
    p_scan.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except vanish.GuaranteeViolationError as exc:
        print(f"guarantee violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
