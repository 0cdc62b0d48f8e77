"""Command-line frontend: one subcommand per computation, JSON/CSV output,
and plot-ready exact sampling.

Exit status is 0 on success (for ``verify``: only when the check passed),
1 with a one-line diagnostic on any computation error, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import oracle, verify
from .bundle import HNData, Polarization, SyzygySpec, bundle_alpha, bundle_density, \
    char0_limit_density, syzygy_pair_density
from .density import PairDensity, segre
from .piecewise import PiecewisePolynomial, as_fraction, fraction_str
from .trinomial import Irregular, TypeI, TypeII, classify, cyclic, \
    f_threshold, fermat, residue_table
from .volume import BoxSliceSpec, parameter_density, slice_volume


def decimal_string(value: Fraction, precision: int) -> str:
    """Correctly rounded (half-even) decimal rendering of an exact rational."""
    scaled = value * 10 ** precision
    n = round(scaled)
    sign = "-" if n < 0 else ""
    digits = str(abs(n)).rjust(precision + 1, "0")
    if precision == 0:
        return sign + digits
    return f"{sign}{digits[:-precision]}.{digits[-precision:]}"


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t != ""]


def _fraction_list(text: str) -> list[Fraction]:
    return [as_fraction(t) for t in text.split(",") if t != ""]


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {path} at line {exc.lineno} "
                         f"column {exc.colno}: {exc.msg}") from exc


def _density_window(f: PiecewisePolynomial) -> tuple[Fraction, Fraction]:
    lo = min(Fraction(0), f.breakpoints[0]) if f.breakpoints else Fraction(0)
    sup = f.support_sup()
    hi = sup if sup is not None and sup > lo else \
        (f.breakpoints[-1] if f.breakpoints else lo + 1)
    if hi <= lo:
        hi = lo + 1
    return lo, hi


def _sample_rows(f: PiecewisePolynomial, n: int, precision: int) -> list[dict]:
    lo, hi = _density_window(f)
    n = max(2, n)
    rows = []
    for j in range(n):
        x = lo + (hi - lo) * j / (n - 1)
        y = f(x)
        rows.append({"x": fraction_str(x), "f": fraction_str(y),
                     "x_dec": decimal_string(x, precision),
                     "f_dec": decimal_string(y, precision)})
    return rows


def _piece_rows(f: PiecewisePolynomial) -> list[dict]:
    rows = []
    for lo, hi, seg in f.iter_pieces():
        rows.append({"start": fraction_str(lo) if lo is not None else "-inf",
                     "end": fraction_str(hi) if hi is not None else "inf",
                     "coefficients": " ".join(fraction_str(c) for c in seg.coeffs) or "0"})
    return rows


def _emit(payload: dict, rows: Optional[list[dict]], args) -> None:
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        if rows is None:
            rows = [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_density(f: PiecewisePolynomial, extra: dict, args) -> None:
    if args.format == "samples":
        rows = _sample_rows(f, args.samples, args.precision)
        _emit({**extra, "samples": rows}, rows, args)
    elif args.format == "csv":
        _emit(extra, _piece_rows(f), args)
    else:
        _emit({**extra, "density": f.to_dict()}, None, args)


def _pair_payload(pair: PairDensity) -> dict:
    return {"dim": pair.dim, "mult": pair.mult, "provenance": pair.provenance,
            "alpha": fraction_str(pair.alpha),
            "ehk": fraction_str(pair.f.integrate(0, pair.alpha))}


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_volume(args) -> int:
    spec = BoxSliceSpec(tuple(_int_list(args.degrees)))
    f = slice_volume(spec)
    payload = {"edge_lengths": list(spec.edge_lengths),
               "support_sup": fraction_str(f.support_sup() or Fraction(0))}
    if args.eval is not None:
        x = as_fraction(args.eval)
        payload["value_at"] = {"x": fraction_str(x), "f": fraction_str(f(x))}
    _emit_density(f, payload, args)
    return 0


def _cmd_density(args) -> int:
    if args.infile:
        pair = PairDensity.from_dict(_load_json(args.infile))
    else:
        if not args.degrees:
            raise ValueError("specify --degrees (or --in FILE)")
        pair = parameter_density(args.mult, tuple(_int_list(args.degrees)))
    _emit_density(pair.f, _pair_payload(pair), args)
    return 0


def _cmd_segre(args) -> int:
    if args.left and args.right:
        a = PairDensity.from_dict(_load_json(args.left))
        b = PairDensity.from_dict(_load_json(args.right))
    else:
        if not (args.degrees and args.degrees2):
            raise ValueError("specify --degrees and --degrees2 (or --left/--right files)")
        a = parameter_density(args.mult, tuple(_int_list(args.degrees)))
        b = parameter_density(args.mult2, tuple(_int_list(args.degrees2)))
    pair = segre(a, b)
    _emit_density(pair.f, _pair_payload(pair), args)
    return 0


def _parse_hn(args) -> tuple[HNData, Polarization]:
    hn = HNData(tuple(_fraction_list(args.slopes)), tuple(_int_list(args.ranks)))
    pol = Polarization(degree=args.poldeg, genus=args.genus)
    return hn, pol


def _cmd_bundle(args) -> int:
    hn, pol = _parse_hn(args)
    f = char0_limit_density(hn, pol) if args.char0 else bundle_density(hn, pol)
    payload = {"alpha": fraction_str(bundle_alpha(hn, pol)),
               "slopes": [fraction_str(a) for a in hn.slopes],
               "ranks": list(hn.ranks), "poldeg": pol.degree}
    _emit_density(f, payload, args)
    return 0


def _cmd_syzygy(args) -> int:
    hn = HNData(tuple(_fraction_list(args.slopes)), tuple(_int_list(args.ranks)))
    pol = Polarization(degree=args.poldeg, genus=args.genus)
    spec = SyzygySpec(mu=args.mu, gen_degree=args.d0, pol=pol, hn_v=hn)
    pair = syzygy_pair_density(spec)
    _emit_density(pair.f, _pair_payload(pair), args)
    return 0


def _curve_from_args(args):
    if args.fermat:
        return fermat(args.fermat)
    if args.cyclic:
        return cyclic(args.cyclic)
    if args.typeI:
        return TypeI(*_int_list(args.typeI))
    if args.typeII:
        return TypeII(*_int_list(args.typeII))
    return None


def _cmd_trinomial(args) -> int:
    curve = _curve_from_args(args)
    if curve is None:
        raise ValueError("specify a curve: --fermat, --cyclic, --typeI or --typeII")
    kind = classify(curve)
    payload: dict = {"curve": repr(curve), "degree": curve.degree}
    if isinstance(kind, Irregular):
        payload["class"] = "irregular"
        payload["multiplicity"] = kind.multiplicity
    else:
        inv = kind.invariants
        payload["class"] = "regular"
        payload["invariants"] = {"alpha": inv.alpha, "beta": inv.beta, "nu": inv.nu,
                                 "lambda": inv.lam, "lambda_h": inv.lambda_h}
    if args.prime is not None and not args.table:
        value = f_threshold(curve, args.n, args.prime)
        payload["n"] = args.n
        payload["prime"] = args.prime
        payload["threshold"] = fraction_str(value)
        payload["threshold_dec"] = decimal_string(value, args.precision)
        _emit(payload, [{"threshold": fraction_str(value)}], args)
        return 0
    if isinstance(kind, Irregular):
        value = f_threshold(curve, args.n, 2)
        payload["n"] = args.n
        payload["threshold"] = fraction_str(value)
        _emit(payload, [{"threshold": fraction_str(value)}], args)
        return 0
    rows = []
    for row in residue_table(curve, args.n):
        entry = {"residue": row.representative, "T": fraction_str(row.T),
                 "D": "inf" if row.D is None else row.D, "formula": row.formula}
        if args.prime is not None:
            entry["threshold_at_p"] = fraction_str(row.threshold_at(args.prime))
        rows.append(entry)
    payload["n"] = args.n
    payload["table"] = rows
    _emit(payload, rows, args)
    return 0


def _oracle_ideal(args):
    curve = _curve_from_args(args)
    if curve is not None:
        hyp = oracle.trinomial_poly(curve)
        nv = 3
    elif args.hypersurface:
        nv = args.vars or 3
        hyp = oracle.parse_polynomial(args.hypersurface, nv)
    else:
        hyp = None
        nv = args.vars or 2
    if args.gens:
        gens = [oracle.parse_polynomial(g, nv) for g in args.gens.split(",")]
    else:
        gens = oracle.variable_powers(nv, args.n)
    return hyp, gens


def _cmd_oracle(args) -> int:
    hyp, gens = _oracle_ideal(args)
    p, q = args.prime, args.q
    echo = {"p": p, "q": q,
            "hypersurface": args.hypersurface or
            (repr(_curve_from_args(args)) if _curve_from_args(args) else None),
            "generators": args.gens or f"coordinate powers n={args.n}"}
    if args.op == "profile":
        profile = oracle.colength_profile(p, hyp, gens, q, threads=args.threads)
        rows = [{"m": m, "length": profile.lengths[m]} for m in sorted(profile.lengths)]
        _emit({**echo, "top_nonzero": profile.top_nonzero,
               "lengths": {str(m): profile.lengths[m] for m in sorted(profile.lengths)}},
              rows, args)
    elif args.op == "ehk":
        value = oracle.ehk_estimate(p, hyp, gens, q, threads=args.threads)
        _emit({**echo, "ehk_estimate": fraction_str(value),
               "ehk_dec": decimal_string(value, args.precision)},
              [{"ehk_estimate": fraction_str(value)}], args)
    elif args.op == "fthreshold":
        if hyp is None:
            raise ValueError("fthreshold needs a hypersurface")
        value = oracle.fthreshold_estimate(p, hyp, args.n, q)
        _emit({**echo, "fthreshold_estimate": fraction_str(value),
               "fthreshold_dec": decimal_string(value, args.precision)},
              [{"fthreshold_estimate": fraction_str(value)}], args)
    else:  # fn
        if args.x is None:
            raise ValueError("--x is required for op=fn")
        value = oracle.fn_sample(p, hyp, gens, q, as_fraction(args.x))
        _emit({**echo, "x": args.x, "fn_sample": fraction_str(value)},
              [{"x": args.x, "fn_sample": fraction_str(value)}], args)
    return 0


def _cmd_verify(args) -> int:
    if args.list:
        for name in sorted(verify.CASES):
            print(name)
        return 0
    if not args.case:
        raise ValueError("specify --case NAME or --list")
    result = verify.run_case(args.case)
    _emit(result.to_dict(), [result.to_dict()], args)
    return 0 if result.passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("json", "csv", "samples"), default="json")
    shared.add_argument("--samples", type=int, default=256,
                        help="number of sample points for --format samples")
    shared.add_argument("--precision", type=int, default=12,
                        help="decimal digits for rendered values")
    shared.add_argument("--out", help="write output to this path instead of stdout")
    shared.add_argument("--threads", type=int,
                        default=int(os.environ.get("HKFUN_THREADS", "1")),
                        help="worker threads for oracle sweeps")

    parser = argparse.ArgumentParser(prog="hkfun",
                                     description="exact Hilbert-Kunz density and "
                                                 "F-threshold computations")
    sub = parser.add_subparsers(dest="command", required=True)

    p_vol = sub.add_parser("volume", parents=[shared], help="box slice volume function")
    p_vol.add_argument("--degrees", required=True, help="comma-separated edge lengths")
    p_vol.add_argument("--eval", help="also evaluate at this rational point")
    p_vol.set_defaults(func=_cmd_volume)

    p_den = sub.add_parser("density", parents=[shared], help="parameter-ideal pair density")
    p_den.add_argument("--param", action="store_true",
                       help="build from a parameter ideal (default mode)")
    p_den.add_argument("--mult", type=int, default=1)
    p_den.add_argument("--degrees", help="comma-separated generator degrees")
    p_den.add_argument("--in", dest="infile", help="read a pair density from JSON")
    p_den.set_defaults(func=_cmd_density)

    p_seg = sub.add_parser("segre", parents=[shared], help="Segre product of two pairs")
    p_seg.add_argument("--mult", type=int, default=1)
    p_seg.add_argument("--degrees")
    p_seg.add_argument("--mult2", type=int, default=1)
    p_seg.add_argument("--degrees2")
    p_seg.add_argument("--left", help="JSON file with the first pair density")
    p_seg.add_argument("--right", help="JSON file with the second pair density")
    p_seg.set_defaults(func=_cmd_segre)

    p_bun = sub.add_parser("bundle", parents=[shared], help="bundle density from slope data")
    p_bun.add_argument("--slopes", required=True, help="comma-separated rationals")
    p_bun.add_argument("--ranks", required=True, help="comma-separated integers")
    p_bun.add_argument("--poldeg", type=int, required=True)
    p_bun.add_argument("--genus", type=int, default=0)
    p_bun.add_argument("--char0", action="store_true",
                       help="treat the slopes as ordinary (limit) slope data")
    p_bun.set_defaults(func=_cmd_bundle)

    p_syz = sub.add_parser("syzygy", parents=[shared],
                           help="pair density from a syzygy bundle")
    p_syz.add_argument("--mu", type=int, required=True)
    p_syz.add_argument("--d0", type=int, required=True)
    p_syz.add_argument("--poldeg", type=int, required=True)
    p_syz.add_argument("--genus", type=int, default=0)
    p_syz.add_argument("--slopes", required=True)
    p_syz.add_argument("--ranks", required=True)
    p_syz.set_defaults(func=_cmd_syzygy)

    p_tri = sub.add_parser("trinomial", parents=[shared],
                           help="trinomial classification, residue table, thresholds")
    p_tri.add_argument("--fermat", type=int)
    p_tri.add_argument("--cyclic", type=int)
    p_tri.add_argument("--typeI", help="a1,a2,b1,b2,c1,c2")
    p_tri.add_argument("--typeII", help="d,a1,a2,a3,b,c")
    p_tri.add_argument("--n", type=int, default=1)
    p_tri.add_argument("--prime", type=int)
    p_tri.add_argument("--table", action="store_true",
                       help="emit the full residue table (with a threshold "
                            "column when --prime is given)")
    p_tri.set_defaults(func=_cmd_trinomial)

    p_ora = sub.add_parser("oracle", parents=[shared],
                           help="characteristic-p colength computations")
    p_ora.add_argument("--prime", type=int, required=True)
    p_ora.add_argument("--q", type=int, required=True)
    p_ora.add_argument("--n", type=int, default=1,
                       help="coordinate-power exponent for the default ideal")
    p_ora.add_argument("--fermat", type=int)
    p_ora.add_argument("--cyclic", type=int)
    p_ora.add_argument("--typeI")
    p_ora.add_argument("--typeII")
    p_ora.add_argument("--hypersurface", help="e.g. 'x*y - z^2'")
    p_ora.add_argument("--vars", type=int, help="number of variables (2-4)")
    p_ora.add_argument("--gens", help="comma-separated monomial generators")
    p_ora.add_argument("--op", choices=("profile", "ehk", "fthreshold", "fn"),
                       default="profile")
    p_ora.add_argument("--x", help="sample point for op=fn")
    p_ora.set_defaults(func=_cmd_oracle)

    p_ver = sub.add_parser("verify", parents=[shared],
                           help="run a named closed-form vs oracle cross-check")
    p_ver.add_argument("--case")
    p_ver.add_argument("--list", action="store_true")
    p_ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, ArithmeticError, OSError, oracle.OracleError) as exc:
        print(f"hkfun: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
