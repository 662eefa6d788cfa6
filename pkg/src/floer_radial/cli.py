"""Command-line front end: ``floer-radial <group> <command> [flags]``.

Exit status is 0 on success, 1 when a certificate or inequality fails, and 2
on usage errors.  Slopes and periods are printed in multiples of 2pi.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import geodesics, hf_spheres, smoothing, stair, transfer
from .actions import NonGenericAction, NonMonotoneDerivative, enumerate_orbits, filtration_split, orbits_tsv
from .domain import PeriodSpectrum, SymplectoSize, as_fraction, fraction_str

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
UNITS = "multiples of 2pi"
SEED_ENV = "FLOER_RADIAL_SEED"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    fmt: str = "json"
    tol: float = smoothing.DEFAULT_TOL
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.fmt not in ("json", "tsv"):
            raise UsageError(f"unknown format {self.fmt!r}")


def rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _emit(obj, out):
    json.dump(obj, out, indent=2, sort_keys=True)
    out.write("\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


# -- stair / smooth / spectrum ------------------------------------------------


def cmd_stair_build(args, cfg, out):
    try:
        params, prof = stair.build_stair(args.a, args.b, args.b0, args.cphi, cfg.tol, args.grid_n)
    except stair.InfeasibleStair as exc:
        _emit({"ok": False, "error": str(exc)}, out) if cfg.fmt == "json" else out.write(f"infeasible\t{exc}\n")
        return EXIT_FAIL
    if args.save:
        with open(args.save, "w") as fh:
            json.dump(prof.to_json(), fh)
    if cfg.fmt == "tsv":
        out.write(prof.to_tsv())
        return EXIT_OK
    cert = stair.check_inequalities(params)
    _emit({
        "units": UNITS,
        "params": params.to_json(),
        "certificate": cert.to_json(),
        "junction_gaps": prof.junction_gaps(),
        "ok": cert.ok and prof.is_continuous(),
    }, out)
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_smooth(args, cfg, out):
    if args.spec:
        spec = smoothing.InterpolationSpec.from_json(_load_json(args.spec))
        if spec.shape != {"convex": smoothing.CONVEX, "concave": smoothing.CONCAVE}[args.shape]:
            raise UsageError(f"spec file has shape {spec.shape}")
    else:
        missing = [k for k in ("r0", "ell", "alpha", "beta0", "beta1") if getattr(args, k) is None]
        if missing:
            raise UsageError("missing " + ", ".join("--" + k for k in missing))
        shape = smoothing.CONVEX if args.shape == "convex" else smoothing.CONCAVE
        try:
            spec = smoothing.InterpolationSpec(args.r0, args.ell, args.alpha, args.beta0, args.beta1, shape, args.barrier)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    try:
        prof = smoothing.build(spec, cfg.tol, args.grid_n)
    except smoothing.InfeasibleSpec as exc:
        _emit({"ok": False, "error": str(exc)}, out)
        return EXIT_FAIL
    except smoothing.CertificationError as exc:
        _emit({"ok": False, "error": str(exc), "certificate": smoothing._jsonable(exc.certificate)}, out)
        return EXIT_FAIL
    if cfg.fmt == "tsv":
        out.write(prof.to_tsv())
    else:
        _emit(prof.to_json(), out)
    return EXIT_OK


def cmd_spectrum_orbits(args, cfg, out):
    prof = stair.StairProfile.from_json(_load_json(args.profile))
    spectrum = PeriodSpectrum.from_json(_load_json(args.spectrum))
    sz = SymplectoSize(args.sup_f, args.support_radius)
    try:
        orbits = enumerate_orbits(prof, spectrum, sz, cfg.tol)
    except NonMonotoneDerivative as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    status = EXIT_OK
    try:
        filtration_split(orbits)
    except NonGenericAction as exc:
        sys.stderr.write(f"{exc}\n")
        status = EXIT_FAIL
    if cfg.fmt == "json":
        _emit({
            "units": UNITS,
            "orbits": [
                {"region": o.region, "r": o.radius, "period": fraction_str(o.period), "action": o.action_str()}
                for o in orbits
            ],
            "split_ok": status == EXIT_OK,
        }, out)
    else:
        out.write(orbits_tsv(orbits))
    return status


# -- hf -------------------------------------------------------------------------


def cmd_hf_table(args, cfg, out):
    rows = [(m, hf_spheres.hf_ranks(args.n, m)) for m in range(1, args.mmax + 1)]
    if cfg.fmt == "tsv":
        kmax = max(r.max_degree() for _, r in rows)
        out.write("m\t" + "\t".join(f"k{k}" for k in range(kmax + 1)) + "\ttotal\n")
        for m, r in rows:
            out.write(f"{m}\t" + "\t".join(str(r[k]) for k in range(kmax + 1)) + f"\t{r.total()}\n")
    else:
        _emit({"n": args.n, "slopes": f"2pi*m + eps ({UNITS})",
               "rows": [{"m": m, "dims": r.to_json(), "total": r.total()} for m, r in rows]}, out)
    ok = all(r.total() == 4 * m + 2 for m, r in rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_hf_kappa(args, cfg, out):
    res = hf_spheres.kappa_fibered_twist(args.n, args.mmax)
    if cfg.fmt == "tsv":
        out.write("m\tratio\n")
        for m, q in res.ratios:
            out.write(f"{m}\t{fraction_str(q)}\n")
        out.write(f"limit\t{fraction_str(res.limit)}\n")
    else:
        _emit({"n": args.n, "limit": fraction_str(res.limit),
               "ratios": [{"m": m, "ratio": fraction_str(q)} for m, q in res.ratios]}, out)
    return EXIT_OK


def cmd_hf_visible(args, cfg, out):
    vr = hf_spheres.visible_rank_bounds(args.n, args.m)
    rec = {"n": args.n, "m": args.m, "lower": vr.lower, "upper": vr.upper, "exact": vr.exact,
           "consistent": vr.consistent()}
    if vr.exact is not None:
        rec["exceeds_betti"] = hf_spheres.geodesic_rank_hypothesis(args.n, args.m)
    if cfg.fmt == "tsv":
        out.write("\t".join(rec) + "\n" + "\t".join(str(v) for v in rec.values()) + "\n")
    else:
        _emit(rec, out)
    return EXIT_OK if vr.consistent() else EXIT_FAIL


# -- transfer ---------------------------------------------------------------------


def cmd_transfer_copies(args, cfg, out):
    try:
        lay = transfer.copies_layout(args.delta, args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = lay.to_json()
    if cfg.fmt == "tsv":
        out.write("j\tlo\thi\n")
        for j, (lo, hi) in enumerate(lay.supports):
            out.write(f"{j}\t{fraction_str(lo)}\t{fraction_str(hi)}\n")
    else:
        _emit(rec, out)
    return EXIT_OK if rec["telescopes"] and rec["tiles"] and rec["copies_inside"] else EXIT_FAIL


def cmd_transfer_bound(args, cfg, out):
    try:
        fr = transfer.FilteredRanks(args.below, args.w2, args.w1)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    v = transfer.ambient_bound(fr)
    rec = {"below": fr.below, "w1": fr.total_w1, "w2": fr.total_w2, "passed": v.passed, "slack": v.slack, "note": v.note}
    if cfg.fmt == "tsv":
        out.write("\t".join(rec) + "\n" + "\t".join(str(x) for x in rec.values()) + "\n")
    else:
        _emit(rec, out)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_transfer_kappa(args, cfg, out):
    try:
        with open(args.dims) as fh:
            dims = [int(tok) for tok in fh.read().replace(",", " ").split()]
        est = transfer.kappa_estimate(dims, args.tail)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    rec = {"terms": len(dims), "tail_start": transfer.tail_start(len(dims), args.tail),
           "estimate": fraction_str(est), "approx": float(est)}
    if cfg.fmt == "tsv":
        out.write("\t".join(rec) + "\n" + "\t".join(str(x) for x in rec.values()) + "\n")
    else:
        _emit(rec, out)
    return EXIT_OK


# -- geodesic ---------------------------------------------------------------------


def cmd_geodesic_check(args, cfg, out):
    try:
        axes = [float(x) for x in args.axes.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --axes {args.axes!r}") from exc
    try:
        rep = geodesics.geodesic_certificate(axes, cfg.tol, args.samples)
    except geodesics.HypothesisError as exc:
        _emit({"passed": False, "dominated": False, "error": str(exc)}, out)
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rec = rep.to_json()
    samples = geodesics.ellipsoid_metric_samples(axes, min(args.samples, 64))
    rec["dual_inclusion"] = all(geodesics.dual_inclusion_check(s, 100, cfg.tol, cfg.seed + s.point_id) for s in samples)
    rec["seed"] = cfg.seed
    if cfg.fmt == "tsv":
        out.write("plane\tlength\n")
        for plane, length in zip(geodesics.PLANES, rep.lengths):
            out.write(f"{plane}\t{length:.15g}\n")
        out.write(f"witness\t{rep.witness:.15g}\n")
    else:
        _emit(rec, out)
    return EXIT_OK if rep.passed and rec["dual_inclusion"] else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def _common(p):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output (default)")
    fmt.add_argument("--tsv", dest="fmt", action="store_const", const="tsv", help="TSV output")
    p.add_argument("--tol", type=float, default=smoothing.DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0, help=f"RNG seed; ${SEED_ENV} overrides")
    p.set_defaults(fmt="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="floer-radial", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group_parsers, name, fn, help_text):
        p = group_parsers.add_parser(name, help=help_text)
        _common(p)
        p.set_defaults(fn=fn)
        return p

    g = groups.add_parser("stair", help="stair-like Hamiltonians").add_subparsers(dest="cmd", required=True)
    p = command(g, "build", cmd_stair_build, "select constants, certify and assemble")
    for name in ("a", "b", "b0", "cphi"):
        p.add_argument(f"--{name}", type=rational, required=True)
    p.add_argument("--grid-n", type=int, default=smoothing.DEFAULT_GRID_N)
    p.add_argument("--save", help="write the full profile JSON here")

    g = groups.add_parser("smooth", help="convex/concave interpolants").add_subparsers(dest="shape", required=True)
    for shape in ("convex", "concave"):
        p = command(g, shape, cmd_smooth, f"build a {shape} interpolant")
        p.add_argument("--spec", help="InterpolationSpec JSON file")
        for name in ("r0", "ell", "alpha", "beta0", "beta1"):
            p.add_argument(f"--{name}", type=rational)
        if shape == "concave":
            p.add_argument("--barrier", type=rational)
        else:
            p.set_defaults(barrier=None)
        p.add_argument("--grid-n", type=int, default=smoothing.DEFAULT_GRID_N)

    g = groups.add_parser("spectrum", help="orbit actions").add_subparsers(dest="cmd", required=True)
    p = command(g, "orbits", cmd_spectrum_orbits, "enumerate orbit families of a saved stair profile")
    p.add_argument("--profile", required=True)
    p.add_argument("--spectrum", required=True)
    p.add_argument("--sup-f", type=rational, default=Fraction(0))
    p.add_argument("--support-radius", type=rational, default=Fraction(0))

    g = groups.add_parser("hf", help="Floer ranks of disk cotangent bundles of spheres").add_subparsers(dest="cmd", required=True)
    p = command(g, "table", cmd_hf_table, "dim HF_k for m = 1..mmax")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mmax", type=int, required=True)
    p = command(g, "kappa", cmd_hf_kappa, "iterated ratio of the fibered twist")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mmax", type=int, default=10)
    p = command(g, "visible", cmd_hf_visible, "visible rank bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    g = groups.add_parser("transfer", help="transfer-morphism arithmetic").add_subparsers(dest="cmd", required=True)
    p = command(g, "copies", cmd_transfer_copies, "layout of the m cylindrical copies")
    p.add_argument("--delta", type=rational, required=True)
    p.add_argument("--m", type=int, required=True)
    p = command(g, "bound", cmd_transfer_bound, "ambient-invariance rank bound")
    p.add_argument("--below", type=int, required=True)
    p.add_argument("--w1", type=int, required=True)
    p.add_argument("--w2", type=int, required=True)
    p = command(g, "kappa", cmd_transfer_kappa, "estimate kappa from a dimension sequence")
    p.add_argument("--dims", required=True, help="file of whitespace/comma separated integers, m = 1, 2, ...")
    p.add_argument("--tail", type=rational, default=transfer.DEFAULT_TAIL_FRACTION)

    g = groups.add_parser("geodesic", help="closed geodesic certificates").add_subparsers(dest="cmd", required=True)
    p = command(g, "check", cmd_geodesic_check, "shortest principal ellipse of an ellipsoid")
    p.add_argument("--axes", required=True, help="a1,a2,a3")
    p.add_argument("--samples", type=int, default=geodesics.DEFAULT_SAMPLES)
    return parser


def _range_checks(args):
    for name in ("n",):
        if hasattr(args, name) and getattr(args, name) < 2:
            raise UsageError("--n must be at least 2")
    for name in ("m", "mmax"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            raise UsageError(f"--{name} must be at least 1")


_NEGATIVE = re.compile(r"^-\d")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--beta1 -1/2`` into ``--beta1=-1/2``; argparse would read -1/2 as a flag."""
    out: list[str] = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    seed = args.seed
    if os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            sys.stderr.write(f"{SEED_ENV} must be an integer\n")
            return EXIT_USAGE
    try:
        cfg = RunConfig(f"{args.group} {getattr(args, 'cmd', None) or getattr(args, 'shape', '')}", args.fmt, args.tol, seed)
        _range_checks(args)
        return args.fn(args, cfg, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    try:
        status = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        status = EXIT_OK
    sys.exit(status)
