"""Command-line front end: sip.

Subcommands wrap the library modules with machine-readable output:

    sip list        catalog listing (table or JSON descriptors)
    sip verify      shape-invariance certification for one family
    sip spectrum    algebraic bound-state energies, optional oracle column
    sip construct   seed-based superpotential construction, files + manifest
    sip 3d          axially symmetric partner fields and ladder certificate
    sip radial      measure-weighted factorization demos and Bessel checks

Exit codes: 0 pass, 1 verification failure, 2 usage or validation error,
3 truncated-but-valid ladder.  All numbers print with 12 significant
digits; JSON is key-sorted and byte-deterministic for fixed inputs.
File-producing commands write into --out (or $SIP_OUT_DIR, default
./sip-out) along with a run manifest.  --batch runs one command per line
of a job file concurrently and prints outputs in file order.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from io import StringIO
from pathlib import Path

import numpy as np

from . import __version__
from . import ansatz, multidim, oracle, radial, spectral
from .catalog import (
    DomainViolation,
    InvalidParameters,
    FAMILY_NAMES,
    family_descriptor,
    get_family,
    list_families,
)
from .sampling import make_grid
from .verify import ANALYTIC_TOL, verify_shape_invariance

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3

PARAM_FLAGS = ("omega", "b", "A", "B", "a", "ell", "e2")


def _fmt(x: float) -> str:
    return f"{float(x):.12g}"


def _round12(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(_round12(obj), sort_keys=True, separators=(", ", ": "), indent=2)


def _out_dir(args) -> Path:
    root = getattr(args, "out", None) or os.environ.get("SIP_OUT_DIR") or "sip-out"
    path = Path(root)
    path.mkdir(parents=True, exist_ok=True)
    return path


@dataclass
class RunManifest:
    command: str
    inputs: dict
    tool_version: str
    outputs: list
    all_passed: bool

    def write(self, directory: Path) -> Path:
        path = directory / "manifest.json"
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "tool_version": self.tool_version,
            "outputs": self.outputs,
            "all_passed": self.all_passed,
        }
        path.write_text(_dump_json(payload) + "\n")
        return path


def _collect_params(args, fam) -> dict:
    p = dict(fam.reference_params)
    for flag in PARAM_FLAGS:
        val = getattr(args, flag, None)
        if val is not None:
            if flag not in fam.param_names:
                raise InvalidParameters(f"{fam.name} takes no parameter {flag!r}")
            p[flag] = float(val)
    return p


def _parse_grid(spec: str):
    lo, hi, n = spec.split(":")
    return float(lo), float(hi), int(n)


# ---------------------------------------------------------------------------
# subcommands (each takes parsed args and an output stream, returns exit code)
# ---------------------------------------------------------------------------

def cmd_list(args, out) -> int:
    if args.family:
        fam = get_family(args.family)
        print(_dump_json(family_descriptor(fam)), file=out)
        return EXIT_PASS
    if args.json:
        print(_dump_json([family_descriptor(get_family(n)) for n in FAMILY_NAMES]), file=out)
        return EXIT_PASS
    rows = list_families()
    width = max(len(r[0]) for r in rows)
    print(f"{'family':<{width}}  {'domain':<9}  parameters", file=out)
    for name, params, kind in rows:
        print(f"{name:<{width}}  {kind:<9}  {', '.join(params)}", file=out)
    return EXIT_PASS


def cmd_verify(args, out) -> int:
    fam = get_family(args.family)
    p = _collect_params(args, fam)
    fam.validate(p)
    if args.grid:
        lo, hi, n = _parse_grid(args.grid)
    else:
        lo, hi = fam.si_interval
        n = 512
    report = verify_shape_invariance(
        fam.W, fam.Wprime, p, fam.tau, make_grid(lo, hi, n), tolerance=args.tolerance
    )
    if args.json:
        print(_dump_json(report.to_json()), file=out)
    else:
        print(f"family:             {fam.name}", file=out)
        print(f"parameters:         {{{', '.join(f'{k}: {_fmt(v)}' for k, v in p.items())}}}", file=out)
        print(f"estimated constant: {_fmt(report.estimated_constant)}", file=out)
        print(f"stored shift:       {_fmt(fam.R(p))}", file=out)
        print(f"max residual:       {_fmt(report.max_residual)}", file=out)
        print(f"passed:             {report.passed} (tolerance {_fmt(report.tolerance)})", file=out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_spectrum(args, out) -> int:
    fam = get_family(args.family)
    p = _collect_params(args, fam)
    spec = spectral.algebraic_spectrum(fam, p, args.levels)
    payload = spec.to_json()
    payload["offset"] = args.offset
    lines = [f"{'n':>3}  {'E_n':>16}"]
    for n, e in enumerate(spec.energies):
        lines.append(f"{n:>3}  {_fmt(e + args.offset):>16}")
    comparison = None
    if args.oracle:
        box = fam.oracle_box if args.box is None else tuple(args.box)
        cfg = oracle.OracleConfig(box=box, n_points=args.points,
                                  n_levels=len(spec.energies))
        res = oracle.eigensolve(lambda x: fam.W(p, x) ** 2 - fam.Wprime(p, x), cfg)
        comparison = oracle.compare_spectra(spec, res.spectrum, mode="relative-gap",
                                            tolerance=args.tolerance)
        payload["oracle"] = res.spectrum.to_json()
        payload["comparison"] = comparison.to_json()
        lines[0] += f"  {'oracle gap':>16}  {'deviation':>12}"
        gaps = res.spectrum.gaps()
        for n in range(len(spec.energies)):
            lines[n + 1] += f"  {_fmt(gaps[n] + args.offset):>16}  {_fmt(comparison.deviations[n]):>12}"
    if args.json:
        print(_dump_json(payload), file=out)
    else:
        for line in lines:
            print(line, file=out)
        if spec.truncated:
            print(f"ladder truncated after {len(spec.energies)} levels", file=out)
    if comparison is not None and not comparison.passed:
        return EXIT_FAIL
    return EXIT_TRUNCATED if spec.truncated else EXIT_PASS


def cmd_construct(args, out) -> int:
    cons = ansatz.construct_case(args.K, args.branch, args.alpha, getattr(args, "lambda"),
                                 slope=args.slope, intercept=args.intercept)
    if args.C is not None or args.D is not None:
        cons = ansatz.extend_second_solution(cons, args.C or 0.0, args.D or 0.0)
    if args.shift is not None:
        cons = ansatz.extend_constant_shift(cons, args.shift)
    if args.grid:
        lo, hi, n = _parse_grid(args.grid)
        grid, poles = ansatz.pole_free_grid(cons, lo, hi, n)
    else:
        grid, poles = ansatz.pole_free_grid(cons, 0.1, 3.0, 512)
    report = verify_shape_invariance(cons.W_at, cons.Wprime_at, cons.lam, cons.tau,
                                     grid, tolerance=ANALYTIC_TOL)
    descriptor = cons.to_json()
    descriptor["energy_shift"] = cons.energy_shift()
    descriptor["shape_invariance"] = report.to_json()
    descriptor["poles_excluded"] = poles
    outdir = _out_dir(args)
    desc_path = outdir / "constructed.json"
    desc_path.write_text(_dump_json(descriptor) + "\n")
    csv_path = outdir / "superpotential.csv"
    with open(csv_path, "w", newline="") as fh:
        fh.write("x,W\n")
        for x, w in zip(grid, cons.W(grid)):
            fh.write(f"{x:.12g},{w:.12g}\n")
    manifest = RunManifest(
        command="construct",
        inputs={"K": args.K, "branch": args.branch, "alpha": args.alpha,
                "lambda": getattr(args, "lambda"), "C": args.C, "D": args.D,
                "shift": args.shift},
        tool_version=__version__,
        outputs=[str(desc_path), str(csv_path)],
        all_passed=report.passed,
    )
    manifest.write(outdir)
    print(_dump_json(descriptor), file=out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _parse_seed(spec: str):
    """'a0=2,a1=1,b0=0.5' -> [(0, 2.0, 0.0), (1, 1.0, 0.0), (0, 0, 0.5)] merged."""
    terms = {}
    for chunk in spec.split(","):
        key, _, val = chunk.partition("=")
        key = key.strip()
        kind, degree = key[0], key[1:]
        if kind not in ("a", "b") or not degree.isdigit():
            raise ValueError(f"bad seed coefficient {key!r} (want a<n>= or b<n>=)")
        n = int(degree)
        a, b = terms.get(n, (0.0, 0.0))
        if kind == "a":
            a = float(val)
        else:
            b = float(val)
        terms[n] = (a, b)
    return [(n, a, b) for n, (a, b) in sorted(terms.items())]


def cmd_3d(args, out) -> int:
    terms = _parse_seed(args.seed)
    region = multidim.DEFAULT_REGION
    if args.region:
        r0, r1, t0, t1 = (float(v) for v in args.region.split(":"))
        region = multidim.Region(r0, r1, t0, t1)
    chi = multidim.laplace_seed(terms, region)
    n_r, n_theta = (int(v) for v in args.grid.split("x")) if args.grid else (128, 128)
    grid2d = multidim.make_grid2d(region, n_r, n_theta)
    lam, mu = getattr(args, "lambda"), args.mu
    ric = multidim.prepotential_riccati_residual(chi, grid2d)
    vm, vp, report = multidim.partner_fields(chi, lam, grid2d, mu=mu)
    outdir = _out_dir(args)
    csv_path = outdir / "fields.csv"
    multidim.fields_to_csv(csv_path, grid2d, vm, vp)
    manifest_payload = multidim.seed_manifest(chi, lam)
    manifest_payload["mu"] = mu
    manifest_payload["riccati_residual"] = ric
    manifest_payload["shape_invariance"] = report.to_json()
    json_path = outdir / "seed.json"
    json_path.write_text(_dump_json(manifest_payload) + "\n")
    manifest = RunManifest(
        command="3d",
        inputs={"seed": args.seed, "lambda": lam, "mu": mu},
        tool_version=__version__,
        outputs=[str(csv_path), str(json_path)],
        all_passed=report.passed and ric < 1e-8,
    )
    manifest.write(outdir)
    if args.json:
        print(_dump_json(manifest_payload), file=out)
    else:
        print(f"seed terms:        {terms}", file=out)
        print(f"riccati residual:  {_fmt(ric)}", file=out)
        print(f"ladder constant:   {_fmt(report.estimated_constant)}", file=out)
        print(f"max deviation:     {_fmt(report.max_residual)}", file=out)
        print(f"passed:            {report.passed}", file=out)
    return EXIT_PASS if manifest.all_passed else EXIT_FAIL


def cmd_radial(args, out) -> int:
    ell = args.ell
    if ell < 1 or ell > 25:
        raise InvalidParameters("ell must be within 1..25")
    rows = []
    all_ok = True
    if args.check_bessel:
        ells = range(1, 6)
        rvals = (0.5, 1.0, 2.0, 5.0, 10.0)
        h = 1e-5
        for l in ells:
            worst = 0.0
            for rv in rvals:
                jp = (radial.spherical_bessel_oracle(l, rv + h)[0]
                      - radial.spherical_bessel_oracle(l, rv - h)[0]) / (2 * h)
                jl, nl = radial.spherical_bessel_oracle(l, rv)
                jm1, _ = radial.spherical_bessel_oracle(l - 1, rv)
                worst = max(worst, abs(jp + (l + 1) / rv * jl - jm1))
            ok = worst < 1e-8
            all_ok &= ok
            rows.append((l, worst, ok))
        print(f"{'ell':>4}  {'max recurrence residual':>24}  pass", file=out)
        for l, worst, ok in rows:
            print(f"{l:>4}  {_fmt(worst):>24}  {ok}", file=out)
    lo, hi, n = _parse_grid(args.grid) if args.grid else (0.5, 20.0, 4096)
    r = make_grid(lo, hi, n)
    psi = np.array([radial.spherical_bessel_oracle(ell, rv)[0] for rv in r])
    lowered = radial.radial_intertwine(ell, spectral.Wavefunction(x=r, values=psi, level=ell))
    reference = np.array([radial.spherical_bessel_oracle(ell - 1, rv)[0] for rv in r])
    dev = float(np.max(np.abs(lowered.values - reference)) / np.max(np.abs(reference)))
    ok = dev < 1e-5
    all_ok &= ok
    print(f"intertwine j{ell} -> j{ell - 1}: max deviation {_fmt(dev)} pass {ok}", file=out)
    outdir = _out_dir(args)
    csv_path = outdir / "intertwine.csv"
    radial.intertwine_to_csv(csv_path, r, psi, lowered.values, reference)
    manifest = RunManifest(
        command="radial",
        inputs={"ell": ell, "check_bessel": bool(args.check_bessel)},
        tool_version=__version__,
        outputs=[str(csv_path)],
        all_passed=bool(all_ok),
    )
    manifest.write(outdir)
    return EXIT_PASS if all_ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------

def _add_param_flags(sub):
    for flag in PARAM_FLAGS:
        sub.add_argument(f"--{flag}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sip",
        description="Shape-invariant potentials: catalog, certification, spectra.",
    )
    parser.add_argument("--batch", metavar="FILE", default=None,
                        help="run one subcommand per line of FILE concurrently")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("list", help="list catalog families")
    p.add_argument("--json", action="store_true")
    p.add_argument("--family", default=None)

    p = sub.add_parser("verify", help="certify shape invariance for a family")
    p.add_argument("family", choices=FAMILY_NAMES)
    _add_param_flags(p)
    p.add_argument("--grid", default=None, metavar="LO:HI:N")
    p.add_argument("--tolerance", type=float, default=ANALYTIC_TOL)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("spectrum", help="algebraic spectrum, optional oracle check")
    p.add_argument("family", choices=FAMILY_NAMES)
    _add_param_flags(p)
    p.add_argument("-n", "--levels", type=int, default=4)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--offset", type=float, default=0.0,
                   help="additive shift applied to printed energies")
    p.add_argument("--box", nargs=2, type=float, default=None, metavar=("LO", "HI"))
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--tolerance", type=float, default=1e-3)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("construct", help="build a superpotential from a seed")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--branch", choices=("linear", "sin", "cos", "sinh", "cosh"),
                   required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--lambda", type=float, required=True, dest="lambda")
    p.add_argument("--slope", type=float, default=1.0)
    p.add_argument("--intercept", type=float, default=0.0)
    p.add_argument("--C", type=float, default=None)
    p.add_argument("--D", type=float, default=None)
    p.add_argument("--shift", type=float, default=None)
    p.add_argument("--grid", default=None, metavar="LO:HI:N")
    p.add_argument("--out", default=None)

    p = sub.add_parser("3d", help="axially symmetric partner fields from a seed")
    p.add_argument("--seed", required=True, metavar="a0=2,a1=1")
    p.add_argument("--lambda", type=float, required=True, dest="lambda")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--region", default=None, metavar="RLO:RHI:TLO:THI")
    p.add_argument("--grid", default=None, metavar="NRxNT")
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("radial", help="radial factorization and Bessel checks")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--check-bessel", action="store_true")
    p.add_argument("--grid", default=None, metavar="LO:HI:N")
    p.add_argument("--out", default=None)
    return parser


_HANDLERS = {
    "list": cmd_list,
    "verify": cmd_verify,
    "spectrum": cmd_spectrum,
    "construct": cmd_construct,
    "3d": cmd_3d,
    "radial": cmd_radial,
}


def run_command(argv, out) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code) if exc.code else EXIT_PASS
    if args.batch:
        return _run_batch(args.batch, out)
    if not args.command:
        parser.print_usage(out)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args, out)
    except (InvalidParameters, DomainViolation, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=out)
        return EXIT_USAGE


def _run_batch(path: str, out) -> int:
    import shlex

    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    jobs = [shlex.split(ln) for ln in lines if ln and not ln.startswith("#")]

    def run(argv):
        buf = StringIO()
        code = run_command(argv, buf)
        return code, buf.getvalue()

    with ThreadPoolExecutor(max_workers=min(8, max(1, len(jobs)))) as pool:
        results = list(pool.map(run, jobs))
    severity = {EXIT_PASS: 0, EXIT_TRUNCATED: 1, EXIT_FAIL: 2, EXIT_USAGE: 3}
    worst = EXIT_PASS
    for argv, (code, text) in zip(jobs, results):
        print(f"$ sip {' '.join(argv)}", file=out)
        out.write(text)
        print(f"[exit {code}]", file=out)
        if severity.get(code, 3) > severity.get(worst, 3):
            worst = code
    return worst


def main(argv=None) -> int:
    code = run_command(sys.argv[1:] if argv is None else argv, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
