"""
Command-line front end: points, weights, count, transform, verify.

Exit codes: 0 success, 2 invalid configuration, 3 M too small, 4 counting
disagreement, 5 grid mismatch, 6 verification failure, 7 Weyl group too large.
"""

from fractions import Fraction
from typing import List, Optional, Sequence
import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from weyldft import __version__
from weyldft.config import get_settings
from weyldft.counting.counting import expand_queries, sweep, write_sweep_csv
from weyldft.counting.models import CountQuery
from weyldft.errors import GridMismatch, GroupTooLarge, InvalidAlgebra, LevelTooSmall
from weyldft.grids.grids import point_set, weight_set
from weyldft.grids.serialize import dumps, points_document, weights_document, write_points_csv, write_weights_csv
from weyldft.lattice.models import AlgebraType, RootSystemData, SignHom
from weyldft.lattice.rootdata import admissible_signs, build, check_sign, generalized_coxeter, get_root_data
from weyldft.transforms.models import SampleTable, Spectrum
from weyldft.transforms.transforms import (
    forward,
    get_transform,
    hartley_forward,
    hartley_inverse,
    inverse,
    roundtrip_error,
)
from weyldft.verify.models import VerifyContext
from weyldft.verify.runner import VerificationRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_LEVEL = 3
EXIT_DISAGREE = 4
EXIT_MISMATCH = 5
EXIT_VERIFY = 6
EXIT_TOO_LARGE = 7


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _resolve(args: argparse.Namespace):
    R = get_root_data(args.algebra)
    sigma = SignHom.parse(args.sigma)
    check_sign(R, sigma)
    return R, sigma


def parse_algebras(text: str) -> List[AlgebraType]:
    """A2 | A1,B3,G2 | A1..A4"""
    algebras = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            low, high = (AlgebraType.parse(x) for x in part.split("..", 1))
            if low.family != high.family or low.rank > high.rank:
                raise InvalidAlgebra(f"Bad algebra range '{part}'")
            for rank in range(low.rank, high.rank + 1):
                candidate = AlgebraType(family=low.family, rank=rank)
                if candidate.is_valid():
                    algebras.append(candidate)
        else:
            algebras.append(AlgebraType.parse(part))
    return algebras


def parse_levels(text: str) -> List[int]:
    """7 | 5..12"""
    if ".." in text:
        low, high = (int(x) for x in text.split("..", 1))
        if low > high:
            raise ValueError(f"Empty level range '{text}'")
        return list(range(low, high + 1))
    return [int(text)]


def parse_rationals(line: Sequence[str]) -> List[Fraction]:
    return [Fraction(cell.strip()) for cell in line if cell.strip()]


def read_samples(path: str, R: RootSystemData, sigma: SignHom, M: int, allow_large: bool) -> SampleTable:
    """JSON sample table, or CSV with columns re[,im] in point-set order"""
    with open(path) as handle:
        text = handle.read()
    if text.lstrip().startswith("{"):
        return SampleTable.from_payload(json.loads(text))
    values = []
    for row in csv.reader(io.StringIO(text)):
        if not row:
            continue
        try:
            numbers = [float(cell) for cell in row]
        except ValueError:
            # header
            continue
        values.append(complex(numbers[0], numbers[1] if len(numbers) > 1 else 0.0))
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    if len(values) != len(transform.points):
        raise GridMismatch(f"{len(values)} samples for a grid of {len(transform.points)} points")
    array = np.array(values)
    if not np.any(array.imag):
        array = array.real
    return transform.table(array)


def random_samples(R: RootSystemData, sigma: SignHom, M: int, seed: int, real: bool,
                   allow_large: bool) -> SampleTable:
    transform = get_transform(R, sigma, M, allow_large=allow_large)
    rng = np.random.default_rng(seed)
    size = len(transform.points)
    values = rng.integers(-50, 51, size) / 7
    if not real:
        values = values + 1j * rng.integers(-50, 51, size) / 7
    return transform.table(values)


def spectrum_csv(spectrum: Spectrum) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    n = len(spectrum.weights[0].kac) - 1 if spectrum.weights else 0
    value_columns = ["d"] if spectrum.hartley else ["re", "im"]
    writer.writerow([f"kac_{i}" for i in range(n + 1)] + ["h"] + value_columns)
    for weight, coeff in zip(spectrum.weights, spectrum.coeffs):
        values = [repr(float(coeff))] if spectrum.hartley else [repr(float(coeff.real)), repr(float(coeff.imag))]
        writer.writerow(list(weight.kac) + [weight.h] + values)
    return stream.getvalue()


def cmd_points(args: argparse.Namespace) -> int:
    R, sigma = _resolve(args)
    points = point_set(R, sigma, args.M, relaxed=args.relaxed_M)
    if args.format == "csv":
        stream = io.StringIO()
        write_points_csv(points, stream)
        _emit(stream.getvalue(), args.output)
    else:
        _emit(dumps(points_document(R, sigma, args.M, points)), args.output)
    print(f"{R.label} sigma={sigma.short_name} M={args.M}: {len(points)} points", file=sys.stderr)
    return EXIT_OK


def cmd_weights(args: argparse.Namespace) -> int:
    R, sigma = _resolve(args)
    weights = weight_set(R, sigma, args.M, relaxed=args.relaxed_M)
    if args.format == "csv":
        stream = io.StringIO()
        write_weights_csv(weights, stream)
        _emit(stream.getvalue(), args.output)
    else:
        _emit(dumps(weights_document(R, sigma, args.M, weights)), args.output)
    print(f"{R.label} sigma={sigma.short_name} M={args.M}: {len(weights)} weights", file=sys.stderr)
    return EXIT_OK


def build_queries(args: argparse.Namespace) -> List[CountQuery]:
    algebras = parse_algebras(args.algebra)
    sigmas = None if args.sigma == "all" else [SignHom.parse(args.sigma)]
    if sigmas is not None:
        for algebra in algebras:
            check_sign(build(algebra), sigmas[0])
    if args.M is None:
        return expand_queries(algebras, sigmas, args.span)

    levels = parse_levels(args.M)
    queries = []
    smallest_bound = None
    for algebra in algebras:
        R = build(algebra)
        for sigma in sigmas or admissible_signs(R):
            bound = generalized_coxeter(R, sigma)
            smallest_bound = bound if smallest_bound is None else min(smallest_bound, bound)
            skipped = [M for M in levels if M <= bound]
            if skipped:
                logger.warning(f"Skipping {R.label} sigma={sigma.short_name} at M={skipped}: need M > {bound}")
            queries.extend(CountQuery(algebra=algebra, sigma=sigma, M=M) for M in levels if M > bound)
    if not queries:
        raise LevelTooSmall(max(levels), smallest_bound)
    return queries


def cmd_count(args: argparse.Namespace) -> int:
    rows = sweep(build_queries(args), get_settings().threads)
    if args.format == "json":
        _emit(json.dumps([{**row.model_dump(), "agree": row.agree} for row in rows], indent=2) + "\n", args.output)
    else:
        stream = io.StringIO()
        write_sweep_csv(rows, stream)
        _emit(stream.getvalue(), args.output)
    disagreements = [row for row in rows if not row.agree]
    print(f"{len(rows)} queries, {len(disagreements)} disagreements", file=sys.stderr)
    return EXIT_DISAGREE if disagreements else EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    R, sigma = _resolve(args)
    M, allow_large = args.M, args.allow_large_weyl
    if args.input:
        samples = read_samples(args.input, R, sigma, M, allow_large)
    else:
        samples = random_samples(R, sigma, M, args.seed, args.hartley, allow_large)

    if args.hartley:
        spectrum = hartley_forward(R, sigma, M, samples, allow_large)
    else:
        spectrum = forward(R, sigma, M, samples, allow_large)

    if args.samples_out:
        _emit(dumps(samples.to_payload(weighted=args.weighted)), args.samples_out)

    error = None
    if args.roundtrip:
        error = roundtrip_error(R, sigma, M, samples, args.hartley, allow_large)
        print(f"max relative reconstruction error: {error:.3e}", file=sys.stderr)

    if args.eval:
        with open(args.eval) as handle:
            points = [parse_rationals(row) for row in csv.reader(handle) if row]
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow([f"a_{i}" for i in range(1, R.rank + 1)] + (["value"] if args.hartley else ["re", "im"]))
        for a in points:
            if len(a) != R.rank:
                raise GridMismatch(f"Evaluation point {a} needs {R.rank} coordinates")
            cells = [str(x) for x in a]
            if args.hartley:
                writer.writerow(cells + [repr(float(hartley_inverse(R, sigma, M, spectrum, a, allow_large)))])
            else:
                value = inverse(R, sigma, M, spectrum, a, allow_large)
                writer.writerow(cells + [repr(value.real), repr(value.imag)])
        _emit(stream.getvalue(), args.output)
    elif args.format == "csv":
        _emit(spectrum_csv(spectrum), args.output)
    else:
        document = spectrum.to_payload()
        if error is not None:
            document["roundtrip_error"] = error
        _emit(dumps(document), args.output)
    print(f"{R.label} sigma={sigma.short_name} M={M}: {len(spectrum.weights)} coefficients", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    R, sigma = _resolve(args)
    runner = VerificationRunner()
    checks = [name.strip() for name in args.checks.split(",")] if args.checks else None
    context = VerifyContext(
        R=R, sigma=sigma, M=args.M, seed=args.seed,
        eps_offset=args.corrupt_eps, allow_large=args.allow_large_weyl,
    )
    run = runner.run(context, checks)
    report = run.report()
    if args.format == "csv":
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["name", "status", "deviation", "message"])
        for check in report["checks"]:
            writer.writerow([check["name"], check["status"], check["deviation"], check["message"]])
        _emit(stream.getvalue(), args.output)
    else:
        _emit(json.dumps(report, indent=2) + "\n", args.output)
    for check in report["checks"]:
        print(f"{check['status']:>8}  {check['name']}: {check['message']}", file=sys.stderr)
    return EXIT_VERIFY if run.failed else EXIT_OK


def _common(parser: argparse.ArgumentParser, level_required: bool = True) -> None:
    parser.add_argument("--algebra", required=True, help="Algebra label such as A2, B3, E7")
    parser.add_argument("--sigma", default="1", help="Sign homomorphism: 1, e, s or l (default: 1)")
    parser.add_argument("--M", type=int, required=level_required, help="Refinement level M")
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="Output format (default: json)")
    parser.add_argument("--output", help="Output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weyldft", description="Dual-root lattice Weyl orbit function transforms")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    points = commands.add_parser("points", help="Point set F^sigma_(Q^v,M)")
    _common(points)
    points.add_argument("--relaxed-M", action="store_true", dest="relaxed_M", help="Allow M <= m^sigma")
    points.set_defaults(handler=cmd_points)

    weights = commands.add_parser("weights", help="Weight set Lambda^sigma_(P,M)")
    _common(weights)
    weights.add_argument("--relaxed-M", action="store_true", dest="relaxed_M", help="Allow M <= m^sigma")
    weights.set_defaults(handler=cmd_weights)

    count = commands.add_parser("count", help="Closed form, Burnside and enumeration sweep")
    count.add_argument("--algebra", required=True, help="Label, comma list or range such as A1..A4")
    count.add_argument("--sigma", default="all", help="1, e, s, l or all (default: all)")
    count.add_argument("--M", help="Single level or range lo..hi (default: the span above m^sigma)")
    count.add_argument("--span", type=int, default=10, help="Levels above m^sigma when --M is absent (default: 10)")
    count.add_argument("--format", choices=["json", "csv"], default="csv", help="Output format (default: csv)")
    count.add_argument("--output", help="Output file (default: stdout)")
    count.set_defaults(handler=cmd_count)

    transform = commands.add_parser("transform", help="Forward transform of grid samples")
    _common(transform)
    transform.add_argument("--input", help="JSON sample table or CSV of re[,im] in point order")
    transform.add_argument("--hartley", action="store_true", help="Hartley instead of Fourier transform")
    transform.add_argument("--roundtrip", action="store_true", help="Report max relative reconstruction error")
    transform.add_argument("--seed", type=int, default=0, help="Seed for random samples when --input is absent")
    transform.add_argument("--eval", help="CSV of rational dual-root coordinates to evaluate the interpolant at")
    transform.add_argument("--samples-out", help="Write the sample table used to this file")
    transform.add_argument("--weighted", action="store_true", help="Export epsilon-weighted samples")
    transform.add_argument("--allow-large-weyl", action="store_true", help="Enumerate W above the cap")
    transform.set_defaults(handler=cmd_transform)

    verify = commands.add_parser("verify", help="Run the verification checks")
    _common(verify)
    verify.add_argument("--checks", help="Comma list of checks (default: all)")
    verify.add_argument("--seed", type=int, default=0, help="Seed for random inputs")
    verify.add_argument("--allow-large-weyl", action="store_true", help="Enumerate W above the cap")
    verify.add_argument("--corrupt-eps", type=int, default=0, help=argparse.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(level=get_settings().log_level)
    try:
        return args.handler(args)
    except LevelTooSmall as e:
        logger.error(str(e))
        return EXIT_LEVEL
    except GridMismatch as e:
        logger.error(str(e))
        return EXIT_MISMATCH
    except GroupTooLarge as e:
        logger.error(f"{e}; pass --allow-large-weyl to override")
        return EXIT_TOO_LARGE
    except (ValueError, OSError) as e:
        logger.error(str(e))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
