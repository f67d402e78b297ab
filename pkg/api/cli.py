# Command-line entry point
import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from api.config import LOGGING_CONFIG
from api.utils import render
from core.commands import Commands
from core.errors import FourierLaplaceError, ParameterError, SeriesError
from models.params import to_complex
from models.request import (BoundsRequest, CompareRequest, EvaluateRequest, ExpandRequest, MuegerRequest,
                            TauberianRequest)
from models.response import OutputRecord

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_EPILOG = """\
values starting with a minus sign must be attached with "=":
  flosc eval --alpha 2 --z=-1,0.5
  flosc expand --alpha 2.5 --beta=-0.5,1 --theta=-1.2 --terms 4
  flosc --format csv bounds --alpha 2 --C 1 --xs 2,4,8,16
"""


def complex_arg(text: str) -> complex:
    """``RE`` or ``RE,IM``"""
    try:
        return to_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}") from e


def float_list_arg(text: str) -> List[float]:
    """Comma-separated reals"""
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _add_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, required=True, help="phase exponent, alpha > 1")
    parser.add_argument("--beta", type=complex_arg, default=0j, help="amplitude exponent RE[,IM]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flosc",
        description="Evaluate, expand and verify the entire Fourier-Laplace transforms "
                    "F_{alpha,beta}(z) of t^beta exp(i t^alpha).",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=_EPILOG,
    )
    parser.add_argument("--format", choices=["json", "csv"], default="json", help="output serialization")
    parser.add_argument("--no-header", action="store_true", help="omit the generator string")
    parser.add_argument("--workers", type=int, default=None, help="threads for compare/bounds rows")
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate F_{alpha,beta}(z)")
    _add_params(p)
    p.add_argument("--z", type=complex_arg, required=True, help="evaluation point RE[,IM], e.g. --z=-1,0")
    p.add_argument("--tol", type=float, default=None, help="quadrature tolerance")

    p = sub.add_parser("expand", help="asymptotic expansion coefficients")
    _add_params(p)
    p.add_argument("--case", choices=["sector1", "sector2", "real-axis", "lower-ray"], default=None)
    p.add_argument("--theta", type=float, default=None, help="ray angle (required for the sectors)")
    p.add_argument("--terms", type=int, required=True)

    p = sub.add_parser("compare", help="expansion against reference values along a ray")
    _add_params(p)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--radii", type=float_list_arg, required=True, help="R1,R2,...")
    p.add_argument("--terms", type=int, required=True)

    p = sub.add_parser("bounds", help="growth of |F| on the hourglass region")
    _add_params(p)
    p.add_argument("--C", type=float, required=True, help="width constant")
    p.add_argument("--xs", type=float_list_arg, required=True, help="x1,x2,...")

    p = sub.add_parser("demo-tauberian", help="remainder of the extremal Tauberian example")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--smoothed", action="store_true", help="log-smoothed variant")
    p.add_argument("--xs", type=float_list_arg, required=True, help="x1,x2,...")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("demo-mueger", help="Mellin transform of S(x) against its closed form")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--s", type=complex_arg, required=True, help="Mellin variable RE[,IM], Re s > 1")
    p.add_argument("--tol", type=float, default=1e-8)
    return parser


def _dispatch(args: argparse.Namespace) -> OutputRecord:
    header = not args.no_header
    handlers: Dict[str, Callable[[], OutputRecord]] = {
        "eval": lambda: Commands.evaluate_point(
            EvaluateRequest(alpha=args.alpha, beta=args.beta, z=args.z, tol=args.tol), header),
        "expand": lambda: Commands.expand(
            ExpandRequest(alpha=args.alpha, beta=args.beta, case=args.case, theta=args.theta,
                          terms=args.terms), header),
        "compare": lambda: Commands.compare(
            CompareRequest(alpha=args.alpha, beta=args.beta, theta=args.theta, radii=args.radii,
                           terms=args.terms), header, workers=args.workers),
        "bounds": lambda: Commands.bounds(
            BoundsRequest(alpha=args.alpha, beta=args.beta, C=args.C, xs=args.xs), header, workers=args.workers),
        "demo-tauberian": lambda: Commands.tauberian_remainder(
            TauberianRequest(kappa=args.kappa, smoothed=args.smoothed, xs=args.xs, tol=args.tol), header),
        "demo-mueger": lambda: Commands.mueger(
            MuegerRequest(alpha=args.alpha, s=args.s, tol=args.tol), header),
    }
    return handlers[args.command]()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand and write its OutputRecord to stdout.

    Returns:
        0 on success, 2 on a usage or parameter error, 3 on a numeric failure
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(level=getattr(logging, args.log_level), format=LOGGING_CONFIG["format"],
                        stream=sys.stderr, force=True)

    try:
        record = _dispatch(args)
    except ValidationError as e:
        messages = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        logger.error(f"Invalid arguments: {messages}")
        return EXIT_USAGE
    except (ParameterError, SeriesError) as e:
        logger.error(str(e))
        return EXIT_USAGE
    except FourierLaplaceError as e:
        logger.error(f"Numeric failure ({type(e).__name__}): {e}")
        return EXIT_NUMERIC

    sys.stdout.write(render(record, args.format))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
