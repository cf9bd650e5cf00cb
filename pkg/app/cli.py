"""Command-line front end

    python -m app weights  --scheme be --symbol resolvent:c=-1 --kappa 0.1 --steps 128
    python -m app convolve --scheme bdf2 --symbol oscillator:c=1 --kappa 0.05 --steps 40
    python -m app solve    --scheme bdf2 --symbol power:alpha=0.5 --method look-ahead --block 8
    python -m app converge --scheme radau3 --symbol antiderivative --kappa 0.1 --final-time 2
    python -m app scatter  --scheme radau3 --geometry circle:radius=1 --grid 40x40 --snapshots 4,6

Run parameters come from an optional flat ``key=value`` file (``--config``)
and are overridden by flags. Failures print a single
``error[<category>]: <message>`` line on stderr.
"""
from typing import Dict, List, Optional
import argparse
import logging
import sys

from dotenv import dotenv_values
from pydantic import ValidationError

from app.config import settings
from app.exceptions import CQError
from app.models.run_config import RunConfig
from app.models.scheme import SchemeId, SolveMethod
from app.services import convergence_service, convolution_service, scatter_service, weights_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_IO = 3

# flags copied onto RunConfig fields of the same name
RUN_FIELDS = (
    "scheme",
    "kappa",
    "steps",
    "final_time",
    "levels",
    "symbol",
    "signal",
    "signal_power",
    "signal_rate",
    "amplitude",
    "eps",
    "oversampling",
    "block",
    "method",
    "geometry",
    "boundary_points",
    "speed",
    "direction",
    "grid",
    "grid_extent",
    "snapshots",
    "out",
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cq", description="Convolution quadrature engine")
    parser.add_argument("--log-level", default=settings.log_level, help="Logging level")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key=value run configuration file")
    common.add_argument("--scheme", choices=[s.value for s in SchemeId])
    common.add_argument("--kappa", type=float, help="Time step")
    common.add_argument("--steps", type=int, help="Last time index N")
    common.add_argument("--symbol", help="Symbol, e.g. resolvent:c=-1, oscillator:c=1, power:alpha=0.5")
    common.add_argument("--signal", help="Data signal: t5exp | monomial | zero")
    common.add_argument("--signal-power", type=int)
    common.add_argument("--signal-rate", type=float)
    common.add_argument("--amplitude", type=float)
    common.add_argument("--eps", type=float, help="Contour accuracy parameter")
    common.add_argument("--oversampling", type=int, help="Contour nodes per step")
    common.add_argument("--block", type=int, help="Look-ahead block size")
    common.add_argument("--method", choices=[m.value for m in SolveMethod])
    common.add_argument("--out", help="Output directory")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("weights", parents=[common], help="Export a weight table")
    sub.add_parser("convolve", parents=[common], help="Convolve a data signal")
    sub.add_parser("solve", parents=[common], help="Solve a convolution equation")

    converge = sub.add_parser("converge", parents=[common], help="Convergence study against the reference")
    converge.add_argument("--final-time", type=float)
    converge.add_argument("--levels", type=int)

    scatter = sub.add_parser("scatter", parents=[common], help="Scattering demo")
    scatter.add_argument("--geometry", help="circle:radius=1 | ellipse:a=2,b=1 | kite")
    scatter.add_argument("--boundary-points", type=int)
    scatter.add_argument("--speed", type=float)
    scatter.add_argument("--direction", help="Plane-wave direction dx,dy")
    scatter.add_argument("--grid", help="Snapshot grid WxH")
    scatter.add_argument("--grid-extent", type=float)
    scatter.add_argument("--snapshots", help="Snapshot times t1,t2,...")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    """Merge the key=value file with flag overrides and validate"""
    values: Dict[str, object] = {}
    if args.config:
        with open(args.config) as fh:
            file_values = dotenv_values(stream=fh)
        values.update({key.strip().lower().replace("-", "_"): v for key, v in file_values.items() if v is not None})
    for field in RUN_FIELDS:
        value = getattr(args, field, None)
        if value is not None:
            values[field] = value
    return RunConfig(**values)


def _run(command: str, cfg: RunConfig) -> None:
    if command == "weights":
        path = weights_service.export_weights(cfg)
        print(path)
    elif command == "convolve":
        print(convolution_service.run_convolve(cfg))
    elif command == "solve":
        print(convolution_service.run_solve(cfg))
    elif command == "converge":
        report = convergence_service.run_convergence(cfg, write_csv=True)
        sys.stdout.write(report.to_csv())
    else:
        summary = scatter_service.run_scatter(cfg)
        extinction = "n/a" if summary.extinction_ratio is None else f"{summary.extinction_ratio:.3e}"
        print(f"first arrival {summary.first_arrival:.6g}")
        print(f"causality ratio {summary.causality_ratio:.3e}")
        print(f"extinction ratio {extinction}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=str(args.log_level).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        cfg = load_config(args)
        _run(args.command, cfg)
        return EXIT_OK

    except CQError as e:
        print(f"error[{e.category}]: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        print(f"error[invalid-argument]: {where}: {first.get('msg')}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error[io]: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
