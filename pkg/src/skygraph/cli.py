"""Command line entry points: analyze, sensitivity, serve, scenario."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analytics import export_summary_file
from .engine import analyze
from .errors import SkygraphError
from .exports import communities_bytes, frames_bytes, heatmap_bytes
from .graph import WeightParams
from .scenarios import (
    bridged_chain_log,
    log_to_csv_bytes,
    pairwise_conflicts_log,
    sector_sweep_log,
)
from .sensitivity import (
    PARAM_COMPLEXITY,
    PARAM_THRESH_H,
    SweepConfig,
    run_sweep,
    sobol_result_dict,
)
from .trajectory import parse_log

SCENARIOS = {
    "bridged-chain": bridged_chain_log,
    "pairwise-conflicts": pairwise_conflicts_log,
    "sector-sweep": sector_sweep_log,
}


def _add_weight_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-h", type=float, default=5.0, metavar="NM",
                        help="minimal horizontal threshold / safety distance (default 5)")
    parser.add_argument("--max-h", type=float, default=33.0, metavar="NM",
                        help="maximal horizontal threshold (default 33)")
    parser.add_argument("--min-v", type=float, default=1000.0, metavar="FT",
                        help="minimal vertical threshold / safety distance (default 1000)")
    parser.add_argument("--max-v", type=float, default=3000.0, metavar="FT",
                        help="maximal vertical threshold (default 3000)")


def _params(args: argparse.Namespace) -> WeightParams:
    return WeightParams(
        H=args.min_h, V=args.min_v, thresh_h=args.max_h, thresh_v=args.max_v
    )


def cmd_analyze(args: argparse.Namespace) -> int:
    log = parse_log(Path(args.log).read_bytes())
    exclude = set(filter(None, (args.exclude or "").split(",")))
    run = analyze(
        log,
        _params(args),
        complexity_thresh=args.complexity,
        dt=args.dt,
        exclude=exclude,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "frames.json").write_bytes(frames_bytes(run))
    (out / "communities.json").write_bytes(communities_bytes(run))
    (out / "heatmap.json").write_bytes(heatmap_bytes(run))
    (out / "summary_file.json").write_bytes(export_summary_file(run.summary))
    print(f"run complete: {run.summary.community_count} complex communities")
    print(f"artifacts written to {out}/")
    return 0


def cmd_sensitivity(args: argparse.Namespace) -> int:
    log = parse_log(Path(args.log).read_bytes())
    cfg = SweepConfig(
        fixed=_params(args),
        bounds={
            PARAM_THRESH_H: tuple(args.thresh_h_bounds),
            PARAM_COMPLEXITY: tuple(args.complexity_bounds),
        },
        base_samples=args.n,
        dt=args.dt,
    )
    rows, outputs, result = run_sweep(log, cfg, n_jobs=args.jobs)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sobol.json").write_text(
        json.dumps(sobol_result_dict(result), indent=2, sort_keys=True) + "\n"
    )
    with open(out / "rows.csv", "w") as handle:
        handle.write("thresh_h,complexity,count,median_size,median_duration\n")
        for row, vals in zip(rows, outputs):
            handle.write(
                f"{row[0]},{row[1]},{vals[0]},{vals[1]},{vals[2]}\n"
            )
    print(f"evaluated {len(rows)} parameter combinations")
    for name, idx in result.per_output.items():
        if idx.degenerate:
            print(f"  {name}: degenerate variance")
        else:
            s1 = ", ".join(f"{p}={v:.3f}" for p, v in idx.S1.items())
            print(f"  {name}: S1 {s1}")
    print(f"results written to {out}/")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import main as serve_main

    serve_main(host=args.host, port=args.port, data_dir=args.data_dir)
    return 0


def cmd_scenario(args: argparse.Namespace) -> int:
    log = SCENARIOS[args.name]()
    data = log_to_csv_bytes(log)
    if args.out == "-":
        sys.stdout.buffer.write(data)
    else:
        Path(args.out).write_bytes(data)
        print(f"wrote {args.name} scenario to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skygraph",
        description="Single-aircraft complexity contributions and complex-community tracking",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run the pipeline on a trajectory log")
    p.add_argument("--log", required=True, help="trajectory CSV file")
    _add_weight_args(p)
    p.add_argument("--complexity", type=float, default=60.0, metavar="PCT",
                   help="complexity threshold in percent (default 60)")
    p.add_argument("--dt", type=float, default=10.0, metavar="S",
                   help="resampling step in seconds (default 10)")
    p.add_argument("--exclude", default="", metavar="CS1,CS2",
                   help="comma-separated callsigns removed before analysis")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sensitivity", help="Sobol sensitivity sweep over thresholds")
    p.add_argument("--log", required=True, help="trajectory CSV file")
    _add_weight_args(p)
    p.add_argument("--n", type=int, default=1024,
                   help="base sample count, power of two (default 1024)")
    p.add_argument("--thresh-h-bounds", type=float, nargs=2, default=[15.0, 75.0],
                   metavar=("LO", "HI"), help="max-h sweep bounds in NM (default 15 75)")
    p.add_argument("--complexity-bounds", type=float, nargs=2, default=[40.0, 100.0],
                   metavar=("LO", "HI"), help="complexity sweep bounds in %% (default 40 100)")
    p.add_argument("--dt", type=float, default=10.0)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=None,
                   help="artifact store (default $SKYGRAPH_DATA_DIR or ./skygraph-data)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("scenario", help="write a packaged synthetic scenario CSV")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.set_defaults(func=cmd_scenario)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SkygraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
