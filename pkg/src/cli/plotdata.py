"""
plotdata --a A --p P [--sign minus|plus] [--x X] [--len N] [--out FILE] [--png FILE]

CSV with header block,x,y,branch: 1000 intervals of the graph of f, then the
orbit of X (default p) as rows (x_k, x_{k+1}, symbol).
"""

from __future__ import annotations

from src.cli.args import EXIT_OK
from src.dynamics import OverlapParams
from src.utils.io import log, write_table
from src.visualizations import plot_data, plot_map


def register(subparsers, parents=()) -> None:
    parser = subparsers.add_parser("plotdata", parents=list(parents), help="graph and orbit samples as CSV")
    parser.add_argument("--a", required=True, help="slope, 1 < a <= 2 (decimal literal)")
    parser.add_argument("--p", required=True, help="discontinuity point (decimal literal)")
    parser.add_argument("--sign", choices=("minus", "plus"), default="minus")
    parser.add_argument("--x", default=None, help="orbit start (default p)")
    parser.add_argument("--len", type=int, default=0, dest="length", help="orbit steps")
    parser.add_argument("--out", default=None, help="CSV destination (default stdout)")
    parser.add_argument("--png", default=None, help="also render the map and cobweb to a PNG")
    parser.set_defaults(func=run)


def run(args, settings):
    params = OverlapParams.of(args.a, args.p, args.sign, settings=settings)
    x0 = params.p if args.x is None else args.x
    data = plot_data(params, x0, args.length, settings)
    write_table(data, args.out)
    if args.png:
        plot_map(params, data, args.png)
    log(f"{params}: {len(data)} rows", "ok")
    return None, EXIT_OK
