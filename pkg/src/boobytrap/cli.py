"""Command-line front end: ``boobytrap <command> ...``.

Exit status is 0 on success, 1 when the input is valid but the request makes
no sense for it (a domain error), and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from importlib.resources import files
from pathlib import Path

from . import strategies as st
from .abstractgame import euclidean_attacker_bound, euclidean_defender_bound, simulate_euclidean, value_euclidean
from .bipartition import equal_bipartition_two_connected, find_equal_split, is_two_connected
from .centroid import general_centroid
from .netmodel import Network, NetworkError, format_subnetwork, load_network
from .oracle import best_response_attacker, best_response_defender, discretize, oracle_value
from .simulate import play
from .tables import FAMILIES, fraction_text, parse_range, table
from .values import ValueReport, classify_and_value, tree_bounds

METHODS = ("uniform", "centroid", "partition", "cycle", "path", "odd-star", "three-star", "two-half")


class DomainError(Exception):
    pass


class UsageError(Exception):
    pass


def _network(name: str) -> Network:
    """A network file, or the name of a bundled example such as ``prism``."""
    p = Path(name)
    if p.exists():
        return load_network(p)
    bundled = files("boobytrap") / "data" / (name if name.endswith(".net") else name + ".net")
    if bundled.is_file():
        return load_network(bundled)
    raise DomainError(f"no such network file: {name}")


def _point_text(p) -> str:
    return f"node {p.node}" if p.node is not None else f"arc {p.arc} at {fraction_text(p.offset)}"


def _print_report(r: ValueReport, out) -> None:
    print(f"classification: {r.classification}", file=out)
    if r.kind == "exact":
        print(f"value: {fraction_text(r.value)}", file=out)
    else:
        print(f"bounds: [{fraction_text(r.lower)}, {fraction_text(r.upper)}]", file=out)
    if r.note:
        print(f"note: {r.note}", file=out)


def _report_csv(r: ValueReport, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(("classification", "lower", "upper", "value"))
    w.writerow((r.classification, repr(r.lower), repr(r.upper), "" if r.value is None else repr(r.value)))


def cmd_value(args, out) -> None:
    r = classify_and_value(_network(args.file), args.traps, args.grid)
    (_report_csv if args.emit == "csv" else _print_report)(r, out)


def cmd_bounds(args, out) -> None:
    net = _network(args.file)
    r = tree_bounds(net) if net.is_tree else classify_and_value(net, args.traps)
    (_report_csv if args.emit == "csv" else _print_report)(r, out)
    if r.lower > 0:
        print(f"ratio: {r.upper / r.lower:.9f}", file=out)


def cmd_centroid(args, out) -> None:
    net = _network(args.file)
    info = general_centroid(net)
    if info is None:
        print("no centroid", file=out)
        split = find_equal_split(net, args.grid)
        print("equal split found" if split else f"no equal split found at grid {args.grid}", file=out)
        return
    print(f"centroid: {_point_text(info.centroid)}", file=out)
    print(f"radius: {fraction_text(info.radius)}", file=out)
    print("profile: " + ", ".join(fraction_text(x) for x in info.profile), file=out)


def cmd_partition(args, out) -> None:
    net = _network(args.file)
    halves = equal_bipartition_two_connected(net) if is_two_connected(net) else find_equal_split(net, args.grid)
    if halves is None:
        raise DomainError(f"no equal split found at grid {args.grid} (this does not prove none exists)")
    for i, half in enumerate(halves, 1):
        print(f"# half {i}, length {fraction_text(half.measure)}", file=out)
        out.write(format_subnetwork(half))
        if not format_subnetwork(half).endswith("\n"):
            out.write("\n")


def _build_strategy(net: Network, player: str, method: str, k: int):
    info = None
    if method in ("centroid", "partition"):
        info = general_centroid(net)
        if info is None:
            raise DomainError("network has no centroid")
    if player == "defender":
        builders = {
            "uniform": lambda: st.defender_uniform(net, k),
            "centroid": lambda: st.defender_centroid_strategy(info, net),
            "cycle": lambda: st.defender_cycle(net, k),
            "path": lambda: st.defender_path_comb(net, k),
            "odd-star": lambda: st.defender_odd_star(len(net.arcs), net),
            "three-star": lambda: st.defender_three_arc_star(net),
        }
    else:

        def two_half():
            halves = equal_bipartition_two_connected(net) if is_two_connected(net) else find_equal_split(net)
            if halves is None:
                raise DomainError("no equal split found")
            return st.attacker_two_half(net, halves)

        builders = {
            "partition": lambda: st.attacker_partition_strategy(info, net),
            "cycle": lambda: st.attacker_cycle(net, k),
            "path": lambda: st.attacker_path(net, k),
            "two-half": two_half,
        }
    if method not in builders:
        raise DomainError(f"method {method!r} is not available for the {player}")
    return builders[method]()


def cmd_strategy(args, out) -> None:
    net = _network(args.file)
    doc = st.to_document(_build_strategy(net, args.player, args.method, args.traps))
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)


def _load_strategy(path: str, net: Network):
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not JSON: {exc}") from None
    return st.from_document(doc, net)


def cmd_oracle(args, out) -> None:
    net = _network(args.file)
    sol = oracle_value(net, args.traps, args.mesh, args.tol)
    print(sol.summary(), file=out)
    if args.dump_matrix:
        game = discretize(net, args.mesh, args.traps)
        with open(args.dump_matrix, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow([f"set{j}" for j in range(game.payoff.shape[1])])
            w.writerows([[repr(float(v)) for v in row] for row in game.payoff])


def cmd_best_response(args, out) -> None:
    net = _network(args.file)
    strat = _load_strategy(args.strategy, net)
    if isinstance(strat, st.DefenderStrategy):
        s, v = best_response_attacker(net, strat, args.mesh)
        print(f"attacker best reply payoff: {v:.9f}", file=out)
        out.write(format_subnetwork(s).rstrip("\n") + "\n")
    else:
        pts, v = best_response_defender(net, strat, args.mesh, args.traps)
        print(f"defender best reply payoff: {v:.9f}", file=out)
        for p in pts:
            print(_point_text(p), file=out)


def cmd_simulate(args, out) -> None:
    net = _network(args.file)
    ds = _load_strategy(args.defender, net)
    att = _load_strategy(args.attacker, net)
    if not isinstance(ds, st.DefenderStrategy) or isinstance(att, st.DefenderStrategy):
        raise DomainError("--defender needs a defender document and --attacker an attacker document")
    r = play(net, ds, att, args.trials, args.seed)
    print(f"mean payoff: {r.mean:.6f} +/- {r.halfwidth:.6f} (99%, {r.trials} trials)", file=out)
    if args.batch_csv:
        with open(args.batch_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(("batch", "mean"))
            w.writerows((i, repr(m)) for i, m in enumerate(r.batch_means))


def cmd_euclidean(args, out) -> None:
    k = args.traps
    print(f"value: {fraction_text(value_euclidean(k, exact=True))}", file=out)
    print(f"defender bound at x=1/(k+1): {fraction_text(euclidean_defender_bound(k, 1 / (k + 1)))}", file=out)
    if args.cells is not None:
        print(f"attacker bound with {args.cells} cells: {euclidean_attacker_bound(k, args.cells):.9f}", file=out)
        if args.trials:
            if args.seed is None:
                raise UsageError("simulation needs --seed")
            mean, hw = simulate_euclidean(k, args.cells, args.trials, args.seed)
            print(f"simulated: {mean:.6f} +/- {hw:.6f} (99%)", file=out)


def cmd_tables(args, out) -> None:
    span = parse_range(args.range) if args.range else None
    out.write(table(args.family, span, args.steps))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boobytrap", description="Booby trap games on networks.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        q = sub.add_parser(name, help=help_text)
        q.add_argument("file", help="network file or bundled example name")
        return q

    q = with_file("value", "value or bounds for k traps")
    q.add_argument("--traps", type=int, default=1)
    q.add_argument("--grid", type=int, default=1000)
    q.add_argument("--emit", choices=("text", "csv"), default="text")
    q.set_defaults(run=cmd_value)

    q = with_file("bounds", "certified lower and upper bounds")
    q.add_argument("--traps", type=int, default=1)
    q.add_argument("--emit", choices=("text", "csv"), default="text")
    q.set_defaults(run=cmd_bounds)

    q = with_file("centroid", "centroid location, radius and component profile")
    q.add_argument("--grid", type=int, default=1000)
    q.set_defaults(run=cmd_centroid)

    q = with_file("partition", "two connected halves of length 1/2")
    q.add_argument("--grid", type=int, default=1000)
    q.set_defaults(run=cmd_partition)

    q = with_file("strategy", "emit a strategy document")
    q.add_argument("--player", choices=("attacker", "defender"), required=True)
    q.add_argument("--method", choices=METHODS, required=True)
    q.add_argument("--traps", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(run=cmd_strategy)

    q = with_file("oracle", "solve the discretized game")
    q.add_argument("--traps", type=int, default=1)
    q.add_argument("--mesh", type=int, default=40)
    q.add_argument("--tol", type=float, default=1e-6)
    q.add_argument("--dump-matrix")
    q.set_defaults(run=cmd_oracle)

    q = with_file("best-response", "best reply to a strategy document")
    q.add_argument("--strategy", required=True)
    q.add_argument("--mesh", type=int, default=60)
    q.add_argument("--traps", type=int, default=1)
    q.set_defaults(run=cmd_best_response)

    q = with_file("simulate", "Monte Carlo play of two strategy documents")
    q.add_argument("--defender", required=True)
    q.add_argument("--attacker", required=True)
    q.add_argument("--trials", type=int, default=100_000)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--batch-csv")
    q.set_defaults(run=cmd_simulate)

    q = sub.add_parser("euclidean", help="the game on an abstract measure space")
    q.add_argument("--traps", type=int, required=True)
    q.add_argument("--cells", type=int)
    q.add_argument("--trials", type=int, default=0)
    q.add_argument("--seed", type=int)
    q.set_defaults(run=cmd_euclidean)

    q = sub.add_parser("tables", help="CSV tables of closed-form values")
    q.add_argument("--family", choices=FAMILIES, required=True)
    q.add_argument("--k", "--n", dest="range", help="inclusive range such as 3..12")
    q.add_argument("--steps", type=int, default=6000)
    q.set_defaults(run=cmd_tables)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.run(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, NetworkError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
