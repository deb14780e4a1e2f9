"""Command-line front end.

Verbs: ``layout`` prints the node grid, ``capacity`` reports one (mode, hops,
Z) cell with its reception events, ``simulate`` runs the packet engine and can
print the slot-by-slot trace, ``sweep`` emits the experiment CSV, ``table4``
compares a full sweep against the published reference table.

Exit codes: 0 on success, 1 for invalid configuration or usage, 2 when the
analytical and packet engines disagree with each other.
"""

import argparse
import sys
from dataclasses import replace

from multihop.capacity import stream_capacity
from multihop.harness import (
    DEFAULTS,
    ConfigError,
    EngineMismatchError,
    compare_table4,
    layout_from_config,
    load_config,
    radio_from_config,
    render_table4,
    rows_to_csv_text,
    run_sweep,
    spec_from_config,
    table4_rows,
    write_csv,
    _parse_value,
)
from multihop.layout import build_layout, stream_route
from multihop.packetsim import (
    FORWARD,
    REVERSE,
    measured_delivery_rate,
    measured_latency,
    render_trace,
    run_nc_sim,
    run_tr_sim,
    trace_to_csv_text,
)
from multihop.schedule import MODE_NC, MODE_TR

# fitted in-range alternate: gains 2, noise figure 3 dB (see table4 --alt)
ALT_TX_GAIN = 2.0
ALT_RX_GAIN = 2.0
ALT_NOISE_FIGURE_DB = 3.0


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; 2 is reserved here, so remap
    def error(self, message):
        raise ConfigError(message)


_SCALAR_OVERRIDES = (
    ("--nodes-per-stream", "nodes_per_stream", int),
    ("--streams", "num_streams", int),
    ("--hop-length-m", "hop_length_m", float),
    ("--row-separation-m", "row_separation_m", float),
    ("--tx-power-w", "tx_power_w", float),
    ("--tx-gain", "tx_gain", float),
    ("--rx-gain", "rx_gain", float),
    ("--frequency-hz", "frequency_hz", float),
    ("--path-loss-exponent", "path_loss_exponent", float),
    ("--noise-figure-db", "noise_figure_db", float),
    ("--temperature-k", "temperature_k", float),
    ("--bandwidth-hz", "bandwidth_hz", float),
)

_LIST_OVERRIDES = (
    ("--modes", "modes"),
    ("--z-values", "z_values"),
    ("--hop-counts", "hop_counts"),
)


def _add_common(parser, lists=False):
    parser.add_argument("--config", help="flat key = value config file")
    for flag, key, typ in _SCALAR_OVERRIDES:
        parser.add_argument(flag, dest=key, type=typ, default=None)
    parser.add_argument("--tr-phase", dest="tr_phase", choices=("same", "opposite"), default=None)
    if lists:
        for flag, key in _LIST_OVERRIDES:
            parser.add_argument(flag, dest=key, default=None, help="comma separated")


def _effective_config(args):
    cfg = load_config(args.config) if args.config else dict(DEFAULTS)
    for _, key, _ in _SCALAR_OVERRIDES:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    if getattr(args, "tr_phase", None) is not None:
        cfg["tr_phase"] = args.tr_phase
    for _, key in _LIST_OVERRIDES:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = _parse_value(key, value)
    return cfg


def _routes(geometry, cfg, hops):
    nodes = hops + 1
    if nodes > cfg["nodes_per_stream"]:
        raise ConfigError(
            "hops=%d needs %d nodes per stream, layout has %d"
            % (hops, nodes, cfg["nodes_per_stream"])
        )
    return {s: stream_route(geometry, s, 1, nodes) for s in range(1, cfg["num_streams"] + 1)}


def cmd_layout(args):
    cfg = _effective_config(args)
    geometry = build_layout(layout_from_config(cfg))
    lc = geometry.config
    print(
        "layout: %d stream(s) x %d nodes, hop %.1f m, row separation %.1f m"
        % (lc.num_streams, lc.nodes_per_stream, lc.hop_length_m, lc.row_separation_m)
    )
    for stream, node in geometry.nodes():
        x, y = geometry.position(stream, node)
        print("  stream %d node %d: (%10.1f, %10.1f)" % (stream, node, x, y))
    print("distance matrix (m):")
    labels = ["s%dn%d" % sn for sn in geometry.nodes()]
    print("        " + " ".join("%8s" % l for l in labels))
    matrix = geometry.distance_matrix
    for i, row_label in enumerate(labels):
        print("%8s" % row_label + " " + " ".join("%8.1f" % matrix[i, j] for j in range(len(labels))))
    return 0


def cmd_capacity(args):
    cfg = _effective_config(args)
    hops = args.hops if args.hops is not None else cfg["nodes_per_stream"] - 1
    geometry = build_layout(layout_from_config(cfg))
    routes = _routes(geometry, cfg, hops)
    radio = radio_from_config(cfg)
    reports = stream_capacity(geometry, routes, radio, args.mode, args.z, tr_phase=cfg["tr_phase"])
    for stream in sorted(reports):
        rep = reports[stream]
        print(
            "stream %d: mode=%s hops=%d z=%d forward=%.1f bps reverse=%.1f bps capacity=%.1f bps"
            % (
                stream, rep.mode, hops, rep.z,
                rep.forward_bottleneck_bps, rep.reverse_bottleneck_bps, rep.capacity_bps,
            )
        )
        print("  slot rx<-tx dir     interferers          SINR        rate_bps")
        for ev, s, r in rep.events:
            ints = ",".join("s%dn%d" % p for p in sorted(ev.interferers)) or "-"
            print(
                "  %4d %2d<-%-2d %-7s %-20s %9.4f %15.1f"
                % (ev.slot, ev.receiver, ev.transmitter, ev.direction, ints, s, r)
            )
    return 0


def cmd_simulate(args):
    cfg = _effective_config(args)
    hops = args.hops if args.hops is not None else cfg["nodes_per_stream"] - 1
    nodes = hops + 1
    run = run_tr_sim if args.mode == MODE_TR else run_nc_sim
    trace = run(nodes, args.z, num_periods=args.periods)
    print(
        "%s nodes=%d z=%d: delivery rate %s per slot, latency forward %d, reverse %d"
        % (
            args.mode, nodes, args.z,
            measured_delivery_rate(trace),
            measured_latency(trace, FORWARD),
            measured_latency(trace, REVERSE),
        )
    )
    if args.trace:
        print(render_trace(trace), end="")
    if args.trace_csv:
        with open(args.trace_csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(trace_to_csv_text(trace))
        print("trace CSV written to %s" % args.trace_csv)
    return 0


def cmd_sweep(args):
    cfg = _effective_config(args)
    spec = spec_from_config(cfg, output=args.output)
    rows = run_sweep(spec)
    text = rows_to_csv_text(rows)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        print("wrote %d rows to %s" % (len(rows), args.output))
    else:
        print(text, end="")
    return 0


def cmd_table4(args):
    cfg = _effective_config(args)
    rows = table4_rows(cfg)
    print(render_table4(compare_table4(rows)), end="")
    if args.alt:
        radio = replace(
            radio_from_config(cfg),
            tx_gain=ALT_TX_GAIN,
            rx_gain=ALT_RX_GAIN,
            noise_figure_db=ALT_NOISE_FIGURE_DB,
        )
        alt_rows = table4_rows(cfg, radio=radio)
        print()
        print("with alternate in-range parameters (gains %.0f, noise figure %.0f dB):" % (ALT_TX_GAIN, ALT_NOISE_FIGURE_DB))
        print(render_table4(compare_table4(alt_rows)), end="")
    if args.output:
        write_csv(rows, args.output)
        print()
        print("wrote %d rows to %s" % (len(rows), args.output))
    return 0


def build_parser():
    parser = _Parser(prog="multihop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="print node positions and distances")
    _add_common(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("capacity", help="single-configuration capacity report")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=(MODE_TR, MODE_NC))
    p.add_argument("--z", required=True, type=int)
    p.add_argument("--hops", type=int, default=None)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("simulate", help="packet-level simulation of one stream")
    _add_common(p)
    p.add_argument("--mode", required=True, choices=(MODE_TR, MODE_NC))
    p.add_argument("--z", required=True, type=int)
    p.add_argument("--hops", type=int, default=None)
    p.add_argument("--periods", type=int, default=None)
    p.add_argument("--trace", action="store_true", help="print the slot-by-slot table")
    p.add_argument("--trace-csv", default=None, help="also write the trace as CSV")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="full experiment sweep to CSV")
    _add_common(p, lists=True)
    p.add_argument("--output", default="-", help="CSV path, '-' for stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("table4", help="compare a reference-grid sweep against published values")
    _add_common(p)
    p.add_argument("--alt", action="store_true", help="also run the fitted alternate parameters")
    p.add_argument("--output", default=None, help="also write the sweep rows as CSV")
    p.set_defaults(func=cmd_table4)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except EngineMismatchError as exc:
        print("engine mismatch: %s" % exc, file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
