"""Sweep reuse spacings and route lengths, then pick the winners.

For every (mode, hops, Z) cell the sweep computes the directional
bottleneck rates from per-reception SINR, converts them to end-to-end
capacity through the slot accounting, and cross-checks the capacity
against the packet simulator's delivery rate. One Z per (mode, hops)
group is flagged as the optimum.
"""

from collections import defaultdict

from multihop.harness import DEFAULTS, spec_from_config, run_sweep

# Two parallel streams, the stock radio, routes of 2..4 hops.
spec = spec_from_config(dict(DEFAULTS))
rows = run_sweep(spec)

print("%4s %4s %2s %14s %14s %3s" % ("mode", "hops", "Z", "bottleneck", "capacity", "opt"))
for row in rows:
    print("%4s %4d %2d %12.0f %14.0f %3s"
          % (row.mode, row.hops, row.z, row.forward_bottleneck_bps,
             row.capacity_bps, "*" if row.optimum_flag else ""))
print()

# Group the winners and report the coded-over-traditional gain.
best = {}
for row in rows:
    if row.optimum_flag:
        best[(row.mode, row.hops)] = row

print("optimum Z per (mode, hops) group and NC gain over TR")
for hops in spec.hop_counts:
    tr = best[("TR", hops)]
    nc = best[("NC", hops)]
    gain = 100.0 * (nc.capacity_bps - tr.capacity_bps) / tr.capacity_bps
    print("  %d hops: TR Z=%d %.0f bit/s, NC Z=%d %.0f bit/s, +%.1f%%"
          % (hops, tr.z, tr.capacity_bps, nc.z, nc.capacity_bps, gain))
print()

# The same sweep with one stream removes all cross-row interference,
# so every bottleneck rises and the optimum can shift.
single = dict(DEFAULTS)
single["num_streams"] = 1
rows1 = run_sweep(spec_from_config(single))
by_group = defaultdict(list)
for row in rows1:
    by_group[(row.mode, row.hops)].append(row)

print("single stream, same radio")
for (mode, hops), group in sorted(by_group.items(), key=lambda kv: (kv[0][1], kv[0][0])):
    winner = [r for r in group if r.optimum_flag][0]
    print("  %s %d hops: optimum Z=%d, capacity %.0f bit/s"
          % (mode, hops, winner.z, winner.capacity_bps))
