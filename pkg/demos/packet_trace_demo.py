"""Run the packet simulator and inspect what actually crosses the air.

The coded relay XORs the two directions together, so a single
transmission can serve both endpoints at once. The rendered trace
shows each slot's transmissions, the XOR combinations formed, and
every delivery with its slot count. Measured latencies and delivery
rates are then checked against the closed forms.
"""

from fractions import Fraction

from multihop import (
    run_tr_sim,
    run_nc_sim,
    measured_latency,
    measured_delivery_rate,
    tr_latency,
    nc_latency_forward,
    nc_latency_reverse,
)
from multihop.packetsim import render_trace

# Five nodes, Z = 4: one forward packet and one reverse packet meet at
# the relays and travel on as XOR combinations (A^B and friends).
trace = run_nc_sim(5, 4)
print(render_trace(trace, first=1, last=12))
print()

print("traditional trace, same line, same Z")
print(render_trace(run_tr_sim(5, 4), first=1, last=12))
print()

print("measured latency vs closed form [slots]")
print("%4s %5s %9s %9s %13s %13s" % ("mode", "N,Z", "fwd meas", "rev meas", "fwd formula", "rev formula"))
for nodes, z in ((5, 2), (5, 4), (7, 3)):
    t = run_tr_sim(nodes, z)
    print("%4s %5s %9d %9d %13d %13d"
          % ("TR", "%d,%d" % (nodes, z), measured_latency(t, "forward"),
             measured_latency(t, "reverse"), tr_latency(nodes, z), tr_latency(nodes, z)))
    t = run_nc_sim(nodes, z)
    print("%4s %5s %9d %9d %13d %13d"
          % ("NC", "%d,%d" % (nodes, z), measured_latency(t, "forward"),
             measured_latency(t, "reverse"), nc_latency_forward(nodes), nc_latency_reverse(nodes, z)))
print()

# Delivery rate counts both directions together over whole periods:
# traditional lands 2 packets per 2Z slots, coded 2 packets per Z.
print("total delivery rate [packets/slot], both directions")
for nodes, z in ((5, 2), (5, 4), (7, 3)):
    tr_rate = measured_delivery_rate(run_tr_sim(nodes, z))
    nc_rate = measured_delivery_rate(run_nc_sim(nodes, z))
    print("  N=%d Z=%d: TR %s  NC %s  (expect %s and %s)"
          % (nodes, z, tr_rate, nc_rate, Fraction(1, z), Fraction(2, z)))
