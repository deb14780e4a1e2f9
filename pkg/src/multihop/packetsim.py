"""Packet-level replay of the TDMA schedules, independent of the radio model.

Sources stay saturated: the low end injects a fresh packet at every one of its
transmit slots, the high end likewise in the opposite direction. Delivery here
never depends on SINR; the point is to measure latency and delivery rate of
the schedules themselves and compare them with the closed-form predictions.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from multihop.schedule import (
    BROADCAST,
    FORWARD,
    MODE_NC,
    MODE_TR,
    REVERSE,
    ScheduleConfig,
    nc_schedule,
    tr_schedule,
)

WARMUP_PERIODS = 3  # measurement gate, full schedule periods


class SteadyStateError(RuntimeError):
    """Raised when a trace is too short or too irregular to measure."""


@dataclass(frozen=True, order=True)
class PacketId:
    """One source packet: direction of travel, per-direction sequence, origin node."""

    direction: str
    seq: int
    origin: int

    @property
    def alphabet_index(self):
        # forward packets take A, C, E..., reverse packets B, D, F...
        offset = 0 if self.direction == FORWARD else 1
        return 2 * (self.seq - 1) + offset

    @property
    def name(self):
        idx = self.alphabet_index
        if idx < 26:
            return chr(ord("A") + idx)
        prefix = "F" if self.direction == FORWARD else "R"
        return "%s%d" % (prefix, self.seq)


def xor(a, b):
    """Combine two packet labels; XOR of payloads cancels shared components."""
    return frozenset(a) ^ frozenset(b)


def label_name(label):
    """Readable form of a label, components in injection order, e.g. 'A^B'."""
    if not label:
        return "-"
    return "^".join(p.name for p in sorted(label, key=lambda p: p.alphabet_index))


@dataclass(frozen=True)
class Delivery:
    packet: PacketId
    node: int
    slot: int
    latency: int


@dataclass(frozen=True)
class SlotRecord:
    """Everything that happened in one timeslot."""

    slot: int
    scheduled: tuple
    transmissions: dict
    receptions: tuple  # (receiver, transmitter, label, residual after stripping)
    xors: tuple  # (node, combined label) formed at the end of this slot
    deliveries: tuple
    stored: tuple  # (node, direction, label) snapshot after the slot


@dataclass
class SimTrace:
    mode: str
    nodes: int
    z: int
    period: int
    warmup_slots: int
    schedule: object
    slots: list = field(default_factory=list)
    injections: dict = field(default_factory=dict)  # PacketId -> first tx slot
    deliveries: list = field(default_factory=list)
    dropped: int = 0  # stored packets overwritten before being relayed

    @property
    def total_slots(self):
        return len(self.slots)


def tr_latency(nodes, z):
    """Slots from first transmission to delivery under store-and-forward."""
    return nodes - 1 + z * ((nodes - 2) // z)


def nc_latency_forward(nodes):
    """Forward packets ride the schedule wave: one hop per slot."""
    return nodes - 1


def nc_latency_reverse(nodes, z):
    """Reverse packets wait z-1 slots at each relay after the first hop."""
    return (nodes - 2) * (z - 1) + 1


def _auto_periods(nodes, z, period):
    # enough to fill the pipeline and then observe several steady periods
    fill = math.ceil((nodes * z + 2) / period)
    return WARMUP_PERIODS + fill + 8


def run_tr_sim(nodes, z, num_periods=None):
    """Simulate store-and-forward relaying; returns a SimTrace.

    Each node buffers at most one packet per direction. A forward packet moves
    one hop per forward slot and sits out the reverse half-cycles, which is
    where the closed-form latency picks up its z * floor((N_o-2)/z) term.
    """
    config = ScheduleConfig(nodes=nodes, z=z, mode=MODE_TR)
    sched = tr_schedule(config)
    period = sched.period
    if num_periods is None:
        num_periods = _auto_periods(nodes, z, period)
    trace = SimTrace(
        mode=MODE_TR,
        nodes=nodes,
        z=z,
        period=period,
        warmup_slots=WARMUP_PERIODS * period,
        schedule=sched,
    )
    buf = {FORWARD: {n: None for n in range(1, nodes + 1)}, REVERSE: {n: None for n in range(1, nodes + 1)}}
    seq = {FORWARD: 0, REVERSE: 0}

    for t in range(1, num_periods * period + 1):
        ts = sched.slot(t)
        transmissions = {}
        directions = {}
        for tx in sorted(ts.transmitters, key=lambda x: x.node):
            d = tx.direction
            if (d == FORWARD and tx.node == 1) or (d == REVERSE and tx.node == nodes):
                seq[d] += 1
                pid = PacketId(direction=d, seq=seq[d], origin=tx.node)
                trace.injections[pid] = t
                packet = pid
            else:
                packet = buf[d][tx.node]
                if packet is None:
                    continue  # scheduled but nothing buffered yet
                buf[d][tx.node] = None
            transmissions[tx.node] = frozenset([packet])
            directions[tx.node] = d
        receptions = []
        deliveries = []
        for node in sorted(transmissions):
            d = directions[node]
            packet = next(iter(transmissions[node]))
            rx = node + 1 if d == FORWARD else node - 1
            receptions.append((rx, node, transmissions[node], transmissions[node]))
            dest = nodes if d == FORWARD else 1
            if rx == dest:
                lat = t - trace.injections[packet] + 1
                deliveries.append(Delivery(packet=packet, node=rx, slot=t, latency=lat))
            else:
                if buf[d][rx] is not None:
                    trace.dropped += 1
                buf[d][rx] = packet
        trace.deliveries.extend(deliveries)
        stored = tuple(
            (n, d, frozenset([buf[d][n]]))
            for d in (FORWARD, REVERSE)
            for n in range(1, nodes + 1)
            if buf[d][n] is not None
        )
        trace.slots.append(
            SlotRecord(
                slot=t,
                scheduled=tuple(sorted(ts.nodes())),
                transmissions=transmissions,
                receptions=tuple(receptions),
                xors=(),
                deliveries=tuple(deliveries),
                stored=stored,
            )
        )
    return trace


def run_nc_sim(nodes, z, num_periods=None):
    """Simulate two-way relaying with XOR coding; returns a SimTrace.

    Every scheduled node broadcasts to both neighbours. A relay holding both a
    forward and a reverse packet sends their XOR; a receiver strips whatever
    components it already knows, learns the single unknown that remains, and
    stores it for the opposite-neighbour hop. Endpoints decode the same way,
    which is what lets a combined packet serve both directions at once.
    """
    config = ScheduleConfig(nodes=nodes, z=z, mode=MODE_NC)
    sched = nc_schedule(config)
    period = sched.period
    if num_periods is None:
        num_periods = _auto_periods(nodes, z, period)
    trace = SimTrace(
        mode=MODE_NC,
        nodes=nodes,
        z=z,
        period=period,
        warmup_slots=WARMUP_PERIODS * period,
        schedule=sched,
    )
    stored = {FORWARD: {n: None for n in range(1, nodes + 1)}, REVERSE: {n: None for n in range(1, nodes + 1)}}
    known = {n: set() for n in range(1, nodes + 1)}
    seq = {FORWARD: 0, REVERSE: 0}

    for t in range(1, num_periods * period + 1):
        ts = sched.slot(t)
        transmissions = {}
        for tx in sorted(ts.transmitters, key=lambda x: x.node):
            if tx.node == 1 or tx.node == nodes:
                d = FORWARD if tx.node == 1 else REVERSE
                seq[d] += 1
                pid = PacketId(direction=d, seq=seq[d], origin=tx.node)
                trace.injections[pid] = t
                known[tx.node].add(pid)
                transmissions[tx.node] = frozenset([pid])
            else:
                f, r = stored[FORWARD][tx.node], stored[REVERSE][tx.node]
                if f and r:
                    label = xor(f, r)
                elif f or r:
                    label = f or r
                else:
                    continue  # nothing to relay yet
                stored[FORWARD][tx.node] = None
                stored[REVERSE][tx.node] = None
                transmissions[tx.node] = label
        receptions = []
        deliveries = []
        touched = set()
        for node in sorted(transmissions):
            label = transmissions[node]
            for rx in (node - 1, node + 1):
                if not (1 <= rx <= nodes):
                    continue
                residual = frozenset(p for p in label if p not in known[rx])
                receptions.append((rx, node, label, residual))
                if not residual:
                    continue
                if len(residual) == 1:
                    known[rx].add(next(iter(residual)))
                travel = FORWARD if node < rx else REVERSE
                at_destination = (travel == FORWARD and rx == nodes) or (travel == REVERSE and rx == 1)
                if at_destination:
                    if len(residual) == 1:
                        pid = next(iter(residual))
                        lat = t - trace.injections[pid] + 1
                        deliveries.append(Delivery(packet=pid, node=rx, slot=t, latency=lat))
                else:
                    if stored[travel][rx] is not None:
                        trace.dropped += 1
                    stored[travel][rx] = residual
                    touched.add(rx)
        xors = tuple(
            (n, xor(stored[FORWARD][n], stored[REVERSE][n]))
            for n in sorted(touched)
            if stored[FORWARD][n] and stored[REVERSE][n]
        )
        trace.deliveries.extend(deliveries)
        snapshot = tuple(
            (n, d, stored[d][n])
            for d in (FORWARD, REVERSE)
            for n in range(1, nodes + 1)
            if stored[d][n] is not None
        )
        trace.slots.append(
            SlotRecord(
                slot=t,
                scheduled=tuple(sorted(ts.nodes())),
                transmissions=transmissions,
                receptions=tuple(receptions),
                xors=xors,
                deliveries=tuple(deliveries),
                stored=snapshot,
            )
        )
    return trace


def measured_latency(trace, direction):
    """Steady-state latency in slots for one direction of travel.

    Uses deliveries whose packet was injected after the warmup window, needs
    at least three of them, and insists they agree.
    """
    lats = [
        d.latency
        for d in trace.deliveries
        if d.packet.direction == direction and trace.injections[d.packet] > trace.warmup_slots
    ]
    if len(lats) < 3:
        raise SteadyStateError(
            "only %d %s deliveries past warmup; run more periods" % (len(lats), direction)
        )
    if len(set(lats)) != 1:
        raise SteadyStateError("latencies not constant past warmup: %r" % (sorted(set(lats)),))
    return lats[0]


def measured_delivery_rate(trace):
    """Delivered packets per timeslot, both directions combined, as a Fraction.

    Counts over whole schedule periods starting once each direction has begun
    delivering, so the value is exact.
    """
    firsts = {}
    for d in trace.deliveries:
        firsts.setdefault(d.packet.direction, d.slot)
    if FORWARD not in firsts or REVERSE not in firsts:
        raise SteadyStateError("need deliveries in both directions to measure a rate")
    start = max(firsts.values())
    whole = (trace.total_slots - start + 1) // trace.period
    if whole < 2:
        raise SteadyStateError("fewer than 2 whole periods after deliveries began")
    end = start + whole * trace.period  # window [start, end)
    count = sum(1 for d in trace.deliveries if start <= d.slot < end)
    return Fraction(count, whole * trace.period)


def _tx_cell(rec):
    return " ".join("%d:%s" % (n, label_name(rec.transmissions[n])) for n in sorted(rec.transmissions))


def _xor_cell(rec):
    return " ".join("%d:%s" % (n, label_name(label)) for n, label in rec.xors)


def _delivery_cell(rec):
    return " ".join("%s->%d L=%d" % (d.packet.name, d.node, d.latency) for d in rec.deliveries)


def render_trace(trace, first=1, last=None):
    """Slot-by-slot text table of a trace, one line per timeslot."""
    if last is None:
        last = trace.total_slots
    head = "%s nodes=%d z=%d period=%d" % (trace.mode, trace.nodes, trace.z, trace.period)
    rows = [("slot", "transmissions", "xor formed", "deliveries")]
    for rec in trace.slots[first - 1 : last]:
        rows.append((str(rec.slot), _tx_cell(rec) or "-", _xor_cell(rec) or "-", _delivery_cell(rec) or "-"))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = [head]
    for i, r in enumerate(rows):
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def trace_to_csv_text(trace):
    """Machine-readable form of a trace; entries within a cell use ';'."""
    lines = ["slot,scheduled,transmissions,xors,deliveries"]
    for rec in trace.slots:
        lines.append(
            "%d,%s,%s,%s,%s"
            % (
                rec.slot,
                ";".join(str(n) for n in rec.scheduled),
                ";".join("%d:%s" % (n, label_name(rec.transmissions[n])) for n in sorted(rec.transmissions)),
                ";".join("%d:%s" % (n, label_name(label)) for n, label in rec.xors),
                ";".join("%s@%d:L%d" % (d.packet.name, d.node, d.latency) for d in rec.deliveries),
            )
        )
    return "\n".join(lines) + "\n"
