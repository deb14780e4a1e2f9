"""SINR and Shannon-rate evaluation of scheduled streams, per reception event.

Every transmission a schedule produces is heard somewhere; each addressed
(receiver, transmitter) pair in a slot is one reception event, and every other
node transmitting in that slot, in either stream, interferes with it. A
direction's bottleneck is the lowest rate over its events, and capacity per
timeslot divides the two bottlenecks by the schedule period: once by Z when
coded relaying moves both directions per cycle, once by 2Z when the cycle
serves each direction in its own half.
"""

from dataclasses import dataclass, replace

from multihop.radio import noise_power, received_power, shannon_rate, sinr
from multihop.schedule import (
    FORWARD,
    MODE_NC,
    MODE_TR,
    REVERSE,
    ScheduleConfig,
    Schedule,
    TransmitSet,
    nc_schedule,
    tr_schedule,
)


@dataclass(frozen=True)
class ReceptionEvent:
    """One addressed reception: route positions, plus everything else on air."""

    slot: int
    stream: int
    receiver: int
    transmitter: int
    direction: str  # direction the received content travels
    interferers: frozenset  # (stream, route position) pairs


@dataclass(frozen=True)
class StreamCapacityReport:
    stream: int
    mode: str
    z: int
    forward_bottleneck_bps: float
    reverse_bottleneck_bps: float
    capacity_bps: float
    events: tuple  # (ReceptionEvent, sinr, rate_bps)


def build_schedules(routes, mode, z, tr_phase="same"):
    """Per-stream schedules over route positions, slot-aligned across streams."""
    if tr_phase not in ("same", "opposite"):
        raise ValueError("tr_phase must be 'same' or 'opposite'")
    schedules = {}
    for stream in sorted(routes):
        route = routes[stream]
        config = ScheduleConfig(nodes=route.num_nodes, z=z, mode=mode)
        if mode == MODE_TR:
            sched = tr_schedule(config, stream=stream)
            if tr_phase == "opposite" and stream == 2:
                rotated = sched.sets[z:] + sched.sets[:z]
                sets = tuple(replace(ts, slot=i + 1) for i, ts in enumerate(rotated))
                sched = Schedule(config=config, stream=stream, sets=sets)
        else:
            sched = nc_schedule(config, stream=stream)
        schedules[stream] = sched
    return schedules


def reception_events(schedules, routes):
    """All reception events over one schedule period, interferers included."""
    periods = {s.period for s in schedules.values()}
    if len(periods) != 1:
        raise ValueError("streams must share one schedule period, got %r" % (sorted(periods),))
    period = periods.pop()
    events = []
    for slot in range(1, period + 1):
        on_air = []
        for stream in sorted(schedules):
            ts = schedules[stream].slot(slot)
            for t in sorted(ts.transmitters, key=lambda x: x.node):
                on_air.append(t)
        all_pairs = frozenset((t.stream, t.node) for t in on_air)
        for t in on_air:
            nodes = routes[t.stream].num_nodes
            for rx in t.receivers(nodes):
                travel = FORWARD if rx > t.node else REVERSE
                events.append(
                    ReceptionEvent(
                        slot=slot,
                        stream=t.stream,
                        receiver=rx,
                        transmitter=t.node,
                        direction=travel,
                        interferers=all_pairs - {(t.stream, t.node)},
                    )
                )
    return events


def _layout_pair(routes, stream, position):
    route = routes[stream]
    return (route.stream, route.layout_node(position))


def event_interference(event, geometry, routes, radio):
    """Total unwanted power in watts at the event's receiver."""
    rx = _layout_pair(routes, event.stream, event.receiver)
    total = 0.0
    for stream, node in sorted(event.interferers):
        d = geometry.distance(rx, _layout_pair(routes, stream, node))
        total += received_power(radio, d)
    return total


def event_sinr(event, geometry, routes, radio):
    """SINR of one reception event under the shared radio parameters."""
    rx = _layout_pair(routes, event.stream, event.receiver)
    tx = _layout_pair(routes, event.stream, event.transmitter)
    signal = received_power(radio, geometry.distance(rx, tx))
    return sinr(signal, event_interference(event, geometry, routes, radio), noise_power(radio))


def capacity_per_slot(mode, z, forward_bps, reverse_bps):
    """Fold the two directional bottlenecks into capacity per timeslot."""
    if mode == MODE_NC:
        return (forward_bps + reverse_bps) / z
    if mode == MODE_TR:
        return (forward_bps + reverse_bps) / (2 * z)
    raise ValueError("unknown mode %r" % (mode,))


def stream_capacity(geometry, routes, radio, mode, z, tr_phase="same"):
    """Capacity report per stream; interference crosses streams either way."""
    schedules = build_schedules(routes, mode, z, tr_phase=tr_phase)
    events = reception_events(schedules, routes)
    rated = []
    for ev in events:
        s = event_sinr(ev, geometry, routes, radio)
        rated.append((ev, s, shannon_rate(radio, s)))
    reports = {}
    for stream in sorted(routes):
        mine = [(ev, s, r) for ev, s, r in rated if ev.stream == stream]
        fwd = [r for ev, s, r in mine if ev.direction == FORWARD]
        rev = [r for ev, s, r in mine if ev.direction == REVERSE]
        if not fwd or not rev:
            raise ValueError("stream %d schedule produced no events in one direction" % stream)
        f, r = min(fwd), min(rev)
        reports[stream] = StreamCapacityReport(
            stream=stream,
            mode=mode,
            z=z,
            forward_bottleneck_bps=f,
            reverse_bottleneck_bps=r,
            capacity_bps=capacity_per_slot(mode, z, f, r),
            events=tuple(mine),
        )
    return reports


def optimum_z(geometry, routes, radio, mode, z_values, tr_phase="same"):
    """Reuse period maximizing stream-1 capacity; ties go to the smaller Z.

    Returns (best_z, reports_by_z) where each entry holds the per-stream
    reports for that Z.
    """
    if not z_values:
        raise ValueError("z_values must be non-empty")
    reports_by_z = {}
    best_z = None
    best = -1.0
    for z in sorted(z_values):
        reports = stream_capacity(geometry, routes, radio, mode, z, tr_phase=tr_phase)
        reports_by_z[z] = reports
        cap = reports[min(reports)].capacity_bps
        if cap > best:
            best, best_z = cap, z
    return best_z, reports_by_z
