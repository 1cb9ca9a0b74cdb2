"""Delay-line lengths and switch timelines for d-dimensional generation.

Each cycle of duration ``t_cycle`` is divided into d slots; in cycle c the
cavity reflects, in slot order, the photons c - G_{d-1}, ..., c - G_1, c,
where G_m is the product of the first m lattice dimensions.  A photon
entering delay line m right after its m-th reflection must come back one
slot earlier, G_m - G_{m-1} cycles later, which fixes the line delay to
(gap_m - 1/d) t_cycle with gap_1 = N_1 and gap_m = G_m - G_{m-1} above.
For three dimensions this reproduces the closed forms (N - 1/3) T and
(MN - N - 1/3) T exactly.

Propagation delays tau1 (switch 1 to cavity) and tau2 (switch to switch)
shift event times but not slot assignments; the validator simulates full
photon trajectories and flags collisions, wrong slots and switch-state
mismatches.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .lattice import LatticeDims

REFLECTIVE = "reflective"
TRANSMISSIVE = "transmissive"


@dataclass
class Schedule:
    dims: LatticeDims
    t_cycle: float
    d: int
    tau1: float
    tau2: float
    delays: list                       # per delay line, ns
    switch_events: dict                # switch -> sorted [(time, state)]
    arrival_events: list               # planned (time, photon, slot)
    pulse_events: list                 # (time, cycle) of the ancilla pi/2 pulse
    horizon_cycles: int


@dataclass(frozen=True)
class Violation:
    kind: str
    time: float
    photons: tuple
    detail: str


@dataclass
class ValidationReport:
    ok: bool
    violations: list
    photons_checked: int
    arrivals_checked: int
    reflections_per_photon: dict


def _prefix_products(dims: LatticeDims):
    out = []
    acc = 1
    for n in dims.dims:
        acc *= n
        out.append(acc)
    return out  # G_1 .. G_d


def delay_lengths(dims: LatticeDims, t_cycle: float):
    """Delay of every feedback line, (gap_m - 1/d) t_cycle."""
    d = dims.ndim
    if d < 2:
        raise ValueError("a 1D chain needs no feedback lines")
    g = _prefix_products(dims)
    gaps = [g[0]] + [g[m] - g[m - 1] for m in range(1, d - 1)]
    return [(gap - 1.0 / d) * t_cycle for gap in gaps]


def _slot_time(cycle, slot, t_cycle, d):
    return (cycle - 1) * t_cycle + (slot - 1) * t_cycle / d


def _reflection_cycles(photon, dims):
    g = _prefix_products(dims)
    return [photon] + [photon + g[m] for m in range(dims.ndim - 1)]


class _Trajectory:
    """One photon's deterministic path through switches, lines and cavity."""

    def __init__(self, photon, dims, t_cycle, tau1, tau2, delays):
        d = dims.ndim
        self.photon = photon
        self.passings = []   # (switch, time, required state)
        self.arrivals = []   # (ordinal, time)
        self.line_events = []  # (time, line, "enter"/"leave")
        flight_in = tau1 + (d - 1) * tau2
        self.inject_time = _slot_time(photon, d, t_cycle, d) - flight_in
        t = self.inject_time
        for j in range(d - 1, 0, -1):
            t += tau2
            self.passings.append((j, t, TRANSMISSIVE))
        t += tau1
        self.arrivals.append((1, t))
        for m in range(1, d):
            # outbound after the m-th reflection: through switches 1..m-1,
            # deflect into line m, dwell, come back the same way
            for j in range(1, m):
                self.passings.append((j, t + tau1 + (j - 1) * tau2, TRANSMISSIVE))
            t_enter = t + tau1 + (m - 1) * tau2
            self.passings.append((m, t_enter, REFLECTIVE))
            self.line_events.append((t_enter, m, "enter"))
            t_leave = t_enter + delays[m - 1]
            self.line_events.append((t_leave, m, "leave"))
            self.passings.append((m, t_leave, REFLECTIVE))
            for j in range(m - 1, 0, -1):
                self.passings.append((j, t_leave + (m - j) * tau2, TRANSMISSIVE))
            t = t_leave + (m - 1) * tau2 + tau1
            self.arrivals.append((m + 1, t))
        # final reflection done: leave through every switch
        for j in range(1, d):
            self.passings.append((j, t + tau1 + (j - 1) * tau2, TRANSMISSIVE))
        self.exit_time = t + tau1 + (d - 1) * tau2


def build_schedule(dims: LatticeDims, t_cycle: float, tau1=None, tau2=None) -> Schedule:
    """Delay lines, switch windows and the planned arrival grid.

    Switch m is reflective in a short window around each instant a photon
    must couple into or out of delay line m, and transmissive otherwise.
    """
    d = dims.ndim
    if d < 2:
        raise ValueError("a 1D chain needs no feedback schedule")
    if tau1 is None:
        tau1 = t_cycle / 100.0
    if tau2 is None:
        tau2 = t_cycle / 100.0
    limit = t_cycle / (10.0 * d)
    if tau1 >= limit or tau2 >= limit:
        raise ValueError(
            f"propagation delays must stay below t_cycle/(10 d) = {limit:.4g} ns "
            "for collision-free slot timing")

    delays = delay_lengths(dims, t_cycle)
    k_photons = dims.photon_count
    g = _prefix_products(dims)
    horizon = k_photons + g[d - 2] + 2 if d >= 2 else k_photons + 2

    window = 0.4 * min(tau1, tau2)
    reflective_instants = {m: [] for m in range(1, d)}
    arrivals = []
    for p in range(1, k_photons + 1):
        traj = _Trajectory(p, dims, t_cycle, tau1, tau2, delays)
        for ordinal, t in traj.arrivals:
            arrivals.append((t, p, d - ordinal + 1))
        for switch, t, required in traj.passings:
            if required == REFLECTIVE:
                reflective_instants[switch].append(t)
    arrivals.sort()

    switch_events = {}
    for m in range(1, d):
        toggles = []
        for t in sorted(reflective_instants[m]):
            toggles.append((t - window, REFLECTIVE))
            toggles.append((t + window, TRANSMISSIVE))
        # merge windows that touch (adjacent couplings share one window)
        merged = []
        for time, state in toggles:
            if merged and state == REFLECTIVE and merged[-1][1] == TRANSMISSIVE \
                    and time <= merged[-1][0]:
                merged.pop()
                continue
            merged.append((time, state))
        switch_events[m] = merged

    pulses = [(_slot_time(c, d, t_cycle, d) + t_cycle / (2.0 * d), c)
              for c in range(1, k_photons + 1)]
    return Schedule(dims, t_cycle, d, tau1, tau2, delays, switch_events,
                    arrivals, pulses, horizon)


def _switch_state(schedule, switch, time):
    events = schedule.switch_events[switch]
    i = bisect_right(events, (time, "\x7f")) - 1
    return events[i][1] if i >= 0 else TRANSMISSIVE


def _cycle_and_slot(t, t_cycle, d):
    """Classify an arrival instant.  Scheduled arrivals sit on slot
    boundaries (propagation delays only push them later), so an eighth of
    a slot of guard absorbs roundoff just below a boundary."""
    slot_width = t_cycle / d
    q = int((t + 0.125 * slot_width) // slot_width)
    return q // d + 1, q % d + 1


def validate_schedule(s: Schedule, dims: LatticeDims, horizon: int) -> ValidationReport:
    """Simulate every photon trajectory and check the timing claims.

    Asserts that (i) no two photons occupy the cavity in the same slot or
    closer than a quarter slot, (ii) every photon whose itinerary fits the
    horizon reflects exactly d times, (iii) each reflection lands in its
    assigned slot of the assigned cycle, (iv) photons exit after their last
    reflection, and that every switch passing meets the switch timeline.
    """
    d = dims.ndim
    t_cycle = s.t_cycle
    t_end = horizon * t_cycle
    slot_width = t_cycle / d
    violations = []
    all_arrivals = []
    refl_counts = {}

    for p in range(1, dims.photon_count + 1):
        traj = _Trajectory(p, dims, t_cycle, s.tau1, s.tau2, s.delays)
        cycles = _reflection_cycles(p, dims)
        count = 0
        last_arrival = None
        for ordinal, t in traj.arrivals:
            if t >= t_end:
                continue
            count += 1
            last_arrival = t
            all_arrivals.append((t, p, ordinal))
            cycle, slot = _cycle_and_slot(t, t_cycle, d)
            want_cycle = cycles[ordinal - 1]
            want_slot = d - ordinal + 1
            if (cycle, slot) != (want_cycle, want_slot):
                violations.append(Violation(
                    "wrong-slot", t, (p,),
                    f"photon {p} reflection {ordinal} landed in cycle {cycle} "
                    f"slot {slot}, scheduled for cycle {want_cycle} slot {want_slot}"))
        refl_counts[p] = count
        expected_full = cycles[-1] <= horizon
        if expected_full and count != d:
            violations.append(Violation(
                "missing-reflection", last_arrival or traj.inject_time, (p,),
                f"photon {p} reflected {count} times, expected {d}"))
        if last_arrival is not None and traj.exit_time <= last_arrival:
            violations.append(Violation(
                "early-exit", traj.exit_time, (p,),
                f"photon {p} exits before its final reflection"))
        for switch, t, required in traj.passings:
            if t >= t_end:
                continue
            actual = _switch_state(s, switch, t)
            if actual != required:
                violations.append(Violation(
                    "switch-state", t, (p,),
                    f"photon {p} needs switch {switch} {required} at t={t:.4f} ns "
                    f"but it is {actual}"))

    all_arrivals.sort()
    for (t1, p1, _), (t2, p2, _) in zip(all_arrivals, all_arrivals[1:]):
        c1, s1 = _cycle_and_slot(t1, t_cycle, d)
        c2, s2 = _cycle_and_slot(t2, t_cycle, d)
        if (c1, s1) == (c2, s2) or (t2 - t1) < slot_width / 4.0:
            violations.append(Violation(
                "collision", t2, (p1, p2),
                f"photons {p1} and {p2} reach the cavity {t2 - t1:.4f} ns apart "
                f"(cycle {c1} slot {s1} / cycle {c2} slot {s2})"))

    violations.sort(key=lambda v: v.time)
    return ValidationReport(not violations, violations,
                            dims.photon_count, len(all_arrivals), refl_counts)


def timeline_events(s: Schedule, horizon: int):
    """Chronological (time, entity, event) rows for the full apparatus."""
    t_end = horizon * s.t_cycle
    rows = []
    for p in range(1, s.dims.photon_count + 1):
        traj = _Trajectory(p, s.dims, s.t_cycle, s.tau1, s.tau2, s.delays)
        rows.append((traj.inject_time, f"photon {p}", "inject"))
        for ordinal, t in traj.arrivals:
            cycle, slot = _cycle_and_slot(t, s.t_cycle, s.d)
            rows.append((t, f"photon {p}",
                         f"cavity reflection {ordinal} (cycle {cycle} slot {slot})"))
        for t, line, what in traj.line_events:
            rows.append((t, f"photon {p}", f"{what} delay line {line}"))
        rows.append((traj.exit_time, f"photon {p}", "exit"))
    for m, events in s.switch_events.items():
        for t, state in events:
            rows.append((t, f"switch {m}", state))
    for t, cycle in s.pulse_events:
        rows.append((t, "ancilla", f"pi/2 control pulse (cycle {cycle})"))
    return sorted(r for r in rows if r[0] < t_end)
