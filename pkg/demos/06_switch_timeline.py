"""Delay lines and switch timing.

Generating an N x M x L cluster state takes two feedback loops whose
delays are fixed by the slot structure of the clock cycle: each cycle is
divided into three slots, and in cycle k the photons k-MN, k-N and k
reflect off the cavity in that order.  The event simulation checks that
every photon meets the cavity alone, in the right slot, the scheduled
number of times, and that a wrong delay is caught.
"""

from dataclasses import replace

from photoncluster import scheduler
from photoncluster.lattice import LatticeDims

dims = LatticeDims((2, 2, 8))
t_cycle = 5.0  # ns

delays = scheduler.delay_lengths(dims, t_cycle)
print(f"2 x 2 x 8 lattice, T_cycle = {t_cycle} ns")
print(f"  delay line 1: {delays[0]:.4f} ns  (= (N - 1/3) T)")
print(f"  delay line 2: {delays[1]:.4f} ns  (= (MN - N - 1/3) T)")

sched = scheduler.build_schedule(dims, t_cycle)
report = scheduler.validate_schedule(sched, dims, horizon=40)
print(f"  validation over 40 cycles: "
      f"{'clean' if report.ok else report.violations[0]}")
print(f"  cavity arrivals checked: {report.arrivals_checked}")

print("\nfirst twenty timeline events:")
for t, entity, event in scheduler.timeline_events(sched, 40)[:20]:
    print(f"  {t:8.3f} ns  {entity:<10} {event}")

print("\nsteady-state cycle 7 at the cavity:")
for t, photon, slot in sched.arrival_events:
    cycle = int(t // t_cycle) + 1
    if cycle == 7:
        print(f"  slot {slot}: photon {photon} at t = {t:.3f} ns")

bad = replace(sched, delays=[sched.delays[0] + t_cycle / 2.0, sched.delays[1]])
neg = scheduler.validate_schedule(bad, dims, 40)
collision = next(v for v in neg.violations if v.kind == "collision")
print(f"\nwith delay line 1 lengthened by T/2: {len(neg.violations)} violations,")
print(f"  first collision: {collision.detail}")

print("\nfour dimensions just add a third loop:")
dims4 = LatticeDims((2, 2, 2, 4))
print(f"  delays: {scheduler.delay_lengths(dims4, t_cycle)} ns")
report4 = scheduler.validate_schedule(scheduler.build_schedule(dims4, t_cycle),
                                      dims4, 50)
print(f"  validation over 50 cycles: {'clean' if report4.ok else 'violated'}")
