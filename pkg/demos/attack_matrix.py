"""Run every registered attack for a modest number of trials and print the
win rate next to what each scheme variant should allow.

    python3 demos/attack_matrix.py [trials]
"""

import sys
import time

from votinggames.adversaries import ATTACKS, run_attack

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 100

print(f"{'attack':22s} {'target':22s} {'game':15s} {'win rate':>9s}  95% CI         expect")
for spec in ATTACKS:
    t0 = time.perf_counter()
    stats = run_attack(spec, min(trials, spec.trials), seed=2026)
    flag = "" if spec.meets(stats) else "  <-- unexpected"
    print(
        f"{spec.name:22s} {spec.scheme + '/' + spec.variant:22s} {spec.game:15s} {stats.rate:9.3f}"
        f"  {stats.ci95[0]:.3f}-{stats.ci95[1]:.3f}  {spec.expected}{flag}  ({time.perf_counter() - t0:.1f}s)"
    )
