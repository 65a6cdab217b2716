#!/usr/bin/env python3
"""Grow a subgroup through alternating power/link steps and log the deficits.

Usage: python scripts/tower_demo.py [steps] [seed]
"""

import sys

from freegrowth.stallings import build_core, deficit, rank
from freegrowth.surgery import tower, tower_log_json
from freegrowth.words import sample_reduced
import random


def main():
    n_steps = int(sys.argv[1]) if len(sys.argv) > 1 else 6
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 0
    rng = random.Random(seed)
    core = build_core([(1, 2, -1)], 2)
    plan = []
    for i in range(n_steps):
        if i % 2 == 0:
            plan.append(("power", sample_reduced(rng.randint(1, 3), 2, rng=rng)))
        else:
            plan.append(("link", [sample_reduced(1, 2, rng=rng)],
                         [sample_reduced(2, 2, rng=rng)]))
    steps = tower(core, plan, seed=seed)
    sys.stdout.write(tower_log_json(steps))
    final = steps[-1].core if steps else core
    print(f"# final: {final.num_vertices} vertices, rank {rank(final)}, "
          f"deficit {deficit(final).total}", file=sys.stderr)


if __name__ == "__main__":
    main()
