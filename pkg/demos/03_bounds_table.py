#!/usr/bin/env python3
"""Reproduce the full bounds table for one dimension.

Each row reports the upper bound K+, the best lower bound with its method
tag -- (BB)/(B) for the Macdonald-kernel routes, (F)/(FF) for the
plane-wave routes -- and the lower/upper ratio, which stays between 0.75
and 0.88 across five orders of magnitude in n - d/2.

Equivalent CLI:  sobomul table1 -d 2 --compare
"""

import sys
import time

from sobomul.tables import GOLDEN_TABLE1, table1_rows

d = int(sys.argv[1]) if len(sys.argv) > 1 else 2

start = time.perf_counter()
cells = table1_rows(d)
golden = GOLDEN_TABLE1.get(d)

print(f"d = {d}")
print(f"{'n':>10} {'K+':>11} {'K-':>11} {'ratio':>7} {'tag':>5}"
      + ("   published ratio" if golden else ""))
for i, cell in enumerate(cells):
    ref = f"   {golden['ratio'][i]:.3f} {golden['tag'][i]}" if golden else ""
    print(f"{cell.label:>10} {cell.k_plus:11.4g} {cell.k_minus:11.4g} "
          f"{cell.ratio:7.4f} {cell.tag:>5}{ref}")
print(f"({time.perf_counter() - start:.1f}s)")
