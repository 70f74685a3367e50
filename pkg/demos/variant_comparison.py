#!/usr/bin/env python3
"""Compare the reduction work of f5, f5r, and f5c on benchmark families.

Reproduces the shape of the published comparison: on regular sequences the
signature criteria prevent every reduction to zero, and computing with
reduced bases collapses the reduction count.

Run: python demos/variant_comparison.py [max_katsura] [max_cyclic]
"""

import sys
import time

from f5gb import compare_variants, cyclic, katsura

max_k = int(sys.argv[1]) if len(sys.argv) > 1 else 6
max_c = int(sys.argv[2]) if len(sys.argv) > 2 else 6

header = f"{'system':<12} {'f5':>10} {'f5r':>10} {'f5c':>10} {'f5c/f5':>8} {'zero':>5} {'agree':>6} {'secs':>6}"
print(header)
print("-" * len(header))
for family, gen, ns in (("katsura", katsura, range(3, max_k + 1)),
                        ("cyclic", cyclic, range(4, max_c + 1))):
    for n in ns:
        t0 = time.monotonic()
        records = compare_variants(gen(n))
        dt = time.monotonic() - t0
        steps = {s.algorithm: s.reduction_steps for s in records}
        zeros = {s.zero_reductions for s in records}
        agree = all(s.reduced_basis_agrees_with_oracle for s in records)
        print(
            f"{family + '-' + str(n):<12} {steps['f5']:>10} {steps['f5r']:>10} "
            f"{steps['f5c']:>10} {steps['f5c'] / steps['f5']:>8.3f} "
            f"{'/'.join(str(z) for z in sorted(zeros)):>5} {str(agree):>6} {dt:>6.1f}"
        )
