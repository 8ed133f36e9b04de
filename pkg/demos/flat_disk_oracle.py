"""Check the solver against the classical clamped-disk answer.

For the unit disk the buckling eigenvalues are squares of Bessel zeros:
the sector of angular degree l contributes j_{l+1,k}^2 for k = 1, 2, ...
That gives an exact yardstick for both the eigenvalues and the observed
mesh-refinement order, with the Bessel side computed by the package's own
series/recurrence evaluator rather than an external library.

Run:  python3 demos/flat_disk_oracle.py
"""

import math
import time

import capspectra as cs


def main():
    disk = cs.make_cap("flat", 2, 1.0)

    print("clamped unit disk, buckling spectrum vs squared Bessel zeros")
    print("=" * 64)

    print(f"{'l':>3} {'k':>3} {'computed (m=128)':>20} {'j_(l+1,k)^2':>20} {'rel err':>10}")
    for l in range(3):
        pairs = cs.solve_sector(disk, l, m=128, count=2)
        for k, pair in enumerate(pairs, start=1):
            exact = cs.bessel_zero(l + 1, k) ** 2
            rel = abs(pair.value - exact) / exact
            print(f"{l:>3} {k:>3} {pair.value:>20.12f} {exact:>20.12f} {rel:>10.2e}")

    print()
    print("mesh refinement for the lowest eigenvalue")
    print(f"{'m':>5} {'lambda_1':>20} {'error':>12} {'order':>7}")
    exact = cs.bessel_zero(1, 1) ** 2
    prev_err = None
    for m in (16, 32, 64, 128, 256):
        t0 = time.perf_counter()
        lam = cs.solve_sector(disk, 0, m=m, count=1)[0].value
        dt = time.perf_counter() - t0
        err = abs(lam - exact)
        order = "" if prev_err is None else f"{math.log2(prev_err / err):.2f}"
        print(f"{m:>5} {lam:>20.12f} {err:>12.3e} {order:>7}  ({dt * 1e3:.0f} ms)")
        prev_err = err

    print()
    print("the Hermite-cubic elements converge at fourth order, so each mesh")
    print("doubling buys roughly a factor sixteen in eigenvalue accuracy,")
    print("until the error reaches the double-precision floor: entries of the")
    print("bending matrix grow like h^-3, and below roughly 1e-9 relative the")
    print("comparison measures rounding in the assembly, not discretization.")


if __name__ == "__main__":
    main()
