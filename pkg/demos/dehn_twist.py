"""Walk through the Dehn twist check on one strand.

Run with ``python demos/dehn_twist.py [max order]``.
"""
from __future__ import annotations

import argparse
import time

from skeinlab.atlcalc import ATLElement, StrandElement, dehn_twist, sigma, wrap_left, wrap_right
from skeinlab.chebseries import a_coefficients, xc_truncated
from skeinlab.dehnverify import calibrate, exp_sigma_xc, log_twist, sigma_xc
from skeinlab.filtration import strand_series


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("order", type=int, nargs="?", default=5)
    args = ap.parse_args()

    prof = calibrate()
    print(f"calibrated profile: smoothing={prof.profile.smoothing} handedness={prof.profile.handedness}")

    r0 = ATLElement.identity(1)
    loop = ATLElement.from_loop_poly({1: 1})
    print("core in front of the strand:", StrandElement.from_atl(wrap_left(loop, r0)))
    print("core behind the strand:     ", StrandElement.from_atl(wrap_right(loop, r0)))
    print("sigma(core) on the strand:  ", StrandElement.from_atl(sigma(loop, r0)))
    print("twist of the strand:        ", StrandElement.from_atl(dehn_twist(r0)))

    print("squared-log coefficients:", ", ".join(str(a) for a in a_coefficients(8)))
    print("twist element to order 3:", xc_truncated(3).series)

    v = StrandElement.r_power(0)
    for N in range(1, args.order + 1):
        start = time.perf_counter()
        diff = log_twist(v, N) - sigma_xc(v, N)
        ok = diff.valuation() is None
        back = (exp_sigma_xc(N) - strand_series(StrandElement.r_power(1), N)).valuation() is None
        print(f"order {N}: log(t) = sigma(x_c) {'holds' if ok else 'fails'}, "
              f"exp recovers the twist: {back} ({time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
