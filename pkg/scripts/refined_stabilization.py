#!/usr/bin/env python3
"""Exploratory: how the refined four-parameter trinomial behaves as its
second bound M grows.

For fixed (L, a) this prints the coefficients of cal-T(L, M; a, a) for
increasing M and reports the first M from which the polynomial stops
changing below a degree window.  There is no published closed form for
this limit relating it to the reversed T-family; this script is for
looking at the data, and nothing in the test suite depends on it.

Usage: refined_stabilization.py [L] [a] [window_q]
"""

import sys

from qtrin.trinomials import RefinedTParams, refined_trinomial


def stabilization_point(L: int, a: int, window: int, m_max: int = 30):
    """First M from which cal-T(L, M; a, a) is constant below the window
    (half-units), or None if it keeps moving through m_max."""
    stable_from = None
    prev = None
    for M in range(m_max + 1):
        cur = refined_trinomial(RefinedTParams(L, M, a, a)).truncate(window)
        if prev is not None and cur.first_mismatch(prev) is None:
            if stable_from is None:
                stable_from = M - 1
        else:
            stable_from = None
        prev = cur
    return stable_from


def main(argv):
    L = int(argv[1]) if len(argv) > 1 else 4
    a = int(argv[2]) if len(argv) > 2 else 1
    window_q = int(argv[3]) if len(argv) > 3 else 12
    window = 2 * window_q

    print(f"cal-T({L}, M; {a}, {a}) below q^{window_q}, growing M:")
    prev = None
    for M in range(0, 13):
        cur = refined_trinomial(RefinedTParams(L, M, a, a)).truncate(window)
        marker = "" if prev is None or cur.first_mismatch(prev) else "  (= previous)"
        print(f"  M={M:2d}: {cur}{marker}")
        prev = cur

    pt = stabilization_point(L, a, window)
    if pt is None:
        print("no stabilization observed in the scanned range")
    else:
        print(f"stable below q^{window_q} from M = {pt}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
