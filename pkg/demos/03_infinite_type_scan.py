"""Map out where the catalog germs vanish to infinite order.

The vanishing order at a point is estimated from the log-log slope of the
maximal directional increment over a window of radii; slopes beyond the
detection cap (or full underflow) are reported as infinite.  The set of
infinite-order base points lifts to infinite-type points of the model
surface.
"""

import numpy as np

from crlab import (
    ModelSpec,
    ONE_NONMINIMAL,
    get_germ,
    p_infinity_candidates,
    scan_s_infinity,
    surface_point,
    vanishing_order,
)


def main():
    for gid in ("p1", "p2", "p3", "control"):
        germ = get_germ(gid)
        rows = []
        for z in (0.0, 0.5 + 0j, 0.35j):
            est = vanishing_order(germ, z)
            verdict = "infinite" if est.infinite else f"order {est.order}"
            rows.append(f"    z={z!s:<10} {verdict:<10} slope={est.slope:8.3f}")
        print(f"{gid}:")
        print("\n".join(rows))

    # The tubular germ is flat along the whole imaginary axis.
    germ = get_germ("p3")
    axis = [0.3j * s for s in (-1.0, -0.5, 0.5, 1.0)] + [0.3, 0.2 + 0.2j]
    flagged = scan_s_infinity(germ, axis)
    print(f"\np3 scan: {len(flagged)} of {len(axis)} points flagged infinite")

    model = ModelSpec(ONE_NONMINIMAL, germ)
    lifted = p_infinity_candidates(model, flagged, t_values=[0.0, 0.1, -0.1])
    print(f"lifted to {len(lifted)} candidate infinite-type surface points")
    z1, z2 = lifted[0]
    print(f"  first: z1={z1}, z2={z2}")


if __name__ == "__main__":
    main()
