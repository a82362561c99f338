"""The product of the base flat locus with the t-axis underestimates the
infinite-type locus: a certified counterexample.

The germ is a flat bump at the origin plus a cut-off rational piece
centered at a base point z20 where P has vanishing order one.  Along an
explicit family of analytic discs through the lifted point the defining
function vanishes identically, so the surface point over the *finite-order*
base point is itself of infinite type.
"""

import json

import numpy as np

from crlab import (
    CounterexampleParams,
    ModelSpec,
    ONE_NONMINIMAL,
    build_counterexample,
    counterexample_certificate,
    vanishing_order,
)


def main():
    params = CounterexampleParams()  # z20 = 0.5, C = 0.3, t0 = 0.5, r = 0.1
    germ = build_counterexample(params)

    print(f"P(z20) = {germ(complex(params.z20)):.6f}  (designed value C = {params.C})")
    at_origin = vanishing_order(germ, 0.0)
    at_base = vanishing_order(germ, params.z20,
                              radii=np.logspace(-3, np.log10(params.r / 2), 10))
    print(f"order at 0   : {'infinite' if at_origin.infinite else at_origin.order}")
    print(f"order at z20 : {'infinite' if at_base.infinite else at_base.order}")

    cert = counterexample_certificate(params)
    print("\ncertificate:")
    print(json.dumps(cert, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
