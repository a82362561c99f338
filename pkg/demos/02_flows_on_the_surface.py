"""Integrate symmetry flows and the scalar characteristic ODE.

The real part of a tangent holomorphic field generates a one-parameter
family of CR automorphisms: its flow must stay on the hypersurface to
integration accuracy.  The scalar ODE gamma' = b gamma^l governs the z2
component of candidate symmetries; l = 1 gives rotations/scalings, l >= 2
blows up in finite time.
"""

import numpy as np

from crlab import (
    ModelSpec,
    ONE_NONMINIMAL,
    blowup_time_estimate,
    characteristic_flow,
    get_germ,
    integrate_field,
    linear_diag_field,
    log_p_diagnostic,
    surface_point,
)


def main():
    model = ModelSpec(ONE_NONMINIMAL, get_germ("p1"))
    field = linear_diag_field(1.0, 2.0)  # z1 d/dz1 + 2i z2 d/dz2
    z0 = surface_point(model, 0.1, 0.5 + 0j)

    traj = integrate_field(field, z0, (0.0, 5.0), tol=1e-10, model=model)
    print(f"symmetry flow: {len(traj.times)} samples, status {traj.status}")
    print(f"  max |rho| along the flow : {np.max(np.abs(traj.rho_residuals)):.2e}")

    back = integrate_field(field, traj.states[-1], (0.0, -traj.times[-1]), tol=1e-10)
    err = np.max(np.abs(back.states[-1] - np.asarray(z0)))
    print(f"  return after reversal    : {err:.2e}")

    # Pure rotation in the characteristic ODE preserves |gamma| exactly.
    rot = characteristic_flow(1j, 1, None, 0.3, (0.0, 5.0), tol=1e-10)
    print(f"\ncharacteristic b=i, l=1: |gamma| drift "
          f"{np.max(np.abs(np.abs(rot.states) - 0.3)):.2e}")

    # Inward spiral: u(t) = log|P(gamma)|/2 decays linearly for P = |z|^2.
    dec = characteristic_flow(-1.0, 1, None, 0.5, (0.0, 3.0), tol=1e-12)
    _, (slope, rms, linear) = log_p_diagnostic(get_germ("control"), dec)
    print(f"decay diagnostic on |z|^2: slope {slope:+.6f}, rms {rms:.1e}, "
          f"linear={linear}")

    # gamma' = gamma^2 from z0 = 0.3 has a pole at exactly t = 1/0.3.
    pole = characteristic_flow(1.0, 2, None, 0.3, (0.0, 30.0), tol=1e-12)
    est = blowup_time_estimate(pole, 1.0, 2)
    print(f"\nblow-up estimate for gamma' = gamma^2: {est:.6f} (exact {1 / 0.3:.6f})")


if __name__ == "__main__":
    main()
