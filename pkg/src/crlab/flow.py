"""One-parameter flows of polynomial fields on C^2 and the scalar
characteristic ODE gamma' = b gamma^l (1 + g0(gamma)), plus the
u(t) = log|P(gamma(t))|/2 diagnostic."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import InsufficientDataError, ParameterError
from .fields import VectorFieldPoly
from .germs import SmoothGerm
from .models import ModelSpec, rho

UNDERFLOW_FLOOR = 1e-290
ORIGIN_RADIUS = 1e-12

STATUS_OK = "ok"
STATUS_LEFT_DOMAIN = "left-domain"
STATUS_REACHED_ORIGIN = "reached-origin"


@dataclass
class FlowTrajectory:
    times: np.ndarray
    states: np.ndarray  # complex, shape (n,) for scalar or (n, 2) for C^2
    status: str = STATUS_OK
    rho_residuals: np.ndarray | None = None
    u_values: np.ndarray | None = None

    @property
    def final_state(self):
        return self.states[-1]

    def z2_component(self) -> np.ndarray:
        if self.states.ndim == 1:
            return self.states
        return self.states[:, 1]

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "re_z1", "im_z1", "re_z2", "im_z2", "rho", "u"])
            for i, t in enumerate(self.times):
                if self.states.ndim == 1:
                    z1s, z2s = ["", ""], self.states[i]
                else:
                    z1s = [self.states[i, 0].real, self.states[i, 0].imag]
                    z2s = self.states[i, 1]
                r = "" if self.rho_residuals is None else self.rho_residuals[i]
                u = ""
                if self.u_values is not None and np.isfinite(self.u_values[i]):
                    u = self.u_values[i]
                w.writerow([t, *z1s, z2s.real, z2s.imag, r, u])


def _check_tol(tol):
    if not (1e-14 < tol < 1e-2):
        raise ParameterError("tol must lie in (1e-14, 1e-2)")


def integrate_field(
    f: VectorFieldPoly,
    z0,
    t_span,
    tol: float = 1e-10,
    model: ModelSpec | None = None,
    n_samples: int = 257,
) -> FlowTrajectory:
    """Adaptive embedded RK45 integration of (z1, z2)' = (h1, h2).

    The complex state is carried as four reals.  If ``model`` is given, rho
    is evaluated along the trajectory and the z2 component is confined to
    the germ's domain disk (early exit -> status "left-domain").
    """
    _check_tol(tol)
    z10, z20 = complex(z0[0]), complex(z0[1])
    y0 = [z10.real, z10.imag, z20.real, z20.imag]

    def rhs(t, y):
        h1, h2 = f.eval(complex(y[0], y[1]), complex(y[2], y[3]))
        return [h1.real, h1.imag, h2.real, h2.imag]

    events = []
    if model is not None:
        radius = model.germ.radius

        def leave(t, y):
            return np.hypot(y[2], y[3]) - radius

        leave.terminal = True
        leave.direction = 1
        events.append(leave)

    t_eval = np.linspace(t_span[0], t_span[1], n_samples)
    sol = solve_ivp(
        rhs, t_span, y0, method="RK45", rtol=tol, atol=tol * 1e-2,
        t_eval=t_eval, events=events or None, dense_output=False,
    )
    if sol.status == -1:
        raise ParameterError(f"integration failed: {sol.message}")
    states = sol.y[0] + 1j * sol.y[1]
    states = np.column_stack([states, sol.y[2] + 1j * sol.y[3]])
    times = sol.t
    status = STATUS_LEFT_DOMAIN if sol.status == 1 else STATUS_OK
    rr = None
    if model is not None and len(times):
        rr = np.asarray(rho(model, states[:, 0], states[:, 1]), dtype=float)
    return FlowTrajectory(times=times, states=states, status=status, rho_residuals=rr)


def characteristic_flow(
    b: complex,
    l: int,
    g0,
    z0: complex,
    t_span,
    tol: float = 1e-10,
    domain_radius: float = 0.75,
    n_samples: int = 257,
) -> FlowTrajectory:
    """Scalar characteristic ODE gamma' = b gamma^l (1 + g0(gamma)).

    Stops with status "reached-origin" when |gamma| < 1e-12 and
    "left-domain" when |gamma| > domain_radius.
    """
    _check_tol(tol)
    if l < 0:
        raise ParameterError("l must be a non-negative integer")
    z0 = complex(z0)
    if z0 == 0:
        raise ParameterError("z0 must be nonzero (punctured disk)")
    if g0 is None:
        g0 = lambda z: 0.0
    elif not callable(g0):
        c0 = complex(g0)
        g0 = lambda z: c0
    b = complex(b)

    def rhs(t, y):
        g = complex(y[0], y[1])
        d = b * g**l * (1.0 + g0(g))
        return [d.real, d.imag]

    def origin(t, y):
        return np.hypot(y[0], y[1]) - ORIGIN_RADIUS

    origin.terminal = True
    origin.direction = -1

    def leave(t, y):
        return np.hypot(y[0], y[1]) - domain_radius

    leave.terminal = True
    leave.direction = 1

    t_eval = np.linspace(t_span[0], t_span[1], n_samples)
    sol = solve_ivp(
        rhs, t_span, [z0.real, z0.imag], method="RK45", rtol=tol, atol=tol * 1e-2,
        t_eval=t_eval, events=[origin, leave],
    )
    if sol.status == -1:
        raise ParameterError(f"integration failed: {sol.message}")
    status = STATUS_OK
    if sol.status == 1:
        hit_origin = len(sol.t_events[0]) > 0
        status = STATUS_REACHED_ORIGIN if hit_origin else STATUS_LEFT_DOMAIN
    states = sol.y[0] + 1j * sol.y[1]
    return FlowTrajectory(times=sol.t, states=states, status=status)


def trajectory_from_samples(times, states) -> FlowTrajectory:
    """Wrap externally computed (e.g. closed-form) samples as a trajectory."""
    times = np.asarray(times, dtype=float)
    states = np.asarray(states, dtype=complex)
    if np.any(np.diff(times) <= 0):
        raise ParameterError("times must be strictly increasing")
    return FlowTrajectory(times=times, states=states)


def log_p_diagnostic(germ: SmoothGerm, traj: FlowTrajectory):
    """u(t) = log|P(gamma(t))|/2 with a least-squares slope fit.

    Returns (u_values, (delta_hat, fit_residual, linear)).  Samples with
    |P| below the underflow floor are excluded from the fit; fewer than 10
    valid samples raises InsufficientDataError.
    """
    z = traj.z2_component()
    germ.check_inside(z)
    p = np.abs(np.asarray(germ(z), dtype=float))
    valid = p > UNDERFLOW_FLOOR
    u = np.full(len(z), np.nan)
    u[valid] = 0.5 * np.log(p[valid])
    if valid.sum() < 10:
        raise InsufficientDataError(
            f"only {int(valid.sum())} samples with |P| above the underflow floor"
        )
    t = traj.times[valid]
    uv = u[valid]
    A = np.column_stack([t, np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(A, uv, rcond=None)
    delta_hat = float(coef[0])
    resid = uv - A @ coef
    rms = float(np.sqrt(np.mean(resid**2)))
    u_range = float(uv.max() - uv.min())
    linear = rms <= 1e-8 + 1e-3 * u_range
    traj.u_values = u
    return u, (delta_hat, rms, linear)


def blowup_time_estimate(traj: FlowTrajectory, b: complex, l: int) -> float:
    """Closed-form remaining time to blow-up for gamma' = b gamma^l, l >= 2,
    appended to the last computed sample."""
    if l < 2:
        raise ParameterError("blow-up estimate requires l >= 2")
    g_end = complex(traj.final_state)
    remaining = abs(g_end) ** (1 - l) / ((l - 1) * abs(b))
    return float(traj.times[-1] + remaining)
