"""Periodic-driving machinery: one-period propagators, stroboscopic jumps,
doubling to the steady state, micromotion, time averaging, and detection of
the time needed to converge to the steady state.

For a generator with period T the propagator over [0, n T + t] factors as
U(t, 0) @ U(T, 0)^n, so a single resolved period plus cheap matrix powers
covers arbitrarily long horizons; repeated squaring of U(T, 0) reaches
exponentially long times.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import frobenius_norm
from .magnus import Generator, MagnusOrder, propagate
from .model import DIM, unvec, vec

PERIODICITY_TOL = 1e-12
MAX_PLAN_STEPS = 10 ** 6


class HorizonError(RuntimeError):
    """Steady-state search exhausted its horizon; carries the last delta."""

    def __init__(self, message: str, last_delta: float):
        super().__init__(message)
        self.last_delta = last_delta


@dataclass(frozen=True)
class PeriodicPlan:
    """One resolved drive period: length, step count, intra-period grid."""

    period: float
    steps_per_period: int
    micromotion_times: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.period <= 0:
            raise ValueError("period must be positive")
        if self.steps_per_period < 1:
            raise ValueError("steps_per_period must be >= 1")
        if self.micromotion_times is None:
            grid = np.linspace(0.0, self.period, self.steps_per_period + 1)
            object.__setattr__(self, "micromotion_times", grid)

    @property
    def dt(self) -> float:
        return self.period / self.steps_per_period


def make_plan(g: Generator, period: float, steps_per_period: int,
              validate: bool = True) -> PeriodicPlan:
    """Build a plan, checking that the generator really has the claimed
    period at 16 pseudo-random probe times."""
    plan = PeriodicPlan(period=period, steps_per_period=steps_per_period)
    if validate:
        rng = np.random.default_rng(1729)
        for t in rng.uniform(0.0, period, size=16):
            defect = np.max(np.abs(g(t + period) - g(t)))
            if defect > PERIODICITY_TOL * max(1.0, np.max(np.abs(g(t)))):
                raise ValueError(
                    f"generator is not {period}-periodic: defect {defect:.3e}"
                    f" at t={t:.6f}")
    return plan


def commensurate_period(omega_p: float, omega_c: float,
                        base_period: float = 2.0 * np.pi,
                        base_steps: int = 2 ** 13 - 1) -> tuple[float, int]:
    """Smallest period T = 2 pi q (integer q) commensurate with both drive
    frequencies, with the step count scaled to keep dt fixed.

    Raises ValueError if no such period exists below the step cap.
    """
    from fractions import Fraction

    q = 1
    for omega in (omega_p, omega_c):
        frac = Fraction(omega).limit_denominator(10 ** 4)
        if abs(float(frac) - omega) > 1e-9 * max(1.0, abs(omega)):
            raise ValueError(
                f"drive frequency {omega} is not commensurate with 2 pi "
                "to within 1e-9")
        q = np.lcm(q, frac.denominator)
    steps = int(q) * base_steps
    if steps > MAX_PLAN_STEPS:
        raise ValueError(
            f"commensurate period needs {steps} steps, above the cap "
            f"{MAX_PLAN_STEPS}")
    return float(q) * base_period, steps


def one_period(g: Generator, plan: PeriodicPlan,
               order: MagnusOrder = MagnusOrder.ORDER6
               ) -> tuple[np.ndarray, np.ndarray]:
    """Propagator over one period plus cumulative propagators at every
    intra-period grid point (identity first, the full U_T last)."""
    cumulative = propagate(g, 0.0, plan.period, plan.steps_per_period,
                           order=order, return_intermediate=True)
    micromotion = np.asarray(cumulative)
    return micromotion[-1], micromotion


def stroboscopic(u_period: np.ndarray, micromotion: np.ndarray,
                 n: int, k: int) -> np.ndarray:
    """Propagator to n full periods plus the k-th intra-period grid time:
    micromotion[k] @ u_period^n."""
    if n < 0:
        raise ValueError(f"period count must be non-negative, got {n}")
    if not 0 <= k < len(micromotion):
        raise IndexError(f"micromotion index {k} out of range "
                         f"[0, {len(micromotion)})")
    return micromotion[k] @ np.linalg.matrix_power(u_period, n)


def doubling(u_period: np.ndarray, m: int,
             fixed_functional: np.ndarray | None = None) -> np.ndarray:
    """u_period^(2^m) via m successive squarings.

    Repeated squaring doubles any rounding-level defect in a known left
    fixed functional (for trace-preserving maps, vec(identity)), which
    over ~20 squarings amplifies 1e-14 to 1e-8.  Passing the functional
    re-imposes w @ u = w after every squaring via a rank-1 correction at
    the rounding level, keeping the defect at machine precision
    throughout.
    """
    if m < 0:
        raise ValueError(f"doubling count must be non-negative, got {m}")
    u = u_period.copy()

    def reproject(mat):
        w = fixed_functional
        return mat - np.outer(w, (w.conj() @ mat - w.conj())) / (
            np.vdot(w, w))

    if fixed_functional is not None:
        u = reproject(u)
    for _ in range(m):
        u = u @ u
        if fixed_functional is not None:
            u = reproject(u)
    return u


def trace_functional(dim: int = DIM) -> np.ndarray:
    """The vectorized identity, whose left action on a superoperator
    reads off trace preservation."""
    return np.eye(dim, dtype=complex).reshape(dim * dim)


@dataclass
class Trajectory:
    """Time-stamped density-matrix series in a declared frame."""

    times: np.ndarray
    states: np.ndarray  # (len(times), 3, 3)
    frame: str = "lab"

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.states = np.asarray(self.states, dtype=complex)
        if self.times.ndim != 1 or np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly increasing")
        if self.states.shape != (len(self.times), DIM, DIM):
            raise ValueError(
                f"states shape {self.states.shape} does not match times")

    @property
    def populations(self) -> np.ndarray:
        return np.real(np.einsum("tii->ti", self.states))


def steady_state_average(traj: Trajectory, window: float) -> np.ndarray:
    """Trapezoid-rule time average of each matrix element over the final
    window of the trajectory; trace is renormalized when its drift is
    within rounding (<= 1e-9)."""
    t_end = traj.times[-1]
    mask = traj.times >= t_end - window - 1e-12 * max(1.0, abs(t_end))
    times = traj.times[mask]
    if len(times) < 2 or times[-1] - times[0] < window * (1.0 - 1e-9):
        raise ValueError(
            f"trajectory span {traj.times[-1] - traj.times[0]:.6g} does not "
            f"cover the averaging window {window:.6g}")
    dts = np.diff(times)
    if not np.allclose(dts, dts[0], rtol=1e-9, atol=0.0):
        raise ValueError("averaging requires uniform sampling")
    states = traj.states[mask]
    avg = np.trapezoid(states, x=times, axis=0) / (times[-1] - times[0])
    tr = np.trace(avg).real
    if abs(tr - 1.0) <= 1e-9:
        avg = avg / tr
    return avg


def _period_average(micromotion_stack: np.ndarray, v_start: np.ndarray,
                    period: float) -> np.ndarray:
    """Trapezoid average of the state over one period, starting from the
    vectorized state v_start at the period boundary."""
    states = micromotion_stack @ v_start  # (steps+1, 9)
    steps = len(states) - 1
    weights = np.full(len(states), 1.0 / steps)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return unvec(weights @ states)


def convergence_time(g: Generator, plan: PeriodicPlan, rho0: np.ndarray,
                     eps: float = 1e-6,
                     order: MagnusOrder = MagnusOrder.ORDER6,
                     max_periods: int = 2 ** 40,
                     precomputed: tuple[np.ndarray, np.ndarray] | None = None
                     ) -> float:
    """Smallest n T at which the period-averaged state moves by <= eps
    (Frobenius) from the previous period's average.

    The search doubles n until the criterion holds, then bisects; it
    assumes a dissipative generator (a steady state exists) and raises
    HorizonError, carrying the last observed delta, if max_periods is
    exhausted.
    """
    if g.dim != DIM * DIM:
        raise ValueError("convergence_time expects a Liouville-space generator")
    u_t, micromotion = (precomputed if precomputed is not None
                        else one_period(g, plan, order))
    v0 = vec(np.asarray(rho0, dtype=complex))
    cache: dict[int, np.ndarray] = {}

    def avg(n: int) -> np.ndarray:
        if n not in cache:
            w = np.linalg.matrix_power(u_t, n) @ v0
            cache[n] = _period_average(micromotion, w, plan.period)
        return cache[n]

    def delta(n: int) -> float:
        return frobenius_norm(avg(n) - avg(n - 1))

    if delta(1) <= eps:
        return plan.period

    n = 2
    while delta(n) > eps:
        if n > max_periods:
            raise HorizonError(
                f"no steady state within {n} periods (delta {delta(n):.3e})",
                last_delta=delta(n))
        n *= 2
    lo, hi = n // 2, n  # delta(lo) > eps >= delta(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if delta(mid) <= eps:
            hi = mid
        else:
            lo = mid
    return hi * plan.period
