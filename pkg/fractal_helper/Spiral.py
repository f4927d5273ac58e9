"""
Logarithmic spiral and the doubled damped/amplified oscillator.

The direct spiral r = r0 e^(d theta) and its indirect twin r = r0 e^(-d theta),
parametrized by theta(t) = (Gamma/d) t, are the trajectories

    m z1'' + gamma z1' + kappa z1 = 0      (damped)
    m z2'' - gamma z2' + kappa z2 = 0      (amplified)

with Gamma = gamma/2m and Omega^2 = kappa/m - Gamma^2 = (Gamma/d)^2. Angles are
anti-clockwise positive; the additive constant in theta(t) is zero.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.stats import linregress

from .Helper import Helper, RunConfig
from .SelfSim import Polyline
from .errors import InvalidSampleError, ParameterRangeError

MIN_STENCIL_SAMPLES = 5
MIN_RK4_STEPS = 16


class Handedness(str, Enum):
    DIRECT = "direct"  # anti-clockwise, growing with theta
    INDIRECT = "indirect"

    @property
    def sign(self) -> int:
        return 1 if self is Handedness.DIRECT else -1


@dataclass(frozen=True)
class SpiralParams:
    """
    Logarithmic spiral r = r0 e^(+-d theta).

    Attributes:
        r0 (float): Radius at theta = 0, > 0.
        d (float): Slope of ln r against theta, != 0.
        handedness (Handedness): DIRECT uses +d, INDIRECT uses -d.
    """

    r0: float
    d: float
    handedness: Handedness = Handedness.DIRECT

    def __post_init__(self) -> None:
        if not self.r0 > 0 or self.d == 0:
            msg = f"Spiral needs r0 > 0 and d != 0, got r0={self.r0}, d={self.d}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        object.__setattr__(self, "handedness", Handedness(self.handedness))

    @property
    def exponent(self) -> float:
        """Effective slope of ln r against theta"""
        return self.handedness.sign * self.d

    def radius(self, theta):
        return self.r0 * np.exp(self.exponent * np.asarray(theta, dtype=float))


@dataclass(frozen=True)
class MechanicalParams:
    """
    Mass, damping and stiffness of the doubled oscillator.

    Attributes:
        m (float): Mass, > 0.
        gamma (float): Damping, >= 0.
        kappa (float): Stiffness, > gamma^2 / 4m.
        Gamma (float): gamma / 2m, derived.
        Omega (float): sqrt(kappa/m - Gamma^2), derived.
    """

    m: float
    gamma: float
    kappa: float
    Gamma: float = field(init=False)
    Omega: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.m > 0 or self.gamma < 0 or not self.kappa > self.gamma ** 2 / (4 * self.m):
            msg = (
                f"Need m > 0, gamma >= 0 and kappa > gamma^2/4m, "
                f"got m={self.m}, gamma={self.gamma}, kappa={self.kappa}"
            )
            logging.error(msg)
            raise ParameterRangeError(msg)

        Gamma = self.gamma / (2 * self.m)
        object.__setattr__(self, "Gamma", Gamma)
        object.__setattr__(self, "Omega", math.sqrt(self.kappa / self.m - Gamma ** 2))

    @classmethod
    def from_spiral(cls, d: float, m: float = 1.0, gamma: float = 1.0) -> "MechanicalParams":
        """Picks kappa so that Omega d = Gamma for the given spiral slope"""
        if d == 0:
            msg = "Spiral slope d must be nonzero"
            logging.error(msg)
            raise ParameterRangeError(msg)
        Gamma = gamma / (2 * m)
        return cls(m, gamma, m * (Gamma ** 2 + (Gamma / d) ** 2))

    @property
    def d(self) -> float:
        """Spiral slope bound to these parameters, Gamma / Omega"""
        return self.Gamma / self.Omega


@dataclass(frozen=True)
class Trajectory:
    """
    Sampled (z1, z2) path, optionally with velocities and canonical momenta.

    Attributes:
        times (np.ndarray): Strictly increasing sample times.
        z1 (np.ndarray): Damped coordinate.
        z2 (np.ndarray): Amplified coordinate.
        v1, v2 (Optional[np.ndarray]): Velocities, when integrated.
        p1, p2 (Optional[np.ndarray]): Canonical momenta p_z1 = m z2' - gamma z2/2, p_z2 = m z1' + gamma z1/2.
    """

    times: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    v1: Optional[np.ndarray] = None
    v2: Optional[np.ndarray] = None
    p1: Optional[np.ndarray] = None
    p2: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        if not (len(times) == len(self.z1) == len(self.z2)):
            msg = "Trajectory arrays must have equal lengths"
            logging.error(msg)
            raise InvalidSampleError(msg)
        if np.any(np.diff(times) <= 0):
            msg = "Trajectory times must be strictly increasing"
            logging.error(msg)
            raise InvalidSampleError(msg)
        object.__setattr__(self, "times", times)

    @property
    def step(self) -> float:
        """Uniform sample spacing"""
        steps = np.diff(self.times)
        if not np.allclose(steps, steps[0], rtol=1e-9, atol=0):
            msg = "Finite differences need uniformly spaced samples"
            logging.error(msg)
            raise InvalidSampleError(msg)
        return float(steps[0])


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r_squared: float
    degenerate: bool = False


def central_derivatives(values: np.ndarray, h: float) -> Tuple[np.ndarray, np.ndarray]:
    # Fourth-order central stencils, endpoints dropped
    f = np.asarray(values)
    first = (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)
    second = (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12 * h ** 2)
    return first, second


class Spiral(Helper):
    """
    Logarithmic spiral geometry, the doubled classical oscillator with analytic and
    RK4 trajectories, finite-difference residual checks and log-log slope fitting.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)

    @staticmethod
    def spiral_point(params: SpiralParams, theta: float) -> Tuple[float, float]:
        """
        Point (r cos theta, r sin theta) with r = r0 e^(+-d theta).

        Args:
            params (SpiralParams): Spiral description.
            theta (float): Polar angle, anti-clockwise positive.

        Returns:
            Tuple[float, float]: Cartesian point.
        """
        r = float(params.radius(theta))
        return r * math.cos(theta), r * math.sin(theta)

    def spiral_polyline(self, params: SpiralParams, theta_max: float, samples: int, theta_min: float = 0.0) -> Polyline:
        """
        Samples the spiral on a uniform theta grid.

        Args:
            params (SpiralParams): Spiral description.
            theta_max (float): Last angle.
            samples (int): Number of points, >= 2.
            theta_min (float): First angle.

        Returns:
            Polyline: The sampled curve.
        """
        if samples < 2 or not theta_max > theta_min:
            msg = f"Need samples >= 2 and theta_max > theta_min, got {samples}, [{theta_min}, {theta_max}]"
            logging.error(msg)
            raise ParameterRangeError(msg)

        logging.info(f"Sampling {params.handedness.value} spiral d={params.d} with {samples} points")
        theta = np.linspace(theta_min, theta_max, samples)
        r = params.radius(theta)
        return Polyline(np.column_stack([r * np.cos(theta), r * np.sin(theta)]))

    @staticmethod
    def theta_of_t(mech: MechanicalParams, d: float, t):
        """
        Spiral angle theta(t) = (Gamma/d) t.

        Args:
            mech (MechanicalParams): Oscillator parameters.
            d (float): Spiral slope, != 0.
            t (float | np.ndarray): Time(s).

        Returns:
            float | np.ndarray: theta(t).
        """
        if d == 0:
            msg = "theta(t) needs a nonzero slope d"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return mech.Gamma / d * np.asarray(t, dtype=float) if np.ndim(t) else mech.Gamma / d * t

    @staticmethod
    def period(mech: MechanicalParams, d: float) -> float:
        """T = 2 pi d / Gamma, the time of one full turn"""
        return 2 * math.pi * d / mech.Gamma

    @staticmethod
    def angular_velocity(mech: MechanicalParams, d: float) -> float:
        """|d theta / dt| = |Gamma / d|"""
        return abs(mech.Gamma / d)

    @staticmethod
    def analytic_trajectory(mech: MechanicalParams, r0: float, times: Sequence[float]) -> Trajectory:
        """
        Closed-form solutions z1 = r0 e^(-i Omega t) e^(-Gamma t), z2 = r0 e^(i Omega t) e^(Gamma t).

        Args:
            mech (MechanicalParams): Oscillator parameters.
            r0 (float): Common starting radius.
            times (Sequence[float]): Sample times.

        Returns:
            Trajectory: Positions, velocities and canonical momenta.
        """
        t = np.asarray(times, dtype=float)
        lam1 = -mech.Gamma - 1j * mech.Omega
        lam2 = mech.Gamma + 1j * mech.Omega

        z1 = r0 * np.exp(lam1 * t)
        z2 = r0 * np.exp(lam2 * t)
        v1, v2 = lam1 * z1, lam2 * z2
        return Trajectory(
            t, z1, z2, v1, v2,
            p1=mech.m * v2 - mech.gamma * z2 / 2,
            p2=mech.m * v1 + mech.gamma * z1 / 2,
        )

    def ode_residual(self, mech: MechanicalParams, traj: Trajectory) -> Tuple[np.ndarray, np.ndarray]:
        """
        Residuals |m z1'' + gamma z1' + kappa z1| and |m z2'' - gamma z2' + kappa z2|
        from fourth-order central differences.

        Args:
            mech (MechanicalParams): Oscillator parameters.
            traj (Trajectory): Uniformly sampled trajectory, >= 5 samples.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Residuals at the interior samples.

        Raises:
            InvalidSampleError: With fewer than 5 samples or a non-uniform grid.
        """
        self._check_samples(len(traj.times))
        h = traj.step

        d1, dd1 = central_derivatives(traj.z1, h)
        d2, dd2 = central_derivatives(traj.z2, h)
        r1 = np.abs(mech.m * dd1 + mech.gamma * d1 + mech.kappa * traj.z1[2:-2])
        r2 = np.abs(mech.m * dd2 - mech.gamma * d2 + mech.kappa * traj.z2[2:-2])

        logging.debug(f"ODE residual h={h:.3g}: max {r1.max():.3e} / {r2.max():.3e}")
        return r1, r2

    def rho_residual(self, mech: MechanicalParams, d: float, times: Sequence[float], r0: float = 1.0) -> np.ndarray:
        """
        Residual of m rho'' + K rho = 0, K = m Omega^2, for rho_+- = r0 e^(+-i theta(t)).

        A slope d with Omega d != Gamma makes the residual grow, which is how the
        relation Omega = Gamma/d is confirmed.

        Args:
            mech (MechanicalParams): Oscillator parameters.
            d (float): Spiral slope used in theta(t).
            times (Sequence[float]): Uniform sample times, >= 5.
            r0 (float): Amplitude.

        Returns:
            np.ndarray: max of the rho_+ and rho_- residuals at interior samples.
        """
        t = np.asarray(times, dtype=float)
        self._check_samples(len(t))
        h = Trajectory(t, t, t).step

        theta = self.theta_of_t(mech, d, t)
        K = mech.m * mech.Omega ** 2
        residuals = []
        for sign in (1, -1):
            rho = r0 * np.exp(sign * 1j * theta)
            _, second = central_derivatives(rho, h)
            residuals.append(np.abs(mech.m * second + K * rho[2:-2]))
        return np.maximum(*residuals)

    def integrate_doubled_system(
        self,
        mech: MechanicalParams,
        z1_0: complex,
        z2_0: complex,
        v1_0: complex,
        v2_0: complex,
        t_end: float,
        steps: int,
    ) -> Trajectory:
        """
        Classical fixed-step RK4 integration of the doubled oscillator.

        Args:
            mech (MechanicalParams): Oscillator parameters.
            z1_0, z2_0 (complex): Initial positions.
            v1_0, v2_0 (complex): Initial velocities.
            t_end (float): Final time, > 0.
            steps (int): Number of steps, >= 16.

        Returns:
            Trajectory: steps + 1 samples with velocities and canonical momenta.
        """
        if steps < MIN_RK4_STEPS or not t_end > 0:
            msg = f"Need steps >= {MIN_RK4_STEPS} and t_end > 0, got steps={steps}, t_end={t_end}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        m, gamma, kappa = mech.m, mech.gamma, mech.kappa

        def rhs(y: np.ndarray) -> np.ndarray:
            z1, v1, z2, v2 = y
            return np.array([v1, -(gamma * v1 + kappa * z1) / m, v2, (gamma * v2 - kappa * z2) / m])

        h = t_end / steps
        states = np.empty((steps + 1, 4), dtype=complex)
        states[0] = (z1_0, v1_0, z2_0, v2_0)

        logging.info(f"Integrating doubled oscillator to t={t_end} in {steps} RK4 steps")
        for i in range(steps):
            y = states[i]
            k1 = rhs(y)
            k2 = rhs(y + h / 2 * k1)
            k3 = rhs(y + h / 2 * k2)
            k4 = rhs(y + h * k3)
            states[i + 1] = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

        z1, v1, z2, v2 = states.T
        return Trajectory(
            np.linspace(0.0, t_end, steps + 1), z1, z2, v1, v2,
            p1=m * v2 - gamma * z2 / 2,
            p2=m * v1 + gamma * z1 / 2,
        )

    def euler_lagrange_residual(self, mech: MechanicalParams, traj: Trajectory) -> Tuple[np.ndarray, np.ndarray]:
        """
        Checks p_z1' = dL/dz1 and p_z2' = dL/dz2 for
        L = m z1' z2' + gamma/2 (z1 z2' - z1' z2) - kappa z1 z2.

        Args:
            mech (MechanicalParams): Oscillator parameters.
            traj (Trajectory): Trajectory carrying velocities and momenta.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Residuals at interior samples.
        """
        if traj.p1 is None or traj.v1 is None:
            msg = "Euler-Lagrange check needs velocities and momenta"
            logging.error(msg)
            raise InvalidSampleError(msg)
        self._check_samples(len(traj.times))
        h = traj.step

        dp1, _ = central_derivatives(traj.p1, h)
        dp2, _ = central_derivatives(traj.p2, h)
        inner = slice(2, -2)
        dL_dz1 = mech.gamma / 2 * traj.v2[inner] - mech.kappa * traj.z2[inner]
        dL_dz2 = -mech.gamma / 2 * traj.v1[inner] - mech.kappa * traj.z1[inner]
        return np.abs(dp1 - dL_dz1), np.abs(dp2 - dL_dz2)

    @staticmethod
    def fit_loglog_slope(samples: Sequence[Tuple[float, float]]) -> SlopeFit:
        """
        Least-squares fit of ln r = d theta + ln r0.

        A constant radius gives slope 0 with a perfect fit; it is flagged as
        degenerate rather than as a poor fit.

        Args:
            samples (Sequence[Tuple[float, float]]): (theta, r) pairs, >= 3, r > 0.

        Returns:
            SlopeFit: slope d, intercept ln r0, coefficient of determination.

        Raises:
            InvalidSampleError: With fewer than 3 samples, a nonpositive radius or no spread in theta.
        """
        data = np.asarray(samples, dtype=float)
        if data.ndim != 2 or data.shape[1] != 2 or len(data) < 3:
            msg = f"Need at least 3 (theta, r) samples, got shape {data.shape}"
            logging.error(msg)
            raise InvalidSampleError(msg)

        theta, r = data.T
        if np.any(~np.isfinite(data)) or np.any(r <= 0):
            msg = "Radii must be finite and positive"
            logging.error(msg)
            raise InvalidSampleError(msg)

        log_r = np.log(r)
        if np.ptp(log_r) == 0:
            return SlopeFit(0.0, float(log_r[0]), 1.0, degenerate=True)

        if np.ptp(theta) == 0:
            msg = f"All samples share theta = {theta[0]}, the slope is undefined"
            logging.error(msg)
            raise InvalidSampleError(msg)

        fit = linregress(theta, log_r)
        residual = log_r - (fit.slope * theta + fit.intercept)
        ss_tot = float(np.sum((log_r - log_r.mean()) ** 2))
        r_squared = 1.0 - float(np.sum(residual ** 2)) / ss_tot

        logging.debug(f"Log-log fit: slope={fit.slope:.12g} intercept={fit.intercept:.12g} R^2={r_squared:.15f}")
        return SlopeFit(float(fit.slope), float(fit.intercept), r_squared)

    @staticmethod
    def _check_samples(count: int) -> None:
        if count < MIN_STENCIL_SAMPLES:
            msg = f"Need at least {MIN_STENCIL_SAMPLES} samples, got {count}"
            logging.error(msg)
            raise InvalidSampleError(msg)
