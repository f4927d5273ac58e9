"""
Golden spiral, Fibonacci progression and the quarter-circle Fibonacci tiling spiral.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .Helper import Helper, RunConfig
from .SelfSim import Polyline
from .Spiral import Spiral, SpiralParams, central_derivatives
from .errors import InvalidSampleError, ParameterRangeError

MAX_FIBONACCI = 92  # F_93 overflows a signed 64-bit integer
RECURRENCE_ORDERS = 20


@dataclass(frozen=True)
class GoldenConstants:
    """
    Attributes:
        phi (float): Golden ratio (1 + sqrt5)/2.
        psi (float): Conjugate root 1 - phi = -1/phi.
        d_g (float): Golden slope ln(phi)/(pi/2), one factor phi per quarter turn.
    """

    phi: float = (1 + math.sqrt(5)) / 2
    psi: float = field(init=False)
    d_g: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "psi", 1 - self.phi)
        object.__setattr__(self, "d_g", math.log(self.phi) / (math.pi / 2))


GOLDEN = GoldenConstants()


@dataclass(frozen=True)
class TileArc:
    """
    One quarter-circle of the Fibonacci tiling.

    Attributes:
        index (int): Arc number k, from 1.
        center (Tuple[float, float]): Centre of the arc (a corner of its square).
        radius (float): F_k * unit, the side of its square.
        start_angle (float): Polar angle about the centre where the arc begins.
    """

    index: int
    center: Tuple[float, float]
    radius: float
    start_angle: float

    @property
    def end_angle(self) -> float:
        return self.start_angle + math.pi / 2

    def sample(self, samples: int) -> np.ndarray:
        angles = np.linspace(self.start_angle, self.end_angle, samples)
        return np.column_stack([
            self.center[0] + self.radius * np.cos(angles),
            self.center[1] + self.radius * np.sin(angles),
        ])


class Golden(Helper):
    """
    Golden spiral parameters, Fibonacci numbers, the Fibonacci tiling spiral and
    its deviation from the golden spiral, and the quadratic/ODE checks behind phi and psi.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)
        self.Spiral = Spiral(self.config, data_dir)
        self.constants = GOLDEN

    def golden_radius(self, r0: float, theta: float) -> float:
        """r0 e^(d_g theta)"""
        return float(SpiralParams(r0, self.constants.d_g).radius(theta))

    def quarter_turn_progression(self, r0: float, n: int) -> float:
        """
        Radius after n quarter turns, r0 phi^n.

        Args:
            r0 (float): Starting radius, > 0.
            n (int): Number of quarter turns.

        Returns:
            float: r0 phi^n.
        """
        if not r0 > 0:
            msg = f"r0 must be positive, got {r0}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return r0 * self.constants.phi ** n

    @staticmethod
    def fibonacci(n: int) -> int:
        """
        F_n with F_0 = 0, F_1 = 1.

        Args:
            n (int): Index, 0 <= n <= 92.

        Returns:
            int: F_n.

        Raises:
            ParameterRangeError: Outside [0, 92].
        """
        if int(n) != n or not 0 <= n <= MAX_FIBONACCI:
            msg = f"Fibonacci index must be in [0, {MAX_FIBONACCI}], got {n}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        previous, current = 0, 1
        for _ in range(int(n)):
            previous, current = current, previous + current
        return previous

    def ratio_convergence(self, n: int) -> float:
        """F_n / F_(n-1), n >= 2"""
        if n < 2:
            msg = f"Ratio needs n >= 2, got {n}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return self.fibonacci(n) / self.fibonacci(n - 1)

    def fibonacci_tiling(self, n_arcs: int, unit: float = 1.0) -> List[TileArc]:
        """
        Lays out the squares of sides F_1 ... F_n anti-clockwise and returns the
        quarter-circle drawn in each.

        Arc k sweeps [beta_(k-1), beta_(k-1) + pi/2] with beta_k = k pi/2. The next
        centre moves along the shared radius, c_(k+1) = c_k + (R_k - R_(k+1)) u(beta_k),
        so consecutive arcs meet with a common tangent.

        Args:
            n_arcs (int): Number of arcs, 2 <= n_arcs <= 92.
            unit (float): Length of the smallest square side.

        Returns:
            List[TileArc]: The arcs in drawing order.
        """
        if not 2 <= n_arcs <= MAX_FIBONACCI or not unit > 0:
            msg = f"Need 2 <= n_arcs <= {MAX_FIBONACCI} and unit > 0, got {n_arcs}, {unit}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        arcs = []
        center = np.zeros(2)
        for k in range(1, n_arcs + 1):
            radius = self.fibonacci(k) * unit
            start = (k - 1) * math.pi / 2
            arcs.append(TileArc(k, (float(center[0]), float(center[1])), radius, start))

            end = start + math.pi / 2
            next_radius = self.fibonacci(k + 1) * unit
            center = center + (radius - next_radius) * np.array([math.cos(end), math.sin(end)])

        return arcs

    def fibonacci_spiral(self, n_arcs: int, unit: float = 1.0, samples_per_arc: int = 32) -> Polyline:
        """
        Samples the Fibonacci tiling spiral.

        Args:
            n_arcs (int): Number of quarter-circle arcs.
            unit (float): Smallest square side.
            samples_per_arc (int): Points per arc, >= 2.

        Returns:
            Polyline: Continuous curve through every arc, junction points kept once.
        """
        if samples_per_arc < 2:
            msg = f"samples_per_arc must be >= 2, got {samples_per_arc}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        logging.info(f"Building Fibonacci spiral with {n_arcs} arcs, unit {unit}")
        arcs = self.fibonacci_tiling(n_arcs, unit)
        pieces = [arcs[0].sample(samples_per_arc)]
        pieces.extend(arc.sample(samples_per_arc)[1:] for arc in arcs[1:])
        return Polyline(np.vstack(pieces))

    def spiral_eye(self, unit: float = 1.0) -> complex:
        """
        Pole of the golden spiral the tiling settles onto, (0.4, 0.2) unit for this layout.

        With Binet's form of F_k the arc junctions split into a phi part, which lies on
        a golden spiral about this point, and a psi part that dies out.
        """
        phi, psi = self.constants.phi, self.constants.psi
        return unit * 1j / math.sqrt(5) * (1 / (1 - 1j * psi) - 1 / (1 - 1j * phi))

    def ratio_mismatch(self, n: int) -> float:
        """|F_n/F_(n-1) - phi| / phi, strictly decreasing in n until it reaches float resolution"""
        phi = self.constants.phi
        return abs(self.ratio_convergence(n) - phi) / phi

    def golden_deviation(self, n_arcs: int, samples_per_arc: int = 32) -> float:
        """
        Largest relative radius mismatch between the outermost quarter turn of the
        Fibonacci spiral and the golden spiral, at matched angles about the spiral eye.

        The golden spiral is the phi part of the junction points, passing through
        phi^(n-2) G with G = i(phi + 1/(1 - i phi))/sqrt5 where arc n starts. As n_arcs grows the psi part
        fades and the mismatch settles onto the gap between a quarter circle and a
        logarithmic spiral, about 1%, which never closes.

        Args:
            n_arcs (int): Number of arcs, 2 <= n_arcs <= 92.
            samples_per_arc (int): Points compared on the outermost arc.

        Returns:
            float: max |rho - r_golden| / r_golden over the outermost arc.
        """
        if not 2 <= n_arcs <= MAX_FIBONACCI:
            msg = f"Need 2 <= n_arcs <= {MAX_FIBONACCI}, got {n_arcs}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        phi = self.constants.phi
        eye = self.spiral_eye()
        # Golden counterpart of the junction where arc n_arcs starts
        growth = 1j * (phi + 1 / (1 - 1j * phi)) / math.sqrt(5)
        start = growth * (1j * phi) ** (n_arcs - 2)

        points = self.fibonacci_spiral(n_arcs, 1.0, samples_per_arc).points[-samples_per_arc:]
        offset = points[:, 0] + 1j * points[:, 1] - eye

        turn = np.angle(offset / start)
        golden = SpiralParams(abs(start), self.constants.d_g).radius(turn)
        mismatch = np.abs(np.abs(offset) - golden) / golden

        deviation = float(mismatch.max())
        logging.debug(f"Golden deviation over arc {n_arcs}: {deviation:.6e}")
        return deviation

    def golden_polyline(self, r0: float = 1.0, turns: float = 2.0, samples: int = 400) -> Polyline:
        """Golden spiral over the given number of full turns"""
        params = SpiralParams(r0, self.constants.d_g)
        return self.Spiral.spiral_polyline(params, 2 * math.pi * turns, samples)

    def quadratic_and_recurrence_check(self) -> Dict[str, float]:
        """
        Residuals of phi^2 - phi - 1, psi^2 - psi - 1 and, scaled by phi^-n, of
        phi^n - phi^(n-1) - phi^(n-2) for 2 <= n <= 20.

        Returns:
            Dict[str, float]: phi_quadratic, psi_quadratic, recurrence (largest over n).
        """
        phi, psi = self.constants.phi, self.constants.psi
        n = np.arange(2, RECURRENCE_ORDERS + 1)
        recurrence = np.abs(phi ** n - phi ** (n - 1) - phi ** (n - 2)) / phi ** n

        return {
            "phi_quadratic": abs(phi ** 2 - phi - 1),
            "psi_quadratic": abs(psi ** 2 - psi - 1),
            "recurrence": float(recurrence.max()),
        }

    def ode_check(self, times: Sequence[float], r0: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
        """
        Finite-difference residual of r'' + r' - r for r_phi = r0 e^(-phi t) and
        r_psi = r0 e^(-psi t).

        Args:
            times (Sequence[float]): At least 5 uniformly spaced times.
            r0 (float): Amplitude.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Residuals at interior samples.
        """
        t = np.asarray(times, dtype=float)
        steps = np.diff(t)
        if len(t) < 5 or not np.allclose(steps, steps[0], rtol=1e-9, atol=0) or steps[0] <= 0:
            msg = "ODE check needs at least 5 uniformly increasing times"
            logging.error(msg)
            raise InvalidSampleError(msg)

        residuals = []
        for root in (self.constants.phi, self.constants.psi):
            r = r0 * np.exp(-root * t)
            first, second = central_derivatives(r, steps[0])
            residuals.append(np.abs(second + first - r[2:-2]))
        return residuals[0], residuals[1]

    def psi_branch_grows(self, times: Sequence[float], r0: float = 1.0) -> bool:
        """True when r_psi = r0 e^(-psi t) is strictly increasing, as psi < 0 requires"""
        r = r0 * np.exp(-self.constants.psi * np.asarray(times, dtype=float))
        return bool(np.all(np.diff(r) > 0))
