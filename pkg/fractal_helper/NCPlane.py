"""
Noncommutative plane.

Quadratures follow x = (a + a^dagger)/sqrt2, p = (a - a^dagger)/(i sqrt2). The deformed
ladder z_q = (x + i q^2 p)/(q sqrt2) gives x1 = x, x2 = q^2 p with [x1, x2] = i q^2,
so squared radii x1^2 + x2^2 are quantized as 2 q^2 (n + 1/2). The L scheme is the
same with L in place of q, and the dissipative scheme has L^2 = 1/gamma.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .Fock import Fock, FockOperator
from .Helper import Helper, RunConfig
from .Spiral import MechanicalParams
from .errors import InvalidDimensionError, ParameterRangeError

MIN_LADDER_CUTOFF = 4
MIN_TWO_MODE_CUTOFF = 8
MIN_UNCERTAINTY_CUTOFF = 16
MAX_SPECTRUM_CUTOFF = 2048


@dataclass(frozen=True)
class NCParams:
    """
    Scale of the noncommutative plane.

    Attributes:
        L (Optional[float]): Geometric length scale.
        q (Optional[float]): Deformation parameter.
        gamma (Optional[float]): Damping for the dissipative scheme, L^2 = 1/gamma.
    """

    L: Optional[float] = None
    q: Optional[float] = None
    gamma: Optional[float] = None

    def __post_init__(self) -> None:
        if (self.L is None) == (self.q is None):
            msg = f"Exactly one of L and q must be set, got L={self.L}, q={self.q}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        scale = self.L if self.L is not None else self.q
        if not scale > 0:
            msg = f"Scale must be positive, got {scale}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        if self.gamma is not None:
            if self.L is None or not self.gamma > 0 or abs(self.L ** 2 - 1 / self.gamma) > 1e-12:
                msg = f"gamma needs the L scheme with L^2 = 1/gamma, got L={self.L}, gamma={self.gamma}"
                logging.error(msg)
                raise ParameterRangeError(msg)

    @classmethod
    def dissipative(cls, gamma: float) -> "NCParams":
        if not gamma > 0:
            msg = f"gamma must be positive, got {gamma}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return cls(L=1 / math.sqrt(gamma), gamma=gamma)

    @property
    def scale(self) -> float:
        """L or q, whichever is active"""
        return self.L if self.L is not None else self.q


class NCPlane(Helper):
    """
    Quantized radii, deformed ladder operators and their spectra, interference
    phases, velocity and xi commutators of the doubled system, the zero-point
    uncertainty bound and fractal-stage energies.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)
        self.Fock = Fock(self.config, data_dir)

    @staticmethod
    def quantized_radii(params: NCParams, n_max: int) -> List[float]:
        """
        Squared radii of the smallest disks.

        L scheme: L^2 (2n + 1). q scheme: 2 q^2 (n + 1/2).

        Args:
            params (NCParams): Active scale.
            n_max (int): Largest level, >= 0.

        Returns:
            List[float]: delta_n^2 for n = 0 ... n_max.
        """
        if n_max < 0:
            msg = f"n_max must be >= 0, got {n_max}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        n = np.arange(n_max + 1)
        if params.L is not None:
            radii = params.L ** 2 * (2 * n + 1)
        else:
            radii = 2 * params.q ** 2 * (n + 0.5)
        return [float(r) for r in radii]

    def quadratures(self, cutoff: int) -> Tuple[FockOperator, FockOperator]:
        """(x, p) built from the truncated ladder operators"""
        a = self.Fock.annihilation(cutoff)
        adag = a.dagger()
        return (a + adag) * (1 / math.sqrt(2)), (a - adag) * (1 / (1j * math.sqrt(2)))

    def deformed_ladder(self, q: float, cutoff: int) -> Tuple[FockOperator, FockOperator, FockOperator, FockOperator]:
        """
        Deformed ladder z_q = (x + i q^2 p)/(q sqrt2) and its coordinates.

        Args:
            q (float): Deformation, > 0.
            cutoff (int): Truncation, >= 4.

        Returns:
            Tuple[FockOperator, ...]: (z_q, z_q^dagger, x1, x2) with x1 = x and x2 = q^2 p.
        """
        if not q > 0:
            msg = f"q must be positive, got {q}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        cutoff = self._check_dimension(cutoff, MIN_LADDER_CUTOFF, "cutoff")

        x, p = self.quadratures(cutoff)
        x1, x2 = x, (q ** 2) * p
        z = (x1 + 1j * x2) * (1 / (q * math.sqrt(2)))
        return z, z.dagger(), x1, x2

    def ladder_contracts(self, q: float, cutoff: int) -> Dict[str, float]:
        """
        Interior-block deviations of [z_q, z_q^dagger] = 1 and [x1, x2] = i q^2.

        Returns:
            Dict[str, float]: "z_zdag" and "x1_x2".
        """
        z, zdag, x1, x2 = self.deformed_ladder(q, cutoff)
        keep = cutoff - self.config.margin
        eye = np.eye(keep)
        return {
            "z_zdag": float(np.max(np.abs(self.Fock.commutator(z, zdag).interior(keep) - eye))),
            "x1_x2": float(np.max(np.abs(self.Fock.commutator(x1, x2).interior(keep) - 1j * q ** 2 * eye))),
        }

    def radius_spectrum(self, q: float, cutoff: int) -> np.ndarray:
        """Ascending eigenvalues of x1^2 + x2^2 at the given cutoff"""
        _, _, x1, x2 = self.deformed_ladder(q, cutoff)
        radius = x1 @ x1 + x2 @ x2
        return np.linalg.eigvalsh(radius.matrix)

    def converged_spectrum(self, q: float, levels: int, cutoff: Optional[int] = None, rtol: float = 1e-10) -> Tuple[np.ndarray, int]:
        """
        Lowest eigenvalues of x1^2 + x2^2, doubling the cutoff until they stop moving.

        Truncating x and p separately mixes the scales 1 and q^4, so for q != 1 the
        low spectrum needs more levels than it holds.

        Args:
            q (float): Deformation.
            levels (int): Number of eigenvalues wanted.
            cutoff (Optional[int]): First cutoff tried. Defaults to config.cutoff.
            rtol (float): Relative change accepted between doublings.

        Returns:
            Tuple[np.ndarray, int]: (eigenvalues, cutoff at which they converged).

        Raises:
            InvalidDimensionError: If no cutoff up to 2048 converges.
        """
        cutoff = self.config.cutoff if cutoff is None else cutoff
        cutoff = max(self._check_dimension(cutoff, MIN_LADDER_CUTOFF, "cutoff"), 2 * levels)

        previous = self.radius_spectrum(q, cutoff)[:levels]
        while cutoff < MAX_SPECTRUM_CUTOFF:
            cutoff *= 2
            current = self.radius_spectrum(q, cutoff)[:levels]
            change = float(np.max(np.abs(current - previous) / np.abs(current)))
            logging.debug(f"Spectrum q={q} at cutoff {cutoff}: relative change {change:.3e}")
            if change < rtol:
                return current, cutoff
            previous = current

        msg = f"Spectrum for q={q} did not converge below cutoff {MAX_SPECTRUM_CUTOFF}"
        logging.error(msg)
        raise InvalidDimensionError(msg)

    def spectrum_deviation(self, q: float, cutoff: Optional[int] = None) -> float:
        """
        Largest relative deviation of the lowest cutoff//2 eigenvalues of x1^2 + x2^2
        from 2 q^2 (n + 1/2).
        """
        cutoff = self.config.cutoff if cutoff is None else cutoff
        levels = cutoff // 2
        eigenvalues, used = self.converged_spectrum(q, levels, cutoff)
        expected = 2 * q ** 2 * (np.arange(levels) + 0.5)

        deviation = float(np.max(np.abs(eigenvalues - expected) / expected))
        logging.info(f"Radius spectrum q={q}: {levels} levels at cutoff {used}, deviation {deviation:.3e}")
        return deviation

    @staticmethod
    def interference_phase(area: float, params: NCParams) -> float:
        """
        Phase between two paths enclosing area A: A/L^2, A/q^2, or A gamma in the
        dissipative scheme.

        Args:
            area (float): Enclosed area, >= 0; orientation is left to the caller.
            params (NCParams): Active scale.

        Returns:
            float: The phase.
        """
        if area < 0:
            msg = f"Area must be >= 0, got {area}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        if params.gamma is not None:
            return area * params.gamma
        return area / params.scale ** 2

    def velocity_xi_commutators(self, mech: MechanicalParams, cutoff: Optional[int] = None) -> Dict[str, complex]:
        """
        Two-mode commutators of the forward/backward velocities and of xi.

        z1, p_z1 act on the first factor and z2, p_z2 on the second, each a canonical
        quadrature pair. Then v+ = (p_z2 - gamma z1/2)/m, v- = (p_z1 + gamma z2/2)/m,
        xi+ = -(m/gamma) v+ and xi- = (m/gamma) v-.

        Args:
            mech (MechanicalParams): Oscillator parameters, gamma > 0.
            cutoff (Optional[int]): Per-mode cutoff, >= 8. Defaults to config.tensor_cutoff.

        Returns:
            Dict[str, complex]: Interior-block deviations "v" of [v+, v-] + i gamma/m^2
            and "xi" of [xi+, xi-] - i/gamma, plus the measured "xi_value".
        """
        if not mech.gamma > 0:
            msg = "xi needs gamma > 0"
            logging.error(msg)
            raise ParameterRangeError(msg)
        cutoff = self.config.tensor_cutoff if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_TWO_MODE_CUTOFF, "cutoff")

        x, p = self.quadratures(cutoff)
        eye = np.eye(cutoff)
        z1, p1 = FockOperator(np.kron(x.matrix, eye)), FockOperator(np.kron(p.matrix, eye))
        z2, p2 = FockOperator(np.kron(eye, x.matrix)), FockOperator(np.kron(eye, p.matrix))

        m, gamma = mech.m, mech.gamma
        v_plus = (p2 - (gamma / 2) * z1) * (1 / m)
        v_minus = (p1 + (gamma / 2) * z2) * (1 / m)
        xi_plus = (-m / gamma) * v_plus
        xi_minus = (m / gamma) * v_minus

        levels = np.arange(cutoff) < cutoff - self.config.margin
        mask = np.kron(levels, levels).astype(bool)
        block_eye = np.eye(int(mask.sum()))

        v_block = self._interior(self.Fock.commutator(v_plus, v_minus).matrix, mask)
        xi_block = self._interior(self.Fock.commutator(xi_plus, xi_minus).matrix, mask)

        result = {
            "v": float(np.max(np.abs(v_block + 1j * gamma / m ** 2 * block_eye))),
            "xi": float(np.max(np.abs(xi_block - 1j / gamma * block_eye))),
            "xi_value": complex(xi_block[0, 0]),
        }
        logging.debug(f"Velocity/xi commutators m={m} gamma={gamma}: {result}")
        return result

    def uncertainty_check(self, q: float, cutoff: Optional[int] = None, level: int = 0) -> Tuple[float, float]:
        """
        Delta x1 Delta x2 on an eigenstate of z_q^dagger z_q.

        Args:
            q (float): Deformation.
            cutoff (Optional[int]): Truncation, >= 16. Defaults to config.cutoff.
            level (int): Eigenstate index, 0 for the ground state.

        Returns:
            Tuple[float, float]: (product, bound q^2/2).
        """
        cutoff = self.config.cutoff if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_UNCERTAINTY_CUTOFF, "cutoff")
        if not 0 <= level < cutoff - self.config.margin:
            msg = f"Level {level} outside the interior of cutoff {cutoff}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        z, zdag, x1, x2 = self.deformed_ladder(q, cutoff)
        _, vectors = np.linalg.eigh((zdag @ z).matrix)
        psi = vectors[:, level]

        def spread(op: FockOperator) -> float:
            mean = np.vdot(psi, op.matrix @ psi).real
            square = np.vdot(psi, op.matrix @ (op.matrix @ psi)).real
            return math.sqrt(max(square - mean ** 2, 0.0))

        product = spread(x1) * spread(x2)
        bound = q ** 2 / 2
        logging.debug(f"Uncertainty q={q} level={level}: {product:.15g} (bound {bound:.15g})")
        return product, bound

    @staticmethod
    def fractal_energy(q: float, n: int) -> float:
        """E_n = q^2 (n + 1/2), half the squared radius of stage n"""
        if n < 0 or not q > 0:
            msg = f"Need n >= 0 and q > 0, got n={n}, q={q}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return q ** 2 * (n + 0.5)
