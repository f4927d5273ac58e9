"""
Truncated single-mode Fock space.

States and operators live on the number basis |0>, ..., |dim-1> with hbar = 1.
Truncation is the only approximation made here, so every state carries the
analytic probability mass that was cut off (tail_mass).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln
from scipy.stats import poisson

from .Helper import Helper, RunConfig
from .errors import CutoffTooSmallError, DimensionMismatchError, ParameterRangeError

SQUEEZE_LIMIT = 5.0


@dataclass(frozen=True)
class QDeformation:
    """
    Deformation parameter q = e^zeta.

    Attributes:
        q (float): Positive deformation parameter.
        zeta (float): Squeezing parameter ln q, always derived from q.
    """

    q: float
    zeta: float = field(init=False)

    def __post_init__(self) -> None:
        if not self.q > 0:
            msg = f"q must be positive, got {self.q}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "zeta", math.log(self.q))

    @classmethod
    def from_zeta(cls, zeta: float) -> "QDeformation":
        return cls(math.exp(zeta))


QLike = Union[QDeformation, float]


def as_deformation(q: QLike) -> QDeformation:
    return q if isinstance(q, QDeformation) else QDeformation(q)


@dataclass(frozen=True)
class FockOperator:
    """
    Dense operator on a truncated number basis.

    Attributes:
        matrix (np.ndarray): dim x dim complex matrix, read-only.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            msg = f"Operator matrix must be square, got shape {matrix.shape}"
            logging.error(msg)
            raise DimensionMismatchError(msg)
        Helper._check_dimension(matrix.shape[0])
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "FockOperator":
        return FockOperator(self.matrix.conj().T)

    def interior(self, keep: int) -> np.ndarray:
        """Leading keep x keep block, where truncation has not touched the algebra"""
        return Helper._interior(self.matrix, keep)

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            _match(self.dim, other.dim)
            return FockOperator(self.matrix @ other.matrix)
        if isinstance(other, FockState):
            _match(self.dim, other.dim)
            return FockState(self.matrix @ other.amplitudes)
        return NotImplemented

    def __add__(self, other: "FockOperator") -> "FockOperator":
        _match(self.dim, other.dim)
        return FockOperator(self.matrix + other.matrix)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        _match(self.dim, other.dim)
        return FockOperator(self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "FockOperator":
        return FockOperator(scalar * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "FockOperator":
        return FockOperator(-self.matrix)


@dataclass(frozen=True)
class FockState:
    """
    Amplitude vector on a truncated number basis.

    Attributes:
        amplitudes (np.ndarray): Complex amplitudes, read-only.
        tail_mass (float): Analytic probability beyond the cutoff, 0 when unknown or exact.
    """

    amplitudes: np.ndarray
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex)
        if amplitudes.ndim != 1:
            msg = f"State must be a vector, got shape {amplitudes.shape}"
            logging.error(msg)
            raise DimensionMismatchError(msg)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "FockState":
        return FockState(self.amplitudes / self.norm)

    def overlap(self, other: "FockState") -> complex:
        """<self|other>"""
        _match(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def _match(left: int, right: int) -> None:
    if left != right:
        msg = f"Dimension mismatch: {left} vs {right}"
        logging.error(msg)
        raise DimensionMismatchError(msg)


class Fock(Helper):
    """
    Single-mode truncated Fock space engine: ladder operators, coherent states,
    the fractal operator q^N, squeezing and commutator/expectation utilities.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)

    def annihilation(self, dim: int) -> FockOperator:
        """
        Annihilation operator, a|n> = sqrt(n)|n-1>.

        Args:
            dim (int): Cutoff, >= 2.

        Returns:
            FockOperator: The tridiagonal ladder matrix.

        Raises:
            InvalidDimensionError: If dim < 2.
        """
        dim = self._check_dimension(dim)
        return FockOperator(np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1))

    def creation(self, dim: int) -> FockOperator:
        return self.annihilation(dim).dagger()

    def number(self, dim: int) -> FockOperator:
        """N = a^dagger a as a matrix product"""
        return self.creation(dim) @ self.annihilation(dim)

    def identity(self, dim: int) -> FockOperator:
        return FockOperator(np.eye(self._check_dimension(dim)))

    def basis_state(self, n: int, dim: int) -> FockState:
        dim = self._check_dimension(dim)
        if not 0 <= n < dim:
            msg = f"Level {n} outside cutoff {dim}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        amplitudes = np.zeros(dim, dtype=complex)
        amplitudes[n] = 1.0
        return FockState(amplitudes)

    @staticmethod
    def tail_mass(mean: float, dim: int) -> float:
        """
        Poisson probability of finding dim or more quanta.

        Args:
            mean (float): Mean photon number |alpha|^2.
            dim (int): Cutoff.

        Returns:
            float: P(N >= dim).
        """
        if mean == 0:
            return 0.0
        return float(poisson.sf(dim - 1, mean))

    @classmethod
    def required_cutoff(cls, mean: float, tolerance: float) -> int:
        """Smallest cutoff whose Poisson tail does not exceed tolerance"""
        dim = 2
        while cls.tail_mass(mean, dim) > tolerance:
            dim += 1
        return dim

    def coherent_state(self, alpha: complex, dim: int, tolerance: Optional[float] = None) -> FockState:
        """
        Coherent state exp(-|alpha|^2/2) sum alpha^n/sqrt(n!) |n>.

        Args:
            alpha (complex): Coherent amplitude.
            dim (int): Cutoff.
            tolerance (Optional[float]): Largest allowed tail mass. Defaults to config.tail_tolerance.

        Returns:
            FockState: The truncated state with its analytic tail mass.

        Raises:
            CutoffTooSmallError: If the tail beyond dim exceeds the tolerance.
        """
        dim = self._check_dimension(dim)
        tolerance = self.config.tail_tolerance if tolerance is None else tolerance
        alpha = complex(alpha)
        mean = abs(alpha) ** 2

        tail = self.tail_mass(mean, dim)
        if tail > tolerance:
            required = self.required_cutoff(mean, tolerance)
            msg = f"Cutoff {dim} too small for |alpha|^2 = {mean:.6g} (tail {tail:.3e}), need {required}"
            logging.error(msg)
            raise CutoffTooSmallError(msg, required)

        amplitudes = np.zeros(dim, dtype=complex)
        if alpha == 0:
            amplitudes[0] = 1.0
        else:
            n = np.arange(dim)
            log_magnitude = -mean / 2 + n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1)
            amplitudes = np.exp(log_magnitude) * np.exp(1j * n * np.angle(alpha))

        logging.debug(f"Coherent state alpha={alpha} dim={dim} tail={tail:.3e}")
        return FockState(amplitudes, tail_mass=tail)

    def eigen_residual(self, alpha: complex, dim: int) -> float:
        """
        ||(a - alpha)|alpha>|| on the leading dim-1 levels, where a|alpha> is not
        touched by the cutoff.

        Args:
            alpha (complex): Coherent amplitude.
            dim (int): Cutoff.

        Returns:
            float: Norm of the eigenvalue defect.
        """
        state = self.coherent_state(alpha, dim)
        lowered = self.annihilation(dim) @ state
        defect = lowered.amplitudes[:-1] - complex(alpha) * state.amplitudes[:-1]
        return float(np.linalg.norm(defect))

    def fractal_operator(self, q: QLike, dim: int) -> FockOperator:
        """
        The fractal operator q^N, diagonal with entries q^n.

        Args:
            q (QDeformation | float): Deformation parameter.
            dim (int): Cutoff.

        Returns:
            FockOperator: diag(q^0, ..., q^(dim-1)).
        """
        q = as_deformation(q)
        dim = self._check_dimension(dim)
        return FockOperator(np.diag(q.q ** np.arange(dim, dtype=float)))

    def fractal_action(self, q: QLike, alpha: complex, dim: int) -> Tuple[float, float, float]:
        """
        Applies q^N to |alpha> and compares with |q alpha>.

        q^N is not unitary, so q^N|alpha> equals |q alpha> only up to the scalar
        exp((|q alpha|^2 - |alpha|^2)/2). Both the normalized overlap and the
        scalar are returned.

        Args:
            q (QDeformation | float): Deformation parameter.
            alpha (complex): Coherent amplitude of the input state.
            dim (int): Cutoff.

        Returns:
            Tuple[float, float, float]: (|<q alpha|normalized q^N alpha>|, measured scale, analytic scale).
        """
        q = as_deformation(q)
        source = self.coherent_state(alpha, dim)
        target = self.coherent_state(q.q * alpha, dim)
        mapped = self.fractal_operator(q, dim) @ source

        overlap = abs(target.overlap(mapped.normalized()))
        measured = mapped.norm / target.norm
        analytic = math.exp((abs(q.q * alpha) ** 2 - abs(alpha) ** 2) / 2)

        logging.debug(f"q^N|alpha>: overlap={overlap:.15f} scale={measured:.12g} (analytic {analytic:.12g})")
        return overlap, measured, analytic

    def magnifying_lens(self, q: QLike, alpha: complex, n: int, dim: int) -> complex:
        """
        Computes <q alpha| a^n |q alpha>, which equals (q alpha)^n.

        Args:
            q (QDeformation | float): Deformation parameter.
            alpha (complex): Coherent amplitude before deformation.
            n (int): Power of the annihilation operator, >= 0.
            dim (int): Cutoff.

        Returns:
            complex: The expectation value.

        Raises:
            CutoffTooSmallError: If the state does not fit after n ladder steps.
        """
        if n < 0:
            msg = f"n must be non-negative, got {n}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        q = as_deformation(q)
        label = q.q * complex(alpha)
        dim = self._check_dimension(dim)

        tail = self.tail_mass(abs(label) ** 2, dim - n) if dim - n >= 1 else 1.0
        if tail > self.config.tail_tolerance:
            required = self.required_cutoff(abs(label) ** 2, self.config.tail_tolerance) + n
            msg = f"Cutoff {dim} too small for a^{n} on |{label}>, need {required}"
            logging.error(msg)
            raise CutoffTooSmallError(msg, required)

        state = self.coherent_state(label, dim)
        lowered = np.linalg.matrix_power(self.annihilation(dim).matrix, n) @ state.amplitudes
        return complex(np.vdot(state.amplitudes, lowered))

    def single_mode_squeeze(self, zeta: float, dim: int) -> FockOperator:
        """
        Squeezing operator exp(-(zeta/2)(a^2 - a^dagger^2)).

        Evaluated with scipy's scaling-and-squaring Pade expm; the result is unitary
        on the retained block away from the cutoff.

        Args:
            zeta (float): Squeezing parameter, |zeta| <= 5.
            dim (int): Cutoff.

        Returns:
            FockOperator: The squeezing operator.

        Raises:
            ParameterRangeError: If |zeta| > 5.
        """
        if abs(zeta) > SQUEEZE_LIMIT:
            msg = f"|zeta| must be <= {SQUEEZE_LIMIT}, got {zeta}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        a = self.annihilation(dim).matrix
        generator = -(zeta / 2) * (a @ a - a.T @ a.T)
        return FockOperator(expm(generator))

    def commutator(self, left: FockOperator, right: FockOperator) -> FockOperator:
        """AB - BA"""
        return left @ right - right @ left

    def expectation(self, operator: FockOperator, psi: FockState) -> complex:
        """<psi|A|psi>"""
        return psi.overlap(operator @ psi)

    def ccr_deviation(self, dim: int) -> float:
        """Largest deviation of [a, a^dagger] from the identity on the leading dim-1 block"""
        a = self.annihilation(dim)
        block = self.commutator(a, a.dagger()).interior(dim - 1)
        return float(np.max(np.abs(block - np.eye(dim - 1))))
