"""
Self-similarity of deterministic fractals

- Koch curve construction (initiator (0,0)-(1,0), 60 degree bump on the left of travel)
- Self-similarity dimension ln(pieces)/ln(scale)
- The entire-function basis u_n(alpha) = (q alpha)^n [/ sqrt(n!)]
- The q-derivative (f(q alpha) - f(alpha)) / ((q - 1) alpha)
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from .Fock import QDeformation, QLike, as_deformation
from .Helper import Helper, RunConfig
from .errors import InvalidSampleError, ParameterRangeError, SingularInputError

MAX_KOCH_DEPTH = 12
QUADRATURE_RADIUS = 6.0


@dataclass(frozen=True)
class Polyline:
    """
    Ordered list of planar points.

    Attributes:
        points (np.ndarray): (N, 2) float array, N >= 2, consecutive points distinct.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        points = np.array(self.points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) < 2:
            msg = f"Polyline needs an (N >= 2, 2) array, got shape {points.shape}"
            logging.error(msg)
            raise InvalidSampleError(msg)
        if np.any(np.all(np.diff(points, axis=0) == 0, axis=1)):
            msg = "Polyline has repeated consecutive points"
            logging.error(msg)
            raise InvalidSampleError(msg)
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    @classmethod
    def from_complex(cls, values: np.ndarray) -> "Polyline":
        return cls(np.column_stack([values.real, values.imag]))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def segment_count(self) -> int:
        return len(self.points) - 1

    def segment_lengths(self) -> np.ndarray:
        return np.hypot(*np.diff(self.points, axis=0).T)

    @property
    def length(self) -> float:
        return float(self.segment_lengths().sum())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.points[:, 0], "y": self.points[:, 1]})


@dataclass(frozen=True)
class SimilaritySpec:
    """
    A curve made of `pieces` copies of itself shrunk by `scale`.

    Attributes:
        pieces (int): Copies per construction step.
        scale (float): Shrink factor per step.
        dimension (float): ln(pieces)/ln(scale), derived.
    """

    pieces: int
    scale: float
    dimension: float = field(init=False)

    def __post_init__(self) -> None:
        if self.pieces < 2 or not self.scale > 1:
            msg = f"Need pieces >= 2 and scale > 1, got pieces={self.pieces}, scale={self.scale}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        object.__setattr__(self, "dimension", math.log(self.pieces) / math.log(self.scale))


KOCH = SimilaritySpec(4, 3.0)


class SelfSim(Helper):
    """
    Koch curve generation, self-similarity dimension algebra, the u_n basis
    functions and the q-derivative.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)

    def koch_iterate(self, depth: int) -> Polyline:
        """
        Builds the Koch curve after `depth` refinement steps.

        Every step replaces each segment by four thirds, the middle two forming an
        equilateral bump on the left of the direction of travel.

        Args:
            depth (int): Number of steps, 0 <= depth <= 12.

        Returns:
            Polyline: 4^depth segments from (0, 0) to (1, 0).

        Raises:
            ParameterRangeError: If depth is outside [0, 12].
        """
        if int(depth) != depth or not 0 <= depth <= MAX_KOCH_DEPTH:
            msg = f"Koch depth must be an integer in [0, {MAX_KOCH_DEPTH}], got {depth}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        logging.info(f"Generating Koch curve at depth {depth}")
        bump = complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
        points = np.array([0.0, 1.0], dtype=complex)

        for _ in range(int(depth)):
            start, end = points[:-1], points[1:]
            step = (end - start) / 3.0

            refined = np.empty(4 * len(start) + 1, dtype=complex)
            refined[0:-1:4] = start
            refined[1::4] = start + step
            refined[2::4] = start + step + step * bump
            refined[3::4] = end - step
            refined[-1] = points[-1]
            points = refined

        logging.debug(f"Koch depth {depth}: {len(points) - 1} segments")
        return Polyline.from_complex(points)

    def koch_self_similarity_residual(self, depth: int) -> float:
        """
        Finite-stage self-similarity: the stage depth-1 curve shrunk by 1/3 must
        coincide with the first quarter of the stage depth curve.

        Args:
            depth (int): Stage, >= 1.

        Returns:
            float: Largest pointwise distance.
        """
        if depth < 1:
            msg = f"Self-similarity needs depth >= 1, got {depth}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        whole = self.koch_iterate(depth).points
        part = self.koch_iterate(depth - 1).points / 3.0
        quarter = whole[: len(part)]
        return float(np.max(np.hypot(*(quarter - part).T)))

    @staticmethod
    def similarity_dimension(pieces: int, scale: float) -> float:
        """
        Self-similarity dimension ln(pieces)/ln(scale).

        Args:
            pieces (int): Copies per step, >= 2.
            scale (float): Shrink factor per step, > 1.

        Returns:
            float: The dimension.

        Raises:
            ParameterRangeError: On domain violations.
        """
        return SimilaritySpec(pieces, scale).dimension

    @staticmethod
    def koch_deformation() -> Tuple[QDeformation, float]:
        """
        The Koch self-similarity pair: q = 3^(-d) with d = ln 4 / ln 3, and alpha = 4,
        so that q alpha = 1 at every stage.

        Returns:
            Tuple[QDeformation, float]: (q, alpha).
        """
        return QDeformation(KOCH.scale ** (-KOCH.dimension)), float(KOCH.pieces)

    @staticmethod
    def u_n(q: QLike, alpha: complex, n: int, normalized: bool = False) -> complex:
        """
        Basis function (q alpha)^n, divided by sqrt(n!) when normalized.

        Args:
            q (QDeformation | float): Deformation parameter.
            alpha (complex): Argument.
            n (int): Order, >= 0.
            normalized (bool): Use the orthonormal form.

        Returns:
            complex: u_n(alpha).
        """
        if n < 0:
            msg = f"n must be non-negative, got {n}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        value = (as_deformation(q).q * complex(alpha)) ** n
        if normalized:
            value /= math.sqrt(math.factorial(n))
        return complex(value)

    def orthonormality_residual(self, n_max: int, q: QLike = 1.0, radial: int = 96, angular: int = 64) -> float:
        """
        Gram matrix of the normalized u_n under the Gaussian measure exp(-|alpha|^2)/pi,
        by tensor Gauss-Legendre quadrature in (r, theta) with r cut at 6.

        Args:
            n_max (int): Largest order included.
            q (QDeformation | float): Deformation parameter.
            radial (int): Radial nodes.
            angular (int): Angular nodes.

        Returns:
            float: max |G_mn - delta_mn|.
        """
        r_nodes, r_weights = np.polynomial.legendre.leggauss(radial)
        t_nodes, t_weights = np.polynomial.legendre.leggauss(angular)

        r = QUADRATURE_RADIUS * (r_nodes + 1) / 2
        theta = math.pi * (t_nodes + 1)
        weight = (
            np.outer(r_weights * QUADRATURE_RADIUS / 2 * r * np.exp(-r ** 2), t_weights * math.pi)
            / math.pi
        )
        alpha = np.outer(r, np.exp(1j * theta))

        basis = [
            np.vectorize(lambda z, k=k: self.u_n(q, z, k, normalized=True))(alpha)
            for k in range(n_max + 1)
        ]
        gram = np.array([[np.sum(np.conj(bm) * bn * weight) for bn in basis] for bm in basis])

        residual = float(np.max(np.abs(gram - np.eye(n_max + 1))))
        logging.debug(f"Gaussian-measure Gram residual up to n={n_max}: {residual:.3e}")
        return residual

    @staticmethod
    def q_derivative(f: Union[Callable[[complex], complex], Sequence[complex]], q: QLike, alpha: complex) -> complex:
        """
        q-derivative (f(q alpha) - f(alpha)) / ((q - 1) alpha).

        Args:
            f (Callable | Sequence): Function of a complex variable (numpy polynomials
                work too), or samples [f(alpha), f(q alpha), f(q^2 alpha), ...] on the
                q-geometric grid starting at alpha. Only the first two samples are used.
            q (QDeformation | float): Deformation parameter, != 1.
            alpha (complex): Evaluation point, != 0.

        Returns:
            complex: D_q f(alpha).

        Raises:
            SingularInputError: If alpha == 0 or q == 1; use the ordinary derivative there.
            InvalidSampleError: If fewer than two samples are given.
        """
        q = as_deformation(q).q
        alpha = complex(alpha)
        if alpha == 0 or q == 1:
            msg = f"q-derivative is singular at alpha={alpha}, q={q}; take the limit (ordinary derivative)"
            logging.error(msg)
            raise SingularInputError(msg)

        if callable(f):
            at_alpha, at_q_alpha = f(alpha), f(q * alpha)
        else:
            samples = np.asarray(f, dtype=complex)
            if samples.ndim != 1 or len(samples) < 2:
                msg = f"Need samples f(alpha), f(q alpha) on the q-geometric grid, got shape {samples.shape}"
                logging.error(msg)
                raise InvalidSampleError(msg)
            at_alpha, at_q_alpha = samples[0], samples[1]

        return complex((at_q_alpha - at_alpha) / ((q - 1) * alpha))
