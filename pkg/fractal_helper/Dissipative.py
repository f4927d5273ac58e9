"""
Quantized doubled oscillator.

Modes A and B live on a truncated tensor space, A = a (x) 1 and B = 1 (x) a.
With J+ = A^dagger B^dagger, J- = AB, J2 = (J+ - J-)/2i and C = (A^dagger A - B^dagger B)/2
the Hamiltonian is H0 + HI with H0 = 2 Omega C and HI = -2 Gamma J2 (hbar = k_B = 1).
HI maps the paired states |n,n> into themselves, so the vacuum evolution is
carried on the pair subspace only.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.linalg import expm
from scipy.special import gammaln

from .Fock import SQUEEZE_LIMIT, Fock, FockOperator
from .Helper import Helper, RunConfig
from .errors import CutoffTooSmallError, InvalidDimensionError, ParameterRangeError, SingularInputError

MIN_MODE_CUTOFF = 4
MIN_IDENTITY_CUTOFF = 8


@dataclass(frozen=True)
class TwoModeState:
    """
    State carried on the paired basis |n,n>, n = 0 ... cutoff-1.

    Attributes:
        cutoff (int): Number of pair levels K.
        pair_amplitudes (np.ndarray): Amplitudes over |n,n>, read-only.
        full_support (bool): False when the state provably lives in the pair subspace.
        tail_mass (float): Analytic probability beyond the cutoff.
    """

    cutoff: int
    pair_amplitudes: np.ndarray
    full_support: bool = False
    tail_mass: float = 0.0

    def __post_init__(self) -> None:
        amplitudes = np.array(self.pair_amplitudes, dtype=complex)
        if amplitudes.shape != (self.cutoff,):
            msg = f"Expected {self.cutoff} pair amplitudes, got shape {amplitudes.shape}"
            logging.error(msg)
            raise InvalidDimensionError(msg)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "pair_amplitudes", amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.pair_amplitudes))

    @property
    def deficit(self) -> float:
        """Truncation deficit 1 - <psi|psi>"""
        return 1.0 - self.norm ** 2

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.pair_amplitudes) ** 2


@dataclass(frozen=True)
class SU11Generators:
    """
    Two-mode generators on the truncated tensor basis (index nA * K + nB).

    Attributes:
        Jplus (FockOperator): A^dagger B^dagger.
        Jminus (FockOperator): AB.
        J2 (FockOperator): (J+ - J-)/2i.
        Casimir (FockOperator): (A^dagger A - B^dagger B)/2.
    """

    Jplus: FockOperator
    Jminus: FockOperator
    J2: FockOperator
    Casimir: FockOperator

    def hamiltonians(self, Gamma: float, Omega: float) -> Tuple[FockOperator, FockOperator]:
        """(H0, HI) = (2 Omega C, -2 Gamma J2)"""
        return 2 * Omega * self.Casimir, -2 * Gamma * self.J2


@dataclass(frozen=True)
class Thermodynamics:
    """
    Thermodynamic bookkeeping on a vacuum-evolution state.

    Attributes:
        U (float): Energy <2 Omega C>.
        S (float): Entropy identified with <2 J2>.
        T (float): Temperature, Gamma.
        F (float): Free energy U - T S.
        dF_dT (float): Finite difference of F in T at fixed state.
        entropy_operator (float): <S_A> reported side by side with S.
    """

    U: float
    S: float
    T: float
    F: float
    dF_dT: float
    entropy_operator: float

    def to_dict(self) -> Dict[str, float]:
        return dict(vars(self))


class Dissipative(Helper):
    """
    A/B modes, SU(1,1) generators, vacuum evolution and its fidelity, the entropy
    operator, thermodynamics, the doubled fractal-operator identity and the
    two-mode squeezing generator.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)
        self.Fock = Fock(self.config, data_dir)

    def build_modes(self, cutoff: int) -> Tuple[FockOperator, FockOperator, SU11Generators]:
        """
        Lifts the single-mode ladder operator to the two tensor factors.

        Args:
            cutoff (int): Per-mode cutoff K, >= 4.

        Returns:
            Tuple[FockOperator, FockOperator, SU11Generators]: (A, B, generators) on K^2 states.

        Raises:
            InvalidDimensionError: If cutoff < 4.
        """
        cutoff = self._check_dimension(cutoff, MIN_MODE_CUTOFF, "cutoff")
        logging.debug(f"Building A/B modes at per-mode cutoff {cutoff}")

        A, B = (FockOperator(mode.toarray()) for mode in self.sparse_modes(cutoff))

        Jplus = A.dagger() @ B.dagger()
        Jminus = A @ B
        J2 = (Jplus - Jminus) * (1 / 2j)
        Casimir = (A.dagger() @ A - B.dagger() @ B) * 0.5
        return A, B, SU11Generators(Jplus, Jminus, J2, Casimir)

    def interior_mask(self, cutoff: int, margin: Optional[int] = None) -> np.ndarray:
        """Boolean mask of tensor indices with nA, nB < cutoff - margin"""
        margin = self.config.margin if margin is None else margin
        levels = np.arange(cutoff) < cutoff - margin
        return np.kron(levels, levels).astype(bool)

    def mode_contracts(self, cutoff: int) -> Dict[str, float]:
        """
        Interior-block deviations of the mode algebra.

        Returns:
            Dict[str, float]: Deviations of [A,A^dagger] = 1, [B,B^dagger] = 1,
            [A,B] = 0, [A,B^dagger] = 0 and [H0,HI] = 0 (Omega = Gamma = 1).
        """
        A, B, gens = self.build_modes(cutoff)
        mask = self.interior_mask(cutoff)
        H0, HI = gens.hamiltonians(1.0, 1.0)
        eye = np.eye(int(mask.sum()))

        def block(op: FockOperator) -> np.ndarray:
            return self._interior(op.matrix, mask)

        commute = self.Fock.commutator
        return {
            "A_Adag": float(np.max(np.abs(block(commute(A, A.dagger())) - eye))),
            "B_Bdag": float(np.max(np.abs(block(commute(B, B.dagger())) - eye))),
            "A_B": float(np.max(np.abs(block(commute(A, B))))),
            "A_Bdag": float(np.max(np.abs(block(commute(A, B.dagger()))))),
            "H0_HI": float(np.max(np.abs(block(commute(H0, HI))))),
        }

    def pair_closure_residual(self, cutoff: int) -> float:
        """
        Weight that HI sends outside span{|n,n>}, over every pair state.

        Args:
            cutoff (int): Per-mode cutoff.

        Returns:
            float: Largest amplitude landing off the pair subspace.
        """
        _, _, gens = self.build_modes(cutoff)
        _, HI = gens.hamiltonians(1.0, 0.0)

        pairs = np.arange(cutoff) * (cutoff + 1)
        off_pair = np.ones(cutoff * cutoff, dtype=bool)
        off_pair[pairs] = False
        return float(np.max(np.abs(HI.matrix[np.ix_(off_pair, pairs)])))

    @staticmethod
    def _gamma_t(Gamma: float, t: float) -> float:
        x = Gamma * t
        if x < 0:
            msg = f"Gamma t must be >= 0, got {x}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return x

    def pair_tail(self, Gamma: float, t: float, cutoff: int) -> float:
        """First omitted pair probability tanh^2K(Gamma t)/cosh^2(Gamma t)"""
        x = self._gamma_t(Gamma, t)
        if x == 0:
            return 0.0
        return math.exp(2 * cutoff * math.log(math.tanh(x)) - 2 * math.log(math.cosh(x)))

    def required_pair_cutoff(self, Gamma: float, t: float, tolerance: Optional[float] = None) -> int:
        """Smallest pair cutoff whose tail does not exceed the tolerance"""
        tolerance = self.config.tail_tolerance if tolerance is None else tolerance
        x = self._gamma_t(Gamma, t)
        if x == 0:
            return 1
        bound = (math.log(tolerance) + 2 * math.log(math.cosh(x))) / (2 * math.log(math.tanh(x)))
        return max(1, math.ceil(bound))

    def vacuum_evolution(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> TwoModeState:
        """
        Evolved vacuum |0(t)> = (1/cosh Gamma t) sum tanh^n(Gamma t) |n,n>.

        Args:
            Gamma (float): Damping rate gamma/2m.
            t (float): Time, Gamma t >= 0.
            cutoff (Optional[int]): Pair levels kept. Defaults to the configured pair levels.

        Returns:
            TwoModeState: Pair-subspace state.

        Raises:
            CutoffTooSmallError: If tanh^2K/cosh^2 exceeds the tail tolerance.
        """
        cutoff = self.config.pair_levels if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, 1, "cutoff")
        x = self._gamma_t(Gamma, t)

        tail = self.pair_tail(Gamma, t, cutoff)
        if tail > self.config.tail_tolerance:
            required = self.required_pair_cutoff(Gamma, t)
            msg = f"Pair cutoff {cutoff} too small at Gamma t = {x:.6g} (tail {tail:.3e}), need {required}"
            logging.error(msg)
            raise CutoffTooSmallError(msg, required)

        n = np.arange(cutoff)
        if x == 0:
            amplitudes = (n == 0).astype(float)
        else:
            amplitudes = np.exp(n * math.log(math.tanh(x)) - math.log(math.cosh(x)))

        logging.debug(f"Vacuum evolution Gamma t={x:.6g} on {cutoff} pair levels, tail {tail:.3e}")
        return TwoModeState(cutoff, amplitudes, full_support=False, tail_mass=tail)

    def pair_exponential(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> np.ndarray:
        """
        exp(-i t HI) |0,0> computed with scipy's expm on the pair subspace, where
        -i t HI acts as Gamma t (P - P^T) with P|n,n> = (n+1)|n+1,n+1>.

        Args:
            Gamma (float): Damping rate.
            t (float): Time.
            cutoff (Optional[int]): Pair levels. Defaults to the configured pair levels.

        Returns:
            np.ndarray: Pair amplitudes.
        """
        cutoff = self.config.pair_levels if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, 2, "cutoff")
        x = self._gamma_t(Gamma, t)

        # P[n+1, n] = n + 1, the squared single-mode creation element
        P = np.real(self.Fock.creation(cutoff).matrix) ** 2
        return expm(x * (P - P.T))[:, 0]

    def evolution_crosscheck(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> float:
        """Largest difference between the closed form and the exponential map"""
        closed = self.vacuum_evolution(Gamma, t, cutoff).pair_amplitudes
        numeric = self.pair_exponential(Gamma, t, len(closed))
        deviation = float(np.max(np.abs(closed - numeric)))
        logging.debug(f"Closed form vs expm at Gamma t={Gamma * t:.6g}: {deviation:.3e}")
        return deviation

    @staticmethod
    def vacuum_fidelity(Gamma: float, t: float) -> float:
        """
        <0(t)|0> = exp(-ln cosh Gamma t) = 1/cosh(Gamma t).

        Evaluated through ln cosh x = x + log1p(e^(-2x)) - ln 2, which stays finite
        for large Gamma t.

        Args:
            Gamma (float): Damping rate.
            t (float): Time, Gamma t >= 0.

        Returns:
            float: The fidelity.
        """
        x = Dissipative._gamma_t(Gamma, t)
        log_cosh = x + math.log1p(math.exp(-2 * x)) - math.log(2)
        return math.exp(-log_cosh)

    @staticmethod
    def fidelity_radius_ratio(Gamma: float, t: float) -> float:
        """
        Fidelity divided by 2 r0/r(t), with r(t) = r0 e^(Gamma t) the amplified spiral
        radius; tends to 1 as Gamma t grows.
        """
        x = Dissipative._gamma_t(Gamma, t)
        return Dissipative.vacuum_fidelity(Gamma, t) * math.exp(x) / 2

    def sparse_modes(self, cutoff: int) -> Tuple[sparse.csr_matrix, sparse.csr_matrix]:
        """
        A = a (x) 1 and B = 1 (x) a as sparse matrices, for per-mode cutoffs where
        the dense tensor space does not fit in memory.

        Args:
            cutoff (int): Per-mode cutoff K, >= 4.

        Returns:
            Tuple[csr_matrix, csr_matrix]: (A, B) on K^2 states.
        """
        cutoff = self._check_dimension(cutoff, MIN_MODE_CUTOFF, "cutoff")
        a = sparse.csr_matrix(self.Fock.annihilation(cutoff).matrix)
        eye = sparse.identity(cutoff, format="csr")
        return sparse.kron(a, eye, format="csr"), sparse.kron(eye, a, format="csr")

    @staticmethod
    def embed_pair_state(state: TwoModeState, cutoff: int) -> np.ndarray:
        """
        Places pair amplitudes on the tensor basis, |n,n> at index n * (cutoff + 1).

        Args:
            state (TwoModeState): Pair-subspace state.
            cutoff (int): Per-mode cutoff, >= state.cutoff.

        Returns:
            np.ndarray: Vector of length cutoff^2.
        """
        if state.cutoff > cutoff:
            msg = f"{state.cutoff} pair levels do not fit a per-mode cutoff of {cutoff}"
            logging.error(msg)
            raise InvalidDimensionError(msg)
        psi = np.zeros(cutoff * cutoff, dtype=complex)
        psi[np.arange(state.cutoff) * (cutoff + 1)] = state.pair_amplitudes
        return psi

    def entropy_operator(self, Gamma: float, t: float, cutoff: Optional[int] = None, mode: str = "A") -> sparse.csr_matrix:
        """
        S_A = -{A^dagger A ln sinh^2(Gamma t) - A A^dagger ln cosh^2(Gamma t)} on the
        two-mode tensor space, S_B with B, B^dagger in place of A, A^dagger.

        The per-mode cutoff is one above the pair levels, so A A^dagger is exact on
        every kept |n,n>.

        Args:
            Gamma (float): Damping rate.
            t (float): Time, Gamma t > 0.
            cutoff (Optional[int]): Pair levels. Defaults to the configured pair levels.
            mode (str): "A" or "B".

        Returns:
            csr_matrix: The entropy operator on (cutoff + 1)^2 states.

        Raises:
            SingularInputError: At Gamma t = 0, where the limit value is 0.
        """
        cutoff = self.config.pair_levels if cutoff is None else cutoff
        x = self._gamma_t(Gamma, t)
        if x == 0:
            msg = "Entropy operator is singular at Gamma t = 0 (ln sinh^2 0); its expectation tends to 0"
            logging.error(msg)
            raise SingularInputError(msg)
        if mode not in ("A", "B"):
            msg = f"mode must be 'A' or 'B', got {mode}"
            logging.error(msg)
            raise ParameterRangeError(msg)

        A, B = self.sparse_modes(cutoff + 1)
        lower = A if mode == "A" else B
        lower_dag = lower.conj().T

        log_s2 = 2 * math.log(math.sinh(x))
        log_c2 = 2 * math.log(math.cosh(x))
        return ((lower @ lower_dag) * log_c2 - (lower_dag @ lower) * log_s2).tocsr()

    def entropy_expectation(self, Gamma: float, t: float, cutoff: Optional[int] = None, mode: str = "A") -> float:
        """
        <0(t)|S_A|0(t)> (or S_B) with the pair state embedded in the tensor space.

        Args:
            Gamma (float): Damping rate.
            t (float): Time, Gamma t > 0.
            cutoff (Optional[int]): Pair levels.
            mode (str): "A" or "B".

        Returns:
            float: <S>, matching cosh^2 ln cosh^2 - sinh^2 ln sinh^2.
        """
        S = self.entropy_operator(Gamma, t, cutoff, mode)
        levels = math.isqrt(S.shape[0])
        state = self.vacuum_evolution(Gamma, t, levels - 1)
        psi = self.embed_pair_state(state, levels)

        value = np.vdot(psi, S @ psi)
        logging.debug(f"<S_{mode}> at Gamma t={Gamma * t:.6g}: {value.real:.15g}")
        return float(np.real(value))

    @staticmethod
    def entropy_closed_form(Gamma: float, t: float) -> float:
        """cosh^2 ln cosh^2 - sinh^2 ln sinh^2, with the limit 0 at Gamma t = 0"""
        x = Dissipative._gamma_t(Gamma, t)
        if x == 0:
            return 0.0
        c2, s2 = math.cosh(x) ** 2, math.sinh(x) ** 2
        return c2 * math.log(c2) - s2 * math.log(s2)

    def thermodynamics(self, Gamma: float, Omega: float, t: float, cutoff: Optional[int] = None, dT: float = 1e-4) -> Thermodynamics:
        """
        U, S, T and F on the vacuum-evolution state.

        The derivative (dF/dT) at fixed Omega is taken at a fixed state, varying T only.

        Args:
            Gamma (float): Damping rate, the temperature.
            Omega (float): Oscillation frequency.
            t (float): Time, Gamma t > 0.
            cutoff (Optional[int]): Pair levels.
            dT (float): Finite-difference step in T.

        Returns:
            Thermodynamics: The record.
        """
        state = self.vacuum_evolution(Gamma, t, cutoff)
        c = state.pair_amplitudes
        n = np.arange(state.cutoff)

        # H0 = Omega (nA - nB); pair states have nA = nB = n
        n_A, n_B = n, n
        U = float(Omega * np.sum(state.probabilities * (n_A - n_B)))

        # <J+> = sum conj(c_{n+1}) (n+1) c_n, and J- is its adjoint
        j_plus = np.sum(np.conj(c[1:]) * (n[1:]) * c[:-1])
        j2 = float(np.real((j_plus - np.conj(j_plus)) / 2j))
        S = 2 * j2

        def free_energy(T: float) -> float:
            return U - T * S

        T = Gamma
        dF_dT = (free_energy(T + dT) - free_energy(T - dT)) / (2 * dT)
        entropy = self.entropy_expectation(Gamma, t, state.cutoff)

        logging.info(f"Thermodynamics at Gamma t={Gamma * t:.6g}: U={U} S={S} T={T} <S_A>={entropy:.12g}")
        return Thermodynamics(U, S, T, free_energy(T), dF_dT, entropy)

    def doubled_lhs(self, c: FockOperator, c_tilde: FockOperator) -> FockOperator:
        """(c^2 - c^dagger^2) - (c~^2 - c~^dagger^2) + 2(C^dagger D^dagger - C D)"""
        C = (c + c_tilde) * (1 / math.sqrt(2))
        D = (c - c_tilde) * (1 / math.sqrt(2))
        cd, ctd = c.dagger(), c_tilde.dagger()
        return (
            (c @ c - cd @ cd)
            - (c_tilde @ c_tilde - ctd @ ctd)
            + 2 * (C.dagger() @ D.dagger() - C @ D)
        )

    def doubled_fractal_identity(self, cutoff: Optional[int] = None, swap: bool = False) -> float:
        """
        Deviation of the doubled exponent identity
        (c^2 - c^dagger^2) - (c~^2 - c~^dagger^2) = -2(C^dagger D^dagger - C D),
        C = (c + c~)/sqrt2, D = (c - c~)/sqrt2, as the 2-norm on the interior block.

        Args:
            cutoff (Optional[int]): Per-mode cutoff, >= 8. Defaults to config.tensor_cutoff.
            swap (bool): Exchange c and c~, which flips the sign of every term.

        Returns:
            float: Spectral norm of the left-hand side on the interior block.
        """
        cutoff = self.config.tensor_cutoff if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_IDENTITY_CUTOFF, "cutoff")

        c, c_tilde, _ = self.build_modes(cutoff)
        if swap:
            c, c_tilde = c_tilde, c
        block = self._interior(self.doubled_lhs(c, c_tilde).matrix, self.interior_mask(cutoff))

        deviation = float(np.linalg.norm(block, 2))
        logging.debug(f"Doubled fractal identity at cutoff {cutoff} (swap={swap}): {deviation:.3e}")
        return deviation

    def pair_creation_element(self, cutoff: int, bra: Tuple[int, int]) -> complex:
        """<bra| C^dagger D^dagger |0,0> on the tensor space"""
        c, c_tilde, _ = self.build_modes(cutoff)
        C = (c + c_tilde) * (1 / math.sqrt(2))
        D = (c - c_tilde) * (1 / math.sqrt(2))
        op = (C.dagger() @ D.dagger()).matrix
        return complex(op[bra[0] * cutoff + bra[1], 0])

    def _squeeze_exponent(self, Gamma: float, t: float, cutoff: int) -> np.ndarray:
        a = self.Fock.annihilation(cutoff).matrix
        eye = np.eye(cutoff)
        single = a @ a - a.T @ a.T
        x = self._gamma_t(Gamma, t)
        return -(x / 2) * (np.kron(single, eye) - np.kron(eye, single))

    def two_mode_squeeze_generator(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> FockOperator:
        """
        U(t) = exp(-(Gamma t/2)[(a^2 - a^dagger^2) - (b^2 - b^dagger^2)]) on the tensor space.

        Args:
            Gamma (float): Damping rate.
            t (float): Time, Gamma t <= 5.
            cutoff (Optional[int]): Per-mode cutoff. Defaults to config.tensor_cutoff.

        Returns:
            FockOperator: The squeezing operator.
        """
        cutoff = self.config.tensor_cutoff if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_MODE_CUTOFF, "cutoff")
        self._check_squeeze(Gamma * t)
        return FockOperator(expm(self._squeeze_exponent(Gamma, t, cutoff)))

    def squeezing_parameter(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> float:
        """
        Reads zeta back from the generator G = (zeta/2)[(a^2 - a^dagger^2) - (b^2 - b^dagger^2)]
        as zeta = sqrt2 <0,0|G|2,0>; equals -Gamma t.
        """
        cutoff = self.config.tensor_cutoff if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_MODE_CUTOFF, "cutoff")
        G = self._squeeze_exponent(Gamma, t, cutoff)
        return float(np.real(math.sqrt(2) * G[0, 2 * cutoff]))

    def squeezed_vacuum(self, Gamma: float, t: float, cutoff: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        U(t)|0,0> in factorized form: U(t) = S_a(Gamma t) (x) S_b(-Gamma t) since the two
        exponents commute, with S(zeta) = exp(-(zeta/2)(a^2 - a^dagger^2)).

        Args:
            Gamma (float): Damping rate.
            t (float): Time, Gamma t <= 5.
            cutoff (Optional[int]): Single-mode cutoff. Defaults to the configured pair levels.

        Returns:
            Tuple[np.ndarray, np.ndarray]: Single-mode amplitudes of the a and b factors.

        Raises:
            CutoffTooSmallError: If the squeezed vacuum tail exceeds the tolerance.
        """
        cutoff = self.config.pair_levels if cutoff is None else cutoff
        cutoff = self._check_dimension(cutoff, MIN_MODE_CUTOFF, "cutoff")
        x = self._gamma_t(Gamma, t)
        self._check_squeeze(x)

        tail = self._squeezed_tail(x, cutoff)
        if tail > self.config.tail_tolerance:
            required = cutoff
            while self._squeezed_tail(x, required) > self.config.tail_tolerance:
                required *= 2
            msg = f"Cutoff {cutoff} too small for squeezing {x:.6g} (tail {tail:.3e}), need about {required}"
            logging.error(msg)
            raise CutoffTooSmallError(msg, required)

        vacuum = self.Fock.basis_state(0, cutoff)
        a_mode = self.Fock.single_mode_squeeze(x, cutoff) @ vacuum
        b_mode = self.Fock.single_mode_squeeze(-x, cutoff) @ vacuum
        return a_mode.amplitudes, b_mode.amplitudes

    @staticmethod
    def _squeezed_tail(x: float, cutoff: int) -> float:
        # Squeezed vacuum probability of level 2j is tanh^2j C(2j,j) / (4^j cosh)
        if x == 0:
            return 0.0
        j = np.arange((cutoff + 1) // 2, (cutoff + 1) // 2 + 4096)
        log_p = (
            2 * j * math.log(math.tanh(abs(x)))
            + gammaln(2 * j + 1) - 2 * gammaln(j + 1) - 2 * j * math.log(2)
            - math.log(math.cosh(x))
        )
        return float(np.sum(np.exp(log_p)))

    def pair_projection(self, a_mode: np.ndarray, b_mode: np.ndarray, n_max: int) -> np.ndarray:
        """
        Projects a product state of the a and b modes onto the pair states of
        A = (a + b)/sqrt2, B = (a - b)/sqrt2, using
        |n,n>_AB = (1/(2^n n!)) sum_j C(n,j) (-1)^(n-j) sqrt((2j)! (2n-2j)!) |2j, 2n-2j>_ab.

        Args:
            a_mode (np.ndarray): a-mode amplitudes.
            b_mode (np.ndarray): b-mode amplitudes.
            n_max (int): Largest pair level, with 2 n_max below both cutoffs.

        Returns:
            np.ndarray: <n,n|psi> for n = 0 ... n_max.
        """
        if 2 * n_max >= min(len(a_mode), len(b_mode)):
            msg = f"Pair level {n_max} needs single-mode cutoff > {2 * n_max}"
            logging.error(msg)
            raise InvalidDimensionError(msg)

        projections = np.empty(n_max + 1, dtype=complex)
        for n in range(n_max + 1):
            j = np.arange(n + 1)
            log_coeff = (
                -n * math.log(2) - gammaln(n + 1)
                + gammaln(n + 1) - gammaln(j + 1) - gammaln(n - j + 1)
                + 0.5 * (gammaln(2 * j + 1) + gammaln(2 * n - 2 * j + 1))
            )
            sign = (-1.0) ** (n - j)
            projections[n] = np.sum(sign * np.exp(log_coeff) * a_mode[2 * j] * b_mode[2 * n - 2 * j])
        return projections

    def squeeze_crosscheck(self, Gamma: float, t: float, n_max: int = 32, cutoff: Optional[int] = None) -> float:
        """
        Largest difference between the squeezed vacuum, projected onto the A/B pair
        states, and the closed-form vacuum evolution for n <= n_max.
        """
        a_mode, b_mode = self.squeezed_vacuum(Gamma, t, cutoff)
        projected = self.pair_projection(a_mode, b_mode, n_max)
        closed = self.vacuum_evolution(Gamma, t).pair_amplitudes[: n_max + 1]

        deviation = float(np.max(np.abs(projected - closed)))
        logging.debug(f"Squeezed vacuum vs pair evolution at Gamma t={Gamma * t:.6g}: {deviation:.3e}")
        return deviation

    @staticmethod
    def _check_squeeze(x: float) -> None:
        if abs(x) > SQUEEZE_LIMIT:
            msg = f"|Gamma t| must be <= {SQUEEZE_LIMIT} for squeezing, got {x}"
            logging.error(msg)
            raise ParameterRangeError(msg)
