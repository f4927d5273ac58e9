"""
Verification suites.

Every check computes a measured number and compares it with a tolerance: residual
checks pass when measured <= tolerance, property checks report 0.0 when the
property holds. A check that raises is reported as a failure with the error
message, so an under-resolved configuration still produces a report.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Dict, List, Optional

import numpy as np
from tqdm.auto import tqdm

from .Dissipative import Dissipative
from .Fock import Fock
from .Golden import Golden
from .Helper import Helper, RunConfig
from .NCPlane import NCParams, NCPlane
from .SelfSim import SelfSim
from .Spiral import MechanicalParams, Spiral, SpiralParams
from .errors import FractalHelperError, ParameterRangeError, SingularInputError

SCHEMA_VERSION = 1
SUITES = ("fock", "selfsim", "spiral", "dissipative", "golden", "ncplane")

# Example oscillator with Gamma = 0.5, Omega = 2, d = 0.25 and period pi
EXAMPLE_MECH = MechanicalParams(1.0, 1.0, 4.25)


@dataclass(frozen=True)
class Check:
    """
    A single verification check.

    Attributes:
        id (str): Stable identifier, "<suite>.<name>".
        anchor (str): The relation being checked, in words and symbols.
        tolerance (float): Largest accepted measured value.
        run (Callable[[], float]): Computes the measured value.
        kind (str): "residual" or "property".
    """

    id: str
    anchor: str
    tolerance: float
    run: Callable[[], float]
    kind: str = "residual"


@dataclass(frozen=True)
class CheckResult:
    id: str
    anchor: str
    kind: str
    measured: Optional[float]
    tolerance: float
    passed: bool
    error: Optional[str] = None

    def to_dict(self) -> dict:
        payload = {
            "id": self.id,
            "paper_anchor": self.anchor,
            "kind": self.kind,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.error is not None:
            payload["error"] = self.error
        return payload


@dataclass
class VerificationReport:
    """
    Outcome of a suite run.

    Attributes:
        suite (str): Suite name.
        checks (List[CheckResult]): Results ordered by id.
        environment (dict): Cutoffs, margins, step sizes and tolerances used.
        generated_at (str): UTC timestamp, the only non-deterministic field.
    """

    suite: str
    checks: List[CheckResult]
    environment: dict
    generated_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def summary(self) -> Dict[str, int]:
        return {"total": len(self.checks), "passed": sum(check.passed for check in self.checks)}

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "generated_at": self.generated_at,
            "suite": self.suite,
            "checks": [check.to_dict() for check in self.checks],
            "environment": self.environment,
            "summary": self.summary,
        }


def _holds(condition: bool) -> float:
    return 0.0 if condition else 1.0


class Verify(Helper):
    """
    Runs the verification suites of every module and assembles VerificationReports.

    Args:
        config (Optional[RunConfig]): Run configuration shared by every module.
        data_dir (Optional[str]): Output directory for reports.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        super().__init__(config, data_dir)

        self.Fock = Fock(self.config, data_dir)
        self.SelfSim = SelfSim(self.config, data_dir)
        self.Spiral = Spiral(self.config, data_dir)
        self.Dissipative = Dissipative(self.config, data_dir)
        self.Golden = Golden(self.config, data_dir)
        self.NCPlane = NCPlane(self.config, data_dir)

        self.registry = {
            "fock": self._fock_checks,
            "selfsim": self._selfsim_checks,
            "spiral": self._spiral_checks,
            "dissipative": self._dissipative_checks,
            "golden": self._golden_checks,
            "ncplane": self._ncplane_checks,
        }

    def checks(self, suite: str) -> List[Check]:
        """
        Checks of a suite, "all" for every suite.

        Raises:
            ParameterRangeError: On an unknown suite name.
        """
        if suite == "all":
            return [check for name in SUITES for check in self.registry[name]()]
        if suite not in self.registry:
            msg = f"Unknown suite '{suite}', expected one of all, {', '.join(SUITES)}"
            logging.error(msg)
            raise ParameterRangeError(msg)
        return self.registry[suite]()

    def run(self, suite: str = "all") -> VerificationReport:
        """
        Runs a suite concurrently and assembles its report in id order.

        Args:
            suite (str): Suite name or "all".

        Returns:
            VerificationReport: The report.
        """
        checks = self.checks(suite)
        logging.info(f"Running {len(checks)} checks of suite '{suite}' on {self.config.workers} workers")

        results = []
        with ThreadPoolExecutor(max_workers=self.config.workers) as executor:
            futures = {executor.submit(self._evaluate, check): check for check in checks}
            for future in tqdm(as_completed(futures), total=len(futures), desc=f"Verifying {suite}"):
                results.append(future.result())

        results.sort(key=lambda result: result.id)
        report = VerificationReport(suite, results, self.config.environment())
        logging.info(f"Suite '{suite}': {report.summary['passed']}/{report.summary['total']} checks passed")
        return report

    def write(self, report: VerificationReport, path: str) -> str:
        return str(self._write_json(report.to_dict(), path))

    @staticmethod
    def _evaluate(check: Check) -> CheckResult:
        try:
            measured = float(check.run())
        except FractalHelperError as exc:
            logging.warning(f"Check {check.id} could not be evaluated: {exc}")
            return CheckResult(check.id, check.anchor, check.kind, None, check.tolerance, False, str(exc))
        except Exception as exc:
            logging.error(f"Check {check.id} raised {type(exc).__name__}: {exc}")
            return CheckResult(check.id, check.anchor, check.kind, None, check.tolerance, False, f"{type(exc).__name__}: {exc}")

        passed = math.isfinite(measured) and measured <= check.tolerance
        if not passed:
            logging.warning(f"Check {check.id} failed: {measured:.3e} > {check.tolerance:.3e}")
        return CheckResult(check.id, check.anchor, check.kind, measured, check.tolerance, passed)

    # Suites

    def _fock_checks(self) -> List[Check]:
        fock, dim = self.Fock, self.config.cutoff

        def number_diagonal() -> float:
            return float(np.max(np.abs(fock.number(dim).matrix - np.diag(np.arange(dim)))))

        def magnifying_lens() -> float:
            q = 0.5
            labels = [0, 0.5, 1 + 0.5j, -1.2j, 1.4 - 1.4j, 2]
            return max(
                abs(fock.magnifying_lens(q, label / q, n, dim) - complex(label) ** n)
                for label in labels
                for n in range(6)
            )

        def coherent_norm() -> float:
            return abs(fock.coherent_state(2.0, dim).norm - 1)

        def fractal_overlap() -> float:
            overlap, _, _ = fock.fractal_action(0.5, 2 + 1j, dim)
            return 1 - overlap

        def fractal_scale() -> float:
            _, measured, analytic = fock.fractal_action(0.5, 2 + 1j, dim)
            return abs(measured - analytic) / analytic

        def squeeze_unitary() -> float:
            S = fock.single_mode_squeeze(0.5, dim).matrix
            return float(np.max(np.abs(S.conj().T @ S - np.eye(dim))))

        def squeeze_inverse() -> float:
            product = fock.single_mode_squeeze(0.5, dim) @ fock.single_mode_squeeze(-0.5, dim)
            return float(np.max(np.abs(product.matrix - np.eye(dim))))

        def squeeze_photons() -> float:
            psi = fock.single_mode_squeeze(0.5, dim) @ fock.basis_state(0, dim)
            return abs(fock.expectation(fock.number(dim), psi).real - math.sinh(0.5) ** 2)

        def fractal_composition() -> float:
            combined = fock.fractal_operator(0.5, dim) @ fock.fractal_operator(1.5, dim)
            return float(np.max(np.abs(combined.matrix - fock.fractal_operator(0.75, dim).matrix)))

        return [
            Check("fock.ccr_interior", "[a, a^dagger] = 1 on the interior block", 1e-12, lambda: fock.ccr_deviation(dim)),
            Check("fock.number_diagonal", "a^dagger a = diag(n)", 1e-12, number_diagonal),
            Check("fock.magnifying_lens", "<q alpha|a^n|q alpha> = (q alpha)^n, |q alpha| <= 2, n <= 5", 1e-8, magnifying_lens),
            Check("fock.coherent_norm", "|| |alpha> || = 1 within the Poisson tail", 1e-12, coherent_norm),
            Check("fock.fractal_operator_overlap", "q^N|alpha> is proportional to |q alpha>", 1e-10, fractal_overlap),
            Check("fock.fractal_operator_scale", "q^N|alpha> = exp((|q alpha|^2 - |alpha|^2)/2)|q alpha>", 1e-10, fractal_scale),
            Check("fock.squeeze_unitary", "S(zeta)^dagger S(zeta) = 1", 1e-10, squeeze_unitary),
            Check("fock.squeeze_inverse", "S(zeta) S(-zeta) = 1", 1e-10, squeeze_inverse),
            Check("fock.squeeze_photons", "<0|S^dagger N S|0> = sinh^2 zeta", 1e-8, squeeze_photons),
            Check("fock.fractal_composition", "q1^N q2^N = (q1 q2)^N", 1e-12, fractal_composition),
            Check("fock.coherent_eigenstate", "||(a - alpha)|alpha>|| = 0 below the cutoff", 1e-12, lambda: fock.eigen_residual(1.5 + 0.5j, dim)),
        ]

    def _selfsim_checks(self) -> List[Check]:
        selfsim, fock = self.SelfSim, self.Fock

        def koch_census() -> float:
            worst = 0.0
            for depth in range(9):
                curve = selfsim.koch_iterate(depth)
                if curve.segment_count != 4 ** depth:
                    return math.inf
                lengths = curve.segment_lengths()
                worst = max(
                    worst,
                    float(np.max(np.abs(lengths * 3 ** depth - 1))),
                    abs(curve.length / (4 / 3) ** depth - 1),
                )
            return worst

        def koch_deformation() -> float:
            q, alpha = selfsim.koch_deformation()
            return abs(q.q * alpha - 1)

        def koch_coherent() -> float:
            q, alpha = selfsim.koch_deformation()
            overlap, _, _ = fock.fractal_action(q, alpha, self.config.cutoff)
            return 1 - overlap

        def q_derivative_power() -> float:
            q, alpha = 0.5, 1.5 + 0.25j
            worst = 0.0
            for n in range(1, 6):
                bracket = (q ** n - 1) / (q - 1)
                value = selfsim.q_derivative(lambda z, n=n: z ** n, q, alpha)
                worst = max(worst, abs(value - bracket * alpha ** (n - 1)) / abs(bracket * alpha ** (n - 1)))
            return worst

        def u_n_lens() -> float:
            q, alpha = 0.5, 1 + 0.5j
            return max(
                abs(selfsim.u_n(q, alpha, n) - fock.magnifying_lens(q, alpha, n, self.config.cutoff))
                for n in range(6)
            )

        def q_derivative_linear() -> float:
            q, alpha = 0.5, 1.5 + 0.25j
            f, g = (lambda z: z ** 3), (lambda z: z ** 2 + 1)
            combined = selfsim.q_derivative(lambda z: 2 * f(z) - 0.5j * g(z), q, alpha)
            separate = 2 * selfsim.q_derivative(f, q, alpha) - 0.5j * selfsim.q_derivative(g, q, alpha)
            return abs(combined - separate) / abs(separate)

        def q_derivative_sampled() -> float:
            q, alpha = 0.5, 1.5 + 0.25j
            samples = [(alpha * q ** k) ** 4 for k in range(3)]
            exact = selfsim.q_derivative(lambda z: z ** 4, q, alpha)
            return abs(selfsim.q_derivative(samples, q, alpha) - exact) / abs(exact)

        def q_derivative_limit() -> float:
            alpha = 1.5
            return abs(selfsim.q_derivative(lambda z: z ** 3, 1 + 1e-7, alpha) - 3 * alpha ** 2) / (3 * alpha ** 2)

        return [
            Check("selfsim.dimension_koch", "ln 4 / ln 3 = 1.2619", 1e-4, lambda: abs(selfsim.similarity_dimension(4, 3) - 1.2619)),
            Check("selfsim.koch_census", "4^n segments of length 3^-n, total (4/3)^n, n <= 8", 1e-10, koch_census),
            Check("selfsim.koch_self_similarity", "stage n-1 shrunk by 1/3 is the first quarter of stage n", 1e-12, lambda: selfsim.koch_self_similarity_residual(5)),
            Check("selfsim.koch_deformation", "q = 3^-d, alpha = 4 gives q alpha = 1", 1e-12, koch_deformation),
            Check("selfsim.koch_coherent_state", "q^N|4> is proportional to |1> for q = 1/4", 1e-10, koch_coherent),
            Check("selfsim.u_n_orthonormality", "u_n = (q alpha)^n / sqrt(n!) orthonormal under exp(-|alpha|^2)/pi", 1e-8, lambda: selfsim.orthonormality_residual(4)),
            Check("selfsim.q_derivative_power", "D_q alpha^n = [n]_q alpha^(n-1)", 1e-12, q_derivative_power),
            Check("selfsim.q_derivative_limit", "D_q f -> f' as q -> 1", 1e-5, q_derivative_limit),
            Check("selfsim.q_derivative_linear", "D_q(a f + b g) = a D_q f + b D_q g", 1e-12, q_derivative_linear),
            Check("selfsim.q_derivative_sampled", "samples on alpha q^k give the same D_q f", 1e-12, q_derivative_sampled),
            Check("selfsim.u_n_lens", "u_n(alpha) = <q alpha|a^n|q alpha>", 1e-8, u_n_lens),
        ]

    def _spiral_checks(self) -> List[Check]:
        spiral, mech, h = self.Spiral, EXAMPLE_MECH, self.config.step
        period = spiral.period(mech, mech.d)
        r0 = 1.0

        def ode_residual() -> float:
            traj = spiral.analytic_trajectory(mech, r0, np.arange(0, 2 * period, h))
            return float(max(np.max(res) for res in spiral.ode_residual(mech, traj)))

        def stencil_order() -> float:
            errors = []
            for samples in (65, 129):
                traj = spiral.analytic_trajectory(mech, r0, np.linspace(0, period, samples))
                errors.append(max(np.max(res) for res in spiral.ode_residual(mech, traj)))
            return abs(errors[0] / errors[1] - 16)

        def rho_residual() -> float:
            return float(np.max(spiral.rho_residual(mech, mech.d, np.arange(0, 2 * period, h))))

        def rho_control() -> float:
            residual = spiral.rho_residual(mech, 1.01 * mech.d, np.arange(0, period, h))
            return _holds(np.max(residual) > 1e-3)

        def integrate(steps: int):
            analytic = spiral.analytic_trajectory(mech, r0, [0.0])
            return spiral.integrate_doubled_system(
                mech, r0, r0, analytic.v1[0], analytic.v2[0], 2 * period, steps
            )

        def rk4_error(steps: int) -> float:
            traj = integrate(steps)
            exact = spiral.analytic_trajectory(mech, r0, traj.times)
            return float(max(np.max(np.abs(traj.z1 - exact.z1)), np.max(np.abs(traj.z2 - exact.z2))))

        def euler_lagrange() -> float:
            return float(max(np.max(res) for res in spiral.euler_lagrange_residual(mech, integrate(self.config.rk4_steps))))

        def turn_rescaling() -> float:
            theta = np.linspace(-2 * math.pi, 4 * math.pi, 200)
            worst = 0.0
            for handedness in ("direct", "indirect"):
                params = SpiralParams(r0, 0.1, handedness)
                factor = math.exp(2 * math.pi * params.exponent)
                worst = max(worst, float(np.max(np.abs(params.radius(theta + 2 * math.pi) / params.radius(theta) - factor))) / factor)
            return worst

        def radius_product() -> float:
            traj = spiral.analytic_trajectory(mech, 1.3, np.linspace(0, 2 * period, 400))
            return float(np.max(np.abs(np.abs(traj.z1) * np.abs(traj.z2) - 1.3 ** 2)))

        def undamped_twins() -> float:
            free = MechanicalParams(1.0, 0.0, 4.0)
            traj = spiral.integrate_doubled_system(free, 1.0, 1.0, 0.5j, 0.5j, 5.0, 1000)
            return float(np.max(np.abs(traj.z1 - traj.z2)))

        def slope_round_trip() -> float:
            params = SpiralParams(r0, 0.1)
            theta = np.linspace(0, 4 * math.pi, 400)
            fit = spiral.fit_loglog_slope(np.column_stack([theta, params.radius(theta)]))
            return max(abs(fit.slope - 0.1), 1 - fit.r_squared)

        return [
            Check("spiral.ode_residual", "m z1'' + gamma z1' + kappa z1 = 0 and m z2'' - gamma z2' + kappa z2 = 0", 1e-6, ode_residual),
            Check("spiral.stencil_order", "finite-difference residual shrinks 16x when h halves", 4.0, stencil_order),
            Check("spiral.rho_residual", "m rho'' + K rho = 0 with Omega = Gamma/d", 1e-6, rho_residual),
            Check("spiral.rho_control", "a 1% wrong slope d breaks m rho'' + K rho = 0", 0.0, rho_control, "property"),
            Check("spiral.rk4_error", "RK4 matches the analytic spiral over two periods", 1e-8, lambda: rk4_error(self.config.rk4_steps)),
            Check("spiral.rk4_order", "RK4 error shrinks 16x when the step halves", 4.0, lambda: abs(rk4_error(256) / rk4_error(512) - 16)),
            Check("spiral.euler_lagrange", "p_z1' = dL/dz1 and p_z2' = dL/dz2", 1e-6, euler_lagrange),
            Check("spiral.period", "theta(T) = 2 pi with T = 2 pi d / Gamma", 1e-12, lambda: abs(spiral.theta_of_t(mech, mech.d, period) - 2 * math.pi)),
            Check("spiral.slope_round_trip", "fit of ln r against theta recovers d", 1e-6, slope_round_trip),
            Check("spiral.turn_rescaling", "r(theta + 2 pi) = e^(2 pi d) r(theta) for both handednesses", 1e-12, turn_rescaling),
            Check("spiral.radius_product", "|z1| |z2| = r0^2", 1e-12, radius_product),
            Check("spiral.undamped_twins", "gamma = 0 with equal initial data gives z1 = z2 under RK4", 1e-14, undamped_twins),
        ]

    def _dissipative_checks(self) -> List[Check]:
        diss = self.Dissipative
        K = self.config.tensor_cutoff
        grid = (0.25, 0.5, 1.0, 2.0)

        def casimir() -> float:
            _, _, gens = diss.build_modes(K)
            state = np.zeros(K * K)
            state[2 * K + 1] = 1.0
            return float(np.max(np.abs(gens.Casimir.matrix @ state - 0.5 * state)))

        def fidelity_law() -> float:
            return max(abs(diss.vacuum_evolution(1.0, x).pair_amplitudes[0] - diss.vacuum_fidelity(1.0, x)) for x in grid)

        def unit_norm() -> float:
            return max(abs(diss.vacuum_evolution(1.0, x).deficit) for x in grid)

        def fidelity_values() -> float:
            at_one = abs(diss.vacuum_fidelity(1.0, 1.0) - 0.648054)
            at_ten = diss.vacuum_fidelity(1.0, 10.0)
            if at_ten >= 1e-4:
                return math.inf
            return max(at_one, abs(at_ten - math.exp(-math.log(math.cosh(10.0)))))

        def entropy_closed() -> float:
            return max(abs(diss.entropy_expectation(1.0, x) - diss.entropy_closed_form(1.0, x)) for x in (0.25, 0.5, 1.0, 1.5))

        def entropy_symmetry() -> float:
            return max(abs(diss.entropy_expectation(1.0, x, mode="A") - diss.entropy_expectation(1.0, x, mode="B")) for x in (0.5, 1.0, 1.5))

        def entropy_monotone() -> float:
            values = [diss.entropy_expectation(1.0, x) for x in np.linspace(0.1, 1.5, 8)]
            return _holds(bool(np.all(np.diff(values) > 0)))

        def entropy_singular() -> float:
            try:
                diss.entropy_operator(1.0, 0.0)
            except SingularInputError:
                return _holds(diss.entropy_closed_form(1.0, 0.0) == 0.0)
            return 1.0

        def thermodynamics() -> float:
            record = diss.thermodynamics(0.5, 2.0, 1.0)
            return max(abs(record.dF_dT + record.S), abs(record.U), abs(record.T - 0.5))

        def swap_sign() -> float:
            c, c_tilde, _ = diss.build_modes(K)
            total = diss.doubled_lhs(c, c_tilde) + diss.doubled_lhs(c_tilde, c)
            return float(np.max(np.abs(total.matrix)))

        def pair_creation() -> float:
            return max(
                abs(diss.pair_creation_element(K, (1, 1))),
                abs(diss.pair_creation_element(K, (2, 0)) - math.sqrt(2) / 2),
            )

        def squeeze_at_zero() -> float:
            U = diss.two_mode_squeeze_generator(1.0, 0.0).matrix
            return float(np.max(np.abs(U - np.eye(K * K))))

        return [
            Check("dissipative.mode_algebra", "[A,A^dagger] = [B,B^dagger] = 1, [A,B] = [A,B^dagger] = 0, [H0,HI] = 0", 1e-10, lambda: max(diss.mode_contracts(K).values())),
            Check("dissipative.pair_closure", "HI maps span{|n,n>} into itself", 1e-14, lambda: diss.pair_closure_residual(K)),
            Check("dissipative.casimir", "C|2,1> = (1/2)|2,1>", 1e-12, casimir),
            Check("dissipative.vacuum_evolution", "tanh^n(Gamma t)/cosh(Gamma t) = exp(-i t HI)|0,0>", 1e-8, lambda: max(diss.evolution_crosscheck(1.0, x) for x in grid)),
            Check("dissipative.unit_norm", "<0(t)|0(t)> = 1", 1e-10, unit_norm),
            Check("dissipative.fidelity_law", "<0|0(t)> = 1/cosh(Gamma t)", 1e-12, fidelity_law),
            Check("dissipative.fidelity_values", "1/cosh(1) = 0.648054 and decay below 1e-4 at Gamma t = 10", 1e-6, fidelity_values),
            Check("dissipative.fidelity_radius", "<0|0(t)> tracks 2 r0 / r(t) for large Gamma t", 1e-8, lambda: abs(diss.fidelity_radius_ratio(1.0, 10.0) - 1)),
            Check("dissipative.entropy_closed_form", "<S_A> = cosh^2 ln cosh^2 - sinh^2 ln sinh^2", 1e-6, entropy_closed),
            Check("dissipative.entropy_symmetry", "<S_A> = <S_B>", 1e-10, entropy_symmetry),
            Check("dissipative.entropy_monotone", "<S_A> increases with t", 0.0, entropy_monotone, "property"),
            Check("dissipative.entropy_singular", "S is singular at t = 0 with limit 0", 0.0, entropy_singular, "property"),
            Check("dissipative.thermodynamics", "U = 0 on pairs, T = Gamma, dF/dT = -2<J2>", 1e-4, thermodynamics),
            Check("dissipative.doubled_identity", "(c^2 - c^dagger^2) - (c~^2 - c~^dagger^2) = -2(C^dagger D^dagger - CD)", 1e-10, lambda: diss.doubled_fractal_identity(K)),
            Check("dissipative.doubled_identity_swap", "exchanging c and c~ flips the sign of the doubled exponent", 1e-12, swap_sign),
            Check("dissipative.pair_creation_element", "<1,1|C^dagger D^dagger|0,0> = 0, <2,0|C^dagger D^dagger|0,0> = sqrt2/2", 1e-12, pair_creation),
            Check("dissipative.squeeze_identity", "U(0) = 1", 1e-14, squeeze_at_zero),
            Check("dissipative.squeezing_parameter", "zeta = -Gamma t", 1e-12, lambda: abs(diss.squeezing_parameter(1.0, 0.75) + 0.75)),
            Check("dissipative.squeezed_vacuum", "U(t)|0,0> = |0(t)> in the A/B pair basis, Gamma t <= 1.5", 1e-8, lambda: max(diss.squeeze_crosscheck(1.0, x) for x in (0.5, 1.0, 1.5))),
        ]

    def _golden_checks(self) -> List[Check]:
        golden, spiral = self.Golden, self.Spiral
        phi = golden.constants.phi

        def quarter_turns() -> float:
            return max(
                abs(golden.golden_radius(1.0, math.pi / 2) - phi),
                abs(golden.golden_radius(1.0, 3 * math.pi / 2) - phi ** 3),
                abs(golden.quarter_turn_progression(2.0, 5) / golden.quarter_turn_progression(2.0, 4) - phi),
            )

        def fibonacci() -> float:
            prefix = [golden.fibonacci(n) for n in range(1, 8)]
            return _holds(prefix == [1, 1, 2, 3, 5, 8, 13] and golden.fibonacci(12) == 144)

        def ode() -> float:
            times = np.arange(0, 2, self.config.step)
            return float(max(np.max(res) for res in golden.ode_check(times)))

        def deviation_trend() -> float:
            deviations = {n: golden.golden_deviation(n) for n in (4, 6, 7, 12, 20, 21, 40)}
            settles = abs(deviations[21] - deviations[20]) < abs(deviations[7] - deviations[6])
            shrinks = deviations[4] > deviations[12]
            return _holds(settles and shrinks and min(deviations.values()) > 0 and deviations[40] > 1e-3)

        def ratio_trend() -> float:
            mismatch = [golden.ratio_mismatch(n) for n in range(2, 21)]
            return _holds(all(a > b > 0 for a, b in zip(mismatch, mismatch[1:])))

        def tiling_continuity() -> float:
            arcs = golden.fibonacci_tiling(12)
            gaps = [
                math.dist(
                    (prev.center[0] + prev.radius * math.cos(prev.end_angle), prev.center[1] + prev.radius * math.sin(prev.end_angle)),
                    (arc.center[0] + arc.radius * math.cos(arc.start_angle), arc.center[1] + arc.radius * math.sin(arc.start_angle)),
                )
                for prev, arc in zip(arcs, arcs[1:])
            ]
            return max(gaps) / arcs[-1].radius

        def slope_round_trip() -> float:
            theta = np.linspace(0, 4 * math.pi, 400)
            samples = [(t, golden.golden_radius(1.0, t)) for t in theta]
            return abs(spiral.fit_loglog_slope(samples).slope - golden.constants.d_g)

        return [
            Check("golden.constants", "psi = 1 - phi = -1/phi", 1e-14, lambda: abs(golden.constants.psi + 1 / phi)),
            Check("golden.quarter_turns", "r grows by phi per quarter turn", 1e-10, quarter_turns),
            Check("golden.fibonacci", "1, 1, 2, 3, 5, 8, 13 and F_12 = 144", 0.0, fibonacci, "property"),
            Check("golden.ratio_convergence", "F_20 / F_19 -> phi", 1e-7, lambda: abs(golden.ratio_convergence(20) - phi)),
            Check("golden.quadratic", "phi^2 - phi - 1 = psi^2 - psi - 1 = 0 and phi^n = phi^(n-1) + phi^(n-2)", 1e-12, lambda: max(golden.quadratic_and_recurrence_check().values())),
            Check("golden.ode", "r'' + r' - r = 0 for r = e^(-phi t) and e^(-psi t)", 1e-6, ode),
            Check("golden.psi_branch", "e^(-psi t) grows since psi < 0", 0.0, lambda: _holds(golden.psi_branch_grows(np.linspace(0, 5, 50))), "property"),
            Check("golden.deviation_trend", "Fibonacci spiral settles onto the golden spiral and never matches it", 0.0, deviation_trend, "property"),
            Check("golden.ratio_trend", "|F_n/F_(n-1) - phi| shrinks with n and stays positive", 0.0, ratio_trend, "property"),
            Check("golden.tiling_continuity", "consecutive quarter circles share their endpoints", 1e-12, tiling_continuity),
            Check("golden.slope_round_trip", "fit of ln r against theta recovers d_g = ln phi / (pi/2)", 1e-6, slope_round_trip),
        ]

    def _ncplane_checks(self) -> List[Check]:
        nc = self.NCPlane

        def radii() -> float:
            by_L = nc.quantized_radii(NCParams(L=1.0), 10)
            by_q = nc.quantized_radii(NCParams(q=1.0), 10)
            return max(
                max(abs(a - b) for a, b in zip(by_L, by_q)),
                abs(nc.quantized_radii(NCParams(q=0.5), 3)[3] - 1.75),
                abs(by_L[0] - 1),
            )

        def energy() -> float:
            radii = nc.quantized_radii(NCParams(q=0.8), 10)
            return max(abs(nc.fractal_energy(0.8, n) - radii[n] / 2) for n in range(11))

        def interference() -> float:
            dissipative = NCParams.dissipative(0.5)
            return max(
                abs(nc.interference_phase(2.0, dissipative) - 1.0),
                abs(nc.interference_phase(2.0, NCParams(L=dissipative.L)) - 1.0),
            )

        def xi_gamma_law() -> float:
            small = nc.velocity_xi_commutators(MechanicalParams(1.0, 2.0, 2.0))["xi_value"]
            large = nc.velocity_xi_commutators(MechanicalParams(1.0, 4.0, 5.0))["xi_value"]
            return abs(abs(large) - abs(small) / 2)

        def excited() -> float:
            product, bound = nc.uncertainty_check(0.6, level=1)
            return _holds(product > bound)

        return [
            Check("ncplane.radii", "L^2 (2n+1) = 2 q^2 (n + 1/2) under L = q", 1e-14, radii),
            Check("ncplane.ladder_algebra", "[z_q, z_q^dagger] = 1 and [x1, x2] = i q^2, q in {0.5, 0.7, 1, 1.3}", 1e-10, lambda: max(max(nc.ladder_contracts(q, self.config.cutoff).values()) for q in (0.5, 0.7, 1.0, 1.3))),
            Check("ncplane.spectrum", "spec(x1^2 + x2^2) = 2 q^2 (n + 1/2), q in {0.5, 1, 1.3}", 1e-6, lambda: max(nc.spectrum_deviation(q) for q in (0.5, 1.0, 1.3))),
            Check("ncplane.velocity_commutator", "[v+, v-] = -i gamma / m^2", 1e-10, lambda: nc.velocity_xi_commutators(MechanicalParams(1.0, 2.0, 2.0))["v"]),
            Check("ncplane.xi_commutator", "[xi+, xi-] = i / gamma", 1e-10, lambda: nc.velocity_xi_commutators(MechanicalParams(1.0, 2.0, 2.0))["xi"]),
            Check("ncplane.xi_gamma_law", "doubling gamma halves [xi+, xi-]", 1e-10, xi_gamma_law),
            Check("ncplane.uncertainty", "Delta x1 Delta x2 = q^2/2 on the ground state", 1e-8, lambda: max(abs(p - b) for p, b in (nc.uncertainty_check(q) for q in (0.6, 1.0)))),
            Check("ncplane.uncertainty_excited", "excited states exceed q^2/2", 0.0, excited, "property"),
            Check("ncplane.fractal_energy", "E_n = delta_n^2 / 2", 1e-14, energy),
            Check("ncplane.interference", "phase = A gamma = A / L^2 with L^2 = 1/gamma", 1e-12, interference),
        ]
