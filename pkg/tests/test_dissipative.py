import unittest
from fractal_helper import Dissipative, TwoModeState, RunConfig
from fractal_helper.errors import (
    CutoffTooSmallError,
    InvalidDimensionError,
    ParameterRangeError,
    SingularInputError,
)
import logging
import math
import numpy as np

class test_dissipative(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        logging.info("Starting Dissipative Tests")

        logging.debug("Loading Dissipative class")
        cls.Dissipative = Dissipative()
        cls.K = cls.Dissipative.config.tensor_cutoff

    def test_build_modes(self):
        logging.info("Testing A/B modes")

        A, B, gens = self.Dissipative.build_modes(6)
        self.assertEqual(A.dim, 36)
        self.assertEqual(B.dim, 36)

        # C|2,1> = (1/2)|2,1>
        state = np.zeros(36)
        state[2 * 6 + 1] = 1.0
        np.testing.assert_allclose(gens.Casimir.matrix @ state, 0.5 * state, atol=1e-14)

        # J+|0,0> = |1,1>
        vacuum = np.zeros(36)
        vacuum[0] = 1.0
        self.assertAlmostEqual(abs((gens.Jplus.matrix @ vacuum)[7]), 1.0)

        with self.assertRaises(InvalidDimensionError):
            self.Dissipative.build_modes(3)

    def test_mode_contracts(self):
        contracts = self.Dissipative.mode_contracts(self.K)

        self.assertEqual(set(contracts), {"A_Adag", "B_Bdag", "A_B", "A_Bdag", "H0_HI"})
        for name, deviation in contracts.items():
            self.assertLess(deviation, 1e-10, name)

    def test_pair_closure(self):
        self.assertLess(self.Dissipative.pair_closure_residual(self.K), 1e-14)

    def test_interior_mask(self):
        mask = self.Dissipative.interior_mask(4, margin=1)

        self.assertEqual(mask.sum(), 9)
        self.assertTrue(mask[0])
        self.assertFalse(mask[3])
        self.assertFalse(mask[12])

    def test_vacuum_evolution(self):
        logging.info("Testing vacuum evolution")

        state = self.Dissipative.vacuum_evolution(1.0, 1.0)
        self.assertIsInstance(state, TwoModeState)
        self.assertEqual(state.cutoff, 512)
        self.assertAlmostEqual(state.pair_amplitudes[0], 1 / math.cosh(1.0), places=14)
        self.assertAlmostEqual(state.pair_amplitudes[3], math.tanh(1.0) ** 3 / math.cosh(1.0), places=14)
        self.assertLess(abs(state.deficit), 1e-10)
        self.assertFalse(state.full_support)

        # Starting point is the vacuum
        start = self.Dissipative.vacuum_evolution(1.0, 0.0, 4)
        np.testing.assert_array_equal(start.pair_amplitudes, [1, 0, 0, 0])
        self.assertEqual(start.tail_mass, 0.0)

        with self.assertRaises(ParameterRangeError):
            self.Dissipative.vacuum_evolution(1.0, -1.0)

    def test_pair_cutoff(self):
        logging.info("Testing pair cutoff guard")

        with self.assertRaises(CutoffTooSmallError) as ctx:
            self.Dissipative.vacuum_evolution(1.0, 2.0, 64)

        required = ctx.exception.required
        self.assertGreater(required, 300)
        self.assertLessEqual(required, 512)
        self.assertLess(self.Dissipative.pair_tail(1.0, 2.0, required), 1e-12)
        self.assertGreaterEqual(self.Dissipative.pair_tail(1.0, 2.0, required - 1), 1e-12)

        state = self.Dissipative.vacuum_evolution(1.0, 2.0, required)
        self.assertLess(abs(state.deficit), 1e-10)

    def test_evolution_crosscheck(self):
        logging.info("Testing closed form against expm")

        for x in (0.25, 1.0, 2.0):
            self.assertLess(self.Dissipative.evolution_crosscheck(1.0, x), 1e-8)

        # Same state reached through Gamma or t
        np.testing.assert_allclose(
            self.Dissipative.pair_exponential(0.5, 2.0, 64),
            self.Dissipative.pair_exponential(1.0, 1.0, 64),
        )

    def test_two_mode_state(self):
        state = TwoModeState(2, [0.6, 0.8])

        self.assertAlmostEqual(state.norm, 1.0)
        self.assertAlmostEqual(state.deficit, 0.0)
        np.testing.assert_allclose(state.probabilities, [0.36, 0.64])

        with self.assertRaises(ValueError):
            state.pair_amplitudes[0] = 1.0

        with self.assertRaises(InvalidDimensionError):
            TwoModeState(3, [1.0, 0.0])

    def test_fidelity(self):
        logging.info("Testing vacuum fidelity")

        self.assertAlmostEqual(self.Dissipative.vacuum_fidelity(1.0, 1.0), 0.648054, places=6)
        self.assertLess(self.Dissipative.vacuum_fidelity(1.0, 10.0), 1e-4)
        self.assertAlmostEqual(self.Dissipative.vacuum_fidelity(1.0, 0.0), 1.0, places=15)

        # Stays finite where cosh overflows
        far = self.Dissipative.vacuum_fidelity(1.0, 1000.0)
        self.assertTrue(math.isfinite(far))
        self.assertGreaterEqual(far, 0.0)

        self.assertAlmostEqual(self.Dissipative.fidelity_radius_ratio(1.0, 10.0), 1.0, places=8)
        self.assertLess(self.Dissipative.fidelity_radius_ratio(1.0, 0.5), 1.0)

    def test_entropy(self):
        logging.info("Testing the entropy operator")

        closed = self.Dissipative.entropy_closed_form(1.0, 1.0)
        self.assertAlmostEqual(closed, 1.6197, places=3)
        self.assertAlmostEqual(self.Dissipative.entropy_expectation(1.0, 1.0), closed, places=6)

        for x in (0.5, 1.5):
            self.assertAlmostEqual(
                self.Dissipative.entropy_expectation(1.0, x, mode="A"),
                self.Dissipative.entropy_expectation(1.0, x, mode="B"),
                places=10,
            )

        values = [self.Dissipative.entropy_expectation(1.0, x) for x in (0.2, 0.6, 1.0, 1.4)]
        self.assertTrue(np.all(np.diff(values) > 0))

    def test_entropy_operator(self):
        S = self.Dissipative.entropy_operator(1.0, 1.0, 8)

        # Per-mode cutoff one above the 8 pair levels
        self.assertEqual(S.shape, (81, 81))
        dense = S.toarray()
        np.testing.assert_allclose(dense, np.diag(np.diag(dense)), atol=1e-14)

        # Vacuum entry is ln cosh^2
        self.assertAlmostEqual(dense[0, 0].real, 2 * math.log(math.cosh(1.0)))

        with self.assertRaises(SingularInputError):
            self.Dissipative.entropy_operator(1.0, 0.0)
        self.assertEqual(self.Dissipative.entropy_closed_form(1.0, 0.0), 0.0)

        with self.assertRaises(ParameterRangeError):
            self.Dissipative.entropy_operator(1.0, 1.0, 8, mode="C")

    def test_entropy_modes(self):
        logging.info("Testing S_A against S_B")

        S_A = self.Dissipative.entropy_operator(1.0, 1.0, 8, mode="A")
        S_B = self.Dissipative.entropy_operator(1.0, 1.0, 8, mode="B")
        self.assertGreater(abs(S_A - S_B).max(), 0.1)

        # Equal on any pair state
        state = TwoModeState(8, [0.5, 0.5j, -0.5, 0.3, 0.2, 0.1, 0.3, 0.1])
        psi = self.Dissipative.embed_pair_state(state, 9)
        self.assertAlmostEqual(np.vdot(psi, S_A @ psi).real, np.vdot(psi, S_B @ psi).real, places=12)

        # |2,1> splits them by |c|^2 ln coth^2
        psi[2 * 9 + 1] = 0.5
        gap = np.vdot(psi, S_A @ psi).real - np.vdot(psi, S_B @ psi).real
        self.assertAlmostEqual(gap, 0.25 * 2 * math.log(1 / math.tanh(1.0)), places=12)

    def test_embed_pair_state(self):
        state = TwoModeState(3, [0.6, 0.0, 0.8])

        psi = self.Dissipative.embed_pair_state(state, 4)
        self.assertEqual(psi.shape, (16,))
        self.assertEqual(psi[0], 0.6)
        self.assertEqual(psi[10], 0.8)
        self.assertAlmostEqual(float(np.linalg.norm(psi)), 1.0)

        with self.assertRaises(InvalidDimensionError):
            self.Dissipative.embed_pair_state(state, 2)

    def test_tail_at_tolerance(self):
        # A tail equal to the tolerance is accepted
        tail = self.Dissipative.pair_tail(1.0, 1.0, 40)
        exact = Dissipative(RunConfig(tail_tolerance=tail))

        state = exact.vacuum_evolution(1.0, 1.0, 40)
        self.assertEqual(state.tail_mass, tail)
        self.assertLessEqual(abs(exact.required_pair_cutoff(1.0, 1.0) - 40), 1)

        with self.assertRaises(CutoffTooSmallError):
            exact.vacuum_evolution(1.0, 1.0, 39)

    def test_thermodynamics(self):
        logging.info("Testing thermodynamics")

        record = self.Dissipative.thermodynamics(0.5, 2.0, 1.0)

        self.assertEqual(record.T, 0.5)
        self.assertAlmostEqual(record.U, 0.0, places=14)
        self.assertAlmostEqual(record.S, 0.0, places=14)
        self.assertAlmostEqual(record.dF_dT, -record.S, places=8)
        self.assertAlmostEqual(record.F, record.U - record.T * record.S)
        self.assertAlmostEqual(record.entropy_operator, self.Dissipative.entropy_closed_form(0.5, 1.0), places=6)

        self.assertEqual(set(record.to_dict()), {"U", "S", "T", "F", "dF_dT", "entropy_operator"})

    def test_doubled_identity(self):
        logging.info("Testing the doubled fractal identity")

        self.assertLess(self.Dissipative.doubled_fractal_identity(self.K), 1e-10)
        self.assertLess(self.Dissipative.doubled_fractal_identity(self.K, swap=True), 1e-10)

        c, c_tilde, _ = self.Dissipative.build_modes(8)
        total = self.Dissipative.doubled_lhs(c, c_tilde) + self.Dissipative.doubled_lhs(c_tilde, c)
        self.assertLess(np.max(np.abs(total.matrix)), 1e-12)

        with self.assertRaises(InvalidDimensionError):
            self.Dissipative.doubled_fractal_identity(6)

    def test_pair_creation_element(self):
        element = self.Dissipative.pair_creation_element

        self.assertAlmostEqual(abs(element(self.K, (1, 1))), 0.0, places=12)
        self.assertAlmostEqual(element(self.K, (2, 0)).real, math.sqrt(2) / 2, places=12)
        self.assertAlmostEqual(element(self.K, (0, 2)).real, -math.sqrt(2) / 2, places=12)

    def test_squeeze_generator(self):
        logging.info("Testing the two-mode squeezing generator")

        U = self.Dissipative.two_mode_squeeze_generator(1.0, 0.0, 8).matrix
        np.testing.assert_allclose(U, np.eye(64), atol=1e-14)

        U = self.Dissipative.two_mode_squeeze_generator(1.0, 0.5, 8).matrix
        np.testing.assert_allclose(U.conj().T @ U, np.eye(64), atol=1e-10)

        self.assertAlmostEqual(self.Dissipative.squeezing_parameter(1.0, 0.75), -0.75, places=12)
        self.assertAlmostEqual(self.Dissipative.squeezing_parameter(2.0, 0.25, 6), -0.5, places=12)

        with self.assertRaises(ParameterRangeError):
            self.Dissipative.two_mode_squeeze_generator(1.0, 6.0, 8)

    def test_squeezed_vacuum(self):
        logging.info("Testing squeezed vacuum against pair evolution")

        for x in (0.5, 1.0):
            self.assertLess(self.Dissipative.squeeze_crosscheck(1.0, x), 1e-8)

        a_mode, b_mode = self.Dissipative.squeezed_vacuum(1.0, 0.5)
        self.assertAlmostEqual(float(np.linalg.norm(a_mode)), 1.0, places=10)
        self.assertLess(np.max(np.abs(a_mode[1::2])), 1e-14)

        with self.assertRaises(CutoffTooSmallError) as ctx:
            self.Dissipative.squeezed_vacuum(1.0, 1.0, 16)
        self.assertGreater(ctx.exception.required, 16)

    def test_pair_projection(self):
        vacuum = np.zeros(8)
        vacuum[0] = 1.0

        np.testing.assert_allclose(self.Dissipative.pair_projection(vacuum, vacuum, 3), [1, 0, 0, 0])

        with self.assertRaises(InvalidDimensionError):
            self.Dissipative.pair_projection(vacuum, vacuum, 4)

    def test_config_cutoff(self):
        small = Dissipative(RunConfig(pair_cutoff=8))

        with self.assertRaises(CutoffTooSmallError):
            small.vacuum_evolution(1.0, 1.0)

        # Pair levels follow the single-mode cutoff when pair_cutoff is unset
        derived = Dissipative(RunConfig(cutoff=8))
        self.assertEqual(derived.vacuum_evolution(1.0, 1.0).cutoff, 64)
        with self.assertRaises(CutoffTooSmallError):
            derived.vacuum_evolution(1.0, 2.0)
