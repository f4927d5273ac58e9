import unittest
from fractal_helper import Fock, FockOperator, FockState, QDeformation, RunConfig
from fractal_helper.errors import (
    CutoffTooSmallError,
    DimensionMismatchError,
    InvalidDimensionError,
    ParameterRangeError,
)
import logging
import math
import numpy as np

class test_fock(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        logging.info("Starting Fock Tests")

        logging.debug("Loading Fock class")
        cls.Fock = Fock()

    def test_deformation(self):
        q = QDeformation(0.5)
        self.assertAlmostEqual(q.zeta, math.log(0.5))
        self.assertAlmostEqual(QDeformation.from_zeta(q.zeta).q, 0.5)

        with self.assertRaises(ParameterRangeError):
            QDeformation(0.0)

    def test_ladder(self):
        logging.info("Testing ladder operators")

        a = self.Fock.annihilation(4).matrix
        np.testing.assert_allclose(np.diag(a, 1), [1, math.sqrt(2), math.sqrt(3)])
        np.testing.assert_allclose(self.Fock.creation(4).matrix, a.T)
        np.testing.assert_allclose(self.Fock.number(4).matrix, np.diag([0, 1, 2, 3]), atol=1e-15)

        with self.assertRaises(InvalidDimensionError):
            self.Fock.annihilation(1)

    def test_ccr(self):
        self.assertLess(self.Fock.ccr_deviation(64), 1e-12)

        # The last diagonal entry carries the truncation artifact
        a = self.Fock.annihilation(8)
        full = self.Fock.commutator(a, a.dagger()).matrix
        self.assertAlmostEqual(full[-1, -1].real, -7.0)

    def test_operator_algebra(self):
        a = self.Fock.annihilation(6)
        state = self.Fock.basis_state(3, 6)

        lowered = a @ state
        self.assertIsInstance(lowered, FockState)
        self.assertAlmostEqual(abs(lowered.amplitudes[2]), math.sqrt(3))

        combo = 2 * a + a.dagger() - self.Fock.identity(6)
        self.assertIsInstance(combo, FockOperator)
        self.assertAlmostEqual(combo.matrix[0, 1].real, 2.0)

        with self.assertRaises(DimensionMismatchError):
            a @ self.Fock.annihilation(5)

        with self.assertRaises(ParameterRangeError):
            self.Fock.basis_state(6, 6)

        # Read-only after construction
        with self.assertRaises(ValueError):
            a.matrix[0, 1] = 5

    def test_coherent_state(self):
        logging.info("Testing coherent states")

        psi = self.Fock.coherent_state(2.0, 64)
        self.assertAlmostEqual(psi.norm, 1.0, places=12)
        self.assertLess(psi.tail_mass, 1e-12)

        # <N> = |alpha|^2
        mean = self.Fock.expectation(self.Fock.number(64), psi)
        self.assertAlmostEqual(mean.real, 4.0, places=10)

        vacuum = self.Fock.coherent_state(0, 8)
        np.testing.assert_allclose(vacuum.amplitudes, self.Fock.basis_state(0, 8).amplitudes)

    def test_cutoff_too_small(self):
        with self.assertRaises(CutoffTooSmallError) as ctx:
            self.Fock.coherent_state(3.0, 10)

        required = ctx.exception.required
        self.assertGreater(required, 10)
        self.assertLessEqual(self.Fock.tail_mass(9.0, required), 1e-12)
        self.Fock.coherent_state(3.0, required)

    def test_fractal_operator(self):
        logging.info("Testing the fractal operator")

        np.testing.assert_allclose(np.diag(self.Fock.fractal_operator(0.5, 4).matrix), [1, 0.5, 0.25, 0.125])

        overlap, measured, analytic = self.Fock.fractal_action(0.5, 2 + 1j, 64)
        self.assertAlmostEqual(overlap, 1.0, places=10)
        self.assertAlmostEqual(measured / analytic, 1.0, places=10)
        self.assertAlmostEqual(analytic, math.exp((1.25 - 5) / 2))

        # q = 1 is the identity
        overlap, measured, _ = self.Fock.fractal_action(1.0, 1.5, 64)
        self.assertAlmostEqual(overlap, 1.0, places=12)
        self.assertAlmostEqual(measured, 1.0, places=12)

    def test_magnifying_lens(self):
        logging.info("Testing the magnifying lens identity")

        for label in (0.5, 1 + 0.5j, -1.2j, 2.0):
            for n in range(6):
                value = self.Fock.magnifying_lens(0.5, label / 0.5, n, 64)
                self.assertLess(abs(value - label ** n), 1e-8)

        with self.assertRaises(CutoffTooSmallError):
            self.Fock.magnifying_lens(1.0, 2.0, 5, 12)

        with self.assertRaises(ParameterRangeError):
            self.Fock.magnifying_lens(1.0, 2.0, -1, 64)

    def test_squeeze(self):
        logging.info("Testing single-mode squeezing")

        S = self.Fock.single_mode_squeeze(0.7, 64).matrix
        np.testing.assert_allclose(S.conj().T @ S, np.eye(64), atol=1e-10)

        # Squeezed vacuum has <N> = sinh^2 zeta
        psi = self.Fock.single_mode_squeeze(0.7, 64) @ self.Fock.basis_state(0, 64)
        mean = self.Fock.expectation(self.Fock.number(64), psi).real
        self.assertAlmostEqual(mean, math.sinh(0.7) ** 2, places=8)

        # Only even levels are populated
        self.assertLess(np.max(np.abs(psi.amplitudes[1::2])), 1e-14)

        np.testing.assert_allclose(self.Fock.single_mode_squeeze(0.0, 8).matrix, np.eye(8))

        with self.assertRaises(ParameterRangeError):
            self.Fock.single_mode_squeeze(5.5, 16)

    def test_squeeze_inverse(self):
        product = self.Fock.single_mode_squeeze(0.5, 64) @ self.Fock.single_mode_squeeze(-0.5, 64)
        np.testing.assert_allclose(product.matrix, np.eye(64), atol=1e-10)

    def test_negation(self):
        a = self.Fock.annihilation(4)

        np.testing.assert_array_equal((-a).matrix, -a.matrix)
        np.testing.assert_allclose((a + -a).matrix, np.zeros((4, 4)))

    def test_fractal_composition(self):
        logging.info("Testing q1^N q2^N = (q1 q2)^N")

        combined = self.Fock.fractal_operator(0.5, 64) @ self.Fock.fractal_operator(1.5, 64)
        np.testing.assert_allclose(combined.matrix, self.Fock.fractal_operator(0.75, 64).matrix, rtol=1e-12, atol=1e-15)

    def test_eigen_residual(self):
        logging.info("Testing a|alpha> = alpha|alpha>")

        for alpha in (0, 1.5 + 0.5j, -2j):
            self.assertLess(self.Fock.eigen_residual(alpha, 64), 1e-12)

        with self.assertRaises(CutoffTooSmallError):
            self.Fock.eigen_residual(4.0, 8)

    def test_tail_at_tolerance(self):
        # A tail equal to the tolerance is accepted
        tail = self.Fock.tail_mass(4.0, 20)

        state = self.Fock.coherent_state(2.0, 20, tolerance=tail)
        self.assertEqual(state.tail_mass, tail)
        self.assertEqual(self.Fock.required_cutoff(4.0, tail), 20)

        with self.assertRaises(CutoffTooSmallError):
            self.Fock.coherent_state(2.0, 20, tolerance=tail / 2)
