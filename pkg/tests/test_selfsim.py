import unittest
from fractal_helper import Fock, SelfSim, Polyline, SimilaritySpec, QDeformation
from fractal_helper.errors import InvalidSampleError, ParameterRangeError, SingularInputError
import logging
import math
import numpy as np

class test_selfsim(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        logging.info("Starting SelfSim Tests")

        logging.debug("Loading SelfSim class")
        cls.SelfSim = SelfSim()

    def test_polyline(self):
        curve = Polyline([[0, 0], [3, 4], [3, 5]])

        self.assertEqual(len(curve), 3)
        self.assertEqual(curve.segment_count, 2)
        self.assertAlmostEqual(curve.length, 6.0)
        self.assertEqual(list(curve.to_frame().columns), ["x", "y"])

        with self.assertRaises(InvalidSampleError):
            Polyline([[0, 0]])

        with self.assertRaises(InvalidSampleError):
            Polyline([[0, 0], [0, 0], [1, 1]])

    def test_koch_depth_one(self):
        logging.info("Testing Koch depth 1")

        points = self.SelfSim.koch_iterate(1).points
        expected = [
            [0, 0],
            [1 / 3, 0],
            [0.5, math.sqrt(3) / 6],
            [2 / 3, 0],
            [1, 0],
        ]
        np.testing.assert_allclose(points, expected, atol=1e-15)

        # Bump is on the left of travel
        self.assertGreater(points[2, 1], 0)

    def test_koch_census(self):
        logging.info("Testing Koch segment census")

        for depth in range(9):
            curve = self.SelfSim.koch_iterate(depth)
            self.assertEqual(curve.segment_count, 4 ** depth)
            np.testing.assert_allclose(curve.segment_lengths(), 3.0 ** -depth, rtol=1e-10)
            self.assertAlmostEqual(curve.length / (4 / 3) ** depth, 1.0, places=10)

            np.testing.assert_allclose(curve.points[0], [0, 0])
            np.testing.assert_allclose(curve.points[-1], [1, 0])

    def test_koch_depth_guard(self):
        with self.assertRaises(ParameterRangeError):
            self.SelfSim.koch_iterate(-1)

        with self.assertRaises(ParameterRangeError):
            self.SelfSim.koch_iterate(13)

    def test_self_similarity(self):
        for depth in (1, 3, 5):
            self.assertLess(self.SelfSim.koch_self_similarity_residual(depth), 1e-12)

    def test_dimension(self):
        logging.info("Testing similarity dimension")

        self.assertAlmostEqual(self.SelfSim.similarity_dimension(4, 3), 1.2619, places=4)
        self.assertAlmostEqual(self.SelfSim.similarity_dimension(2, 2), 1.0)
        self.assertAlmostEqual(SimilaritySpec(9, 3).dimension, 2.0)

        with self.assertRaises(ParameterRangeError):
            self.SelfSim.similarity_dimension(1, 3)

        with self.assertRaises(ParameterRangeError):
            self.SelfSim.similarity_dimension(4, 1)

    def test_koch_deformation(self):
        q, alpha = self.SelfSim.koch_deformation()

        self.assertIsInstance(q, QDeformation)
        self.assertAlmostEqual(q.q, 0.25, places=12)
        self.assertAlmostEqual(q.q * alpha, 1.0, places=12)
        self.assertAlmostEqual(q.zeta, -math.log(4), places=12)

    def test_u_n(self):
        logging.info("Testing u_n basis functions")

        self.assertEqual(self.SelfSim.u_n(0.5, 2.0, 0), 1)
        self.assertAlmostEqual(self.SelfSim.u_n(0.5, 2.0, 3), 1.0)
        self.assertAlmostEqual(self.SelfSim.u_n(1.0, 1j, 2), -1.0)
        self.assertAlmostEqual(self.SelfSim.u_n(1.0, 2.0, 2, normalized=True), 4 / math.sqrt(2))

        with self.assertRaises(ParameterRangeError):
            self.SelfSim.u_n(1.0, 1.0, -1)

    def test_orthonormality(self):
        self.assertLess(self.SelfSim.orthonormality_residual(4), 1e-8)

        # Deformed basis is no longer orthonormal under the undeformed measure
        self.assertGreater(self.SelfSim.orthonormality_residual(2, q=0.5), 0.1)

    def test_q_derivative(self):
        logging.info("Testing the q-derivative")

        q, alpha = 0.5, 1.5 + 0.25j
        for n in range(1, 5):
            bracket = (q ** n - 1) / (q - 1)
            value = self.SelfSim.q_derivative(lambda z, n=n: z ** n, q, alpha)
            self.assertLess(abs(value - bracket * alpha ** (n - 1)), 1e-12)

        # Reduces to the ordinary derivative near q = 1
        value = self.SelfSim.q_derivative(np.exp, 1 + 1e-7, 0.5)
        self.assertAlmostEqual(value.real, math.exp(0.5), places=5)

    def test_q_derivative_singular(self):
        with self.assertRaises(SingularInputError):
            self.SelfSim.q_derivative(lambda z: z, 0.5, 0)

        with self.assertRaises(SingularInputError):
            self.SelfSim.q_derivative(lambda z: z, 1.0, 2.0)

    def test_q_derivative_sampled(self):
        logging.info("Testing the q-derivative on samples")

        q, alpha = 0.5, 1.5 + 0.25j
        grid = alpha * q ** np.arange(4)
        from_samples = self.SelfSim.q_derivative(grid ** 3, q, alpha)
        self.assertAlmostEqual(from_samples, self.SelfSim.q_derivative(lambda z: z ** 3, q, alpha), places=12)

        with self.assertRaises(InvalidSampleError):
            self.SelfSim.q_derivative([1.0], q, alpha)

    def test_q_derivative_linear(self):
        q, alpha = 0.5, 1.5 + 0.25j
        f, g = (lambda z: z ** 3), (lambda z: z ** 2 + 1)

        combined = self.SelfSim.q_derivative(lambda z: 2 * f(z) - 0.5j * g(z), q, alpha)
        separate = 2 * self.SelfSim.q_derivative(f, q, alpha) - 0.5j * self.SelfSim.q_derivative(g, q, alpha)
        self.assertLess(abs(combined - separate), 1e-12)

    def test_u_n_lens(self):
        logging.info("Testing u_n against the magnifying lens")

        fock = Fock()
        q, alpha = 0.5, 1 + 0.5j
        for n in range(6):
            self.assertLess(abs(self.SelfSim.u_n(q, alpha, n) - fock.magnifying_lens(q, alpha, n, 64)), 1e-8)
