import unittest
from fractal_helper import NCPlane, NCParams, MechanicalParams
from fractal_helper.errors import InvalidDimensionError, ParameterRangeError
import logging
import math
import numpy as np

class test_ncplane(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        logging.info("Starting NCPlane Tests")

        logging.debug("Loading NCPlane class")
        cls.NCPlane = NCPlane()

    def test_params(self):
        dissipative = NCParams.dissipative(0.5)
        self.assertAlmostEqual(dissipative.L, math.sqrt(2))
        self.assertEqual(dissipative.gamma, 0.5)
        self.assertEqual(NCParams(q=0.7).scale, 0.7)

        with self.assertRaises(ParameterRangeError):
            NCParams()

        with self.assertRaises(ParameterRangeError):
            NCParams(L=1.0, q=1.0)

        with self.assertRaises(ParameterRangeError):
            NCParams(q=-1.0)

        # gamma must agree with L^2 = 1/gamma
        with self.assertRaises(ParameterRangeError):
            NCParams(L=1.0, gamma=2.0)

        with self.assertRaises(ParameterRangeError):
            NCParams.dissipative(0.0)

    def test_quantized_radii(self):
        logging.info("Testing quantized radii")

        self.assertEqual(self.NCPlane.quantized_radii(NCParams(L=1.0), 3), [1.0, 3.0, 5.0, 7.0])
        self.assertAlmostEqual(self.NCPlane.quantized_radii(NCParams(q=0.5), 3)[3], 1.75)

        # Schemes agree under L = q
        np.testing.assert_allclose(
            self.NCPlane.quantized_radii(NCParams(L=1.3), 10),
            self.NCPlane.quantized_radii(NCParams(q=1.3), 10),
        )

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.quantized_radii(NCParams(q=1.0), -1)

    def test_ladder(self):
        logging.info("Testing deformed ladder operators")

        for q in (0.5, 1.0, 1.3):
            contracts = self.NCPlane.ladder_contracts(q, 32)
            self.assertLess(contracts["z_zdag"], 1e-10)
            self.assertLess(contracts["x1_x2"], 1e-10)

        # q = 1 is the undeformed ladder
        z, _, _, _ = self.NCPlane.deformed_ladder(1.0, 8)
        np.testing.assert_allclose(z.matrix, self.NCPlane.Fock.annihilation(8).matrix, atol=1e-14)

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.deformed_ladder(0.0, 8)

        with self.assertRaises(InvalidDimensionError):
            self.NCPlane.deformed_ladder(1.0, 3)

    def test_spectrum(self):
        logging.info("Testing radius spectrum")

        self.assertLess(self.NCPlane.spectrum_deviation(1.0, 16), 1e-6)

        eigenvalues, used = self.NCPlane.converged_spectrum(0.5, 4, 16)
        self.assertGreater(used, 16)
        np.testing.assert_allclose(eigenvalues, 2 * 0.25 * (np.arange(4) + 0.5), rtol=1e-6)

    def test_interference(self):
        dissipative = NCParams.dissipative(0.5)

        self.assertAlmostEqual(self.NCPlane.interference_phase(2.0, dissipative), 1.0)
        self.assertAlmostEqual(self.NCPlane.interference_phase(2.0, NCParams(L=dissipative.L)), 1.0)
        self.assertAlmostEqual(self.NCPlane.interference_phase(2.0, NCParams(q=2.0)), 0.5)
        self.assertEqual(self.NCPlane.interference_phase(0.0, NCParams(q=2.0)), 0.0)

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.interference_phase(-1.0, dissipative)

    def test_velocity_xi(self):
        logging.info("Testing velocity and xi commutators")

        result = self.NCPlane.velocity_xi_commutators(MechanicalParams(1.0, 2.0, 2.0))
        self.assertLess(result["v"], 1e-10)
        self.assertLess(result["xi"], 1e-10)
        self.assertAlmostEqual(result["xi_value"], 0.5j)

        # Doubling gamma halves [xi+, xi-]
        larger = self.NCPlane.velocity_xi_commutators(MechanicalParams(1.0, 4.0, 5.0))
        self.assertAlmostEqual(larger["xi_value"], 0.25j)

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.velocity_xi_commutators(MechanicalParams(1.0, 0.0, 1.0))

        with self.assertRaises(InvalidDimensionError):
            self.NCPlane.velocity_xi_commutators(MechanicalParams(1.0, 2.0, 2.0), 4)

    def test_uncertainty(self):
        logging.info("Testing the zero-point uncertainty")

        for q in (0.6, 1.0):
            product, bound = self.NCPlane.uncertainty_check(q)
            self.assertAlmostEqual(bound, q ** 2 / 2)
            self.assertLess(abs(product - bound), 1e-8)

        product, bound = self.NCPlane.uncertainty_check(0.6, level=1)
        self.assertGreater(product, bound)

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.uncertainty_check(1.0, 16, level=14)

        with self.assertRaises(InvalidDimensionError):
            self.NCPlane.uncertainty_check(1.0, 8)

    def test_fractal_energy(self):
        radii = self.NCPlane.quantized_radii(NCParams(q=0.8), 5)

        for n in range(6):
            self.assertAlmostEqual(self.NCPlane.fractal_energy(0.8, n), radii[n] / 2, places=14)

        with self.assertRaises(ParameterRangeError):
            self.NCPlane.fractal_energy(0.8, -1)
