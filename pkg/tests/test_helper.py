import unittest
from dotenv import load_dotenv
import os
from fractal_helper import Helper, RunConfig, Polyline
from fractal_helper.Helper import svg_document, ENV_OUTPUT_DIR
from fractal_helper.errors import ConfigError, InvalidDimensionError
from pathlib import Path
import tempfile
import logging
import numpy as np
import pandas as pd

class test_helper(unittest.TestCase):

    @classmethod
    def setUpClass(cls) -> None:
        logging.info("Starting Helper Tests")

        logging.debug("Loading ENVs")
        load_dotenv()

        cls.tmp = tempfile.TemporaryDirectory()

        logging.debug("Loading Helper class")
        cls.Helper = Helper(data_dir=cls.tmp.name)

    @classmethod
    def tearDownClass(cls) -> None:
        cls.tmp.cleanup()

    def test_instance(self):
        logging.info("Testing instance")

        self.assertIsInstance(self.Helper, Helper)
        self.assertEqual(self.Helper.config, RunConfig())
        self.assertEqual(self.Helper.data_dir, Path(self.tmp.name))

    def test_defaults(self):
        config = RunConfig()

        self.assertEqual(config.cutoff, 64)
        self.assertIsNone(config.pair_cutoff)
        self.assertEqual(config.pair_levels, 512)
        self.assertEqual(config.tensor_cutoff, 12)
        self.assertEqual(config.margin, 2)
        self.assertEqual(config.tail_tolerance, 1e-12)
        self.assertEqual(config.report_path, "")

    def test_parse(self):
        logging.info("Testing config parsing")

        config = RunConfig.parse("# small run\ncutoff = 32\n\ntail_tolerance=1e-10  # looser\noutput_dir=out\n")
        self.assertEqual(config.cutoff, 32)
        self.assertEqual(config.tail_tolerance, 1e-10)
        self.assertEqual(config.output_dir, "out")
        self.assertEqual(config.margin, 2)

    def test_pair_levels(self):
        logging.info("Testing pair levels")

        # Follow the single-mode cutoff unless set
        self.assertEqual(RunConfig.parse("cutoff=8\n").pair_levels, 64)
        self.assertEqual(RunConfig.parse("cutoff=8\npair_cutoff=300\n").pair_levels, 300)
        self.assertEqual(RunConfig(pair_cutoff=8).pair_levels, 8)

    def test_parse_errors(self):
        logging.info("Testing config errors")

        with self.assertRaises(ConfigError) as ctx:
            RunConfig.parse("cutoff=32\nbogus=1\n")
        self.assertEqual(ctx.exception.line, 2)

        with self.assertRaises(ConfigError) as ctx:
            RunConfig.parse("\n\ncutoff\n")
        self.assertEqual(ctx.exception.line, 3)

        with self.assertRaises(ConfigError) as ctx:
            RunConfig.parse("cutoff=many\n")
        self.assertEqual(ctx.exception.line, 1)

        with self.assertRaises(ConfigError) as ctx:
            RunConfig.parse("cutoff=32\n# again\ncutoff=16\n")
        self.assertEqual(ctx.exception.line, 3)
        self.assertIn("line 1", str(ctx.exception))

        # Parses but fails validation
        with self.assertRaises(ConfigError):
            RunConfig.parse("cutoff=1\n")

        # Still a ValueError for older callers
        with self.assertRaises(ValueError):
            RunConfig.parse("nope=1\n")

    def test_load(self):
        logging.info("Testing config file loading")

        path = Path(self.tmp.name) / "run.cfg"
        path.write_text("pair_cutoff=8\n", encoding="utf-8")

        previous = os.environ.pop(ENV_OUTPUT_DIR, None)
        try:
            self.assertEqual(RunConfig.load(path).pair_cutoff, 8)

            os.environ[ENV_OUTPUT_DIR] = self.tmp.name
            self.assertEqual(RunConfig.load(path).output_dir, self.tmp.name)
        finally:
            os.environ.pop(ENV_OUTPUT_DIR, None)
            if previous is not None:
                os.environ[ENV_OUTPUT_DIR] = previous

        with self.assertRaises(ConfigError):
            RunConfig.load(Path(self.tmp.name) / "missing.cfg")

    def test_environment(self):
        env = RunConfig().environment()

        self.assertEqual(env["cutoffs"]["pair"], 512)
        self.assertEqual(env["margins"]["operator"], 2)
        self.assertIn("finite_difference", env["step_sizes"])

    def test_check_dimension(self):
        self.assertEqual(Helper._check_dimension(4), 4)

        with self.assertRaises(InvalidDimensionError):
            Helper._check_dimension(1)

        with self.assertRaises(InvalidDimensionError):
            Helper._check_dimension(6, minimum=8)

    def test_interior(self):
        matrix = np.arange(16).reshape(4, 4)

        np.testing.assert_array_equal(Helper._interior(matrix, 2), [[0, 1], [4, 5]])
        mask = np.array([True, False, True, False])
        np.testing.assert_array_equal(Helper._interior(matrix, mask), [[0, 2], [8, 10]])

    def test_write_csv(self):
        logging.info("Testing CSV writer")

        frame = pd.DataFrame({"x": [0.0, 0.1, -0.0], "y": [1.0, 1 / 3, 2.5e-17]})
        target = self.Helper._write_csv(frame, "points.csv")

        self.assertEqual(target, Path(self.tmp.name) / "points.csv")
        lines = target.read_text(encoding="utf-8").splitlines()
        self.assertEqual(lines[0], "x,y")
        self.assertEqual(lines[1], "0,1")
        self.assertEqual(lines[2], f"0.1,{1 / 3!r}")
        self.assertEqual(lines[3], "0,2.5e-17")

        # Round trip is exact
        self.assertEqual(float(lines[2].split(",")[1]), 1 / 3)

    def test_svg(self):
        logging.info("Testing SVG writer")

        svg = svg_document([[0, 0], [1, 0], [1, 1]])
        self.assertEqual(svg.count("<path"), 1)
        self.assertIn('viewBox="-0.05 -1.05 1.1 1.1"', svg)
        self.assertIn('d="M 0 0 L 1 0 L 1 -1"', svg)

        # Deterministic
        self.assertEqual(svg, svg_document([[0, 0], [1, 0], [1, 1]]))

    def test_export_polyline(self):
        curve = Polyline([[0.0, 0.0], [1.0, 0.0]])

        csv = self.Helper.export_polyline(curve, "line.csv")
        self.assertEqual(csv.read_text(encoding="utf-8"), "x,y\n0,0\n1,0\n")

        svg = self.Helper.export_polyline(curve, "line.svg", "svg")
        self.assertTrue(svg.read_text(encoding="utf-8").startswith("<svg"))

        with self.assertRaises(ValueError):
            self.Helper.export_polyline(curve, "line.png", "png")

    def test_write_json(self):
        target = self.Helper._write_json({"b": 1, "a": [1, 2]}, "doc.json")

        self.assertTrue(target.read_text(encoding="utf-8").startswith('{\n  "a"'))
