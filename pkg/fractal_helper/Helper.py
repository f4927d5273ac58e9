from pathlib import Path
import json
import logging
import os
from dataclasses import dataclass, fields, replace
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd
from dotenv import load_dotenv

from .errors import ConfigError, InvalidDimensionError

ENV_OUTPUT_DIR = "FRACTAL_HELPER_OUTPUT_DIR"
ENV_LOG_LEVEL = "FRACTAL_HELPER_LOG_LEVEL"

# Pair levels per single-mode level when pair_cutoff is left unset
PAIR_LEVELS_PER_CUTOFF = 8


@dataclass(frozen=True)
class RunConfig:
    """
    Flat key=value run configuration.

    Attributes:
        cutoff (int): Single-mode cutoff, also the starting cutoff for spectra.
        pair_cutoff (Optional[int]): Cutoff of the paired |n,n> subspace, 8 x cutoff when unset.
        tensor_cutoff (int): Per-mode cutoff for dense two-mode tensor operators.
        margin (int): Levels dropped per mode when comparing operator identities.
        tail_tolerance (float): Largest analytic probability mass allowed beyond a cutoff.
        step (float): Finite-difference step for residual checks.
        rk4_steps (int): Steps used by the RK4 checks.
        workers (int): Threads used to run verification checks.
        output_dir (str): Directory for generated artifacts.
        report_path (str): Where verify writes its JSON report, empty for stdout.
    """

    cutoff: int = 64
    pair_cutoff: Optional[int] = None
    tensor_cutoff: int = 12
    margin: int = 2
    tail_tolerance: float = 1e-12
    step: float = 1e-3
    rk4_steps: int = 10000
    workers: int = 4
    output_dir: str = "./data_fractal"
    report_path: str = ""

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        """
        Parses configuration text.

        Args:
            text (str): One key=value per line, '#' starts a comment.

        Returns:
            RunConfig: Defaults overridden by the given keys.

        Raises:
            ConfigError: On malformed lines, unknown or repeated keys and bad values.
        """
        known = {f.name: f.type for f in fields(cls)}
        values = {}
        seen = {}

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            if "=" not in line:
                msg = f"Line {number}: expected key=value, got '{raw.strip()}'"
                logging.error(msg)
                raise ConfigError(msg, line=number)

            key, value = (part.strip() for part in line.split("=", 1))
            if key not in known:
                msg = f"Line {number}: unknown key '{key}'"
                logging.error(msg)
                raise ConfigError(msg, line=number)

            if key in seen:
                msg = f"Line {number}: duplicate key '{key}', first set on line {seen[key]}"
                logging.error(msg)
                raise ConfigError(msg, line=number)
            seen[key] = number

            kind = known[key]
            try:
                if kind in (int, "int", Optional[int], "Optional[int]"):
                    values[key] = int(value)
                elif kind in (float, "float"):
                    values[key] = float(value)
                else:
                    values[key] = value
            except ValueError:
                msg = f"Line {number}: invalid value '{value}' for '{key}'"
                logging.error(msg)
                raise ConfigError(msg, line=number)

        config = cls(**values)
        config._validate()
        logging.debug(f"Parsed config {config}")
        return config

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "RunConfig":
        """
        Loads a configuration file, falling back to defaults, then applies
        environment overrides (a .env file is honoured).

        Args:
            path (Optional[str | Path]): Config file, None for defaults only.

        Returns:
            RunConfig: The effective configuration.
        """
        load_dotenv()

        if path is None:
            config = cls()
        else:
            path = Path(path)
            if not path.exists():
                msg = f"Config file not found: {path}"
                logging.error(msg)
                raise ConfigError(msg)
            logging.info(f"Loading config from {path}")
            config = cls.parse(path.read_text(encoding="utf-8"))

        env_dir = os.getenv(ENV_OUTPUT_DIR)
        if env_dir:
            logging.debug(f"Output directory overridden by environment: {env_dir}")
            config = replace(config, output_dir=env_dir)

        return config

    @property
    def pair_levels(self) -> int:
        """Effective pair cutoff, pair_cutoff or PAIR_LEVELS_PER_CUTOFF x cutoff"""
        return self.pair_cutoff if self.pair_cutoff is not None else PAIR_LEVELS_PER_CUTOFF * self.cutoff

    def _validate(self) -> None:
        checks = {
            "cutoff": self.cutoff >= 2,
            "pair_cutoff": self.pair_levels >= 2,
            "tensor_cutoff": self.tensor_cutoff >= 2,
            "margin": self.margin >= 0,
            "tail_tolerance": self.tail_tolerance > 0,
            "step": self.step > 0,
            "rk4_steps": self.rk4_steps >= 16,
            "workers": self.workers >= 1,
        }
        for key, ok in checks.items():
            if not ok:
                msg = f"Invalid value for '{key}': {getattr(self, key)}"
                logging.error(msg)
                raise ConfigError(msg)

    def environment(self) -> dict:
        """Numerical settings echoed into verification reports"""
        return {
            "cutoffs": {
                "single_mode": self.cutoff,
                "pair": self.pair_levels,
                "tensor": self.tensor_cutoff,
            },
            "margins": {"operator": self.margin},
            "step_sizes": {"finite_difference": self.step, "rk4_steps": self.rk4_steps},
            "tail_tolerance": self.tail_tolerance,
        }


class Helper:
    """
    Base class providing the shared configuration, truncated-space guards and
    artifact writers (CSV, SVG, JSON) for every fractal_helper module.

    Attributes:
        config (RunConfig): Effective run configuration.
        data_dir (Path): Directory generated artifacts are written to.
    """

    def __init__(self, config: Optional[RunConfig] = None, data_dir: Optional[str] = None) -> None:
        """
        Initializes the helper.

        Args:
            config (Optional[RunConfig]): Run configuration. Defaults to RunConfig().
            data_dir (Optional[str]): Output directory. Defaults to config.output_dir.
        """
        self.config = config or RunConfig()
        self.data_dir = Path(data_dir or self.config.output_dir)

        logging.debug(f"{type(self).__name__} initialized, data directory {self.data_dir}")

    @staticmethod
    def _check_dimension(dim: int, minimum: int = 2, name: str = "dim") -> int:
        """
        Checks that a truncated space is large enough.

        Args:
            dim (int): Requested dimension.
            minimum (int): Smallest allowed dimension.
            name (str): Parameter name used in the message.

        Returns:
            int: The dimension, as an int.

        Raises:
            InvalidDimensionError: If dim < minimum.
        """
        if int(dim) != dim or dim < minimum:
            msg = f"{name} must be an integer >= {minimum}, got {dim}"
            logging.error(msg)
            raise InvalidDimensionError(msg)
        return int(dim)

    @staticmethod
    def _interior(matrix: np.ndarray, keep: Union[int, np.ndarray]) -> np.ndarray:
        """
        Extracts the interior block of a truncated operator.

        Args:
            matrix (np.ndarray): Square operator matrix.
            keep (int | np.ndarray): Number of leading indices to keep, or a boolean mask.

        Returns:
            np.ndarray: The retained block.
        """
        if isinstance(keep, np.ndarray):
            return matrix[np.ix_(keep, keep)]
        return matrix[:keep, :keep]

    def _resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if not path.is_absolute() and path.parent == Path("."):
            path = self.data_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def _write_csv(self, frame: pd.DataFrame, path: Union[str, Path]) -> Path:
        """
        Writes a frame as CSV with shortest round-trip float formatting.

        Args:
            frame (pd.DataFrame): Data to write.
            path (str | Path): Target file. Bare file names land in data_dir.

        Returns:
            Path: The written file.
        """
        target = self._resolve(path)
        frame.apply(lambda column: column.map(_fmt)).to_csv(target, index=False, lineterminator="\n")
        logging.info(f"Wrote {len(frame)} rows to {target}")
        return target

    def _write_svg(self, points: np.ndarray, path: Union[str, Path], stroke: str = "black") -> Path:
        """
        Writes a standalone SVG holding a single path through the given points.

        The y axis is flipped so the drawing keeps its mathematical orientation,
        and the viewBox is padded by 5% on every side.

        Args:
            points (np.ndarray): (N, 2) array of planar points.
            path (str | Path): Target file. Bare file names land in data_dir.
            stroke (str): Stroke colour.

        Returns:
            Path: The written file.
        """
        target = self._resolve(path)
        target.write_text(svg_document(points, stroke), encoding="utf-8")
        logging.info(f"Wrote SVG path with {len(points)} points to {target}")
        return target

    def _write_json(self, payload: dict, path: Union[str, Path]) -> Path:
        """
        Writes a JSON document with sorted keys.

        Args:
            payload (dict): Serializable document.
            path (str | Path): Target file.

        Returns:
            Path: The written file.
        """
        target = self._resolve(path)
        target.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        logging.info(f"Wrote JSON to {target}")
        return target

    def export_polyline(self, polyline, path: Union[str, Path], fmt: str = "csv") -> Path:
        """
        Writes a polyline as CSV (header x,y) or as an SVG path.

        Args:
            polyline (Polyline): Curve to write.
            path (str | Path): Target file. Bare file names land in data_dir.
            fmt (str): "csv" or "svg".

        Returns:
            Path: The written file.

        Raises:
            ValueError: On an unknown format.
        """
        if fmt == "csv":
            return self._write_csv(polyline.to_frame(), path)
        if fmt == "svg":
            return self._write_svg(polyline.points, path)

        msg = f"Unknown output format '{fmt}', expected csv or svg"
        logging.error(msg)
        raise ValueError(msg)


def _fmt(value: float) -> str:
    # Shortest round-trip representation, no negative zero, integral values without ".0"
    text = repr(float(value) + 0.0)
    return text[:-2] if text.endswith(".0") else text


def svg_document(points: Sequence, stroke: str = "black") -> str:
    """
    Renders points as an SVG document with one path element.

    Args:
        points (Sequence): (N, 2) planar points.
        stroke (str): Stroke colour.

    Returns:
        str: The SVG text.
    """
    pts = np.asarray(points, dtype=float)
    xs, ys = pts[:, 0], -pts[:, 1]

    min_x, max_x = float(xs.min()), float(xs.max())
    min_y, max_y = float(ys.min()), float(ys.max())
    width = max(max_x - min_x, 1e-12)
    height = max(max_y - min_y, 1e-12)
    pad_x, pad_y = 0.05 * width, 0.05 * height

    view_box = " ".join(
        _fmt(v) for v in (min_x - pad_x, min_y - pad_y, width + 2 * pad_x, height + 2 * pad_y)
    )
    commands = [f"M {_fmt(xs[0])} {_fmt(ys[0])}"]
    commands.extend(f"L {_fmt(x)} {_fmt(y)}" for x, y in zip(xs[1:], ys[1:]))

    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{view_box}">\n'
        f'  <path d="{" ".join(commands)}" fill="none" stroke="{stroke}" '
        'vector-effect="non-scaling-stroke"/>\n'
        "</svg>\n"
    )
