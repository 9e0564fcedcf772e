"""
Load distributions, pairs, perceptions, utilities and vectors from JSON or CSV files.
"""

import json
import logging
import os
from typing import Optional

import numpy as np

from src.core.dist_core import DiscreteCdf, cdf_from_atoms
from src.core.distortion import StandardPair, make_standard_pair
from src.core.stieltjes import MonotonePL
from src.handlers.majorize import RealVector
from src.handlers.welfare import Perception, perception, s_gini_perception
from src.utils.csv_reader import convert_csv_to_distribution, convert_csv_to_vector, write_distribution_csv
from src.utils.errors import BadParams, ParseError
from src.utils.json_validator import DistributionFile, parse_model

logger = logging.getLogger(__name__)


def _format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext in ('.json', '.csv'):
        return ext[1:]
    raise ParseError(f"{path}: unsupported file extension {ext!r} (use .json or .csv)")


def read_json(path: str) -> dict:
    """
    Raises:
        FileNotFoundError: The file does not exist.
        ParseError: The file is not valid JSON.
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON ({e})") from e


def histogram_atoms(samples, bins: int):
    """Bin centres weighted by bin counts; empty bins are dropped."""
    if bins < 1:
        raise BadParams(f"--bins must be positive, got {bins}")
    counts, edges = np.histogram(np.asarray(samples, dtype=float), bins=bins)
    centres = (edges[:-1] + edges[1:]) / 2.0
    return [(float(c), float(n)) for c, n in zip(centres, counts) if n > 0]


def to_cdf(model: DistributionFile, bins: Optional[int] = None) -> DiscreteCdf:
    """Atoms are taken as given; samples get mass 1/n each, or histogram weights with ``bins``."""
    if model.atoms is not None:
        if bins is not None:
            logger.debug("--bins ignored for an atom file")
        return cdf_from_atoms(model.atoms)
    if bins is not None:
        return cdf_from_atoms(histogram_atoms(model.samples, bins), normalize=True)
    n = len(model.samples)
    return cdf_from_atoms(((s, 1.0 / n) for s in model.samples), normalize=True)


def distribution_from_json(data: dict, bins: Optional[int] = None, source: str = '<input>') -> DiscreteCdf:
    return to_cdf(parse_model(data, 'distribution', source), bins)


def pair_from_json(data: dict, source: str = '<input>') -> StandardPair:
    model = parse_model(data, 'pair', source)
    u0 = MonotonePL(tuple(model.u0), continuity=model.u0_continuity)
    v0 = MonotonePL(tuple(model.v0), continuity=model.v0_continuity)
    return make_standard_pair(u0, v0)


def perception_from_json(data: dict, source: str = '<input>') -> Perception:
    model = parse_model(data, 'perception', source)
    if model.rho is not None:
        return s_gini_perception(model.rho)
    return perception(MonotonePL(tuple(model.knots)), model.label)


def utility_from_json(data: dict, source: str = '<input>') -> MonotonePL:
    model = parse_model(data, 'utility', source)
    return MonotonePL(tuple(model.knots))


def load_distribution(path: str, bins: Optional[int] = None) -> DiscreteCdf:
    """
    Load a distribution file.

    Args:
        path: ``.json`` with ``atoms`` or ``samples``, or ``.csv`` with
            ``value,mass`` columns or a single sample column.
        bins: Discretize samples into this many histogram bins.

    Returns:
        DiscreteCdf: The parsed law.

    Raises:
        ParseError: Malformed file.
        FileNotFoundError: Missing file.
    """
    if _format(path) == 'csv':
        F = to_cdf(convert_csv_to_distribution(path), bins)
    else:
        F = distribution_from_json(read_json(path), bins, path)
    logger.debug("loaded %s: %d atoms", path, F.size)
    return F


def load_pair(path: str) -> StandardPair:
    return pair_from_json(read_json(path), path)


def load_perception(path: str) -> Perception:
    return perception_from_json(read_json(path), path)


def load_utility(path: str) -> MonotonePL:
    return utility_from_json(read_json(path), path)


def load_vector(path: str) -> RealVector:
    """``{"entries": [...]}`` JSON or a one-column CSV."""
    if _format(path) == 'csv':
        model = convert_csv_to_vector(path)
    else:
        model = parse_model(read_json(path), 'vector', path)
    return RealVector(tuple(model.entries))


def serialize_distribution(F: DiscreteCdf, fmt: str = 'json') -> str:
    """
    Text form of ``F`` that ``load_distribution`` reads back to the same law.

    Raises:
        BadParams: Unknown format.
    """
    atoms = [[float(x), float(m)] for x, m in F.atoms]
    if fmt == 'json':
        return json.dumps({"atoms": atoms}) + '\n'
    if fmt == 'csv':
        return write_distribution_csv(atoms)
    raise BadParams(f"unknown distribution format {fmt!r}")


__all__ = [
    'read_json',
    'histogram_atoms',
    'to_cdf',
    'distribution_from_json',
    'pair_from_json',
    'perception_from_json',
    'utility_from_json',
    'load_distribution',
    'load_pair',
    'load_perception',
    'load_utility',
    'load_vector',
    'serialize_distribution',
]
