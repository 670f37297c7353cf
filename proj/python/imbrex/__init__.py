"""Finite incidence geometries, imbrex axioms and Mazzocca-Melone checks."""

import json

from . import _imbrex
from ._imbrex import (
    Embedded,
    Error,
    Geometry,
    abstract_geometry,
    build,
    build_embedded,
    residue,
    structurally_isomorphic,
    supported_entries,
    symps,
)

__all__ = [
    "Embedded",
    "Error",
    "Geometry",
    "abstract_geometry",
    "block_analysis",
    "build",
    "build_embedded",
    "check_mm",
    "check_polar_space",
    "describe",
    "is_imbrex",
    "residue",
    "structurally_isomorphic",
    "supported_entries",
    "symps",
    "verify_nonclosing",
]


def check_polar_space(geometry, rank=None):
    return json.loads(_imbrex.check_polar_space(geometry, rank))


def is_imbrex(geometry, sample=None, seed=0, full=False):
    return json.loads(_imbrex.is_imbrex(geometry, sample, seed, full))


def block_analysis(geometry):
    return json.loads(_imbrex.block_analysis(geometry))


def verify_nonclosing(geometry):
    return json.loads(_imbrex.verify_nonclosing(geometry))


def check_mm(embedded, lmm3=True, sample=None, seed=0):
    return json.loads(_imbrex.check_mm(embedded, lmm3, sample, seed))


def describe(embedded):
    return json.loads(_imbrex.describe(embedded))
