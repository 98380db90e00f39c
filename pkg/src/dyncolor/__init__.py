"""Dynamic graph coloring: colorers, update streams, verification and benchmarks."""
from __future__ import annotations

from .base import Colorer, GreedyColorer
from .bucket import A1Colorer, A2Colorer, bucket_capacity
from .graph import Coloring, DynamicGraph, InvalidUpdate, Kind, RecolorReport, UpdateEvent
from .level_const import ConstLevelColorer
from .level_log import LogLevelColorer
from .oracle import exact_chromatic_number, greedy_delta_plus_one, verify_proper
from .sparse_dense import SparseDenseColorer, hss_decompose

__all__ = [
    "A1Colorer",
    "A2Colorer",
    "Colorer",
    "Coloring",
    "ConstLevelColorer",
    "DynamicGraph",
    "GreedyColorer",
    "InvalidUpdate",
    "Kind",
    "LogLevelColorer",
    "RecolorReport",
    "SparseDenseColorer",
    "UpdateEvent",
    "bucket_capacity",
    "exact_chromatic_number",
    "greedy_delta_plus_one",
    "hss_decompose",
    "verify_proper",
]
