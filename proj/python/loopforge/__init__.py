"""Construct, verify and enumerate unbreakable loops.

Tables are square Cayley tables on the symbols 0..n-1. Reports use the same
JSON layout as the ``loopforge`` command-line tool.
"""

import json

from ._core import (
    InfeasibleTarget,
    ParseError,
    Table,
    canonical_form,
    classify,
    construct,
    enumerate_loops,
    format_table,
    group_order,
    is_associative,
    is_commutative,
    is_unbreakable,
    multiplication_group_order,
    parity,
    parse_table,
    read_table,
    subloop_closure,
    write_table,
)
from . import _core

__version__ = "0.1.0"

__all__ = [
    "InfeasibleTarget",
    "ParseError",
    "Table",
    "analyze",
    "canonical_form",
    "census",
    "certificate",
    "classify",
    "construct",
    "enumerate_loops",
    "format_table",
    "group_order",
    "is_associative",
    "is_commutative",
    "is_unbreakable",
    "multiplication_group_order",
    "parity",
    "parse_table",
    "read_table",
    "subloop_closure",
    "write_table",
]


def _as_table(table):
    return table if isinstance(table, Table) else Table(table)


def analyze(table):
    """Full report as a dict; ``group_order`` is a decimal string."""
    return json.loads(_core._analyze_json(_as_table(table)))


def certificate(table):
    """Generator certificate of an even-order loop built by ``construct``."""
    return json.loads(_core._certificate_json(_as_table(table)))


def census(n, jobs=1):
    """Counts over all isomorphism classes of loops of order n <= 7."""
    return json.loads(_core._census_json(n, jobs))
