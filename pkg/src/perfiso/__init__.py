"""Exact computations with perfect isometries between blocks of finite groups."""

from .blocks import Block, block_partition
from .bundled import bundled_table
from .cyclo import E, CycNum, cyc_parse
from .isometry import SignedBijection, pi_group, search_isometries, verify_perfect
from .table import CharTable, load_table

__all__ = [
    "Block",
    "CharTable",
    "CycNum",
    "E",
    "SignedBijection",
    "block_partition",
    "bundled_table",
    "cyc_parse",
    "load_table",
    "pi_group",
    "search_isometries",
    "verify_perfect",
]
