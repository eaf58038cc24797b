"""Full binary trees classified by S-nodes (equal halves) and D-nodes.

Submodules
----------
tree
    Array-backed trees, S/D labels, Colless index and standard shapes.
io
    Newick, DOT and JSON serialization.
formulas
    Exact sigma/delta counts, Takagi values and Colless extremes.
counting
    Counts of forms by S-node number and of labelled products.
mind
    Trees with the fewest D-nodes: construction and enumeration.
oracle
    Brute-force shape enumeration and verification reports.
sumplan
    Trees as binary64 summation schedules with exact error reports.
"""

from . import _backend
from .errors import DomainError, SizeError, VerificationError
from .tree import (
    SDLabeling,
    Tree,
    TreeStructureError,
    canonicalize,
    colless_index,
    isomorphic,
    make_complete_full_binary,
    make_divide_and_conquer,
    make_ladder,
    make_perfect,
    sd_label,
)

__version__ = "0.1.0"

backend = _backend.name

__all__ = [
    "DomainError",
    "SizeError",
    "VerificationError",
    "SDLabeling",
    "Tree",
    "TreeStructureError",
    "backend",
    "canonicalize",
    "colless_index",
    "isomorphic",
    "make_complete_full_binary",
    "make_divide_and_conquer",
    "make_ladder",
    "make_perfect",
    "sd_label",
]
