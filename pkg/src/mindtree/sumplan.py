"""Trees as binary64 summation schedules, with exact error measurement.

A plan adds its leaf values in post-order, one IEEE-754 round-to-nearest
addition per internal node. Errors are measured against the exact rational
sum of the inputs, which is always available because every double is a
dyadic rational.
"""

from dataclasses import dataclass
from fractions import Fraction
import math
import struct

import numpy as np

from . import _backend
from .errors import DomainError
from .mind import binary_decomposition, mind_descending
from .tree import Tree, make_divide_and_conquer, make_ladder

__all__ = [
    "InputError",
    "SummationPlan",
    "ErrorReport",
    "evaluate",
    "exact_sum",
    "kahan_sum",
    "correctly_rounded",
    "ulp_distance",
    "error_report",
    "plan_from_order",
    "ladder_plan",
    "dac_plan",
    "heuristic_mind_plan",
    "parse_values",
    "format_float",
]


class InputError(DomainError):
    """A summation input is NaN, infinite or unparsable."""


def _check_values(values):
    out = [float(v) for v in values]
    for i, v in enumerate(out):
        if not math.isfinite(v):
            raise InputError(f"value {i} is not finite: {v!r}")
    return out


def _label(i):
    return f"v{i}"


@dataclass(frozen=True)
class SummationPlan:
    """A tree whose leaf labels key into ``values``."""

    tree: Tree
    values: dict

    def __post_init__(self):
        labels = self.tree.leaf_labels()
        if None in labels:
            raise ValueError("every leaf of a summation plan needs a label")
        if len(set(labels)) != len(labels) or set(labels) != set(self.values):
            raise ValueError("leaf labels and value keys must match one-to-one")
        _check_values(self.values.values())

    @property
    def n(self):
        return self.tree.n_leaves

    def leaf_values(self):
        """Values in left-to-right leaf order."""
        return [self.values[lab] for lab in self.tree.leaf_labels()]


def plan_from_order(tree, values, order=None):
    """Plan that puts ``values[order[j]]`` on the ``j``-th leaf from the left.

    Leaves are labelled ``v<i>`` after the input index ``i``.
    """
    values = _check_values(values)
    if order is None:
        order = range(len(values))
    order = list(order)
    if sorted(order) != list(range(len(values))) or tree.n_leaves != len(values):
        raise ValueError("order must be a permutation matching the leaf count")
    labelled = tree.with_leaf_labels([_label(i) for i in order])
    return SummationPlan(labelled, {_label(i): v for i, v in enumerate(values)})


def evaluate(plan):
    """Post-order binary64 sum of the plan; overflow yields ``inf``."""
    tree = plan.tree
    node_values = np.zeros(tree.n_nodes, dtype=np.float64)
    leaves = tree.leaves()
    node_values[leaves] = plan.leaf_values()
    with np.errstate(over="ignore"):
        return float(_backend.reduce_sum(tree.left, tree.right, node_values))


def exact_sum(values):
    """Exact rational sum of binary64 values."""
    total = Fraction(0)
    for v in _check_values(values):
        total += Fraction(v)
    return total


def kahan_sum(values):
    """Compensated summation in input order."""
    s = 0.0
    c = 0.0
    for x in _check_values(values):
        y = x - c
        t = s + y
        c = (t - s) - y
        s = t
    return s


def correctly_rounded(q):
    """Nearest binary64 to the rational ``q`` (ties to even); ``±inf`` on overflow."""
    q = Fraction(q)
    try:
        return q.numerator / q.denominator
    except OverflowError:
        return math.inf if q > 0 else -math.inf


def _ordered_bits(x):
    (bits,) = struct.unpack("<q", struct.pack("<d", x))
    return bits if bits >= 0 else -(bits & 0x7FFFFFFFFFFFFFFF)


def ulp_distance(a, b):
    """Number of binary64 steps between two non-NaN doubles (``+0 == -0``)."""
    if math.isnan(a) or math.isnan(b):
        raise InputError("ulp distance is undefined for NaN")
    return abs(_ordered_bits(a) - _ordered_bits(b))


def format_float(x):
    """Hex-float followed by the shortest round-tripping decimal."""
    return f"{float(x).hex()} ({float(x)!r})"


def _format_fraction(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ErrorReport:
    """Outcome of one plan evaluation compared against exact arithmetic.

    ``abs_error`` is ``None`` when the evaluated sum overflowed.
    """

    evaluated: float
    exact: Fraction
    correctly_rounded: float
    abs_error: object
    ulp_distance: int
    kahan_result: float
    overflow: bool

    def to_dict(self):
        return {
            "evaluated": format_float(self.evaluated),
            "exact": _format_fraction(self.exact),
            "correctly_rounded": format_float(self.correctly_rounded),
            "abs_error": None if self.abs_error is None else _format_fraction(self.abs_error),
            "ulp_distance": self.ulp_distance,
            "kahan_result": format_float(self.kahan_result),
            "overflow": self.overflow,
        }


def error_report(plan):
    """Evaluate ``plan`` and measure it against the exact sum."""
    values = list(plan.values.values())  # insertion order is input order
    evaluated = evaluate(plan)
    exact = exact_sum(values)
    rounded = correctly_rounded(exact)
    overflow = not math.isfinite(evaluated)
    return ErrorReport(
        evaluated=evaluated,
        exact=exact,
        correctly_rounded=rounded,
        abs_error=None if overflow else abs(Fraction(evaluated) - exact),
        ulp_distance=ulp_distance(evaluated, rounded),
        kahan_result=kahan_sum(values),
        overflow=overflow,
    )


def ladder_plan(values):
    """Serial left-to-right sum in input order."""
    return plan_from_order(make_ladder(len(values)), values)


def dac_plan(values):
    """Evenly split (pairwise) sum with leaves in input order."""
    return plan_from_order(make_divide_and_conquer(len(values)), values)


def heuristic_mind_plan(values):
    """Sum small magnitudes in perfect blocks and add large ones last.

    Builds the descending-ladder MinD tree on ``n`` leaves. Values sorted by
    increasing magnitude (ties by input index) fill the perfect blocks from
    the largest block to the smallest, left to right within each block, so
    the largest magnitudes sit in the smallest blocks.
    """
    values = _check_values(values)
    if not values:
        raise InputError("cannot plan an empty sum")
    order = sorted(range(len(values)), key=lambda i: (abs(values[i]), i))
    exps = binary_decomposition(len(values)).exponents  # decreasing
    chunks = {}
    pos = 0
    for e in exps:
        chunks[e] = order[pos : pos + (1 << e)]
        pos += 1 << e
    # leaves of the descending ladder run from the smallest block to the largest
    leaf_order = [i for e in reversed(exps) for i in chunks[e]]
    return plan_from_order(mind_descending(len(values)), values, leaf_order)


def parse_values(text):
    """Parse one value per line, decimal or hex-float (``0x1.8p3``).

    Blank lines and lines starting with ``#`` are skipped.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if "0x" in line.lower():
                value = float.fromhex(line)
            else:
                value = float(line)
        except ValueError:
            raise InputError(f"line {lineno}: cannot parse {line!r} as a number") from None
        if not math.isfinite(value):
            raise InputError(f"line {lineno}: value {line!r} is not finite")
        out.append(value)
    return out
