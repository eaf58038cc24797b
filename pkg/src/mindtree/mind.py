"""MinD trees: the shapes with the fewest possible D-nodes.

A MinD tree on ``n`` leaves is a base tree with ``weight(n)`` leaves whose
leaves are replaced by perfect trees on ``2**e`` leaves, one for each set
bit ``e`` of ``n``. Its D-nodes are exactly the base tree's internal nodes.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SizeError
from .formulas import exponents, weight
from .tree import Tree, make_ladder, make_perfect, sd_label

__all__ = [
    "BinaryDecomposition",
    "MinDSpec",
    "binary_decomposition",
    "build_mind",
    "mind_descending",
    "mind_ascending",
    "iter_mind_specs",
    "enumerate_mind",
    "count_mind",
    "is_mind",
    "MAX_ENUM_WEIGHT",
]

MAX_ENUM_WEIGHT = 10


@dataclass(frozen=True)
class BinaryDecomposition:
    """Set-bit exponents of ``n`` in strictly decreasing order."""

    n: int
    exponents: tuple

    def __post_init__(self):
        exps = tuple(self.exponents)
        if any(a <= b for a, b in zip(exps, exps[1:])):
            raise DomainError("exponents must be strictly decreasing")
        if sum(1 << e for e in exps) != self.n:
            raise DomainError(f"exponents {exps} do not sum to {self.n}")
        object.__setattr__(self, "exponents", exps)

    @property
    def weight(self):
        return len(self.exponents)


def binary_decomposition(n):
    """Decompose ``n >= 1`` into distinct powers of two.

    Examples
    --------
    >>> binary_decomposition(27).exponents
    (4, 3, 1, 0)
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return BinaryDecomposition(n, tuple(exponents(n)))


@dataclass(frozen=True)
class MinDSpec:
    """A base shape plus the exponent placed at each of its leaves.

    ``assignment[i]`` is the exponent for the ``i``-th base leaf in
    left-to-right depth-first order.
    """

    decomposition: BinaryDecomposition
    base: Tree
    assignment: tuple

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(self.assignment))
        w = self.decomposition.weight
        if self.base.n_leaves != w:
            raise DomainError(
                f"base tree has {self.base.n_leaves} leaves, need weight({self.decomposition.n}) = {w}"
            )
        if sorted(self.assignment) != sorted(self.decomposition.exponents):
            raise DomainError("assignment is not a bijection onto the exponents")


def build_mind(spec):
    """Graft perfect subtrees onto the base leaves of ``spec``."""
    base = spec.base
    base_left = base.left.tolist()
    base_right = base.right.tolist()
    # post-order of the result is the base post-order with each leaf
    # expanded into its perfect block, so every block is written once
    size = 2 * spec.decomposition.n - 1
    left = np.empty(size, dtype=np.int64)
    right = np.empty(size, dtype=np.int64)
    top = [0] * len(base_left)
    leaf_exp = iter(spec.assignment)
    offset = 0
    for i, a in enumerate(base_left):
        if a < 0:
            block = make_perfect(next(leaf_exp))
            m = block.n_nodes
            left[offset:offset + m] = np.where(block.left >= 0, block.left + offset, -1)
            right[offset:offset + m] = np.where(block.right >= 0, block.right + offset, -1)
            offset += m
        else:
            left[offset] = top[a]
            right[offset] = top[base_right[i]]
            offset += 1
        top[i] = offset - 1
    return Tree._trusted(left, right)


def _ladder_spec(n, descending):
    dec = binary_decomposition(n)
    # ladder leaves run bottom rung first, top rung last
    order = dec.exponents[::-1] if descending else dec.exponents
    return MinDSpec(dec, make_ladder(dec.weight), order)


def mind_descending(n):
    """MinD tree on a ladder base with the largest perfect subtree on the top rung."""
    return build_mind(_ladder_spec(n, True))


def mind_ascending(n):
    """MinD tree on a ladder base with the smallest perfect subtree on the top rung."""
    return build_mind(_ladder_spec(n, False))


def _double_factorial_odd(m):
    out = 1
    for k in range(3, 2 * m - 2, 2):
        out *= k
    return out


def count_mind(n):
    """Number of MinD isomorphism classes, ``(2 weight(n) - 3)!!``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _double_factorial_odd(weight(n))


def _insertions(tree, label):
    # yield each tree obtained by putting ``label`` beside one subtree
    yield (tree, label)
    if isinstance(tree, tuple):
        a, b = tree
        for sub in _insertions(a, label):
            yield (sub, b)
        for sub in _insertions(b, label):
            yield (a, sub)


def _labeled_bases(labels):
    trees = [labels[0]]
    for lab in labels[1:]:
        trees = [t for tree in trees for t in _insertions(tree, lab)]
    return trees


def _base_key(tree):
    if not isinstance(tree, tuple):
        return f"{tree:03d}"
    a, b = sorted((_base_key(tree[0]), _base_key(tree[1])))
    return f"({a},{b})"


def _flatten(tree, out):
    if isinstance(tree, tuple):
        _flatten(tree[0], out)
        _flatten(tree[1], out)
    else:
        out.append(tree)
    return out


def iter_mind_specs(n):
    """Yield one :class:`MinDSpec` per MinD isomorphism class, in canonical order.

    Each exponent labels exactly one base leaf and all labels differ, so
    leaf-labelled base trees taken up to sibling swaps are in bijection with
    isomorphism classes. They are generated by inserting labels one at a time
    beside every existing subtree, which produces each labelled tree once.

    Raises
    ------
    SizeError
        If ``weight(n)`` exceeds ``MAX_ENUM_WEIGHT``.
    """
    dec = binary_decomposition(n)
    if dec.weight > MAX_ENUM_WEIGHT:
        raise SizeError(
            f"weight({n}) = {dec.weight} exceeds the enumeration limit {MAX_ENUM_WEIGHT}"
        )
    bases = _labeled_bases(list(dec.exponents))
    bases.sort(key=_base_key)
    for nested in bases:
        base = Tree.from_nested(nested).unlabeled()
        yield MinDSpec(dec, base, _flatten(nested, []))


def enumerate_mind(n, max_weight=MAX_ENUM_WEIGHT):
    """All MinD trees on ``n`` leaves, one per isomorphism class.

    Parameters
    ----------
    n : int
    max_weight : int, optional
        Refuse inputs with more set bits than this (at most ``MAX_ENUM_WEIGHT``).

    Returns
    -------
    list of Tree
        ``(2 weight(n) - 3)!!`` pairwise non-isomorphic trees.
    """
    if weight(n) > min(max_weight, MAX_ENUM_WEIGHT):
        raise SizeError(f"weight({n}) = {weight(n)} exceeds the limit {max_weight}")
    return [build_mind(spec) for spec in iter_mind_specs(n)]


def is_mind(tree):
    """True when ``tree`` has the minimum possible number of D-nodes."""
    return sd_label(tree).d_count == weight(tree.n_leaves) - 1
