"""Full binary trees stored as index arrays, with S/D labeling and balance.

A :class:`Tree` keeps its nodes in post-order: every child index is smaller
than its parent's and the root is the last node. Leaves have ``-1`` in both
child slots. Trees are immutable; the constructors below build the arrays
directly so that trees with ~10^6 leaves are cheap.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend

__all__ = [
    "Tree",
    "SDLabeling",
    "TreeStructureError",
    "sd_label",
    "colless_index",
    "make_ladder",
    "make_divide_and_conquer",
    "make_complete_full_binary",
    "make_perfect",
    "canonicalize",
    "canonical_orientation",
    "shape_ids",
    "isomorphic",
]


class TreeStructureError(ValueError):
    """Raised for arrays that do not describe a rooted full binary tree."""


def _frozen(arr):
    arr = np.ascontiguousarray(arr, dtype=np.int64)
    arr.setflags(write=False)
    return arr


class Tree:
    """Immutable rooted full binary tree with optional leaf labels.

    Parameters
    ----------
    left, right : sequence of int
        Child indices per node, ``-1`` for leaves.
    labels : sequence of str or None, optional
        One entry per node; only leaf entries are meaningful.
    root : int, optional
        Root index. Defaults to the last node.

    Nodes are renumbered into post-order on construction, so ``left`` of the
    stored tree may differ from the argument.
    """

    __slots__ = ("_left", "_right", "_labels", "_cache")

    def __init__(self, left, right, labels=None, root=None):
        left = np.asarray(left, dtype=np.int64)
        right = np.asarray(right, dtype=np.int64)
        if left.shape != right.shape or left.ndim != 1:
            raise TreeStructureError("left and right must be 1-d and equal length")
        size = len(left)
        if labels is not None and len(labels) != size:
            raise TreeStructureError("labels must have one entry per node")
        if root is None:
            root = size - 1
        try:
            order = _backend.postorder(
                np.ascontiguousarray(left), np.ascontiguousarray(right), int(root)
            )
        except ValueError as exc:
            raise TreeStructureError(str(exc)) from None
        if not np.array_equal(order, np.arange(size)):
            rank = np.empty(size, dtype=np.int64)
            rank[order] = np.arange(size)
            left = np.where(left[order] >= 0, rank[left[order]], -1)
            right = np.where(right[order] >= 0, rank[right[order]], -1)
            if labels is not None:
                labels = [labels[i] for i in order]
        self._init(left, right, labels)

    def _init(self, left, right, labels):
        self._left = _frozen(left)
        self._right = _frozen(right)
        if labels is not None:
            labels = tuple(labels)
            if all(lab is None for lab in labels):
                labels = None
        self._labels = labels
        self._cache = {}

    @classmethod
    def _trusted(cls, left, right, labels=None):
        # arrays already in post-order and valid
        obj = cls.__new__(cls)
        obj._init(left, right, labels)
        return obj

    # construction helpers -------------------------------------------------

    @classmethod
    def leaf(cls, label=None):
        """Single-leaf tree."""
        return cls._trusted([-1], [-1], None if label is None else [label])

    @classmethod
    def join(cls, a, b):
        """Tree with ``a`` as left subtree and ``b`` as right subtree."""
        na = len(a._left)
        nb = len(b._left)
        left = np.empty(na + nb + 1, dtype=np.int64)
        right = np.empty(na + nb + 1, dtype=np.int64)
        left[:na] = a._left
        right[:na] = a._right
        left[na:-1] = np.where(b._left >= 0, b._left + na, -1)
        right[na:-1] = np.where(b._right >= 0, b._right + na, -1)
        left[-1] = na - 1
        right[-1] = na + nb - 1
        labels = None
        if a._labels is not None or b._labels is not None:
            labels = a._all_labels() + b._all_labels() + (None,)
        return cls._trusted(left, right, labels)

    @classmethod
    def from_nested(cls, obj):
        """Build from nested 2-tuples; any non-tuple is a leaf label.

        ``None`` gives an unlabeled leaf, e.g. ``(("a", "b"), "c")``.
        """
        left, right, labels = [], [], []
        done = []  # indices of finished subtrees, used as a value stack
        stack = [(obj, False)]
        while stack:
            item, expanded = stack.pop()
            if not isinstance(item, tuple):
                left.append(-1)
                right.append(-1)
                labels.append(None if item is None else str(item))
                done.append(len(left) - 1)
            elif expanded:
                b = done.pop()
                a = done.pop()
                left.append(a)
                right.append(b)
                labels.append(None)
                done.append(len(left) - 1)
            else:
                if len(item) != 2:
                    raise TreeStructureError("internal nodes need exactly two children")
                stack.append((item, True))
                stack.append((item[1], False))
                stack.append((item[0], False))
        return cls._trusted(left, right, labels)

    def to_nested(self):
        """Inverse of :meth:`from_nested`."""
        out = [None] * len(self._left)
        labels = self._all_labels()
        for i, (a, b) in enumerate(zip(self._left.tolist(), self._right.tolist())):
            out[i] = labels[i] if a < 0 else (out[a], out[b])
        return out[-1]

    def with_leaf_labels(self, labels):
        """Copy with leaves relabeled in left-to-right order."""
        labels = list(labels)
        leaves = self.leaves()
        if len(labels) != len(leaves):
            raise ValueError(f"need {len(leaves)} labels, got {len(labels)}")
        full = [None] * len(self._left)
        for idx, lab in zip(leaves.tolist(), labels):
            full[idx] = None if lab is None else str(lab)
        return Tree._trusted(self._left, self._right, full)

    def unlabeled(self):
        return Tree._trusted(self._left, self._right, None)

    # accessors ------------------------------------------------------------

    @property
    def left(self):
        return self._left

    @property
    def right(self):
        return self._right

    @property
    def root(self):
        return len(self._left) - 1

    @property
    def n_nodes(self):
        return len(self._left)

    @property
    def n_leaves(self):
        return (len(self._left) + 1) // 2

    def is_leaf(self, node):
        return self._left[node] < 0

    def children(self, node):
        return int(self._left[node]), int(self._right[node])

    def label(self, node):
        return None if self._labels is None else self._labels[node]

    def _all_labels(self):
        if self._labels is None:
            return (None,) * len(self._left)
        return self._labels

    @property
    def is_labeled(self):
        """True when every leaf carries a label."""
        if self._labels is None:
            return False
        return all(self._labels[i] is not None for i in self.leaves().tolist())

    def leaves(self):
        """Leaf node indices in left-to-right order."""
        return np.flatnonzero(self._left < 0)

    def leaf_labels(self):
        labels = self._all_labels()
        return [labels[i] for i in self.leaves().tolist()]

    def leaf_counts(self):
        """Leaf-descendant count for every node."""
        counts = self._cache.get("leaf_counts")
        if counts is None:
            counts = _backend.leaf_counts(self._left, self._right)
            counts.setflags(write=False)
            self._cache["leaf_counts"] = counts
        return counts

    def subtree(self, node):
        """The subtree rooted at ``node`` as a new tree."""
        size = 2 * int(self.leaf_counts()[node]) - 1
        start = node - size + 1
        shift = lambda arr: np.where(arr >= 0, arr - start, -1)  # noqa: E731
        left = shift(self._left[start : node + 1])
        right = shift(self._right[start : node + 1])
        labels = None if self._labels is None else self._labels[start : node + 1]
        return Tree._trusted(left, right, labels)

    # dunder ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Tree):
            return NotImplemented
        return (
            np.array_equal(self._left, other._left)
            and np.array_equal(self._right, other._right)
            and self._labels == other._labels
        )

    def __hash__(self):
        return hash((self._left.tobytes(), self._right.tobytes(), self._labels))

    def __repr__(self):
        if self.n_leaves <= 16:
            from .io import to_newick

            return f"Tree({to_newick(self)!r})"
        return f"Tree(<{self.n_leaves} leaves>)"


@dataclass(frozen=True, eq=False)
class SDLabeling:
    """S/D classification of a tree's internal nodes.

    ``is_s[i]`` is True for S-nodes; leaves are False in both ``is_s`` and
    ``is_d``. ``leaf_count`` is indexed by node.
    """

    is_s: np.ndarray
    is_d: np.ndarray
    leaf_count: np.ndarray
    s_count: int
    d_count: int

    def label(self, node):
        """``"S"``, ``"D"`` or ``None`` for a leaf."""
        if self.is_s[node]:
            return "S"
        if self.is_d[node]:
            return "D"
        return None


def _balance(tree):
    cached = tree._cache.get("balance")
    if cached is None:
        counts, diff = _backend.balance(tree.left, tree.right)
        counts.setflags(write=False)
        tree._cache.setdefault("leaf_counts", counts)
        cached = (tree.left >= 0, diff)
        tree._cache["balance"] = cached
    return cached


def sd_label(tree):
    """Label each internal node S (equal child leaf counts) or D."""
    internal, diff = _balance(tree)
    is_s = internal & (diff == 0)
    is_d = internal & (diff != 0)
    s_count = int(is_s.sum())
    return SDLabeling(
        is_s=is_s,
        is_d=is_d,
        leaf_count=tree.leaf_counts(),
        s_count=s_count,
        d_count=tree.n_leaves - 1 - s_count,
    )


def colless_index(tree):
    """Sum over internal nodes of the absolute child leaf-count difference."""
    return int(_balance(tree)[1].sum())


# constructors -------------------------------------------------------------


def make_ladder(n):
    """Caterpillar tree: ``(((a, b), c), d)`` for n = 4."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return Tree.leaf()
    size = 2 * n - 1
    left = np.full(size, -1, dtype=np.int64)
    right = np.full(size, -1, dtype=np.int64)
    # layout: leaf0, leaf1, int(0,1), leaf3, int(2,3), leaf5, int(4,5), ...
    internal = np.arange(2, size, 2)
    left[internal] = internal - 2
    right[internal] = internal - 1
    return Tree._trusted(left, right)


@lru_cache(maxsize=64)
def _perfect_cached(k):
    if k == 0:
        return Tree.leaf()
    half = _perfect_cached(k - 1)
    return Tree.join(half, half)


def make_perfect(k):
    """Perfect tree on ``2**k`` leaves."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return _perfect_cached(k)


def make_divide_and_conquer(n):
    """Evenly split tree: each node's children hold ceil(m/2) and floor(m/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    memo = {1: Tree.leaf()}

    def build(m):
        if m not in memo:
            memo[m] = Tree.join(build((m + 1) // 2), build(m // 2))
        return memo[m]

    return build(n)


def _cfb_split(n):
    # n = 2^k + r; one child perfect, the other 2^(k-1) + (r mod 2^(k-1)) leaves
    k = n.bit_length() - 1
    r = n - (1 << k)
    half = 1 << (k - 1)
    if r < half:
        return half + r, half
    return 1 << k, r


def make_complete_full_binary(n):
    """Complete full binary tree: all levels full, last filled left first."""
    if n < 1:
        raise ValueError("n must be >= 1")

    def build(m):
        if m & (m - 1) == 0:
            return make_perfect(m.bit_length() - 1)
        a, b = _cfb_split(m)
        return Tree.join(build(a), build(b))

    return build(n)


# canonical form ------------------------------------------------------------


def canonicalize(tree):
    """Orientation-independent string encoding of the tree's shape.

    Leaves encode as ``*``; an internal node as ``(A,B)`` where ``A`` is the
    child with more leaves, or for equal leaf counts the lexicographically
    smaller encoding. Labels are ignored. Cost grows with the encoding
    length, which is quadratic for ladder-like trees.
    """
    cached = tree._cache.get("canonical")
    if cached is not None:
        return cached
    counts = tree.leaf_counts().tolist()
    left = tree.left.tolist()
    right = tree.right.tolist()
    enc = [None] * len(left)
    for i, a in enumerate(left):
        if a < 0:
            enc[i] = "*"
            continue
        b = right[i]
        ea, eb = enc[a], enc[b]
        if counts[a] < counts[b] or (counts[a] == counts[b] and eb < ea):
            ea, eb = eb, ea
        enc[i] = f"({ea},{eb})"
        enc[a] = enc[b] = None
    tree._cache["canonical"] = enc[-1]
    return enc[-1]


def canonical_orientation(tree):
    """Isomorphic copy with every node in canonical child order.

    Labels travel with their leaves.
    """
    labels = tree._all_labels()
    counts = tree.leaf_counts().tolist()
    left = tree.left.tolist()
    right = tree.right.tolist()
    enc = [None] * len(left)
    nested = [None] * len(left)
    for i, a in enumerate(left):
        if a < 0:
            enc[i] = "*"
            nested[i] = labels[i]
            continue
        b = right[i]
        if counts[a] < counts[b] or (counts[a] == counts[b] and enc[b] < enc[a]):
            a, b = b, a
        enc[i] = f"({enc[a]},{enc[b]})"
        nested[i] = (nested[a], nested[b])
    return Tree.from_nested(nested[-1])


def shape_ids(tree, table=None):
    """Per-node isomorphism-class ids, interned in ``table``.

    Two subtrees (in the same or different trees sharing ``table``) get the
    same id iff they are isomorphic. Linear in the number of nodes, unlike
    :func:`canonicalize`.
    """
    if table is None:
        table = {}
    left = tree.left.tolist()
    right = tree.right.tolist()
    ids = [0] * len(left)
    for i, a in enumerate(left):
        if a < 0:
            key = ()
        else:
            x, y = ids[a], ids[right[i]]
            key = (x, y) if x <= y else (y, x)
        ident = table.get(key)
        if ident is None:
            ident = table[key] = len(table)
        ids[i] = ident
    return ids


def isomorphic(a, b):
    """True when the two shapes agree up to swapping children."""
    if a.n_leaves != b.n_leaves:
        return False
    table = {}
    return shape_ids(a, table)[-1] == shape_ids(b, table)[-1]
