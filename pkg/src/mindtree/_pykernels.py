"""Pure-Python implementations of the hot tree kernels.

These mirror ``_kernels.pyx`` one-for-one and are used when the compiled
extension is not importable.
"""

import numpy as np


def postorder(left, right, root):
    """Return node indices in post-order (left subtree, right subtree, node).

    Raises ``ValueError`` for a node with exactly one child, an out-of-range
    child index, a node reachable twice, or nodes not reachable from root.
    """
    size = len(left)
    if size == 0:
        raise ValueError("tree has no nodes")
    if not 0 <= root < size:
        raise ValueError(f"root index {root} out of range")
    seen = bytearray(size)
    order = []
    stack = [(int(root), False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if seen[node]:
            raise ValueError(f"node {node} is shared or part of a cycle")
        seen[node] = 1
        a = int(left[node])
        b = int(right[node])
        if (a < 0) != (b < 0):
            raise ValueError(f"node {node} has exactly one child")
        stack.append((node, True))
        if a >= 0:
            if a >= size or b >= size:
                raise ValueError(f"node {node} has a child index out of range")
            stack.append((b, False))
            stack.append((a, False))
    if len(order) != size:
        raise ValueError(f"{size - len(order)} node(s) unreachable from root")
    return np.asarray(order, dtype=np.int64)


def leaf_counts(left, right):
    """Leaf-descendant count per node; children must precede parents."""
    size = len(left)
    counts = [0] * size
    lft = left.tolist()
    rgt = right.tolist()
    for i in range(size):
        a = lft[i]
        if a < 0:
            counts[i] = 1
        else:
            counts[i] = counts[a] + counts[rgt[i]]
    return np.asarray(counts, dtype=np.int64)


def reduce_sum(left, right, values):
    """Binary64 post-order reduction; ``values`` holds leaf values by node."""
    size = len(left)
    acc = [0.0] * size
    lft = left.tolist()
    rgt = right.tolist()
    vals = values.tolist()
    for i in range(size):
        a = lft[i]
        if a < 0:
            acc[i] = vals[i]
        else:
            acc[i] = acc[a] + acc[rgt[i]]
    return acc[size - 1]


def balance(left, right):
    """Leaf counts and absolute child leaf-count difference per node."""
    counts = leaf_counts(left, right)
    diff = np.zeros(len(left), dtype=np.int64)
    internal = left >= 0
    diff[internal] = np.abs(counts[left[internal]] - counts[right[internal]])
    return counts, diff
