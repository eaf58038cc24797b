# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled tree kernels. Same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def postorder(const cnp.int64_t[::1] left, const cnp.int64_t[::1] right, Py_ssize_t root):
    cdef Py_ssize_t size = left.shape[0]
    if size == 0:
        raise ValueError("tree has no nodes")
    if root < 0 or root >= size:
        raise ValueError(f"root index {root} out of range")
    cdef cnp.uint8_t[::1] seen = np.zeros(size, dtype=np.uint8)
    cdef cnp.int64_t[::1] order = np.empty(size, dtype=np.int64)
    # explicit stack of (node, expanded) pairs; depth can reach size
    cdef cnp.int64_t[::1] stack_node = np.empty(2 * size + 1, dtype=np.int64)
    cdef cnp.uint8_t[::1] stack_flag = np.empty(2 * size + 1, dtype=np.uint8)
    cdef Py_ssize_t top = 0, filled = 0
    cdef cnp.int64_t node, a, b
    stack_node[0] = root
    stack_flag[0] = 0
    top = 1
    while top > 0:
        top -= 1
        node = stack_node[top]
        if stack_flag[top]:
            order[filled] = node
            filled += 1
            continue
        if seen[node]:
            raise ValueError(f"node {node} is shared or part of a cycle")
        seen[node] = 1
        a = left[node]
        b = right[node]
        if (a < 0) != (b < 0):
            raise ValueError(f"node {node} has exactly one child")
        stack_node[top] = node
        stack_flag[top] = 1
        top += 1
        if a >= 0:
            if a >= size or b >= size:
                raise ValueError(f"node {node} has a child index out of range")
            if top + 2 > 2 * size + 1:
                raise ValueError(f"node {node} is shared or part of a cycle")
            stack_node[top] = b
            stack_flag[top] = 0
            stack_node[top + 1] = a
            stack_flag[top + 1] = 0
            top += 2
    if filled != size:
        raise ValueError(f"{size - filled} node(s) unreachable from root")
    return np.asarray(order)


def leaf_counts(const cnp.int64_t[::1] left, const cnp.int64_t[::1] right):
    cdef Py_ssize_t size = left.shape[0], i
    out = np.empty(size, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = out
    for i in range(size):
        if left[i] < 0:
            counts[i] = 1
        else:
            counts[i] = counts[left[i]] + counts[right[i]]
    return out


def reduce_sum(const cnp.int64_t[::1] left, const cnp.int64_t[::1] right, const double[::1] values):
    cdef Py_ssize_t size = left.shape[0], i
    cdef double[::1] acc = np.empty(size, dtype=np.float64)
    for i in range(size):
        if left[i] < 0:
            acc[i] = values[i]
        else:
            acc[i] = acc[left[i]] + acc[right[i]]
    return acc[size - 1]


def balance(const cnp.int64_t[::1] left, const cnp.int64_t[::1] right):
    cdef Py_ssize_t size = left.shape[0], i
    out_counts = np.empty(size, dtype=np.int64)
    out_diff = np.zeros(size, dtype=np.int64)
    cdef cnp.int64_t[::1] counts = out_counts
    cdef cnp.int64_t[::1] diff = out_diff
    cdef cnp.int64_t x
    for i in range(size):
        if left[i] < 0:
            counts[i] = 1
        else:
            counts[i] = counts[left[i]] + counts[right[i]]
            x = counts[left[i]] - counts[right[i]]
            diff[i] = x if x >= 0 else -x
    return out_counts, out_diff
