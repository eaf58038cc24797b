"""Newick, DOT and JSON serialization of :class:`~mindtree.tree.Tree`.

The Newick dialect is strictly binary with no branch lengths::

    tree    := subtree ";"
    subtree := leaf | "(" subtree "," subtree ")"
    leaf    := [A-Za-z0-9_.-]+ | <empty>

Whitespace is not part of the grammar and is rejected.
"""

import json
import re

import numpy as np

from .tree import Tree, TreeStructureError, sd_label

__all__ = [
    "NewickParseError",
    "serialize",
    "to_newick",
    "to_dot",
    "to_json",
    "parse_newick",
    "parse_json",
]

_LABEL_RE = re.compile(r"[A-Za-z0-9_.\-]+")
_LABEL_CHARS = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.-")


class NewickParseError(ValueError):
    """Malformed Newick text; ``position`` is the 0-based offending offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


def _check_label(label):
    if label is not None and not _LABEL_RE.fullmatch(label):
        raise ValueError(f"label {label!r} cannot be written as a Newick leaf")


def to_newick(tree):
    labels = tree._all_labels()
    parts = [None] * tree.n_nodes
    for i, (a, b) in enumerate(zip(tree.left.tolist(), tree.right.tolist())):
        if a < 0:
            _check_label(labels[i])
            parts[i] = labels[i] or ""
        else:
            parts[i] = f"({parts[a]},{parts[b]})"
            parts[a] = parts[b] = None
    return parts[-1] + ";"


def to_dot(tree, name="tree"):
    sd = sd_label(tree)
    counts = sd.leaf_count
    labels = tree._all_labels()
    lines = [f"digraph {name} {{"]
    for i in range(tree.n_nodes):
        if tree.is_leaf(i):
            text = labels[i] if labels[i] is not None else ""
            lines.append(f'  n{i} [shape=circle, label="{text}", leaf_count=1];')
        else:
            lab = sd.label(i)
            shape = "circle" if lab == "S" else "box"
            lines.append(
                f'  n{i} [shape={shape}, label="{lab}\\n{counts[i]}", '
                f'sd="{lab}", leaf_count={counts[i]}];'
            )
    for i in range(tree.n_nodes):
        if not tree.is_leaf(i):
            a, b = tree.children(i)
            lines.append(f"  n{i} -> n{a};")
            lines.append(f"  n{i} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(tree):
    labels = tree._all_labels()
    nodes = []
    for i, (a, b) in enumerate(zip(tree.left.tolist(), tree.right.tolist())):
        leaf = a < 0
        nodes.append(
            {
                "id": i,
                "kind": "leaf" if leaf else "internal",
                "left": None if leaf else a,
                "right": None if leaf else b,
                "label": labels[i],
            }
        )
    return json.dumps({"leaves": tree.n_leaves, "root": tree.root, "nodes": nodes})


def serialize(tree, format="newick"):
    """Render ``tree`` as ``"newick"``, ``"dot"`` or ``"json"`` text."""
    if format == "newick":
        return to_newick(tree)
    if format == "dot":
        return to_dot(tree)
    if format == "json":
        return to_json(tree)
    raise ValueError(f"unknown format {format!r}")


def parse_newick(text):
    """Parse the binary Newick dialect into a tree."""
    left, right, labels = [], [], []
    # open[k] = number of finished children of the k-th unclosed "("
    open_children = []
    finished = []
    pos = 0
    size = len(text)

    def read_leaf(start):
        end = start
        while end < size and text[end] in _LABEL_CHARS:
            end += 1
        left.append(-1)
        right.append(-1)
        labels.append(text[start:end] or None)
        finished.append(len(left) - 1)
        return end

    expect_subtree = True
    while True:
        if pos >= size:
            raise NewickParseError("unexpected end of input", pos)
        ch = text[pos]
        if expect_subtree:
            if ch == "(":
                open_children.append(0)
                pos += 1
                continue
            pos = read_leaf(pos)
            expect_subtree = False
            continue
        # a subtree has just been completed
        if not open_children:
            if ch != ";":
                raise NewickParseError(f"expected ';', found {ch!r}", pos)
            pos += 1
            break
        open_children[-1] += 1
        if ch == "," and open_children[-1] == 1:
            pos += 1
            expect_subtree = True
        elif ch == ")" and open_children[-1] == 2:
            open_children.pop()
            b = finished.pop()
            a = finished.pop()
            left.append(a)
            right.append(b)
            labels.append(None)
            finished.append(len(left) - 1)
            pos += 1
        elif ch == ",":
            raise NewickParseError("more than two children", pos)
        elif ch == ")":
            raise NewickParseError("fewer than two children", pos)
        else:
            raise NewickParseError(f"unexpected character {ch!r}", pos)
    if pos != size:
        raise NewickParseError("trailing characters after ';'", pos)
    return Tree._trusted(left, right, labels)


def parse_json(text):
    """Inverse of :func:`to_json`; node ids may appear in any order."""
    data = json.loads(text) if isinstance(text, str) else text
    nodes = data["nodes"]
    index = {node["id"]: k for k, node in enumerate(nodes)}
    if len(index) != len(nodes):
        raise TreeStructureError("duplicate node ids")
    left = np.full(len(nodes), -1, dtype=np.int64)
    right = np.full(len(nodes), -1, dtype=np.int64)
    labels = []
    for k, node in enumerate(nodes):
        kind = node.get("kind")
        if kind == "internal":
            try:
                left[k] = index[node["left"]]
                right[k] = index[node["right"]]
            except KeyError as exc:
                raise TreeStructureError(f"unknown child id {exc}") from None
        elif kind != "leaf":
            raise TreeStructureError(f"node {node['id']} has unknown kind {kind!r}")
        labels.append(node.get("label"))
    if data["root"] not in index:
        raise TreeStructureError("unknown root id")
    tree = Tree(left, right, labels, root=index[data["root"]])
    if "leaves" in data and data["leaves"] != tree.n_leaves:
        raise TreeStructureError("leaf count does not match nodes")
    return tree
