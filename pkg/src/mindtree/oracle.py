"""Brute-force enumeration of small tree shapes and checks against formulas.

Every check returns a JSON-ready dict ``{"check", "n", "pass", "details"}``.
Catalogs materialize real :class:`~mindtree.tree.Tree` objects and measure
them with the tree-core functions, so nothing here reuses the counting
recursions being checked.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .counting import CONVENTIONS, theta_row
from .errors import DomainError, SizeError
from .formulas import c_max, delta, rho, weight
from .mind import count_mind, enumerate_mind, is_mind
from .tree import (
    Tree,
    canonicalize,
    colless_index,
    make_complete_full_binary,
    make_divide_and_conquer,
    make_ladder,
    sd_label,
    shape_ids,
)

__all__ = [
    "MAX_SHAPE_N",
    "ShapeCatalog",
    "enumerate_shapes",
    "verify_theta",
    "verify_mind",
    "verify_colless_extremes",
    "verify_incremental",
    "verify_all",
    "takagi_tent",
]

MAX_SHAPE_N = 18


@lru_cache(maxsize=None)
def _nested_shapes(n, distinct):
    # smaller subtree on the left; equal halves in every order unless distinct
    if n == 1:
        return (None,)
    out = []
    for j in range(1, (n + 1) // 2):
        for a in _nested_shapes(j, distinct):
            for b in _nested_shapes(n - j, distinct):
                out.append((a, b))
    if n % 2 == 0:
        half = _nested_shapes(n // 2, distinct)
        for i, a in enumerate(half):
            for b in half[i if distinct else 0 :]:
                out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class ShapeCatalog:
    """Every shape on ``n`` leaves with its S/D counts and Colless index.

    Under ``equivalence="isomorphism"`` shapes are pairwise non-isomorphic.
    Under ``"form"`` the two halves of an S-node are ordered, so a pair of
    distinct equal-sized halves appears in both orders.
    """

    n: int
    equivalence: str
    shapes: tuple
    s_counts: tuple
    d_counts: tuple
    colless: tuple

    def __len__(self):
        return len(self.shapes)

    def s_histogram(self):
        return dict(sorted(Counter(self.s_counts).items()))

    def d_histogram(self):
        return dict(sorted(Counter(self.d_counts).items()))


@lru_cache(maxsize=2 * MAX_SHAPE_N)
def enumerate_shapes(n, equivalence="form"):
    """All shapes on ``n`` leaves, built by composing smaller catalogs.

    Parameters
    ----------
    n : int
        ``1 <= n <= MAX_SHAPE_N``.
    equivalence : {"form", "isomorphism"}
        ``"form"`` matches the counting convention of
        :func:`mindtree.counting.alpha`; ``"isomorphism"`` keeps one tree per
        isomorphism class.

    Returns
    -------
    ShapeCatalog
    """
    if equivalence not in CONVENTIONS:
        raise ValueError(f"unknown equivalence {equivalence!r}")
    if not 1 <= n <= MAX_SHAPE_N:
        raise SizeError(f"shape enumeration supports 1 <= n <= {MAX_SHAPE_N}, got {n}")
    shapes, s_counts, d_counts, colless = [], [], [], []
    for nested in _nested_shapes(n, equivalence == "isomorphism"):
        tree = Tree.from_nested(nested)
        sd = sd_label(tree)
        shapes.append(tree)
        s_counts.append(sd.s_count)
        d_counts.append(sd.d_count)
        colless.append(colless_index(tree))
    return ShapeCatalog(
        n=n,
        equivalence=equivalence,
        shapes=tuple(shapes),
        s_counts=tuple(s_counts),
        d_counts=tuple(d_counts),
        colless=tuple(colless),
    )


def _report(check, n, ok, **details):
    return {"check": check, "n": n, "pass": bool(ok), "details": details}


def verify_theta(n):
    """Compare enumerated S-count histograms with the S-node table.

    Both equivalences are checked against the matching table convention.
    """
    details = {}
    ok = True
    for conv in CONVENTIONS:
        cat = enumerate_shapes(n, conv)
        hist = cat.s_histogram()
        row = theta_row(n, conv)
        expected = {s: c for s, c in enumerate(row) if c}
        entry = {"shapes": len(cat), "histogram": hist, "expected": expected}
        if hist != expected:
            ok = False
            bad = sorted(set(hist) ^ set(expected) | {s for s in hist if hist.get(s) != expected.get(s)})
            s = bad[0]
            example = next((t for t, v in zip(cat.shapes, cat.s_counts) if v == s), None)
            entry["mismatch"] = {
                "s": s,
                "expected": expected.get(s, 0),
                "actual": hist.get(s, 0),
                "shape": canonicalize(example) if example is not None else None,
            }
        details[conv] = entry
    return _report("theta", n, ok, **details)


def verify_mind(n):
    """Check that the fewest D-nodes is ``weight(n) - 1`` and the minimizers
    are exactly the enumerated MinD trees."""
    cat = enumerate_shapes(n, "isomorphism")
    table = {}
    d_min = min(cat.d_counts)
    minimizers = {shape_ids(t, table)[-1]: t for t, d in zip(cat.shapes, cat.d_counts) if d == d_min}
    minds = enumerate_mind(n)
    mind_ids = {}
    for t in minds:
        mind_ids.setdefault(shape_ids(t, table)[-1], t)
    problems = []
    if d_min != weight(n) - 1:
        problems.append({"what": "minimum D-count", "expected": weight(n) - 1, "actual": d_min})
    if len(minds) != count_mind(n) or len(mind_ids) != len(minds):
        problems.append(
            {"what": "MinD class count", "expected": count_mind(n), "actual": len(mind_ids)}
        )
    for ident in sorted(set(minimizers) - set(mind_ids)):
        problems.append({"what": "minimizer missing from MinD list", "shape": canonicalize(minimizers[ident])})
    for ident in sorted(set(mind_ids) - set(minimizers)):
        problems.append({"what": "MinD tree is not a minimizer", "shape": canonicalize(mind_ids[ident])})
    for t in minds:
        if not is_mind(t):
            problems.append({"what": "is_mind rejected a MinD tree", "shape": canonicalize(t)})
    return _report(
        "mind",
        n,
        not problems,
        d_min=d_min,
        weight=weight(n),
        minimizers=len(minimizers),
        mind_trees=len(minds),
        problems=problems,
    )


def verify_colless_extremes(n):
    """Check the Colless maximum (ladder) and minimum (balanced trees)."""
    cat = enumerate_shapes(n, "isomorphism")
    hi, lo = max(cat.colless), min(cat.colless)
    witnesses = {
        "ladder": colless_index(make_ladder(n)),
        "divide_and_conquer": colless_index(make_divide_and_conquer(n)),
        "complete_full_binary": colless_index(make_complete_full_binary(n)),
    }
    problems = []
    if hi != c_max(n):
        problems.append({"what": "maximum", "expected": c_max(n), "actual": hi})
    if lo != delta(n):
        problems.append({"what": "minimum", "expected": delta(n), "actual": lo})
    if witnesses["ladder"] != hi:
        problems.append({"what": "ladder is not maximal", "expected": hi, "actual": witnesses["ladder"]})
    for name in ("divide_and_conquer", "complete_full_binary"):
        if witnesses[name] != lo:
            problems.append({"what": f"{name} is not minimal", "expected": lo, "actual": witnesses[name]})
    return _report("colless", n, not problems, max=hi, min=lo, witnesses=witnesses, problems=problems)


def _size(t):
    return 1 if t is None else _size(t[0]) + _size(t[1])


def _perfect_nested(k):
    t = None
    for _ in range(k):
        t = (t, t)
    return t


def _graft_sites(t, path=()):
    """Yield (path, subtree) for nodes whose strict ancestors are all D-nodes.

    ``path`` lists (sibling size, own size) pairs from the node upward.
    """
    yield path, t
    if t is None:
        return
    a, b = t
    sa, sb = _size(a), _size(b)
    if sa == sb:
        return
    for child, other in ((a, sb), (b, sa)):
        for sub_path, sub in _graft_sites(child):
            yield sub_path + ((other, _size(child)),) + path, sub


def _replace(t, target, new):
    if t is target:
        return new
    if t is None:
        return None
    return (_replace(t[0], target, new), _replace(t[1], target, new))


def verify_incremental(n):
    """Check the Colless update for affixing the smallest perfect block.

    For every MinD tree ``T'`` on ``n - 2**r`` leaves (``r`` the lowest set
    bit of ``n``) and every node whose ancestors are all D-nodes, hang a
    perfect tree on ``2**r`` leaves beside that node. The result must be a
    MinD tree whose Colless index equals
    ``c(T') + |T_1| + 2**r * sum(f) - 2**r``, where ``T_1`` is the displaced
    subtree and ``f = -1`` at each ancestor whose off-path child is larger
    than its on-path child, ``+1`` otherwise.
    """
    if weight(n) < 2:
        return _report("incremental", n, True, cases=0, problems=[])
    r = rho(n, 1)
    block = 1 << r
    perfect = _perfect_nested(r)
    problems = []
    cases = 0
    for base in enumerate_mind(n - block):
        nested = base.to_nested()
        c_base = colless_index(base)
        for path, sub in _graft_sites(nested):
            if sub is None:
                continue  # leaves of T' sit inside perfect blocks, below S-nodes
            t1 = _size(sub)
            f_total = sum(-1 if other > own else 1 for other, own in path)
            predicted = c_base + t1 + block * f_total - block
            tree = Tree.from_nested(_replace(nested, sub, (sub, perfect)))
            actual = colless_index(tree)
            cases += 1
            if actual != predicted or not is_mind(tree):
                problems.append(
                    {
                        "shape": canonicalize(tree),
                        "expected": predicted,
                        "actual": actual,
                        "is_mind": is_mind(tree),
                    }
                )
    return _report("incremental", n, not problems, cases=cases, problems=problems)


_CHECKS = {
    "theta": verify_theta,
    "mind": verify_mind,
    "colless": verify_colless_extremes,
    "incremental": verify_incremental,
}


def verify_all(n_max, checks=None):
    """Run the named checks (default: all) for ``1 <= n <= n_max``."""
    if not 1 <= n_max <= MAX_SHAPE_N:
        raise SizeError(f"n_max must lie in [1, {MAX_SHAPE_N}], got {n_max}")
    names = list(_CHECKS) if checks is None else list(checks)
    reports = []
    for name in names:
        fn = _CHECKS[name]
        for n in range(1, n_max + 1):
            reports.append(fn(n))
    return reports


def _dist_to_int(x):
    frac = x - (x.numerator // x.denominator)
    return min(frac, 1 - frac)


def takagi_tent(r, k):
    """Takagi function at ``r / 2**k`` as a finite sum of tent-map terms.

    ``sum_m dist(2**m x, Z) / 2**m``; every term with ``m >= k`` is zero.
    """
    if k < 0 or not 0 <= r <= (1 << k):
        raise DomainError(f"need 0 <= r <= 2^k, got r={r}, k={k}")
    x = Fraction(r, 1 << k)
    return sum((_dist_to_int(x * (1 << m)) / (1 << m) for m in range(k)), Fraction(0))
