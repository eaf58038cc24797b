"""Exact counts of parenthetic forms, S-node profiles and products.

Two equivalences on unlabelled trees appear here:

``"form"``
    Trees up to swapping the children of D-nodes only; the two equal-sized
    halves under an S-node stay ordered. This is the count used by the
    half-Catalan recursion and by the S-node table, and it is the one for
    which every form carries exactly ``n! / 2**s`` labelled products.
``"isomorphism"``
    Trees up to swapping children anywhere (Wedderburn-Etherington counts).
    The two agree for ``n <= 7`` and differ from ``n = 8`` on, where
    ``(L4, P4)`` and ``(P4, L4)`` are distinct forms but isomorphic trees.

All counts are Python integers, so there is no overflow.
"""

from dataclasses import dataclass
from math import comb, factorial
import threading

from .errors import DomainError
from .formulas import sigma, weight

__all__ = [
    "CONVENTIONS",
    "alpha",
    "theta",
    "theta_row",
    "ThetaTable",
    "theta_table",
    "total_products",
    "products_for_form",
    "dac_products",
    "SBounds",
    "s_bounds",
    "pow2_in_factorial",
]

CONVENTIONS = ("form", "isomorphism")


def _check(n, low=1, name="n"):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an integer")
    if n < low:
        raise DomainError(f"{name} must be >= {low}, got {n}")


def _check_convention(convention):
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")


class _ThetaCache:
    """Rows ``theta(n, .)`` grown on demand, one cache per convention."""

    def __init__(self, distinct):
        self._distinct = distinct
        self._rows = [[1], [1]]  # theta(0, 0) = theta(1, 0) = 1
        self._lock = threading.Lock()

    def _next_row(self):
        rows = self._rows
        n = len(rows)
        row = [0] * n  # s ranges over 0..n-1
        for j in range(1, (n + 1) // 2):
            a, b = rows[j], rows[n - j]
            for i, x in enumerate(a):
                if x:
                    for t, y in enumerate(b):
                        if i + t < n:
                            row[i + t] += x * y
        if n % 2 == 0:
            half = rows[n // 2]
            pairs = [0] * n
            for i, x in enumerate(half):
                for t, y in enumerate(half):
                    if i + t + 1 < n:
                        pairs[i + t + 1] += x * y
            if self._distinct:
                # unordered pairs: add the diagonal once more, then halve
                for i, x in enumerate(half):
                    if 2 * i + 1 < n:
                        pairs[2 * i + 1] += x
                pairs = [p // 2 for p in pairs]
            row = [r + p for r, p in zip(row, pairs)]
        rows.append(row)

    def row(self, n):
        if n >= len(self._rows):
            with self._lock:
                while n >= len(self._rows):
                    self._next_row()
        return self._rows[n]


_caches = {"form": _ThetaCache(False), "isomorphism": _ThetaCache(True)}


def theta_row(n, convention="form"):
    """List ``[theta(n, 0), ..., theta(n, n - 1)]``; length 1 for ``n <= 1``."""
    _check(n, 0)
    _check_convention(convention)
    return list(_caches[convention].row(n))


def theta(n, s, convention="form"):
    """Number of forms on ``n`` leaves with exactly ``s`` S-nodes.

    Parameters
    ----------
    n, s : int
        Nonnegative. ``theta(0, 0) = theta(1, 0) = 1`` and the count is 0
        whenever ``s >= n > 0``.
    convention : {"form", "isomorphism"}
        Equivalence on trees; see the module docstring.

    Returns
    -------
    int

    Examples
    --------
    >>> theta(9, 5)
    8
    """
    _check(n, 0)
    _check(s, 0, "s")
    _check_convention(convention)
    row = _caches[convention].row(n)
    return row[s] if s < len(row) else 0


def alpha(n, convention="form"):
    """Number of forms on ``n`` leaves.

    With ``convention="form"`` this is the half-Catalan sequence
    ``alpha(n) = sum_{i=1}^{n//2} alpha(i) alpha(n-i)`` (11813 at n = 16);
    with ``"isomorphism"`` it counts isomorphism classes (10905 at n = 16).
    """
    _check(n)
    _check_convention(convention)
    return sum(_caches[convention].row(n))


@dataclass(frozen=True)
class ThetaTable:
    """Rows ``theta(n, 1..n-1)`` and their sums for ``2 <= n <= n_max``."""

    n_max: int
    rows: dict
    alpha: dict
    convention: str = "form"

    def d_row(self, n):
        """Row reindexed by D-nodes: entry ``d`` is ``theta(n, n - 1 - d)``."""
        return self.rows[n][::-1]

    def to_csv(self, view="s"):
        """CSV text; ``view="s"`` indexes columns by S-nodes, ``"d"`` by D-nodes."""
        width = self.n_max - 1
        if view == "s":
            header = ["n"] + [f"s={s}" for s in range(1, width + 1)] + ["alpha"]
        elif view == "d":
            header = ["n"] + [f"d={d}" for d in range(width)] + ["alpha"]
        else:
            raise ValueError(f"unknown view {view!r}")
        lines = [",".join(header)]
        for n in range(2, self.n_max + 1):
            cells = self.rows[n] if view == "s" else self.d_row(n)
            cells = [str(c) for c in cells] + [""] * (width - len(cells))
            lines.append(",".join([str(n)] + cells + [str(self.alpha[n])]))
        return "\n".join(lines) + "\n"


def theta_table(n_max, convention="form"):
    """S-node table for ``2 <= n <= n_max`` (columns ``s = 1..n-1``)."""
    _check(n_max, 2, "n_max")
    _check_convention(convention)
    cache = _caches[convention]
    rows, sums = {}, {}
    for n in range(2, n_max + 1):
        full = cache.row(n)
        rows[n] = tuple(full[1:])
        sums[n] = sum(full)
    return ThetaTable(n_max=n_max, rows=rows, alpha=sums, convention=convention)


def total_products(n):
    """Inequivalent commutative non-associative products of ``n`` terms, ``(2n-3)!!``."""
    _check(n)
    out = 1
    for k in range(3, 2 * n - 2, 2):
        out *= k
    return out


def pow2_in_factorial(n):
    """Exponent of 2 in ``n!``, equal to ``n - weight(n)``."""
    _check(n, 0)
    return n - weight(n)


def products_for_form(n, s):
    """Labelled products sharing one form with ``s`` S-nodes: ``n! / 2**s``.

    Raises
    ------
    DomainError
        If ``2**s`` does not divide ``n!``.
    """
    _check(n)
    _check(s, 0, "s")
    if s > pow2_in_factorial(n):
        raise DomainError(f"2^{s} does not divide {n}!")
    return factorial(n) >> s


def _dac_david(n, memo):
    if n in memo:
        return memo[n]
    m = n // 2
    if n % 2 == 0:
        value = comb(n, m) * _dac_david(m, memo) ** 2 // 2
    else:
        value = comb(n, m) * _dac_david(m, memo) * _dac_david(m + 1, memo)
    memo[n] = value
    return value


def dac_products(n, method="closed"):
    """Labelled products on the divide-and-conquer form.

    Parameters
    ----------
    n : int
    method : {"closed", "david"}
        ``"closed"`` is ``n! / 2**sigma(n)``; ``"david"`` is the
        binomial halving recursion.
    """
    _check(n)
    if method == "closed":
        return factorial(n) >> sigma(n)
    if method == "david":
        return _dac_david(n, {1: 1})
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SBounds:
    """Range of S-node counts over forms on ``n`` leaves."""

    n: int
    s_min: int
    s_max: int
    pow2_in_factorial: int

    @property
    def d_min(self):
        return self.n - 1 - self.s_max


def s_bounds(n):
    """Fewest and most S-nodes possible on ``n`` leaves."""
    _check(n)
    return SBounds(
        n=n,
        s_min=0 if n == 1 else 1,
        s_max=n - weight(n),
        pow2_in_factorial=pow2_in_factorial(n),
    )
