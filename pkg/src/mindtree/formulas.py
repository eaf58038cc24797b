"""Exact scalar formulas for S/D counts, Colless extremes and Takagi values.

Every function here works on Python integers and :class:`fractions.Fraction`;
there is no floating point anywhere in the module.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import threading

from .errors import DomainError

__all__ = [
    "weight",
    "floor_log2",
    "exponents",
    "rho",
    "sigma",
    "delta",
    "delta_cfb",
    "equal_digits",
    "DyadicRational",
    "takagi_dyadic",
    "c_desc",
    "c_asc",
    "c_max",
    "normalized_colless",
    "CollessBounds",
    "mind_bounds",
    "SIGMA_METHODS",
    "DELTA_METHODS",
    "TAKAGI_METHODS",
    "C_ASC_METHODS",
]

SIGMA_METHODS = ("recursive", "levelwise", "bitwise")
DELTA_METHODS = ("recursive", "levelwise", "explicit", "recurrence", "midpoint", "digits")
TAKAGI_METHODS = ("via_delta", "series", "weighted")
C_ASC_METHODS = ("recurrence", "closed")


def _check_n(n, low=1):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected an integer, got {type(n).__name__}")
    if n < low:
        raise DomainError(f"n must be >= {low}, got {n}")


def weight(n):
    """Number of ones in the binary expansion of ``n`` (``n >= 0``)."""
    if n < 0:
        raise DomainError("weight is defined for n >= 0")
    return bin(n).count("1")


def floor_log2(n):
    _check_n(n)
    return n.bit_length() - 1


def exponents(n):
    """Exponents of the set bits of ``n`` in strictly decreasing order."""
    _check_n(n)
    return [i for i in range(n.bit_length() - 1, -1, -1) if (n >> i) & 1]


def rho(n, i):
    """Exponent of the ``i``-th lowest set bit of ``n`` (``i`` is 1-based)."""
    _check_n(n)
    if not 1 <= i <= weight(n):
        raise DomainError(f"n={n} has fewer than {i} set bits")
    for _ in range(i - 1):
        n &= n - 1
    return (n & -n).bit_length() - 1


# ---------------------------------------------------------------------------
# sigma: S-nodes of the divide-and-conquer tree


@lru_cache(maxsize=None)
def _sigma_rec(n):
    if n == 1:
        return 0
    m = n >> 1
    if n & 1:
        return _sigma_rec(m) + _sigma_rec(m + 1)
    return 2 * _sigma_rec(m) + 1


def _beta(n, i):
    low = n & ((1 << i) - 1)
    return low if (n >> i) & 1 else (1 << i) - low


def _sigma_levelwise(n):
    return sum(_beta(n, i) for i in range(n.bit_length()))


def _sigma_bitwise(n):
    total = 0
    for i in range(n.bit_length()):
        flag = ((n >> i) + 1) % 2
        low = n % (1 << i)
        total += flag * (1 << i) + (-1) ** flag * low
    return total


def sigma(n, method="recursive"):
    """Number of S-nodes in the divide-and-conquer tree with ``n`` leaves.

    Parameters
    ----------
    n : int
        Leaf count, at least 1.
    method : {"recursive", "levelwise", "bitwise"}
        Evaluation strategy. All three give the same value.

    Returns
    -------
    int
    """
    _check_n(n)
    if method == "recursive":
        return _sigma_rec(n)
    if method == "levelwise":
        return _sigma_levelwise(n)
    if method == "bitwise":
        return _sigma_bitwise(n)
    raise ValueError(f"unknown sigma method {method!r}")


# ---------------------------------------------------------------------------
# delta: D-nodes of the divide-and-conquer tree


@lru_cache(maxsize=None)
def _delta_rec(n):
    if n == 1:
        return 0
    m = n >> 1
    if n & 1:
        return _delta_rec(m) + _delta_rec(m + 1) + 1
    return 2 * _delta_rec(m)


def _lambda(n, i):
    low = n & ((1 << i) - 1)
    return (1 << i) - low if (n >> i) & 1 else low


def _delta_levelwise(n):
    k = n.bit_length() - 1
    return sum(_lambda(n, i) for i in range(k))


def _delta_explicit(n):
    k = n.bit_length() - 1
    total = 0
    for i in range(k):
        bit = (n >> i) & 1
        total += bit * (1 << i) + (-1) ** bit * (n % (1 << i))
    return total


def _delta_digits(n):
    k = n.bit_length() - 1
    total = 0
    for i in range(k):
        if (n >> i) & 1:
            total += (1 << i) * ((k - i) - 2 * weight(n >> i) + 4)
    return total


class _DeltaTable:
    """Table of delta(1..N) grown by the one-step recurrence."""

    def __init__(self):
        self._values = [0, 0]  # index 0 unused, delta(1) = 0
        self._lock = threading.Lock()

    def get(self, n):
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            values = self._values
            m = len(values) - 1
            cur = values[m]
            extra = []
            while m < n:
                cur = cur + (m.bit_length() - 1) - 2 * weight(m) + 2
                m += 1
                extra.append(cur)
            values.extend(extra)
            return values[n]


_delta_table = _DeltaTable()


def _delta_midpoint(n):
    if n & (n - 1) == 0:
        raise DomainError(f"midpoint identity does not hold at the power of two {n}")
    twice = _delta_rec(n - 1) + _delta_rec(n + 1) + 2 * (1 - rho(n, 1))
    if twice % 2:
        raise ArithmeticError(f"midpoint identity gave a non-integer at n={n}")
    return twice // 2


def delta(n, method="recursive"):
    """Number of D-nodes in the divide-and-conquer tree with ``n`` leaves.

    Parameters
    ----------
    n : int
        Leaf count, at least 1.
    method : str
        One of ``DELTA_METHODS``:

        * ``"recursive"``: halving recursion, memoized.
        * ``"levelwise"``: sum of per-level contributions.
        * ``"explicit"``: signed sum over binary digits.
        * ``"recurrence"``: one-step recurrence from ``delta(1) = 0``;
          O(n) the first time, then a table lookup.
        * ``"midpoint"``: average of the two neighbours plus a correction.
          Not defined at powers of two.
        * ``"digits"``: sum over set bits weighted by suffix weights.

    Returns
    -------
    int

    Raises
    ------
    DomainError
        If ``n < 1``, or ``method="midpoint"`` and ``n`` is a power of two.
    """
    _check_n(n)
    if method == "recursive":
        return _delta_rec(n)
    if method == "levelwise":
        return _delta_levelwise(n)
    if method == "explicit":
        return _delta_explicit(n)
    if method == "recurrence":
        return _delta_table.get(n)
    if method == "midpoint":
        return _delta_midpoint(n)
    if method == "digits":
        return _delta_digits(n)
    raise ValueError(f"unknown delta method {method!r}")


def delta_cfb(n):
    """D-nodes of the complete full binary tree: ``floor(log2(d))`` for ``n = 2^l d``."""
    _check_n(n)
    d = n >> ((n & -n).bit_length() - 1)
    return d.bit_length() - 1


def equal_digits(n):
    """Count positions where ``n`` and ``n - 1`` share a binary digit.

    Positions range over the bit length of ``n``.
    """
    _check_n(n)
    width = n.bit_length()
    same = ~(n ^ (n - 1)) & ((1 << width) - 1)
    return weight(same)


# ---------------------------------------------------------------------------
# Takagi function on dyadic rationals


@dataclass(frozen=True)
class DyadicRational:
    """Exact value ``numerator / 2**k`` kept in lowest terms."""

    numerator: int
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("k must be nonnegative")
        num, k = self.numerator, self.k
        if num == 0:
            k = 0
        else:
            shift = min(k, (num & -num).bit_length() - 1)
            num >>= shift
            k -= shift
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "k", k)

    @property
    def value(self):
        return Fraction(self.numerator, 1 << self.k)

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        den = q.denominator
        if den & (den - 1):
            raise DomainError(f"{q} is not a dyadic rational")
        return cls(q.numerator, den.bit_length() - 1)

    def __eq__(self, other):
        if isinstance(other, DyadicRational):
            return self.numerator == other.numerator and self.k == other.k
        if isinstance(other, (int, Fraction)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.value)


def _ell(r, k):
    """Terms l_1..l_k of the Takagi series for r / 2^k, with 0 <= r < 2^k."""
    if k == 0:
        return []
    bits = [(r >> (k - j)) & 1 for j in range(1, k + 1)]
    terms = [0]
    ones = 0
    for i in range(1, k):
        ones += bits[i - 1]
        terms.append(i - ones if bits[i] else ones)
    return terms


def _takagi_series(r, k):
    total = Fraction(0)
    for i, term in enumerate(_ell(r, k), start=1):
        total += Fraction(term, 1 << i)
    # every later term equals weight(r); the geometric tail sums to weight(r) / 2^k
    return total + Fraction(weight(r), 1 << k)


def _takagi_weighted(r, k):
    scaled = sum(term << (k - i) for i, term in enumerate(_ell(r, k), start=1))
    return Fraction(scaled + weight(r), 1 << k)


def takagi_dyadic(r, k, method="via_delta"):
    """Takagi function at the dyadic point ``r / 2**k``.

    Parameters
    ----------
    r, k : int
        ``0 <= r <= 2**k``.
    method : {"via_delta", "series", "weighted"}
        ``"via_delta"`` scales a D-node count, ``"series"`` sums the digit
        series and ``"weighted"`` uses its integer-weighted form.

    Returns
    -------
    DyadicRational
    """
    _check_n(k, low=0)
    if not 0 <= r <= (1 << k):
        raise DomainError(f"r must lie in [0, 2^{k}], got {r}")
    if method == "via_delta":
        value = Fraction(_delta_rec((1 << k) + r), 1 << k)
    elif method in ("series", "weighted"):
        if r == 1 << k:
            value = Fraction(0)
        elif method == "series":
            value = _takagi_series(r, k)
        else:
            value = _takagi_weighted(r, k)
    else:
        raise ValueError(f"unknown takagi method {method!r}")
    return DyadicRational.from_fraction(value)


# ---------------------------------------------------------------------------
# Colless index of MinD trees on ladder bases


@lru_cache(maxsize=None)
def _c_desc(n):
    if n == 1:
        return 0
    m = n >> 1
    if n & 1 == 0:
        return 2 * _c_desc(m)
    return 2 * _c_desc(m) - weight(m) + (1 << (rho(n, 2)))


def c_desc(n):
    """Colless index of the MinD tree on a descending ladder base."""
    _check_n(n)
    return _c_desc(n)


@lru_cache(maxsize=None)
def _c_asc_rec(n):
    if n == 1:
        return 0
    m = n >> 1
    if n & 1:
        return 2 * _c_asc_rec(m) + 2 * m - 1
    return 2 * _c_asc_rec(m)


def _c_asc_closed(n):
    k = n.bit_length() - 1
    total = 0
    for i in range(k):
        if (n >> i) & 1:
            total += (1 << i) * ((n >> i) - 2)
    return total


def c_asc(n, method="recurrence"):
    """Colless index of the MinD tree on an ascending ladder base.

    Parameters
    ----------
    n : int
    method : {"recurrence", "closed"}
    """
    _check_n(n)
    if method == "recurrence":
        return _c_asc_rec(n)
    if method == "closed":
        return _c_asc_closed(n)
    raise ValueError(f"unknown c_asc method {method!r}")


def c_max(n):
    """Largest Colless index over ``n``-leaf trees, attained by the ladder."""
    _check_n(n)
    return (n - 1) * (n - 2) // 2


def normalized_colless(c, n):
    """Rescale a Colless index to ``[0, 1]`` between the minimum and maximum.

    Raises
    ------
    DomainError
        For ``n <= 3``, where the minimum and maximum coincide.
    """
    _check_n(n)
    if n <= 3:
        raise DomainError(f"normalized Colless index is undefined for n={n}")
    low = _delta_rec(n)
    return Fraction(c - low, c_max(n) - low)


@dataclass(frozen=True)
class CollessBounds:
    """Colless extremes at one leaf count, with the normalized upper bound."""

    n: int
    delta: int
    c_desc: int
    c_asc: int
    c_max: int
    normalized_asc: Fraction
    normalized_upper: Fraction


def mind_bounds(n):
    """Bundle the Colless extremes of MinD trees at ``n`` leaves.

    Raises
    ------
    DomainError
        For ``n <= 3``.
    ArithmeticError
        If the normalized ascending index is not strictly below
        ``2 floor(log2 n) / n``; this would contradict the theory.
    """
    _check_n(n)
    if n <= 3:
        raise DomainError(f"bounds need n >= 4, got {n}")
    asc = _c_asc_rec(n)
    norm = normalized_colless(asc, n)
    upper = Fraction(2 * floor_log2(n), n)
    if not norm < upper:
        raise ArithmeticError(f"normalized bound violated at n={n}: {norm} >= {upper}")
    return CollessBounds(
        n=n,
        delta=_delta_rec(n),
        c_desc=_c_desc(n),
        c_asc=asc,
        c_max=c_max(n),
        normalized_asc=norm,
        normalized_upper=upper,
    )
