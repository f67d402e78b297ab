"""
Truncated complex power series.

A :class:`TruncatedSeries` holds the Taylor coefficients ``c_0 ... c_N`` of a
function about the origin. ``N`` is the ``order``: coefficients of higher
powers are unknown, not zero, so every operation truncates its result to the
smallest order of its operands. The module functions ``ts_arith``,
``ts_sqrt``, ``ts_compose``, ``ts_revert`` and ``ts_derive`` are the
operations used by the saddle-point coefficient computation; the class also
overloads the arithmetic operators for convenience::

    >>> x = TruncatedSeries.variable(5)
    >>> ts_revert(x + x * x).coeffs[:4]
    array([ 0.+0.j,  1.+0.j, -1.+0.j,  2.+0.j])
"""
import logging
from typing import Iterable, Literal, Optional, Union

import numpy as np

from api.config import NUMERICS_CONFIG
from core.errors import SeriesError

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]


def default_order(n_max: int) -> int:
    """Truncation order needed for expansion indices up to n_max (with guard terms)"""
    return 2 * n_max + 8


class TruncatedSeries:
    """Complex power series truncated at a fixed order"""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number], order: Optional[int] = None):
        c = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise SeriesError("A series needs at least one coefficient")
        if order is not None:
            if order < 0:
                raise SeriesError("order must be nonnegative")
            padded = np.zeros(order + 1, dtype=complex)
            k = min(order + 1, c.size)
            padded[:k] = c[:k]
            c = padded
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @classmethod
    def constant(cls, value: Number, order: int) -> "TruncatedSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The series x"""
        return cls([0.0, 1.0], order)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"Cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[:order + 1])

    def __getitem__(self, j: int) -> complex:
        return complex(self.coeffs[j])

    def __len__(self) -> int:
        return self.coeffs.size

    def __call__(self, x: Number) -> complex:
        """Evaluate the truncated polynomial at x"""
        return complex(np.polyval(self.coeffs[::-1], x))

    def __repr__(self) -> str:
        return f"TruncatedSeries({np.array2string(self.coeffs, precision=6)})"

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order)

    def __add__(self, other):
        return ts_arith(self, self._coerce(other), "add")

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.coeffs)

    def __sub__(self, other):
        return ts_arith(self, -self._coerce(other), "add")

    def __rsub__(self, other):
        return ts_arith(self._coerce(other), -self, "add")

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return ts_arith(self, other, "mul")
        return TruncatedSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return ts_arith(self, other, "div")
        return TruncatedSeries(self.coeffs / other)

    def __rtruediv__(self, other):
        return ts_arith(self._coerce(other), self, "div")

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = min(self.order, other.order) + 1
        return bool(np.allclose(self.coeffs[:n], other.coeffs[:n], rtol=0.0, atol=atol))


def ts_arith(a: TruncatedSeries, b: TruncatedSeries,
             op: Literal["add", "mul", "div"]) -> TruncatedSeries:
    """
    Truncated ring operations; the result has order min(a.order, b.order)

    Raises:
        SeriesError: On division by a series with vanishing constant term
    """
    n = min(a.order, b.order) + 1
    x, y = a.coeffs[:n], b.coeffs[:n]

    if op == "add":
        return TruncatedSeries(x + y)
    if op == "mul":
        return TruncatedSeries(np.convolve(x, y)[:n])
    if op == "div":
        if y[0] == 0:
            raise SeriesError("Division by a series with vanishing constant term")
        q = np.zeros(n, dtype=complex)
        for k in range(n):
            q[k] = (x[k] - np.dot(q[:k], y[k:0:-1])) / y[0]
        return TruncatedSeries(q)
    raise SeriesError(f"Unknown operation: {op}")


def ts_sqrt(a: TruncatedSeries, branch: Literal["plus", "minus"] = "plus") -> TruncatedSeries:
    """
    Square root of a series with a nonzero constant term or a zero of even
    order 2k at the origin. ``branch`` selects the sign of the leading
    coefficient (plus = principal square root).

    For a zero of order 2k the result is x^k sqrt(a/x^{2k}) and its order is
    a.order - k.

    Raises:
        SeriesError: On a zero of odd order, or on an identically zero series
    """
    tol = NUMERICS_CONFIG["series_zero_tol"]
    nonzero = np.flatnonzero(np.abs(a.coeffs) >= tol)
    if nonzero.size == 0:
        raise SeriesError("Square root of a series that vanishes to its full order")
    lead = int(nonzero[0])
    if lead % 2:
        raise SeriesError(f"Square root of a series with a zero of odd order {lead}")

    b = a.coeffs[lead:]
    n = b.size
    s = np.zeros(n, dtype=complex)
    s[0] = np.sqrt(b[0])
    if branch == "minus":
        s[0] = -s[0]
    elif branch != "plus":
        raise SeriesError(f"Unknown branch: {branch}")
    for k in range(1, n):
        s[k] = (b[k] - np.dot(s[1:k], s[k - 1:0:-1])) / (2.0 * s[0])

    half = lead // 2
    return TruncatedSeries(np.concatenate([np.zeros(half, dtype=complex), s]))


def ts_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """
    Taylor coefficients of outer(inner(x)) up to the common order

    Raises:
        SeriesError: If inner has a nonzero constant term
    """
    if inner.coeffs[0] != 0:
        raise SeriesError("Composition requires an inner series vanishing at the origin")

    order = min(outer.order, inner.order)
    inner = inner.truncate(order)
    result = TruncatedSeries.constant(outer.coeffs[order], order)
    # Horner's scheme
    for k in range(order - 1, -1, -1):
        result = ts_arith(result, inner, "mul")
        result.coeffs[0] += outer.coeffs[k]
    return result


def ts_revert(a: TruncatedSeries) -> TruncatedSeries:
    """
    Compositional inverse b with a(b(x)) = x to order N

    Raises:
        SeriesError: If a(0) != 0 or a'(0) == 0
    """
    if a.coeffs[0] != 0:
        raise SeriesError("Reversion requires a(0) = 0")
    if a.order < 1 or a.coeffs[1] == 0:
        raise SeriesError("Reversion requires a'(0) != 0")

    order = a.order
    b = TruncatedSeries([0.0, 1.0 / a.coeffs[1]], order)
    # Fix one coefficient per pass: the x^k coefficient of a(b(x)) is linear
    # in b_k with slope a_1.
    for k in range(2, order + 1):
        residual = ts_compose(a, b).coeffs[k]
        b.coeffs[k] = -residual / a.coeffs[1]
    return b


def ts_derive(a: TruncatedSeries) -> TruncatedSeries:
    """Term-by-term derivative, order N-1 (a constant derives to the zero constant)"""
    if a.order == 0:
        return TruncatedSeries([0.0])
    return TruncatedSeries(a.coeffs[1:] * np.arange(1, a.order + 1))


def binomial_series(base: complex, exponent: complex, scale: complex, order: int) -> TruncatedSeries:
    """
    Taylor series of (base + scale*x)^exponent about x = 0, principal branch

    Raises:
        SeriesError: If base is zero
    """
    if base == 0:
        raise SeriesError("binomial_series needs a nonzero base")
    c = np.zeros(order + 1, dtype=complex)
    c[0] = np.exp(exponent * np.log(complex(base)))
    ratio = scale / base
    for k in range(1, order + 1):
        c[k] = c[k - 1] * (exponent - k + 1) / k * ratio
    return TruncatedSeries(c)


def exp_series(order: int) -> TruncatedSeries:
    """exp(x) truncated at order"""
    c = np.ones(order + 1, dtype=complex)
    for k in range(1, order + 1):
        c[k] = c[k - 1] / k
    return TruncatedSeries(c)
