"""Truncated Laurent series with exact coefficients.

A series carries an explicit absolute precision ``prec``: coefficients of
``var**k`` are known for ``k < prec`` and never reported beyond it.
Coefficients may be Fractions or (for nested expansions such as a
``t``-series with ``lambda``-Laurent coefficients) other series.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Any, Iterator

__all__ = ["LaurentSeries", "series_expand_sin_inverse_sq"]


def _is_zero(c: Any) -> bool:
    return c == 0


class LaurentSeries:
    """``sum_{k=valuation}^{prec-1} coeffs[k-valuation] * var**k + O(var**prec)``."""

    __slots__ = ("var", "valuation", "coeffs", "prec")

    def __init__(self, var: str, valuation: int, coeffs, prec: int):
        coeffs = list(coeffs)[: max(0, prec - valuation)]
        # strip leading zeros so the valuation is exact when possible
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            valuation += 1
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        if not coeffs:
            valuation = min(valuation, prec)
        self.var = var
        self.valuation = valuation
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def monomial(cls, var: str, exp: int, coeff, prec: int) -> LaurentSeries:
        return cls(var, exp, [coeff], prec)

    @classmethod
    def zero(cls, var: str, prec: int) -> LaurentSeries:
        return cls(var, prec, [], prec)

    def __getitem__(self, k: int):
        return self.coefficient(k)

    def coefficient(self, k: int):
        if k >= self.prec:
            raise IndexError(f"coefficient of {self.var}^{k} is beyond the precision O({self.var}^{self.prec})")
        i = k - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def terms(self) -> Iterator[tuple[int, Any]]:
        """Nonzero ``(exponent, coefficient)`` pairs in increasing exponent order."""
        for i, c in enumerate(self.coeffs):
            if not _is_zero(c):
                yield self.valuation + i, c

    def truncate(self, prec: int) -> LaurentSeries:
        return LaurentSeries(self.var, self.valuation, self.coeffs, min(prec, self.prec))

    def _check(self, other: LaurentSeries):
        if other.var != self.var:
            raise ValueError(f"cannot combine series in {self.var} and {other.var}")

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            if _is_zero(other):
                return self
            other = LaurentSeries(self.var, 0, [other], self.prec)
        self._check(other)
        prec = min(self.prec, other.prec)
        lo = min(self.valuation, other.valuation)
        coeffs = [self.coefficient(k) + other.coefficient(k) for k in range(lo, prec)]
        return LaurentSeries(self.var, lo, coeffs, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.var, self.valuation, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return LaurentSeries(self.var, self.valuation, [c * other for c in self.coeffs], self.prec)
        self._check(other)
        prec = min(self.valuation + other.prec, other.valuation + self.prec)
        lo = self.valuation + other.valuation
        n = max(0, prec - lo)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return LaurentSeries(self.var, lo, out, prec)

    __rmul__ = __mul__

    def inverse(self) -> LaurentSeries:
        """Multiplicative inverse; needs an invertible leading coefficient."""
        if not self.coeffs:
            raise ZeroDivisionError("series is zero to its precision")
        v = self.valuation
        n = self.prec - v
        a = self.coeffs
        a0inv = 1 / Fraction(a[0])
        b = [Fraction(0)] * n
        b[0] = a0inv
        for k in range(1, n):
            s = Fraction(0)
            for j in range(1, min(k, len(a) - 1) + 1):
                s += a[j] * b[k - j]
            b[k] = -s * a0inv
        return LaurentSeries(self.var, -v, b, -v + n)

    def __truediv__(self, other):
        if isinstance(other, LaurentSeries):
            return self * other.inverse()
        return self * (1 / Fraction(other))

    def __pow__(self, k: int) -> LaurentSeries:
        if k < 0:
            return self.inverse() ** (-k)
        out = LaurentSeries(self.var, 0, [Fraction(1)], self.prec - self.valuation)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentSeries):
            return (
                self.var == other.var
                and self.prec == other.prec
                and dict(self.terms()) == dict(other.terms())
            )
        if _is_zero(other):
            return not any(True for _ in self.terms())
        return NotImplemented

    __hash__ = None

    def format(self) -> str:
        parts = [f"({c.format() if isinstance(c, LaurentSeries) else c})*{self.var}^{k}" for k, c in self.terms()]
        parts.append(f"O({self.var}^{self.prec})")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentSeries({self.format()})"


def _sinc_series(d: int, prec: int) -> LaurentSeries:
    # sin(x)/x with x = d*lam/2, to O(lam^prec)
    coeffs = []
    for k in range(max(0, prec)):
        if k % 2:
            coeffs.append(Fraction(0))
        else:
            j = k // 2
            coeffs.append(Fraction((-1) ** j * d**k, 2**k * factorial(k + 1)))
    return LaurentSeries("lambda", 0, coeffs, max(0, prec))


def series_expand_sin_inverse_sq(d: int, lambda_order: int) -> LaurentSeries:
    """Laurent expansion of ``1 / (4 d sin^2(d*lam/2))`` through ``lam**lambda_order``.

    The pole has order exactly two with leading coefficient ``1/d**3``.
    """
    if d <= 0:
        raise ValueError("d must be a positive integer")
    prec = lambda_order + 1
    if prec <= -2:
        return LaurentSeries("lambda", -2, [], prec)
    sinc = _sinc_series(d, prec + 2)
    inv_sq = (sinc * sinc).inverse()
    return LaurentSeries("lambda", -2, [c / d**3 for c in inv_sq.coeffs], prec)
