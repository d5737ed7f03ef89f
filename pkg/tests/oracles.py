"""Independent reference computations used to derive expected values.

Nothing here imports the code paths it is used to check.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

import sympy


@lru_cache(maxsize=None)
def string_recursion_genus0(a: tuple[int, ...]) -> Fraction:
    """Genus-0 psi-integrals from the string equation and the value 1 on three points."""
    n = len(a)
    if n < 3 or sum(a) != n - 3:
        return Fraction(0)
    if n == 3:
        return Fraction(1)
    i = a.index(0)  # sum(a) = n-3 < n forces a zero exponent
    rest = a[:i] + a[i + 1 :]
    total = Fraction(0)
    for j, x in enumerate(rest):
        if x:
            total += string_recursion_genus0(rest[:j] + (x - 1,) + rest[j + 1 :])
    return total


def sympy_sin_coefficients(d: int, lambda_order: int) -> dict[int, Fraction]:
    """Coefficients of ``1/(4 d sin(d x/2)^2)`` for ``x^-2 .. x^lambda_order`` via sympy."""
    x = sympy.Symbol("x")
    expr = 1 / (4 * d * sympy.sin(d * x / 2) ** 2)
    ser = sympy.series(expr, x, 0, lambda_order + 1).removeO()
    out = {}
    for k in range(-2, lambda_order + 1):
        c = ser.coeff(x, k)
        out[k] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    return out


def stability_critical_values(q) -> set[Fraction]:
    """Values of eps where a single stability inequality of ``q`` can switch."""
    vals = set()
    for i, v in enumerate(q.vertices):
        k = 2 * v.genus - 2 + q.special_points(i)
        if v.degree and k < 0:
            vals.add(Fraction(-k, v.degree))
        for length in v.torsion:
            vals.add(Fraction(1, length))
    return vals


def brute_stable(q, eps: Fraction) -> bool:
    """Direct evaluation of both stability inequalities with Fractions."""
    for i, v in enumerate(q.vertices):
        if 2 * v.genus - 2 + q.special_points(i) + eps * v.degree <= 0:
            return False
        if any(eps * length > 1 for length in v.torsion):
            return False
    return True


def _generic_point(n: int, seed: int) -> list[int]:
    rng = random.Random(seed)
    while True:
        pt = [rng.randint(-1000, 1000) for _ in range(n)]
        if len(set(pt)) == n and 0 not in pt:
            return pt


def bott_lines(n: int, twist: int, seed: int = 7) -> Fraction:
    """Degree-1 genus-0 invariant of P^{n-1} twisted by O(twist), via Bott's formula on the Grassmannian of lines.

    For ``twist > 0`` the integrand is ``e(H^0(line, O(twist)))``; for
    ``twist < 0`` it is ``e(H^1(line, O(twist)))``.
    """
    lam = _generic_point(n, seed)
    total = Fraction(0)
    for i, j in itertools.combinations(range(n), 2):
        num = Fraction(1)
        if twist > 0:
            weights = [a * lam[i] + (twist - a) * lam[j] for a in range(twist + 1)]
        else:
            weights = [a * lam[i] + (twist - a) * lam[j] for a in range(twist + 1, 0)]
        for w in weights:
            num *= w
        den = Fraction(1)
        for k in range(n):
            if k in (i, j):
                continue
            den *= (lam[i] - lam[k]) * (lam[j] - lam[k])
        total += num / den
    return total
