"""Generating functions and chamber-wise invariants of local geometries.

Conifold invariants in the stable-map chamber are read off the
Gopakumar-Vafa series; they are never tabulated by hand, so the series and
the localization engine remain two independent computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedScopeError
from .hassett import m11_constants
from .localization import assemble_invariant, geometry
from .quotients import INF, nonempty_threshold, walls
from .series import LaurentSeries, series_expand_sin_inverse_sq

__all__ = [
    "gv_series",
    "f_epsilon_conifold",
    "gw_conifold",
    "conifold_invariant",
    "local_p2_11",
    "quintic_g0",
    "invariant",
    "ChamberRow",
    "wall_crossing_report",
]


def gv_series(lambda_order: int, t_order: int) -> LaurentSeries:
    """``sum_d t^d / (4 d sin^2(d lambda / 2))`` through ``t^t_order`` and ``lambda^lambda_order``.

    The result is a series in ``t`` whose coefficients are Laurent series in
    ``lambda``.
    """
    if t_order < 1:
        raise ValueError("t_order must be at least 1")
    if lambda_order < -2:
        raise ValueError("lambda_order must be at least -2")
    coeffs = [LaurentSeries.zero("lambda", lambda_order + 1)]
    coeffs += [series_expand_sin_inverse_sq(d, lambda_order) for d in range(1, t_order + 1)]
    return LaurentSeries("t", 0, coeffs, t_order + 1)


def f_epsilon_conifold(eps, lambda_order: int, t_order: int) -> LaurentSeries:
    """The conifold series with the genus-0 terms of degree ``d <= 2/eps`` removed."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    out = gv_series(lambda_order, t_order)
    prec = lambda_order + 1
    coeffs = [out.coefficient(k) for k in range(t_order + 1)]
    for d in range(1, t_order + 1):
        if d * eps <= 2:
            coeffs[d] = coeffs[d] - LaurentSeries.monomial("lambda", -2, Fraction(1, d**3), prec)
    return LaurentSeries("t", 0, coeffs, t_order + 1)


def gw_conifold(g: int, d: int) -> Fraction:
    """``N^GW_{g,d}``: the ``lambda^(2g-2) t^d`` coefficient of :func:`gv_series`."""
    if d < 1:
        raise ValueError("d must be positive")
    if g < 0:
        raise ValueError("g must be nonnegative")
    if g > 1:
        raise UnsupportedScopeError(f"conifold invariants are extracted for g <= 1 only, got g = {g}")
    series = gv_series(2 * g - 2, d)
    return series.coefficient(d).coefficient(2 * g - 2)


def conifold_invariant(g: int, d: int, eps) -> Fraction:
    """``N^eps_{g,d}``: the stable-map value when ``2g - 2 + eps*d > 0``, else zero."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if g > 1:
        raise UnsupportedScopeError(f"conifold invariants are extracted for g <= 1 only, got g = {g}")
    if 2 * g - 2 + eps * d <= 0:
        return Fraction(0)
    return gw_conifold(g, d)


def local_p2_11(eps) -> Fraction:
    """Genus-1 degree-1 invariant of local P^2."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if eps > 1:
        return assemble_invariant(1, 0, 1, eps, geometry("local-p2"))
    # the moduli space is the product of the 1-pointed genus-1 curves with P^2
    int_lambda1, int_psi1 = m11_constants()
    return 9 * (3 * int_psi1 - int_lambda1)


def quintic_g0(d: int, eps) -> Fraction:
    """Genus-0 invariant of the quintic threefold, in degree one."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if d != 1:
        raise UnsupportedScopeError(
            f"quintic invariants are evaluated in degree 1 only (got d = {d}); "
            "lower chambers need torsion-vertex integrals"
        )
    if eps <= nonempty_threshold(0, 0, d):
        return Fraction(0)
    return assemble_invariant(0, 0, d, eps, geometry("quintic"))


def invariant(name: str, g: int, d: int, eps) -> Fraction:
    """Dispatch on the geometry name; raises :class:`UnsupportedScopeError` outside the evaluable range."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if name == "conifold":
        return conifold_invariant(g, d, eps)
    if name == "local-p2" and (g, d) == (1, 1):
        return local_p2_11(eps)
    if name == "quintic":
        if g != 0:
            raise UnsupportedScopeError("quintic invariants are evaluated in genus 0 only")
        return quintic_g0(d, eps)
    target = geometry(name)
    if eps <= nonempty_threshold(g, 0, d):
        return Fraction(0)
    if eps > 1:
        return assemble_invariant(g, 0, d, eps, target)
    raise UnsupportedScopeError(
        f"{name} at eps = {eps} <= 1 has fixed loci with torsion, whose integrals are not available"
    )


@dataclass(frozen=True)
class ChamberRow:
    lower: Fraction
    upper: Fraction | float
    value: Fraction | None  # None when the chamber is outside the evaluable scope
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": "inf" if self.upper == INF else str(self.upper),
            "value": None if self.value is None else str(self.value),
            "note": self.note,
        }


def _sample(lower: Fraction, upper) -> Fraction:
    # chambers are right-closed, so the upper wall itself is a member
    return lower + 1 if upper == INF else Fraction(upper)


def wall_crossing_report(name: str, g: int, d: int) -> list[ChamberRow]:
    """One invariant per chamber of the unmarked wall structure."""
    rows = []
    for lower, upper in walls(g, 0, d).chambers():
        try:
            rows.append(ChamberRow(lower, upper, invariant(name, g, d, _sample(lower, upper))))
        except UnsupportedScopeError as exc:
            rows.append(ChamberRow(lower, upper, None, str(exc)))
    return rows
