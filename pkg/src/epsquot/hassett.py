"""Weighted pointed curves and the symbolic classes on their moduli spaces.

Expressions are formal linear combinations of monomials in

* ``psi(i)``     cotangent class at the i-th weight-1 marking,
* ``psih(j)``    cotangent class at the j-th weight-eps marking,
* ``lambda(k)``  Hodge classes, inert under every rewrite here,
* ``D(J)``       diagonal where the light markings in J coincide,
* ``Delta(J)``   boundary divisor with the light markings in J on a rational tail.

Two diagonals with overlapping index sets merge, picking up
``(-psih)^(|J & J'| - 1)``.  ``Delta(J)^2`` follows the same rule, while a
``Delta`` times any *other* class with an overlapping index set is zero
(distinct boundary strata with shared markings do not meet).  This is a
modelling choice; it is the one that makes pullbacks along successive
contractions compose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import UnsupportedScopeError

__all__ = [
    "WeightedMarking",
    "WeightedConfig",
    "weights_amd",
    "is_weighted_stable",
    "hassett_dim",
    "Monomial",
    "TautExpr",
    "canonical_form",
    "pullback_contraction",
    "psi_integral_genus0",
    "psi_integral_genus1",
    "lambda1_psi_integral_genus1",
    "hodge_integral",
    "m11_constants",
]


# --- weighted stability -------------------------------------------------------


@dataclass(frozen=True)
class WeightedMarking:
    label: int
    vertex: int
    point: int  # markings sharing (vertex, point) coincide
    weight: Fraction = Fraction(1)


@dataclass(frozen=True)
class WeightedConfig:
    genera: tuple[int, ...]
    nodes: tuple[tuple[int, int], ...] = ()
    markings: tuple[WeightedMarking, ...] = ()

    def __post_init__(self):
        nv = len(self.genera)
        for a, b in self.nodes:
            if not (0 <= a < nv and 0 <= b < nv):
                raise ValueError(f"node {(a, b)} refers to a missing component")
        for mk in self.markings:
            if not 0 <= mk.vertex < nv:
                raise ValueError(f"marking {mk.label} lies on a missing component")


def weights_amd(m: int, d: int, eps) -> tuple[Fraction, ...]:
    """``m`` ones followed by ``d`` copies of ``eps``."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    return (Fraction(1),) * m + (eps,) * d


def is_weighted_stable(cfg: WeightedConfig, a: Sequence | None = None) -> bool:
    """Hassett stability for the weights ``a`` (ordered by marking label).

    Without ``a`` the weights stored on the markings are used.
    """
    marks = sorted(cfg.markings, key=lambda mk: mk.label)
    if a is None:
        weights = [Fraction(mk.weight) for mk in marks]
    else:
        if len(a) != len(marks):
            raise ValueError(f"expected {len(marks)} weights, got {len(a)}")
        weights = [Fraction(w) for w in a]
    if any(not 0 < w <= 1 for w in weights):
        raise ValueError("weights must lie in (0, 1]")
    at_point: dict[tuple[int, int], Fraction] = {}
    on_vertex = [Fraction(0)] * len(cfg.genera)
    for mk, w in zip(marks, weights):
        key = (mk.vertex, mk.point)
        at_point[key] = at_point.get(key, 0) + w
        on_vertex[mk.vertex] += w
    if any(total > 1 for total in at_point.values()):
        return False
    nodes = [0] * len(cfg.genera)
    for x, y in cfg.nodes:
        nodes[x] += 1
        nodes[y] += 1
    return all(2 * g - 2 + k + w > 0 for g, k, w in zip(cfg.genera, nodes, on_vertex))


def hassett_dim(g: int, m: int, d: int) -> int:
    if 2 * g - 2 + m + d <= 0:
        raise ValueError(f"no stable curves of type (g, m, d) = ({g}, {m}, {d})")
    return 3 * g - 3 + m + d


# --- tautological expressions -------------------------------------------------

_DIAG_KINDS = ("D", "Delta")


@dataclass(frozen=True, order=True)
class Monomial:
    """Product of classes; each field is sorted, ``diag`` may repeat entries."""

    psi: tuple[tuple[int, int], ...] = ()
    psih: tuple[tuple[int, int], ...] = ()
    hodge: tuple[tuple[int, int], ...] = ()
    diag: tuple[tuple[str, tuple[int, ...]], ...] = ()

    @staticmethod
    def build(psi=None, psih=None, hodge=None, diag=()) -> Monomial:
        def pows(m):
            return tuple(sorted((i, k) for i, k in (m or {}).items() if k))

        return Monomial(pows(psi), pows(psih), pows(hodge), tuple(sorted((k, tuple(sorted(J))) for k, J in diag)))

    def __mul__(self, other: Monomial) -> Monomial:
        def merge(a, b):
            out = dict(a)
            for i, k in b:
                out[i] = out.get(i, 0) + k
            return out

        return Monomial.build(
            merge(self.psi, other.psi),
            merge(self.psih, other.psih),
            merge(self.hodge, other.hodge),
            self.diag + other.diag,
        )

    def degree(self) -> int:
        return (
            sum(k for _, k in self.psi)
            + sum(k for _, k in self.psih)
            + sum(i * k for i, k in self.hodge)
            + sum(len(J) - 1 for _, J in self.diag)
        )

    def format(self) -> str:
        parts = []
        for name, items in (("psi", self.psi), ("psih", self.psih), ("lambda", self.hodge)):
            for i, k in items:
                parts.append(f"{name}({i})" + (f"^{k}" if k > 1 else ""))
        runs = itertools.groupby(self.diag)
        for (kind, J), grp in runs:
            k = len(list(grp))
            parts.append(f"{kind}({','.join(map(str, J))})" + (f"^{k}" if k > 1 else ""))
        return " * ".join(parts)


ONE = Monomial()


class TautExpr:
    """Linear combination of :class:`Monomial` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c:
                clean[mono] = clean.get(mono, 0) + Fraction(c)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def const(cls, c) -> TautExpr:
        return cls({ONE: Fraction(c)})

    @classmethod
    def psi(cls, i: int, k: int = 1) -> TautExpr:
        return cls({Monomial.build(psi={i: k}): 1})

    @classmethod
    def psih(cls, j: int, k: int = 1) -> TautExpr:
        return cls({Monomial.build(psih={j: k}): 1})

    @classmethod
    def hodge(cls, i: int, k: int = 1) -> TautExpr:
        return cls({Monomial.build(hodge={i: k}): 1})

    @classmethod
    def D(cls, J: Iterable[int]) -> TautExpr:
        return cls({Monomial.build(diag=[("D", tuple(J))]): 1})

    @classmethod
    def Delta(cls, J: Iterable[int]) -> TautExpr:
        return cls({Monomial.build(diag=[("Delta", tuple(J))]): 1})

    def _coerce(self, other) -> TautExpr:
        if isinstance(other, TautExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return TautExpr.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return TautExpr(out)

    __radd__ = __add__

    def __neg__(self):
        return TautExpr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TautExpr({m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return TautExpr(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TautExpr:
        if k < 0:
            raise ValueError("negative power of a class expression")
        out = TautExpr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def format(self) -> str:
        if not self.terms:
            return "0"
        out = ""
        for i, mono in enumerate(sorted(self.terms)):
            c = self.terms[mono]
            body = mono.format()
            if i == 0:
                out = str(c) if not body else f"{c} * {body}"
            else:
                sign = "-" if c < 0 else "+"
                out += f" {sign} {abs(c)}" + (f" * {body}" if body else "")
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TautExpr({self.format()})"


def _canonical_monomial(mono: Monomial, eps: Fraction | None) -> tuple[Fraction, Monomial] | None:
    sign = Fraction(1)
    psih = dict(mono.psih)
    diag = [(kind, frozenset(J)) for kind, J in mono.diag]
    merged = True
    while merged:
        merged = False
        for x, y in itertools.combinations(range(len(diag)), 2):
            (k1, A), (k2, B) = diag[x], diag[y]
            overlap = len(A & B)
            if not overlap:
                continue
            if "Delta" in (k1, k2) and (k1, A) != (k2, B):
                return None
            union = A | B
            kind = k1
            power = overlap - 1
            if power:
                sign *= (-1) ** power
                j = min(union)
                psih[j] = psih.get(j, 0) + power
            diag = [t for i, t in enumerate(diag) if i not in (x, y)] + [(kind, union)]
            merged = True
            break
    if eps is not None and any(kind == "D" and eps * len(J) > 1 for kind, J in diag):
        return None
    # psih_j restricted to a diagonal only depends on the diagonal
    rep = {}
    for _, J in diag:
        lo = min(J)
        for j in J:
            rep[j] = lo
    collected: dict[int, int] = {}
    for j, k in psih.items():
        r = rep.get(j, j)
        collected[r] = collected.get(r, 0) + k
    new = Monomial.build(dict(mono.psi), collected, dict(mono.hodge), [(kind, tuple(J)) for kind, J in diag])
    return sign, new


def canonical_form(e: TautExpr, eps=None) -> TautExpr:
    """Merge overlapping diagonal classes, then collect cotangent classes on them.

    With ``eps`` supplied, monomials containing ``D(J)`` with ``eps*|J| > 1``
    vanish.
    """
    eps = None if eps is None else Fraction(eps)
    out: dict[Monomial, Fraction] = {}
    for mono, c in e.terms.items():
        res = _canonical_monomial(mono, eps)
        if res is None:
            continue
        sign, new = res
        out[new] = out.get(new, 0) + sign * c
    return TautExpr(out)


def _max_light_index(e: TautExpr) -> int:
    top = 0
    for mono in e.terms:
        for j, _ in mono.psih:
            top = max(top, j)
        for _, J in mono.diag:
            top = max(top, max(J))
    return top


def pullback_contraction(e: TautExpr, eps, eps_to, d: int | None = None) -> TautExpr:
    """Pull ``e`` back along the contraction from weight ``eps`` to ``eps_to``.

    ``psi`` and Hodge classes are unchanged; ``psih(j)`` becomes
    ``psih(j) - sum Delta(J)`` over ``J`` containing ``j`` with
    ``eps*|J| > 1 >= eps_to*|J|``.  ``e`` lives on the ``eps_to`` space, so a
    ``Delta(J)`` with ``eps_to*|J| <= 1`` in it is rejected.
    """
    eps, eps_to = Fraction(eps), Fraction(eps_to)
    if eps < eps_to:
        raise ValueError("pullback needs eps >= eps_to")
    for mono in e.terms:
        for kind, J in mono.diag:
            if kind == "Delta" and eps_to * len(J) <= 1:
                raise ValueError(f"Delta{tuple(J)} is not a boundary class at weight {eps_to}")
    if d is None:
        d = _max_light_index(e)
    sizes = [k for k in range(2, d + 1) if eps * k > 1 >= eps_to * k]
    images: dict[int, TautExpr] = {}
    for j in range(1, d + 1):
        img = TautExpr.psih(j)
        others = [x for x in range(1, d + 1) if x != j]
        for k in sizes:
            for rest in itertools.combinations(others, k - 1):
                img = img - TautExpr.Delta(sorted((j,) + rest))
        images[j] = img
    out = TautExpr()
    for mono, c in e.terms.items():
        term = TautExpr({Monomial.build(dict(mono.psi), None, dict(mono.hodge), mono.diag): c})
        for j, k in mono.psih:
            if j > d:
                raise ValueError(f"psih({j}) exceeds the number of light markings d = {d}")
            term = term * images[j] ** k
        out = out + term
    return canonical_form(out)


# --- intersection numbers -----------------------------------------------------


def m11_constants() -> tuple[Fraction, Fraction]:
    """``(integral of lambda_1, integral of psi_1)`` over the moduli of 1-pointed genus-1 curves."""
    return Fraction(1, 24), Fraction(1, 24)


def psi_integral_genus0(a: Sequence[int]) -> Fraction:
    """Integral of ``prod psi_i^{a_i}`` over the moduli of ``len(a)``-pointed genus-0 curves."""
    m = len(a)
    if m < 3:
        raise ValueError("genus-0 moduli need at least three markings")
    if any(x < 0 for x in a):
        raise ValueError("exponents must be nonnegative")
    if sum(a) != m - 3:
        return Fraction(0)
    den = 1
    for x in a:
        den *= factorial(x)
    return Fraction(factorial(m - 3), den)


@lru_cache(maxsize=None)
def _genus1(a: tuple[int, ...]) -> Fraction:
    n = len(a)
    if sum(a) != n:
        return Fraction(0)
    if n == 1:
        return m11_constants()[1]
    if 0 in a:
        # string equation
        i = a.index(0)
        rest = a[:i] + a[i + 1 :]
        total = Fraction(0)
        for j, x in enumerate(rest):
            if x:
                total += _genus1(tuple(sorted(rest[:j] + (x - 1,) + rest[j + 1 :])))
        return total
    # all exponents equal one: dilaton equation
    return (n - 1) * _genus1(a[1:])


def psi_integral_genus1(a: Sequence[int]) -> Fraction:
    """Integral of ``prod psi_i^{a_i}`` over the moduli of ``len(a)``-pointed genus-1 curves."""
    if len(a) < 1:
        raise ValueError("genus-1 moduli need at least one marking")
    if any(x < 0 for x in a):
        raise ValueError("exponents must be nonnegative")
    return _genus1(tuple(sorted(a)))


def lambda1_psi_integral_genus1(a: Sequence[int]) -> Fraction:
    """Integral of ``lambda_1 * prod psi_i^{a_i}`` in genus one.

    ``lambda_1`` is a multiple of the irreducible boundary divisor, whose
    normalisation is a genus-0 space with two extra points.
    """
    n = len(a)
    if n < 1:
        raise ValueError("genus-1 moduli need at least one marking")
    if sum(a) != n - 1:
        return Fraction(0)
    lam1 = m11_constants()[0]
    return lam1 * psi_integral_genus0(tuple(a) + (0, 0))


def hodge_integral(genus: int, a: Sequence[int], lambda_power: int = 0) -> Fraction:
    """``int lambda_1^lambda_power prod psi_i^{a_i}`` for genus 0 or 1."""
    if genus == 0:
        return psi_integral_genus0(a) if lambda_power == 0 else Fraction(0)
    if genus == 1:
        if lambda_power == 0:
            return psi_integral_genus1(a)
        if lambda_power == 1:
            return lambda1_psi_integral_genus1(a)
        return Fraction(0)
    raise UnsupportedScopeError(f"Hodge integrals in genus {genus} are not available")
