"""Exact scalars, multivariate polynomials and rational functions.

Scalars are :class:`fractions.Fraction`.  Polynomials live in
``Q[lambda_1, ..., lambda_n]`` and are stored sparsely as a mapping from
exponent tuples to nonzero coefficients.

A :class:`RationalFunction` is kept in *factored, unreduced* form::

    const * prod(num_i ** e_i) / prod(den_j ** f_j)

where every factor is a non-constant polynomial normalised so that its
leading coefficient (lex order) is 1.  Products are concatenations of
factor lists, identical factors cancel syntactically, and sums use the
least common multiple of the two denominator factor multisets.  No
multivariate gcd is ever computed; equality is decided by
cross-multiplication.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]
Scalar = int | Fraction

__all__ = [
    "MultiPoly",
    "RationalFunction",
    "rat_arith",
    "rf_arith",
    "rf_equal",
    "lam",
    "linear",
    "product",
]


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """Apply ``op`` (one of ``+ - * /``) to two exact rationals.

    ``x`` and the unicode symbols ``× ÷ −`` are accepted as aliases.
    Division by zero raises :class:`ZeroDivisionError`.
    """
    a, b = Fraction(a), Fraction(b)
    if op in ("+",):
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "x", "×"):
        return a * b
    if op in ("/", "÷"):
        if b == 0:
            raise ZeroDivisionError(f"division of {a} by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> MultiPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> MultiPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, idx: int) -> MultiPoly:
        if not 0 <= idx < nvars:
            raise ValueError(f"variable index {idx} out of range for {nvars} variables")
        e = [0] * nvars
        e[idx] = 1
        return cls(nvars, {tuple(e): 1})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading(self) -> tuple[Exponent, Fraction]:
        exp = max(self._terms)
        return exp, self._terms[exp]

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MultiPoly._raw(self.nvars, {})
            return MultiPoly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, values: Sequence[Scalar]) -> Fraction:
        if len(values) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(values)}")
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Rename variable ``i`` to variable ``perm[i]``."""
        out = {}
        for e, c in self._terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            out[tuple(ne)] = c
        return MultiPoly._raw(self.nvars, out)

    def monic(self) -> tuple[Fraction, MultiPoly]:
        """Split off the leading coefficient: ``self == lc * monic``."""
        _, lc = self.leading()
        if lc == 1:
            return lc, self
        inv = 1 / lc
        return lc, MultiPoly._raw(self.nvars, {e: c * inv for e, c in self._terms.items()})

    def divide_exact(self, other: MultiPoly) -> MultiPoly | None:
        """Return ``self / other`` if the division is exact, else ``None``.

        Multivariate division with respect to lex order; a nonzero remainder
        means ``other`` does not divide ``self``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = other.leading()
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem)
            if any(a < b for a, b in zip(e, lead_e)):
                return None
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = rem[e] / lead_c
            quot[qe] = qc
            for oe, oc in other._terms.items():
                te = tuple(a + b for a, b in zip(qe, oe))
                v = rem.get(te, 0) - qc * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return MultiPoly._raw(self.nvars, quot)

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"l{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def lam(i: int, nvars: int) -> MultiPoly:
    """The equivariant parameter ``lambda_i`` (1-based) in ``nvars`` variables."""
    return MultiPoly.var(nvars, i - 1)


def linear(coeffs: Mapping[int, Scalar], nvars: int) -> MultiPoly:
    """Linear form ``sum_i coeffs[i] * lambda_i`` with 1-based keys."""
    terms = {}
    for i, c in coeffs.items():
        e = [0] * nvars
        e[i - 1] = 1
        terms[tuple(e)] = Fraction(c) + terms.get(tuple(e), 0)
    return MultiPoly(nvars, terms)


def _expand(factors: Mapping[MultiPoly, int], nvars: int) -> MultiPoly:
    out = MultiPoly.const(nvars, 1)
    for p, k in factors.items():
        out = out * p**k
    return out


class RationalFunction:
    """Element of ``Q(lambda_1, ..., lambda_n)`` in factored form."""

    __slots__ = ("nvars", "const", "num", "den")

    def __init__(
        self,
        nvars: int,
        const: Scalar = 1,
        num: Mapping[MultiPoly, int] | None = None,
        den: Mapping[MultiPoly, int] | None = None,
    ):
        self.nvars = nvars
        self.const = Fraction(const)
        n, d = Counter(), Counter()
        c = self.const
        for src, dst, sign in ((num or {}, n, 1), (den or {}, d, -1)):
            for p, k in src.items():
                if k <= 0:
                    continue
                if p.is_zero():
                    if sign < 0:
                        raise ZeroDivisionError("zero polynomial in a denominator")
                    c = Fraction(0)
                    continue
                if p.is_constant():
                    c *= p.constant_value() ** (sign * k)
                    continue
                lc, m = p.monic()
                c *= lc ** (sign * k)
                dst[m] += k
        if c == 0:
            n, d = Counter(), Counter()
        for p in list(n):
            common = min(n[p], d.get(p, 0))
            if common:
                n[p] -= common
                d[p] -= common
        self.const = c
        self.num = {p: k for p, k in n.items() if k}
        self.den = {p: k for p, k in d.items() if k}

    @classmethod
    def from_poly(cls, p: MultiPoly) -> RationalFunction:
        return cls(p.nvars, 1, {p: 1})

    @classmethod
    def constant(cls, nvars: int, c: Scalar) -> RationalFunction:
        return cls(nvars, c)

    @classmethod
    def quotient(cls, num: MultiPoly, den: MultiPoly) -> RationalFunction:
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        return cls(num.nvars, 1, {num: 1}, {den: 1})

    @property
    def numerator(self) -> MultiPoly:
        return _expand(self.num, self.nvars) * self.const

    @property
    def denominator(self) -> MultiPoly:
        return _expand(self.den, self.nvars)

    def is_zero(self) -> bool:
        return self.const == 0

    def _coerce(self, other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError("rational functions over different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.nvars, other)
        if isinstance(other, MultiPoly):
            return RationalFunction.from_poly(other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        num = Counter(self.num)
        num.update(other.num)
        den = Counter(self.den)
        den.update(other.den)
        return RationalFunction(self.nvars, self.const * other.const, num, den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if self.const == 0:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.nvars, 1 / self.const, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __neg__(self):
        return RationalFunction(self.nvars, -self.const, self.num, self.den)

    def __pow__(self, k: int) -> RationalFunction:
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(
            self.nvars,
            self.const**k,
            {p: e * k for p, e in self.num.items()},
            {p: e * k for p, e in self.den.items()},
        )

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.const == 0:
            return other
        if other.const == 0:
            return self
        lcm = Counter(self.den) | Counter(other.den)
        parts = []
        for f in (self, other):
            cofactor = Counter(lcm)
            cofactor.subtract(f.den)
            parts.append(_expand(f.num, self.nvars) * _expand(+cofactor, self.nvars) * f.const)
        total = parts[0] + parts[1]
        if total.is_zero():
            return RationalFunction(self.nvars, 0)
        # cancel whatever denominator factors divide the new numerator exactly
        den = dict(lcm)
        for p in list(den):
            while den[p]:
                q = total.divide_exact(p)
                if q is None:
                    break
                total = q
                den[p] -= 1
        return RationalFunction(self.nvars, 1, {total: 1}, den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly, RationalFunction)):
            return rf_equal(self, self._coerce(other))
        return NotImplemented

    __hash__ = None

    def substitute(self, values: Sequence[Scalar]) -> Fraction:
        """Evaluate at a numeric point; vanishing denominators are rejected."""
        out = self.const
        for p, k in self.den.items():
            v = p.evaluate(values)
            if v == 0:
                raise ZeroDivisionError(f"denominator factor {p.format()} vanishes at {list(values)}")
            out /= v**k
        for p, k in self.num.items():
            out *= p.evaluate(values) ** k
        return out

    def permute(self, perm: Sequence[int]) -> RationalFunction:
        return RationalFunction(
            self.nvars,
            self.const,
            {p.permute(perm): k for p, k in self.num.items()},
            {p.permute(perm): k for p, k in self.den.items()},
        )

    def homogeneous_degree(self) -> int | None:
        """Total degree if every factor is homogeneous, else ``None``."""
        if self.const == 0:
            return None
        deg = 0
        for src, sign in ((self.num, 1), (self.den, -1)):
            for p, k in src.items():
                if not p.is_homogeneous():
                    return None
                deg += sign * k * p.degree()
        return deg

    def is_constant(self) -> bool:
        if self.const == 0 or (not self.num and not self.den):
            return True
        return rf_equal(self, RationalFunction(self.nvars, self.const))

    def constant_value(self) -> Fraction:
        if not self.num and not self.den:
            return self.const
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.const

    def factor_count(self) -> int:
        return sum(self.num.values()) + sum(self.den.values())

    def format(self) -> str:
        def prod(fs):
            return "*".join(
                f"({p.format()})" + (f"^{k}" if k > 1 else "") for p, k in sorted(fs.items(), key=lambda t: t[0].format())
            )

        s = str(self.const)
        if self.num:
            s += "*" + prod(self.num)
        if self.den:
            s += "/(" + prod(self.den) + ")"
        return s

    def __repr__(self):
        return f"RationalFunction({self.format()})"


def rf_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """Decide ``f == g`` by cross-multiplying expanded numerators and denominators."""
    if f.const == 0 or g.const == 0:
        return f.const == g.const
    # shared denominator factors drop out of the comparison
    common = Counter(f.den) & Counter(g.den)
    fd = Counter(f.den)
    fd.subtract(common)
    gd = Counter(g.den)
    gd.subtract(common)
    lhs = _expand(f.num, f.nvars) * _expand(+gd, f.nvars) * f.const
    rhs = _expand(g.num, g.nvars) * _expand(+fd, g.nvars) * g.const
    return lhs == rhs


def rf_arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    """Apply ``op`` (one of ``+ - * /``) to two rational functions."""
    if op == "+":
        return f + g
    if op in ("-", "−"):
        return f - g
    if op in ("*", "×"):
        return f * g
    if op in ("/", "÷"):
        if g.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return f / g
    raise ValueError(f"unknown operator {op!r}")


def product(items: Iterable[RationalFunction], nvars: int) -> RationalFunction:
    out = RationalFunction(nvars, 1)
    for it in items:
        out = out * it
    return out
