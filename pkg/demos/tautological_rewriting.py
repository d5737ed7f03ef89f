"""Canonical forms and pullbacks of tautological classes on weighted spaces.

Diagonal classes ``D(J)`` multiply by merging overlapping index sets, and
cotangent classes on a diagonal are collected onto its smallest index.  A
pullback along the contraction that lowers the light weight subtracts the
boundary classes ``Delta(J)`` that appear in between.

Run with ``python demos/tautological_rewriting.py``.
"""

from __future__ import annotations

from fractions import Fraction

from epsquot import canonical_form, parse_expr, pullback_contraction


def show(label, e):
    print(f"  {label:<34} {e.format()}")


def main():
    print("canonical forms:")
    for text in ("D(1,2)*D(1,2)", "D(1,2)*D(2,3)", "psih(3)*psih(2)*D(2,3)", "D(1,2,3) + D(1,2)"):
        show(text, canonical_form(parse_expr(text)))
    show("D(1,2,3) + D(1,2) at eps = 1/2", canonical_form(parse_expr("D(1,2,3) + D(1,2)"), Fraction(1, 2)))

    print("\npullbacks with three light points:")
    e = parse_expr("psih(1)")
    show("psih(1) from 1/2 to 1", pullback_contraction(e, 1, Fraction(1, 2), d=3))
    show("psih(1) from 1/3 to 1", pullback_contraction(e, 1, Fraction(1, 3), d=3))

    e = parse_expr("psih(1)^2")
    direct = pullback_contraction(e, 1, Fraction(1, 3), d=3)
    step = pullback_contraction(pullback_contraction(e, Fraction(1, 2), Fraction(1, 3), d=3), 1, Fraction(1, 2), d=3)
    show("psih(1)^2 directly", direct)
    show("psih(1)^2 one wall at a time", step)
    print(f"  agree: {direct == step}")


if __name__ == "__main__":
    main()
