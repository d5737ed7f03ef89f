"""Walk through the chamber structure for a small curve class.

For each chamber of (g, m, d) = (1, 1, 3) we count how many combinatorial
quotients are stable there, then follow one quotient with a rational tail as
epsilon decreases and watch the tail turn into a torsion point.

Run with ``python demos/chambers.py``.
"""

from __future__ import annotations

from fractions import Fraction

from epsquot import CombQuotient, Component, INF, contract, enumerate_quotients, is_epsilon_stable, walls


def main():
    g, m, d = 1, 1, 3
    ws = walls(g, m, d)
    print(f"walls for (g, m, d) = {(g, m, d)}: {ws.format()}")
    quotients = enumerate_quotients(g, m, d, 3)
    print(f"{len(quotients)} combinatorial types with at most three components\n")

    for lower, upper in ws.chambers():
        sample = lower + 1 if upper == INF else upper
        stable = sum(1 for q in quotients if is_epsilon_stable(q, sample))
        shown = f"({lower}, inf)" if upper == INF else f"({lower}, {upper}]"
        print(f"  chamber {shown}: {stable} stable types")

    # a genus-1 body carrying the marking, with a degree-2 rational tail
    q = CombQuotient((Component(1, (1,), 1), Component(0, (), 2)), ((0, 1),))
    print("\nfollowing a degree-2 rational tail down through the walls:")
    eps = Fraction(2)
    for target in (Fraction(1), Fraction(1, 2), Fraction(1, 3)):
        c = contract(q, eps, target)
        parts = ", ".join(f"genus {v.genus} degree {v.degree} torsion {list(v.torsion)}" for v in c.vertices)
        print(f"  eps = {target}: {parts}")
    print(f"  the original is {'still' if is_epsilon_stable(q, Fraction(1, 2)) else 'no longer'} stable at 1/2")


if __name__ == "__main__":
    main()
