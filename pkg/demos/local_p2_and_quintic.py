"""Two classical checks on compact and local targets.

Local P^2 in genus 1, degree 1 takes one value for eps > 1, computed by
localization, and another for eps <= 1, where the moduli space is a product
of the 1-pointed genus-1 moduli with P^2.  The quintic count of lines comes
out of the same localization code with a positive twist.

Run with ``python demos/local_p2_and_quintic.py``.
"""

from __future__ import annotations

from fractions import Fraction

from epsquot import enumerate_fixed_graphs, local_p2_11, m11_constants, quintic_g0


def main():
    lam1, psi1 = m11_constants()
    print(f"integrals over the 1-pointed genus-1 moduli: lambda_1 = {lam1}, psi_1 = {psi1}")
    for eps in (Fraction(1, 10), Fraction(1), Fraction(3, 2), Fraction(10)):
        print(f"  local P^2, g=1 d=1, eps = {eps}: {local_p2_11(eps)}")

    graphs = enumerate_fixed_graphs(0, 0, 1, 1, 5, 3)
    print(f"\nquintic: {len(graphs)} fixed lines in P^4 contribute to the degree-1 sum")
    print(f"  eps = 3: {quintic_g0(1, 3)}")
    print(f"  eps = 1: {quintic_g0(1, 1)} (the moduli space is empty)")


if __name__ == "__main__":
    main()
