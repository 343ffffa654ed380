#!/usr/bin/env python3
"""Tour of the exact valuation primitives.

Everything here is big-integer arithmetic; no value is ever approximated.
"""

from fractions import Fraction

from stirval import (
    digit_sum,
    kummer_binomial_val,
    legendre_factorial_val,
    nu_int,
    nu_rat,
    power_lemma_report,
)


def main():
    print("== basic valuations ==")
    for n in (12, 40, 1024, 0):
        print(f"  nu_2({n}) = {nu_int(2, n)}")
    print(f"  nu_3(45) = {nu_int(3, 45)}")
    print(f"  nu_2(3/8) = {nu_rat(2, Fraction(3, 8))}   (negative on rationals)")

    print("\n== factorials without factorials ==")
    print("  nu_2(m!) = m - s_2(m), so the error term of the linear growth")
    print("  is exactly the binary digit sum:")
    for m in (10, 100, 1000):
        v = legendre_factorial_val(2, m)
        print(f"  m={m:5d}: nu_2(m!) = {v:5d}, m - nu_2(m!) = {m - v} = s_2(m) = {digit_sum(2, m)}")

    print("\n== binomial coefficients count binary carries ==")
    for m, k in ((4, 2), (10, 5), (64, 32)):
        print(f"  nu_2(C({m},{k})) = {kummer_binomial_val(m, k)}")

    print("\n== power-difference identities ==")
    report = power_lemma_report(12)
    print(f"  {report.name}: {report.status} ({report.checked} instances)")
    print("  e.g. nu_2(5^(2^m) - 3^(2^m)) = m + 3:")
    for m in (1, 2, 3):
        print(f"    m={m}: nu_2 = {nu_int(2, 5**(2**m) - 3**(2**m))}")


if __name__ == "__main__":
    main()
