#!/usr/bin/env python3
"""The empirical approximation tower for nu_2(S(n,5)).

f1 predicts the valuation from simple parity indicators and gets every
index right except an explicit exception set I1; f2 predicts the error on
I1 except on a second set I2; f3 is a further refinement whose quantifier
("most values") has no stated exception set, so the package prints its
agreement census instead of a verdict.
"""

from stirval import (
    approx_report,
    err1,
    f1,
    nu_int,
    val2_stirling,
    x1,
    x2,
)


def main():
    print("== the first-stage predictor ==")
    for m in (28, 31, 100, 156):
        print(
            f"  m={m:4d}: nu_2(f1) = {nu_int(2, f1(m))}, "
            f"nu_2(S(m,5)) = {val2_stirling(m, 5)}"
        )
    print(f"  first five exceptions x1(0..4): {[x1(m) for m in range(5)]}")
    print(f"  error at the first exception: err1(156) = {err1(156)}")

    print("\n== full check to 2000 ==")
    report = approx_report(2000)
    stage1 = report.details["stage1"]
    print(f"  disagreement set : {stage1['disagreements']}")
    print(f"  I1 in range      : {stage1['expected_I1']}")
    print(f"  equal: {stage1['disagreements'] == stage1['expected_I1']}")

    print("\n== second stage: f2 predicts err1 on I1 ==")
    for entry in report.details["stage2"]:
        print(
            f"  m={entry['m']:2d} x1={entry['x1']:4d}: err1 = {entry['err1']:3d}, "
            f"predicted {entry['predicted']:3d}"
        )

    print("\n== third stage census (no verdict by design) ==")
    st3 = report.details["stage3"]
    print(f"  x2 points in range: {[x2(m) for m in range(st3['total'])]}")
    print(f"  agreements: {st3['agreements']}/{st3['total']}")
    for entry in st3["census"]:
        print(
            f"  m={entry['m']:2d} x2={entry['x2']:4d}: err2 = {entry['err2']}, "
            f"predicted {entry['predicted']} ({'agree' if entry['agrees'] else 'differ'})"
        )


if __name__ == "__main__":
    main()
