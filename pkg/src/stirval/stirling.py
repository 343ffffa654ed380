"""Stirling numbers of the second kind, computed two independent ways.

* :class:`StirlingTriangle` is the exact oracle: big-integer dynamic
  programming on the recurrence S(n,k) = S(n-1,k-1) + k*S(n-1,k).
* :class:`ModStirlingEngine` evaluates T = k! * S(n,k) modulo 2**M through
  the alternating binomial sum and extracts nu_2(S(n,k)) from the residue.

The two routes are kept deliberately separate so each can certify the
other; the test suite checks them against each other on a full grid.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterator

from .padic import INFINITE, Valuation, digit_sum, nu_int
from .reports import ConjectureReport

DEFAULT_ORACLE_BOUND = 2000
DEFAULT_M_START = 64
DEFAULT_M_MAX = 1 << 16


class PrecisionExceeded(Exception):
    """The residue stayed 0 mod 2**m_max, so the valuation is undecided."""

    def __init__(self, n: int, k: int, m_max: int):
        super().__init__(f"k!*S({n},{k}) == 0 mod 2^{m_max}; valuation undecided")
        self.n = n
        self.k = k
        self.m_max = m_max


class StirlingTriangle:
    """Exact S(n,k) table built row by row from the recurrence.

    Rows are grown lazily up to ``n_bound`` and never mutated afterwards,
    so concurrent reads of already-built rows are safe.
    """

    def __init__(self, n_bound: int = DEFAULT_ORACLE_BOUND):
        self.n_bound = n_bound
        self._rows: list[list[int]] = [[1]]

    def value(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("n and k must be nonnegative")
        if n > self.n_bound:
            raise ValueError(f"n={n} exceeds oracle bound {self.n_bound}")
        if k > n:
            return 0
        self._grow(n)
        return self._rows[n][k]

    def _grow(self, n: int) -> None:
        while len(self._rows) <= n:
            prev = self._rows[-1]
            i = len(self._rows)
            row = [0] * (i + 1)
            for k in range(1, i):
                row[k] = prev[k - 1] + k * prev[k]
            row[i] = 1
            self._rows.append(row)


_oracle = StirlingTriangle()


def stirling_exact(n: int, k: int) -> int:
    """Exact S(n,k) from the shared recurrence oracle (n <= 2000)."""
    return _oracle.value(n, k)


def stirling_closed_small(n: int, k: int) -> int:
    """Closed-form S(n,k) for 1 <= k <= 5, n >= k.

    The power sums below are exactly divisible by (k-1)!; the division is
    checked rather than assumed.
    """
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    if k == 1:
        return 1
    if k == 2:
        return (1 << (n - 1)) - 1
    if k == 3:
        num, den = 3 ** (n - 1) - (1 << n) + 1, 2
    elif k == 4:
        num, den = 4 ** (n - 1) + 3 * (1 << (n - 1)) - 3**n - 1, 6
    elif k == 5:
        num, den = 5 ** (n - 1) - 4**n + 2 * 3**n - (1 << (n + 1)) + 1, 24
    else:
        raise ValueError(f"closed forms cover k in 1..5, got k={k}")
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"closed form for S({n},{k}) not integral")
    return q


def val2_closed_small(n: int, k: int) -> int:
    """nu_2(S(n,k)) for 1 <= k <= 4 directly from the parity of n."""
    if not 1 <= k <= 4:
        raise ValueError(f"parity formulas cover k in 1..4, got k={k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    if k <= 2:
        return 0
    if k == 3:
        return 1 if n % 2 == 0 else 0
    return 1 if n % 2 == 1 else 0


class ModStirlingEngine:
    """Evaluates k! * S(n,k) mod 2**M and extracts 2-adic valuations.

    The alternating sum sum_{i=0}^{k-1} (-1)^i C(k,i) (k-i)^n is reduced
    mod 2**M with square-and-multiply exponentiation, so a single call
    costs O(k log n) word operations.  If the residue is nonzero then
    nu_2 of the full integer equals nu_2 of the residue, which makes the
    extraction sound at any precision.

    Precision is adaptive: start at m_start bits and double while the
    residue vanishes, up to m_max.  Rounds with M <= nu_2(k!) are skipped
    because Legendre's formula makes those residues identically zero.
    """

    def __init__(self, k: int, m_start: int = DEFAULT_M_START, m_max: int | None = None):
        if k < 1:
            raise ValueError("engine order k must be >= 1")
        self.k = k
        self.m_start = m_start
        self.m_max = DEFAULT_M_MAX if m_max is None else m_max
        self.fact_val = k - digit_sum(2, k)  # nu_2(k!)
        self._signed_combs = tuple(
            (-math.comb(k, i) if i & 1 else math.comb(k, i)) for i in range(k)
        )
        self._bases = tuple(k - i for i in range(k))

    def ksf_mod(self, n: int, M: int) -> int:
        """Residue of k! * S(n,k) modulo 2**M, for n >= 1."""
        if n < 1:
            raise ValueError("ksf_mod requires n >= 1")
        if not 1 <= M <= self.m_max:
            raise ValueError(f"need 1 <= M <= {self.m_max}, got M={M}")
        mod = 1 << M
        total = 0
        for c, b in zip(self._signed_combs, self._bases):
            total += c * pow(b, n, mod)
        return total % mod

    def _extract(self, residue: int) -> Valuation:
        return nu_int(2, residue) - self.fact_val

    def val2(self, n: int) -> Valuation:
        """nu_2(S(n,k)); INFINITE when n < k (there S(n,k) = 0).

        Raises PrecisionExceeded if the residue is still zero at m_max.
        """
        if n < self.k:
            return INFINITE
        M = self.m_start
        while M <= self.m_max:
            if M > self.fact_val:
                r = self.ksf_mod(n, M)
                if r:
                    return self._extract(r)
            M *= 2
        raise PrecisionExceeded(n, self.k, self.m_max)

    def val2_range(self, start: int, stop: int) -> Iterator[tuple[int, Valuation]]:
        """Yield (n, nu_2(S(n,k))) for start <= n < stop.

        Batch variant for scans over n: the powers (k-i)^n are updated by
        one multiplication per step instead of a fresh exponentiation.
        Results are identical to per-n val2 calls.
        """
        if start < 1:
            raise ValueError("val2_range requires start >= 1")
        M = self.m_start
        while M <= self.fact_val + 32 and M < self.m_max:
            M *= 2
        if M > self.m_max:
            # ceiling below the Legendre floor: defer to the adaptive path
            for n in range(start, stop):
                yield n, self.val2(n)
            return
        mod = 1 << M
        powers = [pow(b, start, mod) for b in self._bases]
        combs = self._signed_combs
        bases = self._bases
        for n in range(start, stop):
            if n >= self.k:
                r = sum(c * p for c, p in zip(combs, powers)) % mod
                # headroom exhausted: fall back to the fully adaptive path
                yield n, (self._extract(r) if r else self.val2(n))
            else:
                yield n, INFINITE
            for i, b in enumerate(bases):
                powers[i] = powers[i] * b % mod


_engines: dict[int, ModStirlingEngine] = {}


def get_engine(k: int) -> ModStirlingEngine:
    """Shared default-precision engine for order k (engines are stateless)."""
    engine = _engines.get(k)
    if engine is None:
        engine = _engines[k] = ModStirlingEngine(k)
    return engine


def set_default_m_max(m_max: int) -> None:
    """Override the precision ceiling for the shared engines (CLI env hook)."""
    global DEFAULT_M_MAX
    if m_max < DEFAULT_M_START:
        raise ValueError(f"m_max must be >= {DEFAULT_M_START}")
    DEFAULT_M_MAX = m_max
    _engines.clear()
    val2_stirling.cache_clear()


def ksf_mod(n: int, k: int, M: int) -> int:
    """Residue of k! * S(n,k) modulo 2**M."""
    return get_engine(k).ksf_mod(n, M)


@lru_cache(maxsize=None)
def val2_stirling(n: int, k: int) -> Valuation:
    """nu_2(S(n,k)) via the adaptive modular engine; INFINITE for n < k."""
    return get_engine(k).val2(n)


def de_wannemacker_gap(n: int, k: int) -> int:
    """Slack in De Wannemacker's inequality: nu_2(S(n,k)) - s_2(k) + s_2(n).

    Nonnegative for all 1 <= k <= n; the test suite enforces this on a
    full grid.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    v = val2_stirling(n, k)
    if v is INFINITE:
        raise ValueError(f"S({n},{k}) = 0 has no finite gap")
    return v - digit_sum(2, k) + digit_sum(2, n)


def special_values_check(q_max: int, k_max: int) -> ConjectureReport:
    """Verify four exact valuation families at indices near powers of two.

    Over 1 <= q <= q_max and 1 <= k <= min(2**q, k_max):

      A. nu_2(S(2^q, k))      == s_2(k) - 1
      B. nu_2(S(2^q + 1, k+1)) == s_2(k) - 1
      C. nu_2(S(2^q + 2, k+2)) == s_2(k) - 1    when k is even,
                                == s_2(k+1) - 1 when k == 3 (mod 4)
      D. nu_2(k! * S(a*2^q, k)) == k - 1        for odd a, q >= k - 2
         (family D scans a in {1,3,5,7} with a*2^q >= k)
    """
    if q_max < 3:
        raise ValueError("q_max must be >= 3")
    report = ConjectureReport(
        "special values near powers of two", params={"q_max": q_max, "k_max": k_max}
    )

    def expect(family: str, n: int, k: int, got: Valuation, want: int) -> None:
        report.record(
            got == want,
            {"family": family, "n": n, "k": k, "computed": got, "expected": want},
        )

    for q in range(1, q_max + 1):
        n = 1 << q
        for k in range(1, min(n, k_max) + 1):
            s = digit_sum(2, k)
            expect("A", n, k, val2_stirling(n, k), s - 1)
            expect("B", n + 1, k + 1, val2_stirling(n + 1, k + 1), s - 1)
            if k % 2 == 0:
                expect("C", n + 2, k + 2, val2_stirling(n + 2, k + 2), s - 1)
            elif (k + 1) % 4 == 0:
                expect("C", n + 2, k + 2, val2_stirling(n + 2, k + 2), digit_sum(2, k + 1) - 1)
    for k in range(1, k_max + 1):
        for q in range(max(k - 2, 0), q_max + 1):
            for a in (1, 3, 5, 7):
                n = a << q
                if n < k or n > (1 << q_max) * 7:
                    continue
                v = val2_stirling(n, k)
                got = v if v is INFINITE else v + k - digit_sum(2, k)
                expect("D", n, k, got, k - 1)
    return report


def identity_battery(n_max: int = 300, q_max: int = 10, k_max: int = 64) -> ConjectureReport:
    """Bundle of elementary identity checks over a full grid.

    * De Wannemacker's inequality nu_2(S(n,k)) >= s_2(k) - s_2(n) for all
      1 <= k <= n <= n_max,
    * the closed forms for k <= 5 against the exact triangle
      (n <= min(n_max, 500)),
    * the parity valuation formulas for k <= 4 against the engine,
    * the special-value families near powers of two.
    """
    report = ConjectureReport(
        "identity battery", params={"n_max": n_max, "q_max": q_max, "k_max": k_max}
    )
    for k in range(1, n_max + 1):
        s_k = digit_sum(2, k)
        for n, v in get_engine(k).val2_range(k, n_max + 1):
            gap = v - s_k + digit_sum(2, n)
            report.record(
                gap >= 0,
                None if gap >= 0 else {"identity": "inequality gap", "n": n, "k": k, "gap": gap},
            )
    closed_bound = min(n_max, 500)
    for k in range(1, 6):
        for n in range(k, closed_bound + 1):
            ok = stirling_closed_small(n, k) == stirling_exact(n, k)
            report.record(
                ok, None if ok else {"identity": "closed form", "n": n, "k": k}
            )
    for k in range(1, 5):
        for n, v in get_engine(k).val2_range(k, n_max + 1):
            ok = val2_closed_small(n, k) == v
            report.record(
                ok, None if ok else {"identity": "parity valuation", "n": n, "k": k}
            )
    report.merge_child(special_values_check(q_max, k_max), "special values")
    return report
