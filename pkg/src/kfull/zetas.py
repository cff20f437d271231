"""Riemann zeta and prime zeta evaluation with rigorous remainders.

zeta(s) uses Euler-Maclaurin summation: for real s > 1 the remainder after
the Bernoulli term of order 2J is bounded in absolute value by the first
omitted term, which becomes the reported radius.  N and J adapt until the
radius meets the requested precision.

prime_zeta(s) = sum over primes p of p^(-s) is computed from the Moebius
cascade  sum_{n>=1} mu(n)/n * log zeta(n s),  truncated where the tail
bound  sum_{n>N} 3*2^(-ns)/n  (valid since log zeta(x) <= zeta(x) - 1
<= 3*2^(-x) for x >= 2) drops below the target.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from mpmath import bernfrac, mp, mpf

from .arith import mobius_sieve
from .bounded import ErrorBoundedReal

_MAX_EM_DOUBLINGS = 24


@lru_cache(maxsize=None)
def _bern(n: int) -> Fraction:
    p, q = bernfrac(n)
    return Fraction(int(p), int(q))


def _to_mpf(s) -> mpf:
    if isinstance(s, Fraction):
        return mpf(s.numerator) / s.denominator
    return mpf(s)


@lru_cache(maxsize=4096)
def zeta(s, digits: int = 15) -> ErrorBoundedReal:
    """Riemann zeta for real s > 1 with radius <= 10^(-digits) * value.

    Memoized; results are pure functions of (s, digits), so cache hits can
    never change a returned value.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(digits + 12):
        sm = _to_mpf(s)
        if not sm > 1:
            raise ValueError(f"zeta requires s > 1, got {s}")
        target = mpf(10) ** (-digits)  # relative; value is > 1 so abs works too
        n_terms = max(8, int(mp.dps * 1.2))
        for _ in range(_MAX_EM_DOUBLINGS):
            out = _zeta_em(sm, n_terms, target)
            if out is not None:
                return out
            n_terms *= 2
    raise ArithmeticError("Euler-Maclaurin failed to converge")  # unreachable


def _zeta_em(s: mpf, N: int, target: mpf):
    """One Euler-Maclaurin attempt; None when the terms stall above target."""
    acc = mpf(0)
    for n in range(1, N):
        acc += mpf(n) ** (-s)
    Npow = mpf(N) ** (-s)
    acc += Npow / 2 + Npow * N / (s - 1)
    # correction terms T_j = B_2j/(2j)! * N^(1-s-2j) * prod_{i=0}^{2j-2}(s+i)
    rise = s  # running product (s)(s+1)...(s+2j-2)
    prev = mp.inf
    j = 1
    while True:
        b = _bern(2 * j)
        coeff = mpf(b.numerator) / b.denominator / mp.factorial(2 * j)
        term = coeff * rise * (mpf(N) ** (1 - s - 2 * j))
        at = abs(term)
        if at >= prev:
            return None  # asymptotic series turned; need larger N
        acc += term
        # remainder after the 2j-term is bounded by the first omitted term
        b2 = _bern(2 * j + 2)
        rise_next = rise * (s + 2 * j - 1) * (s + 2 * j)
        bound = (
            abs(mpf(b2.numerator)) / b2.denominator / mp.factorial(2 * j + 2)
            * rise_next
            * (mpf(N) ** (1 - s - 2 * j - 2))
        )
        if bound < target * acc:
            # ~2 roundings per partial-sum term (power, add) plus the
            # correction-term arithmetic
            slop = abs(acc) * mp.eps * (2 * N + 8 * j + 16)
            return ErrorBoundedReal(acc, bound + slop)
        prev = at
        rise = rise_next
        j += 1


@lru_cache(maxsize=4096)
def prime_zeta(s, digits: int = 15) -> ErrorBoundedReal:
    """Sum of p^(-s) over primes, for real s > 1.  Memoized like zeta."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(digits + 12):
        sm = _to_mpf(s)
        if not sm > 1:
            raise ValueError(f"prime_zeta requires s > 1, got {s}")
        target = mpf(10) ** (-digits - 2)
        # choose n_max from the tail bound 3*2^(-(n+1)s)/(n+1)/(1-2^(-s))
        ln2 = mp.log(2)
        n_max = 1
        while True:
            tail = 3 * mp.exp(-(n_max + 1) * sm * ln2) / ((n_max + 1) * (1 - mpf(2) ** (-sm)))
            if tail < target or n_max > 4 * mp.dps:
                break
            n_max += 1
        mu = mobius_sieve(n_max)
        acc = ErrorBoundedReal.exact(0)
        for n in range(1, n_max + 1):
            if mu[n] == 0:
                continue
            z = zeta(n * sm, digits + 4)
            acc = acc + z.log() * (mpf(mu[n]) / n)
        return acc.widened(tail)


def prime_zeta_tail(s, p0: int, digits: int = 15) -> ErrorBoundedReal:
    """Sum of p^(-s) over primes p > p0 (cancellation tracked in the radius)."""
    with mp.workdps(digits + 12):
        sm = _to_mpf(s)
        acc = prime_zeta(sm, digits)
        for p in primes_upto(p0):
            t = mpf(p) ** (-sm)
            acc = acc - ErrorBoundedReal(t, t * mp.eps * 4)
        return acc


def primes_upto(limit: int) -> tuple:
    from .arith import _prime_list

    return _prime_list(limit) if limit >= 2 else ()
