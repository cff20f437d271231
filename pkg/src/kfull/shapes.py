"""Root shapes of proper k-full integers and their Dirichlet power sums.

Every proper k-full integer is a^k * lam^k for a unique integer a >= 1 and
a unique real lam = (b_1^(k+1) * ... * b_(k-1)^(2k-1))^(1/k) > 2 drawn from
the squarefree pairwise-coprime tuples b with product >= 2.  The element is
identified by its integer tuple b (never by a floating approximation); the
integer radicand lam^k orders the set, so enumeration and sorting are exact.

The power sums  P_k(m) = sum over shapes of lam^(-m)  are evaluated by two
independent routes:

* power_sum_direct: truncated summation over a coordinate box b_j <= B,
  with the omitted mass bounded by integral comparison (tail_bound).
  Converges like B^(-m/k) at best, so it serves as the oracle route.

* power_sum_euler: since each prime divides at most one b_j, the sum over
  all shape tuples factors over primes,

      1 + P_k(m) = prod_p (1 + sum_{j=1..k-1} p^(-m(k+j)/k)),

  evaluated with small primes multiplied in exactly (log1p-accumulated to
  keep relative precision when the factors are 1 + tiny) and the remaining
  primes handled through the formal logarithm of the factor polynomial,
  whose powers reduce to prime-zeta tails.  Truncations carry proven
  bounds; this is the precision route.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import fsum, gcd

import numpy as np
from mpmath import mp, mpf

from .arith import is_squarefree, mobius_sieve, shape_tuples, squarefree_sieve
from .bounded import ErrorBoundedReal
from .zetas import prime_zeta_tail, primes_upto, zeta

DEFAULT_PRIME_CUTOFF = 100
DEFAULT_ELEMENT_CAP = 2_000_000
_DIRECT_WORK_CAP = 50_000_000


@dataclass(frozen=True)
class LambdaElement:
    """One shape, identified by its exact integer tuple b."""

    k: int
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if len(self.b) != self.k - 1 or any(x < 1 for x in self.b):
            raise ValueError("b must be a tuple of k-1 positive integers")
        prod = 1
        for x in self.b:
            prod *= x
        if prod < 2 or not is_squarefree(prod):
            raise ValueError("b-product must be squarefree and >= 2")

    def radicand(self) -> int:
        """The exact integer lam^k."""
        m = 1
        for j, bj in enumerate(self.b, start=1):
            m *= bj ** (self.k + j)
        return m


def lambda_min_radicand(k: int) -> int:
    """Radicand of the smallest shape, b = (2, 1, ..., 1), i.e. 2^(k+1)."""
    return 2 ** (k + 1)


def lambda_value(e: LambdaElement, digits: int = 15) -> ErrorBoundedReal:
    """lam as an enclosure with relative radius <= 10^(-digits)."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    with mp.workdps(digits + 8):
        v = mp.root(mpf(e.radicand()), e.k)
        return ErrorBoundedReal(v, v * mp.eps * 8)


def box_elements(k: int, B: int) -> list:
    """All shapes with every coordinate b_j <= B, ascending by radicand.
    The complement of this box is exactly what tail_bound(k, m, B) covers."""
    if k < 2 or B < 1:
        raise ValueError("need k >= 2, B >= 1")
    sf = squarefree_sieve(B)
    out = []

    def rec(j, m_so_far, prod_so_far, prefix):
        if j == k:
            if prod_so_far >= 2:
                out.append((m_so_far, tuple(prefix)))
            return
        for bj in range(1, B + 1):
            if bj > 1 and (not sf[bj] or gcd(bj, prod_so_far) > 1):
                continue
            prefix.append(bj)
            rec(j + 1, m_so_far * bj ** (k + j), prod_so_far * bj, prefix)
            prefix.pop()

    rec(1, 1, 1, [])
    out.sort()
    return [LambdaElement(k, b) for _, b in out]


def enumerate_lambda(k: int, bound, cap: int = DEFAULT_ELEMENT_CAP) -> list:
    """All shapes with lam <= bound, ascending.  Exact boundary comparison:
    lam <= bound iff radicand <= bound^k, taken over the rationals."""
    if k < 2:
        raise ValueError("k must be >= 2")
    limit = Fraction(bound) ** k
    if limit < lambda_min_radicand(k):
        return []
    X = int(limit)  # floor; radicands are integers so the comparison is exact
    shapes = [(M, b) for M, b in shape_tuples(k, X) if M >= 2]
    if len(shapes) > cap:
        raise ValueError(f"element count {len(shapes)} exceeds cap {cap}")
    return [LambdaElement(k, b) for M, b in shapes]


@dataclass(frozen=True)
class PowerSums:
    """P_k(1), ..., P_k(m_max) as enclosures."""

    k: int
    values: tuple

    @property
    def m_max(self) -> int:
        return len(self.values)

    def p(self, m: int) -> ErrorBoundedReal:
        if not 1 <= m <= self.m_max:
            raise ValueError(f"P_{self.k}({m}) not computed (have 1..{self.m_max})")
        return self.values[m - 1]


def tail_bound(k: int, m: int, B: int):
    """Proven upper bound (mpf) on the shape sum of lam^(-m) omitted by a
    coordinate box b_j <= B.

    Union bound over which coordinate exceeds B; each case is bounded by
    dropping the squarefree-coprimality constraint, giving a tail
    sum_{b>B} b^(-s) <= B^(1-s)/(s-1) times full zeta factors for the other
    coordinates.  Monotone nonincreasing in B.
    """
    if k < 2 or m < 1 or B < 2:
        raise ValueError("need k >= 2, m >= 1, B >= 2")
    with mp.workdps(30):
        total = mpf(0)
        for jstar in range(1, k):
            s_star = mpf(m * (k + jstar)) / k
            piece = mpf(B) ** (1 - s_star) / (s_star - 1)
            for j in range(1, k):
                if j != jstar:
                    piece *= zeta(Fraction(m * (k + j), k), 20).hi()
            total += piece
        return total


def power_sum_direct(k: int, m: int, B: int) -> ErrorBoundedReal:
    """Truncated P_k(m) over the coordinate box b_j <= B, plus a radius of
    tail_bound(k, m, B) and a float-accumulation envelope."""
    if k < 2 or m < 1 or B < 2:
        raise ValueError("need k >= 2, m >= 1, B >= 2")
    if k == 2:
        if B > _DIRECT_WORK_CAP:
            raise ValueError("box too large")
        sf = squarefree_sieve(B)
        s = 1.5 * m
        total = fsum(b ** (-s) for b in range(2, B + 1) if sf[b])
        work = B
    elif k == 3:
        if B * 15 > _DIRECT_WORK_CAP:
            raise ValueError("box too large")
        total = _box_sum_k3(m, B)
        work = int(B * (np.log(B) + 1))
    else:
        if B ** (k - 1) > 10**7:
            raise ValueError("box too large for exhaustive tuple enumeration")
        total = _box_sum_generic(k, m, B)
        work = B ** (k - 1)
    with mp.workdps(30):
        slop = mpf(work + 16) * mpf(2.3e-16) * 8
        return ErrorBoundedReal(mpf(total), tail_bound(k, m, B) + slop)


def _box_sum_k3(m: int, B: int) -> float:
    # pairwise coprimality resolved by the gcd-Moebius identity:
    # sum_{gcd(b1,b2)=1} f(b1) g(b2) = sum_d mu(d) (sum_{d|b1} f)(sum_{d|b2} g)
    mu = mobius_sieve(B)
    b = np.arange(B + 1, dtype=np.float64)
    b[0] = 1.0
    sf = np.array([x != 0 for x in mu], dtype=bool)
    w1 = np.where(sf, b ** (-4.0 * m / 3.0), 0.0)
    w2 = np.where(sf, b ** (-5.0 * m / 3.0), 0.0)
    parts = []
    for d in range(1, B + 1):
        if mu[d] == 0:
            continue
        parts.append(mu[d] * float(w1[d::d].sum()) * float(w2[d::d].sum()))
    return fsum(parts) - 1.0  # remove the (1,1) tuple


def _box_sum_generic(k: int, m: int, B: int) -> float:
    sf = squarefree_sieve(B)
    terms = []

    def rec(j, prod_so_far, weight):
        if j == k:
            if prod_so_far > 1:
                terms.append(weight)
            return
        s = m * (k + j) / k
        for bj in range(1, B + 1):
            if bj > 1 and (not sf[bj] or gcd(bj, prod_so_far) > 1):
                continue
            rec(j + 1, prod_so_far * bj, weight * bj ** (-s))

    rec(1, 1, 1.0)
    return fsum(terms)


@lru_cache(maxsize=64)
def _log_coeffs(k: int, t_max: int) -> tuple:
    """Exact coefficients (c_t, h_t) for t = 0..t_max of log(1 + g) and of
    -log(1 - g), where g(x) = x^(k+1) + ... + x^(2k-1).  h dominates |c|."""
    support = set(range(k + 1, 2 * k))
    c = [Fraction(0)] * (t_max + 1)
    h = [Fraction(0)] * (t_max + 1)
    for t in range(1, t_max + 1):
        at = Fraction(1 if t in support else 0)
        sc = at
        sh = at
        for u in range(1, t):
            if (t - u) in support:
                sc -= Fraction(u, t) * c[u]
                sh += Fraction(u, t) * h[u]
        c[t] = sc
        h[t] = sh
    return tuple(c), tuple(h)


def _next_prime_after(n: int) -> int:
    from .arith import is_prime

    q = n + 1
    while not is_prime(q):
        q += 1
    return q


@lru_cache(maxsize=None)
def power_sum_euler(k: int, m: int, digits: int = 30,
                    p0: int = DEFAULT_PRIME_CUTOFF) -> ErrorBoundedReal:
    """P_k(m) through the Euler product, radius <= 10^(-digits)."""
    if k < 2 or m < 1:
        raise ValueError("need k >= 2, m >= 1")
    if digits < 1:
        raise ValueError("digits must be >= 1")
    for extra in (0, 10, 25):
        out = _power_sum_euler_once(k, m, digits + extra, p0)
        if out is not None and out.radius <= mpf(10) ** (-digits):
            return out
    raise ArithmeticError(f"could not certify P_{k}({m}) to {digits} digits")


def _power_sum_euler_once(k, m, digits, p0):
    with mp.workdps(digits + 15):
        # raise the exact-product cutoff until the tail factor polynomial is
        # small at the first omitted prime (keeps the log series geometric)
        p0_eff = max(p0, 2)
        while True:
            q = _next_prime_after(p0_eff)
            y = mpf(q) ** (-mpf(m) / k)
            gy = sum(y ** (k + j) for j in range(1, k))
            if gy <= mpf("0.5"):
                break
            p0_eff = q

        L = ErrorBoundedReal.exact(0)
        for p in primes_upto(p0_eff):
            s_p = ErrorBoundedReal.exact(0)
            for j in range(1, k):
                t = mpf(p) ** (-mpf(m * (k + j)) / k)
                s_p = s_p + ErrorBoundedReal(t, t * mp.eps * 4)
            L = L + s_p.log1p()

        # formal-log tail over primes > p0_eff: sum_t c_t * PZT(t m / k)
        target = mpf(10) ** (-(digits + 2))
        t_max = 2 * k + 2
        while True:
            c, h = _log_coeffs(k, t_max)
            # bound on everything past t_max:
            #   sum_{t>t_max} h_t q^{-tm/k} * (1 + q/(s'-1)),  s' = (t_max+1)m/k
            s_prime = mpf(m * (t_max + 1)) / k
            neg_log = -mp.log(1 - gy)
            partial_h = sum(
                mpf(h[t].numerator) / h[t].denominator * y**t
                for t in range(t_max + 1) if h[t]
            )
            tail = (neg_log - partial_h) * (1 + q / (s_prime - 1)) * mpf("1.000001")
            if tail < target or t_max > 600:
                break
            t_max += k + 1
        if tail >= target:
            return None
        for t in range(k + 1, t_max + 1):
            if not c[t]:
                continue
            pzt = prime_zeta_tail(Fraction(m * t, k), p0_eff, digits + 6)
            L = L + pzt * (mpf(c[t].numerator) / c[t].denominator)
        L = L.widened(tail)
        return L.expm1()


def power_sums(k: int, m_max: int, digits: int = 30,
               p0: int = DEFAULT_PRIME_CUTOFF) -> PowerSums:
    """P_k(1..m_max) through the Euler-product route."""
    return PowerSums(k, tuple(power_sum_euler(k, m, digits, p0) for m in range(1, m_max + 1)))
