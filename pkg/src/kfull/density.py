"""Asymptotic densities with tracked error bounds.

Everything reduces to three layers on top of the power sums P_k(m):

* xi_r, the elementary symmetric functions of the shape reciprocals 1/lam,
  recovered from the power sums by Newton's identities
  (r e_r = sum_{i=1..r} (-1)^(i-1) e_(r-i) p_i);

* the coefficient sequence a_n of the entire function
  F_k(z) = prod (1 + (z-2)/lam) = sum_r xi_r (z-2)^r = sum_n a_n z^n,
  via a_n = sum_{r>=n} C(r,n) (-2)^(r-n) xi_r;

* the densities themselves:
  - cells:      d(A[l,m]) = C(l+m, l) * a_(l+m)                (direct)
                          = sum_n (-1)^n trinom * d_(l+m+n)    (inversion)
                          = sum_n (-2)^n trinom * xi_(l+m+n)   (xi)
  - one-sided:  d_l = sum_n (-1)^n C(l+n, l) xi_(l+n)  (xi_alternating)
                    = sum_m d(A[l,m])                  (row_sum)
  - exclusion sets:  d(B[I,J]) = prod_(U) 1/lam * prod_(not U) (1 - 2/lam)
    with U = I union J, evaluated as C_k rescaled by the finitely many
    excluded factors; C_k = a_0.

All infinite sums are truncated with proven bounds folded into the radius:
xi_r <= P_k(1)^r / r! gives super-exponential decay, and every weighted
tail reduces to a ratio-bounded exponential remainder.  Truncation order
r_max = n + guard (guard defaults to 40) matters for accuracy as well as
cost: past the point where xi_r reaches the working-precision noise floor,
the binomial weights amplify that noise, so deeper sums would be worse,
not better.  The tracked radii account for both effects honestly.

The inversion route consumes one-sided densities that are themselves
produced by the xi route, so it is a consistency check of the published
inversion formula rather than an independent source.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from mpmath import mp, mpf

from .bounded import ErrorBoundedReal
from .shapes import (
    DEFAULT_PRIME_CUTOFF,
    LambdaElement,
    PowerSums,
    lambda_min_radicand,
    lambda_value,
    power_sum_euler,
    power_sums,
)

DEFAULT_DIGITS = 30
DEFAULT_GUARD = 40
DEFAULT_N_MAX = 44


@dataclass(frozen=True)
class XiSequence:
    """Elementary symmetric functions xi_0..xi_r_max of the 1/lam."""

    k: int
    xi: tuple

    @property
    def r_max(self) -> int:
        return len(self.xi) - 1


@dataclass(frozen=True)
class SeriesCoeffs:
    """Power-series coefficients a_0..a_n_max of F_k around 0; a_0 = C_k."""

    k: int
    a: tuple

    @property
    def n_max(self) -> int:
        return len(self.a) - 1


@dataclass(frozen=True)
class SubsetSpec:
    """A finite set of shapes, given by exact tuples."""

    k: int
    elements: tuple

    def __post_init__(self):
        elems = tuple(
            e if isinstance(e, LambdaElement) else LambdaElement(self.k, tuple(e))
            for e in self.elements
        )
        object.__setattr__(self, "elements", elems)
        for e in elems:
            if e.k != self.k:
                raise ValueError("mixed k in subset")
        keys = [e.b for e in elems]
        if len(set(keys)) != len(keys):
            raise ValueError("subset elements must be distinct")

    def key_set(self) -> frozenset:
        return frozenset(e.b for e in self.elements)


@dataclass(frozen=True)
class DensityTable:
    """Symmetric matrix of cell densities, stored as the upper triangle."""

    k: int
    L: int
    method: str
    entries: dict

    def entry(self, l: int, m: int) -> ErrorBoundedReal:
        if l > m:
            l, m = m, l
        return self.entries[(l, m)]

    def cells(self):
        for l in range(self.L + 1):
            for m in range(l, self.L + 1):
                yield (l, m), self.entries[(l, m)]


def xi_from_power_sums(ps: PowerSums, r_max: int) -> XiSequence:
    """Newton's identities; xi_0 = 1 exactly, radii propagated."""
    if r_max < 0:
        raise ValueError("r_max must be >= 0")
    if ps.m_max < r_max:
        raise ValueError(f"need P_k(1..{r_max}), have 1..{ps.m_max}")
    out = [ErrorBoundedReal.exact(1)]
    for r in range(1, r_max + 1):
        acc = ErrorBoundedReal.exact(0)
        for i in range(1, r + 1):
            term = out[r - i] * ps.p(i)
            acc = acc + term if i % 2 == 1 else acc - term
        out.append(acc * (mpf(1) / r))
    return XiSequence(ps.k, tuple(out))


def xi_direct(elements, r_max: int, digits: int = 30) -> list:
    """Elementary symmetric sums of 1/lam over a finite set of shapes, by the
    one-pass polynomial update.  Exact combinatorics at working precision."""
    keys = [e.b for e in elements]
    if len(set(keys)) != len(keys):
        raise ValueError("elements must be distinct")
    with mp.workdps(digits + 10):
        e = [mpf(1)] + [mpf(0)] * r_max
        for elem in elements:
            x = 1 / mp.root(mpf(elem.radicand()), elem.k)
            for j in range(min(r_max, len(e) - 1), 0, -1):
                e[j] += x * e[j - 1]
        return e


def _exp_tail(x, T: int):
    """Upper bound (mpf) on sum_{t > T} x^t / t!, for x < T + 2."""
    x = mpf(x)
    if not x < T + 2:
        raise ValueError("guard too small for ratio bound")
    first = x ** (T + 1) / mp.factorial(T + 1)
    return first / (1 - x / (T + 2))


def coeffs_a(xi: XiSequence, n_max: int, guard: int = DEFAULT_GUARD,
             p1_hi=None, target=None) -> SeriesCoeffs:
    """a_n = sum_{r=n}^{n+guard} C(r,n) (-2)^(r-n) xi_r, truncation bounded by
    the xi_r <= P_k(1)^r / r! envelope.  p1_hi is an upper bound on P_k(1)
    (defaults to xi_1's upper endpoint, which equals P_k(1))."""
    if n_max < 0 or guard < 1:
        raise ValueError("need n_max >= 0, guard >= 1")
    if xi.r_max < n_max + guard:
        raise ValueError(f"xi computed to {xi.r_max}, need {n_max + guard}")
    P = mpf(p1_hi) if p1_hi is not None else xi.xi[1].hi()
    out = []
    for n in range(n_max + 1):
        acc = ErrorBoundedReal.exact(0)
        sign = 1
        for r in range(n, n + guard + 1):
            term = xi.xi[r] * (mpf(comb(r, n)) * mpf(2) ** (r - n))
            acc = acc + term if sign > 0 else acc - term
            sign = -sign
        tail = P**n / mp.factorial(n) * _exp_tail(2 * P, guard)
        if target is not None and tail > mpf(target):
            raise ValueError(f"guard {guard} leaves truncation {tail} > {target}")
        out.append(acc.widened(tail))
    return SeriesCoeffs(xi.k, tuple(out))


@lru_cache(maxsize=8)
def _engine(k: int, digits: int, p0: int, n_max: int, guard: int):
    """Shared computation bundle: power sums, xi, coefficients.

    r_max = n_max + 2*guard so that the inversion route (which needs
    one-sided densities up to index n_max + guard, each truncated guard
    terms deep) stays inside the computed xi range.

    The xi envelope P_k(1)^r / r! only starts decaying past r ~ P_k(1), so
    for larger k (where P grows) the guard and coefficient range scale up
    automatically, and the power sums gain digits to pay for the larger
    binomial weights the deeper sums incur.
    """
    two_p = 2 * float(power_sum_euler(k, 1, 15, p0).hi())
    g = max(guard, int(two_p) + 4)
    while _float_exp_tail(two_p, g) > 1e-16 and g < 400:
        g += 5
    n_max = max(n_max, g)
    r_max = n_max + 2 * g
    # the binomial weights in the coefficient sums amplify absolute xi errors
    # by up to ~4^r, so the power sums run ~30 digits deeper than the target,
    # plus ~0.65 per unit of extra depth beyond the k in {2,3} calibration
    extra = max(0, int(0.65 * (r_max + n_max - 168)) + 1)
    with mp.workdps(digits + 40 + extra):
        ps = power_sums(k, r_max, digits + 30 + extra, p0)
        xi = xi_from_power_sums(ps, r_max)
        coeffs = coeffs_a(xi, n_max, g)
    return ps, xi, coeffs


def _float_exp_tail(x: float, T: int) -> float:
    if x >= T + 2:
        return float("inf")
    return x ** (T + 1) / factorial(T + 1) / (1 - x / (T + 2))


def series_coefficients(k: int, n_max: int = DEFAULT_N_MAX, digits: int = DEFAULT_DIGITS,
                        p0: int = DEFAULT_PRIME_CUTOFF, guard: int = DEFAULT_GUARD) -> SeriesCoeffs:
    return _engine(k, digits, p0, max(n_max, DEFAULT_N_MAX), guard)[2]


def constant_C(k: int, digits: int = DEFAULT_DIGITS) -> ErrorBoundedReal:
    """C_k = prod (1 - 2/lam) = F_k(0) = a_0: the no-hit density."""
    return series_coefficients(k, digits=digits).a[0]


def _trinom(l: int, m: int, n: int) -> int:
    return comb(l + m + n, l) * comb(m + n, m)


def density_A(k: int, l: int, m: int, method: str = "direct",
              digits: int = DEFAULT_DIGITS, p0: int = DEFAULT_PRIME_CUTOFF,
              guard: int = DEFAULT_GUARD) -> ErrorBoundedReal:
    """Density of integers with exactly l proper k-full numbers in the left
    interval and m in the right one."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if l < 0 or m < 0:
        raise ValueError("l and m must be >= 0")
    n_max = DEFAULT_N_MAX
    if l + m > n_max:
        raise ValueError(f"l + m = {l + m} beyond computed range {n_max}")
    ps, xi, coeffs = _engine(k, digits, p0, n_max, guard)
    with mp.workdps(digits + 20):
        if method == "direct":
            return coeffs.a[l + m] * mpf(comb(l + m, l))
        P = ps.p(1).hi()
        if method == "xi":
            acc = ErrorBoundedReal.exact(0)
            for n in range(guard + 1):
                term = xi.xi[l + m + n] * (mpf(_trinom(l, m, n)) * mpf(2) ** n)
                acc = acc + term if n % 2 == 0 else acc - term
            tail = P ** (l + m) / (mp.factorial(l) * mp.factorial(m)) * _exp_tail(2 * P, guard)
            return acc.widened(tail)
        if method == "inversion":
            acc = ErrorBoundedReal.exact(0)
            for n in range(guard + 1):
                d_one = density_shiu(k, l + m + n, "xi_alternating", digits, p0, guard)
                term = d_one * mpf(_trinom(l, m, n))
                acc = acc + term if n % 2 == 0 else acc - term
            # |d_j| <= e^P P^j / j! makes the alternating sum tail exponential
            tail = (
                mp.exp(P) * P ** (l + m)
                / (mp.factorial(l) * mp.factorial(m))
                * _exp_tail(P, guard)
            )
            return acc.widened(tail)
    raise ValueError(f"unknown method {method!r}")


def density_shiu(k: int, l: int, method: str = "xi_alternating",
                 digits: int = DEFAULT_DIGITS, p0: int = DEFAULT_PRIME_CUTOFF,
                 guard: int = DEFAULT_GUARD) -> ErrorBoundedReal:
    """Density of integers with exactly l proper k-full numbers between
    consecutive kth powers (the one-sided law)."""
    if l < 0:
        raise ValueError("l must be >= 0")
    n_max = DEFAULT_N_MAX
    if l > n_max + guard:
        raise ValueError(f"l = {l} beyond computed range {n_max + guard}")
    ps, xi, coeffs = _engine(k, digits, p0, n_max, guard)
    with mp.workdps(digits + 20):
        P = ps.p(1).hi()
        if method == "xi_alternating":
            acc = ErrorBoundedReal.exact(0)
            for n in range(guard + 1):
                term = xi.xi[l + n] * mpf(comb(l + n, l))
                acc = acc + term if n % 2 == 0 else acc - term
            tail = P**l / mp.factorial(l) * _exp_tail(P, guard)
            return acc.widened(tail)
        if method == "row_sum":
            if l > DEFAULT_N_MAX:
                raise ValueError("row_sum needs l within the coefficient range")
            acc = ErrorBoundedReal.exact(0)
            M = DEFAULT_N_MAX - l
            for m in range(M + 1):
                acc = acc + coeffs.a[l + m] * mpf(comb(l + m, l))
            tail = P**l / mp.factorial(l) * _exp_tail(P, M)
            return acc.widened(tail)
    raise ValueError(f"unknown method {method!r}")


def density_B(k: int, I: SubsetSpec, J: SubsetSpec,
              digits: int = DEFAULT_DIGITS) -> ErrorBoundedReal:
    """Density of integers whose left interval is hit by exactly the shapes
    of I, the right by exactly those of J, and nothing else hits; depends
    only on the union of I and J."""
    if I.k != k or J.k != k:
        raise ValueError("subset k mismatch")
    if I.key_set() & J.key_set():
        raise ValueError("I and J must be disjoint")
    out = constant_C(k, digits)
    with mp.workdps(digits + 20):
        for e in list(I.elements) + list(J.elements):
            lam = lambda_value(e, digits + 10)
            out = out * lam.reciprocal() / (1 - 2 * lam.reciprocal())
        return out


def normalization_check(k: int, digits: int = DEFAULT_DIGITS,
                        p0: int = DEFAULT_PRIME_CUTOFF) -> ErrorBoundedReal:
    """sum over n of a_n 2^n, which must enclose 1 (total cell mass)."""
    ps, xi, coeffs = _engine(k, digits, p0, DEFAULT_N_MAX, DEFAULT_GUARD)
    with mp.workdps(digits + 20):
        acc = ErrorBoundedReal.exact(0)
        for n in range(coeffs.n_max + 1):
            acc = acc + coeffs.a[n] * mpf(2) ** n
        P = ps.p(1).hi()
        return acc.widened(_exp_tail(2 * P, coeffs.n_max))


def eval_F(k: int, z, digits: int = 15, p0: int = DEFAULT_PRIME_CUTOFF) -> ErrorBoundedReal:
    """The entire product F_k(z) = prod (1 + (z-2)/lam).

    Near the expansion center (|z-2| at most 0.8 lam_min) the logarithmic
    series in the power sums converges geometrically; beyond that the xi
    series (factorial decay, valid everywhere) takes over.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    ps, xi, _ = _engine(k, max(digits, DEFAULT_DIGITS), p0, DEFAULT_N_MAX, DEFAULT_GUARD)
    with mp.workdps(digits + 20):
        w = mpf(z) - 2
        lam_min = mp.root(mpf(lambda_min_radicand(k)), k)
        target = mpf(10) ** (-digits - 2)
        if abs(w) <= mpf("0.8") * lam_min:
            if w == 0:
                return ErrorBoundedReal.exact(1)
            acc = ErrorBoundedReal.exact(0)
            ratio = abs(w) / lam_min
            M = ps.m_max
            for m in range(1, M + 1):
                term = ps.p(m) * (w**m / m)
                acc = acc + term if m % 2 == 1 else acc - term
                tail = ps.p(m + 1).hi() * abs(w) ** (m + 1) / ((m + 1) * (1 - ratio)) if m < M else None
                if tail is not None and tail < target:
                    return acc.widened(tail).exp()
            tail = ps.p(M).hi() / lam_min * abs(w) ** (M + 1) / ((M + 1) * (1 - ratio))
            return acc.widened(tail).exp()
        P = ps.p(1).hi()
        x = P * abs(w)
        if x < xi.r_max - 6:
            # adaptive cut: past the needed depth the w^r weights amplify the
            # noise in the high-order xi values, so deeper is worse, not better
            acc = ErrorBoundedReal.exact(0)
            for r in range(xi.r_max + 1):
                acc = acc + xi.xi[r] * w**r
                if x < r + 2:
                    tail = _exp_tail(x, r)
                    if tail < target or tail < acc.radius / 4:
                        return acc.widened(tail)
            return acc.widened(_exp_tail(x, xi.r_max))
        return _eval_F_product(k, w, digits)


def _eval_F_product(k: int, w, digits: int) -> ErrorBoundedReal:
    """Fallback for arguments beyond the series depth: exact product over a
    coordinate box of shapes, times a bracket for the omitted factors.  The
    achievable radius degrades with |w| (the omitted mass shrinks only like
    a power of the box side), and the returned radius says so honestly."""
    from .shapes import box_elements, tail_bound

    # the box must keep every omitted shape above 2|w| so the omitted
    # log-factors are dominated; then widen until the tail bound stops paying
    B_floor = max(64, int((2 * abs(w)) ** (mpf(k) / (k + 1))) + 1)
    B_cap = max(B_floor, int(200_000 ** (1.0 / (k - 1))))
    B = min(B_floor * 16, B_cap)
    prod = ErrorBoundedReal.exact(1)
    for e in box_elements(k, B):
        lam = mp.root(mpf(e.radicand()), k)
        lam_e = ErrorBoundedReal(lam, lam * mp.eps * 8)
        prod = prod * (1 + w / lam_e)
    lam_min_omitted = mpf(B + 1) ** (mpf(k + 1) / k)
    kappa = 1 / (1 - abs(w) / lam_min_omitted)
    tail_log = kappa * abs(w) * tail_bound(k, 1, B)
    lo_f, hi_f = mp.exp(-tail_log), mp.exp(tail_log)
    bracket = ErrorBoundedReal((lo_f + hi_f) / 2, (hi_f - lo_f) / 2 + mp.eps * hi_f * 4)
    return prod * bracket


def build_table(k: int, L: int, method: str = "direct",
                digits: int = DEFAULT_DIGITS, p0: int = DEFAULT_PRIME_CUTOFF,
                guard: int = DEFAULT_GUARD) -> DensityTable:
    """Cell densities for 0 <= l <= m <= L."""
    if L < 0:
        raise ValueError("L must be >= 0")
    entries = {}
    for l in range(L + 1):
        for m in range(l, L + 1):
            entries[(l, m)] = density_A(k, l, m, method, digits, p0, guard)
    return DensityTable(k, L, method, entries)
