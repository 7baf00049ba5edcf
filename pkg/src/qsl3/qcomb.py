"""Quantum integers, factorials and binomial coefficients.

Conventions (all values are bar-symmetric elements of Z[v, v^-1]):

    [n]      = (v^n - v^-n) / (v - v^-1),          so [-n] = -[n]
    [n]!     = [1][2]...[n],  [0]! = 1,  [-n]! = (-1)^n [n]!
    [a; b]   = product over h = 1..b of [a-h+1]/[h]   (b >= 0)
               1 for b = 0, and 0 for every b < 0.

The binomial vanishes exactly when 0 <= a < b, and for negative a satisfies
[a; b] = (-1)^b [-a+b-1; b].  The negative-second-argument convention makes
out-of-range terms of truncated sums vanish silently, which the closed-form
element catalog relies on.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import DomainError
from .laurent import LaurentPoly, ONE, ZERO, vpow


def qint(n: int) -> LaurentPoly:
    """The quantum integer [n]."""
    if n == 0:
        return ZERO
    a = abs(n)
    p = LaurentPoly._make({a - 1 - 2 * i: 1 for i in range(a)})
    return p if n > 0 else -p


@lru_cache(maxsize=None)
def qfact(n: int) -> LaurentPoly:
    """The quantum factorial [n]!, with [-n]! = (-1)^n [n]!."""
    if n < 0:
        p = qfact(-n)
        return p if (-n) % 2 == 0 else -p
    out = ONE
    for h in range(1, n + 1):
        out = out * qint(h)
    return out


@lru_cache(maxsize=None)
def qbinom(a: int, b: int) -> LaurentPoly:
    """The quantum binomial coefficient [a; b]."""
    if b < 0:
        return ZERO
    if b == 0:
        return ONE
    num = ONE
    for h in range(1, b + 1):
        f = qint(a - h + 1)
        if f.is_zero():
            return ZERO
        num = num * f
    return num.exact_div(qfact(b))


def ki_binom_at(c: int, a: int, w: int) -> LaurentPoly:
    """Evaluate the Cartan binomial [k_i; c over a] where k_i acts by v^w.

    Computed by the defining product, one exact division per factor; the
    result coincides with qbinom(w + c, a).
    """
    if a < 0:
        raise DomainError("Cartan binomial needs a nonnegative order")
    num = ONE
    for h in range(1, a + 1):
        f = qint(w + c - h + 1)
        if f.is_zero():
            return ZERO
        num = num * f
    return num.exact_div(qfact(a))


# -- combinatorial identity checkers -----------------------------------------
#
# Each checker has a *_sides twin returning both fully expanded sides, so a
# failure can be reported with the exact polynomials in play.


def qvandermonde_sides(n: int, r: int, m: int):
    """q-Vandermonde convolution: [m+n; r] against the split over [m][n]."""
    if n < 0 or r < 0:
        raise DomainError("n and r must be nonnegative")
    lhs = qbinom(m + n, r)
    rhs = ZERO
    for t in range(0, min(n, r) + 1):
        rhs = rhs + vpow(t * (m + n) - n * r) * qbinom(m, r - t) * qbinom(n, t)
    return lhs, rhs


def qvandermonde_check(n: int, r: int, m: int) -> bool:
    lhs, rhs = qvandermonde_sides(n, r, m)
    return lhs == rhs


def qvandermonde_negative_sides(m: int, k: int, delta: int):
    """The negative-argument convolution: an alternating sum against
    [k+i-1; i] collapses [m; .] to [m-k; delta] times a v-power."""
    if k < 0 or m < k:
        raise DomainError("requires m >= k >= 0")
    if delta < 0:
        raise DomainError("delta must be nonnegative")
    lhs = ZERO
    for i in range(0, delta + 1):
        term = qbinom(k + i - 1, i) * qbinom(m, delta - i) * vpow(i * (m - k))
        lhs = lhs + (term if i % 2 == 0 else -term)
    rhs = qbinom(m - k, delta) * vpow(-k * delta)
    return lhs, rhs


def qvandermonde_negative_check(m: int, k: int, delta: int) -> bool:
    lhs, rhs = qvandermonde_negative_sides(m, k, delta)
    return lhs == rhs


def triple_transform_sides(a: int, c: int, u: int, r: int, b: int):
    """Transformation between two alternating triple-binomial sums; the
    inductive workhorse behind the closed-form family reductions."""
    if c < 0 or a < c:
        raise DomainError("requires a >= c >= 0")
    if u < 0 or r < 0:
        raise DomainError("u and r must be nonnegative")
    lhs = ZERO
    for f in range(0, u + 1):
        term = (qbinom(a - c + f - 1, f) * qbinom(b + r - f, r)
                * qbinom(a + u, u - f) * vpow(f * (u + c - r)))
        lhs = lhs + (term if f % 2 == 0 else -term)
    rhs = ZERO
    for d in range(0, min(u, r) + 1):
        rhs = rhs + (vpow(d * b + (u - d) * (c - a - r))
                     * qbinom(b + r - u, r - d)
                     * qbinom(c + u - d, u - d)
                     * qbinom(a + u, d))
    return lhs, rhs


def triple_transform_check(a: int, c: int, u: int, r: int, b: int) -> bool:
    lhs, rhs = triple_transform_sides(a, c, u, r, b)
    return lhs == rhs
