"""The over-(q,t)-binomial coefficient B(m, n) and its Delannoy specializations.

B(m, n) is the sum of t^k q^N over overpartitions of N with k overlined
parts, largest part <= m and at most n parts. Seven independent routes
compute it; ``pascal1`` is the production one.
"""
from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra import (
    ONE,
    T,
    ZERO,
    MPoly,
    RationalMPoly,
    divexact,
    gaussian,
    pochhammer,
    qmultinomial,
    qpoch,
    qpow,
    rat_eq,
)
from .combinatorics import enumerate_delannoy_paths, enumerate_overpartitions, path_stats
from .errors import IdentityViolation, MethodTooExpensive

METHODS = ("enumerate", "formula", "pascal1", "pascal2", "paths", "hyper", "phi21")

#: enumerate/paths refuse boxes with m*n above this (env OVERQT_ENUM_LIMIT)
DEFAULT_ENUM_LIMIT = 100


def enum_limit() -> int:
    return int(os.environ.get("OVERQT_ENUM_LIMIT", DEFAULT_ENUM_LIMIT))


# ---------------------------------------------------------------------------
# the methods


@lru_cache(maxsize=None)
def _pascal1(m: int, n: int) -> MPoly:
    if m < 0 or n < 0:
        return ZERO
    if m == 0 or n == 0:
        return ONE
    qn = qpow(n)
    return _pascal1(m, n - 1) + qn * _pascal1(m - 1, n) + (qn * T) * _pascal1(m - 1, n - 1)


@lru_cache(maxsize=None)
def _pascal2(m: int, n: int) -> MPoly:
    if m < 0 or n < 0:
        return ZERO
    if m == 0 or n == 0:
        return ONE
    qm = qpow(m)
    return _pascal2(m - 1, n) + qm * _pascal2(m, n - 1) + (qm * T) * _pascal2(m - 1, n - 1)


def _guard(m: int, n: int, method: str) -> None:
    if m * n > enum_limit():
        raise MethodTooExpensive(
            f"{method} limited to m*n <= {enum_limit()}, got {m}x{n}", m=m, n=n
        )


def _by_enumeration(m: int, n: int) -> MPoly:
    _guard(m, n, "enumerate")
    counts: Dict[Tuple[int, int, int], int] = {}
    for lam in enumerate_overpartitions(m, n):
        key = (lam.weight, lam.overline_count, 0)
        counts[key] = counts.get(key, 0) + 1
    return MPoly(counts)


def _by_paths(m: int, n: int) -> MPoly:
    _guard(m, n, "paths")
    counts: Dict[Tuple[int, int, int], int] = {}
    for p in enumerate_delannoy_paths(m, n):
        d, wt = path_stats(p)
        key = (wt, d, 0)
        counts[key] = counts.get(key, 0) + 1
    return MPoly(counts)


def _by_formula(m: int, n: int) -> MPoly:
    # sum_k t^k q^{k(k+1)/2} (q)_{m+n-k} / ((q)_k (q)_{m-k} (q)_{n-k})
    total = ZERO
    for k in range(min(m, n) + 1):
        frac = divexact(qpoch(m + n - k), qpoch(k) * qpoch(m - k) * qpoch(n - k))
        total = total + frac.shift(q=k * (k + 1) // 2, t=k)
    return total


def _by_hyper(m: int, n: int) -> MPoly:
    # sum_k q^{k(k+1)/2} prod_{j<k} (t + q^j) [m,k] [n,k]
    total = ZERO
    prod = ONE
    for k in range(min(m, n) + 1):
        if k:
            prod = prod * (T + qpow(k - 1))
        total = total + (prod * gaussian(m, k) * gaussian(n, k)).shift(q=k * (k + 1) // 2)
    return total


def phi21_series(m: int, n: int) -> RationalMPoly:
    """The terminating 2phi1(q^-n, q^-m; q^-(n+m); q, -tq) as a fraction."""
    a = MPoly.monomial(1, q=-n)
    b = MPoly.monomial(1, q=-m)
    c = MPoly.monomial(1, q=-(n + m))
    z = MPoly({(1, 1, 0): -1})
    total = RationalMPoly(MPoly.const(0))
    for k in range(min(m, n) + 1):
        num = pochhammer(a, k) * pochhammer(b, k) * z ** k
        den = qpoch(k) * pochhammer(c, k)
        total = total + RationalMPoly(num, den)
    return total


def _by_phi21(m: int, n: int) -> MPoly:
    if m == 0 or n == 0:
        return ONE
    s = phi21_series(m, n)
    value = divexact(s.num * gaussian(m + n, n), s.den).as_polynomial()
    check = RationalMPoly(value * qpoch(n) * qpoch(m), qpoch(m + n))
    if not rat_eq(s, check):
        raise IdentityViolation(f"2phi1 representation fails at ({m},{n})", m=m, n=n)
    return value


_DISPATCH = {
    "enumerate": _by_enumeration,
    "formula": _by_formula,
    "pascal1": _pascal1,
    "pascal2": _pascal2,
    "paths": _by_paths,
    "hyper": _by_hyper,
    "phi21": _by_phi21,
}


def ob_compute(m: int, n: int, method: str = "pascal1") -> MPoly:
    """B(m, n) by the named method. Negative coordinates give 0."""
    if method not in _DISPATCH:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    if m < 0 or n < 0:
        return ZERO
    return _DISPATCH[method](m, n)


def B(m: int, n: int) -> MPoly:
    """B(m, n) by the memoized Pascal recurrence."""
    return _pascal1(m, n)


def bracket(top: int, bottom: int) -> MPoly:
    """The overpartition analogue of [top, bottom], i.e. B(top-bottom, bottom)."""
    if bottom < 0 or bottom > top:
        return ZERO
    return B(top - bottom, bottom)


def ob_coefficient(m: int, n: int, k: int, N: int) -> int:
    """Number of overpartitions of N with k overlined parts in the m x n box."""
    return B(m, n).coeff(q=N, t=k)


def trinomial_form(m: int, n: int) -> MPoly:
    """sum_k t^k q^{k(k+1)/2} [m+n-k; k, m-k, n-k]_q."""
    total = ZERO
    for k in range(min(m, n) + 1):
        total = total + qmultinomial(k, m - k, n - k).shift(q=k * (k + 1) // 2, t=k)
    return total


# ---------------------------------------------------------------------------
# Delannoy numbers


@lru_cache(maxsize=None)
def delannoy_number(m: int, n: int) -> int:
    if m < 0 or n < 0:
        return 0
    if m == 0 or n == 0:
        return 1
    return delannoy_number(m - 1, n) + delannoy_number(m, n - 1) + delannoy_number(m - 1, n - 1)


def sagan_q_delannoy(m: int, n: int) -> MPoly:
    """Sum over Delannoy paths of q^(number of NE steps)."""
    if m < 0 or n < 0:
        return ZERO
    return B(m, n).specialize(q=1).swap_qt()


# ---------------------------------------------------------------------------
# cross-check


@dataclass
class CrossCheckReport:
    max_m: int
    max_n: int
    passed: bool = True
    cells: int = 0
    witness: Optional[dict] = None
    elapsed: float = 0.0
    methods: List[str] = field(default_factory=list)

    def fail(self, **witness) -> None:
        if self.passed:
            self.passed = False
            self.witness = witness


def cross_check(max_m: int, max_n: int, methods=METHODS) -> CrossCheckReport:
    """All methods agree on the grid, plus symmetry, the multinomial form and
    the Delannoy specialization. Methods whose guard would trip on a cell are
    skipped for that cell only."""
    start = time.perf_counter()
    report = CrossCheckReport(max_m, max_n, methods=list(methods))
    limit = enum_limit()
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            report.cells += 1
            ref = B(m, n)
            for method in methods:
                if method in ("enumerate", "paths") and m * n > limit:
                    continue
                if ob_compute(m, n, method) != ref:
                    report.fail(m=m, n=n, check=f"method {method}")
            if B(n, m) != ref:
                report.fail(m=m, n=n, check="symmetry")
            if trinomial_form(m, n) != ref:
                report.fail(m=m, n=n, check="multinomial form")
            if ref.specialize(q=1, t=1).constant_term() != delannoy_number(m, n):
                report.fail(m=m, n=n, check="delannoy")
    report.elapsed = time.perf_counter() - start
    return report
