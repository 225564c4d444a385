"""Verifiers for the finite identities satisfied by B(m, n).

Every verifier builds both sides independently and returns an
:class:`IdentityReport`; a failure carries the first differing coefficient.
Series identities use the variable u for the formal parameter and compare modulo u^(K+1).
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .algebra import (
    ONE,
    T,
    U,
    ZERO,
    MPoly,
    RationalMPoly,
    USeries,
    gaussian,
    pochhammer,
    qpoch,
)
from .errors import BadIndices
from .overbinomial import B, delannoy_number, phi21_series, sagan_q_delannoy

DEFAULT_TRUNC = 12

SERIES_IDS = ("fin_qbinom", "fin_qbi", "fin_rogers_fine")
EXACT_IDS = ("fin_lebesgue", "prop41", "prop42", "thm43", "phi21_rep")
THETA_IDS = ("fin_theta", "fine_cor", "multinomial_form", "delannoy_alternating")
NONNEG_IDS = ("qlog_general", "qlog_square", "cor2", "butler_r")
ALL_IDS = SERIES_IDS + EXACT_IDS + THETA_IDS + NONNEG_IDS


@dataclass
class IdentityReport:
    identity_id: str
    parameters: Dict[str, int]
    status: str = "verified"
    witness: Optional[dict] = None
    elapsed: float = 0.0
    lhs: Optional[str] = None
    rhs: Optional[str] = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    def to_json_obj(self) -> dict:
        return {
            "identity": self.identity_id,
            "parameters": self.parameters,
            "status": self.status,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 4),
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


def first_difference(lhs: MPoly, rhs: MPoly) -> Optional[dict]:
    diff = lhs - rhs
    if diff.is_zero():
        return None
    (eq, et, eu), _ = diff.items()[0]
    return {"q": eq, "t": et, "u": eu,
            "lhs": str(lhs.coeff(eq, et, eu)), "rhs": str(rhs.coeff(eq, et, eu))}


def _compare(identity_id, params, lhs: MPoly, rhs: MPoly, start: float,
             show: bool = True) -> IdentityReport:
    witness = first_difference(lhs, rhs)
    rep = IdentityReport(identity_id, params,
                         "verified" if witness is None else "failed", witness)
    if show:
        rep.lhs, rep.rhs = lhs.to_text(), rhs.to_text()
    rep.elapsed = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# identities in a formal variable, compared as truncated series


def _poch_u(coef: int, qexp: int, k: int, t: bool = False, sign: str = "minus") -> MPoly:
    """(coef * [t] u q^qexp ; q)_k, or the (-x)_k variant with sign='plus'."""
    return pochhammer(MPoly.monomial(coef, q=qexp, t=int(t), u=1), k, sign)


def _series_lhs_qbinom(n: int, K: int) -> USeries:
    return USeries([B(n - 1, k).shift(q=k) for k in range(K + 1)], K)


def verify_series_identity(identity_id: str, n: int, K: int = DEFAULT_TRUNC) -> IdentityReport:
    start = time.perf_counter()
    if n < 1 or K < 1:
        raise BadIndices("series identities need n >= 1 and K >= 1")
    params = {"n": n, "K": K}
    if identity_id == "fin_qbinom":
        lhs = _series_lhs_qbinom(n, K)
        num = USeries.from_poly(_poch_u(1, 2, n - 1, t=True, sign="plus"), K)
        den = USeries.from_poly(_poch_u(1, 1, n), K)
        rhs = num * den.invert()
    elif identity_id == "fin_qbi":
        lhs = USeries([ONE] + [(B(n - 1, k) + T * B(n - 1, k - 1)).shift(q=k)
                               for k in range(1, K + 1)], K)
        num = USeries.from_poly(_poch_u(1, 1, n, t=True, sign="plus"), K)
        den = USeries.from_poly(_poch_u(1, 1, n), K)
        rhs = num * den.invert()
    elif identity_id == "fin_rogers_fine":
        lhs = _series_lhs_qbinom(n, K)
        rhs = USeries([], K)
        # the u^k prefactor makes terms with k > K vanish mod u^(K+1)
        for k in range(K + 1):
            inner = B(n - 1 - k, k) + (T * U * B(n - 2 - k, k)).shift(q=2 * k + 2)
            if inner.is_zero():
                continue
            num = _poch_u(1, 2, k, t=True, sign="plus") * inner
            num = num.shift(q=k * k + k, u=k)
            den = USeries.from_poly(_poch_u(1, 1, k + 1), K)
            rhs = rhs + USeries.from_poly(num, K) * den.invert()
    else:
        raise ValueError(f"unknown series identity {identity_id!r}")
    return _compare(identity_id, params, lhs.to_poly(), rhs.to_poly(), start)


# ---------------------------------------------------------------------------
# exact identities


def lebesgue_sum(n: int) -> RationalMPoly:
    """S(n; t, y, q) with y -> u, over the common denominator (uq)_n."""
    den = _poch_u(1, 1, n)
    total = RationalMPoly(den, den)
    j = 1
    while True:
        a, b = B(n - j, j - 1), B(n - j, j)
        if a.is_zero() and b.is_zero():
            break
        # (-tuq)_i / (uq)_i over (uq)_n  ->  (-tuq)_i * (uq^{i+1})_{n-i}
        def piece(i):
            return _poch_u(1, 1, i, t=True, sign="plus") * _poch_u(1, i + 1, n - i)
        term = (T * a * piece(j - 1) + b * piece(j)).shift(q=j * j, u=j)
        total = total + RationalMPoly(term, den)
        j += 1
    return total


def thm43_sides(n: int) -> Tuple[MPoly, MPoly]:
    """Both sides of the Durfee-rectangle expansion, multiplied by (uq)_n."""
    zq_n = _poch_u(1, 1, n)
    lhs = _poch_u(1, 1, n, t=True, sign="plus")

    def ratio(i):
        # (-tuq)_i/(uq)_i * (uq)_n
        return _poch_u(1, 1, i, t=True, sign="plus") * _poch_u(1, i + 1, n - i)

    rhs = zq_n
    for m in range(1, n):
        c = B(n - m - 1, 2 * m) + T * B(n - m - 1, 2 * m - 1)
        rhs = rhs + (c * ratio(m)).shift(q=2 * m * m + 2 * m, u=2 * m)
    for m in range(1, n + 1):
        rhs = rhs + (B(n - m, 2 * m - 1) * ratio(m)).shift(q=2 * m * m - m, u=2 * m - 1)
        rhs = rhs + (T * B(n - m, 2 * m - 2) * ratio(m - 1)).shift(q=2 * m * m - m, u=2 * m - 1)
    return lhs, rhs


def verify_exact_identity(identity_id: str, **params: int) -> IdentityReport:
    start = time.perf_counter()
    if identity_id == "fin_lebesgue":
        n = params["n"]
        if n < 1:
            raise BadIndices("fin_lebesgue needs n >= 1")
        s = lebesgue_sum(n)
        target = RationalMPoly(_poch_u(1, 1, n, t=True, sign="plus"), _poch_u(1, 1, n))
        # cross-multiplied, as rat_eq does, so a failure has a coefficient witness
        lhs, rhs = s.num * target.den, target.num * s.den
        return _compare(identity_id, {"n": n}, lhs, rhs, start, show=False)
    if identity_id == "prop41":
        m, n = params["m"], params["n"]
        lhs = B(n, m + 1)
        rhs = ONE
        for j in range(1, n + 1):
            rhs = rhs + (B(m, j) + T * B(m, j - 1)).shift(q=j)
        return _compare(identity_id, {"m": m, "n": n}, lhs, rhs, start)
    if identity_id == "prop42":
        m, n, h = params["m"], params["n"], params["h"]
        if not (h >= 0 and m >= h and n >= h):
            raise BadIndices(f"prop42 needs m, n >= h >= 0, got m={m} n={n} h={h}")
        lhs = ZERO
        for k in range(h + 1):
            inner = (B(n - k, k) * B(m - h + k, h - k)
                     + T * B(n - 1 - k, k) * B(m - h + k, h - k - 1))
            lhs = lhs + inner.shift(q=(n - k) * (h - k))
        rhs = B(m + n - h, h)
        return _compare(identity_id, {"m": m, "n": n, "h": h}, lhs, rhs, start)
    if identity_id == "thm43":
        n = params["n"]
        if n < 1:
            raise BadIndices("thm43 needs n >= 1")
        lhs, rhs = thm43_sides(n)
        return _compare(identity_id, {"n": n}, lhs, rhs, start, show=False)
    if identity_id == "phi21_rep":
        m, n = params["m"], params["n"]
        if m < 1 or n < 1:
            raise BadIndices("phi21_rep needs m, n >= 1")
        s = phi21_series(m, n)
        target = RationalMPoly(B(m, n) * qpoch(n) * qpoch(m), qpoch(m + n))
        lhs, rhs = s.num * target.den, target.num * s.den
        return _compare(identity_id, {"m": m, "n": n}, lhs, rhs, start, show=False)
    raise ValueError(f"unknown exact identity {identity_id!r}")


# ---------------------------------------------------------------------------
# alternating sums and the truncated theta function


def _t1(p: MPoly) -> MPoly:
    return p.specialize(t=1)


def verify_theta(identity_id: str, n: int) -> IdentityReport:
    start = time.perf_counter()
    if n < 0:
        raise BadIndices("theta identities need n >= 0")
    params = {"n": n}
    if identity_id == "fin_theta":
        lhs = ZERO
        for k in range(n + 1):
            lhs = lhs + (-1) ** k * _t1(B(n - k, k))
        rhs = _theta_direct(n // 2) if n % 2 == 0 else ZERO
        return _compare(identity_id, params, lhs, rhs, start)
    if identity_id == "fine_cor":
        lhs = ONE
        for k in range(1, n + 1):
            lhs = lhs + ((-1) ** k * _t1(B(n - k, k) + B(n - k, k - 1))).shift(q=k)
        rhs = _theta_direct((n + 1) // 2)
        return _compare(identity_id, params, lhs, rhs, start)
    if identity_id == "multinomial_form":
        lhs = _theta_direct(n)
        rhs = ZERO
        for j in range(n):
            for k in range(j + 1):
                term = (gaussian(2 * n - k, j) * gaussian(j, k)).shift(q=k * (k + 1) // 2)
                rhs = rhs + 2 * (-1) ** j * term
        for k in range(n + 1):
            term = (gaussian(2 * n - k, n) * gaussian(n, k)).shift(q=k * (k + 1) // 2)
            rhs = rhs + (-1) ** n * term
        return _compare(identity_id, params, lhs, rhs, start)
    if identity_id == "delannoy_alternating":
        lhs = sum((-1) ** k * delannoy_number(n - k, k) for k in range(n + 1))
        rhs = 0 if n % 2 else (1 if n % 4 == 0 else -1)
        return _compare(identity_id, params, MPoly.const(lhs), MPoly.const(rhs), start)
    raise ValueError(f"unknown theta identity {identity_id!r}")


def _theta_direct(bound: int) -> MPoly:
    """sum_{j=-bound}^{bound} (-1)^j q^{j^2}, summed term by term."""
    total = ZERO
    for j in range(-bound, bound + 1):
        total = total + MPoly.monomial(-1 if j % 2 else 1, q=j * j)
    return total


# ---------------------------------------------------------------------------
# nonnegativity (log-concavity)


def _check_nonneg_indices(identity_id, n, k, l, r):
    if identity_id == "qlog_general" or identity_id == "cor2":
        ok = 0 < k <= l < n
    elif identity_id == "qlog_square":
        ok = 0 < k < n
    elif identity_id == "butler_r":
        ok = 0 <= k - r <= k <= l <= l + r <= n and r >= 0
    else:
        raise ValueError(f"unknown nonnegativity statement {identity_id!r}")
    if not ok:
        raise BadIndices(f"{identity_id}: indices n={n} k={k} l={l} r={r} out of range")


def nonneg_pairs(identity_id: str, n: int, k: int, l: int, r: int):
    """Index pairs ((a, b), (c, d), (e, f), (g, h)) so the difference is
    X(a,b) X(c,d) - X(e,f) X(g,h) for X = B or a Delannoy variant."""
    if identity_id == "qlog_square":
        l = k
    if identity_id in ("qlog_general", "qlog_square"):
        return (n - k, k), (n - l, l), (n - k + 1, k - 1), (n - l - 1, l + 1)
    if identity_id == "cor2":
        return (n - k, k), (n - l, l), (n - k, k - 1), (n - l, l + 1)
    return (n - k, k), (n - l, l), (n - k + r, k - r), (n - l - r, l + r)


def _negative_coefficient(p: MPoly) -> Optional[dict]:
    for (eq, et, eu), c in p.items():
        if c < 0:
            return {"q": eq, "t": et, "u": eu, "coefficient": str(c)}
    return None


def verify_nonnegativity(identity_id: str, n: int, k: int, l: int = 0, r: int = 0) -> IdentityReport:
    """The (q,t) difference has no negative coefficient; neither do its
    Delannoy (q=t=1, from the path recurrence) and Sagan (q=1, t->q)
    specializations."""
    start = time.perf_counter()
    if identity_id == "qlog_square":
        l = k
    _check_nonneg_indices(identity_id, n, k, l, r)
    params = {"n": n, "k": k, "l": l, "r": r}
    a, b, c, d = nonneg_pairs(identity_id, n, k, l, r)
    diff = B(*a) * B(*b) - B(*c) * B(*d)
    rep = IdentityReport(identity_id, params)
    witness = _negative_coefficient(diff)
    if witness is None:
        dd = (delannoy_number(*a) * delannoy_number(*b)
              - delannoy_number(*c) * delannoy_number(*d))
        if dd < 0:
            witness = {"specialization": "q=t=1", "value": str(dd)}
        elif dd != diff.specialize(q=1, t=1).constant_term():
            witness = {"specialization": "q=t=1 mismatch", "value": str(dd)}
    if witness is None:
        sd = (sagan_q_delannoy(*a) * sagan_q_delannoy(*b)
              - sagan_q_delannoy(*c) * sagan_q_delannoy(*d))
        neg = _negative_coefficient(sd)
        if neg is not None:
            witness = dict(neg, specialization="sagan")
    if witness is not None:
        rep.status, rep.witness = "failed", witness
    rep.lhs = diff.to_text()
    rep.elapsed = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# dispatch used by the CLI


def verify(identity_id: str, n: int = 1, m: int = 1, k: int = 1, l: int = 1,
           r: int = 0, h: int = 0, K: int = DEFAULT_TRUNC) -> IdentityReport:
    identity_id = identity_id.replace("-", "_")
    if identity_id in SERIES_IDS:
        return verify_series_identity(identity_id, n, K)
    if identity_id == "fin_lebesgue" or identity_id == "thm43":
        return verify_exact_identity(identity_id, n=n)
    if identity_id in ("prop41", "phi21_rep"):
        return verify_exact_identity(identity_id, m=m, n=n)
    if identity_id == "prop42":
        return verify_exact_identity(identity_id, m=m, n=n, h=h)
    if identity_id in THETA_IDS:
        return verify_theta(identity_id, n)
    if identity_id in NONNEG_IDS:
        return verify_nonnegativity(identity_id, n, k, l, r)
    raise ValueError(f"unknown identity {identity_id!r}")


def run_suite(jobs: Iterable[Tuple[str, dict]], workers: int = 4) -> List[IdentityReport]:
    """Run ``verify(identity_id, **params)`` for every job concurrently.

    Verifiers are pure, so the order of completion does not matter; reports
    come back sorted by identity id and then parameters.
    """
    jobs = list(jobs)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        reports = list(pool.map(lambda job: verify(job[0], **job[1]), jobs))
    return sorted(reports, key=lambda r: (r.identity_id, sorted(r.parameters.items())))
