"""Finite scans for the open unimodality and positivity conjectures.

Nothing here proves anything: a scan reports whether a statement holds on
the window it looked at.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .algebra import MPoly
from .overbinomial import B

DEFAULT_PRELLBERG_TRUNC = 50


@dataclass
class ScanResult:
    conjecture_id: str
    parameter: dict
    holds: bool
    detail: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {"conjecture": self.conjecture_id, "parameter": self.parameter,
                "holds": self.holds, "detail": self.detail}


def unimodal_peak(seq: Sequence[int]) -> Optional[int]:
    """Index of the first maximum if ``seq`` is unimodal, else None.

    Unimodal means a_0 <= ... <= a_p >= ... >= a_r for some p.
    """
    if not seq:
        return 0
    i, r = 0, len(seq) - 1
    while i < r and seq[i] <= seq[i + 1]:
        i += 1
    p = i
    while i < r and seq[i] >= seq[i + 1]:
        i += 1
    if i != r:
        return None
    # report the first index attaining the maximum
    top = seq[p]
    return seq.index(top)


def is_unimodal(seq: Sequence[int]) -> bool:
    return unimodal_peak(seq) is not None


def first_violation(seq: Sequence[int]) -> Optional[int]:
    """Index j of an interior strict local minimum pattern a_i > a_j < a_k, if any."""
    for j in range(1, len(seq) - 1):
        if seq[j] < max(seq[:j]) and seq[j] < max(seq[j + 1:]):
            return j
    return None


def strictness(seq: Sequence[int]) -> dict:
    """Where consecutive entries inside the support are equal.

    ``strict`` allows equalities only at the peak plateau and at the first
    or last step of the support.
    """
    nz = [i for i, a in enumerate(seq) if a]
    if not nz:
        return {"strict": True, "equal_steps": []}
    lo, hi = nz[0], nz[-1]
    equal = [i for i in range(lo, hi) if seq[i] == seq[i + 1]]
    peak = unimodal_peak(seq)
    allowed = {lo, hi - 1}
    if peak is not None:
        top = seq[peak]
        allowed |= {i for i in range(lo, hi) if seq[i] == top == seq[i + 1]}
    strict = peak is not None and all(i in allowed for i in equal)
    return {"strict": strict, "equal_steps": equal}


def coefficient_grid(p: MPoly) -> List[List[int]]:
    """grid[k][N] = coefficient of t^k q^N."""
    r = max(p.degree("t"), 0)
    s = max(p.degree("q"), 0)
    grid = [[0] * (s + 1) for _ in range(r + 1)]
    for (eq, et, _), c in p.items():
        grid[et][eq] = c
    return grid


def _boxes(max_mn: int):
    for total in range(max_mn + 1):
        for m in range(total + 1):
            yield m, total - m


def double_unimodal(p: MPoly) -> Tuple[bool, dict]:
    grid = coefficient_grid(p)
    rows_peaks, cols_peaks = [], []
    for k, row in enumerate(grid):
        peak = unimodal_peak(row)
        if peak is None:
            j = first_violation(row)
            return False, {"part": "t-row", "k": k, "N": j, "sequence": row}
        rows_peaks.append(peak)
    for N in range(len(grid[0])):
        col = [grid[k][N] for k in range(len(grid))]
        peak = unimodal_peak(col)
        if peak is None:
            j = first_violation(col)
            return False, {"part": "q-column", "N": N, "k": j, "sequence": col}
        cols_peaks.append(peak)
    return True, {"t_row_peaks": rows_peaks, "q_column_peaks": cols_peaks}


def scan_unimodality(kind: str, max_mn: int) -> List[ScanResult]:
    """Scan every box with m + n <= max_mn.

    kind "double": each t^k row unimodal in q and each q^N column unimodal
    in t. "t1": B(m, n) at t = 1 unimodal in q. "strict": raw strictness
    data for the t=1 sequence, q^N columns and t^k rows.
    """
    out = []
    for m, n in _boxes(max_mn):
        p = B(m, n)
        param = {"m": m, "n": n}
        if kind == "double":
            ok, detail = double_unimodal(p)
            out.append(ScanResult("double-unimodal", param, ok, detail))
        elif kind == "t1":
            seq = coefficient_grid(p.specialize(t=1))[0]
            peak = unimodal_peak(seq)
            detail = {"peak": peak, "sequence": seq}
            if peak is None:
                detail["violation"] = first_violation(seq)
            out.append(ScanResult("unimodal-t1", param, peak is not None, detail))
        elif kind == "strict":
            grid = coefficient_grid(p)
            seq = coefficient_grid(p.specialize(t=1))[0]
            t1 = strictness(seq)
            cols = [strictness([grid[k][N] for k in range(len(grid))])
                    for N in range(len(grid[0]))]
            rows = [strictness(row) for row in grid]
            detail = {
                "t1": t1,
                "q_columns_strict": all(c["strict"] for c in cols),
                "t_rows_strict": all(r["strict"] for r in rows),
                "non_strict_columns": [N for N, c in enumerate(cols) if not c["strict"]],
                "non_strict_rows": [k for k, r in enumerate(rows) if not r["strict"]],
            }
            holds = t1["strict"] and detail["q_columns_strict"]
            out.append(ScanResult("strict-unimodal", param, holds, detail))
        else:
            raise ValueError(f"unknown scan kind {kind!r}")
    return out


# ---------------------------------------------------------------------------
# the overpartition Prellberg-Stanton series


def _mul_trunc(a: List[int], b: List[int], K: int) -> List[int]:
    out = [0] * (K + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(K + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def prellberg_series(n: int, K: int = DEFAULT_PRELLBERG_TRUNC) -> List[int]:
    """Coefficients of (1-q)(-q^n;q)_n/(q^n;q)_n + q up to q^K."""
    series = [1] + [0] * K
    for j in range(n):
        e = n + j
        if e <= K:
            factor = [0] * (K + 1)
            factor[0] = 1
            factor[e] += 1
            series = _mul_trunc(series, factor, K)
    for j in range(n):
        e = n + j
        # multiply by 1/(1 - q^e) = sum_i q^(e i)
        for i in range(e, K + 1):
            series[i] += series[i - e]
    one_minus_q = [1, -1] + [0] * (K - 1) if K >= 1 else [1]
    series = _mul_trunc(series, one_minus_q, K)
    if K >= 1:
        series[1] += 1
    return series


def scan_prellberg(max_n: int, K: int = DEFAULT_PRELLBERG_TRUNC) -> List[ScanResult]:
    out = []
    for n in range(1, max_n + 1):
        coeffs = prellberg_series(n, K)
        neg = next((i for i, c in enumerate(coeffs) if c < 0), None)
        detail = {"order": K, "first_negative": neg}
        if neg is not None:
            detail["coefficient"] = coeffs[neg]
        out.append(ScanResult("prellberg", {"n": n}, neg is None, detail))
    return out
