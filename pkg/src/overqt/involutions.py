"""Executable sign-reversing involution for the truncated theta identity and
the injection behind (q,t)-log-concavity, with exhaustive checkers."""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .algebra import ONE, ZERO, MPoly
from .combinatorics import (
    DurfeeDecomposition,
    Overpartition,
    conjugate,
    durfee,
    enumerate_overpartitions,
    reconstruct,
)
from .errors import IllFormedImage, InvalidOverpartition, NotInO
from .overbinomial import bracket

# ---------------------------------------------------------------------------
# the involution on O_n


@dataclass(frozen=True)
class SignedOverpartition:
    """An overpartition with exactly k parts (zeros included), all <= n-k."""

    lam: Overpartition
    n: int

    @property
    def k(self) -> int:
        return self.lam.num_parts

    @property
    def sign(self) -> int:
        return -1 if self.k % 2 else 1

    def is_member(self) -> bool:
        return 0 <= self.k <= self.n and self.lam.largest <= self.n - self.k

    def to_json_obj(self) -> dict:
        return {"lambda": self.lam.to_text(), "k": self.k, "n": self.n, "sign": self.sign}


def o_enumerate(n: int) -> Iterator[SignedOverpartition]:
    """All of O_n, k = 0..n in order."""
    for k in range(n + 1):
        for lam in enumerate_overpartitions(n - k, k):
            yield SignedOverpartition(lam.with_zeros(k - len(lam.parts)), n)


@dataclass
class PhiTrace:
    input: SignedOverpartition
    output: SignedOverpartition
    case_label: str
    internals: dict = field(default_factory=dict)

    def to_json_obj(self) -> dict:
        return {
            "input": self.input.to_json_obj(),
            "output": self.output.to_json_obj(),
            "case": self.case_label,
            "internals": self.internals,
        }


def _smallest(parts: Tuple[Tuple[int, bool], ...]):
    """(index, value, overlined) of the last entry, or None."""
    if not parts:
        return None
    v, o = parts[-1]
    return len(parts) - 1, v, o


def _second_smallest(parts) -> int:
    return parts[-2][0] if len(parts) >= 2 else 0


def classify(pi: Overpartition, mu: Overpartition) -> str:
    """Case label of the involution for the pair (pi, mu)."""
    sp = pi.parts[-1][0] if pi.parts else 0
    sm = mu.parts[-1][0] if mu.parts else 0
    if sp == 0 and sm == 0:
        return "1"
    # an absent smallest part compares as larger than anything present
    if sm and (sp == 0 or sp > sm):
        return "2"
    chi_p = pi.parts[-1][1]
    s2p = _second_smallest(pi.parts)
    if sm == 0 or sp < sm:
        return "3.1" if (s2p == sp and not chi_p) else "3.2"
    chi_m = mu.parts[-1][1]
    if chi_m and chi_p:
        return "4.1"
    if chi_m:
        return "4.2"
    if chi_p:
        return "4.3"
    return "4.4.1" if s2p == sp else "4.4.2"


def _move_mu_to_pi(pi, mu, unmark=False):
    _, v, o = _smallest(mu.parts)
    mu = mu.remove_at(len(mu.parts) - 1)
    if unmark:
        # both copies lose their marks; pi's overlined v is its last entry
        pi = pi.remove_at(len(pi.parts) - 1).insert(v, False)
        o = False
    return pi.insert(v, o), mu


def _move_pi_to_mu(pi, mu, mark_two=False):
    _, v, o = _smallest(pi.parts)
    pi = pi.remove_at(len(pi.parts) - 1)
    if mark_two:
        # the remaining copy of v becomes overlined, as does the moved one
        pi = pi.remove_at(len(pi.parts) - 1).insert(v, True)
        o = True
    return pi, mu.insert(v, o)


def phi5(x: SignedOverpartition) -> PhiTrace:
    """Apply the involution to one element of O_n."""
    if not x.is_member():
        raise NotInO(f"{x.lam} is not in O_{{{x.k},{x.n}}}", n=x.n)
    lam = x.lam
    dec = durfee(lam.positive())
    pi = Overpartition(dec.below.parts)
    zeros = lam.zeros
    mu = dec.right
    label = classify(pi, mu)

    if label == "1":
        new_pi, new_mu = pi, mu
    elif label == "2":
        new_pi, new_mu = _move_mu_to_pi(pi, mu)
    elif label == "4.1":
        new_pi, new_mu = _move_mu_to_pi(pi, mu, unmark=True)
    elif label == "4.2":
        new_pi, new_mu = _move_mu_to_pi(pi, mu)
    elif label in ("3.1", "4.4.1"):
        new_pi, new_mu = _move_pi_to_mu(pi, mu, mark_two=True)
    else:  # 3.2, 4.3, 4.4.2
        new_pi, new_mu = _move_pi_to_mu(pi, mu)

    out = reconstruct(DurfeeDecomposition(dec.d, new_mu, new_pi, 0, dec.corner))
    y = SignedOverpartition(out.with_zeros(zeros), x.n)
    if not y.is_member():
        raise IllFormedImage(f"phi5 sent {lam} outside O_n", case=label)

    def s(parts):
        return parts[-1][0] if parts else 0

    internals = {
        "d": dec.d,
        "corner": dec.corner,
        "pi": Overpartition(pi.parts, zeros).to_text(),
        "mu": mu.to_text(),
        "s_pi": s(pi.parts),
        "s_mu": s(mu.parts),
        "s2_pi": _second_smallest(pi.parts),
        "s2_mu": _second_smallest(mu.parts),
        "chi_pi": int(pi.parts[-1][1]) if pi.parts else None,
        "chi_mu": int(mu.parts[-1][1]) if mu.parts else None,
    }
    return PhiTrace(x, y, label, internals)


#: case of phi(x) allowed for each case of x, read off the involution proof
INVERSE_CASES = {
    "1": {"1"},
    "2": {"3.2", "4.3", "4.4.2"},
    "3.1": {"4.1"},
    "3.2": {"4.2", "2"},
    "4.1": {"4.4.1", "3.1"},
    "4.2": {"4.3", "3.2"},
    "4.3": {"4.2", "2"},
    "4.4.1": {"4.1"},
    "4.4.2": {"2"},
}


def is_square_fixed_point(x: SignedOverpartition) -> bool:
    """j x j square (bottom row possibly overlined) padded with zeros."""
    parts = x.lam.parts
    j = len(parts)
    if any(v != j for v, _ in parts):
        return False
    if any(o for _, o in parts[:-1]):
        return False
    return True


def truncated_theta(n: int) -> MPoly:
    """0 for odd n, sum_{|j|<=n/2} (-1)^j q^{j^2} for even n."""
    if n % 2:
        return ZERO
    return theta_sum(n // 2)


def theta_sum(bound: int) -> MPoly:
    """sum_{|j|<=bound} (-1)^j q^{j^2}."""
    terms = {(0, 0, 0): 1}
    for j in range(1, bound + 1):
        terms[(j * j, 0, 0)] = 2 * (-1) ** j
    return MPoly(terms)


@dataclass
class Phi5Report:
    n: int
    passed: bool = True
    size: int = 0
    fixed_points: int = 0
    case_counts: Dict[str, int] = field(default_factory=dict)
    signed_sum: Optional[MPoly] = None
    positive_signed_sum: Optional[MPoly] = None
    checks: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[dict] = None
    elapsed: float = 0.0

    def record(self, name: str, ok: bool, **witness) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            if self.passed:
                self.witness = dict(check=name, **witness)
            self.passed = False

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "size": self.size,
            "fixed_points": self.fixed_points,
            "case_counts": self.case_counts,
            "signed_sum": self.signed_sum.to_text() if self.signed_sum is not None else None,
            "checks": self.checks,
            "witness": self.witness,
            "elapsed": round(self.elapsed, 3),
        }


def phi5_verify(n: int) -> Phi5Report:
    """Involution, sign reversal, fixed points, signed sums, case table."""
    start = time.perf_counter()
    report = Phi5Report(n)
    cases: Counter = Counter()
    signed: Dict[Tuple[int, int, int], int] = {}
    fixed_by_j: Counter = Counter()
    for x in o_enumerate(n):
        report.size += 1
        tr = phi5(x)
        cases[tr.case_label] += 1
        y = tr.output
        back = phi5(y)
        report.record("involution", back.output == x, input=x.lam.to_text(), k=x.k)
        report.record("case-table", back.case_label in INVERSE_CASES[tr.case_label],
                      input=x.lam.to_text(), case=tr.case_label, back=back.case_label)
        report.record("weight", y.lam.weight == x.lam.weight, input=x.lam.to_text())
        if y == x:
            report.fixed_points += 1
            report.record("fixed-squares", tr.case_label == "1" and is_square_fixed_point(x),
                          input=x.lam.to_text(), k=x.k)
            fixed_by_j[(len(x.lam.parts), x.lam.overline_count, x.k)] += 1
        else:
            report.record("sign-reversal", y.sign == -x.sign, input=x.lam.to_text())
        key = (x.lam.weight, 0, 0)
        signed[key] = signed.get(key, 0) + x.sign

    # one fixed point per admissible k for each square shape
    expected = Counter()
    for j in range(n // 2 + 1):
        for k in range(j, n - j + 1):
            expected[(j, 0, k)] += 1
            if j:
                expected[(j, 1, k)] += 1
    report.record("fixed-squares", fixed_by_j == expected)

    report.signed_sum = MPoly(signed)
    report.record("signed-sum", report.signed_sum == truncated_theta(n))
    alt = ZERO
    for k in range(n + 1):
        term = bracket(n, k).specialize(t=1)
        alt = alt + (term if k % 2 == 0 else -term)
    report.record("signed-sum-vs-brackets", report.signed_sum == alt)

    # zero-free elements of O_{n+1}: the exactly-positive-parts variant
    if n >= 1:
        pos: Dict[Tuple[int, int, int], int] = {}
        for x in o_enumerate(n + 1):
            if x.lam.zeros:
                continue
            y = phi5(x).output
            report.record("positive-closed", y.lam.zeros == 0, input=x.lam.to_text())
            key = (x.lam.weight, 0, 0)
            pos[key] = pos.get(key, 0) + x.sign
        report.positive_signed_sum = MPoly(pos)
        lhs = ONE
        for k in range(1, n + 1):
            term = (bracket(n, k) + bracket(n - 1, k - 1)).specialize(t=1).shift(q=k)
            lhs = lhs + (term if k % 2 == 0 else -term)
        report.record("positive-variant", report.positive_signed_sum == lhs)
        report.record("positive-variant-theta",
                      report.positive_signed_sum == theta_sum((n + 1) // 2))

    report.case_counts = dict(sorted(cases.items()))
    report.elapsed = time.perf_counter() - start
    return report


# ---------------------------------------------------------------------------
# maps on pairs of overpartitions

Pair = Tuple[Overpartition, Overpartition]


def _check_pair(pair: Pair) -> None:
    for lam in pair:
        if lam.zeros:
            raise InvalidOverpartition("pair maps act on overpartitions without zero parts")


def split_index(lam: Overpartition, mu: Overpartition, shift: int) -> int:
    """Largest i with lam_i - mu_{i+1} >= shift (+1 when lam_i is overlined);
    0 if there is none."""
    best = 0
    mvals = mu.values
    for i, (v, o) in enumerate(lam.parts, start=1):
        nxt = mvals[i] if i < len(mvals) else 0
        if v - nxt >= shift + (1 if o else 0):
            best = i
    return best


def map_A(pair: Pair, k: int, l: int) -> Pair:
    """Swap the first I parts of the pair, shifting them by l-k+1."""
    _check_pair(pair)
    lam, mu = pair
    s = l - k + 1
    I = split_index(lam, mu, s)
    mu_parts = list(mu.parts) + [(0, False)] * max(0, I - len(mu.parts))
    gamma = [(v + s, o) for v, o in mu_parts[:I]] + list(lam.parts[I:])
    tau = [(v - s, o) for v, o in lam.parts[:I]] + list(mu_parts[I:])
    try:
        return (Overpartition(tuple(gamma)),
                Overpartition(tuple((v, o) for v, o in tau if v > 0)))
    except InvalidOverpartition as exc:
        raise IllFormedImage(f"A produced an invalid overpartition: {exc}") from exc


def map_S(pair: Pair) -> Pair:
    return pair[1], pair[0]


def map_C(pair: Pair) -> Pair:
    return conjugate(pair[0]), conjugate(pair[1])


def map_L(pair: Pair, k: int, l: int) -> Pair:
    """S . C . A . C . S"""
    return map_S(map_C(map_A(map_C(map_S(pair)), k, l)))


def phi6(pair: Pair, k: int, l: int) -> Pair:
    return map_L(map_A(pair, k, l), k, l)


def phi6_chain(pair: Pair, k: int, l: int) -> List[Tuple[str, Pair]]:
    """Every intermediate pair of L . A, labelled by the map just applied."""
    steps = [("A", lambda p: map_A(p, k, l)), ("S", map_S), ("C", map_C),
             ("A", lambda p: map_A(p, k, l)), ("C", map_C), ("S", map_S)]
    out = []
    for name, f in steps:
        pair = f(pair)
        out.append((name, pair))
    return out


def random_overpartition(rng: random.Random, max_part: int, max_count: int) -> Overpartition:
    count = rng.randint(0, max_count)
    vals = sorted((rng.randint(1, max_part) for _ in range(count)), reverse=True) if max_part else []
    parts = []
    for i, v in enumerate(vals):
        last = i + 1 == len(vals) or vals[i + 1] != v
        parts.append((v, last and rng.random() < 0.5))
    return Overpartition(tuple(parts))


@dataclass
class Phi6Report:
    n: int
    k: int
    l: int
    passed: bool = True
    domain_size: int = 0
    checks: Dict[str, bool] = field(default_factory=dict)
    witness: Optional[dict] = None
    elapsed: float = 0.0

    def record(self, name: str, ok: bool, **witness) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            if self.passed:
                self.witness = dict(check=name, **witness)
            self.passed = False

    def to_json_obj(self) -> dict:
        return {
            "n": self.n, "k": self.k, "l": self.l, "passed": self.passed,
            "domain_size": self.domain_size, "checks": self.checks,
            "witness": self.witness, "elapsed": round(self.elapsed, 3),
        }


def _pair_text(pair: Pair) -> str:
    return f"({pair[0].to_text()}) | ({pair[1].to_text()})"


def phi6_verify(n: int, k: int, l: int, samples: int = 200, seed: int = 0) -> Phi6Report:
    """Exhaustive injectivity/containment check of L . A on
    P(n-k+1, k-1) x P(n-l-1, l+1), plus randomized involution checks."""
    if not (0 < k <= l < n):
        from .errors import BadIndices
        raise BadIndices(f"need 0 < k <= l < n, got n={n} k={k} l={l}")
    start = time.perf_counter()
    report = Phi6Report(n, k, l)
    seen = {}
    left = list(enumerate_overpartitions(n - k + 1, k - 1))
    right = list(enumerate_overpartitions(n - l - 1, l + 1))
    for lam in left:
        for mu in right:
            report.domain_size += 1
            pair = (lam, mu)
            mid = map_A(pair, k, l)
            report.record("A-containment",
                          mid[0].fits(n - k, k - 1) and mid[1].fits(n - l, l + 1),
                          pair=_pair_text(pair))
            img = map_L(mid, k, l)
            report.record("codomain", img[0].fits(n - k, k) and img[1].fits(n - l, l),
                          pair=_pair_text(pair))
            report.record("weight", img[0].weight + img[1].weight == lam.weight + mu.weight,
                          pair=_pair_text(pair))
            report.record("overlines",
                          img[0].overline_count + img[1].overline_count
                          == lam.overline_count + mu.overline_count,
                          pair=_pair_text(pair))
            if img in seen:
                report.record("injective", False, pair=_pair_text(pair),
                              other=_pair_text(seen[img]))
            seen[img] = pair
            report.record("injective", True)

    rng = random.Random(seed)
    bound = n + 2
    for _ in range(samples):
        pair = (random_overpartition(rng, bound, bound), random_overpartition(rng, bound, bound))
        a = map_A(pair, k, l)
        report.record("A-involution", map_A(a, k, l) == pair, pair=_pair_text(pair))
        s = l - k + 1
        report.record("A-same-I", split_index(*a, s) == split_index(*pair, s),
                      pair=_pair_text(pair))
        lp = map_L(pair, k, l)
        report.record("L-involution", map_L(lp, k, l) == pair, pair=_pair_text(pair))
    report.elapsed = time.perf_counter() - start
    return report
