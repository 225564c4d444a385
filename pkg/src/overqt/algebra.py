"""Exact polynomial arithmetic in q, t and an auxiliary series variable u.

Polynomials are sparse maps ``(e_q, e_t, e_u) -> int``. Coefficients are
Python ints, so nothing ever overflows or rounds. Negative q-exponents are
only accepted on values built with ``laurent=True``.
"""
from __future__ import annotations

import json
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .errors import DivisionCheck, LaurentAtZero, NonUnitSeries

Exp = Tuple[int, int, int]


class MPoly:
    """Immutable sparse polynomial in q (Laurent optional), t and u."""

    __slots__ = ("_terms", "laurent", "_hash")

    def __init__(self, terms: Optional[Dict[Exp, int]] = None, laurent: bool = False):
        clean = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, int):
                    raise TypeError(f"coefficients must be int, got {type(c).__name__}")
                if c:
                    eq, et, eu = key
                    if et < 0 or eu < 0:
                        raise ValueError(f"negative t/u exponent in {key}")
                    if eq < 0 and not laurent:
                        raise ValueError(
                            f"negative q exponent {eq} on a non-Laurent MPoly"
                        )
                    clean[(eq, et, eu)] = c
        self._terms = clean
        self.laurent = laurent
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exp, int], laurent: bool) -> "MPoly":
        # caller guarantees terms are normalized
        p = object.__new__(cls)
        p._terms = terms
        p.laurent = laurent
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "MPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, c: int = 1, q: int = 0, t: int = 0, u: int = 0) -> "MPoly":
        return cls({(q, t, u): c}, laurent=q < 0)

    # -- container protocol ------------------------------------------------

    @property
    def terms(self) -> Dict[Exp, int]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Exp, int]]:
        """Terms in canonical (e_q, e_t, e_u) ascending order."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Tuple[Exp, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, q: int = 0, t: int = 0, u: int = 0) -> int:
        return self._terms.get((q, t, u), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(k == (0, 0, 0) for k in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0, 0, 0), 0)

    def degree(self, var: str = "q") -> int:
        """Largest exponent of ``var``; -1 for the zero polynomial."""
        idx = "qtu".index(var)
        return max((k[idx] for k in self._terms), default=-1)

    def min_degree(self, var: str = "q") -> int:
        idx = "qtu".index(var)
        return min((k[idx] for k in self._terms), default=0)

    # -- equality ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if isinstance(x, int):
            return MPoly.const(x)
        raise TypeError(f"cannot combine MPoly with {type(x).__name__}")

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MPoly._raw(out, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({k: -c for k, c in self._terms.items()}, self.laurent)

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MPoly":
        other = self._coerce(other)
        laurent = self.laurent or other.laurent
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly._raw({}, laurent)
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((bq, bt, bu), bc), = b.items()
            return MPoly._raw(
                {(eq + bq, et + bt, eu + bu): c * bc for (eq, et, eu), c in a.items()},
                laurent,
            )
        out: Dict[Exp, int] = {}
        get = out.get
        for (bq, bt, bu), bc in b.items():
            for (eq, et, eu), c in a.items():
                key = (eq + bq, et + bt, eu + bu)
                out[key] = get(key, 0) + c * bc
        return MPoly._raw({k: c for k, c in out.items() if c}, laurent)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = MPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        if self.laurent:
            result = MPoly._raw(result._terms, True)
        return result

    def shift(self, q: int = 0, t: int = 0, u: int = 0) -> "MPoly":
        """Multiply by the monomial q^q t^t u^u."""
        return self * MPoly.monomial(1, q, t, u)

    def as_polynomial(self) -> "MPoly":
        """Drop the Laurent flag; fails if a negative q-exponent is present."""
        return MPoly(self._terms, laurent=False)

    # -- substitution ------------------------------------------------------

    def specialize(self, q: Optional[int] = None, t: Optional[int] = None,
                   u: Optional[int] = None) -> Union["MPoly", int]:
        """Substitute integers for some of q, t, u.

        Returns an ``int`` when all three variables are assigned, otherwise
        an ``MPoly`` in the remaining variables.
        """
        if q is not None and self.laurent and any(k[0] < 0 for k in self._terms):
            if q == 0:
                raise LaurentAtZero("q=0 substituted into a Laurent polynomial")
            if q not in (1, -1):
                raise ValueError("negative q-powers at |q|>1 leave the integers")
        out: Dict[Exp, int] = {}
        for (eq, et, eu), c in self._terms.items():
            if q is not None:
                c *= q ** eq if eq >= 0 else q ** (-eq)  # q in {1,-1} here
                eq = 0
            if t is not None:
                c *= t ** et
                et = 0
            if u is not None:
                c *= u ** eu
                eu = 0
            key = (eq, et, eu)
            out[key] = out.get(key, 0) + c
        p = MPoly({k: c for k, c in out.items() if c}, laurent=self.laurent)
        if q is not None and t is not None and u is not None:
            return p.constant_term()
        return p

    def swap_qt(self) -> "MPoly":
        """Exchange the roles of q and t (needs e_q >= 0)."""
        return MPoly({(et, eq, eu): c for (eq, et, eu), c in self._terms.items()})

    def coefficient_in(self, var: str, e: int) -> "MPoly":
        """Coefficient of var^e, as an MPoly in the other variables."""
        idx = "qtu".index(var)
        out = {}
        for key, c in self._terms.items():
            if key[idx] == e:
                k = list(key)
                k[idx] = 0
                out[tuple(k)] = c
        return MPoly(out, laurent=self.laurent)

    # -- serialization -----------------------------------------------------

    def __repr__(self) -> str:
        return f"MPoly({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((eq, et, eu), c) in enumerate(self.items()):
            factors = []
            for name, e in (("t", et), ("u", eu), ("q", eq)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def to_latex(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for i, ((eq, et, eu), c) in enumerate(self.items()):
            factors = []
            for name, e in (("t", et), ("u", eu), ("q", eq)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{{{e}}}")
            mag = abs(c)
            body = "".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}{body}"
            sign = "-" if c < 0 else "+"
            pieces.append(("-" if c < 0 else "") + body if i == 0 else f" {sign} {body}")
        return "".join(pieces)

    def to_json_obj(self) -> List[dict]:
        return [{"q": eq, "t": et, "u": eu, "c": str(c)} for (eq, et, eu), c in self.items()]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "MPoly":
        terms: Dict[Exp, int] = {}
        for entry in obj:
            key = (int(entry["q"]), int(entry.get("t", 0)), int(entry.get("u", 0)))
            terms[key] = terms.get(key, 0) + int(entry["c"])
        return cls(terms, laurent=any(k[0] < 0 for k in terms))

    @classmethod
    def from_json(cls, text: str) -> "MPoly":
        return cls.from_json_obj(json.loads(text))


ZERO = MPoly()
ONE = MPoly.const(1)
Q = MPoly.monomial(1, q=1)
T = MPoly.monomial(1, t=1)
U = MPoly.monomial(1, u=1)


def qpow(e: int) -> MPoly:
    return MPoly.monomial(1, q=e)


def mp_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def mp_pow(a: MPoly, e: int) -> MPoly:
    return a ** e


def specialize(p: MPoly, **at: int) -> Union[MPoly, int]:
    return p.specialize(**at)


# ---------------------------------------------------------------------------
# q-Pochhammer symbols, Gaussian polynomials


def pochhammer(a: MPoly, k: int, sign: str = "minus") -> MPoly:
    """(a;q)_k with ``sign="minus"``, or (-a;q)_k with ``sign="plus"``.

    ``a`` must be a monomial; the result is prod_{j<k} (1 -/+ a q^j).
    """
    if not a.is_monomial():
        raise ValueError("pochhammer base must be a monomial")
    if sign not in ("minus", "plus"):
        raise ValueError(f"unknown sign {sign!r}")
    (key, c), = a.items()
    eq, et, eu = key
    if sign == "minus":
        c = -c
    result = MPoly._raw({(0, 0, 0): 1}, a.laurent)
    for j in range(k):
        factor = MPoly._raw({(0, 0, 0): 1}, a.laurent) + MPoly(
            {(eq + j, et, eu): c}, laurent=a.laurent
        )
        result = result * factor
    return result


def qpoch(k: int) -> MPoly:
    """(q;q)_k."""
    return _qpoch(k)


@lru_cache(maxsize=None)
def _qpoch(k: int) -> MPoly:
    if k <= 0:
        return ONE
    return _qpoch(k - 1) * (ONE - qpow(k))


@lru_cache(maxsize=None)
def gaussian(top: int, bottom: int) -> MPoly:
    """The Gaussian polynomial [top, bottom]_q via the q-Pascal recurrence."""
    if bottom < 0 or bottom > top:
        return ZERO
    if bottom == 0 or bottom == top:
        return ONE
    return gaussian(top - 1, bottom - 1) + gaussian(top - 1, bottom).shift(q=bottom)


def gaussian_by_division(top: int, bottom: int) -> MPoly:
    """Cross-check path: (q)_top / ((q)_bottom (q)_{top-bottom}) by exact division."""
    if bottom < 0 or bottom > top:
        return ZERO
    return divexact(qpoch(top), qpoch(bottom) * qpoch(top - bottom))


def qmultinomial(a: int, b: int, c: int) -> MPoly:
    """(q)_{a+b+c} / ((q)_a (q)_b (q)_c)."""
    if min(a, b, c) < 0:
        return ZERO
    return gaussian(a + b + c, a) * gaussian(b + c, b)


# ---------------------------------------------------------------------------
# exact division by a polynomial in q alone


def divexact(a: MPoly, b: MPoly) -> MPoly:
    """Return a/b, where b involves only q (Laurent allowed).

    Raises DivisionCheck if the division is not exact over the integers.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if any(et or eu for (_, et, eu) in b._terms):
        raise ValueError("divisor must be a polynomial in q only")
    laurent = a.laurent or b.laurent
    if a.is_zero():
        return MPoly._raw({}, laurent)

    b_lo = b.min_degree("q")
    b_coeffs = [0] * (b.degree("q") - b_lo + 1)
    for (eq, _, _), c in b._terms.items():
        b_coeffs[eq - b_lo] = c
    lead = b_coeffs[-1]
    db = len(b_coeffs) - 1

    a_lo = a.min_degree("q")
    rows: List[Dict[Tuple[int, int], int]] = [
        {} for _ in range(a.degree("q") - a_lo + 1)
    ]
    for (eq, et, eu), c in a._terms.items():
        rows[eq - a_lo][(et, eu)] = c

    quot: Dict[Exp, int] = {}
    for top in range(len(rows) - 1, db - 1, -1):
        row = rows[top]
        if not row:
            continue
        shift = top - db
        factor = {}
        for key, c in row.items():
            qq, r = divmod(c, lead)
            if r:
                raise DivisionCheck("non-integral quotient coefficient")
            factor[key] = qq
        for (et, eu), c in factor.items():
            quot[(shift + a_lo - b_lo, et, eu)] = c
        for i, bc in enumerate(b_coeffs):
            if not bc:
                continue
            target = rows[shift + i]
            for key, c in factor.items():
                v = target.get(key, 0) - c * bc
                if v:
                    target[key] = v
                else:
                    target.pop(key, None)
    if any(rows[i] for i in range(min(db, len(rows)))):
        raise DivisionCheck("nonzero remainder")
    out = MPoly(quot, laurent=True)
    if not laurent and out.min_degree("q") >= 0:
        out = out.as_polynomial()
    return out


# ---------------------------------------------------------------------------
# rational functions


class RationalMPoly:
    """A quotient num/den, never reduced. Equality is by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = MPoly._coerce(num)
        den = MPoly._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("RationalMPoly with zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(x) -> "RationalMPoly":
        if isinstance(x, RationalMPoly):
            return x
        return RationalMPoly(x)

    def __add__(self, other) -> "RationalMPoly":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalMPoly(self.num + other.num, self.den)
        return RationalMPoly(self.num * other.den + other.num * self.den,
                             self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalMPoly":
        return RationalMPoly(-self.num, self.den)

    def __sub__(self, other) -> "RationalMPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "RationalMPoly":
        other = self._coerce(other)
        return RationalMPoly(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalMPoly":
        other = self._coerce(other)
        return RationalMPoly(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, MPoly)):
            other = RationalMPoly(other)
        if not isinstance(other, RationalMPoly):
            return NotImplemented
        return rat_eq(self, other)

    __hash__ = None  # equality is not structural

    def __repr__(self) -> str:
        return f"RationalMPoly(({self.num.to_text()}) / ({self.den.to_text()}))"


def rat_eq(x: RationalMPoly, y: RationalMPoly) -> bool:
    return x.num * y.den == y.num * x.den


# ---------------------------------------------------------------------------
# power series in u, truncated at u^{order}


class USeries:
    """Power series in u with MPoly(q, t) coefficients, exact mod u^(order+1)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable[MPoly], order: int):
        coeffs = [MPoly._coerce(c) for c in coeffs][: order + 1]
        for c in coeffs:
            if c.degree("u") > 0:
                raise ValueError("USeries coefficients may not contain u")
        coeffs += [ZERO] * (order + 1 - len(coeffs))
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def from_poly(cls, p: MPoly, order: int) -> "USeries":
        coeffs = [dict() for _ in range(order + 1)]
        for (eq, et, eu), c in p._terms.items():
            if eu <= order:
                coeffs[eu][(eq, et, 0)] = c
        return cls([MPoly(c, laurent=p.laurent) for c in coeffs], order)

    @classmethod
    def one(cls, order: int) -> "USeries":
        return cls([ONE], order)

    def _check(self, other: "USeries") -> None:
        if self.order != other.order:
            raise ValueError("USeries truncation orders differ")

    def __add__(self, other: "USeries") -> "USeries":
        self._check(other)
        return USeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __sub__(self, other: "USeries") -> "USeries":
        self._check(other)
        return USeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __mul__(self, other) -> "USeries":
        if isinstance(other, MPoly):
            other = USeries.from_poly(other, self.order)
        self._check(other)
        K = self.order
        out = [ZERO] * (K + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(K + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return USeries(out, K)

    def invert(self) -> "USeries":
        if self.coeffs[0] != ONE:
            raise NonUnitSeries("constant term must be 1 to invert")
        K = self.order
        inv = [ONE] + [ZERO] * K
        for n in range(1, K + 1):
            acc = ZERO
            for i in range(1, n + 1):
                if not self.coeffs[i].is_zero():
                    acc = acc + self.coeffs[i] * inv[n - i]
            inv[n] = -acc
        return USeries(inv, K)

    def __eq__(self, other) -> bool:
        if not isinstance(other, USeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None

    def to_poly(self) -> MPoly:
        out: Dict[Exp, int] = {}
        for i, c in enumerate(self.coeffs):
            for (eq, et, _), v in c._terms.items():
                out[(eq, et, i)] = v
        return MPoly(out, laurent=any(c.laurent for c in self.coeffs))

    def __repr__(self) -> str:
        return f"USeries({self.to_poly().to_text()} + O(u^{self.order + 1}))"


def useries_ops(a: USeries, b: USeries, op: str) -> USeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def useries_invert(a: USeries) -> USeries:
    return a.invert()


def useries_from_poly(p: MPoly, order: int) -> USeries:
    return USeries.from_poly(p, order)
