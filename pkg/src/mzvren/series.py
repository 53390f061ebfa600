"""Exact Laurent series and truncated multivariate power series over Q.

Scalars are :class:`fractions.Fraction` throughout.  A :class:`LaurentSeries`
carries the window ``[low, order)`` of exponents whose coefficients are known
exactly; ``order=None`` marks a finite Laurent polynomial known exactly in
every degree.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


class SeriesError(ArithmeticError):
    pass


class DivisionByZeroSeries(SeriesError, ZeroDivisionError):
    pass


class TruncationTooCoarse(SeriesError):
    pass


class PolePresent(SeriesError):
    pass


class NonzeroConstantTerm(SeriesError, ValueError):
    pass


class DimensionMismatch(SeriesError, ValueError):
    pass


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _min_order(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# ------------------------------------------------------------ LaurentSeries


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    low: int
    coeffs: tuple[Fraction, ...]
    order: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if self.order is not None:
            if self.order - self.low != len(self.coeffs):
                raise ValueError("coeffs must fill the window [low, order)")

    # constructors

    @classmethod
    def from_dict(cls, terms: Mapping[int, Fraction | int], order: int | None = None) -> LaurentSeries:
        keys = [k for k, v in terms.items() if v]
        if order is not None:
            keys = [k for k in keys if k < order]
            low = min(keys, default=order - 1)
            return cls(low, [terms.get(n, 0) for n in range(low, order)], order)
        if not keys:
            return cls.zero()
        low, high = min(keys), max(keys)
        return cls(low, [terms.get(n, 0) for n in range(low, high + 1)])

    @classmethod
    def zero(cls, order: int | None = None) -> LaurentSeries:
        if order is None:
            return cls(0, ())
        return cls(order - 1, (Fraction(0),), order)

    @classmethod
    def one(cls) -> LaurentSeries:
        return cls(0, (Fraction(1),))

    @classmethod
    def monomial(cls, n: int, c: Fraction | int = 1) -> LaurentSeries:
        return cls(n, (Fraction(c),))

    # access

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def high(self) -> int:
        """One past the last stored exponent."""
        return self.low + len(self.coeffs)

    def coeff(self, n: int) -> Fraction:
        if self.order is not None and n >= self.order:
            raise TruncationTooCoarse(f"coefficient of z^{n} unknown (order {self.order})")
        if self.low <= n < self.high:
            return self.coeffs[n - self.low]
        return Fraction(0)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeff(n)

    def items(self) -> Iterable[tuple[int, Fraction]]:
        for j, c in enumerate(self.coeffs):
            if c:
                yield self.low + j, c

    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero coefficient, None if all known ones vanish."""
        for n, _ in self.items():
            return n
        return None

    def strip(self) -> LaurentSeries:
        """Drop leading zeros (and trailing zeros of exact polynomials)."""
        cs = list(self.coeffs)
        low = self.low
        while cs and not cs[0]:
            cs.pop(0)
            low += 1
        if self.order is None:
            while cs and not cs[-1]:
                cs.pop()
            if not cs:
                return LaurentSeries.zero()
            return LaurentSeries(low, cs)
        if not cs:
            return LaurentSeries.zero(self.order)
        return LaurentSeries(low, cs, self.order)

    def truncate(self, order: int) -> LaurentSeries:
        if self.order is not None and order > self.order:
            raise TruncationTooCoarse(f"cannot extend order {self.order} to {order}")
        low = min(self.low, order - 1)
        return LaurentSeries(low, [self.coeff(n) if n >= self.low else 0 for n in range(low, order)], order)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(0, other)
        order = _min_order(self.order, other.order)
        low = min(self.low, other.low)
        high = max(self.high, other.high) if order is None else order
        terms = {}
        for n in range(low, high):
            c = Fraction(0)
            if self.low <= n < self.high:
                c += self.coeffs[n - self.low]
            if other.low <= n < other.high:
                c += other.coeffs[n - other.low]
            terms[n] = c
        return LaurentSeries.from_dict(terms, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.low, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Fraction | int) -> LaurentSeries:
        c = Fraction(c)
        return LaurentSeries(self.low, [c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(Fraction(1) / Fraction(other))
        return series_div(self, other)

    def derive(self) -> LaurentSeries:
        return series_derive(self)

    # comparison on the common window

    def agrees_with(self, other: LaurentSeries) -> bool:
        order = _min_order(self.order, other.order)
        low = min(self.low, other.low)
        high = max(self.high, other.high) if order is None else order
        return all(self._raw(n) == other._raw(n) for n in range(low, high))

    def _raw(self, n: int) -> Fraction:
        if self.low <= n < self.high:
            return self.coeffs[n - self.low]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries.monomial(0, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def __repr__(self):
        parts = [f"{format_rational(c)}*z^{n}" for n, c in self.items()]
        body = " + ".join(parts) if parts else "0"
        tail = "" if self.order is None else f" + O(z^{self.order})"
        return f"LaurentSeries({body}{tail})"


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Product, exact below min(a.order + b.low, b.order + a.low)."""
    a, b = a.strip(), b.strip()
    if (a.order is None and a.valuation() is None) or (b.order is None and b.valuation() is None):
        return LaurentSeries.zero()
    order = None
    if a.order is not None:
        order = a.order + b.low
    if b.order is not None:
        order = _min_order(order, b.order + a.low)
    low = a.low + b.low
    high = a.high + b.high - 1 if order is None else order
    if high <= low:
        return LaurentSeries.zero(order)
    out = [Fraction(0)] * (high - low)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            k = i + j
            if k >= len(out):
                break
            out[k] += x * y
    return LaurentSeries(low, out, order) if order is not None else LaurentSeries(low, out).strip()


def series_div(a: LaurentSeries, b: LaurentSeries, order: int | None = None) -> LaurentSeries:
    """Quotient q with q*b = a on the common window.

    When both inputs are exact polynomials the quotient is generally an
    infinite series, so ``order`` must then be supplied (unless b is a monomial).
    """
    b = b.strip()
    v = b.valuation()
    if v is None:
        raise DivisionByZeroSeries("all known coefficients of the divisor vanish")
    a = a.strip()
    lead = b.coeffs[0]
    q_low = a.low - b.low
    rel = None
    if a.order is not None:
        rel = a.order - a.low
    if b.order is not None:
        rel = b.order - b.low if rel is None else min(rel, b.order - b.low)
    q_order = None if rel is None else q_low + rel
    if order is not None:
        q_order = order if q_order is None else min(order, q_order)
    if q_order is None:
        if len(b.coeffs) == 1:
            return LaurentSeries(q_low, [c / lead for c in a.coeffs]).strip()
        raise TruncationTooCoarse("exact division by a non-monomial needs an explicit order")
    if a.valuation() is None:
        return LaurentSeries.zero(q_order)
    n = q_order - q_low
    if n <= 0:
        return LaurentSeries.zero(q_order)
    rem = [a._raw(a.low + i) for i in range(n)]
    out = []
    for i in range(n):
        c = rem[i] / lead
        out.append(c)
        if c:
            for j in range(1, min(len(b.coeffs), n - i)):
                rem[i + j] -= c * b.coeffs[j]
    return LaurentSeries(q_low, out, q_order)


def series_derive(a: LaurentSeries) -> LaurentSeries:
    terms = {n - 1: n * c for n, c in a.items()}
    return LaurentSeries.from_dict(terms, None if a.order is None else a.order - 1)


def pi_minus(a: LaurentSeries) -> LaurentSeries:
    """Pole part: the exact finite sum of the strictly negative exponents."""
    if a.order is not None and a.order < 0:
        raise TruncationTooCoarse(f"pole part unknown: order {a.order} < 0")
    return LaurentSeries.from_dict({n: c for n, c in a.items() if n < 0})


def pi_plus(a: LaurentSeries) -> LaurentSeries:
    return a - pi_minus(a)


def constant_term(a: LaurentSeries) -> Fraction:
    if a.order is not None and a.order < 1:
        raise TruncationTooCoarse(f"constant term unknown: order {a.order} < 1")
    for n, c in a.items():
        if n < 0:
            raise PolePresent(f"nonzero coefficient {c} at z^{n}")
    return a.coeff(0)


def exp_series(order: int) -> LaurentSeries:
    """e^z known through z^(order-1)."""
    return LaurentSeries(0, [Fraction(1, math.factorial(n)) for n in range(order)], order)


# -------------------------------------------------------------- MultiSeries


class MultiSeries:
    """Power series in t_1..t_r truncated at total degree D (terms of degree > D dropped)."""

    __slots__ = ("num_vars", "max_total_degree", "terms")

    def __init__(self, num_vars: int, max_total_degree: int, terms: Mapping[tuple[int, ...], Fraction | int] = ()):
        if num_vars < 1 or max_total_degree < 0:
            raise ValueError("need num_vars >= 1 and max_total_degree >= 0")
        self.num_vars = num_vars
        self.max_total_degree = max_total_degree
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(e)
            if len(e) != num_vars:
                raise DimensionMismatch(f"exponent {e} has wrong length for {num_vars} variables")
            if c and sum(e) <= max_total_degree:
                clean[e] = Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, num_vars: int, D: int, c: Fraction | int = 1) -> MultiSeries:
        return cls(num_vars, D, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, D: int, index: int) -> MultiSeries:
        """t_index, 1-based."""
        e = [0] * num_vars
        e[index - 1] = 1
        return cls(num_vars, D, {tuple(e): 1})

    @classmethod
    def linear(cls, num_vars: int, D: int, coeffs: Mapping[int, int | Fraction]) -> MultiSeries:
        """sum a_n t_n with 1-based n."""
        out = {}
        for n, a in coeffs.items():
            e = [0] * num_vars
            e[n - 1] = 1
            out[tuple(e)] = a
        return cls(num_vars, D, out)

    def _check(self, other: MultiSeries):
        if (self.num_vars, self.max_total_degree) != (other.num_vars, other.max_total_degree):
            raise DimensionMismatch(
                f"({self.num_vars}, {self.max_total_degree}) vs ({other.num_vars}, {other.max_total_degree})"
            )

    def coeff(self, exponents: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def constant_coeff(self) -> Fraction:
        return self.coeff((0,) * self.num_vars)

    def __add__(self, other):
        if not isinstance(other, MultiSeries):
            other = MultiSeries.constant(self.num_vars, self.max_total_degree, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiSeries(self.num_vars, self.max_total_degree, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiSeries(self.num_vars, self.max_total_degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> MultiSeries:
        c = Fraction(c)
        return MultiSeries(self.num_vars, self.max_total_degree, {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiSeries):
            return self.scale(other)
        self._check(other)
        D = self.max_total_degree
        out: dict[tuple[int, ...], Fraction] = {}
        right = sorted(other.terms.items(), key=lambda kv: sum(kv[0]))
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in right:
                if d1 + sum(e2) > D:
                    break
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiSeries(self.num_vars, D, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> MultiSeries:
        result = MultiSeries.constant(self.num_vars, self.max_total_degree)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (
            self.num_vars == other.num_vars
            and self.max_total_degree == other.max_total_degree
            and self.terms == other.terms
        )

    __hash__ = None

    def homogeneous(self, degree: int) -> dict[tuple[int, ...], Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == degree}

    def with_degree(self, D: int) -> MultiSeries:
        """Re-truncate at total degree D (only lowering is exact)."""
        if D > self.max_total_degree:
            raise TruncationTooCoarse(f"cannot raise degree {self.max_total_degree} to {D}")
        return MultiSeries(self.num_vars, D, self.terms)

    def __repr__(self):
        if not self.terms:
            return f"MultiSeries(0, r={self.num_vars}, D={self.max_total_degree})"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            mono = "*".join(f"t{i + 1}^{k}" if k > 1 else f"t{i + 1}" for i, k in enumerate(e) if k)
            c = format_rational(self.terms[e])
            parts.append(f"{c}*{mono}" if mono else c)
        return f"MultiSeries({' + '.join(parts)}, D={self.max_total_degree})"


def multi_add(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a + b


def multi_mul(a: MultiSeries, b: MultiSeries) -> MultiSeries:
    return a * b


def multi_coeff(a: MultiSeries, exponents: Iterable[int]) -> Fraction:
    return a.coeff(exponents)


def exp_truncated(p: MultiSeries) -> MultiSeries:
    """sum_{n<=D} p^n / n!, requires p(0) = 0."""
    if p.constant_coeff():
        raise NonzeroConstantTerm("exp_truncated needs a series without constant term")
    result = MultiSeries.constant(p.num_vars, p.max_total_degree)
    power = result
    for n in range(1, p.max_total_degree + 1):
        power = power * p
        if not power.terms:
            break
        result = result + power.scale(Fraction(1, math.factorial(n)))
    return result


def multi_inverse(a: MultiSeries) -> MultiSeries:
    """1/a for a with nonzero constant term, via the geometric series in (1 - a/c)."""
    c = a.constant_coeff()
    if not c:
        raise DivisionByZeroSeries("series without constant term is not invertible")
    nil = MultiSeries.constant(a.num_vars, a.max_total_degree) - a.scale(1 / c)
    result = MultiSeries.constant(a.num_vars, a.max_total_degree)
    power = result
    for _ in range(a.max_total_degree):
        power = power * nil
        if not power.terms:
            break
        result = result + power
    return result.scale(1 / c)


def divide_by_linear(p: MultiSeries, ell: Mapping[int, int], D: int | None = None) -> MultiSeries:
    """Exact quotient p / l for a linear form l = sum a_n t_n that divides p.

    Each homogeneous piece is divided separately by synthetic division in the
    first variable with a nonzero coefficient.  The result is truncated at
    degree D (default ``p.max_total_degree - 1``).  Raises ValueError if l
    does not divide some homogeneous piece.
    """
    r = p.num_vars
    if D is None:
        D = p.max_total_degree - 1
    pivot = min(n for n, a in ell.items() if a)
    a0 = Fraction(ell[pivot])
    rest = {n - 1: Fraction(a) for n, a in ell.items() if a and n != pivot}
    piv = pivot - 1
    out: dict[tuple[int, ...], Fraction] = {}
    for deg in range(1, D + 2):
        piece = dict(p.homogeneous(deg))
        # peel off monomials with the highest pivot power first
        while piece:
            e = max(piece, key=lambda m: (m[piv], m))
            c = piece.pop(e)
            if not c:
                continue
            if e[piv] == 0:
                raise ValueError("linear form does not divide the series")
            q = list(e)
            q[piv] -= 1
            q = tuple(q)
            qc = c / a0
            out[q] = out.get(q, 0) + qc
            for n, a in rest.items():
                m = list(q)
                m[n] += 1
                m = tuple(m)
                piece[m] = piece.get(m, 0) - qc * a
                if not piece[m]:
                    del piece[m]
    if p.homogeneous(0):
        raise ValueError("linear form does not divide the series")
    return MultiSeries(r, D, out)


def compose_linear(f: MultiSeries, form: MultiSeries) -> MultiSeries:
    """f(form) for univariate f and a series ``form`` without constant term."""
    if f.num_vars != 1:
        raise DimensionMismatch("compose_linear expects a univariate outer series")
    if form.constant_coeff():
        raise NonzeroConstantTerm("inner series must vanish at the origin")
    D = form.max_total_degree
    result = MultiSeries(form.num_vars, D)
    power = MultiSeries.constant(form.num_vars, D)
    for n in range(min(D, f.max_total_degree) + 1):
        c = f.coeff((n,))
        if c:
            result = result + power.scale(c)
        power = power * form
    return result


def monomials(num_vars: int, max_total_degree: int) -> Iterable[tuple[int, ...]]:
    """All exponent vectors of total degree <= D, degree-then-lexicographic order."""
    for deg in range(max_total_degree + 1):
        for e in itertools.product(range(deg + 1), repeat=num_vars):
            if sum(e) == deg:
                yield e
