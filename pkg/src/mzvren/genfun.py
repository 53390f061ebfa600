"""Closed-form and recurrence routes to zeta_EMS, and the symbolic expansion over surjections."""
from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .quasishuffle import (
    ElementQS,
    Letter,
    iterated_product,
    ordered_bell,
    stuffle_identity_check,
    surjections,
    z_word,
    ztilde_coefficient,
    ztilde_terms,
)
from .series import (
    MultiSeries,
    compose_linear,
    divide_by_linear,
    exp_truncated,
    monomials,
    multi_inverse,
)

# ----------------------------------------------------------------- Bernoulli


class BernoulliCache:
    """B_0, B_1, ... with B_1 = +1/2, so that zeta(-k) = -B_{k+1}/(k+1) gives zeta(0) = -1/2."""

    def __init__(self):
        self.values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be nonnegative")
        with self._lock:
            # sum_{j<=m} C(m+1, j) B_j = 0 yields B_1 = -1/2; the sign of B_1 is flipped on read
            raw = self.values
            while len(raw) <= n:
                m = len(raw)
                raw.append(-sum(math.comb(m + 1, j) * raw[j] for j in range(m)) / (m + 1))
            return -raw[1] if n == 1 else raw[n]


bernoulli = BernoulliCache()


def riemann_zeta_negative(k: int) -> Fraction:
    """zeta(-k) for k >= 0."""
    return -bernoulli(k + 1) / (k + 1)


# ------------------------------------------------- coefficient convention


def value_from_coefficient(coeff: Fraction, ks: Sequence[int]) -> Fraction:
    """zeta(-k1..-kr) from the coefficient of t^k in sum (-t)^k/k! zeta(-k)."""
    scale = (-1) ** sum(ks)
    for k in ks:
        scale *= math.factorial(k)
    return coeff * scale


def coefficient_from_value(value: Fraction, ks: Sequence[int]) -> Fraction:
    return value / value_from_coefficient(Fraction(1), ks)


# ------------------------------------------------------- closed form route


def _suffix_form(i: int, r: int) -> dict[int, int]:
    """u_i = t_i + ... + t_r."""
    return {n: 1 for n in range(i, r + 1)}


def closed_factor(r: int, D: int, i: int) -> MultiSeries:
    """(u - (e^u - 1)) / (u (e^u - 1)) at u = u_i, expanded in t_1..t_r to degree D."""
    ell = _suffix_form(i, r)
    u = MultiSeries.linear(r, D + 2, ell)
    em1 = exp_truncated(u) - 1
    numer = u - em1
    denom = u * em1
    # both vanish to order two along u = 0; cancel u^2 before inverting
    numer = divide_by_linear(divide_by_linear(numer, ell), ell)
    denom = divide_by_linear(divide_by_linear(denom, ell), ell)
    return numer * multi_inverse(denom)


@lru_cache(maxsize=128)
def z_ems_closed(r: int, D: int) -> MultiSeries:
    """Z_EMS(t_1..t_r) = prod_i (u_i - (e^{u_i} - 1)) / (u_i (e^{u_i} - 1)) to total degree D."""
    if r < 1 or D < 0:
        raise ValueError("need r >= 1 and D >= 0")
    result = MultiSeries.constant(r, D)
    for i in range(1, r + 1):
        result = result * closed_factor(r, D, i)
    return result


def zeta_ems_closed(ks: Sequence[int]) -> Fraction:
    ks = tuple(ks)
    if not ks:
        raise ValueError("need depth r >= 1")
    series = z_ems_closed(len(ks), sum(ks))
    return value_from_coefficient(series.coeff(ks), ks)


# -------------------------------------------------------- recurrence route


@lru_cache(maxsize=None)
def _recurrence(ks: tuple[int, ...]) -> Fraction:
    if len(ks) == 1:
        return riemann_zeta_negative(ks[0])
    kr = ks[-1]
    head = ks[:-2]
    prev = ks[-2]
    total = Fraction(0)
    for i in range(kr + 1):
        j = kr - i
        total += math.comb(kr, i) * riemann_zeta_negative(i) * _recurrence(head + (prev + j,))
    return total


def zeta_ems_recurrence(ks: Sequence[int]) -> Fraction:
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("need depth r >= 1")
    if any(k < 0 for k in ks):
        raise ValueError("indices k_i must be nonnegative")
    return _recurrence(ks)


def generating_series(r: int, D: int, route) -> MultiSeries:
    """sum over |k| <= D of (-t)^k/k! * route(k) as a MultiSeries."""
    terms = {}
    for e in monomials(r, D):
        terms[e] = coefficient_from_value(route(e), e)
    return MultiSeries(r, D, terms)


def factorized_closed(r: int, D: int) -> MultiSeries:
    """prod_i Z_EMS(u_i) with the depth-1 series substituted at u_i = t_i + ... + t_r."""
    one_var = z_ems_closed(1, D)
    result = MultiSeries.constant(r, D)
    for i in range(1, r + 1):
        result = result * compose_linear(one_var, MultiSeries.linear(r, D, _suffix_form(i, r)))
    return result


# ------------------------------------------------ symbolic theorem expansion


@dataclass(frozen=True)
class TheoremExpansion:
    depth: int
    rows: tuple[tuple[Letter, ...], ...]

    def render_rows(self) -> list[str]:
        return ["Z*(" + ", ".join(letter.render() for letter in row) + ")" for row in self.rows]

    def __len__(self):
        return len(self.rows)


def u_block_letter(block: Sequence[int], r: int) -> Letter:
    """u_{sigma^{-1}(k)} = sum_{n in block} u_n with u_n = t_n + ... + t_r."""
    coeffs: dict[int, int] = {}
    for n in block:
        for m in range(n, r + 1):
            coeffs[m] = coeffs.get(m, 0) + 1
    return Letter.form(coeffs)


def theorem_rhs_symbolic(r: int) -> TheoremExpansion:
    """The Z_* argument tuples of the surjection expansion of Z_EMS(t_1..t_r)."""
    if r < 1:
        raise ValueError("need r >= 1")
    rows = []
    for i in range(r, 0, -1):
        for sigma in surjections(r, i):
            rows.append(tuple(u_block_letter(b, r) for b in sigma.blocks()))
    return TheoremExpansion(r, tuple(rows))


def theorem_word_counterexamples(r: int, D: int, first_only: bool = True) -> list[tuple[int, ...]]:
    """Check Z~(u_1) * ... * Z~(u_r) = sum over rows of Z~(row) at every t-monomial of degree <= D.

    This is the identity in H_{<=0}[[t]] that any harmonic character turns into
    the expansion of Z_EMS; it holds before a character is chosen.
    """
    singles = [(u_block_letter((i,), r),) for i in range(1, r + 1)]
    rows = theorem_rhs_symbolic(r).rows
    bad = []
    for kvec in monomials(r, D):
        lhs = ElementQS()
        for grades, c in ztilde_terms([s[0] for s in singles], kvec).items():
            lhs = lhs + iterated_product([z_word(-g) for g in grades]).scale(c)
        rhs = ElementQS()
        for row in rows:
            rhs = rhs + ztilde_coefficient(row, kvec)
        if lhs != rhs:
            bad.append(kvec)
            if first_only:
                break
    return bad


@dataclass
class TheoremReport:
    factorization: bool
    birkhoff_agreement: bool
    stuffle: bool
    word_identity: bool
    rows: int

    @property
    def ok(self) -> bool:
        return self.factorization and self.birkhoff_agreement and self.stuffle and self.word_identity


def theorem_report(r: int, D: int, table=None) -> TheoremReport:
    from .birkhoff import CharacterTable, zeta_ems

    closed = z_ems_closed(r, D)
    factorization = closed == factorized_closed(r, D)
    table = table or CharacterTable()
    agreement = True
    for e in monomials(r, min(D, 4)):
        if zeta_ems(e, table) != value_from_coefficient(closed.coeff(e), e):
            agreement = False
            break
    stuffle = stuffle_identity_check(r)
    word_identity = not theorem_word_counterexamples(r, min(D, 3))
    rows = len(theorem_rhs_symbolic(r))
    return TheoremReport(factorization, agreement, stuffle and rows == ordered_bell(r), word_identity, rows)


def verify_theorem(r: int, D: int) -> bool:
    """Composite check of the surjection expansion of Z_EMS at depth r, degree D."""
    if r < 1 or D < 0:
        raise ValueError("need r >= 1 and D >= 0")
    return theorem_report(r, D).ok


def all_tuples(depth: int, max_k: int):
    return itertools.product(range(max_k + 1), repeat=depth)
