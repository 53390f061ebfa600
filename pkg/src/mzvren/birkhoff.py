"""The character phi: H_0 -> Q[1/z, z]] and its Birkhoff decomposition by minimal subtraction."""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .series import (
    LaurentSeries,
    TruncationTooCoarse,
    constant_term,
    exp_series,
    pi_minus,
    series_derive,
    series_div,
)
from .words import HWord, coproduct0, reduced_coproduct0

Character = Callable[[HWord], LaurentSeries]


@lru_cache(maxsize=64)
def x_series(order: int) -> LaurentSeries:
    """x(z) = e^z / (1 - e^z) known below z^order."""
    n = order + 2
    e = exp_series(n)
    return series_div(e, 1 - e)


def _phi_raw(w: HWord, x_order: int) -> LaurentSeries:
    x = x_series(x_order)
    ks = w.exponents
    acc = x
    for k in reversed(ks[1:]):
        for _ in range(k):
            acc = series_derive(acc)
        acc = x * acc
    for _ in range(ks[0]):
        acc = series_derive(acc)
    return acc


def phi(w: HWord, order: int = 2) -> LaurentSeries:
    """phi(d^{k1}y...d^{kr}y) = d^{k1}(x d^{k2})...(x d^{kr})(x), known below z^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    if w.is_unit:
        return LaurentSeries.one()
    x_order = order + w.weight + w.depth
    while True:
        out = _phi_raw(w, x_order)
        if out.order >= order:
            return out.truncate(order)
        x_order += order - out.order


class CharacterTable:
    """Memoized phi, phi_-, phi_+ on basis words at a fixed order budget.

    ``order_budget`` is the order to which phi is expanded for words of the
    largest weight requested; lighter subwords get extra precision so that the
    pole parts of phi_- on the other tensor leg do not eat into z^0.
    """

    def __init__(self, order_budget: int = 2):
        self.order_budget = max(2, order_budget)
        self.pole_budget = 0
        self._phi: dict[tuple[HWord, int], LaurentSeries] = {}
        self._bar: dict[HWord, LaurentSeries] = {}
        self._minus: dict[HWord, LaurentSeries] = {}
        self._lock = threading.RLock()

    def phi(self, w: HWord, order: int | None = None) -> LaurentSeries:
        order = self.order_budget if order is None else order
        key = (w, order)
        with self._lock:
            hit = self._phi.get(key)
            if hit is None:
                hit = self._phi[key] = phi(w, order)
                self.pole_budget = max(self.pole_budget, w.weight + w.depth)
            return hit

    def bogoliubov(self, w: HWord) -> LaurentSeries:
        """phi-bar(w) = phi(w) + sum phi_-(w') phi(w'') over the reduced coproduct."""
        with self._lock:
            hit = self._bar.get(w)
            if hit is not None:
                return hit
            if w.is_unit:
                return LaurentSeries.one()
            acc = self.phi(w)
            for (left, right), c in reduced_coproduct0(w).items():
                m = self.phi_minus(left)
                if m.valuation() is None:
                    continue
                # the pole of phi_-(left) costs that many orders of phi(right)
                need = self.order_budget - m.valuation()
                acc = acc + (m * self.phi(right, need)).scale(c)
            self._bar[w] = acc
            return acc

    def phi_minus(self, w: HWord) -> LaurentSeries:
        with self._lock:
            hit = self._minus.get(w)
            if hit is None:
                if w.is_unit:
                    hit = LaurentSeries.one()
                else:
                    hit = -pi_minus(self.bogoliubov(w))
                self._minus[w] = hit
            return hit

    def phi_plus(self, w: HWord) -> LaurentSeries:
        if w.is_unit:
            return LaurentSeries.one()
        bar = self.bogoliubov(w)
        return bar - pi_minus(bar)

    def phi_minus_inverse(self, w: HWord) -> LaurentSeries:
        """Convolution inverse of phi_-, from (phi_-^{-1} * phi_-)(w) = e(w)."""
        with self._lock:
            cache = self.__dict__.setdefault("_minus_inv", {})
            hit = cache.get(w)
            if hit is not None:
                return hit
            if w.is_unit:
                hit = LaurentSeries.one()
            else:
                acc = LaurentSeries.zero()
                for (left, right), c in coproduct0(w).items():
                    if left == w:
                        continue
                    acc = acc - (self.phi_minus_inverse(left) * self.phi_minus(right)).scale(c)
                hit = acc
            cache[w] = hit
            return hit


def bogoliubov(w: HWord, table: CharacterTable | None = None) -> LaurentSeries:
    return (table or CharacterTable()).bogoliubov(w)


def phi_minus(w: HWord, table: CharacterTable | None = None) -> LaurentSeries:
    return (table or CharacterTable()).phi_minus(w)


def phi_plus(w: HWord, table: CharacterTable | None = None) -> LaurentSeries:
    return (table or CharacterTable()).phi_plus(w)


def convolve(f: Character, g: Character, w: HWord) -> LaurentSeries:
    """(f * g)(w) = sum over the full coproduct Delta_0(w) of f(w_S) g(w_{S-bar})."""
    acc = LaurentSeries.zero()
    for (left, right), c in coproduct0(w).items():
        acc = acc + (f(left) * g(right)).scale(c)
    return acc


def unit_character(w: HWord) -> LaurentSeries:
    return LaurentSeries.one() if w.is_unit else LaurentSeries.zero()


def index_word(ks: Sequence[int]) -> HWord:
    """The word fed to phi_+ for zeta_EMS(-k1, ..., -kr): d^{kr}y ... d^{k1}y."""
    return HWord(tuple(reversed(tuple(ks))))


def zeta_ems(ks: Sequence[int], table: CharacterTable | None = None) -> Fraction:
    """zeta_EMS(-k1, ..., -kr) as the constant term of phi_+(d^{kr}y...d^{k1}y)."""
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise ValueError("need depth r >= 1")
    if any(k < 0 for k in ks):
        raise ValueError("indices k_i must be nonnegative")
    if table is None:
        table = CharacterTable()
    w = index_word(ks)
    while True:
        try:
            return constant_term(table.phi_plus(w))
        except TruncationTooCoarse:
            table = CharacterTable(2 * table.order_budget)
