"""Words over {d, y}, the shuffle_0 product and the coproduct Delta_0.

Basis words d^{k1} y ... d^{kr} y are encoded by their exponent tuple
``(k1, ..., kr)`` (:class:`HWord`); raw letter words are plain strings over
``"dy"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _accel
from .combination import Combination


class UnitWord(ValueError):
    """Raised where the empty word is not a valid argument."""


@dataclass(frozen=True, order=True)
class HWord:
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if any(k < 0 for k in exps):
            raise ValueError(f"negative exponent in {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def of(cls, *ks: int) -> HWord:
        return cls(tuple(ks))

    @classmethod
    def unit(cls) -> HWord:
        return cls(())

    @classmethod
    def from_letters(cls, letters: str) -> HWord:
        if letters and not letters.endswith("y"):
            raise ValueError(f"{letters!r} does not end in y")
        exps, run = [], 0
        for ch in letters:
            if ch == "d":
                run += 1
            elif ch == "y":
                exps.append(run)
                run = 0
            else:
                raise ValueError(f"bad letter {ch!r}")
        return cls(tuple(exps))

    @property
    def letters(self) -> str:
        return "".join("d" * k + "y" for k in self.exponents)

    @property
    def depth(self) -> int:
        return len(self.exponents)

    @property
    def weight(self) -> int:
        return len(self.exponents) + sum(self.exponents)

    @property
    def is_unit(self) -> bool:
        return not self.exponents

    def render(self) -> str:
        if self.is_unit:
            return "1"
        return " ".join((f"d^{k} y" if k > 1 else "d y" if k == 1 else "y") for k in self.exponents)

    def __repr__(self):
        return f"HWord{self.exponents}"


def words_of_weight(n: int) -> list[HWord]:
    """All basis words of weight exactly n (n >= 1), i.e. compositions of n."""
    if n == 0:
        return [HWord.unit()]
    out = []

    def rec(rem, acc):
        if rem == 0:
            out.append(HWord(tuple(acc)))
            return
        for part in range(1, rem + 1):
            rec(rem - part, acc + [part - 1])

    rec(n, [])
    return sorted(out)


def words_up_to_weight(n: int, include_unit: bool = False) -> list[HWord]:
    out = [HWord.unit()] if include_unit else []
    for w in range(1, n + 1):
        out.extend(words_of_weight(w))
    return out


class WordSum(Combination):
    """Q-linear combination of letter words (str) or basis words (HWord)."""

    def to_basis(self) -> WordSum:
        """Project letter words onto H_0: words ending in d are dropped."""
        out = {}
        for w, c in self.items():
            if isinstance(w, HWord):
                out[w] = out.get(w, 0) + c
            elif w == "" or w.endswith("y"):
                hw = HWord.from_letters(w)
                out[hw] = out.get(hw, 0) + c
        return WordSum(out)


class TensorSum(Combination):
    """Q-linear combination of ordered pairs (left, right)."""

    def swapped(self) -> TensorSum:
        return TensorSum({(b, a): c for (a, b), c in self.items()})

    def render(self) -> str:
        if not self:
            return "0"
        parts = []
        for (a, b), c in sorted(self.items()):
            coef = "" if c == 1 else f"{c}*"
            parts.append(f"{coef}({a.render()} ⊗ {b.render()})")
        return " + ".join(parts)


# ------------------------------------------------------------------ shuffle_0


@lru_cache(maxsize=None)
def _shuffle0(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict[str, int] = {}
    if u[0] == "y":
        for w, c in _shuffle0(u[1:], v):
            acc["y" + w] = acc.get("y" + w, 0) + c
    elif v[0] == "y":
        for w, c in _shuffle0(u, v[1:]):
            acc["y" + w] = acc.get("y" + w, 0) + c
    else:
        # du ш0 dv = d(u ш0 dv) - u ш0 d^2 v
        for w, c in _shuffle0(u[1:], v):
            acc["d" + w] = acc.get("d" + w, 0) + c
        for w, c in _shuffle0(u[1:], "d" + v):
            acc[w] = acc.get(w, 0) - c
    return tuple((w, c) for w, c in acc.items() if c)


def shuffle0(u: str | HWord, v: str | HWord) -> WordSum:
    """The shuffle_0 product of two letter words, as a WordSum of letter words.

    A leading y on either factor is pulled out first (on ``u`` when both start
    with y).
    """
    if isinstance(u, HWord):
        u = u.letters
    if isinstance(v, HWord):
        v = v.letters
    return WordSum(_shuffle0(u, v))


# ---------------------------------------------------------------- coproduct


def _ybits(w: HWord) -> np.ndarray:
    return np.fromiter((ch == "y" for ch in w.letters), dtype=np.int64, count=w.weight)


def _subword(letters: str, mask: int) -> str:
    return "".join(ch for i, ch in enumerate(letters) if (mask >> i) & 1)


def admissible_subsets(w: HWord) -> list[frozenset[int]]:
    """Admissible S subset of [wt(w)] (1-based positions), in increasing mask order."""
    if w.is_unit:
        raise UnitWord("admissible subsets need a nonempty word")
    masks = _accel.admissible_masks(_ybits(w))
    n = w.weight
    return [frozenset(i + 1 for i in range(n) if (int(m) >> i) & 1) for m in masks]


@lru_cache(maxsize=None)
def _coproduct0(w: HWord) -> TensorSum:
    if w.is_unit:
        return TensorSum({(w, w): 1})
    letters = w.letters
    full = (1 << w.weight) - 1
    acc: dict[tuple[HWord, HWord], int] = {}
    for m in _accel.admissible_masks(_ybits(w)):
        m = int(m)
        key = (HWord.from_letters(_subword(letters, m)), HWord.from_letters(_subword(letters, full ^ m)))
        acc[key] = acc.get(key, 0) + 1
    return TensorSum(acc)


def coproduct0(w: HWord) -> TensorSum:
    """Delta_0(w) = sum over admissible S of w_S (x) w_{S-bar}."""
    return _coproduct0(w)


@lru_cache(maxsize=None)
def _reduced(w: HWord) -> TensorSum:
    one = HWord.unit()
    return coproduct0(w) - TensorSum({(w, one): 1, (one, w): 1})


def reduced_coproduct0(w: HWord) -> TensorSum:
    if w.is_unit:
        raise UnitWord("reduced coproduct is defined on non-unit words")
    return _reduced(w)


def apply_left(op, t: TensorSum) -> TensorSum:
    """(op (x) id) on a TensorSum whose op maps a word to a TensorSum; returns triples."""
    out = {}
    for (a, b), c in t.items():
        for (a1, a2), c2 in op(a).items():
            out[(a1, a2, b)] = out.get((a1, a2, b), 0) + c * c2
    return TensorSum(out)


def apply_right(op, t: TensorSum) -> TensorSum:
    out = {}
    for (a, b), c in t.items():
        for (b1, b2), c2 in op(b).items():
            out[(a, b1, b2)] = out.get((a, b1, b2), 0) + c * c2
    return TensorSum(out)


def counit(w: HWord) -> int:
    return 1 if w.is_unit else 0
