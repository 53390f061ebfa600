from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping, TypeVar

K = TypeVar("K", bound=Hashable)


class Combination(Mapping):
    """Finite Q-linear combination of hashable basis keys; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: Fraction(c) for k, c in acc.items() if c}

    @classmethod
    def basis(cls, key, coeff=1):
        return cls({key: coeff})

    def __getitem__(self, key):
        return self._terms[key]

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, Combination):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return type(self)(out)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return type(self)({k: c * v for k, v in self._terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, Combination):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == Combination(other)._terms
        return NotImplemented

    __hash__ = None

    def sorted_items(self, key=None) -> list[tuple]:
        return sorted(self._terms.items(), key=key or (lambda kv: kv[0]))

    def __repr__(self):
        body = ", ".join(f"{k!r}: {v}" for k, v in self.sorted_items(key=lambda kv: repr(kv[0])))
        return f"{type(self).__name__}({{{body}}})"
