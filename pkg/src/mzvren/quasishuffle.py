"""Quasi-shuffle (harmonic) products on words whose letters add like integer vectors.

One :class:`Letter` type serves both alphabets: index 0 carries the grade k of
a letter z_k, indices n >= 1 carry the coefficient of t_n in a linear form.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import _accel
from .combination import Combination


@dataclass(frozen=True, order=True)
class Letter:
    """Sparse integer vector; an entry at index 0 (even a zero one) marks a z-letter."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        acc: dict[int, int] = {}
        for i, a in self.terms:
            if i < 0:
                raise ValueError("letter indices are nonnegative")
            acc[i] = acc.get(i, 0) + int(a)
        terms = tuple(sorted((i, a) for i, a in acc.items() if a or i == 0))
        if not terms:
            raise ValueError("the zero letter is not part of the alphabet")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def z(cls, k: int) -> Letter:
        return cls(((0, k),))

    @classmethod
    def t(cls, *indices: int) -> Letter:
        """t_{n1} + t_{n2} + ... (repeats add up)."""
        return cls(tuple((n, 1) for n in indices))

    @classmethod
    def form(cls, coeffs: Mapping[int, int]) -> Letter:
        return cls(tuple(coeffs.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def grade(self) -> int:
        return self.as_dict().get(0, 0)

    @property
    def is_z(self) -> bool:
        return all(i == 0 for i, _ in self.terms)

    def __add__(self, other: Letter) -> Letter:
        return Letter(self.terms + other.terms)

    def render(self) -> str:
        if self.is_z:
            return f"z_{{{self.grade}}}"
        parts = []
        for i, a in self.terms:
            if i == 0:
                continue
            name = f"t{i}"
            if a == 1:
                parts.append(name)
            elif a == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{a}{name}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self):
        return f"Letter({self.render()})"


QWord = tuple  # tuple[Letter, ...]


def qword(*letters: Letter) -> QWord:
    return tuple(letters)


def z_word(*ks: int) -> QWord:
    return tuple(Letter.z(k) for k in ks)


def render_word(w: QWord) -> str:
    if not w:
        return "∅"
    if all(letter.is_z for letter in w):
        return " ".join(letter.render() for letter in w)
    return "[" + ", ".join(letter.render() for letter in w) + "]"


class ElementQS(Combination):
    """Q-linear combination of QWords."""

    def __mul__(self, other):
        if isinstance(other, ElementQS):
            return qsh_product(self, other)
        return self.scale(other)

    def render(self) -> str:
        if not self:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            coef = "" if c == 1 else f"{c}*"
            parts.append(coef + render_word(w))
        return " + ".join(parts)


# --------------------------------------------------------------- products


@lru_cache(maxsize=None)
def _qsh(u: QWord, v: QWord) -> tuple[tuple[QWord, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    a, b = u[0], v[0]
    acc: dict[QWord, int] = {}
    for w, c in _qsh(u[1:], v):
        key = (a,) + w
        acc[key] = acc.get(key, 0) + c
    for w, c in _qsh(u, v[1:]):
        key = (b,) + w
        acc[key] = acc.get(key, 0) + c
    ab = a + b
    for w, c in _qsh(u[1:], v[1:]):
        key = (ab,) + w
        acc[key] = acc.get(key, 0) + c
    return tuple((w, c) for w, c in acc.items() if c)


def qsh_words(u: QWord, v: QWord) -> ElementQS:
    return ElementQS(_qsh(tuple(u), tuple(v)))


def qsh_product(a: ElementQS, b: ElementQS) -> ElementQS:
    """Bilinear harmonic product [u1,w1]*[u2,w2] = [u1, w1*[u2,w2]] + [u2, [u1,w1]*w2] + [u1+u2, w1*w2]."""
    acc: dict[QWord, Fraction] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            for w, c in _qsh(u, v):
                acc[w] = acc.get(w, 0) + cu * cv * c
    return ElementQS(acc)


def qsh_coefficients(omega: QWord, eta: QWord) -> dict[QWord, int]:
    """QSh(omega, eta; alpha) for every alpha with a nonzero coefficient."""
    return dict(_qsh(tuple(omega), tuple(eta)))


def iterated_product(words: Iterable[QWord], right: bool = False) -> ElementQS:
    """w1 * w2 * ... bracketed from the left (or from the right)."""
    words = list(words)
    if right:
        words.reverse()
    acc = ElementQS({(): 1})
    for w in words:
        single = ElementQS({tuple(w): 1})
        acc = qsh_product(single, acc) if right else qsh_product(acc, single)
    return acc


# ------------------------------------------------------------- surjections


@dataclass(frozen=True, order=True)
class Surjection:
    images: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.images)

    @property
    def i(self) -> int:
        return max(self.images)

    def preimage(self, k: int) -> tuple[int, ...]:
        """sigma^{-1}(k) as 1-based positions."""
        return tuple(n + 1 for n, s in enumerate(self.images) if s == k)

    def blocks(self) -> list[tuple[int, ...]]:
        return [self.preimage(k) for k in range(1, self.i + 1)]


def surjections(r: int, i: int) -> list[Surjection]:
    """P(r, i) in lexicographic order of image sequences; empty for i < 1 or i > r."""
    if r < 1 or i < 1 or i > r:
        return []
    return [Surjection(tuple(int(x) for x in row)) for row in _accel.surjection_array(r, i)]


def ordered_bell(r: int) -> int:
    return sum(math.factorial(i) * stirling2(r, i) for i in range(r + 1))


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1)) // math.factorial(k)


def t_block_letter(block: Sequence[int]) -> Letter:
    """t_{sigma^{-1}(k)} = sum of t_n over the block."""
    return Letter.t(*block)


def stuffle_rhs(r: int) -> ElementQS:
    """sum_i sum_{sigma in P(r,i)} [t_{sigma^{-1}(1)}, ..., t_{sigma^{-1}(i)}]."""
    acc: dict[QWord, int] = {}
    for i in range(1, r + 1):
        for sigma in surjections(r, i):
            w = tuple(t_block_letter(b) for b in sigma.blocks())
            acc[w] = acc.get(w, 0) + 1
    return ElementQS(acc)


def stuffle_identity_check(r: int) -> bool:
    """[t1] * [t2] * ... * [tr] equals stuffle_rhs(r), under both bracketings."""
    singles = [(Letter.t(n),) for n in range(1, r + 1)]
    rhs = stuffle_rhs(r)
    return iterated_product(singles) == rhs and iterated_product(singles, right=True) == rhs


def _insert(word: QWord, pos: int, letter: Letter) -> QWord:
    return word[:pos] + (letter,) + word[pos:]


def lemma_permutation_sides(r: int, i: int) -> tuple[ElementQS, ElementQS]:
    """Both sides of the insertion/merge decomposition of P(r+1, i)."""
    lhs: dict[QWord, int] = {}
    for sigma in surjections(r + 1, i):
        w = tuple(t_block_letter(b) for b in sigma.blocks())
        lhs[w] = lhs.get(w, 0) + 1
    new = Letter.t(r + 1)
    rhs: dict[QWord, int] = {}
    for j in range(1, i + 1):
        for tau in surjections(r, i - 1):
            base = tuple(t_block_letter(b) for b in tau.blocks())
            w = _insert(base, j - 1, new)
            rhs[w] = rhs.get(w, 0) + 1
        for tau in surjections(r, i):
            base = list(t_block_letter(b) for b in tau.blocks())
            base[j - 1] = new + base[j - 1]
            w = tuple(base)
            rhs[w] = rhs.get(w, 0) + 1
    return ElementQS(lhs), ElementQS(rhs)


def lemma_permutation_check(r: int, i: int) -> bool:
    if not 1 <= i <= r + 1:
        raise ValueError("need 1 <= i <= r + 1")
    lhs, rhs = lemma_permutation_sides(r, i)
    return lhs == rhs


# -------------------------------------------------------- non-singularity


def is_nonsingular(ks: Sequence[int]) -> bool:
    """Whether z_{k1}...z_{kr} avoids the singular locus of the multiple zeta function."""
    ks = tuple(ks)
    r = len(ks)
    if r < 1:
        raise ValueError("need depth r >= 1")
    if ks[-1] == 1:
        return False
    if r >= 2:
        s = ks[-2] + ks[-1]
        if s in (2, 1, 0) or (s < 0 and s % 2 == 0):
            return False
    tail = ks[-1] + (ks[-2] if r >= 2 else 0)
    for i in range(3, r + 1):
        tail += ks[r - i]
        # tail != i - n for every n >= 0
        if tail <= i:
            return False
    return True


# -------------------------------------------------- generating-word series


def _distribute(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _distribute(total - first, parts - 1):
            yield (first,) + rest


def ztilde_terms(letters: Sequence[Letter], kvec: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """Coefficient of t^kvec in prod_j (-u_j)^{l_j} / l_j!, grouped by the grade vector l.

    ``letters`` are linear forms u_j in t_1..t_m (index 0 must be absent) and
    ``kvec[n-1]`` is the exponent of t_n.  Returns {l: coefficient}.
    """
    m = len(letters)
    forms = [letter.as_dict() for letter in letters]
    # for each variable n, split k_n among the letters that contain t_n
    per_var = []
    for n, k in enumerate(kvec, start=1):
        holders = [j for j in range(m) if forms[j].get(n, 0)]
        if not holders:
            if k:
                return {}
            continue
        per_var.append((n, k, holders))
    out: dict[tuple[int, ...], Fraction] = {}
    choices = [list(_distribute(k, len(holders))) for _, k, holders in per_var]
    for pick in itertools.product(*choices):
        grades = [0] * m
        coef = Fraction(1)
        for (n, k, holders), split in zip(per_var, pick):
            for j, mj in zip(holders, split):
                if mj:
                    grades[j] += mj
                    coef *= Fraction(forms[j][n] ** mj, math.factorial(mj))
        # (-u)^l / l! = (-1)^l sum multinomial, and the multinomial l!/prod m! cancels 1/l!
        coef *= (-1) ** sum(grades)
        key = tuple(grades)
        out[key] = out.get(key, 0) + coef
    return {k: c for k, c in out.items() if c}


def ztilde_coefficient(letters: Sequence[Letter], kvec: Sequence[int]) -> ElementQS:
    """Coefficient of t^kvec in Z~(u_1, ..., u_m) = sum (-u)^l/l! z_{-l_1}...z_{-l_m}."""
    return ElementQS({z_word(*(-l for l in grades)): c for grades, c in ztilde_terms(letters, kvec).items()})


def verify_lemma_g(r: int, s: int, K: int) -> bool:
    """Z~(t1..tr) * Z~(t_{r+1}..t_{r+s}) = sum_alpha QSh(...; alpha) Z~(alpha), coefficientwise for k_i <= K."""
    return not lemma_g_counterexamples(r, s, K, first_only=True)


def lemma_g_counterexamples(r: int, s: int, K: int, first_only: bool = False) -> list[tuple[int, ...]]:
    if r < 1 or s < 1 or K < 0:
        raise ValueError("need r, s >= 1 and K >= 0")
    omega = tuple(Letter.t(n) for n in range(1, r + 1))
    eta = tuple(Letter.t(n) for n in range(r + 1, r + s + 1))
    alphas = qsh_coefficients(omega, eta)
    bad = []
    for kvec in itertools.product(range(K + 1), repeat=r + s):
        scale = Fraction(1)
        for k in kvec:
            scale *= Fraction((-1) ** k, math.factorial(k))
        lhs = qsh_words(z_word(*(-k for k in kvec[:r])), z_word(*(-k for k in kvec[r:]))).scale(scale)
        rhs = ElementQS()
        for alpha, c in alphas.items():
            rhs = rhs + ztilde_coefficient(alpha, kvec).scale(c)
        if lhs != rhs:
            bad.append(kvec)
            if first_only:
                break
    return bad
