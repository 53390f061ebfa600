import itertools
import os
import subprocess
import sys

import numpy as np
import pytest

from mzvren import _accel
from mzvren.words import (
    HWord,
    TensorSum,
    UnitWord,
    WordSum,
    admissible_subsets,
    apply_left,
    apply_right,
    coproduct0,
    counit,
    reduced_coproduct0,
    shuffle0,
    words_of_weight,
    words_up_to_weight,
)

ONE = HWord.unit()
Y = HWord.of(0)
DY = HWord.of(1)
YDY = HWord.of(0, 1)


def brute_admissible(letters):
    """Oracle: test every subset of positions directly on the letter string."""
    n = len(letters)
    out = []
    for size in range(n + 1):
        for S in itertools.combinations(range(1, n + 1), size):
            ws = "".join(letters[i - 1] for i in S)
            wc = "".join(letters[i - 1] for i in range(1, n + 1) if i not in S)
            if (ws == "" or ws[-1] == "y") and (wc == "" or wc[-1] == "y"):
                out.append(frozenset(S))
    return out


def rewrite_shuffle0(u, v):
    """Oracle: expand u ш0 v with an explicit work stack, pulling y from v first."""
    out = {}
    stack = [(1, "", u, v)]
    while stack:
        c, prefix, a, b = stack.pop()
        if not a or not b:
            w = prefix + a + b
            out[w] = out.get(w, 0) + c
        elif b[0] == "y":
            stack.append((c, prefix + "y", a, b[1:]))
        elif a[0] == "y":
            stack.append((c, prefix + "y", a[1:], b))
        else:
            stack.append((c, prefix + "d", a[1:], b))
            stack.append((-c, prefix, a[1:], "d" + b))
    return WordSum(out)


def test_hword_encoding():
    w = HWord.of(2, 0, 1)
    assert w.letters == "ddyydy"
    assert HWord.from_letters("ddyydy") == w
    assert w.weight == 6 and w.depth == 3
    assert ONE.weight == 0 and ONE.letters == ""
    assert w.render() == "d^2 y y d y"
    with pytest.raises(ValueError):
        HWord.from_letters("yd")


def test_words_of_weight_counts():
    assert [len(words_of_weight(n)) for n in range(1, 7)] == [1, 2, 4, 8, 16, 32]


def test_shuffle0_unit():
    for w in ["", "y", "dy", "ydy", "dd"]:
        assert shuffle0("", w) == WordSum({w: 1})
        assert shuffle0(w, "") == WordSum({w: 1})


def test_shuffle0_examples():
    assert shuffle0("y", "dy") == WordSum({"ydy": 1})
    assert shuffle0("dy", "dy") == WordSum({"dydy": 1, "yddy": -1})


@pytest.mark.parametrize("u,v", [(a.letters, b.letters) for a in words_up_to_weight(4) for b in words_up_to_weight(4)])
def test_shuffle0_matches_rewriting_oracle(u, v):
    assert shuffle0(u, v) == rewrite_shuffle0(u, v)


def test_shuffle0_closure():
    for u in words_up_to_weight(4, include_unit=True):
        for v in words_up_to_weight(4, include_unit=True):
            assert all(w == "" or w.endswith("y") for w in shuffle0(u, v))


def test_admissible_examples():
    assert admissible_subsets(Y) == [frozenset(), frozenset({1})]
    assert sorted(admissible_subsets(DY), key=sorted) == [frozenset(), frozenset({1, 2})]
    assert set(admissible_subsets(YDY)) == {frozenset(), frozenset({1}), frozenset({2, 3}), frozenset({1, 2, 3})}
    with pytest.raises(UnitWord):
        admissible_subsets(ONE)


@pytest.mark.parametrize("w", words_up_to_weight(7))
def test_admissible_matches_brute_force(w):
    assert set(admissible_subsets(w)) == set(brute_admissible(w.letters))


@pytest.mark.parametrize("use_numba", [True, False])
def test_kernels_agree(use_numba):
    for w in words_up_to_weight(8):
        bits = np.array([ch == "y" for ch in w.letters], dtype=np.int64)
        got = _accel.admissible_masks(bits, use_numba=use_numba)
        ref = _accel.admissible_masks(bits, use_numba=not use_numba)
        assert np.array_equal(got, ref)


def test_coproduct_examples():
    assert coproduct0(Y) == TensorSum({(Y, ONE): 1, (ONE, Y): 1})
    assert coproduct0(DY) == TensorSum({(DY, ONE): 1, (ONE, DY): 1})
    assert coproduct0(YDY) == TensorSum({(YDY, ONE): 1, (ONE, YDY): 1, (Y, DY): 1, (DY, Y): 1})
    assert coproduct0(ONE) == TensorSum({(ONE, ONE): 1})


def test_reduced_coproduct_examples():
    assert not reduced_coproduct0(Y)
    assert not reduced_coproduct0(DY)
    assert reduced_coproduct0(YDY) == TensorSum({(Y, DY): 1, (DY, Y): 1})
    with pytest.raises(UnitWord):
        reduced_coproduct0(ONE)


@pytest.mark.parametrize("w", words_up_to_weight(6))
def test_coproduct_laws(w):
    d = coproduct0(w)
    assert apply_left(coproduct0, d) == apply_right(coproduct0, d)
    assert d.swapped() == d
    assert all(a.weight + b.weight == w.weight for a, b in d)
    left = TensorSum({(a, a): c for (a, b), c in d.items() if counit(b)})
    right = TensorSum({(b, b): c for (a, b), c in d.items() if counit(a)})
    assert left == TensorSum({(w, w): 1}) == right


def test_reduced_coproduct_lowers_weight():
    for w in words_up_to_weight(6):
        for a, b in reduced_coproduct0(w):
            assert 0 < a.weight < w.weight and 0 < b.weight < w.weight


def test_tensor_render_is_sorted():
    assert coproduct0(YDY).render() == "(1 ⊗ y d y) + (y ⊗ d y) + (y d y ⊗ 1) + (d y ⊗ y)"


@pytest.mark.parametrize("flag,expected", [("0", False), ("1", True)])
def test_env_flag_selects_kernel(flag, expected):
    code = "from mzvren import _accel; print(_accel.USE_NUMBA)"
    env = {**os.environ, "MZV_NUMBA": flag}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == str(expected and _accel.NUMBA_AVAILABLE)
