import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mzvren import _accel
from mzvren.quasishuffle import (
    ElementQS,
    Letter,
    Surjection,
    is_nonsingular,
    lemma_g_counterexamples,
    lemma_permutation_check,
    lemma_permutation_sides,
    ordered_bell,
    qsh_coefficients,
    qsh_product,
    qsh_words,
    render_word,
    stirling2,
    stuffle_identity_check,
    stuffle_rhs,
    surjections,
    verify_lemma_g,
    z_word,
    ztilde_coefficient,
)

t = Letter.t


def brute_surjections(r, i):
    return [s for s in itertools.product(range(1, i + 1), repeat=r) if set(s) == set(range(1, i + 1))]


def test_letters_add_componentwise():
    assert t(1) + t(2) == t(1, 2)
    assert Letter.z(-1) + Letter.z(-2) == Letter.z(-3)
    assert Letter.z(0) != Letter.z(1)
    assert (t(1, 2, 2)).render() == "t1+2t2"
    with pytest.raises(ValueError):
        t()


def test_harmonic_one_letter_example():
    assert qsh_words((t(2),), (t(1),)) == ElementQS({(t(2), t(1)): 1, (t(1), t(2)): 1, (t(1, 2),): 1})


def test_harmonic_unit():
    w = (t(1), t(3))
    assert qsh_words((), w) == ElementQS({w: 1}) == qsh_words(w, ())


def test_harmonic_z_letters():
    assert qsh_words(z_word(-1), z_word(-1)) == ElementQS({z_word(-1, -1): 2, z_word(-2): 1})
    assert render_word(z_word(-2, 0)) == "z_{-2} z_{0}"


@pytest.mark.parametrize("r", range(1, 6))
def test_one_times_r_example(r):
    word = tuple(t(n) for n in range(1, r + 1))
    new = t(r + 1)
    expected = {}
    for j in range(r + 1):
        expected[word[:j] + (new,) + word[j:]] = 1
    for j in range(r):
        expected[word[:j] + (new + word[j],) + word[j + 1:]] = 1
    got = qsh_coefficients((new,), word)
    assert got == expected
    assert len(got) == 2 * r + 1


def test_qsh_coefficient_values():
    assert qsh_coefficients((t(1),), (t(2),))[(t(1, 2),)] == 1
    assert qsh_coefficients((t(1), t(2)), ()) == {(t(1), t(2)): 1}


words = st.lists(st.sampled_from([t(1), t(2), t(3), Letter.z(-1), Letter.z(0)]), max_size=3).map(tuple)
elements = st.dictionaries(words, st.integers(-2, 2), max_size=3).map(ElementQS)


@given(elements, elements, elements)
@settings(max_examples=50, deadline=None)
def test_commutative_associative(a, b, c):
    assert qsh_product(a, b) == qsh_product(b, a)
    assert qsh_product(qsh_product(a, b), c) == qsh_product(a, qsh_product(b, c))


@given(words, words)
@settings(max_examples=80, deadline=None)
def test_qsh_coefficient_structure(u, v):
    coeffs = qsh_coefficients(u, v)
    total = {}
    for letter in u + v:
        for i, a in letter.terms:
            total[i] = total.get(i, 0) + a
    for alpha, c in coeffs.items():
        assert isinstance(c, int) and c > 0
        assert len(alpha) <= len(u) + len(v)
        got = {}
        for letter in alpha:
            for i, a in letter.terms:
                got[i] = got.get(i, 0) + a
        assert {k: x for k, x in got.items() if x} == {k: x for k, x in total.items() if x}


def test_surjection_examples():
    assert surjections(2, 1) == [Surjection((1, 1))]
    assert len(surjections(3, 2)) == 6
    assert sum(len(surjections(4, i)) for i in range(1, 5)) == 75
    assert surjections(3, 0) == [] and surjections(3, 4) == []


def test_surjection_blocks():
    s = Surjection((2, 1, 2))
    assert s.preimage(2) == (1, 3)
    assert s.blocks() == [(2,), (1, 3)]


@pytest.mark.parametrize("r", range(1, 8))
def test_surjection_counts_match_stirling(r):
    for i in range(1, r + 1):
        got = surjections(r, i)
        assert len(got) == math.factorial(i) * stirling2(r, i)
        assert len(set(got)) == len(got)
        assert [s.images for s in got] == sorted(s.images for s in got)
        if r <= 5:
            assert [s.images for s in got] == brute_surjections(r, i)


def test_stirling_reference_values():
    assert [stirling2(5, k) for k in range(1, 6)] == [1, 15, 25, 10, 1]
    assert [ordered_bell(r) for r in range(1, 6)] == [1, 3, 13, 75, 541]


@pytest.mark.parametrize("use_numba", [True, False])
def test_surjection_kernels_agree(use_numba):
    for r in range(1, 7):
        for i in range(1, r + 1):
            got = _accel.surjection_array(r, i, use_numba=use_numba)
            assert np.array_equal(got, np.array(brute_surjections(r, i)).reshape(-1, r))


def test_stuffle_rhs_small():
    assert stuffle_rhs(1) == ElementQS({(t(1),): 1})
    assert stuffle_rhs(2) == ElementQS({(t(1), t(2)): 1, (t(2), t(1)): 1, (t(1, 2),): 1})
    assert len(stuffle_rhs(3)) == 13


@pytest.mark.parametrize("r,count", [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)])
def test_stuffle_identity(r, count):
    assert stuffle_identity_check(r)
    assert len(stuffle_rhs(r)) == count


@pytest.mark.parametrize("r", range(1, 6))
def test_lemma_permutation(r):
    for i in range(1, r + 2):
        assert lemma_permutation_check(r, i)


def test_lemma_permutation_small_cases():
    lhs, rhs = lemma_permutation_sides(1, 1)
    assert lhs == rhs == ElementQS({(t(1, 2),): 1})
    lhs, _ = lemma_permutation_sides(3, 2)
    assert sum(lhs.values()) == 14
    with pytest.raises(ValueError):
        lemma_permutation_check(2, 4)


def test_ztilde_coefficient_single_letter():
    # coefficient of t1 t2 in Z~(t1 + t2): (-u)^2/2! gives 2/2 = 1 on z_{-2}
    assert ztilde_coefficient((t(1, 2),), (1, 1)) == ElementQS({z_word(-2): 1})
    assert ztilde_coefficient((t(1), t(2)), (2, 0)) == ElementQS({z_word(-2, 0): Fraction(1, 2)})
    assert ztilde_coefficient((t(1),), (0, 1)) == ElementQS()


@pytest.mark.parametrize("args", [(1, 1, 1), (1, 2, 2), (2, 2, 1), (1, 1, 2), (2, 2, 2), (2, 1, 2)])
def test_lemma_g(args):
    assert verify_lemma_g(*args)
    assert lemma_g_counterexamples(*args) == []


def nonsingular_oracle(ks):
    r = len(ks)
    if ks[-1] == 1:
        return False
    if r >= 2 and ks[-2] + ks[-1] in {2, 1, 0} | {-2 * n for n in range(1, 40)}:
        return False
    for i in range(3, r + 1):
        if sum(ks[r - i:]) in {i - n for n in range(0, 60)}:
            return False
    return True


def test_nonsingular_examples():
    assert is_nonsingular((-2,))
    assert not is_nonsingular((0, 0))
    assert is_nonsingular((-1, -2))
    assert [k for k in range(-10, 11) if not is_nonsingular((k,))] == [1]


def test_nonsingular_matches_oracle():
    for r in (1, 2, 3):
        for ks in itertools.product(range(-5, 6), repeat=r):
            assert is_nonsingular(ks) == nonsingular_oracle(ks), ks
