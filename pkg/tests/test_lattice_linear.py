from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from a4painleve import lattice_linear as L
from a4painleve.lattice_linear import ALPHA, BETA, D, DELTA, GAMMA, add, intersection, reflect, scale, sub, vec

e = {i: vec(**{f"e{i}": 1}) for i in range(1, 9)}
h1, h2 = vec(h1=1), vec(h2=1)

vectors = st.lists(st.integers(-5, 5), min_size=10, max_size=10).map(tuple)
words = st.lists(st.sampled_from(sorted(L.GENERATORS) + ["w1", "r1", "pi", "rho2", "T3", "T0^-1"]), max_size=8)


def test_intersection_examples():
    assert intersection(h1, h2) == 1
    assert intersection(h1, h1) == 0
    assert intersection(e[3], e[3]) == -1
    assert intersection(DELTA, DELTA) == 0


def test_reflect_examples():
    a1 = sub(e[1], e[2])
    assert reflect(e[1], a1) == e[2]
    assert reflect(ALPHA[0], ALPHA[0]) == scale(-1, ALPHA[0])
    assert reflect(h1, a1) == h1


def test_reflection_rejects_non_roots():
    with pytest.raises(L.NonIntegerReflection):
        reflect(h1, add(scale(2, h1), scale(2, h2), e[1]))


def test_pic_word_examples():
    assert L.apply_pic_word(["sigma"], D[0]) == D[2]
    assert L.apply_pic_word(["iota"], ALPHA[1]) == ALPHA[4]
    assert L.apply_pic_word(L.T_WORDS[0], ALPHA[0]) == sub(ALPHA[0], DELTA)
    with pytest.raises(L.UnknownGenerator):
        L.apply_pic_word(["s7"], D[0])


def test_cartan_matrices_as_explicit():
    assert L.cartan(D) == [[2, -1, 0, 0, -1], [-1, 2, -1, 0, 0], [0, -1, 2, -1, 0], [0, 0, -1, 2, -1], [-1, 0, 0, -1, 2]]
    assert L.cartan(ALPHA) == L.cartan(D)
    assert L.cartan(BETA) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    assert L.cartan(GAMMA) == [[2, -2], [-2, 2]]


def test_rho4_shift_and_square():
    m = L.word_map(["rho4"])
    bg = list(BETA) + list(GAMMA)
    shift = (0, 0, 0, -3, 3)
    assert [m(x) for x in bg] == [add(x, scale(k, DELTA)) for x, k in zip(bg, shift)]
    assert L.word_map(["rho4", "rho4"]) == L.word_map(["T1", "T3"])


@settings(max_examples=60, deadline=None)
@given(words)
def test_every_word_is_an_isometry_fixing_delta(word):
    m = L.word_map(word).matrix
    assert L.preserves_form(m)
    assert L.fixes_canonical(m)
    assert abs(L.determinant(m)) == 1


@settings(max_examples=100, deadline=None)
@given(vectors, vectors, st.integers(0, 4))
def test_reflections_preserve_the_form_and_are_involutions(v, w, i):
    a = ALPHA[i]
    assert intersection(reflect(v, a), reflect(w, a)) == intersection(v, w)
    assert reflect(reflect(v, a), a) == v


@settings(max_examples=40, deadline=None)
@given(words)
def test_inverse_words(word):
    names = L.expand(word)
    assert L.word_map(names + L.inverse_word(names)) == L.word_map([])


def test_bases_are_orthogonal_and_sum_to_delta():
    assert all(intersection(x, y) == 0 for x in D for y in ALPHA)
    assert add(*BETA) == DELTA
    assert add(*GAMMA) == DELTA


def test_linear_suite_passes():
    rep = L.verify_linear_relations()
    assert rep.passed, rep.failures()
    names = {c["check"] for c in rep.checks}
    assert "rho1^2 = T0 T2 T4^-1" in names
    assert rep.seconds < 1.0
