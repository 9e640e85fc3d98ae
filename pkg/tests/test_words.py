import itertools

import numpy as np
import pytest
from hypothesis import given

from conftest import graph_and_word
from oracles import brute_normal_form, is_identity_word
from racgqc.errors import LengthCapExceeded, ParseError, UnknownLetter
from racgqc.graphs import SimplicialGraph, cycle_graph
from racgqc.words import (MAX_WORD_LENGTH, equal, format_word, is_identity_matrix, parse_word,
                          read_word_file, reduce, reverse, subgroup_ball, tits_matrix,
                          write_word_file)

W = parse_word


def test_reduce_examples(c4):
    assert reduce(W("s1 s2 s1 s2"), c4) == ()
    assert reduce(W("s2 s1 s3 s2"), c4) == W("s1 s3")
    assert reduce(W("s1 s3 s1"), c4) == W("s1 s3 s1")


def test_reduce_example_matrices(c4):
    assert (tits_matrix(W("s2 s1 s3 s2"), c4) == tits_matrix(W("s1 s3"), c4)).all()
    target = tits_matrix(W("s1 s3 s1"), c4)
    for n in range(3):
        for cand in itertools.product(c4.vertices, repeat=n):
            assert not (tits_matrix(cand, c4) == target).all()


def test_lex_least_beats_a_single_bubble_pass():
    # b and c do not commute; a commutes with both.  Order c < a < b.
    g = SimplicialGraph.from_lists(["c", "a", "b"], [("a", "b"), ("a", "c")])
    assert reduce(W("b c a"), g) == W("a b c")
    assert reduce(W("b c a"), g) == brute_normal_form(W("b c a"), g)


def test_unknown_letter(c4):
    with pytest.raises(UnknownLetter):
        reduce(W("s1 x"), c4)
    with pytest.raises(UnknownLetter):
        tits_matrix(W("x"), c4)


def test_length_cap(pair):
    with pytest.raises(LengthCapExceeded):
        reduce(("a",) * (MAX_WORD_LENGTH + 1), pair)
    assert reduce(("a",) * MAX_WORD_LENGTH, pair) == ()


def test_equal_examples(c4):
    assert equal(W("s1 s2"), W("s2 s1"), c4)
    assert not equal(W("s1 s3"), W("s3 s1"), c4)
    assert equal(W("s1 s3 s2"), W("s1 s3 s2"), c4)


def test_tits_examples(pair):
    assert is_identity_matrix(tits_matrix(W("a a"), pair))
    m = tits_matrix(W("a b"), pair)
    assert not is_identity_matrix(m) and m.trace() == 2
    # by hand: M_a = [[-1, 2], [0, 1]], M_b = [[1, 0], [2, -1]]
    assert m.tolist() == [[3, -2], [2, -1]]
    assert is_identity_matrix(tits_matrix((), pair))


@given(graph_and_word(max_len=8))
def test_tits_determinant_and_inverse(gw):
    g, w = gw
    m = tits_matrix(w, g)
    assert round(np.linalg.det(m.astype(float))) in (1, -1)
    assert is_identity_matrix(tits_matrix(w + reverse(w), g))


@given(graph_and_word(max_len=14))
def test_reduce_properties(gw):
    g, w = gw
    r = reduce(w, g)
    assert reduce(r, g) == r
    assert len(r) <= len(w) and (len(w) - len(r)) % 2 == 0
    assert reduce(w + reverse(w), g) == ()
    assert equal(w, r, g)
    assert (tits_matrix(w, g) == tits_matrix(r, g)).all()
    assert (r == ()) == is_identity_word(w, g)


@given(graph_and_word(max_vertices=4, max_len=6))
def test_reduce_is_shortlex_least(gw):
    g, w = gw
    assert reduce(w, g) == brute_normal_form(w, g)


@given(graph_and_word(max_len=8), graph_and_word(max_len=8))
def test_equal_agrees_with_normal_forms(a, b):
    g, w1 = a
    w2 = tuple(x for x in b[1] if x in g.index)
    assert equal(w1, w2, g) == (reduce(w1, g) == reduce(w2, g))


def test_subgroup_ball_examples(pair, edge):
    assert subgroup_ball([W("a b")], pair, 2) == {(), W("a b"), W("b a"), W("a b a b"), W("b a b a")}
    assert subgroup_ball([], cycle_graph(4), 5) == {()}
    assert subgroup_ball([W("s1 s2")], edge, 3) == {(), W("s1 s2")}
    with pytest.raises(ValueError):
        subgroup_ball([], pair, -1)


def test_word_file_roundtrip():
    text = "s1 s2\n\ns3\n"
    words = read_word_file(text)
    assert words == [W("s1 s2"), (), W("s3")]
    assert write_word_file(words) == text
    assert format_word(()) == ""
    for bad in ("s1  s2\n", " s1\n"):
        with pytest.raises(ParseError):
            read_word_file(bad)
