from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from almostnormal.curves import (
    NormalCurve,
    NotANormalCurve,
    NotDisjointlyRealizable,
    are_parallel,
    canonical_word,
    classify_curve,
    decompose,
    disjointly_realizable,
    enumerate_curves,
    hemispheres,
    is_simple_closed_walk,
    parse_word,
    symmetry_classes,
    vertex_link,
    word_arc_counts,
)
from almostnormal.tetra import ALL_PERMS, EDGE_PAIRS, EDGES

from oracles import closed_walks

CURVES_24 = enumerate_curves(24)


def by_length(n):
    return [c for c in CURVES_24 if c.length == n]


def test_small_enumerations():
    assert [str(c) for c in enumerate_curves(3)] == [str(vertex_link(v)) for v in (1, 2, 3, 0)]
    assert len(enumerate_curves(4)) == 7
    assert enumerate_curves(7) == enumerate_curves(4)
    with pytest.raises(ValueError):
        enumerate_curves(2)


def _packs_to_itself(word) -> bool:
    comps = decompose(word_arc_counts(word))
    return len(comps) == 1 and comps[0].word == canonical_word(word)


@pytest.mark.parametrize("length", range(3, 11))
def test_brute_force_walks(length):
    """Every closed normal walk: simple iff its arcs pack to one copy of it."""
    simple = set()
    for word in closed_walks(length):
        packed = _packs_to_itself(word)
        assert is_simple_closed_walk(word) == packed, word
        if packed:
            simple.add(canonical_word(word))
    assert simple == {c.word for c in CURVES_24 if c.length == length}


def test_methods_agree():
    assert enumerate_curves(24, method="words") == CURVES_24


def test_lengths_and_counts():
    assert {c.length for c in CURVES_24} == {3, 4, 8, 12, 16, 20, 24}
    for k in range(2, 7):
        phi = sum(1 for j in range(1, k + 1) if gcd(j, k) == 1)
        assert len(by_length(4 * k)) == 3 * phi


def test_symmetry_closed():
    words = {c.word for c in CURVES_24}
    for perm in ALL_PERMS:
        assert {c.permuted(perm).word for c in CURVES_24} == words
    assert len(symmetry_classes(CURVES_24)) == 8


def test_classify_examples():
    link = classify_curve(vertex_link(0))
    assert (link.kind, link.vertex) == ("vertex_link", 0)
    (octagon, *_) = by_length(8)
    cls = classify_curve(octagon)
    assert (cls.kind, cls.k) == ("long", 2)
    assert cls.hemisphere_stats == ((2, 1), (2, 1))
    for c in by_length(12):
        assert classify_curve(c).hemisphere_stats == ((2, 3), (2, 3))


def test_every_curve_classifies():
    for c in CURVES_24:
        cls = classify_curve(c)
        counts = [h.vertex_count for h in hemispheres(c)]
        if c.length == 3:
            assert sorted(counts) == [1, 3]
        else:
            assert counts == [2, 2]
        if c.length >= 8:
            k = c.length // 4
            assert cls.k == k
            assert [h.parallel_count for h in hemispheres(c)] == [2 * k - 3] * 2


def test_link_hemispheres():
    small, big = sorted(hemispheres(vertex_link(2)), key=lambda h: h.vertex_count)
    assert small.vertices == (2,)
    assert sorted(small.stubs) == sorted((e, 2) for e, ab in enumerate(EDGES) if 2 in ab)
    assert big.vertex_count == 3


def test_quad_hemispheres():
    for c in by_length(4):
        cls = classify_curve(c)
        e1, e2 = EDGE_PAIRS[cls.edge_pair]
        h1, h2 = hemispheres(c)
        assert {h1.full_edges, h2.full_edges} == {(e1,), (e2,)}
        assert c.edge_crossings[e1] == c.edge_crossings[e2] == 0


def test_octagon_hemispheres():
    for c in by_length(8):
        for h in hemispheres(c):
            assert h.vertex_count == 2
            assert len(h.stubs) == 6  # a tripod of sub-edges at each vertex
            assert h.parallel_count == 1


def test_bad_words():
    for text in ("", "1:1 2:0 3:0", "1:0 2:0", "1:0 1:2 3:0", "5:0 1:2 2:3"):
        with pytest.raises(NotANormalCurve):
            NormalCurve.from_word(text)
    with pytest.raises(NotANormalCurve):
        parse_word("1-0")
    # a closed normal walk that runs twice around the vertex link is not simple
    with pytest.raises(NotANormalCurve):
        NormalCurve.from_word("1:0 2:0 3:0 1:0 2:0 3:0")


def test_parallel_examples():
    quad = by_length(4)[0]
    assert are_parallel(quad, quad)
    assert not are_parallel(vertex_link(0), vertex_link(1))
    q1, q2 = by_length(4)[:2]
    with pytest.raises(NotDisjointlyRealizable):
        are_parallel(q1, q2)
    assert disjointly_realizable(vertex_link(0), q1)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(CURVES_24), st.integers(0, 23), st.booleans(), st.sampled_from(ALL_PERMS))
def test_canonical_form(c, shift, flip, perm):
    word = list(c.word)
    word = word[shift % len(word):] + word[: shift % len(word)]
    if flip:
        word.reverse()
    assert NormalCurve.from_word(word) == c
    image = c.permuted(perm)
    assert image.length == c.length
    assert classify_curve(image).k == classify_curve(c).k
