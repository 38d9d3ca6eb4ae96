import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catgsb.automaton import Automaton
from catgsb.presentations import build_simplicial, degeneracy, face
from catgsb.quiver import (
    Edge,
    Quiver,
    QuiverError,
    Vertex,
    Word,
    compose,
    enumerate_words,
    find_subword_occurrences,
    overlap_pairs,
)

V = Vertex("v")
X = Edge("x", "v", "v")
Y = Edge("y", "v", "v")
Z = Edge("z", "v", "v")
LOOP = Quiver((V,), (X,))
LOOPS = Quiver((V,), (X, Y, Z))


def test_compose_identities():
    idv = Word.identity("v")
    assert compose(idv, idv) == idv


def test_compose_faces():
    w = compose(Word.of(face(2, 1)), Word.of(face(1, 0)))
    assert w.names == ("E(2,1)", "E(1,0)")
    assert (w.source, w.target) == ("[0]", "[2]")


def test_compose_face_then_degeneracy():
    w = compose(Word.of(face(1, 0)), Word.of(degeneracy(0, 0)))
    assert (w.source, w.target, len(w)) == ("[1]", "[1]", 2)


def test_compose_mismatch_names_both_vertices():
    eta = Word.of(degeneracy(0, 0))
    with pytest.raises(QuiverError, match=r"\[1\].*\[0\]|\[0\].*\[1\]"):
        compose(eta, eta)


def test_word_rejects_noncomposable():
    with pytest.raises(QuiverError):
        Word.of(degeneracy(0, 0), degeneracy(0, 0))


def test_identity_rendering():
    assert str(Word.identity("[2]")) == "id([2])"
    assert Word.of(face(2, 0), face(1, 1)).pretty() == "ε_2^0 ε_1^1"


def test_occurrences_examples():
    hay = Word.of(face(2, 0), face(1, 1))
    (a, b), = find_subword_occurrences(hay, Word.of(face(1, 1)))
    assert a == Word.of(face(2, 0)) and b == Word.identity("[0]")
    # the word runs [0] -> [0], so both identities sit at [0]
    whole = Word.of(degeneracy(0, 0), face(1, 0))
    assert find_subword_occurrences(whole, whole) == [(Word.identity("[0]"), Word.identity("[0]"))]
    assert len(find_subword_occurrences(Word.of(X, X, X), Word.of(X, X))) == 2


def test_occurrence_identity_needle_rejected():
    with pytest.raises(QuiverError):
        find_subword_occurrences(Word.of(X), Word.identity("v"))


def test_overlap_simplicial_and_cyclic_cases():
    q, k, i, j = 2, 1, 1, 3
    u = Word.of(degeneracy(q, k), face(q + 1, i))
    v = Word.of(face(q + 1, i), face(q, j - 1))
    ovs = overlap_pairs(u, v)
    assert [(str(o.w), o.kind) for o in ovs] == [("H(2,1).E(3,1).E(2,2)", "intersection")]

    t = Edge("T(2)", "[2]", "[2]")
    u = Word.of(t, t, t)
    v = Word.of(t, face(2, 0))
    kinds = {(str(o.w), o.kind) for o in overlap_pairs(u, v)}
    assert ("T(2).T(2).T(2).E(2,0)", "intersection") in kinds


def test_overlap_disjoint_is_empty():
    q = Quiver((Vertex("a"), Vertex("b"), Vertex("c")),
               (Edge("x", "a", "b"), Edge("y", "b", "c"), Edge("z", "a", "b"), Edge("w", "b", "c")))
    assert overlap_pairs(q.word("y", "x"), q.word("w", "z")) == []


def test_enumerate_words_examples():
    assert [str(w) for w in enumerate_words(LOOP, "v", "v", 3)] == ["id(v)", "x", "x.x", "x.x.x"]
    q2 = build_simplicial(2).quiver
    assert list(enumerate_words(q2, "[0]", "[2]", 1)) == []


def test_enumerate_truncated_delta_edges():
    # [1] -> [0] edges at max_dim 2: only H(0,0) exists (H(0,i) needs i <= 0)
    q2 = build_simplicial(2).quiver
    assert [str(w) for w in enumerate_words(q2, "[1]", "[0]", 1)] == ["H(0,0)"]


@pytest.mark.parametrize("n", range(8))
def test_loop_count(n):
    assert len(list(enumerate_words(LOOP, "v", "v", n))) == n + 1


def test_quiver_validation():
    with pytest.raises(QuiverError):
        Quiver((V,), (Edge("x", "v", "w"),))
    with pytest.raises(QuiverError):
        Quiver((V,), (X, X))
    with pytest.raises(QuiverError):
        Quiver((V, V), ())


words = st.lists(st.sampled_from([X, Y, Z]), min_size=0, max_size=8).map(
    lambda es: Word.of(*es) if es else Word.identity("v"))
nonempty = st.lists(st.sampled_from([X, Y, Z]), min_size=1, max_size=8).map(lambda es: Word.of(*es))


@given(words, words, words)
def test_associativity_and_units(a, b, c):
    assert compose(a, compose(b, c)) == compose(compose(a, b), c)
    idv = Word.identity("v")
    assert compose(idv, a) == a == compose(a, idv)


@given(nonempty, nonempty)
def test_occurrences_recompose(hay, needle):
    occ = find_subword_occurrences(hay, needle)
    for a, b in occ:
        assert compose(a, compose(needle, b)) == hay
    brute = [s for s in range(len(hay) - len(needle) + 1)
             if hay.names[s:s + len(needle)] == needle.names]
    assert [len(a) for a, _ in occ] == brute


def _brute_overlaps(u, v):
    out = set()
    nu, nv = u.names, v.names
    for s in range(len(nu) - len(nv) + 1):
        if nu[s:s + len(nv)] == nv:
            out.add((nu, "inclusion", s))
    for k in range(1, min(len(nu), len(nv))):
        if nu[len(nu) - k:] == nv[:k]:
            out.add((nu[: len(nu) - k] + nv, "intersection", len(nu) - k))
    return out


@settings(max_examples=300)
@given(nonempty, nonempty)
def test_overlaps_match_brute_force(u, v):
    got = {(o.w.names, o.kind, len(o.a)) for o in overlap_pairs(u, v)}
    assert got == _brute_overlaps(u, v)
    for o in overlap_pairs(u, v):
        if o.kind == "inclusion":
            assert o.w == u == compose(o.a, compose(v, o.b))
        else:
            assert o.w == compose(u, o.b) == compose(o.a, v)
            assert 1 <= len(u) + len(v) - len(o.w) < min(len(u), len(v))


@settings(max_examples=200)
@given(st.lists(nonempty, min_size=1, max_size=4), words)
def test_automaton_matches_naive_scan(patterns, hay):
    ac = Automaton.from_patterns((i, p.names) for i, p in enumerate(patterns))
    expected = sorted(
        (s, i) for i, p in enumerate(patterns)
        for s in range(len(hay) - len(p) + 1) if hay.names[s:s + len(p)] == p.names
    )
    assert ac.scan(hay.names) == expected
