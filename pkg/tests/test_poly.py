import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catgsb.orders import CyclicOrder, DegLex, SimplicialOrder
from catgsb.poly import Fp, PartialPoly, PolyError, mul_word, parse_poly, parse_word, prime_field
from catgsb.presentations import build_cyclic, build_simplicial, cyclic_op, degeneracy, face
from catgsb.quiver import Edge, Quiver, Vertex, Word, words_between

Q2 = build_simplicial(2).quiver
SIMP = SimplicialOrder()
E10, E11 = Word.of(face(1, 0)), Word.of(face(1, 1))


def mono(w, c=1):
    return PartialPoly.monomial(w, c)


def test_add_examples():
    f = mono(E10) - mono(E11)
    assert f + PartialPoly.zero("[0]", "[1]") == f
    assert f + mono(E11) == mono(E10)
    with pytest.raises(PolyError):
        mono(E10) + mono(Word.of(degeneracy(0, 0)))


def test_zero_keeps_endpoints():
    z = mono(E10) - mono(E10)
    assert z.is_zero() and (z.source, z.target) == ("[0]", "[1]")
    assert z.render() == "0"


def test_mul_word_examples():
    q, k, i, j = 1, 0, 0, 2
    f = PartialPoly.binomial(Word.of(face(q + 1, i), face(q, j - 1)),
                             Word.of(face(q + 1, j), face(q, i)))
    assert mul_word(Word.identity("[2]"), f, Word.identity("[0]")) == f
    g = mul_word(Word.of(degeneracy(q, k)), f, Word.identity("[0]"))
    assert g.leading_word(SIMP) == Word.of(degeneracy(q, k), face(q + 1, i), face(q, j - 1))
    with pytest.raises(PolyError):
        mul_word(Word.of(face(1, 0)), f, Word.identity("[0]"))


def test_leading_examples():
    q, i, j = 1, 0, 2
    f = PartialPoly.binomial(Word.of(face(q + 1, i), face(q, j - 1)),
                             Word.of(face(q + 1, j), face(q, i)))
    assert f.leading(SIMP) == (Word.of(face(2, 0), face(1, 1)), 1)
    cyc = CyclicOrder()
    rho5 = PartialPoly.binomial(Word.of(degeneracy(1, 1), cyclic_op(2), cyclic_op(2)),
                                Word.of(cyclic_op(1), degeneracy(1, 0)))
    assert rho5.leading(cyc) == (Word.of(cyclic_op(1), degeneracy(1, 0)), -1)
    assert mono(E10, 3).leading(SIMP) == (E10, 3)
    with pytest.raises(PolyError):
        PartialPoly.zero("[0]", "[1]").leading(SIMP)


def test_make_monic_examples():
    u, v = E10, E11  # E(1,0) > E(1,1)
    assert (mono(u, 2) - mono(v, 2)).make_monic(SIMP) == mono(u) - mono(v)
    assert mono(u).make_monic(SIMP) == mono(u)
    assert (mono(v) - mono(u)).make_monic(SIMP) == mono(u) - mono(v)
    with pytest.raises(PolyError):
        PartialPoly.zero("[0]", "[1]").make_monic(SIMP)


def test_render_and_parse():
    f = mono(E10, Fraction(2)) - mono(E11, Fraction(1, 3))
    text = f.render(SIMP)
    assert text == "2*E(1,0) - 1/3*E(1,1)"
    assert parse_poly(text, Q2) == f
    assert parse_poly("-E(1,1)", Q2) == mono(E11, -1)
    assert parse_poly("id([1])", Q2) == mono(Word.identity("[1]"))
    assert parse_poly("0", Q2, ("[0]", "[1]")).is_zero()
    assert f.render(SIMP, pretty=True) == "2*ε_1^0 - 1/3*ε_1^1"


@pytest.mark.parametrize("bad", ["", "E(1,0) E(1,1)", "E(1,0) + H(0,0)", "Q(1,0)",
                                 "E(1,0).E(1,0)", "2*", "0"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_poly(bad, Q2)


def test_parse_word_identity_and_spaces():
    assert parse_word("id([0])", Q2) == Word.identity("[0]")
    assert parse_word("E(2, 0) . E(1,1)", Q2) == Word.of(face(2, 0), face(1, 1))


def test_prime_field():
    f7 = prime_field(7)
    assert f7(Fraction(1, 2)) * 2 == Fp(1, 7)
    assert f7(3) / f7(3) == Fp(1, 7)
    with pytest.raises(ValueError):
        prime_field(9)
    f = (mono(E10, 2) - mono(E11, 2)).map_coefficients(f7)
    assert f.make_monic(SIMP).coefficient(E11) == Fp(-1, 7)


# random polynomials on a small quiver
V = Vertex("v")
LOOPS = Quiver((V,), (Edge("x", "v", "v"), Edge("y", "v", "v")))
LOOP_WORDS = words_between(LOOPS, "v", "v", 4)
ORDER = DegLex(["y", "x"])

polys = st.dictionaries(st.sampled_from(LOOP_WORDS),
                        st.fractions(min_value=-5, max_value=5, max_denominator=6),
                        max_size=6).map(lambda d: PartialPoly("v", "v", d))


@given(polys, polys)
def test_exact_cancellation(f, g):
    assert (f + g) - g == f
    assert f - f == PartialPoly.zero("v", "v")


@given(polys, polys)
def test_leading_of_sum(f, g):
    s = f + g
    if s.is_zero():
        return
    lead_s = ORDER.key(s.leading_word(ORDER))
    cands = [ORDER.key(p.leading_word(ORDER)) for p in (f, g) if not p.is_zero()]
    assert lead_s <= max(cands)
    if not f.is_zero() and not g.is_zero():
        lf, cf = f.leading(ORDER)
        lg, cg = g.leading(ORDER)
        if lf != lg or cf + cg != 0:
            assert lead_s == max(cands)


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_leading_of_word_multiple(seed):
    rng = random.Random(seed)
    pres = build_cyclic(3, "SC")
    order = CyclicOrder()
    ws = words_between(pres.quiver, "[1]", "[2]", 4)
    f = PartialPoly("[1]", "[2]", {w: Fraction(rng.randint(1, 5)) for w in rng.sample(ws, 4)})
    lefts = words_between(pres.quiver, "[2]", f"[{rng.randint(0, 3)}]", 3)
    rights = words_between(pres.quiver, f"[{rng.randint(0, 3)}]", "[1]", 3)
    if not lefts or not rights:
        return
    a, b = rng.choice(lefts), rng.choice(rights)
    lead = f.leading_word(order)
    expected = Word(b.source, a.target, a.edges + lead.edges + b.edges)
    assert mul_word(a, f, b).leading_word(order) == expected
