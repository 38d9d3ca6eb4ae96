"""Random presentations and Id(S) elements for property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from catgsb.engine import Basis
from catgsb.orders import DegLex
from catgsb.poly import PartialPoly, mul_word
from catgsb.quiver import Edge, Quiver, Vertex, Word, words_between


def random_presentation(rng: random.Random, max_vertices=3, max_edges=5, max_relations=4,
                        max_len=3) -> Basis | None:
    nv = rng.randint(1, max_vertices)
    vertices = [Vertex(f"v{k}") for k in range(nv)]
    ne = rng.randint(1, max_edges)
    edges = [Edge(chr(ord("a") + k), rng.choice(vertices).name, rng.choice(vertices).name)
             for k in range(ne)]
    q = Quiver(tuple(vertices), tuple(edges))
    ranking = [e.name for e in edges]
    rng.shuffle(ranking)
    order = DegLex(ranking)
    polys = []
    for _ in range(60):
        if len(polys) >= rng.randint(1, max_relations):
            break
        s, t = rng.choice(vertices).name, rng.choice(vertices).name
        ws = words_between(q, s, t, max_len)
        if len(ws) < 2:
            continue
        u, v = rng.sample(ws, 2)
        if u.is_identity and v.is_identity:
            continue
        p = PartialPoly.binomial(u, v)
        if p not in polys:
            polys.append(p)
    if not polys:
        return None
    return Basis(q, order, polys, [f"r{k + 1}" for k in range(len(polys))])


@lru_cache(maxsize=None)
def _words(quiver: Quiver, source: str, target: str, max_len: int) -> list[Word]:
    return words_between(quiver, source, target, max_len)


def random_poly(rng: random.Random, basis: Basis, source: str, target: str, max_len: int,
                n_terms: int = 4) -> PartialPoly:
    ws = _words(basis.quiver, source, target, max_len)
    picked = rng.sample(ws, min(n_terms, len(ws))) if ws else []
    return PartialPoly(source, target,
                       {w: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for w in picked})


def random_ideal_element(rng: random.Random, basis: Basis, max_ctx: int = 2,
                         n_terms: int = 3) -> PartialPoly | None:
    """``sum alpha_k a_k s_k b_k`` over a random common hom-set."""
    q = basis.quiver
    k0 = rng.randrange(len(basis))
    s0 = basis.elements[k0]
    a0 = rng.choice(words_between(q, s0.target, rng.choice(q.vertices).name, max_ctx) or
                    [Word.identity(s0.target)])
    b0 = rng.choice(words_between(q, rng.choice(q.vertices).name, s0.source, max_ctx) or
                    [Word.identity(s0.source)])
    total = mul_word(a0, s0, b0)
    src, tgt = total.source, total.target
    for _ in range(n_terms - 1):
        k = rng.randrange(len(basis))
        s = basis.elements[k]
        lefts = words_between(q, s.target, tgt, max_ctx + 1)
        rights = words_between(q, src, s.source, max_ctx + 1)
        if not lefts or not rights:
            continue
        alpha = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 2))
        total = total + mul_word(rng.choice(lefts), s, rng.choice(rights)).scale(alpha)
    return None if total.is_zero() else total
