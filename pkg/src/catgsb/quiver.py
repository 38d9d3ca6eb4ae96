"""Quivers and the free category of paths over them.

Words are stored in applicative order: for ``edges = (x1, ..., xn)`` the
rightmost edge ``xn`` is applied first, so ``target(x[k+1]) == source(x[k])``,
``source(word) == source(xn)`` and ``target(word) == target(x1)``.  This is
the order in which composites of face and degeneracy maps are usually
written, e.g. ``E(2,1).E(1,0)`` is ``[0] -> [1] -> [2]``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

_GENERATOR_RE = re.compile(r"^([EHT])\((\d+)(?:,(\d+))?\)$")


class QuiverError(ValueError):
    """Raised on ill-typed words or inconsistent quivers."""


@dataclass(frozen=True)
class Vertex:
    name: str
    dim: int | None = None


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    target: str

    def pretty(self) -> str:
        """Unicode rendering, e.g. ``ε_2^1`` for ``E(2,1)``."""
        m = _GENERATOR_RE.match(self.name)
        if not m:
            return self.name
        kind, p, i = m.groups()
        if kind == "T":
            return f"t_{p}"
        sym = "ε" if kind == "E" else "η"
        return f"{sym}_{p}^{i}"


@dataclass(frozen=True)
class Word:
    """A path in the free category; the empty edge tuple is ``1_source``."""

    source: str
    target: str
    edges: tuple[Edge, ...] = ()

    def __post_init__(self) -> None:
        edges = self.edges
        if not edges:
            if self.source != self.target:
                raise QuiverError(
                    f"identity word needs source == target, got {self.source!r} -> {self.target!r}"
                )
            return
        if edges[0].target != self.target or edges[-1].source != self.source:
            raise QuiverError(f"word endpoints do not match its edges: {self}")
        for left, right in zip(edges, edges[1:]):
            if right.target != left.source:
                raise QuiverError(
                    f"edges {left.name} and {right.name} are not composable "
                    f"({right.name} ends at {right.target!r}, {left.name} starts at {left.source!r})"
                )

    @classmethod
    def identity(cls, vertex: str) -> Word:
        return cls(vertex, vertex, ())

    @classmethod
    def of(cls, *edges: Edge) -> Word:
        """Build a word from one or more edges, written in applicative order."""
        if not edges:
            raise QuiverError("use Word.identity for the empty word")
        return cls(edges[-1].source, edges[0].target, tuple(edges))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_identity(self) -> bool:
        return not self.edges

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.edges)

    def vertices(self) -> tuple[str, ...]:
        """Every vertex the path visits, from target back to source."""
        if not self.edges:
            return (self.source,)
        return (self.edges[0].target,) + tuple(e.source for e in self.edges)

    def slice(self, start: int, stop: int) -> Word:
        """The contiguous subword ``edges[start:stop]``; empty slices become identities."""
        edges = self.edges[start:stop]
        if edges:
            return _raw(edges[-1].source, edges[0].target, edges)
        # the vertex sitting between edges[start-1] and edges[start]
        if start == 0:
            v = self.target
        else:
            v = self.edges[start - 1].source
        return _raw(v, v, ())

    def __str__(self) -> str:
        if not self.edges:
            return f"id({self.source})"
        return ".".join(e.name for e in self.edges)

    def pretty(self) -> str:
        if not self.edges:
            return f"1_{self.source}"
        return " ".join(e.pretty() for e in self.edges)


def _raw(source: str, target: str, edges: tuple[Edge, ...]) -> Word:
    # skips composability validation; callers guarantee it
    w = object.__new__(Word)
    object.__setattr__(w, "source", source)
    object.__setattr__(w, "target", target)
    object.__setattr__(w, "edges", edges)
    return w


def compose(left: Word, right: Word) -> Word:
    """``left . right``: apply ``right`` first, then ``left``."""
    if left.source != right.target:
        raise QuiverError(
            f"cannot compose {left} after {right}: {right} ends at {right.target!r} "
            f"but {left} starts at {left.source!r}"
        )
    return _raw(right.source, left.target, left.edges + right.edges)


def compose_all(*words: Word) -> Word:
    result = words[0]
    for w in words[1:]:
        result = compose(result, w)
    return result


def find_subword_occurrences(haystack: Word, needle: Word) -> list[tuple[Word, Word]]:
    """All ``(a, b)`` with ``haystack == a . needle . b``, left to right."""
    if needle.is_identity:
        raise QuiverError("cannot search for an identity subword")
    h, n = haystack.edges, needle.edges
    k = len(n)
    out = []
    for start in range(len(h) - k + 1):
        if h[start : start + k] == n:
            out.append((haystack.slice(0, start), haystack.slice(start + k, len(h))))
    return out


@dataclass(frozen=True)
class Overlap:
    w: Word
    a: Word
    b: Word
    kind: str  # "inclusion" | "intersection"


def overlap_pairs(u: Word, v: Word) -> list[Overlap]:
    """Ambiguity words of ``u`` (left) and ``v`` (right).

    inclusion:    ``w == u == a . v . b``
    intersection: ``w == u . b == a . v`` with a common part of length
                  ``1 <= k < min(|u|, |v|)``
    """
    if u.is_identity or v.is_identity:
        raise QuiverError("overlaps are only defined for non-identity words")
    out = [Overlap(u, a, b, "inclusion") for a, b in find_subword_occurrences(u, v)]
    ue, ve = u.edges, v.edges
    for k in range(min(len(ue), len(ve)) - 1, 0, -1):
        if ue[-k:] == ve[:k]:
            edges = ue + ve[k:]
            w = _raw(ve[-1].source, ue[0].target, edges)
            a = _raw(ue[len(ue) - k].target, ue[0].target, ue[: len(ue) - k])
            b = _raw(ve[-1].source, ve[k - 1].source, ve[k:])
            out.append(Overlap(w, a, b, "intersection"))
    return out


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _vertex_index: dict[str, Vertex] = field(init=False, repr=False, compare=False)
    _edge_index: dict[str, Edge] = field(init=False, repr=False, compare=False)
    _into: dict[str, tuple[Edge, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vindex: dict[str, Vertex] = {}
        for v in self.vertices:
            if v.name in vindex:
                raise QuiverError(f"duplicate vertex {v.name!r}")
            vindex[v.name] = v
        eindex: dict[str, Edge] = {}
        into: dict[str, list[Edge]] = {v: [] for v in vindex}
        for e in self.edges:
            if e.name in eindex:
                raise QuiverError(f"duplicate edge {e.name!r}")
            for end in (e.source, e.target):
                if end not in vindex:
                    raise QuiverError(f"edge {e.name!r} refers to unknown vertex {end!r}")
            eindex[e.name] = e
            into[e.target].append(e)
        object.__setattr__(self, "_vertex_index", vindex)
        object.__setattr__(self, "_edge_index", eindex)
        object.__setattr__(
            self, "_into", {v: tuple(sorted(es, key=lambda e: e.name)) for v, es in into.items()}
        )

    def vertex(self, name: str) -> Vertex:
        try:
            return self._vertex_index[name]
        except KeyError:
            raise QuiverError(f"unknown vertex {name!r}") from None

    def edge(self, name: str) -> Edge:
        try:
            return self._edge_index[name]
        except KeyError:
            raise QuiverError(f"unknown edge {name!r}") from None

    def has_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def edges_into(self, vertex: str) -> tuple[Edge, ...]:
        return self._into[vertex]

    def word(self, *names: str) -> Word:
        """Word from edge names in applicative order."""
        return Word.of(*(self.edge(n) for n in names))

    def identity(self, vertex: str) -> Word:
        self.vertex(vertex)
        return Word.identity(vertex)

    def distances_from(self, source: str) -> dict[str, int]:
        """Shortest path length from ``source`` to every reachable vertex."""
        dist = {source: 0}
        frontier = [source]
        out: dict[str, list[str]] = {}
        for e in self.edges:
            out.setdefault(e.source, []).append(e.target)
        while frontier:
            nxt = []
            for v in frontier:
                for t in out.get(v, ()):
                    if t not in dist:
                        dist[t] = dist[v] + 1
                        nxt.append(t)
            frontier = nxt
        return dist


def enumerate_words(q: Quiver, source: str, target: str, max_len: int) -> Iterator[Word]:
    """All words ``source -> target`` of length ``<= max_len``.

    Yielded by length, then lexicographically by edge names.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    q.vertex(source)
    q.vertex(target)
    dist = q.distances_from(source)

    def walk(current: str, prefix: tuple[Edge, ...], remaining: int) -> Iterator[Word]:
        # prefix is the left part of the word; current is its source vertex
        if remaining == 0:
            if current == source:
                yield _raw(source, target, prefix)
            return
        for e in q.edges_into(current):
            d = dist.get(e.source)
            if d is not None and d <= remaining - 1:
                yield from walk(e.source, prefix + (e,), remaining - 1)

    if target not in dist:
        return
    for length in range(max_len + 1):
        yield from walk(target, (), length)


def words_between(q: Quiver, source: str, target: str, max_len: int) -> list[Word]:
    return list(enumerate_words(q, source, target, max_len))


def all_words(q: Quiver, max_len: int) -> Iterable[Word]:
    for s in q.vertices:
        for t in q.vertices:
            yield from enumerate_words(q, s.name, t.name, max_len)
