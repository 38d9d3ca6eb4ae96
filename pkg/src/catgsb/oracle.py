"""Weakly monotone maps ``[q] -> [p]``: a concrete model of the simplicial category.

Deliberately independent of the rewriting engine: generators are evaluated
from their defining formulas, hom-sets are enumerated by brute force, and
factorization reads the canonical word off the image and the collapsed
positions of a map.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .quiver import Edge, Word

_NAME = re.compile(r"^([EH])\((\d+),(\d+)\)$")


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class MonotoneMap:
    q: int
    p: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.q + 1:
            raise OracleError(f"a map out of [{self.q}] needs {self.q + 1} values")
        if any(not 0 <= v <= self.p for v in self.values):
            raise OracleError(f"values {self.values} leave [{self.p}]")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise OracleError(f"values {self.values} are not weakly increasing")

    @classmethod
    def identity(cls, p: int) -> MonotoneMap:
        return cls(p, p, tuple(range(p + 1)))

    def after(self, first: MonotoneMap) -> MonotoneMap:
        """``self . first``: apply ``first``, then ``self``."""
        if first.p != self.q:
            raise OracleError(f"cannot compose [{first.q}]->[{first.p}] with [{self.q}]->[{self.p}]")
        return MonotoneMap(first.q, self.p, tuple(self.values[v] for v in first.values))


def eval_generator(kind: str, q: int, i: int) -> MonotoneMap:
    """``E``/``ε``: the face ``[q-1] -> [q]`` skipping ``i``;
    ``H``/``η``: the degeneracy ``[q+1] -> [q]`` repeating ``i``."""
    if kind in ("E", "ε"):
        if q < 1 or not 0 <= i <= q:
            raise OracleError(f"face index out of range: q={q}, i={i}")
        return MonotoneMap(q - 1, q, tuple(j if i > j else j + 1 for j in range(q)))
    if kind in ("H", "η"):
        if q < 0 or not 0 <= i <= q:
            raise OracleError(f"degeneracy index out of range: q={q}, i={i}")
        return MonotoneMap(q + 1, q, tuple(j if i >= j else j - 1 for j in range(q + 2)))
    raise OracleError(f"unknown generator kind {kind!r}")


def _dim(vertex: str) -> int:
    m = re.fullmatch(r"\[(\d+)\]", vertex)
    if not m:
        raise OracleError(f"vertex {vertex!r} is not an object [p]")
    return int(m.group(1))


def eval_edge(edge: Edge) -> MonotoneMap:
    m = _NAME.match(edge.name)
    if not m:
        raise OracleError(f"edge {edge.name!r} is not a face or degeneracy")
    kind, q, i = m.group(1), int(m.group(2)), int(m.group(3))
    return eval_generator(kind, q, i)


def eval_word(w: Word) -> MonotoneMap:
    """Compose generator maps; the rightmost edge is applied first."""
    result = MonotoneMap.identity(_dim(w.source))
    for e in reversed(w.edges):
        result = eval_edge(e).after(result)
    return result


def enumerate_monotone(q: int, p: int) -> list[MonotoneMap]:
    """Every weakly monotone ``[q] -> [p]``: filter all ``(p+1)**(q+1)`` functions."""
    if p < 0 or q < 0:
        raise OracleError("dimensions must be non-negative")
    out = []
    for values in itertools.product(range(p + 1), repeat=q + 1):
        if all(a <= b for a, b in zip(values, values[1:])):
            out.append(MonotoneMap(q, p, values))
    return out


def factorize(mu: MonotoneMap) -> Word:
    """Canonical word ``E(p,i1)...E(p-m+1,im) H(q-n,j1)...H(q-1,jn)``.

    ``i1 > ... > im`` are the points of ``[p]`` missed by ``mu``;
    ``j1 < ... < jn`` are the ``j`` with ``mu(j) == mu(j+1)``.
    """
    image = set(mu.values)
    missed = sorted((k for k in range(mu.p + 1) if k not in image), reverse=True)
    collapsed = [j for j in range(mu.q) if mu.values[j] == mu.values[j + 1]]
    m, n = len(missed), len(collapsed)
    assert mu.q - n + m == mu.p
    edges = [Edge(f"E({mu.p - k},{i})", f"[{mu.p - k - 1}]", f"[{mu.p - k}]")
             for k, i in enumerate(missed)]
    edges += [Edge(f"H({mu.q - n + k},{j})", f"[{mu.q - n + k + 1}]", f"[{mu.q - n + k}]")
              for k, j in enumerate(collapsed)]
    if not edges:
        return Word.identity(f"[{mu.p}]")
    return Word.of(*edges)


def is_normal_shape(w: Word) -> bool:
    """Faces then degeneracies, face superscripts strictly decreasing and
    degeneracy superscripts strictly increasing."""
    kinds = []
    for e in w.edges:
        m = _NAME.match(e.name)
        if not m:
            return False
        kinds.append((m.group(1), int(m.group(3))))
    faces = [i for k, i in kinds if k == "E"]
    degens = [i for k, i in kinds if k == "H"]
    if [k for k, _ in kinds] != ["E"] * len(faces) + ["H"] * len(degens):
        return False
    return all(a > b for a, b in zip(faces, faces[1:])) and all(
        a < b for a, b in zip(degens, degens[1:])
    )
