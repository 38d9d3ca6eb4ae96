"""Monomial orders on paths.

Every order exposes ``key(word)``: a plain tuple whose Python ordering is the
monomial order, so ``u > v`` iff ``order.key(u) > order.key(v)``.  Keys are
memoised per order instance.

Three orders are provided:

``DegLex``
    length first, then left-to-right comparison under a ranking of edges.
``SimplicialOrder``
    for paths in face maps ``E(p,i)`` and degeneracies ``H(q,i)``.  A path
    ``v0 e1 v1 ... en vn`` (``ei`` faces, ``vi`` degeneracy-only factors) is
    weighted ``(n, v0, ..., vn, e1, ..., en)``; a degeneracy factor
    ``h1 ... hm`` is weighted ``(m, hm, ..., h1)`` -- note the reversal.
``CyclicOrder``
    extends the simplicial order to paths containing the loops ``T(q)``.
    Degeneracy factors may now contain runs of ``T``; a factor
    ``w0 h1 w1 ... hm wm`` (``wi`` runs ``T(q)^k``) is weighted
    ``(m, w0, ..., wm, hm, ..., h1)`` and runs compare by exponent, then
    by ``q``.

Generators compare as ``E(p,i) > E(q,j)`` iff ``p > q`` or ``p == q`` and
``i < j``, and the same for ``H``.  Tuples of unequal length compare with the
missing component minimal, which is exactly what Python does.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Sequence
from functools import lru_cache

from .quiver import Edge, Word

_GEN = re.compile(r"^([EHT])\((\d+)(?:,(\d+))?\)$")


class OrderError(ValueError):
    pass


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@lru_cache(maxsize=None)
def generator(name: str) -> tuple[str, int, int]:
    """Parse ``E(p,i)``, ``H(q,i)`` or ``T(q)`` into ``(kind, index, superscript)``."""
    m = _GEN.match(name)
    if not m:
        raise OrderError(f"edge {name!r} is not a simplicial/cyclic generator (E(p,i), H(q,i), T(q))")
    kind, p, i = m.groups()
    if kind == "T":
        if i is not None:
            raise OrderError(f"malformed cyclic generator {name!r}")
        return kind, int(p), 0
    if i is None:
        raise OrderError(f"malformed generator {name!r}")
    return kind, int(p), int(i)


def _gen_rank(name: str) -> tuple[int, int]:
    _, p, i = generator(name)
    return (p, -i)


class MonomialOrder:
    name = "abstract"

    def __init__(self) -> None:
        self._cache: dict[tuple[str, ...], tuple] = {}

    def _compute_key(self, edges: tuple[Edge, ...]) -> tuple:
        raise NotImplementedError

    def key(self, word: Word) -> tuple:
        names = word.names
        k = self._cache.get(names)
        if k is None:
            k = self._compute_key(word.edges)
            self._cache[names] = k
        return k

    def compare(self, u: Word, v: Word) -> Cmp:
        ku, kv = self.key(u), self.key(v)
        if ku == kv:
            return Cmp.EQ
        return Cmp.GT if ku > kv else Cmp.LT

    def greater(self, u: Word, v: Word) -> bool:
        return self.key(u) > self.key(v)

    def spec(self) -> str:
        """Text form used by presentation files and reports."""
        return self.name

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self.spec() == other.spec()  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(self.spec())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec()}>"

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        state["_cache"] = {}
        return state


class DegLex(MonomialOrder):
    """Degree-lexicographic order; ``ranking`` lists edges from largest to smallest."""

    name = "deglex"

    def __init__(self, ranking: Sequence[str]) -> None:
        super().__init__()
        if len(set(ranking)) != len(ranking):
            raise OrderError("deglex ranking lists an edge twice")
        self.ranking = tuple(ranking)
        n = len(ranking)
        self._rank = {name: n - pos for pos, name in enumerate(ranking)}

    def _compute_key(self, edges: tuple[Edge, ...]) -> tuple:
        try:
            return (len(edges), tuple(self._rank[e.name] for e in edges))
        except KeyError as exc:
            raise OrderError(f"edge {exc.args[0]!r} missing from the deglex ranking") from None

    def spec(self) -> str:
        return " ".join(("deglex",) + self.ranking)


def _split(names: Sequence[str], separator: str) -> tuple[list[list[str]], list[str]]:
    """Split a name sequence at every generator of kind ``separator``."""
    factors: list[list[str]] = [[]]
    seps: list[str] = []
    for n in names:
        if generator(n)[0] == separator:
            seps.append(n)
            factors.append([])
        else:
            factors[-1].append(n)
    return factors, seps


class SimplicialOrder(MonomialOrder):
    name = "simplicial"

    def _factor_key(self, names: list[str]) -> tuple:
        for n in names:
            if generator(n)[0] != "H":
                raise OrderError(f"simplicial order cannot rank {n!r}; use the cyclic order")
        return (len(names), tuple(_gen_rank(n) for n in reversed(names)))

    def _compute_key(self, edges: tuple[Edge, ...]) -> tuple:
        factors, faces = _split([e.name for e in edges], "E")
        return (
            (len(faces),)
            + tuple(self._factor_key(f) for f in factors)
            + tuple(_gen_rank(n) for n in faces)
        )


_EMPTY_RUN = (0, -1)


class CyclicOrder(SimplicialOrder):
    name = "cyclic"

    def _factor_key(self, names: list[str]) -> tuple:
        runs, degens = _split(names, "H")
        run_keys = []
        for run in runs:
            if not run:
                run_keys.append(_EMPTY_RUN)
                continue
            kinds = {generator(n) for n in run}
            if len(kinds) != 1 or next(iter(kinds))[0] != "T":
                raise OrderError(f"malformed run of cyclic operators {run}")
            run_keys.append((len(run), generator(run[0])[1]))
        return (
            (len(degens),)
            + tuple(run_keys)
            + tuple(_gen_rank(n) for n in reversed(degens))
        )


def weight(order: MonomialOrder, word: Word) -> tuple:
    """Structured weight tuple of ``word`` (edge-name tuples instead of ranks).

    For the simplicial/cyclic orders this is ``(n, v0, ..., vn, e1, ..., en)``
    with each factor ``vi`` a tuple of names; for the cyclic order every
    factor is further expanded to ``(m, w0, ..., wm, hm, ..., h1)``.
    ``reconstruct`` inverts it.
    """
    names = list(word.names)
    if isinstance(order, DegLex):
        return (len(names), tuple(names))
    factors, faces = _split(names, "E")
    if isinstance(order, CyclicOrder):
        parts: list = []
        for f in factors:
            runs, degens = _split(f, "H")
            parts.append((len(degens),) + tuple(tuple(r) for r in runs) + tuple(reversed(degens)))
    else:
        parts = [tuple(f) for f in factors]
    return (len(faces),) + tuple(parts) + tuple(faces)


def reconstruct(order: MonomialOrder, wt: tuple) -> tuple[str, ...]:
    """Edge names of the word whose weight is ``wt``."""
    if isinstance(order, DegLex):
        return tuple(wt[1])
    n = wt[0]
    factors = wt[1 : n + 2]
    faces = wt[n + 2 :]
    if isinstance(order, CyclicOrder):
        expanded = []
        for f in factors:
            m = f[0]
            runs = f[1 : m + 2]
            degens = list(reversed(f[m + 2 :]))
            names: list[str] = list(runs[0])
            for h, r in zip(degens, runs[1:]):
                names.append(h)
                names.extend(r)
            expanded.append(tuple(names))
        factors = tuple(expanded)
    out: list[str] = list(factors[0])
    for e, f in zip(faces, factors[1:]):
        out.append(e)
        out.extend(f)
    return tuple(out)


def leading_term_of_relation(order: MonomialOrder, lhs: Word, rhs: Word) -> tuple[Word, Word]:
    """Orient a relation so that the first word is the larger one."""
    if (lhs.source, lhs.target) != (rhs.source, rhs.target):
        raise OrderError(f"relation sides are not parallel: {lhs} vs {rhs}")
    c = order.compare(lhs, rhs)
    if c is Cmp.EQ:
        raise OrderError(f"relation has equal sides: {lhs}")
    return (lhs, rhs) if c is Cmp.GT else (rhs, lhs)


def make_order(name: str, ranking: Sequence[str] = ()) -> MonomialOrder:
    if name == "deglex":
        return DegLex(ranking)
    if name == "simplicial":
        return SimplicialOrder()
    if name == "cyclic":
        return CyclicOrder()
    raise OrderError(f"unknown order {name!r}")
