"""Compositions, reduction and completion for relation sets in a path category.

A :class:`Basis` is a finite list of monic polynomials together with a
multi-pattern index over their leading words.  On top of it:

* :func:`reduce` rewrites a polynomial and records a replayable
  :class:`ReductionTrace` (``input == remainder + sum(alpha * a.s.b)``);
* :func:`compositions` enumerates all inclusion and intersection ambiguities;
* :func:`check_gsb` decides whether every composition reduces to zero;
* :func:`complete` adjoins reduced nontrivial compositions until closure;
* :func:`irr_enumerate` lists the words avoiding every leading word.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import random
import time
import warnings
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .automaton import Automaton
from .orders import MonomialOrder
from .poly import Coefficient, PartialPoly, mul_word
from .quiver import Overlap, Quiver, Word, _raw, overlap_pairs

log = logging.getLogger(__name__)


class BasisError(ValueError):
    pass


class IdentityInIdeal(BasisError):
    """Completion derived a nonzero multiple of an identity, so every word
    through that vertex lies in the ideal."""


class Basis:
    """Monic relations oriented by ``order``, indexed by their leading words."""

    def __init__(
        self,
        quiver: Quiver,
        order: MonomialOrder,
        elements: Sequence[PartialPoly],
        labels: Sequence[str] | None = None,
    ) -> None:
        if labels is None:
            labels = [f"s{k}" for k in range(len(elements))]
        if len(labels) != len(elements):
            raise BasisError("one label per element required")
        monic = []
        leading = []
        for p, lab in zip(elements, labels):
            if p.is_zero():
                raise BasisError(f"basis element {lab} is zero")
            p = p.make_monic(order)
            lw = p.leading_word(order)
            if lw.is_identity:
                raise BasisError(f"basis element {lab} has an identity leading word {lw}")
            monic.append(p)
            leading.append(lw)
        self.quiver = quiver
        self.order = order
        self.elements: tuple[PartialPoly, ...] = tuple(monic)
        self.labels: tuple[str, ...] = tuple(labels)
        self.leading_words: tuple[Word, ...] = tuple(leading)
        self._automaton = Automaton.from_patterns(
            (k, lw.names) for k, lw in enumerate(leading)
        )
        self._occ_cache: dict[tuple[str, ...], list[tuple[int, int]]] = {}

    @classmethod
    def from_presentation(cls, presentation, order: MonomialOrder | None = None) -> Basis:
        order = order or presentation.default_order
        polys = [PartialPoly.binomial(r.lhs, r.rhs) for r in presentation.relations]
        return cls(presentation.quiver, order, polys, [r.label for r in presentation.relations])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[PartialPoly]:
        return iter(self.elements)

    def __getstate__(self) -> dict:
        state = self.__dict__.copy()
        state["_occ_cache"] = {}
        return state

    @property
    def automaton(self) -> Automaton:
        return self._automaton

    def occurrences(self, word: Word) -> list[tuple[int, int]]:
        """All ``(start, element index)`` where a leading word occurs in ``word``."""
        names = word.names
        hits = self._occ_cache.get(names)
        if hits is None:
            hits = self._automaton.scan(names) if names else []
            self._occ_cache[names] = hits
        return hits

    def is_irreducible(self, word: Word) -> bool:
        return not self.occurrences(word)

    def relabel(self, labels: Sequence[str]) -> Basis:
        return Basis(self.quiver, self.order, self.elements, labels)

    def as_set(self) -> frozenset[PartialPoly]:
        return frozenset(self.elements)

    def render(self, pretty: bool = False) -> list[str]:
        return [
            f"{lab}: {p.render(self.order, pretty)}" for lab, p in zip(self.labels, self.elements)
        ]


# --- reduction ------------------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    coeff: Coefficient
    a: Word
    index: int
    b: Word
    word: Word  # the eliminated word a . lead(s) . b


@dataclass
class ReductionTrace:
    input: PartialPoly
    steps: list[ReductionStep]
    remainder: PartialPoly
    elements: tuple[PartialPoly, ...]
    labels: tuple[str, ...]

    def replay(self) -> bool:
        """Recompute ``remainder + sum(alpha * a.s.b)`` and compare with the input."""
        acc = self.remainder
        for st in self.steps:
            acc = acc + mul_word(st.a, self.elements[st.index], st.b).scale(st.coeff)
        return acc == self.input

    def to_dict(self, order: MonomialOrder | None = None) -> dict:
        return {
            "input": self.input.render(order),
            "remainder": self.remainder.render(order),
            "steps": [
                {
                    "coeff": str(st.coeff),
                    "a": str(st.a),
                    "s": self.labels[st.index],
                    "b": str(st.b),
                    "word": str(st.word),
                }
                for st in self.steps
            ],
        }


class DescentError(RuntimeError):
    """A reduction step did not decrease the eliminated word."""


def reduce(
    basis: Basis,
    f: PartialPoly,
    mode: str = "full",
    rng: random.Random | None = None,
) -> ReductionTrace:
    """Rewrite ``f`` by the basis.

    ``mode="head"`` stops once the leading word is irreducible; ``"full"``
    also normalises every lower term.  Occurrences are chosen leftmost first,
    then by lowest element index, unless ``rng`` is given, in which case a
    random occurrence is used.
    """
    if mode not in ("full", "head"):
        raise ValueError(f"unknown reduction mode {mode!r}")
    key = basis.order.key
    work = dict(f.terms)
    remainder: dict[Word, Coefficient] = {}
    steps: list[ReductionStep] = []
    last = None
    elements, leading = basis.elements, basis.leading_words
    while work:
        u = max(work, key=key)
        ku = key(u)
        if last is not None and not ku < last:
            raise DescentError(f"reduction visited {u} after a word that was not larger")
        last = ku
        occ = basis.occurrences(u)
        if not occ:
            if mode == "head":
                break
            remainder[u] = work.pop(u)
            continue
        start, idx = occ[0] if rng is None else rng.choice(occ)
        alpha = work[u]
        ue = u.edges
        a_edges = ue[:start]
        b_edges = ue[start + len(leading[idx]) :]
        a = u.slice(0, start)
        b = u.slice(start + len(leading[idx]), len(ue))
        for w, c in elements[idx].terms.items():
            ww = _raw(b.source, a.target, a_edges + w.edges + b_edges)
            nc = work.get(ww, 0) - alpha * c
            if nc:
                work[ww] = nc
            else:
                work.pop(ww, None)
        steps.append(ReductionStep(alpha, a, idx, b, u))
    remainder.update(work)
    return ReductionTrace(
        f,
        steps,
        PartialPoly._trusted(f.source, f.target, remainder),
        basis.elements,
        basis.labels,
    )


def normal_form(basis: Basis, f: PartialPoly | Word) -> PartialPoly:
    if isinstance(f, Word):
        f = PartialPoly.monomial(f)
    return reduce(basis, f).remainder


# --- compositions -----------------------------------------------------------


@dataclass(frozen=True)
class Composition:
    f: int
    g: int
    f_label: str
    g_label: str
    w: Word
    a: Word
    b: Word
    kind: str
    value: PartialPoly

    @property
    def families(self) -> tuple[str, str]:
        return (family(self.f_label), family(self.g_label))


def family(label: str) -> str:
    return label.split("[", 1)[0]


def composition_value(f: PartialPoly, g: PartialPoly, ov: Overlap) -> PartialPoly:
    if ov.kind == "inclusion":
        return f - mul_word(ov.a, g, ov.b)
    return mul_word(Word.identity(f.target), f, ov.b) - mul_word(ov.a, g, Word.identity(g.source))


def pair_overlaps(basis: Basis, i: int, j: int) -> list[Overlap]:
    out = []
    for ov in overlap_pairs(basis.leading_words[i], basis.leading_words[j]):
        if i == j and ov.kind == "inclusion" and ov.a.is_identity and ov.b.is_identity:
            continue
        out.append(ov)
    return out


def candidate_pairs(basis: Basis) -> list[tuple[int, int]]:
    """Ordered pairs ``(i, j)`` whose leading words can overlap at all."""
    by_first: dict[str, list[int]] = {}
    for j, lw in enumerate(basis.leading_words):
        by_first.setdefault(lw.edges[0].name, []).append(j)
    pairs = []
    for i, lw in enumerate(basis.leading_words):
        js: set[int] = set()
        for name in set(lw.names):
            js.update(by_first.get(name, ()))
        pairs.extend((i, j) for j in sorted(js))
    return pairs


def _compositions_for(basis: Basis, i: int, j: int) -> Iterator[Composition]:
    f, g = basis.elements[i], basis.elements[j]
    for ov in pair_overlaps(basis, i, j):
        yield Composition(
            i, j, basis.labels[i], basis.labels[j], ov.w, ov.a, ov.b, ov.kind,
            composition_value(f, g, ov),
        )


def compositions(basis: Basis) -> Iterator[Composition]:
    """Every inclusion/intersection composition over ordered pairs, self-pairs included."""
    for i, j in candidate_pairs(basis):
        yield from _compositions_for(basis, i, j)


@dataclass
class Triviality:
    trivial: bool
    trace: ReductionTrace


def is_trivial(basis: Basis, c: Composition) -> Triviality:
    """Reduce the composition fully; trivial iff the remainder is zero.

    Every eliminated word is checked to lie strictly below the ambiguity word.
    """
    trace = reduce(basis, c.value)
    kw = basis.order.key(c.w)
    for st in trace.steps:
        if not basis.order.key(st.word) < kw:
            raise DescentError(f"composition of {c.f_label},{c.g_label} at {c.w} used {st.word}")
    return Triviality(trace.remainder.is_zero(), trace)


@dataclass
class Scope:
    max_dim: int | None = None
    max_len: int | None = None

    def contains(self, quiver: Quiver, w: Word) -> bool:
        if self.max_len is not None and len(w) > self.max_len:
            return False
        if self.max_dim is not None:
            for v in w.vertices():
                d = quiver.vertex(v).dim
                if d is not None and d > self.max_dim:
                    return False
        return True

    def to_dict(self) -> dict:
        return {"max_dim": self.max_dim, "max_len": self.max_len}


@dataclass
class GSBReport:
    order: str
    scope: Scope
    n_relations: int
    n_compositions: int = 0
    n_trivial: int = 0
    n_out_of_scope: int = 0
    failures: list[dict] = field(default_factory=list)
    pair_counts: Counter = field(default_factory=Counter)
    elapsed: float = 0.0
    traces: list[ReductionTrace] = field(default_factory=list, repr=False)
    failing: list[tuple[Composition, ReductionTrace]] = field(default_factory=list, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def failing_pairs(self) -> set[tuple[str, str]]:
        return {(family(d["f"]), family(d["g"])) for d in self.failures}

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "scope": self.scope.to_dict(),
            "n_relations": self.n_relations,
            "n_compositions": self.n_compositions,
            "n_trivial": self.n_trivial,
            "n_out_of_scope": self.n_out_of_scope,
            "failures": self.failures,
            "pair_counts": {f"{a},{b}": n for (a, b), n in sorted(self.pair_counts.items())},
            "elapsed": round(self.elapsed, 4),
            "ok": self.ok,
        }


def _check_pairs(basis: Basis, pairs: list[tuple[int, int]], scope: Scope, keep: bool):
    rows = []
    for i, j in pairs:
        for c in _compositions_for(basis, i, j):
            if not scope.contains(basis.quiver, c.w):
                rows.append((c, None, None))
                continue
            t = is_trivial(basis, c)
            rows.append((c, t.trivial, t.trace if (keep or not t.trivial) else None))
    return rows


def check_gsb(
    basis: Basis,
    scope: Scope | None = None,
    *,
    keep_traces: bool = False,
    threads: int = 1,
) -> GSBReport:
    """Check every composition of the basis for triviality.

    Compositions whose ambiguity word leaves ``scope`` are counted as
    out-of-scope rather than judged.
    """
    scope = scope or Scope()
    t0 = time.perf_counter()
    report = GSBReport(basis.order.spec(), scope, len(basis))
    pairs = candidate_pairs(basis)
    if threads > 1 and len(pairs) > 1:
        # contiguous chunks so the merged rows keep the serial order
        size = -(-len(pairs) // threads)
        chunks = [pairs[k : k + size] for k in range(0, len(pairs), size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(_check_pairs, itertools.repeat(basis), chunks,
                         itertools.repeat(scope), itertools.repeat(keep_traces))
            )
        rows = [r for chunk in results for r in chunk]
    else:
        rows = _check_pairs(basis, pairs, scope, keep_traces)
    for c, trivial, trace in rows:
        report.n_compositions += 1
        report.pair_counts[c.families] += 1
        if trivial is None:
            report.n_out_of_scope += 1
            continue
        if trace is not None and keep_traces:
            report.traces.append(trace)
        if trivial:
            report.n_trivial += 1
        else:
            report.failures.append(
                {
                    "f": c.f_label,
                    "g": c.g_label,
                    "kind": c.kind,
                    "w": str(c.w),
                    "remainder": trace.remainder.render(basis.order),
                }
            )
            report.failing.append((c, trace))
    report.elapsed = time.perf_counter() - t0
    return report


# --- completion -------------------------------------------------------------


@dataclass
class CompletionEvent:
    action: str  # "adjoined" | "removed" | "reinserted"
    label: str
    poly: str
    source: str  # provenance: composition or removed element


@dataclass
class Completion:
    basis: Basis
    log: list[CompletionEvent]
    converged: bool
    adjoined: int
    report: GSBReport | None = None

    def adjoined_labels(self) -> list[str]:
        return [e.label for e in self.log if e.action == "adjoined"]


class _WorkingSet:
    """Mutable set of monic relations with inter-reduction on insertion."""

    def __init__(self, quiver: Quiver, order: MonomialOrder) -> None:
        self.quiver = quiver
        self.order = order
        self.alive: dict[int, tuple[PartialPoly, str]] = {}
        self.ids = itertools.count()
        self.log: list[CompletionEvent] = []
        self._basis: Basis | None = None
        self._pos: dict[int, int] = {}

    def basis(self) -> Basis:
        if self._basis is None:
            ids = sorted(self.alive)
            self._pos = {k: n for n, k in enumerate(ids)}
            self._basis = Basis(
                self.quiver, self.order,
                [self.alive[k][0] for k in ids], [self.alive[k][1] for k in ids],
            )
        return self._basis

    def leading(self, k: int) -> Word:
        return self.alive[k][0].leading_word(self.order)

    def insert(self, poly: PartialPoly, label: str, source: str, action: str) -> list[int]:
        """Reduce ``poly``, add it, and re-reduce elements its leading word divides.

        Returns the ids of all elements that were (re)inserted.
        """
        new_ids = []
        queue = [(poly, label, source, action)]
        while queue:
            p, lab, src, act = queue.pop(0)
            if self.alive:
                p = reduce(self.basis(), p).remainder
            if p.is_zero():
                continue
            p = p.make_monic(self.order)
            lw = p.leading_word(self.order)
            if lw.is_identity:
                raise IdentityInIdeal(f"{src} yields {p.render(self.order)}: id({lw.source}) lies in the ideal")
            k = next(self.ids)
            displaced = []
            for old, (op, olab) in list(self.alive.items()):
                if _contains(self.leading(old), lw):
                    displaced.append((op, olab))
                    del self.alive[old]
                    if old in new_ids:
                        new_ids.remove(old)
                    self.log.append(CompletionEvent("removed", olab, op.render(self.order), lab))
            self.alive[k] = (p, lab)
            self._basis = None
            new_ids.append(k)
            self.log.append(CompletionEvent(act, lab, p.render(self.order), src))
            for op, olab in displaced:
                queue.append((op, olab + "'", f"reduced by {lab}", "reinserted"))
        return new_ids

    def tail_reduce(self) -> None:
        changed = False
        for k in sorted(self.alive):
            p, lab = self.alive[k]
            lw, c = p.leading(self.order)
            tail = p - PartialPoly.monomial(lw, c)
            if tail.is_zero():
                continue
            others = Basis(
                self.quiver, self.order,
                [self.alive[j][0] for j in sorted(self.alive)],
                [self.alive[j][1] for j in sorted(self.alive)],
            )
            nt = reduce(others, tail).remainder
            if nt != tail:
                self.alive[k] = (PartialPoly.monomial(lw, c) + nt, lab)
                changed = True
        if changed:
            self._basis = None


def _contains(haystack: Word, needle: Word) -> bool:
    h, n = haystack.names, needle.names
    k = len(n)
    return any(h[s : s + k] == n for s in range(len(h) - k + 1))


def complete(
    basis: Basis,
    *,
    max_steps: int = 1000,
    scope: Scope | None = None,
) -> Completion:
    """Shirshov-style completion with inter-reduction.

    Nontrivial compositions (processed smallest ambiguity first) are reduced,
    made monic and adjoined; older elements whose leading word contains the
    new one are removed and re-inserted in reduced form.  Stops when every
    in-scope composition is trivial or after ``max_steps`` adjunctions.  The
    result is tail-reduced.
    """
    scope = scope or Scope()
    order = basis.order
    ws = _WorkingSet(basis.quiver, order)
    for p, lab in zip(basis.elements, basis.labels):
        ws.insert(p, lab, "input", "input")
    adjoined = 0
    counter = itertools.count()
    heap: list = []
    seen_pairs: set[tuple[int, int]] = set()

    def push_pairs(new_ids: Iterable[int]) -> None:
        for n in new_ids:
            if n not in ws.alive:
                continue
            for o in list(ws.alive):
                for x, y in ((n, o), (o, n)):
                    if (x, y) in seen_pairs:
                        continue
                    seen_pairs.add((x, y))
                    lx, ly = ws.leading(x), ws.leading(y)
                    for ov in overlap_pairs(lx, ly):
                        if x == y and ov.kind == "inclusion" and ov.a.is_identity and ov.b.is_identity:
                            continue
                        heapq.heappush(heap, (order.key(ov.w), next(counter), x, y, ov))

    push_pairs(list(ws.alive))
    converged = True
    while True:
        while heap:
            _, _, x, y, ov = heapq.heappop(heap)
            if x not in ws.alive or y not in ws.alive:
                continue
            if not scope.contains(basis.quiver, ov.w):
                continue
            (f, flab), (g, glab) = ws.alive[x], ws.alive[y]
            rem = reduce(ws.basis(), composition_value(f, g, ov)).remainder
            if rem.is_zero():
                continue
            if adjoined >= max_steps:
                converged = False
                heap.clear()
                break
            adjoined += 1
            label = f"c{adjoined}"
            log.debug("adjoining %s from (%s,%s) at %s", label, flab, glab, ov.w)
            push_pairs(ws.insert(rem, label, f"({flab},{glab}) at {ov.w}", "adjoined"))
        if not converged:
            break
        # safety net: re-examine the final set from scratch
        final = check_gsb(ws.basis(), scope)
        if final.ok:
            break
        for c, _ in final.failing:
            ids = sorted(ws.alive)
            x, y = ids[c.f], ids[c.g]
            heapq.heappush(heap, (order.key(c.w), next(counter), x, y,
                                  Overlap(c.w, c.a, c.b, c.kind)))
    ws.tail_reduce()
    result = ws.basis()
    report = check_gsb(result, scope) if converged else None
    return Completion(result, ws.log, converged, adjoined, report)


def interreduce(basis: Basis) -> Basis:
    """The reduced basis: minimal leading words, fully reduced tails."""
    ws = _WorkingSet(basis.quiver, basis.order)
    for p, lab in zip(basis.elements, basis.labels):
        ws.insert(p, lab, "input", "input")
    ws.tail_reduce()
    return ws.basis()


# --- irreducible words and membership ---------------------------------------


def irr_enumerate(basis: Basis, source: str, target: str, max_len: int) -> list[Word]:
    """Words ``source -> target`` of length ``<= max_len`` avoiding every leading word.

    Depth-first over prefixes with the automaton state threaded through, so
    a prefix is dropped as soon as a leading word completes inside it.
    """
    q = basis.quiver
    q.vertex(source)
    q.vertex(target)
    dist = q.distances_from(source)
    ac = basis.automaton
    out: list[Word] = []

    def walk(current: str, prefix: tuple, state: int, remaining: int) -> None:
        if current == source:
            out.append(_raw(source, target, prefix))
        if remaining == 0:
            return
        for e in q.edges_into(current):
            d = dist.get(e.source)
            if d is None or d > remaining - 1:
                continue
            s = ac.step(state, e.name)
            if ac.accepts(s):
                continue
            walk(e.source, prefix + (e,), s, remaining - 1)

    if target in dist:
        walk(target, (), 0, max_len)
    out.sort(key=lambda w: (len(w), w.names))
    return out


@dataclass
class Membership:
    member: bool
    trace: ReductionTrace


def membership(basis: Basis, f: PartialPoly, report: GSBReport | None = None) -> Membership:
    """Ideal membership by full reduction; exact only when the basis is closed."""
    if report is None or not report.ok:
        warnings.warn(
            "membership test against a basis not verified by check_gsb; "
            "a nonzero remainder does not prove non-membership",
            stacklevel=2,
        )
    trace = reduce(basis, f)
    return Membership(trace.remainder.is_zero(), trace)
