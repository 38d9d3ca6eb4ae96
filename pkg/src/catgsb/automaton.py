"""Aho-Corasick automaton over edge names.

Used to find every leading word of a basis inside a path in one pass, and to
prune the depth-first search that enumerates irreducible words: a prefix is
abandoned as soon as the automaton state reports a completed pattern.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Hashable, Iterable, Sequence


class Automaton:
    """Multi-pattern matcher over sequences of hashable symbols.

    Patterns are added with an integer id; ``build()`` must run before
    scanning.  States are plain ints, 0 being the root.
    """

    def __init__(self) -> None:
        self._goto: list[dict[Hashable, int]] = [{}]
        self._fail: list[int] = [0]
        self._out: list[list[tuple[int, int]]] = [[]]  # (pattern id, length)
        self._built = False
        self._delta: dict[tuple[int, Hashable], int] = {}

    @classmethod
    def from_patterns(cls, patterns: Iterable[tuple[int, Sequence[Hashable]]]) -> Automaton:
        ac = cls()
        for pid, pat in patterns:
            ac.add(pid, pat)
        ac.build()
        return ac

    def add(self, pid: int, pattern: Sequence[Hashable]) -> None:
        if not pattern:
            raise ValueError("empty pattern")
        node = 0
        for sym in pattern:
            nxt = self._goto[node].get(sym)
            if nxt is None:
                nxt = len(self._goto)
                self._goto.append({})
                self._fail.append(0)
                self._out.append([])
                self._goto[node][sym] = nxt
            node = nxt
        self._out[node].append((pid, len(pattern)))
        self._built = False

    def build(self) -> None:
        queue: deque[int] = deque()
        for child in self._goto[0].values():
            self._fail[child] = 0
            queue.append(child)
        while queue:
            node = queue.popleft()
            for sym, child in self._goto[node].items():
                f = self._fail[node]
                while f and sym not in self._goto[f]:
                    f = self._fail[f]
                target = self._goto[f].get(sym, 0)
                self._fail[child] = target if target != child else 0
                self._out[child] = self._out[child] + self._out[self._fail[child]]
                queue.append(child)
        self._delta.clear()
        self._built = True

    def step(self, state: int, sym: Hashable) -> int:
        key = (state, sym)
        cached = self._delta.get(key)
        if cached is not None:
            return cached
        s = state
        while s and sym not in self._goto[s]:
            s = self._fail[s]
        nxt = self._goto[s].get(sym, 0)
        self._delta[key] = nxt
        return nxt

    def outputs(self, state: int) -> list[tuple[int, int]]:
        return self._out[state]

    def accepts(self, state: int) -> bool:
        """True when some pattern ends at this state."""
        return bool(self._out[state])

    def scan(self, seq: Sequence[Hashable]) -> list[tuple[int, int]]:
        """Every match as ``(start, pattern id)``, sorted by start then id."""
        if not self._built:
            raise RuntimeError("call build() before scanning")
        state = 0
        hits = []
        for pos, sym in enumerate(seq):
            state = self.step(state, sym)
            for pid, length in self._out[state]:
                hits.append((pos - length + 1, pid))
        hits.sort()
        return hits
