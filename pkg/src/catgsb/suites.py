"""Verification batteries for the built-in simplicial and cyclic presentations."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb

from . import oracle
from .engine import Basis, check_gsb, complete, interreduce, irr_enumerate, membership
from .orders import generator
from .poly import PartialPoly
from .presentations import build_cyclic, build_simplicial, cyclic_op, degeneracy, face, obj
from .quiver import Word

# ambiguity families worked out by hand for each presentation
SIMPLICIAL_PAIRS = {("f", "f"), ("g", "g"), ("h", "f"), ("g", "h")}
CYCLIC_PAIRS = SIMPLICIAL_PAIRS | {
    ("rho1", "f"), ("rho3", "rho1"), ("rho2", "g"), ("rho2", "h"), ("rho3", "rho2"),
    ("rho3", "rho4"), ("rho3", "rho5"), ("rho4", "f"), ("rho5", "g"), ("rho5", "h"),
}

ORACLE_DIM = 5


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "elapsed": round(self.elapsed, 4),
                **self.detail}


def _timed(name: str, fn) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, bool(passed), detail, time.perf_counter() - t0)


def rho4(q: int) -> PartialPoly:
    return PartialPoly.binomial(Word.of(cyclic_op(q), face(q, 0)), Word.of(face(q, q)))


def rho5(q: int) -> PartialPoly:
    return PartialPoly.binomial(
        Word.of(cyclic_op(q), degeneracy(q, 0)),
        Word.of(degeneracy(q, q), cyclic_op(q + 1), cyclic_op(q + 1)),
    )


def default_max_len(source_dim: int, target_dim: int) -> int:
    return target_dim + 2 * source_dim + 2


def verify_simplicial(n: int) -> list[CheckResult]:
    if n < 1:
        raise ValueError("verify needs max_dim >= 1")
    pres = build_simplicial(n)
    basis = Basis.from_presentation(pres)
    top = min(n, ORACLE_DIM)
    results = []

    def gsb():
        r = check_gsb(basis)
        unlisted = sorted(f"{a},{b}" for a, b in r.pair_counts if (a, b) not in SIMPLICIAL_PAIRS)
        return r.ok, {"n_compositions": r.n_compositions, "n_trivial": r.n_trivial,
                      "failures": r.failures[:10], "unlisted_pairs": unlisted}

    def soundness():
        bad = [r.label for r in pres.relations
               if oracle.eval_word(r.lhs) != oracle.eval_word(r.rhs)]
        return not bad, {"n_relations": len(pres.relations), "unsound": bad}

    def bijection():
        bad = []
        for p in range(top + 1):
            for q in range(top + 1):
                irr = irr_enumerate(basis, obj(q), obj(p), p + 2 * q)
                maps = [oracle.eval_word(w) for w in irr]
                brute = oracle.enumerate_monotone(q, p)
                if len(set(maps)) != len(maps) or set(maps) != set(brute):
                    bad.append([q, p])
                elif any(oracle.factorize(m) != w for m, w in zip(maps, irr)):
                    bad.append([q, p])
                elif not all(oracle.is_normal_shape(w) for w in irr):
                    bad.append([q, p])
        return not bad, {"range": top, "failing_homsets": bad}

    def counting():
        bad = []
        for p in range(top + 1):
            for q in range(top + 1):
                a = len(irr_enumerate(basis, obj(q), obj(p), p + 2 * q))
                b = len(oracle.enumerate_monotone(q, p))
                c = comb(p + q + 1, q + 1)
                if not a == b == c:
                    bad.append({"q": q, "p": p, "irr": a, "brute": b, "closed": c})
        return not bad, {"range": top, "mismatches": bad}

    def closure():
        c = complete(basis)
        return c.converged and c.adjoined == 0, {"adjoined": c.adjoined}

    results.append(_timed("gsb", gsb))
    results.append(_timed("soundness", soundness))
    results.append(_timed("bijection", bijection))
    results.append(_timed("counting", counting))
    results.append(_timed("closure", closure))
    return results


def _is_cyclic_normal(w: Word) -> bool:
    names = list(w.names)
    k = 0
    while names and generator(names[-1])[0] == "T":
        names.pop()
        k += 1
    if k > int(w.source[1:-1]):
        return False
    body = Word.of(*w.edges[: len(names)]) if names else Word.identity(w.target)
    return oracle.is_normal_shape(body)


def verify_cyclic(n: int) -> list[CheckResult]:
    if n < 1:
        raise ValueError("verify needs max_dim >= 1")
    sc = Basis.from_presentation(build_cyclic(n, "SC"))
    s = Basis.from_presentation(build_cyclic(n, "S"))
    simp = Basis.from_presentation(build_simplicial(n))
    top = min(n, ORACLE_DIM)
    results = []
    state: dict = {}

    def gsb():
        r = check_gsb(sc)
        unlisted = sorted(f"{a},{b}" for a, b in r.pair_counts if (a, b) not in CYCLIC_PAIRS)
        return r.ok, {"n_compositions": r.n_compositions, "n_trivial": r.n_trivial,
                      "failures": r.failures[:10], "unlisted_pairs": unlisted}

    def defining_relations_not_closed():
        r = check_gsb(s)
        pairs = r.failing_pairs()
        need = {("rho3", "rho1"), ("rho3", "rho2")}
        return need <= pairs, {"failing_pairs": sorted(f"{a},{b}" for a, b in pairs)}

    def completion():
        c = complete(s)
        state["completion"] = c
        target = interreduce(sc)
        reduced_s = interreduce(s)
        new = c.basis.as_set() - reduced_s.as_set()
        expected = {rho4(q) for q in range(1, n + 1)} | {rho5(q) for q in range(1, n)}
        ok = c.converged and c.basis.as_set() == target.as_set() and new == expected
        return ok, {"converged": c.converged, "adjoined": c.adjoined,
                    "basis_size": len(c.basis), "expected_size": len(target),
                    "new_elements": sorted(p.render(c.basis.order) for p in new)}

    def ideal_equality():
        c = state.get("completion") or complete(s)
        bad = []
        for q in range(1, n + 1):
            if not membership(c.basis, rho4(q), c.report).member:
                bad.append(f"rho4[q={q}]")
        for q in range(0, n):
            if not membership(c.basis, rho5(q), c.report).member:
                bad.append(f"rho5[q={q}]")
        return not bad, {"not_members": bad}

    def counting():
        bad = []
        for p in range(top + 1):
            for q in range(top + 1):
                cyc = irr_enumerate(sc, obj(q), obj(p), default_max_len(q, p))
                a = len(cyc)
                b = len(irr_enumerate(simp, obj(q), obj(p), default_max_len(q, p)))
                shape = all(_is_cyclic_normal(w) for w in cyc)
                if a != (q + 1) * b or not shape:
                    bad.append({"q": q, "p": p, "cyclic": a, "simplicial": b, "shape": shape})
        return not bad, {"range": top, "mismatches": bad}

    results.append(_timed("gsb", gsb))
    results.append(_timed("variant-S-not-closed", defining_relations_not_closed))
    results.append(_timed("completion", completion))
    results.append(_timed("ideal-equality", ideal_equality))
    results.append(_timed("counting", counting))
    return results


SUITES = {"simplicial": verify_simplicial, "cyclic": verify_cyclic}
