"""Linear combinations of parallel paths (elements of the category algebra).

Coefficients are exact: ``fractions.Fraction`` by default, or elements of a
prime field built with :func:`prime_field`.  A polynomial is immutable and
always carries its endpoints, including the zero polynomial.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from fractions import Fraction
from typing import Any

from .orders import MonomialOrder
from .quiver import Quiver, QuiverError, Word, _raw

Coefficient = Any  # Fraction or Fp


class Fp:
    """Element of the prime field of order ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int) -> None:
        self.p = p
        self.value = value % p

    def _coerce(self, other: object) -> Fp:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixing different prime fields")
            return other
        if isinstance(other, int):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> Fp:
        o = self._coerce(other)
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other: object) -> Fp:
        o = self._coerce(other)
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other: object) -> Fp:
        return self._coerce(other) - self

    def __mul__(self, other: object) -> Fp:
        o = self._coerce(other)
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self) -> Fp:
        return Fp(-self.value, self.p)

    def __truediv__(self, other: object) -> Fp:
        o = self._coerce(other)
        if o.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return Fp(self.value * pow(o.value, -1, self.p), self.p)

    def __rtruediv__(self, other: object) -> Fp:
        return self._coerce(other) / self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, Fp) and other.p == self.p and other.value == self.value

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"Fp({self.value}, {self.p})"

    def __str__(self) -> str:
        return str(self.value)


def prime_field(p: int):
    """Return a converter from ints/Fractions into the field of order ``p``."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")

    def make(x: int | Fraction) -> Fp:
        if isinstance(x, Fraction):
            return Fp(x.numerator, p) / Fp(x.denominator, p)
        return Fp(x, p)

    return make


class PolyError(ValueError):
    pass


class PartialPoly:
    __slots__ = ("source", "target", "terms")

    def __init__(self, source: str, target: str, terms: Mapping[Word, Coefficient] = ()) -> None:
        clean: dict[Word, Coefficient] = {}
        for w, c in dict(terms).items():
            if (w.source, w.target) != (source, target):
                raise PolyError(f"term {w} is not parallel to {source} -> {target}")
            if c:
                clean[w] = c
        self.source = source
        self.target = target
        self.terms = clean

    @classmethod
    def _trusted(cls, source: str, target: str, terms: dict[Word, Coefficient]) -> PartialPoly:
        p = object.__new__(cls)
        p.source, p.target, p.terms = source, target, terms
        return p

    @classmethod
    def zero(cls, source: str, target: str) -> PartialPoly:
        return cls._trusted(source, target, {})

    @classmethod
    def monomial(cls, word: Word, coeff: Coefficient = 1) -> PartialPoly:
        c = Fraction(coeff) if isinstance(coeff, int) else coeff
        return cls(word.source, word.target, {word: c})

    @classmethod
    def binomial(cls, lhs: Word, rhs: Word) -> PartialPoly:
        """``lhs - rhs``."""
        return cls.monomial(lhs) - cls.monomial(rhs)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def words(self) -> list[Word]:
        return list(self.terms)

    def _check_parallel(self, other: PartialPoly) -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise PolyError(
                f"cannot add polynomials {self.source}->{self.target} and "
                f"{other.source}->{other.target}"
            )

    def __add__(self, other: PartialPoly) -> PartialPoly:
        self._check_parallel(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return PartialPoly._trusted(self.source, self.target, terms)

    def __neg__(self) -> PartialPoly:
        return PartialPoly._trusted(self.source, self.target, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: PartialPoly) -> PartialPoly:
        return self + (-other)

    def scale(self, alpha: Coefficient) -> PartialPoly:
        if not alpha:
            return PartialPoly.zero(self.source, self.target)
        return PartialPoly._trusted(
            self.source, self.target, {w: alpha * c for w, c in self.terms.items()}
        )

    def __rmul__(self, alpha: Coefficient) -> PartialPoly:
        return self.scale(alpha)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialPoly):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.terms.items())))

    def coefficient(self, word: Word) -> Coefficient:
        return self.terms.get(word, 0)

    def sorted_terms(self, order: MonomialOrder) -> list[tuple[Word, Coefficient]]:
        """Terms from largest to smallest word."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading(self, order: MonomialOrder) -> tuple[Word, Coefficient]:
        if not self.terms:
            raise PolyError("the zero polynomial has no leading term")
        w = max(self.terms, key=order.key)
        return w, self.terms[w]

    def leading_word(self, order: MonomialOrder) -> Word:
        return self.leading(order)[0]

    def make_monic(self, order: MonomialOrder) -> PartialPoly:
        _, c = self.leading(order)
        if c == 1:
            return self
        inv = 1 / c
        return self.scale(inv)

    def map_coefficients(self, fn) -> PartialPoly:
        """Push every coefficient through ``fn`` (e.g. into a prime field)."""
        return PartialPoly(self.source, self.target, {w: fn(c) for w, c in self.terms.items()})

    def render(self, order: MonomialOrder | None = None, pretty: bool = False) -> str:
        if not self.terms:
            return "0"
        if order is not None:
            items = self.sorted_terms(order)
        else:
            items = sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0].names), reverse=True)
        out = []
        for k, (w, c) in enumerate(items):
            neg = _is_negative(c)
            mag = -c if neg else c
            ws = w.pretty() if pretty else str(w)
            body = ws if mag == 1 else f"{mag}*{ws}"
            if k == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"PartialPoly({self.source!r}, {self.target!r}, {self.render()!r})"


def _is_negative(c: Coefficient) -> bool:
    if isinstance(c, Fp):
        return False
    return c < 0


def mul_word(a: Word, f: PartialPoly, b: Word) -> PartialPoly:
    """``a . f . b`` termwise."""
    if a.source != f.target or f.source != b.target:
        raise PolyError(
            f"cannot form {a} . f . {b}: f runs {f.source} -> {f.target}"
        )
    ae, be = a.edges, b.edges
    if not ae and not be:
        return f
    terms = {}
    for w, c in f.terms.items():
        terms[_raw(b.source, a.target, ae + w.edges + be)] = c
    return PartialPoly._trusted(b.source, a.target, terms)


# --- text form ------------------------------------------------------------

NAME = r"(?:\[\d+\]|[A-Za-z_][A-Za-z0-9_']*(?:\(\s*\d+(?:\s*,\s*\d+)*\s*\))?)"


def parse_word(text: str, quiver: Quiver) -> Word:
    """Parse ``id(v)`` or ``x.y.z`` (applicative order)."""
    s = text.strip()
    m = re.fullmatch(rf"id\(\s*({NAME})\s*\)", s)
    if m:
        return quiver.identity(m.group(1))
    parts = [p.strip() for p in s.split(".")] if s else []
    if not parts or any(not re.fullmatch(NAME, p) for p in parts):
        raise PolyError(f"malformed word {text!r}")
    edges = [quiver.edge(_normalize(p)) for p in parts]
    try:
        return Word.of(*edges)
    except QuiverError as exc:
        raise PolyError(f"word {text!r} is not composable: {exc}") from None


def _normalize(name: str) -> str:
    return re.sub(r"\s+", "", name)


def parse_poly(text: str, quiver: Quiver, endpoints: tuple[str, str] | None = None) -> PartialPoly:
    """Parse ``[-] [c*] word (+|- [c*] word)*`` with rational coefficients.

    The literal ``0`` is the zero polynomial and needs ``endpoints``.
    """
    s = text.strip()
    if s == "0":
        if endpoints is None:
            raise PolyError("the zero polynomial needs explicit endpoints")
        return PartialPoly.zero(*endpoints)
    terms: list[tuple[Fraction, Word]] = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial at column {pos + 1}: {s[pos:]!r}")
        op, num, word_text = m.groups()
        if op is None and terms:
            raise PolyError(f"expected '+' or '-' at column {pos + 1}")
        c = Fraction(num) if num else Fraction(1)
        terms.append((-c if op == "-" else c, parse_word(word_text, quiver)))
        pos = m.end()
    if not terms:
        raise PolyError("empty polynomial")
    total = PartialPoly.zero(terms[0][1].source, terms[0][1].target)
    for c, w in terms:
        total = total + PartialPoly(w.source, w.target, {w: c})
    if endpoints is not None and (total.source, total.target) != tuple(endpoints):
        raise PolyError(f"polynomial runs {total.source} -> {total.target}, expected {endpoints[0]} -> {endpoints[1]}")
    return total


_TERM = re.compile(
    rf"\s*([-+])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(id\(\s*{NAME}\s*\)|{NAME}(?:\s*\.\s*{NAME})*)\s*"
)
