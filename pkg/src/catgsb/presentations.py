"""Category presentations: quiver + relations + default order.

Built-in families are truncated at a maximal object ``[N]``:

* ``build_simplicial(N)``: faces ``E(p,i): [p-1] -> [p]`` and degeneracies
  ``H(q,j): [q+1] -> [q]`` with the cosimplicial identities ``f``, ``g``
  and the mixed identities ``h``;
* ``build_cyclic(N, variant)``: additionally the loops ``T(q): [q] -> [q]``
  with ``rho1``-``rho3`` (variant ``"S"``) or ``rho1``-``rho5``
  (variant ``"SC"``).

Every right-hand side visits only objects already visited by its left-hand
side, so rewriting never leaves the truncation.

Presentation files are line oriented::

    # comment
    vertex v
    edge x : v -> v
    rel y.x = x.y
    order deglex y x        # or: order simplicial | order cyclic
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .orders import CyclicOrder, DegLex, MonomialOrder, OrderError, SimplicialOrder
from .poly import NAME, PolyError, parse_word
from .quiver import Edge, Quiver, QuiverError, Vertex, Word


class PresentationError(ValueError):
    """Parse or validation failure, with a 1-based source position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    label: str

    def __post_init__(self) -> None:
        if (self.lhs.source, self.lhs.target) != (self.rhs.source, self.rhs.target):
            raise PresentationError(
                f"relation {self.label} is not parallel: {self.lhs} runs "
                f"{self.lhs.source} -> {self.lhs.target}, {self.rhs} runs "
                f"{self.rhs.source} -> {self.rhs.target}"
            )


@dataclass(frozen=True)
class Presentation:
    quiver: Quiver
    relations: tuple[Relation, ...]
    default_order: MonomialOrder
    name: str = "presentation"
    meta: dict = field(default_factory=dict, compare=False)

    def relation(self, label: str) -> Relation:
        for r in self.relations:
            if r.label == label:
                return r
        raise KeyError(label)

    def family(self, name: str) -> list[Relation]:
        return [r for r in self.relations if r.label.split("[", 1)[0] == name]

    def vertex_for(self, token: str) -> str:
        """Resolve a vertex by name, or by dimension (``"2"`` -> ``"[2]"``)."""
        if self.quiver.has_vertex(token):
            return token
        if token.isdigit() and self.quiver.has_vertex(f"[{token}]"):
            return f"[{token}]"
        raise PresentationError(f"unknown object {token!r}")


def obj(p: int) -> str:
    return f"[{p}]"


def face(p: int, i: int) -> Edge:
    return Edge(f"E({p},{i})", obj(p - 1), obj(p))


def degeneracy(q: int, i: int) -> Edge:
    return Edge(f"H({q},{i})", obj(q + 1), obj(q))


def cyclic_op(q: int) -> Edge:
    return Edge(f"T({q})", obj(q), obj(q))


def _simplicial_edges(n: int) -> list[Edge]:
    edges = [face(p, i) for p in range(1, n + 1) for i in range(p + 1)]
    edges += [degeneracy(q, j) for q in range(n) for j in range(q + 1)]
    return edges


def _simplicial_relations(n: int) -> list[Relation]:
    E = lambda p, i: face(p, i)  # noqa: E731
    H = lambda q, i: degeneracy(q, i)  # noqa: E731
    rels = []
    # f: E(q+1,i) E(q,j-1) = E(q+1,j) E(q,i), j > i
    for q in range(1, n):
        for j in range(1, q + 2):
            for i in range(j):
                rels.append(Relation(Word.of(E(q + 1, i), E(q, j - 1)),
                                     Word.of(E(q + 1, j), E(q, i)),
                                     f"f[q={q},i={i},j={j}]"))
    # g: H(q,j) H(q+1,i) = H(q,i) H(q+1,j+1), j >= i
    for q in range(0, n - 1):
        for j in range(q + 1):
            for i in range(j + 1):
                rels.append(Relation(Word.of(H(q, j), H(q + 1, i)),
                                     Word.of(H(q, i), H(q + 1, j + 1)),
                                     f"g[q={q},i={i},j={j}]"))
    # h: H(q-1,j) E(q,i) = E(q-1,i) H(q-2,j-1) | 1 | E(q-1,i-1) H(q-2,j)
    for q in range(1, n + 1):
        for j in range(q):
            for i in range(q + 1):
                lhs = Word.of(H(q - 1, j), E(q, i))
                if j > i:
                    rhs = Word.of(E(q - 1, i), H(q - 2, j - 1))
                elif i in (j, j + 1):
                    rhs = Word.identity(obj(q - 1))
                else:
                    rhs = Word.of(E(q - 1, i - 1), H(q - 2, j))
                rels.append(Relation(lhs, rhs, f"h[q={q},i={i},j={j}]"))
    return rels


def build_simplicial(n: int) -> Presentation:
    """The simplicial category on objects ``[0] .. [n]``."""
    if n < 1:
        raise PresentationError("simplicial presentation needs max_dim >= 1")
    quiver = Quiver(tuple(Vertex(obj(p), p) for p in range(n + 1)), tuple(_simplicial_edges(n)))
    return Presentation(quiver, tuple(_simplicial_relations(n)), SimplicialOrder(),
                        name=f"simplicial(N={n})", meta={"family": "simplicial", "max_dim": n})


def build_cyclic(n: int, variant: str = "SC") -> Presentation:
    """The cyclic category on objects ``[0] .. [n]``.

    ``variant="S"`` gives the defining relations, ``"SC"`` adds ``rho4`` and
    ``rho5``.  ``rho1``/``rho2`` use ``i = 1 .. q`` only; instances that would
    need an object beyond ``[n]`` are omitted.
    """
    if n < 1:
        raise PresentationError("cyclic presentation needs max_dim >= 1")
    if variant not in ("S", "SC"):
        raise PresentationError(f"unknown cyclic variant {variant!r}")
    E, H, T = face, degeneracy, cyclic_op
    edges = _simplicial_edges(n) + [T(q) for q in range(n + 1)]
    quiver = Quiver(tuple(Vertex(obj(p), p) for p in range(n + 1)), tuple(edges))
    rels = _simplicial_relations(n)
    for q in range(1, n + 1):
        for i in range(1, q + 1):
            rels.append(Relation(Word.of(T(q), E(q, i)), Word.of(E(q, i - 1), T(q - 1)),
                                 f"rho1[q={q},i={i}]"))
    for q in range(1, n):
        for i in range(1, q + 1):
            rels.append(Relation(Word.of(T(q), H(q, i)), Word.of(H(q, i - 1), T(q + 1)),
                                 f"rho2[q={q},i={i}]"))
    for q in range(n + 1):
        rels.append(Relation(Word.of(*[T(q)] * (q + 1)), Word.identity(obj(q)), f"rho3[q={q}]"))
    if variant == "SC":
        for q in range(1, n + 1):
            rels.append(Relation(Word.of(T(q), E(q, 0)), Word.of(E(q, q)), f"rho4[q={q}]"))
        for q in range(n):
            rels.append(Relation(Word.of(T(q), H(q, 0)), Word.of(H(q, q), T(q + 1), T(q + 1)),
                                 f"rho5[q={q}]"))
    return Presentation(quiver, tuple(rels), CyclicOrder(),
                        name=f"cyclic-{variant.lower()}(N={n})",
                        meta={"family": "cyclic", "variant": variant, "max_dim": n})


BUILTINS = {
    "simplicial": lambda n: build_simplicial(n),
    "cyclic": lambda n: build_cyclic(n, "S"),
    "cyclic-sc": lambda n: build_cyclic(n, "SC"),
}


def builtin(name: str, max_dim: int) -> Presentation:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise PresentationError(
            f"unknown builtin {name!r}; choose from {', '.join(sorted(BUILTINS))}"
        ) from None
    return factory(max_dim)


# --- text format ------------------------------------------------------------

_VERTEX = re.compile(rf"vertex\s+(?P<name>{NAME})\s*$")
_EDGE = re.compile(rf"edge\s+(?P<name>{NAME})\s*:\s*(?P<src>{NAME})\s*->\s*(?P<tgt>{NAME})\s*$")
_REL = re.compile(r"rel\s+(?P<lhs>[^=]+?)\s*=\s*(?P<rhs>.+?)\s*$")
_ORDER = re.compile(r"order\s+(?P<kind>\w+)(?P<rest>.*)$")


def parse_presentation(text: str, name: str = "presentation") -> Presentation:
    """Parse the line-oriented presentation format.

    Raises :class:`PresentationError` with line/column on syntax errors and
    on validation failures (duplicates, dangling endpoints, non-parallel
    relations).
    """
    vertices: list[Vertex] = []
    vertex_names: set[str] = set()
    edges: list[Edge] = []
    edge_lines: dict[str, int] = {}
    rel_lines: list[tuple[int, int, str, int, str]] = []
    order: MonomialOrder | None = None
    order_line = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        col = len(line) - len(stripped) + 1
        keyword = stripped.split(None, 1)[0]
        if keyword == "vertex":
            m = _VERTEX.match(stripped)
            if not m:
                raise PresentationError("expected 'vertex <name>'", lineno, col)
            v = m.group("name")
            if v in vertex_names:
                raise PresentationError(f"duplicate vertex {v!r}", lineno, col + m.start("name"))
            vertex_names.add(v)
            dim = int(v[1:-1]) if re.fullmatch(r"\[\d+\]", v) else None
            vertices.append(Vertex(v, dim))
        elif keyword == "edge":
            m = _EDGE.match(stripped)
            if not m:
                raise PresentationError("expected 'edge <name> : <source> -> <target>'", lineno, col)
            e = re.sub(r"\s+", "", m.group("name"))
            if e in edge_lines:
                raise PresentationError(
                    f"duplicate edge {e!r} (first defined on line {edge_lines[e]})",
                    lineno, col + m.start("name"),
                )
            for grp in ("src", "tgt"):
                if m.group(grp) not in vertex_names:
                    raise PresentationError(
                        f"edge {e!r} refers to undeclared vertex {m.group(grp)!r}",
                        lineno, col + m.start(grp),
                    )
            edge_lines[e] = lineno
            edges.append(Edge(e, m.group("src"), m.group("tgt")))
        elif keyword == "rel":
            m = _REL.match(stripped)
            if not m:
                raise PresentationError("expected 'rel <word> = <word>'", lineno, col)
            rel_lines.append((lineno, col + m.start("lhs"), m.group("lhs"),
                              col + m.start("rhs"), m.group("rhs")))
        elif keyword == "order":
            m = _ORDER.match(stripped)
            if not m:
                raise PresentationError(
                    "expected 'order deglex <edge>...', 'order simplicial' or 'order cyclic'",
                    lineno, col,
                )
            if order is not None:
                raise PresentationError(f"order already given on line {order_line}", lineno, col)
            kind, rest = m.group("kind"), m.group("rest").split()
            if kind == "deglex":
                if not rest:
                    raise PresentationError("deglex needs an edge ranking", lineno, col)
                order = DegLex(rest)
            elif kind in ("simplicial", "cyclic") and not rest:
                order = SimplicialOrder() if kind == "simplicial" else CyclicOrder()
            else:
                raise PresentationError(
                    "expected 'order deglex <edge>...', 'order simplicial' or 'order cyclic'",
                    lineno, col + m.start("kind"),
                )
            order_line = lineno
        else:
            raise PresentationError(
                f"unknown keyword {keyword!r}; expected one of vertex, edge, rel, order",
                lineno, col,
            )

    try:
        quiver = Quiver(tuple(vertices), tuple(edges))
    except QuiverError as exc:
        raise PresentationError(str(exc)) from None
    if order is None:
        raise PresentationError("missing 'order' line")
    if isinstance(order, DegLex):
        missing = [e.name for e in edges if e.name not in order.ranking]
        unknown = [n for n in order.ranking if n not in edge_lines]
        if missing or unknown:
            raise PresentationError(
                f"deglex ranking must list every edge exactly once "
                f"(missing {missing}, unknown {unknown})", order_line, 1,
            )

    relations = []
    for k, (lineno, lcol, lhs_text, rcol, rhs_text) in enumerate(rel_lines):
        label = f"r{k + 1}"
        try:
            lhs = parse_word(lhs_text, quiver)
        except (PolyError, QuiverError) as exc:
            raise PresentationError(f"relation {label}: {exc}", lineno, lcol) from None
        try:
            rhs = parse_word(rhs_text, quiver)
        except (PolyError, QuiverError) as exc:
            raise PresentationError(f"relation {label}: {exc}", lineno, rcol) from None
        try:
            relations.append(Relation(lhs, rhs, label))
        except PresentationError as exc:
            raise PresentationError(exc.message, lineno, lcol) from None
        try:
            order.key(lhs), order.key(rhs)
        except OrderError as exc:
            raise PresentationError(f"relation {label}: {exc}", lineno, lcol) from None
    return Presentation(quiver, tuple(relations), order, name=name)


def render_presentation(p: Presentation) -> str:
    lines = [f"# {p.name}"]
    lines += [f"vertex {v.name}" for v in p.quiver.vertices]
    lines += [f"edge {e.name} : {e.source} -> {e.target}" for e in p.quiver.edges]
    lines += [f"rel {r.lhs} = {r.rhs}" for r in p.relations]
    lines.append(f"order {p.default_order.spec()}")
    return "\n".join(lines) + "\n"
