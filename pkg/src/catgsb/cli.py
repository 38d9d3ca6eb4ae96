"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (nontrivial compositions,
failed verification, non-converged completion), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .engine import Basis, IdentityInIdeal, Scope, check_gsb, complete, irr_enumerate, reduce
from .orders import DegLex, OrderError, make_order
from .poly import PolyError, parse_poly
from .presentations import Presentation, PresentationError, builtin, parse_presentation
from .quiver import QuiverError
from .suites import SUITES, default_max_len

USAGE_ERRORS = (PresentationError, PolyError, QuiverError, OrderError, ValueError, OSError)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    presentation: str | None = None
    max_dim: int | None = None
    max_len: int | None = None
    max_steps: int = 1000
    order: str | None = None
    format: str = "text"
    seed: int | None = None
    threads: int = 1


def load_presentation(cfg: RunConfig) -> Presentation:
    src = cfg.presentation
    if not src:
        raise UsageError("no presentation given (use --presentation or a positional source)")
    if src.startswith("builtin:"):
        if cfg.max_dim is None:
            raise UsageError(f"{src} needs --max-dim")
        return builtin(src.split(":", 1)[1], cfg.max_dim)
    path = Path(src)
    if not path.is_file():
        raise UsageError(f"cannot read presentation file {src!r}")
    return parse_presentation(path.read_text(encoding="utf-8"), name=path.name)


def load_basis(cfg: RunConfig, pres: Presentation) -> Basis:
    order = pres.default_order
    if cfg.order:
        if cfg.order == "deglex":
            # declaration order: first edge is the largest
            order = DegLex([e.name for e in pres.quiver.edges])
        else:
            order = make_order(cfg.order)
    return Basis.from_presentation(pres, order)


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.format == "json":
        out = {"tool": "catgsb", "version": __version__,
               "config": {k: v for k, v in asdict(cfg).items()}, **payload}
        print(json.dumps(out, indent=2, default=str))
    else:
        print(text)


def _scope(cfg: RunConfig) -> Scope:
    return Scope(max_dim=None, max_len=cfg.max_len)


def cmd_check(cfg: RunConfig, traces: bool = False) -> int:
    pres = load_presentation(cfg)
    basis = load_basis(cfg, pres)
    report = check_gsb(basis, _scope(cfg), threads=cfg.threads)
    lines = [
        f"{pres.name}: order {report.order}",
        f"relations: {report.n_relations}  compositions: {report.n_compositions}  "
        f"trivial: {report.n_trivial}  out-of-scope: {report.n_out_of_scope}",
    ]
    for fail in report.failures:
        lines.append(f"NONTRIVIAL ({fail['f']}, {fail['g']}) at {fail['w']}: {fail['remainder']}")
    lines.append("Groebner-Shirshov basis: yes" if report.ok else "Groebner-Shirshov basis: no")
    payload = report.to_dict()
    if traces:
        payload["traces"] = [t.to_dict(basis.order) for t in report.traces]
    _emit(cfg, payload, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_complete(cfg: RunConfig) -> int:
    pres = load_presentation(cfg)
    basis = load_basis(cfg, pres)
    result = complete(basis, max_steps=cfg.max_steps, scope=_scope(cfg))
    lines = [f"{e.action} {e.label}: {e.poly}   <- {e.source}"
             for e in result.log if e.action != "input"]
    lines.append(f"converged: {result.converged}  adjoined: {result.adjoined}  "
                 f"final size: {len(result.basis)}")
    lines += result.basis.render()
    payload = {
        "converged": result.converged,
        "adjoined": result.adjoined,
        "log": [asdict(e) for e in result.log if e.action != "input"],
        "basis": result.basis.render(),
    }
    _emit(cfg, payload, "\n".join(lines))
    return 0 if result.converged else 1


def cmd_nf(cfg: RunConfig, text: str, show_trace: bool) -> int:
    pres = load_presentation(cfg)
    basis = load_basis(cfg, pres)
    f = parse_poly(text, pres.quiver)
    trace = reduce(basis, f)
    lines = [trace.remainder.render(basis.order)]
    if show_trace:
        for st in trace.steps:
            lines.append(f"  - {st.coeff} * {st.a} . [{basis.labels[st.index]}] . {st.b}"
                         f"   (eliminates {st.word})")
    payload = {"input": f.render(basis.order), "normal_form": trace.remainder.render(basis.order)}
    if show_trace:
        payload["trace"] = trace.to_dict(basis.order)
    _emit(cfg, payload, "\n".join(lines))
    return 0


def _endpoints(cfg: RunConfig, pres: Presentation, src: str, tgt: str) -> tuple[str, str, int]:
    s, t = pres.vertex_for(src), pres.vertex_for(tgt)
    max_len = cfg.max_len
    if max_len is None:
        sd, td = pres.quiver.vertex(s).dim, pres.quiver.vertex(t).dim
        if sd is None or td is None:
            raise UsageError("--max-len is required for objects without a dimension")
        max_len = default_max_len(sd, td)
    return s, t, max_len


def cmd_irr(cfg: RunConfig, src: str, tgt: str, count_only: bool) -> int:
    pres = load_presentation(cfg)
    basis = load_basis(cfg, pres)
    s, t, max_len = _endpoints(cfg, pres, src, tgt)
    words = irr_enumerate(basis, s, t, max_len)
    if count_only:
        _emit(cfg, {"from": s, "to": t, "max_len": max_len, "count": len(words)}, str(len(words)))
    else:
        _emit(cfg, {"from": s, "to": t, "max_len": max_len, "words": [str(w) for w in words]},
              "\n".join(str(w) for w in words))
    return 0


def cmd_verify(cfg: RunConfig, suite: str) -> int:
    if cfg.max_dim is None or cfg.max_dim < 1:
        raise UsageError("verify needs --max-dim >= 1")
    results = SUITES[suite](cfg.max_dim)
    failed = [r for r in results if not r.passed]
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.elapsed:.2f}s)" for r in results]
    if failed:
        lines.append(f"first failing check: {failed[0].name}")
    _emit(cfg, {"suite": suite, "checks": [r.to_dict() for r in results], "ok": not failed},
          "\n".join(lines))
    if failed:
        print(f"verification failed at {failed[0].name}", file=sys.stderr)
    return 1 if failed else 0


def cmd_parse(cfg: RunConfig) -> int:
    from .presentations import render_presentation

    pres = load_presentation(cfg)
    payload = {
        "name": pres.name,
        "vertices": [v.name for v in pres.quiver.vertices],
        "edges": [{"name": e.name, "source": e.source, "target": e.target}
                  for e in pres.quiver.edges],
        "relations": [{"label": r.label, "lhs": str(r.lhs), "rhs": str(r.rhs)}
                      for r in pres.relations],
        "order": pres.default_order.spec(),
    }
    _emit(cfg, payload, render_presentation(pres).rstrip("\n"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catgsb",
        description="Groebner-Shirshov bases for categories presented by quivers",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, positional_source: bool = True) -> None:
        if positional_source:
            p.add_argument("source", nargs="?", help="presentation file or builtin:NAME")
        p.add_argument("--presentation", help="presentation file, builtin:simplicial, "
                       "builtin:cyclic or builtin:cyclic-sc")
        p.add_argument("--max-dim", type=int, help="largest object [N] of a builtin family")
        p.add_argument("--max-len", type=int, help="word length bound")
        p.add_argument("--order", choices=["deglex", "simplicial", "cyclic"])
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int)

    p = sub.add_parser("check", help="check that the relations form a Groebner-Shirshov basis")
    common(p)
    p.add_argument("--traces", action="store_true", help="include reduction traces (json)")

    p = sub.add_parser("complete", help="run completion")
    common(p)
    p.add_argument("--max-steps", type=int, default=1000)

    p = sub.add_parser("nf", help="normal form of a word or polynomial")
    p.add_argument("args", nargs="+", metavar="[SOURCE] TEXT")
    common(p, positional_source=False)
    p.add_argument("--trace", action="store_true")

    for name in ("irr", "count"):
        p = sub.add_parser(name, help=f"{'list' if name == 'irr' else 'count'} irreducible words")
        common(p)
        p.add_argument("--from", dest="src", required=True)
        p.add_argument("--to", dest="tgt", required=True)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--max-dim", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("parse", help="parse, validate and re-render a presentation")
    common(p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra:
        # nf may carry its text after the options
        if args.command != "nf" or any(x.startswith("--") for x in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.args = list(args.args) + extra
    cfg = RunConfig(
        command=args.command,
        max_dim=getattr(args, "max_dim", None),
        max_len=getattr(args, "max_len", None),
        max_steps=getattr(args, "max_steps", 1000),
        order=getattr(args, "order", None),
        format=args.format,
        seed=getattr(args, "seed", None),
        threads=getattr(args, "threads", 1),
    )
    try:
        if args.command == "nf":
            positional = list(args.args)
            if args.presentation:
                cfg.presentation = args.presentation
            elif len(positional) >= 2:
                cfg.presentation = positional.pop(0)
            if len(positional) != 1:
                raise UsageError("nf expects exactly one word or polynomial")
            return cmd_nf(cfg, positional[0], args.trace)
        if args.command == "verify":
            return cmd_verify(cfg, args.suite)
        cfg.presentation = args.presentation or args.source
        if args.command == "check":
            return cmd_check(cfg, args.traces)
        if args.command == "complete":
            return cmd_complete(cfg)
        if args.command in ("irr", "count"):
            return cmd_irr(cfg, args.src, args.tgt, args.command == "count")
        if args.command == "parse":
            return cmd_parse(cfg)
    except IdentityInIdeal as exc:
        print(f"completion failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, *USAGE_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
