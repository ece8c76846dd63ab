"""Command-line interface.

Every command prints a canonical JSON report on stdout and a one-line summary
on stderr. Exit codes: 0 success or true, 1 input error, 2 property false
(the report carries a witness), 3 inconclusive within the search bounds.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any, Optional, Sequence

from . import arrows as arrows_mod
from . import connections as conn
from . import constructions as cons
from . import core, parens, punctors, subplots
from .formats import (
    PlotDocument,
    dump_json,
    emit_plot,
    load_json,
    locate,
    read_diagram,
    read_nt,
    read_plot,
    read_punctor,
)

OK, INPUT_ERROR, FALSE, INCONCLUSIVE = 0, 1, 2, 3


class Outcome:
    def __init__(self, report: Any, code: int = OK, summary: str = "", raw: Optional[str] = None):
        self.report = report
        self.code = code
        self.summary = summary
        self.raw = raw


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def _resolve_class(doc: PlotDocument, name: str, P: Optional[core.Plot] = None) -> frozenset[str]:
    """A class named in the document, else a built-in arrow class computed on P."""
    if name in doc.classes:
        return frozenset(doc.classes[name])
    return arrows_mod.arrow_class(doc.plot if P is None else P, name)


def _plot_outcome(P: core.Plot, summary: str) -> Outcome:
    return Outcome(None, OK, summary, raw=emit_plot(P))


# commands


def cmd_check(a) -> Outcome:
    data = load_json(locate(a.plot).read_text(encoding="utf-8"))
    raw = {k: data.get(k, []) for k in ("objects", "arrows", "comp")} if isinstance(data, dict) else {}
    try:
        found = core.violations(raw)
    except (KeyError, TypeError, ValueError) as e:
        return Outcome({"valid": False, "violations": [str(e)]}, FALSE, "malformed plot")
    if found:
        report = {"valid": False, "violations": [{"kind": v.kind, "detail": list(v.detail)} for v in found]}
        return Outcome(report, FALSE, f"{len(found)} violation(s)")
    read_plot(a.plot)
    return Outcome({"valid": True}, OK, "valid plot")


def cmd_classify(a) -> Outcome:
    r = core.classify(read_plot(a.plot).plot)
    report = {
        k: v
        for k, v in asdict(r).items()
        if k not in ("profile", "witnesses", "unital_objects", "identity_map")
    }
    report["profile"] = r.profile.as_dict()
    report["profile_witnesses"] = _jsonable(dict(r.profile.witnesses))
    report["witnesses"] = _jsonable(dict(r.witnesses))
    report["unital_objects"] = sorted(r.unital_objects)
    report["identity_map"] = dict(sorted(r.identity_map.items()))
    return Outcome(report, OK, "category" if r.is_category else "classified")


def cmd_identities(a) -> Outcome:
    ids = core.compute_identities(read_plot(a.plot).plot)
    return Outcome({"identities": dict(sorted(ids.items()))}, OK, f"{len(ids)} unital object(s)")


def cmd_arrows(a) -> Outcome:
    doc = read_plot(a.plot)
    if a.cls:
        members = sorted(_resolve_class(doc, a.cls))
        return Outcome({"class": a.cls, "arrows": members}, OK, f"{len(members)} arrow(s)")
    rep = arrows_mod.classify_arrows(doc.plot)
    report = {f: _jsonable(asdict(flags)) for f, flags in sorted(rep.items())}
    return Outcome(report, OK, f"{len(rep)} arrow(s) classified")


def cmd_dual(a) -> Outcome:
    return _plot_outcome(core.dual(read_plot(a.plot).plot), "dual plot")


def cmd_subplot(a) -> Outcome:
    doc = read_plot(a.plot)
    if a.parent:
        r = subplots.is_subplot(doc.plot, read_plot(a.parent).plot)
        report = _jsonable(asdict(r))
        return Outcome(report, OK if r.is_subplot else FALSE, "subplot" if r else "not a subplot")
    objs = a.objects.split(",") if a.objects else []
    arrs = a.arrows.split(",") if a.arrows else []
    return _plot_outcome(subplots.generated_subplot(doc.plot, objs, arrs, a.mode), f"{a.mode} subplot")


def cmd_compositive(a) -> Outcome:
    doc = read_plot(a.plot)
    ok, w = subplots.is_compositive(doc.plot, _resolve_class(doc, a.cls))
    report = {"compositive": ok, "witness": list(w) if w else None}
    return Outcome(report, OK if ok else FALSE, "compositive" if ok else f"escapes via {w}")


def cmd_unitize(a) -> Outcome:
    P = read_plot(a.plot).plot
    Q = cons.force_unitize(P) if a.mode == "forced" else cons.conditional_unitize(P)
    return _plot_outcome(Q, f"{a.mode} unitization")


def cmd_deunitize(a) -> Outcome:
    return _plot_outcome(cons.deunitize(read_plot(a.plot).plot), "deunitization")


def cmd_product(a) -> Outcome:
    P, _ = cons.product([read_plot(p).plot for p in a.plots])
    return _plot_outcome(P, "product")


def cmd_coproduct(a) -> Outcome:
    P, _ = cons.coproduct([read_plot(p).plot for p in a.plots])
    return _plot_outcome(P, "coproduct")


def _zeta(choice: str, index: list[str]) -> dict[tuple[str, str], str]:
    if choice == "left":
        return {(i, j): i for i in index for j in index}
    if choice == "right":
        return {(i, j): j for i in index for j in index}
    path = Path(choice)
    data = load_json(path.read_text(encoding="utf-8") if path.exists() else choice)
    return {(str(i), str(j)): str(k) for i, j, k in data}


def cmd_augment(a) -> Outcome:
    P = read_plot(a.plot).plot
    index = a.index.split(",") if a.index else []
    return _plot_outcome(cons.augment(P, index, _zeta(a.zeta, index)), "augmentation")


def cmd_punctor_check(a) -> Outcome:
    F = read_punctor(a.punctor)
    errs = punctors.punctor_violations(F)
    if errs:
        report = {"punctor": False, "violations": [{"kind": e.kind, "detail": list(e.detail)} for e in errs]}
        return Outcome(report, FALSE, errs[0].kind)
    return Outcome({"punctor": True, "functor": punctors.is_functor(F)}, OK, "valid punctor")


def cmd_punctor_classify(a) -> Outcome:
    F = punctors.validate_punctor(read_punctor(a.punctor))
    M = None
    if a.cls:
        M = arrows_mod.arrow_class(F.target, a.cls)
    r = punctors.classify_punctor(F, M)
    return Outcome(_jsonable(asdict(r)), OK, "classified")


def cmd_nt_check(a) -> Outcome:
    eps = read_nt(a.nt)
    bad = cons.nt_violations(eps)
    if bad:
        return Outcome({"natural": False, "violations": _jsonable(bad)}, FALSE, "not natural")
    return Outcome({"natural": True}, OK, "natural transformation")


def cmd_components(a) -> Outcome:
    doc = read_plot(a.plot)
    comps = conn.m_components(doc.plot, _resolve_class(doc, a.cls))
    report = {"components": [list(objs) for objs, _ in comps]}
    return Outcome(report, OK, f"{len(comps)} component(s)")


def cmd_skeleton(a) -> Outcome:
    doc = read_plot(a.plot)
    return _plot_outcome(conn.skeleton(doc.plot, _resolve_class(doc, a.cls)), "skeleton")


def cmd_order(a) -> Outcome:
    P = read_plot(a.plot).plot
    r = arrows_mod.order_of(P, a.arrow, a.max_n, a.max_p)
    if isinstance(r, arrows_mod.NotPeriodicWithinBounds):
        report = {"periodic": None, "max_n": r.max_n, "max_p": r.max_p}
        return Outcome(report, INCONCLUSIVE, "not periodic within bounds")
    n, p, o = r
    return Outcome({"index": n, "period": p, "order": o, "idempotent": (n, p) == (1, 1)}, OK, f"order {o}")


def cmd_paths(a) -> Outcome:
    doc = read_plot(a.plot)
    M = _resolve_class(doc, a.cls)
    if a.source and a.target:
        r = conn.m_morphic(doc.plot, M, a.source, a.target, a.max_len)
        w = {"path": list(r.witness.path), "paren": parens.format_paren(r.witness.wp)} if r.witness else None
        report = {"morphic": r.found if r.found or not r.inconclusive else None, "witness": w}
        code = OK if r.found else (INCONCLUSIVE if r.inconclusive else FALSE)
        return Outcome(report, code, "morphic" if r.found else "no factorization found")
    paths = []
    for n in range(1, a.max_len + 1):
        for o in doc.plot.objects:
            paths.extend(list(p) for p in conn.m_paths(doc.plot, M, o, n))
    return Outcome({"paths": paths}, OK, f"{len(paths)} path(s)")


def _cone_report(cone, result) -> dict:
    return {
        "apex": cone.apex,
        "legs": dict(sorted(cone.legs.items())),
        "label": result.label,
        "weak": result.weak,
        "sublimit": result.sublimit,
    }


def cmd_limit(a) -> Outcome:
    doc = read_plot(a.plot)
    D, cone = read_diagram(a.diagram, doc.plot)
    if a.colimit:
        D = conn.dual_diagram(D)
    Pb = cons.conditional_unitize(D.into)
    M = None if a.cls in (None, "hom") else _resolve_class(doc, a.cls, Pb)
    cones = [cone] if cone is not None else conn.enumerate_cones(D, Pb)
    results = [(c, conn.classify_limit(D, c, M, a.max_len)) for c in cones]
    report = {"cones": [_cone_report(c, r) for c, r in results]}
    labels = [r.label for _, r in results]
    if "strong" in labels:
        code = OK
    elif "inconclusive" in labels:
        code = INCONCLUSIVE
    else:
        code = FALSE
    return Outcome(report, code, ", ".join(labels) or "no cones")


def cmd_paren(a) -> Outcome:
    if a.action == "enum":
        if len(a.args) != 1:
            raise ValueError("usage: paren enum N")
        trees = [parens.format_paren(t) for t in parens.enumerate_parens(int(a.args[0]))]
        return Outcome({"count": len(trees), "parens": trees}, OK, f"{len(trees)} tree(s)")
    if len(a.args) < 2:
        raise ValueError("usage: paren eval PLOT TREE [ARROW ...]")
    P = read_plot(a.args[0]).plot
    wp = parens.parse_paren(a.args[1])
    v = parens.eval_paren(P, wp, a.args[2:])
    return Outcome({"value": v, "defined": v is not None}, OK if v is not None else FALSE,
                   "undefined" if v is None else f"= {v}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plotkit", description="Check and transform finite plots.")
    sub = p.add_subparsers(dest="command", required=True)

    def plot_cmd(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("plot")
        s.set_defaults(fn=fn)
        return s

    plot_cmd("check", cmd_check, "validate a plot document")
    plot_cmd("classify", cmd_classify, "structural classification")
    plot_cmd("identities", cmd_identities, "local identities")
    s = plot_cmd("arrows", cmd_arrows, "arrow classification")
    s.add_argument("--class", dest="cls")
    plot_cmd("dual", cmd_dual, "dual plot")
    s = plot_cmd("subplot", cmd_subplot, "check or generate subplots")
    s.add_argument("--parent")
    s.add_argument("--mode", default="smallest", choices=subplots.MODES)
    s.add_argument("--objects", default="")
    s.add_argument("--arrows", default="")
    s = plot_cmd("compositive", cmd_compositive, "closure of a class under composition")
    s.add_argument("--class", dest="cls", required=True)
    s = plot_cmd("unitize", cmd_unitize, "forced or conditional unitization")
    s.add_argument("--mode", choices=("forced", "conditional"), default="forced")
    plot_cmd("deunitize", cmd_deunitize, "remove local identities")
    for name, fn in (("product", cmd_product), ("coproduct", cmd_coproduct)):
        s = sub.add_parser(name, help=f"{name} of plots")
        s.add_argument("plots", nargs="*")
        s.set_defaults(fn=fn)
    s = plot_cmd("augment", cmd_augment, "augmentation by an index operation")
    s.add_argument("--index", required=True, help="comma separated index set")
    s.add_argument("--zeta", default="right", help="left, right, a JSON file or inline JSON triples")
    s = sub.add_parser("punctor-check", help="validate a punctor document")
    s.add_argument("punctor")
    s.set_defaults(fn=cmd_punctor_check)
    s = sub.add_parser("punctor-classify", help="classify a punctor")
    s.add_argument("punctor")
    s.add_argument("--class", dest="cls")
    s.set_defaults(fn=cmd_punctor_classify)
    s = sub.add_parser("nt-check", help="validate a natural transformation document")
    s.add_argument("nt")
    s.set_defaults(fn=cmd_nt_check)
    s = plot_cmd("components", cmd_components, "M-connected components")
    s.add_argument("--class", dest="cls", default="hom")
    s = plot_cmd("skeleton", cmd_skeleton, "M-skeleton")
    s.add_argument("--class", dest="cls", default="hom")
    s = plot_cmd("order", cmd_order, "index and period of an endomorphism")
    s.add_argument("--arrow", required=True)
    s.add_argument("--max-n", type=int)
    s.add_argument("--max-p", type=int)
    s = plot_cmd("paths", cmd_paths, "M-paths, or an M-factorization between two objects")
    s.add_argument("--class", dest="cls", default="hom")
    s.add_argument("--max-len", type=int, default=3)
    s.add_argument("--from", dest="source")
    s.add_argument("--to", dest="target")
    s = plot_cmd("limit", cmd_limit, "classify cones over a diagram")
    s.add_argument("--diagram", required=True)
    s.add_argument("--class", dest="cls", default="hom")
    s.add_argument("--max-len", type=int, default=1)
    s.add_argument("--colimit", action="store_true")
    s = sub.add_parser("paren", help="enumerate or evaluate parenthesizations")
    s.add_argument("action", choices=("enum", "eval"))
    s.add_argument("args", nargs="*")
    s.set_defaults(fn=cmd_paren)
    return p


def run_cli(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return INPUT_ERROR if e.code else OK
    try:
        out = args.fn(args)
    except punctors.Overflow as e:
        stdout.write(dump_json({"error": "overflow", "cap": e.cap}))
        stderr.write(f"plotkit: {e}\n")
        return INCONCLUSIVE
    except (core.PlotError, ValueError, OSError) as e:
        stdout.write(dump_json({"error": type(e).__name__, "message": str(e)}))
        stderr.write(f"plotkit: {type(e).__name__}: {e}\n")
        return INPUT_ERROR
    stdout.write(out.raw if out.raw is not None else dump_json(_jsonable(out.report)))
    if out.summary:
        stderr.write(f"{args.command}: {out.summary}\n")
    return out.code


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
