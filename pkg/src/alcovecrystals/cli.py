"""Command line front end.

Subcommands build chains, enumerate crystals, walk the unbounded model,
move elements between finite and unbounded crystals, transport them to
paths, run the verification suites, and export graphs.  All output is
deterministic; exit status is 0 on success, 1 when a verification suite
reports failures, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from . import alcove as al
from . import crystalgraph as cg
from . import littelmann as lp
from .chains import chain_to_json, dual_chain, lex_chain, window
from .limits import varpi, varpi_dual, varpi_dual_infinity, varpi_infinity, verify_dual_iso
from .rootsys import RootSystem, root_string

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# shared argument handling


def _root_system(args) -> RootSystem:
    if getattr(args, "matrix", None):
        try:
            rows = [
                [int(x) for x in row.split(",")] for row in args.matrix.split(";")
            ]
            return RootSystem.from_matrix(rows)
        except ValueError as exc:
            raise UsageError(f"bad Cartan matrix: {exc}")
    if not getattr(args, "type", None):
        raise UsageError("one of --type or --matrix is required")
    try:
        return RootSystem.from_type(args.type)
    except ValueError as exc:
        raise UsageError(str(exc))


def _weight(args, rs: RootSystem) -> tuple:
    if args.weight is None:
        raise UsageError("--weight is required here")
    try:
        coeffs = tuple(int(p) for p in args.weight.split(","))
    except ValueError:
        raise UsageError(f"malformed weight {args.weight!r}")
    if len(coeffs) != rs.rank:
        raise UsageError(f"weight needs {rs.rank} coefficients")
    return coeffs


def _word(text: str, rs: RootSystem, flag: str) -> list[int]:
    if not text:
        return []
    out = []
    for piece in text.split(","):
        try:
            i = int(piece)
        except ValueError:
            raise UsageError(f"malformed {flag} entry {piece!r}")
        if i not in rs.index_set:
            raise UsageError(f"{flag} index {i} is out of range")
        out.append(i)
    return out


def _apply_word(el, word, op, name: str):
    for step, i in enumerate(word, start=1):
        nxt = op(el, i)
        if nxt is None:
            raise UsageError(f"{name} {i} is undefined at step {step}")
        el = nxt
    return el


def _seed_element(chain, args, rs):
    el = al.element(chain, [])
    fw = _word(getattr(args, "fstring", None) or "", rs, "--fstring")
    ew = _word(getattr(args, "estring", None) or "", rs, "--estring")
    if fw and ew:
        raise UsageError("--fstring and --estring are mutually exclusive")
    if fw:
        return _apply_word(el, fw, al.f_op, "lowering")
    if ew:
        return _apply_word(el, ew, al.e_op, "raising")
    return el


def _finite_chain(rs, lam, dual: bool):
    try:
        chain = lex_chain(rs, lam)
    except ValueError as exc:
        raise UsageError(str(exc))
    return dual_chain(chain) if dual else chain


def _raise_to_highest(el):
    word = []
    while True:
        for i in el.rs.index_set:
            nxt = al.e_op(el, i)
            if nxt is not None:
                word.append(i)
                el = nxt
                break
        else:
            return el, word


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


# ---------------------------------------------------------------------------
# subcommands


def _cmd_chain(args) -> int:
    rs = _root_system(args)
    chain = _finite_chain(rs, _weight(args, rs), args.dual)
    if args.format == "json":
        _emit(chain_to_json(chain))
    else:
        inner = ", ".join(
            f"({root_string(e.root)}, {e.level})" for e in chain.entries
        )
        print(f"({inner})")
    return 0


def _crystal_graph(chain, depth=None):
    gen = al.element(chain, [])
    return cg.enumerate_crystal(cg.alcove_ops(chain), [gen], depth=depth)


def _cmd_crystal(args) -> int:
    rs = _root_system(args)
    chain = _finite_chain(rs, _weight(args, rs), args.dual)
    graph = _crystal_graph(chain)
    if args.list_vertices:
        index = {(e.root.coeffs, e.level): i for i, e in enumerate(chain.entries)}
        vertex_sets = sorted(
            (tuple(index[pair] for pair in key) for key in graph.nodes),
            key=lambda s: (len(s), s),
        )
        for s in vertex_sets:
            print("[" + ", ".join(str(p) for p in s) + "]")
        return 0
    print(f"vertices: {len(graph.nodes)}")
    print(f"edges: {len(graph.edges)}")
    dim = cg.weyl_dimension(rs, _weight(args, rs))
    print(f"dimension: {dim}")
    return 0


def _cmd_binf(args) -> int:
    rs = _root_system(args)
    el = _seed_element(window(rs, 1), args, rs)
    fields = (args.show or "positions,weight").split(",")
    known = ("positions", "weight", "projection", "hw-string")
    for f in fields:
        if f not in known:
            raise UsageError(f"unknown --show field {f!r}")
    doc = {}
    lines = []
    if "positions" in fields:
        lines.append(f"positions: {al.render_element(el)}")
        doc["positions"] = al.element_to_json(el)["positions"]
    if "weight" in fields:
        wt = al.weight(el)
        lines.append(f"weight: {tuple(wt)}")
        doc["weight"] = list(wt)
    if "projection" in fields:
        k, image = al.minimal_projection(el)
        lines.append(f"projection: k = {k}: {al.render_element(image)}")
        doc["projection"] = {"k": k, "element": al.element_to_json(image)}
    if "hw-string" in fields:
        _, word = _raise_to_highest(el)
        lines.append("hw-string: [" + ", ".join(str(i) for i in word) + "]")
        doc["hw_string"] = word
    if args.format == "json":
        _emit(doc)
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_project(args) -> int:
    rs = _root_system(args)
    el = _seed_element(window(rs, 1), args, rs)
    if args.k is None:
        k, image = al.minimal_projection(el)
    else:
        k = args.k
        image = al.project_Spr(el, k)
    if image is None:
        print("none")
        return 0
    if args.format == "json":
        _emit({"k": k, "element": al.element_to_json(image)})
    else:
        print(f"k = {k}: {al.render_element(image)}")
    return 0


def _cmd_lift(args) -> int:
    rs = _root_system(args)
    if args.k is None or args.k < 1:
        raise UsageError("--k must be a positive integer")
    lam = tuple(c * args.k for c in rs.rho)
    el = _seed_element(lex_chain(rs, lam), args, rs)
    lifted = al.include_Sin(el, args.k)
    if args.format == "json":
        _emit(al.element_to_json(lifted))
    else:
        print(al.render_element(lifted))
    return 0


def _cmd_path_image(args) -> int:
    rs = _root_system(args)
    if args.infinity:
        chain = window(rs, 1, dual=args.dual)
        el = _seed_element(chain, args, rs)
        path = varpi_dual_infinity(el) if args.dual else varpi_infinity(el)
    else:
        chain = _finite_chain(rs, _weight(args, rs), args.dual)
        el = _seed_element(chain, args, rs)
        path = varpi_dual(el) if args.dual else varpi(el)
    if args.format == "json":
        _emit(lp.path_to_json(path))
    else:
        print(lp.render_path(path))
    return 0


def _cmd_export(args) -> int:
    rs = _root_system(args)
    if args.infinity:
        if args.depth is None:
            raise UsageError("--depth is required with --infinity")
        graph = _crystal_graph(window(rs, 1, dual=args.dual), depth=args.depth)
    else:
        graph = _crystal_graph(
            _finite_chain(rs, _weight(args, rs), args.dual), depth=args.depth
        )
    if args.format == "json":
        _emit(cg.graph_to_json(graph))
    else:
        print(cg.graph_to_dot(graph))
    return 0


# ---------------------------------------------------------------------------
# verification suites


def _dominant_weights(rs, cap=2):
    return list(itertools.product(range(cap + 1), repeat=rs.rank))


def _path_closure(rs, lam):
    ops = cg.path_ops(rs)
    return cg.enumerate_crystal(ops, [lp.straight_path(rs, lam)])


def _alcove_elements(graph, chain):
    index = {(e.root.coeffs, e.level): i for i, e in enumerate(chain.entries)}
    out = []
    for key in graph.nodes:
        out.append(al.element(chain, [index[pair] for pair in key]))
    return out


def _window_elements(rs, depth, dual=False):
    win = window(rs, 1, dual=dual)
    start = al.element(win, [])
    op = al.e_op if dual else al.f_op
    out = [start]
    seen = {start.pairs()}
    frontier = [start]
    for _ in range(depth):
        nxt = []
        for b in frontier:
            for i in rs.index_set:
                c = op(b, i)
                if c is not None and c.pairs() not in seen:
                    seen.add(c.pairs())
                    out.append(c)
                    nxt.append(c)
        frontier = nxt
    return out


def _path_truncation(rs, depth, kind):
    seed = lp.pi_infinity(rs) if kind == "extended" else lp.xi_infinity(rs)
    return cg.enumerate_crystal(cg.path_ops(rs, kind), [seed], depth=depth)


def _suite_axioms(rs, depth, emit):
    bad = 0
    for lam in _dominant_weights(rs):
        chain = lex_chain(rs, lam)
        report = cg.check_axioms(_crystal_graph(chain), seminormal=True)
        bad += emit(f"axioms Al{lam}", report.ok, report.failures)
        report = cg.check_axioms(_path_closure(rs, lam), seminormal=True)
        bad += emit(f"axioms paths{lam}", report.ok, report.failures)
    for dual in (False, True):
        graph = _crystal_graph(window(rs, 1, dual=dual), depth=depth)
        name = "Al-dual(inf)" if dual else "Al(inf)"
        report = cg.check_axioms(graph)
        bad += emit(f"axioms {name} depth {depth}", report.ok, report.failures)
    for kind in ("extended", "co-extended"):
        report = cg.check_axioms(_path_truncation(rs, depth, kind))
        bad += emit(f"axioms {kind} paths depth {depth}", report.ok, report.failures)
    return bad


def _suite_stembridge(rs, depth, emit):
    offdiag = [
        rs.cartan.matrix[a][b]
        for a in range(rs.rank)
        for b in range(rs.rank)
        if a != b
    ]
    if any(v not in (0, -1) for v in offdiag):
        return emit("stembridge skipped: not simply laced", True, [])
    bad = 0
    for lam in _dominant_weights(rs):
        report = cg.check_stembridge(_crystal_graph(lex_chain(rs, lam)))
        bad += emit(f"stembridge Al{lam}", report.ok, report.failures)
    return bad


def _dual_iso_reports(rs, depth):
    reports = []
    for lam in _dominant_weights(rs):
        chain = lex_chain(rs, lam)
        graph = _crystal_graph(chain)
        report = verify_dual_iso(
            _alcove_elements(graph, chain), varpi, cg.alcove_ops(chain), cg.path_ops(rs)
        )
        reports.append((f"Al{lam} -> paths", report))
    bound = min(depth, 4)
    report = verify_dual_iso(
        _window_elements(rs, bound),
        varpi_infinity,
        cg.alcove_ops(window(rs, 1)),
        cg.path_ops(rs, "co-extended"),
    )
    reports.append((f"Al(inf) depth {bound} -> co-extended paths", report))
    report = verify_dual_iso(
        _window_elements(rs, bound, dual=True),
        varpi_dual_infinity,
        cg.alcove_ops(window(rs, 1, dual=True)),
        cg.path_ops(rs, "extended"),
    )
    reports.append((f"Al-dual(inf) depth {bound} -> extended paths", report))
    return reports


def _suite_dual_iso(rs, depth, emit):
    bad = 0
    for name, report in _dual_iso_reports(rs, depth):
        bad += emit(f"dual-iso {name} checked {report.checked}", report.ok, report.failures)
    return bad


def _suite_limits(rs, depth, emit):
    checks = 0
    failures = []
    for el in _window_elements(rs, depth):
        k0, _ = al.minimal_projection(el)
        for k in range(max(k0, 1), max(k0, 1) + 3):
            image = al.project_Spr(el, k)
            if image is None:
                continue
            if al.include_Sin(image, k).pairs() != el.pairs():
                failures.append(f"inclusion does not invert projection at k={k}")
            checks += 1
            for i in rs.index_set:
                for op in (al.f_op, al.e_op):
                    big = op(el, i)
                    small = op(image, i)
                    if big is None or small is None:
                        continue
                    proj = al.project_Spr(big, k)
                    if proj is not None and proj.pairs() != small.pairs():
                        failures.append(
                            f"projection does not intertwine at k={k}, i={i}"
                        )
                    checks += 1
        for copies in (1, 2):
            alt = al.element_from_pairs(
                window(rs, copies + el.chain.copies),
                [(r.coeffs, lvl) for r, lvl in el.pairs()],
            )
            for i in rs.index_set:
                a = al.f_op(el, i)
                b = al.f_op(alt, i)
                if (a is None) != (b is None) or (
                    a is not None and a.pairs() != b.pairs()
                ):
                    failures.append(f"copies {copies} changed a lowering at i={i}")
                checks += 1
    return emit(f"limits coherence checks {checks}", not failures, failures)


def _suite_profile(rs, depth, emit):
    checks = 0
    failures = []
    pools = []
    for lam in _dominant_weights(rs):
        chain = lex_chain(rs, lam)
        pools.append(_alcove_elements(_crystal_graph(chain), chain))
    pools.append(_window_elements(rs, depth))
    for pool in pools:
        for el in pool:
            for i in rs.index_set:
                for a, b in (
                    (al.f_op(el, i), al.profile_f(el, i)),
                    (al.e_op(el, i), al.profile_e(el, i)),
                ):
                    checks += 1
                    if (a is None) != (b is None) or (
                        a is not None and a.pairs() != b.pairs()
                    ):
                        failures.append(
                            f"profile disagrees at {al.render_element(el)}, i={i}"
                        )
    return emit(f"profile operators checks {checks}", not failures, failures)


def _suite_duality(rs, depth, emit):
    bad = 0
    for lam in _dominant_weights(rs):
        primal = _crystal_graph(lex_chain(rs, lam))
        dual = _crystal_graph(dual_chain(lex_chain(rs, lam)))
        ok = cg.is_isomorphic(cg.dualize_graph(primal), dual)
        bad += emit(f"duality Al{lam}", ok, [] if ok else ["graphs differ"])
    return bad


_SUITES = {
    "axioms": _suite_axioms,
    "stembridge": _suite_stembridge,
    "dual-iso": _suite_dual_iso,
    "limits": _suite_limits,
    "profile": _suite_profile,
    "duality": _suite_duality,
}


def _cmd_verify(args) -> int:
    rs = _root_system(args)
    if args.suite == "dual-iso" and args.format != "text":
        doc = []
        for name, report in _dual_iso_reports(rs, args.depth):
            doc.append(
                {
                    "source": name,
                    "checked": report.checked,
                    "failures": [list(f) for f in report.failures],
                }
            )
        _emit(doc)
        return 0 if all(not d["failures"] for d in doc) else 1

    total = 0
    bad = 0

    def emit(name, ok, failures):
        nonlocal total
        total += 1
        if ok:
            print(f"ok {name}")
            return 0
        print(f"FAIL {name}")
        for f in failures[:5]:
            print(f"     {f}")
        return 1

    suites = list(_SUITES) if args.suite == "all" else [args.suite]
    for name in suites:
        bad += _SUITES[name](rs, args.depth, emit)
    print(f"passed {total - bad}/{total} checks")
    return 0 if bad == 0 else 1


# ---------------------------------------------------------------------------
# parser


def _add_common(p, weight=False, seed=False, fmt=("text", "json")):
    p.add_argument("--type", help="Cartan type, e.g. A2, B2, G2")
    p.add_argument("--matrix", help="Cartan matrix, rows ; separated, entries , separated")
    if weight:
        p.add_argument("--weight", help="dominant weight coefficients, comma separated")
        p.add_argument("--dual", action="store_true", help="use the dual model")
    if seed:
        p.add_argument("--fstring", help="lowering word, comma separated 1-based indices")
        p.add_argument("--estring", help="raising word, comma separated 1-based indices")
    p.add_argument("--format", choices=fmt, default=fmt[0])


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alcovecrystals",
        description="alcove model crystals, Littelmann paths, and their limits",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("chain", help="print a lexicographic chain")
    _add_common(p, weight=True)

    p = sub.add_parser("crystal", help="enumerate a finite crystal")
    _add_common(p, weight=True)
    p.add_argument("--list-vertices", action="store_true", dest="list_vertices")

    p = sub.add_parser("binf", help="walk the unbounded alcove model")
    _add_common(p, seed=True)
    p.add_argument("--show", help="comma separated: positions,weight,projection,hw-string")

    p = sub.add_parser("project", help="project an unbounded element to a finite crystal")
    _add_common(p, seed=True)
    p.add_argument("--k", type=int, help="number of copies; minimal when omitted")

    p = sub.add_parser("lift", help="include a finite crystal element into the unbounded model")
    _add_common(p, seed=True)
    p.add_argument("--k", type=int, required=True, help="the finite crystal is over k copies of the dominant sum")

    p = sub.add_parser("path-image", help="transport an element to a piecewise linear path")
    _add_common(p, weight=True, seed=True)
    p.add_argument("--infinity", action="store_true", help="use the unbounded model")

    p = sub.add_parser("verify", help="run a verification suite")
    _add_common(p, fmt=("text", "json"))
    p.add_argument("--suite", choices=["all", *sorted(_SUITES)], default="all")
    p.add_argument("--depth", type=int, default=4)

    p = sub.add_parser("export", help="emit a crystal graph as DOT or JSON")
    _add_common(p, weight=True, fmt=("dot", "json"))
    p.add_argument("--infinity", action="store_true", help="use the unbounded model")
    p.add_argument("--depth", type=int, help="truncation depth (required with --infinity)")

    return parser


_DISPATCH = {
    "chain": _cmd_chain,
    "crystal": _cmd_crystal,
    "binf": _cmd_binf,
    "project": _cmd_project,
    "lift": _cmd_lift,
    "path-image": _cmd_path_image,
    "verify": _cmd_verify,
    "export": _cmd_export,
}


def run(argv=None) -> int:
    """Parse ``argv`` and execute one subcommand; returns the exit status."""
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return _DISPATCH[args.cmd](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()
