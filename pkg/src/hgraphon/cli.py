"""Command-line interface.

Exit codes: 0 decided, 2 invalid input, 3 verdict undetermined (the
concentration vector lies on the boundary of the edge polytope).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import HGraphonError
from .extension import DEFAULT_RESOLUTIONS, DEFAULT_SUBSAMPLES, analyze_extended, as_step
from .graphon import load_graphon
from .hamdec import degree_deficient_vertex, has_hamiltonian_decomposition, hopcroft_karp
from .montecarlo import Classification, classify_graphon, run_experiment
from .polytope import Status
from .sampler import (
    DirectedGraph,
    directify,
    read_graph_file,
    sample_graph,
    write_coordinates,
    write_graph,
)
from .skeleton import (
    all_components_nonbipartite,
    bipartite_components,
    exact_rank,
    has_odd_cycle,
    incidence_matrix,
    skeleton_graph,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNDETERMINED = 3


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("list must not be empty")
    return values


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _vec(vs) -> str:
    return " ".join(_fmt(v) for v in vs)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    g = load_graphon(args.input)
    resolutions = args.resolution or list(DEFAULT_RESOLUTIONS)
    verdict = classify_graphon(g, resolutions, args.subsamples, exact=args.exact)
    if verdict.basis == "step-exact" and args.resolution:
        ext = tuple(analyze_extended(g, sorted(args.resolution), args.subsamples))
        verdict = dataclasses.replace(verdict, extended=ext)
    code = EXIT_UNDETERMINED if verdict.classification is Classification.UNDETERMINED else EXIT_OK

    if args.format == "json":
        _emit(json.dumps(verdict.to_dict(), indent=2) + "\n", args.out)
        return code

    lines = []
    status = verdict.condition_b_status
    m = verdict.membership
    b_text = status.value
    if status is Status.INTERIOR:
        b_text += " (t*>0)"
    answer = {
        Classification.H_PROPERTY: "YES",
        Classification.NO_H_PROPERTY: "NO",
        Classification.UNDETERMINED: "UNDETERMINED (boundary)",
    }[verdict.classification]
    lines.append(f"A: {_yes(verdict.condition_a)}; B: {b_text}; H-property: {answer} ({verdict.basis})")
    if verdict.condition_a_rank is not None:
        lines.append(f"condition A, odd cycle in skeleton: {_yes(verdict.condition_a)}")
        lines.append(f"condition A, every skeleton component non-bipartite: {_yes(verdict.condition_a_rank)}")
        if verdict.a_readings_disagree:
            lines.append("warning: the two readings of condition A disagree (disconnected skeleton)")
    lines.append(f"condition B': {_yes(status is not Status.OUTSIDE)}")
    lines.append(f"condition B: {_yes(status is Status.INTERIOR)}")
    if m is not None and verdict.basis == "step-exact":
        lines.append(f"arithmetic: {'exact' if m.exact else 'float'}")
        if m.certificate is not None:
            lines.append(f"lambda: {_vec(m.certificate)}")
            lines.append(f"t*: {_fmt(m.margin)}")
        if m.separating_certificate is not None:
            lines.append(f"separating vector y: {_vec(m.separating_certificate)}")
    if verdict.extended:
        lines.append("resolution  A_ext  B_ext     margin  basis")
        for e in verdict.extended:
            tag = "exact" if e.exact else "approximate"
            margin = "-" if e.b_ext_margin is None else _fmt(e.b_ext_margin)
            lines.append(f"{e.resolution:>10}  {_yes(e.a_ext):>5}  {e.b_ext_status.value:<8}  {margin:>6}  {tag}")
    _emit("\n".join(lines) + "\n", args.out)
    return code


def cmd_skeleton(args) -> int:
    g = load_graphon(args.input)
    step = as_step(g)
    if step is None:
        raise HGraphonError("the skeleton is defined for step graphons (step, grid or constant input)")
    s = skeleton_graph(step)
    B = incidence_matrix(s)
    lines = [f"q={s.q} r={s.r}", "edges:"]
    lines += [f"  u{i + 1} -- u{j + 1}" + ("  (loop)" if i == j else "") for i, j in s.edges]
    lines.append("incidence matrix B:")
    lines += ["  " + " ".join(f"{str(v):>4}" for v in row) for row in B]
    lines.append(f"rank(B) = {exact_rank(B) if s.r else 0}; bipartite components = {bipartite_components(s)}")
    odd, allnb = has_odd_cycle(s), all_components_nonbipartite(s)
    lines.append(f"odd cycle: {_yes(odd)}")
    lines.append(f"every component non-bipartite: {_yes(allnb)}")
    if odd != allnb:
        lines.append("warning: the two readings of condition A disagree (disconnected skeleton)")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.n is None:
        raise HGraphonError("--n is required")
    g = load_graphon(args.input)
    sg = sample_graph(g, args.n, args.seed)
    if args.out:
        write_graph(sg, args.out)
        write_coordinates(sg, args.out + ".coords")
    else:
        sys.stdout.write(f"{sg.n} {sg.m}\n" + "".join(f"{i} {j}\n" for i, j in sg.edges.tolist()))
    return EXIT_OK


def cmd_hamdec(args) -> int:
    graph = read_graph_file(args.input)
    d = graph if isinstance(graph, DirectedGraph) else directify(graph)
    dec = has_hamiltonian_decomposition(d)
    if dec is not None:
        lines = ["YES"] + [" ".join(map(str, c)) for c in dec.cycles]
    else:
        lines = ["NO"]
        bad = degree_deficient_vertex(d)
        if bad is not None:
            lines.append(f"witness: vertex {bad[0]} has {bad[1]}-degree 0")
        else:
            size = sum(v != -1 for v in hopcroft_karp(d.out_neighbors(), d.n))
            lines.append(f"witness: maximum matching has size {size} < {d.n}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def svg_plot(report) -> str:
    import io

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r.n for r in report.rows]
    freq = [r.frequency for r in report.rows]
    lo = [r.interval[0] for r in report.rows]
    hi = [r.interval[1] for r in report.rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.fill_between(ns, lo, hi, alpha=0.25, lw=0)
    ax.plot(ns, freq, marker="o")
    ax.set_ylim(-0.02, 1.02)
    ax.set_xlabel("n")
    ax.set_ylabel("P(Hamiltonian decomposition)")
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def cmd_simulate(args) -> int:
    g = load_graphon(args.input)
    n_list = args.n_list or ([args.n] if args.n else None)
    if not n_list:
        raise HGraphonError("--n-list (or --n) is required")
    report = run_experiment(g, n_list, args.trials, args.seed, workers=args.workers)
    csv_text = report.to_csv(timing=args.timing)
    if args.format == "svg":
        if not args.out:
            raise HGraphonError("--format svg needs --out")
        Path(args.out).write_text(svg_plot(report), encoding="utf-8")
        sys.stdout.write(csv_text)
    else:
        _emit(csv_text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hgraphon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text",)):
        sp.add_argument("input", help="graphon JSON file (graph file for hamdec)")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=formats, default=formats[0])
        sp.add_argument("--seed", type=int, default=0)
        return sp

    c = common(sub.add_parser("check", help="decide the H-property conditions"), ("text", "json"))
    c.add_argument("--resolution", type=int, action="append",
                   help="grid resolution for the extended conditions (repeatable)")
    c.add_argument("--subsamples", type=int, default=DEFAULT_SUBSAMPLES)
    mode = c.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True)
    mode.add_argument("--float", dest="exact", action="store_false")
    c.set_defaults(func=cmd_check)

    s = common(sub.add_parser("skeleton", help="print skeleton graph and incidence matrix"))
    s.set_defaults(func=cmd_skeleton)

    s = common(sub.add_parser("sample", help="sample a graph from a graphon"))
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_sample)

    h = common(sub.add_parser("hamdec", help="decide Hamiltonian decomposition of a graph file"))
    h.set_defaults(func=cmd_hamdec)

    m = common(sub.add_parser("simulate", help="Monte Carlo decomposition frequencies"), ("csv", "svg"))
    m.add_argument("--n", type=int)
    m.add_argument("--n-list", type=_int_list)
    m.add_argument("--trials", type=int, default=100)
    m.add_argument("--workers", type=int, default=1)
    m.add_argument("--timing", action="store_true", help="fill the seconds column")
    m.set_defaults(func=cmd_simulate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (HGraphonError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
