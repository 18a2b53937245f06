"""Command line front end.

Every subcommand prints a human summary by default, or one JSON report with
``--json``. Reports go to stdout and diagnostics to stderr. Exit status: 0 on
success, 1 for invalid input, 2 when a search bound is exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict
from typing import Callable, Sequence

from . import __version__
from .decider import FaithfulTrace, classify, decide_condition, verify_trace, verify_witness
from .errors import InternalError, InvalidInput, KGraphError, ValidationError
from .graph import KGraph, parse_box, skew_product_window
from .ktheory import coker_presentation, induced_coker_endo
from .oracle import (DEFAULT_BOX_CAP, STRATEGIES, GeneratorConfig, box_witness_search,
                     dump_jsonl, random_kgraph)
from .serialize import (box_witness_to_json, certificate_to_json, dumps, endo_to_json,
                        parse_graph, presentation_to_json, read_graph_bytes, sha256,
                        verdict_to_json)

TOOL = "kgraphs"


class Outcome:
    """What a subcommand produced: exit code, JSON payload and human text."""

    def __init__(self, payload: dict, text: str, code: int = 0):
        self.payload, self.text, self.code = payload, text, code


def _load(path: str) -> tuple[KGraph, dict]:
    data = read_graph_bytes(path)
    echo = {"sha256": sha256(data)}
    return parse_graph(data), echo


# -- subcommands ---------------------------------------------------------------

def cmd_validate(args) -> Outcome:
    data = read_graph_bytes(args.path)
    echo = {"sha256": sha256(data)}
    try:
        g = parse_graph(data)
    except ValidationError as exc:
        lines = [v.describe() for v in exc.violations]
        payload = {"input": echo, "validation": {"ok": False, "violations": lines}}
        return Outcome(payload, "invalid\n" + "\n".join("  " + s for s in lines), code=1)
    payload = {"input": echo, "validation": {"ok": True, "violations": []},
               "graph": {"k": g.k, "N": g.N}}
    return Outcome(payload, f"valid {g.k}-graph on {g.N} vertices")


def _fmt_cert(cert) -> str:
    if isinstance(cert, FaithfulTrace):
        return "faithful graph trace (" + ", ".join(str(x) for x in cert.g) + ")"
    xs = "; ".join(f"x{i + 1}={list(x)}" for i, x in enumerate(cert.xs))
    return f"positivity witness {xs} with c={list(cert.c)}"


def cmd_classify(args) -> Outcome:
    g, echo = _load(args.path)
    v = classify(g)
    body = verdict_to_json(v)
    payload = {"input": echo, "validation": {"ok": True, "violations": []},
               "verdict": {key: body[key] for key in
                           ("cofinal", "stably_finite", "quasidiagonal", "af_embeddable", "notes")},
               "certificate": body["certificate"], "structural": body["structural"],
               "citations": v.citations}
    lines = [f"cofinal: {'yes' if v.cofinal else 'no'}"]
    for name, a in (("stably finite", v.stably_finite), ("quasidiagonal", v.quasidiagonal),
                    ("AF-embeddable", v.af_embeddable)):
        lines.append(f"{name + ':':<15} {a.value}")
    lines.append("certificate: " + _fmt_cert(v.certificate))
    s = v.structural
    for c, r in s.entrance_cycles.items():
        if r is not None:
            lines.append(f"color {c} cycle with entrance: {' -> '.join(r.cycle)}")
    if s.t2_case is not None:
        lines.append(f"t2 case at {s.t2_case.vertex}: blue {list(s.t2_case.zeta.cycle)}, "
                     f"red {list(s.t2_case.xi.cycle)}")
    if s.infinite_projection:
        lines.append("infinite projection: " + s.infinite_projection)
    lines += [f"note: {n}" for n in v.notes]
    lines += [f"because: {c}" for c in v.citations]
    return Outcome(payload, "\n".join(lines))


def cmd_certificate(args) -> Outcome:
    g, echo = _load(args.path)
    cert = decide_condition(g)
    if isinstance(cert, FaithfulTrace):
        ok = verify_trace(g, cert.g)
    else:
        ok = verify_witness(g, cert.xs) == cert.c
    if not ok:
        raise InternalError("certificate failed its own verifier")
    payload = {"input": echo, "certificate": certificate_to_json(cert), "verified": ok}
    return Outcome(payload, _fmt_cert(cert) + "\nverified: yes")


def cmd_k0(args) -> Outcome:
    g, echo = _load(args.path)
    if not 1 <= args.color <= g.k:
        raise InvalidInput(f"--color must be between 1 and {g.k}")
    p = coker_presentation(g.matrix(args.color))
    payload = {"input": echo, "color": args.color, "coker": presentation_to_json(p)}
    lines = [f"coker(1 - A_{args.color}^t) = {p.describe()}",
             f"invariant factors: {list(p.invariant_factors)}",
             f"cone: {p.cone_label}"]
    for v, img in zip(g.vertices, p.cone_generators):
        lines.append(f"  [{v}] -> {list(img)}")
    if g.k == 2 and args.color == 2:
        e = induced_coker_endo(g)
        payload["induced_endomorphism"] = endo_to_json(e)
        lines.append(f"A_1^t on coker: {[list(r) for r in e.matrix]}")
    return Outcome(payload, "\n".join(lines))


def cmd_skew(args) -> Outcome:
    g, echo = _load(args.path)
    box = parse_box(args.box, g.k)
    w = skew_product_window(g, box)
    order = w.topological_order()
    payload = {"input": echo, "box": [list(r) for r in w.box], "vertices": w.vertex_count,
               "edges": w.edge_count, "omitted_edges": w.omitted, "acyclic": order is not None}
    text = (f"window {args.box}: {w.vertex_count} vertices, {w.edge_count} edges "
            f"({w.omitted} leave the box); acyclic: {'yes' if order is not None else 'no'}")
    return Outcome(payload, text)


def cmd_oracle(args) -> Outcome:
    g, echo = _load(args.path)
    w = box_witness_search(g, args.box, cap=args.cap)
    payload = {"input": echo, "box": args.box, "witness": box_witness_to_json(w)}
    if w is None:
        text = f"no witness in [-{args.box}, {args.box}]^{g.k * g.N}"
    else:
        xs = "; ".join(f"x{i + 1}={list(x)}" for i, x in enumerate(w.xs))
        text = f"witness {xs} with c={list(w.c)}"
    return Outcome(payload, text)


def cmd_generate(args) -> Outcome:
    cfg = GeneratorConfig(seed=args.seed, N=args.n, max_entry=args.max_entry, k=args.k,
                          strategy=args.strategy)
    g = random_kgraph(cfg)
    payload = {"config": asdict(cfg), "graph": g.to_json()}
    return Outcome(payload, dump_jsonl([g]).rstrip("\n"))


# -- plumbing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=TOOL, description="finiteness certificates for k-graphs")
    p.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help: str, path: bool = True):
        sp = sub.add_parser(name, help=help)
        if path:
            sp.add_argument("path", help="graph JSON file")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "check the graph invariants")
    add("classify", cmd_classify, "finiteness verdict with certificate")
    add("certificate", cmd_certificate, "trace or positivity witness only")
    add("k0", cmd_k0, "cokernel of 1 - A_i^t").add_argument(
        "--color", type=int, default=1, help="1-based color (default 1)")
    add("skew", cmd_skew, "skew-product window").add_argument(
        "--box", default="0:3", help="lo:hi or lo:hi,lo:hi,... (default 0:3)")
    sp = add("oracle", cmd_oracle, "exhaustive witness search")
    sp.add_argument("--box", type=int, required=True, help="entry bound B")
    sp.add_argument("--cap", type=int, default=DEFAULT_BOX_CAP, help="limit on (2B+1)^(kN)")
    sp = add("generate", cmd_generate, "seeded random k-graph", path=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--n", type=int, required=True, help="vertex count")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--max-entry", type=int, default=2)
    sp.add_argument("--strategy", choices=STRATEGIES, default="polynomial")
    return p


def _report(command: str, payload: dict, seconds: float) -> dict:
    return {"tool": TOOL, "version": __version__, "command": command, **payload,
            "timing": {"seconds": round(seconds, 6)}}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        out = args.fn(args)
    except (KGraphError, OSError, ValueError) as exc:
        code = getattr(exc, "exit_code", 1)
        kind = type(exc).__name__
        print(f"{TOOL} {args.command}: {kind}: {exc}", file=sys.stderr)
        if args.json:
            payload = {"error": {"type": kind, "message": str(exc), "exit_code": code}}
            sys.stdout.write(dumps(_report(args.command, payload, time.perf_counter() - start)))
        return code
    if args.json:
        sys.stdout.write(dumps(_report(args.command, out.payload, time.perf_counter() - start)))
    else:
        print(out.text)
    return out.code


def without_timing(report: dict) -> dict:
    """Report minus its timing field, for reproducibility comparisons."""
    return {key: val for key, val in report.items() if key != "timing"}


if __name__ == "__main__":
    sys.exit(main())
