"""JSON encodings for graphs, certificates, verdicts and K-theory data.

Rationals are written as ``"p/q"`` strings and integers as JSON numbers, so
every document parses back to equal Python objects.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .decider import Answer, Certificate, FaithfulTrace, PositiveWitness, Structural, Verdict
from .errors import ParseError
from .graph import CycleReport, Entrance, KGraph, T2Data, validate
from .ktheory import CokerEndo, CokerPresentation, LimitElement
from .oracle import BoxWitness


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def fraction_to_json(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fraction_from_json(s: str | int) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError):
        raise ParseError(f"not a rational: {s!r}") from None


# -- graphs -------------------------------------------------------------------

def read_graph_bytes(path: str | Path) -> bytes:
    return Path(path).read_bytes()


def parse_graph(data: bytes | str) -> KGraph:
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return validate(raw)


def sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


# -- certificates -------------------------------------------------------------

def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, FaithfulTrace):
        return {"type": "trace", "trace": [fraction_to_json(x) for x in cert.g]}
    return {"type": "witness", "xs": [list(x) for x in cert.xs], "c": list(cert.c)}


def certificate_from_json(d: dict) -> Certificate:
    kind = d.get("type")
    if kind == "trace":
        return FaithfulTrace(g=tuple(fraction_from_json(x) for x in d["trace"]))
    if kind == "witness":
        return PositiveWitness(xs=tuple(tuple(int(v) for v in x) for x in d["xs"]),
                               c=tuple(int(v) for v in d["c"]))
    raise ParseError(f"unknown certificate type {kind!r}")


def cycle_from_json(d: dict | None) -> CycleReport | None:
    if d is None:
        return None
    e = d["entrance"]
    ent = None if e is None else Entrance(e["vertex"], e["source"], int(e["excess"]))
    return CycleReport(color=int(d["color"]), cycle=tuple(d["cycle"]), entrance=ent)


def _t2_from_json(d: dict | None) -> T2Data | None:
    if d is None:
        return None
    return T2Data(d["vertex"], cycle_from_json(d["zeta"]), cycle_from_json(d["xi"]))


def structural_to_json(s: Structural) -> dict:
    return {
        "entrance_cycles": {str(c): (r.to_json() if r else None)
                            for c, r in s.entrance_cycles.items()},
        "t2_case": s.t2_case.to_json() if s.t2_case else None,
        "infinite_projection": s.infinite_projection,
    }


def structural_from_json(d: dict) -> Structural:
    return Structural(
        entrance_cycles={int(c): cycle_from_json(r) for c, r in d["entrance_cycles"].items()},
        t2_case=_t2_from_json(d["t2_case"]),
        infinite_projection=d["infinite_projection"])


def _answer(a: Answer) -> dict:
    return {"value": a.value, "citation": a.citation}


def verdict_to_json(v: Verdict) -> dict:
    return {
        "cofinal": v.cofinal,
        "stably_finite": _answer(v.stably_finite),
        "quasidiagonal": _answer(v.quasidiagonal),
        "af_embeddable": _answer(v.af_embeddable),
        "structural": structural_to_json(v.structural),
        "certificate": certificate_to_json(v.certificate),
        "notes": list(v.notes),
    }


def verdict_from_json(d: dict) -> Verdict:
    ans = {key: Answer(d[key]["value"], d[key]["citation"])
           for key in ("stably_finite", "quasidiagonal", "af_embeddable")}
    return Verdict(cofinal=bool(d["cofinal"]), structural=structural_from_json(d["structural"]),
                   certificate=certificate_from_json(d["certificate"]),
                   notes=tuple(d["notes"]), **ans)


def box_witness_to_json(w: BoxWitness | None) -> dict | None:
    return None if w is None else {"xs": [list(x) for x in w.xs], "c": list(w.c)}


# -- K-theory -------------------------------------------------------------------

def presentation_to_json(p: CokerPresentation) -> dict:
    return {
        "group": p.describe(),
        "invariant_factors": list(p.invariant_factors),
        "moduli": list(p.moduli),
        "free_rank": p.free_rank,
        "order": p.order,
        "cone_label": p.cone_label,
        "generator_images": [list(x) for x in p.cone_generators],
    }


def endo_to_json(e: CokerEndo) -> dict:
    return {"moduli": list(e.presentation.moduli), "matrix": [list(r) for r in e.matrix]}


def limit_element_to_json(a: LimitElement) -> dict:
    return {"stage": a.stage, "vec": list(a.vec), "generator": [list(r) for r in a.generator]}


def limit_element_from_json(d: dict) -> LimitElement:
    def num(x):
        # stages and entries may arrive as decimal strings
        return int(x, 10) if isinstance(x, str) else int(x)
    return LimitElement.make(num(d["stage"]), [num(x) for x in d["vec"]],
                             [[num(x) for x in row] for row in d["generator"]])
