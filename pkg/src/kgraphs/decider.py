"""Decide the matrix condition with certificates and assemble verdicts.

For a finite k-graph with coordinate matrices A_1..A_k exactly one of these
exists (Stiemke's alternative applied to ``M = (1 - A_1^t | ... | 1 - A_k^t)``):

* a faithful graph trace: ``g > 0`` with ``A_i g = g`` for every i;
* a positivity witness: integer ``x_1..x_k`` with ``sum (1 - A_i^t) x_i``
  nonnegative and nonzero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (InternalError, LengthMismatch, NoEntrance, NotATraceOnH, NotAWitness,
                     NotCofinal)
from .graph import (CycleAnalysis, CycleReport, KGraph, T2Data, coordinate_cycle_analysis,
                    cycle_report, degree_matrix, diagonal_landing, find_t2_data,
                    is_cofinal, is_hereditary)
from .linalg.alternative import PositiveKernel, stiemke_alternative
from .linalg.intmat import matpow

YES, NO, UNKNOWN = "Yes", "No", "Unknown"

CITATIONS = {
    "main": ("cofinal row-finite k-graph with no sources: C*(Λ) quasidiagonal ⟺ "
             "stably finite ⟺ (Σᵢ im(1−Aᵢᵗ)) ∩ ℕΛ⁰ = {0} ⟺ Λ admits a faithful graph trace"),
    "main-k2": ("cofinal 2-graph: the equivalent finiteness conditions hold ⟺ "
                "C*(Λ) embeds in an AF algebra"),
    "sf-to-matrix": ("row-finite k-graph with no sources: C*(Λ) stably finite ⇒ "
                     "(Σᵢ im(1−Aᵢᵗ)) ∩ ℕΛ⁰ = {0}; no cofinality hypothesis"),
    "chain": "AF-embeddable ⇒ quasidiagonal ⇒ stably finite, for every C*-algebra",
    "trace": ("finite vertex set: a strictly positive rational g with Aᵢg = g for all i "
              "is a faithful graph trace (identity at every degree by induction on |m|)"),
    "t2": ("cofinal 2-graph with a blue cycle without blue entrance and a red cycle "
           "without red entrance: C*(Λ) is stably isomorphic to C(𝕋²), hence AF-embeddable"),
    "infinite-projection": ("cycle μ with entrance f in a coordinate graph: S = Σ s_μᵢ has "
                            "S*S ≥ SS* + s_f s_f* > SS*, so C*(Λ) is not stably finite"),
    "one-graph": ("directed graph E with no sources: C*(E) AF-embeddable ⟺ quasidiagonal ⟺ "
                  "stably finite ⟺ no cycle in E has an entrance ⟺ im(1−Aᵗ) ∩ ℕE⁰ = {0}"),
}


@dataclass(frozen=True)
class ConditionMatrix:
    k: int
    N: int
    M: tuple[tuple[int, ...], ...]  # N x kN, block i = 1 - A_i^t

    def block(self, color: int) -> list[list[int]]:
        lo = (color - 1) * self.N
        return [list(row[lo:lo + self.N]) for row in self.M]


@dataclass(frozen=True)
class FaithfulTrace:
    g: tuple[Fraction, ...]


@dataclass(frozen=True)
class PositiveWitness:
    xs: tuple[tuple[int, ...], ...]
    c: tuple[int, ...]


Certificate = FaithfulTrace | PositiveWitness


def build_condition_matrix(g: KGraph) -> ConditionMatrix:
    N = g.N
    rows = []
    for v in range(N):
        row = []
        for A in g.matrices:
            # (1 - A^t)[v][w] = delta_vw - A[w][v]
            row.extend(int(v == w) - A[w][v] for w in range(N))
        rows.append(tuple(row))
    return ConditionMatrix(k=g.k, N=N, M=tuple(rows))


def verify_trace(g: KGraph, t: Sequence, max_degree: int = 3) -> bool:
    if len(t) != g.N:
        raise LengthMismatch(f"trace has length {len(t)}, graph has {g.N} vertices")
    t = [Fraction(x) for x in t]
    if any(x <= 0 for x in t):
        return False
    for A in g.matrices:
        if any(sum(a * x for a, x in zip(row, t)) != tv for row, tv in zip(A, t)):
            return False
    for n in itertools.product(range(max_degree + 1), repeat=g.k):
        An = degree_matrix(g, n)
        if any(sum(a * x for a, x in zip(row, t)) != tv for row, tv in zip(An, t)):
            return False
    return True


def witness_sum(g: KGraph, xs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """``c = sum_i (1 - A_i^t) x_i``."""
    if len(xs) != g.k or any(len(x) != g.N for x in xs):
        raise LengthMismatch(f"need {g.k} vectors of length {g.N}")
    N = g.N
    c = [0] * N
    for A, x in zip(g.matrices, xs):
        for v in range(N):
            c[v] += x[v] - sum(A[w][v] * x[w] for w in range(N))
    return tuple(c)


def verify_witness(g: KGraph, xs: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    c = witness_sum(g, xs)
    if all(x >= 0 for x in c) and any(c):
        return c
    return None


def decide_condition(g: KGraph) -> Certificate:
    cm = build_condition_matrix(g)
    alt = stiemke_alternative(cm.M, cols=g.k * g.N)
    if isinstance(alt, PositiveKernel):
        scale = alt.xi[0]
        trace = tuple(x / scale for x in alt.xi)
        if not verify_trace(g, trace):
            raise InternalError("LP returned a vector that is not a faithful graph trace")
        return FaithfulTrace(g=trace)
    xs = tuple(tuple(alt.x[i * g.N:(i + 1) * g.N]) for i in range(g.k))
    c = verify_witness(g, xs)
    if c is None:
        raise InternalError("LP returned a vector that is not a positivity witness")
    return PositiveWitness(xs=xs, c=c)


# -- one-graph converters -------------------------------------------------------

def witness_from_entrance_cycle(g: KGraph, color: int, report: CycleReport) -> tuple[tuple[int, ...], ...]:
    """``x_color = -(indicator of the cycle vertices)``, zero in the other blocks."""
    if report.entrance is None:
        raise NoEntrance(f"color-{color} cycle {report.cycle} has no entrance")
    xs = [[0] * g.N for _ in range(g.k)]
    for v in report.cycle:
        xs[color - 1][g.index(v)] = -1
    xs = tuple(tuple(x) for x in xs)
    c = verify_witness(g, xs)
    if c is None or c[g.index(report.entrance.source)] < 1:
        raise InternalError("entrance cycle did not yield a witness")
    return xs


def _one_color_image(A, a: Sequence[int]) -> list[int]:
    N = len(a)
    return [a[v] - sum(A[w][v] * a[w] for w in range(N)) for v in range(N)]


def _walk_to_cycle(start: int, step) -> list[int]:
    path, pos = [start], {start: 0}
    while True:
        u = step(path[-1])
        if u in pos:
            return path[pos[u]:]
        pos[u] = len(path)
        path.append(u)


def entrance_cycle_from_witness(g: KGraph, a: Sequence[int], color: int = 1) -> CycleReport:
    """Recover a cycle with an entrance from ``a`` with ``(1 - A^t) a >= 0, != 0``.

    Repeatedly locate a cycle inside ``supp(a)`` by following signs; when that
    cycle has no entrance its indicator lies in ``ker(1 - A^t)`` and is used to
    shrink the support without changing ``(1 - A^t) a``.
    """
    A = g.matrix(color)
    N = g.N
    if len(a) != N:
        raise LengthMismatch(f"vector has length {len(a)}, graph has {N} vertices")
    a = [int(x) for x in a]
    c = _one_color_image(A, a)
    if any(x < 0 for x in c) or not any(c):
        raise NotAWitness("(1 - A^t) a is not nonnegative and nonzero")
    while True:
        neg = next((v for v in range(N) if a[v] < 0), None)
        if neg is not None:
            # a_v < 0 forces an edge out of v (as source) whose range is negative
            loop = _walk_to_cycle(neg, lambda v: min(
                w for w in range(N) if A[w][v] and a[w] < 0))
            loop.reverse()
        else:
            pos = next(v for v in range(N) if a[v] > 0)
            loop = _walk_to_cycle(pos, lambda v: min(
                w for w in range(N) if A[v][w] and a[w] > 0))
        r = loop.index(min(loop))
        loop = loop[r:] + loop[:r]
        rep = cycle_report(g, color, loop)
        if rep.entrance is not None:
            return rep
        coef = a[loop[0]]
        for v in loop:
            a[v] -= coef
        if _one_color_image(A, a) != c:
            raise InternalError("support reduction changed (1 - A^t) a")


# -- trace extension ------------------------------------------------------------

def trace_extension(g: KGraph, H, tH: Mapping[str, Fraction]) -> tuple[Fraction, ...]:
    """Extend a faithful graph trace on a hereditary set H to all of the graph.

    ``gbar(w) = sum over paths of degree n_w with range w of tH(source)``, with
    ``n_w = (t, ..., t)`` the first diagonal degree whose sources all lie in H.
    """
    members = {g.index(v) for v in H}
    if not is_hereditary(g, [g.vertices[i] for i in members]):
        raise NotATraceOnH("H is not hereditary")
    t = {g.index(v): Fraction(x) for v, x in tH.items()}
    if set(t) != members:
        raise NotATraceOnH("trace values must be given exactly on H")
    if any(x <= 0 for x in t.values()):
        raise NotATraceOnH("trace on H is not faithful")
    for A in g.matrices:
        for u in members:
            if sum(A[u][w] * t[w] for w in members) != t[u]:
                raise NotATraceOnH(f"graph-trace identity fails at {g.vertices[u]!r}")
    target = frozenset(members)
    B = degree_matrix(g, [1] * g.k)
    out = []
    for w in range(g.N):
        if w in members:
            out.append(t[w])
            continue
        steps = diagonal_landing(g, w, target)
        if steps is None:
            raise NotCofinal(f"no diagonal degree carries {g.vertices[w]!r} into H")
        row = matpow(B, steps)[w]
        out.append(sum((row[u] * t[u] for u in members), Fraction(0)))
    out = tuple(out)
    if not verify_trace(g, out):
        raise InternalError("extended function is not a graph trace")
    return out


# -- infinite projection ----------------------------------------------------------

def _edge(color: int, rng: str, src: str, copy: int) -> str:
    return f"e[{color}:{rng}<-{src}#{copy}]"


def infinite_projection_certificate(g: KGraph, report: CycleReport) -> str:
    if report.entrance is None:
        raise NoEntrance(f"color-{report.color} cycle {report.cycle} has no entrance")
    cyc = report.cycle
    n = len(cyc)
    mus = [_edge(report.color, cyc[t], cyc[(t + 1) % n], 0) for t in range(n)]
    ent = report.entrance
    t = cyc.index(ent.vertex)
    copy = 1 if ent.source == cyc[(t + 1) % n] else 0
    f = _edge(report.color, ent.vertex, ent.source, copy)
    S = " + ".join(f"s_{{{m}}}" for m in mus)
    ps = " + ".join(f"p_{{{v}}}" for v in cyc)
    return (f"color {report.color} cycle ({' -> '.join(cyc)}) with entrance f = {f}; "
            f"S = {S}; S*S = {ps} >= SS* + s_{{{f}}}s_{{{f}}}* > SS*; "
            f"S*S is an infinite projection")


# -- verdicts ---------------------------------------------------------------------

@dataclass(frozen=True)
class Answer:
    value: str
    citation: str


@dataclass(frozen=True)
class Structural:
    entrance_cycles: dict[int, CycleReport | None]
    t2_case: T2Data | None = None
    infinite_projection: str | None = None


@dataclass(frozen=True)
class Verdict:
    cofinal: bool
    stably_finite: Answer
    quasidiagonal: Answer
    af_embeddable: Answer
    structural: Structural
    certificate: Certificate
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def citations(self) -> list[str]:
        seen = []
        for a in (self.stably_finite, self.quasidiagonal, self.af_embeddable):
            for c in a.citation.split(" | "):
                if c and c not in seen:
                    seen.append(c)
        return seen


def ordering_holds(v: Verdict) -> bool:
    """AFE=Yes => QD=Yes => SF=Yes, and SF=No => QD=No => AFE=No."""
    afe, qd, sf = v.af_embeddable.value, v.quasidiagonal.value, v.stably_finite.value
    return ((afe != YES or qd == YES) and (qd != YES or sf == YES)
            and (sf != NO or qd == NO) and (qd != NO or afe == NO))


def classify(g: KGraph) -> Verdict:
    cert = decide_condition(g)
    analyses: dict[int, CycleAnalysis] = {
        c: coordinate_cycle_analysis(g, c) for c in range(1, g.k + 1)}
    entrance = {c: a.entrance_cycle for c, a in analyses.items()}
    first_entrance = next((r for r in entrance.values() if r is not None), None)
    if first_entrance is not None and isinstance(cert, FaithfulTrace):
        raise InternalError("entrance cycle present but a faithful trace was found")
    inf_proj = (infinite_projection_certificate(g, first_entrance)
                if first_entrance is not None else None)
    cofinal = is_cofinal(g)
    notes: list[str] = []
    t2 = None
    C = CITATIONS

    if g.k == 1:
        value = NO if isinstance(cert, PositiveWitness) else YES
        sf = qd = afe = Answer(value, C["one-graph"])
        notes.append("rank 1: the three properties coincide with the absence of entrance cycles")
    elif isinstance(cert, PositiveWitness):
        sf = Answer(NO, C["sf-to-matrix"])
        qd = Answer(NO, C["chain"] + " | " + C["sf-to-matrix"])
        afe = Answer(NO, C["chain"] + " | " + C["sf-to-matrix"])
    elif cofinal:
        sf = Answer(YES, C["main"] + " | " + C["trace"])
        qd = Answer(YES, C["main"] + " | " + C["trace"])
        if g.k == 2:
            afe = Answer(YES, C["main-k2"])
            t2 = find_t2_data(g)
            if t2 is not None:
                afe = Answer(YES, C["main-k2"] + " | " + C["t2"])
        else:
            afe = Answer(UNKNOWN, "")
            notes.append("AF-embeddability is only decided for k <= 2")
    else:
        sf = qd = afe = Answer(UNKNOWN, "")
        notes.append("faithful graph trace found but the graph is not cofinal; "
                     "the trace-to-finiteness equivalences assume cofinality")

    verdict = Verdict(
        cofinal=cofinal, stably_finite=sf, quasidiagonal=qd, af_embeddable=afe,
        structural=Structural(entrance_cycles=entrance, t2_case=t2,
                              infinite_projection=inf_proj),
        certificate=cert, notes=tuple(notes))
    if not ordering_holds(verdict):
        raise InternalError("verdict violates AFE => QD => SF")
    return verdict
