"""Boundedness of tree-width for classes given by finitely many forbidden
induced subgraphs, plus a sampling harness.

Tree-width is bounded on the ``F``-free graphs exactly when ``F`` contains a
complete graph, a complete bipartite graph, a tripod and the line graph of a
tripod. :func:`decide_bounded` fills one slot per criterion with the first
member of ``F`` meeting it.
"""

from __future__ import annotations

import math
import statistics
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from .constants import Constants, is_huge
from .decomposition import exact_treewidth
from .detection import DEFAULT_BUDGET, is_f_free
from .errors import BudgetExceeded, ContractError
from .formats import load_graph
from .generators import complete, complete_bipartite
from .graph import Graph, XorShift64Star, line_graph, random_graph, subdivide
from .recognition import ComponentShape, is_complete, is_complete_bipartite, is_line_of_tripod, is_tripod

CRITERIA = ("complete", "complete_bipartite", "tripod", "line_of_tripod")


@dataclass(frozen=True)
class NamedGraph:
    name: str
    graph: Graph


def forbidden_set(members: Iterable[NamedGraph | Graph | str]) -> list[NamedGraph]:
    """Normalise members: graphs get positional names, strings are loaded."""
    out = []
    for i, x in enumerate(members):
        if isinstance(x, NamedGraph):
            out.append(x)
        elif isinstance(x, Graph):
            out.append(NamedGraph(f"F{i}", x))
        else:
            out.append(NamedGraph(x, load_graph(x)))
    return out


def split_forbidden(text: str) -> list[str]:
    """Split a comma-separated member list.

    Generator specs carry their own commas, so a bare integer token is glued
    back onto the previous token: ``"K:4,bipartite:3,3"`` gives
    ``["K:4", "bipartite:3,3"]``.
    """
    out: list[str] = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok.isdigit() and out and ":" in out[-1]:
            out[-1] += "," + tok
        else:
            out.append(tok)
    return out


@dataclass
class DichotomyVerdict:
    """Criterion slots hold the name of the first satisfying member, or ``None``."""

    slots: dict[str, str | None]
    suggested_p: int | None
    notes: list[str] = field(default_factory=list)

    @property
    def bounded(self) -> bool:
        return all(self.slots[c] is not None for c in CRITERIA)

    @property
    def missing(self) -> list[str]:
        return [c for c in CRITERIA if self.slots[c] is None]

    def to_json(self) -> dict[str, Any]:
        return {**{c: self.slots[c] for c in CRITERIA},
                "overall": "Bounded" if self.bounded else "Unbounded",
                "missing": self.missing, "suggested_p": self.suggested_p, "notes": self.notes}


def _arm_bound(shapes: Sequence[ComponentShape], path_slack: int) -> int:
    """Smallest p whose S_p (``path_slack=1``) or T_p (``path_slack=2``)
    contains each listed component."""
    p = 0
    for s in shapes:
        if s.tag == "path":
            p = max(p, math.ceil(max(s.params[0] - path_slack, 0) / 2))
        else:
            p = max(p, max(s.params, default=0))
    return p


def decide_bounded(forbidden: Iterable[NamedGraph | Graph | str], lenient_bipartite: bool = False) -> DichotomyVerdict:
    """Fill the four criterion slots from ``forbidden`` (first match wins).

    An edgeless member on two or more vertices is a complete bipartite graph
    only with ``lenient_bipartite``. When a complete member is present such
    a member still fills the bipartite slot with a note: the class is then
    finite, so the overall verdict does not depend on the flag.
    """
    members = forbidden_set(forbidden)
    if not members:
        raise ContractError("forbidden set must be non-empty")
    slots: dict[str, str | None] = dict.fromkeys(CRITERIA)
    notes: list[str] = []
    tripod_shapes: list[ComponentShape] = []
    line_shapes: list[ComponentShape] = []
    clique_sizes: list[int] = []
    biclique_sizes: list[int] = []
    edgeless: list[str] = []

    for f in members:
        g = f.graph
        if is_complete(g):
            slots["complete"] = slots["complete"] or f.name
            clique_sizes.append(g.n)
        bip = is_complete_bipartite(g, lenient=lenient_bipartite)
        if bip:
            slots["complete_bipartite"] = slots["complete_bipartite"] or f.name
            biclique_sizes.append(max(bip.shapes[0].params))
        verdict = is_tripod(g)
        if verdict:
            slots["tripod"] = slots["tripod"] or f.name
            tripod_shapes.extend(verdict.shapes)
        verdict = is_line_of_tripod(g)
        if verdict:
            slots["line_of_tripod"] = slots["line_of_tripod"] or f.name
            line_shapes.extend(verdict.shapes)
        if g.n >= 2 and g.m == 0:
            edgeless.append(f.name)

    if slots["complete_bipartite"] is None and edgeless and slots["complete"] is not None:
        slots["complete_bipartite"] = edgeless[0]
        notes.append(f"edgeless member {edgeless[0]} fills the complete_bipartite slot: together with "
                     f"complete member {slots['complete']} it leaves only finitely many graphs")

    suggested = None
    if tripod_shapes or line_shapes or (clique_sizes and biclique_sizes):
        suggested = max(1, _arm_bound(tripod_shapes, 1), _arm_bound(line_shapes, 2))
        if clique_sizes and biclique_sizes:
            t = Constants("upper").R(max(1, min(biclique_sizes)), max(1, min(clique_sizes)))
            if not is_huge(t):
                suggested = max(suggested, t)
    return DichotomyVerdict(slots, suggested, notes)


def unboundedness_family(criterion: str, i: int) -> Graph:
    """``i``-th member of a family with growing tree-width that avoids the
    other three criteria (for small ``i``)."""
    if i < 1:
        raise ContractError("family index must be at least 1")
    if criterion == "complete":
        return complete(i + 2)
    if criterion == "complete_bipartite":
        return complete_bipartite(i + 2, i + 2)
    if criterion == "tripod":
        return subdivide(complete(i + 2), 1)[0]
    if criterion == "line_of_tripod":
        return line_graph(subdivide(complete(i + 2), 1)[0])
    raise ContractError(f"unknown criterion {criterion!r}; choose from {list(CRITERIA)}")


# --- survey -------------------------------------------------------------------

@dataclass(frozen=True)
class SurveyRow:
    n: int
    samples: int
    accepted: int
    tw_min: int | None
    tw_med: float | None
    tw_max: int | None
    budget_exceeded: int

    FIELDS = ("n", "samples", "accepted", "tw_min", "tw_med", "tw_max", "budget_exceeded")

    def as_tuple(self) -> tuple:
        return tuple(getattr(self, f) for f in self.FIELDS)


def default_edge_probability(n: int) -> float:
    """Sparse regime where most draws avoid small forbidden graphs."""
    return min(1.0, 2.0 / n) if n > 0 else 0.0


def survey(forbidden: Iterable[NamedGraph | Graph | str], n_min: int, n_max: int, samples: int, seed: int,
           budget: int | None = DEFAULT_BUDGET, edge_probability: float | None = None) -> list[SurveyRow]:
    """Sample random graphs per ``n``, keep the ``F``-free ones, and
    summarise their exact tree-widths.

    Sample seeds come from one xorshift stream seeded with ``seed``, drawn
    in ``(n, sample)`` order. A draw whose freeness test or width
    computation runs out of budget counts in ``budget_exceeded`` and nowhere
    else.
    """
    members = forbidden_set(forbidden)
    if samples < 0 or n_min < 0 or n_max < n_min:
        raise ContractError("need samples >= 0 and 0 <= n_min <= n_max")
    if samples == 0:
        return []
    graphs = [f.graph for f in members]
    stream = XorShift64Star(seed)
    rows = []
    for n in range(n_min, n_max + 1):
        prob = default_edge_probability(n) if edge_probability is None else edge_probability
        widths: list[int] = []
        exceeded = 0
        for _ in range(samples):
            g = random_graph(n, prob, stream.next())
            try:
                free, _ = is_f_free(g, graphs, budget)
                if not free:
                    continue
                widths.append(exact_treewidth(g, budget)[0])
            except BudgetExceeded:
                exceeded += 1
        if widths:
            rows.append(SurveyRow(n, samples, len(widths), min(widths), float(statistics.median(widths)),
                                  max(widths), exceeded))
        else:
            rows.append(SurveyRow(n, samples, 0, None, None, None, exceeded))
    return rows


def family_widths(criterion: str, indices: Iterable[int],
                  budget: int | None = None) -> list[tuple[int, int, int]]:
    """``(i, vertex count, exact tree-width)`` for members of an
    unboundedness family."""
    out = []
    for i in indices:
        g = unboundedness_family(criterion, i)
        out.append((i, g.n, exact_treewidth(g, budget)[0]))
    return out
