"""Deciding the existence of color- and order-preserving maps by backtracking.

Source elements are assigned in a fixed linear extension (ties broken by
index) so results are reproducible. Candidate targets are filtered by color
and by strength dominance (a homomorphism can only send a node to one whose
alternating chains up and down are at least as long). After each assignment
the domains are made arc consistent along the Hasse edges of the source. For
order constraints that implies consistency along every comparable pair, so
placed nodes need no separate check.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .classes import strength_tables
from .errors import BudgetExceeded
from .poset import ColoredPoset, Check, bits

MODES = ("plain", "injective", "imm_pred")


@dataclass(frozen=True)
class Homomorphism:
    source: ColoredPoset
    target: ColoredPoset
    map: tuple
    mode: str = "plain"

    def __call__(self, p: int) -> int:
        return self.map[p]

    def to_json(self) -> dict:
        return {"mode": self.mode, "map": list(self.map)}

    @classmethod
    def from_json(cls, d: dict, source: ColoredPoset, target: ColoredPoset) -> "Homomorphism":
        return cls(source, target, tuple(int(q) for q in d["map"]), d.get("mode", "plain"))

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """``other`` after ``self``."""
        return Homomorphism(self.source, other.target, tuple(other.map[q] for q in self.map), "plain")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one directed search.

    ``hom is None`` with ``exhausted`` set means the whole search tree was
    explored; ``nodes`` counts the assignments tried.
    """

    hom: Optional[Homomorphism]
    nodes: int
    exhausted: bool

    @property
    def found(self) -> bool:
        return self.hom is not None

    def to_json(self) -> dict:
        d = {"found": self.found, "nodes": self.nodes, "exhausted": self.exhausted}
        if self.hom is not None:
            d["hom"] = self.hom.to_json()
        return d


def verify_hom(h: Homomorphism) -> Check:
    """Independent check of every condition of ``h.mode``; lists all violations."""
    P, Q, phi = h.source, h.target, list(h.map)
    problems = []
    if len(phi) != P.n:
        return Check(False, [("arity", len(phi))], "wrong arity")
    if any(not 0 <= q < Q.n for q in phi):
        return Check(False, [("range", phi)], "value out of range")
    for p in range(P.n):
        if P.color[p] != Q.color[phi[p]]:
            problems.append(("color", p))
    for p in range(P.n):
        for p2 in range(P.n):
            if P.le(p, p2) and not Q.le(phi[p], phi[p2]):
                problems.append(("order", p, p2))
    if h.mode in ("injective", "imm_pred"):
        for p in range(P.n):
            for p2 in range(p + 1, P.n):
                if phi[p] == phi[p2]:
                    problems.append(("injective", p, p2))
    if h.mode == "imm_pred":
        for p in range(P.n):
            for p0 in bits(P.imm_down[p]):
                if not Q.imm_down[phi[p]] >> phi[p0] & 1:
                    problems.append(("imm_pred", p0, p))
    if problems:
        return Check(False, problems, f"{len(problems)} violation(s)")
    return Check(True, [])


def search_hom(
    P: ColoredPoset,
    Q: ColoredPoset,
    mode: str = "plain",
    budget: Optional[int] = None,
    prune: bool = True,
) -> SearchResult:
    """Search for a homomorphism ``P -> Q``; raises :class:`BudgetExceeded`
    when ``budget`` assignments have been tried without a decision.

    ``prune=False`` drops the strength filter (the arc-consistency pass on
    Hasse edges always runs; it only removes values that cannot be extended).
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    injective = mode != "plain"
    order = P.topological_order
    by_color = [0, 0]
    for q in range(Q.n):
        by_color[Q.color[q]] |= 1 << q
    if prune:
        pin, pde = strength_tables(P)
        qin, qde = strength_tables(Q)
    domains = []
    for p in range(P.n):
        d = by_color[P.color[p]]
        if prune:
            d &= _mask_where(Q.n, lambda q: qin[q] >= pin[p] and qde[q] >= pde[p])
        domains.append(d)
    if P.n == 0:
        return SearchResult(Homomorphism(P, Q, (), mode), 0, True)

    # along a Hasse edge a < b the image of b must lie in up(image of a)
    q_up = Q.imm_up if mode == "imm_pred" else Q.up
    q_down = Q.imm_down if mode == "imm_pred" else Q.down
    above = [bits(P.imm_up[p]) for p in range(P.n)]
    below = [bits(P.imm_down[p]) for p in range(P.n)]

    def supported(dom: int, other: int, rel) -> int:
        keep = 0
        for q in bits(dom):
            if rel[q] & other:
                keep |= 1 << q
        return keep

    def propagate(doms: list, queue: list) -> bool:
        pending = set(queue)
        while queue:
            v = queue.pop()
            pending.discard(v)
            for s in above[v]:
                new = supported(doms[s], doms[v], q_down)
                if new != doms[s]:
                    if not new:
                        return False
                    doms[s] = new
                    if s not in pending:
                        pending.add(s)
                        queue.append(s)
            for a in below[v]:
                new = supported(doms[a], doms[v], q_up)
                if new != doms[a]:
                    if not new:
                        return False
                    doms[a] = new
                    if a not in pending:
                        pending.add(a)
                        queue.append(a)
        return True

    nodes = 0
    if any(d == 0 for d in domains) or not propagate(domains, list(range(P.n))):
        return SearchResult(None, 0, True)

    phi = [-1] * P.n

    def dfs(k: int, doms: list) -> bool:
        nonlocal nodes
        if k == len(order):
            return True
        p = order[k]
        for q in bits(doms[p]):
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(nodes)
            child = list(doms)
            child[p] = 1 << q
            touched = [p]
            if injective:
                ok = True
                for r in order[k + 1:]:
                    if child[r] >> q & 1:
                        child[r] &= ~(1 << q)
                        if not child[r]:
                            ok = False
                            break
                        touched.append(r)
                if not ok:
                    continue
            if not propagate(child, touched):
                continue
            phi[p] = q
            if dfs(k + 1, child):
                return True
            phi[p] = -1
        return False

    if not dfs(0, domains):
        return SearchResult(None, nodes, True)
    h = Homomorphism(P, Q, tuple(phi), mode)
    assert verify_hom(h), "search produced an invalid map"
    return SearchResult(h, nodes, True)


def _mask_where(n: int, pred) -> int:
    m = 0
    for q in range(n):
        if pred(q):
            m |= 1 << q
    return m


def find_hom(P, Q, mode="plain", budget=None, prune=True) -> Optional[Homomorphism]:
    return search_hom(P, Q, mode, budget, prune).hom


def brute_force_homs(P: ColoredPoset, Q: ColoredPoset, mode: str = "plain"):
    """Every map ``P -> Q`` (all ``|Q|**|P|`` of them) that passes :func:`verify_hom`."""
    from itertools import product

    for phi in product(range(Q.n), repeat=P.n):
        h = Homomorphism(P, Q, phi, mode)
        if verify_hom(h):
            yield h


# -- comparisons ---------------------------------------------------------

VERDICTS = ("equivalent", "strictly_less", "strictly_greater", "incomparable")


@dataclass(frozen=True)
class ComparisonVerdict:
    verdict: str
    forward: SearchResult
    backward: SearchResult

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "forward": self.forward.to_json(), "backward": self.backward.to_json()}


def classify(forward: bool, backward: bool) -> str:
    if forward and backward:
        return "equivalent"
    if forward:
        return "strictly_less"
    if backward:
        return "strictly_greater"
    return "incomparable"


def compare(P: ColoredPoset, Q: ColoredPoset, budget: Optional[int] = None) -> ComparisonVerdict:
    fw = search_hom(P, Q, "plain", budget)
    bw = search_hom(Q, P, "plain", budget)
    return ComparisonVerdict(classify(fw.found, bw.found), fw, bw)


def _directed(args):
    P, Q, budget = args
    try:
        return search_hom(P, Q, "plain", budget)
    except BudgetExceeded as exc:
        return exc


def matrix(posets: Sequence[ColoredPoset], budget: Optional[int] = None, workers: Optional[int] = None):
    """Pairwise :class:`ComparisonVerdict` table.

    Cells whose search ran out of budget hold the :class:`BudgetExceeded`
    instance instead. ``workers`` defaults to ``$WADGE_POSET_THREADS`` (1).
    """
    k = len(posets)
    if workers is None:
        workers = int(os.environ.get("WADGE_POSET_THREADS", "1") or 1)
    jobs = [(posets[i], posets[j], budget) for i in range(k) for j in range(k)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_directed, jobs))
    else:
        results = [_directed(j) for j in jobs]
    directed = [results[i * k:(i + 1) * k] for i in range(k)]
    table = []
    for i in range(k):
        row = []
        for j in range(k):
            fw, bw = directed[i][j], directed[j][i]
            if isinstance(fw, BudgetExceeded):
                row.append(fw)
            elif isinstance(bw, BudgetExceeded):
                row.append(bw)
            else:
                row.append(ComparisonVerdict(classify(fw.found, bw.found), fw, bw))
        table.append(row)
    return table


_SYMBOL = {"equivalent": "≡", "strictly_less": "<", "strictly_greater": ">", "incomparable": "⊥"}


def matrix_to_json(posets, table) -> dict:
    cells = []
    for row in table:
        cells.append([
            {"verdict": "budget_exceeded", "nodes": c.nodes} if isinstance(c, BudgetExceeded) else c.to_json()
            for c in row
        ])
    return {"posets": [P.name or f"#{i}" for i, P in enumerate(posets)], "cells": cells}


def matrix_to_text(posets, table) -> str:
    names = [P.name or f"#{i}" for i, P in enumerate(posets)]
    w = max(len(s) for s in names)
    lines = [" " * w + " " + " ".join(s.rjust(w) for s in names)]
    for name, row in zip(names, table):
        syms = ["?" if isinstance(c, BudgetExceeded) else _SYMBOL[c.verdict] for c in row]
        lines.append(name.rjust(w) + " " + " ".join(s.rjust(w) for s in syms))
    return "\n".join(lines)


def dumps_hom(h: Homomorphism) -> str:
    return json.dumps(h.to_json())
