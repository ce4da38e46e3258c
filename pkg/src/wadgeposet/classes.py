"""Poset classes (shrubs, embeddable, finite branching) and node strengths."""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from typing import Optional

from .errors import NotEmbeddableError
from .families import fixture
from .poset import ColoredPoset, Check, bits, is_bounded_complete

FORBIDDEN_PATTERNS = ("vee", "wedge", "bar")


@dataclass(frozen=True)
class PatternMatch:
    pattern: ColoredPoset
    target: ColoredPoset
    map: tuple


@dataclass
class ClassReport:
    cls: str
    holds: bool
    failed_condition: Optional[str] = None
    witness: object = None
    vacuous: tuple = field(default=())

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        d = {"class": self.cls, "holds": self.holds}
        if self.failed_condition is not None:
            d["failed_condition"] = self.failed_condition
        if self.witness is not None:
            w = self.witness
            d["witness"] = list(w) if isinstance(w, (tuple, list)) else [w]
        if self.vacuous:
            d["vacuous"] = list(self.vacuous)
        return d


def verify_pattern_match(m: PatternMatch) -> Check:
    """Independent re-check of injectivity, colors, order and covering pairs."""
    pat, P, phi = m.pattern, m.target, list(m.map)
    if len(phi) != pat.n or len(set(phi)) != pat.n:
        return Check(False, None, "not injective")
    for a in range(pat.n):
        if pat.color[a] != P.color[phi[a]]:
            return Check(False, a, "color")
        for b in range(pat.n):
            if pat.le(a, b) and not P.le(phi[a], phi[b]):
                return Check(False, (a, b), "order")
            if pat.imm_down[b] >> a & 1 and not P.imm_down[phi[b]] >> phi[a] & 1:
                return Check(False, (a, b), "immediate predecessor")
    return Check(True)


def pattern_embeds(pat: ColoredPoset, P: ColoredPoset) -> Optional[PatternMatch]:
    """First injective, color-, order- and covering-preserving copy of ``pat`` in ``P``.

    Covering pairs of the pattern must land on covering pairs of ``P``.
    Candidates are tried in index order, so the result is deterministic.
    """
    order = pat.topological_order
    phi = [-1] * pat.n
    used = 0

    def consistent(a: int, q: int) -> bool:
        for b in range(pat.n):
            t = phi[b]
            if t < 0:
                continue
            if pat.le(b, a) and not P.le(t, q):
                return False
            if pat.le(a, b) and not P.le(q, t):
                return False
            if pat.imm_down[a] >> b & 1 and not P.imm_down[q] >> t & 1:
                return False
            if pat.imm_down[b] >> a & 1 and not P.imm_down[t] >> q & 1:
                return False
        return True

    def search(k: int) -> bool:
        nonlocal used
        if k == len(order):
            return True
        a = order[k]
        for q in range(P.n):
            if used >> q & 1 or P.color[q] != pat.color[a] or not consistent(a, q):
                continue
            phi[a] = q
            used |= 1 << q
            if search(k + 1):
                return True
            used &= ~(1 << q)
            phi[a] = -1
        return False

    if pat.n > P.n or not search(0):
        return None
    match = PatternMatch(pat, P, tuple(phi))
    assert verify_pattern_match(match)
    return match


_SHRUB_VACUOUS = ("no infinite increasing chain (finite input)", "finite predecessor sets (finite input)")


def is_shrub(P: ColoredPoset) -> ClassReport:
    if P.bottom is None:
        return ClassReport("shrub", False, "no bottom element", None, _SHRUB_VACUOUS)
    bc = is_bounded_complete(P)
    if not bc:
        return ClassReport("shrub", False, "not bounded complete", bc.witness, _SHRUB_VACUOUS)
    return ClassReport("shrub", True, vacuous=_SHRUB_VACUOUS)


def is_embeddable(P: ColoredPoset, _cls: str = "embeddable") -> ClassReport:
    shrub = is_shrub(P)
    vac = shrub.vacuous
    if not shrub:
        return ClassReport(_cls, False, shrub.failed_condition, shrub.witness, vac)
    if P.color[P.bottom] != 0:
        return ClassReport(_cls, False, "bottom colored 1", P.bottom, vac)
    for k in P.maximal:
        if P.color[k] != 1:
            return ClassReport(_cls, False, "maximal element colored 0", k, vac)
    for name in FORBIDDEN_PATTERNS:
        m = pattern_embeds(fixture(name), P)
        if m is not None:
            return ClassReport(_cls, False, f"pattern {name} embeds", m.map, vac)
    return ClassReport(_cls, True, vacuous=vac)


def is_finite_branching(P: ColoredPoset) -> ClassReport:
    rep = is_embeddable(P, _cls="finite_branching")
    rep.vacuous = rep.vacuous + ("finitely many successors (finite input)",)
    return rep


def one_neighbors(P: ColoredPoset, p: int) -> tuple[int, Optional[int]]:
    """The unique immediate predecessor and successor of a color-1 element."""
    P._check(p)
    if P.color[p] != 1:
        raise NotEmbeddableError(f"element {p} has color 0")
    below = bits(P.imm_down[p])
    above = bits(P.imm_up[p])
    if len(below) != 1 or len(above) > 1:
        raise NotEmbeddableError(
            f"color-1 element {p} has {len(below)} immediate predecessors and {len(above)} immediate successors"
        )
    if any(P.color[q] != 0 for q in below + above):
        raise NotEmbeddableError(f"color-1 element {p} has a color-1 neighbour")
    return below[0], (above[0] if above else None)


_STRENGTHS: "weakref.WeakKeyDictionary[ColoredPoset, tuple]" = weakref.WeakKeyDictionary()


def strength_tables(P: ColoredPoset) -> tuple[tuple, tuple]:
    """``(incr, decr)``: lengths of the longest color-alternating strict chains
    going up, resp. down, from every element."""
    hit = _STRENGTHS.get(P)
    if hit is not None:
        return hit
    same = [0, 0]
    for p in range(P.n):
        same[P.color[p]] |= 1 << p
    incr = [1] * P.n
    decr = [1] * P.n
    order = P.topological_order
    for p in reversed(order):
        other = P.up[p] & same[1 - P.color[p]]
        if other:
            incr[p] = 1 + max(incr[q] for q in bits(other))
    for p in order:
        other = P.down[p] & same[1 - P.color[p]]
        if other:
            decr[p] = 1 + max(decr[q] for q in bits(other))
    out = (tuple(incr), tuple(decr))
    _STRENGTHS[P] = out
    return out


def str_incr(P: ColoredPoset, p: int) -> int:
    P._check(p)
    return strength_tables(P)[0][p]


def str_decr(P: ColoredPoset, p: int) -> int:
    P._check(p)
    return strength_tables(P)[1][p]
