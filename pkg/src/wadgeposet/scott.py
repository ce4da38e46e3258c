"""Colored posets as families of finite sets, and reductions between them.

Every element of a poset with a bottom gets a label: the bottom gets the empty
set, any other element the set of indices of its predecessors (itself and the
bottom included). The family represented by ``P`` is the set of labels of its
color-1 elements. A homomorphism ``P -> Q`` yields an inclusion-monotone map
on finite sets that reduces one family to the other, and any such reduction
gives a homomorphism back.

Finite sets are ``int`` bitmasks. The whole space (the point that is not a
finite set) is the :data:`TOP` sentinel: it contains every finite set and is
a member of no family.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .classes import is_embeddable, one_neighbors
from .errors import (
    BudgetExceeded,
    MonotonicityError,
    NoBottomError,
    NotEmbeddableError,
    NotInCError,
    NotReductionError,
    SupremumError,
    UniverseTooLarge,
)
from .hom import Homomorphism
from .poset import Check, ColoredPoset, bits, mask_of, popcount, supremum


class _Top:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()
Value = Union[int, _Top]


def subset(a: Value, b: Value) -> bool:
    """Inclusion with ``TOP`` above everything."""
    if b is TOP:
        return True
    if a is TOP:
        return False
    return a & ~b == 0


def _set_json(v: Value):
    return "TOP" if v is TOP else bits(v)


def _set_from_json(v) -> Value:
    return TOP if v == "TOP" else mask_of(v)


# -- labels and families -------------------------------------------------

@dataclass(frozen=True, eq=False)
class Labeling:
    poset: ColoredPoset
    table: tuple

    def __getitem__(self, p: int) -> int:
        return self.table[p]

    def to_json(self) -> dict:
        return {"labels": [bits(m) for m in self.table]}


def label(P: ColoredPoset) -> Labeling:
    if P.bottom is None:
        raise NoBottomError(f"{P.name or 'poset'} has no bottom element")
    return Labeling(P, tuple(0 if p == P.bottom else P.down[p] for p in range(P.n)))


@dataclass(frozen=True)
class SetFamily:
    """Finitely many finite subsets of ``0..universe-1``.

    ``basis`` holds the inclusion-maximal members; a finite set lies in the
    downward closure iff it is contained in one of them.
    """

    universe: int
    members: frozenset
    basis: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        full = (1 << self.universe) - 1
        for m in self.members:
            if m is TOP or not isinstance(m, int) or m < 0 or m & ~full:
                raise ValueError(f"member {m!r} is not a subset of 0..{self.universe - 1}")
        if self.basis is None:
            ms = sorted(self.members, key=popcount, reverse=True)
            top: list[int] = []
            for m in ms:
                if not any(m & ~t == 0 for t in top):
                    top.append(m)
            object.__setattr__(self, "basis", tuple(top))

    def __contains__(self, x) -> bool:
        return x is not TOP and x in self.members

    def __len__(self):
        return len(self.members)

    def in_closure(self, F: Value) -> bool:
        if F is TOP:
            return False
        return any(F & ~t == 0 for t in self.basis)

    def closure(self) -> frozenset:
        """Every set contained in some member (can be large)."""
        out = set()
        for t in self.basis:
            sub = t
            while True:
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & t
        return frozenset(out)

    def to_json(self) -> dict:
        return {"universe": self.universe, "members": sorted(bits(m) for m in self.members)}

    @classmethod
    def from_json(cls, d: dict) -> "SetFamily":
        return cls(int(d["universe"]), frozenset(mask_of(m) for m in d["members"]))


def build_A(P: ColoredPoset) -> SetFamily:
    rep = is_embeddable(P)
    if not rep:
        raise NotEmbeddableError(f"{P.name or 'poset'} is not embeddable: {rep.failed_condition}")
    lab = label(P)
    return SetFamily(P.n, frozenset(lab[p] for p in range(P.n) if P.color[p] == 1))


def _label_closure(lab: Labeling, F: int) -> bool:
    return any(F & ~m == 0 for m in lab.table)


def sup_label(P: ColoredPoset, lab: Labeling, F: int) -> int:
    """Supremum of the elements whose label is contained in ``F``."""
    if not _label_closure(lab, F):
        raise NotInCError(f"{bits(F)} is not contained in any label")
    below = [p for p in range(P.n) if lab[p] & ~F == 0]
    s = supremum(P, below)
    if s is None:
        raise SupremumError(f"elements labelled inside {bits(F)} have no supremum")
    in_A = any(lab[p] == F and P.color[p] == 1 for p in range(P.n))
    assert in_A == (P.color[s] == 1 and lab[s] == F)
    return s


# -- monotone maps ---------------------------------------------------------

@dataclass(frozen=True)
class MonotoneMap:
    """A value for every subset of ``0..universe-1``; ``table[F]`` is ``f(F)``."""

    universe: int
    table: tuple

    def __post_init__(self):
        if len(self.table) != 1 << self.universe:
            raise ValueError(f"table has {len(self.table)} entries, expected {1 << self.universe}")

    def __call__(self, F: int) -> Value:
        return self.table[F]

    def monotonicity_violation(self) -> Optional[tuple]:
        """First covering pair ``F < F+{i}`` whose values are not nested."""
        for F in range(len(self.table)):
            for i in range(self.universe):
                if not F >> i & 1 and not subset(self.table[F], self.table[F | 1 << i]):
                    return F, F | 1 << i
        return None

    def to_json(self) -> dict:
        return {
            "universe": self.universe,
            "entries": [{"in": bits(F), "out": _set_json(v)} for F, v in enumerate(self.table)],
        }

    @classmethod
    def from_json(cls, d: dict) -> "MonotoneMap":
        N = int(d["universe"])
        table: list = [None] * (1 << N)
        for e in d["entries"]:
            F = mask_of(e["in"])
            if F >> N:
                raise ValueError(f"entry {e['in']} outside universe {N}")
            table[F] = _set_from_json(e["out"])
        missing = [F for F, v in enumerate(table) if v is None]
        if missing:
            raise ValueError(f"map is not total: no entry for {bits(missing[0])}")
        return cls(N, tuple(table))


def build_reduction(P: ColoredPoset, Q: ColoredPoset, phi: Homomorphism, N: Optional[int] = None) -> MonotoneMap:
    """The reduction of ``build_A(P)`` to ``build_A(Q)`` induced by ``phi``."""
    if N is None:
        N = P.n
    if N != P.n:
        raise ValueError(f"universe must be |P| = {P.n}, got {N}")
    lp, lq = label(P), label(Q)
    table: list = []
    for F in range(1 << N):
        if not _label_closure(lp, F):
            table.append(TOP)
            continue
        s = sup_label(P, lp, F)
        if P.color[s] == 0 or F == lp[s]:
            table.append(lq[phi(s)])
            continue
        minus, plus = one_neighbors(P, s)
        if F & ~lp[s] == 0:
            table.append(lq[phi(minus)])
        else:
            table.append(TOP if plus is None else lq[phi(plus)])
    f = MonotoneMap(N, tuple(table))
    bad = f.monotonicity_violation()
    if bad is not None:
        raise MonotonicityError(f"f({bits(bad[0])}) is not contained in f({bits(bad[1])})")
    return f


def verify_reduction(P: ColoredPoset, Q: ColoredPoset, f: MonotoneMap) -> Check:
    """``F`` in the family of ``P`` iff ``f(F)`` in the family of ``Q``, for every ``F``."""
    if f.universe != P.n:
        return Check(False, None, f"universe {f.universe} differs from |P| = {P.n}")
    lp, lq = label(P), label(Q)
    A_P = {lp[p] for p in range(P.n) if P.color[p] == 1}
    A_Q = {lq[q] for q in range(Q.n) if Q.color[q] == 1}
    for F, v in enumerate(f.table):
        if (F in A_P) != (v is not TOP and v in A_Q):
            return Check(False, F, f"membership differs at {bits(F)}")
    return Check(True)


def extract_hom(P: ColoredPoset, Q: ColoredPoset, f: MonotoneMap) -> Homomorphism:
    if not verify_reduction(P, Q, f):
        raise NotReductionError("f does not reduce the family of P to that of Q")
    lp, lq = label(P), label(Q)
    A_Q = {lq[q] for q in range(Q.n) if Q.color[q] == 1}
    phi = []
    for p in range(P.n):
        X = f(lp[p])
        t = supremum(Q, [q for q in range(Q.n) if subset(lq[q], X)])
        if t is None:
            raise SupremumError(f"no supremum for the elements labelled inside f(l({p}))")
        if (X is not TOP and X in A_Q) or Q.color[t] == 0:
            phi.append(t)
            continue
        minus, plus = one_neighbors(Q, t)
        if subset(lq[t], X):
            phi.append(minus)
        elif plus is None:
            raise SupremumError(f"element {t} is maximal but its label is not inside f(l({p}))")
        else:
            phi.append(plus)
    return Homomorphism(P, Q, tuple(phi), "plain")


def brute_force_reduction_exists(
    P: ColoredPoset,
    Q: ColoredPoset,
    budget: Optional[int] = None,
    unrestricted: bool = False,
) -> Optional[MonotoneMap]:
    """Backtracking search for any monotone ``f`` with ``verify_reduction`` true.

    Values range over the labels of ``Q`` plus ``TOP``, or over every subset
    of ``0..|Q|-1`` plus ``TOP`` with ``unrestricted``. Subsets of the domain
    are filled in by cardinality, each checked against its immediate subsets.
    """
    N = P.n
    lp, lq = label(P), label(Q)
    A_P = {lp[p] for p in range(P.n) if P.color[p] == 1}
    A_Q = {lq[q] for q in range(Q.n) if Q.color[q] == 1}
    if unrestricted:
        values = list(range(1 << Q.n)) + [TOP]
    else:
        values = sorted(set(lq.table), key=lambda m: (popcount(m), m)) + [TOP]
    inside = [v is not TOP and v in A_Q for v in values]
    order = sorted(range(1 << N), key=lambda F: (popcount(F), F))
    table: list = [None] * (1 << N)
    nodes = 0

    def search(k: int) -> bool:
        nonlocal nodes
        if k == len(order):
            return True
        F = order[k]
        want = F in A_P
        lower = [table[F & ~(1 << i)] for i in bits(F)]
        for v, ok in zip(values, inside):
            if ok != want or not all(subset(u, v) for u in lower):
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(nodes)
            table[F] = v
            if search(k + 1):
                return True
        table[F] = None
        return False

    if not search(0):
        return None
    return MonotoneMap(N, tuple(table))


# -- topology on finite families --------------------------------------------

def _membership(A: SetFamily) -> np.ndarray:
    mem = np.zeros(1 << A.universe, dtype=bool)
    if A.members:
        mem[np.fromiter(A.members, dtype=np.int64)] = True
    return mem


def _interval(F: int, x: int):
    free = x & ~F
    sub = free
    while True:
        yield F | sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def _submasks_desc(x: int):
    sub = x
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & x


def approximation_at(A: SetFamily, x: Value, complement: bool = False) -> Optional[int]:
    """Largest finite ``F`` inside ``x`` whose interval ``[F, x]`` lies in ``A``
    (misses ``A`` with ``complement``), or ``None``.

    At ``TOP`` the interval meets ``A`` in the members containing ``F``, and
    ``F`` may use the index ``universe`` (a point outside every member).
    """
    if x is TOP:
        if not complement:
            return None
        for F in _submasks_desc((1 << (A.universe + 1)) - 1):
            if not any(F & ~m == 0 for m in A.members):
                return F
        return None
    want = not complement
    for F in _submasks_desc(x):
        if all((G in A.members) == want for G in _interval(F, x)):
            return F
    return None


def is_approximable(A: SetFamily, check_complement: bool = False) -> Check:
    """Every point of ``A`` (of its complement with ``check_complement``) has a
    finite approximation, see :func:`approximation_at`. Points are the
    subsets of the universe plus ``TOP``; the witness is the first failing
    point.
    """
    U = A.universe
    if U > 24:
        raise UniverseTooLarge(f"universe {U} > 24")
    mem = _membership(A)
    want = not check_complement
    # [x, x] = {x}, so F = x is tried first and settles every finite point
    # on the right side in bulk; only leftovers get the full search
    points = np.flatnonzero(mem == want)
    for x in map(int, points[mem[points] != want]):
        if approximation_at(A, x, check_complement) is None:
            return Check(False, x, f"no finite approximation at {bits(x)}")
    if check_complement and approximation_at(A, TOP, True) is None:
        return Check(False, TOP, "no finite approximation at TOP")
    return Check(True)


RANK_METHODS = ("auto", "lattice", "exhaustive", "members")


def alternation_rank(A: SetFamily, method: str = "lattice") -> int:
    """Length of the longest chain ``F_0 < F_1 < ... < F_r`` of subsets of the
    universe with ``F_0`` in ``A`` and membership flipping at every step.
    ``-1`` when ``A`` is empty.

    ``lattice`` runs a dynamic program over all ``2**U`` subsets (``U <= 20``);
    ``exhaustive`` compares every pair of subsets (``U <= 12``); ``members``
    works on the members alone and has no size limit; ``auto`` picks
    ``lattice`` when it fits and ``members`` otherwise.
    """
    if method not in RANK_METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "lattice" if A.universe <= 20 else "members"
    if not A.members:
        return -1
    if method == "lattice":
        return _rank_lattice(A)
    if method == "exhaustive":
        return _rank_exhaustive(A)
    return _rank_members(A)


def _rank_lattice(A: SetFamily) -> int:
    U = A.universe
    if U > 20:
        raise UniverseTooLarge(f"universe {U} > 20 for the lattice method")
    size = 1 << U
    mem = _membership(A)
    idx = np.arange(size, dtype=np.int64)
    card = np.zeros(size, dtype=np.int64)
    for i in range(U):
        card += (idx >> i) & 1
    # best[b][x]: longest chain starting at some y >= x with membership b
    best = np.full((2, size), -1, dtype=np.int64)
    g = np.zeros(size, dtype=np.int64)
    for k in range(U, -1, -1):
        layer = idx[card == k]
        for b in (0, 1):
            acc = np.full(layer.size, -1, dtype=np.int64)
            for i in range(U):
                lacks = (layer >> i) & 1 == 0
                acc[lacks] = np.maximum(acc[lacks], best[b][layer[lacks] | (1 << i)])
            best[b][layer] = acc
        m = mem[layer].astype(np.int64)
        g[layer] = 1 + best[1 - m, layer]
        best[m, layer] = np.maximum(best[m, layer], g[layer])
    return int(g[mem].max())


def _rank_exhaustive(A: SetFamily) -> int:
    U = A.universe
    if U > 12:
        raise UniverseTooLarge(f"universe {U} > 12 for exhaustive enumeration")
    full = (1 << U) - 1
    memo: dict[int, int] = {}

    def longest(x: int) -> int:
        if x in memo:
            return memo[x]
        here = x in A.members
        r = 0
        rest = full & ~x
        sub = rest
        while sub:
            y = x | sub
            if (y in A.members) != here:
                r = max(r, 1 + longest(y))
            sub = (sub - 1) & rest
        memo[x] = r
        return r

    return max(longest(m) for m in A.members)


def _rank_members(A: SetFamily) -> int:
    U = A.universe
    ms = sorted(A.members, key=popcount, reverse=True)

    def strictly_between(lo: int, hi: int) -> int:
        return sum(1 for m in ms if m != lo and m != hi and lo & ~m == 0 and m & ~hi == 0)

    best: dict[int, int] = {}
    for m in ms:
        above = sum(1 for t in ms if t != m and m & ~t == 0)
        r = 1 if (1 << (U - popcount(m))) - 1 > above else 0
        for t in ms:
            if t != m and m & ~t == 0 and t in best:
                gap = popcount(t) - popcount(m)
                if (1 << gap) - 2 > strictly_between(m, t):
                    r = max(r, 2 + best[t])
        best[m] = r
    return max(best.values())


# -- json ------------------------------------------------------------------

def dumps_family(A: SetFamily, **kw) -> str:
    return json.dumps(A.to_json(), **kw)


def dumps_map(f: MonotoneMap, **kw) -> str:
    return json.dumps(f.to_json(), **kw)


def family_from_iterable(universe: int, members: Iterable[Iterable[int]]) -> SetFamily:
    return SetFamily(universe, frozenset(mask_of(m) for m in members))
