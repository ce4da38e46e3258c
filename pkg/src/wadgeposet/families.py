"""Finite truncations of the two infinite families, small named fixtures, and
an enumerator of small posets.

Truncations are generated by the branches ``0..M-1`` and are downward closed:
``y_{M-1}`` sits above the first node column of branch ``M``, so that column
is included as a stub. Node names are stable across truncation sizes and
parameters (``bot``, ``w:3``, ``x:3``, ``y:3``, ``z:3:2``; the second family
uses ``x:3:1`` for level 1 of the column below ``y:3``), which is what the
name-matched ideal inclusions rely on.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations, product

from .errors import ParamError, UnknownFixture
from .poset import ColoredPoset, bits


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    branches: int

    def __post_init__(self):
        if self.family not in ("P", "Q"):
            raise ParamError(f"unknown family {self.family!r}")
        if self.n < 1 or self.branches < 1:
            raise ParamError("n and branches must both be >= 1")

    def build(self) -> ColoredPoset:
        return gen_P(self.n, self.branches) if self.family == "P" else gen_Q(self.n, self.branches)


class _Builder:
    def __init__(self):
        self.names: list[str] = []
        self.colors: list[int] = []
        self.index: dict[str, int] = {}
        self.pairs: list[tuple[int, int]] = []

    def node(self, name: str, color: int) -> int:
        self.index[name] = len(self.names)
        self.names.append(name)
        self.colors.append(color)
        return self.index[name]

    def edge(self, a: str, b: str) -> None:
        self.pairs.append((self.index[a], self.index[b]))

    def build(self, title: str) -> ColoredPoset:
        return ColoredPoset.from_relation(
            len(self.names), self.pairs, self.colors, bottom=0, names=self.names, name=title
        )


def _check_params(n: int, M: int) -> None:
    if not (isinstance(n, int) and isinstance(M, int)) or n < 1 or M < 1:
        raise ParamError(f"need integers n >= 1 and M >= 1, got n={n!r}, M={M!r}")


def tower_height(n: int, m: int) -> int:
    """Number of z-nodes on branch ``m``: levels ``0..2*floor(m/n)``."""
    return 2 * (m // n) + 1


def _z_tower(b: _Builder, n: int, m: int) -> None:
    for k in range(tower_height(n, m)):
        b.node(f"z:{m}:{k}", 1 if k % 2 == 0 else 0)
    b.edge(f"y:{m}", f"z:{m}:0")
    for k in range(tower_height(n, m) - 1):
        b.edge(f"z:{m}:{k}", f"z:{m}:{k + 1}")


def gen_P(n: int, M: int) -> ColoredPoset:
    """Branches ``0..M-1`` of the first family plus the stub ``w:M < x:M``."""
    _check_params(n, M)
    b = _Builder()
    b.node("bot", 0)
    for m in range(M + 1):
        b.node(f"w:{m}", 1)
        b.node(f"x:{m}", 0)
        b.edge("bot", f"w:{m}")
        b.edge(f"w:{m}", f"x:{m}")
        if m == M:
            break
    for m in range(M):
        b.node(f"y:{m}", 0)
        b.edge(f"x:{m}", f"y:{m}")
        b.edge(f"x:{m + 1}", f"y:{m}")
        _z_tower(b, n, m)
    return b.build(f"P_{n}[{M}]")


def gen_Q(n: int, M: int) -> ColoredPoset:
    """Branches ``0..M-1`` of the second family plus the stub column ``x:M:*``."""
    _check_params(n, M)
    b = _Builder()
    b.node("bot", 0)
    for m in range(M + 1):
        for k in range(2 * n):
            b.node(f"x:{m}:{k}", 1 if k % 2 == 0 else 0)
            b.edge("bot" if k == 0 else f"x:{m}:{k - 1}", f"x:{m}:{k}")
    top = 2 * n - 1
    for m in range(M):
        b.node(f"y:{m}", 0)
        b.edge(f"x:{m}:{top}", f"y:{m}")
        b.edge(f"x:{m + 1}:{top}", f"y:{m}")
        _z_tower(b, n, m)
    return b.build(f"Q_{n}[{M}]")


# -- fixtures -----------------------------------------------------------

def _chain(colors, title):
    k = len(colors)
    return ColoredPoset.from_relation(k, [(i, i + 1) for i in range(k - 1)], colors, name=title)


def _catalog():
    cat = {
        "singleton": lambda: _chain([0], "singleton"),
        "chain2": lambda: _chain([0, 1], "chain2"),
        "chain3": lambda: _chain([0, 1, 0], "chain3"),
        "chain4": lambda: _chain([0, 1, 0, 1], "chain4"),
        # forbidden patterns
        "vee": lambda: ColoredPoset.from_relation(3, [(0, 1), (0, 2)], [1, 0, 0], names=["r", "u", "v"], name="vee"),
        "wedge": lambda: ColoredPoset.from_relation(3, [(0, 2), (1, 2)], [0, 0, 1], names=["u", "v", "t"], name="wedge"),
        "bar": lambda: ColoredPoset.from_relation(2, [(0, 1)], [1, 1], names=["a", "b"], name="bar"),
        # small hosts containing each pattern
        "vee_host": lambda: ColoredPoset.from_relation(
            6, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5)], [0, 1, 0, 0, 1, 1],
            names=["bot", "r", "u", "v", "a", "b"], name="vee_host",
        ),
        "wedge_host": lambda: ColoredPoset.from_relation(
            4, [(0, 1), (0, 2), (1, 3), (2, 3)], [0, 0, 0, 1], names=["bot", "u", "v", "t"], name="wedge_host"
        ),
        "bar_host": lambda: ColoredPoset.from_relation(
            3, [(0, 1), (1, 2)], [0, 1, 1], names=["bot", "a", "b"], name="bar_host"
        ),
        # embeddable, two branches of different strength
        "fork": lambda: ColoredPoset.from_relation(
            5, [(0, 1), (1, 2), (2, 3), (0, 4)], [0, 1, 0, 1, 1], names=["bot", "a", "c", "d", "e"], name="fork"
        ),
        # uncolored shapes
        "p4": lambda: ColoredPoset.from_relation(4, [(0, 2), (0, 3), (1, 2), (1, 3)], [0] * 4, name="p4"),
        "p4_bot": lambda: ColoredPoset.from_relation(
            5, [(4, 0), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3)], [0] * 5, name="p4_bot"
        ),
        "antichain2": lambda: ColoredPoset.from_relation(2, [], [0, 0], name="antichain2"),
    }
    for k in range(1, 7):
        cat[f"nbot{k}"] = (lambda k=k: ColoredPoset.from_relation(
            k + 1, [(0, i) for i in range(1, k + 1)], [0] * (k + 1), name=f"nbot{k}"))
        cat[f"ntop{k}"] = (lambda k=k: ColoredPoset.from_relation(
            k + 1, [(i, 0) for i in range(1, k + 1)], [0] * (k + 1), name=f"ntop{k}"))
        cat[f"omega{k}"] = (lambda k=k: ColoredPoset.from_relation(
            k, [(i, i + 1) for i in range(k - 1)], [0] * k, name=f"omega{k}"))
    return cat


_FIXTURES = _catalog()
_CACHE: dict[str, ColoredPoset] = {}


def fixture_names() -> list[str]:
    return sorted(_FIXTURES)


def fixture(name: str) -> ColoredPoset:
    if name not in _FIXTURES:
        raise UnknownFixture(name)
    if name not in _CACHE:
        _CACHE[name] = _FIXTURES[name]()
    return _CACHE[name]


# -- enumeration of small posets ----------------------------------------

def all_partial_orders(n: int):
    """Every partial order on ``0..n-1`` as a tuple of up-set bitmasks."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    for choice in product((0, 1), repeat=len(pairs)):
        up = [1 << i for i in range(n)]
        for on, (i, j) in zip(choice, pairs):
            if on:
                up[i] |= 1 << j
        ok = True
        for i in range(n):
            for j in bits(up[i]):
                if up[j] & ~up[i] or (i != j and up[j] >> i & 1):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            key = tuple(up)
            if key not in seen:
                seen.add(key)
                yield key


def canonical_form(P: ColoredPoset) -> tuple:
    best = None
    for perm in permutations(range(P.n)):
        up = [0] * P.n
        col = [0] * P.n
        for i in range(P.n):
            m = 0
            for j in bits(P.up[i]):
                m |= 1 << perm[j]
            up[perm[i]] = m
            col[perm[i]] = P.color[i]
        key = (tuple(up), tuple(col))
        if best is None or key < best:
            best = key
    return (P.n,) + best


def small_colored_posets(max_n: int, predicate=None):
    """One representative per isomorphism class of 2-colored posets with
    ``1..max_n`` elements, optionally filtered by ``predicate``."""
    out = []
    for n in range(1, max_n + 1):
        seen = set()
        for up in all_partial_orders(n):
            pairs = [(i, j) for i in range(n) for j in bits(up[i]) if i != j]
            for colors in product((0, 1), repeat=n):
                P = ColoredPoset.from_relation(n, pairs, colors)
                key = canonical_form(P)
                if key in seen:
                    continue
                seen.add(key)
                if predicate is None or predicate(P):
                    out.append(P)
    return [replace(P, name=f"c{P.n}_{i}") for i, P in enumerate(out)]


def embeddable_corpus(max_n: int = 4) -> list[ColoredPoset]:
    from .classes import is_embeddable

    return small_colored_posets(max_n, lambda P: is_embeddable(P).holds)
