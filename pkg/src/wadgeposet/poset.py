"""Finite 2-colored posets.

Elements are the integers ``0..n-1``. The order is stored as bitmasks: bit
``j`` of ``up[i]`` is set iff ``i <= j``, and bit ``i`` of ``down[j]`` is set
iff ``i <= j``. The dense boolean matrix is available as :attr:`ColoredPoset.leq`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import jsonschema
import numpy as np

from .errors import ArityError, CycleError, InvalidPosetError, NotEmbeddingError


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Check(tuple):
    """A boolean answer with an optional witness; truthiness follows ``holds``."""

    __slots__ = ()

    def __new__(cls, holds: bool, witness=None, reason: Optional[str] = None):
        return super().__new__(cls, (bool(holds), witness, reason))

    holds = property(lambda self: self[0])
    witness = property(lambda self: self[1])
    reason = property(lambda self: self[2])

    def __bool__(self):
        return self[0]

    def __repr__(self):
        return f"Check(holds={self.holds}, witness={self.witness!r}, reason={self.reason!r})"


@dataclass(frozen=True, eq=False)
class ColoredPoset:
    n: int
    up: tuple
    down: tuple
    color: tuple
    bottom: Optional[int] = None
    names: tuple = field(default=())
    name: Optional[str] = None

    # -- construction ---------------------------------------------------
    @classmethod
    def from_relation(
        cls,
        n: int,
        pairs: Iterable[tuple[int, int]],
        colors: Sequence[int],
        bottom: Optional[int] = None,
        names: Optional[Sequence[str]] = None,
        name: Optional[str] = None,
    ) -> "ColoredPoset":
        if n < 0:
            raise ArityError("element count must be non-negative")
        colors = tuple(int(c) for c in colors)
        if len(colors) != n:
            raise ArityError(f"expected {n} colors, got {len(colors)}")
        if any(c not in (0, 1) for c in colors):
            raise ArityError("colors must be 0 or 1")
        if names is not None:
            names = tuple(str(s) for s in names)
            if len(names) != n:
                raise ArityError(f"expected {n} names, got {len(names)}")
            if len(set(names)) != n:
                raise InvalidPosetError("element names must be distinct")
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ArityError(f"pair ({i}, {j}) out of range for n={n}")
            up[i] |= 1 << j
        up = transitive_closure(up)
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        for i in range(n):
            both = up[i] & down[i] & ~(1 << i)
            if both:
                j = bits(both)[0]
                raise CycleError(f"elements {i} and {j} are mutually related")
        full = (1 << n) - 1
        if bottom is None:
            minima = [i for i in range(n) if up[i] == full]
            bottom = minima[0] if minima else None
        else:
            if not 0 <= bottom < n:
                raise ArityError(f"bottom {bottom} out of range")
            if up[bottom] != full:
                raise InvalidPosetError(f"declared bottom {bottom} is not below every element")
        return cls(n, tuple(up), tuple(down), colors, bottom, names or (), name)

    # -- basic queries --------------------------------------------------
    def le(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and bool(self.up[i] >> j & 1)

    def _check(self, p: int) -> None:
        if not 0 <= p < self.n:
            raise IndexError(f"element {p} out of range for poset of size {self.n}")

    def label_of(self, p: int) -> str:
        return self.names[p] if self.names else str(p)

    def index(self, key) -> int:
        """Resolve an element given by index or display name."""
        if isinstance(key, (int, np.integer)) and not isinstance(key, bool):
            self._check(int(key))
            return int(key)
        key = str(key)
        if key in self._name_index:
            return self._name_index[key]
        if key.lstrip("-").isdigit():
            return self.index(int(key))
        raise KeyError(f"no element named {key!r}")

    @cached_property
    def _name_index(self) -> dict:
        return {s: i for i, s in enumerate(self.names)}

    @cached_property
    def leq(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for i in range(self.n):
            m[i, bits(self.up[i])] = True
        m.setflags(write=False)
        return m

    @cached_property
    def imm_down(self) -> tuple:
        """Bitmask of immediate predecessors per element."""
        out = []
        for p in range(self.n):
            strict = self.down[p] & ~(1 << p)
            covered = 0
            for q in bits(strict):
                covered |= self.down[q] & ~(1 << q)
            out.append(strict & ~covered)
        return tuple(out)

    @cached_property
    def imm_up(self) -> tuple:
        out = [0] * self.n
        for p in range(self.n):
            for q in bits(self.imm_down[p]):
                out[q] |= 1 << p
        return tuple(out)

    @cached_property
    def maximal(self) -> tuple:
        return tuple(p for p in range(self.n) if self.up[p] == 1 << p)

    @cached_property
    def topological_order(self) -> tuple:
        """A linear extension: ascending size of the down-set, ties by index."""
        return tuple(sorted(range(self.n), key=lambda p: (popcount(self.down[p]), p)))

    def hasse_edges(self) -> list[tuple[int, int]]:
        return [(q, p) for p in range(self.n) for q in bits(self.imm_down[p])]

    def relabel(self, perm: Sequence[int]) -> "ColoredPoset":
        """The isomorphic copy where old element ``i`` becomes ``perm[i]``."""
        pairs = [(perm[i], perm[j]) for i in range(self.n) for j in bits(self.up[i])]
        colors = [0] * self.n
        names = [""] * self.n
        for i in range(self.n):
            colors[perm[i]] = self.color[i]
            names[perm[i]] = self.label_of(i)
        return ColoredPoset.from_relation(self.n, pairs, colors, names=names, name=self.name)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<ColoredPoset{tag} n={self.n} bottom={self.bottom}>"

    def __eq__(self, other):
        if not isinstance(other, ColoredPoset):
            return NotImplemented
        return (self.n, self.up, self.color, self.bottom) == (other.n, other.up, other.color, other.bottom)

    def __hash__(self):
        return hash((self.n, self.up, self.color, self.bottom))


def transitive_closure(up: Sequence[int]) -> list[int]:
    """Warshall's algorithm on bitmask rows (reflexivity is kept as given)."""
    up = list(up)
    for k in range(len(up)):
        row_k = up[k]
        bit = 1 << k
        for i in range(len(up)):
            if up[i] & bit:
                up[i] |= row_k
    return up


def from_relation(n, pairs, colors, bottom=None, names=None, name=None) -> ColoredPoset:
    return ColoredPoset.from_relation(n, pairs, colors, bottom=bottom, names=names, name=name)


def predecessors(P: ColoredPoset, p: int) -> frozenset:
    P._check(p)
    return frozenset(bits(P.down[p]))


def successors(P: ColoredPoset, p: int) -> frozenset:
    P._check(p)
    return frozenset(bits(P.up[p]))


def immediate_predecessors(P: ColoredPoset, p: int) -> frozenset:
    P._check(p)
    return frozenset(bits(P.imm_down[p]))


def immediate_successors(P: ColoredPoset, p: int) -> frozenset:
    P._check(p)
    return frozenset(bits(P.imm_up[p]))


def upper_bounds_mask(P: ColoredPoset, S: Iterable[int]) -> int:
    ub = (1 << P.n) - 1
    for s in S:
        P._check(s)
        ub &= P.up[s]
    return ub


def least_of(P: ColoredPoset, mask: int) -> Optional[int]:
    """The least element of the subset ``mask``, if it has one."""
    for u in bits(mask):
        if P.up[u] & mask == mask:
            return u
    return None


def supremum(P: ColoredPoset, S: Iterable[int]) -> Optional[int]:
    """Least upper bound of ``S``; ``None`` when unbounded or ambiguous.

    The empty set has the bottom as supremum when there is one.
    """
    S = list(S)
    if not S:
        return P.bottom
    return least_of(P, upper_bounds_mask(P, S))


def is_bounded_complete(P: ColoredPoset, exhaustive: bool = False) -> Check:
    """Every bounded subset has a supremum.

    The default checks pairs only, which suffices for finite posets by
    induction on subset size; ``exhaustive=True`` scans every non-empty subset.
    The empty set is left to the bottom-existence test of :func:`is_shrub`.
    """
    if exhaustive:
        for mask in range(1, 1 << P.n):
            ub = upper_bounds_mask(P, bits(mask))
            if ub and least_of(P, ub) is None:
                return Check(False, tuple(bits(mask)), "bounded subset without supremum")
        return Check(True)
    for a, b in combinations(range(P.n), 2):
        ub = P.up[a] & P.up[b]
        if ub and least_of(P, ub) is None:
            return Check(False, (a, b), "bounded pair without supremum")
    return Check(True)


def verify_embedding(P: ColoredPoset, Q: ColoredPoset, inj: Sequence[int]) -> Check:
    """Injective, order-preserving and color-preserving map from ``P`` to ``Q``."""
    inj = list(inj)
    if len(inj) != P.n:
        return Check(False, None, f"map has {len(inj)} entries for {P.n} elements")
    if any(not 0 <= q < Q.n for q in inj):
        return Check(False, None, "map value out of range")
    if len(set(inj)) != len(inj):
        return Check(False, None, "map is not injective")
    for p in range(P.n):
        if P.color[p] != Q.color[inj[p]]:
            return Check(False, p, "color not preserved")
        for p2 in bits(P.up[p]):
            if not Q.le(inj[p], inj[p2]):
                return Check(False, (p, p2), "order not preserved")
    return Check(True)


def is_ideal(P: ColoredPoset, Q: ColoredPoset, inj: Sequence[int]) -> bool:
    """Whether the image of ``P`` under ``inj`` is downward closed in ``Q``."""
    ok = verify_embedding(P, Q, inj)
    if not ok:
        raise NotEmbeddingError(ok.reason)
    image = mask_of(inj)
    return all(Q.down[q] & ~image == 0 for q in inj)


def name_inclusion(P: ColoredPoset, Q: ColoredPoset) -> list[int]:
    """The map sending each element of ``P`` to the element of ``Q`` with the same name."""
    try:
        return [Q.index(P.label_of(p)) for p in range(P.n)]
    except KeyError as exc:
        raise NotEmbeddingError(f"name missing from target: {exc}") from None


# -- serialization ------------------------------------------------------

POSET_SCHEMA = {
    "type": "object",
    "properties": {
        "name": {"type": "string"},
        "elements": {
            "oneOf": [
                {"type": "integer", "minimum": 0},
                {"type": "array", "items": {"type": "string"}},
            ]
        },
        "order": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {"type": ["integer", "string"]},
            },
        },
        "colors": {"type": "array", "items": {"enum": [0, 1]}},
        "bottom": {"type": ["integer", "string"]},
    },
    "required": ["elements", "order", "colors"],
}


def poset_to_dict(P: ColoredPoset, covers_only: bool = True) -> dict:
    edges = P.hasse_edges() if covers_only else [
        (i, j) for i in range(P.n) for j in bits(P.up[i]) if i != j
    ]
    d = {}
    if P.name:
        d["name"] = P.name
    d["elements"] = list(P.names) if P.names else P.n
    d["order"] = [[i, j] for i, j in edges]
    d["colors"] = list(P.color)
    if P.bottom is not None:
        d["bottom"] = P.bottom
    return d


def poset_from_dict(d: dict) -> ColoredPoset:
    try:
        jsonschema.validate(d, POSET_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InvalidPosetError(f"poset JSON: {exc.message}") from None
    elements = d["elements"]
    if isinstance(elements, int):
        n, names = elements, None
    else:
        n, names = len(elements), elements
    lookup = {s: i for i, s in enumerate(names or ())}

    def resolve(v):
        if isinstance(v, int):
            return v
        if v in lookup:
            return lookup[v]
        raise ArityError(f"unknown element {v!r}")

    pairs = [(resolve(a), resolve(b)) for a, b in d["order"]]
    bottom = resolve(d["bottom"]) if "bottom" in d else None
    return ColoredPoset.from_relation(n, pairs, d["colors"], bottom=bottom, names=names, name=d.get("name"))


def dumps(P: ColoredPoset, **kw) -> str:
    return json.dumps(poset_to_dict(P), **kw)


def loads(text: str) -> ColoredPoset:
    return poset_from_dict(json.loads(text))


def load(path) -> ColoredPoset:
    with open(path) as fh:
        return poset_from_dict(json.load(fh))


def save(P: ColoredPoset, path) -> None:
    with open(path, "w") as fh:
        json.dump(poset_to_dict(P), fh, indent=1)
        fh.write("\n")


def to_dot(P: ColoredPoset) -> str:
    """Graphviz source of the Hasse diagram; color-1 elements are filled."""
    title = json.dumps(P.name or "P")
    lines = [f"digraph {title} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for p in range(P.n):
        attrs = [f"label={json.dumps(P.label_of(p))}"]
        if P.color[p]:
            attrs.append('style=filled, fillcolor="gray"')
        lines.append(f"  n{p} [{', '.join(attrs)}];")
    for q, p in P.hasse_edges():
        lines.append(f"  n{q} -> n{p};")
    lines.append("}")
    return "\n".join(lines) + "\n"
