"""The reduction game between two colored posets.

Player I picks elements of ``P``, player II answers with elements of ``Q``.
I may stop (pass) once at least one round has been played; the run is then
over and II wins iff the answers preserve colors and the order of the
challenges. A positional strategy for II is a map ``P -> Q``; it wins every
run exactly when it is a homomorphism.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional, Sequence

from .errors import NotFinished, PhaseError, StrategyError
from .hom import Homomorphism, find_hom
from .poset import ColoredPoset

AWAITING_I = "awaiting_I"
AWAITING_II = "awaiting_II"
FINISHED = "finished"


@dataclass(frozen=True)
class GameState:
    P: ColoredPoset
    Q: ColoredPoset
    rounds: tuple = ()
    phase: str = AWAITING_I
    pending: Optional[int] = None
    I_passed: bool = False

    @property
    def finished(self) -> bool:
        return self.phase == FINISHED


def new_game(P: ColoredPoset, Q: ColoredPoset) -> GameState:
    return GameState(P, Q)


def move_I(s: GameState, p: int) -> GameState:
    if s.phase != AWAITING_I:
        raise PhaseError(f"player I cannot move while {s.phase}")
    s.P._check(p)
    return replace(s, phase=AWAITING_II, pending=p)


def move_II(s: GameState, q: int) -> GameState:
    if s.phase != AWAITING_II:
        raise PhaseError(f"player II cannot move while {s.phase}")
    s.Q._check(q)
    return replace(s, rounds=s.rounds + ((s.pending, q),), phase=AWAITING_I, pending=None)


def pass_I(s: GameState) -> GameState:
    if s.phase != AWAITING_I:
        raise PhaseError(f"player I cannot pass while {s.phase}")
    if not s.rounds:
        raise PhaseError("player I can only pass after a completed round")
    return replace(s, phase=FINISHED, I_passed=True)


def first_violation(s: GameState) -> Optional[tuple]:
    """``("color", i)`` or ``("order", i, j)`` for the first bad round(s), else ``None``."""
    P, Q, r = s.P, s.Q, s.rounds
    for i, (p, q) in enumerate(r):
        if P.color[p] != Q.color[q]:
            return ("color", i)
    for i, (p, q) in enumerate(r):
        for j, (p2, q2) in enumerate(r):
            if P.le(p, p2) and not Q.le(q, q2):
                return ("order", i, j)
    return None


def judge(s: GameState) -> str:
    if s.phase != FINISHED:
        raise NotFinished("the run is not over")
    return "II" if first_violation(s) is None else "I"


# -- strategies ------------------------------------------------------------

@dataclass(frozen=True)
class Strategy:
    P: ColoredPoset
    Q: ColoredPoset
    map: tuple

    def __post_init__(self):
        if len(self.map) != self.P.n:
            raise StrategyError(f"strategy covers {len(self.map)} of {self.P.n} elements")
        for q in self.map:
            if not isinstance(q, int) or not 0 <= q < self.Q.n:
                raise StrategyError(f"answer {q!r} is not an element of Q")

    @classmethod
    def from_hom(cls, h: Homomorphism) -> "Strategy":
        return cls(h.source, h.target, tuple(h.map))

    @classmethod
    def from_json(cls, d: dict, P: ColoredPoset, Q: ColoredPoset) -> "Strategy":
        raw = d["map"]
        if isinstance(raw, dict):
            missing = [P.label_of(p) for p in range(P.n) if P.label_of(p) not in raw and str(p) not in raw]
            if missing:
                raise StrategyError(f"strategy is partial, missing {missing}")
            raw = [raw.get(P.label_of(p), raw.get(str(p))) for p in range(P.n)]
        try:
            return cls(P, Q, tuple(Q.index(v) for v in raw))
        except (KeyError, IndexError) as exc:
            raise StrategyError(str(exc)) from None

    def to_json(self) -> dict:
        return {"map": list(self.map)}


def respond(tau: Strategy, p: int) -> int:
    return tau.map[p]


def play_vs_strategy(P: ColoredPoset, Q: ColoredPoset, tau: Strategy, script: Iterable[int]) -> GameState:
    s = new_game(P, Q)
    for p in script:
        s = move_I(s, p)
        s = move_II(s, respond(tau, p))
    return pass_I(s)


def wins_all_scripts(P: ColoredPoset, Q: ColoredPoset, tau: Strategy, max_len: int) -> tuple[bool, Optional[tuple]]:
    """Play ``tau`` against every script of I with 1..``max_len`` moves.

    Two scripts with the same moves in another order or multiplicity reach
    the same verdict, so each set of moves is judged once, through one script
    realizing it. Returns ``(True, None)`` or ``(False, losing_script)``.
    """
    seen = set()

    def dfs(script: tuple, played: frozenset) -> Optional[tuple]:
        if script:
            if judge(play_vs_strategy(P, Q, tau, script)) == "I":
                return script
        if len(script) == max_len:
            return None
        for p in range(P.n):
            nxt = played | {p}
            if nxt in seen:
                continue
            seen.add(nxt)
            bad = dfs(script + (p,), nxt)
            if bad is not None:
                return bad
        return None

    bad = dfs((), frozenset())
    return bad is None, bad


# -- runs as json ------------------------------------------------------------

def run_to_json(s: GameState) -> dict:
    return {
        "P": s.P.name,
        "Q": s.Q.name,
        "rounds": [[p, q] for p, q in s.rounds],
        "passed": s.I_passed,
    }


def replay(P: ColoredPoset, Q: ColoredPoset, d: dict) -> GameState:
    s = new_game(P, Q)
    for p, q in d["rounds"]:
        s = move_II(move_I(s, P.index(p)), Q.index(q))
    return pass_I(s) if d.get("passed") else s


def dumps_run(s: GameState, **kw) -> str:
    return json.dumps(run_to_json(s), **kw)


# -- terminal play -------------------------------------------------------------

_HELP = "commands: move <node>, pass, show, quit"


def machine_strategy(P: ColoredPoset, Q: ColoredPoset) -> Strategy:
    """A homomorphism if there is one, else the first same-colored answer."""
    h = find_hom(P, Q)
    if h is not None:
        return Strategy.from_hom(h)
    answer = []
    for p in range(P.n):
        same = [q for q in range(Q.n) if Q.color[q] == P.color[p]]
        answer.append(same[0] if same else 0)
    return Strategy(P, Q, tuple(answer))


def _show(s: GameState) -> str:
    P, Q = s.P, s.Q
    lines = [f"{P.name or 'P'} vs {Q.name or 'Q'}, {s.phase}"]
    for i, (p, q) in enumerate(s.rounds):
        lines.append(f"  {i}: {P.label_of(p)} -> {Q.label_of(q)}")
    return "\n".join(lines)


def repl(
    P: ColoredPoset,
    Q: ColoredPoset,
    human_role: str = "I",
    strategy: Optional[Strategy] = None,
    script: Optional[Sequence[int]] = None,
    input_fn: Callable[[str], str] = input,
    output: Callable[[str], None] = print,
) -> Optional[GameState]:
    """Interactive game. The machine plays ``strategy`` as II, or ``script``
    (default: every element of ``P`` once) as I. Returns the finished state,
    or ``None`` if the human quits.
    """
    if human_role not in ("I", "II"):
        raise ValueError("human_role must be 'I' or 'II'")
    if human_role == "I" and strategy is None:
        strategy = machine_strategy(P, Q)
    if human_role == "II" and script is None:
        script = list(P.topological_order)
    s = new_game(P, Q)
    output(_HELP)
    moves = iter(script or ())
    while not s.finished:
        if human_role == "II":
            if s.phase == AWAITING_I:
                p = next(moves, None)
                if p is None:
                    s = pass_I(s)
                    break
                s = move_I(s, p)
                output(f"I plays {P.label_of(p)}")
            prompt, pool = "II> ", Q
        else:
            prompt, pool = "I> ", P
        try:
            line = input_fn(prompt)
        except EOFError:
            return None
        cmd, _, arg = line.strip().partition(" ")
        if cmd == "quit":
            output("aborted")
            return None
        if cmd == "show":
            output(_show(s))
            continue
        if cmd == "pass":
            if human_role != "I":
                output("only player I can pass")
                continue
            try:
                s = pass_I(s)
            except PhaseError as exc:
                output(str(exc))
            continue
        if cmd != "move" or not arg:
            output(_HELP)
            continue
        try:
            x = pool.index(arg.strip())
        except (KeyError, IndexError):
            legal = ", ".join(pool.label_of(i) for i in range(pool.n))
            output(f"unknown node {arg.strip()!r}; legal: {legal}")
            continue
        if human_role == "I":
            s = move_I(s, x)
            q = respond(strategy, x)
            s = move_II(s, q)
            output(f"II answers {Q.label_of(q)}")
        else:
            s = move_II(s, x)
    winner = judge(s)
    output(_show(s))
    output(f"winner: {winner}")
    return s
