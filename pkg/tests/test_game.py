import json
import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import posets
from wadgeposet.errors import NotFinished, PhaseError, StrategyError
from wadgeposet.families import fixture, gen_P
from wadgeposet.game import (
    FINISHED,
    Strategy,
    judge,
    move_I,
    move_II,
    new_game,
    pass_I,
    play_vs_strategy,
    repl,
    replay,
    run_to_json,
    wins_all_scripts,
)
from wadgeposet.hom import Homomorphism, find_hom, verify_hom
from wadgeposet.poset import name_inclusion

chain2 = fixture("chain2")


def run(P, Q, rounds):
    s = new_game(P, Q)
    for p, q in rounds:
        s = move_II(move_I(s, p), q)
    return pass_I(s)


def scan(P, Q, rounds):
    ok = all(P.color[p] == Q.color[q] for p, q in rounds)
    ok &= all(Q.le(q, q2) for p, q in rounds for p2, q2 in rounds if P.le(p, p2))
    return "II" if ok else "I"


class TestStateMachine:
    def test_one_round(self):
        P = gen_P(1, 2)
        w = P.index("w:0")
        s = move_II(move_I(new_game(P, P), w), w)
        assert s.rounds == ((w, w),) and s.phase == "awaiting_I"

    def test_II_cannot_start(self):
        with pytest.raises(PhaseError):
            move_II(new_game(chain2, chain2), 0)

    def test_I_cannot_move_twice(self):
        with pytest.raises(PhaseError):
            move_I(move_I(new_game(chain2, chain2), 0), 1)

    def test_pass_needs_a_round(self):
        with pytest.raises(PhaseError):
            pass_I(new_game(chain2, chain2))

    def test_pass_finishes(self):
        s = run(chain2, chain2, [(0, 0)])
        assert s.phase == FINISHED and s.I_passed
        with pytest.raises(PhaseError):
            move_I(s, 0)
        with pytest.raises(PhaseError):
            pass_I(s)

    def test_indices(self):
        with pytest.raises(IndexError):
            move_I(new_game(chain2, chain2), 2)
        with pytest.raises(IndexError):
            move_II(move_I(new_game(chain2, chain2), 0), -1)

    def test_states_are_immutable(self):
        s = new_game(chain2, chain2)
        t = move_I(s, 0)
        assert s.phase == "awaiting_I" and t.phase == "awaiting_II"
        with pytest.raises(AttributeError):
            t.phase = "finished"


class TestJudge:
    def test_identity_run(self):
        assert judge(run(chain2, chain2, [(0, 0), (1, 1)])) == "II"

    def test_color_mismatch(self):
        assert judge(run(chain2, chain2, [(1, 0)])) == "I"

    def test_gen_P_run(self):
        P = gen_P(1, 2)
        ix = P.index
        rounds = [(ix("w:0"), ix("w:1")), (ix("y:0"), ix("y:1")), (ix("w:1"), ix("w:1"))]
        assert judge(run(P, P, rounds)) == scan(P, P, rounds) == "II"
        rounds.append((ix("x:1"), ix("x:0")))
        assert judge(run(P, P, rounds)) == scan(P, P, rounds) == "I"

    def test_not_finished(self):
        with pytest.raises(NotFinished):
            judge(new_game(chain2, chain2))

    @settings(max_examples=100, deadline=None)
    @given(posets(max_n=5), posets(max_n=5), st.data())
    def test_matches_pairwise_scan_and_ignores_order(self, P, Q, data):
        k = data.draw(st.integers(1, 6))
        rounds = [(data.draw(st.integers(0, P.n - 1)), data.draw(st.integers(0, Q.n - 1))) for _ in range(k)]
        verdict = judge(run(P, Q, rounds))
        assert verdict == scan(P, Q, rounds)
        perm = data.draw(st.permutations(rounds))
        assert judge(run(P, Q, perm)) == verdict
        assert judge(run(P, Q, rounds + rounds[:1])) == verdict


class TestStrategies:
    def test_hom_strategy_wins(self):
        tau = Strategy.from_hom(find_hom(chain2, chain2))
        for script in ([0], [1], [0, 1], [1, 0, 1], [1, 1, 0, 0]):
            assert judge(play_vs_strategy(chain2, chain2, tau, script)) == "II"

    def test_constant_bottom_loses(self):
        tau = Strategy(chain2, chain2, (0, 0))
        assert judge(play_vs_strategy(chain2, chain2, tau, [1])) == "I"

    def test_ideal_inclusion_wins_random_scripts(self):
        P, Q = gen_P(2, 4), gen_P(1, 4)
        tau = Strategy(P, Q, tuple(name_inclusion(P, Q)))
        rng = random.Random(7)
        for _ in range(200):
            script = [rng.randrange(P.n) for _ in range(rng.randint(1, 20))]
            assert judge(play_vs_strategy(P, Q, tau, script)) == "II"

    def test_totality(self):
        with pytest.raises(StrategyError):
            Strategy(chain2, chain2, (0,))
        with pytest.raises(StrategyError):
            Strategy(chain2, chain2, (0, 5))
        with pytest.raises(StrategyError):
            Strategy.from_json({"map": {"0": 0}}, chain2, chain2)
        tau = Strategy.from_json({"map": {"0": "0", "1": "1"}}, chain2, chain2)
        assert tau.map == (0, 1)
        assert Strategy.from_json(tau.to_json(), chain2, chain2) == tau

    @settings(max_examples=40, deadline=None)
    @given(posets(max_n=4), posets(max_n=4))
    def test_winning_iff_homomorphism(self, P, Q):
        any_wins = False
        for m in product(range(Q.n), repeat=P.n):
            tau = Strategy(P, Q, m)
            wins, bad = wins_all_scripts(P, Q, tau, 2 * P.n)
            assert wins == bool(verify_hom(Homomorphism(P, Q, m)))
            if not wins:
                assert judge(play_vs_strategy(P, Q, tau, bad)) == "I"
            any_wins |= wins
        assert any_wins == (find_hom(P, Q) is not None)


class TestRuns:
    def test_json_round_trip(self):
        P = gen_P(1, 2)
        tau = Strategy.from_hom(find_hom(P, P))
        s = play_vs_strategy(P, P, tau, [3, 1, 4, 1, 5])
        d = json.loads(json.dumps(run_to_json(s)))
        assert d["P"] == "P_1[2]" and d["passed"] is True
        t = replay(P, P, d)
        assert t.rounds == s.rounds and judge(t) == judge(s)

    def test_unfinished_replay(self):
        d = {"P": "chain2", "Q": "chain2", "rounds": [[0, 0]], "passed": False}
        with pytest.raises(NotFinished):
            judge(replay(chain2, chain2, d))


class TestRepl:
    def session(self, lines, **kw):
        feed = iter(lines)
        out = []
        s = repl(input_fn=lambda prompt: next(feed), output=out.append, **kw)
        return s, out

    def test_human_as_I(self):
        P = gen_P(1, 2)
        s, out = self.session(["move w:0", "move y:1", "pass"], P=P, Q=P)
        assert s.finished and out[-1] == "winner: II"

    def test_unknown_node_reprompts(self):
        s, out = self.session(["move nowhere", "move 1", "pass"], P=chain2, Q=chain2)
        assert any("unknown node 'nowhere'" in line for line in out)
        assert len(s.rounds) == 1

    def test_quit(self):
        s, out = self.session(["move 0", "quit"], P=chain2, Q=chain2)
        assert s is None and out[-1] == "aborted"

    def test_early_pass_and_junk(self):
        s, out = self.session(["pass", "dance", "show", "move 0", "pass"], P=chain2, Q=chain2)
        assert "player I can only pass after a completed round" in out
        assert s.finished

    def test_human_as_II_loses(self):
        s, out = self.session(["move 1", "move 0"], P=chain2, Q=chain2, human_role="II")
        assert out[-1] == "winner: I"

    def test_end_of_input(self):
        def eof(prompt):
            raise EOFError
        assert repl(chain2, chain2, input_fn=eof, output=lambda s: None) is None
