"""
The reduction game
==================

Player I names points of P, player II answers with points of Q. II wins a
finished run when the answers respect colors and order. A homomorphism is a
strategy that never loses.
"""

import random

from wadgeposet import Strategy, find_hom, gen_P, judge, play_vs_strategy, wins_all_scripts
from wadgeposet.families import fixture

P, Q = gen_P(2, 4), gen_P(1, 4)
tau = Strategy.from_hom(find_hom(P, Q))

rng = random.Random(0)
script = [rng.randrange(P.n) for _ in range(8)]
run = play_vs_strategy(P, Q, tau, script)
for p, q in run.rounds:
    print(f"  I plays {P.names[p]:8s} II answers {Q.names[q]}")
print("winner:", judge(run))

# a constant strategy on the two-element chain is caught at once
c = fixture("chain2")
lazy = Strategy(c, c, (0, 0))
ok, script = wins_all_scripts(c, c, lazy, 4)
print("constant strategy wins everything:", ok, " losing script:", script)
