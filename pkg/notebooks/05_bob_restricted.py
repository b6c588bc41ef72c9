"""
Bob limited to classical moves
==============================

Alice keeps general SU(2) operators while Bob can only mix the identity
and the bit flip.  Some of Alice's operators make the outcome independent
of Bob's mixing probability.
"""

# %%
import math


from qgame.equilibrium import SearchConfig, find_nash, verify_ne
from qgame.game import welfare
from qgame.protocol import expected_payoffs, mes, play_round_mixed_bob
from qgame.strategies import StrategyParams, StrategySpace, su2

m = welfare()
state = mes(0, 0)
ps = (0.0, 0.25, 0.5, 0.75, 1.0)


def pair(x, nd=4):
    return tuple(round(float(v), nd) + 0.0 for v in x)

# %%
for name, angles in {
    "(pi/2, pi/4, pi/4)": (math.pi / 2, math.pi / 4, math.pi / 4),
    "(pi/2, 0, pi/2)": (math.pi / 2, 0, math.pi / 2),
    "(pi/2, 0, pi/4)": (math.pi / 2, 0, math.pi / 4),
}.items():
    pays = [pair(expected_payoffs(play_round_mixed_bob(state, su2(*angles), p), m)) for p in ps]
    print(name, pays)

# %%
rep = find_nash(StrategySpace.SU2_ONE, StrategySpace.CLASSICAL_MIXED, state, m, SearchConfig())
for e in rep.equilibria:
    print(e.params_a.describe(), "|", e.params_b.describe(), pair(e.payoffs, 6))

# %%
# The same profile is still an equilibrium once Alice may also add a phase
sa = StrategyParams(StrategySpace.SU2_TWO, theta=math.pi / 2)
sb = StrategyParams(StrategySpace.CLASSICAL_MIXED, p=0.2)
print("deviation gaps:", verify_ne((sa, sb), state, m))
rep = find_nash(StrategySpace.SU2_TWO, StrategySpace.CLASSICAL_MIXED, state, m, SearchConfig())
print(len(rep.equilibria), "NE:", [(e.params_a.describe(), e.params_b.describe()) for e in rep.equilibria])
