"""
Classical correlations instead of entanglement
==============================================

Dephasing the entangled state removes its off-diagonal terms, leaving a
classically correlated source.  A fully mixed source makes every payoff
constant.
"""

# %%
import math

import numpy as np

from qgame.equilibrium import SearchConfig, find_nash
from qgame.game import PayoffMatrix2x2, mixed_nash_2x2, welfare
from qgame.protocol import dephased, expected_payoffs, full_rank, play_round
from qgame.strategies import FLIP, SIGMA0, StrategySpace, su2

m = welfare()
cfg = SearchConfig()


def pair(x, nd=4):
    return tuple(round(float(v), nd) + 0.0 for v in x)

# %%
print(np.real(dephased(0, 0).rho).round(3))
print(np.real(dephased(0, 1).rho).round(3))

# %%
# Classical moves on the correlated |00> source
ops = (SIGMA0, FLIP)
table = np.array([[expected_payoffs(play_round(dephased(0, 0), a, b), m) for b in ops] for a in ops])
print(table)
game = PayoffMatrix2x2(tuple(table[..., 0].ravel()), tuple(table[..., 1].ravel()))
res = mixed_nash_2x2(game)
# Bob's mix must make Alice indifferent between her two rows, hence q = 1/2
print("mixed NE:", res.profile, "payoffs:", res.payoffs)

# %%
rep = find_nash(StrategySpace.SU2_TWO, StrategySpace.SU2_TWO, dephased(0, 0), m, cfg)
print("dephased |00>:", [pair(e.payoffs, 6) for e in rep.equilibria])

# %%
# On the anti-correlated source Alice never earns more than 3/2
rep = find_nash(StrategySpace.SU2_TWO, StrategySpace.SU2_TWO, dephased(0, 1), m, cfg)
for e in rep.equilibria:
    print("dephased |01>:", e.params_a.describe(), "|", e.params_b.describe(), pair(e.payoffs, 6))

# %%
rng = np.random.default_rng(0)
spread = 0.0
for _ in range(1000):
    a = su2(rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2), rng.uniform(0, math.pi / 2))
    b = su2(rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2), rng.uniform(0, math.pi / 2))
    pa, pb = expected_payoffs(play_round(full_rank(), a, b), m)
    spread = max(spread, abs(pa - 0.25), abs(pb - 1.5))
print("full-rank source, largest deviation from (0.25, 1.5):", spread)
