"""
A source that emits the wrong input state
=========================================

With probability p the referee starts from |00>, otherwise from |01>.
Payoffs are linear in p, but the set of equilibria changes with it.
"""

# %%
import numpy as np

from qgame.equilibrium import SearchConfig, corrupted_sweep
from qgame.game import welfare
from qgame.protocol import corrupted, mes, play_round, expected_payoffs
from qgame.strategies import FLIP, PHASE, SIGMA0

m = welfare()


def pair(x, nd=4):
    return tuple(round(float(v), nd) + 0.0 for v in x)

# %%
# Linearity in p for a fixed pair of operators
for p in (0.0, 0.25, 0.5, 0.75, 1.0):
    mix = expected_payoffs(play_round(corrupted(p), FLIP, PHASE), m)
    lin = p * np.array(expected_payoffs(play_round(mes(0, 0), FLIP, PHASE), m)) + (1 - p) * np.array(
        expected_payoffs(play_round(mes(0, 1), FLIP, PHASE), m)
    )
    print(p, pair(mix, 6), pair(lin, 6))

# %%
ops = {"sigma0": SIGMA0, "i sigma_y": FLIP, "i sigma_z": PHASE}
for p in (0.25, 0.5, 0.75):
    print(f"p={p}")
    state = corrupted(p)
    for na, ua in ops.items():
        print("  ", na.ljust(10), [pair(expected_payoffs(play_round(state, ua, ub), m), 4) for ub in ops.values()])

# %%
# Full search over two-parameter operators (takes a few seconds per p)
reports = corrupted_sweep([0.25, 0.5, 0.75], "su2_two", "su2_two", m, SearchConfig())
for p, rep in zip((0.25, 0.5, 0.75), reports):
    pays = sorted({pair(e.payoffs, 4) for e in rep.equilibria})
    print(f"p={p}: {len(rep.equilibria)} NE, distinct payoffs {pays[:6]}")
