"""
Entangled play with one- and two-parameter operators
====================================================

A referee entangles the players' qubits, each player rotates their own
qubit, and the referee disentangles and measures.  With a single rotation
angle the dilemma survives; with an extra phase it disappears.
"""

# %%
import math

import numpy as np

from qgame.equilibrium import SearchConfig, build_extended_matrix, find_nash
from qgame.game import welfare
from qgame.protocol import closed_form_one_param, mes, payoff_tables
from qgame.strategies import StrategyParams, StrategySpace

m = welfare()
cfg = SearchConfig(grid_resolution=33)


def pair(x, nd=4):
    return tuple(round(float(v), nd) + 0.0 for v in x)

# %%
# One angle each: the closed form and the simulated protocol agree
thetas = np.linspace(0, math.pi, 5)[:, None]
A, B = payoff_tables(mes(0, 0), StrategySpace.SU2_ONE, thetas, StrategySpace.SU2_ONE, thetas, m)
ref = np.array([[closed_form_one_param(a, b) for b in thetas[:, 0]] for a in thetas[:, 0]])
print("max deviation:", np.abs(np.stack([A, B], -1) - ref).max())

# %%
rep = find_nash(StrategySpace.SU2_ONE, StrategySpace.SU2_ONE, mes(0, 0), m, cfg)
for e in rep.equilibria:
    print(e.params_a.describe(), "|", e.params_b.describe(), "->", pair(e.payoffs, 6))
print("cos(theta_B) =", round(math.cos(rep.equilibria[0].params_b.theta), 6), "grade:", rep.dilemma.value)

# %%
# A phase angle lets both players reach the top-left cell, (3, 2)
rep = find_nash(StrategySpace.SU2_TWO, StrategySpace.SU2_TWO, mes(0, 0), m, cfg)
e = rep.equilibria[0]
print(len(rep.equilibria), "NE:", e.params_a.describe(), "|", e.params_b.describe(), e.payoffs, rep.dilemma.value)

# %%
# The same operator added to the classical moves, as a 3x3 table
phase = StrategyParams(StrategySpace.SU2_TWO, theta=0, phi=math.pi / 2)
em = build_extended_matrix(m, {"M": phase}, {"M": phase}, mes(0, 0), (0, 0))
for i, r in enumerate(em.row_names):
    print(r, [pair(em.cells[i, j], 3) for j in range(len(em.col_names))])
print("NE cells:", [(em.row_names[i], em.col_names[j]) for i, j in em.ne_cells])

# %%
# Starting from |01> the equilibria are no longer isolated: every point of
# theta_A + theta_B = pi with phi_A = 0 and phi_B = pi/2 pays (3, 2)
rep = find_nash(StrategySpace.SU2_TWO, StrategySpace.SU2_TWO, mes(0, 1), m, cfg)
print(len(rep.equilibria), "certified NE, payoffs", {pair(e.payoffs, 6) for e in rep.equilibria})
print("theta_A + theta_B:", sorted({round(e.params_a.theta + e.params_b.theta, 6) for e in rep.equilibria}))
