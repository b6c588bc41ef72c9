"""
The Welfare Game without quantum resources
==========================================

The government (Alice) chooses Aid or No aid, the pauper (Bob) chooses Work
or Loaf.  Neither pure profile is stable, and the mixed equilibrium leaves
Alice with a negative payoff.
"""

# %%
import numpy as np

from qgame.game import classify, mixed_nash_2x2, mixed_payoffs, pure_nash, welfare, MixedProfile

m = welfare()
print("Alice:\n", m.A)
print("Bob:\n", m.B)
print(classify(m))

# %%
# No cell is a mutual best response
print("pure NE:", pure_nash(m))

# %%
# Each player mixes so that the other is indifferent
res = mixed_nash_2x2(m)
print("mixed NE:", res.profile, "payoffs:", res.payoffs)

# %%
# Alice's payoff over the whole mixed square; the equilibrium sits on a saddle
ps = np.linspace(0, 1, 5)
for p in ps:
    row = [mixed_payoffs(m, MixedProfile(p, q))[0] for q in ps]
    print(f"p={p:.2f}", np.round(row, 2))
