"""How many distinct distances can an ultrametric space have?

At most |X| - 1.  This script samples random spaces, looks at the ones that
hit the bound, and decides membership three different ways.
"""

# %%
from collections import Counter

from gomory_hu import (
    PROFILES,
    build_representing_tree,
    characterize_u_by_graphs,
    check_strictly_binary_distinct,
    is_in_u,
    level_graph,
    multipartite_parts,
    random_space,
    spectrum,
    strip_isolated,
)

# %%
X = random_space(6, seed=3, profile="extremal")
print(X.points)
for row in X.dist:
    print(" ".join(f"{str(v):>6}" for v in row))
print("spectrum:", [str(v) for v in spectrum(X)])

# %% [markdown]
# Six points, five distinct distances: the bound is attained.  Every level
# graph (pairs at one fixed distance), once isolated vertices are dropped, is
# complete bipartite.

# %%
for r in spectrum(X):
    G = strip_isolated(level_graph(X, r))
    parts = multipartite_parts(G)
    print(f"r={r}: parts {[sorted(p) for p in parts]}")

# %%
tally = Counter()
for seed in range(600):
    n = 2 + seed % 7
    Y = random_space(n, seed, PROFILES[seed % 3])
    check = check_strictly_binary_distinct(build_representing_tree(Y))
    verdicts = (is_in_u(Y), characterize_u_by_graphs(Y), check.is_strictly_binary and check.labels_distinct)
    tally[verdicts] += 1
    assert len(spectrum(Y)) <= n - 1
print(tally)
