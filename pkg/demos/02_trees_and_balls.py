"""Representing trees, balls, and maps that preserve balls."""

# %%
from gomory_hu import (
    ball_family,
    build_representing_tree,
    canonical_code,
    find_ball_preserving_bijection,
    random_space,
    tree_distance,
)
from gomory_hu.trees import tree_to_dot

X = random_space(5, seed=11, profile="extremal")
T = build_representing_tree(X)
print(tree_to_dot(T))
print("shape:", canonical_code(T))

# %%
# distances come back as the largest label on the path between two leaves
a, b = X.points[0], X.points[-1]
print(a, b, X.d(a, b), tree_distance(T, a, b))

# %%
for B in ball_family(X):
    print(f"radius {B.radius}: {sorted(B.members)}")

# %% [markdown]
# A space of the same shape but different distances and point names.  The
# tree matching gives a bijection that sends balls to balls.

# %%
Y = X.renamed({p: p.upper() for p in X.points}).transformed(lambda t: t * t + 1)
F = find_ball_preserving_bijection(X, Y)
print(F.forward)

Z = random_space(5, seed=12, profile="extremal")
print(canonical_code(build_representing_tree(Z)), find_ball_preserving_bijection(X, Z))
