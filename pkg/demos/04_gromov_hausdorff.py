"""Moving spaces into the class by small Gromov-Hausdorff steps."""

# %%
from fractions import Fraction

from gomory_hu import (
    gh_distance,
    is_in_u,
    nearby_extremal,
    perturb_to_u,
    random_space,
    sample_neighbors,
    spectrum,
    stability_radius,
    validate_ultrametric,
)

# equilateral triangle: one distance, far from the bound
E = validate_ultrametric([[0, 1, 1], [1, 0, 1], [1, 1, 0]], ["a", "b", "c"])
rep = perturb_to_u(E, Fraction(1, 10))
print(rep.to_json())
print("GH:", gh_distance(E, rep.output).value)

# %%
X = random_space(5, seed=7, profile="equilateral-biased")
print("spectrum before:", [str(v) for v in spectrum(X)])
for eps in (Fraction(1, 2), Fraction(1, 100)):
    Y = perturb_to_u(X, eps).output
    print(eps, is_in_u(Y), gh_distance(X, Y).value)

# %% [markdown]
# Points can also be added: clone one point at a tiny distance, then perturb.

# %%
P = validate_ultrametric([[0, 2], [2, 0]], ["x", "y"])
Q = nearby_extremal(P, 5, Fraction(1, 20))
print(Q.points, [str(v) for v in spectrum(Q)], gh_distance(P, Q).value)

# %% [markdown]
# Members of the class are stable: nearby spaces of the same size stay in it.

# %%
U = random_space(5, seed=2, profile="extremal")
r = stability_radius(U)
inside = [Y for Y in sample_neighbors(U, 40, seed=1) if gh_distance(U, Y).value < r]
print(r, len(inside), all(is_in_u(Y) and len(Y) == len(U) for Y in inside))
