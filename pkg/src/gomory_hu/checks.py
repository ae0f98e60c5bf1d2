"""Cross-checks between the independent characterisations of U.

:func:`check_space` runs every invariant that can be tested on one space
and returns the names of those that failed.  :func:`run_battery` drives it
over a deterministic random corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import PROFILES, UltraSpace, is_in_u, random_space, spectrum, validate_ultrametric
from .counting import canonicalize, enumerate_sb_trees, otter_count, realize_space_from_tree
from .errors import UltrametricError
from .gh import gh_distance, perturb_to_u
from .graphs import characterize_u_by_graphs, diametral_parts
from .trees import (
    ball_family,
    build_representing_tree,
    canonical_code,
    check_strictly_binary_distinct,
    internal_nodes,
    tree_distance_matrix,
)

PERTURB_EPS = (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100))


def characterizations(X: UltraSpace) -> dict[str, bool]:
    """Membership in U decided three ways: spectrum size, level graphs, representing tree."""
    by_spectrum = is_in_u(X)
    if len(X) < 2:
        return {"spectrum": by_spectrum, "graphs": True, "tree": True}
    check = check_strictly_binary_distinct(build_representing_tree(X))
    return {
        "spectrum": by_spectrum,
        "graphs": characterize_u_by_graphs(X),
        "tree": check.is_strictly_binary and check.labels_distinct,
    }


def check_space(X: UltraSpace, rng: random.Random | None = None, gh_limit: int = 5) -> list[str]:
    rng = rng or random.Random(0)
    failed = []
    n = len(X)

    def expect(name, cond):
        if not cond:
            failed.append(name)

    try:
        validate_ultrametric(X.dist, X.points)
    except UltrametricError:
        return ["valid"]

    expect("gomory_hu", len(spectrum(X)) <= n - 1)
    verdicts = characterizations(X)
    expect("three_way_agreement", len(set(verdicts.values())) == 1)
    if n < 2:
        return failed

    T = build_representing_tree(X)
    dm = tree_distance_matrix(T)
    expect("tree_reconstruction", all(dm[a, b] == X.d(a, b) for a in X for b in X if a != b))
    binary = check_strictly_binary_distinct(T).is_strictly_binary
    balls = ball_family(X)
    expect("ball_bound", len(balls) <= n - 1)
    expect("ball_equality_iff_binary", (len(balls) == n - 1) == binary)
    expect("diametral_k_ge_2", len(diametral_parts(X)) >= 2)

    if verdicts["spectrum"]:
        expect("diametral_bipartite", len(diametral_parts(X)) == 2)
        radii = [b.radius for b in balls]
        expect("one_ball_per_radius", sorted(radii) == list(spectrum(X)))
        sub = rng.sample(X.points, rng.randint(1, n))
        expect("heredity", is_in_u(X.subspace(sub)))
        expect("code_roundtrip", canonical_code(build_representing_tree(realize_space_from_tree(canonical_code(T)))) == canonical_code(T))

    for eps in PERTURB_EPS:
        rep = perturb_to_u(X, eps)
        Y = rep.output
        try:
            validate_ultrametric(Y.dist, Y.points)
            ok = True
        except UltrametricError:
            ok = False
        expect("perturb_valid", ok)
        expect("perturb_in_u", is_in_u(Y))
        expect("perturb_deviation", rep.sup_deviation < eps)
        if n <= gh_limit:
            expect("perturb_gh", gh_distance(X, Y).value < eps)
    return failed


@dataclass
class BatteryResult:
    samples: int = 0
    passed: int = 0
    failures: list[tuple[int, UltraSpace, list[str]]] = field(default_factory=list)
    global_failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.global_failures


def run_battery(n_max: int, samples: int, seed: int = 0) -> BatteryResult:
    """Check ``samples`` random spaces with sizes ``1 .. n_max`` across all profiles."""
    result = BatteryResult()
    rng = random.Random(seed)
    for k in range(1, min(n_max, 9)):
        if otter_count(k) != len(enumerate_sb_trees(k + 1)):
            result.global_failures.append(f"otter_count({k})")
    for code in enumerate_sb_trees(min(n_max, 8)):
        if canonicalize(code) != code or not is_in_u(realize_space_from_tree(code)):
            result.global_failures.append(f"realize({code})")
    for i in range(samples):
        n = 1 + i % n_max
        profile = PROFILES[i % len(PROFILES)]
        X = random_space(n, seed * 100003 + i, profile)
        failed = check_space(X, random.Random(rng.random()))
        result.samples += 1
        if failed:
            result.failures.append((i, X, failed))
        else:
            result.passed += 1
    return result


def internal_count(X: UltraSpace) -> int:
    return len(internal_nodes(build_representing_tree(X))) if len(X) > 1 else 0
