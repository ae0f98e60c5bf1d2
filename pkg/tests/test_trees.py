from fractions import Fraction
from itertools import combinations

import pytest

from conftest import corpus, make
from gomory_hu import (
    Bijection,
    ball_family,
    build_representing_tree,
    canonical_code,
    check_strictly_binary_distinct,
    enumerate_sb_trees,
    find_ball_preserving_bijection,
    is_ball_preserving,
    is_in_u,
    random_space,
    spectrum,
    tree_distance,
    trees_isomorphic,
)
from gomory_hu.errors import NotABijection, SamePoint, SingletonSpace, UnknownLeaf
from gomory_hu.trees import (
    Internal,
    Leaf,
    internal_nodes,
    tree_from_dict,
    tree_to_dict,
    tree_to_dot,
    tree_to_json,
)
from oracles import all_balls


@pytest.fixture
def s377():
    return make([[0, 3, 7], [3, 0, 7], [7, 7, 0]], ["a'", "b'", "c'"])


def test_build_examples(s122, equilateral, one_point):
    assert build_representing_tree(s122) == Internal(
        Fraction(2), (Leaf("c"), Internal(Fraction(1), (Leaf("a"), Leaf("b"))))
    )
    assert build_representing_tree(equilateral) == Internal(Fraction(1), (Leaf("a"), Leaf("b"), Leaf("c")))
    assert build_representing_tree(one_point) == Leaf("a")


def test_labels_decrease_and_equal_subtree_diameters():
    for X in corpus(300):
        T = build_representing_tree(X)
        for v in internal_nodes(T):
            sub = X.subspace(v.leaves)
            assert v.label == max(spectrum(sub))
            for c in v.children:
                if isinstance(c, Internal):
                    assert c.label < v.label
        assert sorted(T.leaves) == sorted(X.points)


def test_tree_distance_examples(s122):
    T = build_representing_tree(s122)
    assert tree_distance(T, "a", "b") == 1
    assert tree_distance(T, "a", "c") == 2
    with pytest.raises(SamePoint):
        tree_distance(T, "a", "a")
    with pytest.raises(UnknownLeaf):
        tree_distance(T, "a", "z")


def test_tree_distance_reconstructs_matrix():
    for X in corpus(400):
        T = build_representing_tree(X)
        for a, b in combinations(X.points, 2):
            assert tree_distance(T, a, b) == X.d(a, b)


def test_binary_check_examples(s122, equilateral, two_pairs):
    assert check_strictly_binary_distinct(build_representing_tree(s122)) == (True, True)
    assert check_strictly_binary_distinct(build_representing_tree(equilateral)) == (False, True)
    assert check_strictly_binary_distinct(build_representing_tree(two_pairs)) == (True, False)
    assert check_strictly_binary_distinct(Leaf("a")) == (True, True)


def test_canonical_code_examples(s122):
    assert canonical_code(Leaf("x")) == "()"
    assert canonical_code(build_representing_tree(s122)) == "(()(()()))"
    assert len(enumerate_sb_trees(4)) == 2


def test_isomorphism_examples(s122, s377, equilateral):
    T = build_representing_tree(s122)
    assert trees_isomorphic(T, T)
    assert trees_isomorphic(T, build_representing_tree(s377))
    assert not trees_isomorphic(T, build_representing_tree(equilateral))


def test_code_is_invariant_under_relabelling():
    for seed in range(40):
        X = random_space(7, seed, "generic")
        Y = X.reordered(list(reversed(X.points))).renamed({p: p.upper() for p in X.points})
        assert canonical_code(build_representing_tree(X)) == canonical_code(build_representing_tree(Y))


def test_ball_family_examples(s122, equilateral, two_point, one_point):
    fam = ball_family(s122)
    assert [(set(b.members), b.radius) for b in fam] == [({"a", "b"}, 1), ({"a", "b", "c"}, 2)]
    assert [set(b.members) for b in ball_family(equilateral)] == [{"a", "b", "c"}]
    assert [set(b.members) for b in ball_family(two_point)] == [{"a", "b"}]
    with pytest.raises(SingletonSpace):
        ball_family(one_point)


def test_ball_family_matches_brute_force():
    for X in corpus(300):
        if len(X) >= 2:
            assert {b.members for b in ball_family(X)} == all_balls(X.points, X.dist)
            for b in ball_family(X):
                assert max(spectrum(X.subspace(b.members)), default=0) <= b.radius


def test_ball_bound_and_equality():
    for X in corpus(600):
        if len(X) >= 2:
            k = len(ball_family(X))
            binary = check_strictly_binary_distinct(build_representing_tree(X)).is_strictly_binary
            assert k <= len(X) - 1
            assert (k == len(X) - 1) == binary


def test_one_ball_per_radius_in_u():
    for seed in range(60):
        X = random_space(2 + seed % 7, seed, "extremal")
        radii = [b.radius for b in ball_family(X)]
        assert sorted(radii) == list(spectrum(X))


def test_children_balls_union_to_parent_ball():
    for seed in range(60):
        X = random_space(2 + seed % 7, seed, "extremal")
        balls = {b.members for b in ball_family(X)}
        nodes = internal_nodes(build_representing_tree(X))
        sets = [frozenset(v.leaves) for v in nodes]
        assert set(sets) == balls
        for u in nodes:
            kids = [frozenset(c.leaves) for c in u.children]
            assert frozenset(u.leaves) == kids[0] | kids[1]
            # no other pair of internal-node or leaf sets tiles the parent's ball
            candidates = sets + [frozenset([p]) for p in X.points]
            for A, B in combinations(candidates, 2):
                if A | B == frozenset(u.leaves) and not A & B:
                    assert {A, B} == set(kids)


def test_ball_preserving_examples(s122, s377):
    ident = Bijection({p: p for p in s122.points})
    assert is_ball_preserving(ident, s122, s122)
    doubled = s122.transformed(lambda t: 2 * t)
    assert is_ball_preserving(ident, s122, doubled)
    swap = Bijection({"a": "c", "b": "b", "c": "a"})
    assert not is_ball_preserving(swap, s122, s122)
    with pytest.raises(NotABijection):
        Bijection({"a": "x", "b": "x"})
    with pytest.raises(NotABijection):
        is_ball_preserving(Bijection({"a": "a"}), s122, s122)


def test_find_bijection_examples(s122, s377, equilateral):
    F = find_ball_preserving_bijection(s122, s377)
    assert F("c") == "c'" and {F("a"), F("b")} == {"a'", "b'"}
    assert is_ball_preserving(F, s122, s377)
    assert find_ball_preserving_bijection(s122, equilateral) is None
    assert find_ball_preserving_bijection(s122, equilateral, method="brute") is None
    assert find_ball_preserving_bijection(s122, s122, method="brute").forward == {p: p for p in "abc"}


def test_brute_force_agrees_with_codes_on_general_spaces():
    spaces = [random_space(n, s, p) for n in (3, 4, 5) for s in range(4) for p in ("generic", "equilateral-biased")]
    for X in spaces:
        for Y in spaces:
            if len(X) != len(Y):
                continue
            same = canonical_code(build_representing_tree(X)) == canonical_code(build_representing_tree(Y))
            assert (find_ball_preserving_bijection(X, Y, method="brute") is not None) == same


def test_tree_serialisation(s122, one_point):
    T = build_representing_tree(s122)
    assert tree_to_dict(T)["label"] == "2"
    assert tree_from_dict(tree_to_dict(T)) == T
    assert tree_to_json(T) == tree_to_json(build_representing_tree(s122))
    dot = tree_to_dot(T)
    assert 'label="2"' in dot and 'label="1"' in dot
    assert tree_to_dot(build_representing_tree(one_point)).count("label=") == 1


def test_spectrum_used_once_as_label():
    for seed in range(40):
        X = random_space(2 + seed % 7, seed, "extremal")
        assert is_in_u(X)
        labels = sorted(v.label for v in internal_nodes(build_representing_tree(X)))
        assert labels == list(spectrum(X))
