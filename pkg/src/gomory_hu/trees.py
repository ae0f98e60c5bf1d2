"""Representing trees, canonical codes, ball families and ball-preserving maps.

The representing tree of a space is built by recursive diametral
decomposition: the root carries the diameter and has one subtree per part
of the diametral graph.  Leaves carry point ids, internal nodes carry
distances, and the two are different Python types, so ids and distances
can never be confused.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple, Union

from .core import UltraSpace, diameter, spectrum
from .errors import (
    MalformedCode,
    NotABijection,
    SamePoint,
    SingletonSpace,
    UltrametricError,
    UnknownLeaf,
)
from .graphs import diametral_parts


@dataclass(frozen=True)
class Leaf:
    point: str

    @property
    def leaves(self) -> tuple[str, ...]:
        return (self.point,)


@dataclass(frozen=True)
class Internal:
    label: Fraction
    children: tuple["Node", ...]
    leaves: tuple[str, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.children) < 2:
            raise UltrametricError("internal nodes need at least two children")
        object.__setattr__(self, "leaves", tuple(p for c in self.children for p in c.leaves))


Node = Union[Leaf, Internal]


def code_key(code: str):
    """Sort key for sibling codes: shorter first, then lexicographic."""
    return (len(code), code)


def canonical_code(T: Node) -> str:
    """Parenthesis code of the unlabeled rooted tree.

    ``"()"`` for a leaf, otherwise the children's codes sorted by
    :func:`code_key` and wrapped in one more pair of parentheses.  Two trees
    have equal codes iff they are isomorphic as rooted trees.
    """
    if isinstance(T, Leaf):
        return "()"
    return "(" + "".join(sorted((canonical_code(c) for c in T.children), key=code_key)) + ")"


def _child_key(node: Node):
    return (code_key(canonical_code(node)), min(node.leaves))


def build_representing_tree(X: UltraSpace) -> Node:
    if len(X) == 1:
        return Leaf(X.points[0])
    diam, _ = diameter(X)
    children = []
    for part in diametral_parts(X):
        child = build_representing_tree(X.subspace(part))
        if isinstance(child, Internal) and not child.label < diam:
            raise AssertionError("labels must strictly decrease away from the root")
        children.append(child)
    return Internal(diam, tuple(sorted(children, key=_child_key)))


def internal_nodes(T: Node) -> list[Internal]:
    """Internal nodes in preorder."""
    if isinstance(T, Leaf):
        return []
    out = [T]
    for c in T.children:
        out.extend(internal_nodes(c))
    return out


def _path_to(T: Node, point: str) -> list[Node] | None:
    if isinstance(T, Leaf):
        return [T] if T.point == point else None
    for c in T.children:
        sub = _path_to(c, point)
        if sub is not None:
            return [T, *sub]
    return None


def tree_distance(T: Node, x1: str, x2: str) -> Fraction:
    """Largest internal label on the path between two leaves."""
    if x1 == x2:
        raise SamePoint(f"{x1!r} given twice")
    p1, p2 = _path_to(T, x1), _path_to(T, x2)
    if p1 is None or p2 is None:
        raise UnknownLeaf(f"{x1 if p1 is None else x2!r} is not a leaf of the tree")
    common = 0
    while common < min(len(p1), len(p2)) and p1[common] is p2[common]:
        common += 1
    path = [p1[common - 1], *p1[common:], *p2[common:]]
    return max(v.label for v in path if isinstance(v, Internal))


def tree_distance_matrix(T: Node) -> dict[tuple[str, str], Fraction]:
    """All pairwise leaf distances via lowest common ancestors, in one pass."""
    out = {}

    def walk(node):
        if isinstance(node, Leaf):
            return
        kids = node.children
        for a in range(len(kids)):
            for b in range(a + 1, len(kids)):
                for p in kids[a].leaves:
                    for q in kids[b].leaves:
                        out[p, q] = out[q, p] = node.label
        for c in kids:
            walk(c)

    walk(T)
    return out


class BinaryCheck(NamedTuple):
    is_strictly_binary: bool
    labels_distinct: bool


def check_strictly_binary_distinct(T: Node) -> BinaryCheck:
    nodes = internal_nodes(T)
    binary = all(len(v.children) == 2 for v in nodes)
    labels = [v.label for v in nodes]
    distinct = len(set(labels)) == len(labels)
    n = len(T.leaves)
    if binary and n >= 2 and len(nodes) != n - 1:
        raise AssertionError(f"strictly binary tree with {n} leaves has {len(nodes)} internal nodes")
    return BinaryCheck(binary, distinct)


def trees_isomorphic(T1: Node, T2: Node) -> bool:
    return canonical_code(T1) == canonical_code(T2)


# -- export -------------------------------------------------------------------

def tree_to_dict(T: Node) -> dict:
    if isinstance(T, Leaf):
        return {"point": T.point}
    return {"label": str(T.label), "children": [tree_to_dict(c) for c in T.children]}


def tree_from_dict(doc: dict) -> Node:
    if "point" in doc:
        return Leaf(str(doc["point"]))
    return Internal(Fraction(doc["label"]), tuple(tree_from_dict(c) for c in doc["children"]))


def tree_to_json(T: Node) -> str:
    return json.dumps(tree_to_dict(T), indent=2) + "\n"


def tree_to_dot(T: Node) -> str:
    lines = ["digraph T {"]
    counter = iter(range(10**9))

    def emit(node) -> str:
        name = f"n{next(counter)}"
        if isinstance(node, Leaf):
            text = node.point.replace("\\", "\\\\").replace('"', '\\"')
            lines.append(f'  {name} [label="{text}", shape=box];')
        else:
            lines.append(f'  {name} [label="{node.label}"];')
            for c in node.children:
                lines.append(f"  {name} -> {emit(c)};")
        return name

    emit(T)
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- balls ----------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    members: frozenset[str]
    radius: Fraction


def ball(X: UltraSpace, center: str, r) -> frozenset[str]:
    i = X.index[center]
    return frozenset(p for j, p in enumerate(X.points) if X.dist[i][j] <= r)


def ball_family(X: UltraSpace) -> tuple[Ball, ...]:
    """Distinct closed balls ``B_r(t)`` with ``r`` a distance realised from ``t``.

    Balls are deduplicated by member set; the smallest witnessing radius is
    kept.  Sorted by radius, then by sorted members.
    """
    if len(X) < 2:
        raise SingletonSpace("the ball family needs at least two points")
    found: dict[frozenset[str], Fraction] = {}
    for i, t in enumerate(X.points):
        for r in {X.dist[i][j] for j in range(len(X)) if j != i}:
            members = ball(X, t, r)
            if members not in found or r < found[members]:
                found[members] = r
    return tuple(
        Ball(m, r) for m, r in sorted(found.items(), key=lambda kv: (kv[1], sorted(kv[0])))
    )


def ball_sets(X: UltraSpace) -> frozenset[frozenset[str]]:
    return frozenset(b.members for b in ball_family(X))


def balls_to_dicts(balls) -> list[dict]:
    return [{"members": sorted(b.members), "radius": str(b.radius)} for b in balls]


# -- ball-preserving bijections -------------------------------------------------

@dataclass(frozen=True)
class Bijection:
    forward: dict
    backward: dict = field(init=False, compare=False)

    def __post_init__(self):
        back = {v: k for k, v in self.forward.items()}
        if len(back) != len(self.forward):
            raise NotABijection("map is not injective")
        object.__setattr__(self, "backward", back)

    def __call__(self, p):
        return self.forward[p]


def _check_bijection(F: Bijection, X: UltraSpace, Y: UltraSpace) -> None:
    if set(F.forward) != set(X.points) or set(F.backward) != set(Y.points):
        raise NotABijection("map must be a bijection between the two point sets")


def is_ball_preserving(F: Bijection, X: UltraSpace, Y: UltraSpace) -> bool:
    """Images of balls of ``X`` are balls of ``Y`` and preimages of balls of ``Y`` are balls of ``X``."""
    _check_bijection(F, X, Y)
    if len(X) == 1:
        return True
    bx, by = ball_sets(X), ball_sets(Y)
    return all(frozenset(F.forward[p] for p in Z) in by for Z in bx) and all(
        frozenset(F.backward[q] for q in W) in bx for W in by
    )


def _match(tx: Node, ty: Node, out: dict) -> None:
    if isinstance(tx, Leaf):
        out[tx.point] = ty.point
        return
    kx = sorted(tx.children, key=lambda c: code_key(canonical_code(c)))
    ky = sorted(ty.children, key=lambda c: code_key(canonical_code(c)))
    for a, b in zip(kx, ky):
        _match(a, b, out)


def find_ball_preserving_bijection(
    X: UltraSpace, Y: UltraSpace, method: str = "tree"
) -> Bijection | None:
    """A ball-preserving bijection ``X -> Y``, or ``None`` if there is none.

    ``method="tree"`` matches the representing trees subtree by subtree and
    returns ``None`` when their canonical codes differ.  ``method="brute"``
    tries every bijection (``|X| <= 7``) and returns the lexicographically
    smallest witness; it is kept as an independent oracle.
    """
    if len(X) != len(Y):
        return None
    if method == "tree":
        tx, ty = build_representing_tree(X), build_representing_tree(Y)
        if canonical_code(tx) != canonical_code(ty):
            return None
        out: dict = {}
        _match(tx, ty, out)
        return Bijection(out)
    if method == "brute":
        if len(X) > 7:
            raise UltrametricError("brute-force bijection search is limited to 7 points")
        xs = sorted(X.points)
        if len(X) == 1:
            return Bijection({xs[0]: Y.points[0]})
        bx, by = ball_sets(X), ball_sets(Y)
        if len(bx) != len(by):
            return None
        for image in permutations(sorted(Y.points)):
            f = dict(zip(xs, image))
            # equal family sizes: images all landing in by already forces a bijection of families
            if all(frozenset(f[p] for p in Z) in by for Z in bx):
                return Bijection(f)
        return None
    raise ValueError(f"unknown method {method!r}")


def spectrum_labels_used_once(X: UltraSpace) -> bool:
    """For spaces in U every distance labels exactly one internal node."""
    labels = sorted(v.label for v in internal_nodes(build_representing_tree(X)))
    return labels == list(spectrum(X))
