"""Finite ultrametric spaces with exact rational distances.

A space is an ordered tuple of opaque string ids together with a symmetric
matrix of :class:`fractions.Fraction`.  Nothing here ever touches floating
point: spectrum membership and the strict inequalities used by the
perturbation code are only meaningful with exact values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from numbers import Rational
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    DuplicatePointId,
    MatrixShapeError,
    NonSymmetric,
    NonzeroDiagonal,
    SingletonSpace,
    StrongTriangleViolation,
    UltrametricError,
    ZeroOffDiagonal,
)

PROFILES = ("extremal", "generic", "equilateral-biased")


def to_fraction(value) -> Fraction:
    """Parse ``value`` as an exact rational.

    Strings may be ``"p/q"`` or decimals (``"0.1"`` is exactly 1/10).  Floats
    are rejected; pass their decimal string instead.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise UltrametricError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UltrametricError(f"not a rational number: {value!r}") from exc
    raise UltrametricError(f"not an exact rational: {value!r} ({type(value).__name__})")


@dataclass(frozen=True)
class UltraSpace:
    """Finite ultrametric space.

    Construct through :func:`validate_ultrametric`; the constructor itself
    trusts its arguments.
    """

    points: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.points)}

    def d(self, a: str, b: str) -> Fraction:
        return self.dist[self.index[a]][self.index[b]]

    def pairs(self):
        """Unordered index pairs ``(i, j)`` with ``i < j``."""
        return combinations(range(len(self.points)), 2)

    def off_diagonal(self) -> Iterable[Fraction]:
        return (self.dist[i][j] for i, j in self.pairs())

    def subspace(self, ids: Iterable[str]) -> "UltraSpace":
        """Induced subspace on ``ids``, keeping the order of this space."""
        wanted = set(ids)
        unknown = wanted - set(self.points)
        if unknown:
            raise UltrametricError(f"unknown point ids: {sorted(unknown)}")
        if not wanted:
            raise UltrametricError("subspace must be nonempty")
        keep = [i for i, p in enumerate(self.points) if p in wanted]
        return UltraSpace(
            tuple(self.points[i] for i in keep),
            tuple(tuple(self.dist[i][j] for j in keep) for i in keep),
        )

    def reordered(self, order: Sequence[str]) -> "UltraSpace":
        if sorted(order) != sorted(self.points):
            raise UltrametricError("reordering must be a permutation of the points")
        idx = [self.index[p] for p in order]
        return UltraSpace(tuple(order), tuple(tuple(self.dist[i][j] for j in idx) for i in idx))

    def renamed(self, mapping: dict[str, str]) -> "UltraSpace":
        return UltraSpace(tuple(mapping[p] for p in self.points), self.dist)

    def transformed(self, f: Callable[[Fraction], Fraction]) -> "UltraSpace":
        """Space with distances ``f(d(x, y))`` off the diagonal.

        A strictly increasing positive ``f`` keeps the space ultrametric.
        """
        n = len(self.points)
        return UltraSpace(
            self.points,
            tuple(
                tuple(Fraction(0) if i == j else to_fraction(f(self.dist[i][j])) for j in range(n))
                for i in range(n)
            ),
        )

    def to_array(self) -> np.ndarray:
        """Float copy of the distance matrix, for plotting and inspection only."""
        return np.array([[float(v) for v in row] for row in self.dist], dtype=float)


def validate_ultrametric(matrix, ids: Sequence[str]) -> UltraSpace:
    """Check the ultrametric axioms and build an :class:`UltraSpace`.

    Raises the specific error for the first violated axiom, in the order:
    shape, duplicate ids, diagonal, symmetry, positivity, strong triangle.
    """
    ids = tuple(str(p) for p in ids)
    n = len(ids)
    if n == 0:
        raise MatrixShapeError("a space needs at least one point")
    rows = [list(row) for row in matrix]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise MatrixShapeError(f"distance matrix must be {n}x{n} to match the point ids")
    seen = set()
    for p in ids:
        if p in seen:
            raise DuplicatePointId(p)
        seen.add(p)
    D = [[to_fraction(v) for v in row] for row in rows]

    for i in range(n):
        if D[i][i] != 0:
            raise NonzeroDiagonal(ids[i], D[i][i])
    for i, j in combinations(range(n), 2):
        if D[i][j] != D[j][i]:
            raise NonSymmetric(ids[i], ids[j], D[i][j], D[j][i])
        if D[i][j] <= 0:
            raise ZeroOffDiagonal(ids[i], ids[j], D[i][j])
    for i, j in combinations(range(n), 2):
        dij = D[i][j]
        for k in range(n):
            if dij > max(D[i][k], D[k][j]):
                raise StrongTriangleViolation(ids[i], ids[j], ids[k], dij, D[i][k], D[k][j])

    return UltraSpace(ids, tuple(tuple(row) for row in D))


def is_ultrametric(matrix, ids: Sequence[str]) -> bool:
    try:
        validate_ultrametric(matrix, ids)
    except UltrametricError:
        return False
    return True


def spectrum(X: UltraSpace) -> tuple[Fraction, ...]:
    """Sorted distinct nonzero distances."""
    return tuple(sorted(set(X.off_diagonal())))


def diameter(X: UltraSpace) -> tuple[Fraction, list[tuple[str, str]]]:
    """Diameter and every unordered pair attaining it."""
    if len(X) < 2:
        raise SingletonSpace("diameter needs at least two points")
    diam = max(X.off_diagonal())
    pairs = [(X.points[i], X.points[j]) for i, j in X.pairs() if X.dist[i][j] == diam]
    return diam, pairs


def is_in_u(X: UltraSpace) -> bool:
    """True when ``|Sp(X)| == |X| - 1``; one-point spaces count as members."""
    return len(spectrum(X)) == len(X) - 1


def spectral_gaps(values: Sequence[Fraction]) -> list[Fraction]:
    """Differences between consecutive sorted spectrum values."""
    values = sorted(values)
    return [b - a for a, b in zip(values, values[1:])]


def separation_scale(values: Sequence[Fraction]) -> Fraction | None:
    """``min gap ∧ min value`` of a spectrum; the gap term is omitted when there is none.

    Returns ``None`` for an empty spectrum.
    """
    if not values:
        return None
    return min([min(values), *spectral_gaps(values)])


# -- random generation ----------------------------------------------------------

def _rng(n: int, seed: int, profile: str) -> np.random.Generator:
    return np.random.default_rng([seed % 2**63, n, PROFILES.index(profile)])


def _random_shape(leaves: list[int], rng: np.random.Generator, profile: str):
    """Nested lists: an ``int`` is a leaf, a ``list`` an internal node (>= 2 children)."""
    if len(leaves) == 1:
        return leaves[0]
    size = len(leaves)
    if profile == "extremal":
        k = 2
    elif profile == "equilateral-biased" and rng.random() < 0.6:
        k = size
    else:
        k = int(rng.integers(2, min(4, size) + 1))
    cuts = sorted(rng.choice(np.arange(1, size), size=k - 1, replace=False).tolist())
    blocks = [leaves[a:b] for a, b in zip([0, *cuts], [*cuts, size])]
    return [_random_shape(block, rng, profile) for block in blocks]


def _height(node) -> int:
    if isinstance(node, int):
        return 0
    return 1 + max(_height(c) for c in node)


def _assign_labels(shape, rng: np.random.Generator, profile: str) -> dict[int, int]:
    """Integer label per internal node (keyed by ``id``), strictly decreasing downward."""
    labels: dict[int, int] = {}
    internal = []

    def preorder(node):
        if isinstance(node, list):
            internal.append(node)
            for c in node:
                preorder(c)

    preorder(shape)
    if profile == "extremal":
        m = len(internal)
        values = sorted(rng.choice(np.arange(1, 4 * m + 2), size=m, replace=False).tolist(), reverse=True)
        for node, v in zip(internal, values):
            labels[id(node)] = int(v)
        return labels

    spread = 3 if profile == "generic" else 1

    def assign(node, upper):
        if isinstance(node, int):
            return
        h = _height(node)
        if upper is None:
            value = h + int(rng.integers(0, spread + 1))
        else:
            value = int(rng.integers(h, upper))
        labels[id(node)] = value
        for c in node:
            assign(c, value)

    assign(shape, None)
    return labels


def random_space(n: int, seed: int = 0, profile: str = "generic") -> UltraSpace:
    """Random ultrametric space on ids ``p0 .. p{n-1}``, deterministic in ``(n, seed, profile)``.

    A random rooted tree with at least two children per internal node and
    labels strictly decreasing towards the leaves is drawn, and distances are
    read off as the label of the lowest common ancestor.  ``"extremal"``
    forces a strictly binary tree with pairwise distinct labels, so the
    result is in the class U; ``"generic"`` allows arity up to 4 and repeated
    labels; ``"equilateral-biased"`` favours flat, high-arity nodes.
    """
    if n < 1:
        raise UltrametricError("n must be positive")
    if profile not in PROFILES:
        raise UltrametricError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    ids = tuple(f"p{i}" for i in range(n))
    if n == 1:
        return UltraSpace(ids, ((Fraction(0),),))
    rng = _rng(n, seed, profile)
    leaves = rng.permutation(n).tolist()
    shape = _random_shape(leaves, rng, profile)
    labels = _assign_labels(shape, rng, profile)
    denom = int(rng.integers(1, 4))

    D = [[Fraction(0)] * n for _ in range(n)]

    def fill(node) -> list[int]:
        if isinstance(node, int):
            return [node]
        groups = [fill(c) for c in node]
        value = Fraction(labels[id(node)], denom)
        for a, b in combinations(range(len(groups)), 2):
            for i in groups[a]:
                for j in groups[b]:
                    D[i][j] = D[j][i] = value
        return [i for g in groups for i in g]

    fill(shape)
    return UltraSpace(ids, tuple(tuple(row) for row in D))
