"""Gromov-Hausdorff distance and perturbation of finite spaces into U.

For finite spaces the distance is computed as half the smallest distortion
of a correspondence.  :func:`perturb_to_u` moves every distance of a space
by less than ``eps`` and lands in U, so the GH distance to the input is
below ``eps / 2``.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import (
    UltraSpace,
    diameter,
    is_in_u,
    separation_scale,
    spectrum,
    to_fraction,
    validate_ultrametric,
)
from .errors import (
    EpsilonTooLarge,
    NonPositiveEpsilon,
    NotInU,
    SingletonSpace,
    UltrametricError,
    UnknownAnchor,
)
from .graphs import diametral_parts
from .io import fraction_str, space_to_dict
from .trees import Internal, Leaf, build_representing_tree, internal_nodes

DEFAULT_GH_CAP = 6
GH_CAP_ENV = "GOMORY_HU_GH_CAP"


def gh_cap() -> int:
    return int(os.environ.get(GH_CAP_ENV, DEFAULT_GH_CAP))


# -- correspondences ----------------------------------------------------------------

@dataclass(frozen=True)
class Correspondence:
    pairs: frozenset[tuple[str, str]]

    def covers(self, X: UltraSpace, Y: UltraSpace) -> bool:
        return {x for x, _ in self.pairs} == set(X.points) and {y for _, y in self.pairs} == set(Y.points)


def distortion(X: UltraSpace, Y: UltraSpace, R: Correspondence) -> Fraction:
    if not R.covers(X, Y):
        raise UltrametricError("relation does not cover both spaces")
    pairs = list(R.pairs)
    return max(abs(X.d(x, x2) - Y.d(y, y2)) for x, y in pairs for x2, y2 in pairs)


@dataclass(frozen=True)
class GHResult:
    value: Fraction
    exact: bool
    correspondence: Correspondence

    @property
    def status(self) -> str:
        return "exact" if self.exact else "upper-bound"

    def to_dict(self) -> dict:
        return {"distance": fraction_str(self.value), "status": self.status}


class _Budget(Exception):
    pass


def _integer_matrices(X: UltraSpace, Y: UltraSpace):
    denom = 1
    for M in (X.dist, Y.dist):
        for row in M:
            for v in row:
                denom = math.lcm(denom, v.denominator)
    A = [[int(v * denom) for v in row] for row in X.dist]
    B = [[int(v * denom) for v in row] for row in Y.dist]
    return A, B, denom


class _CorrespondenceSearch:
    """Decides whether some correspondence has distortion ``<= t``.

    Pairs ``(x, y)`` are bits ``x * m + y``.  A correspondence with
    distortion ``<= t`` is a set of pairwise compatible pairs covering every
    ``x`` and every ``y``; the search branches on the uncovered point with
    the fewest remaining candidate pairs.
    """

    def __init__(self, A, B):
        self.n, self.m = len(A), len(B)
        n, m = self.n, self.m
        self.P = n * m
        self.dis = [
            [abs(A[p // m][q // m] - B[p % m][q % m]) for q in range(self.P)] for p in range(self.P)
        ]
        self.row = [sum(1 << (x * m + y) for y in range(m)) for x in range(n)]
        self.col = [sum(1 << (x * m + y) for x in range(n)) for y in range(m)]

    def candidates(self) -> list[int]:
        return sorted({v for row in self.dis for v in row})

    def feasible(self, t: int, budget: int | None = None):
        compat = [sum(1 << q for q, v in enumerate(row) if v <= t) for row in self.dis]
        full_x, full_y = (1 << self.n) - 1, (1 << self.m) - 1
        failed = set()
        nodes = 0

        def search(allowed, cov_x, cov_y, chosen):
            nonlocal nodes
            nodes += 1
            if budget is not None and nodes > budget:
                raise _Budget
            if cov_x == full_x and cov_y == full_y:
                return chosen
            state = (allowed, cov_x, cov_y)
            if state in failed:
                return None
            best = None
            for x in range(self.n):
                if not cov_x >> x & 1:
                    opts = allowed & self.row[x]
                    if best is None or opts.bit_count() < best.bit_count():
                        best = opts
            for y in range(self.m):
                if not cov_y >> y & 1:
                    opts = allowed & self.col[y]
                    if best is None or opts.bit_count() < best.bit_count():
                        best = opts
            while best:
                low = best & -best
                p = low.bit_length() - 1
                best ^= low
                found = search(
                    allowed & compat[p],
                    cov_x | 1 << (p // self.m),
                    cov_y | 1 << (p % self.m),
                    chosen + [p],
                )
                if found is not None:
                    return found
            failed.add(state)
            return None

        return search((1 << self.P) - 1, 0, 0, [])


def gh_distance(X: UltraSpace, Y: UltraSpace, cap: int | None = None, budget: int = 20000) -> GHResult:
    """Gromov-Hausdorff distance between two finite spaces.

    Exact when both spaces have at most ``cap`` points (default 6, or the
    ``GOMORY_HU_GH_CAP`` environment variable): a binary search over the
    finitely many candidate distortion values, each probe an exhaustive
    pruned search for a correspondence.  Above the cap each probe gets a
    node budget and the result is the best correspondence found, returned as
    an upper bound with ``exact=False``.
    """
    cap = gh_cap() if cap is None else cap
    exact = len(X) <= cap and len(Y) <= cap
    A, B, denom = _integer_matrices(X, Y)
    search = _CorrespondenceSearch(A, B)
    cands = search.candidates()

    m = search.m
    best_t = cands[-1]
    best_pairs = list(range(search.P))
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        try:
            found = search.feasible(cands[mid], None if exact else budget)
        except _Budget:
            found = None
        if found is None:
            lo = mid + 1
        else:
            hi = mid
            best_t, best_pairs = cands[mid], found
    R = Correspondence(frozenset((X.points[p // m], Y.points[p % m]) for p in best_pairs))
    return GHResult(Fraction(best_t, 2 * denom), exact, R)


# -- spectrum separation ------------------------------------------------------------

def _separation_map(values, forbidden, eps) -> tuple[Fraction, dict]:
    """``Delta`` and the strictly increasing map moving ``values`` off ``forbidden``.

    Each ``r`` goes to the first of ``r - Delta * j / (m + 2)``,
    ``j = 1 .. m + 1``, not in ``forbidden`` (``m = |forbidden|``).
    """
    forbidden = set(forbidden)
    delta = min(separation_scale(values), eps / 4)
    m = len(forbidden)
    f = {}
    for r in values:
        for j in range(1, m + 2):
            cand = r - delta * Fraction(j, m + 2)
            if cand not in forbidden:
                f[r] = cand
                break
    return delta, f


def spectrum_separation(X1: UltraSpace, forbidden, eps) -> UltraSpace:
    """Re-metrize ``X1`` (in U) so that its spectrum avoids ``forbidden``.

    Every distance moves down by less than ``min gap ∧ min value ∧ eps/4``
    and the order of distances is kept, so the result stays in U.  When the
    spectrum already avoids ``forbidden`` the space is returned unchanged.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise NonPositiveEpsilon("eps must be positive")
    if not is_in_u(X1):
        raise NotInU("spectrum separation needs a space in U")
    values = spectrum(X1)
    forbidden = {to_fraction(v) for v in forbidden}
    if not set(values) & forbidden:
        return X1
    _, f = _separation_map(values, forbidden, eps)
    return X1.transformed(f.__getitem__)


# -- perturbation into U ----------------------------------------------------------------

@dataclass
class PerturbationReport:
    source: UltraSpace
    output: UltraSpace
    sup_deviation: Fraction
    epsilon: Fraction
    steps: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "epsilon": fraction_str(self.epsilon),
            "sup_deviation": fraction_str(self.sup_deviation),
            "in_U": is_in_u(self.output),
            "output": space_to_dict(self.output),
            "steps": self.steps,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _assemble(X: UltraSpace, parts: list[UltraSpace], across: Fraction) -> UltraSpace:
    where = {p: k for k, part in enumerate(parts) for p in part.points}
    n = len(X)
    rows = []
    for i in range(n):
        a = X.points[i]
        row = []
        for j in range(n):
            b = X.points[j]
            if i == j:
                row.append(Fraction(0))
            elif where[a] == where[b]:
                row.append(parts[where[a]].d(a, b))
            else:
                row.append(across)
        rows.append(tuple(row))
    return UltraSpace(X.points, tuple(rows))


def _merge_parts(X: UltraSpace, parts, eps: Fraction, steps: list) -> tuple[UltraSpace, list]:
    """Collapse ``k >= 3`` diametral parts to two by lowering the diameter inside the tail."""
    diam, _ = diameter(X)
    below = [v for v in spectrum(X) if v != diam]
    r = max(below) if below else Fraction(0)
    d_prime = max((r + diam) / 2, diam - eps / 2)
    head = parts[0]
    tail = frozenset().union(*parts[1:])
    n = len(X)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            v = X.dist[i][j]
            if v == diam and X.points[i] in tail and X.points[j] in tail:
                v = d_prime
            row.append(v)
        rows.append(tuple(row))
    steps.append(
        {
            "points": sorted(X.points),
            "case": "k>=3",
            "k": len(parts),
            "eps": fraction_str(eps),
            "r": fraction_str(r),
            "d_prime": fraction_str(d_prime),
            "head": sorted(head),
        }
    )
    merged = UltraSpace(X.points, tuple(rows))
    return merged, list(diametral_parts(merged))


def _perturb(X: UltraSpace, eps: Fraction, steps: list) -> UltraSpace:
    if len(X) <= 2:
        return X
    parts = list(diametral_parts(X))
    if len(parts) >= 3:
        X, parts = _merge_parts(X, parts, eps, steps)
    diam, _ = diameter(X)
    eps_used = min(eps, separation_scale(spectrum(X)) / 2)
    P1, P2 = (X.subspace(p) for p in parts)
    rho1 = _perturb(P1, eps_used / 4, steps)
    rho2 = _perturb(P2, eps_used / 4, steps)
    step = {
        "points": sorted(X.points),
        "case": "k=2",
        "eps": fraction_str(eps),
        "eps_used": fraction_str(eps_used),
        "parts": [sorted(p) for p in parts],
    }
    clash = set(spectrum(rho1)) & set(spectrum(rho2))
    if clash:
        delta, f = _separation_map(spectrum(rho1), spectrum(rho2), eps_used)
        rho1 = rho1.transformed(f.__getitem__)
        step["delta"] = fraction_str(delta)
        step["f"] = {fraction_str(k): fraction_str(v) for k, v in f.items()}
    steps.append(step)
    return _assemble(X, [rho1, rho2], diam)


def sup_deviation(X: UltraSpace, Y: UltraSpace) -> Fraction:
    """``max |d_X(x, y) - d_Y(x, y)|`` for two metrics on the same point set."""
    if set(X.points) != set(Y.points):
        raise UltrametricError("spaces must share their point set")
    if len(X) == 1:
        return Fraction(0)
    return max(abs(X.dist[i][j] - Y.d(X.points[i], X.points[j])) for i, j in X.pairs())


def perturb_to_u(X: UltraSpace, eps) -> PerturbationReport:
    """A metric in U on the same points, every distance moved by less than ``eps``.

    Recursive on the diametral decomposition.  With three or more parts the
    diameter inside all parts but the first is lowered to a value ``d'``
    within ``eps/2``, leaving two parts.  With two parts, both are perturbed
    recursively with budget ``eps'/4``, where ``eps'`` is ``eps`` shrunk to at
    most half of ``min gap ∧ min distance``; if the two new spectra meet, the
    first part is re-metrized by :func:`spectrum_separation`.  Cross-part
    distances stay at the diameter.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise NonPositiveEpsilon("eps must be positive")
    steps: list[dict] = []
    out = _perturb(X, eps, steps)
    return PerturbationReport(X, out, sup_deviation(X, out), eps, steps)


# -- stability radius and inflation ------------------------------------------------------

def stability_radius(X: UltraSpace) -> Fraction:
    """``(min gap ∧ min distance) / 4`` for a space in U; the gap term is dropped if absent."""
    if len(X) < 2:
        raise SingletonSpace("stability radius needs at least two points")
    if not is_in_u(X):
        raise NotInU("stability radius is defined for spaces in U")
    return separation_scale(spectrum(X)) / 4


def _fresh_ids(existing, anchor: str, m: int) -> list[str]:
    taken = set(existing)
    out = []
    i = 1
    while len(out) < m:
        cand = f"{anchor}~{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out


def inflate_point(Y: UltraSpace, eps, m: int, anchor: str) -> UltraSpace:
    """Add ``m`` clones of ``anchor`` at mutual distance ``eps/2``.

    Clones sit at distance ``eps/2`` from the anchor and at the anchor's
    distance from every other point.  Requires ``eps`` below the smallest
    distance of ``Y``.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise NonPositiveEpsilon("eps must be positive")
    if m < 1:
        raise UltrametricError("m must be positive")
    if anchor not in Y.index:
        raise UnknownAnchor(f"{anchor!r} is not a point of the space")
    if len(Y) > 1 and eps >= min(Y.off_diagonal()):
        raise EpsilonTooLarge("eps must be smaller than every distance of the space")
    new = _fresh_ids(Y.points, anchor, m)
    points = list(Y.points) + new
    clones = {anchor, *new}
    half = eps / 2
    rows = []
    for a in points:
        row = []
        for b in points:
            if a == b:
                row.append(Fraction(0))
            elif a in clones and b in clones:
                row.append(half)
            else:
                row.append(Y.d(anchor if a in clones else a, anchor if b in clones else b))
        rows.append(row)
    return validate_ultrametric(rows, points)


def nearby_extremal(Y: UltraSpace, n: int, eps) -> UltraSpace:
    """A space in U with exactly ``n`` points within GH distance ``eps`` of ``Y``.

    Points are first added by inflating ``Y``'s first point, then the
    result is perturbed into U.
    """
    eps = to_fraction(eps)
    if eps <= 0:
        raise NonPositiveEpsilon("eps must be positive")
    if len(Y) > n:
        raise UltrametricError(f"space already has more than {n} points")
    Z = Y
    if len(Y) < n:
        eps1 = eps if len(Y) == 1 else min(eps, min(Y.off_diagonal()) / 2)
        Z = inflate_point(Y, eps1, n - len(Y), Y.points[0])
    return perturb_to_u(Z, eps / 2).output


# -- neighbours for stability experiments ------------------------------------------------

def path_max_space(T, labels: dict[int, Fraction]) -> UltraSpace:
    """Space read off a tree by taking the largest label on each leaf-to-leaf path.

    ``labels`` maps ``id(node)`` of internal nodes to positive values; they
    need not decrease towards the leaves.
    """
    chains: dict[str, list] = {}

    def walk(node, chain):
        if isinstance(node, Leaf):
            chains[node.point] = chain
            return
        for c in node.children:
            walk(c, chain + [node])

    walk(T, [])
    points = sorted(chains)
    rows = []
    for a in points:
        row = []
        for b in points:
            if a == b:
                row.append(Fraction(0))
                continue
            ca, cb = chains[a], chains[b]
            k = 0
            while k < min(len(ca), len(cb)) and ca[k] is cb[k]:
                k += 1
            row.append(max(labels[id(v)] for v in ca[k - 1 :] + cb[k:]))
        rows.append(row)
    return validate_ultrametric(rows, points)


def sample_neighbors(X: UltraSpace, count: int, seed: int = 0, scale=None) -> list[UltraSpace]:
    """Ultrametric spaces near ``X`` with at most ``|X|`` points.

    Internal labels of the representing tree are shifted by random rational
    offsets of size up to a random multiple of ``scale`` (default: the
    stability radius when ``X`` is in U) and distances are read by path max.
    Some samples also drop a point, tie two labels, or splice a child into
    its parent, so both members and non-members of U appear.
    """
    rng = np.random.default_rng([seed % 2**63, len(X)])
    T = build_representing_tree(X)
    nodes = internal_nodes(T)
    if scale is None:
        scale = stability_radius(X) if len(X) >= 2 and is_in_u(X) else Fraction(1, 10)
    scale = to_fraction(scale)
    out = []
    attempts = 0
    while len(out) < count and attempts < 20 * count:
        attempts += 1
        if not nodes:
            out.append(X)
            continue
        mult = Fraction([1, 1, 1, 2, 4, 8][int(rng.integers(0, 6))], 2 ** int(rng.integers(0, 4)))
        labels = {}
        for v in nodes:
            offset = Fraction(int(rng.integers(-999, 1000)), 1000) * scale * mult
            labels[id(v)] = v.label + offset
        mode = rng.random()
        tree = T
        if mode < 0.15 and len(nodes) >= 2:
            a, b = rng.choice(len(nodes), size=2, replace=False)
            labels[id(nodes[a])] = labels[id(nodes[b])]
        elif mode < 0.25:
            tree = _splice(T, nodes[int(rng.integers(0, len(nodes)))])
            nodes_now = internal_nodes(tree)
            labels = {id(v): v.label + Fraction(int(rng.integers(-999, 1000)), 1000) * scale * mult for v in nodes_now}
        if any(v <= 0 for v in labels.values()):
            continue
        Y = path_max_space(tree, labels)
        if len(Y) >= 2 and rng.random() < 0.2:
            drop = Y.points[int(rng.integers(0, len(Y)))]
            Y = Y.subspace([p for p in Y.points if p != drop])
        out.append(Y)
    return out


def _splice(T, target):
    """Copy of ``T`` with ``target``'s first internal child merged into ``target``."""
    if isinstance(T, Leaf):
        return T
    kids = tuple(_splice(c, target) for c in T.children)
    if T is target:
        for i, c in enumerate(T.children):
            if isinstance(c, Internal):
                spliced = kids[:i] + kids[i].children + kids[i + 1 :]
                return Internal(T.label, spliced)
    return Internal(T.label, kids)


__all__ = [
    "Correspondence",
    "GHResult",
    "PerturbationReport",
    "distortion",
    "gh_distance",
    "inflate_point",
    "nearby_extremal",
    "path_max_space",
    "perturb_to_u",
    "sample_neighbors",
    "spectrum_separation",
    "stability_radius",
    "sup_deviation",
]
