"""Counts of strictly binary rooted trees and realisation of trees as spaces.

``otter_count(k)`` is the number of non-isomorphic strictly binary rooted
trees with ``k + 1`` leaves (Wedderburn-Etherington numbers shifted by
one), which is also the number of tree shapes realised by spaces in U with
``k + 1`` points.
"""

from __future__ import annotations

import csv
import io
import os
import threading
from fractions import Fraction
from itertools import combinations

from .core import UltraSpace
from .errors import CapExceeded, MalformedCode, NotStrictlyBinary
from .trees import code_key

DEFAULT_ENUM_CAP = 16
ENUM_CAP_ENV = "GOMORY_HU_ENUM_CAP"

_counts: dict[int, int] = {0: 1}
_counts_lock = threading.Lock()


def otter_count(k: int) -> int:
    """``B_k`` from the recurrence, with ``B_0 = 1`` (the one-node tree)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    with _counts_lock:
        for m in range(len(_counts), k + 1):
            i = m // 2
            total = sum(_counts[m - j - 1] * _counts[j] for j in range(i))
            if m % 2:
                total += _counts[i] * (_counts[i] + 1) // 2
            _counts[m] = total
        return _counts[k]


def count_table(k_max: int) -> dict[int, int]:
    return {k: otter_count(k) for k in range(1, k_max + 1)}


def count_table_csv(k_max: int) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["k", "B_k"])
    for k, b in count_table(k_max).items():
        writer.writerow([k, b])
    return out.getvalue()


def enum_cap() -> int:
    return int(os.environ.get(ENUM_CAP_ENV, DEFAULT_ENUM_CAP))


def _join(a: str, b: str) -> str:
    lo, hi = sorted((a, b), key=code_key)
    return "(" + lo + hi + ")"


def enumerate_sb_trees(n_leaves: int, cap: int | None = None) -> list[str]:
    """Canonical codes of all strictly binary rooted trees with ``n_leaves`` leaves.

    Built from unordered splits ``(s, n - s)`` with ``s <= n - s``; for the
    symmetric split only unordered pairs of subtrees are taken.
    """
    cap = enum_cap() if cap is None else cap
    if n_leaves < 1:
        raise ValueError("n_leaves must be positive")
    if n_leaves > cap:
        raise CapExceeded(f"{n_leaves} leaves exceeds the enumeration cap {cap}")
    by_size: dict[int, list[str]] = {1: ["()"]}
    for n in range(2, n_leaves + 1):
        codes = set()
        for s in range(1, n // 2 + 1):
            left, right = by_size[s], by_size[n - s]
            if s == n - s:
                pairs = [(a, a) for a in left] + list(combinations(left, 2))
            else:
                pairs = [(a, b) for a in left for b in right]
            codes.update(_join(a, b) for a, b in pairs)
        by_size[n] = sorted(codes, key=code_key)
    return by_size[n_leaves]


# -- parsing and realisation ------------------------------------------------------

def parse_code(code: str):
    """Nested tuples for a parenthesis code: ``()`` is a leaf, ``(c1 c2 ...)`` internal."""
    if not code or any(ch not in "()" for ch in code):
        raise MalformedCode(f"code must be a nonempty string over '(' and ')': {code!r}")
    stack: list[list] = []
    root = None
    for pos, ch in enumerate(code):
        if ch == "(":
            stack.append([])
        else:
            if not stack:
                raise MalformedCode(f"unbalanced ')' at position {pos}")
            node = tuple(stack.pop())
            if stack:
                stack[-1].append(node)
            elif pos != len(code) - 1:
                raise MalformedCode("trailing characters after the root")
            else:
                root = node
    if stack or root is None:
        raise MalformedCode("unbalanced '('")
    return root


def _canonical(node) -> str:
    return "(" + "".join(sorted((_canonical(c) for c in node), key=code_key)) + ")"


def canonicalize(code: str) -> str:
    return _canonical(parse_code(code))


def _check_binary(node) -> None:
    if node and len(node) != 2:
        raise NotStrictlyBinary(f"a node has {len(node)} children")
    for c in node:
        _check_binary(c)


def realize_space_from_tree(code: str, scheme: str = "halving") -> UltraSpace:
    """A space in U whose representing tree has shape ``code``.

    Labels strictly decrease from the root and are pairwise distinct.
    ``"halving"``: root 1, an internal child at canonical position ``i``
    gets ``parent * (1/2) * (1 + i/4)``; a label already in use is shrunk by
    factors ``1 - 2**-t`` until it is fresh, which keeps it below its parent.
    ``"preorder"``: the ``j``-th internal node in preorder gets ``(m - j)/m``.
    Leaves are named ``p0, p1, ...`` in preorder.
    """
    root = parse_code(code)
    _check_binary(root)

    def canon(node):
        return tuple(sorted((canon(c) for c in node), key=lambda c: code_key(_canonical(c))))

    root = canon(root)
    labels: dict[int, Fraction] = {}
    internal = []

    def collect(node):
        if node:
            internal.append(node)
            for c in node:
                collect(c)

    collect(root)

    if scheme == "preorder":
        m = len(internal)
        for j, node in enumerate(internal):
            labels[id(node)] = Fraction(m - j, m)
    elif scheme == "halving":
        used: set[Fraction] = set()

        def assign(node, value):
            t = 10
            while value in used:
                value = value * (1 - Fraction(1, 2**t))
                t += 1
            used.add(value)
            labels[id(node)] = value
            for i, c in enumerate(node):
                if c:
                    assign(c, value * Fraction(1, 2) * (1 + Fraction(i, 4)))

        if root:
            assign(root, Fraction(1))
    else:
        raise ValueError(f"unknown label scheme {scheme!r}")

    leaves: list[tuple] = []
    D: dict[tuple[int, int], Fraction] = {}

    def fill(node) -> list[int]:
        if not node:
            leaves.append(node)
            return [len(leaves) - 1]
        groups = [fill(c) for c in node]
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                for i in groups[a]:
                    for j in groups[b]:
                        D[i, j] = D[j, i] = labels[id(node)]
        return [i for g in groups for i in g]

    fill(root)
    n = len(leaves)
    return UltraSpace(
        tuple(f"p{i}" for i in range(n)),
        tuple(tuple(D.get((i, j), Fraction(0)) for j in range(n)) for i in range(n)),
    )
