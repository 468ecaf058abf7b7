"""Orderers: turn a similarity matrix into a reading order.

All three maximize (or greedily chase) the same objective: the sum of
scores[perm[k]][perm[k+1]] over consecutive positions. Objectives are
accumulated left to right along the path everywhere, so the exact solvers
agree bit-for-bit on the maximum value.

Tie-breaking is fixed and documented: brute force returns the
lexicographically smallest maximizing permutation; the subset DP and the
greedy search prefer the smallest index at each choice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .similarity import SimilarityMatrix

BRUTE_FORCE_CAP = 9
DP_CAP = 20


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]
    objective: float
    orderer_tag: str


def path_objective(m: SimilarityMatrix, perm) -> float:
    """Sum of consecutive-pair scores along perm, accumulated left to right."""
    scores = m.scores
    total = 0.0
    for a, b in zip(perm, perm[1:]):
        total += scores[a][b]
    return float(total)


def brute_force_order(m: SimilarityMatrix, cap: int = BRUTE_FORCE_CAP) -> Ordering:
    """Exact search by enumerating all n! permutations.

    Returns the lexicographically smallest argmax. Refuses n above `cap`
    (default 9); use dp_order beyond that.
    """
    n = m.n
    if n > cap:
        raise ValueError(
            f"brute force caps at n={cap} (n! enumeration), got n={n}; use dp_order"
        )
    if n == 1:
        return Ordering(perm=(0,), objective=0.0, orderer_tag="brute-force")
    scores = [list(map(float, row)) for row in m.scores]
    best_perm = None
    best = -float("inf")
    for perm in itertools.permutations(range(n)):
        total = 0.0
        prev = perm[0]
        for cur in perm[1:]:
            total += scores[prev][cur]
            prev = cur
        # strict > keeps the first (lexicographically smallest) maximizer:
        # itertools.permutations yields in lexicographic order
        if total > best:
            best = total
            best_perm = perm
    return Ordering(perm=best_perm, objective=best, orderer_tag="brute-force")


def _popcounts(n_masks: int) -> np.ndarray:
    masks = np.arange(n_masks, dtype=np.uint32)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(masks)
    counts = masks & 1
    shifted = masks >> 1
    while shifted.any():
        counts = counts + (shifted & 1)
        shifted >>= 1
    return counts


def dp_order(m: SimilarityMatrix) -> Ordering:
    """Exact maximum-weight Hamiltonian path via subset dynamic programming.

    dp[mask][last] is the best objective over paths visiting exactly the
    sentences in `mask` and ending at `last`; O(n^2 * 2^n) time. The value
    accumulates along the path exactly like brute force, so the returned
    objective matches brute_force_order's bit-for-bit; the permutation is
    one member of the brute-force tie set, reconstructed choosing the
    smallest index at each step.
    """
    n = m.n
    if n > DP_CAP:
        raise ValueError(f"dp_order caps at n={DP_CAP} (2^n table), got n={n}")
    if n == 1:
        return Ordering(perm=(0,), objective=0.0, orderer_tag="dp")

    w = np.asarray(m.scores, dtype=np.float64)
    n_masks = 1 << n
    dp = np.full((n_masks, n), -np.inf, dtype=np.float64)
    parent = np.full((n_masks, n), -1, dtype=np.int8)
    for s in range(n):
        dp[1 << s, s] = 0.0

    by_layer: list[list[int]] = [[] for _ in range(n + 1)]
    for mask, k in enumerate(_popcounts(n_masks)):
        by_layer[k].append(mask)

    for k in range(2, n + 1):
        layer = np.asarray(by_layer[k], dtype=np.int64)
        for last in range(n):
            bit = 1 << last
            sel = layer[(layer & bit) != 0]
            if sel.size == 0:
                continue
            prev_masks = sel ^ bit
            # invalid prevs hold -inf in dp, so a plain row-max is safe;
            # argmax takes the first (smallest) index on ties
            cand = dp[prev_masks] + w[:, last]
            parent[sel, last] = np.argmax(cand, axis=1)
            dp[sel, last] = cand[np.arange(sel.size), parent[sel, last]]

    full = n_masks - 1
    last = int(np.argmax(dp[full]))
    objective = float(dp[full, last])

    rev_path = [last]
    mask = full
    while parent[mask, last] >= 0:
        prev = int(parent[mask, last])
        mask ^= 1 << last
        last = prev
        rev_path.append(last)
    return Ordering(perm=tuple(reversed(rev_path)), objective=objective, orderer_tag="dp")


def nearest_neighbor_order(m: SimilarityMatrix, start: int = 0) -> Ordering:
    """Greedy search: from `start`, repeatedly append the unvisited sentence
    most similar to the current one (smallest index on ties)."""
    n = m.n
    if not 0 <= start < n:
        raise ValueError(f"start must be in [0, {n}), got {start}")
    scores = m.scores
    perm = [start]
    visited = {start}
    while len(perm) < n:
        cur = perm[-1]
        best_j = -1
        best = -float("inf")
        for j in range(n):
            if j not in visited and scores[cur][j] > best:
                best = scores[cur][j]
                best_j = j
        perm.append(best_j)
        visited.add(best_j)
    return Ordering(
        perm=tuple(perm),
        objective=path_objective(m, perm),
        orderer_tag="nearest-neighbor",
    )
