"""Exhaustive, pruned enumeration of type signatures with a given global dimension.

Every type ``(1,n1;d2,n2;...)`` of dimension ``N`` corresponds to a choice of
distinct dims ``d >= 2`` and positive counts with ``sum(n*d*d) <= N - 1``; the
unit count absorbs the remainder.  The search walks dims in increasing order
and never extends a branch whose cheapest completion already overshoots.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import chain
from typing import Iterator, Sequence

from .typespace import Row, TypeSignature


@dataclass
class SearchStats:
    """Instrumentation counters for one search."""

    nodes: int = 0
    extensions: int = 0
    overshoot_extensions: int = 0
    emitted: int = 0


def default_max_dim(n: int) -> int:
    return math.isqrt(n - 1) if n > 1 else 1


def _check_dim(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"global dimension must be a positive integer, got {n!r}")


def _dim_vectors(budget: int, dims: Sequence[int], k: int, start: int = 0) -> Iterator[tuple[int, ...]]:
    # Strictly increasing k-tuples from dims[start:] with sum of squares <= budget,
    # in lexicographic order.  dims must be sorted ascending.
    if k == 0:
        yield ()
        return
    for i in range(start, len(dims) - k + 1):
        d = dims[i]
        # cheapest completion uses the next k-1 dims once each
        tail = sum(e * e for e in dims[i + 1 : i + k])
        if d * d + tail > budget:
            break
        for rest in _dim_vectors(budget - d * d, dims, k - 1, i + 1):
            yield (d,) + rest


def _count_vectors(budget: int, dims: tuple[int, ...], stats: SearchStats) -> list[tuple[int, ...]]:
    squares = [d * d for d in dims]
    # tails[i]: minimal cost of rows i.. (each count 1)
    tails = [0] * (len(dims) + 1)
    for i in range(len(dims) - 1, -1, -1):
        tails[i] = tails[i + 1] + squares[i]
    out: list[tuple[int, ...]] = []
    counts = [0] * len(dims)

    def rec(i: int, used: int) -> None:
        stats.nodes += 1
        if i == len(dims):
            out.append(tuple(counts))
            return
        sq = squares[i]
        top = (budget - used - tails[i + 1]) // sq
        for c in range(top, 0, -1):
            stats.extensions += 1
            if used + c * sq + tails[i + 1] > budget:
                stats.overshoot_extensions += 1
            counts[i] = c
            rec(i + 1, used + c * sq)

    rec(0, 0)
    return out


def iter_raw(
    n: int,
    include_pointed: bool = False,
    max_dim: int | None = None,
    stats: SearchStats | None = None,
) -> Iterator[TypeSignature]:
    """Yield every type of global dimension ``n`` in canonical order, lazily."""
    _check_dim(n)
    stats = stats if stats is not None else SearchStats()
    if include_pointed:
        stats.emitted += 1
        yield TypeSignature._trusted(((1, n),), n)
    budget = n - 1
    top = default_max_dim(n) if max_dim is None else min(max_dim, default_max_dim(n))
    dims = list(range(2, top + 1))
    k = 1
    while sum(d * d for d in dims[:k]) <= budget and k <= len(dims):
        for dvec in _dim_vectors(budget, dims, k):
            squares = [d * d for d in dvec]
            found = _count_vectors(budget, dvec, stats)
            # unit count descending, then the remaining counts descending
            found.sort(key=lambda cv: (sum(c * s for c, s in zip(cv, squares)), tuple(-c for c in cv)))
            for cv in found:
                used = sum(c * s for c, s in zip(cv, squares))
                stats.emitted += 1
                yield TypeSignature._trusted(((1, n - used),) + tuple(zip(dvec, cv)), n)
        k += 1


def _partition_rows(n: int, first: Row, top: int) -> list[tuple[Row, ...]]:
    # All non-unit row tuples whose first row is exactly `first`.
    d2, n2 = first
    budget = n - 1 - n2 * d2 * d2
    out: list[tuple[Row, ...]] = []
    rows: list[Row] = [first]

    def rec(lo: int, left: int) -> None:
        out.append(tuple(rows))
        for d in range(lo, top + 1):
            sq = d * d
            if sq > left:
                break
            for c in range(left // sq, 0, -1):
                rows.append((d, c))
                rec(d + 1, left - c * sq)
                rows.pop()

    rec(d2 + 1, budget)
    return out


def _partition_task(args: tuple[int, list[Row], int]) -> list[tuple[Row, ...]]:
    n, firsts, top = args
    return list(chain.from_iterable(_partition_rows(n, f, top) for f in firsts))


def enumerate_raw(
    n: int,
    include_pointed: bool = False,
    max_dim: int | None = None,
    workers: int = 1,
) -> list[TypeSignature]:
    """All types of global dimension ``n`` in canonical order.

    With ``workers > 1`` the search is split on the first non-unit row and run
    in a process pool; the merge re-sorts, so output is identical for any
    worker count.
    """
    _check_dim(n)
    if workers <= 1:
        return list(iter_raw(n, include_pointed, max_dim))
    top = default_max_dim(n) if max_dim is None else min(max_dim, default_max_dim(n))
    firsts = [(d, c) for d in range(2, top + 1) for c in range(1, (n - 1) // (d * d) + 1)]
    chunks = [firsts[i::workers] for i in range(workers)]
    sigs: list[TypeSignature] = []
    if include_pointed:
        sigs.append(TypeSignature._trusted(((1, n),), n))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_partition_task, [(n, ch, top) for ch in chunks if ch]):
            for rows in part:
                used = sum(c * d * d for d, c in rows)
                sigs.append(TypeSignature._trusted(((1, n - used),) + rows, n))
    sigs.sort(key=TypeSignature.sort_key)
    return sigs


def coin_counts(limit: int, coins: Sequence[int]) -> list[int]:
    """``ways[r]`` = number of tuples ``(k_c) >= 0`` with ``sum(k_c * c) == r``.

    Coins are distinguished by position, so equal values count separately.
    """
    ways = [0] * (limit + 1)
    ways[0] = 1
    for c in coins:
        for r in range(c, limit + 1):
            ways[r] += ways[r - c]
    return ways


def count_raw(n: int, max_dim: int | None = None) -> int:
    """Number of types of dimension ``n`` including the pointed one, without
    materializing them."""
    _check_dim(n)
    top = default_max_dim(n) if max_dim is None else min(max_dim, default_max_dim(n))
    ways = coin_counts(n - 1, [d * d for d in range(2, top + 1)])
    return sum(ways)


def iter_exact_rows(
    target: int,
    dims: Sequence[int],
    steps: Sequence[int],
    stats: SearchStats | None = None,
) -> Iterator[tuple[Row, ...]]:
    """Non-unit row tuples over ``dims`` whose weighted square sum is exactly
    ``target``; the count for ``dims[i]`` must be a positive multiple of
    ``steps[i]``.  Dead branches are cut with a suffix reachability table."""
    stats = stats if stats is not None else SearchStats()
    coins = [s * d * d for d, s in zip(dims, steps)]
    m = len(coins)
    reach = [[False] * (target + 1) for _ in range(m + 1)]
    reach[m][0] = True
    for i in range(m - 1, -1, -1):
        nxt, cur, c = reach[i + 1], reach[i], coins[i]
        for r in range(target + 1):
            cur[r] = nxt[r] or (r >= c and cur[r - c])
    rows: list[Row] = []

    def rec(i: int, left: int) -> Iterator[tuple[Row, ...]]:
        stats.nodes += 1
        if left == 0:
            stats.emitted += 1
            yield tuple(rows)
            return
        for j in range(i, m):
            c = coins[j]
            if c > left:
                continue
            for k in range(left // c, 0, -1):
                rest = left - k * c
                if not reach[j + 1][rest]:
                    continue
                stats.extensions += 1
                if rest < 0:
                    stats.overshoot_extensions += 1
                rows.append((dims[j], k * steps[j]))
                yield from rec(j + 1, rest)
                rows.pop()

    if target > 0 and reach[0][target]:
        yield from rec(0, target)
