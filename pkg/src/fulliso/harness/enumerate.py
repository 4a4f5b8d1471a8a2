"""Exhaustive enumeration of closed contractive types, smallest first.

Size counts every node, binders included, so ``mu a. Int -> a`` has size 4.
Types are built directly in nameless form, which makes the stream free of
alpha-duplicates without any canonicalization pass.  ``count_types_named``
is a deliberately naive second opinion used to check the census.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from ..kernel.syntax import INT, TOP, Arrow, Mu, TBound, contractive


@lru_cache(maxsize=None)
def _shapes(size: int, depth: int, with_top: bool) -> tuple:
    """All locally closed types of ``size`` under ``depth`` enclosing binders."""
    if size < 1:
        return ()
    if size == 1:
        leaves = [INT] + ([TOP] if with_top else [])
        return tuple(leaves + [TBound(i) for i in range(depth)])
    out = []
    for left in range(1, size - 1):
        for a in _shapes(left, depth, with_top):
            for b in _shapes(size - 1 - left, depth, with_top):
                out.append(Arrow(a, b))
    out += [Mu(b) for b in _shapes(size - 1, depth + 1, with_top)]
    return tuple(out)


def enumerate_types(max_size: int, with_top: bool = False, *, stats: dict | None = None) -> Iterator:
    """Closed contractive types of size ``<= max_size`` in size order.

    ``stats["rejected"]`` counts the non-contractive candidates filtered out.
    """
    rejected = 0
    for n in range(1, max_size + 1):
        for t in _shapes(n, 0, with_top):
            if contractive(t):
                yield t
            else:
                rejected += 1
        if stats is not None:
            stats["rejected"] = rejected


# ---------------------------------------------------------------- second opinion


def _named(size, bound, pool, with_top):
    """Named syntax trees as nested tuples; binders pick any pool name."""
    if size == 1:
        yield ("Int",)
        if with_top:
            yield ("Top",)
        for v in bound:
            yield ("var", v)
        return
    for left in range(1, size - 1):
        for a in _named(left, bound, pool, with_top):
            for b in _named(size - 1 - left, bound, pool, with_top):
                yield ("->", a, b)
    for v in pool:
        for body in _named(size - 1, bound | {v}, pool, with_top):
            yield ("mu", v, body)


def _canon(t, env=()):
    # binder position from the inside out, i.e. a de Bruijn index
    match t[0]:
        case "var":
            return ("var", env.index(t[1]))
        case "->":
            return ("->", _canon(t[1], env), _canon(t[2], env))
        case "mu":
            return ("mu", _canon(t[2], (t[1],) + env))
    return t


def _guarded(t):
    """Every binder is separated from its own occurrences by a constructor."""
    match t[0]:
        case "->":
            return _guarded(t[1]) and _guarded(t[2])
        case "mu":
            inner, shadow = t[2], set()
            while inner[0] == "mu":
                shadow.add(inner[1])
                inner = inner[2]
            if inner == ("var", t[1]) and t[1] not in shadow:
                return False
            return _guarded(t[2])
    return True


def count_types_named(max_size: int, with_top: bool = False) -> dict[int, int]:
    """Per-size counts by brute force over named trees, deduplicated by renaming."""
    counts = {}
    for n in range(1, max_size + 1):
        pool = [f"v{i}" for i in range(max(1, n - 1))]
        seen = set()
        for t in _named(n, frozenset(), pool, with_top):
            if _guarded(t):
                seen.add(_canon(t))
        counts[n] = len(seen)
    return counts


def count_types(max_size: int, with_top: bool = False) -> dict[int, int]:
    counts = {n: 0 for n in range(1, max_size + 1)}
    for t in enumerate_types(max_size, with_top):
        counts[_size(t)] += 1
    return counts


def _size(t):
    match t:
        case Arrow(a, b):
            return 1 + _size(a) + _size(b)
        case Mu(b):
            return 1 + _size(b)
    return 1


__all__ = ["enumerate_types", "count_types", "count_types_named"]
