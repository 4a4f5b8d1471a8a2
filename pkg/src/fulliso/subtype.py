"""Iso-recursive (Amber) subtyping, equi-recursive subtyping, and the bridge
between them: ``A <=e B`` iff ``A == C1 <=i C2 == B`` for some ``C1``, ``C2``.
"""
from __future__ import annotations

import itertools
from typing import Iterable

from .castcalc import type_of
from .elaborate import Elaborator, wrap
from .equiv import equal_e, synthesize_cast
from .errors import (
    ArgMismatch, ElaborationIncomplete, IllFormedType, NotContractive, SearchExhausted,
)
from .kernel.pretty import show_type
from .kernel.syntax import (
    Arrow, Mu, TBound, TInt, TTop, TVar, contractive, is_closed, open_type,
    unfold_type,
)

DEFAULT_DEPTH = 2

_fresh = itertools.count()


def sub_iso(sigma: Iterable[tuple[str, str]], a, b) -> bool:
    """``sigma |- a <=i b``; ``sigma`` pairs left variables with right ones."""
    return _sub_iso(frozenset(sigma), a, b)


def _sub_iso(sigma, a, b):
    match a, b:
        case _, TTop():
            return True
        case TInt(), TInt():
            return True
        case TVar(x), TVar(y):
            return (x, y) in sigma
        case Arrow(a1, a2), Arrow(b1, b2):
            return _sub_iso(sigma, b1, a1) and _sub_iso(sigma, a2, b2)
        case Mu(x), Mu(y):
            if a == b:
                return True
            n = next(_fresh)
            left, right = f"l#{n}", f"r#{n}"
            return _sub_iso(
                sigma | {(left, right)}, open_type(x, TVar(left)), open_type(y, TVar(right))
            )
    return False


def _require(a, b):
    for t in (a, b):
        if not is_closed(t):
            raise IllFormedType(f"{show_type(t)} is not closed")
        if not contractive(t):
            raise NotContractive(f"{show_type(t)} is not contractive")


def sub_equi(a, b) -> bool:
    """``a <=e b`` by the assumption-set algorithm on unfoldings."""
    _require(a, b)
    assumed = set()

    def go(a, b):
        if (a, b) in assumed:
            return True
        assumed.add((a, b))
        if isinstance(b, TTop):
            return True
        if isinstance(a, Mu):
            return go(unfold_type(a), b)
        if isinstance(b, Mu):
            return go(a, unfold_type(b))
        match a, b:
            case TInt(), TInt():
                return True
            case Arrow(a1, a2), Arrow(b1, b2):
                return go(b1, a1) and go(a2, b2)
        return False

    return go(a, b)


# ---------------------------------------------------------------- decomposition


def _shift(t, by, cutoff=0):
    match t:
        case TBound(i):
            return TBound(i + by) if i >= cutoff else t
        case Arrow(x, y):
            return Arrow(_shift(x, by, cutoff), _shift(y, by, cutoff))
        case Mu(body, hint):
            return Mu(_shift(body, by, cutoff + 1), hint)
    return t


def _replace_index(t, u, depth=0):
    """Replace the loose index ``depth`` of ``t`` by ``u`` (shifted under binders)."""
    match t:
        case TBound(i):
            return _shift(u, depth) if i == depth else t
        case Arrow(x, y):
            return Arrow(_replace_index(x, u, depth), _replace_index(y, u, depth))
        case Mu(body, hint):
            return Mu(_replace_index(body, u, depth + 1), hint)
    return t


def square(t: Mu) -> Mu:
    """``mu a. X`` to ``mu a. X[a := X]``; same infinite unfolding."""
    return Mu(_replace_index(t.body, t.body), t.hint)


def _rewrites(t):
    """Types one expansion away: unfold or square one closed ``mu`` subterm."""
    match t:
        case Mu(body, hint):
            if is_closed(t):
                yield unfold_type(t)
                yield square(t)
            for b in _rewrites(body):
                yield Mu(b, hint)
        case Arrow(x, y):
            for x2 in _rewrites(x):
                yield Arrow(x2, y)
            for y2 in _rewrites(y):
                yield Arrow(x, y2)


def expansions(t, depth: int) -> list[list]:
    """Candidates by number of rewrites: ``result[k]`` needs exactly ``k``."""
    levels, seen = [[t]], {t}
    for _ in range(depth):
        nxt = []
        for u in levels[-1]:
            for v in _rewrites(u):
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        levels.append(nxt)
    return levels


def decompose(a, b, depth: int = DEFAULT_DEPTH):
    """Find ``(C1, C2, cast_in, cast_out)`` with ``a == C1 <=i C2 == b``.

    Candidates come from at most ``depth`` expansions on each side; failure
    raises :class:`SearchExhausted`, which is not a refutation.
    """
    _require(a, b)
    if depth < 1:
        raise ValueError("depth must be positive")
    left, right = expansions(a, depth), expansions(b, depth)
    for total in range(2 * depth + 1):
        for i in range(max(0, total - depth), min(total, depth) + 1):
            for c1 in left[i]:
                for c2 in right[total - i]:
                    if sub_iso((), c1, c2):
                        return c1, c2, synthesize_cast(a, c1), synthesize_cast(c2, b)
    raise SearchExhausted(
        f"no decomposition of {show_type(a)} <= {show_type(b)} within depth {depth}", depth
    )


# ---------------------------------------------------------------- typing


def _subsume(a, b):
    return sub_iso((), a, b)


def type_of_sub(gamma, e):
    """Minimal type of ``e`` with subsumption by iso-recursive subtyping."""
    return type_of(gamma, e, allow_top=True, subsume=_subsume)


class SubElaborator(Elaborator):
    allow_top = True

    def __init__(self, depth: int = DEFAULT_DEPTH):
        self.depth = depth

    def coerce(self, e, have, want):
        if have == want or sub_iso((), have, want):
            return e
        if equal_e(have, want):
            return super().coerce(e, have, want)
        if not sub_equi(have, want):
            raise ArgMismatch(f"{show_type(have)} is not a subtype of {show_type(want)}")
        try:
            _, _, cast_in, cast_out = decompose(have, want, self.depth)
        except SearchExhausted as err:
            raise ElaborationIncomplete(str(err)) from err
        return wrap(cast_out, wrap(cast_in, e))


def infer_elab_sub(gamma, e, depth: int = DEFAULT_DEPTH):
    return SubElaborator(depth).infer(dict(gamma or {}), e)


def check_elab_sub(gamma, e, want, depth: int = DEFAULT_DEPTH):
    return SubElaborator(depth).check(dict(gamma or {}), e, want)


__all__ = [
    "sub_iso", "sub_equi", "decompose", "expansions", "square", "type_of_sub",
    "infer_elab_sub", "check_elab_sub", "SubElaborator",
]
