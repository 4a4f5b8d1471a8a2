"""Equi-recursive type equality, decided by synthesizing a cast witness.

Both sides are head-normalized (leading ``mu`` binders unfolded), and arrow
pairs are recorded in an assumption table before their components are
compared; meeting a recorded pair again closes the cycle with the cast
variable it was given.  Every success returns a cast ``c`` with
``. ; . |- a ~> b : c``.
"""
from __future__ import annotations

import itertools

from .castcalc import reverse
from .errors import IllFormedType, NotContractive, NotEqual
from .kernel.pretty import show_type
from .kernel.syntax import (
    ID, Arrow, ArrowC, CVar, Fix, Mu, TInt, TTop, TVar, Unfold, cast_free_vars,
    contractive, is_closed, seq, unfold_type,
)


def head_normalize(t):
    """Unfold leading ``mu`` binders: returns ``(head, pre, post)``.

    ``pre`` casts ``t`` to ``head`` (a chain of unfolds, ``id`` when nothing
    was unfolded) and ``post`` is its reverse.
    """
    if not contractive(t):
        raise NotContractive(f"{show_type(t)} is not contractive")
    steps = []
    while isinstance(t, Mu):
        steps.append(Unfold(t))
        t = unfold_type(t)
    pre = seq(*steps)
    return t, pre, reverse(pre)


class _Synthesizer:
    def __init__(self):
        self.table: dict[tuple, str] = {}
        self.names = itertools.count(1)
        self.closed: dict[tuple, object] = {}
        self.peak = 0

    def cast(self, a, b):
        if a == b:
            return ID
        ha, pre, _ = head_normalize(a)
        hb, _, post = head_normalize(b)
        return seq(pre, self.heads(ha, hb), post)

    def heads(self, ha, hb):
        key = (ha, hb)
        if ha == hb:
            return ID
        if key in self.table:
            return CVar(self.table[key])
        if key in self.closed:
            return self.closed[key]
        match ha, hb:
            case (TInt(), TInt()) | (TTop(), TTop()):
                return ID
            case TVar(x), TVar(y) if x == y:
                return ID
            case Arrow(a1, a2), Arrow(b1, b2):
                name = f"i{next(self.names)}"
                self.table[key] = name
                self.peak = max(self.peak, len(self.table))
                try:
                    body = ArrowC(self.cast(a1, b1), self.cast(a2, b2))
                finally:
                    del self.table[key]
                out = Fix(name, body, key) if name in cast_free_vars(body) else body
                if not cast_free_vars(out):
                    self.closed[key] = out
                return out
        raise NotEqual(f"{show_type(ha)} and {show_type(hb)} differ at the head")


def synthesize_cast(a, b, *, allow_open: bool = False, stats: dict | None = None):
    """A cast from ``a`` to ``b``; raises :class:`NotEqual` when ``a`` and ``b`` differ."""
    if not allow_open and not (is_closed(a) and is_closed(b)):
        raise IllFormedType("equality is decided on closed types")
    for t in (a, b):
        if not contractive(t):
            raise NotContractive(f"{show_type(t)} is not contractive")
    s = _Synthesizer()
    try:
        return s.cast(a, b)
    finally:
        if stats is not None:
            stats["peak_assumptions"] = s.peak


def equal_e(a, b) -> bool:
    try:
        synthesize_cast(a, b)
    except NotEqual:
        return False
    return True
