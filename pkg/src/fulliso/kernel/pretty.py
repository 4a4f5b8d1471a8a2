"""Printing in the concrete grammar with minimal parentheses.

A construct whose body runs to the right (``mu``, ``fix``, ``\\x``) is left
bare only in *tail* position, i.e. when nothing of the enclosing phrase
follows it.
"""
from __future__ import annotations

from .syntax import (
    Abs, App, Arrow, ArrowC, CastApp, CId, CVar, Fix, Fold, IntLit, Meta, Mu,
    Seq, TBound, TInt, TTop, TVar, Unfold, Var, fresh_name, free_type_vars,
)


def show_type(t, env=None, avoid=None) -> str:
    """``env`` lists the names of enclosing binders, innermost last."""
    env = list(env or ())
    if avoid is None:
        avoid = free_type_vars(t)
    return _ty(t, env, set(avoid), left=False)


def _ty(t, env, avoid, left):
    match t:
        case TInt():
            return "Int"
        case TTop():
            return "Top"
        case TVar(n):
            return n
        case TBound(i):
            if i < len(env):
                return env[-1 - i]
            return f"<bound {i}>"
        case Meta(i):
            return f"?{i}"
        case Arrow(a, b):
            s = f"{_ty(a, env, avoid, left=True)} -> {_ty(b, env, avoid, left=False)}"
            return f"({s})" if left else s
        case Mu(body, hint):
            name = fresh_name(hint, avoid | set(env))
            s = f"mu {name}. {_ty(body, env + [name], avoid, left=False)}"
            return f"({s})" if left else s
    raise TypeError(f"not a type: {t!r}")


def show_cast(c, annotations: bool = False) -> str:
    return _cast(c, 0, True, annotations)


def _cast(c, prec, tail, ann):
    match c:
        case CId():
            return "id"
        case CVar(n):
            return n
        case Fold(t):
            return f"fold[{show_type(t)}]"
        case Unfold(t):
            return f"unfold[{show_type(t)}]"
        case Seq(a, b):
            s = f"{_cast(a, 0, False, ann)} ; {_cast(b, 1, tail or prec > 0, ann)}"
            return f"({s})" if prec > 0 else s
        case ArrowC(a, b):
            s = f"{_cast(a, 2, False, ann)} -> {_cast(b, 1, tail or prec > 1, ann)}"
            return f"({s})" if prec > 1 else s
        case Fix(n, body, declared):
            head = f"fix {n}"
            if ann and declared is not None:
                head += f" : {show_type(declared[0])} => {show_type(declared[1])} "
            s = f"{head}. {_cast(body, 0, True, ann)}"
            return s if tail else f"({s})"
    raise TypeError(f"not a cast: {c!r}")


def show_term(e, annotations: bool = False) -> str:
    return _term(e, 0, True, annotations)


def _term(e, prec, tail, ann):
    match e:
        case Var(n):
            return n
        case IntLit(v):
            return str(v)
        case CastApp(c, body):
            return f"cast<{show_cast(c, ann)}>({_term(body, 0, True, ann)})"
        case App(f, a):
            s = f"{_term(f, 1, False, ann)} {_term(a, 2, tail or prec > 1, ann)}"
            return f"({s})" if prec > 1 else s
        case Abs(x, t, body):
            s = f"\\{x}: {show_type(t)}. {_term(body, 0, True, ann)}"
            return s if tail else f"({s})"
    raise TypeError(f"not a term: {e!r}")
