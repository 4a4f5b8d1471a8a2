"""Abstract syntax for types, casts and terms.

Types are locally nameless: free type variables carry names, variables bound
by ``mu`` are de Bruijn indices.  A ``Mu`` node remembers the name it was
written with, but only for printing; it takes no part in equality, so
``==`` on types *is* alpha-equivalence and types can key dictionaries.

Term variables and cast variables stay named; their substitutions rename
binders when needed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union


# ---------------------------------------------------------------- types


@dataclass(frozen=True, slots=True)
class TInt:
    def __repr__(self):
        return "Int"


@dataclass(frozen=True, slots=True)
class TTop:
    def __repr__(self):
        return "Top"


@dataclass(frozen=True, slots=True)
class TVar:
    name: str


@dataclass(frozen=True, slots=True)
class TBound:
    index: int


@dataclass(frozen=True, slots=True)
class Arrow:
    dom: "Type"
    cod: "Type"


@dataclass(frozen=True, slots=True)
class Mu:
    body: "Type"
    hint: str = field(default="a", compare=False)


@dataclass(frozen=True, slots=True)
class Meta:
    """Unification placeholder; never appears in user-facing types."""

    id: int


Type = Union[TInt, TTop, TVar, TBound, Arrow, Mu, Meta]

INT = TInt()
TOP = TTop()


def arrows(*ts: Type) -> Type:
    """``arrows(A, B, C)`` is ``A -> B -> C``."""
    *init, last = ts
    for t in reversed(init):
        last = Arrow(t, last)
    return last


def close_type(t: Type, name: str, depth: int = 0) -> Type:
    match t:
        case TVar(n):
            return TBound(depth) if n == name else t
        case Arrow(a, b):
            return Arrow(close_type(a, name, depth), close_type(b, name, depth))
        case Mu(body, hint):
            return Mu(close_type(body, name, depth + 1), hint)
        case _:
            return t


def open_type(t: Type, u: Type, depth: int = 0) -> Type:
    """Replace bound index ``depth`` by the locally closed type ``u``."""
    match t:
        case TBound(i):
            return u if i == depth else t
        case Arrow(a, b):
            return Arrow(open_type(a, u, depth), open_type(b, u, depth))
        case Mu(body, hint):
            return Mu(open_type(body, u, depth + 1), hint)
        case _:
            return t


def mu(name: str, body: Type) -> Mu:
    """Build ``mu name. body`` where ``body`` mentions ``TVar(name)``."""
    return Mu(close_type(body, name), name)


def unfold_type(t: Type) -> Type:
    if not isinstance(t, Mu):
        raise ValueError(f"not a recursive type: {t!r}")
    return open_type(t.body, t)


def free_type_vars(t: Type) -> frozenset[str]:
    match t:
        case TVar(n):
            return frozenset((n,))
        case Arrow(a, b):
            return free_type_vars(a) | free_type_vars(b)
        case Mu(body):
            return free_type_vars(body)
        case _:
            return frozenset()


def locally_closed(t: Type, depth: int = 0) -> bool:
    match t:
        case TBound(i):
            return i < depth
        case Arrow(a, b):
            return locally_closed(a, depth) and locally_closed(b, depth)
        case Mu(body):
            return locally_closed(body, depth + 1)
        case _:
            return True


def is_closed(t: Type) -> bool:
    return not free_type_vars(t) and locally_closed(t)


def has_top(t: Type) -> bool:
    match t:
        case TTop():
            return True
        case Arrow(a, b):
            return has_top(a) or has_top(b)
        case Mu(body):
            return has_top(body)
        case _:
            return False


def has_meta(t: Type) -> bool:
    match t:
        case Meta():
            return True
        case Arrow(a, b):
            return has_meta(a) or has_meta(b)
        case Mu(body):
            return has_meta(body)
        case _:
            return False


def subst_type(t: Type, name: str, s: Type) -> Type:
    """``t[name := s]``.  Binders are indices, so nothing can be captured."""
    match t:
        case TVar(n):
            return s if n == name else t
        case Arrow(a, b):
            return Arrow(subst_type(a, name, s), subst_type(b, name, s))
        case Mu(body, hint):
            return Mu(subst_type(body, name, s), hint)
        case _:
            return t


def alpha_eq(t1: Type, t2: Type) -> bool:
    return t1 == t2


def well_formed(delta, t: Type) -> bool:
    """WFT rules: every free variable is declared and no index dangles."""
    return locally_closed(t) and free_type_vars(t) <= set(delta)


def contractive(t: Type) -> bool:
    """No ``mu`` reaches its own variable through a chain of ``mu`` binders only."""
    match t:
        case Arrow(a, b):
            return contractive(a) and contractive(b)
        case Mu(body):
            inner, k = body, 0
            while isinstance(inner, Mu):
                inner, k = inner.body, k + 1
            if isinstance(inner, TBound) and inner.index == k:
                return False
            return contractive(body)
        case _:
            return True


def type_size(t: Type) -> int:
    match t:
        case Arrow(a, b):
            return 1 + type_size(a) + type_size(b)
        case Mu(body):
            return 1 + type_size(body)
        case _:
            return 1


def fresh_name(base: str, avoid) -> str:
    base = base.rstrip("0123456789'") or "a"
    if base not in avoid:
        return base
    for i in itertools.count(1):
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand
    raise AssertionError  # pragma: no cover


# ---------------------------------------------------------------- casts


@dataclass(frozen=True, slots=True)
class CVar:
    name: str


@dataclass(frozen=True, slots=True)
class CId:
    pass


@dataclass(frozen=True, slots=True)
class Fold:
    target: Type

    def __post_init__(self):
        if not isinstance(self.target, Mu):
            raise ValueError("fold annotation must be a recursive type")


@dataclass(frozen=True, slots=True)
class Unfold:
    source: Type

    def __post_init__(self):
        if not isinstance(self.source, Mu):
            raise ValueError("unfold annotation must be a recursive type")


@dataclass(frozen=True, slots=True)
class ArrowC:
    dom: "Cast"
    cod: "Cast"


@dataclass(frozen=True, slots=True)
class Seq:
    first: "Cast"
    second: "Cast"


@dataclass(frozen=True, slots=True)
class Fix:
    name: str
    body: "Cast"
    # (source, target) recorded by synthesis; None when written by hand
    declared: Optional[tuple[Type, Type]] = None


Cast = Union[CVar, CId, Fold, Unfold, ArrowC, Seq, Fix]

ID = CId()


def seq(*cs: Cast) -> Cast:
    """Left-nested sequence of ``cs`` with identity casts dropped."""
    out = None
    for c in cs:
        if isinstance(c, CId):
            continue
        out = c if out is None else Seq(out, c)
    return ID if out is None else out


def cast_free_vars(c: Cast) -> frozenset[str]:
    match c:
        case CVar(n):
            return frozenset((n,))
        case ArrowC(a, b) | Seq(a, b):
            return cast_free_vars(a) | cast_free_vars(b)
        case Fix(n, body):
            return cast_free_vars(body) - {n}
        case _:
            return frozenset()


def cast_bound_vars(c: Cast) -> frozenset[str]:
    match c:
        case ArrowC(a, b) | Seq(a, b):
            return cast_bound_vars(a) | cast_bound_vars(b)
        case Fix(n, body):
            return cast_bound_vars(body) | {n}
        case _:
            return frozenset()


def cast_size(c: Cast) -> int:
    match c:
        case ArrowC(a, b) | Seq(a, b):
            return 1 + cast_size(a) + cast_size(b)
        case Fix(_, body):
            return 1 + cast_size(body)
        case _:
            return 1


def cast_types(c: Cast) -> Iterator[Type]:
    """Every type annotation occurring in ``c``."""
    match c:
        case Fold(t) | Unfold(t):
            yield t
        case ArrowC(a, b) | Seq(a, b):
            yield from cast_types(a)
            yield from cast_types(b)
        case Fix(_, body, declared):
            if declared is not None:
                yield from declared
            yield from cast_types(body)


# ---------------------------------------------------------------- terms


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class IntLit:
    value: int


@dataclass(frozen=True, slots=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True, slots=True)
class Abs:
    param: str
    annot: Type
    body: "Term"


@dataclass(frozen=True, slots=True)
class CastApp:
    cast: Cast
    body: "Term"


Term = Union[Var, IntLit, App, Abs, CastApp]


def apps(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def is_value(e: Term) -> bool:
    match e:
        case IntLit() | Abs():
            return True
        case CastApp(Fold() | ArrowC(), v):
            return is_value(v)
        case _:
            return False


def free_term_vars(e: Term) -> frozenset[str]:
    match e:
        case Var(n):
            return frozenset((n,))
        case App(f, a):
            return free_term_vars(f) | free_term_vars(a)
        case Abs(x, _, body):
            return free_term_vars(body) - {x}
        case CastApp(_, body):
            return free_term_vars(body)
        case _:
            return frozenset()


def term_names(e: Term) -> frozenset[str]:
    match e:
        case Var(n):
            return frozenset((n,))
        case App(f, a):
            return term_names(f) | term_names(a)
        case Abs(x, _, body):
            return term_names(body) | {x}
        case CastApp(_, body):
            return term_names(body)
        case _:
            return frozenset()


def subst_term(e: Term, x: str, v: Term) -> Term:
    """Capture-avoiding ``e[x := v]``."""
    fv = free_term_vars(v)
    return _subst_term(e, x, v, fv)


def _subst_term(e, x, v, fv):
    match e:
        case Var(n):
            return v if n == x else e
        case App(f, a):
            return App(_subst_term(f, x, v, fv), _subst_term(a, x, v, fv))
        case Abs(y, ann, body):
            if y == x:
                return e
            if y in fv:
                y2 = fresh_name(y, fv | term_names(body) | {x})
                body = _subst_term(body, y, Var(y2), frozenset((y2,)))
                y = y2
            return Abs(y, ann, _subst_term(body, x, v, fv))
        case CastApp(c, body):
            return CastApp(c, _subst_term(body, x, v, fv))
        case _:
            return e


def erase(e: Term) -> Term:
    match e:
        case App(f, a):
            return App(erase(f), erase(a))
        case Abs(x, ann, body):
            return Abs(x, ann, erase(body))
        case CastApp(_, body):
            return erase(body)
        case _:
            return e


def has_cast(e: Term) -> bool:
    match e:
        case CastApp():
            return True
        case App(f, a):
            return has_cast(f) or has_cast(a)
        case Abs(_, _, body):
            return has_cast(body)
        case _:
            return False


def term_size(e: Term) -> int:
    match e:
        case App(f, a):
            return 1 + term_size(f) + term_size(a)
        case Abs(_, _, body) | CastApp(_, body):
            return 1 + term_size(body)
        case _:
            return 1


def term_types(e: Term) -> Iterator[Type]:
    """Every type annotation occurring in ``e``, casts included."""
    match e:
        case App(f, a):
            yield from term_types(f)
            yield from term_types(a)
        case Abs(_, ann, body):
            yield ann
            yield from term_types(body)
        case CastApp(c, body):
            yield from cast_types(c)
            yield from term_types(body)
