"""Type casting and term typing for the full iso-recursive calculus.

Cast typing is run forwards: given the source type and the cast, the target
is determined by every constructor except a ``fix`` written without its
declared pair.  For that case the target becomes a placeholder
(:class:`~fulliso.kernel.syntax.Meta`) that is solved by first-order
unification against the constraints raised at fold/unfold/variable leaves.
"""
from __future__ import annotations

import itertools
from typing import Callable, Mapping, Optional

from .errors import (
    AppOfNonArrow, ArgTypeMismatch, CastError, CastSourceMismatch, CastTypingError,
    IllFormedType, NotAnArrow, SubtypeMismatch, TopNotAllowed, UnboundCastVar,
    UnboundVar, UnresolvedFixTarget,
)
from .kernel.pretty import show_cast as _show_cast, show_type
from .kernel.syntax import (
    INT, Abs, App, Arrow, ArrowC, CastApp, CId, CVar, Fix, Fold, IntLit, Meta, Mu,
    Seq, Unfold, Var, cast_free_vars, cast_bound_vars, cast_types,
    fresh_name, has_meta, has_top, is_closed, locally_closed, unfold_type,
    well_formed,
)

CastEnv = Mapping[str, tuple]


def reverse(c):
    match c:
        case CVar() | CId():
            return c
        case Fold(t):
            return Unfold(t)
        case Unfold(t):
            return Fold(t)
        case ArrowC(a, b):
            return ArrowC(reverse(a), reverse(b))
        case Seq(a, b):
            return Seq(reverse(b), reverse(a))
        case Fix(n, body, declared):
            if declared is not None:
                declared = (declared[1], declared[0])
            return Fix(n, reverse(body), declared)
    raise TypeError(f"not a cast: {c!r}")


def subst_cast(c, name: str, r):
    """Capture-avoiding ``c[name := r]``."""
    fv = cast_free_vars(r)
    return _subst_cast(c, name, r, fv)


def _subst_cast(c, name, r, fv):
    match c:
        case CVar(n):
            return r if n == name else c
        case ArrowC(a, b):
            return ArrowC(_subst_cast(a, name, r, fv), _subst_cast(b, name, r, fv))
        case Seq(a, b):
            return Seq(_subst_cast(a, name, r, fv), _subst_cast(b, name, r, fv))
        case Fix(n, body, declared):
            if n == name or name not in cast_free_vars(body):
                return c
            if n in fv:
                n2 = fresh_name(n, fv | cast_free_vars(body) | cast_bound_vars(body) | {name})
                body = _subst_cast(body, n, CVar(n2), frozenset((n2,)))
                n = n2
            return Fix(n, _subst_cast(body, name, r, fv), declared)
        case _:
            return c


# ---------------------------------------------------------------- unification


class _Unifier:
    def __init__(self):
        self.binding: dict[int, object] = {}
        self._ids = itertools.count()

    def fresh(self) -> Meta:
        return Meta(next(self._ids))

    def resolve(self, t):
        match t:
            case Meta(i):
                if i in self.binding:
                    r = self.resolve(self.binding[i])
                    self.binding[i] = r
                    return r
                return t
            case Arrow(a, b):
                return Arrow(self.resolve(a), self.resolve(b))
            case Mu(body, hint) if has_meta(body):
                return Mu(self.resolve(body), hint)
            case _:
                return t

    def _head(self, t):
        while isinstance(t, Meta) and t.id in self.binding:
            t = self.binding[t.id]
        return t

    def _occurs(self, i, t) -> bool:
        t = self._head(t)
        match t:
            case Meta(j):
                return i == j
            case Arrow(a, b):
                return self._occurs(i, a) or self._occurs(i, b)
            case Mu(body):
                return self._occurs(i, body)
            case _:
                return False

    def unify(self, a, b) -> bool:
        a, b = self._head(a), self._head(b)
        if a == b:
            return True
        if isinstance(a, Meta) or isinstance(b, Meta):
            if not isinstance(a, Meta):
                a, b = b, a
            # a placeholder stands for a closed type: it cannot capture indices
            if self._occurs(a.id, b) or not locally_closed(b):
                return False
            self.binding[a.id] = b
            return True
        match a, b:
            case Arrow(a1, a2), Arrow(b1, b2):
                return self.unify(a1, b1) and self.unify(a2, b2)
            case Mu(x), Mu(y):
                return self.unify(x, y)
        return False

    def arrow_parts(self, t, c):
        t = self._head(t)
        if isinstance(t, Meta):
            d, r = self.fresh(), self.fresh()
            self.binding[t.id] = Arrow(d, r)
            return d, r
        if isinstance(t, Arrow):
            return t.dom, t.cod
        raise NotAnArrow(f"arrow cast {_show_cast(c)} applied to non-arrow {_show(self.resolve(t))}")

    def expect(self, actual, required, what):
        if not self.unify(actual, required):
            raise CastSourceMismatch(
                f"{what} expects {_show(self.resolve(required))}, got {_show(self.resolve(actual))}"
            )

    def apply(self, c, a, env, strict_fix):
        match c:
            case CId():
                return a
            case Fold(t):
                self.expect(a, unfold_type(t), f"fold[{_show(t)}]")
                return t
            case Unfold(t):
                self.expect(a, t, f"unfold[{_show(t)}]")
                return unfold_type(t)
            case CVar(n):
                if n not in env:
                    raise UnboundCastVar(f"cast variable {n} is not bound")
                src, tgt = env[n]
                self.expect(a, src, f"cast variable {n}")
                return tgt
            case ArrowC(c1, c2):
                d, r = self.arrow_parts(a, c)
                return Arrow(self.apply(c1, d, env, strict_fix), self.apply(c2, r, env, strict_fix))
            case Seq(c1, c2):
                return self.apply(c2, self.apply(c1, a, env, strict_fix), env, strict_fix)
            case Fix(n, body, declared):
                if strict_fix and not isinstance(body, ArrowC):
                    raise CastError(f"fix {n}: body is not an arrow cast")
                if declared is not None:
                    src, tgt = declared
                    self.expect(a, src, f"fix {n}")
                else:
                    src, tgt = a, self.fresh()
                if strict_fix:
                    self.arrow_parts(src, c)
                    self.arrow_parts(tgt, c)
                out = self.apply(body, src, {**env, n: (src, tgt)}, strict_fix)
                if not self.unify(out, tgt):
                    raise CastSourceMismatch(
                        f"fix {n}: body produces {_show(self.resolve(out))}, "
                        f"assumed {_show(self.resolve(tgt))}"
                    )
                return tgt
        raise TypeError(f"not a cast: {c!r}")


def _show(t):
    try:
        return show_type(t)
    except Exception:  # pragma: no cover - diagnostics only
        return repr(t)


# ---------------------------------------------------------------- public API


def apply_cast(c, a, env: Optional[CastEnv] = None, delta=(), *, strict_fix: bool = False):
    """The unique ``B`` with ``delta; env |- a ~> B : c``.

    Raises a :class:`~fulliso.errors.CastError` subclass when no derivation exists.
    """
    if not well_formed(delta, a):
        raise IllFormedType(f"{_show(a)} is not well formed")
    u = _Unifier()
    out = u.resolve(u.apply(c, a, dict(env or {}), strict_fix))
    if has_meta(out):
        raise UnresolvedFixTarget(f"cannot determine the target of {_show_cast(c)}")
    return out


def check_cast(c, a, b, env: Optional[CastEnv] = None, delta=(), *, strict_fix: bool = False) -> bool:
    try:
        return apply_cast(c, a, env, delta, strict_fix=strict_fix) == b
    except (CastError, IllFormedType):
        return False


def required_source(c, hint, env: Optional[CastEnv] = None):
    """The source type ``c`` demands, with unconstrained parts taken from ``hint``.

    Returns ``None`` when ``c`` accepts no source or ``hint`` cannot fill the gaps.
    The result is not guaranteed to be accepted by ``c``; callers re-check.
    """
    u = _Unifier()
    m = u.fresh()
    try:
        u.apply(c, m, dict(env or {}), False)
    except CastError:
        return None
    return _fill(u.resolve(m), hint)


def _fill(pattern, actual):
    match pattern, actual:
        case Meta(), _:
            return actual
        case Arrow(p1, p2), Arrow(a1, a2):
            x, y = _fill(p1, a1), _fill(p2, a2)
            return None if x is None or y is None else Arrow(x, y)
        case Arrow(), _:
            if has_meta(pattern):
                return None
            return pattern
        case Mu(body, hint), Mu(abody):
            if not has_meta(body):
                return pattern
            inner = _fill(body, abody)
            return None if inner is None else Mu(inner, hint)
        case _:
            return None if has_meta(pattern) else pattern


def type_of(gamma, e, *, allow_top: bool = False,
            subsume: Optional[Callable[[object, object], bool]] = None):
    """The type of ``e`` under ``gamma`` (a mapping from names to closed types).

    With ``subsume`` given, applications accept any argument type related to
    the domain by it, and casts may subsume their operand first.
    """
    return _type_of(dict(gamma), e, allow_top, subsume)


def _check_annotation(t, allow_top):
    if not is_closed(t):
        raise IllFormedType(f"annotation {_show(t)} is not closed")
    if not allow_top and has_top(t):
        raise TopNotAllowed(f"Top is only available with subtyping: {_show(t)}")


def _type_of(gamma, e, allow_top, subsume):
    match e:
        case IntLit():
            return INT
        case Var(x):
            if x not in gamma:
                raise UnboundVar(f"unbound variable {x}")
            return gamma[x]
        case Abs(x, t, body):
            _check_annotation(t, allow_top)
            return Arrow(t, _type_of({**gamma, x: t}, body, allow_top, subsume))
        case App(f, arg):
            tf = _type_of(gamma, f, allow_top, subsume)
            if not isinstance(tf, Arrow):
                raise AppOfNonArrow(f"applying a term of type {_show(tf)}")
            ta = _type_of(gamma, arg, allow_top, subsume)
            if ta == tf.dom:
                return tf.cod
            if subsume is None:
                raise ArgTypeMismatch(f"expected {_show(tf.dom)}, got {_show(ta)}")
            if not subsume(ta, tf.dom):
                raise SubtypeMismatch(f"{_show(ta)} is not a subtype of {_show(tf.dom)}")
            return tf.cod
        case CastApp(c, body):
            for t in cast_types(c):
                _check_annotation(t, allow_top)
            ta = _type_of(gamma, body, allow_top, subsume)
            try:
                return apply_cast(c, ta)
            except CastError as err:
                if subsume is not None:
                    src = required_source(c, ta)
                    if src is not None and src != ta and subsume(ta, src):
                        try:
                            return apply_cast(c, src)
                        except CastError:
                            pass
                raise CastTypingError(str(err)) from err
    raise TypeError(f"not a term: {e!r}")


__all__ = [
    "reverse", "subst_cast", "apply_cast", "check_cast", "required_source", "type_of",
]