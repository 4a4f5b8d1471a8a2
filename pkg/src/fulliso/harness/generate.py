"""Type-directed random generation of closed well-typed terms.

Every generator call returns ``(term, type)`` where ``type`` is exactly what
the mode's checker infers, so coercion sites can be validated on the spot
instead of trusting the construction.  Recursive inhabitants come from a
"knot": ``w = \\x: R. \\n1: D1 ... \\nk: Dk. x x`` with ``R = mu b. b -> T``,
whose self-application ``w w`` has type ``T`` whenever peeling ``k`` arrows
off ``T`` gets back to ``T``.  Knots only ever produce lambdas, so generated
programs terminate.
"""
from __future__ import annotations

import random
from functools import lru_cache

from ..castcalc import apply_cast, type_of
from ..elaborate import infer_elab
from ..equiv import equal_e, head_normalize, synthesize_cast
from ..errors import FullIsoError, SearchExhausted
from ..kernel.parse import parse_type
from ..kernel.syntax import (
    INT, TOP, Abs, App, Arrow, CastApp, Fold, IntLit, Mu, TBound, TInt, TTop, Unfold,
    Var, contractive, is_closed, type_size, unfold_type,
)
from ..subtype import decompose, infer_elab_sub, square, sub_equi, sub_iso, type_of_sub
from .enumerate import enumerate_types

MODES = ("iso", "equi", "isoSub", "equiSub")

_CORE = [
    "Int", "Int -> Int", "mu a. Int -> a", "mu a. Int -> Int -> a", "Int -> mu a. Int -> a",
    "(Int -> Int) -> Int", "mu a. a -> Int", "mu a. (a -> Int) -> Int",
    "mu a. Int -> (mu b. Int -> a)", "(mu a. Int -> a) -> Int",
]
_WITH_TOP = [
    "Top", "Top -> Int", "Int -> Top", "mu a. Top -> a", "Int -> (mu a. Top -> a)",
    "mu a. Int -> Top -> a", "mu a. Top -> Top -> a",
]
_MAX_TYPE = 24


@lru_cache(maxsize=None)
def type_pool(with_top: bool) -> tuple:
    picked = [parse_type(s) for s in _CORE + (_WITH_TOP if with_top else [])]
    for t in enumerate_types(5, with_top):
        if t not in picked:
            picked.append(t)
    return tuple(picked)


def _site_ok_equi_sub(have, want) -> bool:
    # mirrors the coercion policy of the subtyping elaborator
    if have == want or sub_iso((), have, want) or equal_e(have, want):
        return True
    if not sub_equi(have, want):
        return False
    try:
        decompose(have, want)
    except SearchExhausted:
        return False
    return True


class _Generator:
    def __init__(self, seed: int, mode: str):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.rng = random.Random(f"{mode}/{seed}")
        self.mode = mode
        self.iso = mode in ("iso", "isoSub")
        self.sub = mode in ("isoSub", "equiSub")
        self.pool = type_pool(self.sub)
        self.rolls = {unfold_type(t): t for t in self.pool if isinstance(t, Mu)}
        self.counter = 0
        self.knots: dict = {}

    # ------------------------------------------------------------ types

    def fresh(self, base="x"):
        self.counter += 1
        return f"{base}{self.counter}"

    def pick_type(self):
        return self.rng.choice(self.pool)

    def variant(self, t):
        """A type equal to ``t`` up to unfolding, usually a different one."""
        r = self.rng.random()
        out = t
        match t:
            case Mu():
                out = unfold_type(t) if r < 0.4 else square(t) if r < 0.55 else t
            case Arrow(a, b):
                if t in self.rolls and r < 0.3:
                    out = self.rolls[t]
                elif r < 0.7:
                    out = Arrow(self.variant(a), self.variant(b))
        return out if type_size(out) <= _MAX_TYPE else t

    def _perturb(self, t, down):
        if not down and self.rng.random() < 0.2:
            return TOP
        match t:
            case TTop() if down and self.rng.random() < 0.5:
                return self.pick_type()
            case Arrow(a, b):
                return Arrow(self._perturb(a, not down), self._perturb(b, down))
            case Mu(body, hint):
                return Mu(self._perturb(body, down), hint)
        return t

    def sub_variant(self, t, down=True):
        """A type below ``t`` (``down``) or above it."""
        u = self._perturb(t, down)
        if self.mode == "equiSub" and self.rng.random() < 0.5:
            u = self.variant(u)
        if not (is_closed(u) and contractive(u)) or type_size(u) > _MAX_TYPE:
            return t
        lo, hi = (u, t) if down else (t, u)
        ok = sub_equi(lo, hi) if self.mode == "equiSub" else sub_iso((), lo, hi)
        return u if ok else t

    def head(self, t):
        return head_normalize(t)[0] if not self.iso else t

    # ------------------------------------------------------------ typing

    def fits(self, have, want) -> bool:
        match self.mode:
            case "iso":
                return have == want
            case "equi":
                return equal_e(have, want)
            case "isoSub":
                return sub_iso((), have, want)
        return _site_ok_equi_sub(have, want)

    def cast_type(self, gamma, node):
        if self.mode == "isoSub":
            return type_of_sub(gamma, node)
        return apply_cast(node.cast, type_of(gamma, node.body))

    def convert(self, gamma, e, have, want):
        """Make ``e : have`` acceptable where ``want`` is expected."""
        if self.fits(have, want):
            return e, have
        if self.iso and equal_e(have, want):
            return CastApp(synthesize_cast(have, want), e), want
        raise _Retry

    # ------------------------------------------------------------ knots

    def knot(self, want):
        """A closed term whose type converts to ``want``, or None."""
        if want in self.knots:
            return self.knots[want]
        found = None
        doms, t = [], want
        for _ in range(6):
            h = head_normalize(t)[0]
            if not isinstance(h, Arrow):
                break
            doms.append(h.dom)
            t = h.cod
            if equal_e(t, want):
                found = self._build_knot(want, doms)
                break
        self.knots[want] = found
        return found

    def _build_knot(self, target, doms):
        r = Mu(Arrow(TBound(0), target), "b")
        body = App(Var("x"), Var("x"))
        for i, d in reversed(list(enumerate(doms))):
            body = Abs(f"n{i}", d, body)
        w = Abs("x", r, body)
        src = App(w, w)
        if not self.iso:
            return src
        return (infer_elab_sub if self.sub else infer_elab)({}, src)[1]

    def use_knot(self, gamma, want):
        k = self.knot(want)
        if k is None:
            return None
        ty = self.type_here(gamma, k)
        try:
            return self.convert(gamma, k, ty, want)
        except _Retry:
            return None

    def type_here(self, gamma, e):
        match self.mode:
            case "iso":
                return type_of(gamma, e)
            case "isoSub":
                return type_of_sub(gamma, e)
            case "equi":
                return infer_elab(gamma, e)[0]
        return infer_elab_sub(gamma, e)[0]

    # ------------------------------------------------------------ terms

    def leaf(self, gamma, want, depth=0):
        if depth > 40:
            raise RuntimeError("leaf generation did not bottom out")
        names = [x for x, t in gamma.items() if self.fits(t, want)]
        if names and self.rng.random() < 0.6:
            x = self.rng.choice(names)
            return Var(x), gamma[x]
        h = self.head(want)
        match h:
            case TInt() | TTop():
                return IntLit(self.rng.randint(0, 9)), INT
            case Arrow(d, c):
                if self.rng.random() < 0.3 and (k := self.use_knot(gamma, want)):
                    return k
                x = self.fresh()
                body, tb = self.leaf({**gamma, x: d}, c, depth + 1)
                return Abs(x, d, body), Arrow(d, tb)
            case Mu():
                if (k := self.use_knot(gamma, want)) is not None:
                    return k
                e, te = self.leaf(gamma, unfold_type(want), depth + 1)
                node = CastApp(Fold(want), e)
                return node, self.cast_type(gamma, node)
        raise RuntimeError(f"cannot inhabit {want!r}")

    def gen(self, gamma, want, size, exact=False):
        if size <= 1:
            return self.leaf(gamma, want)
        for _ in range(8):
            try:
                return self._gen(gamma, want, size, exact)
            except _Retry:
                continue
        return self.leaf(gamma, want)

    def _gen(self, gamma, want, size, exact):
        rng = self.rng
        h = self.head(want)
        choices = ["app", "app", "leaf"]
        if isinstance(h, Arrow) or (self.sub and isinstance(h, TTop)):
            choices += ["abs", "abs"]
        if self.iso:
            choices += ["cast"]
            if isinstance(want, Mu):
                choices += ["fold"]
            if want in self.rolls:
                choices += ["unfold"]
        if self.mode == "isoSub" and isinstance(want, Mu) and not exact:
            choices += ["subsume-mu"]
        kind = rng.choice(choices)

        if kind == "leaf":
            return self.leaf(gamma, want)
        if kind == "abs":
            if isinstance(h, TTop):
                return self.gen(gamma, self.pick_type(), size, exact)
            d, c = h.dom, h.cod
            annot = d
            if not self.iso:
                annot = self.variant(d)
            if self.sub and not exact and rng.random() < 0.4:
                annot = self.sub_variant(annot, down=False)
            x = self.fresh()
            body, tb = self.gen({**gamma, x: annot}, c, size - 1, exact)
            return Abs(x, annot, body), Arrow(annot, tb)
        if kind == "app":
            s = self.pick_type() if rng.random() < 0.7 or not gamma else rng.choice(list(gamma.values()))
            if not self.iso:
                s = self.variant(s)
            sf = rng.randint(1, size - 1)
            f, tf = self.gen(gamma, Arrow(s, want), sf, exact)
            hf = head_normalize(tf)[0] if not self.iso else tf
            if not isinstance(hf, Arrow):
                raise _Retry
            d = hf.dom
            a, ta = self.argument(gamma, d, size - 1 - sf)
            return App(f, a), hf.cod
        if kind == "cast":
            v = self.variant(want)
            e, te = self.gen(gamma, v, size - 1, exact)
            if not equal_e(te, want):
                raise _Retry
            node = CastApp(synthesize_cast(te, want), e)
            return node, self.cast_type(gamma, node)
        if kind == "fold":
            e, te = self.gen(gamma, unfold_type(want), size - 1, exact)
            node = CastApp(Fold(want), e)
            return node, self.cast_type(gamma, node)
        if kind == "unfold":
            m = self.rolls[want]
            e, te = self.gen(gamma, m, size - 1, exact)
            node = CastApp(Unfold(m), e)
            return node, self.cast_type(gamma, node)
        # subsume-mu: fold at a smaller recursive type, then unfold/fold at want
        lower = self.sub_variant(want)
        if not isinstance(lower, Mu):
            raise _Retry
        e, te = self.gen(gamma, unfold_type(lower), size - 1, True)
        node = CastApp(Fold(want), CastApp(Unfold(want), CastApp(Fold(lower), e)))
        return node, self.cast_type(gamma, node)

    def argument(self, gamma, dom, size):
        """An argument for a function with domain ``dom``, checked at the site."""
        target = dom
        if self.sub and self.rng.random() < 0.5:
            target = self.sub_variant(dom)
        elif not self.iso:
            target = self.variant(dom)
        a, ta = self.gen(gamma, target, max(size, 1))
        if self.fits(ta, dom):
            return a, ta
        try:
            return self.convert(gamma, a, ta, dom)
        except _Retry:
            pass
        a, ta = self.gen(gamma, dom, max(size, 1), exact=True)
        if self.fits(ta, dom):
            return a, ta
        return self.convert(gamma, a, ta, dom)


class _Retry(Exception):
    pass


def generate_well_typed(seed: int, size: int, mode: str = "iso"):
    """A closed term that typechecks in ``mode``; deterministic in ``seed``."""
    g = _Generator(seed, mode)
    want = g.pick_type()
    try:
        e, t = g.gen({}, want, size)
    except (FullIsoError, _Retry):
        e, t = g.leaf({}, want)
    # saturate: a root lambda is already a value, so feed it some arguments
    for _ in range(3):
        h = head_normalize(t)[0]
        if not isinstance(h, Arrow) or g.rng.random() < 0.25:
            break
        if g.iso and not isinstance(t, Arrow):
            e = CastApp(head_normalize(t)[1], e)
        try:
            a, _ = g.argument({}, h.dom, g.rng.randint(1, 3))
        except (FullIsoError, _Retry):
            break
        e, t = App(e, a), h.cod
    return e


def check_generated(e, mode: str):
    """The type ``e`` has in ``mode``; raises when it does not typecheck."""
    match mode:
        case "iso":
            return type_of({}, e)
        case "isoSub":
            return type_of_sub({}, e)
        case "equi":
            return infer_elab({}, e)[0]
        case "equiSub":
            return infer_elab_sub({}, e)[0]
    raise ValueError(f"unknown mode {mode!r}")
