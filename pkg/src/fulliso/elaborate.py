"""Equi-recursive typing with elaboration into the cast calculus.

Casts are inserted at two places only: around a function whose type is not
syntactically an arrow (exposing the arrow by unfolding), and around an
argument whose type differs from the domain.  ``check_elab`` adds one more
at the root.  Erasing the casts gives back the source term.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import (
    ArgMismatch, FullIsoError, IllFormedType, IllTyped, NoMatchWithinFuel,
    NotAFunction, NotContractive, NotEqual, TopNotAllowed, TypeMismatch,
    UnboundVar,
)
from .equiv import head_normalize, synthesize_cast
from .evaluation import Trace, step_equi, step_iso
from .kernel.pretty import show_type
from .kernel.syntax import (
    INT, Abs, App, Arrow, CastApp, CId, IntLit, Var, contractive, erase,
    has_top, is_closed, is_value,
)


def wrap(c, e):
    return e if isinstance(c, CId) else CastApp(c, e)


class Elaborator:
    """Shared traversal; subclasses change what happens at a coercion site."""

    allow_top = False

    def annotation(self, t):
        if not is_closed(t):
            raise IllFormedType(f"annotation {show_type(t)} is not closed")
        if not contractive(t):
            raise NotContractive(f"annotation {show_type(t)} is not contractive")
        if not self.allow_top and has_top(t):
            raise TopNotAllowed(f"Top is only available with subtyping: {show_type(t)}")

    def coerce(self, e, have, want):
        if have == want:
            return e
        try:
            return wrap(synthesize_cast(have, want), e)
        except NotEqual:
            raise ArgMismatch(f"{show_type(have)} is not equal to {show_type(want)}") from None

    def infer(self, gamma, e):
        match e:
            case IntLit():
                return INT, e
            case Var(x):
                if x not in gamma:
                    raise UnboundVar(f"unbound variable {x}")
                return gamma[x], e
            case Abs(x, t, body):
                self.annotation(t)
                b, body2 = self.infer({**gamma, x: t}, body)
                return Arrow(t, b), Abs(x, t, body2)
            case App(f, a):
                tf, f2 = self.infer(gamma, f)
                head, pre, _ = head_normalize(tf)
                if not isinstance(head, Arrow):
                    raise NotAFunction(f"applying a term of type {show_type(tf)}")
                ta, a2 = self.infer(gamma, a)
                return head.cod, App(wrap(pre, f2), self.coerce(a2, ta, head.dom))
            case CastApp():
                raise IllFormedType("source terms of the equi-recursive system carry no casts")
        raise TypeError(f"not a term: {e!r}")

    def check(self, gamma, e, want):
        self.annotation(want)
        have, e2 = self.infer(gamma, e)
        try:
            return self.coerce(e2, have, want)
        except ArgMismatch as err:
            raise TypeMismatch(str(err)) from None


def _gamma(gamma):
    return dict(gamma or {})


def infer_elab(gamma, e):
    """``(A, e')`` such that ``gamma |-e e : A |> e'``."""
    return Elaborator().infer(_gamma(gamma), e)


def check_elab(gamma, e, want):
    return Elaborator().check(_gamma(gamma), e, want)


# ---------------------------------------------------------------- simulation


@dataclass
class SimulationReport:
    ok: bool
    type: object
    elaborated: object
    equi: Trace
    iso: Trace
    # equi step index after which iso could not follow, when not ok
    diverged_at: Optional[int] = None
    message: str = ""
    # iso steps spent matching each equi step
    iso_per_step: list[int] = field(default_factory=list)


def simulate(e, fuel: int = 1000, *, iso_fuel: Optional[int] = None,
             elaborate: Callable = infer_elab, finish: bool = True) -> SimulationReport:
    """Run ``e`` and its elaboration in lockstep, matching erasures step by step.

    ``fuel`` bounds equi steps, ``iso_fuel`` the total iso steps (default 100x).
    With ``finish`` the iso side is driven to a value once the equi side is one.
    """
    try:
        ty, e_iso = elaborate({}, e)
    except FullIsoError as err:
        raise IllTyped(str(err)) from err
    if iso_fuel is None:
        iso_fuel = 100 * fuel
    equi, iso = Trace(e), Trace(e_iso)
    report = SimulationReport(True, ty, e_iso, equi, iso)
    cur_e, cur_i, budget = e, e_iso, iso_fuel

    def advance_iso(target, index):
        nonlocal cur_i, budget
        spent = 0
        while erase(cur_i) != target:
            if budget <= 0:
                raise NoMatchWithinFuel(f"iso side spent its fuel matching equi step {index}")
            s = step_iso(cur_i)
            if s is None:
                return False, spent
            before = erase(cur_i)
            after = erase(s.term)
            if after != before and after != target:
                return False, spent
            iso.steps.append(s)
            cur_i, budget, spent = s.term, budget - 1, spent + 1
        return True, spent

    for i in range(fuel):
        s = step_equi(cur_e)
        if s is None:
            break
        equi.steps.append(s)
        cur_e = s.term
        ok, spent = advance_iso(cur_e, i)
        report.iso_per_step.append(spent)
        if not ok:
            report.ok, report.diverged_at = False, i
            report.message = f"iso side cannot reach the erasure of equi step {i}"
            return report
    if finish and is_value(cur_e):
        while not is_value(cur_i):
            if budget <= 0:
                raise NoMatchWithinFuel("iso side did not reach a value")
            s = step_iso(cur_i)
            if s is None or erase(s.term) != cur_e:
                report.ok, report.diverged_at = False, len(equi.steps)
                report.message = "iso side stuck or diverged after the equi value"
                return report
            iso.steps.append(s)
            cur_i, budget = s.term, budget - 1
    return report


__all__ = ["Elaborator", "infer_elab", "check_elab", "simulate", "SimulationReport", "wrap"]
