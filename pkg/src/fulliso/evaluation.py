"""Call-by-value small-step reduction, with push rules for casts.

Congruence is tried before any redex: an application steps its function,
then its argument, and only then fires; a cast steps its operand until it is
a value and only then dispatches on the cast.  Each step reports the axiom
that fired together with the congruence rules it was found under.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

from .castcalc import reverse, subst_cast
from .errors import CastInEquiTerm
from .kernel.pretty import show_term
from .kernel.syntax import (
    Abs, App, ArrowC, CastApp, CId, Fix, Fold, Seq, Unfold, has_cast, is_value,
    subst_term,
)

log = logging.getLogger(__name__)

RULES = (
    "Red-beta", "Red-appl", "Red-appr", "Red-cast", "Red-cast-id", "Red-cast-arr",
    "Red-cast-seq", "Red-castelim", "Red-cast-fix",
)
DEFAULT_FUEL = 10_000


class Step(NamedTuple):
    term: object
    rule: str
    context: tuple[str, ...] = ()

    def under(self, rule, wrap):
        return Step(wrap(self.term), self.rule, (rule,) + self.context)


def step_iso(e, *, warn_mismatch: bool = False) -> Optional[Step]:
    """One reduction step, or ``None`` for values and stuck terms."""
    match e:
        case App(f, a):
            if not is_value(f):
                s = step_iso(f, warn_mismatch=warn_mismatch)
                return s and s.under("Red-appl", lambda t: App(t, a))
            if not is_value(a):
                s = step_iso(a, warn_mismatch=warn_mismatch)
                return s and s.under("Red-appr", lambda t: App(f, t))
            match f:
                case Abs(x, _, body):
                    return Step(subst_term(body, x, a), "Red-beta")
                case CastApp(ArrowC(c1, c2), v1):
                    return Step(CastApp(c2, App(v1, CastApp(reverse(c1), a))), "Red-cast-arr")
            return None
        case CastApp(c, body):
            if not is_value(body):
                s = step_iso(body, warn_mismatch=warn_mismatch)
                return s and s.under("Red-cast", lambda t: CastApp(c, t))
            match c, body:
                case CId(), _:
                    return Step(body, "Red-cast-id")
                case Seq(c1, c2), _:
                    return Step(CastApp(c2, CastApp(c1, body)), "Red-cast-seq")
                case Unfold(t), CastApp(Fold(t2), v):
                    if warn_mismatch and t != t2:
                        log.warning("unfold annotation differs from fold annotation")
                    return Step(v, "Red-castelim")
                case Fix(name, inner), _:
                    return Step(CastApp(subst_cast(inner, name, c), body), "Red-cast-fix")
            return None
    return None


def step_equi(e) -> Optional[Step]:
    """One beta/appl/appr step on a cast-free term."""
    if has_cast(e):
        raise CastInEquiTerm("the equi-recursive semantics has no casts")
    return _step_equi(e)


def _step_equi(e):
    match e:
        case App(f, a):
            if not is_value(f):
                s = _step_equi(f)
                return s and s.under("Red-appl", lambda t: App(t, a))
            if not is_value(a):
                s = _step_equi(a)
                return s and s.under("Red-appr", lambda t: App(f, t))
            if isinstance(f, Abs):
                return Step(subst_term(f.body, f.param, a), "Red-beta")
    return None


class Status(enum.Enum):
    VALUE = "value"
    FUEL_EXHAUSTED = "fuel-exhausted"
    STUCK = "stuck"


@dataclass
class Trace:
    initial: object
    steps: list[Step] = field(default_factory=list)

    def terms(self):
        yield self.initial
        for s in self.steps:
            yield s.term

    @property
    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]

    def lines(self, annotations: bool = False) -> list[str]:
        out = [f"init |- {show_term(self.initial, annotations)}"]
        out += [f"{s.rule} |- {show_term(s.term, annotations)}" for s in self.steps]
        return out

    def __len__(self):
        return len(self.steps)


@dataclass
class Outcome:
    status: Status
    term: object
    trace: Trace
    steps: int = 0

    @property
    def is_value(self) -> bool:
        return self.status is Status.VALUE


def evaluate(e, mode: str = "iso", fuel: int = DEFAULT_FUEL, *,
             keep_trace: bool = True,
             on_step: Optional[Callable[[object, Step], None]] = None,
             warn_mismatch: bool = False) -> Outcome:
    """Run at most ``fuel`` steps of the ``iso`` or ``equi`` semantics.

    ``on_step(previous, step)`` is called after every step; property checks
    hang off it.
    """
    if fuel < 1:
        raise ValueError("fuel must be positive")
    if mode == "iso":
        step = lambda t: step_iso(t, warn_mismatch=warn_mismatch)  # noqa: E731
    elif mode == "equi":
        step = step_equi
    else:
        raise ValueError(f"unknown mode {mode!r}")
    trace = Trace(e)
    n = 0
    while n < fuel:
        s = step(e)
        if s is None:
            break
        n += 1
        if on_step is not None:
            on_step(e, s)
        if keep_trace:
            trace.steps.append(s)
        e = s.term
    if is_value(e):
        status = Status.VALUE
    elif n >= fuel and step(e) is not None:
        status = Status.FUEL_EXHAUSTED
    else:
        status = Status.STUCK
    return Outcome(status, e, trace, n)
