"""Property suites shared by the acceptance tests and ``fulliso selftest``.

Each suite returns a :class:`SuiteResult`; disagreements with an oracle are
also written to a findings sink when one is given.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional, TextIO

from ..castcalc import check_cast, reverse, type_of
from ..elaborate import infer_elab, simulate
from ..equiv import equal_e, synthesize_cast
from ..errors import ElaborationIncomplete, FullIsoError
from ..evaluation import Status, evaluate, step_equi
from ..kernel.pretty import show_type
from ..kernel.syntax import Mu, erase, is_value, unfold_type
from ..subtype import infer_elab_sub, sub_equi, sub_iso, type_of_sub
from .enumerate import enumerate_types
from .generate import check_generated, generate_well_typed
from .oracles import oracle_equal, oracle_sub


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str, limit: int = 20):
        if len(self.failures) < limit:
            self.failures.append(msg)
        else:
            self.counts["suppressed"] = self.counts.get("suppressed", 0) + 1

    def bump(self, key: str, n: int = 1):
        self.counts[key] = self.counts.get(key, 0) + n

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = " ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures {extra}".rstrip()


class Findings:
    """Tab-separated ``kind lhs rhs algorithmic oracle`` lines."""

    def __init__(self, sink: Optional[TextIO] = None):
        self.sink = sink
        self.lines: list[str] = []

    def record(self, kind, lhs, rhs, algorithmic, oracle):
        fields = [kind, show_type(lhs), show_type(rhs), _b(algorithmic), _b(oracle)]
        line = "\t".join(fields)
        self.lines.append(line)
        if self.sink is not None:
            self.sink.write(line + "\n")


def _b(x):
    return "true" if x is True else "false" if x is False else str(x)


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ---------------------------------------------------------------- types


@_timed
def equality_suite(max_size: int = 7, findings: Optional[Findings] = None) -> SuiteResult:
    """equalE against bisimulation on all pairs, with cast and reversal checks."""
    res = SuiteResult(f"equality(size<={max_size})")
    types = list(enumerate_types(max_size))
    for a in types:
        for b in types:
            res.checked += 1
            alg, ora = equal_e(a, b), oracle_equal(a, b)
            if alg != ora:
                res.fail(f"equalE {show_type(a)} / {show_type(b)}: {alg} vs oracle {ora}")
                if findings:
                    findings.record("equal", a, b, alg, ora)
            if ora and not (oracle_sub(a, b) and oracle_sub(b, a)):
                res.fail(f"oracles disagree on {show_type(a)} / {show_type(b)}")
            if not alg:
                continue
            res.bump("equal")
            c = synthesize_cast(a, b)
            if not check_cast(c, a, b):
                res.fail(f"synthesized cast rejected for {show_type(a)} / {show_type(b)}")
            r = reverse(c)
            if not check_cast(r, b, a):
                res.fail(f"reversed cast rejected for {show_type(a)} / {show_type(b)}")
            if reverse(r) != c:
                res.fail(f"reverse is not an involution on {show_type(a)} / {show_type(b)}")
    return res


@_timed
def subtyping_suite(max_size: int = 6, findings: Optional[Findings] = None) -> SuiteResult:
    """Amber admissibility lemmas, inclusion in equi subtyping, oracle agreement."""
    res = SuiteResult(f"subtyping(size<={max_size},top)")
    types = list(enumerate_types(max_size, True))
    below = {b: [] for b in types}
    above = {a: [] for a in types}
    for a in types:
        if not sub_iso((), a, a):
            res.fail(f"reflexivity fails at {show_type(a)}")
        for b in types:
            res.checked += 1
            iso = sub_iso((), a, b)
            equi, ora = sub_equi(a, b), oracle_sub(a, b)
            if equi != ora:
                res.fail(f"subEqui {show_type(a)} <= {show_type(b)}: {equi} vs oracle {ora}")
                if findings:
                    findings.record("sub-equi", a, b, equi, ora)
            if not iso:
                continue
            res.bump("iso")
            below[b].append(a)
            above[a].append(b)
            if not equi:
                res.fail(f"subIso not included in subEqui at {show_type(a)} <= {show_type(b)}")
            if isinstance(a, Mu) and isinstance(b, Mu):
                res.bump("unfolding")
                if not sub_iso((), unfold_type(a), unfold_type(b)):
                    res.fail(f"unfolding lemma fails at {show_type(a)} <= {show_type(b)}")
    for b in types:
        for a in below[b]:
            for c in above[b]:
                res.bump("triples")
                if not sub_iso((), a, c):
                    res.fail(f"transitivity fails: {show_type(a)} <= {show_type(b)} <= {show_type(c)}")
    return res


# ---------------------------------------------------------------- terms


def _sizes(i: int, max_size: int) -> int:
    return 1 + i % max_size


@_timed
def soundness_suite(count: int = 10_000, mode: str = "iso", *, max_size: int = 12,
                    fuel: int = 10_000, seed0: int = 0) -> SuiteResult:
    """Progress, preservation and erasure simulation along every trace."""
    if mode not in ("iso", "isoSub"):
        raise ValueError("soundness is checked on cast-calculus terms")
    sub = mode == "isoSub"
    typing: Callable = type_of_sub if sub else (lambda g, e: type_of(g, e))
    res = SuiteResult(f"soundness({mode},n={count})")
    for i in range(count):
        seed = seed0 + i
        e = generate_well_typed(seed, _sizes(i, max_size), mode)
        res.checked += 1
        try:
            ty = check_generated(e, mode)
        except FullIsoError as err:
            res.fail(f"seed {seed}: generated term does not typecheck: {err}")
            continue
        try:
            ety = (infer_elab_sub if sub else infer_elab)({}, erase(e))[0]
            if not (equal_e(ety, ty) or (sub and sub_equi(ety, ty))):
                res.fail(f"seed {seed}: erasure typed {show_type(ety)}, term {show_type(ty)}")
        except ElaborationIncomplete:
            # depth-bounded decomposition; not a counterexample
            res.bump("erasure-elab-incomplete")
        except FullIsoError as err:
            res.fail(f"seed {seed}: erasure does not typecheck: {err}")
        state = {"type": ty}

        def check(prev, step, seed=seed, state=state):
            new = typing({}, step.term)
            old = state["type"]
            if sub:
                ok = sub_iso((), new, old)
            else:
                ok = new == old
            if not ok:
                raise AssertionError(
                    f"seed {seed}: {step.rule} changed type {show_type(old)} to {show_type(new)}")
            state["type"] = new if sub else old
            before, after = erase(prev), erase(step.term)
            if after != before:
                s = step_equi(before)
                if s is None or s.term != after:
                    raise AssertionError(f"seed {seed}: {step.rule} breaks erasure simulation")

        try:
            out = evaluate(e, "iso", fuel, keep_trace=False, on_step=check)
        except (AssertionError, FullIsoError) as err:
            res.fail(str(err))
            continue
        res.bump("steps", out.steps)
        res.bump(out.status.value)
        if out.status is Status.STUCK:
            res.fail(f"seed {seed}: stuck after {out.steps} steps")
        elif out.status is Status.VALUE and not is_value(erase(out.term)):
            res.fail(f"seed {seed}: value erases to a non-value")
    return res


@_timed
def roundtrip_suite(count: int = 10_000, mode: str = "equi", *, max_size: int = 12,
                    seed0: int = 0) -> SuiteResult:
    """Elaboration erases back to its input and typechecks at the inferred type."""
    if mode not in ("equi", "equiSub"):
        raise ValueError("round-tripping starts from equi-recursive terms")
    sub = mode == "equiSub"
    res = SuiteResult(f"roundtrip({mode},n={count})")
    for i in range(count):
        seed = seed0 + i
        e = generate_well_typed(seed, _sizes(i, max_size), mode)
        res.checked += 1
        try:
            ty, out = (infer_elab_sub if sub else infer_elab)({}, e)
        except FullIsoError as err:
            res.fail(f"seed {seed}: elaboration failed: {err}")
            continue
        if erase(out) != e:
            res.fail(f"seed {seed}: erasure of the elaboration differs from the input")
        try:
            got = type_of_sub({}, out) if sub else type_of({}, out)
        except FullIsoError as err:
            res.fail(f"seed {seed}: elaboration does not typecheck: {err}")
            continue
        if got == ty:
            res.bump("exact")
        elif not (sub and sub_iso((), got, ty)):
            res.fail(f"seed {seed}: elaboration typed {show_type(got)}, expected {show_type(ty)}")
    return res


@_timed
def simulation_suite(count: int = 10_000, mode: str = "equi", *, max_size: int = 12,
                     equi_fuel: int = 500, iso_fuel: int = 50_000, seed0: int = 0) -> SuiteResult:
    """Lockstep simulation; terminating equi runs must end in matching values."""
    if mode not in ("equi", "equiSub"):
        raise ValueError("simulation starts from equi-recursive terms")
    elab = infer_elab_sub if mode == "equiSub" else infer_elab
    res = SuiteResult(f"simulation({mode},n={count})")
    for i in range(count):
        seed = seed0 + i
        e = generate_well_typed(seed, _sizes(i, max_size), mode)
        res.checked += 1
        try:
            rep = simulate(e, equi_fuel, iso_fuel=iso_fuel, elaborate=elab)
        except FullIsoError as err:
            res.fail(f"seed {seed}: {type(err).__name__}: {err}")
            continue
        if not rep.ok:
            res.fail(f"seed {seed}: {rep.message}")
            continue
        final = list(rep.equi.terms())[-1]
        if not is_value(final):
            res.bump("no-value-within-fuel")
            continue
        iso_final = list(rep.iso.terms())[-1]
        if not is_value(iso_final) or erase(iso_final) != final:
            res.fail(f"seed {seed}: iso value does not erase to the equi value")
        res.bump("values")
        res.bump("iso-steps", len(rep.iso))
    return res


@_timed
def generator_suite(count: int = 500, *, max_size: int = 12) -> SuiteResult:
    res = SuiteResult(f"generators(n={count} per mode)")
    for mode in ("iso", "equi", "isoSub", "equiSub"):
        for i in range(count):
            res.checked += 1
            e = generate_well_typed(i, _sizes(i, max_size), mode)
            try:
                check_generated(e, mode)
            except FullIsoError as err:
                res.fail(f"{mode} seed {i}: {err}")
    return res


def run_all(max_size: int = 7, terms: int = 1000, findings: Optional[Findings] = None,
            report: Optional[Callable[[SuiteResult], None]] = None) -> list[SuiteResult]:
    """Every suite at a scale set by ``max_size`` (types) and ``terms``."""
    jobs = [
        lambda: equality_suite(max_size, findings),
        lambda: subtyping_suite(max(1, max_size - 1), findings),
        lambda: generator_suite(max(1, terms // 10)),
        lambda: soundness_suite(terms, "iso"),
        lambda: soundness_suite(terms, "isoSub"),
        lambda: roundtrip_suite(terms, "equi"),
        lambda: roundtrip_suite(terms, "equiSub"),
        lambda: simulation_suite(terms, "equi"),
        lambda: simulation_suite(terms, "equiSub"),
    ]
    out = []
    for job in jobs:
        r = job()
        out.append(r)
        if report:
            report(r)
    return out
