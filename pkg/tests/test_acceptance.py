"""Acceptance criteria 1-10, each at its stated scale and time limit.

Every criterion prints one ``PASS``/``FAIL`` line as it finishes, so
``pytest tests/test_acceptance.py`` doubles as a report.
"""
import time

import pytest

from fulliso.castcalc import check_cast, reverse, type_of
from fulliso.equiv import equal_e, synthesize_cast
from fulliso.evaluation import Status, evaluate, step_equi
from fulliso.harness.suites import (
    equality_suite, roundtrip_suite, simulation_suite, soundness_suite, subtyping_suite,
)
from fulliso.kernel import parse_cast, parse_term, parse_type
from fulliso.kernel.syntax import App, CastApp, IntLit, erase
from fulliso.subtype import decompose, sub_equi, sub_iso

pytestmark = pytest.mark.slow

A = parse_type("mu a. Int -> a")
B = parse_type("mu a. Int -> Int -> a")
N = 10_000


@pytest.fixture
def verdict(capsys):
    def report(n: int, ok: bool, seconds: float, limit: float, detail: str = ""):
        ok = ok and seconds < limit
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {seconds:.2f}s (limit {limit:g}s) {detail}"
        with capsys.disabled():
            print("\n" + line.rstrip())
        assert ok, line
    return report


def test_criterion_01_equality_golden(verdict):
    t0 = time.perf_counter()
    c = synthesize_cast(A, B)
    ok = equal_e(A, B) and check_cast(c, A, B) and check_cast(reverse(c), B, A)
    verdict(1, ok, time.perf_counter() - t0, 1)


def test_criterion_02_push_trace(verdict):
    knot = r"(\x: mu b. b -> mu a. Int -> a. \n: Int. cast<unfold[mu b. b -> mu a. Int -> a]>(x) x)"
    v = parse_term(rf"\y: Int. {knot} cast<id -> fold[mu a. Int -> a] ; fold[mu b. b -> mu a. Int -> a]>({knot})")
    assert type_of({}, v) == parse_type("Int -> Int -> mu a. Int -> a")
    e = App(CastApp(parse_cast("id -> fold[mu a. Int -> a]"), v), IntLit(1))
    t0 = time.perf_counter()
    out = evaluate(e, "iso", 1000)
    erasures = [erase(t) for t in out.trace.terms()]
    chain_ok = erasures[0] == App(erase(v), IntLit(1))
    for before, after in zip(erasures, erasures[1:]):
        if after != before:
            s = step_equi(before)
            chain_ok = chain_ok and s is not None and s.term == after
    ok = out.status is Status.VALUE and out.trace.rules[0] == "Red-cast-arr" and chain_ok
    verdict(2, ok, time.perf_counter() - t0, 1, f"rules={','.join(out.trace.rules)}")


@pytest.fixture(scope="module")
def equality_run():
    return equality_suite(7)


def _reversal(msg: str) -> bool:
    return msg.startswith(("reversed", "reverse is not"))


def test_criterion_03_equality_vs_oracle(verdict, equality_run):
    r = equality_run
    bad = [f for f in r.failures if not _reversal(f)]
    verdict(3, not bad and r.counts.get("equal", 0) > 0 and r.checked > 1000,
            r.seconds, 300, f"pairs={r.checked} equal={r.counts.get('equal')} failures={bad[:3]}")


def test_criterion_04_reversal(verdict, equality_run):
    r = equality_run
    bad = [f for f in r.failures if _reversal(f)] + r.counts.get("suppressed", 0) * ["suppressed"]
    verdict(4, not bad and r.counts.get("equal", 0) > 0, r.seconds, 300,
            f"casts={r.counts.get('equal')} failures={bad[:3]}")


def _suite_verdict(verdict, n, r, limit):
    verdict(n, r.ok and r.checked == N, r.seconds, limit, f"{r.summary()} {r.failures[:3]}")


def test_criterion_05_progress_preservation(verdict):
    r = soundness_suite(N, "iso", max_size=12, fuel=10_000)
    _suite_verdict(verdict, 5, r, 600)


def test_criterion_06_roundtrip(verdict):
    r = roundtrip_suite(N, "equi", max_size=12)
    _suite_verdict(verdict, 6, r, 600)


def test_criterion_07_simulation(verdict):
    r = simulation_suite(N, "equi", max_size=12, equi_fuel=500, iso_fuel=50_000)
    assert r.counts.get("values", 0) > 0
    _suite_verdict(verdict, 7, r, 600)


def test_criterion_08_subtyping(verdict):
    r = subtyping_suite(6)
    verdict(8, r.ok and r.counts.get("triples", 0) > 0, r.seconds, 300, f"{r.summary()} {r.failures[:3]}")


def test_criterion_09_decomposition_golden(verdict):
    a = parse_type("Int -> (mu a. Top -> a)")
    b = parse_type("mu a. Int -> Top -> a")
    t0 = time.perf_counter()
    ok = sub_equi(a, b)
    c1, c2, cin, cout = decompose(a, b, 2)
    ok = ok and equal_e(a, c1) and sub_iso((), c1, c2) and equal_e(c2, b)
    ok = ok and check_cast(cin, a, c1) and check_cast(cout, c2, b)
    ok = ok and c1 == parse_type("Int -> Top -> mu a. Top -> Top -> a")
    ok = ok and c2 == parse_type("Int -> Top -> mu a. Int -> Top -> a")
    verdict(9, ok, time.perf_counter() - t0, 1)


def test_criterion_10_subtyping_calculus(verdict):
    runs = [
        soundness_suite(N, "isoSub", max_size=12, fuel=10_000),
        roundtrip_suite(N, "equiSub", max_size=12),
        simulation_suite(N, "equiSub", max_size=12, equi_fuel=500, iso_fuel=50_000),
    ]
    ok = all(r.ok and r.checked == N for r in runs)
    detail = " | ".join(r.summary() for r in runs)
    verdict(10, ok, sum(r.seconds for r in runs), 900, detail)
