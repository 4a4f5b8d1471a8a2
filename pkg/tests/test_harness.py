import io

import pytest

from fulliso.castcalc import type_of
from fulliso.elaborate import infer_elab
from fulliso.equiv import equal_e
from fulliso.errors import NotContractive
from fulliso.harness import (
    MODES, Findings, check_generated, count_types, count_types_named, enumerate_types,
    generate_well_typed, oracle_equal, oracle_sub, run_all, to_automaton,
)
from fulliso.kernel.syntax import INT, erase, type_size

from conftest import A, B, T

# per-size census; frozen from the brute-force named counter
CENSUS = {1: 1, 2: 1, 3: 2, 4: 7, 5: 23, 6: 81, 7: 303}
CENSUS_TOP = {1: 2, 2: 2, 3: 6, 4: 19, 5: 64, 6: 240}


def test_automaton_examples():
    m = to_automaton(A)
    assert len(m) == 2
    assert m.labels[m.start] == "Arrow"
    dom, cod = m.succ[m.start]
    assert m.labels[dom] == "Int" and cod == m.start
    assert len(to_automaton(INT)) == 1 and to_automaton(INT).labels == ("Int",)
    assert len(to_automaton(B)) == 3


def test_automaton_rejects_non_contractive():
    with pytest.raises(NotContractive):
        to_automaton(T("mu a. a"))


def test_oracle_equal_examples():
    assert oracle_equal(A, B)
    assert oracle_equal(T("Int -> Int"), T("Int -> Int"))
    assert not oracle_equal(A, T("mu a. (Int -> Int) -> a"))


def test_oracle_sub_examples():
    assert oracle_sub(T("Int -> (mu a. Top -> a)"), T("mu a. Int -> Top -> a"))
    for t in enumerate_types(5, True):
        assert oracle_sub(t, T("Top"))
    assert not oracle_sub(T("Top"), INT)


def test_equality_is_two_sided_simulation():
    ts = list(enumerate_types(5))
    for a in ts:
        for b in ts:
            if oracle_equal(a, b):
                assert oracle_sub(a, b) and oracle_sub(b, a)


def test_enumeration_examples():
    assert list(enumerate_types(1)) == [INT]
    four = set(enumerate_types(4))
    assert A in four and T("mu a. a -> Int") in four
    assert T("Int -> Int") in set(enumerate_types(3))
    assert T("Int -> Int -> Int") not in four


def test_enumeration_census():
    assert count_types(7) == CENSUS
    assert count_types(6, True) == CENSUS_TOP


def test_census_second_opinion():
    assert count_types_named(6) == {k: v for k, v in CENSUS.items() if k <= 6}
    assert count_types_named(5, True) == {k: v for k, v in CENSUS_TOP.items() if k <= 5}


def test_enumeration_order_and_uniqueness():
    stats = {}
    ts = list(enumerate_types(6, True, stats=stats))
    assert len(ts) == len(set(ts))
    sizes = [type_size(t) for t in ts]
    assert sizes == sorted(sizes)
    assert stats["rejected"] > 0


def test_generator_examples():
    e = generate_well_typed(1, 3, "equi")
    infer_elab({}, e)
    e = generate_well_typed(2, 8, "iso")
    ty = type_of({}, e)
    assert equal_e(infer_elab({}, erase(e))[0], ty)


def test_generator_is_deterministic():
    for mode in MODES:
        assert generate_well_typed(7, 9, mode) == generate_well_typed(7, 9, mode)
    assert generate_well_typed(7, 9, "iso") != generate_well_typed(8, 9, "iso")


@pytest.mark.parametrize("mode", MODES)
def test_generator_soundness(mode):
    for seed in range(200):
        check_generated(generate_well_typed(seed, 1 + seed % 12, mode), mode)


def test_generator_rejects_unknown_mode():
    with pytest.raises(ValueError):
        generate_well_typed(0, 3, "gradual")


def test_findings_format():
    buf = io.StringIO()
    f = Findings(buf)
    f.record("equal", A, B, True, False)
    assert buf.getvalue() == "equal\tmu a. Int -> a\tmu a. Int -> Int -> a\ttrue\tfalse\n"


def test_small_selftest():
    results = run_all(max_size=4, terms=30)
    assert all(r.ok for r in results), [r.failures for r in results]
