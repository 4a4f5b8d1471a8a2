import pytest

from fulliso.castcalc import check_cast, type_of
from fulliso.elaborate import check_elab, infer_elab, simulate
from fulliso.equiv import equal_e
from fulliso.errors import (
    ArgMismatch, IllTyped, NoMatchWithinFuel, NotAFunction, NotContractive, TopNotAllowed,
    TypeMismatch, UnboundVar,
)
from fulliso.evaluation import evaluate
from fulliso.harness.generate import generate_well_typed
from fulliso.kernel.syntax import App, CastApp, Unfold, Var, erase, is_value

from conftest import A, B, E, T

KNOT = r"(\x: mu b. b -> mu a. Int -> a. \n: Int. x x)"


def test_infer_unfolds_function_position():
    ty, out = infer_elab({"e": A}, E("e 1"))
    assert ty == A
    assert out == App(CastApp(Unfold(A), Var("e")), E("1"))


def test_infer_no_casts_needed():
    assert infer_elab({}, E(r"\x: Int. x")) == (T("Int -> Int"), E(r"\x: Int. x"))


def test_infer_coerces_argument():
    ty, out = infer_elab({"f": T("Int -> mu a. Int -> a")}, E(r"(\x: Int -> Int -> mu a. Int -> a. x) f"))
    assert ty == T("Int -> Int -> mu a. Int -> a")
    arg = out.arg
    assert isinstance(arg, CastApp)
    assert check_cast(arg.cast, T("Int -> mu a. Int -> a"), T("Int -> Int -> mu a. Int -> a"))


def test_check_examples():
    out = check_elab({"e": A}, E("e"), T("Int -> mu a. Int -> a"))
    assert out == CastApp(Unfold(A), Var("e"))
    assert check_elab({}, E("1"), T("Int")) == E("1")
    out = check_elab({"e": A}, E("e"), B)
    assert check_cast(out.cast, A, B)


def test_errors():
    with pytest.raises(NotAFunction):
        infer_elab({}, E("1 2"))
    with pytest.raises(ArgMismatch):
        infer_elab({}, E(r"(\x: Int. x) (\y: Int. y)"))
    with pytest.raises(UnboundVar):
        infer_elab({}, E("z"))
    with pytest.raises(TypeMismatch):
        check_elab({}, E("1"), T("Int -> Int"))
    with pytest.raises(NotContractive):
        infer_elab({}, E(r"\x: mu a. a. x"))
    with pytest.raises(TopNotAllowed):
        infer_elab({}, E(r"\x: Top. x"))


def test_simulate_trivial():
    rep = simulate(E(r"(\x: Int. x) 1"), 100)
    assert rep.ok and len(rep.equi) == 1 and len(rep.iso) >= 1


def test_simulate_push_scenario():
    # the argument needs a cast from Int -> Int -> A to Int -> A; applying it pushes the cast
    src = rf"(\f: Int -> mu a. Int -> a. f 1) (\y: Int. {KNOT} {KNOT})"
    rep = simulate(E(src), 100)
    assert rep.ok
    assert {"Red-cast-arr", "Red-cast-id"} <= set(rep.iso.rules)
    assert is_value(list(rep.iso.terms())[-1])


def test_simulate_nested_recursive_applications():
    k = f"({KNOT} {KNOT})"
    src = rf"(\g: mu a. Int -> a. g 1 2 3) (\m: Int. {k} m)"
    rep = simulate(E(src), 200)
    assert rep.ok
    assert {"Red-cast-arr", "Red-castelim"} <= set(rep.iso.rules)


def test_simulate_rejects_ill_typed():
    with pytest.raises(IllTyped):
        simulate(E("1 2"), 10)


def test_simulate_reports_iso_fuel():
    with pytest.raises(NoMatchWithinFuel):
        simulate(E(rf"(\f: Int -> mu a. Int -> a. f 1) (\y: Int. {KNOT} {KNOT})"), 100, iso_fuel=1)


def test_round_trip_and_soundness_on_generated():
    for seed in range(300):
        e = generate_well_typed(seed, 1 + seed % 12, "equi")
        ty, out = infer_elab({}, e)
        assert erase(out) == e
        assert type_of({}, out) == ty
        assert erase(check_elab({}, e, ty)) == e


def test_erasure_typing_on_generated_iso():
    for seed in range(300):
        e = generate_well_typed(seed, 1 + seed % 12, "iso")
        assert equal_e(infer_elab({}, erase(e))[0], type_of({}, e))


def test_value_completion():
    for seed in range(200):
        e = generate_well_typed(seed, 1 + seed % 12, "equi")
        v = evaluate(e, "equi", 500).term
        assert is_value(v)
        out = evaluate(infer_elab({}, v)[1], "iso", 10_000)
        assert out.is_value and erase(out.term) == v
