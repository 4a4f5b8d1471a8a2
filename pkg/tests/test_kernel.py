from hypothesis import given, strategies as st

from fulliso.kernel import parse_term, parse_type, show_term, show_type
from fulliso.kernel.syntax import (
    INT, TVar, alpha_eq, contractive, erase, free_type_vars, is_closed, subst_type,
    well_formed,
)

from conftest import SMALL, A, B, T, E, closed_types, open_types


def test_free_type_vars():
    assert free_type_vars(INT) == frozenset()
    assert free_type_vars(A) == frozenset()
    assert free_type_vars(T("mu a. a -> b")) == {"b"}


def test_subst_unfolding_example():
    got = subst_type(T("Int -> a"), "a", A)
    assert got == T("Int -> (mu a. Int -> a)")


def test_subst_not_free():
    assert subst_type(INT, "a", A) == INT


def test_subst_avoids_capture():
    got = subst_type(T("mu b. a -> b"), "a", TVar("b"))
    assert free_type_vars(got) == {"b"}
    assert show_type(got) == "mu b1. b -> b1"


def test_alpha_eq():
    assert alpha_eq(A, T("mu b. Int -> b"))
    assert not alpha_eq(A, B)
    assert not alpha_eq(T("Int -> Int"), INT)


def test_well_formed():
    assert well_formed((), A)
    assert not well_formed((), T("a"))
    assert well_formed(("a",), T("a -> Int"))


def test_contractive_examples():
    assert contractive(A)
    assert not contractive(T("mu a. a"))
    assert not contractive(T("mu a. mu b. a"))
    assert not contractive(T("mu a. mu b. b"))
    assert contractive(T("mu a. mu b. Int -> a"))


def _reaches_binder(t):
    # named reachability: strip the mu-chain below each binder
    from fulliso.kernel.syntax import Arrow, Mu, TBound

    match t:
        case Arrow(x, y):
            return _reaches_binder(x) or _reaches_binder(y)
        case Mu(body):
            k, inner = 0, body
            while isinstance(inner, Mu):
                k, inner = k + 1, inner.body
            return (isinstance(inner, TBound) and inner.index <= k) or _reaches_binder(body)
    return False


@given(open_types)
def test_contractive_matches_reachability(t):
    from fulliso.kernel.syntax import Mu

    # any bound index at the end of a pure mu-chain is one of the chain's binders
    if is_closed(t) or isinstance(t, Mu):
        assert contractive(t) == (not _reaches_binder(t))


def test_erase_examples():
    assert erase(E("cast<fold[mu a. Int -> a]>(1)")) == E("1")
    assert erase(E(r"\x: Int. x")) == E(r"\x: Int. x")
    e = E(r"cast<fold[mu a. Int -> a]>((cast<id>(\x: Int. x)) 1)")
    assert erase(e) == E(r"(\x: Int. x) 1")


@given(open_types, st.sampled_from(["a", "b", "c"]))
def test_subst_identity(t, name):
    assert subst_type(t, name, TVar(name)) == t


@given(open_types, st.sampled_from(["a", "b"]), open_types)
def test_well_formed_stable_under_subst(t, name, s):
    delta = tuple(free_type_vars(s))
    if well_formed(delta + (name,), t) and well_formed(delta, s):
        assert well_formed(delta, subst_type(t, name, s))


@given(closed_types, closed_types, closed_types)
def test_alpha_eq_is_an_equivalence(a, b, c):
    assert alpha_eq(a, a)
    assert alpha_eq(a, b) == alpha_eq(b, a)
    if alpha_eq(a, b) and alpha_eq(b, c):
        assert alpha_eq(a, c)


def test_alpha_eq_reflexive_exhaustive():
    for t in SMALL:
        assert alpha_eq(t, parse_type(show_type(t)))


def test_type_round_trip_exhaustive():
    for t in SMALL:
        assert parse_type(show_type(t)) == t


@given(open_types)
def test_type_round_trip_open(t):
    assert parse_type(show_type(t)) == t


def test_term_printing():
    e = E(r"(\x: Int -> Int. x) (\y: Int. y) 3")
    assert show_term(e) == r"(\x: Int -> Int. x) (\y: Int. y) 3"
    assert parse_term(show_term(e)) == e


def test_erase_idempotent_on_generated():
    from fulliso.harness.generate import generate_well_typed

    for seed in range(50):
        e = generate_well_typed(seed, 8, "iso")
        assert erase(erase(e)) == erase(e)
        # synthesized fix casts carry declared types, shown only when asked
        assert parse_term(show_term(e, annotations=True)) == e
        assert erase(parse_term(show_term(e))) == erase(e)
