import pytest
from hypothesis import settings, strategies as st

from fulliso.harness.enumerate import enumerate_types
from fulliso.kernel import parse_cast, parse_term, parse_type
from fulliso.kernel.syntax import INT, TOP, Arrow, TVar, mu

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")

T, E, C = parse_type, parse_term, parse_cast

A = T("mu a. Int -> a")
B = T("mu a. Int -> Int -> a")

SMALL = list(enumerate_types(6))
SMALL_TOP = list(enumerate_types(5, True))

closed_types = st.sampled_from(SMALL)
closed_types_top = st.sampled_from(SMALL_TOP)

_names = st.sampled_from(["a", "b", "c"])


def _extend(inner):
    return st.one_of(
        st.builds(Arrow, inner, inner),
        st.builds(mu, _names, inner),
    )


# possibly open types built through the named front door
open_types = st.recursive(
    st.one_of(st.just(INT), st.just(TOP), st.builds(TVar, _names)), _extend, max_leaves=8
)


@pytest.fixture
def a_type():
    return A


@pytest.fixture
def b_type():
    return B
