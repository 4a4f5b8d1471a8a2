"""Oracles, enumerators, generators and the property suites built on them."""
from .enumerate import count_types, count_types_named, enumerate_types  # noqa: F401
from .generate import MODES, check_generated, generate_well_typed  # noqa: F401
from .oracles import TypeAutomaton, oracle_equal, oracle_sub, to_automaton  # noqa: F401
from .suites import Findings, SuiteResult, run_all  # noqa: F401
