"""Syntax, binding, substitution and the concrete grammar."""
from .syntax import *  # noqa: F401,F403
from .parse import parse_cast, parse_term, parse_type  # noqa: F401
from .pretty import show_cast, show_term, show_type  # noqa: F401
