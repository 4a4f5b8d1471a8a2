"""Tree-model oracles: types as finite automata over their infinite unfoldings.

Nothing here calls the algorithmic deciders; the only shared code is kernel
syntax (opening a ``mu`` body).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..errors import IllFormedType, NotContractive
from ..kernel.pretty import show_type
from ..kernel.syntax import Arrow, Mu, TInt, TTop, contractive, is_closed, open_type


@dataclass(frozen=True)
class TypeAutomaton:
    start: int
    labels: tuple[str, ...]            # "Int", "Top" or "Arrow" per state
    succ: tuple[tuple[int, int] | None, ...]

    @property
    def states(self) -> range:
        return range(len(self.labels))

    def __len__(self):
        return len(self.labels)


def _head(t):
    # contractiveness guarantees this loop stops
    while isinstance(t, Mu):
        t = open_type(t.body, t)
    return t


def to_automaton(t) -> TypeAutomaton:
    if not is_closed(t):
        raise IllFormedType(f"{show_type(t)} is not closed")
    if not contractive(t):
        raise NotContractive(f"{show_type(t)} is not contractive")
    index: dict = {}
    labels: list[str] = []
    succ: list = []
    todo = deque()

    def state(u):
        h = _head(u)
        if h not in index:
            index[h] = len(labels)
            labels.append(type(h).__name__)
            succ.append(None)
            todo.append(h)
        return index[h]

    start = state(t)
    while todo:
        h = todo.popleft()
        match h:
            case Arrow(a, b):
                succ[index[h]] = (state(a), state(b))
            case TInt() | TTop():
                pass
            case _:
                raise IllFormedType(f"unexpected head {h!r}")
    names = {"TInt": "Int", "TTop": "Top", "Arrow": "Arrow"}
    return TypeAutomaton(start, tuple(names[x] for x in labels), tuple(succ))


def oracle_equal(a, b) -> bool:
    """Bisimilarity of the two automata from their start states."""
    m, n = to_automaton(a), to_automaton(b)
    seen = set()
    todo = [(m.start, n.start)]
    while todo:
        p, q = todo.pop()
        if (p, q) in seen:
            continue
        seen.add((p, q))
        if m.labels[p] != n.labels[q]:
            return False
        if m.labels[p] == "Arrow":
            (pd, pc), (qd, qc) = m.succ[p], n.succ[q]
            todo += [(pd, qd), (pc, qc)]
    return True


def oracle_sub(a, b) -> bool:
    """Greatest simulation: Top on the right, domains flipped."""
    m, n = to_automaton(a), to_automaton(b)
    seen = set()
    # (left automaton, state, right automaton, state); domains swap sides
    todo = [(m, m.start, n, n.start)]
    while todo:
        x, p, y, q = todo.pop()
        key = (x is m, p, q)
        if key in seen:
            continue
        seen.add(key)
        if y.labels[q] == "Top":
            continue
        if x.labels[p] != y.labels[q]:
            return False
        if x.labels[p] == "Arrow":
            (pd, pc), (qd, qc) = x.succ[p], y.succ[q]
            todo.append((y, qd, x, pd))
            todo.append((x, pc, y, qc))
    return True
