import pytest
from hypothesis import strategies as st

from mindtree import _backend
from mindtree.tree import Tree

ACCEPTANCE_LINES = {}


def nested_trees(max_leaves=40):
    """Hypothesis strategy for nested-tuple shapes with unlabeled leaves."""
    return st.recursive(st.none(), lambda kids: st.tuples(kids, kids), max_leaves=max_leaves)


def trees(max_leaves=40):
    return nested_trees(max_leaves).map(Tree.from_nested)


def swap_some(nested, rnd):
    """Copy of ``nested`` with a random subset of sibling pairs swapped."""
    if not isinstance(nested, tuple):
        return nested
    a, b = swap_some(nested[0], rnd), swap_some(nested[1], rnd)
    return (b, a) if rnd.random() < 0.5 else (a, b)


@pytest.fixture(params=_backend.available())
def backend(request):
    previous = _backend.use(request.param)
    yield request.param
    _backend.use(previous)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
