import hypothesis
import hypothesis.strategies as st
import pytest

from domdraw.graph_core import gen_random_dag

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("default")


@st.composite
def random_dags(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    p = draw(st.sampled_from([0.0, 0.2, 0.35, 0.5, 0.7, 1.0]))
    seed = draw(st.integers(0, 2**31 - 1))
    return gen_random_dag(n, p, seed)


@pytest.fixture
def diamond():
    from domdraw.graph_core import Dag

    return Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance")
        for line in LINES:
            terminalreporter.write_line(line)
