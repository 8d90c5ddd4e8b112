from itertools import combinations

import networkx as nx
import pytest
from hypothesis import strategies as st

from lsperfect.graphcore import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_alpha(g: Graph) -> int:
    """Largest stable set by checking every subset."""
    best = 0
    for mask in range(1 << g.n):
        if bin(mask).count("1") > best and all(
            not (mask >> u & 1 and mask >> v & 1) for u, v in g.edges()
        ):
            best = bin(mask).count("1")
    return best


def brute_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        for a, b, c in combinations(g.neighbors(v), 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def c5():
    return Graph.cycle(5)


# --- acceptance summary: one line per criterion ------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "seconds": 0.0, "tests": 0})
    if rep.when == "call":
        entry["tests"] += 1
        entry["seconds"] += rep.duration
    if rep.failed or (rep.when == "setup" and rep.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        e = _CRITERIA[number]
        status = "PASS" if e["ok"] else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d} {status}  {e['title']}  ({e['tests']} checks, {e['seconds']:.1f} s)"
        )
