import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

EXAMPLE_DELTA = [(-1, 0), (-1, 0), (0, -1), (1, 0), (1, 0), (0, 1)]
EXAMPLE_K = [0, 1, 0, 0]
LINE_DELTA = [(1, 0), (0, 1), (-1, -1)]


def plane_degree(d: int) -> list[tuple[int, int]]:
    return [(1, 0)] * d + [(0, 1)] * d + [(-1, -1)] * d


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.LEDGER:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.LEDGER:
        terminalreporter.write_line(line)


# every problem here has n + r <= 7, small enough for the brute-force tree oracle
SMALL_INSTANCES = [
    ([(1, 0), (-1, 0)], [0]),
    ([(1, 0), (0, 1), (-1, -1)], [0, 0]),
    ([(1, 0), (0, 1), (-1, -1)], [1]),
    ([(2, 0), (-1, 1), (-1, -1)], [0, 0]),
    ([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 0, 0]),
    ([(1, 0), (0, 1), (-1, 0), (0, -1)], [1, 0]),
    ([(1, 0), (0, 1), (-1, 0), (0, -1)], [0, 1]),
    ([(1, 0), (0, 1), (-1, 0), (0, -1)], [2]),
    ([(1, 0), (1, 0), (-1, 0), (-1, 0)], [0, 0, 0]),
    ([(1, 0), (1, 0), (-2, -1), (0, 1)], [1, 0]),
    ([(1, 0), (1, 0), (-2, -1), (0, 1)], [0, 0, 0]),
    ([(1, 0), (1, 0), (0, 2), (-1, -1), (-1, -1)], [1, 1]),
    ([(1, 0), (1, 0), (0, 2), (-1, -1), (-1, -1)], [2, 0]),
    ([(1, 0), (1, 0), (1, 0), (0, 1), (-3, -1)], [3]),
    ([(1, 0), (0, 1), (-1, -1), (1, 0), (0, 1), (-1, -1)], [4]),
]


def library_class_key(t, labeled):
    """The brute-force oracle's canonical key for a library type."""
    import oracles

    n = t.n
    vmap = {}
    nxt = n
    for v, m in enumerate(t.markers):
        if m:
            vmap[v] = m - 1
        else:
            vmap[v] = nxt
            nxt += 1
    edges = [tuple(sorted((vmap[a], vmap[b]))) for a, b in t.edges]
    ends = [(vmap[v], lab - n - 1) for v, lab in t.ends]
    return oracles.canonical_key(n, t.num_vertices, edges, ends, [tuple(v) for v in t.degree], labeled)
