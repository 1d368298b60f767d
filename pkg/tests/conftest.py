import time

import pytest

from fleetmst import baselines, engine
from fleetmst.generators import GenSpec, lattice8, mix64

import acceptance_report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not acceptance_report.RESULTS:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(acceptance_report.RESULTS):
        status, detail = acceptance_report.RESULTS[num]
        terminalreporter.write_line(f"criterion {num}: {status} - {detail}")


def corpus_specs() -> list[GenSpec]:
    """Deterministic mixed-family corpus, > 2000 graphs.

    Random graphs are weighted towards heavy duplicate weights (small
    |Q|) because that is where tie handling breaks, if it breaks.
    """
    specs = []
    for qi, q in enumerate(((1,), (1, 2), (1, 2, 3), (1, 2, 3, 4, 5))):
        for s in range(480):
            seed = 1000 * qi + s
            r = mix64(seed)
            n = 2 + r % 63
            mmax = n * (n - 1) // 2
            m = (r >> 16) % (mmax + 1)
            specs.append(GenSpec("random_gnm", {"n": n, "m": m}, q, seed))
    for p in range(2, 21):
        for seed in (0, 1, 2):
            specs.append(GenSpec("lattice8", {"p": p}, (1, 2, 3), seed))
            specs.append(GenSpec("lattice8", {"p": p}, tuple(range(1, 11)), seed + 7))
    for n in range(2, 13):
        for seed in range(4):
            specs.append(GenSpec("complete", {"n": n}, (1, 2, 3), seed))
    for n in range(1, 41):
        specs.append(GenSpec("path", {"n": n}, (1, 2, 3, 4, 5), n))
    for n in range(3, 43):
        specs.append(GenSpec("cycle", {"n": n}, (1, 2), n))
    return specs


@pytest.fixture(scope="session")
def corpus():
    return [(spec, spec.build()) for spec in corpus_specs()]


@pytest.fixture(scope="session")
def corpus_runs(corpus):
    """Engine results for all three modes plus the Kruskal reference."""
    out = []
    for spec, g in corpus:
        ref = baselines.kruskal(g)
        runs = {mode: engine.run(g, mode=mode) for mode in engine.MODES}
        out.append((spec, g, ref, runs))
    return out


@pytest.fixture(scope="session")
def lattice_grid():
    """The desk-scale version of the lattice experiment, computed once."""
    rows = {}
    for p in (100, 300, 500, 700, 1000):
        g = lattice8(p, tuple(range(1, 11)), seed=7)
        t0 = time.perf_counter()
        res = engine.run(g, mode="ooag")
        elapsed = time.perf_counter() - t0
        rows[p] = {
            "n": g.n,
            "elapsed": elapsed,
            "k": res.k_after_node_stage,
            "rounds": res.rounds,
            "comparisons": res.comparisons,
            "ratio": g.n / res.comparisons,
            "total": res.total,
        }
    return rows
