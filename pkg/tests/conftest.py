from pathlib import Path

import numpy as np

from partstab import Partition

DATA_DIR = Path(__file__).resolve().parent.parent / "demos" / "data"
GOLDEN_DIR = Path(__file__).resolve().parent / "data" / "golden"

# Filled by test_acceptance.py, printed after the run.
ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)


def make_rng(*key) -> np.random.Generator:
    """Generator keyed by ints and/or strings, stable across runs."""
    entropy = [
        k if isinstance(k, int) else int.from_bytes(str(k).encode(), "big")
        for k in key
    ]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))


def random_partition(units, max_clusters: int, rng: np.random.Generator) -> Partition:
    """Random assignment of the given units into at most max_clusters groups."""
    k = int(rng.integers(1, max_clusters + 1))
    codes = rng.integers(0, k, size=len(units))
    return Partition({u: f"g{codes[i]}" for i, u in enumerate(units)})
