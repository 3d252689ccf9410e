import numpy as np
import pytest
from hypothesis import settings

from ergodic_wigner.diag_process import ProcessSpec

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GALLERY = [
    ProcessSpec("IIDGaussian"),
    ProcessSpec("IIDRademacher"),
    ProcessSpec("AR1", 0.5),
    ProcessSpec("AR1", -0.7),
    ProcessSpec("MarkovTwoState", 0.8),
    ProcessSpec("EquiCorrelated", 0.5),
]


def batch_mean_se(x, batches=100):
    """Standard error of mean(x) from non-overlapping batch means."""
    x = np.asarray(x, dtype=float)
    m = len(x) // batches
    means = x[: m * batches].reshape(batches, m).mean(axis=1)
    return means.std(ddof=1) / np.sqrt(batches)


@pytest.fixture(params=GALLERY, ids=str)
def gallery_spec(request):
    return request.param


ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
