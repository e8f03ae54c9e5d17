"""Configures pytest (beyond the ini file)."""
import numpy
import pytest

from vconn.vc_config import RunConfig, rc


@pytest.fixture(autouse=True)
def add_sci(doctest_namespace):
    """Add numpy as np for doctests."""
    doctest_namespace["np"] = numpy
    doctest_namespace["rc"] = rc


@pytest.fixture
def fast_config():
    """Fewer repetitions than the defaults, for runs whose answer is forced anyway."""
    return RunConfig(seed=0).replace(
        nonscratch_reps=0.2, nonscratch_floor=4,
        scratch_reps=0.5, scratch_floor=3,
        threads=1, early_exit=False, verbose=False)
