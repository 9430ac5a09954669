import pytest

from weakmag.analysis import ExperimentSetup


@pytest.fixture
def reference_setup() -> ExperimentSetup:
    """833 nm / 50 nm probe, 1000 m of fiber at V = 32 rad/(T m), analytic readout."""
    return ExperimentSetup()
