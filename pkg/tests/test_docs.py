import inspect

import pytest

from weakmag.analysis import recommend_design, shift_curve
from weakmag.config import load_config
from weakmag.spectrum.fitting import fit_gaussian
from weakmag.spectrum.spectrometer import apply_spectrometer


@pytest.mark.parametrize(
    "func", [fit_gaussian, recommend_design, apply_spectrometer, load_config, shift_curve]
)
def test_entry_points_document_args_and_returns(func):
    doc = inspect.getdoc(func) or ""
    assert "Args:" in doc
    assert "Returns:" in doc
    for name in inspect.signature(func).parameters:
        assert name in doc
