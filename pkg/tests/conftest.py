import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synthecg.dataio import write_array, write_json  # noqa: E402


def make_bank_arrays(seed: int = 0, n: int = 12000):
    """Synthetic stand-ins for the pre-converted artefact records."""
    rng = np.random.default_rng(seed)
    t = np.arange(n) / 250.0
    bw = 0.6 * np.sin(2 * np.pi * 0.25 * t) + 0.2 * np.cumsum(rng.standard_normal(n)) / np.sqrt(n)
    ma = 0.3 * rng.standard_normal(n)
    return bw, ma


@pytest.fixture(scope="session")
def bank_dir(tmp_path_factory):
    directory = tmp_path_factory.mktemp("artefact_bank")
    bw, ma = make_bank_arrays()
    write_array(directory / "bw.f32", bw, sampling_rate=250.0)
    write_array(directory / "ma.f32", ma, sampling_rate=250.0)
    return directory


@pytest.fixture(scope="session")
def bank(bank_dir):
    from synthecg.artefacts import load_bank

    return load_bank(bank_dir)
