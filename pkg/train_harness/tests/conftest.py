import sys

import pytest


@pytest.fixture(scope="session")
def tf():
    return pytest.importorskip("tensorflow")


@pytest.fixture(scope="session")
def generator_available():
    import subprocess

    proc = subprocess.run(
        [sys.executable, "-m", "synthecg", "--version"], capture_output=True
    )
    if proc.returncode != 0:
        pytest.skip("synthecg generator CLI not installed")
