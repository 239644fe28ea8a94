import pytest

from runs.parser import parse_config

SMALL_RUN = """\
grid.n = 8
grid.box_length = 4.0
grid.boundary_mode = fixed
target = s2
initializer = random_smooth
initializer.amplitude = 0.3
initializer.correlation_length = 1.0
seed = 4
flow.max_iters = 4
"""


@pytest.fixture
def write_config(tmp_path):
    """Writes configuration text to a file and returns its path"""

    def write(text, name="run.conf"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def small_run():
    """Four descent steps of a trivial S^2 field on an 8^3 clamped box"""
    return parse_config(SMALL_RUN)
