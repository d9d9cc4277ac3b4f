"""
Pytest configuration for the verification toolkit.
"""

import os
import sys

import numpy as np
import pytest

# Add the parent directory to the path for imports to work
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

# Set testing environment variables
os.environ["CONFIGURE_LOGGING"] = "false"
os.environ.setdefault("PLEIJEL_MAX_WORKERS", "2")


@pytest.fixture
def rng():
    """Seeded generator for single-object tests."""
    return np.random.default_rng(12345)


@pytest.fixture
def unit_ball_3d():
    from geometry.bodies import Ball

    return Ball(dim=3)


@pytest.fixture
def unit_disk():
    from geometry.bodies import Ball

    return Ball(dim=2)


@pytest.fixture
def ellipsoid_211():
    from geometry.builtins import parse_body_spec

    return parse_body_spec("ellipsoid:2,1,1")


@pytest.fixture
def cube():
    from geometry.builtins import unit_cube

    return unit_cube(3)


@pytest.fixture
def tmp_reports_dir(tmp_path, monkeypatch):
    """Point the report output directory at a temporary path."""
    from utils.config import Settings

    monkeypatch.setattr(Settings, "OUTPUT_DIR", str(tmp_path))
    return tmp_path
