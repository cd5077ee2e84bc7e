import numpy as np
import pytest

from springcrank.geometry import Branch, CouplerAttachment, Direction, FourBarGeometry
from springcrank.torque import ConstantLoad, design_pipeline


@pytest.fixture(scope="session")
def slider():
    """The running slider-crank example: b/a = 6."""
    return FourBarGeometry.slider_crank(1.0, 6.0)


@pytest.fixture(scope="session")
def rocker():
    """The running rocker-crank example: b/a=6, c/a=2, d/a=6.2."""
    return FourBarGeometry.rocker_crank(1.0, 6.0, 2.0, 6.2)


@pytest.fixture(scope="session")
def arm_perp():
    """Perpendicular coupler arm, one coupler-length long (the reference design)."""
    return CouplerAttachment(6.0, np.pi / 2)


@pytest.fixture(scope="session")
def reference_design(slider, arm_perp):
    """Full pipeline result for the reference slider-crank design, clockwise."""
    return design_pipeline(slider, arm_perp, Branch.OPEN, ConstantLoad(1.0),
                           0.4, Direction.CW)
