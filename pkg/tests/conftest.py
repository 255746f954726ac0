import numpy as np
import pytest

from sparseq import OneQubitGate, rotation_gate


@pytest.fixture
def generic_gate() -> OneQubitGate:
    """Fixed unitary whose four entries are pairwise distinct and nonzero,
    so entry-placement checks can use exact equality."""
    u = rotation_gate("Z", 0.5) @ rotation_gate("Y", 0.8) @ rotation_gate("Z", 0.3)
    entries = {u.u11, u.u12, u.u21, u.u22}
    assert len(entries) == 4 and all(abs(e) > 1e-3 for e in entries)
    return u


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260811)
