import os

import hypothesis
import numpy as np
import pytest

np.seterr(all="raise")

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=25, deadline=None, derandomize=True)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def small_groups():
    from verba.standard import (
        alternating_group, cyclic_group, dihedral_group, quaternion_group, symmetric_group,
    )
    return {
        "C1": cyclic_group(1), "C5": cyclic_group(5), "S3": symmetric_group(3),
        "D8": dihedral_group(8), "Q8": quaternion_group(), "A4": alternating_group(4),
    }


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
