import pytest
from hypothesis import HealthCheck, settings

from perfiso.blocks import block_partition
from perfiso.bundled import bundled_table

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def block(name, p, index=0):
    t = bundled_table(name)
    return t, block_partition(t, p)[index]


@pytest.fixture
def s3_block():
    return block("s3", 3)


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance
    if test_acceptance.LINES:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.LINES:
            terminalreporter.write_line(line)
