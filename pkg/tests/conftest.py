import pytest

from corrcache import CacheAllocation, LibraryConfig, default_inv_gain_sq

# One line per acceptance criterion, echoed into the terminal summary so the
# pass/fail verdicts survive output capturing.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def three_user_config():
    # K=N=3 worked example: R_1=0.25, R_2=0.1875, R_3=0.375 gives R=1 and
    # M=0.5625 makes every t_ell exactly 1 under the allocation below.
    return LibraryConfig(
        N=3,
        K=3,
        R=1.0,
        rates=(0.25, 0.1875, 0.375),
        inv_gain_sq=(2.0, 1.8, 1.6),
        M=0.5625,
    )


@pytest.fixture
def three_user_alloc():
    # pi_ell = C(3,ell) R_ell / (K M) so that t_ell = 1 for each sublibrary
    return CacheAllocation(pi=(4.0 / 9.0, 1.0 / 3.0, 2.0 / 9.0))


@pytest.fixture(scope="session")
def reference_gains():
    return default_inv_gain_sq(5)
