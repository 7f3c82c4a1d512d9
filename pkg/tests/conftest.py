import time

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bsfix.group import BsElem
from bsfix.ring import Base, ZnElem

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

BASES = (2, 3, 4, 6, 10, 12, 30)


@pytest.fixture(params=BASES, ids=lambda n: f"n{n}")
def base(request):
    return Base(request.param)


@pytest.fixture
def B2():
    return Base(2)


@pytest.fixture
def B6():
    return Base(6)


def zn_strategy(base: Base, nonzero=False):
    ints = st.integers(-200, 200)
    if nonzero:
        ints = ints.filter(bool)
    return st.builds(ZnElem, ints, st.integers(0, 3), st.just(base))


def elem_strategy(base: Base, nonzero_c=False):
    cs = st.integers(-4, 4)
    if nonzero_c:
        cs = cs.filter(bool)
    return st.builds(BsElem, zn_strategy(base), cs).filter(lambda g: not g.is_identity())


bases = st.sampled_from(BASES).map(Base)


# ---------------------------------------------------------------- acceptance summary

ACCEPTANCE_LINES: list[str] = []
SUITE_LIMIT = 60.0
_START = time.perf_counter()


@pytest.hookimpl(tryfirst=True)
def pytest_sessionfinish(session):
    from test_acceptance import SUITE_TIMED

    if not session.config.stash.get(SUITE_TIMED, False):
        return
    dt = time.perf_counter() - _START
    ok = dt < SUITE_LIMIT
    ACCEPTANCE_LINES.append(
        f"[{'PASS' if ok else 'FAIL'}] criterion 11: full suite wall time {dt:.1f}s "
        f"(limit {SUITE_LIMIT:.0f}s)"
    )
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
