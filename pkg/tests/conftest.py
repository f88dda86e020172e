import pytest

from krh.builtins import builtin_algebra, builtin_names


def pytest_addoption(parser):
    parser.addoption("--regen-goldens", action="store_true", help="rewrite golden files instead of comparing")


@pytest.fixture
def regen_goldens(request):
    return request.config.getoption("--regen-goldens")


@pytest.fixture(params=builtin_names())
def alg(request):
    return builtin_algebra(request.param)


@pytest.fixture
def h4():
    return builtin_algebra("sweedler_h4")


@pytest.fixture
def uq():
    return builtin_algebra("uq_sl2_prime_q4")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
