import numpy as np
import pytest
from hypothesis import settings

from qgame.game import welfare

settings.register_profile("qgame", deadline=None, max_examples=200)
settings.load_profile("qgame")


@pytest.fixture
def m():
    return welfare()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unitary(rng, n=2):
    """Haar-ish random unitary from the QR decomposition of a complex Gaussian."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# -- acceptance criteria reporting -------------------------------------------

_CRITERIA: dict[str, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(ident, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    ident, text = mark.args
    status = "PASS" if rep.passed else "FAIL"
    _CRITERIA.setdefault(ident, []).append((status, f"{text} [{item.name}]"))


def _criterion_order(ident: str):
    digits = "".join(ch for ch in ident if ch.isdigit())
    return int(digits or 0), ident


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for ident in sorted(_CRITERIA, key=_criterion_order):
        for status, text in _CRITERIA[ident]:
            tr.write_line(f"criterion {ident:5s} {status}  {text}")
