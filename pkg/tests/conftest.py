import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


def random_hermitian(rng, n, scale=1.0):
    X = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (X + X.conj().T) / 2


def random_state(rng, n, rank=None):
    k = n if rank is None else rank
    X = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def bell_phi_plus():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.outer(v, v).astype(complex)


def ket(bits, d=2):
    v = np.zeros(d ** len(bits), dtype=complex)
    idx = 0
    for b in bits:
        idx = idx * d + int(b)
    v[idx] = 1
    return v


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def record(request):
    """Log one acceptance line; printed in the terminal summary."""
    lines = request.config.stash.setdefault(_ACCEPTANCE, [])

    def _record(criterion, ok, detail):
        lines.append(f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
