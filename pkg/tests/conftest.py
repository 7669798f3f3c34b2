from fractions import Fraction

import pytest


def cf_denominator(digits):
    """Independent oracle: evaluate [d0+1, d1+1, ...] as a Fraction and take its denominator."""
    x = Fraction(0)
    for d in reversed(list(digits)):
        x = 1 / (d + 1 + x)
    return x.denominator


def base_digits(n, k):
    out = []
    while True:
        n, d = divmod(n, k)
        out.append(d)
        if n == 0:
            return out


@pytest.fixture(scope="session")
def kappa2_small():
    from zaremba.kappa import kappa_range

    return kappa_range(2, 1 << 12).tolist()


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if getattr(rep, "when", "call") != "call" and key != "error":
                continue
            if "test_acceptance.py" not in rep.nodeid:
                continue
            name = rep.nodeid.split("::")[-1]
            lines.append(f"{'PASS' if rep.passed else 'FAIL'}  {name}  ({rep.duration:.2f}s)")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: s.split()[1]):
            terminalreporter.write_line(line)
