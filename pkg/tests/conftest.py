import math

import mpmath
import pytest


def laguerre_series_oracle(n, a, x):
    """sum_j (-1)^j C(n+a, n-j) x^j / j! in 50-digit arithmetic."""
    with mpmath.workdps(50):
        a, x = mpmath.mpf(a), mpmath.mpf(x)
        total = mpmath.mpf(0)
        for j in range(n + 1):
            binom = mpmath.gamma(n + a + 1) / (mpmath.factorial(n - j) * mpmath.gamma(a + j + 1))
            total += (-1) ** j * binom * x**j / mpmath.factorial(j)
        return float(total)


@pytest.fixture
def series_oracle():
    return laguerre_series_oracle


def close(a, b, tol):
    return abs(a - b) <= tol


def rel_close(a, b, tol):
    return abs(a - b) <= tol * max(abs(a), abs(b), math.ulp(1.0))
