import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def high_ambient_precision():
    # Library calls carry their own workprec blocks; this protects the
    # test-side arithmetic (differences against closed forms etc.) from being
    # rounded to the 53-bit mpmath default.
    old = mp.prec
    mp.prec = 400
    yield
    mp.prec = old
