import numpy as np
import pytest
import scipy.special

from equilib import SupportError, digamma

EULER_GAMMA = 0.5772156649015329


def test_digamma_at_one_is_minus_euler_gamma():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-13)


def test_digamma_recurrence():
    # psi(x + 1) = psi(x) + 1/x, checked off the shift lattice
    for x in [0.1, 0.7, 2.3, 9.5, 25.0]:
        assert digamma(x + 1.0) == pytest.approx(digamma(x) + 1.0 / x,
                                                 abs=1e-12)


def test_digamma_against_library_oracle():
    xs = np.concatenate([np.linspace(1e-3, 1, 200),
                         np.linspace(1, 500, 500)])
    assert np.max(np.abs(digamma(xs) - scipy.special.digamma(xs))) < 1e-12


def test_digamma_half_integer_closed_form():
    # psi(1/2) = -gamma - 2 ln 2
    assert digamma(0.5) == pytest.approx(-EULER_GAMMA - 2 * np.log(2),
                                         abs=1e-12)


def test_digamma_rejects_nonpositive():
    with pytest.raises(SupportError):
        digamma(0.0)
    with pytest.raises(SupportError):
        digamma(-1.5)
