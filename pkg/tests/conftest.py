import numpy as np
import pytest

from qwhydro.walk import SpinorField


def make_smooth_spinor(rng, n_sites, offset=4.0, amp=0.4, k_max=4):
    """Band-limited random spinor with component moduli bounded away from zero.

    The offset/amp ratio keeps the component phases well resolved on the
    grid, so spectral derivatives of the phase fields are trustworthy.
    """
    def component():
        coeff = np.zeros(n_sites, dtype=complex)
        for k in range(-k_max, k_max + 1):
            coeff[k % n_sites] = amp * (rng.normal() + 1j * rng.normal())
        return np.fft.ifft(coeff * n_sites) + offset

    return SpinorField(left=component(), right=component())


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
