import numpy as np
import pytest

from qwhydro import initial as ini
from qwhydro import schrodinger as sch
from qwhydro import walk as wk


def _cos_state(n, m):
    x = 2 * np.pi * np.arange(n) / n
    return sch.Wavefunction(np.exp(1j * m * np.cos(x))), x


def test_spectral_propagate_identity_at_zero_time():
    psi, _ = _cos_state(256, 10.0)
    out = sch.spectral_propagate(psi, 10.0, 0.0)
    np.testing.assert_allclose(out.values, psi.values, atol=1e-15)


def test_spectral_propagate_norm_and_composition():
    psi, _ = _cos_state(512, 20.0)
    a = sch.spectral_propagate(psi, 20.0, 0.7)
    assert np.linalg.norm(a.values) == pytest.approx(np.linalg.norm(psi.values),
                                                     rel=1e-13)
    two_step = sch.spectral_propagate(sch.spectral_propagate(psi, 20.0, 0.3),
                                      20.0, 0.4)
    one_step = sch.spectral_propagate(psi, 20.0, 0.7)
    np.testing.assert_allclose(two_step.values, one_step.values, atol=1e-13)


def test_spectral_propagate_matches_bessel_series():
    m = 20.0
    psi, x = _cos_state(512, m)
    t = 0.8
    out = sch.spectral_propagate(psi, m, t)
    series = sch.single_shock_psi(x, t, m)
    np.testing.assert_allclose(out.values, series, atol=1e-10)


def test_plane_wave_mode_phase_rate():
    # e^{iqx} evolves by e^{−iq²t/2m}: the non-relativistic dispersion
    n, m, q = 128, 50.0, 3.0
    x = 2 * np.pi * np.arange(n) / n
    psi = sch.Wavefunction(np.exp(1j * q * x))
    out = sch.spectral_propagate(psi, m, 2.0)
    expected = np.exp(1j * q * x - 1j * q ** 2 * 2.0 / (2 * m))
    np.testing.assert_allclose(out.values, expected, atol=1e-13)


def test_greens_propagate_plane_wave():
    n, m, q, t = 128, 20.0, 2.0, 0.5
    x = 2 * np.pi * np.arange(n) / n
    psi0 = np.exp(1j * q * x)
    out = sch.greens_propagate(psi0, m, t, x_eval=x[:16])
    expected = np.exp(1j * q * x[:16] - 1j * q ** 2 * t / (2 * m))
    np.testing.assert_allclose(out.values, expected, atol=1e-4)


def test_greens_propagate_cross_oracle():
    # independent kernel quadrature against the exact spectral evolution
    m, t = 20.0, 0.5
    n = 256
    x = 2 * np.pi * np.arange(n) / n
    psi0 = np.exp(1j * m * np.cos(x))
    subset = x[::8]  # 32 evaluation points keep the quadrature affordable
    out = sch.greens_propagate(psi0, m, t, x_eval=subset)
    ref = sch.spectral_propagate(sch.Wavefunction(psi0), m, t).values[::8]
    rel = np.linalg.norm(out.values - ref) / np.linalg.norm(ref)
    assert rel < 1e-4


def test_greens_propagate_small_time_identity():
    n, m = 128, 20.0
    x = 2 * np.pi * np.arange(n) / n
    psi0 = np.exp(2j * x)  # gentle band-limited data
    out = sch.greens_propagate(psi0, m, 1e-3, x_eval=x[:8])
    np.testing.assert_allclose(out.values, psi0[:8], atol=1e-3)


def test_greens_propagate_rejects_bad_window():
    n, m = 128, 20.0
    x = 2 * np.pi * np.arange(n) / n
    psi0 = np.exp(1j * m * np.cos(x))
    with pytest.raises(ValueError):
        sch.greens_propagate(psi0, m, 0.5, window=0.05, x_eval=x[:4])
    with pytest.raises(ValueError):
        sch.greens_propagate(psi0, m, -0.5)


def test_single_shock_unit_density_at_small_time():
    x = np.linspace(0, 2 * np.pi, 64, endpoint=False)
    psi = sch.single_shock_psi(x, 1e-4, 50.0)
    np.testing.assert_allclose(np.abs(psi), 1.0, atol=1e-3)


def test_single_shock_density_spike_at_caustic():
    m = 100.0
    x = np.linspace(-0.2, 0.2, 81)
    early = np.abs(sch.single_shock_psi(x, 0.5, m)) ** 2
    at_caustic = np.abs(sch.single_shock_psi(x, 1.0, m)) ** 2
    assert at_caustic.max() > 4 * early.max()
    assert abs(x[np.argmax(at_caustic)]) < 0.02


def test_single_shock_solves_schrodinger_equation():
    # centered differences of the series solution: residual falls at 2nd order
    m = 20.0
    x = np.linspace(0.3, 1.1, 33)
    t = 0.9
    res = []
    for h in (2e-3, 1e-3):
        psi_t = (sch.single_shock_psi(x, t + h, m) - sch.single_shock_psi(x, t - h, m)) / (2 * h)
        psi_xx = (sch.single_shock_psi(x + h, t, m) - 2 * sch.single_shock_psi(x, t, m)
                  + sch.single_shock_psi(x - h, t, m)) / h ** 2
        res.append(np.max(np.abs(1j * psi_t + psi_xx / (2 * m))))
    assert res[1] < res[0]
    assert 3.0 < res[0] / res[1] < 5.0


def test_bessel_cutoff_band():
    for m in (10.0, 20.0, 100.0):
        k = sch.bessel_cutoff(m)
        assert k <= m + 40 * m ** (1 / 3)
        from scipy.special import jv
        assert abs(jv(k, m)) >= 1e-16
        assert abs(jv(k + 3, m)) < 1e-15


def test_schrodinger_hydro_cosine_phase():
    m = 100.0
    n = 1024
    x = 2 * np.pi * np.arange(n) / n
    psi = sch.Wavefunction(np.exp(1j * m * np.cos(x)))
    dens, v = sch.schrodinger_hydro(psi, m)
    np.testing.assert_allclose(dens, 1.0, atol=1e-13)
    np.testing.assert_allclose(v, -np.sin(x), atol=1e-10)


def test_schrodinger_hydro_simple_cases():
    n, m = 128, 10.0
    x = 2 * np.pi * np.arange(n) / n
    const = sch.Wavefunction(np.full(n, 0.5 - 0.3j))
    dens, v = sch.schrodinger_hydro(const, m)
    np.testing.assert_allclose(dens, abs(0.5 - 0.3j) ** 2, rtol=1e-14)
    np.testing.assert_allclose(v, 0.0, atol=1e-14)

    mode = sch.Wavefunction(np.exp(1j * 4 * x))
    _, v = sch.schrodinger_hydro(mode, m)
    np.testing.assert_allclose(v, 4.0 / m, rtol=1e-12)


def test_schrodinger_hydro_masks_near_zeros():
    n, m = 64, 5.0
    x = 2 * np.pi * np.arange(n) / n
    vals = np.sin(x / 2).astype(complex)  # vanishes at x = 0
    vals[0] = 0.0
    _, v = sch.schrodinger_hydro(sch.Wavefunction(vals), m)
    assert v[0] == 0.0


def test_velocity_antiderivative_recovers_phase():
    # ∫ m·v dx reproduces the phase up to a constant on smooth data
    m = 25.0
    n = 512
    p = wk.build_walk(n, m)
    spec = ini.single_cosine(q_max=m, mass=m)
    wf = ini.schrodinger_initial(p, spec)
    _, v = sch.schrodinger_hydro(wf, m)
    khat = np.fft.fftfreq(n, 1.0 / n)
    vhat = np.fft.fft(m * v)
    with np.errstate(divide="ignore", invalid="ignore"):
        phihat = np.where(khat != 0, vhat / (1j * khat), 0.0)
    phi_rec = np.fft.ifft(phihat).real
    phi_true = m * np.cos(p.x)
    shift = phi_true.mean() - phi_rec.mean()
    np.testing.assert_allclose(phi_rec + shift, phi_true, atol=1e-9)
