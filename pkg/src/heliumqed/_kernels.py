"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Set HELIUMQED_NO_NUMBA=1 to force the fallback (also used automatically if
numba is unavailable). Both paths compute identically; the benchmark script
benchmarks/bench_kernels.py compares them.

Kernels:
  * rk4_phased_propagate -- fixed-step RK4 for dpsi/dt = -i H(t) psi with
    H(t) = sum_k a_k exp(i w_k t) M_k (all time-dependent Hamiltonians in
    this package decompose this way; matrices are pre-divided by hbar).
  * displacement_fock -- analytic Fock-basis displacement matrix via column
    recurrences (no matrix exponential), used for Wigner grids.
  * wigner_pure_grid -- displaced-parity Wigner samples of a pure state.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("HELIUMQED_NO_NUMBA", "") not in ("1", "true", "yes")
if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def _rk4_phased_propagate_impl(mats, amps, freqs, psi0, times, dt_max):
    n_terms = mats.shape[0]
    dim = psi0.shape[0]
    n_times = times.shape[0]
    out = np.zeros((n_times, dim), dtype=np.complex128)
    psi = psi0.copy()
    t = times[0]
    out[0] = psi

    def rhs(t, psi):
        y = np.zeros(dim, dtype=np.complex128)
        for k in range(n_terms):
            phase = amps[k] * np.exp(1j * freqs[k] * t)
            y += phase * np.dot(mats[k], psi)
        return -1j * y

    for i in range(1, n_times):
        t_target = times[i]
        span = t_target - t
        n_sub = int(np.ceil(span / dt_max))
        if n_sub < 1:
            n_sub = 1
        dt = span / n_sub
        for _ in range(n_sub):
            k1 = rhs(t, psi)
            k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1)
            k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2)
            k4 = rhs(t + dt, psi + dt * k3)
            psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            t += dt
        t = t_target
        out[i] = psi
    return out


def _displacement_fock_impl(beta, dim):
    d = np.zeros((dim, dim), dtype=np.complex128)
    # first column: coherent-state amplitudes <m|D(beta)|0>
    d[0, 0] = np.exp(-0.5 * abs(beta) ** 2)
    for m in range(1, dim):
        d[m, 0] = d[m - 1, 0] * beta / np.sqrt(m)
    # column recurrence from b^dag D = D (b^dag + beta^*):
    #   sqrt(n+1) D[m, n+1] = sqrt(m) D[m-1, n] - beta^* D[m, n]
    bc = np.conj(beta)
    for n in range(dim - 1):
        rn = 1.0 / np.sqrt(n + 1.0)
        d[0, n + 1] = -bc * d[0, n] * rn
        for m in range(1, dim):
            d[m, n + 1] = (np.sqrt(m) * d[m - 1, n] - bc * d[m, n]) * rn
    return d


def _wigner_pure_grid_impl(psi, xs, ps):
    dim = psi.shape[0]
    nx = xs.shape[0]
    npp = ps.shape[0]
    w = np.zeros((npp, nx), dtype=np.float64)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    inv_pi = 1.0 / np.pi
    for j in range(npp):
        for i in range(nx):
            beta = (xs[i] + 1j * ps[j]) * inv_sqrt2
            dmat = _displacement_fock(-beta, dim)
            phi = np.dot(dmat, psi)
            val = 0.0
            sign = 1.0
            for m in range(dim):
                val += sign * (phi[m].real ** 2 + phi[m].imag ** 2)
                sign = -sign
            w[j, i] = inv_pi * val
    return w


if USE_NUMBA:
    _rk4_numba = numba.njit(cache=True)(_rk4_phased_propagate_impl)
    _displacement_fock = numba.njit(cache=True)(_displacement_fock_impl)
    _wigner_numba = numba.njit(cache=True)(_wigner_pure_grid_impl)
else:
    _displacement_fock = _displacement_fock_impl


def rk4_phased_propagate(mats, amps, freqs, psi0, times, dt_max):
    """Sample psi(t) at `times` for H(t)/hbar = sum_k a_k e^{i w_k t} M_k."""
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    psi0 = np.ascontiguousarray(psi0, dtype=np.complex128)
    times = np.ascontiguousarray(times, dtype=np.float64)
    if USE_NUMBA:
        return _rk4_numba(mats, amps, freqs, psi0, times, float(dt_max))
    return _rk4_phased_propagate_impl(mats, amps, freqs, psi0, times, float(dt_max))


def displacement_fock(beta, dim):
    """Analytic <m|D(beta)|n> matrix (no expm); exact up to truncation."""
    return np.asarray(_displacement_fock(complex(beta), int(dim)))


def wigner_pure_grid(psi, xs, ps):
    """W(x, p) = (1/pi) <psi|D(beta) Pi D(-beta)|psi>, beta = (x+ip)/sqrt(2).

    Returns an array of shape (len(ps), len(xs)); integrates to ~1 over dx dp.
    """
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ps = np.ascontiguousarray(ps, dtype=np.float64)
    if USE_NUMBA:
        return _wigner_numba(psi, xs, ps)
    return _wigner_pure_grid_impl(psi, xs, ps)
