"""Timing comparison of the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py

Runs each kernel through the compiled path (when numba is importable) and
through the plain-Python implementation, on a driven-JC-sized workload, and
prints the per-call time and speedup. Results are checked to agree to
machine precision before any timing is reported.
"""

import time

import numpy as np

from heliumqed import _kernels as kn
from heliumqed import hamiltonians as hm
from heliumqed import operators as ops


def timeit(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_rk4():
    dim = 32
    space = ops.qubit_cavity_space(dim)
    freqs = hm.ModelFrequencies(
        omega_a=1.0, omega_c=1.0, omega_l=1.0,
        omega_rabi_c=0.01, omega_rabi_c_tilde=0.004,
        omega_rabi_l=0.5, omega_rabi_l_tilde=0.2,
    )
    h = hm.h_interaction(freqs, space, driven=True)
    from heliumqed.constants import HBAR

    mats = np.ascontiguousarray(h.mats / HBAR)
    amps = np.ascontiguousarray(h.amps)
    ws = np.ascontiguousarray(h.freqs)
    psi0 = np.zeros(space.dim, dtype=complex)
    psi0[dim] = 1.0  # |e, 0>
    times = np.linspace(0.0, 50.0, 11)
    dt_max = (2 * np.pi / h.max_frequency) / 20

    args = (mats, amps, ws, psi0, times, dt_max)
    return "rk4_phased_propagate (dim 64, 12 terms, ~3200 steps)", (
        lambda: kn.rk4_phased_propagate(*args),
        lambda: kn._rk4_phased_propagate_impl(*args),
    )


def bench_wigner():
    rng = np.random.default_rng(1)
    psi = rng.normal(size=48) + 1j * rng.normal(size=48)
    psi /= np.linalg.norm(psi)
    xs = np.linspace(-4, 4, 61)
    ps = np.linspace(-4, 4, 61)
    return "wigner_pure_grid (dim 48, 61x61 grid)", (
        lambda: kn.wigner_pure_grid(psi, xs, ps),
        lambda: kn._wigner_pure_grid_impl(psi, xs, ps),
    )


def main():
    if not kn.USE_NUMBA:
        print("numba path disabled (HELIUMQED_NO_NUMBA set or numba missing);")
        print("both columns below run the pure-numpy implementation.")
    for label, (fast, slow) in (bench_rk4(), bench_wigner()):
        fast()  # trigger JIT compilation outside the timed region
        t_fast, out_fast = timeit(fast)
        t_slow, out_slow = timeit(slow, repeat=2)
        assert np.max(np.abs(np.asarray(out_fast) - np.asarray(out_slow))) < 1e-12
        print(f"{label}")
        print(f"  numba:  {t_fast * 1e3:9.2f} ms")
        print(f"  numpy:  {t_slow * 1e3:9.2f} ms")
        print(f"  speedup: x{t_slow / t_fast:.1f}")


if __name__ == "__main__":
    main()
