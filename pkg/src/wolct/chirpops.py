"""Chirp-weighted convolution and correlation operators.

These are the O(N^2) quadrature forms

    (f * g)(t)  = sum_m f_m * g(t - t_m) * exp(-i*a/(2b) * t_m*(t - t_m)) * step
    (f o g)(t)  = sum_m conj(f_m) * g(t_m + t) * exp(+i*a/(2b) * t_m*(t_m + t)) * step

with zero extension outside the grid.  The chirp cross-term couples the two
time variables, so no FFT shortcut exists; the direct sums double as the
independent oracles for the verification engine's theorem checks.

Both operators need t_j - t_m (resp. t_j + t_m) to land back on the sampling
lattice, which holds exactly when the grid origin is a lattice point
(symmetric grids with an odd point count, for instance).
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateB, GridMismatch, LatticeViolation
from .params import EPS_B, OlctParams
from .signals import SampledSignal, UniformGrid

#: max matrix entries materialized per output chunk
_CHUNK_ENTRIES = 1 << 22


def _lattice_origin(grid: UniformGrid) -> int:
    if not grid.origin_on_lattice():
        raise LatticeViolation(
            "chirp convolution needs t = 0 on the sampling lattice so that "
            "sums and differences of grid points stay on the grid"
        )
    return round(grid.start / grid.step)


def _check_pair(f: SampledSignal, g: SampledSignal, p: OlctParams) -> int:
    if f.grid != g.grid:
        raise GridMismatch("operands must share a grid")
    if p.is_b_zero:
        raise DegenerateB(f"|b| <= {EPS_B}; chirp weight a/(2b) undefined")
    return _lattice_origin(f.grid)


def olct_convolve(f: SampledSignal, g: SampledSignal, p: OlctParams) -> SampledSignal:
    """Chirp-weighted convolution on the shared input grid.

    For a = 0 the weight is 1 and this reduces to ordinary discrete
    convolution of the Riemann sums.
    """
    z = _check_pair(f, g, p)
    n = f.grid.count
    t = f.grid.points()
    coef = -p.a / (2.0 * p.b)
    out = np.empty(n, dtype=np.complex128)
    m = np.arange(n)[:, None]
    blk = max(1, _CHUNK_ENTRIES // n)
    for lo in range(0, n, blk):
        j = np.arange(lo, min(lo + blk, n))[None, :]
        idx = j - m - z
        valid = (idx >= 0) & (idx < n)
        gv = np.where(valid, g.values[np.clip(idx, 0, n - 1)], 0.0)
        weight = np.exp(1j * coef * t[:, None] * (t[j] - t[:, None]))
        out[lo : lo + j.shape[1]] = np.einsum("m,mj,mj->j", f.values, gv, weight)
    return SampledSignal(f.grid, out * f.grid.step)


def olct_correlate(f: SampledSignal, g: SampledSignal, p: OlctParams) -> SampledSignal:
    """Chirp-weighted correlation on the shared input grid.

    Conjugate linear in f; for a = 0 and real f this is the classical
    cross-correlation.
    """
    z = _check_pair(f, g, p)
    n = f.grid.count
    t = f.grid.points()
    coef = p.a / (2.0 * p.b)
    out = np.empty(n, dtype=np.complex128)
    m = np.arange(n)[:, None]
    blk = max(1, _CHUNK_ENTRIES // n)
    for lo in range(0, n, blk):
        j = np.arange(lo, min(lo + blk, n))[None, :]
        idx = m + j + z
        valid = (idx >= 0) & (idx < n)
        gv = np.where(valid, g.values[np.clip(idx, 0, n - 1)], 0.0)
        weight = np.exp(1j * coef * t[:, None] * (t[:, None] + t[j]))
        out[lo : lo + j.shape[1]] = np.einsum(
            "m,mj,mj->j", np.conj(f.values), gv, weight
        )
    return SampledSignal(f.grid, out * f.grid.step)
