"""Hot numerical kernels with numba and pure-numpy implementations.

Three loops dominate the toolkit's run time: the angle x frequency pattern
grid, the per-antenna delay-grid scan used by the wideband beam designer, and
the RB-count x MCS rate search with an EESM average inside. Each kernel exists
twice, as a numba ``@njit`` routine and as a vectorized numpy routine. The
active backend is chosen at import time:

* ``JPTA_NUMBA=0`` (also ``false``/``no``/``off``) forces the numpy path.
* Otherwise numba is used when importable, with a silent numpy fallback.

``backend()`` reports which path is live. Both implementations are exported
(``*_numpy`` / ``*_jit``) so tests and the benchmark can compare them.
"""

from __future__ import annotations

import math
import os

import numpy as np

TWO_PI = 2.0 * math.pi


def _numba_wanted() -> bool:
    flag = os.environ.get("JPTA_NUMBA", "").strip().lower()
    return flag not in ("0", "false", "no", "off")


try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an install dependency
    njit = None
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and _numba_wanted()


def backend() -> str:
    """Name of the active kernel backend, ``"numba"`` or ``"numpy"``."""
    return "numba" if NUMBA_ENABLED else "numpy"


# ---------------------------------------------------------------------------
# pattern correlation: |<steering(angle, f), response(f)>| on a grid
# ---------------------------------------------------------------------------

def pattern_corr_numpy(cos_angles, freqs, phases, delays, slope_scale):
    """Correlation magnitudes on an angle x frequency grid.

    Entry (a, k) is ``|(1/M) sum_m exp(j(slope_scale*f_k*cos_a*m - phi_m
    - 2*pi*f_k*tau_m))|`` where ``slope_scale = 2*pi*spacing/c``. This is the
    magnitude of the conjugated inner product between the unit-norm steering
    vector and the unit-norm phase-time response.
    """
    cos_angles = np.asarray(cos_angles, dtype=np.float64)
    freqs = np.asarray(freqs, dtype=np.float64)
    num_el = phases.shape[0]
    elem = np.arange(num_el, dtype=np.float64)
    resp = phases[None, :] + TWO_PI * freqs[:, None] * delays[None, :]
    out = np.empty((cos_angles.size, freqs.size), dtype=np.float64)
    # chunk the angle axis to bound the (a, k, m) temporary
    chunk = max(1, 4_000_000 // max(1, freqs.size * num_el))
    for a0 in range(0, cos_angles.size, chunk):
        cos_blk = cos_angles[a0:a0 + chunk]
        slope = slope_scale * cos_blk[:, None] * freqs[None, :]
        phase = slope[:, :, None] * elem[None, None, :] - resp[None, :, :]
        out[a0:a0 + chunk] = np.abs(np.exp(1j * phase).sum(axis=2)) / num_el
    return out


def _pattern_corr_py(cos_angles, freqs, phases, delays, slope_scale):
    num_angles = cos_angles.shape[0]
    num_freqs = freqs.shape[0]
    num_el = phases.shape[0]
    out = np.empty((num_angles, num_freqs), dtype=np.float64)
    for a in range(num_angles):
        for k in range(num_freqs):
            slope = slope_scale * freqs[k] * cos_angles[a]
            re = 0.0
            im = 0.0
            for m in range(num_el):
                ph = slope * m - phases[m] - TWO_PI * freqs[k] * delays[m]
                re += math.cos(ph)
                im += math.sin(ph)
            out[a, k] = math.sqrt(re * re + im * im) / num_el
    return out


# ---------------------------------------------------------------------------
# delay scan: per-antenna correlation of the target phase ramp with each
# candidate delay, summed over the evaluation frequencies
# ---------------------------------------------------------------------------

def delay_scan_numpy(slopes, freqs, taus, num_elements):
    """Complex score ``U[t, m] = sum_k exp(j(m*slopes[k] - 2*pi*f_k*tau_t))``.

    ``slopes[k]`` is the per-element phase increment of the target steering
    vector at evaluation frequency ``freqs[k]``. The best delay for antenna m
    maximizes ``|U[:, m]|`` and the matching phase is ``angle(U)``.
    """
    slopes = np.asarray(slopes, dtype=np.float64)
    freqs = np.asarray(freqs, dtype=np.float64)
    taus = np.asarray(taus, dtype=np.float64)
    elem = np.arange(num_elements, dtype=np.float64)
    target = np.exp(1j * slopes[:, None] * elem[None, :])
    twiddle = np.exp(-1j * TWO_PI * taus[:, None] * freqs[None, :])
    return twiddle @ target


def _delay_scan_py(slopes, freqs, taus, num_elements):
    num_taus = taus.shape[0]
    num_freqs = freqs.shape[0]
    out = np.empty((num_taus, num_elements), dtype=np.complex128)
    for t in range(num_taus):
        for m in range(num_elements):
            re = 0.0
            im = 0.0
            for k in range(num_freqs):
                ph = slopes[k] * m - TWO_PI * freqs[k] * taus[t]
                re += math.cos(ph)
                im += math.sin(ph)
            out[t, m] = complex(re, im)
    return out


# ---------------------------------------------------------------------------
# rate search: best (RB count, MCS) under an EESM feasibility test
# ---------------------------------------------------------------------------

def rate_scan_numpy(snr_unsplit_desc, thr_lin, se, unique_betas, beta_idx,
                    min_rbs):
    """Scan allocation sizes and MCS levels for the best feasible rate.

    ``snr_unsplit_desc`` holds per-RB linear SNR with the full transmit power
    on a single RB, sorted descending; splitting power over ``n`` RBs divides
    each entry by ``n``. For every ``n`` in ``[min_rbs, N]`` the EESM
    effective SNR of the best ``n`` RBs is computed per distinct EESM beta,
    the highest feasible MCS is found, and candidates are ranked by
    throughput ``se * n``, then higher MCS, then fewer RBs.

    Returns ``(best_n, best_mcs, best_eff_lin, best_se_n)`` with
    ``best_mcs = -1`` when nothing is feasible.
    """
    total = snr_unsplit_desc.shape[0]
    num_mcs = se.shape[0]
    best_n = 0
    best_mcs = -1
    best_eff = 0.0
    best_rate = -1.0
    for n in range(min_rbs, total + 1):
        values = snr_unsplit_desc[:n] / n
        v_min = values[-1]
        effs = np.empty(unique_betas.shape[0])
        for b in range(unique_betas.shape[0]):
            beta = unique_betas[b]
            # shifted EESM average, stable for large SNR
            mean = np.mean(np.exp(-(values - v_min) / beta))
            effs[b] = v_min - beta * math.log(mean)
        for i in range(num_mcs - 1, -1, -1):
            eff = effs[beta_idx[i]]
            if eff >= thr_lin[i]:
                rate = se[i] * n
                if rate > best_rate or (rate == best_rate and i > best_mcs):
                    best_rate = rate
                    best_n = n
                    best_mcs = i
                    best_eff = eff
                break
    if best_mcs < 0:
        return 0, -1, 0.0, 0.0
    return best_n, best_mcs, best_eff, best_rate


def _rate_scan_py(snr_unsplit_desc, thr_lin, se, unique_betas, beta_idx,
                  min_rbs):
    total = snr_unsplit_desc.shape[0]
    num_mcs = se.shape[0]
    num_betas = unique_betas.shape[0]
    effs = np.empty(num_betas)
    best_n = 0
    best_mcs = -1
    best_eff = 0.0
    best_rate = -1.0
    for n in range(min_rbs, total + 1):
        v_min = snr_unsplit_desc[n - 1] / n
        for b in range(num_betas):
            beta = unique_betas[b]
            acc = 0.0
            for r in range(n):
                acc += math.exp(-(snr_unsplit_desc[r] / n - v_min) / beta)
            effs[b] = v_min - beta * math.log(acc / n)
        for i in range(num_mcs - 1, -1, -1):
            eff = effs[beta_idx[i]]
            if eff >= thr_lin[i]:
                rate = se[i] * n
                if rate > best_rate or (rate == best_rate and i > best_mcs):
                    best_rate = rate
                    best_n = n
                    best_mcs = i
                    best_eff = eff
                break
    if best_mcs < 0:
        return 0, -1, 0.0, 0.0
    return best_n, best_mcs, best_eff, best_rate


if _HAVE_NUMBA:
    pattern_corr_jit = njit(cache=True)(_pattern_corr_py)
    delay_scan_jit = njit(cache=True)(_delay_scan_py)
    rate_scan_jit = njit(cache=True)(_rate_scan_py)
else:  # pragma: no cover
    pattern_corr_jit = None
    delay_scan_jit = None
    rate_scan_jit = None

if NUMBA_ENABLED:
    pattern_corr = pattern_corr_jit
    delay_scan = delay_scan_jit
    rate_scan = rate_scan_jit
else:
    pattern_corr = pattern_corr_numpy
    delay_scan = delay_scan_numpy
    rate_scan = rate_scan_numpy
