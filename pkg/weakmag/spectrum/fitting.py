"""
Gaussian fitting of recorded spectra.

Two stages: a moment estimate seeds a damped least-squares (Levenberg-Marquardt)
refinement of baseline + amplitude * exp(-(lambda - center)^2 / (2 width^2)).
The refinement runs in normalized units (wavelength centered on the grid and
scaled to its half-span, intensity scaled by the peak) so all four parameters
are of order one.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg

from weakmag.exceptions import InsufficientSignalError, InvalidArgumentError

from .models import GaussianFit, SpectrumGrid

logger = logging.getLogger(__name__)

MIN_SIGNAL_POINTS = 5
XTOL = 1e-10
MAX_ITERATIONS = 100
INITIAL_DAMPING = 1e-3
DAMPING_DECREASE = 0.3
DAMPING_INCREASE = 10.0

_EPS = np.finfo(float).eps


def _model(params: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Model values and Jacobian (columns: amplitude, center, width, baseline)."""
    amplitude, center, width, baseline = params
    dx = x - center
    w2 = width * width
    e = np.exp(-(dx * dx) / (2.0 * w2))
    values = baseline + amplitude * e
    jac = np.empty((x.size, 4))
    jac[:, 0] = e
    jac[:, 1] = amplitude * e * dx / w2
    jac[:, 2] = amplitude * e * dx * dx / (w2 * width)
    jac[:, 3] = 1.0
    return values, jac


def moment_seed(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """(amplitude, center, width, baseline) from the first two moments above the minimum."""
    baseline = float(y.min())
    z = y - baseline
    total = z.sum()
    center = float((x * z).sum() / total)
    variance = float(((x - center) ** 2 * z).sum() / total)
    width = np.sqrt(variance) if variance > 0 else float(x[1] - x[0])
    return np.array([float(z.max()), center, width, baseline])


def _refine(x: np.ndarray, y: np.ndarray, params: np.ndarray) -> tuple[np.ndarray, float, bool, int]:
    values, jac = _model(params, x)
    residual = y - values
    rss = float(residual @ residual)
    damping = INITIAL_DAMPING

    for iteration in range(1, MAX_ITERATIONS + 1):
        jtj = jac.T @ jac
        gradient = jac.T @ residual
        scaled = jtj + damping * np.diag(np.diag(jtj))
        try:
            step = scipy.linalg.solve(scaled, gradient, assume_a="sym")
        except (scipy.linalg.LinAlgError, ValueError):
            damping *= DAMPING_INCREASE
            continue

        trial = params + step
        small_step = np.linalg.norm(step) <= XTOL * (np.linalg.norm(params) + XTOL)
        trial_values, trial_jac = _model(trial, x)
        trial_residual = y - trial_values
        trial_rss = float(trial_residual @ trial_residual)

        if np.isfinite(trial_rss) and trial_rss <= rss:
            params, jac, residual, rss = trial, trial_jac, trial_residual, trial_rss
            damping *= DAMPING_DECREASE
        else:
            damping *= DAMPING_INCREASE

        if small_step:
            return params, rss, True, iteration

    return params, rss, False, MAX_ITERATIONS


def fit_gaussian(spectrum: SpectrumGrid) -> GaussianFit:
    """
    Fit a Gaussian with constant baseline to `spectrum`.

    Args:
        spectrum (SpectrumGrid): Recorded or synthesized spectrum.

    Returns:
        GaussianFit: Center, width (standard deviation), amplitude and baseline.
        Non-convergence is reported through `converged=False` with the best
        parameters found.

    Raises InsufficientSignalError when fewer than five points rise above the
    spectrum minimum.
    """
    x = spectrum.wavelengths
    y = spectrum.intensities
    y_min, y_max = float(y.min()), float(y.max())
    signal = np.count_nonzero(y - y_min > 10.0 * _EPS * (y_max - y_min)) if y_max > y_min else 0
    if signal < MIN_SIGNAL_POINTS:
        raise InsufficientSignalError(
            f"only {signal} points above the spectrum minimum (need {MIN_SIGNAL_POINTS})"
        )

    x_shift = 0.5 * (float(x[0]) + float(x[-1]))
    x_scale = 0.5 * (float(x[-1]) - float(x[0]))
    y_scale = max(abs(y_max), abs(y_min))
    xn = (x - x_shift) / x_scale
    yn = y / y_scale

    seed = moment_seed(xn, yn)
    params, rss, converged, iterations = _refine(xn, yn, seed)
    amplitude, center, width, baseline = params

    if not converged:
        logger.warning("Gaussian fit did not converge after %d iterations", iterations)

    return GaussianFit(
        center=center * x_scale + x_shift,
        width=abs(width) * x_scale,
        amplitude=amplitude * y_scale,
        baseline=baseline * y_scale,
        rss=rss * y_scale * y_scale,
        converged=converged,
        iterations=iterations,
    )


def measured_shift(initial: GaussianFit, final: GaussianFit) -> float:
    """final.center - initial.center; both fits must have converged."""
    if not (initial.converged and final.converged):
        raise InvalidArgumentError("measured_shift needs two converged fits")
    return final.center - initial.center
