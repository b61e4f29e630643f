"""Gaussian focus coefficients and their exact derivatives.

A focusing neuron weights each of its m inputs by a coefficient drawn
from a Gaussian bump over the inputs' normalized positions. Two
trainable scalars per neuron shape the bump: the center ``mu`` (where
the receptive field sits, in [0, 1]) and the aperture ``sigma`` (how
wide it opens). A per-neuron scaler rescales the bump so the squared
norm of the coefficient vector equals m, the norm a fully connected
neuron would have; with a very large aperture every coefficient tends
to 1 and the neuron degenerates into an ordinary dense one.

Gradients come in two flavors. The default differentiates the whole
coefficient map, scaler included, so analytic gradients agree with
finite differences of the actual forward computation. Setting
``through_scaler=False`` treats the scaler as a constant and keeps
only the bare Gaussian partials, for ablation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .numerics import as_f64

SIGMA_MIN = 0.01
SIGMA_MAX = 0.5


@dataclass
class FocusParams:
    """Per-neuron receptive-field state: centers, apertures, input count.

    The [sigma_min, sigma_max] bounds are maintained by post-update
    clipping in the optimizer, not at construction; only sigma > 0 is a
    hard requirement for the math to be defined.
    """

    mu: np.ndarray
    sigma: np.ndarray
    m: int
    sigma_min: float = SIGMA_MIN
    sigma_max: float = SIGMA_MAX

    def __post_init__(self):
        self.mu = as_f64(self.mu).reshape(-1)
        self.sigma = as_f64(self.sigma).reshape(-1)
        if self.mu.shape != self.sigma.shape:
            raise ShapeError(
                f"mu and sigma must match: {self.mu.shape} vs {self.sigma.shape}"
            )
        if self.m < 2:
            raise ValueError(f"focus needs m >= 2 inputs, got m={self.m}")
        if np.any(self.sigma <= 0):
            raise ValueError("sigma must be strictly positive")

    @property
    def n(self) -> int:
        return self.mu.shape[0]

    def copy(self) -> "FocusParams":
        return FocusParams(
            self.mu.copy(), self.sigma.copy(), self.m, self.sigma_min, self.sigma_max
        )


@dataclass
class FocusCoefficients:
    """Forward-pass products: scaled coefficients, scaler, raw Gaussian."""

    phi: np.ndarray     # (m, n), phi[i][j] = scaler[j] * raw[i][j]
    scaler: np.ndarray  # (n,)
    raw: np.ndarray     # (m, n), unnormalized Gaussian terms


def positions(m: int) -> np.ndarray:
    """Normalized input positions: m points evenly spanning [0, 1].

    tau(i) = i/(m-1), endpoint inclusive, so the grid is symmetric with
    respect to the mu clip range [0, 1].
    """
    if m < 2:
        raise ValueError(f"need at least 2 positions, got m={m}")
    return np.arange(m, dtype=np.float64) / (m - 1)


def focus_raw(pos: np.ndarray, params: FocusParams) -> np.ndarray:
    """Unnormalized Gaussian terms exp(-(tau - mu)^2 / (2 sigma^2)).

    Shape (m, n): one column per neuron. All entries lie in (0, 1].
    """
    pos = as_f64(pos).reshape(-1)
    if np.any(params.sigma <= 0):
        raise ValueError("sigma must be strictly positive")
    d = pos[:, None] - params.mu[None, :]
    return np.exp(-(d * d) / (2.0 * params.sigma[None, :] ** 2))


def scaler(raw: np.ndarray, m: int) -> np.ndarray:
    """Per-neuron factor s_j = sqrt(m) / sqrt(sum_i raw_ij^2).

    Rescales each coefficient column to squared norm m, the norm of a
    fully connected neuron over the same inputs.
    """
    raw = as_f64(raw)
    q = np.sum(raw * raw, axis=0)
    if np.any(q <= 0):
        raise ValueError("cannot normalize a zero coefficient column")
    return np.sqrt(m / q)


def focus_coefficients(params: FocusParams) -> FocusCoefficients:
    """Compose positions, raw Gaussian, and scaler into the coefficient map."""
    raw = focus_raw(positions(params.m), params)
    s = scaler(raw, params.m)
    return FocusCoefficients(phi=s[None, :] * raw, scaler=s, raw=raw)


def coefficient_jacobians(
    params: FocusParams, through_scaler: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Elementwise partials (d phi_ij / d mu_j, d phi_ij / d sigma_j), each (m, n).

    With ``through_scaler`` the scaler's own dependence on (mu, sigma)
    is included, which centers the bare partials by a raw^2-weighted
    mean; this keeps sum_i phi_ij * dphi_ij = 0, consistent with the
    column norm being pinned at m. Without it the bare Gaussian partials
        dphi/dmu    = ((tau - mu) / sigma^2)  * phi
        dphi/dsigma = ((tau - mu)^2 / sigma^3) * phi
    are returned with the scaler held constant.
    """
    _check_sigma_floor(params)
    pos = positions(params.m)
    coeff = focus_coefficients(params)
    d = pos[:, None] - params.mu[None, :]
    sig2 = params.sigma[None, :] ** 2
    sig3 = params.sigma[None, :] ** 3

    u_mu = d
    u_sigma = d * d
    if through_scaler:
        g2 = coeff.raw * coeff.raw
        q = np.sum(g2, axis=0)
        u_mu = u_mu - (np.sum(d * g2, axis=0) / q)[None, :]
        u_sigma = u_sigma - (np.sum(d * d * g2, axis=0) / q)[None, :]
    return coeff.phi * u_mu / sig2, coeff.phi * u_sigma / sig3


def focus_gradients(
    params: FocusParams, upstream: np.ndarray, through_scaler: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Chain upstream dL/dphi (m, n) into per-neuron (dL/dmu, dL/dsigma)."""
    upstream = as_f64(upstream)
    if upstream.shape != (params.m, params.n):
        raise ShapeError(
            f"upstream must be {(params.m, params.n)}, got {upstream.shape}"
        )
    dphi_dmu, dphi_dsigma = coefficient_jacobians(params, through_scaler)
    return (
        np.sum(upstream * dphi_dmu, axis=0),
        np.sum(upstream * dphi_dsigma, axis=0),
    )


def _check_sigma_floor(params: FocusParams) -> None:
    # sigma^-3 blows up gradient magnitudes below the clip floor; the
    # optimizer keeps sigma >= sigma_min, so falling below it here means
    # an update path skipped clipping.
    floor = params.sigma_min * (1.0 - 1e-9)
    if np.any(params.sigma < floor):
        raise ValueError(
            f"sigma below floor {params.sigma_min} in gradient evaluation: "
            f"min sigma = {params.sigma.min()}"
        )
