"""Uniform linear array model: field regions, steering vectors, channel synthesis.

Distances are measured from the first antenna (the reference element), angles
from broadside, and all steering vectors are normalised to unit l2 norm.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .seeding import as_rng
from .validation import check_angle, check_positive, check_positive_or_inf

SPEED_OF_LIGHT = 2.998e8
"""Propagation speed used to derive wavelengths, in m/s."""


@dataclass(frozen=True)
class ArrayConfig:
    """Physical description of a uniform linear array.

    ``spacing`` defaults to half a wavelength, the spacing assumed by the
    sparsifying dictionaries in this package.
    """

    carrier_freq: float
    n_antennas: int
    spacing: float = field(default=None)

    def __post_init__(self):
        check_positive(self.carrier_freq, "carrier_freq")
        if self.n_antennas < 2:
            raise ValueError(f"n_antennas must be >= 2, got {self.n_antennas}")
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.wavelength / 2)
        else:
            check_positive(self.spacing, "spacing")

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def aperture(self) -> float:
        """Array aperture (N - 1) * d in meters."""
        return (self.n_antennas - 1) * self.spacing

    @property
    def is_half_wavelength(self) -> bool:
        return abs(self.spacing - self.wavelength / 2) <= 1e-12 * self.wavelength


@dataclass(frozen=True)
class PathParams:
    """One propagation path: complex gain, departure angle, reference distance."""

    gain: complex
    theta: float
    distance: float
    is_los: bool = False

    def __post_init__(self):
        check_angle(self.theta)
        check_positive(self.distance, "distance")


@dataclass(frozen=True)
class ChannelSpec:
    """Ordered multipath description; index 0 holds the line-of-sight path."""

    paths: tuple

    def __post_init__(self):
        if len(self.paths) < 1:
            raise ValueError("a channel needs at least one path")
        object.__setattr__(self, "paths", tuple(self.paths))

    @property
    def n_paths(self) -> int:
        return len(self.paths)

    @property
    def gains(self) -> np.ndarray:
        return np.array([p.gain for p in self.paths], dtype=np.complex128)


def field_boundaries(cfg: ArrayConfig) -> tuple:
    """Fresnel and Rayleigh distances (0.62*sqrt(D^3/lam), 2*D^2/lam) in meters."""
    d_ap = cfg.aperture
    lam = cfg.wavelength
    fresnel = 0.62 * math.sqrt(d_ap**3 / lam)
    rayleigh = 2.0 * d_ap**2 / lam
    return fresnel, rayleigh


def effective_distance(theta: float, r: float) -> float:
    """Effective distance r / cos^2(theta) governing the quadratic phase term."""
    check_angle(theta)
    check_positive(r, "r")
    return r / math.cos(theta) ** 2


def effective_rayleigh(cfg: ArrayConfig, theta: float) -> float:
    """Angle-corrected Rayleigh distance R * cos^2(theta)."""
    check_angle(theta)
    _, rayleigh = field_boundaries(cfg)
    return rayleigh * math.cos(theta) ** 2


def far_steering(cfg: ArrayConfig, theta: float) -> np.ndarray:
    """Plane-wave array response; entry n is exp(+j*(2pi/lam)*(n-1)*d*sin(theta))/sqrt(N)."""
    check_angle(theta)
    # operation order mirrors the near-field branch so the r -> inf limit is
    # reproduced bit for bit
    offsets = np.arange(cfg.n_antennas) * cfg.spacing
    phase = (2 * np.pi / cfg.wavelength) * (offsets * math.sin(theta))
    return np.exp(1j * phase) / math.sqrt(cfg.n_antennas)


def _element_delay(cfg: ArrayConfig, theta: float, r: float, offsets: np.ndarray, mode: str) -> np.ndarray:
    """Excess path length r^(n) - r for antenna offsets (n-1)*d.

    The exact branch evaluates the spherical-wavefront distance through a
    cancellation-free form; the second-order branch uses the standard
    expansion -(n-1)d sin(theta) + (n-1)^2 d^2 cos^2(theta) / (2r) and
    accepts r = inf as the plane-wave limit.
    """
    sin_t = math.sin(theta)
    if mode == "taylor":
        inv_r = 0.0 if math.isinf(r) else 1.0 / r
        return -offsets * sin_t + offsets**2 * (math.cos(theta) ** 2) * inv_r / 2.0
    if mode == "exact":
        if math.isinf(r):
            raise ValueError("exact mode requires a finite distance")
        # r*(sqrt(1+delta)-1) evaluated as r*delta/(sqrt(1+delta)+1)
        delta = offsets * (offsets - 2.0 * r * sin_t) / r**2
        return r * delta / (np.sqrt(1.0 + delta) + 1.0)
    raise ValueError(f"unknown mode {mode!r}; expected 'exact' or 'taylor'")


def element_distance(cfg: ArrayConfig, theta: float, r: float, n, mode: str = "exact"):
    """Distance from antenna n (1-based) to a source at (theta, r)."""
    check_angle(theta)
    if not math.isinf(r):
        check_positive(r, "r")
    n_arr = np.asarray(n)
    if np.any(n_arr < 1) or np.any(n_arr > cfg.n_antennas):
        raise ValueError(f"antenna index must lie in [1, {cfg.n_antennas}]")
    offsets = (n_arr - 1) * cfg.spacing
    out = r + _element_delay(cfg, theta, r, offsets, mode)
    return float(out) if np.isscalar(n) else out


def near_steering(cfg: ArrayConfig, theta: float, r: float, mode: str = "exact") -> np.ndarray:
    """Spherical-wavefront array response; entry n is exp(-j*(2pi/lam)*(r^(n)-r))/sqrt(N)."""
    check_angle(theta)
    if not (math.isinf(r) and mode == "taylor"):
        check_positive(r, "r")
    offsets = np.arange(cfg.n_antennas) * cfg.spacing
    delay = _element_delay(cfg, theta, r, offsets, mode)
    phase = -(2 * np.pi / cfg.wavelength) * delay
    return np.exp(1j * phase) / math.sqrt(cfg.n_antennas)


def b_vector(cfg: ArrayConfig, mu: float) -> np.ndarray:
    """Quadratic-phase (chirp) vector; entry n is exp(-j*(2pi/lam)*(n-1)^2 d^2/(2 mu)).

    ``mu = inf`` is the plane-wave sentinel and yields the all-ones vector.
    Entries are unit modulus; the vector is not normalised.
    """
    check_positive_or_inf(mu, "mu")
    offsets = np.arange(cfg.n_antennas) * cfg.spacing
    inv_mu = 0.0 if math.isinf(mu) else 1.0 / mu
    phase = -(2 * np.pi / cfg.wavelength) * offsets**2 * inv_mu / 2.0
    return np.exp(1j * phase)


def synthesize_channel(cfg: ArrayConfig, spec: ChannelSpec, mode: str = "exact") -> np.ndarray:
    """Multipath channel h = sum_l g_l * a(theta_l, r_l)."""
    h = np.zeros(cfg.n_antennas, dtype=np.complex128)
    for p in spec.paths:
        h += p.gain * near_steering(cfg, p.theta, p.distance, mode)
    return h


def sample_channel(
    cfg: ArrayConfig,
    n_paths: int,
    seed,
    power_split_db: float = 13.0,
    distance_range: tuple = None,
    normalize: bool = False,
) -> ChannelSpec:
    """Draw a random multipath channel.

    The line-of-sight gain is complex normal CN(0, 1); the remaining gains are
    rescaled so the aggregate LOS to non-LOS power ratio equals
    ``power_split_db`` exactly. Angles are drawn with sin(theta) uniform on
    (-1, 1) and distances uniform on ``distance_range`` (default: Fresnel
    distance to 1.2x the Rayleigh distance). With ``normalize`` the gains are
    rescaled to unit total power.
    """
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")
    fresnel, rayleigh = field_boundaries(cfg)
    if distance_range is None:
        distance_range = (fresnel, 1.2 * rayleigh)
    lo, hi = distance_range
    if not (lo <= hi):
        raise ValueError(f"invalid distance range {distance_range!r}")
    if lo < fresnel * (1 - 1e-9):
        raise ValueError(
            f"distance range must start at or beyond the Fresnel distance "
            f"{fresnel:.3f} m, got {lo!r}"
        )
    rng = as_rng(seed)
    sines = rng.uniform(-1.0, 1.0, n_paths)
    dists = rng.uniform(lo, hi, n_paths)
    gains = (rng.standard_normal(n_paths) + 1j * rng.standard_normal(n_paths)) / math.sqrt(2)
    if n_paths > 1:
        nlos_power = float(np.sum(np.abs(gains[1:]) ** 2))
        target = abs(gains[0]) ** 2 / 10.0 ** (power_split_db / 10.0)
        gains[1:] *= math.sqrt(target / nlos_power)
    if normalize:
        gains /= math.sqrt(float(np.sum(np.abs(gains) ** 2)))
    paths = tuple(
        PathParams(
            gain=complex(gains[i]),
            theta=math.asin(sines[i]),
            distance=float(dists[i]),
            is_los=(i == 0),
        )
        for i in range(n_paths)
    )
    return ChannelSpec(paths=paths)
