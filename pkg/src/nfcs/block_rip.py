"""Block-sparsity level bounds, sample-complexity formulas, and empirical probes."""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .seeding import rng_from
from .validation import as_complex_matrix


def _require_square(n_antennas: int) -> int:
    root = math.isqrt(n_antennas)
    if root * root != n_antennas:
        raise ValueError(
            f"the canonical sqrt(N)-block partition needs a square antenna count, got {n_antennas}"
        )
    return root


def varrho_bound(
    n_antennas: int,
    delta: float,
    aperture: float = None,
    mu_pair: tuple = None,
) -> int:
    """Block-sparsity level over the canonical sqrt(N)-blocks-of-sqrt(N) partition.

    Without ``mu_pair`` this applies the worst-case cap on the quadratic-phase
    mismatch implied by sources beyond the Fresnel distance,
    ceil(2 sqrt(2) / (pi delta sqrt(N)) + (sqrt(2)/1.24) sqrt(N/(N-1))).
    With ``mu_pair = (mu_0, mu)`` the bound is ceil(K_bar / sqrt(N)) for that
    specific mismatch, which requires ``aperture`` when the pair differs.
    """
    root = _require_square(n_antennas)
    if delta <= 1.0 / n_antennas:
        raise ValueError(f"delta must exceed 1/N = {1.0 / n_antennas:.3e}")
    n = n_antennas
    if mu_pair is None:
        value = 2.0 * math.sqrt(2.0) / (math.pi * delta * root) + (
            math.sqrt(2.0) / 1.24
        ) * math.sqrt(n / (n - 1))
        return math.ceil(value)
    mu_0, mu = mu_pair
    inv0 = 0.0 if math.isinf(mu_0) else 1.0 / mu_0
    inv1 = 0.0 if math.isinf(mu) else 1.0 / mu
    gap = abs(inv0 - inv1)
    if gap == 0.0:
        k_bar = math.ceil(n / math.pi * math.acos(1.0 - 2.0 / (n**2 * delta**2)))
    else:
        if aperture is None:
            raise ValueError("aperture is required for a nonzero effective-distance gap")
        k_bar = math.ceil(2.0 * math.sqrt(2.0) / (math.pi * delta) + n * aperture / 2.0 * gap)
    return max(1, math.ceil(k_bar / root))


class SampleComplexity(NamedTuple):
    t_min: int
    binomial_bound: float


def sample_complexity(n_antennas: int, varrho: int, xi: float, kappa: float) -> SampleComplexity:
    """Measurement count guaranteeing the block restricted isometry with
    constant xi and probability at least 1 - exp(-kappa).

    T >= (36 / (7 xi)) (rho ln(e sqrt(N)/rho) + rho sqrt(N) ln(12/xi) + ln 2 + kappa),
    rounded up. Also reports the Stirling bound (e sqrt(N)/rho)^rho used for
    the block-count binomial. The bound is loose at desk scale; it typically
    exceeds N itself.
    """
    if not (0.0 < xi < 1.0):
        raise ValueError(f"xi must lie in (0, 1), got {xi!r}")
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa!r}")
    if varrho < 1:
        raise ValueError(f"varrho must be >= 1, got {varrho!r}")
    root = math.sqrt(n_antennas)
    value = (36.0 / (7.0 * xi)) * (
        varrho * math.log(math.e * root / varrho)
        + varrho * root * math.log(12.0 / xi)
        + math.log(2.0)
        + kappa
    )
    return SampleComplexity(
        t_min=math.ceil(value),
        binomial_bound=(math.e * root / varrho) ** varrho,
    )


@dataclass(frozen=True)
class RipProbeReport:
    """Sampled block-isometry deviations; a probe, never a certificate."""

    xi_hat: float
    violation_rate: float
    trials: int
    block_size: int
    n_blocks: int
    k: int
    target_xi: float

    @property
    def empty(self) -> bool:
        return self.trials == 0


def empirical_rip_probe(
    psi, partition, k: int, trials: int, seed, target_xi: float = 0.5
) -> RipProbeReport:
    """Sample |  ||Psi c||^2 - 1 | over random unit-norm block-k-sparse vectors.

    Each trial draws k distinct blocks uniformly and a complex Gaussian
    coefficient vector on that support, normalised to unit norm. Per-trial
    generators are derived independently from (seed, trial), so any execution
    order reproduces the same set.
    """
    psi = as_complex_matrix(psi, "psi")
    block_size = int(getattr(partition, "block_size", partition))
    m = psi.shape[1]
    if m % block_size != 0:
        raise ValueError(f"block size {block_size} does not divide {m} columns")
    n_blocks = m // block_size
    if k > n_blocks:
        raise ValueError(f"k = {k} exceeds the number of blocks {n_blocks}")
    if trials == 0:
        return RipProbeReport(
            xi_hat=None,
            violation_rate=None,
            trials=0,
            block_size=block_size,
            n_blocks=n_blocks,
            k=k,
            target_xi=target_xi,
        )
    deviations = np.empty(trials)
    for t in range(trials):
        rng = rng_from(seed, "rip_probe", t)
        blocks = rng.choice(n_blocks, size=k, replace=False)
        idx = np.concatenate(
            [np.arange(b * block_size, (b + 1) * block_size) for b in np.sort(blocks)]
        )
        c = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
        c /= np.linalg.norm(c)
        deviations[t] = abs(float(np.linalg.norm(psi[:, idx] @ c) ** 2) - 1.0)
    return RipProbeReport(
        xi_hat=float(deviations.max()),
        violation_rate=float(np.mean(deviations > target_xi)),
        trials=trials,
        block_size=block_size,
        n_blocks=n_blocks,
        k=k,
        target_xi=target_xi,
    )


@dataclass(frozen=True)
class GaussianityReport:
    """Entry statistics of a sensing matrix against the CN(0, 1/N) model."""

    mean: complex
    variance: float
    expected_variance: float
    cross_correlation: float
    n_sampled: int
    degenerate: bool


def gaussianity_probe(pilots, dictionary, samples: int = 100_000, seed=0) -> GaussianityReport:
    """Empirical mean/variance of Psi = F D entries and cross-entry correlation.

    The correlation is the modulus of the average product of entry pairs from
    distinct rows and columns, normalised by the entry variance. Variance far
    below the 1/N model marks the probe degenerate (for instance an all-zero
    pilot matrix).
    """
    pilots = as_complex_matrix(pilots, "pilots")
    psi = pilots @ dictionary.matrix
    t, m = psi.shape
    n = dictionary.n_antennas
    flat = psi.ravel()
    take = min(samples, flat.size)
    rng = rng_from(seed, "gaussianity")
    sel = rng.choice(flat.size, size=take, replace=False) if take < flat.size else np.arange(flat.size)
    entries = flat[sel]
    mean = complex(entries.mean())
    variance = float(np.mean(np.abs(entries) ** 2))
    degenerate = variance < 0.25 / n
    if t > 1 and m > 1 and not degenerate:
        rows1 = rng.integers(0, t, size=take)
        cols1 = rng.integers(0, m, size=take)
        rows2 = (rows1 + 1 + rng.integers(0, t - 1, size=take)) % t
        cols2 = (cols1 + 1 + rng.integers(0, m - 1, size=take)) % m
        prod = psi[rows1, cols1] * np.conj(psi[rows2, cols2])
        cross = float(abs(prod.mean()) / variance)
    else:
        cross = float("nan")
    return GaussianityReport(
        mean=mean,
        variance=variance,
        expected_variance=1.0 / n,
        cross_correlation=cross,
        n_sampled=take,
        degenerate=degenerate,
    )
