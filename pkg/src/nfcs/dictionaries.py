"""Sparsifying dictionaries: chirped unitary, DFT, and polar-grid baseline.

The chirped dictionary multiplies the DFT matrix by a diagonal quadratic-phase
(chirp) matrix tied to one effective distance, which keeps it unitary while
its columns approximate spherical-wavefront array responses. The polar
baseline jointly grids angle and distance and is overcomplete.
"""

import math
import struct
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayConfig, b_vector, field_boundaries
from .validation import as_complex_matrix, as_complex_vector

MAGIC = b"NFCS"
_HEADER = struct.Struct("<4sIII")  # magic, rows, cols, reserved


def dft_grid(n_antennas: int) -> np.ndarray:
    """Angular grid sin(theta_n) = (2n - N - 1)/N for n = 1..N."""
    n = np.arange(1, n_antennas + 1)
    return (2 * n - n_antennas - 1) / n_antennas


class Dictionary:
    """An N x M sparsifying matrix with transformer-style helpers.

    ``transform`` maps channel vectors to coefficients via the adjoint, and
    ``inverse_transform`` synthesises channels from coefficients. For the
    unitary kinds ("dmu", "dft") the two are exact inverses. Instances are
    immutable after construction and safe to share across threads.
    """

    def __init__(self, matrix, kind: str, mu: float = None, sin_grid=None, radii=None):
        self.matrix = as_complex_matrix(matrix, "matrix")
        self.matrix.setflags(write=False)
        self.kind = kind
        self.mu = mu
        self.sin_grid = None if sin_grid is None else np.asarray(sin_grid, dtype=float)
        self.radii = None if radii is None else np.asarray(radii, dtype=float)

    @property
    def n_antennas(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_atoms(self) -> int:
        return self.matrix.shape[1]

    @property
    def is_unitary(self) -> bool:
        return self.kind in ("dmu", "dft")

    def fit(self, X=None, y=None):
        return self

    def transform(self, X) -> np.ndarray:
        """Adjoint analysis: channel rows (or a single vector) to coefficients."""
        arr = np.asarray(X, dtype=np.complex128)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.shape[1] != self.n_antennas:
            raise ValueError(
                f"expected vectors of length {self.n_antennas}, got {arr.shape[1]}"
            )
        out = arr @ np.conj(self.matrix)
        return out[0] if single else out

    def inverse_transform(self, X) -> np.ndarray:
        """Synthesis: coefficient rows (or a single vector) to channels."""
        arr = np.asarray(X, dtype=np.complex128)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.shape[1] != self.n_atoms:
            raise ValueError(
                f"expected coefficient vectors of length {self.n_atoms}, got {arr.shape[1]}"
            )
        out = arr @ self.matrix.T
        return out[0] if single else out

    def __repr__(self):
        mu = "" if self.mu is None else f", mu={self.mu!r}"
        return f"Dictionary(kind={self.kind!r}, shape={self.matrix.shape}{mu})"


@dataclass(frozen=True)
class SparseRep:
    """Coefficient vector together with the dictionary it refers to."""

    beta: np.ndarray
    dictionary: Dictionary

    def synthesize(self) -> np.ndarray:
        return self.dictionary.inverse_transform(self.beta)


def _require_half_wavelength(cfg: ArrayConfig):
    if not cfg.is_half_wavelength:
        raise ValueError(
            "dictionary grids assume half-wavelength antenna spacing; "
            f"got spacing {cfg.spacing!r} for wavelength {cfg.wavelength!r}"
        )


def _far_matrix(cfg: ArrayConfig) -> np.ndarray:
    n = np.arange(cfg.n_antennas)
    grid = dft_grid(cfg.n_antennas)
    phase = (2 * np.pi / cfg.wavelength) * cfg.spacing * np.outer(n, grid)
    return np.exp(1j * phase) / math.sqrt(cfg.n_antennas)


def build_dmu(cfg: ArrayConfig, mu: float) -> Dictionary:
    """Unitary chirped dictionary for one effective distance (inf gives the DFT)."""
    _require_half_wavelength(cfg)
    chirp = b_vector(cfg, mu)
    matrix = chirp[:, None] * _far_matrix(cfg)
    return Dictionary(matrix, kind="dmu", mu=mu, sin_grid=dft_grid(cfg.n_antennas))


def build_dft(cfg: ArrayConfig) -> Dictionary:
    """Plain DFT dictionary (the chirped dictionary at infinite effective distance)."""
    _require_half_wavelength(cfg)
    d = build_dmu(cfg, math.inf)
    return Dictionary(d.matrix, kind="dft", mu=math.inf, sin_grid=d.sin_grid)


def build_polar_baseline(
    cfg: ArrayConfig, n_rings: int = 6, distance_range: tuple = None
) -> Dictionary:
    """Overcomplete angle x distance dictionary used as the comparison baseline.

    Ring 0 sits at infinity (plane-wave atoms, identical to the DFT columns);
    the remaining ``n_rings - 1`` rings sample 1/r uniformly over the given
    distance range (default: Fresnel to Rayleigh distance). Columns are
    grouped ring-major so ``n_rings = 1`` reduces exactly to the DFT.
    """
    _require_half_wavelength(cfg)
    if n_rings < 1:
        raise ValueError(f"n_rings must be >= 1, got {n_rings}")
    if distance_range is None:
        distance_range = field_boundaries(cfg)
    lo, hi = distance_range
    if not (0 < lo <= hi):
        raise ValueError(f"invalid distance range {distance_range!r}")
    ring_radii = [math.inf]
    if n_rings > 1:
        inv = np.linspace(1.0 / hi, 1.0 / lo, n_rings - 1)
        ring_radii.extend(float(1.0 / v) for v in inv)
    grid = dft_grid(cfg.n_antennas)
    offsets = np.arange(cfg.n_antennas) * cfg.spacing
    wavenumber = 2 * np.pi / cfg.wavelength
    blocks, sin_meta, radius_meta = [], [], []
    for radius in ring_radii:
        if math.isinf(radius):
            cols = _far_matrix(cfg)
        else:
            delay = -offsets[:, None] * grid[None, :] + offsets[:, None] ** 2 * (
                1.0 - grid[None, :] ** 2
            ) / (2.0 * radius)
            cols = np.exp(-1j * wavenumber * delay) / math.sqrt(cfg.n_antennas)
        blocks.append(cols)
        sin_meta.append(grid)
        radius_meta.append(np.full(cfg.n_antennas, radius))
    return Dictionary(
        np.concatenate(blocks, axis=1),
        kind="polar",
        sin_grid=np.concatenate(sin_meta),
        radii=np.concatenate(radius_meta),
    )


def coherence_limited_rings(cfg: ArrayConfig, beta: float = 1.2) -> tuple:
    """Ring parameters whose 1/r spacing keeps adjacent-ring column coherence bounded.

    Returns ``(n_rings, (r_min, r_max))`` for :func:`build_polar_baseline`,
    with rings at r = Z/q for q = 1..Q and Z = N^2 d^2 / (2 lam beta^2), the
    classical coherence-limited distance grid for polar dictionaries. Larger
    ``beta`` means coarser rings.
    """
    _require_half_wavelength(cfg)
    fresnel, _ = field_boundaries(cfg)
    z = cfg.n_antennas**2 * cfg.spacing**2 / (2 * cfg.wavelength * beta**2)
    q_max = max(1, int(z / fresnel))
    return q_max + 1, (z / q_max, z)


def analyze(dictionary: Dictionary, h) -> SparseRep:
    """Coefficients beta = D^H h; exact representation for unitary dictionaries."""
    vec = as_complex_vector(h, "h")
    if vec.shape[0] != dictionary.n_antennas:
        raise ValueError(
            f"dimension mismatch: dictionary has {dictionary.n_antennas} rows, "
            f"channel has {vec.shape[0]}"
        )
    return SparseRep(beta=dictionary.transform(vec), dictionary=dictionary)


def mutual_coherence(matrix) -> float:
    """Largest normalised inner product between distinct columns."""
    m = as_complex_matrix(matrix, "matrix")
    if m.shape[1] < 2:
        raise ValueError("mutual coherence needs at least two columns")
    norms = np.linalg.norm(m, axis=0)
    if np.any(norms == 0):
        raise ValueError("mutual coherence is undefined for zero columns")
    gram = np.abs(np.conj(m.T) @ m) / np.outer(norms, norms)
    np.fill_diagonal(gram, 0.0)
    return float(gram.max())


def export_dictionary(dictionary: Dictionary, path):
    """Write the matrix as little-endian complex64 pairs with a 16-byte header."""
    matrix = np.ascontiguousarray(dictionary.matrix.astype(np.complex64))
    header = _HEADER.pack(MAGIC, dictionary.n_antennas, dictionary.n_atoms, 0)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(matrix.astype("<c8").tobytes(order="C"))


def load_dictionary_matrix(path) -> np.ndarray:
    """Read a matrix written by :func:`export_dictionary`."""
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        magic, rows, cols, _ = _HEADER.unpack(raw)
        if magic != MAGIC:
            raise ValueError(f"not a dictionary file: bad magic {magic!r}")
        data = np.frombuffer(fh.read(), dtype="<c8")
    if data.size != rows * cols:
        raise ValueError(
            f"truncated dictionary file: expected {rows * cols} entries, got {data.size}"
        )
    return data.reshape(rows, cols).astype(np.complex128)
