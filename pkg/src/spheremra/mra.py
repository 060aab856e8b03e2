"""Scaling/wavelet multiresolution analysis on S^n.

Level j carries the sample space V_j = Pi_{2^(j-1)-1} (spherical polynomials
below degree 2^(j-1)), the detail space W_j spanned by harmonics of degree
2^(j-1) .. 2^j - 1, and the zonal kernels

    phi_j = 2^(-nj/2) sum_{l < 2^(j-1)}      ((l+lam)/lam) C_l^lam,
    psi_j = 2^(-nj/2) sum_{2^(j-1) <= l < 2^j} ((l+lam)/lam) C_l^lam.

Discrete analysis on the equiangular grid N_j recovers Fourier coefficients
of V_j functions exactly; the synthesis and frame identities below hold with
constants normalized by the sphere measure Sigma_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.special import gammaln

from .harmonics import (
    HarmonicIndex,
    SphereGeometry,
    SphericalPoint,
    axis_profile,
    azimuth_profile,
    dim_pi,
    enumerate_indices,
    normalization_constant,
)
from .quadrature import grid_axes, grid_size, level_weights
from .specfun import ZonalSpectrum, zonal_eval

__all__ = [
    "Spectrum",
    "GridSignal",
    "analysis_constant",
    "synthesis_constant",
    "frame_constant",
    "wavelet_synthesis_constant",
    "wavelet_frame_constant",
    "space_degree_bound",
    "space_indices",
    "analyze",
    "synthesize",
    "synthesize_on_grid",
    "scaling_spectrum",
    "wavelet_spectrum",
    "scaling_kernel",
    "wavelet_kernel",
    "scaling_norm_sq",
    "wavelet_norm_sq",
    "scaling_integral",
    "wavelet_integral",
    "interpolatory_synthesis",
    "wavelet_interpolatory_synthesis",
    "frame_functional",
    "wavelet_frame_functional",
    "localization_check",
]


def space_degree_bound(j: int) -> int:
    """Largest harmonic degree in V_j: 2^(j-1) - 1."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    return 2 ** (j - 1) - 1


def space_indices(geometry: SphereGeometry, j: int) -> list[HarmonicIndex]:
    """The index set I_j of V_j in enumeration order."""
    return enumerate_indices(geometry, space_degree_bound(j))


@dataclass
class Spectrum:
    """Fourier coefficients indexed by harmonics, attached to a level.

    A level-j container holds coefficients supported on I_j (degrees up to
    2^(j-1) - 1); absent indices are zero.  Iteration order of `entries`
    follows insertion, and everything produced here inserts in enumeration
    order.
    """

    geometry: SphereGeometry
    j: int
    entries: dict[HarmonicIndex, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.j < 1:
            raise ValueError(f"level must be >= 1, got {self.j}")
        bound = space_degree_bound(self.j)
        for index in self.entries:
            if len(index.chain) != self.geometry.n - 1:
                raise ValueError(f"index {index} incompatible with S^{self.geometry.n}")
            if index.l > bound:
                raise ValueError(
                    f"degree {index.l} exceeds the level-{self.j} bound {bound}"
                )

    def vector(self, indices: Sequence[HarmonicIndex]) -> np.ndarray:
        return np.array([self.entries.get(ix, 0.0) for ix in indices], dtype=complex)

    def norm_sq(self) -> float:
        return float(sum(abs(v) ** 2 for v in self.entries.values()))


@dataclass
class GridSignal:
    """Samples on the level-j grid N_j, flattened in grid_nodes order."""

    geometry: SphereGeometry
    j: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.j < 1:
            raise ValueError(f"level must be >= 1, got {self.j}")
        self.values = np.asarray(self.values, dtype=complex).ravel()
        expected = grid_size(self.geometry, self.j)
        if self.values.shape[0] != expected:
            raise ValueError(
                f"level-{self.j} grid on S^{self.geometry.n} has {expected} nodes, "
                f"got {self.values.shape[0]} samples"
            )

    def norm_sq(self) -> float:
        """Squared L2 norm of the underlying V_j function, via exact
        quadrature of |f|^2 on the level's own grid."""
        w = level_weights(self.geometry, self.j)
        return float(
            analysis_constant(self.geometry, self.j)
            * np.real(np.dot(w, np.abs(self.values) ** 2))
        )


# ---------------------------------------------------------------------------
# constants

def analysis_constant(geometry: SphereGeometry, j: int) -> float:
    """pi / (Sigma_n 2^j): turns weighted node sums into Fourier coefficients."""
    return math.pi / (geometry.measure * 2.0**j)


def synthesis_constant(geometry: SphereGeometry, j: int) -> float:
    """sqrt(2^(j(n-2))) pi / Sigma_n for interpolatory V_j synthesis."""
    n = geometry.n
    return math.sqrt(2.0 ** (j * (n - 2))) * math.pi / geometry.measure


def frame_constant(geometry: SphereGeometry, j: int) -> float:
    """2^(j(n-1)) pi / Sigma_n: tight-frame constant of the phi_j system."""
    n = geometry.n
    return 2.0 ** (j * (n - 1)) * math.pi / geometry.measure


def wavelet_synthesis_constant(geometry: SphereGeometry, j: int) -> float:
    """sqrt(2^((n-2)j - 2)) pi / Sigma_n for W_j synthesis from N_{j+1} samples."""
    n = geometry.n
    return math.sqrt(2.0 ** ((n - 2) * j - 2)) * math.pi / geometry.measure


def wavelet_frame_constant(geometry: SphereGeometry, j: int) -> float:
    """2^((n-1)j - 1) pi / Sigma_n: tight-frame constant of the psi_j system."""
    n = geometry.n
    return 2.0 ** ((n - 1) * j - 1) * math.pi / geometry.measure


# ---------------------------------------------------------------------------
# harmonic basis on grids and point sets

def _basis_on_grid(n: int, j_grid: int, max_degree: int):
    # grid_axes holds the node-cap guard; run it outside the cache so a
    # basis built under a generous cap cannot dodge a later, tighter one
    grid_axes(SphereGeometry(n), j_grid)
    return _basis_on_grid_cached(n, j_grid, max_degree)


@lru_cache(maxsize=8)
def _basis_on_grid_cached(n: int, j_grid: int, max_degree: int):
    """Matrix B[i, node] = Y_i at the level-j_grid nodes, for all indices of
    degree <= max_degree in enumeration order."""
    geometry = SphereGeometry(n)
    indices = enumerate_indices(geometry, max_degree)
    thetas, phis = grid_axes(geometry, j_grid)
    operands = []
    for nu in range(1, n):
        operands.append(
            np.vstack([axis_profile(geometry, ix, nu, thetas[nu - 1]) for ix in indices])
        )
    norms = np.array([normalization_constant(geometry, ix) for ix in indices])
    operands.append(norms[:, None] * np.vstack([azimuth_profile(ix, phis) for ix in indices]))
    letters = "abcdefgh"
    script = ",".join("i" + letters[ax] for ax in range(n))
    matrix = np.einsum(f"{script}->i{letters[:n]}", *operands)
    matrix = matrix.reshape(len(indices), -1)
    matrix.setflags(write=False)
    return tuple(indices), matrix


def _basis_at_points(
    geometry: SphereGeometry, indices: Sequence[HarmonicIndex], points: Sequence[SphericalPoint]
) -> np.ndarray:
    for p in points:
        if p.n != geometry.n:
            raise ValueError(f"point on S^{p.n} passed for S^{geometry.n}")
    thetas = [
        np.array([p.thetas[nu - 1] for p in points]) for nu in range(1, geometry.n)
    ]
    phis = np.array([p.phi for p in points])
    rows = np.empty((len(indices), len(points)), dtype=complex)
    for i, ix in enumerate(indices):
        row = normalization_constant(geometry, ix) * azimuth_profile(ix, phis)
        for nu in range(1, geometry.n):
            row = row * axis_profile(geometry, ix, nu, thetas[nu - 1])
        rows[i] = row
    return rows


# ---------------------------------------------------------------------------
# analysis and synthesis

def analyze(signal: GridSignal) -> Spectrum:
    """Fourier coefficients on I_j from level-j samples.

    Exact (to rounding) whenever the samples come from a V_j function: the
    product of any two I_j harmonics stays within the degree range the
    level-j rules integrate exactly.
    """
    geometry, j = signal.geometry, signal.j
    indices, basis = _basis_on_grid(geometry.n, j, space_degree_bound(j))
    weighted = level_weights(geometry, j) * signal.values
    coeffs = analysis_constant(geometry, j) * (basis.conj() @ weighted)
    return Spectrum(geometry, j, dict(zip(indices, coeffs.tolist())))


def synthesize(spectrum: Spectrum, points) -> complex | np.ndarray:
    """Evaluate sum a_i Y_i at one point or a sequence of points."""
    single = isinstance(points, SphericalPoint)
    pts = [points] if single else list(points)
    indices = [ix for ix in spectrum.entries]
    if not indices:
        return 0.0 + 0.0j if single else np.zeros(len(pts), dtype=complex)
    basis = _basis_at_points(spectrum.geometry, indices, pts)
    values = spectrum.vector(indices) @ basis
    return complex(values[0]) if single else values


def synthesize_on_grid(spectrum: Spectrum, j_grid: int) -> GridSignal:
    """Evaluate the spectrum at every node of N_{j_grid}."""
    geometry = spectrum.geometry
    indices, basis = _basis_on_grid(
        geometry.n, j_grid, space_degree_bound(spectrum.j)
    )
    values = spectrum.vector(indices) @ basis
    return GridSignal(geometry, j_grid, values)


# ---------------------------------------------------------------------------
# kernels and their closed forms

def scaling_spectrum(geometry: SphereGeometry, j: int) -> ZonalSpectrum:
    """Gegenbauer coefficients of phi_j: 2^(-nj/2) (l+lam)/lam on l < 2^(j-1)."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    lam = geometry.lam
    scale = 2.0 ** (-geometry.n * j / 2.0)
    ls = np.arange(2 ** (j - 1))
    return ZonalSpectrum(lam, scale * (ls + lam) / lam)


def wavelet_spectrum(geometry: SphereGeometry, j: int) -> ZonalSpectrum:
    """Gegenbauer coefficients of psi_j: 2^(-nj/2) (l+lam)/lam on
    2^(j-1) <= l < 2^j, zero below."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    lam = geometry.lam
    scale = 2.0 ** (-geometry.n * j / 2.0)
    ls = np.arange(2**j)
    coeffs = scale * (ls + lam) / lam
    coeffs[: 2 ** (j - 1)] = 0.0
    return ZonalSpectrum(lam, coeffs)


def scaling_kernel(geometry: SphereGeometry, j: int, t):
    """phi_j(t) for t in [-1, 1] (scalar or array)."""
    value = zonal_eval(scaling_spectrum(geometry, j), t)
    return value.real if isinstance(value, complex) else np.real(value)


def wavelet_kernel(geometry: SphereGeometry, j: int, t):
    """psi_j(t) for t in [-1, 1] (scalar or array)."""
    value = zonal_eval(wavelet_spectrum(geometry, j), t)
    return value.real if isinstance(value, complex) else np.real(value)


def scaling_norm_sq(geometry: SphereGeometry, j: int) -> float:
    """||phi_j(. x)||^2 = 2^(-nj) dim Pi_{2^(j-1)-1}, exactly in rationals.

    Tends to 2^(1-n)/n! as j grows (and equals 1/4 for every j when n = 2).
    """
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    dim = dim_pi(geometry, space_degree_bound(j))
    return float(Fraction(dim, 2 ** (geometry.n * j)))


def wavelet_norm_sq(geometry: SphereGeometry, j: int) -> float:
    """||psi_j(. x)||^2 = 2^(-nj)(dim Pi_{2^j-1} - dim Pi_{2^(j-1)-1})."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    dim = dim_pi(geometry, 2**j - 1) - dim_pi(geometry, space_degree_bound(j))
    return float(Fraction(dim, 2 ** (geometry.n * j)))


def scaling_integral(geometry: SphereGeometry, j: int) -> float:
    """int_{S^n} phi_j(x . e) dsigma(x) in closed form:

    2^(3 - n(1 + j/2)) pi^(n/2 + 1) Gamma(2 lam)
        / (Gamma(lam) Gamma(lam + 1/2) Gamma(lam + 1)).
    """
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    n, lam = geometry.n, geometry.lam
    log_value = (
        (3.0 - n * (1.0 + j / 2.0)) * math.log(2.0)
        + (n / 2.0 + 1.0) * math.log(math.pi)
        + gammaln(2.0 * lam)
        - gammaln(lam)
        - gammaln(lam + 0.5)
        - gammaln(lam + 1.0)
    )
    return math.exp(log_value)


def wavelet_integral(geometry: SphereGeometry, j: int) -> float:
    """int_{S^n} psi_j(x . e) dsigma(x) = 0: psi_j has no degree-0 component."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    return 0.0


# ---------------------------------------------------------------------------
# interpolatory synthesis, frames, localization

def _node_cartesians(geometry: SphereGeometry, j: int) -> np.ndarray:
    """Unit vectors of all N_j nodes, (grid_size, n+1), in grid order."""
    thetas, phis = grid_axes(geometry, j)
    n = geometry.n
    shape = tuple(len(a) for a in thetas) + (len(phis),)
    coords = []
    running = np.ones(shape)
    for nu, axis in enumerate(thetas):
        view = [1] * n
        view[nu] = len(axis)
        coords.append(running * np.cos(axis).reshape(view))
        running = running * np.broadcast_to(np.sin(axis).reshape(view), shape)
    view = [1] * n
    view[-1] = len(phis)
    coords.append(running * np.cos(phis).reshape(view))
    coords.append(running * np.sin(phis).reshape(view))
    return np.stack([c.ravel() for c in coords], axis=1)


def interpolatory_synthesis(signal: GridSignal) -> Callable[[SphericalPoint], complex]:
    """Rebuild the V_j function from its level-j samples:

        f(x) = c_syn sum_{s,t} chi_prod v_{s,t} phi_j(x . x_{s,t}).

    Returns a callable evaluating anywhere on the sphere.
    """
    geometry, j = signal.geometry, signal.j
    nodes = _node_cartesians(geometry, j)
    weighted = (
        synthesis_constant(geometry, j) * level_weights(geometry, j) * signal.values
    )
    spectrum = scaling_spectrum(geometry, j)

    def evaluate(x: SphericalPoint) -> complex:
        dots = np.clip(nodes @ x.cartesian(), -1.0, 1.0)
        return complex(np.dot(weighted, zonal_eval(spectrum, dots)))

    return evaluate


def wavelet_interpolatory_synthesis(
    signal: GridSignal, j: int
) -> Callable[[SphericalPoint], complex]:
    """Rebuild a W_j function from its samples on the finer grid N_{j+1}."""
    if signal.j != j + 1:
        raise ValueError(
            f"W_{j} synthesis needs samples at level {j + 1}, got level {signal.j}"
        )
    geometry = signal.geometry
    nodes = _node_cartesians(geometry, j + 1)
    weighted = (
        wavelet_synthesis_constant(geometry, j)
        * level_weights(geometry, j + 1)
        * signal.values
    )
    spectrum = wavelet_spectrum(geometry, j)

    def evaluate(x: SphericalPoint) -> complex:
        dots = np.clip(nodes @ x.cartesian(), -1.0, 1.0)
        return complex(np.dot(weighted, zonal_eval(spectrum, dots)))

    return evaluate


def _as_samples(f: Spectrum | GridSignal, j: int) -> GridSignal:
    if isinstance(f, GridSignal):
        if f.j != j:
            raise ValueError(f"signal at level {f.j} passed for level {j}")
        return f
    top = max((ix.l for ix in f.entries), default=0)
    if top > space_degree_bound(j):
        raise ValueError(
            f"spectrum reaches degree {top}, outside the level-{j} space"
        )
    return synthesize_on_grid(f, j)


def frame_functional(f: Spectrum | GridSignal, j: int | None = None) -> float:
    """c_F sum_{s,t} chi_prod |<phi_j(. x_{s,t}), f>|^2; equals ||f||^2 on V_j.

    The inner products reduce to 2^(-nj/2) f(x_{s,t}).
    """
    if j is None:
        j = f.j
    samples = _as_samples(f, j)
    geometry = samples.geometry
    w = level_weights(geometry, j)
    quadratic = float(np.dot(w, np.abs(samples.values) ** 2))
    return frame_constant(geometry, j) * 2.0 ** (-geometry.n * j) * quadratic


def wavelet_frame_functional(f: Spectrum | GridSignal, j: int) -> float:
    """c_F' sum over N_{j+1} of chi_prod |<psi_j(. x), f>|^2; ||f||^2 on W_j."""
    samples = _as_samples(f, j + 1)
    geometry = samples.geometry
    w = level_weights(geometry, j + 1)
    quadratic = float(np.dot(w, np.abs(samples.values) ** 2))
    return (
        wavelet_frame_constant(geometry, j) * 2.0 ** (-geometry.n * j) * quadratic
    )


def localization_check(
    geometry: SphereGeometry,
    j: int,
    x0: SphericalPoint,
    trials: Iterable[Spectrum],
    slack: float = 1e-10,
) -> bool:
    """Among f in V_j with f(x0) = 1, the normalized kernel
    phi_j(. x0)/phi_j(1) minimizes ||f||, with minimum 1/sqrt(dim V_j).

    Each trial spectrum is rescaled to f(x0) = 1 and tested against the bound
    (up to `slack`).  Returns True when every trial respects it.
    """
    bound = 1.0 / math.sqrt(dim_pi(geometry, space_degree_bound(j)))
    for spectrum in trials:
        if spectrum.j > j:
            raise ValueError(f"trial at level {spectrum.j} is not inside V_{j}")
        value = synthesize(spectrum, x0)
        norm = math.sqrt(spectrum.norm_sq())
        if abs(value) < 1e-12 * max(norm, 1.0):
            raise ValueError("trial function vanishes at x0; cannot normalize")
        if norm / abs(value) < bound - slack:
            return False
    return True
