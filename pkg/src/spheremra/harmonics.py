"""Hyperspherical harmonics on S^n embedded in R^(n+1).

Points are polar angles (theta_1, ..., theta_{n-1}, phi) with theta_nu in
[0, pi] and phi in [0, 2 pi); the surface element carries the weight
sin^{n-1}(theta_1) ... sin(theta_{n-1}).  An orthonormal basis of the degree-l
harmonics is indexed by monotone chains l = k_0 >= k_1 >= ... >= k_{n-1} >= 0
plus a sign on the azimuthal frequency k_{n-1}:

    Y_l^k = A_l^k  prod_nu C_{k_{nu-1}-k_nu}^{(n-nu)/2 + k_nu}(cos theta_nu)
            sin^{k_nu}(theta_nu)  *  exp(+/- i k_{n-1} phi).

Inner products are normalized by the total measure Sigma_n of S^n, so
<Y, Y> = 1 with A_l^k fixed by the 1-d Gegenbauer norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import gammaln

from .specfun import GegenbauerParams, gegenbauer_norm_1d, gegenbauer_table

__all__ = [
    "SphereGeometry",
    "HarmonicIndex",
    "SphericalPoint",
    "total_measure",
    "harmonic_count",
    "dim_pi",
    "enumerate_indices",
    "normalization_constant",
    "harmonic_eval",
    "addition_kernel",
    "dot",
    "axis_profile",
    "azimuth_profile",
]


def total_measure(n: int) -> float:
    """Surface measure of S^n: Sigma_n = 2 pi^(lambda+1) / Gamma(lambda+1) with lambda=(n-1)/2."""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    lam = (n - 1) / 2.0
    return 2.0 * math.pi ** (lam + 1.0) / math.gamma(lam + 1.0)


@dataclass(frozen=True)
class SphereGeometry:
    """The sphere S^n (n >= 2), with the derived Gegenbauer order and measure."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"sphere dimension n must be >= 2, got {self.n}")

    @property
    def lam(self) -> float:
        return (self.n - 1) / 2.0

    @property
    def measure(self) -> float:
        return total_measure(self.n)


@dataclass(frozen=True)
class HarmonicIndex:
    """Degree l, monotone chain (k_1, ..., k_{n-1}), and azimuthal sign.

    The sign is +1 or -1 and is forced to +1 when k_{n-1} = 0 (the two
    exponentials coincide there).
    """

    l: int
    chain: tuple[int, ...]
    sign: int = 1

    def __post_init__(self) -> None:
        if self.l < 0:
            raise ValueError(f"degree must be nonnegative, got {self.l}")
        if not self.chain:
            raise ValueError("chain must have at least one entry")
        ks = (self.l,) + self.chain
        for a, b in zip(ks, ks[1:]):
            if b < 0 or b > a:
                raise ValueError(f"chain {self.chain} not monotone below degree {self.l}")
        if self.sign not in (-1, 1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.chain[-1] == 0 and self.sign != 1:
            raise ValueError("sign must be +1 when the azimuthal frequency is zero")


@dataclass(frozen=True)
class SphericalPoint:
    """Polar coordinates (theta_1, ..., theta_{n-1}, phi) of a point on S^n."""

    thetas: tuple[float, ...]
    phi: float

    def __post_init__(self) -> None:
        if not self.thetas:
            raise ValueError("need at least one polar angle")
        for th in self.thetas:
            if not 0.0 <= th <= math.pi:
                raise ValueError(f"polar angle {th} outside [0, pi]")

    @property
    def n(self) -> int:
        return len(self.thetas) + 1

    def cartesian(self) -> np.ndarray:
        """Unit vector in R^(n+1): x_1 = cos theta_1, each later coordinate
        picks up the accumulated product of sines."""
        coords = []
        running = 1.0
        for th in self.thetas:
            coords.append(running * math.cos(th))
            running *= math.sin(th)
        coords.append(running * math.cos(self.phi))
        coords.append(running * math.sin(self.phi))
        return np.array(coords)


def dot(x: SphericalPoint, y: SphericalPoint) -> float:
    """Euclidean inner product of two points on the same sphere, clipped to [-1, 1]."""
    if x.n != y.n:
        raise ValueError(f"points live on different spheres: S^{x.n} vs S^{y.n}")
    return float(np.clip(np.dot(x.cartesian(), y.cartesian()), -1.0, 1.0))


def _exact_ratio(numer: int, denom: int) -> int:
    q, r = divmod(numer, denom)
    if r:
        raise ArithmeticError(f"{numer} not divisible by {denom}")
    return q


def harmonic_count(geometry: SphereGeometry, l: int) -> int:
    """dim H_l(S^n) = (2l + n - 1)(l + n - 2)! / ((n-1)! l!), exactly."""
    if l < 0:
        raise ValueError(f"degree must be nonnegative, got {l}")
    n = geometry.n
    if l == 0:
        return 1
    return _exact_ratio(
        (2 * l + n - 1) * math.factorial(l + n - 2),
        math.factorial(n - 1) * math.factorial(l),
    )


def dim_pi(geometry: SphereGeometry, m: int) -> int:
    """dim Pi_m(S^n) = (n + 2m)(n + m - 1)! / (n! m!), exactly."""
    if m < 0:
        raise ValueError(f"max degree must be nonnegative, got {m}")
    n = geometry.n
    return _exact_ratio(
        (n + 2 * m) * math.factorial(n + m - 1),
        math.factorial(n) * math.factorial(m),
    )


def _chains(top: int, length: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for k in range(top + 1):
        for rest in _chains(k, length - 1):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _indices_tuple(n: int, max_degree: int) -> tuple[HarmonicIndex, ...]:
    out: list[HarmonicIndex] = []
    for l in range(max_degree + 1):
        for chain in _chains(l, n - 1):
            if chain[-1] == 0:
                out.append(HarmonicIndex(l, chain, 1))
            else:
                out.append(HarmonicIndex(l, chain, 1))
                out.append(HarmonicIndex(l, chain, -1))
    return tuple(out)


def enumerate_indices(geometry: SphereGeometry, max_degree: int) -> list[HarmonicIndex]:
    """All harmonic indices with l <= max_degree, in lexicographic order on
    (l, k_1, ..., k_{n-1}) with sign +1 before -1.  The length equals
    dim Pi_max_degree."""
    if max_degree < 0:
        raise ValueError(f"max degree must be nonnegative, got {max_degree}")
    return list(_indices_tuple(geometry.n, max_degree))


def _axis_order(geometry: SphereGeometry, index: HarmonicIndex, nu: int) -> tuple[int, float, int]:
    """(degree, order, sine power) of the nu-th polar factor, nu = 1..n-1."""
    ks = (index.l,) + index.chain
    d = ks[nu - 1] - ks[nu]
    lam_nu = (geometry.n - nu) / 2.0 + ks[nu]
    return d, lam_nu, ks[nu]


def _check_index(geometry: SphereGeometry, index: HarmonicIndex) -> None:
    if len(index.chain) != geometry.n - 1:
        raise ValueError(
            f"index chain length {len(index.chain)} incompatible with S^{geometry.n}"
        )


@lru_cache(maxsize=None)
def _log_norm_1d(degree: int, lam: float) -> float:
    return math.log(gegenbauer_norm_1d(GegenbauerParams(lam, degree)))


def normalization_constant(geometry: SphereGeometry, index: HarmonicIndex) -> float:
    """A_l^k making Y_l^k a unit vector in the Sigma_n-normalized inner product.

    A^2 = Sigma_n / (2 pi prod_nu h(k_{nu-1} - k_nu, (n-nu)/2 + k_nu)).
    Computed in log space; the azimuthal factor contributes the bare 2 pi.
    """
    _check_index(geometry, index)
    log_a2 = math.log(geometry.measure) - math.log(2.0 * math.pi)
    for nu in range(1, geometry.n):
        d, lam_nu, _ = _axis_order(geometry, index, nu)
        log_a2 -= _log_norm_1d(d, lam_nu)
    return math.exp(0.5 * log_a2)


def axis_profile(geometry: SphereGeometry, index: HarmonicIndex, nu: int, thetas) -> np.ndarray:
    """The nu-th polar factor C_d^{lam_nu}(cos theta) sin^{k_nu}(theta) on an
    array of angles (normalization not included)."""
    _check_index(geometry, index)
    thetas = np.asarray(thetas, dtype=float)
    d, lam_nu, k_nu = _axis_order(geometry, index, nu)
    values = gegenbauer_table(lam_nu, d, np.cos(thetas))[d]
    if k_nu:
        values = values * np.sin(thetas) ** k_nu
    return values


def azimuth_profile(index: HarmonicIndex, phis) -> np.ndarray:
    """exp(sign * i k_{n-1} phi) on an array of azimuths."""
    phis = np.asarray(phis, dtype=float)
    return np.exp(1j * index.sign * index.chain[-1] * phis)


def harmonic_eval(
    geometry: SphereGeometry, index: HarmonicIndex, point: SphericalPoint
) -> complex:
    """Value of Y_l^k at a point of S^n."""
    _check_index(geometry, index)
    if point.n != geometry.n:
        raise ValueError(f"point on S^{point.n} passed for S^{geometry.n}")
    value = normalization_constant(geometry, index)
    for nu in range(1, geometry.n):
        value *= float(axis_profile(geometry, index, nu, point.thetas[nu - 1]))
    return value * complex(azimuth_profile(index, point.phi))


def addition_kernel(geometry: SphereGeometry, l: int, x: SphericalPoint, y: SphericalPoint) -> float:
    """C_l^lambda(x . y); equals (lambda/(l+lambda)) sum_k conj(Y_l^k(x)) Y_l^k(y)."""
    if l < 0:
        raise ValueError(f"degree must be nonnegative, got {l}")
    t = dot(x, y)
    return float(gegenbauer_table(geometry.lam, l, np.asarray(t))[l])
