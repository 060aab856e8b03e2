"""Exact trigonometric quadrature on equiangular spherical grids.

For integer alpha >= 1 the rule with nodes theta_u = u pi / M, u = 0..M,
integrates int_0^pi f(cos theta) sin^alpha(theta) dtheta exactly whenever f is
a polynomial of degree <= M.  Its weights are

    chi_u = eps_u omega_u,
    omega_u = (pi alpha! / (2^(alpha-1) M))
              sum_{mu=0}^{floor(M/2)} eps_{2mu} (-1)^mu cos(2 mu u pi / M)
              / (Gamma(alpha/2 - mu + 1) Gamma(alpha/2 + mu + 1)),

with eps_k = 1/2 at k in {0, M} and 1 otherwise; reciprocal-gamma factors at
pole arguments are zero, which silently drops those summands.  Tensor products
of these rules over the polar axes (alpha = n - nu on axis nu) together with
the uniform azimuthal sum make up the level-j grids N_j.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np
from scipy.special import rgamma

from .harmonics import SphereGeometry

__all__ = [
    "QuadratureRule",
    "GridNode",
    "make_rule",
    "integrate",
    "single_frequency_integral",
    "dct_i",
    "grid_shape",
    "grid_axes",
    "grid_size",
    "grid_nodes",
    "level_weight",
    "level_weights",
    "node_cap",
]

_NODE_CAP_ENV = "SPHEREMRA_NODE_CAP"
_DEFAULT_NODE_CAP = 10_000_000


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes u pi / M and weights chi_u of the sin^alpha rule of order M."""

    order: int
    alpha: int
    nodes: np.ndarray
    weights: np.ndarray


def _eps(k: int, order: int) -> float:
    return 0.5 if k == 0 or k == order else 1.0


@lru_cache(maxsize=None)
def _cached_rule(order: int, alpha: int) -> QuadratureRule:
    m = order
    u = np.arange(m + 1)
    mus = np.arange(m // 2 + 1)
    # eps_{2 mu} (-1)^mu / (Gamma(alpha/2 - mu + 1) Gamma(alpha/2 + mu + 1))
    series = np.array(
        [
            _eps(2 * mu, m)
            * (-1.0) ** mu
            * rgamma(alpha / 2.0 - mu + 1.0)
            * rgamma(alpha / 2.0 + mu + 1.0)
            for mu in mus
        ]
    )
    cosines = np.cos(2.0 * np.pi * np.outer(u, mus) / m)
    omega = (math.pi * math.factorial(alpha) / (2.0 ** (alpha - 1) * m)) * (cosines @ series)
    eps_u = np.where((u == 0) | (u == m), 0.5, 1.0)
    rule = QuadratureRule(m, alpha, u * np.pi / m, eps_u * omega)
    rule.nodes.setflags(write=False)
    rule.weights.setflags(write=False)
    return rule


def make_rule(order: int, alpha: int) -> QuadratureRule:
    """Quadrature rule of order M >= 1 for the weight sin^alpha, alpha >= 1."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if alpha < 1:
        raise ValueError(f"sine power alpha must be >= 1, got {alpha}")
    return _cached_rule(order, alpha)


def integrate(rule: QuadratureRule, samples) -> float | complex:
    """sum_u chi_u f(cos(u pi / M)) for samples f(cos theta_u) in node order."""
    samples = np.asarray(samples)
    if samples.shape != rule.nodes.shape:
        raise ValueError(
            f"expected {rule.nodes.shape[0]} samples for order {rule.order}, "
            f"got {samples.shape}"
        )
    value = np.dot(rule.weights, samples)
    return complex(value) if np.iscomplexobj(samples) else float(value)


def single_frequency_integral(mu: int, alpha: int) -> float:
    """int_0^pi cos(mu theta) sin^alpha(theta) dtheta for integers mu >= 0, alpha >= 1.

    Equals pi alpha! cos(mu pi / 2) / (2^alpha Gamma((alpha-mu+2)/2)
    Gamma((alpha+mu+2)/2)); zero for odd mu and for even mu > alpha.  The
    parity factor cos(mu pi / 2) is applied exactly.
    """
    if mu < 0:
        raise ValueError(f"frequency must be nonnegative, got {mu}")
    if alpha < 1:
        raise ValueError(f"sine power alpha must be >= 1, got {alpha}")
    if mu % 2:
        return 0.0
    sign = -1.0 if (mu // 2) % 2 else 1.0
    return (
        math.pi
        * math.factorial(alpha)
        * sign
        / 2.0**alpha
        * rgamma((alpha - mu + 2) / 2.0)
        * rgamma((alpha + mu + 2) / 2.0)
    )


def dct_i(samples) -> np.ndarray:
    """Cosine coefficients a_mu of samples taken at theta_u = u pi / M.

    a_mu = (2 eps_mu / M) sum_u eps_u f_u cos(mu u pi / M); the returned
    series reproduces the samples exactly for trigonometric data of degree
    <= M.
    """
    samples = np.asarray(samples)
    if samples.ndim != 1 or samples.shape[0] < 2:
        raise ValueError("need a flat array of at least two samples")
    m = samples.shape[0] - 1
    u = np.arange(m + 1)
    eps = np.where((u == 0) | (u == m), 0.5, 1.0)
    cosines = np.cos(np.pi * np.outer(u, u) / m)
    return (2.0 * eps / m) * (cosines @ (eps * samples))


def node_cap() -> int:
    """Grid-size guard; override with the SPHEREMRA_NODE_CAP variable."""
    raw = os.environ.get(_NODE_CAP_ENV)
    if raw is None:
        return _DEFAULT_NODE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{_NODE_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{_NODE_CAP_ENV} must be positive, got {cap}")
    return cap


def grid_shape(geometry: SphereGeometry, j: int) -> tuple[int, ...]:
    """(M+1, ..., M+1, 2M) with M = 2^j: polar axes then the azimuth."""
    if j < 1:
        raise ValueError(f"level must be >= 1, got {j}")
    m = 2**j
    return (m + 1,) * (geometry.n - 1) + (2 * m,)


def grid_size(geometry: SphereGeometry, j: int) -> int:
    return math.prod(grid_shape(geometry, j))


def grid_axes(geometry: SphereGeometry, j: int) -> tuple[list[np.ndarray], np.ndarray]:
    """Polar node vectors (one per axis, all s pi / 2^j) and azimuth nodes t pi / 2^j."""
    m = 2**j
    shape = grid_shape(geometry, j)
    if math.prod(shape) > node_cap():
        raise ValueError(
            f"level-{j} grid on S^{geometry.n} has {math.prod(shape)} nodes, "
            f"beyond the cap {node_cap()}; raise {_NODE_CAP_ENV} to override"
        )
    thetas = [np.arange(m + 1) * np.pi / m for _ in range(geometry.n - 1)]
    phis = np.arange(2 * m) * np.pi / m
    return thetas, phis


@dataclass(frozen=True)
class GridNode:
    """One node of N_j: polar indices s, azimuth index t, at level j."""

    level: int
    s: tuple[int, ...]
    t: int

    def point_angles(self) -> tuple[tuple[float, ...], float]:
        m = 2**self.level
        return tuple(si * math.pi / m for si in self.s), self.t * math.pi / m


def grid_nodes(geometry: SphereGeometry, j: int) -> Iterator[GridNode]:
    """Nodes of N_j in deterministic order: polar indices vary slowest, the
    azimuth index fastest (C order of the (M+1)^(n-1) x 2M index box)."""
    shape = grid_shape(geometry, j)
    if math.prod(shape) > node_cap():
        raise ValueError(
            f"level-{j} grid on S^{geometry.n} has {math.prod(shape)} nodes, "
            f"beyond the cap {node_cap()}; raise {_NODE_CAP_ENV} to override"
        )
    for multi in np.ndindex(*shape):
        yield GridNode(j, multi[:-1], multi[-1])


def level_weight(geometry: SphereGeometry, j: int, node: GridNode) -> float:
    """Product over polar axes of the chi weights at the node's s indices."""
    if node.level != j:
        raise ValueError(f"node at level {node.level} passed for level {j}")
    m = 2**j
    value = 1.0
    for nu, s in enumerate(node.s, start=1):
        value *= float(make_rule(m, geometry.n - nu).weights[s])
    return value


def level_weights(geometry: SphereGeometry, j: int) -> np.ndarray:
    """All chi products of N_j, flattened in grid_nodes order."""
    shape = grid_shape(geometry, j)
    m = 2**j
    flat = np.ones(1)
    for nu in range(1, geometry.n):
        flat = np.outer(flat, make_rule(m, geometry.n - nu).weights).ravel()
    flat = np.repeat(flat, shape[-1])
    return flat
