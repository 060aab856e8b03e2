"""Pyramid decomposition and reconstruction between sample levels.

A level-(j+1) sample vector of a V_{j+1} function splits into the samples of
its V_j part (on the coarser grid N_j) and the samples of its W_j detail part
(kept on N_{j+1}).  Both directions are implemented spectrally: analyze on the
signal's own grid, select the band, evaluate on the target grid.  This is
exact at every level; quadrature applied to fine-level data on a coarse grid
is not, once cross-term degrees pass the coarse rule's range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .mra import (
    GridSignal,
    Spectrum,
    analyze,
    space_degree_bound,
    synthesize_on_grid,
)

__all__ = [
    "Pyramid",
    "restrict",
    "detail",
    "prolong_sum",
    "pyramid_decompose",
    "pyramid_reconstruct",
]


@dataclass
class Pyramid:
    """Base samples v^(1) on N_1 plus details w^(i) on N_{i+1}, i = 1..j."""

    base: GridSignal
    details: list[GridSignal] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.base.j != 1:
            raise ValueError(f"pyramid base must live at level 1, got {self.base.j}")
        for i, w in enumerate(self.details, start=1):
            if w.geometry != self.base.geometry:
                raise ValueError("pyramid mixes geometries")
            if w.j != i + 1:
                raise ValueError(
                    f"detail {i} must be sampled at level {i + 1}, got {w.j}"
                )

    @property
    def levels(self) -> int:
        return len(self.details)


def _split_spectrum(spectrum: Spectrum, j: int) -> tuple[Spectrum, Spectrum]:
    """Split level-(j+1) coefficients into the I_j part and the W_j band."""
    bound = space_degree_bound(j)
    low = {ix: c for ix, c in spectrum.entries.items() if ix.l <= bound}
    high = {ix: c for ix, c in spectrum.entries.items() if ix.l > bound}
    return (
        Spectrum(spectrum.geometry, j, low),
        Spectrum(spectrum.geometry, j + 1, high),
    )


def restrict(signal: GridSignal) -> GridSignal:
    """Samples of the V_j part of a level-(j+1) signal, on N_j."""
    if signal.j < 2:
        raise ValueError("cannot restrict below level 1")
    low, _ = _split_spectrum(analyze(signal), signal.j - 1)
    return synthesize_on_grid(low, signal.j - 1)


def detail(signal: GridSignal) -> GridSignal:
    """Samples of the W_j part of a level-(j+1) signal, kept on N_{j+1}."""
    if signal.j < 2:
        raise ValueError("no detail below level 1")
    _, high = _split_spectrum(analyze(signal), signal.j - 1)
    return synthesize_on_grid(high, signal.j)


def prolong_sum(v: GridSignal, w: GridSignal) -> GridSignal:
    """Level-(j+1) samples of v + w from V_j samples v (on N_j) and W_j
    samples w (on N_{j+1})."""
    if w.j != v.j + 1:
        raise ValueError(
            f"detail must be sampled one level above the base: got {v.j} and {w.j}"
        )
    if v.geometry != w.geometry:
        raise ValueError("operands live on different spheres")
    coarse = analyze(v)
    _, high = _split_spectrum(analyze(w), v.j)
    fine = synthesize_on_grid(coarse, w.j)
    detail_part = synthesize_on_grid(high, w.j)
    return GridSignal(v.geometry, w.j, fine.values + detail_part.values)


def pyramid_decompose(signal: GridSignal, levels: int) -> Pyramid:
    """Split a level-(levels+1) signal into base samples and `levels` details."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    if signal.j != levels + 1:
        raise ValueError(
            f"a {levels}-level pyramid starts from level {levels + 1} samples, "
            f"got level {signal.j}"
        )
    details: list[GridSignal] = []
    current = signal
    for j in range(levels, 0, -1):
        spectrum = analyze(current)
        low, high = _split_spectrum(spectrum, j)
        details.append(synthesize_on_grid(high, j + 1))
        current = synthesize_on_grid(low, j)
    details.reverse()
    return Pyramid(base=current, details=details)


def pyramid_reconstruct(pyramid: Pyramid) -> GridSignal:
    """Invert pyramid_decompose: returns level-(levels+1) samples."""
    current = pyramid.base
    for w in pyramid.details:
        current = prolong_sum(current, w)
    return current
