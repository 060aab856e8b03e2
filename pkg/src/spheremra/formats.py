"""JSON wire formats for signals, spectra, pyramids, and zonal expansions.

Writers are hand-rolled so every float is emitted with %.17g (lossless
round-trip, byte-identical reruns); readers accept anything json.loads
produces for those documents.

    GridSignal    {"n": 2, "j": 3, "values": [[re, im], ...]}   grid order
    Spectrum      {"n": 2, "j": 3, "entries": [{"l": 0, "k": [0], "sign": 1,
                   "re": ..., "im": ...}, ...]}                 enumeration order
    Pyramid       {"base": <signal>, "details": [<signal>, ...]}
    ZonalSpectrum {"lambda": 0.5, "coeffs": [[re, im], ...]}    coeffs[l] ~ C_l
"""

from __future__ import annotations

import json

import numpy as np

from .harmonics import HarmonicIndex, SphereGeometry
from .mra import GridSignal, Spectrum
from .specfun import ZonalSpectrum
from .transform import Pyramid

__all__ = [
    "format_float",
    "signal_to_json",
    "signal_from_json",
    "spectrum_to_json",
    "spectrum_from_json",
    "pyramid_to_json",
    "pyramid_from_json",
    "zonal_to_json",
    "zonal_from_json",
]


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def _pair_rows(values: np.ndarray, indent: str) -> str:
    rows = [
        f"{indent}[{format_float(v.real)}, {format_float(v.imag)}]" for v in values
    ]
    return ",\n".join(rows)


def signal_to_json(signal: GridSignal) -> str:
    body = _pair_rows(signal.values, "    ")
    return (
        "{\n"
        f'  "n": {signal.geometry.n},\n'
        f'  "j": {signal.j},\n'
        '  "values": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )


def _signal_from_obj(obj: dict) -> GridSignal:
    try:
        n, j, raw = int(obj["n"]), int(obj["j"]), obj["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed signal document: {exc}") from exc
    values = np.array([complex(re, im) for re, im in raw])
    return GridSignal(SphereGeometry(n), j, values)


def signal_from_json(text: str) -> GridSignal:
    return _signal_from_obj(json.loads(text))


def spectrum_to_json(spectrum: Spectrum) -> str:
    rows = []
    for index, value in spectrum.entries.items():
        ks = ", ".join(str(k) for k in index.chain)
        value = complex(value)
        rows.append(
            f'    {{"l": {index.l}, "k": [{ks}], "sign": {index.sign}, '
            f'"re": {format_float(value.real)}, "im": {format_float(value.imag)}}}'
        )
    body = ",\n".join(rows)
    return (
        "{\n"
        f'  "n": {spectrum.geometry.n},\n'
        f'  "j": {spectrum.j},\n'
        '  "entries": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )


def spectrum_from_json(text: str) -> Spectrum:
    obj = json.loads(text)
    try:
        n, j = int(obj["n"]), int(obj["j"])
        entries: dict[HarmonicIndex, complex] = {}
        for row in obj["entries"]:
            index = HarmonicIndex(int(row["l"]), tuple(int(k) for k in row["k"]), int(row["sign"]))
            entries[index] = complex(float(row["re"]), float(row["im"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed spectrum document: {exc}") from exc
    return Spectrum(SphereGeometry(n), j, entries)


def pyramid_to_json(pyramid: Pyramid) -> str:
    def indent_block(text: str, pad: str) -> str:
        return "\n".join(pad + line for line in text.strip().split("\n"))

    base = indent_block(signal_to_json(pyramid.base), "  ").lstrip()
    details = ",\n".join(
        indent_block(signal_to_json(w), "    ") for w in pyramid.details
    )
    return (
        "{\n"
        f'  "base": {base},\n'
        '  "details": [\n'
        f"{details}\n"
        "  ]\n"
        "}\n"
    )


def pyramid_from_json(text: str) -> Pyramid:
    obj = json.loads(text)
    try:
        base = _signal_from_obj(obj["base"])
        details = [_signal_from_obj(item) for item in obj["details"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed pyramid document: {exc}") from exc
    return Pyramid(base, details)


def zonal_to_json(spec: ZonalSpectrum) -> str:
    body = _pair_rows(spec.coeffs, "    ")
    return (
        "{\n"
        f'  "lambda": {format_float(spec.lam)},\n'
        '  "coeffs": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )


def zonal_from_json(text: str) -> ZonalSpectrum:
    obj = json.loads(text)
    try:
        lam = float(obj["lambda"])
        coeffs = np.array([complex(re, im) for re, im in obj["coeffs"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed zonal document: {exc}") from exc
    return ZonalSpectrum(lam, coeffs)
