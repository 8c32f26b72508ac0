"""Plain-text exchange formats for spectra and angular scans.

Two-column delimited files with a ``#`` comment header carrying full
provenance (laser settings, angle, policy, seed, defaults), so every
emitted artifact is reproducible from its own header.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .spectrum import AngularSample, Spectrum, SpectrumError


def _header_lines(metadata: dict) -> list[str]:
    return [f"# {key} = {value}" for key, value in metadata.items()]


def write_spectrum(path: str | Path, spectrum: Spectrum) -> None:
    lines = _header_lines(spectrum.metadata)
    for warning in spectrum.warnings:
        lines.append(f"# warning: {warning}")
    lines.append("# columns: energy_meV intensity")
    for e, i in zip(spectrum.energy_mev, spectrum.intensity):
        lines.append(f"{e:.6f}\t{i:.9g}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_spectrum(path: str | Path) -> Spectrum:
    energies, intensities, metadata = [], [], {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                metadata[key.strip()] = value.strip()
            continue
        e, i = line.split()
        energies.append(float(e))
        intensities.append(float(i))
    return Spectrum(np.array(energies), np.array(intensities), metadata)


def write_angular_samples(
    path: str | Path, samples: list[AngularSample], metadata: dict | None = None
) -> None:
    lines = _header_lines(metadata or {})
    lines.append("# columns: phi_deg intensity")
    for s in samples:
        lines.append(f"{s.phi_deg:.4f}\t{s.intensity:.9g}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_angular_samples(path: str | Path) -> list[AngularSample]:
    samples = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise SpectrumError(f"{path}: line {lineno}: expected 'phi intensity'")
        try:
            phi, intensity = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise SpectrumError(f"{path}: line {lineno}: {exc}") from exc
        samples.append(AngularSample(phi, intensity))
    return samples
