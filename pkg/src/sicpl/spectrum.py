"""Synthetic polarized photoluminescence experiments.

Builds on the catalog and the selection rules: excitation efficiencies
versus polarizer angle, which lines a laser can excite, spectrum
synthesis with ZPL plus phonon-sideband Gaussians, Debye-Waller
measurement, angular scans, cosine-model fitting, orientation-ensemble
averaging and axial/basal classification of emitters.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import Geometry, Medium, ZplLine, nm_to_mev

# angle convention: phi = 0 is E perpendicular to c, phi = 90 is E parallel to c
DEFAULT_BASAL_MODULATION = 0.33
DEFAULT_ZPL_FWHM_MEV = 1.0
DEFAULT_AXIAL_B_THRESHOLD = 0.95
DEFAULT_VANISH_RATIO = 0.01


class SpectrumError(Exception):
    pass


class DegenerateFitError(SpectrumError):
    pass


def cos2phi(phi_deg: float) -> float:
    """cos(2*phi) with exact values at multiples of 45 degrees.

    The axial-vanishing law requires an exact -1 at phi = 90, which
    float radians would only approximate.
    """
    angle = (2.0 * phi_deg) % 360.0
    table = {0.0: 1.0, 90.0: 0.0, 180.0: -1.0, 270.0: 0.0}
    if angle in table:
        return table[angle]
    return math.cos(math.radians(angle))


class LaserMode(enum.Enum):
    NON_RESONANT = "non-resonant"
    RESONANT = "resonant"


@dataclass(frozen=True)
class LaserConfig:
    photon_energy_mev: float
    polarizer_angle_deg: float  # phi, in [0, 180)
    mode: LaserMode = LaserMode.NON_RESONANT

    def __post_init__(self):
        if self.photon_energy_mev <= 0:
            raise SpectrumError("photon energy must be positive")
        if not 0.0 <= self.polarizer_angle_deg < 180.0:
            raise SpectrumError("polarizer angle must lie in [0, 180)")

    @classmethod
    def from_wavelength(
        cls,
        wavelength_nm: float,
        polarizer_angle_deg: float,
        medium: Medium = Medium.air(),
        mode: LaserMode = LaserMode.NON_RESONANT,
    ) -> "LaserConfig":
        return cls(nm_to_mev(wavelength_nm, medium), polarizer_angle_deg, mode)


@dataclass(frozen=True)
class AngularModel:
    """I(phi) = amplitude * (1 + modulation * cos 2 phi)."""

    amplitude: float
    modulation: float

    def __post_init__(self):
        if self.amplitude < 0:
            raise SpectrumError("amplitude must be non-negative")
        if abs(self.modulation) > 1.0:
            raise SpectrumError("modulation must lie in [-1, 1]")

    def intensity(self, phi_deg: float) -> float:
        return self.amplitude * (1.0 + self.modulation * cos2phi(phi_deg))


@dataclass(frozen=True)
class AngularSample:
    phi_deg: float
    intensity: float
    uncertainty: float | None = None


@dataclass(frozen=True)
class LineShapeParams:
    zpl_fwhm_mev: float = DEFAULT_ZPL_FWHM_MEV
    # (red-shift offset from the ZPL in meV, fwhm in meV, relative weight)
    sideband: tuple[tuple[float, float, float], ...] = (
        (40.0, 20.0, 0.6),
        (90.0, 30.0, 0.4),
    )
    debye_waller: float = 0.3

    def __post_init__(self):
        if not 0.0 < self.debye_waller <= 1.0:
            raise SpectrumError("Debye-Waller fraction must lie in (0, 1]")
        if self.zpl_fwhm_mev <= 0:
            raise SpectrumError("ZPL fwhm must be positive")


@dataclass(frozen=True, eq=False)
class Spectrum:
    energy_mev: np.ndarray
    intensity: np.ndarray
    metadata: dict = field(default_factory=dict, hash=False, compare=False)
    warnings: tuple[str, ...] = ()


def excitation_efficiency(
    line: ZplLine,
    laser: LaserConfig,
    basal_modulation: float = DEFAULT_BASAL_MODULATION,
    zpl_fwhm_mev: float = DEFAULT_ZPL_FWHM_MEV,
) -> float:
    """Relative absorption efficiency of one line, normalized to 1 at its best angle.

    Non-resonant excitation requires the laser strictly above the ZPL
    (absorption goes into the sideband); resonant excitation requires a
    hit within half a linewidth.  Axial lines have modulation 1 and
    vanish exactly at phi = 90.
    """
    if laser.mode is LaserMode.NON_RESONANT:
        if laser.photon_energy_mev <= line.energy_mev:
            return 0.0
    else:
        if abs(laser.photon_energy_mev - line.energy_mev) > zpl_fwhm_mev / 2.0:
            return 0.0
    b = 1.0 if line.geometry is Geometry.AXIAL else basal_modulation
    return (1.0 + b * cos2phi(laser.polarizer_angle_deg)) / (1.0 + b)


def excited_lines(
    lines: list[ZplLine] | tuple[ZplLine, ...],
    laser: LaserConfig,
    basal_modulation: float = DEFAULT_BASAL_MODULATION,
    zpl_fwhm_mev: float = DEFAULT_ZPL_FWHM_MEV,
) -> list[tuple[ZplLine, float]]:
    """Lines with nonzero excitation efficiency, ascending in energy."""
    pairs = [
        (line, excitation_efficiency(line, laser, basal_modulation, zpl_fwhm_mev))
        for line in lines
    ]
    return sorted(
        [(li, eff) for li, eff in pairs if eff > 0.0],
        key=lambda p: p[0].energy_mev,
    )


def _gaussian(grid: np.ndarray, center: float, fwhm: float, area: float) -> np.ndarray:
    sigma = fwhm / (2.0 * math.sqrt(2.0 * math.log(2.0)))
    amp = area / (sigma * math.sqrt(2.0 * math.pi))
    return amp * np.exp(-0.5 * ((grid - center) / sigma) ** 2)


def synthesize_spectrum(
    excited: list[tuple[ZplLine, float]],
    shapes: LineShapeParams | dict[str, LineShapeParams],
    grid: np.ndarray,
    metadata: dict | None = None,
) -> Spectrum:
    """Sum of per-line bands: a ZPL Gaussian plus red-shifted sideband Gaussians.

    Sideband weights are normalized so the ZPL carries the configured
    Debye-Waller fraction of each line's band; the band integral of each
    line equals its excitation efficiency.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise SpectrumError("energy grid must be a strictly ascending 1-d array")
    warnings = []
    intensity = np.zeros_like(grid)
    for line, eff in excited:
        shape = shapes[line.label] if isinstance(shapes, dict) else shapes
        spacing = float(np.max(np.diff(grid)))
        if spacing > shape.zpl_fwhm_mev / 4.0:
            warnings.append(
                f"grid spacing {spacing:g} meV too coarse for {line.label} "
                f"fwhm {shape.zpl_fwhm_mev:g} meV"
            )
        dw = shape.debye_waller
        # accumulate the full band per line, then add: keeps synthesis
        # bit-exactly linear in the line set
        band = _gaussian(grid, line.energy_mev, shape.zpl_fwhm_mev, eff * dw)
        total_weight = sum(w for _, _, w in shape.sideband)
        if total_weight > 0 and dw < 1.0:
            for offset, fwhm, weight in shape.sideband:
                area = eff * (1.0 - dw) * weight / total_weight
                band += _gaussian(grid, line.energy_mev - offset, fwhm, area)
        intensity += band
    return Spectrum(grid, intensity, dict(metadata or {}), tuple(warnings))


def debye_waller(
    spectrum: Spectrum,
    zpl_window: tuple[float, float],
    band_window: tuple[float, float],
) -> float:
    """ZPL-window area over band-window area, by trapezoidal integration."""
    zlo, zhi = zpl_window
    blo, bhi = band_window
    if not (blo <= zlo < zhi <= bhi):
        raise SpectrumError("ZPL window must lie inside the band window")
    grid = spectrum.energy_mev
    if blo < grid[0] or bhi > grid[-1]:
        raise SpectrumError("band window exceeds the spectrum grid")

    def window_area(lo: float, hi: float) -> float:
        mask = (grid >= lo) & (grid <= hi)
        if mask.sum() < 2:
            raise SpectrumError("window contains fewer than two grid points")
        return float(np.trapezoid(spectrum.intensity[mask], grid[mask]))

    band = window_area(blo, bhi)
    if band <= 0:
        raise SpectrumError("band window has no intensity")
    return window_area(zlo, zhi) / band


def angular_scan(
    model: AngularModel,
    phi_values: list[float] | np.ndarray,
    noise_sigma: float = 0.0,
    seed: int | None = None,
) -> list[AngularSample]:
    """Evaluate the cosine model, optionally with seeded Gaussian noise."""
    rng = np.random.default_rng(seed)
    samples = []
    for phi in phi_values:
        value = model.intensity(float(phi))
        if noise_sigma > 0.0:
            value += float(rng.normal(0.0, noise_sigma))
        samples.append(AngularSample(float(phi), value))
    return samples


def fit_angular(samples: list[AngularSample]) -> tuple[AngularModel, float]:
    """Least-squares fit of I(phi) = A (1 + B cos 2 phi).

    Linear in (A, A*B) on the basis {1, cos 2 phi}; B is clamped into
    [-1, 1] so noisy near-axial data still yields a valid model.
    """
    if len(samples) < 3:
        raise DegenerateFitError("need at least 3 samples")
    cos_vals = np.array([cos2phi(s.phi_deg) for s in samples])
    if np.unique(np.round(cos_vals, 12)).size < 2:
        raise DegenerateFitError("all samples share the same cos 2 phi; cannot fit")
    design = np.column_stack([np.ones_like(cos_vals), cos_vals])
    intensities = np.array([s.intensity for s in samples])
    coeffs, _, _, _ = np.linalg.lstsq(design, intensities, rcond=None)
    a, ab = float(coeffs[0]), float(coeffs[1])
    if a <= 0:
        raise DegenerateFitError(f"fitted amplitude {a:g} is not positive")
    b = min(1.0, max(-1.0, ab / a))
    model = AngularModel(a, b)
    residual = float(
        np.linalg.norm(intensities - a * (1.0 + b * cos_vals))
    )
    return model, residual


class ScanPlane(enum.Enum):
    TOWARD_C = "toward-c"    # polarizer rotated from E-perp-c toward E-par-c
    IN_PLANE = "in-plane"    # polarizer rotated within the basal plane


def classify_geometry(
    model: AngularModel,
    scan_plane: ScanPlane = ScanPlane.TOWARD_C,
    axial_threshold: float = DEFAULT_AXIAL_B_THRESHOLD,
    vanish_ratio: float = DEFAULT_VANISH_RATIO,
) -> Geometry:
    """Call an emitter axial or basal from its fitted angular response.

    Rotating toward c, an axial emitter modulates fully (B near 1).
    Rotating in the basal plane on a single emitter, only a basal
    emitter can go dark at some angle; an axial one keeps a nonzero
    floor however strong its modulation.
    """
    if scan_plane is ScanPlane.TOWARD_C:
        return Geometry.AXIAL if model.modulation >= axial_threshold else Geometry.BASAL
    peak = model.amplitude * (1.0 + abs(model.modulation))
    floor = model.amplitude * (1.0 - abs(model.modulation))
    if peak <= 0:
        return Geometry.BASAL
    return Geometry.BASAL if floor / peak <= vanish_ratio else Geometry.AXIAL


def ensemble_average(single: AngularModel, n_orientations: int = 3) -> AngularModel:
    """Average a single-defect response over equivalent in-plane orientations.

    The three defect-axis orientations 120 degrees apart cancel the
    cos 2 phi term identically, so the ensemble is isotropic.
    """
    if n_orientations != 3:
        raise SpectrumError("only the three-fold orientation average is defined")
    return AngularModel(single.amplitude, 0.0)
