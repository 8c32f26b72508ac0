"""Command-line interface.

One binary with subcommands wrapping the library: representation
algebra, selection tables, catalog queries, excitation scenarios,
spectrum synthesis and angular fitting.  Exit codes: 0 success, 2 usage
error, 1 computation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import (
    Catalog,
    CatalogError,
    DEFAULT_AIR_INDEX,
    Defect,
    Geometry,
    Medium,
    Polytype,
    builtin_catalog,
    format_catalog,
    nm_to_mev,
)
from .fileio import read_angular_samples, read_spectrum, write_angular_samples, write_spectrum
from .groups import GroupError, builtin_group, contains_trivial, decompose, tensor_product
from .selection import DefectClass, Policy, selection_table
from .spectrum import (
    AngularModel,
    DEFAULT_BASAL_MODULATION,
    DEFAULT_AXIAL_B_THRESHOLD,
    DEFAULT_ZPL_FWHM_MEV,
    LaserConfig,
    LaserMode,
    LineShapeParams,
    ScanPlane,
    SpectrumError,
    angular_scan,
    classify_geometry,
    debye_waller,
    excited_lines,
    fit_angular,
    synthesize_spectrum,
)

OUTPUT_DIR_ENV = "SICPL_OUTPUT_DIR"


def _out_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _medium(args) -> Medium:
    if args.medium == "vacuum":
        return Medium.vacuum()
    return Medium.air(args.air_index)


def _laser(args) -> LaserConfig:
    mode = LaserMode.RESONANT if getattr(args, "resonant", False) else LaserMode.NON_RESONANT
    if args.laser_mev is not None:
        return LaserConfig(args.laser_mev, args.phi, mode)
    if args.laser_nm is not None:
        return LaserConfig.from_wavelength(args.laser_nm, args.phi, _medium(args), mode)
    raise CatalogError("specify the laser with --laser-nm or --laser-mev")


def _add_laser_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--laser-nm", type=float, help="laser wavelength in nm")
    parser.add_argument("--laser-mev", type=float, help="laser photon energy in meV")
    parser.add_argument("--phi", type=float, default=0.0,
                        help="polarizer angle in degrees (0 = E perp c, 90 = E par c)")
    parser.add_argument("--medium", choices=["air", "vacuum"], default="air")
    parser.add_argument("--air-index", type=float, default=DEFAULT_AIR_INDEX)
    parser.add_argument("--resonant", action="store_true",
                        help="resonant excitation (match within half a linewidth)")
    parser.add_argument("--basal-b", type=float, default=DEFAULT_BASAL_MODULATION,
                        help="modulation of basal-line excitation efficiency")
    parser.add_argument("--zpl-fwhm", type=float, default=DEFAULT_ZPL_FWHM_MEV)


def _catalog_slice(args) -> list:
    polytype = Polytype(args.polytype) if args.polytype else None
    defect = Defect(args.defect) if args.defect else None
    geometry = Geometry(args.geometry) if getattr(args, "geometry", None) else None
    return builtin_catalog().lines_for(polytype, defect, geometry)


def cmd_product(args) -> int:
    group = builtin_group(args.group)
    if len(args.irreps) < 2:
        raise GroupError("need at least two irrep labels")
    rep = tensor_product(*[group.rep(label) for label in args.irreps])
    mult = decompose(rep)
    trivial = group.trivial_irrep.label
    has_trivial = mult[trivial] >= 1
    if args.format == "json":
        print(json.dumps({
            "group": group.name,
            "factors": args.irreps,
            "decomposition": mult.counts,
            "contains_trivial": has_trivial,
        }, indent=2))
    else:
        yn = "yes" if has_trivial else "no"
        print(f"{mult.direct_sum_str()} (contains {trivial}: {yn})")
    return 0


def cmd_selection(args) -> int:
    policy = Policy.GROUP_THEORY_ONLY if args.policy == "group-theory-only" else Policy.PHYSICAL_OVERRIDE
    table = selection_table(DefectClass(args.defect_class), policy)
    if args.format == "json":
        print(table.to_json())
    else:
        print(f"# defect class: {args.defect_class}, policy: {policy.value}")
        print(table.to_text())
    return 0


def cmd_excite(args) -> int:
    laser = _laser(args)
    lines = _catalog_slice(args)
    hits = excited_lines(lines, laser, args.basal_b, args.zpl_fwhm)
    if args.format == "json":
        print(json.dumps({
            "laser_mev": laser.photon_energy_mev,
            "phi_deg": laser.polarizer_angle_deg,
            "mode": laser.mode.value,
            "lines": [
                {"label": li.label, "energy_mev": li.energy_mev,
                 "geometry": li.geometry.value, "efficiency": eff}
                for li, eff in hits
            ],
        }, indent=2))
    else:
        print(f"# laser {laser.photon_energy_mev:.1f} meV, phi {laser.polarizer_angle_deg:g} deg, "
              f"mode {laser.mode.value}, basal_b {args.basal_b}")
        for li, eff in hits:
            print(f"{li.label}\t{li.energy_mev:.1f} meV\t{li.geometry.value}\t{eff:.4f}")
    return 0


def cmd_spectrum(args) -> int:
    laser = _laser(args)
    lines = _catalog_slice(args)
    hits = excited_lines(lines, laser, args.basal_b, args.zpl_fwhm)
    shape = LineShapeParams(zpl_fwhm_mev=args.zpl_fwhm, debye_waller=args.dw)
    grid = np.arange(args.emin, args.emax + args.step / 2.0, args.step)
    metadata = {
        "laser_mev": f"{laser.photon_energy_mev:.4f}",
        "phi_deg": laser.polarizer_angle_deg,
        "mode": laser.mode.value,
        "basal_b": args.basal_b,
        "zpl_fwhm_mev": args.zpl_fwhm,
        "debye_waller": args.dw,
        "air_index": args.air_index,
        "lines": ",".join(li.label for li, _ in hits) or "(none)",
    }
    spectrum = synthesize_spectrum(hits, shape, grid, metadata)
    path = _out_path(args.out)
    write_spectrum(path, spectrum)
    for warning in spectrum.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"wrote {path} ({len(hits)} lines)")
    return 0


def cmd_angular_scan(args) -> int:
    model = AngularModel(args.amplitude, args.modulation)
    phis = np.arange(args.start, args.stop + args.step / 2.0, args.step)
    samples = angular_scan(model, phis, args.noise, args.seed)
    metadata = {
        "amplitude": args.amplitude,
        "modulation": args.modulation,
        "noise_sigma": args.noise,
        "seed": args.seed,
    }
    path = _out_path(args.out)
    write_angular_samples(path, samples, metadata)
    print(f"wrote {path} ({len(samples)} samples)")
    return 0


def cmd_fit_angle(args) -> int:
    samples = read_angular_samples(args.input)
    model, residual = fit_angular(samples)
    plane = ScanPlane(args.scan_plane)
    geometry = classify_geometry(model, plane, args.axial_threshold)
    if args.format == "json":
        print(json.dumps({
            "amplitude": model.amplitude,
            "modulation": model.modulation,
            "residual": residual,
            "geometry": geometry.value,
            "scan_plane": plane.value,
            "axial_threshold": args.axial_threshold,
        }, indent=2))
    else:
        print(f"A = {model.amplitude:.6g}")
        print(f"B = {model.modulation:.6g}")
        print(f"residual = {residual:.3g}")
        print(f"geometry = {geometry.value} (scan plane {plane.value}, "
              f"threshold {args.axial_threshold})")
    return 0


def cmd_catalog(args) -> int:
    if args.verify_units:
        medium = Medium.air(args.air_index)
        residuals = builtin_catalog().unit_residuals(medium)
        worst = max(abs(r) for _, r in residuals)
        if args.format == "json":
            print(json.dumps({
                "air_index": medium.refractive_index,
                "residuals_mev": {li.label: r for li, r in residuals},
                "max_abs_residual_mev": worst,
            }, indent=2))
        else:
            print(f"# air index {medium.refractive_index}")
            for li, r in residuals:
                print(f"{li.label}\t{r:+.4f} meV")
            print(f"# max |residual| = {worst:.4f} meV")
        return 0
    lines = _catalog_slice(args)
    if args.export:
        path = _out_path(args.export)
        path.write_text(format_catalog(Catalog(tuple(lines))))
        print(f"wrote {path} ({len(lines)} lines)")
        return 0
    if args.format == "json":
        print(json.dumps([
            {"label": li.label, "polytype": li.polytype.value,
             "defect": li.defect.value, "wavelength_nm": li.wavelength_nm,
             "energy_mev": li.energy_mev, "geometry": li.geometry.value,
             "sites": "".join(li.sites)}
            for li in lines
        ], indent=2))
    else:
        for li in lines:
            print(f"{li.label}\t{li.polytype.value}\t{li.defect.value}\t"
                  f"{li.wavelength_nm} nm\t{li.energy_mev} meV\t"
                  f"{li.geometry.value}\t{''.join(li.sites)}")
    return 0


def cmd_debye_waller(args) -> int:
    spectrum = read_spectrum(args.input)
    dw = debye_waller(spectrum, tuple(args.zpl_window), tuple(args.band_window))
    if args.format == "json":
        print(json.dumps({"debye_waller": dw}))
    else:
        print(f"debye_waller = {dw:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sicpl",
        description="Selection rules and polarized PL simulation for SiC colour centres",
    )
    parser.add_argument("--version", action="version", version=f"sicpl {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("product", help="decompose a direct product of irreps")
    p.add_argument("group", choices=["C3v", "C1h", "C3v_double"])
    p.add_argument("irreps", nargs="+", help="two or more irrep labels")
    add_format(p)
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("selection", help="print a selection-rule grid")
    p.add_argument("defect_class", choices=[c.value for c in DefectClass])
    p.add_argument("--policy", choices=["physical", "group-theory-only"],
                   default="physical")
    add_format(p)
    p.set_defaults(func=cmd_selection)

    p = sub.add_parser("excite", help="lines excitable by a given laser")
    p.add_argument("polytype", choices=["4H", "6H"])
    p.add_argument("defect", choices=["VV", "NV"], type=str.upper)
    _add_laser_flags(p)
    add_format(p)
    p.set_defaults(func=cmd_excite)

    p = sub.add_parser("spectrum", help="synthesize a polarized PL spectrum")
    p.add_argument("polytype", choices=["4H", "6H"])
    p.add_argument("defect", choices=["VV", "NV"], type=str.upper)
    _add_laser_flags(p)
    p.add_argument("--emin", type=float, required=True, help="grid start in meV")
    p.add_argument("--emax", type=float, required=True, help="grid end in meV")
    p.add_argument("--step", type=float, default=0.2, help="grid spacing in meV")
    p.add_argument("--dw", type=float, default=0.3, help="Debye-Waller fraction")
    p.add_argument("--out", required=True, help="output file")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("angular-scan", help="generate angular-scan sample data")
    p.add_argument("--amplitude", "-A", type=float, required=True)
    p.add_argument("--modulation", "-B", type=float, required=True)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, default=165.0)
    p.add_argument("--step", type=float, default=15.0)
    p.add_argument("--noise", type=float, default=0.0, help="Gaussian noise sigma")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_angular_scan)

    p = sub.add_parser("fit-angle", help="fit I(phi) = A (1 + B cos 2 phi) to a file")
    p.add_argument("input", help="two-column (phi_deg, intensity) file")
    p.add_argument("--scan-plane", choices=[s.value for s in ScanPlane],
                   default=ScanPlane.TOWARD_C.value)
    p.add_argument("--axial-threshold", type=float, default=DEFAULT_AXIAL_B_THRESHOLD)
    add_format(p)
    p.set_defaults(func=cmd_fit_angle)

    p = sub.add_parser("catalog", help="query or export the ZPL catalog")
    p.add_argument("polytype", nargs="?", choices=["4H", "6H"])
    p.add_argument("defect", nargs="?", type=str.upper, choices=["VV", "NV"])
    p.add_argument("--geometry", choices=["axial", "basal"])
    p.add_argument("--verify-units", action="store_true",
                   help="report per-line nm/meV residuals")
    p.add_argument("--air-index", type=float, default=DEFAULT_AIR_INDEX)
    p.add_argument("--export", help="write the slice as a catalog file")
    add_format(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("debye-waller", help="measure the DW factor of a spectrum file")
    p.add_argument("input")
    p.add_argument("--zpl-window", type=float, nargs=2, required=True,
                   metavar=("LO", "HI"))
    p.add_argument("--band-window", type=float, nargs=2, required=True,
                   metavar=("LO", "HI"))
    add_format(p)
    p.set_defaults(func=cmd_debye_waller)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GroupError, CatalogError, SpectrumError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
