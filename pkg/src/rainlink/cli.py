"""Command-line surface.

Commands: stations, attenuation, linkbudget, sweep, compare. Outputs go
to stdout in csv, json, or aligned-table form; warnings and diagnostics
go to stderr. Machine outputs are deterministic (no timestamps) unless
--stamp opts into a metadata header.

Exit codes: 0 success; 2 usage or configuration error; 3 parse or
validation error in input data; 4 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from datetime import datetime, timezone

from . import __version__
from .analysis import (ResolvedSource, availability_sweep, compare_sources,
                       emit_plot_data, emit_report, sweep_to_plot_curves)
from .attenuation import attenuation_curve
from .errors import (ConfigError, DomainError, DuplicateWarning, ParseError,
                     RainlinkError, UsageError, ValidationError)
from .geometry import rain_height, rain_slant_path
from .link_budget import Scenario, SourceDescriptor, parse_scenario
from .rain_data import (RainSource, SourceKind, Strategy, StationCatalog,
                        packaged_catalog_text, parse_rain_series,
                        parse_station_catalog, resolve_r001)
from .rain_physics import regression_coefficients

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_IO = 4

STATION_COLUMNS = ["name", "latitude_deg", "longitude_deg", "altitude_m"]
CURVE_COLUMNS = ["station", "source", "r001_mm_per_hr", "p_percent",
                 "attenuation_dB"]


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_catalog(path: str | None) -> StationCatalog:
    text = packaged_catalog_text() if path is None else _read_text(path)
    return parse_station_catalog(text)


def _parse_p_list(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --p list {text!r}: {exc}") from exc
    if not values:
        raise UsageError(f"bad --p list {text!r}: no values")
    deduped = sorted(set(values))
    if len(deduped) != len(values):
        warnings.warn("duplicate p values collapsed", DuplicateWarning,
                      stacklevel=2)
    return deduped


def _stamp_text() -> str:
    now = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return f"rainlink {__version__} {now}"


def _emit(report: str, format: str, stamp: bool) -> None:
    if stamp:
        if format == "json":
            sys.stdout.write(f'{{"meta": "{_stamp_text()}", "report":\n')
            sys.stdout.write(report)
            sys.stdout.write("}\n")
            return
        sys.stdout.write(f"# {_stamp_text()}\n")
    sys.stdout.write(report)


def _scenario_relative(scenario_path: str, path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.path.dirname(os.path.abspath(scenario_path)), path)


def _load_scenario(path: str) -> Scenario:
    return parse_scenario(_read_text(path))


def _resolve_descriptor(desc: SourceDescriptor, catalog: StationCatalog,
                        scenario_path: str) -> ResolvedSource:
    """Reduce a scenario source descriptor to per-station sweep inputs,
    loading series files as needed."""
    names = [s.name for s in catalog.stations]
    if desc.kind == "attenuation":
        return ResolvedSource(label=desc.label,
                              attenuation_by_station=dict(desc.values))
    if desc.kind == "r001":
        if desc.value is not None:
            return ResolvedSource(label=desc.label,
                                  r001_by_station={n: desc.value for n in names})
        return ResolvedSource(label=desc.label,
                              r001_by_station=dict(desc.values))
    rates = {}
    for name in names:
        if name not in desc.paths:
            raise ConfigError(f"source {desc.label!r}: no series path for "
                              f"station {name!r}")
        series_path = _scenario_relative(scenario_path, desc.paths[name])
        series = parse_rain_series(_read_text(series_path), station_ref=name)
        source = RainSource(label=desc.label, kind=SourceKind.SERIES,
                            strategy=Strategy(desc.strategy), series=series)
        rates[name] = resolve_r001(source)
    return ResolvedSource(label=desc.label, r001_by_station=rates)


def _scenario_catalog(args, scenario: Scenario) -> StationCatalog:
    if getattr(args, "catalog", None):
        return _load_catalog(args.catalog)
    if scenario.catalog_path:
        return _load_catalog(_scenario_relative(args.scenario,
                                                scenario.catalog_path))
    return _load_catalog(None)


def _scenario_sweep(args, p_list: list[float] | None = None):
    scenario = _load_scenario(args.scenario)
    catalog = _scenario_catalog(args, scenario)
    if not scenario.sources:
        raise ConfigError("scenario defines no sources")
    sources = [_resolve_descriptor(d, catalog, args.scenario)
               for d in scenario.sources]
    table = availability_sweep(
        catalog, scenario.params, sources,
        list(p_list if p_list is not None else scenario.p_list),
        mode=scenario.mode, k_clear_dB=scenario.k_clear_dB,
        polarization=scenario.polarization)
    for note in table.diagnostics:
        print(f"diagnostic: {note}", file=sys.stderr)
    return scenario, catalog, table


def cmd_stations(args) -> int:
    catalog = _load_catalog(args.catalog)
    rows = [[s.name, s.latitude_deg, s.longitude_deg, s.altitude_km * 1000.0]
            for s in catalog.stations]
    _emit(emit_report((STATION_COLUMNS, rows), args.format), args.format,
          args.stamp)
    return EXIT_OK


def cmd_attenuation(args) -> int:
    catalog = _load_catalog(args.catalog)
    station = catalog.station(args.station)
    if (args.r001 is None) == (args.series is None):
        raise UsageError("exactly one of --r001 or --series is required")
    if args.r001 is not None:
        label = args.label or "direct"
        r001 = args.r001
        if r001 < 0.0:
            raise UsageError(f"--r001 {r001} must be >= 0")
    else:
        label = args.label or os.path.basename(args.series)
        series = parse_rain_series(_read_text(args.series),
                                   station_ref=station.name)
        source = RainSource(label=label, kind=SourceKind.SERIES,
                            strategy=Strategy(args.strategy), series=series)
        r001 = resolve_r001(source)
    p_list = _parse_p_list(args.p)
    coeffs = regression_coefficients(args.freq_ghz, args.polarization)
    path = rain_slant_path(station, args.elevation_deg, rain_height(station))
    curve = attenuation_curve(station, path, coeffs, r001, p_list)
    for note in curve.diagnostics:
        print(f"diagnostic: {note}", file=sys.stderr)
    rows = [[station.name, label, curve.r001_mm_per_hr, p, a]
            for p, a in curve.points]
    _emit(emit_report((CURVE_COLUMNS, rows), args.format), args.format,
          args.stamp)
    return EXIT_OK


def cmd_linkbudget(args) -> int:
    _, _, table = _scenario_sweep(args)
    _emit(emit_report(table, args.format), args.format, args.stamp)
    return EXIT_OK


def cmd_sweep(args) -> int:
    p_list = _parse_p_list(args.p) if args.p else None
    _, _, table = _scenario_sweep(args, p_list)
    _emit(emit_report(table, args.format), args.format, args.stamp)
    if args.plot_data:
        curves = sweep_to_plot_curves(table, args.plot_field)
        with open(args.plot_data, "w", encoding="utf-8") as fh:
            fh.write(emit_plot_data(curves))
    return EXIT_OK


def cmd_compare(args) -> int:
    scenario = _load_scenario(args.scenario)
    catalog = _scenario_catalog(args, scenario)
    try:
        baseline_desc = scenario.source(args.baseline)
        estimate_desc = scenario.source(args.estimate)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    p = args.p_value if args.p_value is not None else scenario.p_list[0]
    results = {}
    for desc in (baseline_desc, estimate_desc):
        resolved = _resolve_descriptor(desc, catalog, args.scenario)
        table = availability_sweep(catalog, scenario.params, [resolved], [p],
                                   mode=scenario.mode,
                                   k_clear_dB=scenario.k_clear_dB,
                                   polarization=scenario.polarization)
        for note in table.diagnostics:
            print(f"diagnostic: {note}", file=sys.stderr)
        results[desc.label] = list(table.rows)
    rows = compare_sources(results[baseline_desc.label],
                           results[estimate_desc.label])
    _emit(emit_report(rows, args.format), args.format, args.stamp)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rainlink",
        description="Rain attenuation and link margins for Earth-space links")
    parser.add_argument("--version", action="version",
                        version=f"rainlink {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["csv", "json", "table"],
                       default="table", help="output format (default table)")
        p.add_argument("--stamp", action="store_true",
                       help="prepend run metadata to the output")

    p = sub.add_parser("stations", help="list a station catalog with "
                       "separation warnings")
    p.add_argument("--catalog", help="catalog CSV (default: bundled six-"
                   "station fixture)")
    common(p)
    p.set_defaults(func=cmd_stations)

    p = sub.add_parser("attenuation", help="predicted attenuation curve for "
                       "one station")
    p.add_argument("--catalog", help="catalog CSV (default: bundled fixture)")
    p.add_argument("--station", required=True, help="station name")
    p.add_argument("--freq-ghz", type=float, required=True,
                   help="carrier frequency, GHz")
    p.add_argument("--elevation-deg", type=float, required=True,
                   help="elevation angle, degrees")
    p.add_argument("--p", default="0.01",
                   help="comma list of exceedance percentages (default 0.01)")
    p.add_argument("--r001", type=float,
                   help="direct rain rate exceeded 0.01%% of the year, mm/hr")
    p.add_argument("--series", help="rain series CSV to reduce instead of "
                   "--r001")
    p.add_argument("--strategy", choices=["chebil_annual",
                                          "empirical_exceedance"],
                   default="chebil_annual",
                   help="series reduction strategy (default chebil_annual)")
    p.add_argument("--polarization", choices=["horizontal", "vertical"],
                   default="vertical", help="wave polarization (default "
                   "vertical)")
    p.add_argument("--label", help="provenance label echoed in the output")
    common(p)
    p.set_defaults(func=cmd_attenuation)

    p = sub.add_parser("linkbudget", help="link results for a scenario")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--catalog", help="override the scenario's catalog")
    common(p)
    p.set_defaults(func=cmd_linkbudget)

    p = sub.add_parser("sweep", help="availability sweep over stations, "
                       "sources, and p values")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--catalog", help="override the scenario's catalog")
    p.add_argument("--p", help="comma list of exceedance percentages "
                   "(default: scenario p_list)")
    p.add_argument("--plot-data", help="also write long-format plot CSV here")
    p.add_argument("--plot-field", choices=["attenuation_dB", "cnr_dB",
                                            "available_margin_dB"],
                   default="attenuation_dB",
                   help="field for --plot-data (default attenuation_dB)")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="overestimation of a baseline source "
                       "by an estimate source")
    p.add_argument("--scenario", required=True, help="scenario JSON path")
    p.add_argument("--catalog", help="override the scenario's catalog")
    p.add_argument("--baseline", required=True, help="baseline source label")
    p.add_argument("--estimate", required=True, help="estimate source label")
    p.add_argument("--p", dest="p_value", type=float,
                   help="exceedance percentage (default: scenario's first)")
    common(p)
    p.set_defaults(func=cmd_compare)
    return parser


def _print_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings.simplefilter("always")
    old_showwarning = warnings.showwarning
    warnings.showwarning = _print_warning
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, ValidationError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except RainlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        warnings.showwarning = old_showwarning


if __name__ == "__main__":
    sys.exit(main())
