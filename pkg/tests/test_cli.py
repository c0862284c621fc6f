from __future__ import annotations

import json

import pytest

from rainlink.cli import main

ITU_ATTEN = {"Abuja": 34.1808, "Hartbeesthoek": 49.0126, "Cairo": 31.6560,
             "Longonot": 40.2605, "Port Louis": 27.5556, "Praia": 28.0972}
GPM_ATTEN = {"Abuja": 10.3059, "Hartbeesthoek": 22.7947, "Cairo": -13.2802,
             "Longonot": 16.3896, "Port Louis": 0.7753, "Praia": -1.3956}
ITU_CNR = {"Abuja": -31.1143, "Hartbeesthoek": -45.9461, "Cairo": -28.5895,
           "Longonot": -37.1940, "Port Louis": -24.4891, "Praia": -25.0307}


def write_scenario(tmp_path, **overrides):
    doc = {
        "frequency_GHz": 28.5,
        "bandwidth_Hz": 2.1e9,
        "eirp_dBW": 75.9,
        "elevation_deg": 20.0,
        "receiver_gain_dBi": 31.8,
        "system_temperature_K": 868.4,
        "required_margin_dB": 0.36,
        "satellite_altitude_km": 1200.0,
        "antenna_diameter_m": 3.5,
        "mode": "calibrated",
        "k_clear_dB": 3.0665,
        "p_list": [0.01],
        "sources": [
            {"label": "ITU", "kind": "attenuation", "values": ITU_ATTEN},
            {"label": "GPM", "kind": "attenuation", "values": GPM_ATTEN},
        ],
    }
    doc.update(overrides)
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(doc))
    return str(path)


class TestStations:
    def test_fixture_listing(self, capsys):
        assert main(["stations", "--format", "csv"]) == 0
        out, err = capsys.readouterr()
        lines = out.splitlines()
        assert lines[0] == "name,latitude_deg,longitude_deg,altitude_m"
        assert len(lines) == 7
        assert "warning" not in err

    def test_missing_file_is_io_error(self, capsys):
        assert main(["stations", "--catalog", "/no/such/file.csv"]) == 4
        _, err = capsys.readouterr()
        assert "error" in err

    def test_duplicate_names_are_data_error(self, tmp_path, capsys):
        bad = tmp_path / "dup.csv"
        bad.write_text("name,latitude_deg,longitude_deg,altitude_m\n"
                       "X,0,0,0\nX,5,5,5\n")
        assert main(["stations", "--catalog", str(bad)]) == 3
        _, err = capsys.readouterr()
        assert "duplicate" in err

    def test_close_pair_warns_on_stderr(self, tmp_path, capsys):
        close = tmp_path / "close.csv"
        close.write_text("name,latitude_deg,longitude_deg,altitude_m\n"
                         "A,0.0,0.0,0\nB,0.9,0.0,0\n")
        assert main(["stations", "--catalog", str(close)]) == 0
        out, err = capsys.readouterr()
        assert "warning" in err
        assert len(out.splitlines()) == 3


class TestAttenuation:
    def test_direct_r001_single_point(self, capsys):
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "20", "--r001", "42",
                     "--p", "0.01", "--format", "csv"]) == 0
        out, _ = capsys.readouterr()
        lines = out.splitlines()
        assert lines[0] == "station,source,r001_mm_per_hr,p_percent,attenuation_dB"
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == "Abuja"
        assert cells[1] == "direct"
        assert float(cells[2]) == 42.0
        from rainlink import (attenuation_curve, parse_station_catalog,
                              packaged_catalog_text, rain_slant_path,
                              rain_height, regression_coefficients)
        st = parse_station_catalog(packaged_catalog_text()).station("Abuja")
        path = rain_slant_path(st, 20.0, rain_height(st))
        curve = attenuation_curve(st, path,
                                  regression_coefficients(28.5, "vertical"),
                                  42.0, [0.01])
        assert float(cells[4]) == curve.reference_A001_dB

    def test_duplicate_p_warns_and_collapses(self, capsys):
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "20", "--r001", "42",
                     "--p", "0.01,0.01", "--format", "csv"]) == 0
        out, err = capsys.readouterr()
        assert "warning" in err and "duplicate" in err
        assert len(out.splitlines()) == 2

    def test_low_elevation_is_data_error(self, capsys):
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "3", "--r001", "42"]) == 3
        _, err = capsys.readouterr()
        assert "elevation" in err

    def test_requires_exactly_one_source(self, capsys):
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "20"]) == 2
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "20", "--r001", "42",
                     "--series", "x.csv"]) == 2
        capsys.readouterr()

    def test_series_reduction(self, tmp_path, capsys):
        series = tmp_path / "rain.csv"
        rows = ["timestamp,rate_mm_per_hr"]
        for month in range(1, 13):
            rows.append(f"2010-{month:02d}-01T00:00:00Z,0.1455")
        series.write_text("\n".join(rows) + "\n")
        assert main(["attenuation", "--station", "Abuja", "--freq-ghz",
                     "28.5", "--elevation-deg", "20", "--series",
                     str(series), "--strategy", "chebil_annual",
                     "--p", "0.01", "--format", "csv"]) == 0
        out, _ = capsys.readouterr()
        cells = out.splitlines()[1].split(",")
        assert abs(float(cells[2]) - 103.00932178409715) < 1e-9

    def test_unknown_station_is_data_error(self, capsys):
        assert main(["attenuation", "--station", "Atlantis", "--freq-ghz",
                     "28.5", "--elevation-deg", "20", "--r001", "42"]) == 3
        capsys.readouterr()


class TestLinkBudget:
    def test_reference_cnr_column(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path,
                                  sources=[{"label": "ITU",
                                            "kind": "attenuation",
                                            "values": ITU_ATTEN}])
        assert main(["linkbudget", "--scenario", scenario, "--format",
                     "json"]) == 0
        out, _ = capsys.readouterr()
        rows = json.loads(out)
        assert len(rows) == 6
        for row in rows:
            assert abs(row["cnr_dB"] - ITU_CNR[row["station"]]) < 0.001
            assert abs(row["available_margin_dB"]
                       - (ITU_CNR[row["station"]] - 0.36)) < 0.001

    def test_zero_margin_makes_margin_equal_cnr(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path, required_margin_dB=0.0)
        assert main(["linkbudget", "--scenario", scenario, "--format",
                     "json"]) == 0
        out, _ = capsys.readouterr()
        for row in json.loads(out):
            assert row["available_margin_dB"] == row["cnr_dB"]

    def test_physics_clear_sky(self, tmp_path, capsys):
        scenario = write_scenario(
            tmp_path, mode="physics", k_clear_dB=None,
            sources=[{"label": "clear", "kind": "attenuation",
                      "values": {name: 0.0 for name in ITU_ATTEN}}])
        assert main(["linkbudget", "--scenario", scenario, "--format",
                     "json"]) == 0
        out, _ = capsys.readouterr()
        for row in json.loads(out):
            assert abs(row["cnr_dB"] - 24.3382333749326) < 1e-9

    def test_non_closing_links_still_exit_zero(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path)
        assert main(["linkbudget", "--scenario", scenario]) == 0
        capsys.readouterr()

    def test_bad_scenario_is_usage_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken")
        assert main(["linkbudget", "--scenario", str(bad)]) == 2
        capsys.readouterr()

    def test_missing_scenario_is_io_error(self, capsys):
        assert main(["linkbudget", "--scenario", "/no/such.json"]) == 4
        capsys.readouterr()


class TestSweep:
    def test_cross_product_and_plot_file(self, tmp_path, capsys):
        scenario = write_scenario(
            tmp_path, p_list=[0.01],
            sources=[{"label": "ITU", "kind": "r001", "value": 90.0}])
        plot = tmp_path / "plot.csv"
        assert main(["sweep", "--scenario", scenario, "--p",
                     "1.0,0.5,0.1,0.01,0.001", "--plot-data", str(plot),
                     "--format", "csv"]) == 0
        out, _ = capsys.readouterr()
        assert len(out.splitlines()) == 31
        plot_lines = plot.read_text().splitlines()
        assert plot_lines[0] == "station,source,p_percent,attenuation_dB"
        assert len(plot_lines) == 31

    def test_byte_identical_reruns(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path)
        assert main(["sweep", "--scenario", scenario, "--format", "csv"]) == 0
        first, _ = capsys.readouterr()
        assert main(["sweep", "--scenario", scenario, "--format", "csv"]) == 0
        second, _ = capsys.readouterr()
        assert first == second

    def test_plot_values_match_table(self, tmp_path, capsys):
        scenario = write_scenario(
            tmp_path,
            sources=[{"label": "ITU", "kind": "r001", "value": 90.0}])
        plot = tmp_path / "plot.csv"
        assert main(["sweep", "--scenario", scenario, "--p", "0.01,0.1",
                     "--plot-data", str(plot), "--format", "csv"]) == 0
        out, _ = capsys.readouterr()
        table = {}
        for line in out.splitlines()[1:]:
            cells = line.split(",")
            table[(cells[0], float(cells[2]))] = float(cells[3])
        for line in plot.read_text().splitlines()[1:]:
            station, _, p, a = line.split(",")
            assert float(a) == table[(station, float(p))]


class TestCompare:
    def test_reference_percentages(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path)
        assert main(["compare", "--scenario", scenario, "--baseline", "ITU",
                     "--estimate", "GPM", "--format", "json"]) == 0
        out, _ = capsys.readouterr()
        expected = {"Abuja": 70, "Hartbeesthoek": 54, "Cairo": 142,
                    "Longonot": 59, "Port Louis": 97, "Praia": 105}
        rows = json.loads(out)
        assert len(rows) == 6
        for row in rows:
            assert abs(row["overestimation_percent"]
                       - expected[row["station"]]) <= 1.0

    def test_same_label_all_zero(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path)
        assert main(["compare", "--scenario", scenario, "--baseline", "ITU",
                     "--estimate", "ITU", "--format", "json"]) == 0
        out, _ = capsys.readouterr()
        assert all(r["overestimation_percent"] == 0.0
                   for r in json.loads(out))

    def test_unknown_label_is_usage_error(self, tmp_path, capsys):
        scenario = write_scenario(tmp_path)
        assert main(["compare", "--scenario", scenario, "--baseline", "ITU",
                     "--estimate", "NOPE"]) == 2
        _, err = capsys.readouterr()
        assert "ITU" in err and "GPM" in err


class TestOutputModes:
    def test_stamp_prepends_metadata(self, capsys):
        assert main(["stations", "--format", "csv", "--stamp"]) == 0
        out, _ = capsys.readouterr()
        assert out.startswith("# rainlink ")
        assert main(["stations", "--format", "csv"]) == 0
        out, _ = capsys.readouterr()
        assert not out.startswith("#")

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0
        capsys.readouterr()

    def test_table_format_aligned(self, capsys):
        assert main(["stations"]) == 0
        out, _ = capsys.readouterr()
        assert out.splitlines()[0].startswith("name")
