"""Config parsing, sweeps, CSV round-trips, and the reference comparison."""

import math
from dataclasses import replace
from fractions import Fraction

import pytest

from multihop.capacity import stream_capacity
from multihop.harness import (
    DEFAULTS,
    ConfigError,
    EngineMismatchError,
    ExperimentSpec,
    ResultRow,
    check_consistency,
    compare_table4,
    layout_from_config,
    load_config,
    parse_config_text,
    parse_csv_text,
    radio_from_config,
    read_csv,
    render_table4,
    rows_to_csv_text,
    run_sweep,
    spec_from_config,
    table4_rows,
    table4_spec,
    write_csv,
)
from multihop.layout import build_layout, stream_route
from multihop.schedule import MODE_NC, MODE_TR


def small_spec(**overrides):
    cfg = dict(DEFAULTS)
    cfg.update(
        nodes_per_stream=4,
        num_streams=1,
        modes=(MODE_TR, MODE_NC),
        z_values=(2, 3),
        hop_counts=(2, 3),
    )
    cfg.update(overrides)
    return spec_from_config(cfg)


class TestConfigParsing:
    def test_empty_text_gives_defaults(self):
        assert parse_config_text("") == dict(DEFAULTS)

    def test_values_comments_and_blanks(self):
        cfg = parse_config_text(
            """
            # radio section
            tx_power_w = 0.05   # half the default
            nodes_per_stream = 6

            z_values = 2, 4
            modes = NC
            """
        )
        assert cfg["tx_power_w"] == 0.05
        assert cfg["nodes_per_stream"] == 6
        assert cfg["z_values"] == (2, 4)
        assert cfg["modes"] == ("NC",)
        assert cfg["bandwidth_hz"] == DEFAULTS["bandwidth_hz"]

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_config_text("power = 3")

    def test_bad_number_rejected(self):
        with pytest.raises(ConfigError):
            parse_config_text("tx_power_w = lots")

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigError):
            parse_config_text("just words")

    def test_int_key_rejects_float_text(self):
        with pytest.raises(ConfigError):
            parse_config_text("nodes_per_stream = 5.5")

    def test_missing_file_is_a_config_error(self):
        with pytest.raises(ConfigError):
            load_config("/no/such/file.cfg")

    def test_file_round_trip(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("num_streams = 1\nhop_counts = 2,3\n")
        cfg = load_config(str(path))
        assert cfg["num_streams"] == 1
        assert cfg["hop_counts"] == (2, 3)

    def test_builders_pick_their_keys(self):
        cfg = parse_config_text("row_separation_m = 450\nnoise_figure_db = 5")
        assert layout_from_config(cfg).row_separation_m == 450.0
        assert radio_from_config(cfg).noise_figure_db == 5.0


class TestExperimentSpec:
    def test_defaults_build(self):
        spec = spec_from_config(dict(DEFAULTS))
        assert spec.streams == 2
        assert spec.hop_counts == (2, 3, 4)

    def test_hops_must_fit_the_layout(self):
        with pytest.raises(ConfigError):
            small_spec(hop_counts=(2, 4))

    def test_z_values_bounded_by_hops(self):
        with pytest.raises(ConfigError):
            small_spec(z_values=(2, 5))

    def test_modes_validated(self):
        with pytest.raises(ConfigError):
            small_spec(modes=("TR", "XX"))
        with pytest.raises(ConfigError):
            small_spec(modes=())

    def test_streams_must_match_layout(self):
        spec = small_spec()
        with pytest.raises(ConfigError):
            replace(spec, streams=2)


@pytest.fixture(scope="module")
def rows():
    return run_sweep(small_spec())


@pytest.fixture(scope="module")
def comparison():
    return compare_table4(table4_rows())


class TestRunSweep:
    def test_row_grid_in_spec_order(self, rows):
        assert len(rows) == 8
        assert [(r.mode, r.hops, r.z) for r in rows] == [
            (m, h, z) for m in (MODE_TR, MODE_NC) for h in (2, 3) for z in (2, 3)
        ]

    def test_one_optimum_per_group(self, rows):
        for mode in (MODE_TR, MODE_NC):
            for hops in (2, 3):
                group = [r for r in rows if (r.mode, r.hops) == (mode, hops)]
                flagged = [r for r in group if r.optimum_flag]
                assert len(flagged) == 1
                assert flagged[0].capacity_bps == max(r.capacity_bps for r in group)

    def test_rows_match_direct_capacity_calls(self, rows):
        spec = small_spec()
        geo = build_layout(spec.layout)
        for row in rows:
            routes = {1: stream_route(geo, 1, 1, row.hops + 1)}
            rep = stream_capacity(geo, routes, spec.radio, row.mode, row.z)[1]
            assert math.isclose(row.capacity_bps, rep.capacity_bps, rel_tol=1e-12)

    def test_packet_columns_are_exact(self, rows):
        for row in rows:
            want = Fraction(1, row.z) if row.mode == MODE_TR else Fraction(2, row.z)
            assert row.sim_delivery_rate == want
            assert row.sim_latency_fwd >= row.hops
            assert row.sim_latency_rev >= row.hops


class TestConsistencyCheck:
    def test_corrupted_rate_is_caught(self):
        rows = run_sweep(small_spec())
        bad = [replace(rows[0], sim_delivery_rate=Fraction(3, 7))] + rows[1:]
        with pytest.raises(EngineMismatchError):
            check_consistency(bad)

    def test_corrupted_capacity_is_caught(self):
        rows = run_sweep(small_spec())
        bad = [replace(rows[0], capacity_bps=rows[0].capacity_bps * 1.5)] + rows[1:]
        with pytest.raises(EngineMismatchError):
            check_consistency(bad)


class TestCsv:
    def test_round_trip_field_by_field(self, rows):
        assert parse_csv_text(rows_to_csv_text(rows)) == rows

    def test_byte_determinism(self, rows):
        again = run_sweep(small_spec())
        assert rows_to_csv_text(rows) == rows_to_csv_text(again)

    def test_file_round_trip(self, rows, tmp_path):
        path = tmp_path / "sweep.csv"
        write_csv(rows, str(path))
        assert read_csv(str(path)) == rows

    def test_header_is_mandatory(self):
        with pytest.raises(ConfigError):
            parse_csv_text("1,TR,2,2,1.0,1.0,1.0,1,1/2,2,2\n")

    def test_short_row_rejected(self, rows):
        text = rows_to_csv_text(rows).splitlines()
        broken = "\n".join([text[0], "1,TR,2"])
        with pytest.raises(ConfigError):
            parse_csv_text(broken)

    def test_delivery_rate_survives_as_a_fraction(self, rows):
        parsed = parse_csv_text(rows_to_csv_text(rows))
        assert any(r.sim_delivery_rate == Fraction(1, 3) for r in parsed)


class TestReferenceComparison:
    def test_grid_is_complete(self, comparison):
        assert len(comparison.cells) == 16
        assert len(comparison.improvements) == 8

    def test_table4_spec_forces_the_published_grid(self):
        spec = table4_spec(streams=2)
        assert spec.layout.nodes_per_stream == 6
        assert spec.hop_counts == (2, 3, 4, 5)
        assert spec.z_values == (2, 3, 4, 5)

    def test_improvements_match_ratio_identity(self, comparison):
        rows = table4_rows()
        by_key = {(r.streams, r.mode, r.hops, r.z): r for r in rows}
        for imp in comparison.improvements:
            tr = next(
                r for r in rows
                if (r.streams, r.mode, r.hops) == (imp.streams, MODE_TR, imp.hops) and r.optimum_flag
            )
            nc = next(
                r for r in rows
                if (r.streams, r.mode, r.hops) == (imp.streams, MODE_NC, imp.hops) and r.optimum_flag
            )
            want = 100.0 * (nc.capacity_bps - tr.capacity_bps) / tr.capacity_bps
            assert math.isclose(imp.at_computed_z_pct, want, rel_tol=1e-12)

    def test_deltas_are_relative_to_published(self, comparison):
        for cell in comparison.cells:
            want = 100.0 * (cell.computed_mbps - cell.published_mbps) / cell.published_mbps
            assert math.isclose(cell.delta_pct, want, rel_tol=1e-12)

    def test_contradicted_cells_carry_notes(self, comparison):
        noted = {(c.streams, c.mode, c.hops) for c in comparison.cells if c.note}
        assert noted == {(1, MODE_TR, 2), (2, MODE_TR, 2)}

    def test_render_summarizes_matches(self, comparison):
        text = render_table4(comparison)
        assert "optimum-Z matches" in text
        assert "capacity cells within 25%" in text
        assert text.count("\n") > 20

    def test_missing_rows_rejected(self):
        partial = [r for r in table4_rows() if r.streams == 1]
        with pytest.raises(ValueError):
            compare_table4(partial)
