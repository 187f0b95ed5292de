"""Unit tests for survey ingestion, composites, splitting and target views."""

import io

import numpy as np
import pandas as pd
import pytest

from src.core.error_handling import DATA_EXIT, EngageRankError, ErrorType
from src.data.schema import TARGET_FEATURES
from src.data.survey import (
    SurveyTable,
    compute_composites,
    load_survey,
    make_target_view,
    make_target_views,
    parse_survey_csv,
    split,
    write_survey_csv,
)
from tests.conftest import SURVEY_HEADER, survey_csv


# ---------------------------------------------------------------------------
# parse_survey_csv
# ---------------------------------------------------------------------------

class TestParseSurveyCsv:
    def test_single_row_maps_fields(self):
        table = parse_survey_csv(survey_csv([(1, 1, 1, 5, 5, 5, 4, 4, 6, 6)]))
        assert len(table) == 1
        record = next(table.records())
        assert record.bl == 1
        assert record.b_act == 5.0
        assert record.be is None
        assert not table.composites_present

    def test_categorical_columns_are_integers(self, small_survey_csv):
        table = parse_survey_csv(small_survey_csv)
        assert table.frame["gender"].dtype == np.int64
        assert table.frame["b_int"].dtype == np.float64

    def test_out_of_range_measure_names_row_and_column(self):
        rows = [(1, 1, 1, 5, 5, 5, 4, 4, 6, 6), (1, 1, 1, 8, 5, 5, 4, 4, 6, 6)]
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(survey_csv(rows))
        assert exc.value.error_type is ErrorType.VALUE_OUT_OF_RANGE
        assert exc.value.context["row"] == 2
        assert exc.value.context["column"] == "b_act"
        assert exc.value.exit_code == DATA_EXIT

    def test_out_of_range_category(self):
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(survey_csv([(1, 4, 1, 5, 5, 5, 4, 4, 6, 6)]))
        assert exc.value.error_type is ErrorType.VALUE_OUT_OF_RANGE
        assert exc.value.context["column"] == "age_band"

    def test_unparseable_cell(self):
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(survey_csv([(1, 1, 1, 5, "abc", 5, 4, 4, 6, 6)]))
        assert exc.value.error_type is ErrorType.UNPARSEABLE_CELL
        assert exc.value.context == {"row": 1, "column": "b_int", "value": "abc"}

    def test_empty_cell_is_unparseable(self):
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(survey_csv([(1, 1, 1, 5, 5, 5, "", 4, 6, 6)]))
        assert exc.value.error_type is ErrorType.UNPARSEABLE_CELL
        assert exc.value.context["column"] == "c_mgt"

    def test_missing_column(self):
        header = SURVEY_HEADER.replace(",c_mgt", "")
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(survey_csv([(1, 1, 1, 5, 5, 5, 4, 6, 6)], header=header))
        assert exc.value.error_type is ErrorType.MISSING_COLUMN
        assert exc.value.context["column"] == "c_mgt"

    def test_header_case_and_extra_columns_are_tolerated(self):
        header = SURVEY_HEADER.upper() + ",comment"
        table = parse_survey_csv(survey_csv([(0, 0, 0, 1, 1, 1, 1, 1, 1, 1, "x")], header=header))
        assert "comment" not in table.columns
        assert len(table) == 1

    def test_empty_document_is_malformed(self):
        with pytest.raises(EngageRankError) as exc:
            parse_survey_csv(io.BytesIO(b""))
        assert exc.value.error_type is ErrorType.MALFORMED_CSV

    def test_header_only_gives_empty_table(self):
        table = parse_survey_csv(survey_csv([]))
        assert len(table) == 0


class TestLoadSurvey:
    def test_missing_file(self, tmp_path):
        with pytest.raises(EngageRankError) as exc:
            load_survey(str(tmp_path / "absent.csv"))
        assert exc.value.error_type is ErrorType.INPUT_NOT_FOUND

    def test_reads_file(self, tmp_path, small_survey_csv):
        path = tmp_path / "survey.csv"
        path.write_bytes(small_survey_csv.getvalue())
        assert len(load_survey(str(path))) == 6


class TestWriteSurveyCsv:
    def test_written_table_parses_back(self, small_survey_csv):
        table = parse_survey_csv(small_survey_csv)
        out = io.StringIO()
        write_survey_csv(table, out)
        reparsed = parse_survey_csv(io.BytesIO(out.getvalue().encode("utf-8")))
        pd.testing.assert_frame_equal(reparsed.frame, table.frame)

    def test_composites_are_written_when_present(self, small_survey_csv):
        table = compute_composites(parse_survey_csv(small_survey_csv))
        out = io.StringIO()
        write_survey_csv(table, out)
        assert out.getvalue().splitlines()[0].endswith("be,ce,ee")


# ---------------------------------------------------------------------------
# compute_composites
# ---------------------------------------------------------------------------

class TestComputeComposites:
    def test_equal_members_give_that_value(self):
        table = compute_composites(parse_survey_csv(survey_csv([(0, 1, 0, 4, 4, 4, 2, 6, 3, 5)])))
        record = next(table.records())
        assert record.be == 4.0
        assert record.ce == 4.0
        assert record.ee == 4.0

    def test_mean_identities_hold_per_record(self, strong_bl_table):
        frame = strong_bl_table.frame
        np.testing.assert_allclose(frame["be"], (frame["b_act"] + frame["b_int"] + frame["b_gro"]) / 3, atol=1e-12)
        np.testing.assert_allclose(frame["ce"], (frame["c_mgt"] + frame["c_com"]) / 2, atol=1e-12)
        np.testing.assert_allclose(frame["ee"], (frame["e_int"] + frame["e_sat"]) / 2, atol=1e-12)

    def test_reference_column_means_cross_check(self):
        assert np.mean([4.6693, 4.6614, 4.5748]) == pytest.approx(4.6352, abs=1e-4)
        assert np.mean([4.8661, 4.669]) == pytest.approx(4.7676, abs=1e-3)

    def test_input_table_is_not_modified(self, small_survey_csv):
        table = parse_survey_csv(small_survey_csv)
        compute_composites(table)
        assert "be" not in table.columns


# ---------------------------------------------------------------------------
# split
# ---------------------------------------------------------------------------

class TestSplit:
    def _table(self, n):
        rows = [(i % 2, i % 4, (i // 2) % 2, 1 + i % 7, 4, 4, 4, 4, 4, 4) for i in range(n)]
        return compute_composites(parse_survey_csv(survey_csv(rows)))

    def test_ten_rows_eighty_percent(self):
        train, test = split(self._table(10), 0.8, seed=3)
        assert (len(train), len(test)) == (8, 2)
        ids = np.concatenate([train.row_ids, test.row_ids])
        assert sorted(ids.tolist()) == list(range(10))

    def test_protocol_sample_size(self):
        train, test = split(self._table(1132), 0.8, seed=0)
        assert (len(train), len(test)) == (906, 226)

    def test_same_seed_same_partition(self):
        table = self._table(50)
        first = split(table, 0.8, seed=42)
        second = split(table, 0.8, seed=42)
        assert first[0].row_ids.tolist() == second[0].row_ids.tolist()
        assert first[1].row_ids.tolist() == second[1].row_ids.tolist()

    def test_parts_keep_source_order(self):
        train, test = split(self._table(30), 0.7, seed=5)
        assert train.row_ids.tolist() == sorted(train.row_ids.tolist())
        assert test.row_ids.tolist() == sorted(test.row_ids.tolist())

    def test_partition_over_random_sizes_and_seeds(self):
        rng = np.random.default_rng(2024)
        for _ in range(30):
            n = int(rng.integers(2, 10001))
            fraction = float(rng.uniform(0.05, 0.95))
            seed = int(rng.integers(0, 2**32))
            frame = pd.DataFrame({c: np.ones(n) for c in SURVEY_HEADER.split(",")})
            table = compute_composites(SurveyTable(frame, composites_present=False))

            train, test = split(table, fraction, seed=seed)
            train_ids, test_ids = set(train.row_ids.tolist()), set(test.row_ids.tolist())
            assert not train_ids & test_ids
            assert train_ids | test_ids == set(range(n))
            assert len(train) == int(np.floor(n * fraction + 0.5))
            assert len(train) + len(test) == n

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1, 1.5])
    def test_fraction_out_of_range(self, fraction):
        with pytest.raises(EngageRankError) as exc:
            split(self._table(10), fraction, seed=0)
        assert exc.value.error_type is ErrorType.INVALID_CONFIG

    def test_empty_table(self):
        empty = SurveyTable(parse_survey_csv(survey_csv([])).frame, composites_present=True)
        with pytest.raises(EngageRankError) as exc:
            split(empty, 0.8, seed=0)
        assert exc.value.error_type is ErrorType.EMPTY_TABLE


# ---------------------------------------------------------------------------
# make_target_view
# ---------------------------------------------------------------------------

class TestMakeTargetView:
    def test_ce_view_features(self, strong_bl_table):
        view = make_target_view(strong_bl_table, "ce")
        assert view.target == "CE"
        assert view.feature_names == ("Gender", "Age", "BL", "B-Act", "B-Int", "B-Gro", "E-Int", "E-Sat", "BE", "EE")
        assert "C-Mgt" not in view.feature_names
        assert view.X.shape == (len(strong_bl_table), 10)

    def test_be_view_features(self, strong_bl_table):
        view = make_target_view(strong_bl_table, "BE")
        assert len(view.feature_names) == 9
        assert {"CE", "EE"} <= set(view.feature_names)
        assert not {"B-Act", "B-Int", "B-Gro"} & set(view.feature_names)

    def test_target_column_values(self, strong_bl_table):
        view = make_target_view(strong_bl_table, "EE")
        np.testing.assert_array_equal(view.y, strong_bl_table.column("ee"))

    def test_arrays_are_read_only(self, strong_bl_table):
        view = make_target_view(strong_bl_table, "BE")
        with pytest.raises(ValueError):
            view.X[0, 0] = 99.0

    def test_composites_required(self, small_survey_csv):
        with pytest.raises(EngageRankError) as exc:
            make_target_view(parse_survey_csv(small_survey_csv), "BE")
        assert exc.value.error_type is ErrorType.COMPOSITES_MISSING

    def test_unknown_target(self, strong_bl_table):
        with pytest.raises(EngageRankError) as exc:
            make_target_view(strong_bl_table, "XE")
        assert exc.value.error_type is ErrorType.USAGE_ERROR

    def test_all_views_in_canonical_order(self, strong_bl_table):
        views = make_target_views(strong_bl_table)
        assert list(views) == ["BE", "CE", "EE"]
        for target, view in views.items():
            assert len(view.feature_names) == len(TARGET_FEATURES[target])
