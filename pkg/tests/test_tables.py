import numpy as np
import pytest

from simfarm.errors import InvalidArgumentError, ParseError
from simfarm.tables import DataColumn, ResultTable, columns_from_table


def make_table():
    return ResultTable(
        index=np.array([0, 1, 2, 3]),
        status=np.array(["ok", "ok", "failed", "ok"], dtype=object),
        columns={
            "y": np.array([1.5, np.nan, 3.0, -2.25]),
            "label": np.array(["a", None, "b", "a"], dtype=object),
        },
    )


class TestResultTable:
    def test_roundtrip_csv(self, tmp_path):
        table = make_table()
        path = tmp_path / "t.csv"
        table.to_csv(path)
        back = ResultTable.from_csv(path)
        assert np.array_equal(back.index, table.index)
        assert list(back.status) == list(table.status)
        assert np.array_equal(back.column("y"), table.column("y"), equal_nan=True)
        assert list(back.column("label")) == list(table.column("label"))

    def test_duplicate_index_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ResultTable(index=np.array([0, 0]), status=np.array(["ok", "ok"], dtype=object))

    def test_unknown_status_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ResultTable(index=np.array([0]), status=np.array(["meh"], dtype=object))

    def test_reserved_column_name_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ResultTable(
                index=np.array([0]),
                status=np.array(["ok"], dtype=object),
                columns={"_status": np.array([1.0])},
            )

    def test_length_mismatch_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ResultTable(
                index=np.array([0, 1]),
                status=np.array(["ok", "ok"], dtype=object),
                columns={"y": np.array([1.0])},
            )

    def test_missing_header_line_one(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("")
        with pytest.raises(ParseError) as err:
            ResultTable.from_csv(path)
        assert err.value.line == 1

    def test_row_width_mismatch_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("_index,_status,y\n0,ok,1.0\n1,ok\n")
        with pytest.raises(ParseError) as err:
            ResultTable.from_csv(path)
        assert err.value.line == 3

    def test_plain_csv_without_reserved_columns(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("a,b\n1,x\n2,y\n")
        table = ResultTable.from_csv(path)
        assert list(table.index) == [0, 1]
        assert list(table.status) == ["ok", "ok"]
        assert table.column("a").dtype.kind == "f"
        assert list(table.column("b")) == ["x", "y"]

    def test_concat_preserves_order(self):
        t = make_table()
        a, b = t.take([0, 1]), t.take([2, 3])
        joined = ResultTable.concat([a, b])
        assert np.array_equal(joined.index, t.index)
        assert np.array_equal(joined.column("y"), t.column("y"), equal_nan=True)

    def test_ok_mask(self):
        assert list(make_table().ok_mask()) == [True, True, False, True]


class TestDataColumn:
    def test_numeric_missing_mask(self):
        col = DataColumn.numeric("y", [1.0, np.nan, 2.0])
        assert list(col.missing_mask()) == [False, True, False]
        assert list(col.non_missing()) == [1.0, 2.0]

    def test_infinite_rejected(self):
        with pytest.raises(InvalidArgumentError):
            DataColumn.numeric("y", [1.0, np.inf])

    def test_categorical_levels_in_order(self):
        col = DataColumn.categorical("c", ["b", None, "a", "b"])
        assert col.levels() == ["b", "a"]

    def test_columns_from_table_filters_failed(self):
        cols = columns_from_table(make_table())
        by_name = {c.name: c for c in cols}
        assert len(by_name["y"]) == 3  # failed row dropped
        assert by_name["label"].kind == "categorical"
