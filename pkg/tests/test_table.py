import pytest

from forestramsey.calc import classical_r
from forestramsey.errors import InvalidInput, UnknownValue
from forestramsey.graph import is_free_coloring
from forestramsey.table import ClassicalTable, bundled_path, default_table, reduce_tuple

BUNDLED = [((3, 3), 6), ((3, 4), 9), ((3, 5), 14), ((3, 6), 18), ((4, 4), 18), ((3, 3, 3), 17)]


class TestReduce:
    @pytest.mark.parametrize(
        "ms,key", [((2,), (2,)), ((2, 2), (2,)), ((2, 5), (5,)), ((4, 3), (3, 4)), ((3, 2, 3), (3, 3))]
    )
    def test_reduce(self, ms, key):
        assert reduce_tuple(ms) == key

    @pytest.mark.parametrize("ms", [(), (1, 3), (0,)])
    def test_bad(self, ms):
        with pytest.raises(InvalidInput):
            reduce_tuple(ms)


class TestBundled:
    @pytest.mark.parametrize("ms,value", BUNDLED)
    def test_values(self, ms, value):
        assert classical_r(ms) == value

    @pytest.mark.parametrize("ms,value", BUNDLED)
    def test_witness_is_free(self, ms, value):
        c = default_table().witness(ms)
        assert c.graph.order == value - 1
        assert is_free_coloring(c, None, ms)

    @pytest.mark.parametrize("ms", [(4, 3), (2, 3, 4), (3, 2, 3, 3), (2, 2), (5,), (2, 6)])
    def test_witness_follows_caller_order(self, ms):
        c = default_table().witness(ms)
        assert c.graph.order == classical_r(ms) - 1
        assert c.palette == len(ms)
        assert is_free_coloring(c, None, ms)

    def test_singletons_and_twos(self):
        assert classical_r([7]) == 7
        assert classical_r([2, 7]) == 7
        assert classical_r([2, 2]) == 2

    def test_unknown(self):
        with pytest.raises(UnknownValue):
            classical_r([5, 5])


class TestLoading:
    def test_env_override(self, tmp_path, monkeypatch):
        p = tmp_path / "t.txt"
        p.write_text("# custom\n3 3 = 6\n4 5 = 25\n")
        monkeypatch.setenv("RAMSEY_TABLE", str(p))
        assert classical_r([5, 4]) == 25
        with pytest.raises(UnknownValue):
            default_table().witness([3, 3])

    @pytest.mark.parametrize("line", ["3 3 6", "3 = 6", "2 3 = 3", "3 3 = x", "3 3 = 6 color=foo"])
    def test_bad_lines(self, tmp_path, line):
        p = tmp_path / "t.txt"
        p.write_text(line + "\n")
        with pytest.raises(InvalidInput):
            ClassicalTable.load(p)

    def test_bundled_path_exists(self):
        assert bundled_path().is_file()

    def test_rows_sorted(self):
        keys = [k for k, _ in default_table().rows()]
        assert keys == sorted(keys, key=lambda k: (len(k), k))
