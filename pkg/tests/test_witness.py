import json
from itertools import product

import pytest

from forestramsey.calc import ramsey_forest, star_forest
from forestramsey.canon import canonical_labeling
from forestramsey.errors import CapacityError, InvalidInput, UnknownValue
from forestramsey.forest import parse_forest
from forestramsey.graph import MAX_ORDER, EdgeColoring, build_complete, disjoint_cliques
from forestramsey.oracle import enumerate_free_colorings
from forestramsey.table import ClassicalTable, set_default_table
from forestramsey.witness import (
    WitnessColoring,
    critical_family,
    family_membership,
    ramsey_full_witness,
    ramsey_lower_witness,
    star_lower_witness,
    verify_witness,
)

import brute

GRID = [(n, m, k) for n in range(2, 5) for m in range(3, 6) for k in range(1, 4)]
FORESTS = brute.forests(6)


def partitions(total, parts):
    """Partitions of ``total`` into at most ``parts`` positive parts."""
    def rec(left, biggest, slots):
        if left == 0:
            return 1
        if slots == 0:
            return 0
        return sum(rec(left - p, p, slots - 1) for p in range(1, min(left, biggest) + 1))
    return rec(total, total, parts)


def integer_partitions(total, biggest=None):
    biggest = total if biggest is None else biggest
    if total == 0:
        yield []
        return
    for first in range(min(total, biggest), 0, -1):
        for rest in integer_partitions(total - first, first):
            yield [first] + rest


def red_label(c):
    red = c.color_class(0)
    return canonical_labeling(red.order, [list(red.rows)])[0]


def two_coloring(order, red_edges):
    g = build_complete(order)
    red = set(red_edges)
    return EdgeColoring(g, 2, tuple(0 if e in red else 1 for e in g.edges()))


class TestCriticalFamily:
    @pytest.mark.parametrize("n,m,k", GRID)
    def test_every_member_verifies(self, n, m, k):
        for w in critical_family(n, m, k):
            assert verify_witness(w), verify_witness(w).reason
            assert w.coloring.graph.order == (n - 1) * (m - 2) + n * k - 1

    @pytest.mark.parametrize("n,m,k", GRID)
    def test_class_count_is_partition_count(self, n, m, k):
        assert len(critical_family(n, m, k)) == partitions(k - 1, m - 1)

    @pytest.mark.parametrize("n,m", [(n, m) for n in range(2, 5) for m in range(3, 6)])
    def test_single_copy_is_unique(self, n, m):
        (w,) = critical_family(n, m, 1)
        assert w.coloring.color_class(0) == disjoint_cliques([n - 1] * (m - 1))

    @pytest.mark.parametrize("n,m,k", GRID)
    def test_distinct_classes_and_index_flag(self, n, m, k):
        fam = critical_family(n, m, k)
        labels = [red_label(w.coloring) for w in fam]
        assert len(set(labels)) == len(labels)
        every = critical_family(n, m, k, distinct=False)
        assert {red_label(w.coloring) for w in every} == set(labels)
        assert len(every) >= len(fam)

    def test_per_index_duplicates(self):
        # i = 0 and i = 1 give the same coloring
        assert len(critical_family(2, 3, 2, distinct=False)) == 2
        assert len(critical_family(2, 3, 2)) == 1

    @pytest.mark.parametrize("args", [(1, 3, 1), (2, 2, 1), (2, 3, 0)])
    def test_bounds(self, args):
        with pytest.raises(InvalidInput):
            critical_family(*args)

    def test_deterministic_layout(self):
        for w in critical_family(3, 4, 3):
            sizes = w.params["sizes"]
            assert sizes == sorted(sizes, reverse=True)
        assert [w.dumps() for w in critical_family(3, 4, 3)] == [w.dumps() for w in critical_family(3, 4, 3)]


class TestMembership:
    def test_examples(self):
        (w,) = critical_family(3, 3, 2)
        assert family_membership(w.coloring, 3, 3, 2)
        star_red = two_coloring(4, [(0, 1), (0, 2), (0, 3)])
        assert not family_membership(star_red, 2, 3, 2)
        matching = two_coloring(4, [(0, 1), (2, 3)])
        assert not family_membership(matching, 2, 3, 2)

    def test_wrong_order(self):
        with pytest.raises(InvalidInput):
            family_membership(two_coloring(5, []), 2, 3, 2)

    @pytest.mark.parametrize("n,m,k", [(2, 3, 2), (2, 3, 3), (2, 4, 2)])
    def test_indicator_over_all_colorings(self, n, m, k):
        """Members among all 2-colorings of K_{r-1} are exactly the family classes."""
        order = (n - 1) * (m - 2) + n * k - 1
        family = {red_label(w.coloring) for w in critical_family(n, m, k)}
        g = build_complete(order)
        members = set()
        for colors in product((0, 1), repeat=g.edge_count):
            c = EdgeColoring(g, 2, colors)
            if family_membership(c, n, m, k):
                members.add(red_label(c))
        assert members == family

    @pytest.mark.parametrize("n,m,k", GRID)
    def test_indicator_over_clique_unions(self, n, m, k):
        """Every red graph that is a union of cliques, one per integer partition of the order."""
        order = (n - 1) * (m - 2) + n * k - 1
        family = {red_label(w.coloring) for w in critical_family(n, m, k)}
        members = set()
        for sizes in integer_partitions(order):
            c = two_coloring(order, disjoint_cliques(sizes).edges())
            if family_membership(c, n, m, k):
                members.add(red_label(c))
        assert members == family

    @pytest.mark.parametrize("n,m,k", [(2, 3, 2), (2, 3, 3), (3, 3, 2), (2, 4, 2)])
    def test_free_colorings_are_members(self, n, m, k):
        order = (n - 1) * (m - 2) + n * k - 1
        f = parse_forest(f"{k}*P{n}" if n > 2 else f"{k}*K2")
        for c in enumerate_free_colorings(build_complete(order), f, (m,), dedup=False):
            assert family_membership(c, n, m, k)


class TestStarLower:
    @pytest.mark.parametrize("f", FORESTS, ids=str)
    @pytest.mark.parametrize("ms", [(3,), (4,), (5,), (3, 3), (3, 4), (2, 3)])
    def test_grid(self, f, ms):
        w = star_lower_witness(f, ms)
        assert verify_witness(w), verify_witness(w).reason
        g = w.coloring.graph
        assert g.order == ramsey_forest(f, ms).value
        assert g.degree(g.order - 1) == star_forest(f, ms).value - 1

    def test_two_matching(self):
        w = star_lower_witness(parse_forest("2*K2"), (3,))
        assert w.kind == "star-lower"
        assert sorted(len(p) for p in w.params["parts"]) == [1, 3]
        assert w.coloring.graph.order == 5 and w.coloring.graph.degree(4) == 3
        assert brute.is_free(w.coloring, parse_forest("2*K2"), (3,))

    def test_multicolor(self):
        w = star_lower_witness(parse_forest("2*K2"), (3, 3))
        assert w.kind == "multicolor-star-lower"
        assert w.coloring.graph.order == 8 and w.coloring.graph.degree(7) == 6
        assert w.coloring.palette == 3

    def test_missing_witness(self, tmp_path):
        p = tmp_path / "t.txt"
        p.write_text("3 3 = 6\n")
        set_default_table(ClassicalTable.load(p))
        with pytest.raises(UnknownValue):
            star_lower_witness(parse_forest("2*K2"), (3, 3))

    def test_isolated_rejected(self):
        with pytest.raises(InvalidInput):
            star_lower_witness(parse_forest("K1+K2"), (3,))


class TestRamseyLower:
    @pytest.mark.parametrize("f", brute.forests(6, min_order=1), ids=str)
    @pytest.mark.parametrize("ms", [(3,), (4,), (3, 3), (3, 3, 3)])
    def test_grid(self, f, ms):
        if ramsey_forest(f, ms).value - 1 > MAX_ORDER:
            with pytest.raises(CapacityError):
                ramsey_lower_witness(f, ms)
            return
        w = ramsey_lower_witness(f, ms)
        assert verify_witness(w), verify_witness(w).reason
        assert w.coloring.graph.order == ramsey_forest(f, ms).value - 1

    def test_matches_critical_family(self):
        w = ramsey_lower_witness(parse_forest("2*K2"), (3,))
        (c,) = critical_family(2, 3, 2)
        assert red_label(w.coloring) == red_label(c.coloring)

    @pytest.mark.parametrize("tree", ["P4", "S4", "T(2,2,3)"])
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_single_tree(self, tree, m):
        t = parse_forest(tree)
        n = t.total
        w = ramsey_lower_witness(t, (m,))
        assert w.coloring.color_class(0) == disjoint_cliques([n - 1] * (m - 1))

    def test_multicolor_blobs(self):
        w = ramsey_lower_witness(parse_forest("2*K2"), (3, 3))
        assert [len(b) for b in w.params["blobs"]] == [3, 1, 1, 1, 1]


class TestRamseyFull:
    @pytest.mark.parametrize("ms", [(3,), (3, 3), (2, 4), (3, 4), (4, 3), (3, 5), (3, 6), (4, 4), (3, 3, 3), (2, 2)])
    def test_free(self, ms):
        w = ramsey_full_witness(ms)
        assert verify_witness(w)
        r = w.params["r"]
        assert w.coloring.graph.edge_count == r * (r - 1) // 2 - 1

    @pytest.mark.parametrize("edge", [(0, 1), (2, 4), (5, 0)])
    def test_any_edge(self, edge):
        w = ramsey_full_witness((3, 3), edge)
        assert not w.coloring.graph.has_edge(*edge)
        assert brute.is_free(w.coloring, None, (3, 3))

    def test_bad_edge(self):
        with pytest.raises(InvalidInput):
            ramsey_full_witness((3, 3), (2, 2))

    def test_unknown(self):
        with pytest.raises(UnknownValue):
            ramsey_full_witness((5, 5))


class TestVerify:
    def test_mutation_intra_part(self):
        w = star_lower_witness(parse_forest("2*K2"), (3,))
        big = w.params["parts"][-1]
        c = w.coloring.recolor(big[0], big[1], 1)
        assert not verify_witness(WitnessColoring(c, w.kind, w.params, w.claim))

    def test_mutation_caught_by_structure(self):
        # a cross edge turned red keeps 2*K2 out of color 0 but breaks the layout
        w = star_lower_witness(parse_forest("3*K2"), (3,))
        small, big = w.params["parts"][0], w.params["parts"][-1]
        c = w.coloring.recolor(small[0], big[0], 0)
        check = verify_witness(WitnessColoring(c, w.kind, w.params, w.claim))
        assert not check

    def test_mutation_breaks_freeness(self):
        w = ramsey_full_witness((3, 3))
        c = w.coloring
        for e in [(0, 1), (0, 2), (1, 2)]:
            c = c.recolor(*e, 0)
        check = verify_witness(WitnessColoring(c, w.kind, w.params, w.claim))
        assert not check and "target" in check.reason

    def test_enlarged_claim(self):
        w = star_lower_witness(parse_forest("2*K2"), (3,))
        data = w.to_json()
        data["claim"]["forest"] = "3*K2"
        assert not verify_witness(WitnessColoring.from_json(data))

    def test_wrong_params(self):
        (w,) = critical_family(2, 3, 2)
        data = w.to_json()
        data["params"]["sizes"] = [2, 2]
        assert not verify_witness(WitnessColoring.from_json(data))

    @pytest.mark.parametrize(
        "build",
        [
            lambda: critical_family(2, 3, 3)[1],
            lambda: star_lower_witness(parse_forest("P3+K2"), (3, 3)),
            lambda: ramsey_lower_witness(parse_forest("2*P3"), (4,)),
            lambda: ramsey_full_witness((3, 4)),
        ],
    )
    def test_json_roundtrip(self, build):
        w = build()
        back = WitnessColoring.from_json(json.loads(w.dumps()))
        assert back.coloring == w.coloring and back.kind == w.kind and back.params == w.params
        assert verify_witness(back)

    def test_unknown_kind(self):
        w = ramsey_full_witness((3,))
        data = w.to_json()
        data["kind"] = "mystery"
        with pytest.raises(InvalidInput):
            WitnessColoring.from_json(data)
