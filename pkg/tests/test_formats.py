import random
from fractions import Fraction

import pytest

from balmatch import formats
from balmatch.fractional import FractionalMatching
from balmatch.genrandom import random_market, random_neighbour_tree
from balmatch.market import Matching
from balmatch.prefs import decompose_by_sets

H = Fraction(1, 2)
Z = Fraction(0)


class TestMarketFormat:
    def test_round_trip_preserves_everything(self):
        rng = random.Random(19)
        for _ in range(80):
            m = random_market(rng)
            again = formats.parse_market(formats.serialize_market(m))
            assert again.workers == m.workers
            assert again.firms == m.firms
            assert again.worker_prefs == m.worker_prefs
            for f in m.firms:
                assert again.firm_prefs[f].chain == m.firm_prefs[f].chain

    def test_corpus_round_trip(self, any_market):
        again = formats.parse_market(formats.serialize_market(any_market))
        assert again == any_market or (
            again.workers == any_market.workers
            and again.firm_prefs == any_market.firm_prefs
            and again.worker_prefs == any_market.worker_prefs
        )

    def test_missing_key(self):
        with pytest.raises(formats.ParseError):
            formats.parse_market('{"workers": [], "firms": {}}')

    def test_invalid_json_reports_location(self):
        with pytest.raises(formats.ParseError) as err:
            formats.parse_market("{nope}")
        assert "line" in str(err.value)

    def test_semantic_errors_become_parse_errors(self):
        text = '{"workers": ["w1"], "firms": {"f1": [["w9"]]}, "worker_prefs": {"w1": []}}'
        with pytest.raises(formats.ParseError):
            formats.parse_market(text)


class TestFractionalFormat:
    def test_corpus_file_parses(self, corpus_dir, two_firms):
        d = decompose_by_sets(two_firms)
        fm = formats.parse_fractional((corpus_dir / "half_half.frac").read_text(), d)
        assert fm.levels == {"f1#1": H, "f1#2": H, "f1#3": Z, "f2": H}
        assert fm.null_assignment == {"w1": Z, "w2": Z, "w3": Z, "w4": H}

    def test_round_trip(self, two_firms):
        d = decompose_by_sets(two_firms)
        fm = FractionalMatching(
            levels={"f1#1": Fraction(1, 3), "f1#2": Z, "f1#3": Fraction(2, 3), "f2": H},
            null_assignment={"w1": Fraction(2, 3), "w2": Z, "w3": Z, "w4": H},
        )
        again = formats.parse_fractional(formats.serialize_fractional(fm, d), d)
        assert again == fm

    def test_wrong_header_rejected(self, two_firms):
        d = decompose_by_sets(two_firms)
        with pytest.raises(formats.ParseError):
            formats.parse_fractional("w1 w2\nnull 0 0\n", d)

    def test_missing_null_row(self, two_firms):
        d = decompose_by_sets(two_firms)
        text = "w1 w2 w3 w4\nf1#1 0 0 0 0\nf1#2 0 0 0 0\nf1#3 0 0 0 0\nf2 0 0 0 0\n"
        with pytest.raises(formats.ParseError):
            formats.parse_fractional(text, d)

    def test_mass_outside_set_rejected(self, two_firms):
        d = decompose_by_sets(two_firms)
        text = (
            "w1 w2 w3 w4\n"
            "f1#1 0 0 0 0\n"
            "f1#2 1/2 1/2 0 0\n"  # f1#2 only hires w1
            "f1#3 0 0 0 0\n"
            "f2 0 0 0 0\n"
            "null 1/2 1/2 1 1\n"
        )
        with pytest.raises(formats.ParseError):
            formats.parse_fractional(text, d)

    def test_uneven_scale_rejected(self, two_firms):
        d = decompose_by_sets(two_firms)
        text = (
            "w1 w2 w3 w4\n"
            "f1#1 1/2 1/3 1/2 0\n"
            "f1#2 0 0 0 0\n"
            "f1#3 0 0 0 0\n"
            "f2 0 0 0 0\n"
            "null 1/2 2/3 1/2 1\n"
        )
        with pytest.raises(formats.ParseError):
            formats.parse_fractional(text, d)


class TestTreeFormat:
    def test_round_trip_outline(self):
        rng = random.Random(20)
        for _ in range(60):
            t = random_neighbour_tree(rng)
            again = formats.parse_tree(formats.serialize_tree(t))
            assert again.root == t.root
            assert again.worker_sets == t.worker_sets
            assert again.children == t.children

    def test_round_trip_json(self):
        rng = random.Random(22)
        for _ in range(60):
            t = random_neighbour_tree(rng)
            again = formats.tree_from_json(formats.tree_to_json(t))
            assert again.root == t.root
            assert again.worker_sets == t.worker_sets
            assert again.children == t.children

    def test_corpus_trees_round_trip(self, corpus_dir):
        for path in sorted(corpus_dir.glob("*.tree")):
            t = formats.parse_tree(path.read_text())
            again = formats.parse_tree(formats.serialize_tree(t))
            assert (again.root, again.worker_sets, again.children) == (
                t.root,
                t.worker_sets,
                t.children,
            )

    def test_comments_and_blanks_ignored(self):
        t = formats.parse_tree("# a tree\n\nv0: {}\n  v1: {w1}\n")
        assert t.children["v0"] == ("v1",)

    def test_odd_indent_rejected(self):
        with pytest.raises(formats.ParseError):
            formats.parse_tree("v0: {}\n v1: {w1}\n")

    def test_second_root_rejected(self):
        with pytest.raises(formats.ParseError):
            formats.parse_tree("v0: {}\nv1: {w1}\n")

    def test_level_skip_rejected(self):
        with pytest.raises(formats.ParseError):
            formats.parse_tree("v0: {}\n    v1: {w1}\n")

    def test_missing_braces_rejected(self):
        with pytest.raises(formats.ParseError):
            formats.parse_tree("v0: w1\n")


class TestMatchingRendering:
    def test_none_renders_as_none(self, cyclic3):
        assert formats.render_matching(None, cyclic3) == "NONE"

    def test_two_row_layout(self, two_firms):
        mu = Matching({"w1": "f1", "w2": "f1", "w3": "f1", "w4": None})
        text = formats.render_matching(mu, two_firms)
        top, bottom = text.splitlines()
        assert top.split() == ["f1", "f2", "null"]
        assert bottom.split() == ["w1,w2,w3", "w4"]
