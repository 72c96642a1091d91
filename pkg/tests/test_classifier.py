import pathlib

import pytest

from orbstab import classifier as cl
from orbstab.classifier import (ClassificationEntry, GroupLabel, cardinality_of,
                                cardinality_set, classify, classify_lines,
                                cyclic, dihedral, entry_from_json, parse_entry)
from orbstab.errors import InvalidCardinality

DATA = pathlib.Path(__file__).parent / "data"


def labels_of(n):
    return {e.label for e in classify(n)}


class TestGolden2018:
    def test_exact_listing(self):
        golden = (DATA / "golden_2018.txt").read_text().splitlines()
        assert classify_lines(2018) == golden

    def test_parsed_tuples(self):
        golden = [parse_entry(line)
                  for line in (DATA / "golden_2018.txt").read_text().splitlines()]
        assert classify(2018) == golden


class TestSmallCases:
    def test_infinite_cases(self):
        assert classify_lines(1) == ["infinity"]
        assert classify_lines(2) == ["infinity"]

    def test_three_points(self):
        assert classify_lines(3) == ["D_3, (0, 1, 0)"]

    def test_five_points(self):
        assert classify_lines(5) == [
            "D_5, (0, 1, 0)", "D_3, (1, 1, 0)", "Z_4, (1, 1)",
            "Z_2, (1, 2)", "(0)"]

    def test_six_points(self):
        assert classify_lines(6) == [
            "S_4, (1, 0, 0, 0)", "D_6, (0, 1, 0)", "D_3, (0, 0, 1)",
            "K_4, (1, 1)", "Z_5, (1, 1)", "Z_2, (0, 3)", "(0)"]

    def test_invalid(self):
        with pytest.raises(InvalidCardinality):
            classify(0)
        with pytest.raises(InvalidCardinality):
            classify(-3)


class TestCardinality:
    def test_a5_full_index(self):
        assert cardinality_of(ClassificationEntry(cl.LABEL_A5, (1, 1, 1, 0))) == 62

    def test_a4_example(self):
        assert cardinality_of(ClassificationEntry(cl.LABEL_A4, (1, 1, 0))) == 10

    def test_trivial_has_no_cardinality(self):
        with pytest.raises(ValueError):
            cardinality_of(ClassificationEntry(cl.LABEL_TRIVIAL, ()))

    def test_every_emitted_entry_is_consistent(self):
        for n in range(1, 201):
            for entry in classify(n):
                if entry.label.kind in (cl.TRIVIAL, cl.INFINITE):
                    continue
                assert cardinality_of(entry) == n, (n, entry)


class TestCardinalitySets:
    def test_a5_example(self):
        assert cardinality_set(cl.LABEL_A5, 130) == {
            12, 20, 30, 32, 42, 50, 60, 62, 72, 80, 90, 92, 102, 110, 120, 122}

    def test_d4_example(self):
        # {x + 4k : x in {0, 2}, k >= 2} plus the plain square
        assert cardinality_set(dihedral(4), 14) == {4, 8, 10, 12, 14}

    def test_z5_example(self):
        assert cardinality_set(cyclic(5), 18) == {6, 11, 15, 16, 17}

    def test_k4(self):
        assert cardinality_set(cl.LABEL_K4, 13) == {4, 6, 8, 10, 12}


class TestStructuralInvariants:
    def test_trivial_iff_n_at_least_5(self):
        for n in range(1, 40):
            assert (cl.LABEL_TRIVIAL in labels_of(n)) == (n >= 5)

    def test_infinite_iff_n_at_most_2(self):
        for n in range(1, 40):
            assert (cl.LABEL_INFINITE in labels_of(n)) == (n <= 2)

    def test_no_duplicates(self):
        for n in range(1, 301):
            entries = classify(n)
            assert len(entries) == len(set(entries))

    def test_excluded_indices_never_emitted(self):
        for n in range(1, 301):
            for e in classify(n):
                if e.label == cl.LABEL_A4:
                    assert e.index not in ((2, 0, 0), (0, 1, 0), (2, 1, 0))
                if e.label == dihedral(4):
                    assert e.index != (1, 1, 0)
                if e.label == cyclic(3):
                    assert e.index != (1, 1)
                if e.label == cl.LABEL_K4:
                    assert e.index[-1] >= 1
                if e.label.kind == cl.DIHEDRAL and e.index[-1] == 0:
                    assert e.index in ((0, 1, 0), (1, 1, 0))

    def test_realizability_within_small_bound(self):
        groups = [cl.LABEL_A5, cl.LABEL_S4, cl.LABEL_A4, cl.LABEL_K4,
                  cl.LABEL_Z2]
        groups += [dihedral(p) for p in range(3, 13)]
        groups += [cyclic(p) for p in range(3, 13)]
        for g in groups:
            hits = cardinality_set(g, 5 * (g.order + 2))
            assert any(n >= 5 for n in hits), g


class TestLabels:
    def test_orders(self):
        assert cl.LABEL_A5.order == 60
        assert cl.LABEL_S4.order == 24
        assert cl.LABEL_A4.order == 12
        assert dihedral(7).order == 14
        assert cl.LABEL_K4.order == 4
        assert cyclic(9).order == 9
        assert cl.LABEL_Z2.order == 2
        assert cl.LABEL_TRIVIAL.order == 1
        with pytest.raises(ValueError):
            cl.LABEL_INFINITE.order

    def test_small_parameters_fold_into_special_kinds(self):
        assert dihedral(2) == cl.LABEL_K4
        assert cyclic(2) == cl.LABEL_Z2
        with pytest.raises(ValueError):
            GroupLabel(cl.DIHEDRAL, 2)

    def test_index_validation(self):
        with pytest.raises(ValueError):
            ClassificationEntry(cl.LABEL_A5, (2, 0, 0, 0))
        with pytest.raises(ValueError):
            ClassificationEntry(dihedral(5), (0, 3, 1))
        with pytest.raises(ValueError):
            ClassificationEntry(cl.LABEL_TRIVIAL, (1,))


class TestSerialization:
    @pytest.mark.parametrize("text", [
        "A_5, (1, 0, 0, 0)", "S_4, (1, 1, 1, 83)", "A_4, (2, 1, 167)",
        "D_1009, (0, 0, 1)", "K_4, (1, 504)", "Z_2017, (1, 1)",
        "Z_2, (0, 1009)", "(0)", "infinity"])
    def test_line_round_trip(self, text):
        assert parse_entry(text).to_line() == text

    def test_parse_tolerates_spacing(self):
        assert parse_entry("Z_2,(1,2)") == parse_entry("Z_2, (1, 2)")

    def test_json_round_trip(self):
        for n in (5, 12, 2018):
            for e in classify(n):
                assert entry_from_json(e.to_json()) == e
