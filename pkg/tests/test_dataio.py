import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shapeclf.dataio import (
    FEATURE_CSV_HEADER,
    Attribute,
    DataFormatError,
    Dataset,
    format_number,
    parse_arff,
    parse_csv,
    stratified_folds,
    write_arff,
    write_csv,
)

MINIMAL = "@relation r\n@attribute area numeric\n@attribute class {a,b}\n@data\n24,a\n"


def make_dataset(X, labels, classes, relation="t", names=None):
    names = names or [f"f{i}" for i in range(np.shape(X)[1])]
    attrs = tuple(Attribute(n) for n in names) + (Attribute("class", tuple(classes)),)
    return Dataset(relation, attrs, np.asarray(X, dtype=float), np.asarray(labels))


class TestArff:
    def test_minimal(self):
        ds = parse_arff(MINIMAL)
        assert len(ds) == 1
        assert ds.y.tolist() == [0]
        assert ds.X.tolist() == [[24.0]]
        assert ds.classes == ("a", "b")

    def test_case_comments_and_quotes(self):
        text = (
            "% header comment\n"
            "@RELATION 'my data'\n"
            "@Attribute 'major axis' REAL\n"
            "@ATTRIBUTE n INTEGER\n"
            '@attribute class {"big bag", shoe}\n'
            "@DATA\n"
            "% row comment\n"
            "1.5, 2, 'big bag'\n"
            '3, 4, shoe\n'
        )
        ds = parse_arff(text)
        assert ds.relation == "my data"
        assert ds.feature_names == ("major axis", "n")
        assert ds.classes == ("big bag", "shoe")
        assert ds.y.tolist() == [0, 1]

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("@relation r\n@attribute area numeric\n@attribute class {a,b}\n@data\n24,?\n", 5, "missing"),
            ("@relation r\n@attribute x string\n@attribute class {a}\n@data\n", 2, "unknown attribute kind"),
            ("@relation r\n@attribute x numeric\n@attribute class {a}\n@data\n1,2,a\n", 5, "expected 2"),
            ("@relation r\n@attribute x numeric\n@attribute class {a}\n@data\n1,z\n", 5, "not declared"),
            ("@relation r\n@attribute x numeric\n@attribute class {a}\n@data\nq,a\n", 5, "non-numeric"),
        ],
    )
    def test_errors_carry_line(self, text, line, fragment):
        with pytest.raises(DataFormatError) as info:
            parse_arff(text)
        assert info.value.line == line
        assert fragment in str(info.value)

    def test_no_data_section(self):
        with pytest.raises(DataFormatError, match="@data"):
            parse_arff("@relation r\n@attribute class {a}\n")

    def test_class_must_be_nominal(self):
        with pytest.raises(DataFormatError):
            parse_arff("@relation r\n@attribute x numeric\n@data\n1\n")

    def test_quotes_values_with_spaces(self):
        ds = make_dataset([[1.0]], [0], ["big bag", "shoe"])
        text = write_arff(ds)
        assert "'big bag'" in text
        assert parse_arff(text) == ds

    def test_empty_instances(self):
        ds = make_dataset(np.zeros((0, 2)), [], ["a"])
        text = write_arff(ds)
        assert text.rstrip().endswith("@data")
        assert parse_arff(text) == ds

    @settings(max_examples=50)
    @given(
        st.lists(
            st.tuples(st.floats(allow_nan=False, allow_infinity=False), st.floats(-1e6, 1e6),
                      st.integers(0, 2)),
            max_size=30,
        )
    )
    def test_round_trip(self, rows):
        X = [[a, b] for a, b, _ in rows] or np.zeros((0, 2))
        ds = make_dataset(X, [c for _, _, c in rows], ["x", "y y", "z'"])
        assert parse_arff(write_arff(ds)) == ds


class TestCsv:
    def test_first_appearance_classes(self):
        ds = parse_csv("area,class\n1,bag\n2,shoe\n3,bag\n")
        assert ds.classes == ("bag", "shoe")
        assert ds.y.tolist() == [0, 1, 0]

    def test_non_numeric_token(self):
        with pytest.raises(DataFormatError) as info:
            parse_csv("area,extent,class\n1,2,a\nabc,3,b\n")
        assert (info.value.line, info.value.column) == (3, 1)

    def test_ragged(self):
        with pytest.raises(DataFormatError, match="expected 3 fields"):
            parse_csv("a,b,class\n1,2\n")

    def test_id_column_is_metadata(self):
        ds = parse_csv("id,area,class\nimg1.pgm,5,a\n")
        assert ds.ids == ("img1.pgm",)
        assert ds.feature_names == ("area",)

    def test_round_trip_bytes(self, small_features):
        text = write_csv(small_features)
        assert text.splitlines()[0] == ",".join(FEATURE_CSV_HEADER)
        again = parse_csv(text)
        assert again == small_features
        assert write_csv(again) == text

    def test_canonicalizes_numbers(self):
        text = "x,class\n1.50,a\n2.0,b\n"
        assert write_csv(parse_csv(text)) == "x,class\n1.5,a\n2,b\n"


def test_format_number_round_trips():
    for v in [0.1, 1 / 3, 24.0, -0.0, 1e-300, 123456789.125, 2.0**60]:
        assert float(format_number(v)) == v


class TestFolds:
    def test_balanced_ten_fold(self):
        y = np.repeat(np.arange(5), 20)
        plan = stratified_folds(y, 10, seed=1)
        for f in range(10):
            members = y[plan.assignment == f]
            assert len(members) == 10
            assert np.bincount(members, minlength=5).tolist() == [2] * 5

    def test_deterministic(self):
        y = np.array([0, 1, 1, 0, 2, 2, 2, 1, 0, 0])
        assert stratified_folds(y, 3, 9) == stratified_folds(y, 3, 9)
        assert stratified_folds(y, 3, 9) != stratified_folds(y, 3, 10)

    def test_round_robin_sizes(self):
        plan = stratified_folds(np.zeros(7, dtype=int), 3, 5)
        assert sorted(np.bincount(plan.assignment, minlength=3).tolist()) == [2, 2, 3]

    def test_errors(self):
        with pytest.raises(ValueError):
            stratified_folds(np.zeros(5, dtype=int), 1)
        with pytest.raises(ValueError):
            stratified_folds(np.zeros(5, dtype=int), 6)

    def test_ignores_attribute_values(self):
        y = [0, 1, 0, 1, 1, 0]
        a = make_dataset(np.zeros((6, 1)), y, ["p", "q"])
        b = make_dataset(np.arange(6.0)[:, None], y, ["p", "q"])
        assert stratified_folds(a, 3, 4) == stratified_folds(b, 3, 4)

    @given(st.lists(st.integers(0, 4), min_size=2, max_size=80), st.integers(2, 10),
           st.integers(0, 2**64 - 1))
    def test_stratification(self, labels, k, seed):
        y = np.array(labels)
        if k > len(y):
            return
        plan = stratified_folds(y, k, seed)
        assert set(plan.assignment.tolist()) <= set(range(k))
        for c in np.unique(y):
            sizes = np.bincount(plan.assignment[y == c], minlength=k)
            assert sizes.max() - sizes.min() <= 1
