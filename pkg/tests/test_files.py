"""Tests for the algebra, function set and representation file formats."""

import json

import pytest

from menger.errors import FileFormatError
from menger.files import (
    dump_algebra,
    dump_function_set,
    dump_representation,
    load_algebra,
    load_function_set,
    load_representation,
    representation_to_model,
)
from menger.kernel import FiniteMengerAlgebra, SubtractionMengerAlgebra
from menger.pfunc import FunctionAlgebra, PartialNFunction, all_partial_functions
from menger.reprs import theorem2_pipeline


def two_element_document():
    return {
        "rank": 1,
        "carrier": ["f", "0"],
        "menger": [["f", "f", "f"], ["f", "0", "0"], ["0", "f", "0"], ["0", "0", "0"]],
        "subtraction": [["f", "f", "0"], ["f", "0", "f"], ["0", "f", "0"], ["0", "0", "0"]],
        "zero": "0",
    }


def write_json(path, document):
    path.write_text(json.dumps(document))
    return path


class TestAlgebraFiles:
    """Tests for algebra tables on disk."""

    @pytest.mark.parametrize("suffix", [".json", ".yaml"])
    def test_round_trip(self, temp_dir, powerset2, suffix):
        path = temp_dir / f"algebra{suffix}"
        dump_algebra(powerset2, path)
        assert load_algebra(path) == powerset2

    def test_plain_menger_algebra(self, temp_dir):
        M = FiniteMengerAlgebra(rank=1, op=[[1, 0], [0, 0]], labels=("a", "b"))
        path = temp_dir / "plain.json"
        dump_algebra(M, path)
        loaded = load_algebra(path)
        assert isinstance(loaded, FiniteMengerAlgebra)
        assert loaded == M

    def test_load_document(self, temp_dir):
        S = load_algebra(write_json(temp_dir / "a.json", two_element_document()))
        assert isinstance(S, SubtractionMengerAlgebra)
        assert S.labels == ("f", "0")
        assert S.zero == 1
        assert S.op.tolist() == [[0, 1], [1, 1]]

    def test_table_not_total(self, temp_dir):
        document = two_element_document()
        del document["subtraction"][2]
        with pytest.raises(FileFormatError) as excinfo:
            load_algebra(write_json(temp_dir / "a.json", document))
        assert excinfo.value.location == "subtraction"
        assert "subtraction table not total" in excinfo.value.message
        assert "['0', 'f']" in excinfo.value.message

    def test_unknown_label(self, temp_dir):
        document = two_element_document()
        document["menger"][1] = ["f", "g", "0"]
        with pytest.raises(FileFormatError) as excinfo:
            load_algebra(write_json(temp_dir / "a.json", document))
        assert excinfo.value.location == "menger[1]"
        assert "unknown carrier label 'g'" in str(excinfo.value)

    def test_duplicate_entry(self, temp_dir):
        document = two_element_document()
        document["menger"].append(["f", "f", "0"])
        with pytest.raises(FileFormatError, match="duplicate entry"):
            load_algebra(write_json(temp_dir / "a.json", document))

    def test_row_length(self, temp_dir):
        document = two_element_document()
        document["menger"][0] = ["f", "f"]
        with pytest.raises(FileFormatError, match="expected 3 labels, got 2"):
            load_algebra(write_json(temp_dir / "a.json", document))

    def test_duplicate_carrier_labels(self, temp_dir):
        document = two_element_document()
        document["carrier"] = ["f", "f"]
        with pytest.raises(FileFormatError) as excinfo:
            load_algebra(write_json(temp_dir / "a.json", document))
        assert excinfo.value.location == "carrier"

    def test_zero_without_subtraction(self, temp_dir):
        document = two_element_document()
        del document["subtraction"]
        with pytest.raises(FileFormatError, match="zero given without a subtraction table"):
            load_algebra(write_json(temp_dir / "a.json", document))

    def test_invalid_json(self, temp_dir):
        path = temp_dir / "broken.json"
        path.write_text("{not json")
        with pytest.raises(FileFormatError):
            load_algebra(path)

    def test_invalid_yaml(self, temp_dir):
        path = temp_dir / "broken.yaml"
        path.write_text("rank: [1\n")
        with pytest.raises(FileFormatError, match="invalid YAML"):
            load_algebra(path)

    def test_missing_file(self, temp_dir):
        with pytest.raises(FileFormatError):
            load_algebra(temp_dir / "missing.json")

    def test_unknown_field(self, temp_dir):
        document = two_element_document()
        document["colour"] = "blue"
        with pytest.raises(FileFormatError) as excinfo:
            load_algebra(write_json(temp_dir / "a.json", document))
        assert excinfo.value.location == "colour"


class TestFunctionSetFiles:
    """Tests for function families on disk."""

    def test_round_trip(self, temp_dir):
        F = all_partial_functions(2, 1)
        path = temp_dir / "family.json"
        dump_function_set(F, path, base_labels=["p", "q"])
        loaded = load_function_set(path)
        assert loaded.names == F.names
        assert list(loaded) == list(F)
        assert loaded.is_closed

    def test_graph_rows_use_base_labels(self, temp_dir):
        F = FunctionAlgebra.of([PartialNFunction.from_mapping(2, 1, {1: 0})], ["g"])
        path = temp_dir / "family.json"
        dump_function_set(F, path, base_labels=["p", "q"])
        document = json.loads(path.read_text())
        assert document["functions"] == [{"name": "g", "graph": [["q", "p"]]}]

    def test_flags_of_open_family(self, temp_dir):
        path = write_json(
            temp_dir / "family.json",
            {"base": ["a"], "rank": 1, "functions": [{"name": "id", "graph": [["a", "a"]]}]},
        )
        F = load_function_set(path)
        assert not F.contains_empty
        assert not F.closed_under_difference

    def test_input_given_twice(self, temp_dir):
        path = write_json(
            temp_dir / "family.json",
            {
                "base": ["a", "b"],
                "rank": 1,
                "functions": [{"name": "h", "graph": [["a", "a"], ["a", "b"]]}],
            },
        )
        with pytest.raises(FileFormatError) as excinfo:
            load_function_set(path)
        assert excinfo.value.location == "functions[0].graph[1]"

    def test_duplicate_functions(self, temp_dir):
        path = write_json(
            temp_dir / "family.json",
            {
                "base": ["a"],
                "rank": 1,
                "functions": [{"name": "x", "graph": []}, {"name": "y", "graph": []}],
            },
        )
        with pytest.raises(FileFormatError) as excinfo:
            load_function_set(path)
        assert excinfo.value.location == "functions"


class TestRepresentationFiles:
    """Tests for representations on disk."""

    @pytest.mark.parametrize("suffix", [".json", ".yml"])
    def test_round_trip(self, temp_dir, powerset2, suffix):
        R = theorem2_pipeline(powerset2)
        path = temp_dir / f"rep{suffix}"
        dump_representation(R, path)
        loaded = load_representation(path, powerset2)
        assert loaded.same_graphs(R)
        assert loaded.provenance == R.provenance
        assert not loaded.verified

    def test_verification_summary(self, two_element):
        model = representation_to_model(theorem2_pipeline(two_element))
        assert model.verification is not None
        assert model.verification.holds
        assert model.provenance == [("f", "f1")]
        assert model.graphs["f1"] == []

    def test_carrier_mismatch(self, temp_dir, two_element, powerset2):
        path = temp_dir / "rep.json"
        dump_representation(theorem2_pipeline(two_element), path)
        with pytest.raises(FileFormatError) as excinfo:
            load_representation(path, powerset2)
        assert excinfo.value.location == "carrier"

    def test_unknown_base_point(self, temp_dir, two_element):
        path = temp_dir / "rep.json"
        dump_representation(theorem2_pipeline(two_element), path)
        document = json.loads(path.read_text())
        document["graphs"]["f"][0][0] = "nowhere"
        write_json(path, document)
        with pytest.raises(FileFormatError, match="unknown base point label 'nowhere'"):
            load_representation(path, two_element)
