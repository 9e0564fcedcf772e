import pytest

from src.core.dist_core import cdf_from_atoms
from src.utils import validate_json_structure
from src.utils.csv_reader import read_csv_rows
from src.utils.errors import BadParams, ParseError
from src.utils.file_loader import (
    histogram_atoms,
    load_distribution,
    load_pair,
    load_perception,
    load_utility,
    load_vector,
    serialize_distribution,
)


class TestValidateJsonStructure:
    def test_atoms(self):
        assert validate_json_structure({"atoms": [[0, 0.5], [1, 0.5]]}) == {"is_valid": True, "error": None}

    def test_samples(self):
        assert validate_json_structure({"samples": [1, 2, 3]})["is_valid"]

    @pytest.mark.parametrize("payload", [
        {},
        {"atoms": []},
        {"atoms": [[0, 1.0]], "samples": [1]},
        {"atoms": [[0, -1.0]]},
        {"samples": ["a"]},
    ])
    def test_invalid_distribution(self, payload):
        result = validate_json_structure(payload)
        assert not result["is_valid"]
        assert result["error"]

    def test_pair(self):
        pair = {"u0": [[0, 0], [1, 1]], "v0": [[0, 0], [1, 1]]}
        assert validate_json_structure(pair, 'pair')["is_valid"]
        assert not validate_json_structure({**pair, "u0_continuity": "sideways"}, 'pair')["is_valid"]

    def test_perception_needs_one_source(self):
        assert validate_json_structure({"rho": 2.0}, 'perception')["is_valid"]
        assert not validate_json_structure({"rho": 2.0, "knots": [[0, 0], [1, 1]]}, 'perception')["is_valid"]

    def test_unknown_kind(self):
        assert not validate_json_structure({}, 'matrix')["is_valid"]

    def test_not_an_object(self):
        assert not validate_json_structure([1, 2], 'vector')["is_valid"]


class TestCsv:
    def test_header_detected(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("value,mass\n0,0.5\n2,0.5\n", encoding='utf-8')
        header, rows = read_csv_rows(str(path))
        assert header == ['value', 'mass']
        assert rows == [[0.0, 0.5], [2.0, 0.5]]

    def test_no_header(self, tmp_path):
        path = tmp_path / "s.csv"
        path.write_text("1\n\n2\n", encoding='utf-8')
        assert read_csv_rows(str(path)) == (None, [[1.0], [2.0]])

    def test_bad_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("value,mass\n0,0.5\nx,0.5\n", encoding='utf-8')
        with pytest.raises(ParseError):
            read_csv_rows(str(path))

    def test_ragged(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("0,0.5\n1\n", encoding='utf-8')
        with pytest.raises(ParseError):
            read_csv_rows(str(path))

    def test_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            read_csv_rows(str(tmp_path / "nope.csv"))


class TestLoaders:
    def test_json_atoms(self, write_json):
        F = load_distribution(write_json("a.json", {"atoms": [[2, 0.5], [0, 0.5]]}))
        assert F.atoms == ((0.0, 0.5), (2.0, 0.5))

    def test_json_samples(self, write_json):
        F = load_distribution(write_json("s.json", {"samples": [1, 1, 3, 5]}))
        assert F.atoms == ((1.0, 0.5), (3.0, 0.25), (5.0, 0.25))

    def test_histogram_bins(self, write_json):
        F = load_distribution(write_json("h.json", {"samples": [0, 0, 0, 10]}), bins=2)
        assert F.atoms == ((2.5, 0.75), (7.5, 0.25))

    def test_histogram_rejects_zero_bins(self):
        with pytest.raises(BadParams):
            histogram_atoms([1, 2], 0)

    def test_csv_atoms_and_samples(self, tmp_path):
        atoms = tmp_path / "a.csv"
        atoms.write_text("value,mass\n0,0.25\n1,0.75\n", encoding='utf-8')
        samples = tmp_path / "s.csv"
        samples.write_text("4\n4\n", encoding='utf-8')
        assert load_distribution(str(atoms)).atoms == ((0.0, 0.25), (1.0, 0.75))
        assert load_distribution(str(samples)).atoms == ((4.0, 1.0),)

    def test_unsupported_extension(self, tmp_path):
        path = tmp_path / "a.txt"
        path.write_text("{}", encoding='utf-8')
        with pytest.raises(ParseError):
            load_distribution(str(path))

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{atoms:", encoding='utf-8')
        with pytest.raises(ParseError):
            load_distribution(str(path))

    def test_pair(self, write_json):
        pair = load_pair(write_json("p.json", {"u0": [[0, 0], [2, 2]], "v0": [[0, 0], [0.5, 0.25], [1, 1]]}))
        assert pair.u0.continuity == 'left'
        assert pair.v0.value(0.5) == 0.25

    def test_perception(self, write_json):
        assert load_perception(write_json("r.json", {"rho": 2.0})).f0.value(0.5) == pytest.approx(0.25)
        f0 = load_perception(write_json("k.json", {"knots": [[0, 0], [1, 1]], "label": "flat"}))
        assert f0.label == "flat"

    def test_utility(self, write_json):
        assert load_utility(write_json("u.json", {"knots": [[0, 0], [1, 1]]})).value(0.5) == 0.5

    def test_vector(self, write_json, tmp_path):
        assert load_vector(write_json("x.json", {"entries": [3, 1]})).entries == (3.0, 1.0)
        path = tmp_path / "y.csv"
        path.write_text("3\n2\n", encoding='utf-8')
        assert load_vector(str(path)).entries == (3.0, 2.0)


class TestSerialize:
    def test_json(self, write_json, tmp_path):
        F = cdf_from_atoms([(0, 0.25), (1.5, 0.75)])
        path = tmp_path / "out.json"
        path.write_text(serialize_distribution(F), encoding='utf-8')
        assert load_distribution(str(path)) == F

    def test_csv(self, tmp_path):
        F = cdf_from_atoms([(0, 0.25), (1.5, 0.75)])
        text = serialize_distribution(F, 'csv')
        assert text.splitlines()[0] == 'value,mass'
        path = tmp_path / "out.csv"
        path.write_text(text, encoding='utf-8')
        assert load_distribution(str(path)) == F

    def test_unknown_format(self):
        with pytest.raises(BadParams):
            serialize_distribution(cdf_from_atoms([(0, 1.0)]), 'xml')
