import json

import pytest

from data_loader import DataLoader, format_qnd, parse_qnd
from errors import AxiomViolation, FormatError
from permgroup import PermGroup
from quandle_core import FiniteGroup, TAIT_TABLE, tak_quandle, cyclic_group


@pytest.fixture(scope="module")
def loader(data_dir):
    return DataLoader(data_dir)


# ----------------------------------------------------------------------
# .qnd text format
# ----------------------------------------------------------------------
def test_parse_qnd_with_comments():
    Q = parse_qnd("# header\nquandle 3\n0 2 1  # first row\n2 1 0\n\n1 0 2\n")
    assert Q.table() == TAIT_TABLE


@pytest.mark.parametrize("text,line", [
    ("quandel 3\n0 2 1\n2 1 0\n1 0 2\n", 1),
    ("quandle 3\n0 2 1\n2 1\n1 0 2\n", 3),
    ("quandle 3\n0 2 1\n2 1 0\n1 0 x\n", 4),
])
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(FormatError) as info:
        parse_qnd(text)
    assert info.value.witness == line
    assert f":{line}:" in str(info.value)


def test_parse_errors_on_row_count_and_empty_input():
    with pytest.raises(FormatError):
        parse_qnd("quandle 3\n0 2 1\n2 1 0\n")
    with pytest.raises(FormatError):
        parse_qnd("# nothing here\n")


def test_format_qnd_is_parsed_back():
    Q = tak_quandle(cyclic_group(5))
    assert parse_qnd(format_qnd(Q)).table() == Q.table()


# ----------------------------------------------------------------------
# data files
# ----------------------------------------------------------------------
def test_load_sample_quandles(loader):
    assert loader.load_quandle("tait.qnd").table() == TAIT_TABLE
    assert loader.load_quandle("trivial3.qnd").n == 3
    assert loader.load_quandle("tak_z5.qnd").table() == tak_quandle(cyclic_group(5)).table()


def test_broken_tait_reports_q2(loader):
    with pytest.raises(AxiomViolation) as info:
        loader.load_quandle("broken_tait.qnd")
    assert info.value.axiom == "Q2"
    assert info.value.witness == (2, 1)


def test_missing_file(loader):
    with pytest.raises(FormatError):
        loader.load_quandle("no_such_file.qnd")


def test_load_group_both_forms(loader):
    S3 = loader.load_group("s3_generators.json")
    assert isinstance(S3, PermGroup) and S3.order == 6
    Z4 = loader.load_group("z4_cayley.json")
    assert isinstance(Z4, FiniteGroup) and Z4.order == 4 and Z4.is_abelian()


def test_load_matrix(loader):
    M = loader.load_matrix("snf_example.json")
    assert M.tolist() == [[2, 4], [6, 8]]


@pytest.mark.parametrize("name,sizes", [
    ("tak_z2.json", (2, 4, 8)),
    ("tak_zhat.json", (1, 2, 6)),
    ("m_product.json", (1, 3, 18)),
    ("davis.json", (3, 4, 8)),
    ("tait_constant.json", (3, 3, 3)),
    ("s3_cosets.json", (3, 3)),
    ("tait_explicit.json", (3, 3)),
    ("tait_times_tak.json", (9, 27)),
])
def test_load_tower_descriptors(loader, name, sizes):
    assert loader.load_tower(f"towers/{name}").level_sizes() == sizes


# ----------------------------------------------------------------------
# descriptor errors and saving
# ----------------------------------------------------------------------
def test_unknown_builder(loader):
    with pytest.raises(FormatError) as info:
        loader.build_tower({"builder": "spiral", "depth": 2})
    assert info.value.witness == "spiral"


def test_missing_descriptor_key(loader):
    with pytest.raises(FormatError) as info:
        loader.build_tower({"builder": "tak_zp", "depth": 2})
    assert info.value.witness == "p"


def test_invalid_json(tmp_path, loader):
    path = tmp_path / "bad.json"
    path.write_text('{"builder": "davis",\n  depth: 3}', encoding="utf-8")
    with pytest.raises(FormatError) as info:
        loader.load_tower(path)
    assert info.value.witness == 2


@pytest.mark.parametrize("suffix", [".qnd", ".json"])
def test_save_and_reload(tmp_path, loader, tait, suffix):
    path = tmp_path / f"saved{suffix}"
    loader.save_quandle(tait, path)
    assert loader.load_quandle(path).table() == tait.table()
    if suffix == ".json":
        assert json.loads(path.read_text())["n"] == 3


# ----------------------------------------------------------------------
# malformed input surfaces as FormatError with a witness
# ----------------------------------------------------------------------
def test_op_rows_must_be_lists(tmp_path, loader):
    path = tmp_path / "bad_op.json"
    path.write_text(json.dumps({"n": 2, "op": [1, 2]}), encoding="utf-8")
    with pytest.raises(FormatError) as info:
        loader.load_quandle(path)
    assert info.value.witness == 0


def test_op_entries_must_be_integers(tmp_path, loader):
    path = tmp_path / "bad_entry.json"
    path.write_text(json.dumps({"n": 2, "op": [[0, 0], [1, "x"]]}), encoding="utf-8")
    with pytest.raises(FormatError) as info:
        loader.load_quandle(path)
    assert info.value.witness == (1, 1)


def test_non_utf8_qnd(tmp_path, loader):
    path = tmp_path / "latin.qnd"
    path.write_bytes(b"quandle 1\n\xff\xfe\n")
    with pytest.raises(FormatError) as info:
        loader.load_quandle(path)
    assert info.value.witness == 10


@pytest.mark.parametrize("desc, witness", [
    ({"builder": "tak_zp", "p": "3", "depth": 2}, "p"),
    ({"builder": "tak_zp", "p": 3, "depth": 0}, "depth"),
    ({"builder": "m_product", "depth": 0}, "depth"),
    ({"builder": "davis", "depth": 2.5}, "depth"),
])
def test_descriptor_fields_are_checked(loader, desc, witness):
    with pytest.raises(FormatError) as info:
        loader.build_tower(desc)
    assert info.value.witness == witness


def test_explicit_transitions_must_be_integers(loader):
    desc = {"levels": ["tait.qnd", "tait.qnd"], "transitions": [["a", "b", "c"]]}
    with pytest.raises(FormatError) as info:
        loader.build_tower(desc)
    assert info.value.witness == (0, 0)


def test_generators_must_be_strings(tmp_path, loader):
    path = tmp_path / "gens.json"
    path.write_text(json.dumps({"degree": 3, "generators": [[0, 1]]}), encoding="utf-8")
    with pytest.raises(FormatError) as info:
        loader.load_group(path)
    assert info.value.witness == "generators"


def test_factors_must_be_descriptors(loader):
    with pytest.raises(FormatError):
        loader.build_tower({"builder": "product", "factors": 3})
