from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from klab.cli import SpecError, emit, main, parse_spec, print_spec, to_dot
from klab.corpus import SPEC_CORPUS


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bgmu_json(capsys):
    code, out, _ = run(capsys, "bgmu", "GL2", "1,0")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == "klab-report/1"
    assert [e["newton"] for e in rep["results"]["elements"]] == [["1/2", "1/2"], ["1", "0"]]
    assert rep["provenance"]["version"] == "0.1.0"
    assert len(rep["provenance"]["spec_hash"]) == 16


def test_fullhnd_and_dims(capsys):
    rep = json.loads(run(capsys, "fullhnd", "GL2", "3,0")[1])
    assert rep["results"]["fully_hnd"] is False
    assert rep["results"]["failures"] == [["2", "1"]]
    rep = json.loads(run(capsys, "dims", "GL2", "1,0", "--stratum=basic")[1])
    assert rep["results"]["dimension"] == 1
    rep = json.loads(run(capsys, "dims", "GL2", "1,0", "--stratum=cell")[1])
    assert rep["results"]["dimension"] == 1


def test_dot_output(capsys):
    code, out, _ = run(capsys, "bgmu", "GL3", "2,1,0", "--format=dot")
    assert code == 0
    assert out.startswith("digraph bgmu {") and "rankdir=BT;" in out
    assert out.count("->") == 4


def test_dot_without_poset_is_error(capsys):
    code, out, err = run(capsys, "witness", "GL2", "1,0", "--format=dot")
    assert code == 1 and out == "" and err.startswith("klab: error:")


def test_operation_errors(capsys):
    assert run(capsys, "bgmu", "GL2", "0,1")[0] == 1
    assert run(capsys, "bgmu", "GL2", "1,1/2")[0] == 1
    code, _, err = run(capsys, "bgmu", "B2 sc galois=flip,2", "1,0")
    assert code == 1 and "column 14" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bgmu"])
    assert exc.value.code == 2


def test_text_format(capsys):
    out = run(capsys, "witness", "GL3", "2,0,0", "--format=text")[1]
    assert "flagged[0]: (1)" in out.splitlines()


def test_matrix_commands(capsys):
    rep = json.loads(run(capsys, "hnfil", "--matrix=t^-1")[1])
    rec = rep["results"]["records"][0]
    assert rec["cartan"] == [1] and rec["deg"] == "1" and rec["routes_agree"]
    rep = json.loads(run(capsys, "cartan", "--matrix=0,t;t,1")[1])
    assert rep["results"]["records"][0]["cartan"] == [0, -2]


def test_sweep_random_and_instances(capsys, tmp_path):
    path = tmp_path / "inst.txt"
    first = run(capsys, "sweep", "--kind=lattice", "--random=6", "--seed=5", f"--write-instances={path}")[1]
    second = run(capsys, "sweep", "--kind=lattice", f"--instances={path}")[1]
    assert json.loads(first)["results"] == json.loads(second)["results"]
    again = run(capsys, "sweep", "--kind=lattice", "--random=6", "--seed=5")[1]
    assert json.loads(again)["results"] == json.loads(first)["results"]


def test_sweep_jobs_keep_order(capsys):
    one = run(capsys, "sweep", "--kind=lattice", "--random=8", "--seed=1")[1]
    two = run(capsys, "sweep", "--kind=lattice", "--random=8", "--seed=1", "--jobs=2")[1]
    assert one == two


ERRORS = [
    ("A0", 1), ("Q3", 1), ("GL3 galois=0/0/1,2", 12), ("A2 xx", 4), ("GL3 foo", 5),
    ("GL3 galois=flip,0", 17), ("C2 sc galois=flip,2", 14),
]


@pytest.mark.parametrize("text,column", ERRORS)
def test_spec_errors_carry_columns(text, column):
    with pytest.raises(SpecError) as exc:
        parse_spec(text)
    assert exc.value.column == column and exc.value.line == 1


@pytest.mark.parametrize("alias,canonical", [
    ("SL3", "A2 sc"), ("PGL2", "A1 ad"), ("Sp4", "C2 sc"), ("U3", "GL3 galois=flip,2"), ("SU3", "A2 sc galois=flip,2"),
])
def test_aliases(alias, canonical):
    assert print_spec(parse_spec(alias)) == canonical
    assert parse_spec(alias) == parse_spec(canonical)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPEC_CORPUS), st.integers(0, 3), st.integers(0, 3))
def test_round_trip_with_whitespace(spec, lead, gap):
    messy = " " * lead + (" " * (gap + 1)).join(spec.split())
    g = parse_spec(messy)
    assert print_spec(g) == spec
    assert parse_spec(print_spec(g)) == g


def test_to_dot_escapes_labels():
    out = to_dot(['a"b'], [])
    assert 'label="a\\"b"' in out


def test_emit_rejects_unknown_format():
    from klab.cli import Report
    with pytest.raises(ValueError):
        emit(Report("x", {}, {}), "yaml")
