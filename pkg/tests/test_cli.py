import json
from pathlib import Path

import pytest

from ncdq.cli import (EXAMPLES, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, EXIT_WINDOW, InputError, load_example, main,
                      parse_spec)
from ncdq.quiver import build_algebra

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def spec_dict(**over):
    d = {"vertices": ["1", "2"], "arrows": [{"name": "a", "src": "1", "tgt": "2"}, {"name": "b", "src": "2", "tgt": "1"}],
         "relations": [[{"coeff": "1", "path": ["b", "a"]}]], "idempotent_vertices": ["1"]}
    d.update(over)
    return d


def test_bundled_examples_load():
    dims = {name: build_algebra(load_example(name)).dim for name in EXAMPLES if name != "atiyah_flop"}
    assert dims == {"marked_relations": 9, "dual_numbers": 2, "a1_hypersurface": 5}


def test_parse_spec_reports_schema_path():
    d = spec_dict()
    del d["arrows"][1]["tgt"]
    with pytest.raises(InputError, match="arrows/1"):
        parse_spec(d)


def test_parse_spec_reports_json_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices": ["1"],\n  "arrows": [,]}')
    with pytest.raises(InputError, match="line 2"):
        parse_spec(str(p))


def test_parse_spec_names_bad_relation():
    d = spec_dict(relations=[[{"coeff": 1, "path": ["a", "a"]}]])
    with pytest.raises(InputError, match="relation 0.*'a' and 'a'"):
        parse_spec(d)


def test_parse_spec_rational_coefficients_and_prime_field():
    d = spec_dict(relations=[[{"coeff": "1/2", "path": ["b", "a"]}]], field={"p": 5})
    spec = parse_spec(d)
    assert spec.field.p == 5
    assert spec.relations[0].terms[0][0] == 3        # 1/2 = 3 mod 5


def test_input_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "h1", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT and "does not exist" in err
    code, _, err = run(capsys, "h1")
    assert code == EXIT_INPUT
    code, _, err = run(capsys, "koszul", "--example", "marked_relations")
    assert code == EXIT_INPUT and "inhomogeneous" in err


def test_window_insufficient_exit_3(capsys):
    code, _, err = run(capsys, "eta", "--example", "a1_hypersurface", "--depth", "1")
    assert code == EXIT_WINDOW and "window insufficient" in err


@pytest.mark.parametrize("golden, argv", [
    ("h1_marked_relations.json", ["h1", "--example", "marked_relations"]),
    ("ext_a1_hypersurface.json", ["ext", "--example", "a1_hypersurface"]),
])
def test_structured_output_matches_golden(capsys, golden, argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    assert code == EXIT_OK
    assert out == (GOLDEN / golden).read_text()
    doc = json.loads(out)
    assert doc["schema_version"] == "1.0" and doc["status"] == "ok"


def test_structured_output_is_reproducible(capsys):
    outs = [run(capsys, "mc", "--samples", "10", "--format", "structured")[1] for _ in range(2)]
    assert outs[0] == outs[1]


@pytest.mark.parametrize("argv", [
    ["derived-quotient", "--example", "a1_hypersurface"],
    ["thma", "--example", "a1_hypersurface"],
    ["eta", "--example", "a1_hypersurface"],
    ["koszul", "--example", "dual_numbers", "--weight", "5"],
])
def test_commands_pass_on_examples(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK, out
    assert "FAIL" not in out


def test_table_output_tags_untrusted_cells(capsys):
    code, out, _ = run(capsys, "derived-quotient", "--example", "marked_relations")
    assert code == EXIT_OK
    assert "False" in out       # the deepest degree is outside the trusted window


@pytest.mark.parametrize("kind, needle", [
    ("differential", "Leibniz fails"),
    ("product", "fails"),
    ("resolution", "non-radical"),
    ("algebra", "associativity of A"),
])
def test_check_detects_corruption(capsys, kind, needle):
    code, out, _ = run(capsys, "check", "--example", "a1_hypersurface", "--corrupt", kind)
    assert code == EXIT_INVARIANT
    assert needle in out and "injected" in out


def test_check_passes_on_small_examples(capsys):
    for name in ("marked_relations", "dual_numbers", "a1_hypersurface"):
        code, out, _ = run(capsys, "check", "--example", name)
        assert code == EXIT_OK, out
