import json

import pytest

from afcore import catalog
from afcore.cli import jsonable, main
from afcore.graphs import parse_graph, serialize_graph
from afcore.linalg import Matrix
from afcore.report import CheckReport


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out) if out else None, err


# -- jsonable -------------------------------------------------------------------------


def test_jsonable_scalars_and_containers(penrose):
    from fractions import Fraction

    assert jsonable(None) is None
    assert jsonable(True) is True
    assert jsonable(Fraction(1, 3)) == "1/3"
    assert jsonable(Matrix([[1, 2]])) == [[1, 2]]
    assert jsonable((1, 2)) == [1, 2]
    assert jsonable({2: "a"}) == {"2": "a"}
    # bool keys stringify as booleans, not as the integers they subclass
    assert jsonable({True: 1}) == {"true": 1}
    assert jsonable({False: 0, 1: "x"}) == {"false": 0, "1": "x"}
    g = jsonable(penrose)
    assert g["name"] == "penrose" and ["a", "1", "1"] in g["edges"]
    rep = CheckReport("t")
    rep.add("x", True, "detail")
    assert jsonable(rep) == {
        "title": "t",
        "ok": True,
        "items": [{"label": "x", "ok": True, "detail": "detail"}],
    }
    with pytest.raises(TypeError):
        jsonable(object())


# -- analyze -----------------------------------------------------------------------


def test_analyze_json(capsys):
    code, data, err = run_json(capsys, "analyze", "penrose")
    assert code == 0 and err == ""
    assert data["name"] == "penrose"
    assert data["adjacency"] == [[1, 1], [1, 0]]
    assert data["det"] == -1
    assert data["directed_cycle_count"] == 2
    assert data["is_cycle_graph"] is False


def test_analyze_text(capsys):
    code, out, err = run(capsys, "analyze", "tadpole")
    assert code == 0
    assert "graph tadpole: 2 vertices, 2 edges" in out
    assert "sources: 1" in out
    assert "det: 0" in out


def test_analyze_reads_files(capsys, tmp_path, penrose):
    path = tmp_path / "g.graph"
    path.write_text(serialize_graph(penrose))
    code, data, err = run_json(capsys, "analyze", str(path))
    assert code == 0 and data["name"] == "penrose"


# -- graph-producing commands ---------------------------------------------------------


def test_product_output_round_trip(capsys, tmp_path):
    out_file = tmp_path / "prod.graph"
    code, out, err = run(capsys, "product", "penrose", "sigma:2", "-o", str(out_file))
    assert code == 0
    g = parse_graph(out_file.read_text())
    assert g.name == "penrose_x_sigma2"
    assert g.n_vertices == 4 and g.n_edges == 9


def test_linegraph_stdout(capsys):
    code, out, err = run(capsys, "linegraph", "penrose")
    assert code == 0
    g = parse_graph(out)
    assert g.name == "line_penrose" and g.n_vertices == 3


def test_catalog_build_matches_library(capsys, sigma3):
    code, out, err = run(capsys, "catalog", "build", "sigma:3")
    assert code == 0
    assert parse_graph(out) == sigma3


# -- morphism checking ------------------------------------------------------------------


ADMISSIBLE_DOC = """\
graph dom
vertex v
edge x : v -> v
graph cod
vertex w
edge y : w -> w
morphism f : dom -> cod
vmap v => w
emap x => y
"""

NON_ADMISSIBLE_DOC = """\
graph dom
vertex v
edge x : v -> v
graph cod
vertex w
edge y : w -> w
edge z : w -> w
morphism f : dom -> cod
vmap v => w
emap x => y
"""


def test_check_morphism_admissible(capsys, tmp_path):
    path = tmp_path / "m.morphism"
    path.write_text(ADMISSIBLE_DOC)
    code, data, err = run_json(capsys, "check-morphism", str(path))
    assert code == 0
    assert data["admissible"] is True


def test_check_morphism_witnesses(capsys, tmp_path):
    path = tmp_path / "m.morphism"
    path.write_text(NON_ADMISSIBLE_DOC)
    code, data, err = run_json(capsys, "check-morphism", str(path))
    assert code == 1
    assert data["admissible"] is False
    assert data["range_closed"] is False
    assert data["range_witnesses"] == ["z"]
    assert data["injective"] is True


def test_check_morphism_invalid_is_an_error(capsys, tmp_path):
    path = tmp_path / "m.morphism"
    path.write_text(ADMISSIBLE_DOC.replace("vmap v => w", ""))
    code, out, err = run(capsys, "check-morphism", str(path))
    assert code == 2
    assert "error:" in err and "no image" in err


# -- embeddings ---------------------------------------------------------------------------


def test_embeddings_default_codomain_is_square(capsys):
    code, data, err = run_json(capsys, "embeddings", "sigma:2")
    assert code == 0
    assert data["codomain"] == "sigma2_x_sigma2"
    assert data["count"] == 2
    images = [sorted(m["vmap"].values()) for m in data["embeddings"]]
    assert sorted(images) == [["1_1", "1_2"], ["1_1", "2_1"]]


def test_embeddings_guard_error(capsys):
    code, out, err = run(capsys, "embeddings", "penrose", "--guard", "1")
    assert code == 2
    assert "exceed the guard" in err


# -- bratteli ---------------------------------------------------------------------------


def test_bratteli_text(capsys):
    code, out, err = run(capsys, "bratteli", "penrose", "--levels", "6")
    assert code == 0
    assert "level 6: 1:13 2:8" in out


def test_bratteli_dot(capsys):
    code, out, err = run(capsys, "bratteli", "penrose", "--levels", "3", "--dot")
    assert code == 0
    assert out.startswith("digraph bratteli {\n")
    assert out.endswith("}\n")


def test_bratteli_json(capsys):
    code, data, err = run_json(capsys, "bratteli", "cuntz:2", "--levels", "3")
    assert code == 0
    assert data["levels"] == [[["1", 1]], [["1", 2]], [["1", 4]]]


def test_bratteli_sink_is_an_error(capsys):
    code, data, err = run_json(capsys, "bratteli", "chambers:2", "--levels", "3")
    assert code == 2 and data is None
    payload = json.loads(err)
    assert payload["error"]["type"] == "SinkError"


# -- ktheory ----------------------------------------------------------------------------


def test_ktheory_json_penrose(capsys):
    code, data, err = run_json(capsys, "ktheory", "penrose")
    assert code == 0
    assert data["det"] == -1
    assert data["charpoly_reversed"] == [1, -1, -1]
    assert set(data["m_table"]) == {str(k) for k in range(-3, 4)}
    assert data["k0"]["kind"] == "free"
    assert data["kk"] == {"checks_pass": True, "matrix": [[0, 1], [1, -1]]}


def test_ktheory_range(capsys):
    code, data, err = run_json(capsys, "ktheory", "penrose", "--range", "0..2")
    assert code == 0
    assert set(data["m_table"].keys()) == {"0", "1", "2"}


def test_ktheory_bad_range(capsys):
    code, out, err = run(capsys, "ktheory", "penrose", "--range", "3..-3")
    assert code == 2
    assert "error:" in err


def test_ktheory_text_mode_renders(capsys):
    code, out, err = run(capsys, "ktheory", "cuntz:2")
    assert code == 0
    assert "scaled_dimension_values" in out


# -- leavitt ----------------------------------------------------------------------------


def test_leavitt_eval(capsys):
    code, data, err = run_json(
        capsys, "leavitt", "penrose", "eval", "S(a)^* P(1) S(a) + 2 P(2)"
    )
    assert code == 0
    assert data["normal"] == "P(1) + 2P(2)"
    assert data["is_zero"] is False


def test_leavitt_equals_exit_codes(capsys):
    code, data, err = run_json(
        capsys, "leavitt", "penrose", "equals",
        "P(1)", "S(a)S(a)^* + S(b)S(b)^*",
    )
    assert code == 0 and data["equal"] is True
    code, data, err = run_json(capsys, "leavitt", "penrose", "equals", "P(1)", "P(2)")
    assert code == 1 and data["equal"] is False


def test_leavitt_parse_error(capsys):
    code, data, err = run_json(capsys, "leavitt", "penrose", "eval", "S(a) +")
    assert code == 2
    payload = json.loads(err)
    assert payload["error"]["type"] == "ParseError"
    assert "position" in payload["error"]["message"]


# -- picard -----------------------------------------------------------------------------


def test_picard_order(capsys):
    code, data, err = run_json(capsys, "picard", "--dims", "1,2,3")
    assert code == 0
    assert data["order"] == 6
    assert len(data["elements"]) == 6
    assert data["elements"][0] == [0, 1, 2]


def test_picard_bad_dims(capsys):
    code, out, err = run(capsys, "picard", "--dims", "1,x")
    assert code == 2
    assert "comma-separated block sizes" in err


# -- catalog ----------------------------------------------------------------------------


def test_catalog_list(capsys):
    code, data, err = run_json(capsys, "catalog", "list")
    assert code == 0
    names = [entry["name"] for entry in data]
    assert "penrose" in names and "tadpole" in names


def test_catalog_suite_pass_and_params(capsys):
    code, out, err = run(capsys, "catalog", "suite", "cpq", "n=3")
    assert code == 0
    assert "PASS" in out


def test_catalog_suite_bad_param_shape(capsys):
    code, out, err = run(capsys, "catalog", "suite", "cpq", "n:3")
    assert code == 2
    assert "k=v" in err


def test_catalog_suite_unknown(capsys):
    code, out, err = run(capsys, "catalog", "suite", "mystery")
    assert code == 2
    assert "unknown suite" in err


# -- plumbing ---------------------------------------------------------------------------


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["bratteli", "penrose"]) == 2  # missing required --levels
    capsys.readouterr()
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    assert "analyze" in out and "ktheory" in out


def test_unknown_graph_token_is_a_data_error(capsys):
    code, out, err = run(capsys, "analyze", "not-a-graph")
    assert code == 2
    assert "unknown catalog graph" in err


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "ktheory", "penrose", "--json")
    second = run(capsys, "ktheory", "penrose", "--json")
    assert first == second
    third = run(capsys, "bratteli", "penrose", "--levels", "6", "--dot")
    fourth = run(capsys, "bratteli", "penrose", "--levels", "6", "--dot")
    assert third == fourth
