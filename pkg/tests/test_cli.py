import io
import json

import pytest

from config import CHECK_ANCHORS
from initialization import RunConfig, build_run_config
from main import build_parser, main
from reporting.reporting import canonical_json, dims_frame


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def worked_presentation(tmp_path):
    path = tmp_path / "worked.json"
    path.write_text(json.dumps({
        "field": "gf(2)",
        "generators": ["x", "y"],
        "relators": ["(sum (pp x 1) (pp y 1) (br x y))"],
    }))
    return str(path)


def test_dims_json_output_is_byte_exact():
    code, out, _ = run(["dims", "--field", "gf(2)", "--r", "2", "--max-degree", "6"])
    assert code == 0
    assert out == '{"dims":[2,3,2,6,6,11]}\n'


def test_dims_csv_output():
    code, out, _ = run(["dims", "--r", "1", "--max-degree", "4", "--format", "csv"])
    assert code == 0
    assert out == "degree,dim\n1,1\n2,1\n3,0\n4,1\n"


def test_eval_reports_normal_form():
    code, out, _ = run(["eval", "--expr", "(pp (sum x y) 1)", "--max-degree", "4"])
    assert code == 0
    assert json.loads(out) == {
        "value": "(sum (pp x 1) (pp y 1) (br x y))",
        "min_weight": 2,
        "ordinary": False,
    }


def test_basis_lists_weights():
    code, out, _ = run(["basis", "--max-degree", "2"])
    payload = json.loads(out)
    assert code == 0
    assert payload["dim"] == 5
    assert [b["weight"] for b in payload["basis"]] == [1, 1, 2, 2, 2]


def test_ore_division():
    code, out, _ = run(["ore-div", "--f", "t^2 + t", "--g", "t + 1"])
    assert code == 0
    assert json.loads(out) == {"side": "right", "q": "[1]*t", "r": "0"}


def test_ore_diagonalization(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text(json.dumps({"field": "gf(2)", "rows": [["t", "t"], ["t", "t"]]}))
    code, out, _ = run(["ore-diag", "--matrix", str(path)])
    payload = json.loads(out)
    assert code == 0
    assert payload["rank"] == 1
    assert payload["diagonal"]["rows"] == [["[1]*t", "0"], ["0", "0"]]


def test_abelianize_and_normalize(worked_presentation):
    code, out, _ = run(["abelianize", "--presentation", worked_presentation])
    assert code == 0
    assert json.loads(out)["matrix"]["rows"] == [["[1]*t", "[1]*t"]]
    code, out, _ = run(["normalize", "--presentation", worked_presentation])
    payload = json.loads(out)
    assert code == 0
    assert payload["omitted"] == ["y"]
    assert payload["power_components"] == [{"x": "[1]*t"}]


def test_certify_large_needs_spare_generators(worked_presentation):
    code, _, err = run(["certify-large", "--presentation", worked_presentation, "--q", "0"])
    assert code == 1
    assert json.loads(err)["error"] == "hypothesis_failed"


def test_generator_set_check_and_its_failure():
    base = ["zp-check", "--ideal", "y", "--g", "y", "--max-degree", "4"]
    code, out, _ = run(base)
    assert code == 0
    assert json.loads(out)["result"] is True
    code, out, _ = run(base + ["--drop-last"])
    assert code == 2
    assert json.loads(out)["result"] is False


def test_power_inclusion_check():
    code, out, _ = run([
        "power-check", "--ideal", "y", "--ideal", "(pp x 1)", "--g", "y", "--n", "2", "--max-degree", "8",
    ])
    payload = json.loads(out)
    assert code == 0
    assert payload["result"] is True
    assert payload["instance"]["codimension"] == 1


def test_nil_index_and_find_d():
    code, out, _ = run(["nil-index", "--g", "x", "--max-degree", "8"])
    assert code == 0 and json.loads(out)["nil_index"] == 16
    code, out, _ = run(["nil-index", "--g", "x", "--ideal", "y", "--max-degree", "4"])
    assert code == 0 and json.loads(out) == {"nil_index": 8, "quotient_dim": 3}
    code, out, _ = run(["find-d", "--v", "x", "--max-degree", "4"])
    assert code == 0 and json.loads(out)["d"] == 1


def test_kukin_check_passes():
    code, out, _ = run(["kukin-check", "--r", "2", "--k", "1", "--max-degree", "6"])
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] and payload["check"] == "kukin-check"


@pytest.mark.parametrize(
    "argv, error",
    [
        (["dims", "--field", "gf(6)"], "field_error"),
        (["eval", "--field", "gf 2", "--expr", "x"], "parse_error"),
        (["eval", "--expr", "(br x z)"], "unknown_generator"),
        (["basis", "--generators", "x,y,z", "--max-degree", "8", "--cap", "10"], "resource_bound"),
        (["eval"], "usage_error"),
        (["no-such-command"], "usage_error"),
    ],
)
def test_errors_are_reported_on_stderr(argv, error):
    code, out, err = run(argv)
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"] == error


def test_run_config_from_arguments_and_environment():
    args = build_parser().parse_args(["dims", "--r", "3"])
    config = build_run_config(args, env={"cap": 123})
    assert config.generators == ("x1", "x2", "x3")
    assert config.cap == 123
    with pytest.raises(ValueError):
        RunConfig(max_degree=0)


def test_canonical_json_sorts_keys_and_handles_numpy():
    import numpy as np

    assert canonical_json({"b": np.int64(2), "a": [np.bool_(True)]}) == '{"a":[true],"b":2}'
    assert list(dims_frame([2, 3]).columns) == ["degree", "dim"]


def test_power_check_alias_runs_the_same_command():
    argv = ["--ideal", "y", "--ideal", "(pp x 1)", "--g", "y", "--n", "1", "--max-degree", "4"]
    assert run(["l991-check"] + argv)[1] == run(["power-check"] + argv)[1]


@pytest.mark.parametrize("degree", ["0", "-3"])
def test_non_positive_max_degree_is_rejected(degree):
    code, out, err = run(["dims", "--max-degree", degree])
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"] == "invalid_input"
    args = build_parser().parse_args(["dims", "--max-degree", degree])
    with pytest.raises(ValueError):
        build_run_config(args, env={})


def test_missing_max_degree_uses_the_default():
    args = build_parser().parse_args(["dims"])
    assert build_run_config(args, env={}).max_degree == RunConfig().max_degree


@pytest.mark.parametrize(
    "argv",
    [
        ["zp-check", "--ideal", "y", "--g", "y", "--max-degree", "4"],
        ["power-check", "--ideal", "y", "--ideal", "(pp x 1)", "--g", "y", "--n", "1", "--max-degree", "4"],
        ["kukin-check", "--r", "2", "--k", "1", "--max-degree", "6"],
    ],
)
def test_check_payloads_carry_their_anchor(argv):
    code, out, _ = run(argv)
    assert code == 0
    assert json.loads(out)["anchor"] == CHECK_ANCHORS[argv[0]]
