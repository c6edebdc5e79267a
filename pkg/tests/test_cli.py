import json
import subprocess
import sys

import pytest

from odrcount import cli
from odrcount.countformulas import OdRConfig
from odrcount.exactpoly import ExactPolynomial


def _run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _json(argv, capsys):
    code, out, _ = _run(argv, capsys)
    return code, json.loads(out)


def _strip_timings(obj):
    obj = dict(obj)
    obj.pop("timings")
    return obj


def test_parse_args_count():
    spec = cli.parse_args(["count", "--n", "2", "--mu", "(1,1);(1,1)", "--r", "1"])
    assert spec.command == "count"
    assert spec.config == OdRConfig(2, ((1, 1), (1, 1)), (1,))
    assert spec.fmt == "json"


def test_parse_args_oracle_primes_and_cache(tmp_path):
    spec = cli.parse_args(["--cache-dir", str(tmp_path), "oracle", "--n", "2", "--r", "1,1", "--prime", "3,5"])
    assert spec.primes == [3, 5]
    assert spec.cache_dir == tmp_path


def test_parse_types():
    types = cli._parse_types("0,1/1,2;1,0/2,1", 3)
    assert [t.rows for t in types] == [((0, 1), (1, 2)), ((1, 0), (2, 1))]


@pytest.mark.parametrize("argv", [
    ["count", "--n", "2"],
    ["count", "--n", "2", "--mu", "(1,1)", "--r", "(1)", "--format", "xml"],
    ["oracle", "--n", "2", "--r", "1,1", "--prime", "4"],
    ["quiver", "--example", "C2_1", "--verify"],
    ["oracle", "--n", "2", "--r", "1,1", "--format", "latex"],
    ["count", "--n", "3", "--r", "1"],
    ["bogus"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_irregular_pole_message(capsys):
    with pytest.raises(SystemExit):
        cli.main(["count", "--n", "2"])
    assert "s >= 1" in capsys.readouterr().err


def test_count_json(capsys):
    code, obj = _json(["count", "--n", "2", "--r", "1,1"], capsys)
    assert code == 0
    assert obj["results"]["weight_polynomial"]["text"] == "q^2 + 2*q"
    assert obj["results"]["dimension"] == 2
    assert obj["passed"] is True


def test_count_latex(capsys):
    code, out, _ = _run(["count", "--n", "2", "--r", "1,1", "--format", "latex"], capsys)
    assert code == 0
    assert out.strip() == "q^{2} + 2q"


def test_count_csv(capsys):
    code, out, _ = _run(["count", "--n", "2", "--r", "1,1", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["exponent,coefficient", "1,2", "2,1"]


def test_oracle_count(capsys):
    code, obj = _json(["oracle", "--n", "2", "--r", "1,1", "--prime", "3"], capsys)
    assert code == 0
    run = obj["results"]["runs"][0]
    assert run["count"] == run["formula"] == 15


def test_oracle_csv_sweep(capsys):
    code, out, _ = _run(["oracle", "--n", "2", "--r", "1,1", "--prime", "3,5", "--format", "csv"], capsys)
    assert code == 0
    assert out.splitlines() == ["prime,witness,count,formula,match", "3,0,15,15,True", "5,0,35,35,True"]


def test_oracle_without_generic_tuple_exits_3(capsys):
    code, obj = _json(["oracle", "--n", "2", "--mu", "(1,1);(1,1)", "--r", "1", "--prime", "3"], capsys)
    assert code == 3
    assert obj["results"]["skipped_primes"] == [3]


def test_failed_cross_check_exits_1(capsys, monkeypatch):
    monkeypatch.setattr(cli, "count_general", lambda cfg: ExactPolynomial.var() ** 2)
    code, obj = _json(["oracle", "--n", "2", "--r", "1,1", "--prime", "3"], capsys)
    assert code == 1
    assert obj["passed"] is False


def test_quiver_verify(capsys):
    code, obj = _json(["quiver", "--example", "C2_1", "--prime", "3", "--verify"], capsys)
    assert code == 0
    res = obj["results"]
    assert res["cartan"] == [[2, -2, -2], [-1, 2, 0], [-1, 0, 2]]
    assert res["label"] == "C2_1"
    assert res["dimension"] == 2
    assert all(obj["checks"].values())


def test_quiver_from_non_generic_types_exits_2(capsys):
    code, _, err = _run(["quiver", "--from-types", "0,1/1,1;1,0/1,1", "--prime", "3", "--verify"], capsys)
    assert code == 2
    assert "generic" in err


def test_symfunc_e_polynomial(capsys):
    code, obj = _json(["symfunc", "--n", "2", "--r", "1,1"], capsys)
    assert code == 0
    assert all(obj["checks"].values())


def test_mhp_pure_part(capsys):
    code, obj = _json(["mhp", "--n", "2", "--r", "1,1"], capsys)
    assert code == 0
    assert all(obj["checks"].values())


@pytest.mark.parametrize("check", ["orth", "finalc", "steinberg", "inversion"])
def test_charsum_checks(check, capsys):
    argv = ["charsum", "--check", check, "--prime", "3"]
    if check == "finalc":
        argv += ["--beta", "1,1,1"]
    code, obj = _json(argv, capsys)
    assert code == 0
    assert obj["passed"] is True


def test_generic_search(capsys):
    code, obj = _json(["generic", "--n", "2", "--r", "1,1", "--prime", "5", "--count", "2"], capsys)
    assert code == 0
    assert obj["passed"] is True


def test_json_is_reproducible_up_to_timings(capsys):
    argv = ["oracle", "--n", "2", "--r", "1,1", "--prime", "3", "--seed", "7"]
    _, first = _json(argv, capsys)
    _, second = _json(argv, capsys)
    assert _strip_timings(first) == _strip_timings(second)
    a = json.dumps(_strip_timings(first), indent=2, sort_keys=True)
    b = json.dumps(_strip_timings(second), indent=2, sort_keys=True)
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "odrcount", "count", "--n", "2", "--r", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["weight_polynomial"]["text"] == "1"


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.startswith("odrcount ")
