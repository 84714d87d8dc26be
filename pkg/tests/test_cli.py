import csv
import io
import json
import subprocess
import sys

import pytest

from pythreg.cli import ExperimentConfig, build_parser, parse_additive, run
from pythreg.errors import InvalidArgument


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def csv_rows(text):
    lines = text.strip().splitlines()
    table = list(csv.reader(lines[:-1]))
    return table[0], table[1:], lines[-1]


def test_distance_example():
    code, out = call("distance", "--f", "liouville", "--g", "one", "--x", "1", "--y", "30")
    assert code == 0
    header, rows, summary = csv_rows(out)
    assert summary.startswith("3.0669")
    assert float(rows[0][header.index("d_squared")]) == pytest.approx(3.066877543744064, abs=1e-12)


def test_triples_example():
    code, out = call("triples", "search", "--f", "modchar 5 2", "--bound", "50")
    assert code == 0
    header, rows, _ = csv_rows(out)
    assert header == "k,m,n,x,y,z,f_x,f_y,f_z".split(",")
    assert "2,4,1,16,30,34,1,1,1" in out.splitlines()


def test_counting_example():
    code, out = call("counting", "wpair", "--N", "2000", "--Q", "7", "--a", "1", "--b", "0", "--p", "5", "--q", "5")
    assert code == 0
    header, rows, _ = csv_rows(out)
    assert header == "N,Q,a,b,p,q,empirical,closed_form,abs_error".split(",")
    assert abs(float(rows[0][6]) - 0.256) <= 0.02


def test_ladder_type1_constant():
    code, out = call("ladder", "--steps", "3", "pairs", "type1", "--f", "one", "--N", "500")
    assert code == 0
    header, rows, _ = csv_rows(out)
    assert [int(r[1]) for r in rows] == [500, 1000, 2000]
    vals = [float(r[header.index("value_re")]) for r in rows]
    masses = [float(r[header.index("weight_mass")]) for r in rows]
    assert vals == masses
    assert max(vals) - min(vals) <= 1e-3


def test_ladder_dlms_three_rows():
    code, out = call("ladder", "--steps", "3", "dlms", "--f", "liouville", "--N", "1000")
    assert code == 0
    _, rows, _ = csv_rows(out)
    assert [int(r[1]) for r in rows] == [1000, 2000, 4000]


def test_ladder_rejects_non_average():
    assert call("ladder", "distance", "--f", "one", "--y", "30")[0] == 2
    assert call("ladder")[0] == 2


def test_invalid_invocations():
    assert call("frobnicate")[0] == 2
    assert call("distance", "--f", "zeta", "--y", "30")[0] == 2
    assert call("counting", "wpair", "--N", "50", "--Q", "7", "--p", "3", "--q", "5")[0] == 2
    assert call("distance", "--f", "one", "--y", "30", "--workers", "0")[0] == 2


def test_resource_limit_exit_code():
    assert call("folner", "set", "--K", "13")[0] == 3
    assert call("triples", "search", "--f", "one", "--bound", str(10**8))[0] == 3


def test_config_round_trip(tmp_path):
    cfg = tmp_path / "run.toml"
    cfg.write_text('[counting.wpair]\nN = 300\nQ = 7\np = 5\nq = 13\n\n[distance]\nf = "liouville"\ny = 30\n')
    a = call("counting", "wpair", "--config", str(cfg))
    b = call("counting", "wpair", "--N", "300", "--Q", "7", "--p", "5", "--q", "13")
    assert a == b and a[0] == 0
    # command-line flags override the file
    c = call("counting", "wpair", "--config", str(cfg), "--q", "5")
    d = call("counting", "wpair", "--N", "300", "--Q", "7", "--p", "5", "--q", "5")
    assert c == d
    assert call("distance", "--config", str(cfg))[1].splitlines()[-1].startswith("3.0669")
    bad = tmp_path / "bad.toml"
    bad.write_text("[distance]\nwhatever = 1\n")
    assert call("distance", "--config", str(bad))[0] == 2
    assert call("distance", "--config", str(tmp_path / "missing.toml"))[0] == 2


def test_experiment_config_dict_round_trip():
    parser, _ = build_parser()
    ns = parser.parse_args(["pairs", "type2", "--f", "modchar 5 2", "--N", "50", "--Q", "30", "--delta", "0.05"])
    cfg = ExperimentConfig.from_namespace(ns)
    assert cfg.command == ("pairs", "type2")
    assert cfg.params["delta"] == 0.05 and cfg.params["f"] == "modchar 5 2"
    again = ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg


def test_json_fields():
    code, out = call("conc-quadratic", "--f", "modchar 5 2", "--chi", "char 5 2", "--K0", "5", "--Q", "30",
                     "--N", "100", "--json")
    assert code == 0
    body = json.loads(out[: out.rindex("}") + 1])
    assert set(body) == {"config", "result"}
    assert body["config"]["command"] == ["conc-quadratic"]
    assert "workers" not in body["config"] and "out" not in body["config"]
    res = body["result"]
    for key in ("kind", "params", "lhs", "drift", "bound_terms", "bound_total", "ratio", "tail_limit", "flags"):
        assert key in res
    assert res["lhs"] == 0


RUNS = [
    ["counting", "wpair", "--N", "400", "--Q", "7", "--p", "5", "--q", "13"],
    ["counting", "wdiv", "--N", "300", "--Q", "7", "--l", "65"],
    ["conc-quadratic", "--f", "prod modchar 5 2 liouville", "--chi", "char 5 2", "--K0", "5", "--Q", "30", "--N", "120"],
    ["tk", "--h", "13:1,17:0.5+0.5j,29:-1", "--K0", "5", "--Q", "30", "--N", "150"],
    ["pairs", "type2", "--f", "liouville", "--Q", "30", "--N", "80"],
    ["pairs", "type1", "--f", "modchar 13 3", "--Q", "30", "--N", "150"],
]


@pytest.mark.parametrize("argv", RUNS)
@pytest.mark.parametrize("as_json", [False, True])
def test_byte_identical_across_workers(tmp_path, argv, as_json):
    outs = []
    for w in (1, 4, 16):
        path = tmp_path / f"out{w}"
        extra = ["--json"] if as_json else []
        code, _ = call(*argv, "--workers", str(w), "--out", str(path), *extra)
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_parse_additive():
    h = parse_additive("13:1,17:0.5+0.5j")
    assert h(13) == 1 and h(17) == 0.5 + 0.5j and h(13 * 17) == 1.5 + 0.5j
    with pytest.raises(InvalidArgument):
        parse_additive("13=1")


def test_every_subcommand_has_header(tmp_path):
    cases = [
        ["meanprobe", "--f", "char 5 2", "--N", "10"],
        ["conc-linear", "--f", "modchar 5 2", "--chi", "char 5 2", "--K", "5", "--Q", "30", "--N", "100",
         "--tail-limit", "1000"],
        ["weights", "density", "--N", "100", "--kind", "elliptic"],
        ["weights", "slope", "--ell", "1", "--ell-prime", "1"],
        ["folner", "set", "--K", "3"],
        ["folner", "avg", "--f", "liouville", "--K", "5"],
        ["pairs", "qstab", "--f", "modchar 5 2", "--chi", "char 5 2", "--K", "2", "--N", "30"],
        ["pairs", "folneravg", "--f", "liouville", "--K", "2", "--N", "30", "--kind", "typeII"],
        ["dlms", "--f", "liouville", "--N", "100"],
        ["triples", "pairsearch", "--f", "liouville", "--N", "100", "--kind", "yz"],
        ["triples", "density", "--f", "modchar 5 2", "--d", "2", "--N", "50", "--K", "3"],
    ]
    for argv in cases:
        code, out = call(*argv)
        assert code == 0, argv
        header, rows, summary = csv_rows(out)
        assert header and all(len(r) == len(header) for r in rows), (argv, out)
        assert summary
    assert "|Phi_3| = 9" in call("folner", "set", "--K", "3")[1]
    assert "0.008" in call("folner", "avg", "--f", "liouville", "--K", "5")[1]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pythreg.cli", "distance", "--f", "liouville", "--y", "30"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[-1].startswith("3.0669")
