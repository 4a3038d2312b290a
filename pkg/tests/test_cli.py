import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from hilbcone import cli, severi as sv

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# -- parsing ------------------------------------------------------------------

def test_parse_terms_signs_and_fractions():
    assert cli.parse_terms("25H-7/2B") == [(25, "H"), (Fraction(-7, 2), "B")]
    assert cli.parse_terms("-E1+2F") == [(-1, "E1"), (2, "F")]
    assert cli.parse_terms(" 7E + 7F ") == [(7, "E"), (7, "F")]


def test_parse_terms_rejects_garbage():
    for bad in ("", "3*", "H+", "2", "+(H)"):
        with pytest.raises(cli.CLIError):
            cli.parse_terms(bad)


def test_parse_surface_recurses_through_blowups():
    S = cli.parse_surface("blowup:fr:2:3")
    assert S.kind == "blowup" and S.rank == 5
    assert cli.parse_surface("p2").kind == "p2"
    with pytest.raises(cli.CLIError):
        cli.parse_surface("fr")
    with pytest.raises(cli.CLIError):
        cli.parse_surface("k3:five")


# -- class --------------------------------------------------------------------

def test_class_p2_matches_library_json(capsys):
    payload = run_json(capsys, "class", "--surface", "p2",
                       "--curve", "7H", "--n", "12")
    assert payload == sv.result_to_json(sv.severi_class_p2(7, 12))
    assert payload["pretty"] == "18H-5/2B"
    assert payload["flags"] == []


def test_class_hirzebruch(capsys):
    payload = run_json(capsys, "class", "--surface", "fr:1",
                       "--curve", "7E+7F", "--n", "12")
    assert payload == sv.result_to_json(sv.severi_class_hirzebruch(1, 7, 7, 12))
    assert payload["pretty"] == "19E+18F-5/2B"


def test_class_subcollection(capsys):
    payload = run_json(capsys, "class", "--surface", "p2",
                       "--curve", "7H", "--n", "12", "--subcollection", "13")
    assert payload["pretty"] == "216H-55/2B"
    assert payload["normalized_ray_pretty"] == "216/11H-5/2B"


def test_class_codim_flags(capsys):
    payload = run_json(capsys, "class", "--surface", "p2",
                       "--curve", "9H", "--n", "18", "--codim", "1")
    assert payload["pretty"] == "24H-5/2B"
    assert sv.FLAG_EQ_SEV in payload["flags"]


def test_class_k3(capsys):
    payload = run_json(capsys, "class", "--surface", "k3:8",
                       "--curve", "L", "--n", "2")
    assert payload["pretty"] == "3L-5/2B"


def test_class_blowup_needs_h0(capsys):
    code, _, err = run_cli(capsys, "class", "--surface", "blowup:p2:1",
                           "--curve", "3H", "--n", "2")
    assert code == 2 and "h0" in err
    payload = run_json(capsys, "class", "--surface", "blowup:p2:1",
                       "--curve", "3H", "--n", "2", "--h0", "6")
    assert payload["pretty"] == "6H+E1-5/2B"


def test_class_table_format(capsys):
    code, out, _ = run_cli(capsys, "class", "--surface", "p2",
                           "--curve", "7H", "--n", "12", "--format", "table")
    assert code == 0
    assert "class: 18H-5/2B" in out.splitlines()
    assert "flags: none" in out.splitlines()


@pytest.mark.parametrize("argv", [
    ("class", "--surface", "p3", "--curve", "H", "--n", "1"),
    ("class", "--surface", "p2", "--curve", "7Q", "--n", "12"),
    ("class", "--surface", "p2", "--curve", "7H-B", "--n", "12"),
    ("class", "--surface", "p2", "--curve", "1/2H", "--n", "1"),
    ("class", "--surface", "fr:1", "--curve", "E+F", "--n", "1",
     "--subcollection", "5"),
    ("class", "--surface", "fr:1", "--curve", "E+F", "--n", "1", "--codim", "1"),
])
def test_class_usage_errors_exit_2(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("hilbcone:")


def test_missing_required_flag_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["class", "--surface", "p2", "--n", "12"])
    assert exc.value.code == 2


# -- enumerate ------------------------------------------------------------------

def test_enumerate_hirzebruch_chi(capsys):
    payload = run_json(capsys, "enumerate", "--surface", "fr:1",
                       "--n", "12", "--filters", "chi")
    pairs = {(c["a"], c["b"]) for c in payload["candidates"]}
    assert {(7, 7), (2, 12), (0, 35)} <= pairs


def test_enumerate_p2(capsys):
    payload = run_json(capsys, "enumerate", "--surface", "p2", "--n", "12")
    assert [(c["d"], c["n"]) for c in payload["candidates"]] == [(7, 12)]


def test_enumerate_k3(capsys):
    empty = run_json(capsys, "enumerate", "--k3", "6", "--nmax", "100")
    assert empty["solutions"] == [] and empty["flags"] == []
    deg8 = run_json(capsys, "enumerate", "--k3", "8", "--nmax", "10")
    assert [(s["d"], s["n"]) for s in deg8["solutions"]] == [(1, 2), (2, 6)]
    assert sv.FLAG_K3_SET in deg8["flags"]


@pytest.mark.parametrize("argv", [
    ("enumerate", "--k3", "8"),
    ("enumerate", "--n", "12"),
    ("enumerate", "--surface", "fr:1"),
    ("enumerate", "--surface", "fr:1", "--n", "12", "--filters", "bogus"),
    ("enumerate", "--surface", "k3:8", "--n", "2"),
])
def test_enumerate_usage_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and err.startswith("hilbcone:")


# -- cone ------------------------------------------------------------------------

def test_cone_contains(capsys):
    payload = run_json(capsys, "cone", "contains",
                       "--rays", "B,7H-B", "--point", "25H-7/2B")
    assert payload == {"basis": ["H", "B"], "contains": True, "interior": True}
    boundary = run_json(capsys, "cone", "contains",
                        "--rays", "B,7H-B", "--point", "7H-B")
    assert boundary["contains"] and not boundary["interior"]


def test_cone_restrict(capsys):
    payload = run_json(capsys, "cone", "restrict",
                       "--rays", "E,F", "--subspace", "E+F")
    assert payload["ambient_basis"] == ["E", "F"]
    assert payload["rays"] == [[1]] and payload["lineality"] == []


def test_cone_walls_restrict_fixture(capsys):
    payload = run_json(capsys, "cone", "walls-restrict",
                       "--fixture", "f1n3.json", "--subspace", "H,B")
    ws = payload["wallset"]
    assert ws["basis"] == ["H", "B"]
    assert [w["functional"] for w in ws["walls"]] == [[0, 1], [1, 4], [1, 2]]
    assert ws["bounding_cone"] == [[0, 1], [2, -1]]
    assert payload["dropped"] == ["CE"]


def test_cone_transport_fixture(capsys):
    payload = run_json(capsys, "cone", "transport", "--fixture", "f1n3.json")
    assert payload["surface"] == {"kind": "hirzebruch", "r": 0}
    assert len(payload["walls"]) == 7
    assert all("not verified" in w["cite"] for w in payload["walls"])


@pytest.mark.parametrize("argv", [
    ("cone", "contains", "--rays", "B,7H-B"),
    ("cone", "restrict", "--rays", "E,F"),
    ("cone", "walls-restrict", "--fixture", "f1n3.json"),
    ("cone", "transport", "--fixture", "no_such_fixture.json"),
    ("cone", "contains", "--rays", "B,Q", "--point", "B"),
    ("cone", "walls-restrict", "--fixture", "p2n3.json", "--subspace", "E"),
])
def test_cone_usage_errors_exit_2(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == 2 and err.startswith("hilbcone:")


# -- plot -------------------------------------------------------------------------

def test_plot_to_file_matches_golden(capsys, tmp_path):
    out = tmp_path / "pic.svg"
    code, stdout, _ = run_cli(capsys, "plot", "--fixture", "p2n3.json",
                              "--out", str(out))
    assert code == 0 and stdout == ""
    assert out.read_text() == (GOLDEN / "p2n3.svg").read_text()


def test_plot_to_stdout(capsys):
    code, stdout, _ = run_cli(capsys, "plot", "--fixture", "f1n3.json")
    assert code == 0
    assert stdout == (GOLDEN / "f1n3.svg").read_text()


# -- reproduce ----------------------------------------------------------------------

def test_reproduce_exits_clean_with_exact_warn_set(capsys):
    code, out, _ = run_cli(capsys, "reproduce")
    assert code == 0
    lines = out.splitlines()
    passed = [l for l in lines if l.startswith("PASS ")]
    warned = [l for l in lines if l.startswith("WARN ")]
    failed = [l for l in lines if l.startswith("FAIL ")]
    assert len(passed) >= 25
    assert failed == []
    assert sorted(l.split()[1].rstrip(":") for l in warned) == [
        "warn-dimension-convention",
        "warn-fr12-even-r-list",
        "warn-k3-solution-sets",
    ]
    assert lines[-1].endswith("3 warned, 0 failed")


def test_reproduce_json(capsys):
    code, out, _ = run_cli(capsys, "reproduce", "--json")
    assert code == 0
    results = json.loads(out)
    assert {r["status"] for r in results} == {"PASS", "WARN"}
    assert len(results) == len({r["id"] for r in results})


def test_reproduce_filter(capsys):
    code, out, _ = run_cli(capsys, "reproduce", "--filter", "p2")
    assert code == 0
    body = out.splitlines()[:-1]
    assert body and all("p2" in l.split()[1] for l in body)


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "hilbcone.cli", "reproduce",
         "--filter", "k3-enumerate-deg6"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("PASS k3-enumerate-deg6")
