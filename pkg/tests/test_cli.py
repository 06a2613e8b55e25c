import io
import json
import subprocess
import sys

import pytest

from synaptica.cli import (
    EXIT_LAW_FAILURE,
    EXIT_NOT_PROJECTION,
    EXIT_NOT_SYMMETRIC,
    EXIT_OK,
    EXIT_USAGE,
    main,
)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def matrix(n, data):
    return {"model": "matrix", "dim": n, "data": data}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_analyze_identity(tmp_path):
    f = write(tmp_path, "i.json", matrix(2, [1, 0, 0, 1]))
    code, text = run("analyze", f, "--json")
    r = json.loads(text)
    assert code == EXIT_OK
    assert (r["L"], r["U"], r["spectrum"], r["carrier_rank"]) == (1, 1, [1], 2)


def test_analyze_breakpoint_table(tmp_path):
    f = write(tmp_path, "d.json", matrix(4, [1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 5]))
    code, text = run("analyze", f, "--json")
    r = json.loads(text)
    assert [b["lambda"] for b in r["breakpoints"]] == [1, 2, 5]
    assert [b["rank_p"] for b in r["breakpoints"]] == [1, 3, 4]
    assert [b["rank_d"] for b in r["breakpoints"]] == [1, 2, 1]
    assert [t["alpha"] for t in r["simple_decomposition"]] == [1, 2, 5]
    assert "matrices" not in r
    code, text = run("analyze", f)
    assert code == EXIT_OK and "breakpoints" in text


def test_analyze_zero(tmp_path):
    f = write(tmp_path, "z.json", matrix(3, [0] * 9))
    r = json.loads(run("analyze", f, "--json")[1])
    assert r["spectrum"] == [0] and r["carrier_rank"] == 0


def test_analyze_full_rounds_to_six_digits(tmp_path):
    f = write(tmp_path, "a.json", matrix(2, [1 / 3, 0, 0, 2]))
    r = json.loads(run("analyze", f, "--json", "--full")[1])
    assert r["matrices"]["element"][0][0] == 0.333333
    assert len(r["matrices"]["p"]) == 2


def test_analyze_setfn(tmp_path):
    f = write(tmp_path, "s.json", {"model": "setfn", "universe": 3, "field": [[0, 1]], "values": [2, 2, -1]})
    r = json.loads(run("analyze", f, "--json")[1])
    assert r["spectrum"] == [-1, 2] and r["carrier_rank"] == 3


def test_json_output_is_stable(tmp_path):
    f = write(tmp_path, "d.json", matrix(3, [2, 1, 0, 1, 2, 0, 0, 0, -1]))
    _, first = run("analyze", f, "--json")
    _, second = run("analyze", f, "--json")
    assert first == second
    assert json.dumps(json.loads(first), indent=2, sort_keys=True) + "\n" == first


def test_lattice_meet_join(tmp_path):
    p = write(tmp_path, "p.json", matrix(2, [1, 0, 0, 0]))
    q = write(tmp_path, "q.json", matrix(2, [0.5, 0.5, 0.5, 0.5]))
    meet = json.loads(run("lattice", p, q, "--op", "meet", "--json")[1])
    join = json.loads(run("lattice", p, q, "--op", "join", "--json")[1])
    assert meet["rank"] == 0 and join["rank"] == 2
    assert meet["sasaki_identity_residual"] <= 1e-9
    same = json.loads(run("lattice", p, p, "--op", "meet", "--json")[1])
    assert same["result"] == [[1, 0], [0, 0]]


def test_lattice_compatible(tmp_path):
    p = write(tmp_path, "p.json", matrix(2, [1, 0, 0, 0]))
    q = write(tmp_path, "q.json", matrix(2, [0, 0, 0, 1]))
    code, text = run("lattice", p, q, "--op", "compatible")
    assert code == EXIT_OK and "true" in text


def test_exit_not_projection(tmp_path):
    p = write(tmp_path, "p.json", matrix(2, [1, 0, 0, 2]))
    assert run("lattice", p, p, "--op", "meet")[0] == EXIT_NOT_PROJECTION


def test_exit_not_symmetric(tmp_path):
    f = write(tmp_path, "n.json", matrix(2, [1, 2, 0, 1]))
    assert run("analyze", f)[0] == EXIT_NOT_SYMMETRIC


@pytest.mark.parametrize("doc", [
    "{not json",
    '{"model": "matrix", "dim": 2, "data": [1, 0, 0]}',
    '{"model": "tensor"}',
    '{"model": "matrix", "data": [1]}',
    '{"model": "setfn", "universe": 3, "field": [[0, 1]], "values": [1, 2, 3]}',
    '{"model": "setfn", "universe": 2, "field": [[5]], "values": [1, 1]}',
])
def test_exit_bad_input(tmp_path, doc, capsys):
    f = write(tmp_path, "bad.json", doc)
    assert run("analyze", f)[0] == EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_exit_missing_file():
    assert run("analyze", "/nonexistent/x.json")[0] == EXIT_USAGE


def test_exit_bad_flags():
    assert run("audit", "--model", "matrix")[0] == EXIT_USAGE
    assert run("audit", "--model", "matrix", "--dim", "2", "--trials", "0", "--seed", "1")[0] == EXIT_USAGE
    assert run("audit", "--model", "matrix", "--dim", "2", "--trials", "1", "--seed", "1",
               "--inject-fault", "nope")[0] == EXIT_USAGE


def test_audit_setfn_example():
    code, text = run("audit", "--model", "setfn", "--dim", "5", "--trials", "100", "--seed", "7")
    assert code == EXIT_OK and "failures=0" in text


def test_audit_json_round_trip():
    from synaptica.audit import AuditReport

    code, text = run("audit", "--model", "matrix", "--dim", "2,3", "--trials", "3", "--seed", "4", "--json")
    assert code == EXIT_OK
    assert AuditReport.from_json(text).to_json() == text
    assert run("audit", "--model", "matrix", "--dim", "2", "3", "--trials", "3", "--seed", "4", "--json")[1] == text


def test_audit_fault_names_failing_law(capsys):
    code, _ = run("audit", "--model", "matrix", "--dim", "3", "--trials", "5", "--seed", "0",
                  "--inject-fault", "meet-product", "--shrink")
    assert code == EXIT_LAW_FAILURE
    assert "lattice.orthomodular" in capsys.readouterr().err


def test_tol_scale_ignored_by_audit(monkeypatch):
    monkeypatch.setenv("SYNAPTICA_TOL_SCALE", "1e12")
    args = ["audit", "--model", "matrix", "--dim", "2", "--trials", "2", "--seed", "3", "--json"]
    plain = run(*args)[1]
    monkeypatch.delenv("SYNAPTICA_TOL_SCALE")
    assert run(*args)[1] == plain
    monkeypatch.setenv("SYNAPTICA_TOL_SCALE", "1e7")
    assert run(*args, "--allow-tol-scale")[1] != plain
    monkeypatch.setenv("SYNAPTICA_TOL_SCALE", "bogus")
    assert run(*args, "--allow-tol-scale")[0] == EXIT_USAGE


def test_list_faults():
    code, text = run("audit", "--list-faults")
    assert code == EXIT_OK and len(text.strip().splitlines()) == 10


def test_module_entry_point(tmp_path):
    f = write(tmp_path, "i.json", matrix(1, [3]))
    proc = subprocess.run([sys.executable, "-m", "synaptica", "analyze", f, "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["U"] == 3
    assert proc.stderr == ""
