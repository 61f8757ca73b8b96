"""End-to-end CLI behaviour: exit codes, JSONL records, stream separation."""

import io
import json

import pytest

from peelbound.cli import main
from peelbound.graphio import loads_plane_graph


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def stdout_records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def write_graph(capsys, tmp_path, *argv):
    path = tmp_path / "graph.json"
    code, _, _ = run(capsys, "generate", *argv, "--out", str(path))
    assert code == 0
    return str(path)


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def test_generate_to_stdout(capsys):
    code, out, err = run(capsys, "generate", "nested", "--g", "3", "--k", "3")
    assert code == 0
    g = loads_plane_graph(out)
    assert g.n == 11 and g.meta["family"] == "nested"
    assert "generate nested" in err
    assert out.count("\n") == 1  # single machine line on stdout


def test_generate_to_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    code, out, _ = run(capsys, "generate", "prism", "--k", "1", "--out", str(path))
    assert code == 0
    (record,) = stdout_records(out)
    assert record["command"] == "generate"
    assert record["n"] == 20 and record["out"] == str(path)
    with open(path, encoding="utf-8") as fh:
        assert loads_plane_graph(fh.read()).n == 20


def test_generate_round_trips_through_cli(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "lowerbound-h", "--g", "5", "--k", "3")
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    g = loads_plane_graph(text)
    from peelbound.graphio import dumps_plane_graph

    assert dumps_plane_graph(g) + "\n" == text


@pytest.mark.parametrize(
    "argv",
    [
        ("generate", "nested"),                  # missing --g/--k
        ("generate", "random"),                  # missing --n
        ("generate", "nested", "--g", "0", "--k", "3"),
        ("generate", "klein-bottle"),            # unknown family (usage error)
        (),                                      # no subcommand
        ("frobnicate",),
    ],
)
def test_bad_invocations_exit_one(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


# ---------------------------------------------------------------------------
# center
# ---------------------------------------------------------------------------


def test_center_record(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "random", "--n", "60", "--seed", "4")
    code, out, err = run(capsys, "center", path)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["command"] == "center" and record["n"] == 60
    cert = record["certificate"]
    assert {"s", "bound", "g", "case"} <= set(cert)
    assert record["peel_bound"] == cert["bound"] + 1
    assert "eccentricity <=" in err


def test_center_writes_certificate(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "nested", "--g", "3", "--k", "5")
    cert_path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "center", path, "--out", str(cert_path))
    assert code == 0
    with open(cert_path, encoding="utf-8") as fh:
        cert = json.load(fh)
    (record,) = stdout_records(out)
    assert cert == record["certificate"]


def test_center_connects_disconnected_input(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "nested", "--g", "4", "--k", "3")
    code, out, _ = run(capsys, "center", path)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["m"] > 12  # bridges were added before the pipeline ran


def test_center_infeasible_g_exits_two(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "nested", "--g", "3", "--k", "3")
    code, _, err = run(capsys, "center", path, "--g", "9")
    assert code == 2
    assert "infeasible" in err


def test_center_explicit_small_g(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "nested", "--g", "3", "--k", "3")
    code, out, _ = run(capsys, "center", path, "--g", "2")
    assert code == 0
    (record,) = stdout_records(out)
    assert record["certificate"]["g"] == 2


def test_center_diameter_mode(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "random", "--n", "40", "--seed", "1")
    code, out, _ = run(capsys, "center", path, "--mode", "diameter")
    assert code == 0
    (record,) = stdout_records(out)
    assert record["certificate"]["case"] == "diameter"


def test_center_bad_g_value(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "random", "--n", "20", "--seed", "0")
    code, _, err = run(capsys, "center", path, "--g", "many")
    assert code == 1
    assert "--g" in err


def test_center_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "center", str(tmp_path / "nope.json"))
    assert code == 1
    assert "cannot read graph" in err


def test_center_reads_stdin(capsys, tmp_path, monkeypatch):
    code, out, _ = run(capsys, "generate", "random", "--n", "30", "--seed", "2")
    assert code == 0
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out2, _ = run(capsys, "center", "-")
    assert code == 0
    (record,) = stdout_records(out2)
    assert record["n"] == 30


def test_center_rejects_garbage_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("{ not json"))
    code, _, err = run(capsys, "center", "-")
    assert code == 1
    assert "error" in err


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def test_oracle_record(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "nested", "--g", "3", "--k", "3")
    code, out, err = run(capsys, "oracle", path)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["fse_outerplanarity"] == 3
    assert record["fence_girth"] == 3
    assert record["radius"] <= record["diameter"]
    assert "fse=3" in err


def test_oracle_threads_deterministic(capsys, tmp_path):
    path = write_graph(capsys, tmp_path, "lowerbound-h", "--g", "4", "--k", "3")
    code1, out1, _ = run(capsys, "oracle", path, "--threads", "1")
    code2, out2, _ = run(capsys, "oracle", path, "--threads", "4")
    assert code1 == code2 == 0
    (a,), (b,) = stdout_records(out1), stdout_records(out2)
    a.pop("runtimes"), b.pop("runtimes")
    assert a.pop("threads") == 1 and b.pop("threads") == 4
    assert a == b


def test_oracle_threads_env_var(capsys, tmp_path, monkeypatch):
    path = write_graph(capsys, tmp_path, "nested", "--g", "3", "--k", "1")
    monkeypatch.setenv("PEELBOUND_THREADS", "3")
    code, out, _ = run(capsys, "oracle", path)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["threads"] == 3
    monkeypatch.setenv("PEELBOUND_THREADS", "zebra")
    code, out, err = run(capsys, "oracle", path)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["threads"] == 1
    assert "ignoring" in err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def certificate_for(capsys, tmp_path, *gen_args):
    graph = write_graph(capsys, tmp_path, *gen_args)
    cert = str(tmp_path / "cert.json")
    code, _, _ = run(capsys, "center", graph, "--out", cert)
    assert code == 0
    return graph, cert


def test_verify_roundtrip(capsys, tmp_path):
    graph, cert = certificate_for(capsys, tmp_path, "nested", "--g", "3", "--k", "5")
    code, out, err = run(capsys, "verify", graph, cert)
    assert code == 0
    (record,) = stdout_records(out)
    assert record["ok"] is True
    names = {c["name"] for c in record["checks"]}
    assert {"eccentricity", "peel-count", "family-fse-floor"} <= names
    assert "verify: OK" in err


def test_verify_prism_metric_annotations(capsys, tmp_path):
    graph, cert = certificate_for(capsys, tmp_path, "prism", "--k", "1")
    code, out, _ = run(capsys, "verify", graph, cert)
    assert code == 0
    (record,) = stdout_records(out)
    names = {c["name"] for c in record["checks"]}
    assert {"family-diameter", "family-radius"} <= names


def test_verify_forged_certificate_exits_three(capsys, tmp_path):
    graph, cert = certificate_for(capsys, tmp_path, "random", "--n", "50", "--seed", "6")
    with open(cert, encoding="utf-8") as fh:
        doc = json.load(fh)
    doc["bound"] = 0
    with open(cert, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
    code, out, err = run(capsys, "verify", graph, cert)
    assert code == 3
    (record,) = stdout_records(out)
    assert record["ok"] is False
    assert "FAILED" in err


def test_verify_unreadable_certificate(capsys, tmp_path):
    graph = write_graph(capsys, tmp_path, "random", "--n", "20", "--seed", "0")
    bad = tmp_path / "cert.json"
    bad.write_text("[1, 2, 3]")
    code, _, _ = run(capsys, "verify", graph, str(bad))
    assert code == 1
    bad.write_text("{ nope")
    code, _, _ = run(capsys, "verify", graph, str(bad))
    assert code == 1


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def test_bench_rows(capsys, tmp_path):
    out_path = tmp_path / "rows.json"
    code, out, err = run(
        capsys, "bench", "random", "--n", "50,100", "--seed", "3", "--out", str(out_path)
    )
    assert code == 0
    rows = stdout_records(out)
    assert [r["param"] for r in rows] == [50, 100]
    assert rows[0]["ratio"] is None and isinstance(rows[1]["ratio"], float)
    for r in rows:
        assert r["command"] == "bench" and r["per_vertex"] > 0
    with open(out_path, encoding="utf-8") as fh:
        assert json.load(fh) == rows
    assert "us/vertex" in err


def test_bench_nested_uses_k(capsys):
    code, out, _ = run(capsys, "bench", "nested", "--k", "3,5", "--g", "4")
    assert code == 0
    rows = stdout_records(out)
    assert [r["n"] for r in rows] == [14, 22]


def test_bench_without_sizes(capsys):
    code, _, err = run(capsys, "bench", "random")
    assert code == 1
    assert "--n" in err
