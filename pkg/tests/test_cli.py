import json
import random
import subprocess
import sys

import pytest

from circmat.catalog import CatalogId, generate
from circmat.io import (
    ParseError,
    parse_graph,
    parse_matrix,
    serialize_graph,
    serialize_matrix,
)
from circmat.bigraph import bigraph_of
from circmat.matrix import BinMatrix


def run_cli(*args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "circmat.cli", *args],
        capture_output=True,
        text=True,
        **kw,
    )


def test_matrix_round_trip_dense_and_sparse():
    rng = random.Random(0)
    for _ in range(30):
        k, l = rng.randint(0, 6), rng.randint(1, 9)
        m = BinMatrix(l, [
            [c for c in range(1, l + 1) if rng.random() < 0.4] for _ in range(k)
        ])
        assert parse_matrix(serialize_matrix(m, sparse=False)) == m
        assert parse_matrix(serialize_matrix(m, sparse=True)) == m


def test_matrix_parse_errors():
    for text in ("", "2 x\n10\n01", "2 2\n10", "2 2\n10\n0", "1 2 sparse\n1: 3"):
        with pytest.raises(ParseError):
            parse_matrix(text)


def test_dense_whitespace_ignored():
    m = parse_matrix("2 3\n1 0 1\n0 1 1\n")
    assert m == BinMatrix.from_dense([[1, 0, 1], [0, 1, 1]])


def test_graph_round_trip():
    g = bigraph_of(generate(CatalogId("M_I", 3)))
    assert parse_graph(serialize_graph(g)) == g
    auto = parse_graph("a b\nb2 a\n")
    assert set(auto.side_x) | set(auto.side_y) == {"a", "b", "b2"}
    with pytest.raises(ParseError):
        parse_graph("X: a\nc d\n")  # X without Y


def test_exit_codes_and_json_schema(tmp_path):
    mat = tmp_path / "m.mat"
    mat.write_text(serialize_matrix(generate(CatalogId("M_I*", 3))))
    r = run_cli("recognize", "--property=dcirc", "--json", "--verify", str(mat))
    assert r.returncode == 1
    data = json.loads(r.stdout)
    assert sorted(data) == ["certificate", "property", "verdict", "witness"]
    assert data["verdict"] == "no" and data["witness"] is None
    assert data["certificate"]["id"]["family"] == "M_I*"
    assert data["certificate"]["rho"] == [1, 2, 3]

    mat.write_text(serialize_matrix(generate(CatalogId("M_I", 3))))
    r = run_cli("recognize", "--property=dcirc", "--json", "--verify", str(mat))
    assert r.returncode == 0
    data = json.loads(r.stdout)
    assert data["verdict"] == "yes" and data["witness"]["type"] == "order"
    assert data["certificate"] is None

    mat.write_text("garbage\n")
    r = run_cli("recognize", "--property=dcirc", str(mat))
    assert r.returncode == 2


def test_cco_json_on_trivial_matrix(tmp_path):
    mat = tmp_path / "one.mat"
    mat.write_text("1 1\n1\n")
    r = run_cli("recognize", "--property=cco", "--json", str(mat))
    assert r.returncode == 0
    assert json.loads(r.stdout)["witness"]["type"] == "biorder"


def test_bigraph_subcommand(tmp_path):
    gf = tmp_path / "claw.graph"
    gf.write_text(serialize_graph(bigraph_of(generate(CatalogId("Z1")))))
    r = run_cli("bigraph", "--class=pib", "--json", "--verify", str(gf))
    assert r.returncode == 1
    data = json.loads(r.stdout)
    assert data["certificate"]["kind"] == "bipartite-claw"

    # The claw fails pcab too: Z1 represents co_M_I*(3)^T, an F_CCO member.
    r = run_cli("bigraph", "--class=pcab", "--json", "--verify", str(gf))
    assert r.returncode == 1

    c6 = tmp_path / "c6.graph"
    c6.write_text("\n".join(f"v{i} v{(i + 1) % 6}" for i in range(6)) + "\n")
    r = run_cli("bigraph", "--class=pcab", "--json", "--verify", str(c6))
    assert r.returncode == 0
    assert json.loads(r.stdout)["witness"]["type"] == "bimodel"

    gf.write_text("a b\nb c\nc a\n")
    r = run_cli("bigraph", "--class=pib", str(gf))
    assert r.returncode == 2  # odd cycle


def test_verify_subcommand_round_trip(tmp_path):
    mat = tmp_path / "m.mat"
    mat.write_text(serialize_matrix(generate(CatalogId("Z5"))))
    r = run_cli("recognize", "--property=cco", "--json", str(mat))
    cert = tmp_path / "cert.json"
    cert.write_text(r.stdout)
    ok = run_cli("verify", str(cert), str(mat))
    assert ok.returncode == 0

    data = json.loads(r.stdout)
    data["certificate"]["rho"] = list(reversed(data["certificate"]["rho"]))
    cert.write_text(json.dumps(data))
    bad = run_cli("verify", str(cert), str(mat))
    assert bad.returncode == 3


def test_verify_subcommand_with_order_witness(tmp_path):
    mat = tmp_path / "m.mat"
    mat.write_text(serialize_matrix(generate(CatalogId("M_I", 4))))
    r = run_cli("recognize", "--property=circ1", "--json", str(mat))
    cert = tmp_path / "cert.json"
    cert.write_text(r.stdout)
    assert run_cli("verify", str(cert), str(mat)).returncode == 0


def test_gen_round_trip(tmp_path):
    for kind in ("random", "circular", "planted"):
        r = run_cli("gen", f"--kind={kind}", "--rows=8", "--cols=10", "--seed=3")
        assert r.returncode == 0
        m = parse_matrix(r.stdout)
        assert m.shape == (8, 10)
    # Planted instances are always D-circular.
    r = run_cli("gen", "--kind=planted", "--rows=9", "--cols=12", "--seed=5")
    mat = tmp_path / "p.mat"
    mat.write_text(r.stdout)
    assert run_cli("recognize", "--property=dcirc", "--verify", str(mat)).returncode == 0


def test_catalog_subcommand():
    r = run_cli("catalog", "--family=F_DCircR")
    assert r.returncode == 0
    assert len(r.stdout.strip().splitlines()) == 13
    r = run_cli("catalog", "--family=ForbRow", "--k=4", "--emit", "--json")
    assert r.returncode == 0
    lines = [json.loads(line) for line in r.stdout.strip().splitlines()]
    assert any(e["id"].get("a") == "0011" for e in lines)
    assert all("rows" in e for e in lines)


def test_batch_and_jobs(tmp_path):
    files = []
    for i, cid in enumerate((CatalogId("M_I", 3), CatalogId("Z2*"), CatalogId("M_I", 4))):
        p = tmp_path / f"f{i}.mat"
        p.write_text(serialize_matrix(generate(cid)))
        files.append(str(p))
    r = run_cli("recognize", "--property=dcirc", "--jobs=2", "--json", *files)
    assert r.returncode == 1  # one failure among the batch
    lines = [json.loads(line) for line in r.stdout.strip().splitlines()]
    assert [e["verdict"] for e in lines] == ["yes", "no", "yes"]


def test_oracle_subcommand(tmp_path):
    mat = tmp_path / "m.mat"
    mat.write_text(serialize_matrix(generate(CatalogId("Z1"))))
    assert run_cli("oracle", "--property=dint", str(mat)).returncode == 1
    assert run_cli("oracle", "--property=circ1", str(mat)).returncode == 0
