import subprocess
import sys


from maxint.cli import run_cli
from maxint.formats import decode_collection


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["gen", "--model", "zipf", "--n", "10", "--m", "10", "--seed", "1", "--out"]
    assert run_cli(args + [str(a)]) == 0
    assert run_cli(args + [str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    c = decode_collection(a.read_bytes())
    assert c.n == 10 and c.m == 10 and c.model == "zipf"


def test_gen_defaults(tmp_path):
    out = tmp_path / "h.txt"
    assert run_cli(["gen", "--model", "hier", "--k", "5", "--seed", "2", "--out", str(out)]) == 0
    c = decode_collection(out.read_bytes())
    assert c.n == 32 and c.k == 5 and c.m == 31 * 5
    out = tmp_path / "z.txt"
    assert run_cli(["gen", "--model", "zipf", "--n", "7", "--seed", "2", "--out", str(out)]) == 0
    assert decode_collection(out.read_bytes()).m == 7


def test_gen_missing_model_param(tmp_path):
    assert run_cli(["gen", "--model", "hier", "--seed", "2", "--out", str(tmp_path / "x")]) == 2


def _build(tmp_path, model_args):
    coll, idx = tmp_path / "c.txt", tmp_path / "i.txt"
    assert run_cli(["gen", *model_args, "--seed", "3", "--out", str(coll)]) == 0
    assert run_cli(["index", "--in", str(coll), "--out", str(idx)]) == 0
    return coll, idx


def _parse(out):
    return dict(line.split("=", 1) for line in out.strip().splitlines())


def test_query_from_file(tmp_path, capsys):
    coll, idx = _build(tmp_path, ["--model", "zipf", "--n", "200"])
    c = decode_collection(coll.read_bytes())
    qf = tmp_path / "q.txt"
    qf.write_text(" ".join(map(str, c.docs[17])) + "\n")
    capsys.readouterr()
    rc = run_cli(["query", "--collection", str(coll), "--index", str(idx), "--query-file", str(qf), "--oracle"])
    assert rc == 0
    out = _parse(capsys.readouterr().out)
    assert int(out["lcp"]) == len(c.docs[17]) == int(out["intersection"])
    assert int(out["oracle_intersection"]) == len(c.docs[17])
    assert int(out["sequence_comparisons"]) <= 8 + 2


def test_query_random(tmp_path, capsys):
    coll, idx = _build(tmp_path, ["--model", "hier", "--k", "6"])
    capsys.readouterr()
    args = ["query", "--collection", str(coll), "--index", str(idx), "--random", "--seed", "4"]
    assert run_cli(args) == 0
    first = capsys.readouterr().out
    assert run_cli(args) == 0
    assert capsys.readouterr().out == first
    out = _parse(first)
    assert int(out["lcp"]) <= int(out["containment_prefix"]) <= int(out["intersection"])


def test_query_unknown_flag(tmp_path):
    coll, idx = _build(tmp_path, ["--model", "zipf", "--n", "20"])
    rc = run_cli(["query", "--collection", str(coll), "--index", str(idx), "--random", "--q-min", "1"])
    assert rc == 2


def test_query_bad_index(tmp_path):
    coll, idx = _build(tmp_path, ["--model", "zipf", "--n", "20"])
    idx.write_bytes(b"garbage\n")
    assert run_cli(["query", "--collection", str(coll), "--index", str(idx), "--random"]) == 2


def test_curve_outputs(tmp_path, capsys):
    csv, svg = tmp_path / "c.csv", tmp_path / "c.svg"
    args = [
        "curve", "--model", "zipf", "--n", "500", "--trials", "40", "--q-min", "1",
        "--q-max", "9", "--seed", "8", "--csv", str(csv), "--svg", str(svg),
    ]
    assert run_cli(args) == 0
    rows = csv.read_text().splitlines()
    assert rows[0] == "q,p_any,p_prefix_containment,p_prefix_literal,trials"
    assert len(rows) == 10
    assert svg.read_bytes().startswith(b"<?xml")
    assert "q_any_star=" in capsys.readouterr().out


def test_curve_threads_env(tmp_path, monkeypatch):
    common = ["curve", "--model", "hier", "--k", "8", "--trials", "30", "--q-min", "1", "--q-max", "8", "--seed", "3", "--csv"]
    monkeypatch.delenv("MAXINT_THREADS", raising=False)
    assert run_cli(common + [str(tmp_path / "s.csv")]) == 0
    monkeypatch.setenv("MAXINT_THREADS", "8")
    assert run_cli(common + [str(tmp_path / "t.csv")]) == 0
    assert (tmp_path / "s.csv").read_bytes() == (tmp_path / "t.csv").read_bytes()


def test_curve_fresh_collections(tmp_path):
    csv = tmp_path / "f.csv"
    args = ["curve", "--model", "zipf", "--n", "100", "--trials", "10", "--q-min", "1", "--q-max", "5",
            "--fresh-collections", "--seed", "1", "--csv", str(csv)]
    assert run_cli(args) == 0
    assert csv.read_text().splitlines()[1].startswith("1,1.000000,1.000000,")


def test_verify_oracle_suite(capsys):
    assert run_cli(["verify", "--suite", "oracle"]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 3 and "FAIL" not in out


def test_usage_errors():
    assert run_cli([]) == 2
    assert run_cli(["frobnicate"]) == 2
    assert run_cli(["verify", "--suite", "nope"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.txt"
    proc = subprocess.run(
        [sys.executable, "-m", "maxint", "gen", "--model", "zipf", "--n", "5", "--seed", "1", "--out", str(out)],
        capture_output=True,
    )
    assert proc.returncode == 0 and out.exists()
    proc = subprocess.run([sys.executable, "-m", "maxint", "gen", "--bogus"], capture_output=True)
    assert proc.returncode == 2
