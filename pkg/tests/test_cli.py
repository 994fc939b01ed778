import io


from wedgeheights.cli import build_parser, main, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_mu_porcelain():
    code, out, _ = call("mu", "--grade", "2", "--dim", "3", "--porcelain")
    assert code == 0
    d = kv(out)
    assert d["mu"] == "3" and d["witness"] == "e1-e2 e1-e3"


def test_mu_uses_cache(tmp_path):
    args = ("mu", "--grade", "2", "--dim", "4", "--porcelain", "--cache-dir", str(tmp_path))
    assert kv(call(*args)[1])["source"] == "search"
    assert kv(call(*args)[1])["source"] == "cache"
    assert kv(call(*args, "--no-cache")[1])["source"] == "search"


def test_mu_env_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("WEDGEHEIGHTS_CACHE_DIR", str(tmp_path))
    call("mu", "--grade", "1", "--dim", "3")
    assert (tmp_path / "mu_table.txt").exists()


def test_mu_budget_exit_1():
    code, _, err = call("mu", "--grade", "3", "--dim", "6", "--budget", "5")
    assert code == 1 and "budget" in err


def test_verify_equality_construction(data_dir):
    code, out, _ = call("verify", "--matrix", str(data_dir / "lemma_equality.txt"), "--theorem", "2.1", "--porcelain")
    d = kv(out)
    assert code == 0 and d["satisfied"] == "yes" and d["tight"] == "yes"


def test_verify_1_1_off_diagonal_is_precondition(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("1\n1\n0\n")
    assert call("verify", "--matrix", str(f), "--theorem", "1.1")[0] == 1


def test_partition(data_dir):
    code, out, _ = call("partition", "--system", str(data_dir / "pairs.txt"), "--porcelain")
    assert code == 0 and kv(out)["blocks"] == "{1,2,3} {4,5}"


def test_reduce_with_volumes(data_dir):
    code, out, _ = call("reduce", "--matrix", str(data_dir / "hexagon.txt"), "--report", "volumes", "--porcelain")
    d = kv(out)
    assert code == 0
    assert d["lambdas"] == "2 2"
    assert d["primal_volume"] == "3/4 (0.750000)"
    assert d["dual_volume"] == "12" and d["mahler_product"] == "9"


def test_volume_and_wedge(data_dir):
    _, out, _ = call("volume", "--matrix", str(data_dir / "hexagon.txt"), "--porcelain")
    assert kv(out)["dual_volume"] == "12"
    _, out, _ = call("wedge-norm", "--matrix", str(data_dir / "hexagon.txt"), "--porcelain")
    assert kv(out)["wedge_l1"] == "3"


def test_regulator_and_conjecture(data_dir):
    table = str(data_dir / "qsqrt2.txt")
    code, out, _ = call("regulator", "--table", table, "--basis", "eps", "--porcelain")
    assert code == 0 and kv(out)["regulator"].startswith("0.88137")
    code, out, _ = call("conjecture", "--table", table, "--units", "eps2", "--porcelain")
    assert code == 0 and kv(out)["ratio"] == "1.000000000"
    assert call("regulator", "--table", table, "--basis", "nope")[0] == 1


def test_porcelain_is_deterministic(data_dir):
    args = ("reduce", "--matrix", str(data_dir / "hexagon.txt"), "--porcelain", "--workers", "2")
    assert call(*args)[1] == call(*args)[1]
    assert call(*args)[1] == call(*args[:-2], "--workers", "1")[1]


def test_human_output_has_timing(data_dir):
    _, out, _ = call("volume", "--matrix", str(data_dir / "hexagon.txt"))
    assert out.startswith("wedgeheights volume") and "s)" in out


def test_usage_errors_never_exit_2(tmp_path):
    assert call("bogus")[0] == 1
    assert call("mu", "--grade", "0", "--dim", "3")[0] == 1
    assert call("volume", "--matrix", str(tmp_path / "missing.txt"))[0] == 1
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\nx 3\n")
    code, _, err = call("wedge-norm", "--matrix", str(bad))
    assert code == 1 and "line 2" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "mu" in capsys.readouterr().out


def test_parser_lists_all_commands():
    text = build_parser().format_help()
    for name in ["wedge-norm", "mu", "verify", "partition", "reduce", "volume", "regulator", "conjecture"]:
        assert name in text
