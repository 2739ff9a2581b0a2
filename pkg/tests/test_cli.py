import json

from soclelab.cli import main
from soclelab.gallery import make_row_diagonal_pair


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_gallery(tmp_path, capsys, name, *params):
    target = tmp_path / f"{name}.json"
    code, _ = run(capsys, "gallery", "make", name, *params, "-o", str(target))
    assert code == 0
    return target


def test_cover_check_pass(tmp_path, capsys):
    path = write_gallery(tmp_path, capsys, "cross", "m=2", "n=2", "q=2")
    code, out = run(capsys, "cover", "check", str(path), "--minimal")
    assert code == 0
    record = json.loads(out.strip().splitlines()[-1])
    assert record["verdict"] == "pass"
    assert record["details"]["dim_A"] == 3
    assert record["details"]["minimal"] is True
    assert str(path) in record["inputs"]


def test_cover_search_minimal(capsys):
    code, out = run(capsys, "cover", "search-minimal", "--m", "2", "--n", "2", "--q", "2")
    assert code == 0
    record = json.loads(out.strip().splitlines()[-1])
    assert record["details"]["complete"] is True
    assert all(len(t["basis"]) == 3 for t in record["details"]["minimal"])


def test_cover_search_budget_exit(capsys):
    code, out = run(capsys, "--budget", "5", "cover", "search-minimal", "--m", "2", "--n", "2", "--q", "2")
    assert code == 3
    record = json.loads(out.strip().splitlines()[-1])
    assert record["verdict"] == "budget"


def test_algebra_analyze(tmp_path, capsys):
    ring, _module = make_row_diagonal_pair()
    path = tmp_path / "ring.json"
    path.write_text(json.dumps(ring.to_json()))
    code, out = run(capsys, "algebra", "analyze", str(path), "--oracle")
    assert code == 0
    record = json.loads(out.strip().splitlines()[-1])
    d = record["details"]
    assert d["radical_dim"] == 3
    assert d["radical_oracle_agrees"] is True
    assert d["socle_bimodule_length"] == 3
    assert d["socle_graph"]["chi"] == 1
    assert d["improved_bound_rhs"] == 4


def test_algebra_analyze_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    code, out = run(capsys, "algebra", "analyze", str(bad))
    assert code == 2
    record = json.loads(out.strip().splitlines()[-1])
    assert record["verdict"] == "input-error"


def test_module_check_counterexample_exit(tmp_path, capsys):
    _ring, module = make_row_diagonal_pair()
    path = tmp_path / "module.json"
    path.write_text(json.dumps(module.to_json()))
    code, out = run(capsys, "module", "check", str(path))
    assert code == 1
    record = json.loads(out.strip().splitlines()[-1])
    assert record["verdict"] == "counterexample"
    ineq = record["details"]["inequality"]
    assert (ineq["lhs"], ineq["rhs"]) == (5, 4)


def test_module_check_with_algebra_ref(tmp_path, capsys):
    ring, module = make_row_diagonal_pair()
    (tmp_path / "ring.json").write_text(json.dumps(ring.to_json()))
    data = module.to_json(inline_algebra=False)
    data["algebra_ref"] = "ring.json"
    path = tmp_path / "module.json"
    path.write_text(json.dumps(data))
    code, _out = run(capsys, "module", "check", str(path))
    assert code == 1


def test_module_shrink(tmp_path, capsys):
    _ring, module = make_row_diagonal_pair()
    path = tmp_path / "module.json"
    path.write_text(json.dumps(module.to_json()))
    for mode in ("sub", "quot", "subfactor"):
        code, out = run(capsys, "module", "shrink", str(path), "--mode", mode)
        assert code == 0
        record = json.loads(out.strip().splitlines()[-1])
        assert record["details"]["top_length"] <= 3
        assert record["details"]["socle_length"] <= 3


def test_system_check_and_strong(tmp_path, capsys):
    path = write_gallery(tmp_path, capsys, "line-cover-system", "q=2", "d=2")
    code, out = run(capsys, "system", "check", str(path))
    assert code == 1
    record = json.loads(out.strip().splitlines()[-1])
    assert record["details"]["lhs"] == 5 and record["details"]["rhs"] == 4

    code2, out2 = run(capsys, "system", "strong", str(path), "--side", "left", "--N", "2", "--block", "0")
    assert code2 == 0
    code3, _ = run(capsys, "system", "strong", str(path), "--side", "left", "--N", "1", "--block", "0,0")
    assert code3 == 1
    # top-level alias
    code4, _ = run(capsys, "strong", str(path), "--side", "left", "--N", "2", "--block", "0")
    assert code4 == 0
    # fractional N parses
    code5, _ = run(capsys, "system", "strong", str(path), "--side", "left", "--N", "2/3", "--block", "0,0")
    assert code5 == 0
    # experimental recursive variant
    code6, _ = run(capsys, "system", "strong", str(path), "--side", "left", "--N", "1",
                   "--block", "0", "--relative")
    assert code6 == 0


def test_gallery_stub_exit(capsys):
    code, out = run(capsys, "gallery", "make", "number-field-example")
    assert code == 2
    record = json.loads(out.strip().splitlines()[-1])
    assert "out of scope" in record["details"]["error"].lower() or "finite-field" in record["details"]["error"]


def test_gallery_unknown_name(capsys):
    code, _ = run(capsys, "gallery", "make", "nonexistent")
    assert code == 2


def test_gallery_round_trips(tmp_path, capsys):
    # every gallery object must survive serialize -> parse -> serialize
    from soclelab.algebra import Algebra
    from soclelab.strongness import BilinearSystem
    from soclelab.tensorcover import TensorSubspace

    cases = [
        ("cross", ["m=2", "n=3", "q=3"], TensorSubspace),
        ("corner", ["m=3", "n=3", "t=2", "q=3"], TensorSubspace),
        ("triangular", ["n=3", "q=2", "scalar=1"], Algebra),
        ("matrix-algebra", ["n=2", "q=2"], Algebra),
        ("square-zero-extension", ["q=3", "g=2"], Algebra),
        ("twisted-truncated", ["p=2", "d=2", "n=2"], Algebra),
        ("line-cover-system", ["q=3", "d=2"], BilinearSystem),
    ]
    for name, params, cls in cases:
        path = write_gallery(tmp_path, capsys, name, *params)
        data = json.loads(path.read_text())
        again = cls.from_json(data)
        assert again.to_json() == data


def test_reports_are_byte_identical(tmp_path, capsys):
    path = write_gallery(tmp_path, capsys, "cross", "m=2", "n=2", "q=3")
    _, out1 = run(capsys, "cover", "check", str(path))
    _, out2 = run(capsys, "cover", "check", str(path))
    assert out1 == out2
    # and timing is attached only on request
    _, out3 = run(capsys, "--timing", "cover", "check", str(path))
    assert "timing" in json.loads(out3.strip().splitlines()[-1])
    assert "timing" not in json.loads(out1.strip().splitlines()[-1])


def test_reproduce_counterexample_target(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out = run(capsys, "reproduce", "paper-5.1", "--out", str(tmp_path / "bundle.json"))
    assert code == 1
    bundle = json.loads((tmp_path / "bundle.json").read_text())
    assert bundle["ok"] is True
    names = {item["name"] for item in bundle["items"]}
    assert "row-diagonal-module-inequality-fails" in names
    assert all(item["verdict"] == "counterexample" for item in bundle["items"])


def test_reproduce_unknown_target(capsys):
    code, _ = run(capsys, "reproduce", "paper-99")
    assert code == 2


def test_reproduce_deterministic_bundles(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "--seed", "11", "reproduce", "paper-5.1", "--out", "a.json")
    run(capsys, "--seed", "11", "reproduce", "paper-5.1", "--out", "b.json")
    assert (tmp_path / "a.json").read_text() == (tmp_path / "b.json").read_text()


def test_budget_env_var(monkeypatch):
    from soclelab.budget import default_budget

    monkeypatch.setenv("SOCLELAB_BUDGET", "1234")
    budget = default_budget()
    assert budget.max_enumeration == 1234
    assert budget.max_ring == 1234
    monkeypatch.delenv("SOCLELAB_BUDGET")
    assert default_budget().max_enumeration == 1_000_000
