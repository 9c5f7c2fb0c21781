import json

from planemb.cli import main


def test_generate_embed_verify_gap(tmp_path, capsys):
    inst = tmp_path / "k23.json"
    assert main(["generate", "--kind", "k23-golden", "-o", str(inst)]) == 0
    coords, report = tmp_path / "c.csv", tmp_path / "r.json"
    assert main(["embed", str(inst), "-o", str(coords), "--report", str(report)]) == 0
    assert coords.read_text().startswith("vertex,")
    rep = json.loads(report.read_text())
    assert rep["expansion"]["value"] <= 1
    capsys.readouterr()
    assert main(["verify", str(inst)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lambda"]["exact"] == "3/4"
    assert main(["gap", str(inst), "--eps", "1e-3"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lambda"]["exact"] == "3/4" and out["flow_cut_gap_lower"]["exact"] == "4/3"


def test_generate_params(tmp_path):
    out = tmp_path / "g.json"
    assert main(["generate", "--kind", "grid", "--params", "rows=3", "cols=5", "--seed", "2", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 15
    assert main(["generate", "--kind", "grid", "--params", '{"rows": 2, "cols": 2}', "-o", str(out)]) == 0
    assert json.loads(out.read_text())["n"] == 4


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert main(["verify", str(bad)]) == 5
    assert main(["gap", str(bad)]) == 5
    assert main(["generate", "--kind", "nope"]) == 5
    try:
        main(["frobnicate"])
    except SystemExit as exc:
        assert exc.code == 5
    # a violated cut condition
    inst = {"n": 4, "edges": [[0, 1, 1, 1], [1, 2, 1, 1], [2, 3, 1, 1], [3, 0, 1, 1]],
            "rotation": [[3, 0], [0, 1], [1, 2], [2, 3]], "demands": [[0, 2, 3, 1]]}
    p = tmp_path / "v.json"
    p.write_text(json.dumps(inst))
    assert main(["verify", str(p)]) == 2


def test_seed_env(tmp_path, monkeypatch, capsys):
    inst = tmp_path / "g.json"
    main(["generate", "--kind", "random-planar", "--params", "n=9", "-o", str(inst)])
    monkeypatch.setenv("PLANEMB_SEED", "7")
    assert main(["embed", str(inst), "-o", str(tmp_path / "c.csv")]) == 0
