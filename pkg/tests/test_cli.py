"""End-to-end checks of the command-line front end and the result cache."""

import json
import os

import pytest

from klrlab.cache import ResultCache, default_cache_dir
from klrlab.cli import main


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    assert out.endswith("\n")
    return code, json.loads(out), err


def test_gt_enum_pinned(capsys):
    code, doc, _ = run_json(capsys, ["gt", "enum", "--partition", "2,1,0"])
    assert code == 0
    assert len(doc) == 8
    assert [[2, 1, 0], [2, 1], [2]] in doc


def test_branch_check_pinned(capsys):
    code, doc, _ = run_json(capsys, ["branch", "check", "--partition", "2,1,0"])
    assert code == 0
    assert doc == {"ok": True, "lhs": 8, "rhs": [2, 3, 1, 2]}


def test_cyc_compare_pinned(tmp_path, capsys):
    argv = [
        "cyc", "compare", "--partition", "1,0", "--seq", "1",
        "--cache-dir", str(tmp_path),
    ]
    code, doc, _ = run_json(capsys, argv)
    assert code == 0
    assert doc == {"gdim": [[0, 1]], "shapovalov": [[0, 1]], "ok": True}


def test_malformed_partition_exits_2(capsys):
    code, out, err = run(capsys, ["gt", "enum", "--partition", "2,x"])
    assert code == 2 and out == "" and "malformed partition" in err
    code, out, err = run(capsys, ["gt", "enum", "--partition", "1,2"])
    assert code == 2 and out == ""


def test_weights_schur(capsys):
    code, doc, _ = run_json(capsys, ["weights", "schur", "--rank", "2", "--degree", "2"])
    assert code == 0 and doc == [[2, 0], [1, 1], [0, 2]]
    code, doc, _ = run_json(
        capsys, ["weights", "schur", "--rank", "2", "--degree", "2", "--dominant"]
    )
    assert code == 0 and doc == [[2, 0], [1, 1]]


def element_file(tmp_path, name, rank, bottom, ops):
    doc = {
        "rank": rank,
        "terms": [
            {
                "coeff": 1,
                "word": {
                    "rank": rank,
                    "bottom": list(bottom),
                    "ops": [{"kind": k, "pos": p} for k, p in ops],
                },
            }
        ],
    }
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_klr_nf_kills_double_crossing(tmp_path, capsys):
    path = element_file(tmp_path, "el.json", 1, (1, 1), [("cross", 1), ("cross", 1)])
    code, doc, _ = run_json(capsys, ["klr", "nf", "--in", path])
    assert code == 0 and doc == {"rank": 1, "terms": []}


def test_klr_degree(tmp_path, capsys):
    path = element_file(tmp_path, "el.json", 2, (1, 2), [("dot", 1), ("cross", 1)])
    code, doc, _ = run_json(capsys, ["klr", "degree", "--in", path])
    assert code == 0
    assert doc == {"degrees": [3], "homogeneous": True, "degree": 3}


def test_klr_factor_roundtrip_flag(capsys):
    code, doc, _ = run_json(capsys, ["klr", "factor", "--seq", "1,3,2,3", "--blocks", "2"])
    assert code == 0 and doc["ok"] is True
    assert doc["rank"] == 3 and doc["blocks"] == 2
    assert doc["terms"]
    for term in doc["terms"]:
        xi = term["middle"]["xi"]
        assert xi == sorted(xi) and len(xi) == 2


def test_cyc_reduce_and_require_exact(tmp_path, capsys):
    path = element_file(tmp_path, "dot.json", 1, (1,), [("dot", 1)])
    code, doc, _ = run_json(capsys, ["cyc", "reduce", "--partition", "1,0", "--in", path])
    assert code == 0
    assert doc["element"] == {"rank": 1, "terms": []} and doc["status"] == "exact"
    path3 = element_file(tmp_path, "d3.json", 1, (1,), [("dot", 1)] * 3)
    code, doc, _ = run_json(
        capsys,
        [
            "cyc", "reduce", "--partition", "2,0", "--in", path3,
            "--deg-cap", "1", "--dot-cap", "1", "--require-exact",
        ],
    )
    assert code == 1 and doc["status"] == "capped"


def test_cyc_gdim_cache_roundtrip(tmp_path, capsys):
    argv = [
        "cyc", "gdim", "--partition", "2,0", "--seq", "1",
        "--cache-dir", str(tmp_path),
    ]
    code, out1, _ = run(capsys, argv)
    assert code == 0
    entries = list(tmp_path.iterdir())
    assert len(entries) == 1
    code, out2, _ = run(capsys, argv)
    assert code == 0 and out2 == out1
    doc = json.loads(out1)
    assert doc["gdim"] == [[0, 1], [2, 1]] and doc["status"] == "exact"
    # tampering with the stored payload must be detected and recomputed
    record = json.loads(entries[0].read_text())
    record["payload"]["gdim"] = [[0, 999]]
    entries[0].write_text(json.dumps(record))
    code, out3, _ = run(capsys, argv)
    assert code == 0 and out3 == out1


def test_cyc_sl2_vanish(capsys):
    code, doc, _ = run_json(capsys, ["cyc", "sl2-vanish", "--partition", "2,0"])
    assert code == 0 and doc == {"lambda1": 2, "ok": True}
    code, out, err = run(capsys, ["cyc", "sl2-vanish", "--partition", "2,1,0"])
    assert code == 2 and out == ""


def test_cyc_weyl_vanish(capsys):
    code, doc, _ = run_json(
        capsys, ["cyc", "weyl-vanish", "--partition", "1,0", "--seq", "1,1"]
    )
    assert code == 0
    assert doc == {"lambda": [1, 0], "idempotent": [1, 1], "ok": True}


def test_cyc_gt_ortho(tmp_path, capsys):
    code, doc, _ = run_json(
        capsys,
        ["cyc", "gt-ortho", "--partition", "1,0", "--cache-dir", str(tmp_path)],
    )
    assert code == 0
    assert doc == {"lambda": [1, 0], "patterns": 2, "ok": True}


def test_oracle_gram(tmp_path, capsys):
    argv = [
        "oracle", "gram", "--partition", "2,0", "--beta", "2",
        "--cache-dir", str(tmp_path),
    ]
    code, doc, _ = run_json(capsys, argv)
    assert code == 0
    assert doc["labels"] == [[1, 1]]
    assert doc["entries"][0][0]["num"] == [[-2, 1], [0, 2], [2, 1]]
    code2, out2, _ = run(capsys, argv)
    assert code2 == 0 and json.loads(out2) == doc


def test_csv_output(tmp_path, capsys):
    argv = [
        "cyc", "compare", "--partition", "1,0", "--seq", "1",
        "--cache-dir", str(tmp_path), "--format", "csv",
    ]
    code, out, _ = run(capsys, argv)
    assert code == 0
    assert out.splitlines() == ['gdim,"[[0, 1]]"', 'shapovalov,"[[0, 1]]"', "ok,true"]


def test_out_file(tmp_path, capsys):
    target = tmp_path / "patterns.json"
    code, out, _ = run(
        capsys, ["gt", "enum", "--partition", "1,0", "--out", str(target)]
    )
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.endswith("\n") and len(json.loads(text)) == 2


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gt", "bogus"])
    assert info.value.code == 2


def test_cache_dir_resolution(monkeypatch, tmp_path):
    monkeypatch.setenv("KLRLAB_CACHE", str(tmp_path / "fromenv"))
    assert default_cache_dir() == str(tmp_path / "fromenv")
    assert ResultCache().directory == str(tmp_path / "fromenv")
    assert ResultCache(str(tmp_path / "explicit")).directory == str(tmp_path / "explicit")
    monkeypatch.delenv("KLRLAB_CACHE")
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path / "xdg"))
    assert default_cache_dir() == os.path.join(str(tmp_path / "xdg"), "klrlab")


def test_cache_fetch_and_corruption(tmp_path):
    cache = ResultCache(str(tmp_path))
    calls = []

    def compute():
        calls.append(1)
        return {"value": 7}

    assert cache.fetch(["k", 1], compute) == {"value": 7}
    assert cache.fetch(["k", 1], compute) == {"value": 7}
    assert len(calls) == 1
    path = cache.path_for(["k", 1])
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("{not json")
    assert cache.fetch(["k", 1], compute) == {"value": 7}
    assert len(calls) == 2
