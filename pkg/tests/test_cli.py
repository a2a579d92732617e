from __future__ import annotations

import json
import subprocess
import sys

import pytest

from imols import (
    BlockDesign,
    emit_design,
    emit_square,
    emit_square_set,
    parse_design,
    parse_square_set,
    verify_block_design,
    verify_grouped_design,
    verify_square_set,
)
from imols.cli import main

from corpus import FRAMED_5, FRAMED_5_FLAWED, ag, fano, ipbd_13_4, single_block, td


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def _framed(rows):
    from imols import IncompleteSquare

    return emit_square(IncompleteSquare.one_based(rows, [1, 2]))


def test_verify_square_pass_and_fail(files, capsys):
    assert main(["verify", files("ok.txt", _framed(FRAMED_5)), "--kind", "square"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main(["verify", files("bad.txt", _framed(FRAMED_5_FLAWED))]) == 1
    out = capsys.readouterr().out
    assert "column 3 repeats symbol 4" in out


def test_verify_design_with_sizes(files, capsys):
    path = files("fano.json", emit_design(fano()))
    assert main(["verify", path, "--K", "3"]) == 0
    assert main(["verify", path, "--K", "4"]) == 1
    assert "not in K=[4]" in capsys.readouterr().out


def test_verify_resolution_is_checked(files, capsys):
    assert main(["verify", files("ag.json", emit_design(ag(3)))]) == 0
    assert capsys.readouterr().out.count("PASS") == 2


def test_verify_grouped_kind(files, capsys):
    grouped = files("td.json", emit_design(td(3, 3)))
    assert main(["verify", grouped, "--kind", "grouped"]) == 0
    assert main(["verify", files("fano.json", emit_design(fano())), "--kind", "grouped"]) == 1
    assert "expected a grouped design" in capsys.readouterr().err


def test_verify_idempotent_flag(files):
    from imols import idempotent_mols, mols_from_field

    assert main(["verify", files("i.txt", emit_square_set(idempotent_mols(5))), "--idempotent"]) == 0
    assert main(["verify", files("m.txt", emit_square_set(mols_from_field(5))), "--idempotent"]) == 1


def test_verify_malformed_file(files, capsys):
    assert main(["verify", files("x.json", '{"v": 3, "blocks": [[1, 9]]}')]) == 1
    assert "$.blocks[0][1]" in capsys.readouterr().err
    assert main(["verify", files("x.txt", "2 0\n\n1 3\n2 1\n")]) == 1
    assert main(["verify", "/nonexistent/file.txt"]) == 1


@pytest.mark.parametrize(
    "argv,code,needle",
    [
        (["pbd", "--v", "7", "--K", "3"], 0, "admissible"),
        (["pbd", "--v", "6", "--K", "3"], 1, "not admissible"),
        (["ipbd", "--v", "13", "--w", "4", "--K", "4"], 0, "v >= (k-1)w + 1 = 13"),
        (["ipbd", "--v", "10", "--w", "4", "--K", "4"], 1, "FAIL"),
        (["gdd", "--g", "3", "--u", "3", "--K", "3"], 0, "admissible"),
        (["igdd", "--g", "2", "--h", "1", "--u", "5", "--K", "4"], 1, "not admissible"),
        (["imols", "--t", "2", "--n", "6", "--m", "2"], 0, "n >= (t+1)m: 6 >= 6"),
        (["imols", "--t", "2", "--n", "5", "--m", "2"], 1, "FAIL"),
        (["rpbd", "--v", "9", "--k", "3"], 0, "admissible"),
        (["rpbd", "--v", "10", "--k", "3"], 1, "not admissible"),
    ],
)
def test_admissible(argv, code, needle, capsys):
    assert main(["admissible", *argv]) == code
    assert needle in capsys.readouterr().out


def test_admissible_missing_option_is_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["admissible", "pbd", "--v", "7"])
    assert e.value.code == 2
    assert "--K" in capsys.readouterr().err


def test_construct_mols(tmp_path):
    out = tmp_path / "m.txt"
    assert main(["construct", "mols", "--q", "4", "--t", "2", "--out", str(out)]) == 0
    ss = parse_square_set(out.read_text())
    assert ss.t == 2 and verify_square_set(ss).ok
    assert main(["construct", "mols", "--q", "4", "--t", "5"]) == 1
    assert main(["construct", "mols", "--q", "6"]) == 1


def test_construct_idempotent_to_stdout(capsys):
    assert main(["construct", "idempotent-mols", "--q", "5"]) == 0
    ss = parse_square_set(capsys.readouterr().out)
    assert ss.t == 3 and all(s.rows()[i][i] == i + 1 for s in ss.squares for i in range(5))


def test_construct_imols_from_ipbd(files, tmp_path):
    out = tmp_path / "sq.txt"
    argv = ["construct", "imols", "--ipbd", files("i.json", emit_design(ipbd_13_4())), "--t", "2", "--out", str(out)]
    assert main(argv) == 0
    ss = parse_square_set(out.read_text())
    assert (ss.t, ss.order, len(ss.hole)) == (2, 13, 4) and verify_square_set(ss).ok


def test_construct_from_resolvable_and_fill_hole(files, tmp_path):
    ipbd = tmp_path / "ipbd.json"
    assert main(["construct", "from-resolvable", "--design", files("ag.json", emit_design(ag(3))),
                 "--out", str(ipbd)]) == 0
    d = parse_design(ipbd.read_text())
    assert (d.v, d.w) == (13, 4)
    pbd = tmp_path / "pbd.json"
    assert main(["construct", "fill-hole", "--outer", str(ipbd), "--inner", files("b.json", emit_design(single_block(4))),
                 "--K", "4", "--out", str(pbd)]) == 0
    full = parse_design(pbd.read_text())
    assert len(full.blocks) == 13 and verify_block_design(full, {4}).ok


def test_construct_fill_gdd(files, tmp_path):
    out = tmp_path / "f.json"
    argv = ["construct", "fill-gdd", "--design", files("td.json", emit_design(td(4, 3))), "--group", "1",
            "--i", "1", "--filler", files("b.json", emit_design(single_block(4))), "--K", "4", "--out", str(out)]
    assert main(argv) == 0
    d = parse_design(out.read_text())
    assert (d.v, d.w) == (13, 4) and verify_block_design(d, {4}).ok


def test_construct_fill_igdd(files, tmp_path):
    from corpus import igdd_3_1_cubed

    out = tmp_path / "f.json"
    argv = ["construct", "fill-igdd", "--design", files("g.json", emit_design(igdd_3_1_cubed())), "--i", "0",
            "--filler", files("b.json", emit_design(BlockDesign(3, ((0, 1, 2),), frozenset({0})))),
            "--K", "3", "--out", str(out)]
    assert main(argv) == 0
    d = parse_design(out.read_text())
    assert (d.v, d.w) == (9, 3) and verify_block_design(d, {3}).ok


def test_construct_wilson(files, tmp_path):
    out = tmp_path / "w.json"
    td3 = files("td.json", emit_design(td(3, 3)))
    argv = ["construct", "wilson", "--master", td3, "--weights", "3", "--ingredient", td3, "--out", str(out)]
    assert main(argv) == 0
    g = parse_design(out.read_text())
    assert g.v == 27 and verify_grouped_design(g, {3}).ok
    assert main(["construct", "wilson", "--master", td3, "--weights", "3,3"]) == 1


def test_construct_truncate_and_replace(files, tmp_path):
    out = tmp_path / "t.json"
    assert main(["construct", "truncate", "--design", files("td.json", emit_design(td(4, 3))), "--group", "4",
                 "--keep", "1", "--out", str(out)]) == 0
    g = parse_design(out.read_text())
    assert g.v == 10 and verify_grouped_design(g).ok
    rep = tmp_path / "r.json"
    assert main(["construct", "replace-blocks", "--design", files("one.json", emit_design(single_block(7))),
                 "--filler", files("fano.json", emit_design(fano())), "--K", "3", "--out", str(rep)]) == 0
    assert parse_design(rep.read_text()) == fano()


def test_construct_failure_reports(files, capsys):
    argv = ["construct", "fill-hole", "--outer", files("i.json", emit_design(ipbd_13_4())),
            "--inner", files("f.json", emit_design(fano()))]
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_plan_certificate(capsys):
    assert main(["plan", "imols", "--t", "2", "--n", "100", "--m", "3"]) == 0
    plan = json.loads(capsys.readouterr().out)
    assert plan["status"] == "certificate-only"
    assert main(["plan", "imols", "--t", "2", "--n", "100", "--m", "3", "--materialize"]) == 1


def test_plan_materialize_writes_squares(tmp_path, capsys):
    assert main(["plan", "imols", "--t", "2", "--n", "13", "--m", "4", "--materialize",
                 "--out-dir", str(tmp_path)]) == 0
    plan = json.loads(capsys.readouterr().out)
    assert plan["status"] == "materialized"
    squares = sorted(tmp_path.glob("square-*.txt"))
    assert len(squares) == 2
    text = "\n".join(p.read_text() for p in squares)
    assert verify_square_set(parse_square_set(text)).ok


def test_plan_bound_violation(capsys):
    assert main(["plan", "imols", "--t", "2", "--n", "5", "--m", "2"]) == 1
    assert "no t-IMOLS" in capsys.readouterr().err


def test_search_imols(tmp_path, capsys):
    out, man = tmp_path / "s.txt", tmp_path / "m.json"
    argv = ["search", "imols", "--n", "6", "--m", "2", "--t", "2", "--budget", "1000000",
            "--out", str(out), "--manifest", str(man)]
    assert main(argv) == 0
    assert json.loads(man.read_text())["outcome"] == "found"
    assert verify_square_set(parse_square_set(out.read_text())).ok


def test_search_exhausted(capsys):
    assert main(["search", "imols", "--n", "3", "--m", "2", "--t", "1", "--budget", "100"]) == 1
    err = capsys.readouterr().err
    assert '"outcome": "exhausted-none"' in err


def test_search_design(capsys):
    assert main(["search", "design", "--v", "7", "--w", "0", "--K", "3", "--budget", "1000"]) == 0
    d = parse_design(capsys.readouterr().out)
    assert verify_block_design(d, {3}).ok


@pytest.mark.parametrize("budget", ["0", "-5", "x"])
def test_search_budget_validation(budget):
    with pytest.raises(SystemExit) as e:
        main(["search", "imols", "--n", "3", "--m", "0", "--t", "1", "--budget", budget])
    assert e.value.code == 2


def test_search_requires_budget():
    with pytest.raises(SystemExit) as e:
        main(["search", "imols", "--n", "3", "--m", "0", "--t", "1"])
    assert e.value.code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "fano.json"
    path.write_text(emit_design(fano()))
    proc = subprocess.run([sys.executable, "-m", "imols", "verify", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS" in proc.stdout
