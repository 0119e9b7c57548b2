import json

import pytest

from srs.cli import main
from helpers import AS_TEXT, TWO_TEXT

UPSILON_TEXT = "generators: b e\norder: shortlex b < e\nrules:\n u1: b b -> b\n u2: e ->\n"
MAP_TEXT = "forward: a -> b\nbackward: b -> a\nbackward: e -> ε\n"


@pytest.fixture
def as_file(tmp_path):
    path = tmp_path / "as.pres"
    path.write_text(AS_TEXT, encoding="utf-8")
    return str(path)


@pytest.fixture
def two_file(tmp_path):
    path = tmp_path / "two.pres"
    path.write_text(TWO_TEXT, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_affirmative(as_file, capsys):
    code, out, _ = run(capsys, "check", as_file)
    assert code == 0
    assert out.splitlines()[0] == (
        "terminating: yes; locally confluent: yes; convergent: yes"
    )


def test_check_negative_exit_code(two_file, capsys):
    code, out, _ = run(capsys, "check", two_file)
    assert code == 1
    assert "convergent: no" in out


def test_check_brute_force_flag(two_file, capsys):
    code, out, _ = run(capsys, "check", two_file, "--max-len", "3")
    assert code == 1
    assert "witness aba" in out


def test_equal(as_file, capsys):
    code, out, _ = run(capsys, "equal", as_file, "a a a", "a")
    assert code == 0
    assert out.strip() == "equal (normal form: a)"
    code, out, _ = run(capsys, "equal", as_file, "ε", "a")
    assert code == 1
    assert out.strip() == "not equal (normal forms: ε, a)"


def test_equal_requires_convergence(two_file, capsys):
    code, _, err = run(capsys, "equal", two_file, "a", "b")
    assert code == 2
    assert "complete" in err


def test_normalize(as_file, capsys):
    code, out, _ = run(capsys, "normalize", as_file, "aaaa")
    assert code == 0
    assert out.splitlines() == ["normal form: a", "path: aaaa: +r@0 +r@0 +r@0"]


def test_normalize_refuses_unoriented(tmp_path, capsys):
    path = tmp_path / "grow.pres"
    path.write_text("generators: a\norder: shortlex a\nrules:\n r: a -> a a\n")
    code, _, err = run(capsys, "normalize", str(path), "a")
    assert code == 2
    assert "assume-terminating" in err
    code, _, err = run(
        capsys, "normalize", str(path), "a", "--assume-terminating", "--fuel", "5"
    )
    assert code == 2
    assert "normal form" in err


def test_critical_pairs(as_file, capsys):
    code, out, _ = run(capsys, "critical-pairs", as_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "overlap=aaa r1=r@0 r2=r@1 kind=proper-overlap joinable=true"
    assert lines[1] == "  loop: aaa: +r@0 -r@1"


def test_critical_pairs_negative(two_file, capsys):
    code, out, _ = run(capsys, "critical-pairs", two_file)
    assert code == 1
    assert "joinable=false" in out


def test_complete(two_file, capsys):
    code, out, _ = run(capsys, "complete", two_file)
    assert code == 0
    assert "kb1: a a -> a" in out
    assert "add kb1: a a -> a from overlap aba" in out
    assert "add kb2: b b -> b from overlap bab" in out


def test_pi_basis(as_file, capsys):
    code, out, _ = run(capsys, "pi-basis", as_file)
    assert code == 0
    assert out.splitlines() == [
        "b1: aaa: +r@0 -r@1",
        "pi generated by 1 element(s)",
    ]


def test_pi_basis_needs_convergence(two_file, capsys):
    code, _, err = run(capsys, "pi-basis", two_file)
    assert code == 2
    assert "complete" in err


def test_decompose(as_file, capsys):
    code, out, _ = run(capsys, "decompose", as_file, "aaa: +r@0 -r@1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "ε=+ ctx=(ε,ε) basis=b1 conj=aaa:"
    assert lines[1] == "pi = +1·((ε,ε), b1)"
    assert lines[2] == "footprint = +1·(ε, r, a) -1·(a, r, ε)"


def test_decompose_rejects_open_path(as_file, capsys):
    code, _, err = run(capsys, "decompose", as_file, "aaa: +r@0")
    assert code == 2
    assert "not closed" in err


def test_footprint_command(as_file, capsys):
    code, out, _ = run(capsys, "footprint", as_file, "aaa: +r@0 -r@1")
    assert code == 0
    assert out.strip() == "footprint = +1·(ε, r, a) -1·(a, r, ε)"


def test_transport(as_file, tmp_path, capsys):
    ups = tmp_path / "ups.pres"
    ups.write_text(UPSILON_TEXT, encoding="utf-8")
    mapping = tmp_path / "map.txt"
    mapping.write_text(MAP_TEXT, encoding="utf-8")
    code, out, _ = run(capsys, "transport", as_file, str(ups), str(mapping))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "translation: ok"
    assert "cmp_r: aa:" in lines
    assert "img_1: aaa: +r@0 -r@1" in lines
    assert lines[-1] == "transported generators: 2"


def test_json_mode_single_document(as_file, capsys):
    code, out, _ = run(capsys, "check", as_file, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["convergent"] is True
    code, out, _ = run(capsys, "decompose", as_file, "aaa: +r@0 -r@1", "--format", "json")
    payload = json.loads(out)
    assert payload["pi"] == [
        {"left": "ε", "right": "ε", "basis": "b1", "coefficient": 1}
    ]
    assert payload["verified"] is True


def test_repeat_runs_byte_identical(as_file, capsys):
    first = run(capsys, "pi-basis", as_file)
    second = run(capsys, "pi-basis", as_file)
    assert first == second


def test_transport_rejected_map(as_file, tmp_path, capsys):
    ups = tmp_path / "ups.pres"
    ups.write_text(UPSILON_TEXT, encoding="utf-8")
    mapping = tmp_path / "bad_map.txt"
    # a collapses to the unit, so the round trip for b cannot close
    mapping.write_text("forward: a -> ε\nbackward: b -> a\nbackward: e -> ε\n")
    code, out, _ = run(capsys, "transport", as_file, str(ups), str(mapping))
    assert code == 1
    assert "translation: rejected" in out


def test_usage_errors(as_file, capsys, tmp_path):
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2
    code, _, err = run(capsys, "check", str(tmp_path / "missing.pres"))
    assert code == 2
    broken = tmp_path / "broken.pres"
    broken.write_text("generators: a\nnot a section\n")
    code, _, err = run(capsys, "check", str(broken))
    assert code == 2
    assert "line 2" in err
