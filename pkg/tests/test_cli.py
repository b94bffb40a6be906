import json

import pytest

from gwo import (
    Cat1Morphism,
    cyclic_ring,
    ideal_inclusion_xmod,
    identity_xmod,
    pair_groupoid,
    quotient_xmod,
    standard_cat1,
)
from gwo.actions import conjugation_action
from gwo.cli import main
from gwo.fileformat import Subobject, read, serialize, write

Z4 = cyclic_ring(4)


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        write(path, obj)
        return str(path)

    return put


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# validate --------------------------------------------------------------------------


def test_validate_z4(files, capsys):
    code, out, _ = run(capsys, "validate", files("z4.json", Z4))
    assert code == 0
    assert out.startswith("validate: valid")


def test_validate_corrupted_table(files, tmp_path, capsys):
    path = files("z4.json", Z4)
    doc = json.loads(open(path).read())
    doc["add"][1][1] = 3
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    report = tmp_path / "report.json"
    code, out, _ = run(capsys, "validate", str(bad), "--report", str(report))
    assert code == 1
    assert "witness" in out
    rep = json.loads(report.read_text())
    assert rep["verdict"] == "invalid" and rep["exit_code"] == 1 and rep["witnesses"]


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    report = tmp_path / "report.json"
    code, _, err = run(capsys, "validate", str(bad), "--report", str(report))
    assert code == 2 and "syntax" in err
    rep = json.loads(report.read_text())
    assert rep["error"]["line"] == 1


def test_missing_file_and_bad_usage(tmp_path, capsys):
    assert run(capsys, "validate", str(tmp_path / "nope.json"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "validate")[0] == 2


def test_validate_other_kinds(files, capsys):
    for name, obj in (
        ("x.json", identity_xmod(Z4)),
        ("g.json", pair_groupoid(Z4)),
        ("c.json", standard_cat1("pair", cyclic_ring(2))),
        ("a.json", conjugation_action(Z4, [0, 2])),
        ("m.json", Cat1Morphism.identity(standard_cat1("pair", cyclic_ring(2)))),
    ):
        assert run(capsys, "validate", files(name, obj))[0] == 0, name


def test_validate_subobject_file(files, capsys):
    assert run(capsys, "validate", files("s.json", Subobject(Z4, {"elements": [0, 2]})))[0] == 0
    assert run(capsys, "validate", files("t.json", Subobject(Z4, {"elements": [0, 1]})))[0] == 1


# normality and quotients -----------------------------------------------------------------


def test_check_normal(files, capsys):
    z4 = files("z4.json", Z4)
    assert run(capsys, "check-normal", z4, "0,2")[0] == 0
    assert run(capsys, "check-normal", z4, "0,1")[0] == 1
    assert run(capsys, "check-normal", z4, "0,9")[0] == 2
    x = files("x.json", identity_xmod(Z4))
    assert run(capsys, "check-normal", x, "0,2/0,2")[0] == 0
    assert run(capsys, "check-normal", x, "0,2/0,1,2,3")[0] == 1
    assert run(capsys, "check-normal", x, "0,2")[0] == 2


def test_check_normal_on_groupoid_reports_both_tests(files, tmp_path, capsys):
    g = files("g.json", pair_groupoid(cyclic_ring(2)))
    report = tmp_path / "r.json"
    assert run(capsys, "check-normal", g, "0,1,2,3/0,1", "--report", str(report))[0] == 0
    details = json.loads(report.read_text())["details"]
    assert details["wide"] and details["higgins_normal"] and details["lemma_criterion"]
    # the units form a wide subgroupoid, but the diagonal is not an ideal of Z2 x Z2
    assert run(capsys, "check-normal", g, "0,3/0,1", "--report", str(report))[0] == 1
    details = json.loads(report.read_text())["details"]
    assert not details["internal_normal"]
    assert details["higgins_normal"] == details["lemma_criterion"]


def test_quotient_writes_a_structure(files, tmp_path, capsys):
    out = tmp_path / "q.json"
    code, text, _ = run(capsys, "quotient", files("z4.json", Z4), "0,2", "-o", str(out))
    assert code == 0 and "quotient computed" in text
    Q = read(out)
    assert Q.order == 2 and Q.labels == (0, 1)


def test_quotient_by_non_ideal(files, capsys):
    code, text, _ = run(capsys, "quotient", files("z4.json", Z4), "0,1")
    assert code == 1 and "cannot form quotient" in text


# functors ---------------------------------------------------------------------------


def test_conversions(files, tmp_path, capsys):
    x = files("x.json", ideal_inclusion_xmod(Z4, [0, 2]))
    for command, size in (("to-gpd", 8), ("to-cat1", 8)):
        out = tmp_path / f"{command}.json"
        assert run(capsys, command, x, "-o", str(out))[0] == 0
        obj = read(out)
        assert (obj.arrows.order if command == "to-gpd" else obj.G.order) == size
    out = tmp_path / "back.json"
    assert run(capsys, "to-xmod", str(tmp_path / "to-cat1.json"), "-o", str(out))[0] == 0
    assert read(out).A.order == 2
    assert run(capsys, "to-xmod", x)[0] == 2


def test_roundtrip_command(files, capsys):
    for name, obj in (
        ("x.json", identity_xmod(Z4)),
        ("g.json", pair_groupoid(cyclic_ring(2))),
        ("c.json", standard_cat1("pair", cyclic_ring(2))),
    ):
        code, text, _ = run(capsys, "roundtrip", files(name, obj))
        assert code == 0 and "verified" in text
    assert run(capsys, "roundtrip", files("z4.json", Z4))[0] == 2


def test_check_covering(files, tmp_path, capsys):
    X = ideal_inclusion_xmod(Z4, [0, 2])
    _, p = quotient_xmod(X, [0], [0, 2])
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "check-covering", files("p.json", p), "--report", str(report))
    assert code == 0
    assert json.loads(report.read_text())["transported"] == {"xmod->cat1": True, "xmod->gpd": True}
    _, q = quotient_xmod(identity_xmod(Z4), [0, 2], [0, 2])
    assert run(capsys, "check-covering", files("q.json", q))[0] == 1
    assert run(capsys, "check-covering", files("z4.json", Z4))[0] == 2


def test_semidirect(files, tmp_path, capsys):
    acts = conjugation_action(Z4, [0, 2])
    A, B, a = files("A.json", acts.acted), files("B.json", Z4), files("act.json", acts)
    out = tmp_path / "E.json"
    assert run(capsys, "semidirect", A, B, a, "-o", str(out))[0] == 0
    assert read(out).order == 8
    assert run(capsys, "semidirect", A, B, a, "--bound", "4")[0] == 2


# corpus ---------------------------------------------------------------------------------


def test_corpus_verify_small_rings(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, text, _ = run(capsys, "corpus-verify", "small-rings", "--bound", "16", "--report", str(report))
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["checks"] and all(c["ok"] for c in rep["checks"])
    assert "theorem instances checked" in text


def test_corpus_verify_errors(capsys):
    assert run(capsys, "corpus-verify", "nonsense")[0] == 2
    assert run(capsys, "corpus-verify", "tiny", "--bound", "100")[0] == 2


def test_report_is_canonical(files, tmp_path, capsys):
    r1, r2 = tmp_path / "a.json", tmp_path / "b.json"
    z4 = files("z4.json", Z4)
    run(capsys, "validate", z4, "--report", str(r1))
    run(capsys, "validate", z4, "--report", str(r2))
    assert r1.read_bytes() == r2.read_bytes()
    assert serialize(Z4) == open(z4, "rb").read()
