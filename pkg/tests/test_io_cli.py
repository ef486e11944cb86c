import io
import json

import jsonschema
import pytest

from gapforge import certificates as ct
from gapforge import covering as cv
from gapforge import hypercover as hc
from gapforge import io as gio
from gapforge import primes as pr
from gapforge.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# --- artifacts ---------------------------------------------------------------

def test_cover_schema_round_trip():
    cs = cv.build_erdos_covering(23, 27)
    obj = gio.cover_to_json(cs, manifest={"command": "cover build"})
    jsonschema.validate(obj, gio.COVER_SCHEMA)
    back = gio.cover_from_json(json.loads(gio.dumps(obj)))
    assert back.classes == cs.classes and back.y == cs.y and back.complete
    bad = dict(obj, version=99)
    with pytest.raises(gio.ArtifactError):
        gio.cover_from_json(bad)


def test_cert_schema_rejects_bad_numbers():
    cert = ct.lift_certificate(ct.certify_gap(cv.build_erdos_covering(23, 27)), 1)
    obj = gio.cert_to_json(cert)
    jsonschema.validate(obj, gio.CERT_SCHEMA)
    assert isinstance(obj["m0"], str) and int(obj["m0"]) == cert.m0
    with pytest.raises(gio.ArtifactError):
        gio.cert_from_json(dict(obj, m0=cert.m0))
    with pytest.raises(gio.ArtifactError):
        gio.cert_from_json(dict(obj, witnesses=[[1, 2, 3]]))


def test_dumps_is_canonical():
    assert gio.dumps({"b": 1, "a": [1, 2]}) == gio.dumps({"a": [1, 2], "b": 1})
    assert gio.dumps({}).endswith("\n")


def test_emit_plotdata():
    text = gio.emit_plotdata(pr.record_gaps(100))
    lines = text.splitlines()
    assert lines[0] == "p_lo,gap,rankin_merit"
    assert lines[-1].startswith("89,8,")
    assert "\r" not in text
    text = gio.emit_plotdata([{"p_lo": 2, "p_hi": 3, "gap": 1, "merit": 1.4, "rankin_merit": 0.5}], "gaps")
    assert text.splitlines()[0] == "p_lo,p_hi,gap,merit,rankin_merit"
    with pytest.raises(gio.ArtifactError):
        gio.emit_plotdata([])


def test_manifest_has_no_timing():
    m = gio.RunManifest("gaps scan", {"limit": 10}, None, "0.1.0", {}, timing=1.5)
    assert "timing" not in m.as_dict()


# --- exit codes ----------------------------------------------------------------

def test_gaps_scan_csv():
    code, out, err = run("gaps", "scan", "--limit", "100", "--csv", "-")
    assert code == 0
    assert out.splitlines()[0] == "p_lo,p_hi,gap,merit,rankin_merit"
    assert out.splitlines()[-1].startswith("89,97,8,")
    assert "s]" in err  # timing goes to stderr only


def test_cert_pipeline_and_tampering(tmp_path):
    cover = tmp_path / "cover.json"
    certf = tmp_path / "cert.json"
    assert run("cover", "build", "--x", "23", "--y", "27", "--json", str(cover))[0] == 0
    assert run("cover", "verify", str(cover))[0] == 0
    assert run("cert", "make", str(cover), "--out", str(certf))[0] == 0
    code, out, _ = run("cert", "verify", str(certf))
    assert code == 0
    code, out, _ = run("cert", "brute", str(certf))
    assert code == 0 and "gap" in out
    obj = json.loads(certf.read_text())
    u, p = obj["witnesses"][4]
    obj["witnesses"][4] = [u, 10007]
    certf.write_text(json.dumps(obj))
    code, out, err = run("cert", "verify", str(certf))
    assert code == 1 and f"offset {u}" in out + err


def test_usage_errors(tmp_path):
    model = tmp_path / "m.json"
    model.write_text(json.dumps(hc.LayeredEdgeModel.uniform(4, [2], 0.1).to_json()))
    assert run("hyper", "nibble", "--model", str(model))[0] == 2
    assert run("hyper", "nibble", "--model", str(model), "--seed", "1")[0] == 0
    assert run("gaps", "scan")[0] == 2
    assert run("cert", "verify", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("cert", "verify", str(bad))[0] == 2
    assert run("cover", "build", "--x", "10", "--y", "10", "--random")[0] == 2
    assert run("tuple", "check", "0,2,4")[0] == 1
    assert run("tuple", "check", "0,2,6")[0] == 0


def test_kpower_and_special_commands():
    code, out, _ = run("kpower", "solvable", "--p", "5", "--K", "2", "--n", "2")
    assert code == 0 and ": solvable" in out
    assert "not solvable" in run("kpower", "solvable", "--p", "3", "--K", "2", "--n", "2")[1]
    code, out, _ = run("special", "beatty", "--alpha", "sqrt2", "--limit", "20", "--json", "-")
    assert code == 0
    assert [r["prime"] for r in json.loads(out)["primes"]] == [2, 5, 7, 11, 19]


def test_assumption_flag_recorded():
    code, out, _ = run("gaps", "scan", "--limit", "50", "--json", "-", "--assume-good-modulus")
    assert code == 0
    assert json.loads(out)["manifest"]["assumptions"] == {"good_modulus": True}


# --- determinism ---------------------------------------------------------------

SEEDED = [
    ("hyper", "sift", "--x-small", "200", "--trials", "300", "--seed", "4", "--json", "-"),
    ("sieve", "ikjk", "--k", "3", "--samples", "20000", "--seed", "5", "--json", "-"),
    ("hyper", "graph", "--N", "20", "--K", "2", "--c", "2", "--T", "4", "--seed", "6"),
    ("cover", "build", "--x", "30", "--y", "35", "--random", "--seed", "7", "--json", "-"),
]


@pytest.mark.parametrize("argv", SEEDED, ids=lambda a: " ".join(a[:2]))
def test_seeded_commands_byte_identical(argv):
    a = run(*argv)
    b = run(*argv, "--jobs", "3")
    assert a[0] == 0 and a[1] == b[1] and a[1]


def test_nibble_byte_identical_across_jobs(tmp_path):
    model = tmp_path / "m.json"
    model.write_text(json.dumps(hc.LayeredEdgeModel.uniform(6, [20, 20], 0.02).to_json()))
    outs = []
    for jobs in ("1", "1", "4"):
        f = tmp_path / f"n{len(outs)}.json"
        assert run("hyper", "nibble", "--model", str(model), "--trials", "2500", "--seed", "3",
                   "--jobs", jobs, "--json", str(f))[0] == 0
        outs.append(f.read_bytes())
    assert outs[0] == outs[1] == outs[2]
