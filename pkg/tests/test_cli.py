import io
import contextlib
import json

from torlink.cli import main
from torlink.scalars import parse_scalar


def run(argv):
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def test_invariant_text():
    code, out, _ = run(["invariant", "--kind", "vb", "--n", "1", "--braid", ""])
    assert code == 0
    assert out.strip() == "1"


def test_invariant_json_round_trip():
    code, out, _ = run(
        ["invariant", "--kind", "pb", "--n", "2", "--braid", "s1 r1", "--output", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["invariant"] == "pb"
    reparsed = parse_scalar(payload["value"])
    code2, out2, _ = run(
        ["invariant", "--kind", "pb", "--n", "2", "--braid", "s1 r1", "--output", "json"]
    )
    assert json.loads(out2)["value"] == payload["value"]
    assert reparsed == parse_scalar(json.loads(out2)["value"])


def test_trace_symbolic_and_bound():
    code, out, _ = run(["trace", "--n", "2", "--braid", "s1"])
    assert code == 0 and out.strip() == "z"
    code, out, _ = run(["trace", "--n", "2", "--braid", "s1", "--bind", "z=(-1)/(u)"])
    assert code == 0 and parse_scalar(out.strip()) == parse_scalar("(-1)/(u)")


def test_braid_errors_exit_2():
    code, _, err = run(["invariant", "--kind", "pb", "--n", "3", "--braid", "s9"])
    assert code == 2
    assert "out of range" in err


def test_usage_error_exit_2():
    code, _, _ = run(["verify", "--suite", "nope"])
    assert code == 2


def test_solve_single_profile():
    code, out, _ = run(
        ["solve", "--d", "2", "--profile", "sup1=0;sup2=1;y3=1", "--branch", "2", "--output", "json"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["d"] == 2
    assert payload["solutions"][0]["certified"] is True
    for text in payload["solutions"][0]["x"] + payload["solutions"][0]["y"]:
        parse_scalar(text)


def test_verify_suite_json_and_determinism():
    code, out, _ = run(["verify", "--suite", "appendixB", "--d", "2", "--output", "json"])
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    code2, out2, _ = run(["verify", "--suite", "appendixB", "--d", "2", "--output", "json"])
    assert out == out2


def test_verify_tracetlb_text_report():
    code, out, _ = run(["verify", "--suite", "tracetlb", "--d", "1"])
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith("PASS")]
    assert len(lines) >= 5
