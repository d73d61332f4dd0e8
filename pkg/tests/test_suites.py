from torlink.suites import SUITES, run_suite


def test_suite_registry():
    assert set(SUITES) == {
        "lemmas",
        "tracetlb",
        "ftlb",
        "appendixA",
        "appendixB",
        "skein",
        "markov",
        "degeneration",
        "oracle",
    }


def test_tracetlb_suite_passes():
    checks = run_suite("tracetlb")
    assert checks and all(c.passed for c in checks)


def test_appendix_b_suite_passes():
    checks = run_suite("appendixB", d=2)
    assert checks and all(c.passed for c in checks)


def test_lemmas_suite_passes():
    checks = run_suite("lemmas")
    assert checks and all(c.passed for c in checks), [
        c.name for c in checks if not c.passed
    ]


def test_check_lines():
    checks = run_suite("appendixB", d=2)
    for c in checks:
        assert c.line().startswith("PASS")
