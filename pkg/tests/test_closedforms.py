import pytest

from torlink.closedforms import (
    appendix_trace_checks,
    cup_trace_variants,
    reduced_trace_checks,
)
from torlink.algebra import ideal_generator
from torlink.trace import trace


@pytest.mark.parametrize("d", [1, 2])
def test_reduced_trace_checks(d):
    checks = reduced_trace_checks(d)
    failed = [c.name for c in checks if not c.passed]
    assert not failed, failed


def test_variant_resolution_at_d1():
    # the engine's own trace decides between the two coefficient variants
    engine = trace(ideal_generator("r12", 3, 1))
    variants = cup_trace_variants(1, 0)
    assert engine == variants["consistent"]
    assert engine != variants["alternate"]


@pytest.mark.parametrize("d", [1, 2])
def test_appendix_components(d):
    checks = appendix_trace_checks(d)
    failed = [c.name for c in checks if not c.passed]
    assert not failed, failed
