"""torlink: exact invariants of links in the solid torus via framed type-B knot algebras.

The package computes, entirely in exact arithmetic:

* normal forms in the framed type-B algebras (signed permutations with
  framing vectors over Z/dZ) and the two-parameter classical algebra they
  collapse to at d = 1;
* the Markov trace on the tower of these algebras;
* the parameter conditions under which the trace kills the cup-element
  ideals, both by Fourier analysis on Z/dZ and by exhaustive basis checks;
* the derived link invariants for (framed) links in the solid torus, with
  their skein relations and Markov-move invariance verified exactly.
"""

from .algebra import AlgebraElement, enumerate_basis, from_word, ideal_generator, idempotent, unit
from .cyclic import CyclicFunction, SupportProfile, build_solution, verify_functional_system
from .invariants import BraidWord, InvariantSpec, evaluate, parse_braid, verify_markov, verify_skein
from .scalars import Scalar, parse_scalar
from .trace import TraceParams, annihilates_ideal, trace, trace_of_word

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "BraidWord",
    "CyclicFunction",
    "InvariantSpec",
    "Scalar",
    "SupportProfile",
    "TraceParams",
    "annihilates_ideal",
    "build_solution",
    "enumerate_basis",
    "evaluate",
    "from_word",
    "ideal_generator",
    "idempotent",
    "parse_braid",
    "parse_scalar",
    "trace",
    "trace_of_word",
    "unit",
    "verify_functional_system",
    "verify_markov",
    "verify_skein",
]
