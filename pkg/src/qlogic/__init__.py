"""Quantum logics of formally real Jordan algebras.

Build an algebra from a spec string, work with its idempotents as a
quantum logic, and check conditional probabilities, transition-probability
symmetry and the absence of third-order interference numerically.

>>> from qlogic import Algebra, parse_algebra_spec
>>> A = Algebra(parse_algebra_spec("C(3) + spin(4)"))
>>> A.dim, A.rank
(14, 5)
"""

__version__ = "0.1.0"

from .division import Octonion, Quaternion, associator, conj, mul, norm, real_part
from .jordan import (
    Algebra,
    AlgebraDescriptor,
    AlgebraMismatchError,
    Albert,
    ComplexHerm,
    Element,
    QuatHerm,
    RealSym,
    SimpleFactorDescriptor,
    Spin,
    build_algebra,
    inner_product,
    jordan_product,
    natural_trace,
    power,
    triple_product,
)
from .spectral import SpectralDecomposition, SpectralError, eigenvalues, is_positive, spectral_decomposition
from .logic import (
    NotIdempotentError,
    NotOrthogonalError,
    Proposition,
    certify,
    decompose_to_atoms,
    is_idempotent,
    is_orthogonal,
    leq,
    line_proposition,
    ortho_sum,
    orthocomplement,
    random_atom,
    random_frame,
    random_proposition,
)
from .probability import (
    AtomicDecomposition,
    NullConditionError,
    State,
    U_map,
    box_product,
    condition,
    conditional_probability,
    decompose_state,
    evaluate,
    random_state,
    state_from_atoms,
    state_independence_check,
    trace_conditional_identity,
    trace_state,
    transition_probability,
)
from .interference import I2, I3, InterferenceReport, search_I2, sweep_I3
from .spin import SpinLogicState, base_state, perturb, verify_lift, verify_nonuniqueness, verify_state
from .parser import SpecError, SpecSemanticError, SpecSyntaxError, parse_algebra_spec
from .suite import SuiteConfig, SuiteReport, emit_report, run_postulate_suite
