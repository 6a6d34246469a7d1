"""mv2bool: compile multi-valued discrete networks into behaviourally
equivalent Boolean networks, and verify the result explicitly.

The pipeline: parse a guarded-rule network, pick an integer coding
(Summing, Van Ham or Gray, optionally level-permuted), infer one Boolean
formula per support variable, then certify the translation through
bisimulation checking, attractor comparison, stability preservation and
signed-interaction-graph recovery.
"""

from .coding import (
    Coding,
    admissible_region,
    build_support_map,
    decode,
    decode_state,
    domain,
    is_neighbourhood_preserving,
    marker_bits,
    markers,
    preimage,
    theorem_markers,
    zero_maps_to_zero,
)
from .core import (
    And,
    Atom,
    BState,
    BoolFormula,
    BooleanNetwork,
    Const,
    GuardExpr,
    MVNetwork,
    MVState,
    MVVariable,
    Mode,
    Not,
    Or,
    Rule,
    SupportMap,
    asynchronous_mode,
    eval_guard,
    is_unitary_stepwise,
    local_step,
    parallel_mode,
)
from .errors import (
    CapacityError,
    ConversionRefused,
    MarkerCoverageError,
    Mv2BoolError,
    ParseError,
    SignRecoveryError,
    SpecificationError,
)
from .minimize import minimize

__version__ = "0.1.0"
