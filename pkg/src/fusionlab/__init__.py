"""Fusion rings, cp-multipliers and representations of rigid C*-tensor categories.

The Temperley-Lieb-Jones A_infinity ring gets the most complete treatment:
admissibility of multipliers, Plancherel orthogonality, universal and reduced
norms, and an amenability check through truncated regular representations.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    EvaluationError,
    FusionError,
    LabelError,
    NumericalError,
    ParameterError,
    RingMismatchError,
    ValidationError,
)
from .core import FusionElement, FusionOutcome, FusionRing, check_invariants, is_exact  # noqa: E402
from .chebyshev import V_coefficients, chebyshev_V, chebyshev_V_all, chebyshev_V_closed  # noqa: E402
from .builders import *  # noqa: E402,F401,F403
from .builders import __all__ as _builders_all  # noqa: E402
from .sun import SUnRing, build_sun, grading_of_sun, psu_kernel, quantum_integer  # noqa: E402
from .littlewood import lr_coefficient, lr_products  # noqa: E402
from .multipliers import *  # noqa: E402,F401,F403
from .multipliers import __all__ as _mult_all  # noqa: E402
from .tlj import *  # noqa: E402,F401,F403
from .tlj import __all__ as _tlj_all  # noqa: E402
from .spectral import *  # noqa: E402,F401,F403
from .spectral import __all__ as _spectral_all  # noqa: E402
from .io import parse_multiplier_spec, parse_ring_spec, ring_spec_to_json  # noqa: E402
from .cli import run_cli  # noqa: E402

__all__ = sorted(
    set(_builders_all)
    | set(_mult_all)
    | set(_tlj_all)
    | set(_spectral_all)
    | {
        "__version__",
        "EvaluationError",
        "FusionError",
        "LabelError",
        "NumericalError",
        "ParameterError",
        "RingMismatchError",
        "ValidationError",
        "FusionElement",
        "FusionOutcome",
        "FusionRing",
        "check_invariants",
        "is_exact",
        "V_coefficients",
        "chebyshev_V",
        "chebyshev_V_all",
        "chebyshev_V_closed",
        "SUnRing",
        "build_sun",
        "grading_of_sun",
        "psu_kernel",
        "quantum_integer",
        "lr_coefficient",
        "lr_products",
        "parse_multiplier_spec",
        "parse_ring_spec",
        "ring_spec_to_json",
        "run_cli",
    }
)
