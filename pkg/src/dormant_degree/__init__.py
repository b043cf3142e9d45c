"""Exact calculators for Quot-scheme, dormant-oper and Verlinde degrees."""

__version__ = "0.1.0"

from .cyclotomic import (  # noqa: F401
    BigRational,
    CycloElt,
    IntPoly,
    as_rational,
    cyclo_invert,
    cyclo_mul,
    cyclotomic_polynomial,
)
from .errors import (  # noqa: F401
    DormantDegreeError,
    FormulaDomainError,
    IrrationalityError,
    ParameterError,
    PrecisionError,
)
from .opers import (  # noqa: F401
    dormant_degree,
    frobenius_fiber_degree,
    oper_threshold,
    quot_scale_check,
    sl_oper_degree,
    subbundle_invariants,
)
from .verlinde import (  # noqa: F401
    check_verlinde_equivalence,
    verlinde_dim_fusion,
    verlinde_dim_trig,
)
from .vi import (  # noqa: F401
    derive_params,
    vi_degree,
    vi_degree_float,
    vi_sum_naive,
    vi_sum_reduced,
    vi_term,
)
