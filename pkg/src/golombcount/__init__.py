"""Primitive-root tuple counts mod p: brute force, character sums, and the error term."""

__version__ = "0.1.0"

from .characters import (
    CharacterId,
    check_weil_bound,
    chi_eval,
    indicator,
    weil_sum,
)
from .counting import (
    CountBreakdown,
    TargetTuple,
    count_bruteforce,
    count_indicator,
    explicit_error_bound,
    main_term,
    sigma_split,
)
from .ntcore import (
    Factorization,
    PrimeContext,
    build_context,
    euler_phi,
    factorize,
    is_primitive_root,
    mobius,
)
