"""Exact computations with complex orientations of even periodic theories.

Orientations are stored as Euler-class power series over the rationals; from
them the package builds Todd and multiplier series, characteristic classes of
split bundles on products of projective spaces, and orientation-dependent
pushforwards.
"""

from .errors import OrientRRError
from .orientation import (
    Orientation,
    OrientationPair,
    check_todd_condition,
    comparison,
    custom_orientation,
    preset_orientation,
    register_orientation,
    solve_todd_series,
)
from .projective import (
    CohElement,
    KElement,
    RingShape,
    SplitBundle,
    bott_class,
    chern_character,
    euler_class,
    multiplier_class,
    o_bundle,
    substitute,
    tangent_bundle,
    todd_class,
)
from .pushforward import (
    ProjectiveMap,
    PushforwardProblem,
    chi_hrr,
    chi_oracle,
    integrate,
    k_integrate,
    push,
    pushforward,
)
from .series import Series, default_order, exp_series, format_rat, parse_rat
from .suites import VerificationReport, verify_suite

__version__ = "0.1.0"
