"""Horizontal curve interpolation in the first Heisenberg group.

Sampled curves are checked for compatibility with a horizontal C^m
interpolant, the interpolant is synthesized when compatible, and the
finite-subset constants behind the guarantee are measured.
"""

from .av import AVPair, RatioProfile, av_pair, av_profile, discrete_av_pair, discrete_av_profile
from .divdiff import (
    DecayProfile,
    SampledCurve,
    dd_profile,
    divided_difference,
    hermite_genocchi,
    newton_interp,
)
from .errors import HeisWhitError
from .heis import (
    CurveJets,
    HPoint,
    dilate,
    group_mul,
    horizontality_defect,
    inverse,
    leibniz_stack,
    pansu_dq,
)
from .horizontal import (
    FinitenessReport,
    HorizontalCurve,
    Verdict,
    check_c1,
    check_cm,
    check_cm_via_w,
    finiteness_check,
    gap_horizontalize,
    horizontal_jet_completion,
    synthesize,
)
from .poly import Interval, Poly, abs_integral, integrate, real_roots
from .profiles import Profile, ThresholdPolicy
from .whitney import (
    ModulusFn,
    PiecewiseCm,
    WhitneyField,
    extend,
    jets_from_samples,
    transition_poly,
    validate_field,
)

__version__ = "0.1.0"

__all__ = [
    "AVPair",
    "CurveJets",
    "DecayProfile",
    "FinitenessReport",
    "HPoint",
    "HeisWhitError",
    "HorizontalCurve",
    "Interval",
    "ModulusFn",
    "PiecewiseCm",
    "Poly",
    "Profile",
    "RatioProfile",
    "SampledCurve",
    "ThresholdPolicy",
    "Verdict",
    "WhitneyField",
    "abs_integral",
    "av_pair",
    "av_profile",
    "check_c1",
    "check_cm",
    "check_cm_via_w",
    "dd_profile",
    "dilate",
    "discrete_av_pair",
    "discrete_av_profile",
    "divided_difference",
    "extend",
    "finiteness_check",
    "gap_horizontalize",
    "group_mul",
    "hermite_genocchi",
    "horizontal_jet_completion",
    "horizontality_defect",
    "integrate",
    "inverse",
    "jets_from_samples",
    "leibniz_stack",
    "newton_interp",
    "pansu_dq",
    "real_roots",
    "synthesize",
    "transition_poly",
    "validate_field",
]
