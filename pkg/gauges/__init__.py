from gauges.moments import (
    GaugeKind,
    GaugeMoments,
    b_coeff,
    ball_density_bound,
    f0_profile,
    fstar_profile,
    moments_f0,
    moments_fstar,
    moments_kl_asymptotic,
    moments_levenshtein,
)
from gauges.spherical_codes import (
    default_k_max,
    kl_M_bound,
    kl_M_choice,
    levenshtein_breakpoints,
)
