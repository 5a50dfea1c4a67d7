from bounds.maximize import golden_section_maximize, maximize_g
from bounds.methods import (
    blichfeldt_bound,
    fitted_rate,
    g_derivative_diagnostics,
    gauge_insphere_bound,
    insphere_bound,
    kl_asymptotic_phi_grid,
    kl_asymptotic_sweep,
    levenshtein_phi_grid,
    optimize_levenshtein_bound,
    volume_ratio_rate_base,
)
from bounds.profile import GProfile, build_g_profile
from bounds.reports import BoundReport, Diagnostics, Method, Rigor
from bounds.solids import REGULAR_SOLIDS, RegularSolid, solid_for
