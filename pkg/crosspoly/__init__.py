from crosspoly.angles import (
    IntrinsicVolumes,
    bh_gamma_asymptotic,
    intrinsic_volumes,
    log_outer_angle,
)
from crosspoly.cache import GammaCache
from crosspoly.geometry import inradius_xn, log_volume_xn
