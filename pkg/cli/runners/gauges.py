from dataclasses import dataclass, field

from django.conf import settings

from bounds import (
    BoundReport,
    blichfeldt_bound,
    kl_asymptotic_phi_grid,
    kl_asymptotic_sweep,
    levenshtein_phi_grid,
    optimize_levenshtein_bound,
)
from gauges import moments_f0, moments_fstar

from .base import BaseRunner


@dataclass
class F0Runner(BaseRunner):
    key: str = field(init=False, default="f0")

    def run(self, n: int) -> BoundReport:
        return blichfeldt_bound(
            n, self.intrinsic_volumes(n), moments_f0(n), self.config.grid_points, self.config.refine_tol
        )


@dataclass
class FStarRunner(BaseRunner):
    key: str = field(init=False, default="fstar")

    def run(self, n: int) -> BoundReport:
        return blichfeldt_bound(
            n, self.intrinsic_volumes(n), moments_fstar(n), self.config.grid_points, self.config.refine_tol
        )


@dataclass
class LevenshteinRunner(BaseRunner):
    key: str = field(init=False, default="levenshtein")

    def run(self, n: int) -> BoundReport:
        points = self.config.phi_points or settings.LEVENSHTEIN["PHI_POINTS"]
        return optimize_levenshtein_bound(
            n,
            self.intrinsic_volumes(n),
            levenshtein_phi_grid(points),
            k_max=self.config.k_max,
            grid_points=self.config.grid_points,
            refine_tol=self.config.refine_tol,
            root_tolerance=self.config.root_tolerance,
        )


@dataclass
class KLAsymptoticRunner(BaseRunner):
    key: str = field(init=False, default="kl-asymptotic")

    def run(self, n: int) -> BoundReport:
        points = self.config.phi_points or settings.KL_ASYMPTOTIC["PHI_POINTS"]
        (report,) = kl_asymptotic_sweep(
            [n],
            self.intrinsic_volumes,
            kl_asymptotic_phi_grid(points),
            self.config.grid_points,
            self.config.refine_tol,
        )
        return report
