from abc import ABC, abstractmethod
from dataclasses import dataclass, field

from bounds import BoundReport
from cli.config import RunConfig
from crosspoly import GammaCache, IntrinsicVolumes, intrinsic_volumes


@dataclass
class BaseRunner(ABC):
    config: RunConfig
    cache: GammaCache | None = None
    key: str = field(init=False)

    def intrinsic_volumes(self, n: int) -> IntrinsicVolumes:
        return intrinsic_volumes(n, self.config.quadrature, self.cache)

    @abstractmethod
    def run(self, n: int) -> BoundReport:
        pass
