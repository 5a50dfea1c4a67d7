from dataclasses import dataclass
from pathlib import Path

from django.conf import settings

from bounds import Method
from cli.serializers import RunConfigSerializer
from gauges import GaugeKind
from numerics import QuadratureSpec


class ConfigError(ValueError):
    """Command options failed validation."""


@dataclass(frozen=True)
class RunConfig:
    dimensions: tuple[int, ...]
    method: Method
    gauge: GaugeKind | None
    body: str
    output_format: str
    output: Path | None
    phi_points: int | None
    k_max: int | None
    quadrature: QuadratureSpec
    grid_points: int
    refine_tol: float
    root_tolerance: float
    workers: int
    cache_path: Path | None
    ball_table_path: Path | None

    @property
    def label(self) -> str:
        return f"{self.method.value}/{self.gauge.value}" if self.gauge else self.method.value


def option_defaults() -> dict:
    """Command-line defaults, read from settings at call time."""
    return {
        "panel_count": settings.QUADRATURE["PANEL_COUNT"],
        "nodes_per_panel": settings.QUADRATURE["NODES_PER_PANEL"],
        "cutoff_tolerance": settings.QUADRATURE["UPPER_CUTOFF_TOLERANCE"],
        "grid_points": settings.MAXIMIZER["GRID_POINTS"],
        "refine_tol": settings.MAXIMIZER["REFINE_TOL"],
        "workers": settings.WORKERS,
    }


def default_cache_path() -> Path:
    return Path(settings.GAMMA_CACHE_DIR) / settings.GAMMA_CACHE_FILE


def run_config_from_options(options: dict) -> RunConfig:
    """Validate raw command options into a RunConfig; raises ConfigError."""
    data = {**option_defaults(), **{key: value for key, value in options.items() if value is not None}}
    if data.get("ball_table") is None and Path(settings.BALL_TABLE_PATH).exists():
        data["ball_table"] = str(settings.BALL_TABLE_PATH)
    if not data.pop("no_cache", False):
        data.setdefault("cache_path", str(default_cache_path()))

    serializer = RunConfigSerializer(data=data)
    if not serializer.is_valid():
        raise ConfigError(_flatten_errors(serializer.errors))
    attrs = serializer.validated_data

    quadrature = QuadratureSpec(
        panel_count=attrs["panel_count"],
        nodes_per_panel=attrs["nodes_per_panel"],
        upper_cutoff_tolerance=attrs["cutoff_tolerance"],
        convergence_tolerance=settings.QUADRATURE["CONVERGENCE_TOLERANCE"],
        max_doublings=settings.QUADRATURE["MAX_DOUBLINGS"],
    )
    return RunConfig(
        dimensions=tuple(attrs["n"]),
        method=Method(attrs["method"]),
        gauge=GaugeKind(attrs["gauge"]) if attrs.get("gauge") else None,
        body=attrs["body"],
        output_format=attrs["format"],
        output=Path(attrs["output"]) if attrs.get("output") else None,
        phi_points=attrs.get("phi_points"),
        k_max=attrs.get("k_max"),
        quadrature=quadrature,
        grid_points=attrs["grid_points"],
        refine_tol=attrs["refine_tol"],
        root_tolerance=settings.JACOBI_ROOT_TOLERANCE,
        workers=attrs["workers"],
        cache_path=Path(attrs["cache_path"]) if attrs.get("cache_path") else None,
        ball_table_path=Path(attrs["ball_table"]) if attrs.get("ball_table") else None,
    )


def _flatten_errors(errors) -> str:
    messages = []
    for field, details in errors.items():
        for detail in details if isinstance(details, list) else [details]:
            messages.append(str(detail) if field == "non_field_errors" else f"{field}: {detail}")
    return "; ".join(messages)
