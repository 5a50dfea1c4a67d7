from rest_framework import serializers

from bounds import Method, Rigor
from bounds.solids import REGULAR_SOLIDS
from crossbound.utils import format_log_scientific, parse_dimensions
from gauges import GaugeKind
from numerics import DomainError, Sign

OUTPUT_FORMATS = ["csv", "json", "svg"]
BODIES = ["cross-polytope", *REGULAR_SOLIDS]


class BallDensityRecordSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    delta_upper = serializers.FloatField()
    source = serializers.CharField(max_length=200)
    rigor = serializers.ChoiceField(choices=[rigor.value for rigor in Rigor])

    def validate_delta_upper(self, value):
        if not 0 < value <= 1:
            raise serializers.ValidationError(f"delta_upper must lie in (0, 1], got {value}")
        return value


class RunConfigSerializer(serializers.Serializer):
    n = serializers.CharField()
    method = serializers.ChoiceField(choices=[method.value for method in Method])
    gauge = serializers.ChoiceField(choices=[kind.value for kind in GaugeKind], required=False, allow_null=True)
    body = serializers.ChoiceField(choices=BODIES, default="cross-polytope")
    format = serializers.ChoiceField(choices=OUTPUT_FORMATS, default="csv")
    output = serializers.CharField(required=False, allow_null=True)
    phi_points = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    k_max = serializers.IntegerField(min_value=1, required=False, allow_null=True)
    panel_count = serializers.IntegerField(min_value=1)
    nodes_per_panel = serializers.IntegerField(min_value=1)
    cutoff_tolerance = serializers.FloatField(min_value=0.0, max_value=1.0)
    grid_points = serializers.IntegerField(min_value=64)
    refine_tol = serializers.FloatField(min_value=0.0)
    workers = serializers.IntegerField(min_value=1)
    cache_path = serializers.CharField(required=False, allow_null=True)
    ball_table = serializers.CharField(required=False, allow_null=True)

    def validate_n(self, value):
        try:
            dimensions = parse_dimensions(value)
        except DomainError as error:
            raise serializers.ValidationError(str(error))
        if dimensions[0] < 1:
            raise serializers.ValidationError(f"dimension must be ≥ 1, got {dimensions[0]}")
        return dimensions

    def validate(self, attrs):
        method = attrs["method"]
        if method == Method.BLICHFELDT:
            if not attrs.get("gauge"):
                raise serializers.ValidationError("the blichfeldt method needs --gauge")
            if attrs["body"] != "cross-polytope":
                raise serializers.ValidationError("the blichfeldt method is only available for the cross-polytope")
            if attrs["gauge"] == GaugeKind.LEVENSHTEIN and attrs["n"][0] < 3:
                raise serializers.ValidationError("the levenshtein gauge needs dimension ≥ 3")
        elif attrs.get("gauge"):
            raise serializers.ValidationError("--gauge only applies to the blichfeldt method")
        if method == Method.INSPHERE and not attrs.get("ball_table") and set(attrs["n"]) != {24}:
            raise serializers.ValidationError("the insphere method needs a ball table unless n = 24")
        if attrs["cutoff_tolerance"] in (0.0, 1.0) or attrs["refine_tol"] == 0.0:
            raise serializers.ValidationError("tolerances must be strictly positive and below 1")
        return attrs


class BoundReportSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    method = serializers.ChoiceField(choices=[method.value for method in Method])
    gauge = serializers.ChoiceField(choices=[kind.value for kind in GaugeKind], allow_null=True, required=False)
    phi = serializers.FloatField(allow_null=True, required=False)
    rho_star = serializers.FloatField(allow_null=True, required=False)
    bound = serializers.SerializerMethodField()
    log_bound = serializers.FloatField()
    rigor = serializers.ChoiceField(choices=[rigor.value for rigor in Rigor])
    g_prime0 = serializers.FloatField(allow_null=True, required=False)
    g_second0_sign = serializers.ChoiceField(choices=[sign.value for sign in Sign], allow_null=True, required=False)
    g_prime_rn_sign = serializers.ChoiceField(choices=[sign.value for sign in Sign], allow_null=True, required=False)

    def get_bound(self, report) -> str:
        return format_log_scientific(min(report.log_bound, 0.0))
