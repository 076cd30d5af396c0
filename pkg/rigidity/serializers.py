"""
Serializers for parameter tuples and survey records.

Rationals are rendered in reduced form ("1/8", "4/3", "2"); the field
order below is the canonical key and column order of every report.
"""

from fractions import Fraction

from rest_framework import serializers


class RationalField(serializers.Field):
    """Exact rational stored as Fraction, serialized as a reduced 'p/q' string."""

    default_error_messages = {
        'invalid': 'A rational number such as "3/4" or "2" is required.',
    }

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data).strip())
        except (ValueError, ZeroDivisionError):
            self.fail('invalid')


class ParamsSerializer(serializers.Serializer):
    """Read-only view of RigidityParams with its derived invariants."""
    k = serializers.IntegerField()
    M = serializers.IntegerField()
    d = serializers.ListField(child=serializers.IntegerField(), source='degrees.entries')
    xi = serializers.ListField(child=serializers.IntegerField(), source='multiplicities.entries')
    c_star = serializers.IntegerField()
    sing_type = serializers.ListField(child=serializers.IntegerField())
    mu = serializers.IntegerField()
    deg = serializers.IntegerField(source='deg_v')


class AdmissibleRecordSerializer(serializers.Serializer):
    """One survey row; field order is the CSV column order."""
    k = serializers.IntegerField(source='params.k')
    M = serializers.IntegerField(source='params.M')
    d = serializers.ListField(child=serializers.IntegerField(), source='params.degrees.entries')
    xi = serializers.ListField(child=serializers.IntegerField(), source='params.multiplicities.entries')
    c_star = serializers.IntegerField(source='params.c_star')
    mu = serializers.IntegerField(source='params.mu')
    deg = serializers.IntegerField(source='params.deg_v')
    mu_over_d = RationalField()
    m_total = serializers.IntegerField()
    final_bound = RationalField()
    eq1_lhs = serializers.IntegerField()
    eq1_rhs = serializers.IntegerField()
    eq2_ok = serializers.BooleanField()
    codim_ok = serializers.BooleanField(source='all_codim_ok')


class SurveySummarySerializer(serializers.Serializer):
    count = serializers.IntegerField()
    empty = serializers.BooleanField()
    max_ratio = RationalField(allow_null=True)
    max_ratio_witness = ParamsSerializer(allow_null=True)
    min_m = serializers.IntegerField(allow_null=True)
    min_m_witness = ParamsSerializer(allow_null=True)
    max_ratio_by_M = serializers.SerializerMethodField()
    count_by_k = serializers.SerializerMethodField()
    trend_non_decreasing = serializers.BooleanField()
    failures = AdmissibleRecordSerializer(many=True)

    def get_max_ratio_by_M(self, summary):
        return {str(M): str(ratio) for M, ratio in summary.max_ratio_by_M.items()}

    def get_count_by_k(self, summary):
        return {str(k): count for k, count in summary.count_by_k.items()}
