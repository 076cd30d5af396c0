"""
Serializers validating command input and shaping the JSON report.
"""

from fractions import Fraction

from rest_framework import serializers

from finitefield.field import is_prime
from rigidity.exceptions import ShapeError
from rigidity.params import parse_int_list, validate_shape
from rigidity.serializers import RationalField


class IntListField(serializers.Field):
    """Comma-separated integers ("4,4") or a list of integers."""

    default_error_messages = {
        'invalid': 'A comma-separated list of integers such as "4,4" is required.',
    }

    def to_internal_value(self, data):
        if isinstance(data, (list, tuple)):
            try:
                return tuple(int(value) for value in data)
            except (TypeError, ValueError):
                self.fail('invalid')
        try:
            return parse_int_list(data)
        except ShapeError:
            self.fail('invalid')

    def to_representation(self, value):
        return list(value)


class NumberField(serializers.Field):
    """Integers stay JSON numbers; rationals become reduced 'p/q' strings."""

    def to_representation(self, value):
        if isinstance(value, Fraction):
            return str(value)
        return int(value)

    def to_internal_value(self, data):
        return data


class RunConfigSerializer(serializers.Serializer):
    """Options shared by every command."""
    format = serializers.ChoiceField(choices=['text', 'json'], default='text')

    def validate_parallel(self, value):
        if value is not None and value < 1:
            raise serializers.ValidationError("parallel must be at least 1.")
        return value


class ParamsConfigSerializer(RunConfigSerializer):
    """
    A parameter tuple given as k, M and the comma-separated lists d and xi.

    The validated data carries the built RigidityParams under 'params'.
    """
    k = serializers.IntegerField()
    M = serializers.IntegerField()
    d = IntListField()
    xi = IntListField()

    def validate(self, attrs):
        try:
            attrs['params'] = validate_shape(attrs['k'], attrs['M'], attrs['d'], attrs['xi'])
        except ShapeError as exc:
            raise serializers.ValidationError(str(exc))
        return attrs


class FFCheckConfigSerializer(ParamsConfigSerializer):
    prime = serializers.IntegerField(required=False, allow_null=True)
    seed = serializers.IntegerField(default=0)
    trials = serializers.IntegerField(min_value=1, default=20)
    threshold_factor = RationalField(required=False, allow_null=True)
    parallel = serializers.IntegerField(required=False, allow_null=True)

    def validate_prime(self, value):
        if value is not None and not is_prime(value):
            raise serializers.ValidationError(f"{value} is not a prime.")
        return value

    def validate_threshold_factor(self, value):
        if value is not None and value <= 0:
            raise serializers.ValidationError("threshold_factor must be positive.")
        return value


class ExploreConfigSerializer(RunConfigSerializer):
    """
    k is a single value or the range k_min ... k_max; M runs over m_min ... m_max.
    """
    format = serializers.ChoiceField(choices=['text', 'json', 'csv'], default='text')
    k = serializers.IntegerField(required=False, allow_null=True)
    k_min = serializers.IntegerField(required=False, allow_null=True)
    k_max = serializers.IntegerField(required=False, allow_null=True)
    m_min = serializers.IntegerField()
    m_max = serializers.IntegerField()
    out = serializers.CharField(required=False, allow_null=True)
    parallel = serializers.IntegerField(required=False, allow_null=True)

    def validate(self, attrs):
        if attrs.get('k') is not None:
            k_min = k_max = attrs['k']
        elif attrs.get('k_min') is not None:
            k_min = attrs['k_min']
            k_max = attrs.get('k_max') if attrs.get('k_max') is not None else k_min
        else:
            raise serializers.ValidationError("Either k or k_min is required.")
        if k_min < 2:
            raise serializers.ValidationError(f"k below 2: k={k_min}")
        if k_max < k_min:
            raise serializers.ValidationError(f"empty k range {k_min}..{k_max}")
        if attrs['m_max'] < attrs['m_min']:
            raise serializers.ValidationError(f"empty M range {attrs['m_min']}..{attrs['m_max']}")
        attrs['k_range'] = range(k_min, k_max + 1)
        attrs['M_range'] = range(attrs['m_min'], attrs['m_max'] + 1)
        return attrs


class VerdictSerializer(serializers.Serializer):
    name = serializers.CharField()
    value = NumberField()
    relation = serializers.CharField()
    threshold = NumberField()
    holds = serializers.BooleanField()


class JsonReportSerializer(serializers.Serializer):
    """
    Top-level JSON report; the field order is the canonical key order.
    """
    tool = serializers.CharField()
    version = serializers.CharField()
    command = serializers.CharField()
    input = serializers.DictField()
    checks = VerdictSerializer(many=True)
    data = serializers.DictField()
    verdict = serializers.CharField()
