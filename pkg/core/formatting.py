"""
Number formatting and output helpers for the command layer.
"""

import json
import math

import pandas as pd
from django.conf import settings
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer


def round_significant(value, digits):
    """Round ``value`` to ``digits`` significant digits; non-finite values pass through."""
    if value is None:
        return None
    value = float(value)
    if value == 0.0 or not math.isfinite(value):
        return value
    return float(f"{value:.{digits - 1}e}")


def output_digits(full_precision=False):
    if full_precision:
        return settings.FULL_PRECISION_DIGITS
    return settings.OUTPUT_SIGNIFICANT_DIGITS


class SignificantFloatField(serializers.FloatField):
    """
    FloatField rounding its representation to a number of significant digits.

    The digit count comes from the serializer context key ``digits`` and
    defaults to OUTPUT_SIGNIFICANT_DIGITS.
    """

    def to_representation(self, value):
        if value is None:
            return None
        digits = self.context.get('digits') or settings.OUTPUT_SIGNIFICANT_DIGITS
        return round_significant(value, digits)


def render_json(data):
    """Render serializer data as indented JSON text."""
    return JSONRenderer().render(data, renderer_context={'indent': 2}).decode('utf-8')


def frame_to_csv(frame, digits):
    """
    Render a DataFrame as CSV text, rounding float columns to ``digits``
    significant digits.
    """
    frame = frame.copy()
    for column in frame.columns:
        if pd.api.types.is_float_dtype(frame[column]):
            frame[column] = frame[column].map(lambda v: _format_float(v, digits))
    return frame.to_csv(index=False, lineterminator='\n')


def _format_float(value, digits):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ''
    return repr(round_significant(value, digits))


def write_output(text, out=None, stdout=None):
    """Write ``text`` to the file ``out`` or to the command's stdout."""
    if not text.endswith('\n'):
        text += '\n'
    if out:
        with open(out, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
    else:
        stdout.write(text, ending='')


def dumps_summary(data):
    """Plain JSON dump used for machine-readable report files."""
    return json.dumps(data, indent=2, sort_keys=False)
