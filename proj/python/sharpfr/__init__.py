"""Python access to the sharpfr certificates."""

import json

from ._sharpfr import *  # noqa: F401,F403
from ._sharpfr import wave_audit_json


def wave_audit(d, ell_max=200, h_max=1000):
    """Wave audit for dimension d as a dict."""
    return json.loads(wave_audit_json(d, ell_max, h_max))
