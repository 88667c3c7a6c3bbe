"""Application settings, read from the CONSTANT_TERM dict in Django settings"""
from django.conf import settings

DEFAULTS = {
    # mpmath working precision (decimal digits) for inexact values
    'NUMERIC_DPS': 40,
    # significant digits rendered in numeric output columns
    'NUMERIC_DIGITS': 20,
    # lattice points whose Gaussian weight falls below this are bounded, not summed
    'THETA_CUTOFF': '1e-30',
    # translations scanned when fitting the length constant
    'SIGMA3_NORM_SQUARED': 16,
    # largest residue-class count the brute-force local integral will enumerate
    'BRUTEFORCE_LIMIT': 10**6,
    # terms kept when an exact Laurent polynomial has to be inverted
    'SERIES_PRECISION': 24,
    # valuation shells summed by the local integral when none are requested
    'GK_SHELLS': 12,
}


def app_setting(name):
    """Return a CONSTANT_TERM setting, falling back to the default when Django is not configured"""
    if name not in DEFAULTS:
        raise KeyError(f'Unknown CONSTANT_TERM setting {name!r}')
    if not settings.configured:
        return DEFAULTS[name]
    return getattr(settings, 'CONSTANT_TERM', {}).get(name, DEFAULTS[name])
