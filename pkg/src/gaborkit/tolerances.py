"""Shared numerical-rank conventions.

Every invertibility / rank decision in the toolkit goes through the two
rules below so that independently computed checks cannot disagree merely
because they picked different thresholds.

``rank_tolerance`` is the standard absolute cutoff for singular values,
``tol_scale * max(shape) * eps * sigma_max``.

``margin_cutoff`` is the dimensionless version used by the equivalence
harness.  First-order operators (analysis / synthesis) are judged by
``sigma_min/sigma_max > margin_cutoff``; their second-order compositions
(frame operator, Gramian) square every singular value, so they are judged
against ``margin_cutoff**2``.  Expressing all fourteen checks through a
single cutoff this way keeps them measuring one and the same quantity.
"""

import numpy as np

EPS = float(np.finfo(np.float64).eps)

#: Default user-adjustable scale factor on the numerical-rank rule.
DEFAULT_TOL_SCALE = 1e3

#: Flag a verdict as marginal when a decision margin is within this factor
#: of its cutoff on either side.
MARGINAL_BAND = 10.0


def rank_tolerance(shape, sigma_max, tol_scale=DEFAULT_TOL_SCALE):
    """Absolute cutoff below which a singular value counts as zero."""
    return tol_scale * max(shape) * EPS * float(sigma_max)


def margin_cutoff(dims, tol_scale=DEFAULT_TOL_SCALE):
    """Dimensionless first-order cutoff on sigma_min/sigma_max ratios."""
    return float(np.sqrt(tol_scale * max(dims) * EPS))
