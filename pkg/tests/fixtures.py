"""Frozen regression baselines, computed once by the brute-force oracles in
this repository and committed.  Comparison tolerance is 1e-9 unless a test
states otherwise.

The critical square lattice (step sqrt(L) in both directions) with the
symmetric periodized Gaussian is EXACTLY singular for even sqrt(L): the
alternating sequence c[k,l] = (-1)^(k+l) is annihilated in exact arithmetic
(terms cancel in symmetric pairs), so the probe ratios below are float
cancellation residue, not genuine spectral gaps, and the delta-window
control is exactly zero.  The odd-step ladder is the regime where the probe
measures a genuine nonzero residual that decays with L.
"""

# L=16, a=b=4, periodized Gaussian: largest frame-operator eigenvalue and
# extreme nonzero Gramian eigenvalues.  The smallest frame eigenvalue is an
# exact zero (see module docstring), so no condition-number baseline exists.
CRITICAL_L16_FRAME_UPPER = 1.6692536832669433
CRITICAL_L16_RIESZ_LOWER_SQ = 0.5857782662754821
CRITICAL_L16_RIESZ_UPPER_SQ = 1.6692536832669436

# Alternating-sequence probe, periodized Gaussian, even steps (cancellation
# residue at machine precision).
EVEN_LADDER = {
    16: 5.9631119486702744e-18,
    36: 6.99276313554242e-17,
    64: 1.768849103314308e-17,
    100: 2.97187292121642e-17,
}

# Delta-window control at even steps: exactly zero.
EVEN_LADDER_DELTA = {16: 0.0, 36: 0.0, 64: 0.0, 100: 0.0}

# Alternating-sequence probe at odd steps: genuine strictly decreasing
# residuals (the finite shadow of the continuous annihilation).
ODD_LADDER = {
    9: 0.8375434348939986,
    25: 0.6633125481892946,
    49: 0.5657908944251807,
    81: 0.5015052223843555,
}

ODD_LADDER_DELTA = {
    9: 0.5773502691896257,
    25: 0.447213595499958,
    49: 0.37796447300922725,
    81: 0.3333333333333333,
}
