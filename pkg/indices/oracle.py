"""
Monte Carlo oracle for qZI and qDI.

With r ~ Uniform(0, 1/2) and X = Q(r):

    qZI = E[(Y - X) / Y],  Y = Q(1/2 + r)
    qDI = E[(Y - X) / Y],  Y = Q(1 - r)
"""

import math

import numpy as np

from core.exceptions import InvalidParameterError
from distributions.random import open_uniforms

from .estimates import EXACT, IndexEstimate, IndexMethod, clamp_unit
from .kinds import IndexKind


def mc_index_oracle(dist, kind, reps, seed):
    """Mean of ``reps`` draws with its standard error (None for one draw)."""
    kind = IndexKind.parse(kind)
    if kind not in (IndexKind.QZI, IndexKind.QDI):
        raise InvalidParameterError(f"no Monte Carlo representation for {kind}")
    if int(reps) != reps or reps < 1:
        raise InvalidParameterError(f"reps must be a positive integer, got {reps}")

    r = open_uniforms(int(reps), seed) / 2
    x = dist.ppf(r)
    if kind is IndexKind.QZI:
        y = dist.ppf(0.5 + r)
    else:
        y = dist.ppf(1.0 - r)
    draws = (y - x) / y

    value = math.fsum(draws.tolist()) / draws.size
    std_error = None
    if draws.size > 1:
        std_error = float(np.std(draws, ddof=1) / math.sqrt(draws.size))
    return IndexEstimate(
        kind=kind,
        value=clamp_unit(value),
        scheme=EXACT,
        method=IndexMethod.MONTE_CARLO,
        n=int(reps),
        std_error=std_error,
    )
