import math

from scipy import stats

from core.exceptions import InvalidParameterError

_MATCHING_KIND = {'qZI': 'Z', 'qDI': 'D'}


def normal_ci(estimate, sigma2, level=0.95):
    """
    Normal-approximation interval value +/- z * sqrt(sigma2 / n), truncated to [0, 1].
    """
    if not (0 < level < 1):
        raise InvalidParameterError(f"level must lie in (0, 1), got {level}")
    if estimate.n <= 0:
        raise InvalidParameterError("a confidence interval needs a sample estimate with n > 0")
    expected = _MATCHING_KIND.get(estimate.kind.value)
    if expected is None or expected != sigma2.kind:
        raise InvalidParameterError(
            f"sigma2_{sigma2.kind} does not describe a {estimate.kind} estimate"
        )
    z = stats.norm.ppf((1 + level) / 2)
    half_width = z * math.sqrt(sigma2.value / estimate.n)
    return max(0.0, estimate.value - half_width), min(1.0, estimate.value + half_width)
