"""
Compact text form of a distribution, e.g. ``dagum:sigma=1,a=2,b=1`` or
``pareto:xm=1,alpha=2``. Scale parameters default to 1.
"""

from core.exceptions import InvalidParameterError

from .families import Dagum, Pareto

FAMILIES = {
    'dagum': (Dagum, ('sigma', 'a', 'b'), {'sigma': 1.0}),
    'pareto': (Pareto, ('xm', 'alpha'), {'xm': 1.0}),
}


def parse_distribution(text):
    """Parse ``family:key=value,...`` into a distribution instance."""
    if not isinstance(text, str) or ':' not in text:
        raise InvalidParameterError(
            f"distribution must look like 'dagum:sigma=1,a=2,b=1', got {text!r}"
        )
    family, _, body = text.strip().partition(':')
    family = family.strip().lower()
    if family not in FAMILIES:
        raise InvalidParameterError(
            f"unknown distribution family {family!r}; choose from {', '.join(FAMILIES)}"
        )
    cls, names, defaults = FAMILIES[family]

    values = dict(defaults)
    for item in filter(None, (part.strip() for part in body.split(','))):
        key, sep, raw = item.partition('=')
        key = key.strip().lower()
        if not sep or key not in names:
            raise InvalidParameterError(f"unexpected parameter {item!r} for {family}")
        try:
            values[key] = float(raw)
        except ValueError:
            raise InvalidParameterError(f"parameter {key} is not a number: {raw!r}")

    missing = [name for name in names if name not in values]
    if missing:
        raise InvalidParameterError(f"{family} is missing parameter(s): {', '.join(missing)}")
    return cls(**values)


def format_distribution(dist):
    params = ','.join(f"{name}={value:.15g}" for name, value in dist.parameters.items())
    return f"{dist.family}:{params}"
