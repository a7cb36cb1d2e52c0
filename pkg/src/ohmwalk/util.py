"""Small numeric helpers used by several modules."""


def rel_err(a: float, b: float) -> float:
    """Relative error |a - b| / max(1, |a|, |b|).

    The max(1, .) floor keeps the measure meaningful when both values
    sit near zero.
    """
    return abs(a - b) / max(1.0, abs(a), abs(b))
