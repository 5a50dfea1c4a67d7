import math

from numerics import DomainError

LOG_TEN = math.log(10.0)


def _parse_part(part: str) -> range:
    try:
        if ".." in part:
            low, high = (int(bound) for bound in part.split("..", 1))
        else:
            low = high = int(part)
    except ValueError:
        raise DomainError(f"cannot read dimension selection {part!r}") from None
    if high < low:
        raise DomainError(f"empty dimension range {part!r}")
    return range(low, high + 1)


def parse_dimensions(text: str) -> list[int]:
    """
    Parses a dimension selection into a sorted list without duplicates.

    Args:
        text (str): ``"24"``, an inclusive range ``"7..36"``, a comma list
            ``"40,100,200"``, or a mix such as ``"7..9,24"``.

    Returns:
        list[int]: The selected dimensions in ascending order.
    """
    dimensions: set[int] = set()
    for part in text.replace(" ", "").split(","):
        if part:
            dimensions.update(_parse_part(part))
    if not dimensions:
        raise DomainError("no dimensions selected")
    return sorted(dimensions)


def format_log_scientific(log_value: float, digits: int = 6) -> str:
    """
    Formats exp(log_value) in scientific notation without leaving log space,
    so values below the float range still print with their digits.
    """
    if log_value == -math.inf:
        return "0"
    log10_value = log_value / LOG_TEN
    exponent = math.floor(log10_value)
    mantissa = round(10 ** (log10_value - exponent), digits - 1)
    if mantissa >= 10.0:
        mantissa /= 10.0
        exponent += 1
    return f"{mantissa:.{digits - 1}f}e{exponent:+03d}"
