""" functions to cast command-line values into typed ones """

import re
from math import floor
from typing import Any, List, Sequence, Tuple, Union


def cast_seed_range(seeds: Union[str, int, Sequence[int]]) -> List[int]:
    """
    Parse a seed range and returns the list of seeds, bounds included

    >>> cast_seed_range("3..6")
    [3, 4, 5, 6]
    >>> cast_seed_range(7)
    [7]
    """

    if isinstance(seeds, bool):
        raise ValueError(f"Unknown format for seed range: {seeds}")
    if isinstance(seeds, int):
        return [seeds]
    if isinstance(seeds, (list, tuple)):
        return [int(s) for s in seeds]

    matching = re.fullmatch(r"\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?", str(seeds))
    if matching is None:
        raise ValueError(f"Unknown format for seed range: {seeds}")
    start = int(matching.group(1))
    end = int(matching.group(2)) if matching.group(2) is not None else start
    if end < start:
        raise ValueError(f"Empty seed range: {seeds}")
    return list(range(start, end + 1))


def cast_int_tuple(value: Any, length: int, name: str = "value") -> Tuple[int, ...]:
    """
    Cast "2,4,7", "2 4 7" or (2, 4, 7) to a tuple of ints of the given length

    >>> cast_int_tuple("720,1440", 2)
    (720, 1440)
    """

    if isinstance(value, str):
        items: Sequence[Any] = [s for s in re.split(r"[\s,x]+", value.strip(" ()[]")) if s]
    elif isinstance(value, (list, tuple)):
        items = value
    else:
        items = [value]

    try:
        result = tuple(int(x) for x in items)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be {length} integers, got {value!r}") from None
    if len(result) != length:
        raise ValueError(f"{name} must be {length} integers, got {value!r}")
    return result


def to_readable_time(seconds: float, rounding: bool = False) -> str:
    """cast time in seconds to readable string"""

    initial_seconds = seconds

    hours = int(floor(seconds // 3600))
    seconds -= 3600 * hours
    minutes = int(floor(seconds // 60))
    seconds -= 60 * minutes

    if rounding:
        if hours:
            return f"{initial_seconds/3600:3.1f} hours"
        if minutes:
            return f"{initial_seconds/60:3.1f} minutes"
        return f"{initial_seconds:3.1f} seconds"

    time_str = ""
    if hours:
        time_str += f"{hours:d} hours "
    if hours or minutes:
        time_str += f"{minutes:d} minutes "
    time_str += f"{seconds:.2f} seconds"

    return time_str
