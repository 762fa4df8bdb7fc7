from datetime import datetime
from typing import Iterator


def compact_timestamp() -> str:
    """
    Generates a compact timestamp for use in file/folder names.

    Returns:
        str: Timestamp in the format YYYYMMDD-HHMMSSmmm
    """
    now = datetime.now()
    return now.strftime("%Y%m%d-%H%M%S") + f"{int(now.microsecond / 1000):03d}"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parse_index_list(text: str) -> list[int]:
    """Parse ``"1,3"`` or ``"1 3"`` into ``[1, 3]``; the empty string gives ``[]``."""
    parts = text.replace(",", " ").split()
    return [int(p) for p in parts]
