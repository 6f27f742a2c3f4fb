from __future__ import annotations

import json
from collections.abc import Iterable
from collections.abc import Iterator
from typing import Any
from typing import Optional


def key_and_label(key: Optional[str], label: Optional[str]) -> tuple[str, str]:
    """
    If one of key or label is missing, generate it from the other.

    >>> key_and_label("max_group_order", "")
    ('max_group_order', 'Max Group Order')
    >>> key_and_label("", "Cayley Table")
    ('cayley_table', 'Cayley Table')
    """
    if key and label:
        return key, label
    if key:
        return key, key.replace("_", " ").title()
    if label:
        key = "".join(
            [c for c in label.lower().replace(" ", "_") if c.isalnum() or c == "_"]
        )
        return key, label
    raise ValueError("Must set key or label.")


MISSING = object()


def bits(mask: int) -> Iterator[int]:
    """
    Indices of the set bits, lowest first.

    >>> list(bits(0b10110))
    [1, 2, 4]
    """
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    """
    >>> bin(mask_of([0, 3]))
    '0b1001'
    """
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(small: int, big: int) -> bool:
    return small & ~big == 0


def canonical_json(data: Any) -> str:
    """
    Byte-stable JSON text.

    >>> canonical_json({"b": 1, "a": [2, 3]})
    '{"a":[2,3],"b":1}'
    """
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
