"""Stack letter labels, custom names, and pre-order block numbering.

Labels run A..Z, AA, AB, ... (bijective base 26).  A stack keeps its
letter for its whole life; new stacks take the lowest letter not in use.
Block numbers are recomputed from the pre-order traversal and are always
gap-free 1..total within a stack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import InvalidName, NumberOutOfRange, UnknownStack

if TYPE_CHECKING:
    from .blocks import Workspace

MAX_CUSTOM_NAME = 60


def label_from_index(n: int) -> str:
    """1 -> A, 26 -> Z, 27 -> AA, ..."""
    if n < 1:
        raise ValueError("label indices start at 1")
    out = ""
    while n > 0:
        n, rem = divmod(n - 1, 26)
        out = chr(ord("A") + rem) + out
    return out


def label_index(label: str) -> int:
    """Inverse of :func:`label_from_index`."""
    if not label or not all("A" <= c <= "Z" for c in label):
        raise ValueError(f"bad label {label!r}")
    n = 0
    for c in label:
        n = n * 26 + (ord(c) - ord("A") + 1)
    return n


def is_valid_label(label: str) -> bool:
    return bool(label) and all("A" <= c <= "Z" for c in label)


def lowest_unused_label(used: list[str]) -> str:
    taken = set(used)
    n = 1
    while label_from_index(n) in taken:
        n += 1
    return label_from_index(n)


def assign_label(ws: "Workspace") -> str:
    """The label the next new stack would take.  Never relabels."""
    return lowest_unused_label(ws.labels())


def set_custom_name(ws: "Workspace", label: str, name: str) -> str:
    """Attach a semantic name to a stack; the letter label is unchanged."""
    stack = ws.stack(label)  # raises UnknownStack
    trimmed = name.strip()
    if not trimmed:
        raise InvalidName("custom name must not be empty")
    if len(trimmed) > MAX_CUSTOM_NAME:
        raise InvalidName(f"custom name longer than {MAX_CUSTOM_NAME} characters")
    stack.custom_name = trimmed
    return trimmed


@dataclass(frozen=True)
class BlockNumber:
    number: int
    total: int
    stack_label: str


class NumberingIndex:
    """Map from block id to its (number, total) position within its stack."""

    def __init__(self, by_block: dict[str, BlockNumber]):
        self._by_block = by_block

    def __getitem__(self, block_id: str) -> BlockNumber:
        return self._by_block[block_id]

    def __contains__(self, block_id: str) -> bool:
        return block_id in self._by_block

    def get(self, block_id: str) -> BlockNumber | None:
        return self._by_block.get(block_id)


def renumber(ws: "Workspace") -> NumberingIndex:
    """Recompute pre-order numbering for every stack."""
    from .blocks import preorder

    by_block: dict[str, BlockNumber] = {}
    for stack in ws.stacks:
        order = preorder(ws, stack.label)
        total = len(order)
        for i, block_id in enumerate(order, start=1):
            by_block[block_id] = BlockNumber(i, total, stack.label)
    return NumberingIndex(by_block)


def resolve(ws: "Workspace", label: str, number: int) -> str:
    """Block id at a 1-based pre-order position of a stack."""
    from .blocks import preorder

    if not ws.has_stack(label):
        raise UnknownStack(f"no stack {label}")
    order = preorder(ws, label)
    if not 1 <= number <= len(order):
        raise NumberOutOfRange(
            f"stack {label} has blocks 1..{len(order)}, not {number}"
        )
    return order[number - 1]
