"""Shared fixtures: workspace builders and a seeded random workspace
generator used by the property suites."""

from __future__ import annotations

import random

import pytest

from eaf.blocks import (
    Next,
    StatementSlot,
    ValueSlot,
    Workspace,
    connect,
    new_block,
)
from eaf.library import standard_block_set
from eaf.navigation import BlockFocus, ElementFocus, StackHead, WorkspacePoint
from eaf.session import Session, new_session


@pytest.fixture
def ws() -> Workspace:
    return Workspace(standard_block_set())


@pytest.fixture
def session() -> Session:
    return new_session()


def make_number(ws: Workspace, value: float) -> str:
    return new_block(ws, "number", {"VALUE": value})


def make_text(ws: Workspace, value: str) -> str:
    return new_block(ws, "text", {"VALUE": value})


def make_print(ws: Workspace, value: str | float | None = None) -> str:
    block = new_block(ws, "print")
    if value is not None:
        child = make_text(ws, value) if isinstance(value, str) else make_number(ws, value)
        connect(ws, ValueSlot(block, "VALUE"), child)
    return block


def chain(ws: Workspace, first: str, *rest: str) -> str:
    """Connect statement blocks into one chain; returns the head."""
    tail = first
    for block in rest:
        connect(ws, Next(ws.chain_tail(tail)), block)
    return first


def repeat_example(ws: Workspace) -> dict[str, str]:
    """repeat(times=10){ print 'hi'; print 'bye' } — the canonical nested
    fixture: preorder is repeat, number, print hi, print bye."""
    repeat = new_block(ws, "repeat")
    times = make_number(ws, 10)
    connect(ws, ValueSlot(repeat, "TIMES"), times)
    hi = make_print(ws, "hi")
    bye = make_print(ws, "bye")
    connect(ws, StatementSlot(repeat, "BODY"), hi)
    connect(ws, Next(hi), bye)
    return {"repeat": repeat, "times": times, "hi": hi, "bye": bye}


# -- random workspace generation ----------------------------------------------

_VALUE_MAKERS = ["number", "text", "boolean", "var_get"]
_NESTED_VALUE_MAKERS = ["arithmetic", "compare", "logic", "not"]


def _random_value(ws: Workspace, rng: random.Random, budget: list[int], depth: int) -> str | None:
    if budget[0] <= 0:
        return None
    if depth > 0 and budget[0] > 3 and rng.random() < 0.3:
        def_id = rng.choice(_NESTED_VALUE_MAKERS)
        block = new_block(ws, def_id)
        budget[0] -= 1
        definition = ws.block_set[def_id]
        for name, _ in definition.value_inputs:
            child = _random_typed_value(ws, rng, budget, depth - 1, definition, name)
            if child is not None:
                connect(ws, ValueSlot(block, name), child)
        return block
    def_id = rng.choice(_VALUE_MAKERS)
    fields = {}
    if def_id == "number":
        fields = {"VALUE": rng.randint(0, 99)}
    elif def_id == "text":
        fields = {"VALUE": rng.choice(["hi", "bye", "ok", "x"])}
    elif def_id == "var_get":
        fields = {"NAME": rng.choice(["x", "y", "n"])}
    block = new_block(ws, def_id, fields)
    budget[0] -= 1
    return block


def _random_typed_value(ws, rng, budget, depth, definition, input_name) -> str | None:
    from eaf.blocks import ValueType

    accepted = dict(definition.value_inputs)[input_name]
    if budget[0] <= 0 or rng.random() < 0.25:
        return None  # leave some connections empty on purpose
    if accepted is ValueType.NUMBER:
        block = new_block(ws, "number", {"VALUE": rng.randint(0, 20)})
    elif accepted is ValueType.BOOLEAN:
        block = new_block(ws, "boolean", {"VALUE": rng.choice(["true", "false"])})
    elif accepted is ValueType.TEXT:
        block = new_block(ws, "text", {"VALUE": "t"})
    else:
        return _random_value(ws, rng, budget, depth)
    budget[0] -= 1
    return block


def _random_chain(ws: Workspace, rng: random.Random, budget: list[int], depth: int) -> str | None:
    length = rng.randint(1, 3)
    head: str | None = None
    for _ in range(length):
        if budget[0] <= 0:
            break
        roll = rng.random()
        if depth < 4 and roll < 0.25 and budget[0] > 4:
            block = new_block(ws, "repeat")
            budget[0] -= 1
            times = _random_typed_value(
                ws, rng, budget, 1, ws.block_set["repeat"], "TIMES"
            )
            if times is not None:
                connect(ws, ValueSlot(block, "TIMES"), times)
            body = _random_chain(ws, rng, budget, depth + 1)
            if body is not None:
                connect(ws, StatementSlot(block, "BODY"), body)
        elif depth < 4 and roll < 0.35 and budget[0] > 4:
            block = new_block(ws, "if")
            budget[0] -= 1
            cond = _random_typed_value(ws, rng, budget, 1, ws.block_set["if"], "COND")
            if cond is not None:
                connect(ws, ValueSlot(block, "COND"), cond)
            then = _random_chain(ws, rng, budget, depth + 1)
            if then is not None:
                connect(ws, StatementSlot(block, "THEN"), then)
        elif roll < 0.7:
            block = new_block(ws, "print")
            budget[0] -= 1
            value = _random_value(ws, rng, budget, 1)
            if value is not None and rng.random() < 0.8:
                connect(ws, ValueSlot(block, "VALUE"), value)
            elif value is not None:
                pass  # leave it as its own detached value stack
        else:
            block = new_block(ws, "set_var", {"NAME": rng.choice(["x", "y", "n"])})
            budget[0] -= 1
            value = _random_value(ws, rng, budget, 1)
            if value is not None:
                connect(ws, ValueSlot(block, "VALUE"), value)
        if head is None:
            head = block
        else:
            connect(ws, Next(ws.chain_tail(head)), block)
    return head


def generate_workspace(seed: int, max_blocks: int = 30, min_stacks: int = 2) -> Workspace:
    """Seeded random workspace: several stacks, nesting depth <= 4, a mix
    of filled and empty connections, occasionally named stacks."""
    rng = random.Random(seed)
    ws = Workspace(standard_block_set())
    budget = [max_blocks]
    stacks = rng.randint(min_stacks, max(min_stacks, 4))
    for i in range(stacks):
        if budget[0] <= 0:
            break
        head = _random_chain(ws, rng, budget, 1)
        if head is None:
            break
        stack = ws.stack_of_block(head)
        stack.x = float(rng.randint(0, 10) * 10)
        stack.y = float(rng.randint(0, 10) * 10)
        if rng.random() < 0.2:
            stack.custom_name = rng.choice(["main loop", "setup", "helpers"])
    # The generator only creates stacks rooted at statement chains; value
    # scraps appear as their own stacks when chains leave them detached.
    return ws


def enumerate_locations(ws: Workspace) -> set:
    """Independent enumeration of every navigable place, built straight
    from the definitions rather than through children()/move()."""
    spots: set = {WorkspacePoint(0.0, 0.0)}
    for stack in ws.stacks:
        spots.add(StackHead(stack.label))
    for block_id, block in ws.blocks.items():
        spots.add(BlockFocus(block_id))
        definition = ws.block_set[block.def_id]
        element_count = (
            len(definition.fields)
            + len(definition.value_inputs)
            + len(definition.statement_inputs)
        )
        for index in range(element_count):
            spots.add(ElementFocus(block_id, index))
    return spots
