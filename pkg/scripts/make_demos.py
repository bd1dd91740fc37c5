#!/usr/bin/env python3
"""Regenerate the bundled demo workspaces in canonical form.

Run from the repository root:  python3 scripts/make_demos.py
The expected interpreter outputs in tests/expected_program_outputs.py are
maintained by hand, on purpose — they are the independent oracle.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from eaf.blocks import Next, StatementSlot, ValueSlot, Workspace, connect, new_block
from eaf.library import standard_block_set
from eaf.serialize import workspace_text

OUT_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "eaf" / "demos"


def fresh() -> Workspace:
    return Workspace(standard_block_set())


def number(ws, value):
    return new_block(ws, "number", {"VALUE": value})


def text(ws, value):
    return new_block(ws, "text", {"VALUE": value})


def boolean(ws, value):
    return new_block(ws, "boolean", {"VALUE": value})


def print_(ws, payload=None):
    block = new_block(ws, "print")
    if payload is not None:
        connect(ws, ValueSlot(block, "VALUE"), payload)
    return block


def seq(ws, *blocks):
    for prev, nxt in zip(blocks, blocks[1:]):
        connect(ws, Next(ws.chain_tail(prev)), nxt)
    return blocks[0]


def place(ws, x=10, y=10):
    # Authoring-time cleanup: compact labels to A, B, ... and lay the
    # stacks out in a column.  (Label stability only applies to edits on a
    # live workspace, not to how a file is authored.)
    from eaf.labeling import label_from_index

    for i, stack in enumerate(ws.stacks):
        stack.label = label_from_index(i + 1)
        stack.x = float(x)
        stack.y = float(y + i * 80)
    return ws


def demo_hello():
    ws = fresh()
    print_(ws, text(ws, "Hello!"))
    return place(ws)


def demo_loop():
    ws = fresh()
    repeat = new_block(ws, "repeat")
    connect(ws, ValueSlot(repeat, "TIMES"), number(ws, 4))
    connect(ws, StatementSlot(repeat, "BODY"), print_(ws, text(ws, "ha")))
    return place(ws)


def demo_nested_loops():
    ws = fresh()
    outer = new_block(ws, "repeat")
    connect(ws, ValueSlot(outer, "TIMES"), number(ws, 2))
    inner = new_block(ws, "repeat")
    connect(ws, ValueSlot(inner, "TIMES"), number(ws, 3))
    connect(ws, StatementSlot(inner, "BODY"), print_(ws, text(ws, "x")))
    connect(ws, StatementSlot(outer, "BODY"), inner)
    return place(ws)


def demo_conditional():
    ws = fresh()
    iff = new_block(ws, "if")
    cmp_block = new_block(ws, "compare", {"OP": "<"})
    connect(ws, ValueSlot(cmp_block, "A"), number(ws, 2))
    connect(ws, ValueSlot(cmp_block, "B"), number(ws, 3))
    connect(ws, ValueSlot(iff, "COND"), cmp_block)
    connect(ws, StatementSlot(iff, "THEN"), print_(ws, text(ws, "yes")))
    connect(ws, StatementSlot(iff, "ELSE"), print_(ws, text(ws, "no")))
    return place(ws)


def demo_conditional_else():
    ws = fresh()
    iff = new_block(ws, "if")
    connect(ws, ValueSlot(iff, "COND"), boolean(ws, "false"))
    connect(ws, StatementSlot(iff, "THEN"), print_(ws, text(ws, "then")))
    connect(ws, StatementSlot(iff, "ELSE"), print_(ws, text(ws, "else")))
    return place(ws)


def demo_variables():
    ws = fresh()
    setter = new_block(ws, "set_var", {"NAME": "x"})
    connect(ws, ValueSlot(setter, "VALUE"), number(ws, 42))
    reader = print_(ws, new_block(ws, "var_get", {"NAME": "x"}))
    seq(ws, setter, reader)
    return place(ws)


def demo_countdown():
    ws = fresh()
    setter = new_block(ws, "set_var", {"NAME": "n"})
    connect(ws, ValueSlot(setter, "VALUE"), number(ws, 3))
    repeat = new_block(ws, "repeat")
    connect(ws, ValueSlot(repeat, "TIMES"), number(ws, 3))
    body_print = print_(ws, new_block(ws, "var_get", {"NAME": "n"}))
    decrement = new_block(ws, "set_var", {"NAME": "n"})
    minus = new_block(ws, "arithmetic", {"OP": "-"})
    connect(ws, ValueSlot(minus, "A"), new_block(ws, "var_get", {"NAME": "n"}))
    connect(ws, ValueSlot(minus, "B"), number(ws, 1))
    connect(ws, ValueSlot(decrement, "VALUE"), minus)
    seq(ws, body_print, decrement)
    connect(ws, StatementSlot(repeat, "BODY"), body_print)
    seq(ws, setter, repeat)
    return place(ws)


def demo_arithmetic():
    ws = fresh()
    times = new_block(ws, "arithmetic", {"OP": "*"})
    plus = new_block(ws, "arithmetic", {"OP": "+"})
    connect(ws, ValueSlot(plus, "A"), number(ws, 2))
    connect(ws, ValueSlot(plus, "B"), number(ws, 3))
    connect(ws, ValueSlot(times, "A"), plus)
    connect(ws, ValueSlot(times, "B"), number(ws, 4))
    print_(ws, times)
    return place(ws)


def demo_two_stacks():
    ws = fresh()
    print_(ws, text(ws, "first"))
    print_(ws, text(ws, "second"))
    ws = place(ws)
    ws.stack("A").custom_name = "greeting"
    return ws


def demo_logic():
    ws = fresh()
    conj = new_block(ws, "logic", {"OP": "and"})
    connect(ws, ValueSlot(conj, "A"), boolean(ws, "true"))
    negate = new_block(ws, "not")
    connect(ws, ValueSlot(negate, "A"), boolean(ws, "false"))
    connect(ws, ValueSlot(conj, "B"), negate)
    print_(ws, conj)
    return place(ws)


def demo_empty_slot_error():
    ws = fresh()
    print_(ws)  # VALUE slot left empty on purpose
    return place(ws)


def demo_step_limit():
    ws = fresh()
    repeat = new_block(ws, "repeat")
    connect(ws, ValueSlot(repeat, "TIMES"), number(ws, 1_000_000_000))
    setter = new_block(ws, "set_var", {"NAME": "x"})
    connect(ws, ValueSlot(setter, "VALUE"), number(ws, 1))
    connect(ws, StatementSlot(repeat, "BODY"), setter)
    return place(ws)


DEMOS = {
    "hello": demo_hello,
    "loop": demo_loop,
    "nested_loops": demo_nested_loops,
    "conditional": demo_conditional,
    "conditional_else": demo_conditional_else,
    "variables": demo_variables,
    "countdown": demo_countdown,
    "arithmetic": demo_arithmetic,
    "two_stacks": demo_two_stacks,
    "logic": demo_logic,
    "empty_slot_error": demo_empty_slot_error,
    "step_limit": demo_step_limit,
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, build in DEMOS.items():
        path = OUT_DIR / f"{name}.bws.json"
        path.write_text(workspace_text(build()), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
