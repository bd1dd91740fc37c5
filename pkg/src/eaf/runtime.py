"""Tree-walking interpreter for the standard block vocabulary.

Execution is deterministic and bounded: every block visit costs one step
against the limit, runtime faults stop the run with partial output kept,
and the workspace itself is never touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .blocks import BlockKind, Workspace
from .labeling import renumber

DEFAULT_STEP_LIMIT = 100_000

# Runtime values are plain Python scalars: float (numbers), str (text),
# bool (booleans).  bool is checked before float everywhere since it is
# an int subtype.
Value = float | str | bool

STATUS_OK = "ok"
STATUS_ERROR = "error"
STATUS_STEP_LIMIT = "step-limit-exceeded"


@dataclass
class Output:
    lines: list[str] = field(default_factory=list)
    status: str = STATUS_OK
    message: str = ""

    def status_text(self) -> str:
        if self.status == STATUS_OK:
            return "ok"
        if self.status == STATUS_STEP_LIMIT:
            return "step limit exceeded"
        return self.message or "error"


class _Fault(Exception):
    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class _StepLimit(Exception):
    pass


def value_to_text(value: Value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value.is_integer():
            return str(int(value))
        return repr(value)
    return value


def type_name(value: Value) -> str:
    if isinstance(value, bool):
        return "boolean"
    if isinstance(value, float):
        return "number"
    return "text"


class _Runner:
    def __init__(self, ws: Workspace, step_limit: int):
        self.ws = ws
        self.step_limit = step_limit
        self.steps = 0
        self.env: dict[str, Value] = {}
        self.lines: list[str] = []

    def tick(self) -> None:
        if self.steps >= self.step_limit:
            raise _StepLimit()
        self.steps += 1

    def fault_at(self, block_id: str, what: str) -> _Fault:
        position = renumber(self.ws)[block_id]
        return _Fault(
            f"{what} on block {position.number} of stack {position.stack_label}"
        )

    def run_chain(self, block_id: str | None) -> None:
        while block_id is not None:
            self.tick()
            self.run_statement(block_id)
            block_id = self.ws.block(block_id).next

    def run_statement(self, block_id: str) -> None:
        block = self.ws.block(block_id)
        if block.def_id == "print":
            self.lines.append(value_to_text(self.value_slot(block_id, "VALUE")))
        elif block.def_id == "set_var":
            name = str(block.field_values["NAME"])
            self.env[name] = self.value_slot(block_id, "VALUE")
        elif block.def_id == "repeat":
            times = self.value_slot(block_id, "TIMES")
            if isinstance(times, bool) or not isinstance(times, float):
                raise self.fault_at(block_id, "repeat needs a number")
            reps = max(0, math.floor(times))
            body = block.statement_slots.get("BODY")
            for _ in range(reps):
                self.run_chain(body)
        elif block.def_id == "if":
            cond = self.value_slot(block_id, "COND")
            if not isinstance(cond, bool):
                raise self.fault_at(block_id, "if needs a boolean condition")
            branch = "THEN" if cond else "ELSE"
            self.run_chain(block.statement_slots.get(branch))
        else:
            raise self.fault_at(block_id, f"cannot execute {block.def_id}")

    def value_slot(self, block_id: str, name: str) -> Value:
        occupant = self.ws.block(block_id).value_slots.get(name)
        if occupant is None:
            raise self.fault_at(block_id, "empty value slot")
        self.tick()
        return self.eval(occupant)

    def eval(self, block_id: str) -> Value:
        block = self.ws.block(block_id)
        if block.def_id == "number":
            return float(block.field_values["VALUE"])
        if block.def_id == "text":
            return str(block.field_values["VALUE"])
        if block.def_id == "boolean":
            return block.field_values["VALUE"] == "true"
        if block.def_id == "var_get":
            name = str(block.field_values["NAME"])
            if name not in self.env:
                raise self.fault_at(block_id, f"variable {name} is not set")
            return self.env[name]
        if block.def_id == "arithmetic":
            a = self.value_slot(block_id, "A")
            b = self.value_slot(block_id, "B")
            if isinstance(a, bool) or isinstance(b, bool) or not (
                isinstance(a, float) and isinstance(b, float)
            ):
                raise self.fault_at(block_id, "arithmetic needs numbers")
            op = block.field_values["OP"]
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if b == 0:
                raise self.fault_at(block_id, "division by zero")
            return a / b
        if block.def_id == "compare":
            a = self.value_slot(block_id, "A")
            b = self.value_slot(block_id, "B")
            if type_name(a) != type_name(b):
                raise self.fault_at(
                    block_id, f"cannot compare {type_name(a)} with {type_name(b)}"
                )
            op = block.field_values["OP"]
            if op == "=":
                return a == b
            if isinstance(a, bool):
                raise self.fault_at(block_id, "cannot order booleans")
            assert isinstance(b, (float, str))
            return a < b if op == "<" else a > b
        if block.def_id == "logic":
            a = self.value_slot(block_id, "A")
            b = self.value_slot(block_id, "B")
            if not (isinstance(a, bool) and isinstance(b, bool)):
                raise self.fault_at(block_id, "logic needs booleans")
            return (a and b) if block.field_values["OP"] == "and" else (a or b)
        if block.def_id == "not":
            a = self.value_slot(block_id, "A")
            if not isinstance(a, bool):
                raise self.fault_at(block_id, "not needs a boolean")
            return not a
        raise self.fault_at(block_id, f"cannot evaluate {block.def_id}")


def run(ws: Workspace, step_limit: int = DEFAULT_STEP_LIMIT) -> Output:
    """Execute every stack in label order, top to chain end.

    Stacks whose top is a detached value block are skipped: they are
    scraps, not programs.
    """
    runner = _Runner(ws, step_limit)
    output = Output()
    try:
        for stack in ws.stacks:
            if ws.block_set[ws.block(stack.top).def_id].kind is BlockKind.VALUE:
                continue
            runner.run_chain(stack.top)
    except _Fault as fault:
        output.status = STATUS_ERROR
        output.message = fault.message
    except _StepLimit:
        output.status = STATUS_STEP_LIMIT
        output.message = f"stopped after {step_limit} steps"
    output.lines = runner.lines
    return output


def eval_value(ws: Workspace, block_id: str, env: dict[str, Value] | None = None) -> Value:
    """Evaluate one value block against an environment.

    Faults surface as ValueError carrying the runtime message.
    """
    runner = _Runner(ws, DEFAULT_STEP_LIMIT)
    runner.env = dict(env or {})
    try:
        return runner.eval(block_id)
    except _Fault as fault:
        raise ValueError(fault.message) from None
