"""Workspace model: block definitions, blocks, stacks, and the
invariant-preserving graph mutations every editing operation builds on.

A workspace is a forest.  Each stack owns one tree of blocks: statement
blocks chain vertically through ``next``, value blocks plug into named
value slots, and statement slots hold the head of a nested chain.  All
higher layers (navigation, editing, the interpreter) speak in terms of
this model and rely on :func:`validate` staying empty.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Union

from .errors import (
    BadFieldValue,
    IncompatibleConnection,
    NotDetached,
    OccupiedValueSlot,
    UnknownBlock,
    UnknownDefinition,
    UnknownStack,
    WouldCreateCycle,
)
from .labeling import lowest_unused_label

# Offset applied when a detached subtree becomes its own stack.  Positions
# carry no navigation semantics; they only survive serialization.
DETACH_OFFSET = (40.0, 40.0)


class ValueType(str, Enum):
    """Type tag carried by value outputs and value inputs."""

    NUMBER = "Number"
    TEXT = "Text"
    BOOLEAN = "Boolean"
    ANY = "Any"


def compatible(a: ValueType, b: ValueType) -> bool:
    """Two value types connect iff they are equal or either side is Any."""
    return a == b or a == ValueType.ANY or b == ValueType.ANY


class FieldKind(str, Enum):
    NUMBER = "number"
    TEXT = "text"
    CHOICE = "choice"


@dataclass(frozen=True)
class FieldSpec:
    """An editable scalar embedded in a block."""

    name: str
    kind: FieldKind
    options: tuple[str, ...] = ()
    default: float | str = ""

    def __post_init__(self):
        if self.kind is FieldKind.CHOICE and not self.options:
            raise ValueError(f"choice field {self.name!r} needs options")

    def default_value(self) -> float | str:
        if self.kind is FieldKind.NUMBER:
            return self.default if isinstance(self.default, (int, float)) else 0
        if self.kind is FieldKind.CHOICE:
            return self.default if self.default in self.options else self.options[0]
        return self.default if isinstance(self.default, str) else ""

    def check(self, value: object) -> float | str:
        """Validate and normalize one field value."""
        if self.kind is FieldKind.NUMBER:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise BadFieldValue(self.name, f"field {self.name} expects a number")
            return value
        if not isinstance(value, str):
            raise BadFieldValue(self.name, f"field {self.name} expects text")
        if self.kind is FieldKind.CHOICE and value not in self.options:
            raise BadFieldValue(
                self.name,
                f"field {self.name} must be one of {', '.join(self.options)}",
            )
        return value


class BlockKind(str, Enum):
    STATEMENT = "statement"
    VALUE = "value"


@dataclass(frozen=True)
class BlockDefinition:
    """Shape of a block type: fields, inputs, and connection points.

    Value definitions expose an output and no previous/next connections;
    statement definitions are the reverse.  That pairing is enforced here
    so the rest of the engine can branch on ``kind`` alone.
    """

    def_id: str
    kind: BlockKind
    fields: tuple[FieldSpec, ...] = ()
    value_inputs: tuple[tuple[str, ValueType], ...] = ()
    statement_inputs: tuple[str, ...] = ()
    value_output: ValueType | None = None
    has_previous: bool = True
    has_next: bool = True

    def __post_init__(self):
        if self.kind is BlockKind.VALUE:
            if self.value_output is None:
                raise ValueError(f"{self.def_id}: value blocks need an output type")
            object.__setattr__(self, "has_previous", False)
            object.__setattr__(self, "has_next", False)
        else:
            if self.value_output is not None:
                raise ValueError(f"{self.def_id}: statement blocks have no output")

    def field_spec(self, name: str) -> FieldSpec:
        for spec in self.fields:
            if spec.name == name:
                return spec
        raise BadFieldValue(name, f"{self.def_id} has no field {name}")

    def value_input_type(self, name: str) -> ValueType:
        for input_name, accepted in self.value_inputs:
            if input_name == name:
                return accepted
        raise IncompatibleConnection(f"{self.def_id} has no value input {name}")


class BlockSet:
    """Immutable registry of block definitions available to a workspace."""

    def __init__(self, definitions: list[BlockDefinition]):
        self._defs: dict[str, BlockDefinition] = {}
        for d in definitions:
            if d.def_id in self._defs:
                raise ValueError(f"duplicate definition {d.def_id}")
            self._defs[d.def_id] = d

    def __contains__(self, def_id: str) -> bool:
        return def_id in self._defs

    def __getitem__(self, def_id: str) -> BlockDefinition:
        try:
            return self._defs[def_id]
        except KeyError:
            raise UnknownDefinition(f"unknown block type {def_id!r}") from None

    def ids(self) -> list[str]:
        return list(self._defs)


@dataclass
class Comment:
    text: str
    visible: bool = True


@dataclass
class Block:
    """One block instance.  Slot values are block ids or None."""

    id: str
    def_id: str
    field_values: dict[str, float | str] = field(default_factory=dict)
    value_slots: dict[str, str | None] = field(default_factory=dict)
    statement_slots: dict[str, str | None] = field(default_factory=dict)
    next: str | None = None
    comment: Comment | None = None


@dataclass
class Stack:
    """A free-standing tree of blocks, addressed by a letter label."""

    label: str
    top: str
    x: float = 0.0
    y: float = 0.0
    custom_name: str | None = None


@dataclass(frozen=True)
class Previous:
    block: str


@dataclass(frozen=True)
class Next:
    block: str


@dataclass(frozen=True)
class ValueSlot:
    block: str
    input: str


@dataclass(frozen=True)
class StatementSlot:
    block: str
    input: str


ConnectionRef = Union[Previous, Next, ValueSlot, StatementSlot]


@dataclass(frozen=True)
class ElementRef:
    """One entry of a block's canonical child row.

    ``kind`` is "field", "value_input" or "statement_input"; ``attached``
    is the occupying block id (for statement inputs, the chain head) or
    None when the connection is empty.  Fields always have ``attached``
    None.
    """

    kind: str
    name: str
    attached: str | None = None


@dataclass(frozen=True)
class Violation:
    """One broken model invariant found by :func:`validate`."""

    code: str
    subject: str
    detail: str

    def __str__(self) -> str:
        return f"{self.code}({self.subject}): {self.detail}"


class Workspace:
    """The mutable source of truth: stacks of blocks plus their block set."""

    def __init__(self, block_set: BlockSet):
        self.block_set = block_set
        self.blocks: dict[str, Block] = {}
        self.stacks: list[Stack] = []
        self._id_counter = 0

    # -- basic lookups -------------------------------------------------

    def block(self, block_id: str) -> Block:
        try:
            return self.blocks[block_id]
        except KeyError:
            raise UnknownBlock(f"no block {block_id!r}") from None

    def definition_of(self, block_id: str) -> BlockDefinition:
        return self.block_set[self.block(block_id).def_id]

    def stack(self, label: str) -> Stack:
        for s in self.stacks:
            if s.label == label:
                return s
        raise UnknownStack(f"no stack {label}")

    def has_stack(self, label: str) -> bool:
        return any(s.label == label for s in self.stacks)

    def labels(self) -> list[str]:
        return [s.label for s in self.stacks]

    def fresh_id(self) -> str:
        self._id_counter += 1
        while f"b{self._id_counter}" in self.blocks:
            self._id_counter += 1
        return f"b{self._id_counter}"

    def clone(self) -> "Workspace":
        """Deep copy sharing the (immutable) block set."""
        dup = Workspace(self.block_set)
        dup.blocks = copy.deepcopy(self.blocks)
        dup.stacks = copy.deepcopy(self.stacks)
        dup._id_counter = self._id_counter
        return dup

    # -- structure queries ---------------------------------------------

    def parent_connection(self, block_id: str) -> ConnectionRef | None:
        """The connection this block hangs from, or None for stack tops."""
        for other in self.blocks.values():
            if other.next == block_id:
                return Next(other.id)
            for name, occupant in other.value_slots.items():
                if occupant == block_id:
                    return ValueSlot(other.id, name)
            for name, occupant in other.statement_slots.items():
                if occupant == block_id:
                    return StatementSlot(other.id, name)
        return None

    def is_stack_top(self, block_id: str) -> bool:
        return any(s.top == block_id for s in self.stacks)

    def stack_of_block(self, block_id: str) -> Stack:
        """The stack whose tree contains this block."""
        current = self.block(block_id).id
        seen = set()
        while True:
            if current in seen:
                raise WouldCreateCycle(f"cycle through {current}")
            seen.add(current)
            conn = self.parent_connection(current)
            if conn is None:
                for s in self.stacks:
                    if s.top == current:
                        return s
                raise UnknownBlock(f"block {block_id} belongs to no stack")
            current = conn.block

    def chain_tail(self, block_id: str) -> str:
        current = self.block(block_id)
        while current.next is not None:
            current = self.block(current.next)
        return current.id

    def chain_head(self, block_id: str) -> str:
        """Walk previous links to the head of this statement sequence."""
        current = block_id
        while True:
            conn = self.parent_connection(current)
            if isinstance(conn, Next):
                current = conn.block
            else:
                return current

    def subtree_ids(self, block_id: str) -> list[str]:
        """The block plus everything nested in it, following next links."""
        out: list[str] = []
        self._walk(block_id, out)
        return out

    def _walk(self, block_id: str, out: list[str]) -> None:
        block = self.block(block_id)
        definition = self.block_set[block.def_id]
        out.append(block_id)
        for name, _ in definition.value_inputs:
            occupant = block.value_slots.get(name)
            if occupant is not None:
                self._walk(occupant, out)
        for name in definition.statement_inputs:
            head = block.statement_slots.get(name)
            if head is not None:
                self._walk(head, out)
        if block.next is not None:
            self._walk(block.next, out)

    def _insert_stack(self, stack: Stack) -> None:
        self.stacks.append(stack)
        self.stacks.sort(key=lambda s: (len(s.label), s.label))

    def _remove_stack(self, label: str) -> None:
        self.stacks = [s for s in self.stacks if s.label != label]


# -- operations ---------------------------------------------------------


def new_block(
    ws: Workspace, def_id: str, field_values: dict[str, object] | None = None
) -> str:
    """Create a detached block as its own single-block stack.

    Missing fields take the definition's default; the stack gets the
    lowest unused label.
    """
    definition = ws.block_set[def_id]
    provided = dict(field_values or {})
    values: dict[str, float | str] = {}
    for spec in definition.fields:
        if spec.name in provided:
            values[spec.name] = spec.check(provided.pop(spec.name))
        else:
            values[spec.name] = spec.default_value()
    if provided:
        name = sorted(provided)[0]
        raise BadFieldValue(name, f"{def_id} has no field {name}")

    block = Block(
        id=ws.fresh_id(),
        def_id=def_id,
        field_values=values,
        value_slots={name: None for name, _ in definition.value_inputs},
        statement_slots={name: None for name in definition.statement_inputs},
    )
    ws.blocks[block.id] = block
    label = lowest_unused_label(ws.labels())
    ws._insert_stack(Stack(label=label, top=block.id))
    return block.id


def connect(ws: Workspace, at: ConnectionRef, block_id: str) -> None:
    """Splice a detached stack into the tree at ``at``.

    The moved block must be a stack top; its stack is retired.  Attaching
    a statement chain where a chain already continues re-attaches the old
    continuation after the inserted tail.
    """
    moving = ws.block(block_id)
    moving_def = ws.block_set[moving.def_id]
    source_stack = None
    for s in ws.stacks:
        if s.top == block_id:
            source_stack = s
            break
    if source_stack is None:
        raise NotDetached(f"block {block_id} is not a detached stack top")

    target = ws.block(at.block)
    if ws.stack_of_block(at.block).label == source_stack.label:
        raise WouldCreateCycle(f"{block_id} cannot attach inside its own tree")

    if isinstance(at, ValueSlot):
        target_def = ws.block_set[target.def_id]
        accepted = target_def.value_input_type(at.input)
        if moving_def.kind is not BlockKind.VALUE:
            raise IncompatibleConnection(
                f"{moving.def_id} is not a value block; {at.input} takes values"
            )
        assert moving_def.value_output is not None
        if not compatible(moving_def.value_output, accepted):
            raise IncompatibleConnection(
                f"{moving_def.value_output.value} output does not fit "
                f"{accepted.value} input {at.input}"
            )
        if target.value_slots.get(at.input) is not None:
            raise OccupiedValueSlot(f"input {at.input} of {target.def_id} is occupied")
        target.value_slots[at.input] = block_id
    elif isinstance(at, StatementSlot):
        ws.block_set[target.def_id]  # target must exist in the set
        if at.input not in target.statement_slots:
            raise IncompatibleConnection(f"{target.def_id} has no slot {at.input}")
        if moving_def.kind is not BlockKind.STATEMENT:
            raise IncompatibleConnection(
                f"{moving.def_id} is not a statement block"
            )
        old_head = target.statement_slots.get(at.input)
        target.statement_slots[at.input] = block_id
        if old_head is not None:
            ws.block(ws.chain_tail(block_id)).next = old_head
    elif isinstance(at, Next):
        target_def = ws.block_set[target.def_id]
        if moving_def.kind is not BlockKind.STATEMENT:
            raise IncompatibleConnection(f"{moving.def_id} is not a statement block")
        if not target_def.has_next:
            raise IncompatibleConnection(f"{target.def_id} has no next connection")
        old_next = target.next
        target.next = block_id
        if old_next is not None:
            ws.block(ws.chain_tail(block_id)).next = old_next
    elif isinstance(at, Previous):
        if moving_def.kind is not BlockKind.STATEMENT:
            raise IncompatibleConnection(f"{moving.def_id} is not a statement block")
        if ws.block_set[target.def_id].kind is not BlockKind.STATEMENT:
            raise IncompatibleConnection(f"{target.def_id} has no previous connection")
        if not ws.is_stack_top(at.block):
            raise IncompatibleConnection(
                f"previous connection of {at.block} is occupied"
            )
        # The target stack keeps its identity; the moved chain becomes its
        # new top with the old top re-attached after the tail.
        target_stack = ws.stack_of_block(at.block)
        ws.block(ws.chain_tail(block_id)).next = at.block
        target_stack.top = block_id
    else:  # pragma: no cover - exhaustive over ConnectionRef
        raise IncompatibleConnection(f"unsupported connection {at!r}")

    ws._remove_stack(source_stack.label)


def detach(ws: Workspace, block_id: str, heal: bool = True) -> str:
    """Split a block (plus nested children) out into its own stack.

    ``heal`` re-attaches the chain continuation to whatever the block
    hung from; with ``heal=False`` the continuation travels with the
    detached block.  Detaching a stack top is a structural no-op.
    """
    block = ws.block(block_id)
    conn = ws.parent_connection(block_id)
    if conn is None:
        return block_id

    source_stack = ws.stack_of_block(block_id)
    parent = ws.block(conn.block)
    if isinstance(conn, ValueSlot):
        parent.value_slots[conn.input] = None
    elif isinstance(conn, StatementSlot):
        if heal:
            parent.statement_slots[conn.input] = block.next
            block.next = None
        else:
            parent.statement_slots[conn.input] = None
    elif isinstance(conn, Next):
        if heal:
            parent.next = block.next
            block.next = None
        else:
            parent.next = None
    else:  # pragma: no cover - Previous never appears as a parent link
        raise IncompatibleConnection(f"unexpected parent connection {conn!r}")

    label = lowest_unused_label(ws.labels())
    ws._insert_stack(
        Stack(
            label=label,
            top=block_id,
            x=source_stack.x + DETACH_OFFSET[0],
            y=source_stack.y + DETACH_OFFSET[1],
        )
    )
    return block_id


def remove_subtree(ws: Workspace, block_id: str) -> list[str]:
    """Delete a detached stack (its top must be ``block_id``) outright."""
    stack = None
    for s in ws.stacks:
        if s.top == block_id:
            stack = s
            break
    if stack is None:
        raise NotDetached(f"block {block_id} is not a stack top")
    removed = ws.subtree_ids(block_id)
    for bid in removed:
        del ws.blocks[bid]
    ws._remove_stack(stack.label)
    return removed


def children(ws: Workspace, block_id: str) -> list[ElementRef]:
    """Canonical child row used by navigation: fields, then value inputs,
    then statement inputs, all in definition order."""
    block = ws.block(block_id)
    definition = ws.block_set[block.def_id]
    row: list[ElementRef] = []
    for spec in definition.fields:
        row.append(ElementRef("field", spec.name))
    for name, _ in definition.value_inputs:
        row.append(ElementRef("value_input", name, block.value_slots.get(name)))
    for name in definition.statement_inputs:
        row.append(ElementRef("statement_input", name, block.statement_slots.get(name)))
    return row


def preorder(ws: Workspace, stack_label: str) -> list[str]:
    """Document-order traversal of one stack: block, value inputs,
    statement bodies, then the next-chain successor."""
    stack = ws.stack(stack_label)
    out: list[str] = []
    ws._walk(stack.top, out)
    return out


def validate(ws: Workspace) -> list[Violation]:
    """Check every model invariant; an empty list means the workspace is
    structurally sound."""
    violations: list[Violation] = []

    labels = ws.labels()
    if len(set(labels)) != len(labels):
        dupes = sorted({l for l in labels if labels.count(l) > 1})
        violations.append(Violation("DuplicateLabel", ",".join(dupes), "stack labels must be unique"))
    ordered = sorted(labels, key=lambda l: (len(l), l))
    if labels != ordered:
        violations.append(Violation("UnsortedStacks", ",".join(labels), "stacks must be in label order"))

    seen: dict[str, str] = {}

    def visit(block_id: str, owner: str) -> None:
        if block_id not in ws.blocks:
            violations.append(Violation("DanglingRef", block_id, f"referenced from {owner} but missing"))
            return
        if block_id in seen:
            violations.append(
                Violation("SharedChild", block_id, f"reached from both {seen[block_id]} and {owner}")
            )
            return
        seen[block_id] = owner
        block = ws.blocks[block_id]
        if block.def_id not in ws.block_set:
            violations.append(Violation("UnknownDefinition", block_id, f"type {block.def_id!r}"))
            return
        definition = ws.block_set[block.def_id]

        expected_fields = {spec.name for spec in definition.fields}
        if set(block.field_values) != expected_fields:
            violations.append(
                Violation("BadFields", block_id, f"fields {sorted(block.field_values)} != {sorted(expected_fields)}")
            )
        else:
            for spec in definition.fields:
                try:
                    spec.check(block.field_values[spec.name])
                except BadFieldValue as exc:
                    violations.append(Violation("BadFields", block_id, exc.message))

        for name, accepted in definition.value_inputs:
            occupant = block.value_slots.get(name)
            if occupant is None:
                continue
            if occupant not in ws.blocks:
                violations.append(Violation("DanglingRef", occupant, f"value slot {name} of {block_id}"))
                continue
            child_def_id = ws.blocks[occupant].def_id
            if child_def_id in ws.block_set:
                child_def = ws.block_set[child_def_id]
                if child_def.kind is not BlockKind.VALUE:
                    violations.append(Violation("KindMismatch", occupant, f"statement block in value slot {name}"))
                elif child_def.value_output is not None and not compatible(child_def.value_output, accepted):
                    violations.append(
                        Violation("TypeMismatch", occupant, f"{child_def.value_output.value} in {accepted.value} slot")
                    )
            visit(occupant, f"{block_id}.{name}")
        for name in definition.statement_inputs:
            head = block.statement_slots.get(name)
            if head is None:
                continue
            if head in ws.blocks and ws.blocks[head].def_id in ws.block_set:
                if ws.block_set[ws.blocks[head].def_id].kind is not BlockKind.STATEMENT:
                    violations.append(Violation("KindMismatch", head, f"value block in statement slot {name}"))
            visit(head, f"{block_id}.{name}")
        if block.next is not None:
            if definition.kind is not BlockKind.STATEMENT:
                violations.append(Violation("KindMismatch", block_id, "value block with a next chain"))
            if block.next in ws.blocks and ws.blocks[block.next].def_id in ws.block_set:
                if ws.block_set[ws.blocks[block.next].def_id].kind is not BlockKind.STATEMENT:
                    violations.append(Violation("KindMismatch", block.next, "value block in next chain"))
            visit(block.next, f"{block_id}.next")

    for stack in ws.stacks:
        if stack.top not in ws.blocks:
            violations.append(Violation("DanglingRef", stack.top, f"top of stack {stack.label}"))
            continue
        visit(stack.top, f"stack {stack.label}")

    orphans = set(ws.blocks) - set(seen)
    for orphan in sorted(orphans):
        violations.append(Violation("Orphan", orphan, "block belongs to no stack"))
    return violations


def iter_connections(ws: Workspace) -> Iterator[ConnectionRef]:
    """Every connection point in the workspace, occupied or not.

    Used by tests and by the toolbox filter oracle: next connections of
    statement blocks, and all value/statement slots.
    """
    for block in ws.blocks.values():
        definition = ws.block_set[block.def_id]
        if definition.has_next:
            yield Next(block.id)
        if definition.has_previous:
            yield Previous(block.id)
        for name, _ in definition.value_inputs:
            yield ValueSlot(block.id, name)
        for name in definition.statement_inputs:
            yield StatementSlot(block.id, name)
