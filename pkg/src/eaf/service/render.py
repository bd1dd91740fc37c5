"""Session -> render model: everything the web UI needs to draw one frame,
with accessible labels precomputed engine-side."""

from __future__ import annotations

from ..announce import Verbosity, describe_block, render_scalar
from ..blocks import BlockKind, Workspace
from ..editing import Mode
from ..labeling import renumber
from ..navigation import (
    BlockFocus,
    CursorLocation,
    ElementFocus,
    StackHead,
    ToolboxEntry,
    WorkspacePoint,
    describe_location,
)
from ..serialize import state_hash
from ..session import Session
from .models import (
    RenderBlock,
    RenderField,
    RenderInput,
    RenderModel,
    RenderStack,
    SessionState,
    ToolboxRenderCategory,
    ToolboxRenderEntry,
)

_CURSOR_KINDS = {
    WorkspacePoint: "point",
    StackHead: "stack",
    BlockFocus: "block",
    ElementFocus: "element",
    ToolboxEntry: "toolbox",
}


def cursor_kind(location: CursorLocation) -> str:
    return _CURSOR_KINDS[type(location)]


def session_state(session_id: str, session: Session) -> SessionState:
    return SessionState(
        session_id=session_id,
        cursor_kind=cursor_kind(session.cursor),
        cursor_text=describe_location(
            session.workspace, session.cursor, session.toolbox_view()
        ).standard,
        mode=session.mode.value,
        zoom=session.zoom,
        verbosity=session.verbosity.value,
        assistant_on=session.assistant_on,
        accessibility_on=session.accessibility_on,
        toolbox_open=session.toolbox.open,
        field_editing=session.field_edit is not None,
        stack_count=len(session.workspace.stacks),
        block_count=len(session.workspace.blocks),
        state_hash=state_hash(session.workspace),
    )


def _render_block(session: Session, block_id: str, numbering) -> RenderBlock:
    ws = session.workspace
    block = ws.block(block_id)
    definition = ws.block_set[block.def_id]
    cursor = session.cursor
    from .. import announce
    from ..blocks import children

    fields = []
    inputs = []
    for index, element in enumerate(children(ws, block_id)):
        on_element = isinstance(cursor, ElementFocus) and cursor == ElementFocus(
            block_id, index
        )
        if element.kind == "field":
            fields.append(
                RenderField(
                    name=element.name,
                    value=render_scalar(block.field_values[element.name]),
                    cursor=on_element,
                )
            )
        elif element.kind == "value_input":
            inputs.append(
                RenderInput(
                    kind="value_input",
                    name=element.name,
                    cursor=on_element,
                    block=(
                        _render_block(session, element.attached, numbering)
                        if element.attached
                        else None
                    ),
                )
            )
        else:
            body = []
            head = element.attached
            while head is not None:
                body.append(_render_block(session, head, numbering))
                head = ws.block(head).next
            inputs.append(
                RenderInput(
                    kind="statement_input",
                    name=element.name,
                    cursor=on_element,
                    body=body or None,
                )
            )
    position = numbering[block_id]
    return RenderBlock(
        id=block_id,
        type=block.def_id,
        kind=definition.kind.value,
        number=position.number,
        total=position.total,
        text=announce.block_text(ws, block_id),
        aria_label=describe_block(ws, block_id, Verbosity.STANDARD),
        cursor=isinstance(cursor, BlockFocus) and cursor.block == block_id,
        comment=block.comment.text if block.comment else None,
        comment_visible=bool(block.comment and block.comment.visible),
        fields=fields,
        inputs=inputs,
    )


def render_model(session: Session) -> RenderModel:
    ws = session.workspace
    numbering = renumber(ws)
    cursor = session.cursor
    stacks = []
    for stack in ws.stacks:
        blocks = []
        head: str | None = stack.top
        while head is not None:
            blocks.append(_render_block(session, head, numbering))
            head = ws.block(head).next
        label = f'Stack {stack.label}'
        if stack.custom_name:
            label += f', "{stack.custom_name}"'
        stacks.append(
            RenderStack(
                label=stack.label,
                custom_name=stack.custom_name,
                x=stack.x,
                y=stack.y,
                cursor=cursor == StackHead(stack.label),
                aria_label=label,
                blocks=blocks,
            )
        )
    toolbox = None
    if session.toolbox.open:
        view = session.toolbox.visible()
        toolbox = [
            ToolboxRenderCategory(
                name=name,
                entries=[
                    ToolboxRenderEntry(
                        def_id=def_id,
                        cursor=cursor == ToolboxEntry(ci, ei),
                    )
                    for ei, def_id in enumerate(entries)
                ],
            )
            for ci, (name, entries) in enumerate(view)
        ]
    return RenderModel(
        stacks=stacks,
        mode=session.mode.value,
        zoom=session.zoom,
        cursor_kind=cursor_kind(cursor),
        cursor_text=describe_location(ws, cursor, session.toolbox_view()).standard,
        toolbox=toolbox,
        point=(cursor.x, cursor.y) if isinstance(cursor, WorkspacePoint) else None,
        empty=not ws.stacks,
    )
