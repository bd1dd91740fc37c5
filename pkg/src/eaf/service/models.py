"""Pydantic request/response models for the HTTP surface."""

from __future__ import annotations

from pydantic import BaseModel, Field


class AnnouncementModel(BaseModel):
    text: str
    politeness: str
    category: str


class SessionState(BaseModel):
    session_id: str
    cursor_kind: str
    cursor_text: str
    mode: str
    zoom: float
    verbosity: str
    assistant_on: bool
    accessibility_on: bool
    toolbox_open: bool
    field_editing: bool
    stack_count: int
    block_count: int
    state_hash: str


class RenderField(BaseModel):
    name: str
    value: str
    cursor: bool = False


class RenderInput(BaseModel):
    kind: str  # "value_input" | "statement_input"
    name: str
    cursor: bool = False
    block: "RenderBlock | None" = None
    body: "list[RenderBlock] | None" = None


class RenderBlock(BaseModel):
    id: str
    type: str
    kind: str
    number: int
    total: int
    text: str
    aria_label: str
    cursor: bool = False
    comment: str | None = None
    comment_visible: bool = False
    fields: list[RenderField] = Field(default_factory=list)
    inputs: list[RenderInput] = Field(default_factory=list)


class RenderStack(BaseModel):
    label: str
    custom_name: str | None
    x: float
    y: float
    cursor: bool = False
    aria_label: str
    blocks: list[RenderBlock]


class ToolboxRenderEntry(BaseModel):
    def_id: str
    cursor: bool = False


class ToolboxRenderCategory(BaseModel):
    name: str
    entries: list[ToolboxRenderEntry]


class RenderModel(BaseModel):
    stacks: list[RenderStack]
    mode: str
    zoom: float
    cursor_kind: str
    cursor_text: str
    toolbox: list[ToolboxRenderCategory] | None = None
    point: tuple[float, float] | None = None
    empty: bool = False


class CreateSessionRequest(BaseModel):
    workspace: str | None = None
    demo: str | None = None
    keymap: str | None = None
    verbosity: str = "standard"


class SessionResponse(BaseModel):
    state: SessionState
    render: RenderModel


class KeyRequest(BaseModel):
    chord: str
    arg: str | None = None


class KeyResponse(BaseModel):
    command: str
    announcements: list[AnnouncementModel]
    state: SessionState
    render: RenderModel


class CursorRequest(BaseModel):
    block: str


class ScriptRequest(BaseModel):
    script: str


class ReplayRequest(BaseModel):
    workspace: str | None = None
    script: str
    keymap: str | None = None
    verbosity: str = "standard"


class WorkspaceRequest(BaseModel):
    workspace: str


class RunResponse(BaseModel):
    lines: list[str]
    status: str
    message: str


class ViolationModel(BaseModel):
    code: str
    subject: str
    detail: str


class ValidateResponse(BaseModel):
    violations: list[ViolationModel]


class FmtResponse(BaseModel):
    formatted: str
    changed: bool


class DemoList(BaseModel):
    demos: list[str]


class DemoResponse(BaseModel):
    name: str
    workspace: str
