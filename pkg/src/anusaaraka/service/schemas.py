"""Request/response models and document serialization for the wire format.

Documents go over the wire as the full-detail notation string plus a
structured view: groups and nodes with a parallel provenance array
(source token index per node).
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..edit import PreEditIssue
from ..notation import Document, render, render_group, render_node
from ..transfer import MappedGroup, RenderNode


class TranslateRequest(BaseModel):
    text: str
    detail: int = Field(default=2, ge=0, le=2)


class CheckRequest(BaseModel):
    text: str


class SessionCreateRequest(BaseModel):
    text: str


class PreEditRequest(BaseModel):
    tokenIndex: int
    replacement: str
    span: int = 1


class CommandRequest(BaseModel):
    position: str
    verb: str
    args: list[str] = Field(default_factory=list)


class ErrorBody(BaseModel):
    code: str
    message: str
    position: str | None = None


class NodeModel(BaseModel):
    form: str | None
    alternatives: list[str] = Field(default_factory=list)
    annotation: list[str] = Field(default_factory=list)
    dialectMarked: bool = False
    joined: bool = False
    placeholder: bool = False
    manual: bool = False
    sourceToken: int | None = None
    canSetGnp: bool = False


class GroupModel(BaseModel):
    kind: str
    notation: str
    punct: bool = False
    suppressesNe: bool = False
    neLicensed: bool = False
    nodes: list[NodeModel]


class SentenceModel(BaseModel):
    tokens: list[str]
    groups: list[GroupModel]


class DocumentModel(BaseModel):
    notation: str
    sentences: list[SentenceModel]


class IssueModel(BaseModel):
    tokenIndex: int
    token: str
    kind: str
    suggestions: list[str]
    start: int
    end: int
    span: int = 1


class TranslateResponse(BaseModel):
    notation: str
    document: DocumentModel


class CheckResponse(BaseModel):
    issues: list[IssueModel]


class SessionResponse(BaseModel):
    id: str
    version: int
    source: str
    detailLevels: list[int] = Field(default_factory=lambda: [0, 1, 2])
    issues: list[IssueModel]
    document: DocumentModel
    notation: str


class EntryModel(BaseModel):
    root: str
    category: str
    paradigm: str
    features: str
    gloss: str | None = None


class EntryResponse(BaseModel):
    root: str
    side: str
    entries: list[EntryModel]


def issue_model(issue: PreEditIssue) -> IssueModel:
    return IssueModel(
        tokenIndex=issue.token_index,
        token=issue.token,
        kind=issue.kind,
        suggestions=list(issue.suggestions),
        start=issue.start,
        end=issue.end,
        span=issue.span,
    )


def _node_model(node: RenderNode, can_set_gnp: bool) -> NodeModel:
    alternatives = []
    for seq in node.alternatives:
        rendered = [render_node(sub, 2) for sub in seq]
        alternatives.append("_".join(r for r in rendered if r is not None))
    return NodeModel(
        form=node.form,
        alternatives=alternatives,
        annotation=list(node.annotation.items) if node.annotation else [],
        dialectMarked=node.dialect_marked,
        joined=node.joined_to_previous,
        placeholder=node.placeholder,
        manual=node.manual,
        sourceToken=node.source_token,
        canSetGnp=can_set_gnp,
    )


def _group_model(group: MappedGroup) -> GroupModel:
    can_set_gnp = group.kind == "verb_group"
    return GroupModel(
        kind=group.kind,
        notation=render_group(group, 2),
        punct=group.punct,
        suppressesNe=group.suppresses_ne,
        neLicensed=group.suppresses_ne or group.ne_class,
        nodes=[_node_model(node, can_set_gnp) for node in group.nodes],
    )


def document_model(doc: Document) -> DocumentModel:
    return DocumentModel(
        notation=render(doc, 2),
        sentences=[
            SentenceModel(
                tokens=list(sentence.tokens),
                groups=[_group_model(group) for group in sentence.groups],
            )
            for sentence in doc.sentences
        ],
    )
