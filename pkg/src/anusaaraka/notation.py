"""The dialect notation: rendering at a chosen detail level and parsing it
back (losslessly at full detail).

Grammar (level 2 is the canonical on-disk/wire form, see NOTATION.md):

    sentence := group (SP group)*        punctuation attaches without a space
    group    := node (US node)*
    node     := form? alt? ann? tick?    at least one of form/alt
    form     := symbols | '*'
    alt      := '[' seq ('|' seq)* ']'
    seq      := node (US node)*          no nested alternatives
    ann      := '{' item ('_' item)* '}'
    tick     := '`'

Detail levels: 2 emits everything; 1 erases annotations and dialect ticks;
0 additionally erases alternatives (keeping primary forms) and placeholders.
Underscore joins are kept at all levels.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .features import Annotation, GENDER_MARKS, NUMBER_MARKS
from .transfer import MappedGroup, RenderNode

PUNCT_CHARS = ".?!,;:।"
SENTENCE_FINAL = ".?!।"
_RESERVED = set("[]{}|`_ \t\n") | set(PUNCT_CHARS)

DETAIL_LEVELS = (0, 1, 2)


class NotationError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at offset {position}")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[str, ...]
    groups: tuple[MappedGroup, ...]


@dataclass(frozen=True)
class Document:
    sentences: tuple[Sentence, ...] = ()


def _check_level(level: int) -> None:
    if level not in DETAIL_LEVELS:
        raise ValueError(f"detail level must be one of {DETAIL_LEVELS}")


def is_punct_group(group: MappedGroup) -> bool:
    if group.punct:
        return True
    if len(group.nodes) == 1 and group.nodes[0].form:
        return all(ch in PUNCT_CHARS for ch in group.nodes[0].form)
    return False


def render_node(node: RenderNode, level: int) -> str | None:
    """Text of one node at the given level; None when fully erased."""
    if node.form is None and node.request is not None:
        raise ValueError("cannot render an unsynthesized node")
    if level == 0:
        if node.placeholder:
            return None
        if node.form is None:
            if not node.alternatives:
                return None
            rendered = [render_node(sub, 0) for sub in node.alternatives[0]]
            return "_".join(r for r in rendered if r is not None)
        return node.form
    text = node.form or ""
    if node.alternatives:
        seqs = []
        for seq in node.alternatives:
            rendered = [render_node(sub, level) for sub in seq]
            seqs.append("_".join(r for r in rendered if r is not None))
        text += "[" + "|".join(seqs) + "]"
    if level >= 2 and node.annotation is not None:
        text += node.annotation.render()
    if level >= 2 and node.dialect_marked:
        text += "`"
    return text


def render_group(group: MappedGroup, level: int) -> str:
    parts = []
    for node in group.nodes:
        text = render_node(node, level)
        if text is not None and text != "":
            parts.append(text)
    return "_".join(parts)


def render(doc: Document, level: int = 2) -> str:
    """Serialize a document; groups separated by single spaces, punctuation
    attached without a preceding space."""
    _check_level(level)
    out: list[str] = []
    for sentence in doc.sentences:
        for group in sentence.groups:
            text = render_group(group, level)
            if not text:
                continue
            if out and not is_punct_group(group):
                out.append(" ")
            out.append(text)
    return "".join(out)


# --------------------------------------------------------------------------
# Parsing


def _annotation_kind(items: tuple[str, ...]) -> str:
    if len(items) == 1 and items[0] in GENDER_MARKS.values():
        return "gender"
    known = set(GENDER_MARKS.values()) | set(NUMBER_MARKS.values())
    if items and all(item in known or item.isdigit() for item in items):
        return "gnp"
    return "raw"


class _GroupParser:
    """Recursive-descent parser for one space-delimited chunk."""

    def __init__(self, chunk: str, base: int):
        self.chunk = chunk
        self.base = base
        self.at = 0

    def error(self, message: str, at: int | None = None) -> NotationError:
        return NotationError(message, self.base + (self.at if at is None else at))

    def peek(self) -> str:
        return self.chunk[self.at] if self.at < len(self.chunk) else ""

    def _scan_form(self) -> str:
        start = self.at
        while self.at < len(self.chunk) and self.chunk[self.at] not in _RESERVED:
            self.at += 1
        return self.chunk[start:self.at]

    def _scan_annotation(self) -> Annotation:
        opened = self.at
        self.at += 1  # '{'
        start = self.at
        while self.at < len(self.chunk) and self.chunk[self.at] != "}":
            if self.chunk[self.at] in "{[":
                raise self.error("nested bracket inside annotation")
            self.at += 1
        if self.at >= len(self.chunk):
            raise self.error("unclosed annotation", opened)
        body = self.chunk[start:self.at]
        self.at += 1  # '}'
        items = tuple(body.split("_")) if body else ()
        if not items or any(not item for item in items):
            raise self.error("empty annotation item", opened)
        return Annotation(items, _annotation_kind(items))

    def _parse_simple_node(self, allow_alt: bool) -> RenderNode:
        start = self.at
        form = self._scan_form()
        alternatives: tuple[tuple[RenderNode, ...], ...] = ()
        if self.peek() == "[":
            if not allow_alt:
                raise self.error("nested alternatives are not allowed")
            alternatives = self._scan_alternatives()
        annotation = None
        if self.peek() == "{":
            annotation = self._scan_annotation()
        dialect = False
        if self.peek() == "`":
            dialect = True
            self.at += 1
        if not form and not alternatives:
            raise self.error("expected a form", start)
        return RenderNode(
            form=form if form else None,
            alternatives=alternatives,
            annotation=annotation,
            dialect_marked=dialect,
        )

    def _scan_alternatives(self) -> tuple[tuple[RenderNode, ...], ...]:
        opened = self.at
        self.at += 1  # '['
        seqs: list[tuple[RenderNode, ...]] = []
        seq: list[RenderNode] = []
        while True:
            if self.at >= len(self.chunk):
                raise self.error("unclosed alternative set", opened)
            ch = self.peek()
            if ch == "]":
                self.at += 1
                break
            if ch == "|":
                if not seq:
                    raise self.error("empty alternative")
                seqs.append(tuple(seq))
                seq = []
                self.at += 1
                continue
            if ch == "_":
                self.at += 1
                continue
            node = self._parse_simple_node(allow_alt=False)
            if seq:
                node = replace(node, joined_to_previous=True)
            seq.append(node)
        if not seq:
            raise self.error("empty alternative", opened)
        seqs.append(tuple(seq))
        return tuple(seqs)

    def parse(self) -> list[MappedGroup]:
        groups: list[MappedGroup] = []
        nodes: list[RenderNode] = []
        while self.at < len(self.chunk):
            ch = self.peek()
            if ch in PUNCT_CHARS:
                if nodes:
                    groups.append(MappedGroup(nodes=tuple(nodes), kind="singleton"))
                    nodes = []
                start = self.at
                while self.at < len(self.chunk) and self.peek() in PUNCT_CHARS:
                    self.at += 1
                punct = self.chunk[start:self.at]
                groups.append(
                    MappedGroup(
                        nodes=(RenderNode(form=punct),), kind="singleton", punct=True
                    )
                )
                continue
            node = self._parse_simple_node(allow_alt=True)
            if nodes:
                node = replace(node, joined_to_previous=True)
            nodes.append(node)
            if self.peek() == "_":
                self.at += 1
                if self.at >= len(self.chunk):
                    raise self.error("dangling join")
                continue
            if self.peek() and self.peek() not in PUNCT_CHARS:
                raise self.error(f"unexpected character {self.peek()!r}")
        if nodes:
            groups.append(MappedGroup(nodes=tuple(nodes), kind="singleton"))
        return groups


def parse_notation(text: str, level: int = 2) -> Document:
    """Parse notation text back into a document skeleton.

    The skeleton reconstructs groups, alternatives, annotations,
    placeholders, and dialect markers; source tokens and synthesis
    provenance are not recoverable from text.
    """
    _check_level(level)
    groups: list[MappedGroup] = []
    offset = 0
    for chunk in text.split(" "):
        if chunk:
            groups.extend(_GroupParser(chunk, offset).parse())
        offset += len(chunk) + 1
    sentences: list[Sentence] = []
    pending: list[MappedGroup] = []
    for group in groups:
        pending.append(group)
        if is_punct_group(group) and group.nodes[0].form \
                and any(ch in SENTENCE_FINAL for ch in group.nodes[0].form):
            sentences.append(Sentence((), tuple(pending)))
            pending = []
    if pending:
        sentences.append(Sentence((), tuple(pending)))
    return Document(tuple(sentences))
