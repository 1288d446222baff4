"""Pre-editing diagnostics and the level-1 post-editing command engine.

Pre-editing normalizes the source text before the pipeline: non-standard
spellings are pointed out with their standard forms, unanalyzable tokens
are flagged, and splits that look like a sandhi written apart get a rejoin
suggestion.

Post-editing operates on documents.  Only level-1 repairs are mechanized:
agreement re-synthesis, ergative ``ne`` insertion behind a data-driven
guard, vibhakti resolution in placeholder slots, alternative promotion, and
free-text override.  Documents are immutable values; every command returns
a new document, so histories double as undo stacks.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .features import FeatureBundle
from .lexicon import Lexicon
from .morph import SynthesisError, analyze_word, synthesize
from .notation import Document, Sentence
from .transfer import MappedGroup, RenderNode, SynthRequest
from .pipeline import tokenize

VERBS = ("set_gnp", "insert_ne", "resolve_vibhakti", "choose_alternative", "replace_form")

_ARG_COUNT = {
    "set_gnp": 3,
    "insert_ne": 0,
    "resolve_vibhakti": 1,
    "choose_alternative": 1,
    "replace_form": 1,
}

_GENDER_ALIASES = {
    "m": "masc", "masc": "masc",
    "f": "fem", "fem": "fem",
    "~m": "non-masc", "non-masc": "non-masc",
    "~n": "non-neuter", "non-neuter": "non-neuter",
    "n": "neuter", "neuter": "neuter",
    "any": "any",
}


class EditError(Exception):
    pass


@dataclass(frozen=True)
class PreEditIssue:
    token_index: int  # index in the full token stream of the text
    token: str
    kind: str  # nonstandard_spelling | unanalyzable | suspect_missplit
    suggestions: tuple[str, ...]
    start: int
    end: int
    span: int = 1  # missplit suggestions consume the next token too


def check_pre_edit(text: str, lexicon: Lexicon) -> list[PreEditIssue]:
    """Per-token diagnostics over raw source text."""
    tokens = tokenize(text)
    issues: list[PreEditIssue] = []
    consumed: set[int] = set()
    for index, token in enumerate(tokens):
        if token.is_punct or index in consumed:
            continue
        standards = lexicon.source.variant_suggestions(token.text)
        if standards:
            issues.append(
                PreEditIssue(index, token.text, "nonstandard_spelling", standards,
                             token.start, token.end)
            )
            continue
        if analyze_word(token.text, lexicon.source):
            continue
        neighbor = tokens[index + 1] if index + 1 < len(tokens) else None
        if neighbor is not None and not neighbor.is_punct \
                and not analyze_word(neighbor.text, lexicon.source) \
                and analyze_word(token.text + neighbor.text, lexicon.source):
            issues.append(
                PreEditIssue(index, token.text, "suspect_missplit",
                             (token.text + neighbor.text,),
                             token.start, neighbor.end, span=2)
            )
            consumed.add(index + 1)
            continue
        issues.append(
            PreEditIssue(index, token.text, "unanalyzable", (), token.start, token.end)
        )
    return issues


def apply_pre_edit(text: str, token_index: int, replacement: str, span: int = 1) -> str:
    """Replace one token (or rejoin a span) leaving every other byte intact."""
    tokens = tokenize(text)
    if token_index < 0 or token_index + span > len(tokens) or span < 1:
        raise IndexError(f"token index {token_index} (span {span}) out of range")
    start = tokens[token_index].start
    end = tokens[token_index + span - 1].end
    return text[:start] + replacement + text[end:]


# --------------------------------------------------------------------------
# Post-editing


@dataclass(frozen=True)
class EditCommand:
    """One command line: position path, verb, arguments.

    Positions address ``sentence.group`` or ``sentence.group.node``,
    zero-based, e.g. ``0.2 set_gnp fem sg 3`` or ``0.3.2 choose_alternative 1``.
    """

    position: tuple[int, ...]
    verb: str
    args: tuple[str, ...] = ()


def parse_command(line: str) -> EditCommand:
    parts = line.split()
    if len(parts) < 2:
        raise EditError(f"bad command line {line!r}")
    try:
        position = tuple(int(p) for p in parts[0].split("."))
    except ValueError:
        raise EditError(f"bad position {parts[0]!r}")
    if len(position) not in (2, 3):
        raise EditError(f"position must be sentence.group or sentence.group.node, got {parts[0]!r}")
    verb = parts[1]
    if verb not in VERBS:
        raise EditError(f"unknown verb {verb!r}")
    args = tuple(parts[2:])
    if len(args) != _ARG_COUNT[verb]:
        raise EditError(f"{verb} takes {_ARG_COUNT[verb]} argument(s), got {len(args)}")
    return EditCommand(position, verb, args)


def format_command(command: EditCommand) -> str:
    position = ".".join(str(p) for p in command.position)
    return " ".join([position, command.verb, *command.args])


def _located(doc: Document, position: tuple[int, ...]) -> tuple[Sentence, MappedGroup]:
    if len(position) < 2:
        raise EditError("invalid position")
    s, g = position[0], position[1]
    if s < 0 or s >= len(doc.sentences):
        raise EditError(f"invalid position: no sentence {s}")
    sentence = doc.sentences[s]
    if g < 0 or g >= len(sentence.groups):
        raise EditError(f"invalid position: no group {s}.{g}")
    group = sentence.groups[g]
    if len(position) == 3:
        n = position[2]
        if n < 0 or n >= len(group.nodes):
            raise EditError(f"invalid position: no node {s}.{g}.{n}")
    return sentence, group


def _rebuild(doc: Document, s: int, g: int, group: MappedGroup) -> Document:
    sentence = doc.sentences[s]
    groups = sentence.groups[:g] + (group,) + sentence.groups[g + 1:]
    new_sentence = Sentence(sentence.tokens, groups)
    return Document(doc.sentences[:s] + (new_sentence,) + doc.sentences[s + 1:])


def _gnp_label(gender: str, number: str, person: str) -> str:
    try:
        gender = _GENDER_ALIASES[gender]
    except KeyError:
        raise EditError(f"unknown gender {gender!r}")
    if number not in ("sg", "pl", "any"):
        raise EditError(f"unknown number {number!r}")
    if not (person in ("any",) or all(p in "123" for p in person.split("|"))):
        raise EditError(f"unknown person {person!r}")
    return f"{gender}_{number}_{person}"


def _set_gnp(group: MappedGroup, label: str, lexicon: Lexicon) -> MappedGroup:
    def resynth(node: RenderNode) -> RenderNode:
        alternatives = tuple(tuple(resynth(sub) for sub in seq) for seq in node.alternatives)
        node = replace(node, alternatives=alternatives)
        if node.annotation is not None and node.annotation.kind == "gnp":
            node = replace(node, annotation=None)
        request = node.request
        if request is None or request.category not in ("verb", "auxiliary"):
            return node
        features = request.features.with_value("gnp", label)
        if request.tam_label:
            features = features.with_value("TAM", request.tam_label)
        form = synthesize(request.root, request.category, features, lexicon.target)
        return replace(node, form=form, request=replace(request, features=features))

    return replace(group, nodes=tuple(resynth(node) for node in group.nodes))


def _governing_verb_group(doc: Document, s: int, g: int) -> MappedGroup | None:
    sentence = doc.sentences[s]
    for group in sentence.groups[g + 1:]:
        if group.kind == "verb_group":
            return group
    for group in sentence.groups:
        if group.kind == "verb_group":
            return group
    return None


def _insert_ne(doc: Document, s: int, g: int, lexicon: Lexicon) -> MappedGroup:
    sentence = doc.sentences[s]
    group = sentence.groups[g]
    if group.kind != "noun_group":
        raise EditError("insert_ne addresses a noun group")
    verb_group = _governing_verb_group(doc, s, g)
    if verb_group is None:
        raise EditError("insert_ne refused: no governing verb group")
    if not (verb_group.suppresses_ne or verb_group.ne_class):
        raise EditError("insert_ne refused: the governing verb group does not license it")
    nodes = tuple(replace(n, dialect_marked=False) for n in group.nodes)
    source_token = nodes[-1].source_token if nodes else None
    ne_node = RenderNode(form="ne", joined_to_previous=True,
                         source_token=source_token, source_roles=("case",))
    entries = lexicon.target.lookup_root("ne")
    if entries:
        ne_node = replace(
            ne_node,
            request=SynthRequest(entries[0].root, entries[0].category, FeatureBundle()),
        )
    return replace(group, nodes=nodes + (ne_node,))


def _resolve_vibhakti(group: MappedGroup, n: int, form: str, lexicon: Lexicon) -> MappedGroup:
    nodes = list(group.nodes)
    node = nodes[n]
    if not node.placeholder:
        raise EditError("resolve_vibhakti addresses a placeholder node")
    nodes[n] = replace(node, form=form)
    # The relative pronoun before the slot takes its oblique form, e.g.
    # jo -> jisa, when the synthesizer knows one.
    if n > 0:
        previous = nodes[n - 1]
        request = previous.request
        if request is not None and request.category == "pronoun":
            features = request.features.with_value("case", "oblique")
            try:
                oblique = synthesize(request.root, request.category, features,
                                     lexicon.target)
            except SynthesisError:
                oblique = None
            if oblique is not None:
                nodes[n - 1] = replace(previous, form=oblique,
                                       request=replace(request, features=features))
    return replace(group, nodes=tuple(nodes))


def _choose_alternative(group: MappedGroup, n: int, index: int) -> MappedGroup:
    nodes = list(group.nodes)
    node = nodes[n]
    if not node.alternatives:
        raise EditError("node has no alternatives")
    if index < 0 or index >= len(node.alternatives):
        raise EditError(f"no alternative {index}")
    chosen = [replace(sub) for sub in node.alternatives[index]]
    chosen[0] = replace(chosen[0], joined_to_previous=node.joined_to_previous,
                        source_token=chosen[0].source_token
                        if chosen[0].source_token is not None else node.source_token)
    if node.annotation is not None and chosen[-1].annotation is None:
        chosen[-1] = replace(chosen[-1], annotation=node.annotation)
    nodes[n:n + 1] = chosen
    return replace(group, nodes=tuple(nodes))


def apply_post_edit(doc: Document, command: EditCommand, lexicon: Lexicon) -> Document:
    """Apply one command, returning a new document; the input is unchanged.

    Only nodes within the addressed group change; every other group renders
    byte-identically.
    """
    _, group = _located(doc, command.position)
    s, g = command.position[0], command.position[1]

    if command.verb == "set_gnp":
        label = _gnp_label(*command.args)
        new_group = _set_gnp(group, label, lexicon)
    elif command.verb == "insert_ne":
        new_group = _insert_ne(doc, s, g, lexicon)
    elif command.verb == "resolve_vibhakti":
        if len(command.position) != 3:
            raise EditError("resolve_vibhakti needs a node position")
        new_group = _resolve_vibhakti(group, command.position[2], command.args[0], lexicon)
    elif command.verb == "choose_alternative":
        if len(command.position) != 3:
            raise EditError("choose_alternative needs a node position")
        try:
            index = int(command.args[0])
        except ValueError:
            raise EditError(f"bad alternative index {command.args[0]!r}")
        new_group = _choose_alternative(group, command.position[2], index)
    elif command.verb == "replace_form":
        if len(command.position) != 3:
            raise EditError("replace_form needs a node position")
        nodes = list(group.nodes)
        node = nodes[command.position[2]]
        nodes[command.position[2]] = replace(node, form=command.args[0], manual=True)
        new_group = replace(group, nodes=tuple(nodes))
    else:  # pragma: no cover - parse_command rejects unknown verbs
        raise EditError(f"unknown verb {command.verb!r}")

    return _rebuild(doc, s, g, new_group)
