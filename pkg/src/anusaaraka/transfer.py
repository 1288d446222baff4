"""Mapping word groups onto target-language material.

Roots are substituted through the bilingual dictionary (first target is the
primary form, the rest become bracketed alternatives), group vibhakti and
TAM labels expand through the mapping templates, and source agreement
features are attached as display annotations, never inferred.  Word and
group order is copied from the source verbatim; the engine never reorders.

Verb forms are generated in the target citation agreement (masculine
singular third person); the source agreement is displayed as a chip and a
post-edit command re-synthesizes the forms when a human asks for it.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .features import (
    ANY,
    Annotation,
    FeatureBundle,
    gender_annotation,
    gnp_annotation,
)
from .grouper import WordGroup
from .lexicon import Lexicon, RootMapping, TamElement, TamMapping
from .morph import Analysis, SynthesisError, synthesize

DEFAULT_GNP = "masc_sg_3"  # target citation agreement for raw output


class TransferError(Exception):
    pass


@dataclass(frozen=True)
class SynthRequest:
    root: str
    category: str
    features: FeatureBundle
    tam_label: str | None = None


@dataclass(frozen=True)
class RenderNode:
    """One element of the dialect notation."""

    form: str | None = None
    request: SynthRequest | None = None
    alternatives: tuple[tuple["RenderNode", ...], ...] = ()
    annotation: Annotation | None = None
    dialect_marked: bool = False
    joined_to_previous: bool = False
    gnp_slot: bool = False
    head_tam: str | None = None  # unbound template suffix label (map_tam output)
    manual: bool = False
    source_token: int | None = None
    source_roles: tuple[str, ...] = ()

    @property
    def placeholder(self) -> bool:
        return self.form == "*"


@dataclass(frozen=True)
class MappedGroup:
    """Target-side morpheme sequence for one source group."""

    nodes: tuple[RenderNode, ...]
    kind: str
    source: WordGroup | None = None
    suppresses_ne: bool = False
    ne_class: bool = False
    explicit_gnp: bool = False
    head_index: int = 0
    punct: bool = False


def _literal_node(text: str, lexicon: Lexicon, *, dialect: bool = False,
                  joined: bool = True, source_token: int | None = None,
                  roles: tuple[str, ...] = (), gnp_slot: bool = False) -> RenderNode:
    request = None
    entries = lexicon.target.lookup_root(text)
    if entries:
        entry = entries[0]
        request = SynthRequest(entry.root, entry.category, FeatureBundle())
    return RenderNode(
        form=text,
        request=request,
        dialect_marked=dialect,
        joined_to_previous=joined,
        gnp_slot=gnp_slot,
        source_token=source_token,
        source_roles=roles,
    )


def _head_suffix_nodes(element: TamElement, mapping: TamMapping,
                       head_pieces: tuple[str, ...], head_category: str,
                       lexicon: Lexicon, source_token: int | None) -> list[RenderNode]:
    nodes = [
        _literal_node(piece, lexicon, source_token=source_token, roles=("root",))
        for piece in head_pieces[:-1]
    ]
    features = FeatureBundle.of(TAM=element.text, gnp=DEFAULT_GNP)
    nodes.append(
        RenderNode(
            request=SynthRequest(head_pieces[-1], head_category, features, element.text),
            dialect_marked=element.dialect or mapping.dialect_marked,
            joined_to_previous=True,
            gnp_slot=element.gnp_slot,
            source_token=source_token,
            source_roles=("root", "tam"),
        )
    )
    return nodes


def _expand_elements(elements: tuple[TamElement, ...], mapping: TamMapping,
                     lexicon: Lexicon, head_pieces: tuple[str, ...] | None,
                     head_category: str, source_token: int | None,
                     flatten: bool = False) -> list[RenderNode]:
    nodes: list[RenderNode] = []
    for element in elements:
        if element.kind == "head_suffix":
            if head_pieces is None:
                nodes.append(
                    RenderNode(
                        head_tam=element.text,
                        dialect_marked=element.dialect or mapping.dialect_marked,
                        joined_to_previous=True,
                        gnp_slot=element.gnp_slot,
                        source_token=source_token,
                        source_roles=("root", "tam"),
                    )
                )
            else:
                nodes.extend(
                    _head_suffix_nodes(element, mapping, head_pieces, head_category,
                                       lexicon, source_token)
                )
        elif element.kind == "stem_slot":
            if head_pieces is None:
                raise TransferError("stem slot outside a mapped group")
            stem = TamElement("head_suffix", "stem")
            nodes.extend(
                _head_suffix_nodes(stem, mapping, head_pieces, head_category,
                                   lexicon, source_token)
            )
        elif element.kind == "placeholder":
            nodes.append(
                RenderNode(form="*", joined_to_previous=True,
                           dialect_marked=element.dialect,
                           source_token=source_token, source_roles=("tam",))
            )
        elif element.kind == "alternatives":
            seqs = tuple(
                tuple(
                    _expand_elements(seq, mapping, lexicon, head_pieces,
                                     head_category, source_token, flatten=True)
                )
                for seq in element.alternatives
            )
            if flatten:
                chosen = (_expand_elements((TamElement("literal", element.text),),
                                           mapping, lexicon, head_pieces, head_category,
                                           source_token)
                          if element.text else list(seqs[0]))
                nodes.extend(chosen)
            else:
                nodes.append(
                    RenderNode(
                        form=element.text or None,
                        request=(_literal_node(element.text, lexicon).request
                                 if element.text else None),
                        alternatives=seqs,
                        dialect_marked=element.dialect or mapping.dialect_marked,
                        joined_to_previous=True,
                        gnp_slot=element.gnp_slot,
                        source_token=source_token,
                        source_roles=("tam",),
                    )
                )
        else:  # literal
            nodes.append(
                _literal_node(
                    element.text, lexicon,
                    dialect=element.dialect or mapping.dialect_marked,
                    source_token=source_token,
                    roles=("tam",) if mapping.kind == "tam" else (mapping.kind,),
                    gnp_slot=element.gnp_slot,
                )
            )
    return nodes


def map_tam(label: str, lexicon: Lexicon, kind: str = "tam") -> tuple[RenderNode, ...]:
    """Expand a TAM label's rendering template into unbound notation nodes."""
    mapping = lexicon.tam_mapping(label, kind)
    if mapping is None:
        raise TransferError(f"no {kind} mapping for label {label!r}")
    return tuple(_expand_elements(mapping.elements, mapping, lexicon, None, "verb", None))


def tam_signature(nodes: tuple[RenderNode, ...]) -> str:
    """Underscore-joined display of a template expansion, e.g. yA_HE_jo_*_vaHa."""
    parts = []
    for node in nodes:
        if node.head_tam is not None:
            parts.append(node.head_tam)
        elif node.form is not None:
            parts.append(node.form)
        elif node.alternatives:
            parts.append(
                "[" + "|".join(tam_signature(seq) for seq in node.alternatives) + "]"
            )
    return "_".join(parts)


def _case_nodes(case_label: str | None, lexicon: Lexicon, source_token: int | None
                ) -> tuple[str | None, list[RenderNode]]:
    """Map a source case label to (target case value, postposition nodes)."""
    if case_label is None or case_label == ANY:
        return None, []
    mapping = lexicon.tam_mapping(case_label, "case")
    if mapping is None:
        return None, []
    nodes = _expand_elements(mapping.elements, mapping, lexicon, None, "noun", source_token)
    # Postpositions are literal words; rebind their roles to the case morpheme.
    nodes = [replace(n, source_roles=("case",)) for n in nodes]
    return mapping.target_case, nodes


def _nominal_request(analysis: Analysis, target_root: str, target_category: str,
                     target_case: str | None) -> SynthRequest:
    features = FeatureBundle()
    number = analysis.features.get("number")
    if number:
        features = features.with_value("number", "|".join(number))
    if target_case:
        features = features.with_value("case", target_case)
    return SynthRequest(target_root, target_category, features)


def _nominal_nodes(analysis: Analysis, mapping: RootMapping, lexicon: Lexicon,
                   source_token: int | None) -> tuple[list[RenderNode], int]:
    """Head pieces plus case postpositions; returns (nodes, head node index)."""
    target_root, target_category = mapping.targets[0]
    pieces = target_root.split("_")
    target_case, case_nodes = _case_nodes(analysis.features.first("case"),
                                          lexicon, source_token)
    nodes = [
        _literal_node(piece, lexicon, source_token=source_token, roles=("root",))
        for piece in pieces[:-1]
    ]
    roles = ("root", "case") if analysis.features.first("case") else ("root",)
    nodes.append(
        RenderNode(
            request=_nominal_request(analysis, pieces[-1], target_category, target_case),
            joined_to_previous=True,
            source_token=source_token,
            source_roles=roles,
        )
    )
    head_index = len(nodes) - 1
    nodes.extend(case_nodes)
    return nodes, head_index


def _verb_nodes(analysis: Analysis, mapping: RootMapping, lexicon: Lexicon,
                source_token: int | None) -> tuple[list[RenderNode], TamMapping | None]:
    target_root, target_category = mapping.targets[0]
    pieces = tuple(target_root.split("_"))
    tam_label = analysis.features.first("TAM")
    tam_mapping = lexicon.tam_mapping(tam_label) if tam_label else None
    if tam_mapping is None:
        stem = TamMapping(label="stem", kind="tam", target_case=None,
                          elements=(TamElement("head_suffix", "stem"),))
        nodes = _expand_elements(stem.elements, stem, lexicon, pieces, target_category,
                                 source_token)
        return nodes, None
    nodes = _expand_elements(tam_mapping.elements, tam_mapping, lexicon, pieces,
                             target_category, source_token)
    qmarker = analysis.features.first("qmarker")
    if qmarker:
        q_mapping = lexicon.tam_mapping(qmarker, "qmarker")
        if q_mapping is not None:
            q_nodes = _expand_elements(q_mapping.elements, q_mapping, lexicon, pieces,
                                       target_category, source_token)
            nodes.extend(replace(n, source_roles=("qmarker",)) for n in q_nodes)
    return nodes, tam_mapping


def _analysis_rendering(analysis: Analysis, lexicon: Lexicon,
                        source_token: int | None) -> tuple[RenderNode, ...]:
    """Flat rendering of one analysis, used for bracketed head alternatives."""
    mapping = lexicon.root_mapping(analysis.root, analysis.category)
    if mapping is None:
        return ()
    if analysis.category in ("verb", "auxiliary"):
        nodes, _ = _verb_nodes(analysis, mapping, lexicon, source_token)
    else:
        nodes, _ = _nominal_nodes(analysis, mapping, lexicon, source_token)
    return tuple(nodes)


def _passthrough(group: WordGroup, kind: str) -> MappedGroup:
    node = RenderNode(form=group.tokens[0], dialect_marked=True,
                      source_token=group.span[0], source_roles=("root",))
    return MappedGroup(nodes=(node,), kind=kind, source=group)


def map_group(group: WordGroup, lexicon: Lexicon) -> MappedGroup:
    """Substitute one source group by target material, ambiguity preserved."""
    token_index = group.span[0]
    if group.punct:
        node = RenderNode(form=group.tokens[0], source_token=token_index,
                          source_roles=("punct",))
        return MappedGroup(nodes=(node,), kind="singleton", source=group, punct=True)
    if group.kind == "unknown" or not group.head_analyses:
        return _passthrough(group, "unknown")

    if group.kind == "fixed_expression" and group.pattern is not None \
            and group.pattern.group_meaning is not None:
        meaning = group.pattern.group_meaning
        target_root, _ = meaning.targets[0]
        nodes = tuple(
            _literal_node(piece, lexicon, source_token=token_index, roles=("root",))
            for piece in target_root.split("_")
        )
        return MappedGroup(nodes=nodes, kind="fixed_expression", source=group,
                           head_index=len(nodes) - 1)

    primary = group.primary_analysis()
    assert primary is not None
    mapping = lexicon.root_mapping(primary.root, primary.category)
    if mapping is None:
        return _passthrough(group, group.kind)

    nodes: list[RenderNode] = []
    # Sandhi/compound modifier parts render before the head, in source order.
    for part in primary.prefix:
        nodes.extend(_analysis_rendering(part, lexicon, token_index))

    suppresses_ne = False
    ne_class = False
    explicit_gnp = False
    if group.kind == "verb_group":
        head_nodes, tam_mapping = _verb_nodes(primary, mapping, lexicon, token_index)
        head_index = len(nodes) + max(
            (i for i, n in enumerate(head_nodes) if n.request is not None
             and n.request.tam_label is not None),
            default=len(head_nodes) - 1,
        )
        nodes.extend(head_nodes)
        if tam_mapping is not None:
            suppresses_ne = tam_mapping.suppresses_ne
            ne_class = tam_mapping.ne_class
            explicit_gnp = tam_mapping.explicit_gnp
    else:
        head_nodes, rel_index = _nominal_nodes(primary, mapping, lexicon, token_index)
        head_index = len(nodes) + rel_index
        nodes.extend(head_nodes)
        # Function words grouped behind the head map element-wise.
        for offset, root in enumerate(group.group_vibhakti):
            follower_token = group.span[0] + 1 + offset
            follower_mapping = lexicon.root_mapping(root, "postposition")
            if follower_mapping is None:
                nodes.append(
                    RenderNode(form=root, dialect_marked=True, joined_to_previous=True,
                               source_token=follower_token, source_roles=("case",))
                )
            else:
                for piece in follower_mapping.targets[0][0].split("_"):
                    nodes.append(
                        _literal_node(piece, lexicon, source_token=follower_token,
                                      roles=("case",))
                    )

    # Bracketed alternatives: further bilingual equivalents, then the
    # renderings of the remaining analyses of an ambiguous head.
    alternative_seqs: list[tuple[RenderNode, ...]] = []
    for target_root, _ in mapping.targets[1:]:
        alternative_seqs.append(
            tuple(
                _literal_node(piece, lexicon, source_token=token_index, roles=("root",))
                for piece in target_root.split("_")
            )
        )
    for analysis in group.head_analyses:
        if analysis is primary:
            continue
        seq = _analysis_rendering(analysis, lexicon, token_index)
        if seq:
            alternative_seqs.append(seq)
    if alternative_seqs:
        host = nodes[head_index]
        nodes[head_index] = replace(
            host, alternatives=host.alternatives + tuple(alternative_seqs)
        )

    if nodes:
        nodes[0] = replace(nodes[0], joined_to_previous=False)
    return MappedGroup(
        nodes=tuple(nodes),
        kind=group.kind,
        source=group,
        suppresses_ne=suppresses_ne,
        ne_class=ne_class,
        explicit_gnp=explicit_gnp,
        head_index=head_index,
    )


def annotate_agreement(mapped: MappedGroup, source_features: FeatureBundle) -> MappedGroup:
    """Attach source gender/number/person to forms that underdetermine them.

    Annotations come only from source analyses; absent features add nothing.
    """
    if mapped.punct or not mapped.nodes or mapped.source is None:
        return mapped
    primary = mapped.source.primary_analysis()
    if primary is None:
        return mapped

    if mapped.kind == "noun_group" and primary.category == "pronoun":
        annotation = gender_annotation(source_features.first("gender"))
        if annotation is None:
            return mapped
        nodes = list(mapped.nodes)
        host = nodes[mapped.head_index]
        if host.annotation is None:
            nodes[mapped.head_index] = replace(host, annotation=annotation)
        return replace(mapped, nodes=tuple(nodes))

    if mapped.kind == "verb_group":
        annotation = gnp_annotation(source_features.first("gnp"))
        if annotation is None:
            return mapped
        if mapped.explicit_gnp:
            def attach(node: RenderNode) -> RenderNode:
                alternatives = tuple(
                    tuple(attach(sub) for sub in seq) for seq in node.alternatives
                )
                node = replace(node, alternatives=alternatives)
                if node.gnp_slot and node.annotation is None:
                    node = replace(node, annotation=annotation)
                return node

            return replace(mapped, nodes=tuple(attach(n) for n in mapped.nodes))
        nodes = list(mapped.nodes)
        last = nodes[-1]
        if last.annotation is None:
            nodes[-1] = replace(last, annotation=annotation)
        return replace(mapped, nodes=tuple(nodes))

    return mapped


def order_clauses(groups: list[MappedGroup]) -> list[MappedGroup]:
    """Source clause order is preserved; quotative particles map in place."""
    return list(groups)


def fill_forms(mapped: MappedGroup, lexicon: Lexicon) -> MappedGroup:
    """Synthesize every pending request; degrade failures to marked roots."""

    def fill(node: RenderNode) -> RenderNode:
        alternatives = tuple(
            tuple(fill(sub) for sub in seq) for seq in node.alternatives
        )
        node = replace(node, alternatives=alternatives)
        if node.form is None and node.request is not None:
            try:
                form = synthesize(node.request.root, node.request.category,
                                  node.request.features, lexicon.target)
            except SynthesisError:
                return replace(node, form=node.request.root, dialect_marked=True)
            return replace(node, form=form)
        return node

    def seq_forms(seq: tuple[RenderNode, ...]) -> str:
        return "_".join(n.form or "" for n in seq)

    nodes = []
    for node in mapped.nodes:
        node = fill(node)
        if node.alternatives and node.form is not None:
            kept: list[tuple[RenderNode, ...]] = []
            seen = {node.form}
            for seq in node.alternatives:
                signature = seq_forms(seq)
                if signature not in seen:
                    seen.add(signature)
                    kept.append(seq)
            node = replace(node, alternatives=tuple(kept))
        nodes.append(node)
    return replace(mapped, nodes=tuple(nodes))
