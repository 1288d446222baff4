"""Local word grouper: combines per-token analyses into fixed-order units
(noun plus postpositions, verb plus auxiliaries, fixed expressions).

Matching is greedy longest-match left to right; fixed expressions are tried
before category patterns; ties break by pattern file order.  Every token
lands in exactly one group.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import GroupPattern, SideLexicon
from .morph import Analysis

KIND_BY_HEAD = {
    "noun": "noun_group",
    "pronoun": "noun_group",
    "verb": "verb_group",
    "auxiliary": "verb_group",
}


@dataclass(frozen=True)
class TokenAnalyses:
    token: str
    analyses: tuple[Analysis, ...]
    index: int
    is_punct: bool = False


@dataclass(frozen=True)
class WordGroup:
    """A contiguous source unit: ambiguous head plus matched function words."""

    tokens: tuple[str, ...]
    head_analyses: tuple[Analysis, ...]
    followers: tuple[tuple[str, Analysis], ...]
    group_vibhakti: tuple[str, ...]
    group_tam: str | None
    kind: str  # noun_group | verb_group | fixed_expression | singleton | unknown
    span: tuple[int, int]  # [start, end) token indexes in the sentence
    pattern: GroupPattern | None = None
    punct: bool = False

    @property
    def head_token(self) -> str:
        return self.tokens[0]

    def primary_analysis(self) -> Analysis | None:
        """The analysis the transfer maps first: the one the pattern matched on."""
        if not self.head_analyses:
            return None
        if self.pattern is not None and self.pattern.head_category:
            for analysis in self.head_analyses:
                if analysis.category == self.pattern.head_category:
                    return analysis
        return self.head_analyses[0]


def _match_fixed(pattern: GroupPattern, tokens: list[TokenAnalyses], at: int) -> int:
    """Token count consumed by a fixed expression, or 0."""
    for offset, root in enumerate(pattern.fixed_roots):
        pos = at + offset
        if pos >= len(tokens) or tokens[pos].is_punct:
            return 0
        if not any(a.root == root for a in tokens[pos].analyses):
            return 0
    return len(pattern.fixed_roots)


def _single_of_category(token: TokenAnalyses, category: str) -> Analysis | None:
    """Follower tokens must be unambiguous under the matched pattern."""
    matching = [a for a in token.analyses if a.category == category]
    return matching[0] if len(matching) == 1 else None


def _match_category(pattern: GroupPattern, tokens: list[TokenAnalyses], at: int
                    ) -> tuple[int, list[tuple[str, Analysis]]] | None:
    head = tokens[at]
    if not any(a.category == pattern.head_category for a in head.analyses):
        return None
    consumed = 1
    followers: list[tuple[str, Analysis]] = []
    for item in pattern.followers:
        if item.kind == "category_star":
            while at + consumed < len(tokens):
                nxt = tokens[at + consumed]
                if nxt.is_punct:
                    break
                analysis = _single_of_category(nxt, item.value)
                if analysis is None:
                    break
                followers.append((nxt.token, analysis))
                consumed += 1
        else:
            if at + consumed >= len(tokens):
                return None
            nxt = tokens[at + consumed]
            if nxt.is_punct:
                return None
            if item.kind == "category":
                analysis = _single_of_category(nxt, item.value)
            else:  # literal root
                matching = [a for a in nxt.analyses if a.root == item.value]
                analysis = matching[0] if len(matching) == 1 else None
            if analysis is None:
                return None
            followers.append((nxt.token, analysis))
            consumed += 1
    return consumed, followers


def group_words(token_analyses: list[TokenAnalyses], side: SideLexicon) -> list[WordGroup]:
    """Tile the token sequence into groups (no overlap, no gaps)."""
    tokens = list(token_analyses)
    groups: list[WordGroup] = []
    at = 0
    fixed_patterns = [p for p in side.patterns if p.is_fixed]
    category_patterns = [p for p in side.patterns if not p.is_fixed]
    while at < len(tokens):
        token = tokens[at]
        if token.is_punct:
            groups.append(
                WordGroup((token.token,), (), (), (), None, "singleton",
                          (at, at + 1), punct=True)
            )
            at += 1
            continue
        if not token.analyses:
            groups.append(
                WordGroup((token.token,), (), (), (), None, "unknown", (at, at + 1))
            )
            at += 1
            continue

        best: tuple[int, GroupPattern, list[tuple[str, Analysis]]] | None = None
        for pattern in fixed_patterns:
            consumed = _match_fixed(pattern, tokens, at)
            if consumed and (best is None or consumed > best[0]):
                best = (consumed, pattern, [])
        if best is None:
            for pattern in category_patterns:
                matched = _match_category(pattern, tokens, at)
                if matched is None:
                    continue
                consumed, followers = matched
                if best is None or consumed > best[0]:
                    best = (consumed, pattern, followers)

        if best is None:
            groups.append(
                WordGroup((token.token,), token.analyses, (), (), None,
                          "singleton", (at, at + 1))
            )
            at += 1
            continue

        consumed, pattern, followers = best
        span = (at, at + consumed)
        covered = tuple(t.token for t in tokens[at:at + consumed])
        if pattern.is_fixed:
            head = tuple(a for a in token.analyses if a.root == pattern.fixed_roots[0])
            groups.append(
                WordGroup(covered, head or token.analyses, tuple(followers), (),
                          None, "fixed_expression", span, pattern)
            )
        else:
            kind = KIND_BY_HEAD.get(pattern.head_category or "", "singleton")
            vibhakti: tuple[str, ...] = ()
            group_tam: str | None = None
            if kind == "noun_group":
                vibhakti = tuple(a.root for _, a in followers)
            group = WordGroup(covered, token.analyses, tuple(followers), vibhakti,
                              None, kind, span, pattern)
            if kind == "verb_group":
                primary = group.primary_analysis()
                if primary is not None:
                    group_tam = primary.features.first("TAM")
                group = WordGroup(covered, token.analyses, tuple(followers), vibhakti,
                                  group_tam, kind, span, pattern)
            groups.append(group)
        at += consumed
    return groups


@dataclass(frozen=True)
class SynthUnit:
    """A per-word synthesis request extracted from a mapped group.

    Alternative sets stay inside the node they belong to: one unit per node,
    with any alternative sequences listed under it.
    """

    node_path: tuple[int, ...]
    root: str
    category: str | None
    features: object  # FeatureBundle of the primary request, or None for literals
    tam_label: str | None
    alternatives: tuple[tuple["SynthUnit", ...], ...] = ()


def split_group(mapped) -> list[SynthUnit]:
    """Decompose a mapped group into per-word synthesis requests in target
    surface order (heads lead; target-side patterns in the sample data are
    all head-first)."""
    units: list[SynthUnit] = []

    def unit_for(node, path: tuple[int, ...]) -> SynthUnit:
        alternatives = tuple(
            tuple(unit_for(sub, path + (alt_index, sub_index))
                  for sub_index, sub in enumerate(seq))
            for alt_index, seq in enumerate(node.alternatives)
        )
        if node.request is not None:
            return SynthUnit(path, node.request.root, node.request.category,
                             node.request.features, node.request.tam_label, alternatives)
        return SynthUnit(path, node.form or "", None, None, None, alternatives)

    for index, node in enumerate(mapped.nodes):
        units.append(unit_for(node, (index,)))
    return units
