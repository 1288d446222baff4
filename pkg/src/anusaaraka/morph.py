"""Word analysis and synthesis.

Analysis follows the propose-and-test strategy: break the word at every
point, look the proposed root up in the dictionary and the proposed suffix
in the suffix table, and accept only when both lookups succeed under some
join rule.  When nothing matches, compound/sandhi breaking is tried once
(binary splits, no recursion).  All analyses are returned; nothing is
ranked or pruned.

Synthesis is the inverse and works directly from the rules, without
proposing alternatives.  Both directions are pure functions over an
immutable SideLexicon and are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .features import FeatureBundle, compatible
from .lexicon import JoinRule, LexEntry, SideLexicon, SuffixEntry


class SynthesisError(Exception):
    pass


class UnknownRootError(SynthesisError):
    pass


class NoMatchingSuffixError(SynthesisError):
    pass


class AmbiguousSynthesisError(SynthesisError):
    pass


@dataclass(frozen=True)
class SplitCandidate:
    """A (root part, suffix part) breakup that survived both lookups."""

    root_part: str
    suffix_part: str
    applied_join_rule: JoinRule | None
    entry: LexEntry
    suffix: SuffixEntry


@dataclass(frozen=True)
class Analysis:
    """One reading of a word: root, category, and combined features."""

    root: str
    category: str
    features: FeatureBundle
    segmentation: tuple[tuple[str, str], ...]  # (surface piece, root|suffix|sandhi-part)
    entry: LexEntry
    suffix: SuffixEntry | None = None
    prefix: tuple["Analysis", ...] = ()  # analyses of sandhi parts before the head

    @property
    def display_root(self) -> str:
        return self.entry.display_root

    def surface(self) -> str:
        return "".join(piece for piece, _ in self.segmentation)


def _word_ok(word: str) -> None:
    if not word:
        raise ValueError("empty word")
    if any(ch.isspace() for ch in word):
        raise ValueError("word contains whitespace")


def _undo_join(root_part: str, rule: JoinRule) -> str | None:
    """Recover the dictionary root the rule would have produced this part from."""
    insert = rule.insert_at_boundary
    if insert:
        if not root_part.endswith(insert):
            return None
        root_part = root_part[: -len(insert)]
    candidate = root_part + rule.delete_from_root
    return candidate or None


def _apply_join(root: str, rule: JoinRule) -> str | None:
    delete = rule.delete_from_root
    if delete:
        if not root.endswith(delete):
            return None
        root = root[: -len(delete)]
    return root + rule.insert_at_boundary


def propose_splits(word: str, side: SideLexicon) -> list[SplitCandidate]:
    """Every breakup whose suffix part is in the table and whose root part,
    after undoing the join rule, is a dictionary root of the same paradigm."""
    _word_ok(word)
    candidates = []
    for i in range(1, len(word) + 1):
        root_part, suffix_part = word[:i], word[i:]
        for row in side.rows_for_surface(suffix_part):
            dictionary_root = _undo_join(root_part, row.join)
            if dictionary_root is None:
                continue
            for entry in side.lookup_root(dictionary_root):
                if entry.paradigm == row.paradigm:
                    candidates.append(
                        SplitCandidate(
                            root_part=root_part,
                            suffix_part=suffix_part,
                            applied_join_rule=None if row.join.is_identity() else row.join,
                            entry=entry,
                            suffix=row,
                        )
                    )
    return candidates


def _analysis_of(candidate: SplitCandidate) -> Analysis:
    segmentation: list[tuple[str, str]] = [(candidate.root_part, "root")]
    if candidate.suffix_part:
        segmentation.append((candidate.suffix_part, "suffix"))
    return Analysis(
        root=candidate.entry.root,
        category=candidate.entry.category,
        features=candidate.suffix.features.merged_under(candidate.entry.features),
        segmentation=tuple(segmentation),
        entry=candidate.entry,
        suffix=candidate.suffix,
    )


def _plain_analyses(word: str, side: SideLexicon) -> list[Analysis]:
    candidates = propose_splits(word, side)
    # Whole-word (zero suffix) readings first, then splits left to right.
    def sort_key(c: SplitCandidate):
        if not c.suffix_part:
            return (0, 0, c.entry.order, c.suffix.order)
        return (1, len(c.root_part), c.suffix.order, c.entry.order)

    return [_analysis_of(c) for c in sorted(candidates, key=sort_key)]


def split_sandhi(word: str, side: SideLexicon) -> list[tuple[list[Analysis], list[Analysis]]]:
    """Binary compound/sandhi splits where both parts analyze without
    further sandhi (depth 1 only).  Boundary rewrites come from
    ``sandhi_join`` rows of the variants table."""
    if len(word) < 2:
        return []
    proposals: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for i in range(1, len(word)):
        proposals.append((word[:i], word[i:]))
    for rule in side.sandhi_rules():
        undone = rule.standard.split()
        if len(undone) != 2:
            continue
        left_tail, right_head = undone
        start = 0
        while True:
            at = word.find(rule.variant, start)
            if at < 0:
                break
            proposals.append((word[:at] + left_tail, right_head + word[at + len(rule.variant):]))
            start = at + 1
    results = []
    for left, right in proposals:
        if not left or not right or (left, right) in seen:
            continue
        seen.add((left, right))
        left_analyses = _plain_analyses(left, side)
        if not left_analyses:
            continue
        right_analyses = _plain_analyses(right, side)
        if not right_analyses:
            continue
        results.append((left_analyses, right_analyses))
    return results


def analyze_word(word: str, side: SideLexicon) -> list[Analysis]:
    """All readings of a word; empty list when nothing in the tables fits
    (the caller renders such words verbatim with an unknown marker)."""
    _word_ok(word)
    analyses = _plain_analyses(word, side)
    if analyses:
        return analyses
    combined: list[Analysis] = []
    for left_analyses, right_analyses in split_sandhi(word, side):
        for left in left_analyses:
            left_pieces = tuple((piece, "sandhi-part") for piece, _ in left.segmentation)
            for right in right_analyses:
                combined.append(
                    Analysis(
                        root=right.root,
                        category=right.category,
                        features=right.features,
                        segmentation=left_pieces + right.segmentation,
                        entry=right.entry,
                        suffix=right.suffix,
                        prefix=(left,),
                    )
                )
    return combined


def synthesize(root: str, category: str, features: FeatureBundle, side: SideLexicon) -> str:
    """Build the word for (root, category, features).

    The features must resolve to exactly one suffix row of the root's
    paradigm; anything else is a distinct error.
    """
    entries = [e for e in side.lookup_root(root) if e.category == category]
    if not entries:
        raise UnknownRootError(f"unknown {category} root {root!r}")
    matches: list[tuple[LexEntry, SuffixEntry]] = []
    for entry in entries:
        for row in side.paradigm_index.get(entry.paradigm, ()):
            if compatible(features, row.features):
                matches.append((entry, row))
    if not matches:
        raise NoMatchingSuffixError(
            f"no suffix of {root!r} matches features {features.format()}"
        )
    if len(matches) > 1:
        raise AmbiguousSynthesisError(
            f"features {features.format()} match {len(matches)} suffixes of {root!r}"
        )
    entry, row = matches[0]
    stem = _apply_join(entry.root, row.join)
    if stem is None:
        raise SynthesisError(
            f"join rule of suffix {row.surface!r} does not apply to root {entry.root!r}"
        )
    return stem + row.surface
