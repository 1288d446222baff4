"""End-to-end pipeline: tokenize, analyze, group, map, annotate, order,
split and synthesize, producing a renderable document.

Identical input and lexicon give a byte-identical full-detail rendering.
Sentences are processed independently; output for one never depends on a
later one.  Word-level failures never abort a run: unknown words pass
through verbatim with the dialect marker.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .grouper import TokenAnalyses, group_words
from .lexicon import Lexicon, load_lexicon, validate_lexicon, LexiconError
from .morph import analyze_word
from .notation import Document, PUNCT_CHARS, SENTENCE_FINAL, Sentence, render
from .transfer import annotate_agreement, fill_forms, map_group, order_clauses

_TOKEN_RE = re.compile(rf"[{re.escape(PUNCT_CHARS)}]+|[^\s{re.escape(PUNCT_CHARS)}]+")


@dataclass(frozen=True)
class Token:
    text: str
    start: int
    end: int
    is_punct: bool


@dataclass(frozen=True)
class PipelineConfig:
    lexicon_dir: Path
    detail: int = 2
    pair_id: str = ""
    emit_debug_analyses: bool = False


def load_pipeline(config: PipelineConfig) -> Lexicon:
    """Load the configured lexicon and refuse to start on a dirty one."""
    lexicon = load_lexicon(config.lexicon_dir)
    diagnostics = validate_lexicon(lexicon)
    if diagnostics:
        summary = "; ".join(str(d) for d in diagnostics[:5])
        raise LexiconError(f"lexicon failed validation: {summary}")
    return lexicon


def tokenize(text: str) -> list[Token]:
    """Whitespace split with punctuation broken out into its own tokens."""
    tokens = []
    for match in _TOKEN_RE.finditer(text):
        piece = match.group(0)
        tokens.append(
            Token(piece, match.start(), match.end(), piece[0] in PUNCT_CHARS)
        )
    return tokens


def split_sentences(tokens: list[Token]) -> list[list[Token]]:
    """Sentence boundaries at danda/./?/!; commas stay inside."""
    sentences: list[list[Token]] = []
    current: list[Token] = []
    for token in tokens:
        current.append(token)
        if token.is_punct and any(ch in SENTENCE_FINAL for ch in token.text):
            sentences.append(current)
            current = []
    if current:
        sentences.append(current)
    return sentences


def run_pipeline(text: str, lexicon: Lexicon) -> Document:
    """Translate raw source text into a document."""
    sentences = []
    for sentence_tokens in split_sentences(tokenize(text)):
        analyzed = [
            TokenAnalyses(
                token=token.text,
                analyses=() if token.is_punct
                else tuple(analyze_word(token.text, lexicon.source)),
                index=position,
                is_punct=token.is_punct,
            )
            for position, token in enumerate(sentence_tokens)
        ]
        groups = group_words(analyzed, lexicon.source)
        mapped = []
        for group in groups:
            out = map_group(group, lexicon)
            primary = group.primary_analysis()
            if primary is not None:
                out = annotate_agreement(out, primary.features)
            mapped.append(out)
        mapped = order_clauses(mapped)
        filled = tuple(fill_forms(m, lexicon) for m in mapped)
        sentences.append(
            Sentence(tokens=tuple(t.text for t in sentence_tokens), groups=filled)
        )
    return Document(tuple(sentences))


def translate_text(text: str, lexicon: Lexicon, detail: int = 2) -> str:
    """Line-oriented translation: each input line renders to one output line."""
    if text == "":
        return ""
    return "\n".join(
        render(run_pipeline(line, lexicon), detail) for line in text.split("\n")
    )


# Analyzer debug display: slash-separated readings, e.g.
# mAnavuDu{cat=n,number=sg,case=oblique}/mAnuvu{cat=v,TAM=infinitive,gnp=any}

_CATEGORY_ABBREV = {
    "noun": "n",
    "verb": "v",
    "pronoun": "pron",
    "adjective": None,  # adjectival dictionary senses show bare tags only
    "postposition": "psp",
    "auxiliary": "aux",
    "particle": "prt",
    "punctuation": "punc",
}


def analysis_display(analysis) -> str:
    items = []
    abbrev = _CATEGORY_ABBREV.get(analysis.category)
    if abbrev:
        items.append(f"cat={abbrev}")
    items.extend(analysis.features.display_items())
    return f"{analysis.display_root}{{{','.join(items)}}}"


def analyses_display(analyses) -> str:
    return "/".join(analysis_display(a) for a in analyses)


def analyze_display(word: str, lexicon: Lexicon) -> str:
    return analyses_display(analyze_word(word, lexicon.source))
