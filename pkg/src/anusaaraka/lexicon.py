"""Declarative language data: dictionaries, suffix tables, group patterns,
bilingual mappings, TAM/case mapping templates, and spelling variants.

A lexicon bundle is a directory (or explicit set of files) holding
tab-separated text files, one record per line, ``#`` comment lines:

    source.roots source.suffixes source.groups source.variants
    target.roots target.suffixes target.groups
    pair.map-roots pair.map-tam

Column layouts are documented in docs/FORMATS.md.  The loaded lexicon is
immutable; concurrent readers are safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .features import ANY, FeatureBundle, FeatureError

CATEGORIES = (
    "noun",
    "verb",
    "pronoun",
    "adjective",
    "postposition",
    "auxiliary",
    "particle",
    "punctuation",
)

# Categories whose source roots must carry a bilingual mapping.
MAPPED_CATEGORIES = {"noun", "verb", "pronoun", "adjective", "particle"}

VARIANT_KINDS = ("spelling", "sandhi_join", "sandhi_missplit")

# "0" stands for the empty string in surface/join-rule columns.
_ZERO = "0"


class LexiconError(Exception):
    """Raised for unparseable or inconsistent data files; aborts the load."""

    def __init__(self, message: str, path: Path | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Diagnostic:
    """A cross-reference problem reported by validate_lexicon."""

    code: str
    message: str
    location: str | None = None

    def __str__(self) -> str:
        loc = f" [{self.location}]" if self.location else ""
        return f"{self.code}: {self.message}{loc}"


@dataclass(frozen=True)
class JoinRule:
    """String-level boundary adjustment: strip from the root, insert at the seam."""

    delete_from_root: str = ""
    insert_at_boundary: str = ""

    def is_identity(self) -> bool:
        return not self.delete_from_root and not self.insert_at_boundary


@dataclass(frozen=True)
class LexEntry:
    root: str
    category: str
    paradigm: str
    features: FeatureBundle
    gloss: str | None = None
    display: str | None = None
    order: int = 0

    @property
    def display_root(self) -> str:
        return self.display or self.root


@dataclass(frozen=True)
class SuffixEntry:
    surface: str
    paradigm: str
    features: FeatureBundle
    join: JoinRule
    order: int = 0


@dataclass(frozen=True)
class RootMapping:
    source_root: str
    source_category: str
    targets: tuple[tuple[str, str], ...]  # ordered (target_root, target_category)
    order: int = 0


@dataclass(frozen=True)
class TamElement:
    """One element of a TAM rendering template."""

    kind: str  # head_suffix | literal | alternatives | placeholder | stem_slot
    text: str = ""
    dialect: bool = False
    gnp_slot: bool = False
    alternatives: tuple[tuple["TamElement", ...], ...] = ()


@dataclass(frozen=True)
class TamMapping:
    label: str
    kind: str  # tam | case | qmarker
    target_case: str | None
    elements: tuple[TamElement, ...]
    suppresses_ne: bool = False
    dialect_marked: bool = False
    ne_class: bool = False
    template: str = ""
    order: int = 0

    @property
    def explicit_gnp(self) -> bool:
        def has_slot(elements: tuple[TamElement, ...]) -> bool:
            for el in elements:
                if el.gnp_slot:
                    return True
                for seq in el.alternatives:
                    if has_slot(seq):
                        return True
            return False

        return has_slot(self.elements)


@dataclass(frozen=True)
class PatternItem:
    kind: str  # category | category_star | root
    value: str


@dataclass(frozen=True)
class GroupPattern:
    head_category: str | None  # None for fixed expressions
    fixed_roots: tuple[str, ...]
    followers: tuple[PatternItem, ...]
    group_meaning: RootMapping | None = None
    order: int = 0

    @property
    def is_fixed(self) -> bool:
        return bool(self.fixed_roots)


@dataclass(frozen=True)
class VariantEntry:
    variant: str
    standard: str
    kind: str
    order: int = 0


@dataclass(frozen=True, eq=False)
class SideLexicon:
    """One language side: dictionary, suffix table, patterns, variants."""

    name: str
    entries: tuple[LexEntry, ...]
    suffixes: tuple[SuffixEntry, ...]
    patterns: tuple[GroupPattern, ...] = ()
    variants: tuple[VariantEntry, ...] = ()
    roots_index: dict[str, tuple[LexEntry, ...]] = field(default_factory=dict)
    surface_index: dict[str, tuple[SuffixEntry, ...]] = field(default_factory=dict)
    paradigm_index: dict[str, tuple[SuffixEntry, ...]] = field(default_factory=dict)
    variant_index: dict[str, tuple[VariantEntry, ...]] = field(default_factory=dict)

    @property
    def paradigms(self) -> frozenset[str]:
        return frozenset(self.paradigm_index)

    def lookup_root(self, surface: str) -> tuple[LexEntry, ...]:
        return self.roots_index.get(surface, ())

    def lookup_suffix(self, surface: str, paradigm: str) -> tuple[SuffixEntry, ...]:
        rows = self.paradigm_index.get(paradigm, ())
        return tuple(row for row in rows if row.surface == surface)

    def rows_for_surface(self, surface: str) -> tuple[SuffixEntry, ...]:
        return self.surface_index.get(surface, ())

    def variant_suggestions(self, token: str) -> tuple[str, ...]:
        return tuple(v.standard for v in self.variant_index.get(token, ()))

    def sandhi_rules(self) -> tuple[VariantEntry, ...]:
        return tuple(v for v in self.variants if v.kind == "sandhi_join")


@dataclass(frozen=True, eq=False)
class Lexicon:
    """An immutable, indexed source/target pair with its mapping tables."""

    pair_id: str
    source: SideLexicon
    target: SideLexicon
    root_mappings: tuple[RootMapping, ...]
    tam_mappings: tuple[TamMapping, ...]
    mapping_index: dict[tuple[str, str], RootMapping] = field(default_factory=dict)
    tam_index: dict[tuple[str, str], TamMapping] = field(default_factory=dict)

    def root_mapping(self, root: str, category: str) -> RootMapping | None:
        return self.mapping_index.get((root, category))

    def tam_mapping(self, label: str, kind: str = "tam") -> TamMapping | None:
        return self.tam_index.get((kind, label))

    # Convenience: spec-level lookups default to the source side.
    def lookup_root(self, surface: str) -> tuple[LexEntry, ...]:
        return self.source.lookup_root(surface)

    def lookup_suffix(self, surface: str, paradigm: str) -> tuple[SuffixEntry, ...]:
        return self.source.lookup_suffix(surface, paradigm)


# --------------------------------------------------------------------------
# Parsing


def _records(path: Path) -> Iterator[tuple[int, list[str]]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read data file: {exc}", path)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield line_no, [f.strip() for f in line.split("\t")]


def _need(fields: list[str], count: int, path: Path, line: int, what: str) -> None:
    if len(fields) < count:
        raise LexiconError(f"{what}: expected at least {count} tab-separated fields", path, line)


def _opt(fields: list[str], index: int) -> str | None:
    if index < len(fields) and fields[index] not in ("", "-"):
        return fields[index]
    return None


def _zero(text: str) -> str:
    return "" if text == _ZERO else text


def _parse_features(text: str, path: Path, line: int) -> FeatureBundle:
    try:
        return FeatureBundle.parse(text)
    except FeatureError as exc:
        raise LexiconError(str(exc), path, line)


def _parse_roots(path: Path, order: int) -> tuple[list[LexEntry], int]:
    entries = []
    for line_no, fields in _records(path):
        _need(fields, 4, path, line_no, "root record")
        root, category, paradigm = fields[0], fields[1], fields[2]
        if not root:
            raise LexiconError("empty root", path, line_no)
        if category not in CATEGORIES:
            raise LexiconError(f"unknown category {category!r}", path, line_no)
        entries.append(
            LexEntry(
                root=root,
                category=category,
                paradigm=paradigm,
                features=_parse_features(fields[3], path, line_no),
                gloss=_opt(fields, 4),
                display=_opt(fields, 5),
                order=order,
            )
        )
        order += 1
    return entries, order


def _parse_suffixes(path: Path, order: int) -> tuple[list[SuffixEntry], int]:
    rows = []
    for line_no, fields in _records(path):
        _need(fields, 5, path, line_no, "suffix record")
        rows.append(
            SuffixEntry(
                surface=_zero(fields[1]),
                paradigm=fields[0],
                features=_parse_features(fields[2], path, line_no),
                join=JoinRule(_zero(fields[3]), _zero(fields[4])),
                order=order,
            )
        )
        order += 1
    return rows, order


def _parse_meaning(text: str, source_root: str, path: Path, line: int) -> RootMapping | None:
    if text in ("", "-"):
        return None
    root, _, category = text.partition(":")
    category = category or "noun"
    if category not in CATEGORIES:
        raise LexiconError(f"unknown category {category!r} in group meaning", path, line)
    return RootMapping(source_root=source_root, source_category="noun", targets=((root, category),))


def _parse_groups(path: Path, order: int) -> tuple[list[GroupPattern], int]:
    patterns = []
    for line_no, fields in _records(path):
        _need(fields, 2, path, line_no, "group pattern")
        head = fields[0]
        if head == "fixed":
            roots = tuple(fields[1].split())
            if len(roots) < 2:
                raise LexiconError("fixed expression needs at least two words", path, line_no)
            meaning = _parse_meaning(fields[2] if len(fields) > 2 else "-", "_".join(roots), path, line_no)
            if meaning is None:
                raise LexiconError("fixed expression must carry a group meaning", path, line_no)
            patterns.append(GroupPattern(None, roots, (), meaning, order))
        else:
            if head not in CATEGORIES:
                raise LexiconError(f"unknown head category {head!r}", path, line_no)
            followers = []
            if fields[1] not in ("", "-"):
                for item in fields[1].split():
                    if item.startswith("="):
                        followers.append(PatternItem("root", item[1:]))
                    elif item.endswith("*"):
                        cat = item[:-1]
                        if cat not in CATEGORIES:
                            raise LexiconError(f"unknown category {cat!r} in pattern", path, line_no)
                        followers.append(PatternItem("category_star", cat))
                    else:
                        if item not in CATEGORIES:
                            raise LexiconError(f"unknown category {item!r} in pattern", path, line_no)
                        followers.append(PatternItem("category", item))
            meaning = _parse_meaning(fields[2] if len(fields) > 2 else "-", head, path, line_no)
            patterns.append(GroupPattern(head, (), tuple(followers), meaning, order))
        order += 1
    return patterns, order


def _parse_map_roots(path: Path, order: int) -> tuple[list[RootMapping], int]:
    mappings = []
    for line_no, fields in _records(path):
        _need(fields, 4, path, line_no, "root mapping")
        source_root, source_category, target_category = fields[0], fields[1], fields[2]
        if source_category not in CATEGORIES or target_category not in CATEGORIES:
            raise LexiconError("unknown category in root mapping", path, line_no)
        targets = tuple((t, target_category) for t in fields[3].split("|") if t)
        if not targets:
            raise LexiconError("root mapping needs at least one target", path, line_no)
        mappings.append(RootMapping(source_root, source_category, targets, order))
        order += 1
    return mappings, order


def _split_template(text: str, seps: str) -> list[str]:
    """Split on separators that sit outside brackets/braces."""
    parts: list[str] = []
    depth = 0
    current: list[str] = []
    for ch in text:
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        if depth == 0 and ch in seps:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return parts


def _parse_tam_element(token: str, path: Path, line: int, nested: bool = False) -> TamElement:
    dialect = token.endswith("`")
    if dialect:
        token = token[:-1]
    gnp_slot = token.endswith("@gnp")
    if gnp_slot:
        token = token[: -len("@gnp")]
    if "[" in token:
        head, _, rest = token.partition("[")
        if not rest.endswith("]"):
            raise LexiconError(f"unbalanced brackets in template element {token!r}", path, line)
        if nested:
            raise LexiconError("nested alternatives are not allowed in templates", path, line)
        body = rest[:-1]
        seqs = []
        for alt in _split_template(body, "|"):
            seq = tuple(
                _parse_tam_element(t, path, line, nested=True)
                for t in _split_template(alt, "_")
                if t
            )
            if not seq:
                raise LexiconError("empty alternative in template", path, line)
            seqs.append(seq)
        if head.startswith("+") or head in ("*", "%stem%"):
            raise LexiconError(f"bad alternative host {head!r}", path, line)
        return TamElement("alternatives", head, dialect, gnp_slot, tuple(seqs))
    if token.startswith("+"):
        return TamElement("head_suffix", token[1:], dialect, gnp_slot)
    if token == "*":
        return TamElement("placeholder", "*", dialect, gnp_slot)
    if token == "%stem%":
        return TamElement("stem_slot", "", dialect, gnp_slot)
    if not token:
        raise LexiconError("empty template element", path, line)
    return TamElement("literal", token, dialect, gnp_slot)


def _parse_template(text: str, path: Path, line: int) -> tuple[TamElement, ...]:
    if text in ("", "-", _ZERO):
        return ()
    return tuple(
        _parse_tam_element(tok, path, line) for tok in _split_template(text, "_") if tok
    )


_TAM_FLAGS = {"suppresses_ne", "dialect", "ne_class"}


def _parse_map_tam(path: Path, order: int) -> tuple[list[TamMapping], int]:
    mappings = []
    for line_no, fields in _records(path):
        _need(fields, 4, path, line_no, "TAM mapping")
        label, kind, arg, template = fields[0], fields[1], fields[2], fields[3]
        if kind not in ("tam", "case", "qmarker"):
            raise LexiconError(f"unknown mapping kind {kind!r}", path, line_no)
        flags: set[str] = set()
        if len(fields) > 4 and fields[4] not in ("", "-"):
            for flag in fields[4].split(","):
                flag = flag.strip()
                if flag not in _TAM_FLAGS:
                    raise LexiconError(f"unknown flag {flag!r}", path, line_no)
                flags.add(flag)
        elements = _parse_template(template, path, line_no)
        placeholders = sum(1 for el in elements if el.kind == "placeholder")
        if placeholders > 1:
            raise LexiconError("a template may hold at most one placeholder", path, line_no)
        mappings.append(
            TamMapping(
                label=label,
                kind=kind,
                target_case=None if arg in ("", "-") else arg,
                elements=elements,
                suppresses_ne="suppresses_ne" in flags,
                dialect_marked="dialect" in flags,
                ne_class="ne_class" in flags or "suppresses_ne" in flags,
                template=template if template not in ("", "-", _ZERO) else "",
                order=order,
            )
        )
        order += 1
    return mappings, order


def _parse_variants(path: Path, order: int) -> tuple[list[VariantEntry], int]:
    rows = []
    for line_no, fields in _records(path):
        _need(fields, 3, path, line_no, "variant record")
        variant, standard, kind = fields[0], fields[1], fields[2]
        if kind not in VARIANT_KINDS:
            raise LexiconError(f"unknown variant kind {kind!r}", path, line_no)
        if variant == standard:
            raise LexiconError("variant equals its standard form", path, line_no)
        rows.append(VariantEntry(variant, standard, kind, order))
        order += 1
    return rows, order


# --------------------------------------------------------------------------
# Assembly

_KINDS = ("roots", "suffixes", "groups", "variants", "map-roots", "map-tam")


def _classify(path: Path) -> tuple[str, str]:
    kind = path.suffix.lstrip(".")
    if kind not in _KINDS:
        raise LexiconError(f"unrecognized data file kind {path.suffix!r}", path)
    side = path.name.split(".")[0]
    if kind in ("map-roots", "map-tam"):
        return "pair", kind
    if side not in ("source", "target"):
        raise LexiconError("side files must be named source.* or target.*", path)
    return side, kind


def _index_side(name: str, entries: list[LexEntry], suffixes: list[SuffixEntry],
                patterns: list[GroupPattern], variants: list[VariantEntry]) -> SideLexicon:
    roots: dict[str, list[LexEntry]] = {}
    seen_entries: set[tuple[str, str, str]] = set()
    for entry in entries:
        key = (entry.root, entry.category, entry.paradigm)
        if key in seen_entries:
            raise LexiconError(f"duplicate key {key!r} in {name} dictionary")
        seen_entries.add(key)
        roots.setdefault(entry.root, []).append(entry)
    by_surface: dict[str, list[SuffixEntry]] = {}
    by_paradigm: dict[str, list[SuffixEntry]] = {}
    for row in suffixes:
        by_surface.setdefault(row.surface, []).append(row)
        by_paradigm.setdefault(row.paradigm, []).append(row)
    # Paradigm references must resolve in both directions.
    for entry in entries:
        if entry.paradigm not in by_paradigm:
            raise LexiconError(
                f"dangling paradigm reference {entry.paradigm!r} from {name} root {entry.root!r}"
            )
    used = {entry.paradigm for entry in entries}
    for row in suffixes:
        if row.paradigm not in used:
            raise LexiconError(
                f"dangling paradigm reference {row.paradigm!r}: no {name} root uses it"
            )
    var_index: dict[str, list[VariantEntry]] = {}
    for row in variants:
        var_index.setdefault(row.variant, []).append(row)
    return SideLexicon(
        name=name,
        entries=tuple(entries),
        suffixes=tuple(suffixes),
        patterns=tuple(patterns),
        variants=tuple(variants),
        roots_index={k: tuple(v) for k, v in roots.items()},
        surface_index={k: tuple(v) for k, v in by_surface.items()},
        paradigm_index={k: tuple(v) for k, v in by_paradigm.items()},
        variant_index={k: tuple(v) for k, v in var_index.items()},
    )


def load_lexicon(paths: Path | str | Iterable[Path | str]) -> Lexicon:
    """Load and index a lexicon bundle.

    Accepts a directory or an iterable of data-file paths.  Loading is
    deterministic regardless of the order paths are given in.
    """
    if isinstance(paths, (str, Path)):
        root = Path(paths)
        if root.is_dir():
            files = [p for p in root.iterdir() if p.suffix.lstrip(".") in _KINDS]
            pair_id = root.name
        else:
            files = [root]
            pair_id = root.stem
    else:
        files = [Path(p) for p in paths]
        pair_id = files[0].parent.name if files else "lexicon"
    if not files:
        raise LexiconError("no dictionary file found")
    files = sorted(files, key=lambda p: (p.suffix, p.name, str(p)))

    data: dict[tuple[str, str], list] = {}
    counters = {"entry": 0, "suffix": 0, "pattern": 0, "variant": 0, "mapping": 0, "tam": 0}
    for path in files:
        if not path.exists():
            raise LexiconError("data file does not exist", path)
        side, kind = _classify(path)
        bucket = data.setdefault((side, kind), [])
        if kind == "roots":
            parsed, counters["entry"] = _parse_roots(path, counters["entry"])
        elif kind == "suffixes":
            parsed, counters["suffix"] = _parse_suffixes(path, counters["suffix"])
        elif kind == "groups":
            parsed, counters["pattern"] = _parse_groups(path, counters["pattern"])
        elif kind == "variants":
            parsed, counters["variant"] = _parse_variants(path, counters["variant"])
        elif kind == "map-roots":
            parsed, counters["mapping"] = _parse_map_roots(path, counters["mapping"])
        else:
            parsed, counters["tam"] = _parse_map_tam(path, counters["tam"])
        bucket.extend(parsed)

    for side in ("source", "target"):
        for kind in ("roots", "suffixes"):
            if not data.get((side, kind)):
                raise LexiconError(f"no dictionary file found for {side}.{kind}")

    source = _index_side(
        "source",
        data[("source", "roots")],
        data[("source", "suffixes")],
        data.get(("source", "groups"), []),
        data.get(("source", "variants"), []),
    )
    target = _index_side(
        "target",
        data[("target", "roots")],
        data[("target", "suffixes")],
        data.get(("target", "groups"), []),
        data.get(("target", "variants"), []),
    )

    mapping_index: dict[tuple[str, str], RootMapping] = {}
    for mapping in data.get(("pair", "map-roots"), []):
        key = (mapping.source_root, mapping.source_category)
        if key in mapping_index:
            raise LexiconError(f"duplicate root mapping for {key!r}")
        mapping_index[key] = mapping
    tam_index: dict[tuple[str, str], TamMapping] = {}
    for mapping in data.get(("pair", "map-tam"), []):
        key = (mapping.kind, mapping.label)
        if key in tam_index:
            raise LexiconError(f"duplicate {mapping.kind} mapping for {mapping.label!r}")
        tam_index[key] = mapping

    return Lexicon(
        pair_id=pair_id,
        source=source,
        target=target,
        root_mappings=tuple(data.get(("pair", "map-roots"), [])),
        tam_mappings=tuple(data.get(("pair", "map-tam"), [])),
        mapping_index=mapping_index,
        tam_index=tam_index,
    )


# --------------------------------------------------------------------------
# Validation


def _template_words(elements: tuple[TamElement, ...]) -> Iterator[TamElement]:
    for el in elements:
        yield el
        for seq in el.alternatives:
            yield from _template_words(seq)


def validate_lexicon(lexicon: Lexicon) -> list[Diagnostic]:
    """Cross-reference checks; an empty list means the bundle is consistent."""
    diagnostics: list[Diagnostic] = []

    for entry in lexicon.source.entries:
        if entry.category in MAPPED_CATEGORIES:
            if lexicon.root_mapping(entry.root, entry.category) is None:
                diagnostics.append(
                    Diagnostic(
                        "unmapped-root",
                        f"source root {entry.root!r} ({entry.category}) has no target mapping",
                    )
                )

    # Every feature label used on the source side must map.
    used: dict[str, set[str]] = {"TAM": set(), "case": set(), "qmarker": set()}
    for row in lexicon.source.suffixes:
        for key, kind in (("TAM", "tam"), ("case", "case"), ("qmarker", "qmarker")):
            values = row.features.get(key)
            if values:
                for value in values:
                    if value != ANY and lexicon.tam_mapping(value, kind) is None:
                        if value not in used[key]:
                            used[key].add(value)
                            diagnostics.append(
                                Diagnostic(
                                    f"unmapped-{kind}",
                                    f"source {key} label {value!r} has no {kind} mapping",
                                )
                            )

    for pattern in lexicon.source.patterns:
        for root in pattern.fixed_roots:
            if not lexicon.source.lookup_root(root):
                diagnostics.append(
                    Diagnostic(
                        "unknown-root-in-pattern",
                        f"group pattern names unknown root {root!r}",
                    )
                )

    def check_target_pieces(owner: str, root: str) -> None:
        for piece in root.split("_"):
            if piece and not lexicon.target.lookup_root(piece):
                diagnostics.append(
                    Diagnostic(
                        "missing-target-root",
                        f"{owner} maps to {root!r} but {piece!r} is not in the target dictionary",
                    )
                )

    for mapping in lexicon.root_mappings:
        for target_root, _ in mapping.targets:
            check_target_pieces(f"root {mapping.source_root!r}", target_root)
    for pattern in lexicon.source.patterns:
        if pattern.group_meaning is not None:
            for target_root, _ in pattern.group_meaning.targets:
                check_target_pieces("group meaning", target_root)

    target_tams = {
        value
        for row in lexicon.target.suffixes
        for value in (row.features.get("TAM") or ())
    }
    for mapping in lexicon.tam_mappings:
        for el in _template_words(mapping.elements):
            if el.kind == "literal":
                check_target_pieces(f"{mapping.kind} {mapping.label!r}", el.text)
            elif el.kind == "head_suffix" and el.text not in target_tams:
                diagnostics.append(
                    Diagnostic(
                        "missing-target-tam-form",
                        f"{mapping.kind} {mapping.label!r} requests target TAM {el.text!r} "
                        "but no target suffix row carries it",
                    )
                )

    return diagnostics


# Spec-level operation aliases over a side (default: source).


def lookup_root(lexicon: Lexicon | SideLexicon, surface: str) -> list[LexEntry]:
    side = lexicon.source if isinstance(lexicon, Lexicon) else lexicon
    return list(side.lookup_root(surface))


def lookup_suffix(lexicon: Lexicon | SideLexicon, surface: str, paradigm: str) -> list[SuffixEntry]:
    side = lexicon.source if isinstance(lexicon, Lexicon) else lexicon
    return list(side.lookup_suffix(surface, paradigm))
