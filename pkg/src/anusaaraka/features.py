"""Feature bundles and agreement display marks.

All linguistic text is one roman transliteration scheme, handled as opaque
case-sensitive symbol strings.  A bundle holds ordered key=value pairs
(values may be ambiguity sets like ``2|3`` or the wildcard ``any``) plus
uninterpreted display tags such as ``*adj_0*``.
"""

from __future__ import annotations

from dataclasses import dataclass

ANY = "any"

# Closed key vocabulary; also the canonical display order.
FEATURE_KEYS = ("number", "case", "TAM", "gnp", "qmarker", "gender", "person")

GENDER_MARKS = {
    "masc": "m.",
    "fem": "f.",
    "non-masc": "~m.",
    "non-neuter": "~n.",
    "neuter": "n.",
}
NUMBER_MARKS = {"sg": "e.", "pl": "ba."}


class FeatureError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureBundle:
    """Ordered feature pairs plus bare display tags."""

    pairs: tuple[tuple[str, tuple[str, ...]], ...] = ()
    tags: tuple[str, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "FeatureBundle":
        """Parse the data-file form: ``number=sg,case=0`` or ``n,sg,*obl*``."""
        text = text.strip()
        if text in ("", "-"):
            return cls()
        pairs: list[tuple[str, tuple[str, ...]]] = []
        tags: list[str] = []
        seen: set[str] = set()
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" in item:
                key, _, raw = item.partition("=")
                key = key.strip()
                if key not in FEATURE_KEYS:
                    raise FeatureError(f"unknown feature key {key!r}")
                if key in seen:
                    raise FeatureError(f"repeated feature key {key!r}")
                if key == "gnp":
                    # gnp labels keep | inside: ambiguity lives per slot,
                    # e.g. any_pl_2|3 is one label with an ambiguous person.
                    values = (raw.strip(),) if raw.strip() else ()
                else:
                    values = tuple(v.strip() for v in raw.split("|") if v.strip())
                if not values:
                    raise FeatureError(f"empty value set for {key!r}")
                seen.add(key)
                pairs.append((key, values))
            else:
                tags.append(item)
        return cls(tuple(pairs), tuple(tags))

    @classmethod
    def of(cls, **kv: str) -> "FeatureBundle":
        pairs = []
        for key, raw in kv.items():
            if key not in FEATURE_KEYS:
                raise FeatureError(f"unknown feature key {key!r}")
            values = (raw,) if key == "gnp" else tuple(raw.split("|"))
            pairs.append((key, values))
        return cls(tuple(pairs))

    def get(self, key: str) -> tuple[str, ...] | None:
        for k, v in self.pairs:
            if k == key:
                return v
        return None

    def first(self, key: str, default: str | None = None) -> str | None:
        values = self.get(key)
        return values[0] if values else default

    def keys(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.pairs)

    def with_value(self, key: str, value: str) -> "FeatureBundle":
        """Replace (or add) one key, preserving order."""
        if key not in FEATURE_KEYS:
            raise FeatureError(f"unknown feature key {key!r}")
        values = (value,) if key == "gnp" else tuple(value.split("|"))
        pairs = [(k, values if k == key else v) for k, v in self.pairs]
        if key not in self.keys():
            pairs.append((key, values))
        return FeatureBundle(tuple(pairs), self.tags)

    def merged_under(self, inherent: "FeatureBundle") -> "FeatureBundle":
        """Suffix features extended by inherent ones for keys not yet set."""
        pairs = list(self.pairs)
        for key, values in inherent.pairs:
            if self.get(key) is None:
                pairs.append((key, values))
        return FeatureBundle(tuple(pairs), self.tags + inherent.tags)

    def is_empty(self) -> bool:
        return not self.pairs and not self.tags

    def format(self) -> str:
        """Data-file serialization (commas between all items)."""
        items = [f"{k}={'|'.join(v)}" for k, v in self.pairs]
        items.extend(self.tags)
        return ",".join(items) if items else "-"

    def display_items(self) -> list[str]:
        """Analyzer display: canonical key order, tags space-joined last."""
        ordered = sorted(self.pairs, key=lambda kv: FEATURE_KEYS.index(kv[0]))
        items = [f"{k}={'|'.join(v)}" for k, v in ordered]
        if self.tags:
            items.append(" ".join(self.tags))
        return items


def gnp_triple(label: str) -> tuple[tuple[str, ...], tuple[str, ...], tuple[str, ...]]:
    """Split a gender_number_person label; ``any`` wildcards every slot."""
    if label == ANY:
        wild = (ANY,)
        return wild, wild, wild
    parts = label.split("_")
    if len(parts) != 3:
        raise FeatureError(f"bad gnp label {label!r}")
    return tuple(tuple(p.split("|")) for p in parts)  # type: ignore[return-value]


def _values_match(a: tuple[str, ...], b: tuple[str, ...]) -> bool:
    if ANY in a or ANY in b:
        return True
    return bool(set(a) & set(b))


def _gnp_match(a_values: tuple[str, ...], b_values: tuple[str, ...]) -> bool:
    for a in a_values:
        for b in b_values:
            ag, an, ap = gnp_triple(a)
            bg, bn, bp = gnp_triple(b)
            if _values_match(ag, bg) and _values_match(an, bn) and _values_match(ap, bp):
                return True
    return False


def compatible(a: FeatureBundle, b: FeatureBundle) -> bool:
    """True when no shared key has disjoint values; missing keys are open."""
    for key, a_values in a.pairs:
        b_values = b.get(key)
        if b_values is None:
            continue
        if key == "gnp":
            if not _gnp_match(a_values, b_values):
                return False
        elif not _values_match(a_values, b_values):
            return False
    return True


@dataclass(frozen=True)
class Annotation:
    """A curly-brace agreement chip, e.g. ``{3_~m._e.}``."""

    items: tuple[str, ...]
    kind: str = "raw"  # gnp | gender | raw

    def render(self) -> str:
        return "{" + "_".join(self.items) + "}"


def gnp_annotation(label: str | None) -> Annotation | None:
    """Display a source gnp label; fully unspecified bundles show nothing."""
    if not label:
        return None
    genders, numbers, persons = gnp_triple(label)
    items: list[str] = []
    if ANY not in persons:
        items.append("".join(sorted(persons)))
    if ANY not in genders and len(genders) == 1 and genders[0] in GENDER_MARKS:
        items.append(GENDER_MARKS[genders[0]])
    if ANY not in numbers and len(numbers) == 1 and numbers[0] in NUMBER_MARKS:
        items.append(NUMBER_MARKS[numbers[0]])
    return Annotation(tuple(items), "gnp") if items else None


def gender_annotation(value: str | None) -> Annotation | None:
    if not value or value == ANY:
        return None
    mark = GENDER_MARKS.get(value)
    return Annotation((mark,), "gender") if mark else None


_MARK_GENDERS = {v: k for k, v in GENDER_MARKS.items()}
_MARK_NUMBERS = {v: k for k, v in NUMBER_MARKS.items()}


def annotation_features(annotation: Annotation) -> FeatureBundle:
    """Best-effort decode of display items back into gender/number/person."""
    pairs: list[tuple[str, tuple[str, ...]]] = []
    for item in annotation.items:
        if item in _MARK_GENDERS:
            pairs.append(("gender", (_MARK_GENDERS[item],)))
        elif item in _MARK_NUMBERS:
            pairs.append(("number", (_MARK_NUMBERS[item],)))
        elif item.isdigit():
            pairs.append(("person", tuple(item)))
    return FeatureBundle(tuple(pairs))
