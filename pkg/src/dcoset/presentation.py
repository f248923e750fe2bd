"""Monoid presentations, double coset presentations and their tagged rules.

The text format is line based::

    generators: a A b B
    inverses: a A, b B
    rules: A a -> id ; x x x -> y y
    order: shortlex a < A < b < B
    H: a a a a a a
    K: a a a a

``inverses`` is sugar that adds the free-reduction rules ``X x -> id`` and
``x X -> id`` for each declared pair, ahead of the explicit rules.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Sequence

from .words import (
    GREATER, H, IDENTITY, K, LESS, TAGS, OrderSpec, Word, WordError, compare,
    format_word, is_tagged_word, parse_word, tag_pattern, with_tags,
)

if TYPE_CHECKING:  # pragma: no cover
    from .cells import TwoCell
    from .rewriting import RewriteSystem


class PresentationError(ValueError):
    """Malformed presentation text or an invalid rule."""


@dataclass(frozen=True, eq=False)
class Rule:
    """An oriented rule ``lhs -> rhs``.

    ``log`` is a 2-cell from ``lhs`` to ``rhs`` for derived rules produced by
    logged completion; it may mention other (earlier) rules.
    """

    id: str
    lhs: Word
    rhs: Word
    origin: str = "initial"
    log: "TwoCell | None" = None

    @property
    def kind(self) -> str:
        return rule_kind(self.lhs)

    @property
    def pair(self) -> tuple:
        return (self.lhs, self.rhs)

    def __repr__(self) -> str:
        return f"Rule({self.id}: {format_word(self.lhs)} -> {format_word(self.rhs)})"


def rule_kind(w: Sequence[str]) -> str:
    """Partition label: ``G``, ``H``, ``K`` or ``HK``."""
    left, right = tag_pattern(w)
    return {(False, False): "G", (True, False): "H", (False, True): "K", (True, True): "HK"}[(left, right)]


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple
    rules: tuple = ()
    inverses: tuple = ()  # pairs (x, X)

    @property
    def inverse_map(self) -> dict:
        inv = {}
        for x, y in self.inverses:
            inv[x], inv[y] = y, x
        return inv

    @property
    def all_rules(self) -> tuple:
        """Free-reduction rules from ``inverses`` followed by explicit rules."""
        free = []
        for x, y in self.inverses:
            free.append(((y, x), ()))
            if x != y:
                free.append(((x, y), ()))
        return tuple(free) + tuple(self.rules)


@dataclass(frozen=True)
class DoubleCosetPresentation:
    group: MonoidPresentation
    h_generators: tuple = ()
    k_generators: tuple = ()
    order: OrderSpec | None = None
    name: str = ""

    def __post_init__(self):
        gens = set(self.group.generators)
        for w in tuple(self.h_generators) + tuple(self.k_generators):
            bad = [s for s in w if s not in gens]
            if bad:
                raise PresentationError(f"subgroup generator uses unknown symbols {bad}")
        if self.order is None:
            object.__setattr__(self, "order", OrderSpec.shortlex(self.group.generators))
        missing = gens - set(self.order.precedence)
        if missing:
            raise PresentationError(f"order does not cover {sorted(missing)}")

    @property
    def generators(self) -> tuple:
        return self.group.generators

    @property
    def alphabet(self) -> tuple:
        return tuple(self.group.generators) + TAGS


# -- parsing ------------------------------------------------------------------

_KEYS = ("name", "generators", "inverses", "rules", "order", "H", "K")


def parse_order(text: str, generators: Sequence[str] = ()) -> OrderSpec:
    parts = text.split()
    if not parts:
        raise PresentationError("empty order")
    kind = parts[0]
    if kind not in ("shortlex", "wreath"):
        raise PresentationError(f"unknown order kind {kind!r}")
    rest = parts[1:]
    levels = None
    if "levels" in rest:
        i = rest.index("levels")
        levels = {}
        for item in rest[i + 1:]:
            sym, _, lev = item.partition(":")
            try:
                levels[sym] = int(lev)
            except ValueError:
                raise PresentationError(f"bad level entry {item!r}") from None
        rest = rest[:i]
    symbols = [t for t in rest if t not in ("<", ">")]
    rels = {t for t in rest if t in ("<", ">")}
    if len(rels) > 1:
        raise PresentationError("order chain mixes '<' and '>'")
    if not symbols:
        symbols = list(generators)
        rels = {"<"}
    ascending = symbols if rels != {">"} else list(reversed(symbols))
    unknown = [s for s in ascending if generators and s not in generators and s not in TAGS]
    if unknown:
        raise PresentationError(f"order mentions unknown symbols {unknown}")
    if len(set(ascending)) != len(ascending):
        raise PresentationError("order repeats a symbol")
    if levels is not None:
        top = max(levels.values(), default=0)
        for i, t in enumerate(t for t in TAGS if t not in levels):
            levels[t] = top + 1 + i
    try:
        return OrderSpec(kind, with_tags(ascending), levels)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None


def _parse_rule(text: str, gens) -> tuple:
    if "->" not in text:
        raise PresentationError(f"malformed rule {text.strip()!r} (expected 'lhs -> rhs')")
    lhs, _, rhs = text.partition("->")
    try:
        l, r = parse_word(lhs, gens), parse_word(rhs, gens)
    except WordError as exc:
        raise PresentationError(str(exc)) from None
    if any(s in TAGS for s in l + r):
        raise PresentationError(f"group rule {text.strip()!r} uses a tag symbol")
    return (l, r)


def parse_presentation(text: str) -> DoubleCosetPresentation:
    fields = {k: [] for k in _KEYS}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise PresentationError(f"line {lineno}: expected one of {', '.join(_KEYS)}")
        fields[key].append(value.strip())

    gens = " ".join(fields["generators"]).split()
    if not gens:
        raise PresentationError("no generators declared")
    for g in gens:
        if g in TAGS or g == IDENTITY or g in ("1", "ε"):
            raise PresentationError(f"{g!r} is reserved and cannot be a generator")
    if len(set(gens)) != len(gens):
        raise PresentationError("duplicate generator")

    inverses = []
    for value in fields["inverses"]:
        for item in filter(None, (p.strip() for p in value.split(","))):
            pair = item.split()
            if len(pair) != 2 or any(p not in gens for p in pair):
                raise PresentationError(f"bad inverse pair {item!r}")
            inverses.append(tuple(pair))

    rules = []
    for value in fields["rules"]:
        for item in filter(None, (p.strip() for p in value.split(";"))):
            rules.append(_parse_rule(item, gens))

    def words(key):
        out = []
        for value in fields[key]:
            for item in filter(None, (p.strip() for p in value.split(","))):
                try:
                    w = parse_word(item, gens)
                except WordError as exc:
                    raise PresentationError(str(exc)) from None
                if any(s in TAGS for s in w):
                    raise PresentationError(f"{key}-generator {item!r} uses a tag symbol")
                out.append(w)
        return tuple(out)

    if len(fields["order"]) > 1:
        raise PresentationError("order given more than once")
    order = parse_order(fields["order"][0], gens) if fields["order"] else OrderSpec.shortlex(gens)
    group = MonoidPresentation(tuple(gens), tuple(rules), tuple(inverses))
    return DoubleCosetPresentation(group, words("H"), words("K"), order, " ".join(fields["name"]))


def load_presentation(path) -> DoubleCosetPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def render_presentation(p: DoubleCosetPresentation) -> str:
    sp = lambda w: " ".join(w) if w else IDENTITY  # noqa: E731
    lines = []
    if p.name:
        lines.append(f"name: {p.name}")
    lines.append("generators: " + " ".join(p.group.generators))
    if p.group.inverses:
        lines.append("inverses: " + ", ".join(f"{x} {y}" for x, y in p.group.inverses))
    if p.group.rules:
        lines.append("rules: " + " ; ".join(f"{sp(l)} -> {sp(r)}" for l, r in p.group.rules))
    lines.append("order: " + p.order.describe())
    lines.append("H: " + ", ".join(sp(w) for w in p.h_generators))
    lines.append("K: " + ", ".join(sp(w) for w in p.k_generators))
    return "\n".join(lines) + "\n"


# -- tagged rules -----------------------------------------------------------------

def orient(lhs: Word, rhs: Word, order: OrderSpec) -> tuple:
    c = compare(lhs, rhs, order)
    if c == GREATER:
        return lhs, rhs
    if c == LESS:
        return rhs, lhs
    raise PresentationError(f"cannot orient {format_word(lhs)} = {format_word(rhs)}: sides are equal")


def tagged_pairs(p: DoubleCosetPresentation) -> list:
    """The unoriented pairs ``R_G``, ``(Hh, H)``, ``(kK, K)`` with labels."""
    out = []
    for i, (l, r) in enumerate(p.group.all_rules, 1):
        out.append((f"a{i}", l, r))
    j = 0
    for h in p.h_generators:
        j += 1
        out.append((f"b{j}", (H,) + tuple(h), (H,)))
    for k in p.k_generators:
        j += 1
        out.append((f"b{j}", tuple(k) + (K,), (K,)))
    return out


def initial_rules(p: DoubleCosetPresentation) -> list:
    rules = []
    for rid, l, r in tagged_pairs(p):
        lhs, rhs = orient(l, r, p.order)
        if not is_tagged_word(lhs) or tag_pattern(lhs) != tag_pattern(rhs):
            raise PresentationError(f"rule {rid} changes tags")
        rules.append(Rule(rid, lhs, rhs, "initial"))
    return rules


def initial_system(p: DoubleCosetPresentation) -> "RewriteSystem":
    """The tagged system ``R_G + {(Hh, H)} + {(kK, K)}`` with empty ``R_HK``."""
    from .rewriting import RewriteSystem

    return RewriteSystem(p.order, initial_rules(p), generators=p.generators,
                         inverses=p.group.inverse_map)


def group_system(p: DoubleCosetPresentation) -> "RewriteSystem":
    """Only the group rules ``R_G`` (no subgroup rules)."""
    from .rewriting import RewriteSystem

    rules = [r for r in initial_rules(p) if r.kind == "G"]
    return RewriteSystem(p.order, rules, generators=p.generators, inverses=p.group.inverse_map)
