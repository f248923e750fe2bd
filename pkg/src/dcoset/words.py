"""Words over a finite alphabet, the two boundary tags, and word orders.

A word is a plain tuple of symbol names.  The tags ``H`` and ``K`` are
ordinary symbols of the tagged alphabet, with the convention that ``H`` may
only occur in the first position and ``K`` only in the last.  Keeping the
tags inside the tuple lets the rewriting code treat ``H w K`` exactly like
any other string, which is the whole point of the tagged construction.

Two orders are provided, shortlex and the recursive wreath-product order.
Both are compatible with concatenation and well-founded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

H = "H"
K = "K"
TAGS = (H, K)
IDENTITY = "id"

Word = tuple  # tuple[str, ...]


class WordError(ValueError):
    """Raised for malformed words or symbols outside an alphabet."""


def word(symbols: Iterable[str] = ()) -> Word:
    return tuple(symbols)


def parse_word(text: str, alphabet: Iterable[str] | None = None) -> Word:
    """Parse a word literal.

    Tokens may be whitespace separated (``"a a A"``) or juxtaposed
    (``"aaA"``) when every symbol is a single character.  ``id`` (or an
    empty string) is the empty word.
    """
    text = text.strip()
    if text in ("", IDENTITY, "1", "ε"):
        return ()
    known = None if alphabet is None else set(alphabet) | set(TAGS)
    if any(ch.isspace() for ch in text):
        tokens = [t for t in text.split() if t != IDENTITY]
    elif known is not None and text in known:
        tokens = [text]
    else:
        tokens = list(text)
    if known is not None:
        bad = [t for t in tokens if t not in known]
        if bad:
            raise WordError(f"unknown symbol(s) {bad} in word {text!r}")
    return tuple(tokens)


def format_word(w: Sequence[str], sep: str | None = None) -> str:
    """Render a word; juxtaposed when all symbols are single characters."""
    if not w:
        return IDENTITY
    if sep is None:
        sep = "" if all(len(s) == 1 for s in w) else " "
    return sep.join(w)


def tag_pattern(w: Sequence[str]) -> tuple[bool, bool]:
    """Return ``(has_left_tag, has_right_tag)``."""
    return (bool(w) and w[0] == H, bool(w) and w[-1] == K)


def body(w: Sequence[str]) -> Word:
    left, right = tag_pattern(w)
    return tuple(w[int(left): len(w) - int(right)])


def tagged(b: Sequence[str], left: bool = True, right: bool = True) -> Word:
    return ((H,) if left else ()) + tuple(b) + ((K,) if right else ())


def is_tagged_word(w: Sequence[str]) -> bool:
    """True when tags occur only at their allowed ends."""
    for i, s in enumerate(w):
        if s == H and i != 0:
            return False
        if s == K and i != len(w) - 1:
            return False
    return True


def in_T(w: Sequence[str]) -> bool:
    """Membership of the set of fully tagged words ``H w K``."""
    return len(w) >= 2 and w[0] == H and w[-1] == K and is_tagged_word(w)


def find_factor_occurrences(w: Sequence[str], f: Sequence[str]) -> list[int]:
    """Start positions of ``f`` as a factor of ``w``.

    A pattern beginning with ``H`` only matches at the left end and a
    pattern ending in ``K`` only at the right end.
    """
    n, m = len(w), len(f)
    if m > n:
        return []
    f = tuple(f)
    left, right = tag_pattern(f)
    if left and right:
        candidates = [0] if m == n else []
    elif left:
        candidates = [0]
    elif right:
        candidates = [n - m]
    else:
        candidates = range(n - m + 1)
    w = tuple(w)
    return [i for i in candidates if w[i:i + m] == f]


def inverse_word(w: Sequence[str], inverses: Mapping[str, str]) -> Word:
    try:
        return tuple(inverses[s] for s in reversed(w))
    except KeyError as exc:
        raise WordError(f"no inverse declared for {exc.args[0]!r}") from None


# -- orders -----------------------------------------------------------------

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class OrderSpec:
    """A word order over a finite alphabet.

    ``precedence`` lists the symbols from smallest to largest.  For the
    wreath-product order ``levels`` maps every symbol to a non-negative
    level; when omitted each symbol gets its own level in precedence order,
    which is the usual reading of ``X > x > Y > y``.
    """

    kind: str
    precedence: tuple
    levels: Mapping[str, int] | None = None
    _rank: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("shortlex", "wreath"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        prec = tuple(self.precedence)
        if len(set(prec)) != len(prec):
            raise ValueError("precedence must not repeat symbols")
        object.__setattr__(self, "precedence", prec)
        object.__setattr__(self, "_rank", {s: i for i, s in enumerate(prec)})
        if self.kind == "wreath":
            levels = dict(self.levels) if self.levels is not None else {s: i for i, s in enumerate(prec)}
            missing = set(prec) - set(levels)
            if missing:
                raise ValueError(f"no level for {sorted(missing)}")
            if any(v < 0 for v in levels.values()):
                raise ValueError("levels must be non-negative")
            object.__setattr__(self, "levels", levels)

    @classmethod
    def shortlex(cls, ascending: Sequence[str], tags: bool = True) -> "OrderSpec":
        return cls("shortlex", with_tags(ascending) if tags else tuple(ascending))

    @classmethod
    def wreath(cls, descending: Sequence[str], tags: bool = True,
               levels: Mapping[str, int] | None = None) -> "OrderSpec":
        asc = tuple(reversed(tuple(descending)))
        return cls("wreath", with_tags(asc) if tags else asc, levels)

    @property
    def alphabet(self) -> tuple:
        return self.precedence

    def key(self, w: Sequence[str]) -> tuple:
        """Sort key; only meaningful for shortlex."""
        rank = self._rank
        try:
            return (len(w), tuple(rank[s] for s in w))
        except KeyError as exc:
            raise WordError(f"symbol {exc.args[0]!r} is not covered by the order") from None

    def compare(self, u: Sequence[str], v: Sequence[str]) -> int:
        return compare(u, v, self)

    def less(self, u, v) -> bool:
        return compare(u, v, self) == LESS

    def describe(self) -> str:
        if self.kind == "shortlex":
            return "shortlex " + " < ".join(self.precedence)
        desc = list(reversed(self.precedence))
        default = {s: i for i, s in enumerate(self.precedence)}
        text = "wreath " + " > ".join(desc)
        if dict(self.levels) != default:
            text += " levels " + " ".join(f"{s}:{self.levels[s]}" for s in desc)
        return text


def with_tags(ascending: Sequence[str]) -> tuple:
    """Append the tags above everything else unless already placed."""
    asc = [s for s in ascending]
    for t in TAGS:
        if t not in asc:
            asc.append(t)
    return tuple(asc)


def compare(u: Sequence[str], v: Sequence[str], order: OrderSpec) -> int:
    """Three-way comparison of two words under ``order``."""
    u, v = tuple(u), tuple(v)
    if order.kind == "shortlex":
        ku, kv = order.key(u), order.key(v)
        return (ku > kv) - (ku < kv)
    for s in u + v:
        if s not in order._rank:
            raise WordError(f"symbol {s!r} is not covered by the order")
    return _wreath_compare(u, v, order)


def _shortlex_ranks(u, v, rank) -> int:
    if len(u) != len(v):
        return -1 if len(u) < len(v) else 1
    for a, b in zip(u, v):
        if a != b:
            return -1 if rank[a] < rank[b] else 1
    return 0


def _wreath_compare(u: tuple, v: tuple, order: OrderSpec) -> int:
    if u == v:
        return EQUAL
    levels = order.levels
    top = max(levels[s] for s in u + v)
    pu = [s for s in u if levels[s] == top]
    pv = [s for s in v if levels[s] == top]
    c = _shortlex_ranks(pu, pv, order._rank)
    if c:
        return c
    # equal top projections: compare the lower segments left to right
    for su, sv in zip(_segments(u, levels, top), _segments(v, levels, top)):
        if su != sv:
            return _wreath_compare(su, sv, order)
    return EQUAL


def _segments(w: tuple, levels, top: int) -> list:
    segs, cur = [], []
    for s in w:
        if levels[s] == top:
            segs.append(tuple(cur))
            cur = []
        else:
            cur.append(s)
    segs.append(tuple(cur))
    return segs
