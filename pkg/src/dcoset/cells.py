"""Logged rewrites (2-cells).

A :class:`TwoCell` is a vertical composite of whiskered rule applications
``u1 r1 v1 . u2 r2 v2 . ...``.  Each :class:`Step` keeps its whiskers and a
reference to the rule it applies, so a cell can be replayed and audited
without any external registry.  Cells are immutable; composition,
inversion and whiskering return new cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .words import Word, format_word

if TYPE_CHECKING:  # pragma: no cover
    from .presentation import Rule


class CellError(ValueError):
    """Raised when cells do not compose or a replay does not match."""


@dataclass(frozen=True)
class Step:
    rule: "Rule"
    inverted: bool = False
    left: Word = ()
    right: Word = ()

    @property
    def source(self) -> Word:
        mid = self.rule.rhs if self.inverted else self.rule.lhs
        return self.left + mid + self.right

    @property
    def target(self) -> Word:
        mid = self.rule.lhs if self.inverted else self.rule.rhs
        return self.left + mid + self.right

    def inverse(self) -> "Step":
        return Step(self.rule, not self.inverted, self.left, self.right)

    def whiskered(self, u: Word, v: Word) -> "Step":
        return Step(self.rule, self.inverted, tuple(u) + self.left, self.right + tuple(v))

    def render(self) -> str:
        text = "".join(self.left) + str(self.rule.id) + ("^-1" if self.inverted else "")
        if self.right:
            text += " " + " ".join(self.right)
        return text


@dataclass(frozen=True)
class TwoCell:
    """A composable record of rewrites from ``source`` to ``target``."""

    source: Word
    steps: tuple = ()
    target: Word = None

    def __post_init__(self):
        src = tuple(self.source)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "steps", tuple(self.steps))
        cur = src
        for i, st in enumerate(self.steps):
            if st.source != cur:
                raise CellError(
                    f"step {i} ({st.render()}) expects {format_word(st.source)}, got {format_word(cur)}")
            cur = st.target
        if self.target is not None and tuple(self.target) != cur:
            raise CellError(f"declared target {format_word(self.target)} != {format_word(cur)}")
        object.__setattr__(self, "target", cur)

    @classmethod
    def identity(cls, w: Sequence[str]) -> "TwoCell":
        return cls(tuple(w))

    @classmethod
    def of_rule(cls, rule: "Rule", left: Word = (), right: Word = (), inverted: bool = False) -> "TwoCell":
        st = Step(rule, inverted, tuple(left), tuple(right))
        return cls(st.source, (st,))

    def __len__(self) -> int:
        return len(self.steps)

    def __matmul__(self, other: "TwoCell") -> "TwoCell":
        return compose(self, other)

    def render(self) -> str:
        return render(self)

    def words(self) -> list:
        """Every intermediate word, source first."""
        out = [self.source]
        for st in self.steps:
            out.append(st.target)
        return out


def compose(*cells: TwoCell) -> TwoCell:
    """Vertical composite; each target must equal the next source."""
    if not cells:
        raise CellError("compose needs at least one cell")
    steps = []
    cur = cells[0].source
    for c in cells:
        if c.source != cur:
            raise CellError(f"cannot compose: {format_word(cur)} vs {format_word(c.source)}")
        steps.extend(c.steps)
        cur = c.target
    return TwoCell(cells[0].source, tuple(steps))


def invert(c: TwoCell) -> TwoCell:
    return TwoCell(c.target, tuple(st.inverse() for st in reversed(c.steps)))


def whisker(u: Sequence[str], c: TwoCell, v: Sequence[str]) -> TwoCell:
    u, v = tuple(u), tuple(v)
    return TwoCell(u + c.source + v, tuple(st.whiskered(u, v) for st in c.steps))


def horizontal(a: TwoCell, b: TwoCell) -> TwoCell:
    """``a src(b) . tgt(a) b``."""
    return compose(whisker((), a, b.source), whisker(a.target, b, ()))


def horizontal_alt(a: TwoCell, b: TwoCell) -> TwoCell:
    """``src(a) b . a tgt(b)``; equal to :func:`horizontal` by interchange."""
    return compose(whisker(a.source, b, ()), whisker((), a, b.target))


def replay(c: TwoCell, w: Sequence[str], trace: bool = False):
    """Apply the steps of ``c`` to ``w`` by factor replacement.

    Every step checks that the rule side sits at the whiskered position.
    Returns the final word, or the list of all intermediate words when
    ``trace`` is set.
    """
    cur = tuple(w)
    seen = [cur]
    for i, st in enumerate(c.steps):
        src = st.rule.rhs if st.inverted else st.rule.lhs
        dst = st.rule.lhs if st.inverted else st.rule.rhs
        n, m = len(st.left), len(src)
        if cur[:n] != st.left or cur[n:n + m] != src or cur[n + m:] != st.right:
            raise CellError(f"step {i} ({st.render()}) does not match {format_word(cur)}")
        cur = st.left + dst + st.right
        seen.append(cur)
    return seen if trace else cur


def render(c: TwoCell) -> str:
    if not c.steps:
        return "1_" + format_word(c.source)
    return " . ".join(st.render() for st in c.steps)


def expand(c: TwoCell, _memo: dict | None = None) -> TwoCell:
    """Rewrite ``c`` so that every step uses an initial rule.

    Derived rules are replaced, whiskers and direction included, by the
    expansion of their own logs.  Results per rule are memoised.
    """
    memo = {} if _memo is None else _memo
    steps = []
    for st in c.steps:
        rule = st.rule
        if rule.log is None or rule.origin == "initial":
            steps.append(st)
            continue
        inner = memo.get(id(rule))
        if inner is None:
            inner = expand(rule.log, memo)
            memo[id(rule)] = inner
        part = whisker(st.left, invert(inner) if st.inverted else inner, st.right)
        steps.extend(part.steps)
    return TwoCell(c.source, tuple(steps))


def uses_only(c: TwoCell, rule_ids) -> bool:
    ids = set(rule_ids)
    return all(st.rule.id in ids for st in c.steps)
