"""Logged completion and reduction, witnesses, endorewrites.

Every rewrite performed on a double coset word ``H w K`` is recorded as a
2-cell whose steps use only the initial rules.  Reading off the steps that
use subgroup rules gives explicit subgroup elements relating two words of
the same double coset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cells import CellError, TwoCell, compose, expand, invert, replay
from .rewriting import (
    DEFAULT_MAX_RULES, DEFAULT_MAX_STEPS, RewriteSystem, knuth_bendix, reduce, reduce_with_cell,
)
from .words import format_word, inverse_word, tagged


def logged_reduce(w, rs: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS):
    """Reduce ``w`` and return ``(normal form, cell)``.

    The cell is expanded so every step refers to an initial rule.
    """
    nf, cell = reduce_with_cell(w, rs, max_steps)
    return nf, expand(cell)


def logged_knuth_bendix(rs: RewriteSystem, limit: int | None = None, *,
                        max_rules: int = DEFAULT_MAX_RULES, max_steps: int = DEFAULT_MAX_STEPS,
                        **kw) -> RewriteSystem:
    return knuth_bendix(rs, limit, max_rules=max_rules, max_steps=max_steps, logged=True, **kw)


def rule_cell(rule) -> TwoCell:
    """The log of ``rule`` written with initial rules only."""
    if rule.log is None:
        if rule.origin == "initial":
            return TwoCell.of_rule(rule)
        raise CellError(f"{rule!r} carries no log")
    return expand(rule.log)


@dataclass(frozen=True)
class Witness:
    """Subgroup factors ``h`` and ``k`` with ``h . w1 . k = w2`` in the group.

    Each factor is ``(generator word, exponent)`` with exponent +1 or -1,
    listed left to right.
    """

    h_factors: tuple = ()
    k_factors: tuple = ()

    def expand(self, inverses) -> tuple:
        """The two factors as plain words (needs declared inverses)."""
        def word_of(factors):
            out = ()
            for g, e in factors:
                out += tuple(g) if e > 0 else inverse_word(g, inverses)
            return out
        return word_of(self.h_factors), word_of(self.k_factors)

    def render(self) -> str:
        def part(factors):
            if not factors:
                return "1"
            items = []
            for g, e in factors:
                base = format_word(g)
                if len(g) > 1:
                    base = f"({base})"
                items.append(base + ("^-1" if e < 0 else ""))
            return " ".join(items)
        return f"h = {part(self.h_factors)} ; k = {part(self.k_factors)}"


def _cancel(factors: list) -> tuple:
    out = []
    for f in factors:
        if out and out[-1][0] == f[0] and out[-1][1] == -f[1]:
            out.pop()
        else:
            out.append(f)
    return tuple(out)


def witness_from_cell(cell: TwoCell) -> Witness:
    """Read subgroup factors off a cell between two ``H w K`` words."""
    h_rev, k = [], []
    for st in cell.steps:
        kind = st.rule.kind
        if kind == "G":
            continue
        if st.rule.origin != "initial":
            raise CellError(f"cell step {st.render()} is not expanded to initial rules")
        if kind == "H":
            gen = st.rule.lhs[1:]
            # Hhv -> Hv multiplies on the left by h^-1
            h_rev.append((gen, 1 if st.inverted else -1))
        elif kind == "K":
            gen = st.rule.lhs[:-1]
            k.append((gen, 1 if st.inverted else -1))
        else:
            raise CellError(f"unexpected {kind} rule in an expanded cell")
    return Witness(_cancel(list(reversed(h_rev))), _cancel(k))


def extract_witness(w1, w2, rs: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS):
    """A :class:`Witness` relating ``w1`` and ``w2``, or ``None``.

    ``None`` means ``H w1 K`` and ``H w2 K`` have different normal forms.
    """
    t1, t2 = tagged(w1), tagged(w2)
    n1, c1 = logged_reduce(t1, rs, max_steps)
    n2, c2 = logged_reduce(t2, rs, max_steps)
    if n1 != n2:
        return None
    return witness_from_cell(compose(c1, invert(c2)))


def verify_witness(witness: Witness, w1, w2, rs: RewriteSystem) -> bool:
    """Check ``h . w1 . k`` and ``w2`` agree under the group rules of ``rs``."""
    group = rs.with_rules(rs.rules_g)
    hw, kw = witness.expand(rs.inverses)
    return reduce(hw + tuple(w1) + kw, group) == reduce(tuple(w2), group)


def endorewrite(w, c1: TwoCell, c2: TwoCell) -> TwoCell:
    """``c1 . c2^-1``, a loop at ``w`` built from two rewrites with equal ends."""
    w = tuple(w)
    if c1.source != w or c2.source != w:
        raise CellError(f"both cells must start at {format_word(w)}")
    if c1.target != c2.target:
        raise CellError("cells end at different words")
    return compose(c1, invert(c2))


def is_endorewrite(c: TwoCell) -> bool:
    return c.source == c.target and replay(c, c.source) == c.source


__all__ = [
    "Witness", "endorewrite", "extract_witness", "is_endorewrite", "logged_knuth_bendix",
    "logged_reduce", "rule_cell", "verify_witness", "witness_from_cell",
]
