"""Reduction, overlaps and Knuth-Bendix completion for tagged string rewriting.

Rules are kept in four classes according to their tags: ``G`` (no tag),
``H`` (left tag), ``K`` (right tag) and ``HK`` (both).  Tags can only sit at
the ends of a word, so only some overlap shapes between two rule classes are
possible; :data:`OVERLAP_TYPES` lists them and :func:`find_overlaps` never
looks for any other shape.
"""

from __future__ import annotations

import heapq
import logging
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cells import Step, TwoCell, compose, expand, invert
from .presentation import PresentationError, Rule, rule_kind
from .words import (
    GREATER, LESS, OrderSpec, Word, compare, find_factor_occurrences, format_word,
    parse_word, tag_pattern,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_RULES = 10_000
DEFAULT_MAX_STEPS = 100_000

PREFIX, SUFFIX, INTERNAL, LEFT_OFFSET, RIGHT_OFFSET = (
    "prefix", "suffix", "internal", "left offset", "right offset")

# admissible overlap shapes for an ordered pair (class of l1, class of l2)
OVERLAP_TYPES = {
    ("G", "G"): (PREFIX, SUFFIX, INTERNAL, LEFT_OFFSET, RIGHT_OFFSET),
    ("G", "H"): (SUFFIX, INTERNAL, RIGHT_OFFSET),
    ("G", "K"): (PREFIX, INTERNAL, LEFT_OFFSET),
    ("H", "H"): (PREFIX,),
    ("H", "K"): (LEFT_OFFSET,),
    ("K", "K"): (SUFFIX,),
    ("G", "HK"): (INTERNAL,),
    ("H", "HK"): (PREFIX,),
    ("K", "HK"): (SUFFIX,),
}


class ReductionLimitError(RuntimeError):
    """A single reduction exceeded its step budget."""


class _RuleBudget(Exception):
    pass


class CompletionError(RuntimeError):
    """Completion met a pair it cannot orient."""


class RewriteSystem:
    """A set of oriented rules together with the order that oriented them.

    ``complete`` is set by a completion run that emptied its pair queue;
    ``limit_reached`` when it stopped on a rule limit or budget instead.
    """

    def __init__(self, order: OrderSpec, rules: Iterable[Rule] = (), *, generators=None,
                 inverses=None, complete: bool = False, limit_reached: bool = False,
                 initial: Iterable[Rule] | None = None, added: int = 0):
        self.order = order
        self.rules = tuple(rules)
        if generators is None:
            generators = tuple(s for s in order.precedence if s not in ("H", "K"))
        self.generators = tuple(generators)
        self.inverses = dict(inverses or {})
        self.complete = complete
        self.limit_reached = limit_reached
        self.initial = tuple(self.rules if initial is None else initial)
        self.added = added
        for r in self.rules:
            if tag_pattern(r.lhs) != tag_pattern(r.rhs):
                raise PresentationError(f"{r!r} changes tags")
        self._index = None

    def _by_kind(self, kind):
        return tuple(r for r in self.rules if r.kind == kind)

    @property
    def rules_g(self):
        return self._by_kind("G")

    @property
    def rules_h(self):
        return self._by_kind("H")

    @property
    def rules_k(self):
        return self._by_kind("K")

    @property
    def rules_hk(self):
        return self._by_kind("HK")

    @property
    def alphabet(self) -> tuple:
        return self.generators + ("H", "K")

    @property
    def index(self):
        if self._index is None:
            self._index = _Index(self.rules)
        return self._index

    def pairs(self) -> set:
        return {r.pair for r in self.rules}

    def rule(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def with_rules(self, rules, **kw) -> "RewriteSystem":
        args = dict(generators=self.generators, inverses=self.inverses, initial=self.initial)
        args.update(kw)
        return RewriteSystem(self.order, rules, **args)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def __repr__(self) -> str:
        status = "complete" if self.complete else ("partial" if self.limit_reached else "unchecked")
        return f"<RewriteSystem {len(self.rules)} rules, {status}>"


class _Index:
    """Left-hand side lookup used by reduction."""

    def __init__(self, rules: Iterable[Rule] = ()):
        self.by_lhs = {}
        self.lengths = Counter()
        self._sorted = None
        for r in rules:
            self.add(r)

    def add(self, r: Rule):
        if r.lhs not in self.by_lhs:
            self.lengths[len(r.lhs)] += 1
        self.by_lhs[r.lhs] = r
        self._sorted = None

    def remove(self, r: Rule):
        if self.by_lhs.get(r.lhs) is r:
            del self.by_lhs[r.lhs]
            self.lengths[len(r.lhs)] -= 1
            if not self.lengths[len(r.lhs)]:
                del self.lengths[len(r.lhs)]
            self._sorted = None

    @property
    def sorted_lengths(self):
        if self._sorted is None:
            self._sorted = sorted(self.lengths)
        return self._sorted


def _reduce(w: Sequence[str], index: _Index, max_steps: int, logged: bool):
    by_lhs = index.by_lhs
    lengths = index.sorted_lengths
    out: list = []
    pending = list(reversed(tuple(w)))
    steps = []
    n = 0
    while pending:
        out.append(pending.pop())
        size = len(out)
        for m in lengths:
            if m > size:
                break
            rule = by_lhs.get(tuple(out[size - m:]))
            if rule is None:
                continue
            n += 1
            if n > max_steps:
                raise ReductionLimitError(f"more than {max_steps} rewrite steps reducing {format_word(w)}")
            if logged:
                steps.append(Step(rule, False, tuple(out[:size - m]), tuple(reversed(pending))))
            del out[size - m:]
            pending.extend(reversed(rule.rhs))
            break
    return tuple(out), steps


def reduce(w: Sequence[str], rs: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS) -> Word:
    """Reduce ``w`` to an irreducible word (leftmost innermost strategy)."""
    return _reduce(w, rs.index, max_steps, False)[0]


def reduce_with_cell(w: Sequence[str], rs: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS):
    """Like :func:`reduce` but also return the 2-cell of the rewrites made."""
    nf, steps = _reduce(w, rs.index, max_steps, True)
    return nf, TwoCell(tuple(w), tuple(steps))


def is_irreducible(w: Sequence[str], rs: RewriteSystem) -> bool:
    by_lhs = rs.index.by_lhs
    w = tuple(w)
    for m in rs.index.sorted_lengths:
        for i in range(len(w) - m + 1):
            if w[i:i + m] in by_lhs:
                return False
    return True


def redexes(w: Sequence[str], rs: RewriteSystem) -> list:
    """All ``(position, rule)`` where a rule applies to ``w``."""
    w = tuple(w)
    out = []
    for r in rs.rules:
        for i in find_factor_occurrences(w, r.lhs):
            out.append((i, r))
    return out


def rewrite_at(w: Sequence[str], pos: int, rule: Rule) -> Word:
    w = tuple(w)
    if w[pos:pos + len(rule.lhs)] != rule.lhs:
        raise ValueError(f"{rule!r} does not apply at {pos} in {format_word(w)}")
    return w[:pos] + rule.rhs + w[pos + len(rule.lhs):]


def reduce_random(w: Sequence[str], rs: RewriteSystem, rng: random.Random,
                  max_steps: int = DEFAULT_MAX_STEPS) -> Word:
    """Reduce by applying a uniformly chosen redex at every step."""
    w = tuple(w)
    for _ in range(max_steps):
        found = redexes(w, rs)
        if not found:
            return w
        pos, rule = rng.choice(found)
        w = rewrite_at(w, pos, rule)
    raise ReductionLimitError(f"more than {max_steps} random rewrite steps")


# -- overlaps -------------------------------------------------------------------

@dataclass(frozen=True)
class CriticalPair:
    """Two one-step reducts of a common ``peak`` word.

    ``left`` comes from applying ``rules[0]`` at ``positions[0]`` and
    ``right`` from ``rules[1]`` at ``positions[1]``.
    """

    left: Word
    right: Word
    rules: tuple
    kind: str
    peak: Word
    positions: tuple

    def cell(self) -> TwoCell:
        """2-cell from ``left`` to ``right`` through the peak."""
        (r1, r2), (p1, p2) = self.rules, self.positions
        c1 = TwoCell.of_rule(r1, self.peak[:p1], self.peak[p1 + len(r1.lhs):])
        c2 = TwoCell.of_rule(r2, self.peak[:p2], self.peak[p2 + len(r2.lhs):])
        return compose(invert(c1), c2)


def _pair(r1, r2, kind, peak, p1, p2) -> CriticalPair:
    left = peak[:p1] + r1.rhs + peak[p1 + len(r1.lhs):]
    right = peak[:p2] + r2.rhs + peak[p2 + len(r2.lhs):]
    return CriticalPair(left, right, (r1, r2), kind, peak, (p1, p2))


def find_overlaps(r1: Rule, r2: Rule) -> list:
    """Critical pairs where ``l1`` meets ``l2`` in an admissible shape.

    The shapes follow the tag classes of the two rules; an ordered pair of
    classes missing from :data:`OVERLAP_TYPES` has no overlaps (the
    reversed pair covers them).
    """
    kinds = OVERLAP_TYPES.get((r1.kind, r2.kind), ())
    l1, l2 = r1.lhs, r2.lhs
    n1, n2 = len(l1), len(l2)
    out = []
    for kind in kinds:
        if kind == PREFIX:
            if n1 < n2 and l2[:n1] == l1:
                out.append(_pair(r1, r2, kind, l2, 0, 0))
        elif kind == SUFFIX:
            if n1 < n2 and l2[n2 - n1:] == l1:
                out.append(_pair(r1, r2, kind, l2, n2 - n1, 0))
        elif kind == INTERNAL:
            for i in range(1, n2 - n1):
                if l2[i:i + n1] == l1:
                    out.append(_pair(r1, r2, kind, l2, i, 0))
        elif kind == LEFT_OFFSET:
            for o in range(1, min(n1, n2)):
                if l1[n1 - o:] == l2[:o]:
                    out.append(_pair(r1, r2, kind, l1 + l2[o:], 0, n1 - o))
        elif kind == RIGHT_OFFSET:
            for o in range(1, min(n1, n2)):
                if l2[n2 - o:] == l1[:o]:
                    out.append(_pair(r1, r2, kind, l2 + l1[o:], n2 - o, 0))
    return out


def critical_pairs(r1: Rule, r2: Rule) -> list:
    """Overlaps of the unordered pair, both orientations, without repeats."""
    found = find_overlaps(r1, r2)
    if r2 is not r1:
        found += find_overlaps(r2, r1)
    seen, out = set(), []
    for cp in found:
        (a, b), (p, q) = cp.rules, cp.positions
        key = (cp.peak, frozenset(((id(a), p), (id(b), q))))
        if key not in seen:
            seen.add(key)
            out.append(cp)
    return out


def check_local_confluence(rs: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS) -> list:
    """Critical pairs of ``rs`` whose two sides do not reduce to the same word."""
    rules = list(rs.rules)
    unresolved = []
    for i, r1 in enumerate(rules):
        for r2 in rules[i:]:
            for cp in critical_pairs(r1, r2):
                if reduce(cp.left, rs, max_steps) != reduce(cp.right, rs, max_steps):
                    unresolved.append(cp)
    return unresolved


# -- completion ------------------------------------------------------------------------

class _Completion:
    def __init__(self, rs: RewriteSystem, limit, max_rules, max_steps, logged):
        self.rs = rs
        self.order = rs.order
        self.limit = limit
        self.max_rules = max_rules
        self.max_steps = max_steps
        self.logged = logged
        self.active = {}  # slot -> Rule
        self.index = _Index()
        self.queue = []
        self.seq = 0
        self.slot = 0
        self.added = 0
        self.pending = []
        used = [r.id for r in rs.rules]
        self.next_id = {
            "a": 1 + max((_num(i) for i in used if i.startswith("a")), default=0),
            "b": 1 + max((_num(i) for i in used if i.startswith("b")), default=0),
        }

    def new_id(self, lhs) -> str:
        series = "a" if rule_kind(lhs) == "G" else "b"
        n = self.next_id[series]
        self.next_id[series] += 1
        return f"{series}{n}"

    def nf(self, w):
        nf, steps = _reduce(w, self.index, self.max_steps, self.logged)
        return nf, (TwoCell(tuple(w), tuple(steps)) if self.logged else None)

    def insert(self, rule: Rule) -> int:
        self.slot += 1
        self.active[self.slot] = rule
        self.index.add(rule)
        return self.slot

    def remove(self, slot: int):
        rule = self.active.pop(slot)
        self.index.remove(rule)
        return rule

    def enqueue(self, slot: int):
        r = self.active[slot]
        for other, q in list(self.active.items()):
            size = max(len(r.lhs), len(q.lhs))
            self.seq += 1
            heapq.heappush(self.queue, (size, self.seq, other, slot))

    def equation(self, s, t, cell, initial: Rule | None = None, counted=True):
        """Reduce both sides, orient, and add the resulting rule (if any)."""
        s2, cs = self.nf(s)
        t2, ct = self.nf(t)
        if s2 == t2:
            return None
        c = compare(s2, t2, self.order)
        if c == 0:  # pragma: no cover - total orders never get here
            raise CompletionError(f"cannot orient {format_word(s2)} = {format_word(t2)}")
        if tag_pattern(s2) != tag_pattern(t2):
            raise CompletionError(f"pair {format_word(s2)} = {format_word(t2)} changes tags")
        if initial is not None and (s2, t2) == initial.pair:
            rule = initial
        else:
            if c == GREATER:
                lhs, rhs = s2, t2
            else:
                lhs, rhs = t2, s2
            log_cell = None
            if self.logged:
                e = compose(invert(cs), cell, ct)
                log_cell = e if c == GREATER else invert(e)
            rule = Rule(self.new_id(lhs), lhs, rhs, "derived", log_cell)
            if counted:
                self.added += 1
        if len(self.active) >= self.max_rules:
            raise _RuleBudget
        self.add(rule)
        return rule

    def add(self, rule: Rule):
        slot = self.insert(rule)
        for other_slot, other in list(self.active.items()):
            if other_slot == slot:
                continue
            if find_factor_occurrences(other.lhs, rule.lhs):
                self.remove(other_slot)
                cell = TwoCell.of_rule(other) if self.logged else None
                self.pending.append((other.lhs, other.rhs, cell))
            elif find_factor_occurrences(other.rhs, rule.lhs):
                rhs, c = self.nf(other.rhs)
                log_cell = compose(TwoCell.of_rule(other), c) if self.logged else None
                replaced = Rule(self.new_id(other.lhs), other.lhs, rhs, "derived", log_cell)
                self.index.remove(other)
                self.active[other_slot] = replaced
                self.index.add(replaced)
        self.enqueue(slot)

    def drain(self):
        while self.pending:
            s, t, cell = self.pending.pop()
            self.equation(s, t, cell)

    def run(self) -> RewriteSystem:
        limit_reached = False
        try:
            for r in self.rs.rules:
                cell = TwoCell.of_rule(r) if self.logged else None
                self.equation(r.lhs, r.rhs, cell, initial=r, counted=False)
                self.drain()
            while self.queue:
                if self.limit is not None and self.added >= self.limit:
                    limit_reached = True
                    break
                _, _, s1, s2 = heapq.heappop(self.queue)
                if s1 not in self.active or s2 not in self.active:
                    continue
                for cp in critical_pairs(self.active[s1], self.active[s2]):
                    if s1 not in self.active or s2 not in self.active:
                        break
                    cell = cp.cell() if self.logged else None
                    self.equation(cp.left, cp.right, cell)
                    self.drain()
        except ReductionLimitError as exc:
            log.warning("completion stopped: %s", exc)
            limit_reached = True
        except _RuleBudget:
            log.warning("completion stopped at %d rules", self.max_rules)
            limit_reached = True
        rules = list(self.active.values())
        return RewriteSystem(self.order, rules, generators=self.rs.generators,
                             inverses=self.rs.inverses,
                             complete=not limit_reached and not self.queue,
                             limit_reached=limit_reached, initial=self.rs.initial,
                             added=self.added)


def _num(rule_id: str) -> int:
    try:
        return int(rule_id[1:])
    except ValueError:
        return 0


def knuth_bendix(rs: RewriteSystem, limit: int | None = None, *, max_rules: int = DEFAULT_MAX_RULES,
                 max_steps: int = DEFAULT_MAX_STEPS, logged: bool = False,
                 group_first: bool = True, group_limit: int | None = None) -> RewriteSystem:
    """Complete ``rs`` by resolving critical pairs.

    ``limit`` stops after that many new rules have been added and
    ``max_rules`` caps the number of rules held at once; hitting either (or
    the per-reduction ``max_steps``) returns a partial system with
    ``limit_reached`` set.  The result
    is interreduced: every left-hand side is irreducible by the other rules
    and every right-hand side is irreducible.  With ``logged`` each derived
    rule carries a 2-cell from its left to its right side.

    Tagged rules never rewrite untagged words, so by default the group rules
    are completed on their own first (bounded by ``group_limit``, which
    defaults to ``limit``) and ``limit`` then counts only rules added while
    completing the whole system.
    """
    if limit is not None and limit < 0:
        raise ValueError("limit must be non-negative")
    if max_rules <= 0 or max_steps <= 0:
        raise ValueError("budgets must be positive")
    tagged = [r for r in rs.rules if r.kind != "G"]
    if not group_first or not tagged or len(tagged) == len(rs.rules):
        return _Completion(rs, limit, max_rules, max_steps, logged).run()
    if group_limit is None:
        group_limit = limit
    group = rs.with_rules([r for r in rs.rules if r.kind == "G"])
    done = _Completion(group, group_limit, max_rules, max_steps, logged).run()
    full = _Completion(rs.with_rules(list(done.rules) + tagged), limit, max_rules, max_steps, logged)
    full.next_id["a"] = max(full.next_id["a"], 1 + max((_num(r.id) for r in done.rules
                                                        if r.id.startswith("a")), default=0))
    out = full.run()
    out.added += done.added
    out.limit_reached = out.limit_reached or done.limit_reached
    out.complete = out.complete and done.complete
    return out


# -- text format --------------------------------------------------------------------

def render_system(rs: RewriteSystem, logs: bool = False) -> str:
    """One rule per line, ``lhs -> rhs [id]``; tokens space separated."""
    sp = lambda w: " ".join(w) if w else "id"  # noqa: E731
    status = "complete" if rs.complete else ("partial" if rs.limit_reached else "unchecked")
    lines = [
        "generators: " + " ".join(rs.generators),
    ]
    if rs.inverses:
        seen, pairs = set(), []
        for x, y in rs.inverses.items():
            if x not in seen:
                pairs.append(f"{x} {y}")
                seen.update((x, y))
        lines.append("inverses: " + ", ".join(pairs))
    lines.append("order: " + rs.order.describe())
    lines.append("status: " + status)
    for kind in ("G", "H", "K", "HK"):
        for r in rs.rules:
            if r.kind == kind:
                line = f"{sp(r.lhs)} -> {sp(r.rhs)} [{r.id}]"
                if logs and r.log is not None:
                    line += "  # " + expand(r.log).render()
                lines.append(line)
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> RewriteSystem:
    from .presentation import parse_order

    gens, inverses, order, status = None, {}, None, "unchecked"
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" in line:
            if gens is None:
                raise PresentationError(f"line {lineno}: rule before 'generators:'")
            body, _, rid = line.partition("[")
            lhs, _, rhs = body.partition("->")
            rid = rid.rstrip("]").strip() or f"r{len(rules) + 1}"
            l, r = parse_word(lhs, gens), parse_word(rhs, gens)
            if compare(l, r, order) != GREATER:
                raise PresentationError(f"line {lineno}: rule is not decreasing")
            rules.append(Rule(rid, l, r, "initial"))
            continue
        key, _, value = line.partition(":")
        key = key.strip()
        if key == "generators":
            gens = tuple(value.split())
        elif key == "inverses":
            for item in filter(None, (p.strip() for p in value.split(","))):
                x, y = item.split()
                inverses[x], inverses[y] = y, x
        elif key == "order":
            order = parse_order(value, gens or ())
        elif key == "status":
            status = value.strip()
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if gens is None or order is None:
        raise PresentationError("missing generators or order")
    return RewriteSystem(order, rules, generators=gens, inverses=inverses,
                         complete=status == "complete", limit_reached=status == "partial")
