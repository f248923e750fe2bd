"""Bounded oracle checks for rewriting systems and their acceptors.

These are exhaustive over short words and sampled beyond, and back both
the ``verify`` command and the property tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .automata import Dfa
from .rewriting import RewriteSystem, redexes, reduce, reduce_random, rewrite_at
from .words import H, K, tag_pattern


def contains_lhs(w: tuple, lhss) -> bool:
    """Direct factor scan: does ``w`` contain some left-hand side?"""
    n = len(w)
    for l in lhss:
        m = len(l)
        for i in range(n - m + 1):
            if w[i:i + m] == l:
                return True
    return False


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failed"


def acceptor_matches_rules(d: Dfa, rs: RewriteSystem, max_body: int) -> Report:
    """``d`` accepts ``H w K`` iff it has no lhs factor, for all ``|w| <= max_body``.

    A prefix ``H u`` that already contains a left-hand side is pruned after
    checking that ``d`` is in a dead state there, which settles every
    extension at once.
    """
    rep = Report(f"acceptor vs factor scan (|w| <= {max_body})")
    inner = [tuple(r.lhs) for r in rs.rules if tuple(r.lhs)[-1:] != (K,)]
    ending = [tuple(r.lhs) for r in rs.rules if tuple(r.lhs)[-1:] == (K,)]
    dead = d.dead_states()
    gens = rs.generators

    def visit(word, state, depth):
        rep.checked += 1
        t = word + (K,)
        expected = not contains_lhs(t, ending) and not contains_lhs(t, inner)
        got = d.run((K,), state) in d.accepting
        if got != expected:
            rep.failures.append(t)
        if depth == max_body:
            return
        for x in gens:
            w2 = word + (x,)
            s2 = d.next(state, x)
            if any(w2[len(w2) - len(l):] == l for l in inner if len(l) <= len(w2)):
                rep.checked += 1
                if s2 not in dead:
                    rep.failures.append(w2)
                continue
            visit(w2, s2, depth + 1)

    start = d.next(d.initial, H)
    if contains_lhs((H,), inner):
        rep.checked += 1
        if start not in dead:
            rep.failures.append((H,))
    else:
        visit((H,), start, 0)
    return rep


# -- confluence sweep -----------------------------------------------------------------

class _StackReducer:
    """Stack reduction reading left to right (or right to left).

    When several rules match at the stack top one is chosen at random.
    """

    def __init__(self, rs: RewriteSystem, rng: random.Random, from_right: bool = False):
        self.rng = rng
        self.from_right = from_right
        self.by_sym = {}
        for r in rs.rules:
            l, rhs = tuple(r.lhs), tuple(r.rhs)
            if from_right:
                l, rhs = l[::-1], rhs[::-1]
            self.by_sym.setdefault(l[-1], []).append((l, rhs))

    def push(self, stack: list, symbols) -> list:
        out = list(stack)
        pending = list(reversed(symbols))
        while pending:
            out.append(pending.pop())
            matches = [(l, r) for l, r in self.by_sym.get(out[-1], ())
                       if len(l) <= len(out) and tuple(out[len(out) - len(l):]) == l]
            if matches:
                l, r = matches[self.rng.randrange(len(matches))] if len(matches) > 1 else matches[0]
                del out[len(out) - len(l):]
                pending.extend(reversed(r))
        return out


def confluence_sweep(rs: RewriteSystem, max_body: int, seed: int = 0) -> Report:
    """Two randomised strategies agree on every ``H w K`` with ``|w| <= max_body``.

    One strategy consumes the word from the left, the other from the
    right, so a disagreement exposes a non-joinable peak.
    """
    rep = Report(f"confluence sweep (|w| <= {max_body})")
    gens = list(rs.generators)
    k = len(gens)
    ids = {}

    def nf_id(stack, from_right):
        w = tuple(reversed(stack)) if from_right else tuple(stack)
        return ids.setdefault(w, len(ids))

    results = []
    for from_right in (False, True):
        red = _StackReducer(rs, random.Random(seed + from_right), from_right)
        tables = [np.full(k ** n, -1, dtype=np.int64) for n in range(max_body + 1)]
        first, last = (K, H) if from_right else (H, K)

        def walk(stack, depth, index):
            tables[depth][index] = nf_id(red.push(stack, (last,)), from_right)
            if depth == max_body:
                return
            for j, x in enumerate(gens):
                # index reads the body left to right in both directions
                nxt = index * k + j if not from_right else index + j * k ** depth
                walk(red.push(stack, (x,)), depth + 1, nxt)

        walk(red.push([], (first,)), 0, 0)
        results.append(tables)
    for n in range(max_body + 1):
        a, b = results[0][n], results[1][n]
        rep.checked += len(a)
        bad = np.nonzero(a != b)[0]
        for i in bad[:20]:
            digits = np.base_repr(int(i), k).zfill(n) if n else ""
            rep.failures.append((H,) + tuple(gens[int(c, k)] for c in digits) + (K,))
    return rep


def random_confluence(rs: RewriteSystem, samples: int, max_body: int, seed: int = 0) -> Report:
    """Leftmost reduction agrees with random-redex reduction on random words."""
    rep = Report(f"random-redex reduction ({samples} words)")
    rng = random.Random(seed)
    gens = rs.generators
    for _ in range(samples):
        w = (H,) + tuple(rng.choice(gens) for _ in range(rng.randint(0, max_body))) + (K,)
        rep.checked += 1
        if reduce(w, rs) != reduce_random(w, rs, rng):
            rep.failures.append(w)
    return rep


def tag_preservation(rs: RewriteSystem, steps: int, seed: int = 0, max_body: int = 12) -> Report:
    """Random single rewrite steps never change the tag pattern."""
    rep = Report(f"tag preservation ({steps} steps)")
    rng = random.Random(seed)
    gens = rs.generators
    w = None
    while rep.checked < steps:
        if not w or rng.random() < 0.1:
            body = tuple(rng.choice(gens) for _ in range(rng.randint(0, max_body)))
            left, right = rng.random() < 0.8, rng.random() < 0.8
            w = ((H,) if left else ()) + body + ((K,) if right else ())
        spots = redexes(w, rs)
        if not spots:
            w = None
            continue
        pos, rule = rng.choice(spots)
        w2 = rewrite_at(w, pos, rule)
        rep.checked += 1
        if tag_pattern(w2) != tag_pattern(w) or H in w2[1:] or K in w2[:-1]:
            rep.failures.append((w, rule.id, w2))
        w = w2
    return rep


def minimality(d: Dfa) -> Report:
    """No two states of ``d`` accept the same language (pairwise table filling)."""
    rep = Report("minimality")
    n, k = d.n_states, len(d.alphabet)
    distinct = np.zeros((n, n), dtype=bool)
    acc = np.array([s in d.accepting for s in range(n)])
    distinct |= acc[:, None] != acc[None, :]
    changed = True
    while changed:
        changed = False
        for a in range(k):
            col = d.table[:, a]
            upd = distinct[np.ix_(col, col)] & ~distinct
            if upd.any():
                distinct |= upd
                changed = True
    iu = np.triu_indices(n, 1)
    rep.checked = len(iu[0])
    same = np.nonzero(~distinct[iu])[0]
    rep.failures = [(int(iu[0][i]), int(iu[1][i])) for i in same]
    return rep
