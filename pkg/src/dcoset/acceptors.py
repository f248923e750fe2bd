"""Word acceptors for groups and for systems of double cosets.

NFA state labels are tuples tagged by component:

* ``("G", p)``   prefix state of the group part (``p == ()`` is ``id``)
* ``("A", q)``   state ``q`` of an imported group acceptor
* ``("H", Hp)``  H-tree state
* ``("K", qK)``  K-tree state
* ``("HK", Hp)`` HK-tree state ``Hp.K``
* ``"init"``, ``"norm"``, ``"sink"``
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

import numpy as np

from .automata import Dfa, Nfa, complement, determinize, isomorphic, minimize
from .rewriting import RewriteSystem, knuth_bendix
from .words import H, K, TAGS, format_word

INIT, NORM, SINK = "init", "norm", "sink"


def lhs_set(rules) -> list:
    return sorted({tuple(r.lhs) if hasattr(r, "lhs") else tuple(r[0]) for r in rules})


def proper_prefixes(words: Iterable[tuple]) -> set:
    return {w[:i] for w in words for i in range(1, len(w))}


def proper_suffixes(words: Iterable[tuple]) -> set:
    return {w[i:] for w in words for i in range(1, len(w))}


def state_name(s) -> str:
    if isinstance(s, str):
        return s
    kind, w = s
    if kind == "A":
        return f"q{w}"
    if kind == "HK":
        return format_word(w) + ".K"
    return format_word(w)


def _ordered(states: Iterable) -> tuple:
    rank = {INIT: 0, "G": 1, "A": 1, "H": 2, "K": 3, "HK": 4, NORM: 5, SINK: 6}

    def key(s):
        if isinstance(s, str):
            return (rank[s], 0, ())
        return (rank[s[0]], len(s[1]) if isinstance(s[1], tuple) else 0, s[1] if isinstance(s[1], tuple) else (s[1],))
    return tuple(sorted(set(states), key=key))


def _suffix_states(w: tuple, prefixes: set) -> set:
    return {w[i:] for i in range(len(w)) if w[i:] in prefixes}


def _group_step(p: tuple, x: str, lhss: list, prefixes: set):
    """Successor prefix states of ``p`` on ``x``, or ``None`` for the sink.

    ``id`` is kept in every successor set so that the group part never
    empties: a word with no live prefix is still a normal-form candidate.
    """
    px = p + (x,)
    for l in lhss:
        if len(l) <= len(px) and px[len(px) - len(l):] == l:
            return None
    return {()} | _suffix_states(px, prefixes)


def build_group_acceptor(rules, generators) -> Nfa:
    """The non-deterministic acceptor of reducible words over ``generators``.

    ``sink`` is the only accepting state; determinise, complement and
    minimise to obtain the acceptor of normal forms.
    """
    gens = tuple(generators)
    lhss = lhs_set(rules)
    prefixes = proper_prefixes(lhss)
    states = [("G", ()), SINK] + [("G", p) for p in prefixes]
    delta = {}
    for s in states:
        for x in gens:
            if s == SINK:
                delta[(s, x)] = frozenset([SINK])
                continue
            nxt = _group_step(s[1], x, lhss, prefixes)
            delta[(s, x)] = frozenset([SINK]) if nxt is None else frozenset(("G", q) for q in nxt)
    return Nfa(_ordered(states), gens, ("G", ()), delta, frozenset([SINK]))


def group_normal_form_dfa(rules, generators) -> Dfa:
    return minimize(complement(determinize(build_group_acceptor(rules, generators))))


def build_dc_acceptor(rs: RewriteSystem, generators=None, group_acceptor: Dfa | None = None) -> Nfa:
    """Non-deterministic double coset acceptor; ``norm`` is the only rejecting state.

    With ``group_acceptor`` (a DFA over the group generators accepting the
    normal forms of the group) the group component is taken from it instead
    of from the prefixes of ``R_G``.
    """
    gens = tuple(generators if generators is not None else rs.generators)
    sigma = gens + TAGS
    lhs_g = lhs_set(rs.rules_g)
    lhs_h = lhs_set(rs.rules_h)
    lhs_k = lhs_set(rs.rules_k)
    lhs_hk = lhs_set(rs.rules_hk)
    set_h, set_k, set_hk = set(lhs_h), set(lhs_k), set(lhs_hk)

    ppl_g = proper_prefixes(lhs_g)
    ppl_h = proper_prefixes(lhs_h) | {(H,)}
    psl_k = proper_suffixes(lhs_k) | {(K,)}
    # H.K states carry the prefix Hp of some H p K lhs
    ppl_hk = {l[:-1][:i] for l in lhs_hk for i in range(1, len(l))} | {(H,)}

    # entering the K-tree: reading x from the group part may start x q K
    k_entry = {}
    for l in lhs_k:
        if len(l) >= 2:
            k_entry.setdefault(l[0], set()).add(("K", l[1:]))

    if group_acceptor is not None:
        ga = group_acceptor
        missing = set(gens) - set(ga.alphabet)
        if missing:
            raise ValueError(f"group acceptor lacks symbols {sorted(missing)}")
        g_states = [("A", q) for q in range(ga.n_states)]
        g_start = ("A", ga.initial)

        def g_next(s, x):
            t = ga.next(s[1], x)
            return None if t not in ga.accepting else {("A", t)}

        def g_final(s):
            return s[1] in ga.accepting
    else:
        g_states = [("G", ())] + [("G", p) for p in ppl_g]
        g_start = ("G", ())

        def g_next(s, x):
            nxt = _group_step(s[1], x, lhs_g, ppl_g)
            return None if nxt is None else {("G", q) for q in nxt}

        def g_final(s):
            return True

    states = ([INIT, NORM, SINK] + g_states + [("H", p) for p in ppl_h]
              + [("K", q) for q in psl_k] + [("HK", p) for p in ppl_hk])
    delta = {}

    def put(s, a, targets):
        if targets:
            delta[(s, a)] = frozenset(targets)

    for a in sigma:
        put(INIT, a, {g_start, ("H", (H,)), ("HK", (H,))} if a == H else {SINK})
        put(SINK, a, {SINK})
        put(NORM, a, {SINK})
    for s in g_states:
        put(s, H, {SINK})
        put(s, K, {NORM} if g_final(s) else {SINK})
        for x in gens:
            nxt = g_next(s, x)
            put(s, x, {SINK} if nxt is None else nxt | k_entry.get(x, set()))
    for s in ppl_h:
        st = ("H", s)
        put(st, H, {SINK})
        for x in gens:
            w = s + (x,)
            out = set()
            if w in ppl_h:
                out.add(("H", w))
            if w in set_h:
                out.add(SINK)
            put(st, x, out)
    for q in psl_k:
        st = ("K", q)
        put(st, H, {SINK})
        if q == (K,):
            put(st, K, {SINK})
        else:
            put(st, q[0], {("K", q[1:])})
    for p in ppl_hk:
        st = ("HK", p)
        put(st, H, {SINK})
        if p + (K,) in set_hk:
            put(st, K, {SINK})
        for x in gens:
            if p + (x,) in ppl_hk:
                put(st, x, {("HK", p + (x,))})
    accepting = frozenset(s for s in states if s != NORM)
    return Nfa(_ordered(states), sigma, INIT, delta, accepting)


def dc_normal_form_dfa(rs: RewriteSystem, generators=None, group_acceptor=None) -> Dfa:
    """Minimal DFA accepting exactly the irreducible words ``H w K``."""
    return minimize(complement(determinize(build_dc_acceptor(rs, generators, group_acceptor))))


def pipeline_sizes(nfa: Nfa) -> tuple:
    d = determinize(nfa)
    return len(nfa), len(d), len(minimize(complement(d)))


# -- independent reference construction -------------------------------------------

def reference_dc_dfa(rs: RewriteSystem, generators=None) -> Dfa:
    """Acceptor of ``H X* K`` minus words containing a left-hand side.

    Built directly by tracking partial matches of every lhs, with tag
    symbols matching only at the ends.  Used to cross-check
    :func:`build_dc_acceptor`.
    """
    gens = tuple(generators if generators is not None else rs.generators)
    sigma = gens + TAGS
    lhss = lhs_set(rs)
    # shape: 0 start, 1 after H, 2 after K, 3 bad; matched partial lhs prefixes
    start = (0, frozenset())
    dead = (3, frozenset())
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])

    def step(state, a):
        shape, partial = state
        if shape == 3:
            return dead
        if shape == 0:
            shape = 1 if a == H else 3
        elif shape == 1:
            shape = 2 if a == K else (3 if a == H else 1)
        else:
            shape = 3
        if shape == 3:
            return dead
        grown = {m + (a,) for m in partial} | {(a,)}
        nxt = set()
        for m in grown:
            for l in lhss:
                if l[:len(m)] == m:
                    if len(m) == len(l):
                        return dead
                    nxt.add(m)
                    break
        return (shape, frozenset(nxt))

    while queue:
        s = queue.popleft()
        row = []
        for a in sigma:
            t = step(s, a)
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            row.append(index[t])
        rows.append(row)
    accepting = {i for i, (shape, _) in enumerate(order) if shape == 2}
    return minimize(Dfa(sigma, np.array(rows, dtype=np.int64), 0, accepting))


# -- lambda probe ---------------------------------------------------------------------

def lambda_probe(rs: RewriteSystem, lambdas: Iterable[int], window: int = 3, **kw):
    """Minimal acceptors for increasing completion limits.

    Returns ``(sizes, converged_at)`` where ``sizes`` maps each limit to the
    number of states and ``converged_at`` is the first limit from which
    ``window`` consecutive acceptors are isomorphic (``None`` otherwise).
    This is a heuristic: a stable run does not prove the limit is reached.
    """
    sizes, dfas = {}, []
    converged = None
    for lam in lambdas:
        sys_ = knuth_bendix(rs, lam, **kw)
        d = dc_normal_form_dfa(sys_)
        sizes[lam] = len(d)
        dfas.append((lam, d))
        if converged is None and len(dfas) >= window:
            tail = dfas[-window:]
            if all(isomorphic(tail[0][1], t[1]) for t in tail[1:]):
                converged = tail[0][0]
    return sizes, converged
