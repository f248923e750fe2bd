"""Finite automata: subset construction, complement, minimisation, equivalence.

A :class:`Dfa` stores a total transition table as an ``(n_states, n_symbols)``
integer array.  An :class:`Nfa` keeps arbitrary hashable state labels and a
sparse transition map to frozensets.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class Nfa:
    states: tuple
    alphabet: tuple
    initial: Hashable
    delta: Mapping  # (state, symbol) -> frozenset of states
    accepting: frozenset

    def __post_init__(self):
        known = set(self.states)
        if self.initial not in known:
            raise AutomatonError(f"initial state {self.initial!r} is not a state")
        if not set(self.accepting) <= known:
            raise AutomatonError("accepting states must be states")
        for (s, a), targets in self.delta.items():
            if s not in known or a not in self.alphabet or not set(targets) <= known:
                raise AutomatonError(f"bad transition from {s!r} on {a!r}")

    def step(self, subset: Iterable, symbol) -> frozenset:
        out = set()
        for s in subset:
            out |= self.delta.get((s, symbol), frozenset())
        return frozenset(out)

    def accepts(self, word: Sequence) -> bool:
        cur = frozenset([self.initial])
        for a in word:
            cur = self.step(cur, a)
        return bool(cur & self.accepting)

    def __len__(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: tuple
    table: np.ndarray
    initial: int
    accepting: frozenset
    labels: tuple = None
    _col: dict = field(init=False, repr=False)

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[1] != len(self.alphabet):
            raise AutomatonError("table must have one column per symbol")
        n = table.shape[0]
        if n == 0:
            raise AutomatonError("a DFA needs at least one state")
        if table.size and (table.min() < 0 or table.max() >= n):
            raise AutomatonError("transition to an undeclared state")
        if not 0 <= self.initial < n:
            raise AutomatonError("initial state out of range")
        acc = frozenset(int(s) for s in self.accepting)
        if any(not 0 <= s < n for s in acc):
            raise AutomatonError("accepting state out of range")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "accepting", acc)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "_col", {a: i for i, a in enumerate(self.alphabet)})
        if self.labels is not None and len(self.labels) != n:
            raise AutomatonError("one label per state")

    @property
    def n_states(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.n_states

    def next(self, state: int, symbol) -> int:
        return int(self.table[state, self._col[symbol]])

    def run(self, word: Sequence, state: int | None = None) -> int:
        s = self.initial if state is None else state
        col = self._col
        for a in word:
            if a not in col:
                raise AutomatonError(f"symbol {a!r} not in alphabet")
            s = self.table[s, col[a]]
        return int(s)

    def accepts(self, word: Sequence) -> bool:
        try:
            return self.run(word) in self.accepting
        except AutomatonError:
            return False

    def live_states(self) -> set:
        """States from which some accepting state is reachable."""
        preds = [[] for _ in range(self.n_states)]
        for s in range(self.n_states):
            for t in self.table[s]:
                preds[int(t)].append(s)
        live = set(self.accepting)
        todo = list(live)
        while todo:
            t = todo.pop()
            for s in preds[t]:
                if s not in live:
                    live.add(s)
                    todo.append(s)
        return live

    def dead_states(self) -> set:
        return set(range(self.n_states)) - self.live_states()


# -- constructions -------------------------------------------------------------

def determinize(nfa: Nfa) -> Dfa:
    """Accessible subset construction (the empty subset is a state if reached)."""
    start = frozenset([nfa.initial])
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        row = []
        for a in nfa.alphabet:
            nxt = nfa.step(cur, a)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(row)
    accepting = {i for i, sub in enumerate(order) if sub & nfa.accepting}
    table = np.array(rows, dtype=np.int64).reshape(len(order), len(nfa.alphabet))
    return Dfa(nfa.alphabet, table, 0, accepting, tuple(order))


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.table, d.initial,
               frozenset(range(d.n_states)) - d.accepting, d.labels)


def reachable(d: Dfa) -> list:
    """States reachable from the initial state, in breadth-first order."""
    seen = {d.initial: None}
    order = [d.initial]
    queue = deque([d.initial])
    while queue:
        s = queue.popleft()
        for t in d.table[s]:
            t = int(t)
            if t not in seen:
                seen[t] = None
                order.append(t)
                queue.append(t)
    return order


def _renumber(d: Dfa, classes: list) -> Dfa:
    """Quotient by ``classes`` (state -> block) with breadth-first numbering."""
    n_blocks = max(classes) + 1
    rep = [None] * n_blocks
    for s, b in enumerate(classes):
        if rep[b] is None:
            rep[b] = s
    new = {classes[d.initial]: 0}
    order = [classes[d.initial]]
    queue = deque(order)
    while queue:
        b = queue.popleft()
        for t in d.table[rep[b]]:
            tb = classes[int(t)]
            if tb not in new:
                new[tb] = len(order)
                order.append(tb)
                queue.append(tb)
    table = np.array([[new[classes[int(t)]] for t in d.table[rep[b]]] for b in order],
                     dtype=np.int64).reshape(len(order), len(d.alphabet))
    accepting = {new[classes[s]] for s in d.accepting if classes[s] in new}
    return Dfa(d.alphabet, table, 0, accepting)


def minimize(d: Dfa) -> Dfa:
    """Minimal total DFA via Hopcroft partition refinement.

    Unreachable states are dropped first; the result is numbered in
    breadth-first order from the initial state, symbols in alphabet order,
    so isomorphic minimal automata come out identical.
    """
    keep = reachable(d)
    pos = {s: i for i, s in enumerate(keep)}
    table = np.array([[pos[int(t)] for t in d.table[s]] for s in keep], dtype=np.int64)
    table = table.reshape(len(keep), len(d.alphabet))
    acc = {pos[s] for s in d.accepting if s in pos}
    n, k = table.shape

    inv = [[[] for _ in range(n)] for _ in range(k)]
    for s in range(n):
        for a in range(k):
            inv[a][table[s, a]].append(s)

    block_of = [0 if s in acc else 1 for s in range(n)]
    blocks = [set(s for s in range(n) if s in acc), set(s for s in range(n) if s not in acc)]
    if not blocks[0]:
        blocks, block_of = [blocks[1]], [0] * n
    elif not blocks[1]:
        blocks, block_of = [blocks[0]], [0] * n
    work = {min(range(len(blocks)), key=lambda i: len(blocks[i]))} if len(blocks) > 1 else set()
    while work:
        b = work.pop()
        splitter = set(blocks[b])
        for a in range(k):
            pre = set()
            for t in splitter:
                pre.update(inv[a][t])
            touched = {}
            for s in pre:
                touched.setdefault(block_of[s], set()).add(s)
            for tb, inside in touched.items():
                if len(inside) == len(blocks[tb]):
                    continue
                outside = blocks[tb] - inside
                blocks[tb] = inside
                nb = len(blocks)
                blocks.append(outside)
                for s in outside:
                    block_of[s] = nb
                if tb in work:
                    work.add(nb)
                else:
                    work.add(tb if len(inside) <= len(outside) else nb)
    return _renumber(Dfa(d.alphabet, table, 0, acc), block_of)


def trim_alphabet(d: Dfa, alphabet: Sequence) -> Dfa:
    """Re-index ``d`` over ``alphabet``; new symbols go to a fresh dead state."""
    alphabet = tuple(alphabet)
    if alphabet == d.alphabet:
        return d
    n = d.n_states
    dead = n
    rows = []
    for s in range(n + 1):
        row = []
        for a in alphabet:
            if s == dead or a not in d._col:
                row.append(dead)
            else:
                row.append(d.next(s, a))
        rows.append(row)
    return Dfa(alphabet, np.array(rows, dtype=np.int64), d.initial, d.accepting)


def product(d1: Dfa, d2: Dfa, accept) -> Dfa:
    """Accessible product automaton; ``accept(a1, a2)`` decides acceptance."""
    alphabet = tuple(dict.fromkeys(d1.alphabet + d2.alphabet))
    d1, d2 = trim_alphabet(d1, alphabet), trim_alphabet(d2, alphabet)
    start = (d1.initial, d2.initial)
    index = {start: 0}
    order = [start]
    rows = []
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        row = []
        for j in range(len(alphabet)):
            nxt = (int(d1.table[p, j]), int(d2.table[q, j]))
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(row)
    acc = {i for i, (p, q) in enumerate(order) if accept(p in d1.accepting, q in d2.accepting)}
    return Dfa(alphabet, np.array(rows, dtype=np.int64), 0, acc, tuple(order))


def shortest_accepted(d: Dfa):
    """A shortest accepted word (symbols in alphabet order break ties), or None."""
    parent = {d.initial: None}
    queue = deque([d.initial])
    while queue:
        s = queue.popleft()
        if s in d.accepting:
            out = []
            while parent[s] is not None:
                s, a = parent[s]
                out.append(a)
            return tuple(reversed(out))
        for j, a in enumerate(d.alphabet):
            t = int(d.table[s, j])
            if t not in parent:
                parent[t] = (s, a)
                queue.append(t)
    return None


def is_empty(d: Dfa) -> bool:
    return shortest_accepted(d) is None


def dfa_equivalent(d1: Dfa, d2: Dfa):
    """``(True, None)`` or ``(False, w)`` with ``w`` a shortest word told apart."""
    diff = shortest_accepted(product(d1, d2, lambda x, y: x != y))
    return (diff is None, diff)


def isomorphic(d1: Dfa, d2: Dfa) -> bool:
    """Bijective relabelling check for DFAs over the same alphabet."""
    if d1.alphabet != d2.alphabet or d1.n_states != d2.n_states:
        return False
    mapping = {d1.initial: d2.initial}
    queue = deque([d1.initial])
    while queue:
        s = queue.popleft()
        t = mapping[s]
        if (s in d1.accepting) != (t in d2.accepting):
            return False
        for j in range(len(d1.alphabet)):
            s2, t2 = int(d1.table[s, j]), int(d2.table[t, j])
            if s2 in mapping:
                if mapping[s2] != t2:
                    return False
            else:
                mapping[s2] = t2
                queue.append(s2)
    return len(mapping) == d1.n_states and len(set(mapping.values())) == d2.n_states


# -- languages ---------------------------------------------------------------------

class EnumerationCapError(RuntimeError):
    pass


def count_by_length(d: Dfa, max_len: int) -> list:
    """Number of accepted words of each length ``0..max_len`` (exact integers)."""
    n = d.n_states
    m = np.zeros((n, n), dtype=object)
    for s in range(n):
        for t in d.table[s]:
            m[s, int(t)] += 1
    v = np.zeros(n, dtype=object)
    v[d.initial] = 1
    acc = sorted(d.accepting)
    counts = []
    for _ in range(max_len + 1):
        counts.append(int(sum(v[acc])) if acc else 0)
        v = v.dot(m)
    return counts


def enumerate_language(d: Dfa, max_len: int, cap: int = 1_000_000):
    """Accepted words up to ``max_len`` and their counts per length.

    Words of each length come out in lexicographic order with respect to the
    alphabet order of ``d``.  Raises :class:`EnumerationCapError` when more
    than ``cap`` words would be produced.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    live = d.live_states()
    words = []
    counts = [0] * (max_len + 1)
    frontier = [((), d.initial)] if d.initial in live else []
    for length in range(max_len + 1):
        nxt = []
        for w, s in frontier:
            if s in d.accepting:
                words.append(w)
                counts[length] += 1
                if len(words) > cap:
                    raise EnumerationCapError(f"more than {cap} words up to length {max_len}")
            if length < max_len:
                for j, a in enumerate(d.alphabet):
                    t = int(d.table[s, j])
                    if t in live:
                        nxt.append((w + (a,), t))
        frontier = nxt
    return words, counts


# -- import / export --------------------------------------------------------------------

def _state_token(i: int, d: Dfa) -> str:
    return ("@" if i == d.initial else "") + ("*" if i in d.accepting else "") + str(i + 1)


def export_table(d: Dfa) -> str:
    """Tabular text: header of symbols, one row per state (numbered from 1).

    ``@`` marks the initial state and ``*`` accepting states.
    """
    header = ["state"] + list(d.alphabet)
    rows = [header]
    for s in range(d.n_states):
        rows.append([_state_token(s, d)] + [str(int(t) + 1) for t in d.table[s]])
    widths = [max(len(r[c]) for r in rows) for c in range(len(header))]
    lines = [" ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


def parse_table(text: str, alphabet: Sequence | None = None) -> Dfa:
    """Inverse of :func:`export_table`.

    State ids may be arbitrary tokens; ``-`` marks a missing transition,
    which goes to an added dead state.
    """
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise AutomatonError("empty table")
    header = lines[0][1:]
    if not header:
        raise AutomatonError("header must list the symbols")
    if alphabet is not None and set(header) != set(alphabet):
        raise AutomatonError(f"table alphabet {header} does not match {list(alphabet)}")
    ids, initial, accepting, raw = {}, None, set(), []
    for row in lines[1:]:
        if len(row) != len(header) + 1:
            raise AutomatonError(f"row {' '.join(row)!r} has the wrong number of entries")
        tok = row[0]
        marks = ""
        while tok and tok[0] in "@*":
            marks += tok[0]
            tok = tok[1:]
        if not tok or tok in ids:
            raise AutomatonError(f"bad or repeated state id {row[0]!r}")
        ids[tok] = len(ids)
        if "@" in marks:
            if initial is not None:
                raise AutomatonError("more than one initial state")
            initial = ids[tok]
        if "*" in marks:
            accepting.add(ids[tok])
        raw.append(row[1:])
    if initial is None:
        raise AutomatonError("no initial state marked with '@'")
    dead = None
    rows = []
    for entries in raw:
        row = []
        for e in entries:
            if e == "-":
                if dead is None:
                    dead = len(ids)
                row.append(dead)
            elif e in ids:
                row.append(ids[e])
            else:
                raise AutomatonError(f"transition to undeclared state {e!r}")
        rows.append(row)
    if dead is not None:
        rows.append([dead] * len(header))
    d = Dfa(tuple(header), np.array(rows, dtype=np.int64), initial, accepting)
    if alphabet is not None:
        d = trim_alphabet(d, tuple(alphabet))
    return d


def load_table(path, alphabet=None) -> Dfa:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read(), alphabet)


def to_dot(d: Dfa, hide_dead: bool = True, name: str = "dfa") -> str:
    dead = d.dead_states() if hide_dead else set()
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point];']
    for s in range(d.n_states):
        if s in dead:
            continue
        shape = "doublecircle" if s in d.accepting else "circle"
        label = str(s + 1)
        lines.append(f'  s{s} [shape={shape}, label="{label}"];')
    lines.append(f"  start -> s{d.initial};")
    edges = {}
    for s in range(d.n_states):
        if s in dead:
            continue
        for j, a in enumerate(d.alphabet):
            t = int(d.table[s, j])
            if t in dead:
                continue
            edges.setdefault((s, t), []).append(a)
    for (s, t), syms in edges.items():
        lines.append(f'  s{s} -> s{t} [label="{",".join(syms)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def nfa_to_dot(n: Nfa, render=str, hide=("sink", "norm"), name: str = "nfa") -> str:
    ids = {s: i for i, s in enumerate(n.states)}
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point];']
    for s in n.states:
        if s in hide:
            continue
        shape = "doublecircle" if s in n.accepting else "circle"
        lines.append(f'  n{ids[s]} [shape={shape}, label="{render(s)}"];')
    lines.append(f"  start -> n{ids[n.initial]};")
    for (s, a), targets in sorted(n.delta.items(), key=lambda kv: (ids[kv[0][0]], str(kv[0][1]))):
        if s in hide:
            continue
        for t in sorted(targets, key=lambda x: ids[x]):
            if t not in hide:
                lines.append(f'  n{ids[s]} -> n{ids[t]} [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
