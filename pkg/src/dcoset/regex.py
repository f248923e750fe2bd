"""Regular expressions: parsing, compilation to DFAs, extraction from DFAs.

Syntax: ``+`` is union, juxtaposition is concatenation, ``*`` is Kleene
star and ``⁺`` (or ``^+``) is one-or-more.  ``1`` denotes the empty word
and ``0`` (or ``∅``) the empty language.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .automata import Dfa, dfa_equivalent, minimize


class RegexError(ValueError):
    pass


class Regex:
    __slots__ = ()

    def render(self, sep: str = "") -> str:
        return _render(self, 0, sep)

    def __str__(self) -> str:
        syms = self.symbols()
        return self.render("" if all(len(s) == 1 for s in syms) else " ")

    def symbols(self) -> set:
        out = set()
        _collect(self, out)
        return out

    def size(self) -> int:
        return _size(self)


@dataclass(frozen=True)
class Empty(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    name: str


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


EMPTY, EPSILON = Empty(), Epsilon()


def union(*rs: Regex) -> Regex:
    parts = []
    for r in rs:
        for p in (r.parts if isinstance(r, Union) else (r,)):
            if isinstance(p, Empty) or p in parts:
                continue
            parts.append(p)
    if not parts:
        return EMPTY
    # 1 + r r* and 1 + r* collapse to r*
    if EPSILON in parts:
        rest = [p for p in parts if p != EPSILON]
        if len(rest) == 1 and isinstance(rest[0], Star):
            return rest[0]
    return parts[0] if len(parts) == 1 else Union(tuple(parts))


def concat(*rs: Regex) -> Regex:
    parts = []
    for r in rs:
        if isinstance(r, Empty):
            return EMPTY
        for p in (r.parts if isinstance(r, Concat) else (r,)):
            if not isinstance(p, Epsilon):
                parts.append(p)
    if not parts:
        return EPSILON
    return parts[0] if len(parts) == 1 else Concat(tuple(parts))


def star(r: Regex) -> Regex:
    if isinstance(r, (Empty, Epsilon)):
        return EPSILON
    if isinstance(r, Star):
        return r
    return Star(r)


def plus(r: Regex) -> Regex:
    return concat(r, star(r))


def _collect(r, out):
    if isinstance(r, Sym):
        out.add(r.name)
    elif isinstance(r, (Union, Concat)):
        for p in r.parts:
            _collect(p, out)
    elif isinstance(r, Star):
        _collect(r.inner, out)


def _size(r) -> int:
    if isinstance(r, (Union, Concat)):
        return 1 + sum(_size(p) for p in r.parts)
    if isinstance(r, Star):
        return 1 + _size(r.inner)
    return 1


def _render(r, prec: int, sep: str) -> str:
    # prec: 0 union context, 1 concat context, 2 star operand
    if isinstance(r, Empty):
        return "0"
    if isinstance(r, Epsilon):
        return "1"
    if isinstance(r, Sym):
        return r.name
    if isinstance(r, Union):
        text = " + ".join(_render(p, 0, sep) for p in r.parts)
        return f"({text})" if prec > 0 else text
    if isinstance(r, Concat):
        text = sep.join(_render(p, 1, sep) for p in r.parts)
        return f"({text})" if prec > 1 else text
    if isinstance(r, Star):
        return _render(r.inner, 2, sep) + "*"
    raise TypeError(r)


# -- parsing ------------------------------------------------------------------------

_OPS = ("^+", "⁺", "(", ")", "+", "*", "∅")


def _tokenize(text: str, alphabet: Sequence[str] | None):
    symbols = sorted(alphabet or (), key=len, reverse=True)
    i, out = 0, []
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
            continue
        op = next((o for o in _OPS if text.startswith(o, i)), None)
        if op is not None:
            out.append(("op", "⁺" if op == "^+" else op))
            i += len(op)
            continue
        sym = next((s for s in symbols if text.startswith(s, i)), None)
        if sym is None and alphabet is None:
            sym = c
        if sym is None:
            if c in "01":
                out.append(("const", c))
                i += 1
                continue
            raise RegexError(f"unknown symbol at {text[i:]!r}")
        out.append(("sym", sym))
        i += len(sym)
    return out


def parse_regex(text: str, alphabet: Sequence[str] | None = None) -> Regex:
    """Parse ``text``; symbols are matched greedily against ``alphabet``."""
    toks = _tokenize(text, alphabet)
    if alphabet is None:
        toks = [("const", v) if k == "sym" and v in "01" else (k, v) for k, v in toks]
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def expr():
        nonlocal pos
        parts = [term()]
        while peek() == ("op", "+"):
            pos += 1
            parts.append(term())
        return union(*parts)

    def term():
        items = []
        while True:
            kind, val = peek()
            if kind in ("sym", "const") or (kind == "op" and val in ("(", "∅")):
                items.append(factor())
            else:
                break
        if not items:
            raise RegexError(f"expected an expression at token {pos}")
        return concat(*items)

    def factor():
        nonlocal pos
        kind, val = toks[pos]
        pos += 1
        if kind == "sym":
            r = Sym(val)
        elif kind == "const":
            r = EPSILON if val == "1" else EMPTY
        elif val == "∅":
            r = EMPTY
        else:
            r = expr()
            if peek() != ("op", ")"):
                raise RegexError("unbalanced parenthesis")
            pos += 1
        while peek()[0] == "op" and peek()[1] in ("*", "⁺"):
            r = star(r) if peek()[1] == "*" else plus(r)
            pos += 1
        return r

    if not toks:
        raise RegexError("empty expression")
    r = expr()
    if pos != len(toks):
        raise RegexError(f"unexpected token {toks[pos][1]!r}")
    return r


# -- compilation ----------------------------------------------------------------------

class _Thompson:
    def __init__(self):
        self.eps = []
        self.edges = []

    def new(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def build(self, r):
        s, t = self.new(), self.new()
        if isinstance(r, Epsilon):
            self.eps[s].append(t)
        elif isinstance(r, Sym):
            self.edges[s].append((r.name, t))
        elif isinstance(r, Union):
            for p in r.parts:
                a, b = self.build(p)
                self.eps[s].append(a)
                self.eps[b].append(t)
        elif isinstance(r, Concat):
            cur = s
            for p in r.parts:
                a, b = self.build(p)
                self.eps[cur].append(a)
                cur = b
            self.eps[cur].append(t)
        elif isinstance(r, Star):
            a, b = self.build(r.inner)
            self.eps[s] += [a, t]
            self.eps[b] += [a, t]
        return s, t

    def closure(self, states) -> frozenset:
        seen = set(states)
        todo = list(states)
        while todo:
            for t in self.eps[todo.pop()]:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return frozenset(seen)


def regex_to_dfa(r: Regex, alphabet: Sequence[str] | None = None) -> Dfa:
    """Minimal DFA for ``r`` over ``alphabet`` (default: its own symbols, sorted)."""
    alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(r.symbols()))
    missing = r.symbols() - set(alphabet)
    if missing:
        raise RegexError(f"regex uses symbols outside the alphabet: {sorted(missing)}")
    th = _Thompson()
    start, final = th.build(r)
    first = th.closure([start])
    index, order, rows = {first: 0}, [first], []
    i = 0
    while i < len(order):
        cur = order[i]
        row = []
        for a in alphabet:
            nxt = th.closure([t for s in cur for (b, t) in th.edges[s] if b == a])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(row)
        i += 1
    acc = {j for j, sub in enumerate(order) if final in sub}
    table = np.array(rows, dtype=np.int64).reshape(len(order), len(alphabet))
    return minimize(Dfa(alphabet, table, 0, acc))


def dfa_to_regex(d: Dfa) -> Regex:
    """Regular expression for ``L(d)`` by state elimination.

    States are eliminated by smallest ``in-degree * out-degree`` first,
    ties by state number.
    """
    live = d.live_states()
    keep = [s for s in range(d.n_states) if s in live]
    start, final = "s", "f"
    edge = {}

    def add(i, j, r):
        edge[(i, j)] = union(edge.get((i, j), EMPTY), r)

    if d.initial in live:
        add(start, d.initial, EPSILON)
    for s in keep:
        for j, a in enumerate(d.alphabet):
            t = int(d.table[s, j])
            if t in live:
                add(s, t, Sym(a))
        if s in d.accepting:
            add(s, final, EPSILON)

    remaining = set(keep)
    while remaining:
        def cost(k):
            ins = sum(1 for (i, j) in edge if j == k and i != k)
            outs = sum(1 for (i, j) in edge if i == k and j != k)
            return (ins * outs, k)
        k = min(remaining, key=cost)
        remaining.remove(k)
        loop = star(edge.pop((k, k), EMPTY))
        ins = [(i, r) for (i, j), r in edge.items() if j == k]
        outs = [(j, r) for (i, j), r in edge.items() if i == k]
        for i, _ in ins:
            del edge[(i, k)]
        for j, _ in outs:
            del edge[(k, j)]
        for i, ri in ins:
            for j, rj in outs:
                add(i, j, concat(ri, loop, rj))
    return edge.get((start, final), EMPTY)


def regex_equivalent(r1: Regex, r2: Regex, alphabet=None):
    alphabet = tuple(alphabet) if alphabet is not None else tuple(sorted(r1.symbols() | r2.symbols()))
    return dfa_equivalent(regex_to_dfa(r1, alphabet), regex_to_dfa(r2, alphabet))
