import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcoset.automata import Dfa, dfa_equivalent, minimize
from dcoset.regex import (
    EMPTY, EPSILON, Concat, Empty, Epsilon, RegexError, Star, Sym, Union, concat, dfa_to_regex, parse_regex, plus, regex_equivalent,
    regex_to_dfa, star, union,
)

AB = ("a", "b")


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


# -- simplification ------------------------------------------------------------------


def test_simplifying_constructors():
    a = Sym("a")
    assert concat(EPSILON, a) == a
    assert union(EMPTY, a) == a
    assert concat(EMPTY, a) == EMPTY
    assert star(star(a)) == star(a)
    assert star(EMPTY) == EPSILON
    assert union(a, a) == a
    assert union(EPSILON, star(a)) == star(a)


# -- parsing ---------------------------------------------------------------------------


@pytest.mark.parametrize("text, yes, no", [
    ("a+b", ["a", "b"], ["", "ab"]),
    ("(ab)*", ["", "ab", "abab"], ["a", "aba"]),
    ("a(b)⁺", ["ab", "abbb"], ["a", "b"]),
    ("a(b)^+", ["ab", "abb"], ["a"]),
    ("1+a", ["", "a"], ["aa"]),
    ("0", [], ["", "a"]),
    ("∅*", [""], ["a"]),
])
def test_parse_examples(text, yes, no):
    d = regex_to_dfa(parse_regex(text, AB), AB)
    assert all(d.accepts(tuple(u)) for u in yes)
    assert not any(d.accepts(tuple(u)) for u in no)


def test_multi_character_symbols():
    r = parse_regex("(ab + a)*b", ("a", "ab", "b"))
    assert r.symbols() == {"a", "ab", "b"}
    d = regex_to_dfa(r, ("a", "ab", "b"))
    assert d.accepts(("ab", "a", "b"))


@pytest.mark.parametrize("text", ["", "(a", "a)", "a+", "*", "ac"])
def test_parse_errors(text):
    with pytest.raises(RegexError):
        parse_regex(text, AB)


def test_symbols_outside_alphabet():
    with pytest.raises(RegexError):
        regex_to_dfa(parse_regex("ab"), ("a",))


# -- compilation ----------------------------------------------------------------------------


@st.composite
def regexes(draw, depth=3):
    if depth == 0 or draw(st.integers(0, 3)) == 0:
        return draw(st.sampled_from([Sym("a"), Sym("b"), EPSILON]))
    op = draw(st.sampled_from(["u", "c", "s", "p"]))
    if op == "u":
        return union(draw(regexes(depth - 1)), draw(regexes(depth - 1)))
    if op == "c":
        return concat(draw(regexes(depth - 1)), draw(regexes(depth - 1)))
    if op == "s":
        return star(draw(regexes(depth - 1)))
    return plus(draw(regexes(depth - 1)))


@settings(max_examples=100, deadline=None)
@given(regexes())
def test_render_parse_round_trip(r):
    again = parse_regex(str(r), AB)
    assert dfa_equivalent(regex_to_dfa(r, AB), regex_to_dfa(again, AB))[0]


@settings(max_examples=60, deadline=None)
@given(regexes())
def test_compile_against_brute_force_matcher(r):
    d = regex_to_dfa(r, AB)
    for u in words(AB, 6):
        assert d.accepts(u) == matches(r, u)


def matches(r, u) -> bool:
    return len(u) in ends(r, u, 0)


def ends(r, u, i) -> set:
    """Positions j such that ``u[i:j]`` is in ``L(r)``."""
    if isinstance(r, Empty):
        return set()
    if isinstance(r, Epsilon):
        return {i}
    if isinstance(r, Sym):
        return {i + 1} if i < len(u) and u[i] == r.name else set()
    if isinstance(r, Union):
        return set().union(*(ends(p, u, i) for p in r.parts))
    if isinstance(r, Concat):
        cur = {i}
        for p in r.parts:
            cur = set().union(*(ends(p, u, k) for k in cur)) if cur else set()
        return cur
    if isinstance(r, Star):
        seen, todo = {i}, [i]
        while todo:
            k = todo.pop()
            for j in ends(r.inner, u, k):
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        return seen
    raise TypeError(r)


# -- extraction round trip -------------------------------------------------------------


@st.composite
def dfas(draw, max_states=6):
    n = draw(st.integers(1, max_states))
    table = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=2, max_size=2), min_size=n, max_size=n))
    return Dfa(AB, np.array(table), draw(st.integers(0, n - 1)), draw(st.sets(st.integers(0, n - 1))))


@settings(max_examples=150, deadline=None)
@given(dfas())
def test_extract_then_compile_round_trip(d):
    r = dfa_to_regex(d)
    assert dfa_equivalent(regex_to_dfa(r, AB), d) == (True, None)


def test_extract_empty_and_epsilon():
    dead = Dfa(AB, np.array([[0, 0]]), 0, set())
    assert dfa_to_regex(dead) == EMPTY
    only_eps = Dfa(AB, np.array([[1, 1], [1, 1]]), 0, {0})
    assert dfa_to_regex(only_eps) == EPSILON


def test_regex_equivalence_counterexample():
    same, w = regex_equivalent(parse_regex("(a+b)*", AB), parse_regex("(a*b*)*", AB), AB)
    assert same and w is None
    same, w = regex_equivalent(parse_regex("(ab)*", AB), parse_regex("(ab)*+b", AB), AB)
    assert not same and w == ("b",)


def test_compiled_dfa_is_minimal():
    d = regex_to_dfa(parse_regex("(a+b)*abb", AB), AB)
    assert d.n_states == minimize(d).n_states == 4
