import itertools
import random

import pytest

from dcoset.presentation import Rule, initial_system, parse_presentation
from dcoset.rewriting import (
    ReductionLimitError, RewriteSystem, check_local_confluence, critical_pairs, find_overlaps,
    knuth_bendix, parse_system, reduce, reduce_random, render_system,
)
from dcoset.words import OrderSpec

from conftest import w
from oracles import bounded_class, is_reducible, superpositions

FREE_COMPLETE = {
    ("Aa", ""), ("aA", ""), ("Bb", ""), ("bB", ""),
    ("Haaaa", "HAA"), ("HAAA", "Haaa"), ("aaaK", "AK"), ("AAK", "aaK"), ("HaaK", "HK"), ("HAK", "HaK"),
}
TREFOIL_TABLE = {("Yy", ""), ("yY", ""), ("xxx", "yy"), ("yyx", "xyy"), ("X", "xxYY"), ("Yx", "yxYY")}


def pairs(rs):
    return {("".join(r.lhs), "".join(r.rhs)) for r in rs.rules}


def test_free_completion(free_rs):
    assert free_rs.complete and not free_rs.limit_reached
    assert pairs(free_rs) == FREE_COMPLETE
    assert {"".join(r.lhs) for r in free_rs.rules_hk} == {"HaaK", "HAK"}


def test_trefoil_completion(trefoil_rs):
    assert trefoil_rs.complete
    assert pairs(trefoil_rs) == TREFOIL_TABLE


def test_trefoil_double_cosets_limited(trefoil_dc_rs):
    got = pairs(trefoil_dc_rs)
    assert trefoil_dc_rs.limit_reached and not trefoil_dc_rs.complete
    assert {("Hx", "H"), ("YK", "K"), ("yK", "K"), ("Hyy", "H"), ("HY", "Hy")} <= got
    assert ("HX", "H") not in got


@pytest.mark.parametrize("word,nf", [("HaaaaaK", "HaK"), ("HaaK", "HK"), ("HK", "HK"), ("HAAAAK", "HK")])
def test_reduce_free(free_rs, word, nf):
    assert reduce(w(word), free_rs) == w(nf)


def test_reduce_is_idempotent_on_normal_forms(trefoil_rs):
    rng = random.Random(1)
    for _ in range(200):
        word = tuple(rng.choice("xXyY") for _ in range(rng.randint(0, 12)))
        nf = reduce(word, trefoil_rs)
        assert reduce(nf, trefoil_rs) == nf
        assert not is_reducible(nf, [r.lhs for r in trefoil_rs.rules])


def test_reduction_budget():
    rs = RewriteSystem(OrderSpec.shortlex("ab"), [Rule("r", w("ba"), w("ab"))])
    with pytest.raises(ReductionLimitError):
        reduce(w("bbbbbbaaaaaa"), rs, max_steps=5)


def rule(rid, lhs, rhs):
    return Rule(rid, w(lhs), w(rhs))


def test_overlap_left_offset_free_pair():
    cps = critical_pairs(rule("a2", "aA", ""), rule("a1", "Aa", ""))
    assert any(cp.peak == w("aAa") and {cp.left, cp.right} == {w("a")} for cp in cps)


def test_overlap_subgroup_generators():
    cps = find_overlaps(rule("b1", "Haaaaaa", "H"), rule("b2", "aaaaK", "K"))
    peaks = {(cp.peak, cp.left, cp.right) for cp in cps}
    assert (w("HaaaaaaK"), w("HK"), w("HaaK")) in peaks


def test_overlap_h_rules_prefix_only():
    cps = critical_pairs(rule("h1", "Hab", "H"), rule("h2", "Habab", "Hb"))
    assert {cp.kind for cp in cps} == {"prefix"}


def test_overlaps_match_brute_force_superpositions(free_rs, trefoil_dc_rs):
    # every admissible superposition has a critical pair; tags stay at the ends
    for rs in (free_rs, trefoil_dc_rs):
        rules = list(rs.rules)
        for r1 in rules:
            for r2 in rules:
                expected = set()
                for peak, i, j in superpositions(r1.lhs, r2.lhs):
                    inner = peak[1:-1]
                    if "H" in peak[1:] or "K" in peak[:-1] or (i == j and len(r1.lhs) == len(r2.lhs)):
                        continue
                    if "H" in inner or "K" in inner:
                        continue
                    expected.add(peak)
                found = {cp.peak for cp in critical_pairs(r1, r2)}
                assert expected == found, (r1, r2)


def test_local_confluence(free_rs, trefoil_rs):
    assert check_local_confluence(free_rs) == []
    assert check_local_confluence(trefoil_rs) == []
    assert check_local_confluence(RewriteSystem(OrderSpec.shortlex("a"))) == []


def test_initial_trefoil_not_locally_confluent(trefoil_pres):
    from dcoset.presentation import group_system
    bad = check_local_confluence(group_system(trefoil_pres))
    assert bad
    assert any({"".join(cp.peak)} == {"yyxx"} or "".join(cp.peak) == "xxxx" for cp in bad)


def test_already_complete_unchanged():
    rs = RewriteSystem(OrderSpec.shortlex("a"), [rule("r1", "aa", "a")])
    out = knuth_bendix(rs)
    assert out.complete and pairs(out) == {("aa", "a")}


def test_trivial_pair_adds_nothing():
    rs = RewriteSystem(OrderSpec.shortlex("aA"), [rule("a1", "Aa", ""), rule("a2", "aA", "")])
    out = knuth_bendix(rs)
    assert len(out.rules) == 2 and out.added == 0


def test_limit_zero_returns_input():
    p = parse_presentation("generators: x y\nrules: x x x -> y y\norder: wreath x > y\n")
    out = knuth_bendix(initial_system(p), 0)
    assert pairs(out) == {("xxx", "yy")}


def test_budget_validation(free_pres):
    with pytest.raises(ValueError):
        knuth_bendix(initial_system(free_pres), max_rules=0)
    with pytest.raises(ValueError):
        knuth_bendix(initial_system(free_pres), -1)


def test_max_rules_sets_limit_flag():
    p = parse_presentation("generators: a A b B\ninverses: a A, b B\n"
                           "rules: a a a -> id ; b b b -> id ; a b a b a b -> id\n")
    out = knuth_bendix(initial_system(p), max_rules=30)
    assert out.limit_reached and not out.complete and len(out.rules) <= 30


def test_partition_stability(trefoil_dc_rs, free_rs):
    for rs in (trefoil_dc_rs, free_rs):
        for r in rs.rules:
            assert r in getattr(rs, "rules_" + r.kind.lower())
            assert rs.order.compare(r.lhs, r.rhs) == 1


def test_system_text_round_trip(free_rs, trefoil_rs):
    for rs in (free_rs, trefoil_rs):
        text = render_system(rs)
        again = parse_system(text)
        assert pairs(again) == pairs(rs)
        assert render_system(again) == text


def test_random_strategy_agrees(free_rs):
    rng = random.Random(3)
    for _ in range(300):
        word = ("H",) + tuple(rng.choice("aAbB") for _ in range(rng.randint(0, 10))) + ("K",)
        assert reduce_random(word, free_rs, rng) == reduce(word, free_rs)


def test_same_normal_form_iff_joinable(s3_rs, s3_pres):
    # bounded search of the symmetric closure of the initial rules
    init = [(r.lhs, r.rhs) for r in initial_system(s3_pres).rules]
    words = [("H",) + body + ("K",) for n in range(4) for body in itertools.product("sStT", repeat=n)]
    classes = {}
    for u in words:
        nf = reduce(u, s3_rs)
        if nf not in classes:
            classes[nf] = bounded_class(nf, init, max_len=9)
    for u in words:
        nf = reduce(u, s3_rs)
        assert u in classes[nf]
        for other, cls in classes.items():
            if other != nf:
                assert u not in cls
