import pytest

from dcoset.presentation import (
    PresentationError, initial_rules, initial_system, parse_order, parse_presentation,
    render_presentation,
)
from dcoset.words import OrderSpec

FREE = """
generators: a A b B
inverses: a A, b B
H: a a a a a a
K: a a a a
"""


def pairs(rules):
    return {("".join(r.lhs), "".join(r.rhs)) for r in rules}


def test_free_presentation_shape():
    p = parse_presentation(FREE)
    assert len(p.group.all_rules) == 4
    assert len(p.h_generators) == len(p.k_generators) == 1


def test_initial_rules_free(free_pres):
    assert pairs(initial_rules(free_pres)) == {
        ("Aa", ""), ("aA", ""), ("Bb", ""), ("bB", ""), ("Haaaaaa", "H"), ("aaaaK", "K")}


def test_initial_rules_trefoil(trefoil_dc_pres):
    rules = {r.id: ("".join(r.lhs), "".join(r.rhs)) for r in initial_rules(trefoil_dc_pres)}
    assert rules["a5"] == ("xxx", "yy")
    assert (rules["b1"], rules["b2"], rules["b3"], rules["b4"]) == (
        ("HX", "H"), ("Hx", "H"), ("YK", "K"), ("yK", "K"))


def test_partition_of_initial_system(free_pres):
    rs = initial_system(free_pres)
    assert len(rs.rules_g) == 4 and len(rs.rules_h) == 1 and len(rs.rules_k) == 1
    assert rs.rules_hk == ()


def test_empty_subgroups_are_valid():
    p = parse_presentation("generators: a A\ninverses: a A\n")
    rs = initial_system(p)
    assert rs.rules_h == rs.rules_k == rs.rules_hk == ()
    assert len(rs.rules_g) == 2


def test_initial_rules_decrease(trefoil_dc_pres):
    for r in initial_rules(trefoil_dc_pres):
        assert trefoil_dc_pres.order.compare(r.lhs, r.rhs) == 1


@pytest.mark.parametrize("text", [
    "generators: a b\nrules: a -> c\n",
    "generators: a b\nrules: a b\n",
    "generators: a H\n",
    "generators: a id\n",
    "generators: a\nH: c\n",
    "generators: a a\n",
    "generators: a\nbogus: 1\n",
    "generators: a\nrules: a -> a\n",
])
def test_bad_presentations(text):
    with pytest.raises(PresentationError):
        initial_system(parse_presentation(text))


def test_round_trip(trefoil_dc_pres, free_pres, s3_pres):
    for p in (trefoil_dc_pres, free_pres, s3_pres):
        again = parse_presentation(render_presentation(p))
        assert again == p


def test_parse_order():
    assert parse_order("wreath X > x > Y > y", "xXyY") == OrderSpec.wreath("XxYy")
    assert parse_order("shortlex a < A", "aA") == OrderSpec.shortlex("aA")
    with pytest.raises(PresentationError):
        parse_order("wreath X > x < Y", "xXY")
    with pytest.raises(PresentationError):
        parse_order("lex a < b", "ab")
