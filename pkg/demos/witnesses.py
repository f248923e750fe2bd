"""Decide double coset equality and recover the subgroup elements involved."""

from dcoset.catalog import load_fixture
from dcoset.logged import extract_witness, verify_witness
from dcoset.presentation import initial_system
from dcoset.rewriting import knuth_bendix, reduce
from dcoset.words import format_word, parse_word, tagged

# H = <x>, K = <y> in <x, y | x^3 = y^2>, with a rule budget of 10
pres = load_fixture("trefoil_dc")
rs = knuth_bendix(initial_system(pres), 10, logged=True)

for a, b in [("Y", "id"), ("yxY", "yxy"), ("yx", "id")]:
    w1, w2 = parse_word(a), parse_word(b)
    n1, n2 = reduce(tagged(w1), rs), reduce(tagged(w2), rs)
    print(f"{format_word(tagged(w1))} ~ {format_word(tagged(w2))} ?  {format_word(n1)} vs {format_word(n2)}")
    wit = extract_witness(w1, w2, rs)
    if wit is None:
        print("    different normal forms")
        continue
    print(f"    {wit.render()}   verified: {verify_witness(wit, w1, w2, rs)}")
