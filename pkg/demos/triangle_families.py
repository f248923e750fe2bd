"""Truncated infinite rule families against an imported group acceptor.

The (3,3,3) triangle group has no finite complete double coset system for
H = <ab>, K = <ba>.  Cutting the three infinite families at index n gives
an acceptor that is exact up to whole-word length 2n + 4.
"""

from dcoset.acceptors import dc_normal_form_dfa
from dcoset.automata import product, shortest_accepted
from dcoset.catalog import load_fixture, triangle_family_rules, triangle_group_acceptor
from dcoset.regex import parse_regex, regex_to_dfa
from dcoset.rewriting import RewriteSystem

pres = load_fixture("triangle")
group = triangle_group_acceptor()
print(f"group word acceptor: {group.n_states} states")

target = "H(a + (1+A)(bA)* + AB(aB)*A + b(aB)⁺A(bA)* + A(bA)*(Ba)*b)K"
for n in range(1, 7):
    rs = RewriteSystem(pres.order, triangle_family_rules(n), generators=pres.generators)
    d = dc_normal_form_dfa(rs, group_acceptor=group)
    ref = regex_to_dfa(parse_regex(target, d.alphabet), d.alphabet)
    diff = shortest_accepted(product(d, ref, lambda x, y: x != y))
    first = "none" if diff is None else f"{''.join(diff)} (length {len(diff)})"
    print(f"n = {n}: {d.n_states} states, first disagreement: {first}")
