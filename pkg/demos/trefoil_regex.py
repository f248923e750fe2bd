"""Word acceptor and regular expression for the trefoil group."""

from dcoset.acceptors import group_normal_form_dfa
from dcoset.catalog import load_fixture
from dcoset.presentation import group_system
from dcoset.regex import dfa_to_regex, parse_regex, regex_equivalent
from dcoset.rewriting import knuth_bendix, render_system

pres = load_fixture("trefoil")
rs = knuth_bendix(group_system(pres), logged=True)
print(render_system(rs, logs=True))

dfa = group_normal_form_dfa(rs.rules_g, pres.generators)
print(f"minimal word acceptor: {dfa.n_states} states")

extracted = dfa_to_regex(dfa)
print("extracted:", extracted)

compact = parse_regex("(1+y)x(yx+xyx)*(1+x)(y*+Y⁺) + (y*+Y⁺)", pres.generators)
same, word = regex_equivalent(extracted, compact, pres.generators)
print("hand-written form equivalent:", same)
