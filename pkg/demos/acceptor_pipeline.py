"""Build the double coset acceptor, minimise it, and list normal forms."""

from dcoset.acceptors import build_dc_acceptor, pipeline_sizes
from dcoset.automata import complement, determinize, enumerate_language, export_table, minimize
from dcoset.catalog import load_fixture
from dcoset.presentation import initial_system
from dcoset.rewriting import knuth_bendix
from dcoset.words import format_word

rs = knuth_bendix(initial_system(load_fixture("free_a6_a4")))
nfa = build_dc_acceptor(rs)
print("nfa / determinized / minimal:", pipeline_sizes(nfa))

dfa = minimize(complement(determinize(nfa)))
print(export_table(dfa))

words, counts = enumerate_language(dfa, 5)
print("normal forms with body length <= 3:")
print("  " + "  ".join(format_word(w) for w in words if len(w) <= 5))
print("counts by whole-word length:", counts)
