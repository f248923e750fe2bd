"""Complete a double coset system and reduce a few words with their logs."""

from dcoset.catalog import load_fixture
from dcoset.logged import logged_reduce
from dcoset.presentation import initial_system
from dcoset.rewriting import knuth_bendix, render_system
from dcoset.words import format_word, parse_word, tagged

pres = load_fixture("free_a6_a4")
rs = knuth_bendix(initial_system(pres), logged=True)
print(render_system(rs))

for text in ["aaaaaaa", "AAAbA", "ab"]:
    word = tagged(parse_word(text))
    nf, cell = logged_reduce(word, rs)
    print(f"{format_word(word)} -> {format_word(nf)}")
    print(f"    {cell.render()}")
