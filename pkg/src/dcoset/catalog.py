"""Bundled presentations and acceptors."""

from __future__ import annotations

from importlib.resources import files

from .automata import Dfa, load_table
from .presentation import DoubleCosetPresentation, Rule, group_system, load_presentation
from .rewriting import RewriteSystem, knuth_bendix

FIXTURES = files("dcoset") / "fixtures"


def fixture_path(name: str):
    return FIXTURES / name


def fixture_names() -> list:
    return sorted(p.name for p in FIXTURES.iterdir() if p.name.endswith((".pres", ".dfa")))


def load_fixture(name: str) -> DoubleCosetPresentation:
    if not name.endswith(".pres"):
        name += ".pres"
    return load_presentation(fixture_path(name))


def load_acceptor(name: str, alphabet=None) -> Dfa:
    if not name.endswith(".dfa"):
        name += ".dfa"
    return load_table(fixture_path(name), alphabet)


def _w(text: str) -> tuple:
    return tuple(text.split())


def triangle_family_rules(n: int) -> list:
    """Subgroup rules of the (3,3,3) triangle group fixture, members ``0..n``.

    ``H = <ab>`` and ``K = <ba>``; each of the three infinite families is
    cut off at index ``n``.
    """
    if n < 0:
        raise ValueError("cutoff must be non-negative")
    pairs = [("H a b", "H"), ("H a B", "H b"), ("b a K", "K"), ("B a K", "b K")]
    for i in range(n + 1):
        pairs.append(("H" + " b A" * i + " B", "H" + " A b" * i + " a"))
        pairs.append(("B" + " A b" * i + " K", "a" + " b A" * i + " K"))
        pairs.append(("H b" + " A b" * i + " K", "H" + " A b" * i + " A K"))
    return [Rule(f"c{j}", _w(l), _w(r)) for j, (l, r) in enumerate(pairs, 1)]


def triangle_system(n: int, group_limit: int = 40) -> RewriteSystem:
    """Group rules from limited completion plus the family rules up to ``n``."""
    p = load_fixture("triangle")
    g = knuth_bendix(group_system(p), group_limit)
    rules = list(g.rules_g) + triangle_family_rules(n)
    return RewriteSystem(p.order, rules, generators=p.generators, inverses=p.group.inverse_map,
                         limit_reached=True)


def triangle_group_acceptor() -> Dfa:
    return load_acceptor("triangle_group", load_fixture("triangle").generators)


__all__ = [
    "fixture_names", "fixture_path", "load_acceptor", "load_fixture", "triangle_family_rules",
    "triangle_group_acceptor", "triangle_system",
]
