"""Double coset computations by tagged string rewriting."""

from .acceptors import (
    build_dc_acceptor, build_group_acceptor, dc_normal_form_dfa, group_normal_form_dfa, lambda_probe,
    reference_dc_dfa,
)
from .automata import (
    Dfa, Nfa, complement, count_by_length, determinize, dfa_equivalent, enumerate_language,
    export_table, isomorphic, load_table, minimize, parse_table, to_dot,
)
from .cells import Step, TwoCell, compose, expand, horizontal, invert, replay, whisker
from .logged import (
    Witness, endorewrite, extract_witness, logged_knuth_bendix, logged_reduce, verify_witness,
)
from .presentation import (
    DoubleCosetPresentation, MonoidPresentation, PresentationError, Rule, group_system,
    initial_system, load_presentation, parse_presentation, render_presentation,
)
from .regex import dfa_to_regex, parse_regex, regex_equivalent, regex_to_dfa
from .rewriting import (
    CriticalPair, RewriteSystem, check_local_confluence, critical_pairs, find_overlaps, knuth_bendix,
    parse_system, reduce, render_system,
)
from .words import H, K, OrderSpec, compare, find_factor_occurrences, format_word, parse_word, tagged

import_acceptor = load_table

__version__ = "0.1.0"
