"""Command line interface: ``dcoset VERB PRESENTATION [options]``.

Exit status is 0 on success, 2 when a completion limit or budget was hit
(the result is partial), and 1 on errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import checks
from .acceptors import build_dc_acceptor, build_group_acceptor
from .automata import (
    AutomatonError, complement, determinize, enumerate_language, export_table, load_table, minimize,
    to_dot,
)
from .logged import extract_witness, logged_reduce
from .presentation import PresentationError, group_system, initial_system, load_presentation
from .regex import dfa_to_regex
from .rewriting import (
    DEFAULT_MAX_RULES, DEFAULT_MAX_STEPS, CompletionError, ReductionLimitError, knuth_bendix, reduce,
    render_system,
)
from .words import H, K, WordError, format_word, parse_word, tagged

EXIT_OK, EXIT_ERROR, EXIT_PARTIAL = 0, 1, 2
VERBS = ("complete", "reduce", "decide", "acceptor", "regex", "enum", "verify")


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dcoset", description="Double cosets by tagged string rewriting.")
    ap.add_argument("command", choices=VERBS)
    ap.add_argument("presentation", type=Path)
    ap.add_argument("words", nargs="*", help="words for reduce/decide ('id' is the empty word)")
    ap.add_argument("--limit", type=_nonneg, help="stop completion after this many new rules")
    ap.add_argument("--max-rules", type=_positive, default=DEFAULT_MAX_RULES)
    ap.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    ap.add_argument("--maxlen", type=_nonneg, default=6, help="body length bound for enum/verify")
    ap.add_argument("--logged", action="store_true", help="record and print rewrite logs")
    ap.add_argument("--witness", action="store_true", help="print subgroup witnesses for decide")
    ap.add_argument("--dot", type=Path, help="write the acceptor in DOT format")
    ap.add_argument("--table", type=Path, help="write the acceptor transition table")
    ap.add_argument("--import-acceptor", type=Path, help="group word acceptor table to use")
    ap.add_argument("--group", action="store_true", help="work in the group only (no tags)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _system(cfg):
    p = load_presentation(cfg.presentation)
    base = group_system(p) if cfg.group else initial_system(p)
    rs = knuth_bendix(base, cfg.limit, max_rules=cfg.max_rules, max_steps=cfg.max_steps,
                      logged=cfg.logged or cfg.witness)
    return p, rs


def _status(rs) -> int:
    return EXIT_OK if rs.complete else EXIT_PARTIAL


def _word(text, p, tag: bool):
    w = parse_word(text, p.generators + (H, K))
    if tag and H not in w and K not in w:
        w = tagged(w)
    return w


def _acceptor(cfg, p, rs):
    if cfg.group:
        nfa = build_group_acceptor(rs.rules_g, p.generators)
    else:
        ga = load_table(cfg.import_acceptor, p.generators) if cfg.import_acceptor else None
        nfa = build_dc_acceptor(rs, p.generators, ga)
    det = determinize(nfa)
    return nfa, det, minimize(complement(det))


def cmd_complete(cfg, out) -> int:
    _, rs = _system(cfg)
    out.write(render_system(rs, logs=cfg.logged))
    return _status(rs)


def cmd_reduce(cfg, out) -> int:
    p, rs = _system(cfg)
    if not cfg.words:
        raise PresentationError("reduce needs at least one word")
    for text in cfg.words:
        w = _word(text, p, not cfg.group)
        if cfg.logged:
            nf, cell = logged_reduce(w, rs, cfg.max_steps)
            out.write(f"{format_word(w)} -> {format_word(nf)}  # {cell.render()}\n")
        else:
            out.write(f"{format_word(w)} -> {format_word(reduce(w, rs, cfg.max_steps))}\n")
    return _status(rs)


def cmd_decide(cfg, out) -> int:
    p, rs = _system(cfg)
    if len(cfg.words) != 2:
        raise PresentationError("decide needs exactly two words")
    w1, w2 = (parse_word(t, p.generators) for t in cfg.words)
    n1, n2 = reduce(tagged(w1), rs, cfg.max_steps), reduce(tagged(w2), rs, cfg.max_steps)
    same = n1 == n2
    verdict = "SAME" if same else ("DIFFERENT" if rs.complete else "UNDECIDED")
    out.write(f"{verdict} {format_word(n1)} {format_word(n2)}\n")
    if cfg.witness and same:
        out.write(extract_witness(w1, w2, rs, cfg.max_steps).render() + "\n")
    return EXIT_OK if same or rs.complete else EXIT_PARTIAL


def cmd_acceptor(cfg, out) -> int:
    p, rs = _system(cfg)
    nfa, det, dfa = _acceptor(cfg, p, rs)
    out.write(f"states: nfa {len(nfa)}, determinized {len(det)}, minimal {len(dfa)}\n")
    table = export_table(dfa)
    if cfg.table:
        cfg.table.write_text(table, encoding="utf-8")
    else:
        out.write(table)
    if cfg.dot:
        cfg.dot.write_text(to_dot(dfa), encoding="utf-8")
    return _status(rs)


def cmd_regex(cfg, out) -> int:
    p, rs = _system(cfg)
    _, _, dfa = _acceptor(cfg, p, rs)
    out.write(str(dfa_to_regex(dfa)) + "\n")
    return _status(rs)


def cmd_enum(cfg, out) -> int:
    p, rs = _system(cfg)
    _, _, dfa = _acceptor(cfg, p, rs)
    extra = 0 if cfg.group else 2
    words, counts = enumerate_language(dfa, cfg.maxlen + extra)
    for w in words:
        out.write(format_word(w) + "\n")
    out.write("counts: " + " ".join(str(c) for c in counts[extra:]) + "\n")
    return _status(rs)


def cmd_verify(cfg, out) -> int:
    p, rs = _system(cfg)
    if cfg.group:
        raise PresentationError("verify works on double coset systems")
    _, _, dfa = _acceptor(cfg, p, rs)
    reports = [
        checks.acceptor_matches_rules(dfa, rs, cfg.maxlen),
        checks.minimality(dfa),
        checks.tag_preservation(rs, 10_000, cfg.seed),
    ]
    if rs.complete:
        reports.append(checks.confluence_sweep(rs, cfg.maxlen, cfg.seed))
        reports.append(checks.random_confluence(rs, 1000, cfg.maxlen, cfg.seed))
    for r in reports:
        out.write(r.line() + "\n")
    if not all(r.ok for r in reports):
        return EXIT_ERROR
    return _status(rs)


COMMANDS = {
    "complete": cmd_complete, "reduce": cmd_reduce, "decide": cmd_decide, "acceptor": cmd_acceptor,
    "regex": cmd_regex, "enum": cmd_enum, "verify": cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    cfg = build_parser().parse_intermixed_args(argv)
    logging.basicConfig(level=logging.INFO if cfg.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (PresentationError, WordError, AutomatonError, CompletionError, ReductionLimitError,
            OSError) as exc:
        print(f"dcoset: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
