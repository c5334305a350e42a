"""Command-line front end.

Every command reads text, prints a deterministic `key: value` report on
stdout, and reports timing on stderr so stdout stays byte-identical across
reruns. Exit codes: 0 for success or a positive answer, 1 for a negative
answer (the witness is part of the report), 2 when a budget was exhausted,
3 for malformed input.

Automata given as regexes are minimized before use, so reported witnesses
depend only on the language, not on the regex shape.
"""

from __future__ import annotations

import argparse
import re
import sys
import time

from .alphabet import Alphabet, parse_alphabet_file
from .dfa import dfa_from_text, dfa_to_text, minimize, regex_to_dfa
from .errors import ParseError, ResourceLimitError, StarsemError
from .folog import bounded_language, consistency_check, evaluate, parse_formula
from .involution import hermitian_elements, is_hermitian_generated
from .lrtt import canonical_recognizer, is_union_of_classes, lrtt_search
from .regex import parse_regex, regex_letters
from .semidirect import (
    action_from_text,
    build_sdp,
    is_locally_hermitian,
    sandwich_check,
    validate_action,
    validate_involutory,
)
from .semigroups import (
    is_aperiodic,
    is_commutative,
    is_locally_trivial,
    semigroup_from_text,
    semigroup_to_text,
)
from .involution import InvolutionSemigroup, involution_to_text
from .syntactic import syntactic_semigroup, syntactic_star_semigroup
from .words import factor_signature


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; route that to input-error
    def error(self, message):
        raise ParseError(message)


def _emit(key, value):
    print(f"{key}: {value}")


def _flag(value):
    return "true" if value else "false"


def _read(path):
    with open(path, encoding="ascii") as fh:
        return fh.read()


def _dagger_pairs(text):
    toks = text.split()
    if len(toks) % 2:
        raise ParseError("--dagger wants whitespace-separated letter pairs")
    dagger = {}
    for x, y in zip(toks[::2], toks[1::2]):
        dagger[x] = y
        dagger[y] = x
    return dagger


def _alphabet_of(args, inferred=""):
    """Alphabet from --alphabet-file, --alphabet/--dagger, or inferred letters."""
    if getattr(args, "alphabet_file", None):
        return parse_alphabet_file(_read(args.alphabet_file))
    dagger = _dagger_pairs(args.dagger) if getattr(args, "dagger", None) else {}
    letters = getattr(args, "alphabet", None)
    if letters is None:
        letters = "".join(sorted(set(inferred) | set(dagger)))
    if not letters:
        raise ParseError("no alphabet given and none can be inferred")
    return Alphabet(letters, dagger)


def _load_language(args):
    """(minimal DFA, alphabet) from --regex or --dfa."""
    if getattr(args, "regex", None):
        r = parse_regex(args.regex)
        alphabet = _alphabet_of(args, inferred="".join(regex_letters(r)))
        return minimize(regex_to_dfa(r, alphabet)), alphabet
    if getattr(args, "dfa", None):
        alphabet = _alphabet_of(args)
        return minimize(dfa_from_text(_read(args.dfa), alphabet)), alphabet
    raise ParseError("need --regex or --dfa")


def _formula_text(args):
    if getattr(args, "formula", None):
        return args.formula
    if getattr(args, "formula_file", None):
        return _read(args.formula_file)
    raise ParseError("need --formula or --formula-file")


def _formula_letters(text):
    return "".join(re.findall(r"P_(.)", text))


def _semigroup_flags(sg):
    ok, wit = is_commutative(sg)
    _emit("commutative", _flag(ok))
    if not ok:
        _emit("commutative_witness", f"{wit[0]} {wit[1]}")
    ok, wit = is_aperiodic(sg)
    _emit("aperiodic", _flag(ok))
    if not ok:
        _emit("aperiodic_witness", wit)
    ok, wit = is_locally_trivial(sg)
    _emit("locally_trivial", _flag(ok))
    if not ok:
        _emit("locally_trivial_witness", f"{wit[0]} {wit[1]}")


# ----------------------------------------------------------------- commands


def cmd_sig(args):
    alphabet = _alphabet_of(args, inferred=args.word)
    sig = factor_signature(args.word, args.k, args.t, args.mode, alphabet)
    _emit("word", args.word)
    _emit("mode", sig.mode)
    _emit("k", sig.k)
    _emit("t", sig.t)
    if sig.short_word is not None:
        _emit("short", sig.short_word)
        return 0
    _emit("prefix", sig.prefix)
    _emit("suffix", sig.suffix)
    for f, c in sig.counts:
        _emit(f"count {f}", c)
    return 0


def cmd_regex2dfa(args):
    d, _ = _load_language(args)
    sys.stdout.write(dfa_to_text(d))
    return 0


def cmd_syn(args):
    d, _ = _load_language(args)
    sd = syntactic_semigroup(d, budget=args.budget)
    sys.stdout.write(semigroup_to_text(sd.semigroup))
    _emit("witness", " ".join(sd.witness))
    _emit("accepting", " ".join(str(i) for i in sorted(sd.accepting)))
    _semigroup_flags(sd.semigroup)
    return 0


def cmd_invsyn(args):
    d, alphabet = _load_language(args)
    sds = syntactic_star_semigroup(d, alphabet, budget=args.budget)
    inv = sds.invsemigroup
    sys.stdout.write(involution_to_text(inv))
    _emit("witness", " ".join(sds.witness))
    _emit("accepting", " ".join(str(i) for i in sorted(sds.accepting)))
    _emit("hermitian", " ".join(str(i) for i in hermitian_elements(inv)))
    _semigroup_flags(inv.sg)
    ok, _ = is_hermitian_generated(inv)
    _emit("hermitian_generated", _flag(ok))
    return 0


def cmd_props(args):
    if getattr(args, "semigroup", None):
        sg, star = semigroup_from_text(_read(args.semigroup))
        _emit("size", sg.n)
        _semigroup_flags(sg)
        if star is not None:
            inv = InvolutionSemigroup(sg, star)
            _emit("hermitian", " ".join(str(i) for i in hermitian_elements(inv)))
            ok, _ = is_hermitian_generated(inv)
            _emit("hermitian_generated", _flag(ok))
        return 0
    d, alphabet = _load_language(args)
    sds = syntactic_star_semigroup(d, alphabet, budget=args.budget)
    _emit("size", sds.invsemigroup.n)
    _semigroup_flags(sds.invsemigroup.sg)
    _emit("hermitian", " ".join(str(i) for i in hermitian_elements(sds.invsemigroup)))
    ok, _ = is_hermitian_generated(sds.invsemigroup)
    _emit("hermitian_generated", _flag(ok))
    return 0


def cmd_action_check(args):
    action, star_s, star_t = action_from_text(_read(args.file))
    _emit("S_size", action.S.n)
    _emit("T_size", action.T.n)
    bad = False
    ok, wit = validate_action(action)
    _emit("laws", "ok" if ok else f"violated {wit}")
    bad = bad or not ok
    if star_s is None or star_t is None:
        _emit("stars", "absent")
        return 1 if bad else 0
    ok, wit = validate_involutory(action, star_s, star_t)
    _emit("involutory", "ok" if ok else f"violated {wit}")
    if ok:
        ok2, wit = sandwich_check(action, star_s, star_t)
        _emit("sandwich", "ok" if ok2 else f"violated {wit}")
        bad = bad or not ok2
        ok3, wit = is_locally_hermitian(action, star_s, star_t)
        _emit("locally_hermitian", _flag(ok3))
        if not ok3:
            _emit("locally_hermitian_witness", f"{wit[0]} {wit[1]}")
    else:
        bad = True
    return 1 if bad else 0


def cmd_sdp_build(args):
    action, star_s, star_t = action_from_text(_read(args.file))
    if star_s is None or star_t is None:
        raise ParseError("both tables need a star: line")
    sdp = build_sdp(action, star_s, star_t)
    _emit("size", sdp.product.n)
    _emit("locally_hermitian", _flag(sdp.locally_hermitian))
    sys.stdout.write(involution_to_text(sdp.product))
    return 0


def cmd_canonical(args):
    alphabet = _alphabet_of(args)
    rec = canonical_recognizer(alphabet, args.k, args.m, args.mode)
    _emit("alphabet", "".join(alphabet.letters))
    _emit("k", args.k)
    _emit("m", args.m)
    _emit("mode", args.mode)
    _emit("aperiodicity_index", rec.aperiodicity_index())
    if args.image:
        _emit("image_size", len(rec.image(budget=args.budget)))
    code = 0
    if args.validate:
        results = rec.validate(sample=args.sample, seed=args.seed)
        for name in sorted(results):
            ok, wit = results[name]
            _emit(f"check {name}", "ok" if ok else f"FAIL {wit}")
            code = code if ok else 1
    return code


def _union_check(args, mode):
    d, alphabet = _load_language(args)
    _emit("mode", mode)
    _emit("k", args.k)
    _emit("t", args.t)
    ok, wit = is_union_of_classes(d, args.k, args.t, mode, budget=args.budget)
    if ok:
        _emit("result", "yes")
        return 0
    _emit("result", "no")
    _emit("witness_in", wit[0])
    _emit("witness_out", wit[1])
    return 1


def cmd_ltt_check(args):
    return _union_check(args, "plain")


def cmd_lrtt_check(args):
    return _union_check(args, args.mode)


def cmd_lrtt_search(args):
    d, alphabet = _load_language(args)
    _emit("mode", args.mode)
    _emit("grid", f"{args.kmax} {args.tmax}")
    r = lrtt_search(d, args.kmax, args.tmax, args.mode, budget=args.budget)
    _emit("found", f"{r.found[0]} {r.found[1]}" if r.found else "none")
    out_of_budget = False
    for k, t in sorted(r.witnesses, key=lambda cell: (cell[0] + cell[1], cell[0])):
        wit = r.witnesses[(k, t)]
        if wit == "budget":
            _emit(f"cell {k} {t}", "budget")
            out_of_budget = True
        else:
            _emit(f"cell {k} {t} in", wit[0])
            _emit(f"cell {k} {t} out", wit[1])
    if r.found:
        return 0
    return 2 if out_of_budget else 1


def cmd_fo_eval(args):
    text = _formula_text(args)
    alphabet = _alphabet_of(args, inferred=_formula_letters(text) + args.word)
    f = parse_formula(text, alphabet)
    value = evaluate(f, alphabet.check_word(args.word))
    _emit("value", _flag(value))
    return 0 if value else 1


def cmd_fo_lang(args):
    text = _formula_text(args)
    alphabet = _alphabet_of(args, inferred=_formula_letters(text))
    f = parse_formula(text, alphabet)
    words = bounded_language(f, alphabet, args.maxlen)
    _emit("maxlen", args.maxlen)
    _emit("count", len(words))
    for w in words:
        _emit("word", w)
    return 0


def cmd_fo_consist(args):
    text = _formula_text(args)
    d, alphabet = _load_language(args)
    f = parse_formula(text, alphabet)
    _emit("maxlen", args.maxlen)
    agree, wit = consistency_check(f, d, args.maxlen)
    if agree:
        _emit("agree", "yes")
        return 0
    _emit("agree", "no")
    _emit("disagree_at", wit)
    return 1


def cmd_verify_paper(args):
    from .acceptance import run_all

    return 0 if run_all() else 1


# ------------------------------------------------------------------- wiring


def _add_alphabet_opts(p):
    p.add_argument("--alphabet", help="letters in order, e.g. 'ab'")
    p.add_argument("--dagger", help="involution pairs, e.g. 'a b'")
    p.add_argument("--alphabet-file", help="alphabet file (one letter or pair per line)")


def _add_language_opts(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--regex", help="regular expression over single letters")
    group.add_argument("--dfa", help="automaton file (needs an explicit alphabet)")
    _add_alphabet_opts(p)


def _add_formula_opts(p):
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula", help="formula text")
    group.add_argument("--formula-file", help="file holding one formula")


def build_parser():
    ap = _Parser(prog="starsem", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sig", help="factor signature of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("plain", "reverse"), default="plain")
    _add_alphabet_opts(p)
    p.set_defaults(fn=cmd_sig)

    p = sub.add_parser("regex2dfa", help="compile and minimize a regex")
    _add_language_opts(p)
    p.set_defaults(fn=cmd_regex2dfa)

    p = sub.add_parser("syn", help="syntactic semigroup report")
    _add_language_opts(p)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=cmd_syn)

    p = sub.add_parser("invsyn", help="syntactic star-semigroup report")
    _add_language_opts(p)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=cmd_invsyn)

    p = sub.add_parser("props", help="algebraic property flags")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--regex")
    group.add_argument("--dfa")
    group.add_argument("--semigroup", help="semigroup table file")
    _add_alphabet_opts(p)
    p.add_argument("--budget", type=int, default=100_000)
    p.set_defaults(fn=cmd_props)

    p = sub.add_parser("action-check", help="validate a bilateral action file")
    p.add_argument("--file", required=True)
    p.set_defaults(fn=cmd_action_check)

    p = sub.add_parser("sdp-build", help="build the pair semigroup of an action")
    p.add_argument("--file", required=True)
    p.set_defaults(fn=cmd_sdp_build)

    p = sub.add_parser("canonical", help="build a canonical recognizer")
    _add_alphabet_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mode", choices=("reverse", "plain"), default="reverse")
    p.add_argument("--image", action="store_true", help="also count the image")
    p.add_argument("--validate", action="store_true", help="run the law checks")
    p.add_argument("--sample", type=int, default=128)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=500_000)
    p.set_defaults(fn=cmd_canonical)

    p = sub.add_parser("ltt-check", help="is the language a union of plain classes")
    _add_language_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(fn=cmd_ltt_check)

    p = sub.add_parser("lrtt-check", help="is the language a union of classes")
    _add_language_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mode", choices=("reverse", "plain"), default="reverse")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(fn=cmd_lrtt_check)

    p = sub.add_parser("lrtt-search", help="search the (k, t) grid for a cell")
    _add_language_opts(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--tmax", type=int, required=True)
    p.add_argument("--mode", choices=("reverse", "plain"), default="reverse")
    p.add_argument("--budget", type=int, default=5_000_000)
    p.set_defaults(fn=cmd_lrtt_search)

    p = sub.add_parser("fo-eval", help="evaluate a sentence on a word")
    _add_formula_opts(p)
    p.add_argument("--word", required=True)
    _add_alphabet_opts(p)
    p.set_defaults(fn=cmd_fo_eval)

    p = sub.add_parser("fo-lang", help="enumerate the bounded language of a sentence")
    _add_formula_opts(p)
    p.add_argument("--maxlen", type=int, required=True)
    _add_alphabet_opts(p)
    p.set_defaults(fn=cmd_fo_lang)

    p = sub.add_parser("fo-consist", help="compare a sentence with an automaton")
    _add_formula_opts(p)
    _add_language_opts(p)
    p.add_argument("--maxlen", type=int, required=True)
    p.set_defaults(fn=cmd_fo_consist)

    p = sub.add_parser("verify-paper", help="run the built-in verification suite")
    p.set_defaults(fn=cmd_verify_paper)

    return ap


def main(argv=None):
    t0 = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        code = args.fn(args)
    except ResourceLimitError as e:
        print(f"error: resource limit: {e}", file=sys.stderr)
        code = 2
    except (StarsemError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        code = 3
    finally:
        print(f"time_s: {time.perf_counter() - t0:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
