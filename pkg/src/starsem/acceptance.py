"""End-to-end verification suite.

Each criterion recomputes one headline result of the library from scratch
and returns (ok, detail). `run_all` prints one line per criterion and is
what the CLI's verify command runs. The criteria double as integration
tests; tests/test_acceptance.py calls the same functions.

The two signature-automaton heavy criteria need more states than the
library default allows: measured reachable counts are about 6.4e6 for the
three-letter alphabet at (k=3, t=1) and 9.25e6 for two letters at (5, 1),
so those runs pass an explicit budget.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from .alphabet import Alphabet
from .dfa import minimize, regex_to_dfa
from .errors import ResourceLimitError
from .folog import bounded_language, consistency_check, parse_formula
from .involution import (
    InvolutionSemigroup,
    evaluate_word,
    flip_product,
    recognizes,
    validate_involution,
)
from .lrtt import (
    canonical_recognizer,
    clear_signature_cache,
    image_dfa,
    is_union_of_classes,
    lrtt_search,
)
from .semigroups import FiniteSemigroup, direct_product, divides, find_isomorphism
from .syntactic import (
    anti_isomorphism_check,
    check_division_dynamic,
    syntactic_divides,
    syntactic_semigroup,
    syntactic_star_semigroup,
)
from .words import factor_signature, word_involution, words_up_to

SWAP = Alphabet("ab", {"a": "b", "b": "a"})
AB = Alphabet("ab")
ABC = Alphabet("abc")

HEAVY_BUDGET = 16_000_000

INTRO = "P_a(min) & P_b(max) & forall x. forall y. (N(x,y) -> (P_a(x) <-> P_b(y)))"

# languages for the flip-product and division suites
TEN_REGEXES = [
    ("a+b+", SWAP),
    ("a+b+", AB),
    ("a(ba)*b", AB),
    ("c*abc*", ABC),
    ("(abc)(abc)*", ABC),
    ("(a|b)(a|b)*", AB),
    ("(a|b)*aa(a|b)*", AB),
    ("aa*", AB),
    ("b(ab)*a", SWAP),
    ("abc*", ABC),
]

FIVE_LANGUAGES = [
    ("a+b+", SWAP),
    ("a+b+", AB),
    ("a(ba)*b", AB),
    ("c*abc*", ABC),
    ("(ab)(ab)*", AB),
]


def _dfa(rx, alphabet):
    return minimize(regex_to_dfa(rx, alphabet))


def _running_example():
    """The four-element semigroup on {a, b, ab, ba}, built from its rewriting
    rules aa = a, bb = b, aba = ba, bab = ba rather than a hard-coded table."""
    rules = [("aa", "a"), ("bb", "b"), ("aba", "ba"), ("bab", "ba")]

    def nf(w):
        changed = True
        while changed:
            changed = False
            for lhs, rhs in rules:
                if lhs in w:
                    w = w.replace(lhs, rhs, 1)
                    changed = True
        return w

    elems = ["a", "b"]
    queue = ["a", "b"]
    seen = set(elems)
    while queue:
        x = queue.pop(0)
        for g in "ab":
            y = nf(x + g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
                queue.append(y)
    index = {w: i for i, w in enumerate(elems)}
    table = [[index[nf(u + v)] for v in elems] for u in elems]
    sg = FiniteSemigroup(table, labels=elems)
    star_swap = [index[nf(word_involution(SWAP, w))] for w in elems]
    return sg, index, star_swap


def _flip_recognizer(rx, alphabet):
    d = _dfa(rx, alphabet)
    sd = syntactic_semigroup(d)
    n = sd.semigroup.n
    flip = flip_product(sd.semigroup)
    h = {
        a: sd.letter_map[a] * n + sd.letter_map[alphabet.dagger[a]]
        for a in alphabet.letters
    }
    accepting = {x * n + y for x in sd.accepting for y in range(n)}
    return d, flip, h, accepting


def _image_slice(rec, limit):
    """First `limit` recognizer elements with a witness word each."""
    from collections import deque

    witness = {}
    queue = deque()
    for a in rec.alphabet.letters:
        x = rec.letter_image(a)
        if x not in witness:
            witness[x] = a
            queue.append(x)
    gens = [(a, rec.letter_image(a)) for a in rec.alphabet.letters]
    while queue and len(witness) < limit:
        x = queue.popleft()
        w = witness[x]
        for a, g in gens:
            y = rec.product(x, g)
            if y not in witness:
                witness[y] = w + a
                queue.append(y)
                if len(witness) >= limit:
                    break
    return witness


def _brute_violation(member, alphabet, max_len, k, t, mode):
    """First same-class pair with opposite membership among short words."""
    groups = {}
    for w in words_up_to(alphabet, max_len):
        sig = factor_signature(w, k, t, mode, alphabet)
        m = member(w)
        prev = groups.get(sig)
        if prev is None:
            groups[sig] = (m, w)
        elif prev[0] != m:
            return (prev[1], w) if prev[0] else (w, prev[1])
    return None


def _verify_witness(d, k, t, mode, pair):
    w_in, w_out = pair
    if not (d.member(w_in) and not d.member(w_out)):
        return False
    return factor_signature(w_in, k, t, mode, d.alphabet) == factor_signature(
        w_out, k, t, mode, d.alphabet
    )


def criterion_1():
    """Involution table of the running example: the letter swap extends, the
    identity does not."""
    sg, index, star_swap = _running_example()
    if sorted(index) != ["a", "ab", "b", "ba"]:
        return False, f"rewriting closure produced {sorted(index)}"
    if star_swap[index["ab"]] != index["ab"] or star_swap[index["ba"]] != index["ba"]:
        return False, "swap star should fix ab and ba"
    if validate_involution(sg, star_swap) is not None:
        return False, "letter swap rejected"
    witness = validate_involution(sg, list(range(sg.n)))
    if witness is None or witness[0] != "antimorphism":
        return False, f"identity star accepted or wrong witness {witness}"
    # the defining computation: (ba) starred must be a*b* = ab, not ba
    b, a = index["b"], index["a"]
    if sg.product(b, a) != index["ba"] or sg.product(a, b) != index["ab"]:
        return False, "table does not follow the rewriting rules"
    _, i, j = witness
    labels = sg.labels
    return True, (
        f"swap accepted; identity rejected at ({labels[i]}, {labels[j]}): "
        f"({labels[i]}{labels[j]})* should be {labels[sg.product(j, i)]}, "
        f"identity keeps {labels[sg.product(i, j)]}"
    )


def criterion_2():
    """The running example with a -> a, b -> b and accepting {ab} recognizes
    a+b+ under the swap dagger, and is the syntactic semigroup of a+b+."""
    sg, index, star_swap = _running_example()
    inv = InvolutionSemigroup(sg, star_swap)
    d = _dfa("a+b+", SWAP)
    h = {"a": index["a"], "b": index["b"]}
    ok, wit = recognizes(inv, SWAP, h, {index["ab"]}, d)
    if not ok:
        return False, f"recognition failed at {wit!r}"
    sd = syntactic_semigroup(d)
    if sd.semigroup.n != sg.n:
        return False, f"syntactic semigroup has {sd.semigroup.n} elements"
    iso = find_isomorphism(sd.semigroup, sg)
    if iso is None:
        return False, "no isomorphism with the syntactic semigroup"
    shown = ", ".join(f"{sd.witness[x]}->{sg.labels[iso[x]]}" for x in range(sg.n))
    return True, f"recognizes a+b+; isomorphism {shown}"


def criterion_3():
    """Pairing each word with its involuted twin always yields a recognizer:
    check language equality and the star exchange on ten regexes."""
    for rx, alphabet in TEN_REGEXES:
        d, flip, h, accepting = _flip_recognizer(rx, alphabet)
        ok, wit = recognizes(flip, alphabet, h, accepting, d)
        if not ok:
            return False, f"{rx}: flip recognizer fails at {wit!r}"
        for w in words_up_to(alphabet, 6):
            g = evaluate_word(flip.sg, alphabet, h, w)
            gi = evaluate_word(flip.sg, alphabet, h, word_involution(alphabet, w))
            if gi != flip.star_of(g):
                return False, f"{rx}: involution/star exchange fails at {w!r}"
    return True, "10/10 regexes recognized; exchange law exhaustive to length 6"


def criterion_4():
    """c*abc* is not a union of reverse classes anywhere below (3, 2) but is
    a union of plain classes at (2, 2); each witness independently verified."""
    t0 = time.perf_counter()
    d = _dfa("c*abc*", ABC)
    cells = []
    for k in (1, 2, 3):
        for t in (1, 2):
            ok, wit = is_union_of_classes(d, k, t, "reverse")
            if ok:
                return False, f"unexpected union of classes at ({k},{t}) reverse"
            if not _verify_witness(d, k, t, "reverse", wit):
                return False, f"bad witness {wit} at ({k},{t})"
            cells.append(f"({k},{t})={wit[0]}/{wit[1]}")
    ok, _ = is_union_of_classes(d, 2, 2, "plain")
    if not ok:
        return False, "expected a union of plain classes at (2,2)"
    dt = time.perf_counter() - t0
    if dt >= 60:
        return False, f"grid took {dt:.1f}s, limit 60s"
    return True, "; ".join(cells) + f"; plain (2,2) yes; {dt:.1f}s"


def criterion_5():
    """Words that share a reverse signature at width 3 share their image in
    the width-1 canonical recognizer: exhaustive over two letters to length 9."""
    t0 = time.perf_counter()
    rec = canonical_recognizer(AB, 1, 1)
    groups = {}
    count = 0
    for w in words_up_to(AB, 9):
        count += 1
        groups.setdefault(factor_signature(w, 3, 1, "reverse", AB), []).append(w)
    for ws in groups.values():
        first = rec.eval(ws[0])
        for w in ws[1:]:
            if rec.eval(w) != first:
                return False, f"{ws[0]!r} and {w!r} split one class"
    dt = time.perf_counter() - t0
    if dt >= 300:
        return False, f"took {dt:.1f}s, limit 300s"
    return True, f"{count} words in {len(groups)} classes, image constant; {dt:.1f}s"


def criterion_6():
    """Structural validators of the canonical recognizers at radius 1,
    thresholds 1 and 2, over two and three letters."""
    checked = 0
    for alphabet in (AB, ABC):
        for m in (1, 2):
            rec = canonical_recognizer(alphabet, 1, m)
            results = rec.validate(seed=0)
            bad = {name: w for name, (ok, w) in results.items() if not ok}
            if bad:
                return False, f"|A|={len(alphabet)}, m={m}: failed {bad}"
            checked += len(results)
    return True, f"4 recognizers, {checked} checks, all laws hold"


def criterion_7():
    """Seeded random accepting subsets of the width-1 recognizer image stay
    unions of reverse classes at width 5, threshold 1."""
    clear_signature_cache()
    rec = canonical_recognizer(AB, 1, 1)
    image = rec.image()
    order = list(image)
    t = rec.aperiodicity_index()
    width = 4 * rec.k + 1
    rng = np.random.default_rng(20210527)
    for i in range(20):
        mask = rng.random(len(order)) < rng.uniform(0.1, 0.9)
        accepting = [x for x, keep in zip(order, mask) if keep]
        d = image_dfa(rec, accepting)
        ok, wit = is_union_of_classes(d, width, t, budget=HEAVY_BUDGET)
        if not ok:
            return False, f"subset {i} ({len(accepting)} elements) split at {wit}"
    return True, f"20/20 subsets of a {len(order)}-element image, cell ({width},{t})"


def criterion_8():
    """(abc)+ admits a cell in the grid up to (4, 3); the found cell is
    cross-checked by grouping every word up to length 12."""
    clear_signature_cache()
    d = _dfa("(abc)(abc)*", ABC)
    r = lrtt_search(d, 4, 3, budget=HEAVY_BUDGET)
    if not r.ok:
        return False, f"no cell found up to (4,3); witnesses {r.witnesses}"
    k, t = r.found
    bad = _brute_violation(d.member, ABC, 12, k, t, "reverse")
    if bad is not None:
        return False, f"cell ({k},{t}) contradicted by enumeration: {bad}"
    return True, f"found cell ({k},{t}); enumeration to length 12 agrees"


def criterion_9():
    """The alternating-word sentence defines a(ba)*b, and that language
    admits a small cell."""
    f = parse_formula(INTRO, AB)
    lang = bounded_language(f, AB, 8)
    if lang != ["ab", "abab", "ababab", "abababab"]:
        return False, f"bounded language is {lang}"
    d = _dfa("a(ba)*b", AB)
    agree, wit = consistency_check(f, d, 8)
    if not agree:
        return False, f"formula and regex disagree at {wit!r}"
    r = lrtt_search(d, 3, 2)
    if not r.ok:
        return False, "no cell found for a(ba)*b up to (3,2)"
    return True, f"language matches to length 8; search found cell {r.found}"


def criterion_10():
    """Congruence laws, anti-isomorphism, and both division statements."""
    # star classes = pairs of plain classes, and the involution exchange,
    # checked as partition bijections over all words up to length 7
    from .dfa import language_involution

    for rx, alphabet in FIVE_LANGUAGES:
        d = _dfa(rx, alphabet)
        di = language_involution(d)
        sd, sdi = syntactic_semigroup(d), syntactic_semigroup(di)
        sds = syntactic_star_semigroup(d, alphabet)
        sg, sgi, isg = sd.semigroup, sdi.semigroup, sds.invsemigroup
        f, fi, chi = sd.letter_map, sdi.letter_map, sds.chi

        def fold(table, h, w):
            x = h[w[0]]
            for a in w[1:]:
                x = table.product(x, h[a])
            return x

        star_to_pair, pair_to_star = {}, {}
        exch_a, exch_b = {}, {}
        for w in words_up_to(alphabet, 7):
            x = fold(isg, chi, w)
            pair = (fold(sg, f, w), fold(sgi, fi, w))
            if star_to_pair.setdefault(x, pair) != pair:
                return False, f"{rx}: star class of {w!r} splits a pair class"
            if pair_to_star.setdefault(pair, x) != x:
                return False, f"{rx}: pair class of {w!r} splits a star class"
            z = fold(sgi, fi, w)
            y = fold(sg, f, word_involution(alphabet, w))
            if exch_a.setdefault(z, y) != y or exch_b.setdefault(y, z) != z:
                return False, f"{rx}: involution exchange fails at {w!r}"
        ok, _ = anti_isomorphism_check(d, alphabet)
        if not ok:
            return False, f"{rx}: no anti-isomorphism with the opposite"

    # division: every recognizer built above is divided by its syntactic
    # star semigroup
    sg, index, star_swap = _running_example()
    inv = InvolutionSemigroup(sg, star_swap)
    d = _dfa("a+b+", SWAP)
    ok, _ = syntactic_divides(
        d, inv, {"a": index["a"], "b": index["b"]}, {index["ab"]}, SWAP
    )
    if not ok:
        return False, "running-example recognizer is not divided"
    for rx, alphabet in TEN_REGEXES:
        d, flip, h, accepting = _flip_recognizer(rx, alphabet)
        ok, _ = syntactic_divides(d, flip, h, accepting, alphabet)
        if not ok:
            return False, f"{rx}: flip recognizer is not divided"
    rec = canonical_recognizer(ABC, 1, 2)
    d = _dfa("(abc)(abc)*", ABC)
    ok, why = check_division_dynamic(d, ABC, _image_slice(rec, 600), rec.product, rec.star)
    if not ok:
        return False, f"canonical recognizer slice: {why}"

    # a small involution semigroup divides the product of the syntactic star
    # semigroups of its element languages
    instances = [
        (
            InvolutionSemigroup(
                FiniteSemigroup([[2, 2, 2], [2, 2, 2], [2, 2, 2]], labels=["x", "y", "0"]),
                [1, 0, 2],
            ),
            SWAP,
            {"a": 0, "b": 1},
            {0: "a", 1: "b", 2: "(a|b)(a|b)(a|b)*"},
        ),
        (
            InvolutionSemigroup(FiniteSemigroup([[0, 1], [1, 1]], labels=["e", "z"]), [0, 1]),
            AB,
            {"a": 0, "b": 1},
            {0: "aa*", 1: "a*b(a|b)*"},
        ),
    ]
    for inv, alphabet, h, langs in instances:
        prod = None
        for s in range(inv.n):
            ds = _dfa(langs[s], alphabet)
            for w in words_up_to(alphabet, 5):
                if ds.member(w) != (evaluate_word(inv.sg, alphabet, h, w) == s):
                    return False, f"element language {langs[s]} mislabeled at {w!r}"
            part = syntactic_star_semigroup(ds, alphabet).invsemigroup.sg
            prod = part if prod is None else direct_product(prod, part)
        ok, _ = divides(inv.sg, prod, budget=max(200, prod.n))
        if not ok:
            return False, f"size-{inv.n} instance does not divide a {prod.n}-element product"

    return True, (
        f"{len(FIVE_LANGUAGES)} languages to length 7; "
        f"{1 + len(TEN_REGEXES) + 1} recognizers divided; 2 product divisions"
    )


def criterion_11():
    """The class-membership engine agrees with plain enumeration to length 10
    on every language and cell the other criteria exercise."""
    clear_signature_cache()
    checked = 0
    named = [
        ("c*abc*", ABC, [(k, t, "reverse") for k in (1, 2, 3) for t in (1, 2)]
         + [(2, 2, "plain")]),
        ("a(ba)*b", AB, [(1, 1, "reverse"), (1, 2, "reverse"), (2, 1, "reverse")]),
        ("(abc)(abc)*", ABC, [(1, 1, "reverse"), (1, 2, "reverse"), (2, 1, "reverse"),
                              (1, 3, "reverse"), (2, 2, "reverse"), (3, 1, "reverse")]),
    ]
    for rx, alphabet, cells in named:
        d = _dfa(rx, alphabet)
        for k, t, mode in cells:
            got, wit = is_union_of_classes(d, k, t, mode, budget=HEAVY_BUDGET)
            brute = _brute_violation(d.member, alphabet, 10, k, t, mode)
            if got != (brute is None):
                return False, f"{rx} at ({k},{t},{mode}): engine {got}, brute {brute}"
            if not got and not _verify_witness(d, k, t, mode, wit):
                return False, f"{rx} at ({k},{t},{mode}): bad witness {wit}"
            checked += 1

    # the seeded subsets of the converse criterion, engine vs enumeration
    rec = canonical_recognizer(AB, 1, 1)
    order = list(rec.image())
    words = [(factor_signature(w, 5, 1, "reverse", AB), w) for w in words_up_to(AB, 10)]
    rng = np.random.default_rng(20210527)
    for i in range(20):
        mask = rng.random(len(order)) < rng.uniform(0.1, 0.9)
        d = image_dfa(rec, [x for x, keep in zip(order, mask) if keep])
        got, _ = is_union_of_classes(d, 5, 1, budget=HEAVY_BUDGET)
        groups = {}
        brute_clean = True
        for sig, w in words:
            m = d.member(w)
            if groups.setdefault(sig, m) != m:
                brute_clean = False
                break
        if got != brute_clean:
            return False, f"subset {i}: engine {got}, enumeration {brute_clean}"
        checked += 1
    clear_signature_cache()
    return True, f"{checked} language/cell pairs agree"


CRITERIA = [
    (1, "running-example involution", criterion_1),
    (2, "running-example recognition", criterion_2),
    (3, "flip-product recognizers", criterion_3),
    (4, "separating language grid", criterion_4),
    (5, "forward transport", criterion_5),
    (6, "recognizer structure", criterion_6),
    (7, "seeded accepting subsets", criterion_7),
    (8, "three-letter cycle cell", criterion_8),
    (9, "logic cross-check", criterion_9),
    (10, "congruences and division", criterion_10),
    (11, "engine vs enumeration", criterion_11),
]


def run_all(out=None, err=None, only=None):
    """Run the criteria, print one line each; True when everything passed."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    overall = True
    for num, name, fn in CRITERIA:
        if only is not None and num not in only:
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = fn()
        except ResourceLimitError as e:
            ok, detail = False, f"resource limit: {e}"
        except Exception as e:  # a crash must not hide the remaining criteria
            ok, detail = False, f"error: {e!r}"
        dt = time.perf_counter() - t0
        verdict = "PASS" if ok else "FAIL"
        print(f"criterion {num}: {verdict} [{name}] {detail}", file=out)
        print(f"criterion {num} time_s: {dt:.1f}", file=err)
        overall = overall and ok
    return overall
