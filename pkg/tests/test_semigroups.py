import numpy as np
import pytest

from starsem.errors import ParseError, ResourceLimitError
from starsem.semigroups import (
    FiniteSemigroup,
    direct_product,
    divides,
    find_isomorphism,
    generate,
    generating_set,
    is_aperiodic,
    is_commutative,
    is_locally_trivial,
    local_delay,
    opposite,
    semigroup_from_text,
    semigroup_to_text,
)

# Running example: the four-element semigroup on {a, b, ab, ba} with
# aa = a, bb = b and aba = bab = ba. Index order: 0=a, 1=b, 2=ab, 3=ba.
T4_LABELS = ["a", "b", "ab", "ba"]
T4 = FiniteSemigroup(
    [
        [0, 2, 2, 3],
        [3, 1, 3, 3],
        [3, 2, 3, 3],
        [3, 3, 3, 3],
    ],
    labels=T4_LABELS,
)


def _rewrite_normal_form(w):
    rules = [("aa", "a"), ("bb", "b"), ("aba", "ba"), ("bab", "ba")]
    changed = True
    while changed:
        changed = False
        for lhs, rhs in rules:
            if lhs in w:
                w = w.replace(lhs, rhs, 1)
                changed = True
    return w


def test_running_example_table_matches_rewriting_closure():
    # close {a, b} under concatenation + rewriting; oracle for the table
    elems = ["a", "b"]
    seen = set(elems)
    queue = list(elems)
    while queue:
        x = queue.pop(0)
        for g in ("a", "b"):
            y = _rewrite_normal_form(x + g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
                queue.append(y)
    assert sorted(seen) == sorted(T4_LABELS)
    idx = {w: i for i, w in enumerate(T4_LABELS)}
    for u in T4_LABELS:
        for v in T4_LABELS:
            assert T4.product(idx[u], idx[v]) == idx[_rewrite_normal_form(u + v)]
    # the frozen spot check: (ab)(ab) = ba
    assert T4.product(2, 2) == 3


def test_rejects_non_associative():
    with pytest.raises(ValueError, match="not associative"):
        FiniteSemigroup([[0, 1], [0, 0]])


def test_rejects_bad_entries():
    with pytest.raises(ValueError):
        FiniteSemigroup([[0, 2], [1, 0]])
    with pytest.raises(ValueError):
        FiniteSemigroup(np.zeros((2, 3), dtype=int))


def test_predicates_on_running_example():
    ok, t = is_aperiodic(T4)
    assert ok and t == 2  # ab^2 = ba = ab^3, and t=1 fails at ab
    comm, witness = is_commutative(T4)
    assert not comm and witness == (0, 1)
    loc, _ = is_locally_trivial(T4)
    assert not loc
    assert T4.idempotents() == [0, 1, 3]


def test_aperiodicity_negative():
    z3 = FiniteSemigroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    ok, t = is_aperiodic(z3)
    assert not ok and t is None
    comm, _ = is_commutative(z3)
    assert comm


def test_generate_transition_semigroup():
    # transformations of the minimal a+b+ automaton
    sg, witnesses = generate([(1, 1, 3, 3), (3, 2, 2, 3)], ["a", "b"])
    assert sg.n == 4
    assert witnesses == ["a", "b", "ab", "ba"]
    iso = find_isomorphism(sg, T4)
    assert iso is not None
    # the isomorphism respects witnesses-as-normal-forms
    assert [T4_LABELS[iso[i]] for i in range(4)] == [_rewrite_normal_form(w) for w in witnesses]


def test_generate_budget():
    # the full transformation monoid on 4 points is larger than 10 elements
    with pytest.raises(ResourceLimitError):
        generate([(1, 2, 3, 0), (1, 0, 2, 3), (0, 0, 2, 3)], ["r", "s", "c"], budget=10)


def test_power_and_fold():
    assert T4.power(2, 1) == 2
    assert T4.power(2, 2) == 3
    assert T4.fold([0, 1, 0]) == 3  # aba = ba
    with pytest.raises(ValueError):
        T4.fold([])


def test_opposite_and_product():
    opp = opposite(T4)
    assert opp.product(0, 1) == T4.product(1, 0)
    assert opposite(opp) == T4
    prod = direct_product(T4, T4)
    assert prod.n == 16
    assert prod.product(0 * 4 + 1, 2 * 4 + 3) == T4.product(0, 2) * 4 + T4.product(1, 3)
    ok, t = is_aperiodic(prod)
    assert ok and t == 2


def test_generating_set():
    gens = generating_set(T4)
    assert set(gens) == {0, 1}
    # a semigroup equal to its own square still gets a working set
    sq = FiniteSemigroup([[0, 0], [0, 0]])
    gens2 = generating_set(sq)
    closure_ok = set(gens2) | {sq.product(i, j) for i in gens2 for j in gens2}
    assert closure_ok == {0, 1}


def test_divides_reflexive_and_simple():
    ok, mapping = divides(T4, T4)
    assert ok
    assert sorted(set(mapping.values())) == [0, 1, 2, 3]
    # the 2-element semilattice embeds as {a, ba}
    meet = FiniteSemigroup([[0, 1], [1, 1]])
    ok, mapping = divides(meet, T4)
    assert ok
    # the 4-element semigroup cannot divide a 2-element one
    ok, _ = divides(T4, meet)
    assert not ok


def test_divides_transitive_on_pool():
    meet = FiniteSemigroup([[0, 1], [1, 1]])
    z2 = FiniteSemigroup([[0, 1], [1, 0]])
    pool = [meet, z2, T4, direct_product(meet, z2)]
    rel = {}
    for i, p in enumerate(pool):
        for j, q in enumerate(pool):
            rel[i, j] = divides(p, q)[0]
    for i in range(len(pool)):
        assert rel[i, i]
        for j in range(len(pool)):
            for k in range(len(pool)):
                if rel[i, j] and rel[j, k]:
                    assert rel[i, k], (i, j, k)
    # sanity: z2 does not divide the aperiodic T4
    assert not rel[1, 2]


def test_divides_budget():
    big = direct_product(direct_product(T4, T4), direct_product(T4, T4))
    with pytest.raises(ResourceLimitError):
        divides(T4, big, budget=64)


def test_local_delay_requires_locally_trivial():
    with pytest.raises(ValueError):
        local_delay(T4)


def test_local_delay_on_null_semigroup():
    # x y = 0 for all x, y: products of length 1 already absorb the middle
    null3 = FiniteSemigroup([[0, 0, 0], [0, 0, 0], [0, 0, 0]])
    ok, _ = is_locally_trivial(null3)
    assert ok
    assert local_delay(null3) == 1


def test_text_roundtrip():
    text = semigroup_to_text(T4, star=[1, 0, 2, 3])
    sg, star = semigroup_from_text(text)
    assert sg == T4 and sg.labels == tuple(T4_LABELS)
    assert star == [1, 0, 2, 3]
    with pytest.raises(ParseError):
        semigroup_from_text("size: 2\n0 1\n")
    with pytest.raises(ParseError):
        semigroup_from_text("size: 2\n0 1 0\n1 0 1\n")
