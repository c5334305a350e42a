"""Finite semigroups as multiplication tables.

Tables are numpy int32 arrays; table[i, j] is the index of the product. Every
construction validates associativity in full (the check runs through the
accelerated kernels, see `_accel`). Elements may carry string labels; the
conventions used by the syntactic constructions store a shortest witness word
per element.
"""

from __future__ import annotations

from collections import deque
from itertools import product as iproduct

import numpy as np

from ._accel import kernels
from .errors import ParseError, ResourceLimitError


class FiniteSemigroup:
    def __init__(self, table, labels=None):
        table = np.asarray(table, dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise ValueError("multiplication table must be square")
        n = table.shape[0]
        if n == 0:
            raise ValueError("semigroup must be non-empty")
        if table.size and (table.min() < 0 or table.max() >= n):
            raise ValueError("table entries must be element indices")
        i, j, k = kernels.assoc_witness(table)
        if i != -1:
            raise ValueError(
                f"not associative: ({i}*{j})*{k} = {table[table[i, j], k]} "
                f"but {i}*({j}*{k}) = {table[i, table[j, k]]}"
            )
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must match the number of elements")
        self.table = table
        self.table.setflags(write=False)
        self.labels = labels

    @property
    def n(self):
        return int(self.table.shape[0])

    def product(self, i, j):
        return int(self.table[i, j])

    def power(self, i, k):
        if k < 1:
            raise ValueError("powers start at 1")
        acc = i
        for _ in range(k - 1):
            acc = int(self.table[acc, i])
        return acc

    def fold(self, indices):
        """Product of a non-empty sequence of element indices."""
        it = iter(indices)
        try:
            acc = next(it)
        except StopIteration:
            raise ValueError("cannot fold an empty sequence")
        for i in it:
            acc = int(self.table[acc, i])
        return acc

    def idempotents(self):
        return [int(i) for i in np.flatnonzero(kernels.idempotent_mask(self.table))]

    def label(self, i):
        return self.labels[i] if self.labels else str(i)

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and np.array_equal(
            self.table, other.table
        )

    def __repr__(self):
        return f"FiniteSemigroup(n={self.n})"


def generate(transformations, names, budget: int = 100_000):
    """Close a set of generator transformations under composition.

    Each transformation is a tuple f over range(m); composition follows word
    order, (u then v)(q) = v(u(q)). Returns (semigroup, witnesses) where
    witnesses[i] is a shortest word over `names` reaching element i
    (discovered in BFS/letter order, so witnesses are length-lex minimal).
    """
    gens = [tuple(f) for f in transformations]
    if len(gens) != len(names) or not gens:
        raise ValueError("need one name per generator")
    index = {}
    witnesses = []
    elems = []
    queue = deque()
    for f, name in zip(gens, names):
        if f not in index:
            index[f] = len(elems)
            elems.append(f)
            witnesses.append(name)
            queue.append(f)
    while queue:
        f = queue.popleft()
        for g, name in zip(gens, names):
            h = tuple(g[x] for x in f)
            if h not in index:
                if len(elems) >= budget:
                    raise ResourceLimitError(
                        "semigroup closure exceeded budget", budget=budget,
                        reached=len(elems),
                    )
                index[h] = len(elems)
                elems.append(h)
                witnesses.append(witnesses[index[f]] + name)
                queue.append(h)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, f in enumerate(elems):
        for j, g in enumerate(elems):
            table[i, j] = index[tuple(g[x] for x in f)]
    return FiniteSemigroup(table, labels=witnesses), witnesses


def is_commutative(sg: FiniteSemigroup):
    i, j = kernels.commutative_witness(sg.table)
    return (i == -1), (None if i == -1 else (i, j))


def is_aperiodic(sg: FiniteSemigroup):
    """Returns (bool, t): t is the least exponent with x^t = x^(t+1) for all
    elements, and is at most n when it exists.
    """
    t = kernels.aperiodicity_index(sg.table, sg.n)
    return (t != -1), (None if t == -1 else t)


def is_locally_trivial(sg: FiniteSemigroup):
    """e s e = e for every idempotent e and every s."""
    e, s = kernels.locally_trivial_witness(sg.table)
    return (e == -1), (None if e == -1 else (e, s))


def local_delay(sg: FiniteSemigroup, max_k: int | None = None) -> int:
    """Least k such that p z q = p q whenever p, q are products of k elements.

    Only meaningful (and guaranteed to exist) for locally trivial semigroups;
    raises ValueError otherwise.
    """
    ok, witness = is_locally_trivial(sg)
    if not ok:
        raise ValueError(f"not locally trivial (witness e={witness[0]}, s={witness[1]})")
    table = sg.table
    n = sg.n
    limit = max_k if max_k is not None else n + 1
    level = frozenset(range(n))
    for k in range(1, limit + 1):
        prods = np.array(sorted(level), dtype=np.int32)
        # p z q == p q for all p, q in level's products, z anywhere
        pz = table[np.ix_(prods, np.arange(n))]  # [p, z]
        pzq = table[pz][:, :, prods]  # [p, z, q]
        pq = table[np.ix_(prods, prods)]  # [p, q]
        if np.array_equal(pzq, np.broadcast_to(pq[:, None, :], pzq.shape)):
            return k
        level = frozenset(int(x) for x in np.unique(table[np.ix_(prods, np.arange(n))]))
    raise ResourceLimitError("no stabilizing product length found", budget=limit)


def opposite(sg: FiniteSemigroup) -> FiniteSemigroup:
    return FiniteSemigroup(sg.table.T.copy(), labels=sg.labels)


def direct_product(a: FiniteSemigroup, b: FiniteSemigroup) -> FiniteSemigroup:
    """Pairs indexed as i*b.n + j."""
    na, nb = a.n, b.n
    table = np.empty((na * nb, na * nb), dtype=np.int32)
    for i1 in range(na):
        for j1 in range(nb):
            row = table[i1 * nb + j1]
            for i2 in range(na):
                base = a.table[i1, i2] * nb
                brow = b.table[j1]
                for j2 in range(nb):
                    row[i2 * nb + j2] = base + brow[j2]
    labels = None
    if a.labels and b.labels:
        labels = [f"({a.labels[i]},{b.labels[j]})" for i in range(na) for j in range(nb)]
    return FiniteSemigroup(table, labels=labels)


def generating_set(sg: FiniteSemigroup) -> list:
    """A reasonably small generating set, greedily built.

    Elements outside table's image must be generators; the rest are added in
    index order until the closure covers everything.
    """
    image = set(int(x) for x in np.unique(sg.table))
    gens = [i for i in range(sg.n) if i not in image]

    def closure(base):
        seen = set(base)
        queue = deque(base)
        while queue:
            x = queue.popleft()
            for g in base:
                for y in (sg.product(x, g), sg.product(g, x)):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return seen

    # note: closure must be recomputed as gens grows
    covered = closure(gens) if gens else set()
    for i in range(sg.n):
        if i not in covered:
            gens.append(i)
            covered = closure(gens)
    return gens


def _pair_closure(sg_host, sg_quot, seed_pairs):
    """Close seed (host, quotient) pairs under componentwise product.

    Returns the mapping host->quotient if it stays a function, else None.
    """
    mapping = {}
    queue = deque()
    for s, t in seed_pairs:
        if mapping.get(s, t) != t:
            return None
        if s not in mapping:
            mapping[s] = t
            queue.append(s)
    items = list(mapping.items())
    while queue:
        s = queue.popleft()
        t = mapping[s]
        for s2, t2 in list(mapping.items()):
            for sa, ta in ((sg_host.product(s, s2), sg_quot.product(t, t2)),
                           (sg_host.product(s2, s), sg_quot.product(t2, t))):
                got = mapping.get(sa)
                if got is None:
                    mapping[sa] = ta
                    queue.append(sa)
                elif got != ta:
                    return None
    return mapping


def divides(part: FiniteSemigroup, whole: FiniteSemigroup, budget: int = 64):
    """Does `part` divide `whole` (quotient of a subsemigroup)?

    Searches preimages for a generating set of `part` and closes pairs for
    consistency. Returns (bool, mapping) where mapping sends elements of the
    found subsemigroup of `whole` onto elements of `part`.
    """
    if whole.n > budget:
        raise ResourceLimitError(
            "division search host too large", budget=budget, reached=whole.n
        )
    gens = generating_set(part)

    def search(i, chosen):
        if i == len(gens):
            mapping = _pair_closure(whole, part, list(zip(chosen, gens)))
            if mapping is not None and set(mapping.values()) == set(range(part.n)):
                return mapping
            return None
        for s in range(whole.n):
            # cheap prune: partial assignment must already be consistent
            mapping = _pair_closure(whole, part, list(zip(chosen + [s], gens)))
            if mapping is None:
                continue
            found = search(i + 1, chosen + [s])
            if found is not None:
                return found
        return None

    mapping = search(0, [])
    return (mapping is not None), mapping


def find_isomorphism(a: FiniteSemigroup, b: FiniteSemigroup):
    """An explicit isomorphism a -> b as a list, or None."""
    if a.n != b.n:
        return None
    gens = generating_set(a)

    def extend(i, chosen):
        if i == len(gens):
            mapping = _pair_closure(a, b, list(zip(gens, chosen)))
            if mapping is None or len(mapping) != a.n:
                return None
            if len(set(mapping.values())) != a.n:
                return None
            return [mapping[x] for x in range(a.n)]
        for t in range(b.n):
            got = extend(i + 1, chosen + [t])
            if got is not None:
                return got
        return None

    return extend(0, [])


# ------------------------------------------------------------------ text IO


def semigroup_to_text(sg: FiniteSemigroup, star: list | None = None) -> str:
    lines = [f"size: {sg.n}"]
    if sg.labels:
        lines.append("labels: " + " ".join(sg.labels))
    for i in range(sg.n):
        lines.append(" ".join(str(int(x)) for x in sg.table[i]))
    if star is not None:
        lines.append("star: " + " ".join(str(int(x)) for x in star))
    return "\n".join(lines) + "\n"


def _parse_table_block(lines, start, n):
    rows = []
    pos = start
    while pos < len(lines) and len(rows) < n:
        line = lines[pos].split("#", 1)[0].strip()
        pos += 1
        if not line:
            continue
        rows.append([int(v) for v in line.split()])
        if len(rows[-1]) != n:
            raise ParseError(f"table row {len(rows)} has {len(rows[-1])} entries, wanted {n}")
    if len(rows) < n:
        raise ParseError("table block ended early")
    return rows, pos


def semigroup_from_text(text: str):
    """Parse the table format; returns (semigroup, star_or_None).

    Format: `size: n`, optional `labels: ...` line, n table rows, optional
    `star: ...` line.
    """
    lines = text.splitlines()
    n = None
    labels = None
    star = None
    pos = 0
    while pos < len(lines):
        line = lines[pos].split("#", 1)[0].strip()
        if not line:
            pos += 1
            continue
        if line.startswith("size:"):
            n = int(line.split(":", 1)[1])
            pos += 1
            if pos < len(lines) and lines[pos].strip().startswith("labels:"):
                labels = lines[pos].split(":", 1)[1].split()
                pos += 1
            rows, pos = _parse_table_block(lines, pos, n)
        elif line.startswith("star:"):
            star = [int(v) for v in line.split(":", 1)[1].split()]
            pos += 1
        else:
            raise ParseError(f"unexpected line {line!r}")
    if n is None:
        raise ParseError("missing size: line")
    if labels is not None and len(labels) != n:
        raise ParseError("labels: count mismatch")
    if star is not None and len(star) != n:
        raise ParseError("star: count mismatch")
    return FiniteSemigroup(rows, labels=labels), star
