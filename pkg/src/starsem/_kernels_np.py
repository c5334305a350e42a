"""Pure-numpy table kernels (fallback path).

Witness conventions match `_kernels_nb`: every function returns the
lexicographically first violating tuple, with -1s when the law holds.
"""

from __future__ import annotations

import numpy as np

IMPL = "numpy"

_CHUNK_CELLS = 1 << 24


def assoc_witness(table):
    n = table.shape[0]
    if n == 0:
        return (-1, -1, -1)
    rows = max(1, _CHUNK_CELLS // max(1, n * n))
    for i0 in range(0, n, rows):
        part = table[i0 : i0 + rows]
        lhs = table[part]  # [i, j, k] = table[table[i, j], k]
        rhs = np.take(part, table, axis=1)  # [i, j, k] = table[i, table[j, k]]
        bad = np.argwhere(lhs != rhs)
        if bad.size:
            i, j, k = bad[0]
            return (int(i) + i0, int(j), int(k))
    return (-1, -1, -1)


def commutative_witness(table):
    bad = np.argwhere(table != table.T)
    if bad.size:
        return (int(bad[0][0]), int(bad[0][1]))
    return (-1, -1)


def idempotent_mask(table):
    n = table.shape[0]
    idx = np.arange(n)
    return table[idx, idx] == idx


def locally_trivial_witness(table):
    n = table.shape[0]
    mask = idempotent_mask(table)
    es = np.flatnonzero(mask)
    for e in es:
        ese = table[table[e], e]  # ese[s] = (e s) e
        bad = np.flatnonzero(ese != e)
        if bad.size:
            return (int(e), int(bad[0]))
    return (-1, -1)


def aperiodicity_index(table, t_max):
    n = table.shape[0]
    idx = np.arange(n)
    p = idx.copy()  # p[x] = x^1
    for t in range(1, t_max + 1):
        nxt = table[p, idx]  # x^(t+1)
        if np.array_equal(nxt, p):
            return t
        p = nxt
    return -1


def involution_witness(table, star):
    n = table.shape[0]
    idx = np.arange(n)
    bad = np.flatnonzero(star[star] != idx)
    if bad.size:
        return (1, int(bad[0]), -1)
    lhs = star[table]  # (i j)^*
    rhs = table[np.ix_(star, star)].T  # [i, j] = star(j) star(i)
    bad2 = np.argwhere(lhs != rhs)
    if bad2.size:
        return (2, int(bad2[0][0]), int(bad2[0][1]))
    return (0, -1, -1)


def action_law_witness(add, mul, left, right):
    """Check the five bilateral-action laws.

    add: |S|x|S|, mul: |T|x|T|, left: |T|x|S|, right: |S|x|T|.
    Returns (law, i, j, k) with law 0 when all hold. Index meaning per law:
      1: t(s+s') = ts+ts'      (t, s, s')
      2: (tt')s = t(t's)       (t, t', s)
      3: (s+s')t = st+s't      (s, s', t)
      4: s(tt') = (st)t'       (s, t, t')
      5: (ts)t' = t(st')       (t, s, t')
    """
    lhs = left[:, add]  # [t, s, s2] = t . (s+s2)
    rhs = add[left[:, :, None], left[:, None, :]]  # [t, s, s2] = (t.s)+(t.s2)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (1, int(bad[0][0]), int(bad[0][1]), int(bad[0][2]))
    lhs = left[mul]  # [t, t2, s] = (t t2) . s
    rhs = left[:, left]  # [t, t2, s] = t . (t2 . s)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (2, int(bad[0][0]), int(bad[0][1]), int(bad[0][2]))
    lhs = right[add]  # [s, s2, t] = (s+s2) . t
    rhs = add[right[:, None, :], right[None, :, :]]  # [s, s2, t] = (s.t)+(s2.t)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (3, int(bad[0][0]), int(bad[0][1]), int(bad[0][2]))
    lhs = right[:, mul]  # [s, t, t2] = s . (t t2)
    rhs = right[right]  # [s, t, t2] = (s . t) . t2
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (4, int(bad[0][0]), int(bad[0][1]), int(bad[0][2]))
    lhs = right[left]  # [t, s, t2] = (t . s) . t2
    rhs = left[:, right]  # [t, s, t2] = t . (s . t2)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (5, int(bad[0][0]), int(bad[0][1]), int(bad[0][2]))
    return (0, -1, -1, -1)


def involutory_action_witness(left, right, star_s, star_t):
    # (s t)^* = t^{op*} s^*  for the right action
    lhs = star_s[right]  # [s, t]
    rhs = left[star_t][:, star_s].T  # [s, t] = left[star_t[t], star_s[s]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return (int(bad[0][0]), int(bad[0][1]))
    return (-1, -1)


def locally_hermitian_witness(mul, left, right, star_s, star_t):
    """e s e^dg = e s^* e^dg for every idempotent e of T; witness (e, s)."""
    idem = np.flatnonzero(idempotent_mask(mul))
    for e in idem:
        ed = star_t[e]
        lhs = right[left[e], ed]  # [(e s)] ed
        rhs = right[left[e, star_s], ed]
        bad = np.flatnonzero(lhs != rhs)
        if bad.size:
            return (int(e), int(bad[0]))
    return (-1, -1)
