"""Numba-compiled table kernels (hot path).

Loop twins of `_kernels_np`; same names, same witness conventions. Compiled
lazily with cache=True so repeat runs skip compilation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

IMPL = "numba"


@njit(cache=True)
def _assoc(table):
    n = table.shape[0]
    for i in range(n):
        for j in range(n):
            ij = table[i, j]
            for k in range(n):
                if table[ij, k] != table[i, table[j, k]]:
                    return (i, j, k)
    return (-1, -1, -1)


def assoc_witness(table):
    i, j, k = _assoc(table)
    return (int(i), int(j), int(k))


@njit(cache=True)
def _comm(table):
    n = table.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            if table[i, j] != table[j, i]:
                return (i, j)
    return (-1, -1)


def commutative_witness(table):
    i, j = _comm(table)
    return (int(i), int(j))


def idempotent_mask(table):
    n = table.shape[0]
    idx = np.arange(n)
    return table[idx, idx] == idx


@njit(cache=True)
def _loc_triv(table):
    n = table.shape[0]
    for e in range(n):
        if table[e, e] != e:
            continue
        for s in range(n):
            if table[table[e, s], e] != e:
                return (e, s)
    return (-1, -1)


def locally_trivial_witness(table):
    e, s = _loc_triv(table)
    return (int(e), int(s))


@njit(cache=True)
def _aperiodic(table, t_max):
    n = table.shape[0]
    p = np.arange(n)
    for t in range(1, t_max + 1):
        same = True
        for x in range(n):
            nxt = table[p[x], x]
            if nxt != p[x]:
                same = False
            p[x] = nxt
        if same:
            return t
    return -1


def aperiodicity_index(table, t_max):
    return int(_aperiodic(table, int(t_max)))


@njit(cache=True)
def _involution(table, star):
    n = table.shape[0]
    for i in range(n):
        if star[star[i]] != i:
            return (1, i, -1)
    for i in range(n):
        for j in range(n):
            if star[table[i, j]] != table[star[j], star[i]]:
                return (2, i, j)
    return (0, -1, -1)


def involution_witness(table, star):
    c, i, j = _involution(table, star)
    return (int(c), int(i), int(j))


@njit(cache=True)
def _action_laws(add, mul, left, right):
    n_s = add.shape[0]
    n_t = mul.shape[0]
    for t in range(n_t):
        for s in range(n_s):
            for s2 in range(n_s):
                if left[t, add[s, s2]] != add[left[t, s], left[t, s2]]:
                    return (1, t, s, s2)
    for t in range(n_t):
        for t2 in range(n_t):
            for s in range(n_s):
                if left[mul[t, t2], s] != left[t, left[t2, s]]:
                    return (2, t, t2, s)
    for s in range(n_s):
        for s2 in range(n_s):
            for t in range(n_t):
                if right[add[s, s2], t] != add[right[s, t], right[s2, t]]:
                    return (3, s, s2, t)
    for s in range(n_s):
        for t in range(n_t):
            for t2 in range(n_t):
                if right[s, mul[t, t2]] != right[right[s, t], t2]:
                    return (4, s, t, t2)
    for t in range(n_t):
        for s in range(n_s):
            for t2 in range(n_t):
                if right[left[t, s], t2] != left[t, right[s, t2]]:
                    return (5, t, s, t2)
    return (0, -1, -1, -1)


def action_law_witness(add, mul, left, right):
    a, b, c, d = _action_laws(add, mul, left, right)
    return (int(a), int(b), int(c), int(d))


@njit(cache=True)
def _inv_action(left, right, star_s, star_t):
    n_s = right.shape[0]
    n_t = right.shape[1]
    for s in range(n_s):
        for t in range(n_t):
            if star_s[right[s, t]] != left[star_t[t], star_s[s]]:
                return (s, t)
    return (-1, -1)


def involutory_action_witness(left, right, star_s, star_t):
    s, t = _inv_action(left, right, star_s, star_t)
    return (int(s), int(t))


@njit(cache=True)
def _loc_herm(mul, left, right, star_s, star_t):
    n_t = mul.shape[0]
    n_s = right.shape[0]
    for e in range(n_t):
        if mul[e, e] != e:
            continue
        ed = star_t[e]
        for s in range(n_s):
            if right[left[e, s], ed] != right[left[e, star_s[s]], ed]:
                return (e, s)
    return (-1, -1)


def locally_hermitian_witness(mul, left, right, star_s, star_t):
    e, s = _loc_herm(mul, left, right, star_s, star_t)
    return (int(e), int(s))
