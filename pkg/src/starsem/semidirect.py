"""Bilateral actions and involutory semidirect products of finite semigroups.

S is acted on from both sides by T. Products live on pairs (s, t) with

    (s1, t1)(s2, t2) = (s1.t2 + t1.s2, t1 t2)

where + is S's operation, t.s the left and s.t the right action. All laws
are validated from the stored tables; nothing is trusted.
"""

import numpy as np

from ._accel import kernels
from .errors import ParseError
from .involution import InvolutionSemigroup, validate_involution
from .semigroups import FiniteSemigroup, semigroup_from_text, semigroup_to_text


class BilateralAction:
    def __init__(self, S: FiniteSemigroup, T: FiniteSemigroup, left, right):
        left = np.asarray(left, dtype=np.int32)
        right = np.asarray(right, dtype=np.int32)
        if left.shape != (T.n, S.n):
            raise ValueError(f"left table must be {T.n}x{S.n}")
        if right.shape != (S.n, T.n):
            raise ValueError(f"right table must be {S.n}x{T.n}")
        if left.size and not (0 <= left.min() and left.max() < S.n):
            raise ValueError("left table entries out of range")
        if right.size and not (0 <= right.min() and right.max() < S.n):
            raise ValueError("right table entries out of range")
        self.S = S
        self.T = T
        self.left = left
        self.right = right
        self.left.setflags(write=False)
        self.right.setflags(write=False)

    def act_left(self, t: int, s: int) -> int:
        return int(self.left[t, s])

    def act_right(self, s: int, t: int) -> int:
        return int(self.right[s, t])

    def __eq__(self, other):
        if not isinstance(other, BilateralAction):
            return NotImplemented
        return (
            self.S == other.S
            and self.T == other.T
            and np.array_equal(self.left, other.left)
            and np.array_equal(self.right, other.right)
        )

    def __repr__(self):
        return f"BilateralAction(|S|={self.S.n}, |T|={self.T.n})"


def validate_action(action: BilateralAction):
    """Check the five bilateral-action laws; (True, None) or (False, witness).

    The witness is (law, i, j, k); index meaning per law as documented in the
    kernel (1: left distributivity, 2: left composition, 3: right
    distributivity, 4: right composition, 5: compatibility).
    """
    law, i, j, k = kernels.action_law_witness(
        action.S.table, action.T.table, action.left, action.right
    )
    if law == 0:
        return True, None
    return False, (law, i, j, k)


def _check_stars(action, star_s, star_t):
    star_s = np.asarray(star_s, dtype=np.int32)
    star_t = np.asarray(star_t, dtype=np.int32)
    bad = validate_involution(action.S, star_s)
    if bad is not None:
        raise ValueError(f"star on S is not an involution: {bad}")
    bad = validate_involution(action.T, star_t)
    if bad is not None:
        raise ValueError(f"star on T is not an involution: {bad}")
    return star_s, star_t


def validate_involutory(action: BilateralAction, star_s, star_t):
    """Check (s t)^* = t^dg s^*; the left-action twin follows by starring.

    Returns (True, None) or (False, (s, t)).
    """
    star_s, star_t = _check_stars(action, star_s, star_t)
    s, t = kernels.involutory_action_witness(action.left, action.right, star_s, star_t)
    if s == -1:
        return True, None
    return False, (s, t)


def sandwich_check(action: BilateralAction, star_s, star_t):
    """Sandwich identity (t1 s t2)^* = t2^dg s^* t1^dg on all triples.

    A consequence of the involutory-action law; checked directly as an
    internal consistency test. Returns (True, None) or (False, (t1, s, t2)).
    """
    star_s, star_t = _check_stars(action, star_s, star_t)
    left, right = action.left, action.right
    lhs = star_s[right[left]]  # [t1, s, t2] = ((t1 s) t2)^*
    twisted = left[star_t][:, star_s]  # [t, s] = t^dg s^*
    rhs = right[twisted][:, :, star_t]  # [t2, s, t1]
    bad = np.argwhere(lhs != np.transpose(rhs, (2, 1, 0)))
    if bad.size:
        t1, s, t2 = map(int, bad[0])
        return False, (t1, s, t2)
    return True, None


def is_locally_hermitian(action: BilateralAction, star_s, star_t):
    """e s e^dg = e s^* e^dg for every idempotent e of T.

    Returns (True, None) or (False, (e, s)). On success also confirms the
    sandwiched elements are star-fixed, which the laws already imply.
    """
    star_s, star_t = _check_stars(action, star_s, star_t)
    ok, witness = validate_involutory(action, star_s, star_t)
    if not ok:
        raise ValueError(f"action is not involutory, witness {witness}")
    e, s = kernels.locally_hermitian_witness(
        action.T.table, action.left, action.right, star_s, star_t
    )
    if e != -1:
        return False, (int(e), int(s))
    idem = np.flatnonzero(kernels.idempotent_mask(action.T.table))
    for e in idem:
        sandwiched = action.right[action.left[e], star_t[e]]
        assert np.array_equal(star_s[sandwiched], sandwiched)
    return True, None


class InvolutorySdp:
    def __init__(self, action, star_s, star_t, product, locally_hermitian):
        self.action = action
        self.star_s = star_s
        self.star_t = star_t
        self.product = product  # InvolutionSemigroup over pairs (s, t)
        self.locally_hermitian = locally_hermitian

    def pair_index(self, s: int, t: int) -> int:
        return s * self.action.T.n + t

    def pair_of(self, i: int):
        return divmod(i, self.action.T.n)

    def __repr__(self):
        flag = "locally hermitian" if self.locally_hermitian else "not locally hermitian"
        return f"InvolutorySdp(n={self.product.n}, {flag})"


def build_sdp(action: BilateralAction, star_s, star_t) -> InvolutorySdp:
    """Assemble the pair semigroup and its involution (s, t) -> (s^*, t^dg).

    Associativity and the involution laws are re-verified by the
    constructors. Raises ValueError when the action or stars are invalid.
    """
    ok, witness = validate_action(action)
    if not ok:
        raise ValueError(f"invalid action, law violation {witness}")
    star_s, star_t = _check_stars(action, star_s, star_t)
    ok, witness = validate_involutory(action, star_s, star_t)
    if not ok:
        raise ValueError(f"action is not involutory, witness {witness}")
    add, mul = action.S.table, action.T.table
    nS, nT = action.S.n, action.T.n
    s1 = np.arange(nS)[:, None, None, None]
    t1 = np.arange(nT)[None, :, None, None]
    s2 = np.arange(nS)[None, None, :, None]
    t2 = np.arange(nT)[None, None, None, :]
    spart = add[action.right[s1, t2], action.left[t1, s2]]
    table = (spart * nT + mul[t1, t2]).reshape(nS * nT, nS * nT)
    star = (star_s[:, None] * nT + star_t[None, :]).reshape(-1)
    labels = None
    if action.S.labels is not None and action.T.labels is not None:
        labels = [
            f"({ls},{lt})" for ls in action.S.labels for lt in action.T.labels
        ]
    product = InvolutionSemigroup(FiniteSemigroup(table, labels=labels), star)
    lh, _ = is_locally_hermitian(action, star_s, star_t)
    return InvolutorySdp(action, star_s, star_t, product, lh)


def _k_fold_products(T: FiniteSemigroup, k: int):
    cur = np.arange(T.n)
    for _ in range(k - 1):
        cur = np.unique(T.table[np.ix_(cur, np.arange(T.n))])
    return cur


def hermitian_rotation_check(sdp: InvolutorySdp, k: int, budget: int = 200_000, seed: int = 0):
    """Rotation identity p q s u v = p u^dg s^* q^dg v for deep T-factors.

    p, q, u, v range over products of at least k elements of T and s over S.
    Exhaustive when |P_k|^4 |S| fits the budget, otherwise a seeded sample of
    that many tuples. Returns (True, None) or (False, (p, q, s, u, v)).
    """
    action = sdp.action
    star_s, star_t = sdp.star_s, sdp.star_t
    mul, left, right = action.T.table, action.left, action.right
    pk = _k_fold_products(action.T, k)
    total = len(pk) ** 4 * action.S.n
    if total <= budget:
        tuples = np.array(
            np.meshgrid(pk, pk, np.arange(action.S.n), pk, pk, indexing="ij")
        ).reshape(5, -1)
    else:
        rng = np.random.default_rng(seed)
        tuples = np.stack(
            [
                rng.choice(pk, size=budget),
                rng.choice(pk, size=budget),
                rng.integers(0, action.S.n, size=budget),
                rng.choice(pk, size=budget),
                rng.choice(pk, size=budget),
            ]
        )
    p, q, s, u, v = tuples
    lhs = left[mul[p, q], right[s, mul[u, v]]]
    rhs = left[mul[p, star_t[u]], right[star_s[s], mul[star_t[q], v]]]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        i = int(bad[0])
        return False, (int(p[i]), int(q[i]), int(s[i]), int(u[i]), int(v[i]))
    return True, None


# ------------------------------------------------------------------ text IO


def action_to_text(action: BilateralAction, star_s=None, star_t=None) -> str:
    parts = [
        semigroup_to_text(action.S, star=None if star_s is None else list(map(int, star_s))),
        semigroup_to_text(action.T, star=None if star_t is None else list(map(int, star_t))),
        "left:",
        "\n".join(" ".join(str(int(x)) for x in row) for row in action.left),
        "right:",
        "\n".join(" ".join(str(int(x)) for x in row) for row in action.right),
    ]
    return "\n".join(parts) + "\n"


def action_from_text(text: str):
    """Parse an action file; returns (action, star_s, star_t), stars optional."""
    lines = text.splitlines()
    size_rows = [i for i, ln in enumerate(lines) if ln.strip().startswith("size:")]
    left_rows = [i for i, ln in enumerate(lines) if ln.strip() == "left:"]
    right_rows = [i for i, ln in enumerate(lines) if ln.strip() == "right:"]
    if len(size_rows) != 2 or len(left_rows) != 1 or len(right_rows) != 1:
        raise ParseError("expected two semigroup blocks, one left: and one right:")
    s_text = "\n".join(lines[size_rows[0] : size_rows[1]])
    t_text = "\n".join(lines[size_rows[1] : left_rows[0]])
    S, star_s = semigroup_from_text(s_text)
    T, star_t = semigroup_from_text(t_text)

    def table(rows, want_rows, want_cols, what):
        out = []
        for ln in rows:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            try:
                out.append([int(x) for x in ln.split()])
            except ValueError as exc:
                raise ParseError(f"bad {what} row {ln!r}") from exc
        if len(out) != want_rows or any(len(r) != want_cols for r in out):
            raise ParseError(f"{what} table must be {want_rows}x{want_cols}")
        return out

    left = table(lines[left_rows[0] + 1 : right_rows[0]], T.n, S.n, "left")
    right = table(lines[right_rows[0] + 1 :], S.n, T.n, "right")
    return BilateralAction(S, T, left, right), star_s, star_t
