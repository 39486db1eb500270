"""Multiplicative matchings and border matchings: verification and constructions."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .budget import check_budget
from .groups import (
    Group,
    QuotientData,
    SymmetricGroup,
    build_cyclic,
    is_p_group,
    parse_group_spec,
    quotient,
    subgroup_closure,
)
from .jennings import NotAPGroup
from .tpp import STPPInstance, Verdict


@dataclass(frozen=True)
class Matching:
    """``s_i t_j u_k = 1`` exactly when ``i = j = k``."""

    group: Group
    s: tuple[int, ...]
    t: tuple[int, ...]
    u: tuple[int, ...]

    def __post_init__(self):
        if not len(self.s) == len(self.t) == len(self.u):
            raise ValueError("matching sequences must have equal length")
        for name in "stu":
            object.__setattr__(self, name, tuple(int(x) for x in getattr(self, name)))

    def __len__(self) -> int:
        return len(self.s)

    @property
    def border(self) -> bool:
        return False

    @property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        zero = (0,) * len(self)
        return zero, zero, zero


@dataclass(frozen=True)
class BorderMatching(Matching):
    """A matching in ``G x Z`` whose weight sums are nonnegative wherever the group product is 1."""

    a: tuple[int, ...] = ()
    b: tuple[int, ...] = ()
    c: tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        n = len(self.s)
        for name in "abc":
            w = tuple(int(x) for x in getattr(self, name)) or (0,) * n
            if len(w) != n:
                raise ValueError("weights must match the element sequences in length")
            object.__setattr__(self, name, w)

    @property
    def border(self) -> bool:
        return True

    @property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        return self.a, self.b, self.c


def _hits(m: Matching):
    """Every ``(i, j, k)`` with ``s_i t_j u_k = 1``, in lexicographic order."""
    G = m.group
    where: dict[int, list[int]] = {}
    for k, u in enumerate(m.u):
        where.setdefault(u, []).append(k)
    for i, s in enumerate(m.s):
        for j, t in enumerate(m.t):
            for k in where.get(G.inv(G.mul(s, t)), ()):
                yield i, j, k


def verify_matching(m: Matching, budget: int | None = None) -> Verdict:
    n = len(m)
    check_budget(n**3, budget, "matching check")
    hit = set()
    for i, j, k in _hits(m):
        if not i == j == k:
            return Verdict(False, (i, j, k), "off-diagonal product is 1")
        hit.add(i)
    for i in range(n):
        if i not in hit:
            return Verdict(False, (i, i, i), "diagonal product is not 1")
    return Verdict(True)


def verify_border(m: Matching, budget: int | None = None) -> Verdict:
    """Matching condition in ``G x Z`` plus positivity; counterexamples are ``(i, j, k)``."""
    n = len(m)
    check_budget(n**3, budget, "border matching check")
    a, b, c = m.weights
    diag = set()
    for i, j, k in _hits(m):
        w = a[i] + b[j] + c[k]
        if w < 0:
            return Verdict(False, (i, j, k), f"positivity fails: weight sum {w}")
        if w == 0:
            if not i == j == k:
                return Verdict(False, (i, j, k), "off-diagonal product is 1 with weight sum 0")
            diag.add(i)
    for i in range(n):
        if i not in diag:
            return Verdict(False, (i, i, i), "diagonal product is not 1 or has nonzero weight")
    return Verdict(True)


def verify_any(m: Matching, budget: int | None = None) -> Verdict:
    return verify_border(m, budget) if m.border else verify_matching(m, budget)


def cyclic_border(m: int) -> BorderMatching:
    """``x_i = (i, i^2)``, ``y_j = (j, j^2)``, ``z_k = (-2k, -2k^2)`` for i, j, k < ceil(m/2)."""
    if m < 1:
        raise ValueError("m must be positive")
    G = build_cyclic(m)
    half = range((m + 1) // 2)
    return BorderMatching(
        G,
        s=tuple(i % m for i in half),
        t=tuple(i % m for i in half),
        u=tuple(-2 * k % m for k in half),
        a=tuple(i * i for i in half),
        b=tuple(i * i for i in half),
        c=tuple(-2 * k * k for k in half),
    )


def transport(m: Matching, group: Group, image: Sequence[int]) -> Matching:
    """Push a matching along an injective homomorphism given as ``image[g]``."""
    s, t, u = ([image[x] for x in seq] for seq in (m.s, m.t, m.u))
    if m.border:
        return BorderMatching(group, s, t, u, m.a, m.b, m.c)
    return Matching(group, s, t, u)


class MatchingVerificationError(ValueError):
    def __init__(self, which: str, verdict: Verdict):
        super().__init__(f"{which} matching fails verification at {verdict.counterexample}: {verdict.detail}")
        self.verdict = verdict


def weight_scale(m: Matching) -> int:
    """``1 + max(0, -(min a + min b + min c))``: any positive quotient weight sum,
    multiplied by this, outweighs the most negative inner weight sum."""
    a, b, c = m.weights
    return 1 + max(0, -(min(a) + min(b) + min(c)))


def extend_matching(q: QuotientData, inner: Matching, outer: Matching, scale: int | None = None) -> Matching:
    """Combine a matching in N and one in G/N into one of size ``|inner| |outer|`` in G.

    With lifts ``X = lift(x_i')``, ``Y = lift(y_j')`` and ``Z = (X Y)^-1``:
    ``f = s_i X``, ``g = X^-1 t_j X Y``, ``h = (X Y)^-1 u_k (X Y) Z = (X Y)^-1 u_k``.
    Outer weights are multiplied by ``scale`` (default :func:`weight_scale`
    of the inner matching) before adding, which keeps positivity when the
    quotient product is 1 off the diagonal.
    """
    G = q.parent
    NG, embed = q.normal_group
    if inner.group.order != NG.order or outer.group.order != q.quotient.order:
        raise ValueError("matchings do not live in N and G/N")
    for which, m in (("inner", inner), ("outer", outer)):
        v = verify_any(m)
        if not v:
            raise MatchingVerificationError(which, v)
    border = inner.border or outer.border
    K = weight_scale(inner) if scale is None else scale
    s_in, t_in, u_in = ([embed[x] for x in seq] for seq in (inner.s, inner.t, inner.u))
    a_in, b_in, c_in = inner.weights
    a_out, b_out, c_out = outer.weights
    X = [q.lift(x) for x in outer.s]
    Y = [q.lift(y) for y in outer.t]
    XY = [G.mul(x, y) for x, y in zip(X, Y)]
    f, g, h, wa, wb, wc = [], [], [], [], [], []
    for i2 in range(len(outer)):
        xi = G.inv(X[i2])
        xyi = G.inv(XY[i2])
        for i in range(len(inner)):
            f.append(G.mul(s_in[i], X[i2]))
            g.append(G.mul_seq(xi, t_in[i], XY[i2]))
            h.append(G.mul(xyi, u_in[i]))
            wa.append(a_in[i] + K * a_out[i2])
            wb.append(b_in[i] + K * b_out[i2])
            wc.append(c_in[i] + K * c_out[i2])
    if border:
        return BorderMatching(G, f, g, h, wa, wb, wc)
    return Matching(G, f, g, h)


def identity_matching(G: Group, border: bool = True) -> Matching:
    return BorderMatching(G, (0,), (0,), (0,)) if border else Matching(G, (0,), (0,), (0,))


def pgroup_chain_border(G: Group, p: int) -> BorderMatching:
    """Border matching of size ``ceil(p/2)^n`` in a group of order p^n.

    Peels off ``N = <z>`` for the lowest-index central z of order p, recurses
    on G/N, then extends by ``cyclic_border(p)`` carried into N via ``i -> z^i``.
    """
    if not is_p_group(G, p):
        raise NotAPGroup(f"|G| = {G.order} is not a power of {p}")
    if G.order == 1:
        return identity_matching(G)
    z = next(g for g in G.center() if g != 0 and G.element_order(g) == p)
    N = subgroup_closure(G, [z])
    q = quotient(G, N)
    outer = pgroup_chain_border(q.quotient, p)
    NG, embed = q.normal_group
    pos = {g: idx for idx, g in enumerate(embed)}
    powers = [pos[G.power(z, i)] for i in range(p)]
    inner = transport(cyclic_border(p), NG, powers)
    return extend_matching(q, inner, outer)


# --------------------------------------------------------------------------
# singleton STPP correspondence


def matching_to_stpp(m: Matching) -> STPPInstance:
    """Singleton triples ``({1}, {s_i^-1}, {(s_i t_i)^-1})``.

    The cross condition for these reads ``s_j t_k u_i = 1 => i = j = k``,
    which is the matching condition.
    """
    G = m.group
    triples = [((0,), (G.inv(s),), (G.inv(G.mul(s, t)),)) for s, t in zip(m.s, m.t)]
    return STPPInstance(G, tuple(triples))


def stpp_to_matching(inst: STPPInstance) -> Matching:
    """Inverse correspondence: ``(x y^-1, y z^-1, z x^-1)`` for singleton triples ``({x}, {y}, {z})``."""
    G = inst.group
    s, t, u = [], [], []
    for S, T, U in inst.triples:
        if not len(S) == len(T) == len(U) == 1:
            raise ValueError("only singleton triples correspond to matchings")
        x, y, z = S[0], T[0], U[0]
        s.append(G.mul(x, G.inv(y)))
        t.append(G.mul(y, G.inv(z)))
        u.append(G.mul(z, G.inv(x)))
    return Matching(G, s, t, u)


# --------------------------------------------------------------------------
# files


def _read_seq(G: Group, items) -> tuple[list[int], list[int]]:
    """Items are ``[elem, weight]`` or a bare element; a symmetric-group element
    may also be written as its list of 0-based images."""
    elems, weights = [], []
    for it in items:
        e, w = (it, 0) if isinstance(it, int) else it
        if isinstance(e, list):
            if not isinstance(G, SymmetricGroup):
                raise ValueError("permutation elements need a symmetric group")
            e = G.index(e)
        elems.append(int(e))
        weights.append(int(w))
    return elems, weights


def load_matching(text: str, group: Group | None = None) -> Matching:
    """``{"group": spec, "border": bool, "s": [[elem, weight], ...], "t": ..., "u": ...}``."""
    data = json.loads(text)
    G = group if group is not None else parse_group_spec(data["group"])
    (s, a), (t, b), (u, c) = (_read_seq(G, data[k]) for k in "stu")
    for seq in (s, t, u):
        if any(not 0 <= x < G.order for x in seq):
            raise ValueError("matching element outside the group")
    if data.get("border", False):
        return BorderMatching(G, s, t, u, a, b, c)
    if any(a + b + c):
        raise ValueError("nonzero weights in a non-border matching")
    return Matching(G, s, t, u)


def dump_matching(m: Matching, spec: str | None = None) -> str:
    spec = spec or m.group.spec
    if spec is None:
        raise ValueError("group has no spec string")
    out = {"group": spec, "border": m.border}
    for name, seq, w in zip("stu", (m.s, m.t, m.u), m.weights):
        out[name] = [[x, y] for x, y in zip(seq, w)]
    return json.dumps(out)
