"""Triple product property checks, packing sums and the omega inequality solver."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .budget import check_budget
from .groups import Group, SymmetricGroup, conjugacy_class_count, parse_group_spec
from .partitions import hook_dimension, partition_count, partitions

MAX_HOOK_DEGREE = 20
SCAN_STEP = 1e-3
BISECT_TOL = 1e-9
# |log-ratio| below this counts as equality when classifying the sign of f
SIGN_TOL = 1e-12


@dataclass(frozen=True)
class Verdict:
    ok: bool
    counterexample: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _as_subset(G: Group, xs: Iterable[int], name: str) -> tuple[int, ...]:
    out = tuple(sorted(set(int(x) for x in xs)))
    if not out:
        raise ValueError(f"{name} must be nonempty")
    if out[0] < 0 or out[-1] >= G.order:
        raise ValueError(f"{name} has an element outside the group")
    return out


@dataclass(frozen=True)
class TPPInstance:
    group: Group
    S: tuple[int, ...]
    T: tuple[int, ...]
    U: tuple[int, ...]

    def __post_init__(self):
        for name in "STU":
            object.__setattr__(self, name, _as_subset(self.group, getattr(self, name), name))

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.S), len(self.T), len(self.U)


@dataclass(frozen=True)
class STPPInstance:
    group: Group
    triples: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]

    def __post_init__(self):
        if not self.triples:
            raise ValueError("need at least one triple")
        fixed = tuple(
            tuple(_as_subset(self.group, X, f"{name}_{i}") for X, name in zip(tr, "STU"))
            for i, tr in enumerate(self.triples)
        )
        object.__setattr__(self, "triples", fixed)

    def tpp(self, i: int) -> TPPInstance:
        return TPPInstance(self.group, *self.triples[i])


def quotient_set(G: Group, S: Iterable[int]) -> frozenset[int]:
    """``{x y^-1 : x, y in S}``."""
    S = list(S)
    inv = [G.inv(y) for y in S]
    return frozenset(G.mul(x, yi) for x in S for yi in inv)


def verify_tpp(inst: TPPInstance, budget: int | None = None) -> Verdict:
    """``s t u = 1`` with s, t, u from the quotient sets forces ``s = t = u = 1``."""
    G = inst.group
    QS, QT, QU = (sorted(quotient_set(G, X)) for X in (inst.S, inst.T, inst.U))
    check_budget(len(QS) * len(QT) * len(QU), budget, "TPP check")
    members = np.zeros(G.order, dtype=bool)
    members[QU] = True
    for s in QS:
        for t in QT:
            u = G.inv(G.mul(s, t))
            if members[u] and (s, t, u) != (0, 0, 0):
                return Verdict(False, (s, t, u), "s t u = 1 for a nonidentity triple of quotients")
    return Verdict(True)


def _left_quotients(G: Group, A: Sequence[int], B: Sequence[int]) -> dict[int, tuple[int, int]]:
    """``{a^-1 b : a in A, b in B}`` with one witness pair per value (first found)."""
    out: dict[int, tuple[int, int]] = {}
    for a in A:
        ai = G.inv(a)
        for b in B:
            out.setdefault(G.mul(ai, b), (a, b))
    return out


def stpp_cost(inst: STPPInstance) -> int:
    sizes = [tuple(len(X) for X in tr) for tr in inst.triples]
    st = sum(s * t for s, t, _ in sizes)
    tu = sum(t * u for _, t, u in sizes)
    su = sum(s * u for s, _, u in sizes)
    return st * tu * su


def verify_stpp(inst: STPPInstance, budget: int | None = None) -> Verdict:
    """Each triple has the TPP, and ``s^-1 s' t^-1 t' u^-1 u' = 1`` only when i = j = k
    (s in S_i, s' in S_j, t in T_j, t' in T_k, u in U_k, u' in U_i).

    The counterexample for the cross condition is ``(i, j, k, s, s', t, t', u, u')``.
    """
    G = inst.group
    check_budget(stpp_cost(inst), budget, "STPP check")
    for i in range(len(inst.triples)):
        v = verify_tpp(inst.tpp(i), budget)
        if not v:
            return Verdict(False, (i,) + v.counterexample, f"triple {i} fails the TPP")
    Ss = [tr[0] for tr in inst.triples]
    Ts = [tr[1] for tr in inst.triples]
    Us = [tr[2] for tr in inst.triples]
    k_ = len(inst.triples)
    A = {(i, j): _left_quotients(G, Ss[i], Ss[j]) for i in range(k_) for j in range(k_)}
    B = {(j, k): _left_quotients(G, Ts[j], Ts[k]) for j in range(k_) for k in range(k_)}
    C = {(k, i): _left_quotients(G, Us[k], Us[i]) for k in range(k_) for i in range(k_)}
    for i in range(k_):
        for j in range(k_):
            for k in range(k_):
                if i == j == k:
                    continue
                cq = C[k, i]
                for a, (s, s2) in A[i, j].items():
                    for b, (t, t2) in B[j, k].items():
                        c = G.inv(G.mul(a, b))
                        if c in cq:
                            u, u2 = cq[c]
                            return Verdict(False, (i, j, k, s, s2, t, t2, u, u2), "cross-index product is 1")
    return Verdict(True)


@dataclass(frozen=True)
class PackingReport:
    sums: tuple[int, int, int]  # (sum |S||T|, sum |T||U|, sum |S||U|)
    ratios: tuple[Fraction, Fraction, Fraction]
    within_bound: bool


def packing_check(inst: STPPInstance) -> PackingReport:
    sizes = [tuple(len(X) for X in tr) for tr in inst.triples]
    sums = (
        sum(s * t for s, t, _ in sizes),
        sum(t * u for _, t, u in sizes),
        sum(s * u for s, _, u in sizes),
    )
    n = inst.group.order
    ratios = tuple(Fraction(x, n) for x in sums)
    return PackingReport(sums, ratios, all(x <= n for x in sums))


@dataclass(frozen=True)
class NecTPPReport:
    ratio: float  # |G| / (|S||T||U|)^(2/3), may under/overflow to 0 or inf
    log_ratio: float
    classes: int
    vacuous: bool


def nec_tpp_check(order: int, sizes: Sequence[int], classes: int) -> NecTPPReport:
    """Is ``|G| / (|S||T||U|)^(2/3) >= k``?  Decided exactly as ``|G|^3 >= k^3 (|S||T||U|)^2``."""
    prod = math.prod(sizes)
    vacuous = order**3 >= classes**3 * prod**2
    log_ratio = math.log(order) - 2 * math.log(prod) / 3
    try:
        ratio = math.exp(log_ratio)
    except OverflowError:
        ratio = math.inf
    return NecTPPReport(ratio, log_ratio, classes, vacuous)


def class_count(G: Group) -> int:
    """Conjugacy class count, using p(n) for a bare symmetric group."""
    if G.factors is not None and len(G.factors) == 1 and G.factors[0][0] == "sym":
        return partition_count(G.factors[0][1][0])
    return conjugacy_class_count(G)


def nec_tpp_check_instance(inst: TPPInstance) -> NecTPPReport:
    G = inst.group
    return nec_tpp_check(G.order, inst.sizes, class_count(G))


# --------------------------------------------------------------------------
# character degrees and the omega inequality


class UnsupportedDescriptor(ValueError):
    pass


@dataclass(frozen=True)
class DegreeMultiset:
    """Multiset of irreducible degrees stored as ``{degree: multiplicity}``."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, degrees: Iterable[int] | dict[int, int]) -> "DegreeMultiset":
        c = Counter(degrees)
        if any(int(d) != d or d < 1 for d in c) or any(m < 1 for m in c.values()):
            raise ValueError("degrees must be positive integers")
        return cls(tuple(sorted((int(d), int(m)) for d, m in c.items())))

    @classmethod
    def parse(cls, text: str) -> "DegreeMultiset":
        return cls.of(int(x) for x in text.split(",") if x.strip())

    @property
    def count(self) -> int:
        return sum(m for _, m in self.counts)

    @property
    def square_sum(self) -> int:
        return sum(m * d * d for d, m in self.counts)

    def as_list(self) -> list[int]:
        return [d for d, m in self.counts for _ in range(m)]

    def validate(self, order: int) -> None:
        if self.square_sum != order:
            raise ValueError(f"sum of squared degrees is {self.square_sum}, expected {order}")

    def __mul__(self, other: "DegreeMultiset") -> "DegreeMultiset":
        """Degrees of a direct product: all pairwise products."""
        c: Counter = Counter()
        for d, m in self.counts:
            for e, n in other.counts:
                c[d * e] += m * n
        return DegreeMultiset.of(dict(c))


def symmetric_degrees(n: int) -> DegreeMultiset:
    if n > MAX_HOOK_DEGREE:
        raise UnsupportedDescriptor(f"sym:{n} exceeds the hook-length limit {MAX_HOOK_DEGREE}")
    return DegreeMultiset.of(hook_dimension(lam) for lam in partitions(n))


def char_degrees(G: Group | str, degrees: DegreeMultiset | None = None) -> DegreeMultiset:
    """Irreducible degrees for abelian and symmetric factors and their products.

    Other groups need ``degrees`` supplied; it is validated against ``|G|``.
    """
    if isinstance(G, str):
        G = parse_group_spec(G)
    if degrees is None:
        if G.factors is None:
            raise UnsupportedDescriptor("group has no descriptor; supply degrees")
        out = DegreeMultiset.of([1])
        for kind, args in G.factors:
            if kind in ("cyclic", "abelian"):
                part = DegreeMultiset.of({1: math.prod(args)})
            elif kind == "sym":
                part = symmetric_degrees(args[0])
            else:
                raise UnsupportedDescriptor(f"no degree formula for {kind}; supply degrees")
            out = out * part
        degrees = out
    degrees.validate(G.order)
    return degrees


@dataclass(frozen=True)
class OmegaResult:
    omega_star: float
    monotone: bool
    sign_changes: tuple[float, ...] = ()
    infeasible: bool = False  # f > 0 on the whole interval

    @property
    def has_bound(self) -> bool:
        return self.omega_star < 3


def _lse(x: np.ndarray, logw: np.ndarray) -> np.ndarray:
    """Row-wise log(sum(w * exp(x)))."""
    y = x + logw
    m = y.max(axis=-1, keepdims=True)
    return (m + np.log(np.exp(y - m).sum(axis=-1, keepdims=True)))[..., 0]


def omega_log_gap(sizes: Sequence[Sequence[int]], degrees: DegreeMultiset, omegas) -> np.ndarray:
    """``log sum (stu)^(w/3) - log sum d^w``; same sign as f(w)."""
    w = np.atleast_1d(np.asarray(omegas, dtype=float))[:, None]
    lstu = np.array([sum(math.log(x) for x in tr) for tr in sizes])
    ld = np.array([math.log(d) for d, _ in degrees.counts])
    lm = np.array([math.log(m) for _, m in degrees.counts])
    return _lse(w * lstu / 3, np.zeros_like(lstu)) - _lse(w * ld, lm)


def omega_solve(sizes: Sequence[Sequence[int]], degrees: DegreeMultiset) -> OmegaResult:
    """Largest w in [2, 3] at which ``sum (stu)^(w/3) <= sum d^w`` still holds.

    The inequality must hold at the true exponent, so this is an upper bound
    on omega; 3 means no bound. If it fails everywhere on [2, 3] the instance
    cannot come from a real construction and is flagged ``infeasible``.
    """
    if not sizes or any(x < 1 for tr in sizes for x in tr):
        raise ValueError("triple sizes must be positive")
    grid = np.linspace(2.0, 3.0, int(round(1 / SCAN_STEP)) + 1)
    holds = omega_log_gap(sizes, degrees, grid) <= SIGN_TOL
    flips = np.flatnonzero(holds[1:] != holds[:-1])
    changes = tuple(float((grid[i] + grid[i + 1]) / 2) for i in flips)
    monotone = len(flips) <= 1
    if not holds.any():
        return OmegaResult(3.0, monotone, changes, infeasible=True)
    last = int(np.flatnonzero(holds)[-1])
    if last == len(grid) - 1:
        return OmegaResult(3.0, monotone, changes)
    lo, hi = float(grid[last]), float(grid[last + 1])
    while hi - lo > BISECT_TOL:
        mid = (lo + hi) / 2
        if omega_log_gap(sizes, degrees, mid)[0] <= SIGN_TOL:
            lo = mid
        else:
            hi = mid
    return OmegaResult(lo, monotone, changes)


# --------------------------------------------------------------------------
# instance files


def _element(G: Group, x) -> int:
    if isinstance(x, int):
        return x
    if isinstance(G, SymmetricGroup):
        return G.index(list(x))
    raise ValueError(f"cannot read element {x!r}: use integer indices")


def load_instance(text: str) -> STPPInstance:
    """``{"group": spec, "triples": [{"S": [...], "T": [...], "U": [...]}]}``.

    Elements are indices; for symmetric groups a list of 0-based images is
    also accepted.
    """
    data = json.loads(text)
    G = parse_group_spec(data["group"])
    triples = tuple(tuple(tuple(_element(G, x) for x in tr[k]) for k in "STU") for tr in data["triples"])
    return STPPInstance(G, triples)


def dump_instance(inst: STPPInstance) -> str:
    if inst.group.spec is None:
        raise ValueError("group has no spec string")
    triples = [{k: list(X) for k, X in zip("STU", tr)} for tr in inst.triples]
    return json.dumps({"group": inst.group.spec, "triples": triples})
