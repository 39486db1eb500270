"""Slice-rank upper bounds for group multiplication tensors.

All delta quantities are exact ``Fraction``s; the exponential tail bound is
evaluated in floating point only when reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .algebra import dim_at, ideal_power_dims
from .arith import factorize
from .fields import require_prime
from .groups import (
    Factor,
    Group,
    NotNormalError,
    Subgroup,
    build_abelian,
    build_cyclic,
    build_unitriangular,
    direct_product,
    is_normal,
    is_p_group,
)
from .jennings import PDegreeVector, degree_stats, jennings_ideal_dims, p_degrees


@dataclass(frozen=True)
class DeltaReport:
    delta_g: Fraction
    delta_prime: Fraction
    n: int
    ell: int
    s: int


def delta(r: PDegreeVector) -> DeltaReport:
    """``delta_G = (sum j r_j)^2 / sum j^2 r_j`` and its scale-free form ``delta_G / n``."""
    if r.n == 0:
        raise ValueError("delta is undefined for an all-zero p-degree vector")
    first = sum(j * rj for j, rj in enumerate(r.r, 1))
    second = sum(j * j * rj for j, rj in enumerate(r.r, 1))
    d = Fraction(first * first, second)
    return DeltaReport(d, d / r.n, r.n, r.length, r.max_degree)


def hoeffding_bound(order: int, delta_g) -> float:
    """``3 |G| exp(-delta_G / 18)``."""
    if delta_g <= 0:
        raise ValueError("delta must be positive")
    return math.exp(math.log(3) + math.log(order) - float(delta_g) / 18)


def best_split(dims: list[int]) -> tuple[int, tuple[int, int]]:
    """Minimize ``codim I^a + codim I^b + dim I^(a+b)`` over ``0 <= a <= b < len(dims)``.

    Ties go to the lexicographically smallest ``(a, b)``.
    """
    total = dims[0]
    best, arg = None, (0, 0)
    for a in range(len(dims)):
        for b in range(a, len(dims)):
            value = (total - dims[a]) + (total - dims[b]) + dim_at(dims, a + b)
            if best is None or value < best:
                best, arg = value, (a, b)
    return best, arg


@dataclass
class BoundReport:
    order: int
    p: int
    dims: list[int]
    ideal_exact: int
    argmin: tuple[int, int]
    trivial: int
    semisimple: bool
    p_degrees: PDegreeVector | None = None
    delta: DeltaReport | None = None
    hoeffding: float | None = None


def ideal_bound(G: Group, p: int) -> BoundReport:
    """Exact best bound from powers of the augmentation ideal of F_p[G].

    When p does not divide |G| the chain stabilizes immediately and the
    result is the trivial bound |G|, flagged ``semisimple``.
    """
    require_prime(p)
    dims = ideal_power_dims(G, p)
    value, arg = best_split(dims)
    report = BoundReport(
        order=G.order,
        p=p,
        dims=dims,
        ideal_exact=value,
        argmin=arg,
        trivial=G.order,
        semisimple=G.order % p != 0,
    )
    if G.order > 1 and is_p_group(G, p):
        r = p_degrees(G, p)
        report.p_degrees = r
        report.delta = delta(r)
        report.hoeffding = hoeffding_bound(G.order, report.delta.delta_g)
    return report


def degree_bound(r: PDegreeVector) -> tuple[int, tuple[int, int]]:
    """Best ideal-power bound computed from p-degrees alone via monomial counting."""
    return best_split(jennings_ideal_dims(r))


def normal_extension_bound(G: Group, N: Subgroup, p: int, a: int | None = None, b: int | None = None) -> int:
    """``|G/N| (codim I^a + codim I^b + dim I^(a+b))`` with I the augmentation ideal of F_p[N].

    With ``a`` and ``b`` omitted the best split is used.
    """
    ok, witness = is_normal(G, N)
    if not ok:
        raise NotNormalError(*witness)
    NG, _ = N.as_group
    dims = ideal_power_dims(NG, p)
    index = G.order // N.order
    if a is None or b is None:
        return index * best_split(dims)[0]
    n = dims[0]
    return index * ((n - dim_at(dims, a)) + (n - dim_at(dims, b)) + dim_at(dims, a + b))


class NotNilpotentError(ValueError):
    pass


def sylow_factors(G: Group) -> dict[int, Group]:
    """Sylow subgroups read off the direct-product descriptor of ``G``."""
    if G.factors is None:
        raise NotNilpotentError("group has no direct-product descriptor")
    parts: dict[int, list[Factor]] = {}
    for kind, args in G.factors:
        if kind in ("cyclic", "abelian"):
            for m in args:
                for q, e in factorize(m).items():
                    parts.setdefault(q, []).append(("cyclic", (q**e,)))
        elif kind == "ut":
            parts.setdefault(args[1], []).append((kind, args))
        elif kind == "sym" and args[0] <= 2:
            if args[0] == 2:
                parts.setdefault(2, []).append(("cyclic", (2,)))
        else:
            raise NotNilpotentError(f"{kind}:{args} is not nilpotent")
    return {q: _build_from_factors(fs) for q, fs in sorted(parts.items())}


def _build_from_factors(factors: list[Factor]) -> Group:
    cyclic = [args[0] for kind, args in factors if kind == "cyclic"]
    groups: list[Group] = []
    if cyclic:
        groups.append(build_abelian(cyclic) if len(cyclic) > 1 else build_cyclic(cyclic[0]))
    groups += [build_unitriangular(*args) for kind, args in factors if kind == "ut"]
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def nilpotent_bound_table(G: Group) -> dict[int, int]:
    """For each prime q, ``|G/P| * ideal_bound(P, q)`` with P the Sylow q-subgroup."""
    out = {}
    for q, P in sylow_factors(G).items():
        out[q] = (G.order // P.order) * ideal_bound(P, q).ideal_exact
    return out


def nilpotent_bound(G: Group) -> tuple[int, int | None]:
    """Best Sylow-extension bound and the prime achieving it (smallest prime on ties)."""
    table = nilpotent_bound_table(G)
    if not table:
        return G.order, None
    q = min(table, key=lambda k: (table[k], k))
    return table[q], q


def _exact(x) -> Fraction:
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    return Fraction(str(x))


@dataclass
class FamilyClassification:
    mean: Fraction
    variance: Fraction
    ell: int
    delta: DeltaReport
    bounded_variance: bool | None = None
    linear_expectation: bool | None = None
    bounded_length: bool | None = None
    # conclusions of the three lemmas, evaluated exactly
    variance_floor_holds: bool | None = None
    expectation_floor_holds: bool | None = None
    length_floor_holds: bool = False
    constants: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        """True if any hypothesis of the main p-group theorem holds for the given constants."""
        return bool(self.bounded_variance or self.linear_expectation or self.bounded_length)


def classify_family(r: PDegreeVector, M=None, c=None, L=None) -> FamilyClassification:
    """Check ``Var <= M``, ``E >= l/c`` and ``l <= L`` and the matching delta floors
    ``n/(1+M)``, ``n/c`` and ``n/l``."""
    mean, var = degree_stats(r)
    d = delta(r)
    n, ell = r.n, r.length
    out = FamilyClassification(mean, var, ell, d, constants={"M": M, "c": c, "L": L})
    out.length_floor_holds = d.delta_g >= Fraction(n, ell)
    if M is not None:
        M = _exact(M)
        out.bounded_variance = var <= M
        if out.bounded_variance:
            out.variance_floor_holds = d.delta_g >= n / (1 + M)
    if c is not None:
        c = _exact(c)
        out.linear_expectation = mean >= ell / c
        if out.linear_expectation:
            out.expectation_floor_holds = d.delta_g >= n / c
    if L is not None:
        out.bounded_length = ell <= L
    return out


def delta_prime_real(weights: Iterable[float]) -> float:
    """Scale-free delta for real nonnegative weights ``r_1, r_2, ...``."""
    w = list(weights)
    s0 = math.fsum(w)
    s1 = math.fsum(i * x for i, x in enumerate(w, 1))
    s2 = math.fsum(i * i * x for i, x in enumerate(w, 1))
    return s1 * s1 / (s2 * s0)


def synthetic_delta_scan(ells: Iterable[int], c: float) -> list[tuple[int, float]]:
    """``(l, delta')`` for weights ``r_i = i^c``, i = 1..l."""
    out = []
    for ell in ells:
        if ell < 1:
            raise ValueError("length must be >= 1")
        out.append((ell, delta_prime_real(i**c for i in range(1, ell + 1))))
    return out


def delta_prime_trend(c: float, ell: int) -> float:
    """Growth class of delta' for ``r_i ~ i^c`` (constants dropped)."""
    lg = math.log(ell)
    if c > -1 or c < -3:
        return 1.0
    if c == -1 or c == -3:
        return 1 / lg
    if c == -2:
        return lg * lg / ell
    if c < -2:
        return ell ** -(3 - abs(c))
    return ell ** -(abs(c) - 1)
