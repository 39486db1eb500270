"""p-lower central (Jennings) series, p-degrees and monomial counting.

The weighted-degree histogram of the Jennings monomials gives ``dim I^k`` for
the augmentation ideal of F_p[G] without any linear algebra; the two routes
are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from .arith import ceil_div, exact_log
from .fields import require_prime
from .groups import (
    Group,
    Subgroup,
    commutator_subgroup,
    is_normal,
    product_subgroup,
    pth_power_subgroup,
    whole_group,
)


class NotAPGroup(ValueError):
    pass


@dataclass(frozen=True)
class PDegreeVector:
    """p-degrees ``(r_1, ..., r_l)``; zero entries stay in place."""

    p: int
    r: tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if any(x < 0 for x in self.r):
            raise ValueError("p-degrees must be nonnegative")

    @property
    def n(self) -> int:
        return sum(self.r)

    @property
    def length(self) -> int:
        return len(self.r)

    @property
    def max_degree(self) -> int:
        """``s = (p-1) * sum_j j r_j``, the top weighted degree."""
        return (self.p - 1) * sum(j * rj for j, rj in enumerate(self.r, 1))

    def __str__(self) -> str:
        return f"{self.p}: " + ",".join(str(x) for x in self.r)

    @classmethod
    def parse(cls, text: str) -> "PDegreeVector":
        """Inverse of ``str``: ``"p: r_1,r_2,..."``."""
        head, sep, tail = text.partition(":")
        if not sep:
            raise ValueError(f"expected 'p: r_1,...', got {text!r}")
        tail = tail.strip()
        r = tuple(int(x) for x in tail.split(",")) if tail else ()
        return cls(int(head), r)


@dataclass(frozen=True)
class JenningsSeries:
    group: Group
    p: int
    #: Gamma_1 = G, ..., Gamma_{l+1} = 1
    terms: tuple[Subgroup, ...]

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def term(self, i: int) -> Subgroup:
        """Gamma_i for any i >= 1 (trivial past the end)."""
        if i <= len(self.terms):
            return self.terms[i - 1]
        return self.terms[-1]


def p_lower_central_series(G: Group, p: int) -> JenningsSeries:
    """Gamma_1 = G, Gamma_i = [G, Gamma_(i-1)] * Gamma_ceil(i/p)^(p)."""
    require_prime(p)
    if exact_log(G.order, p) is None:
        raise NotAPGroup(f"|G| = {G.order} is not a power of {p}")
    whole = whole_group(G)
    terms = [whole]
    while not terms[-1].is_trivial():
        i = len(terms) + 1
        comm = commutator_subgroup(G, whole, terms[-1])
        powers = pth_power_subgroup(G, terms[ceil_div(i, p) - 1], p)
        terms.append(product_subgroup(G, comm, powers))
    return JenningsSeries(G, p, tuple(terms))


def check_series_axioms(series: JenningsSeries) -> None:
    """Assert normality, nesting, ``[Gamma_i, Gamma_j] <= Gamma_(i+j)`` and
    ``g in Gamma_i  =>  g^p in Gamma_(ip)``."""
    G, p, ell = series.group, series.p, series.length
    for i, term in enumerate(series.terms, 1):
        assert is_normal(G, term)[0], f"Gamma_{i} is not normal"
        if i > 1:
            assert term <= series.terms[i - 2], f"Gamma_{i} not inside Gamma_{i - 1}"
    for i in range(1, ell + 1):
        for j in range(i, ell + 1):
            comm = commutator_subgroup(G, series.term(i), series.term(j))
            assert comm <= series.term(i + j), f"[Gamma_{i}, Gamma_{j}] escapes Gamma_{i + j}"
        target = series.term(i * p)
        assert all(G.power(g, p) in target for g in series.term(i)), f"p-th powers of Gamma_{i} escape"


def p_degrees(G: Group, p: int) -> PDegreeVector:
    return degrees_of_series(p_lower_central_series(G, p))


def degrees_of_series(series: JenningsSeries) -> PDegreeVector:
    r = []
    for a, b in zip(series.terms, series.terms[1:]):
        k = exact_log(a.order // b.order, series.p)
        assert k is not None and a.order % b.order == 0, "series quotient is not a p-power"
        r.append(k)
    return PDegreeVector(series.p, tuple(r))


def degree_histogram(r: PDegreeVector) -> list[int]:
    """Coefficients of prod_j (1 + x^j + ... + x^((p-1)j))^(r_j)."""
    coeffs = [1]
    for j, rj in enumerate(r.r, 1):
        for _ in range(rj):
            out = [0] * (len(coeffs) + (r.p - 1) * j)
            for d, c in enumerate(coeffs):
                if c:
                    for e in range(r.p):
                        out[d + e * j] += c
            coeffs = out
    return coeffs


def jennings_ideal_dims(r: PDegreeVector) -> list[int]:
    """``dim I^k`` for k = 0..s+1 as tail sums of the degree histogram."""
    hist = degree_histogram(r)
    tails = list(accumulate(reversed(hist)))[::-1]
    return tails + [0]


def degree_stats(r: PDegreeVector) -> tuple[Fraction, Fraction]:
    """Exact mean and variance of the index distribution rho_i = r_i / n."""
    n = r.n
    if n == 0:
        raise ValueError("p-degree vector is all zero")
    mean = Fraction(sum(i * ri for i, ri in enumerate(r.r, 1)), n)
    second = Fraction(sum(i * i * ri for i, ri in enumerate(r.r, 1)), n)
    return mean, second - mean * mean
