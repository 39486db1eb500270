"""Young subgroups of S_n from line partitions of triangular and hexagonal arrays."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .groups import SymmetricGroup, young_subgroup_elements

# relative size of the band around zero in which the double-precision
# binomial margin is re-evaluated with mpmath
BINOMIAL_GUARD = 1e-9


class IntersectionError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    """A partition of the points ``0..n-1`` into blocks."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        flat = sorted(x for b in blocks for x in b)
        if flat != list(range(self.n)):
            raise ValueError("blocks must partition 0..n-1")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "SetPartition":
        """Points with equal labels share a block."""
        groups: dict = {}
        for point, lab in enumerate(labels):
            groups.setdefault(lab, []).append(point)
        return cls(len(labels), tuple(tuple(v) for v in groups.values()))

    @property
    def block_sizes(self) -> list[int]:
        return sorted(len(b) for b in self.blocks)


@dataclass(frozen=True)
class LatticeShape:
    kind: str
    size: int
    points: tuple[tuple[int, int], ...]
    #: one partition per line direction
    partitions: tuple[SetPartition, SetPartition, SetPartition]

    @property
    def n(self) -> int:
        return len(self.points)


def _shape(kind: str, size: int, points: list[tuple[int, int]]) -> LatticeShape:
    directions = (lambda q, r: q, lambda q, r: r, lambda q, r: q + r)
    parts = tuple(SetPartition.from_labels([f(q, r) for q, r in points]) for f in directions)
    return LatticeShape(kind, size, tuple(points), parts)


def triangle_shape(m: int) -> LatticeShape:
    """Points ``(i, j)`` with ``i, j >= 0`` and ``i + j <= m - 1``; lines fix i, j or i + j."""
    if m < 1:
        raise ValueError("side must be positive")
    return _shape("triangle", m, [(i, j) for i in range(m) for j in range(m - i)])


def hexagon_shape(s: int) -> LatticeShape:
    """Axial points ``(q, r)`` with ``|q|, |r|, |q + r| <= s - 1``; lines fix q, r or q + r."""
    if s < 1:
        raise ValueError("side must be positive")
    k = s - 1
    pts = [(q, r) for q in range(-k, k + 1) for r in range(-k, k + 1) if abs(q + r) <= k]
    return _shape("hexagon", s, pts)


def shape_from_text(text: str) -> LatticeShape:
    """``triangle:m`` or ``hexagon:s``."""
    kind, _, size = text.partition(":")
    builders = {"triangle": triangle_shape, "hexagon": hexagon_shape}
    if kind not in builders or not size.isdigit():
        raise ValueError(f"expected 'triangle:m' or 'hexagon:s', got {text!r}")
    return builders[kind](int(size))


def young_order(p: SetPartition) -> int:
    return math.prod(math.factorial(len(b)) for b in p.blocks)


def pairwise_trivial(p1: SetPartition, p2: SetPartition) -> bool:
    """Young subgroups meet trivially iff no two points share a block in both partitions."""
    if p1.n != p2.n:
        raise ValueError(f"partitions of {p1.n} and {p2.n} points")
    where = {x: i for i, b in enumerate(p1.blocks) for x in b}
    for b in p2.blocks:
        seen = set()
        for x in b:
            if where[x] in seen:
                return False
            seen.add(where[x])
    return True


def young_subgroup(G: SymmetricGroup, p: SetPartition) -> tuple[int, ...]:
    if G.n != p.n:
        raise ValueError("partition size differs from the permutation degree")
    return young_subgroup_elements(G, p.blocks)


@dataclass(frozen=True)
class YoungRatio:
    """``n! / (|H_1| |H_2| |H_3|)^(2/3)``."""

    n: int
    orders: tuple[int, int, int]
    log_ratio: float

    def at_least(self, threshold) -> bool:
        """Exact test ``ratio >= threshold`` for a rational threshold (cubes both sides)."""
        th = Fraction(threshold)
        if th <= 0:
            return True
        lhs = math.factorial(self.n) ** 3 * th.denominator**3
        rhs = math.prod(self.orders) ** 2 * th.numerator**3
        return lhs >= rhs


def young_ratio(n: int, partitions: Sequence[SetPartition]) -> YoungRatio:
    p = list(partitions)
    if len(p) != 3 or any(q.n != n for q in p):
        raise ValueError(f"need three partitions of {n} points")
    for a, b in ((0, 1), (1, 2), (0, 2)):
        if not pairwise_trivial(p[a], p[b]):
            raise IntersectionError(f"Young subgroups {a + 1} and {b + 1} intersect nontrivially")
    orders = tuple(young_order(q) for q in p)
    log_ratio = math.lgamma(n + 1) - 2 * sum(math.log(o) for o in orders) / 3
    return YoungRatio(n, orders, log_ratio)


def shape_ratio(shape: LatticeShape) -> YoungRatio:
    return young_ratio(shape.n, shape.partitions)


def direction_order_ratio(a: LatticeShape, b: LatticeShape) -> Fraction:
    """Young subgroup order of one direction of ``a`` over that of ``b``."""
    return Fraction(young_order(a.partitions[0]), young_order(b.partitions[0]))


@dataclass(frozen=True)
class ScanRow:
    kind: str
    size: int
    n: int
    log_ratio: float
    rhs: float
    margin: float

    @property
    def ok(self) -> bool:
        return self.margin >= 0


def theorem_young_scan(shapes: Iterable[LatticeShape], c: float, d: float) -> list[ScanRow]:
    """Check ``log ratio >= c n - d sqrt(n) log n`` for each shape."""
    rows = []
    for sh in shapes:
        r = shape_ratio(sh)
        n = sh.n
        rhs = c * n - d * math.sqrt(n) * math.log(n)
        rows.append(ScanRow(sh.kind, sh.size, n, r.log_ratio, rhs, r.log_ratio - rhs))
    return rows


def square_witness_ratio_cubed(n: int) -> Fraction:
    """Cube of ``|G| / (|S||T||U|)^(2/3)`` for ``S_n x 1``, ``1 x S_n`` and the diagonal in ``S_n^2``.

    Each subgroup has order ``|G|^(1/2)``, so this is exactly 1 for every n.
    """
    f = math.factorial(n)
    return Fraction((f * f) ** 3, (f**3) ** 2)


def binomial_margin(n: int, t: int) -> float:
    """``log C(n,t) - log[(n/t)^t e^(t(1-t/n)) / (e (n-t) t)]`` in double precision."""
    if not 1 <= t < n:
        raise ValueError("need 1 <= t < n")
    lhs = math.lgamma(n + 1) - math.lgamma(t + 1) - math.lgamma(n - t + 1)
    rhs = -1 - math.log(n - t) - math.log(t) + t * math.log(n / t) + t * (1 - t / n)
    return lhs - rhs


def binomial_bound_check(n: int, t: int) -> bool:
    """``C(n,t) >= (n/t)^t e^(t(1-t/n)) / (e (n-t) t)``.

    Decided in double precision outside a guard band, otherwise with 60-digit
    arithmetic on the exact binomial coefficient.
    """
    margin = binomial_margin(n, t)
    scale = 1 + abs(math.lgamma(n + 1))
    if abs(margin) > BINOMIAL_GUARD * scale:
        return margin > 0
    with mpmath.workdps(60):
        lhs = mpmath.log(mpmath.mpf(math.comb(n, t)))
        rhs = -1 - mpmath.log(n - t) - mpmath.log(t) + t * mpmath.log(mpmath.mpf(n) / t) + t * (1 - mpmath.mpf(t) / n)
        return bool(lhs >= rhs)
