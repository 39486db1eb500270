"""Finite groups with identity-indexed elements.

Every group numbers its elements ``0 .. order-1`` and element ``0`` is always
the identity. Two backends exist: :class:`CayleyGroup` stores an explicit
multiplication table, :class:`SymmetricGroup` multiplies permutation words and
only materializes a table when the order is small.

Subgroups are plain sorted index sets (:class:`Subgroup`); everything is
computed by brute force, which is the point at desk scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arith import is_prime

DEFAULT_ORDER_CAP = 4096
MAX_SYMMETRIC_DEGREE = 10
# element orders up to this size get exhaustive associativity checks
EXHAUSTIVE_AXIOM_ORDER = 256

Factor = tuple[str, tuple[int, ...]]


class OrderCapExceeded(ValueError):
    pass


class NotNormalError(ValueError):
    def __init__(self, g: int, n: int):
        super().__init__(f"subgroup is not normal: g={g} conjugates n={n} outside")
        self.witness = (g, n)


class Group:
    """Base class; subclasses provide ``mul``, ``inv`` and optionally ``table``."""

    order: int
    #: basic factors ("cyclic", (m,)), ("abelian", (a, b)), ("ut", (m, p)),
    #: ("sym", (n,)) whose direct product is this group; None when opaque
    factors: tuple[Factor, ...] | None = None

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    @property
    def table(self) -> np.ndarray | None:
        return None

    @property
    def spec(self) -> str | None:
        if self.factors is None:
            return None
        parts = [_factor_spec(f) for f in self.factors]
        if len(parts) == 1:
            return parts[0]
        return "product:" + "|".join(parts)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec or '?'} order={self.order}>"

    def elements(self) -> range:
        return range(self.order)

    def mul_seq(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out, base = 0, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul(x, g)
            k += 1
        return k

    def is_abelian(self) -> bool:
        gens = self.generators()
        return all(self.mul(a, b) == self.mul(b, a) for a in gens for b in gens)

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(g) for g in self.elements()))

    def center(self) -> "Subgroup":
        gens = self.generators()
        elems = [z for z in self.elements() if all(self.mul(z, g) == self.mul(g, z) for g in gens)]
        return Subgroup(self, tuple(elems))

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        return self._generators

    @cached_property
    def _generators(self) -> tuple[int, ...]:
        gens: list[int] = []
        members = np.zeros(self.order, dtype=bool)
        members[0] = True
        for g in range(self.order):
            if not members[g]:
                gens.append(g)
                members = _closure_mask(self, gens, members)
        return tuple(gens)


class CayleyGroup(Group):
    """Group given by an explicit multiplication table."""

    def __init__(self, table: np.ndarray, factors: tuple[Factor, ...] | None = None):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or n < 1:
            raise ValueError("multiplication table must be square and nonempty")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("multiplication table leaves the group")
        ident = np.arange(n)
        if not (np.array_equal(table[0], ident) and np.array_equal(table[:, 0], ident)):
            raise ValueError("element 0 must be the identity")
        self.order = n
        self.factors = factors
        self._table = table
        rows, cols = np.nonzero(table == 0)
        if len(rows) != n or not np.array_equal(rows, ident):
            raise ValueError("every element needs exactly one inverse")
        self._inverse = cols.astype(np.int32)

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def inverses(self) -> np.ndarray:
        return self._inverse

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverse[a])


class SymmetricGroup(Group):
    """S_n on points ``0..n-1``; elements indexed by lexicographic permutation rank.

    Multiplication is composition of functions: ``(a*b)(i) = a(b(i))``.
    """

    def __init__(self, n: int, order_cap: int = DEFAULT_ORDER_CAP):
        if n < 1:
            raise ValueError("symmetric group degree must be >= 1")
        if n > MAX_SYMMETRIC_DEGREE:
            raise OrderCapExceeded(f"S_{n} exceeds the permutation backend limit n <= {MAX_SYMMETRIC_DEGREE}")
        self.n = n
        self.order = math.factorial(n)
        self.factors = (("sym", (n,)),)
        self._order_cap = order_cap

    def perm(self, index: int) -> tuple[int, ...]:
        return _unrank(self.n, index)

    def index(self, perm: Sequence[int]) -> int:
        return _rank(tuple(perm))

    def from_cycles(self, cycles: Iterable[Sequence[int]]) -> int:
        image = list(range(self.n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                image[a] = b
        return self.index(image)

    def mul(self, a: int, b: int) -> int:
        pa, pb = _unrank(self.n, a), _unrank(self.n, b)
        return _rank(tuple(pa[i] for i in pb))

    def inv(self, a: int) -> int:
        pa = _unrank(self.n, a)
        out = [0] * self.n
        for i, x in enumerate(pa):
            out[x] = i
        return _rank(tuple(out))

    def generators(self) -> tuple[int, ...]:
        if self.n == 1:
            return ()
        if self.n == 2:
            return (self.from_cycles([(0, 1)]),)
        return (self.from_cycles([(0, 1)]), self.from_cycles([tuple(range(self.n))]))

    @property
    def table(self) -> np.ndarray | None:
        if self.order > self._order_cap:
            return None
        return self._table

    @cached_property
    def _table(self) -> np.ndarray:
        perms = np.array([_unrank(self.n, i) for i in range(self.order)], dtype=np.int64)
        out = np.empty((self.order, self.order), dtype=np.int32)
        for a in range(self.order):
            out[a] = _rank_rows(perms[a][perms])
        return out


@lru_cache(maxsize=1 << 16)
def _unrank(n: int, index: int) -> tuple[int, ...]:
    items = list(range(n))
    out = []
    for k in range(n - 1, -1, -1):
        q, index = divmod(index, math.factorial(k))
        out.append(items.pop(q))
    return tuple(out)


def _rank(perm: tuple[int, ...]) -> int:
    n = len(perm)
    r = 0
    for i in range(n):
        smaller = sum(1 for j in range(i + 1, n) if perm[j] < perm[i])
        r += smaller * math.factorial(n - 1 - i)
    return r


def _rank_rows(perms: np.ndarray) -> np.ndarray:
    n = perms.shape[1]
    r = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        smaller = (perms[:, i + 1:] < perms[:, i:i + 1]).sum(axis=1)
        r += smaller * math.factorial(n - 1 - i)
    return r


# --------------------------------------------------------------------------
# constructors


def build_cyclic(m: int) -> CayleyGroup:
    if m < 1:
        raise ValueError("cyclic group order must be >= 1")
    _check_cap(m)
    idx = np.arange(m)
    return CayleyGroup((idx[:, None] + idx[None, :]) % m, (("cyclic", (m,)),))


def build_abelian(invariants: Sequence[int]) -> CayleyGroup:
    """Direct product of cyclic groups; the first factor is the most significant digit."""
    inv = tuple(int(a) for a in invariants)
    if any(a < 1 for a in inv):
        raise ValueError("abelian invariants must be >= 1")
    order = math.prod(inv)
    _check_cap(order)
    digits = _mixed_radix_digits(order, inv)
    strides = _strides(inv)
    mods = np.array(inv, dtype=np.int64)
    table = np.empty((order, order), dtype=np.int32)
    for a in range(order):
        table[a] = ((digits[a] + digits) % mods) @ strides
    return CayleyGroup(table, (("abelian", inv),))


def build_unitriangular(m: int, p: int, order_cap: int = DEFAULT_ORDER_CAP) -> CayleyGroup:
    """Upper unitriangular m x m matrices over F_p, order p^((m^2-m)/2)."""
    if m < 2:
        raise ValueError("unitriangular groups need m >= 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    order = p ** len(slots)
    _check_cap(order, order_cap)
    radix = (p,) * len(slots)
    digits = _mixed_radix_digits(order, radix)
    strides = _strides(radix)
    mats = np.zeros((order, m, m), dtype=np.int64)
    mats[:, np.arange(m), np.arange(m)] = 1
    for s, (i, j) in enumerate(slots):
        mats[:, i, j] = digits[:, s]
    rows = np.array([i for i, _ in slots])
    cols = np.array([j for _, j in slots])
    table = np.empty((order, order), dtype=np.int32)
    for a in range(order):
        prod = np.matmul(mats[a], mats) % p
        table[a] = prod[:, rows, cols] @ strides
    return CayleyGroup(table, (("ut", (m, p)),))


def build_symmetric(n: int) -> SymmetricGroup:
    return SymmetricGroup(n)


def direct_product(G: Group, H: Group, order_cap: int = DEFAULT_ORDER_CAP) -> CayleyGroup:
    """Componentwise product; element ``(g, h)`` has index ``g*|H| + h``."""
    order = G.order * H.order
    _check_cap(order, order_cap)
    TG, TH = _require_table(G), _require_table(H)
    nh = H.order
    table = (TG.astype(np.int64)[:, None, :, None] * nh + TH[None, :, None, :]).reshape(order, order)
    factors = None
    if G.factors is not None and H.factors is not None:
        factors = G.factors + H.factors
    return CayleyGroup(table, factors)


def _check_cap(order: int, cap: int = DEFAULT_ORDER_CAP) -> None:
    if order > cap:
        raise OrderCapExceeded(f"group order {order} exceeds the table cap {cap}")


def _require_table(G: Group) -> np.ndarray:
    t = G.table
    if t is None:
        raise OrderCapExceeded(f"{G!r} has no multiplication table at this order")
    return t


def _mixed_radix_digits(order: int, radix: Sequence[int]) -> np.ndarray:
    idx = np.arange(order, dtype=np.int64)
    digits = np.empty((order, len(radix)), dtype=np.int64)
    for k in range(len(radix) - 1, -1, -1):
        digits[:, k] = idx % radix[k]
        idx //= radix[k]
    return digits


def _strides(radix: Sequence[int]) -> np.ndarray:
    out = np.ones(len(radix), dtype=np.int64)
    for k in range(len(radix) - 2, -1, -1):
        out[k] = out[k + 1] * radix[k + 1]
    return out


def _factor_spec(f: Factor) -> str:
    kind, args = f
    return f"{kind}:" + ",".join(str(a) for a in args)


# --------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    elements: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return self._members <= other._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    def is_trivial(self) -> bool:
        return self.elements == (0,)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    @cached_property
    def as_group(self) -> tuple[CayleyGroup, tuple[int, ...]]:
        """The subgroup as a standalone group plus its embedding into the parent."""
        E = np.array(self.elements, dtype=np.int64)
        pos = np.full(self.parent.order, -1, dtype=np.int64)
        pos[E] = np.arange(len(E))
        T = self.parent.table
        if T is not None:
            sub = T[np.ix_(E, E)]
        else:
            sub = np.array([[self.parent.mul(a, b) for b in self.elements] for a in self.elements])
        return CayleyGroup(pos[sub]), self.elements


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: Group) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def _closure_mask(G: Group, gens: Sequence[int], members: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``gens`` and the set ``members``.

    ``members`` must already be a subgroup; each new generator triggers a
    breadth-first pass of right multiplications.
    """
    if members is None:
        members = np.zeros(G.order, dtype=bool)
        members[0] = True
    else:
        members = members.copy()
    used: list[int] = []
    T = G.table
    for g in gens:
        if members[g]:
            continue
        used.append(g)
        frontier = np.flatnonzero(members)
        while len(frontier):
            if T is not None:
                prods = np.unique(T[np.ix_(frontier, used)].ravel())
            else:
                prods = np.unique([G.mul(int(x), u) for x in frontier for u in used])
            new = prods[~members[prods]]
            members[new] = True
            frontier = new
    return members


def subgroup_closure(G: Group, generators: Iterable[int]) -> Subgroup:
    gens = sorted(set(int(g) for g in generators))
    for g in gens:
        if not 0 <= g < G.order:
            raise ValueError(f"element {g} not in group of order {G.order}")
    return Subgroup(G, tuple(np.flatnonzero(_closure_mask(G, gens)).tolist()))


def commutator_subgroup(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by ``a b a^-1 b^-1`` for a in A, b in B."""
    T = G.table
    if T is not None:
        inv = G.inverses if isinstance(G, CayleyGroup) else np.array([G.inv(x) for x in range(G.order)])
        a = np.array(A.elements)[:, None]
        b = np.array(B.elements)[None, :]
        comms = T[T[T[a, b], inv[a]], inv[b]]
        seeds = np.unique(comms).tolist()
    else:
        seeds = sorted({G.mul_seq(a, b, G.inv(a), G.inv(b)) for a in A for b in B})
    return subgroup_closure(G, seeds)


def pth_power_subgroup(G: Group, H: Subgroup, p: int) -> Subgroup:
    """Subgroup generated by ``{h^p : h in H}``."""
    T = G.table
    if T is not None:
        h = np.array(H.elements)
        x = h.copy()
        for _ in range(p - 1):
            x = T[x, h]
        seeds = np.unique(x).tolist()
    else:
        seeds = sorted({G.power(h, p) for h in H})
    return subgroup_closure(G, seeds)


def product_subgroup(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup generated by A and B (their product when one is normal)."""
    return subgroup_closure(G, A.elements + B.elements)


def is_normal(G: Group, N: Subgroup) -> tuple[bool, tuple[int, int] | None]:
    """Exhaustive check of ``g n g^-1 in N``; returns a witness on failure."""
    T = G.table
    members = N.mask()
    if T is not None:
        inv = np.array([G.inv(x) for x in range(G.order)]) if not isinstance(G, CayleyGroup) else G.inverses
        n = np.array(N.elements)
        conj = T[T[:, n], inv[:, None]]
        bad = ~members[conj]
        if bad.any():
            g, k = np.argwhere(bad)[0]
            return False, (int(g), int(n[k]))
        return True, None
    for g in G.elements():
        for x in N:
            if not members[G.conj(g, x)]:
                return False, (g, x)
    return True, None


def conjugacy_class_count(G: Group) -> int:
    """Number of orbits of the conjugation action, found by orbit search over generators."""
    gens = G.generators()
    ginv = [G.inv(g) for g in gens]
    seen = np.zeros(G.order, dtype=bool)
    T = G.table
    classes = 0
    for x in range(G.order):
        if seen[x]:
            continue
        classes += 1
        seen[x] = True
        stack = [x]
        while stack:
            y = stack.pop()
            for g, gi in zip(gens, ginv):
                z = int(T[T[g, y], gi]) if T is not None else G.mul(G.mul(g, y), gi)
                if not seen[z]:
                    seen[z] = True
                    stack.append(z)
    return classes


@dataclass(frozen=True, eq=False)
class QuotientData:
    parent: Group
    normal: Subgroup
    coset_reps: tuple[int, ...]
    quotient: CayleyGroup
    projection: np.ndarray

    def project(self, g: int) -> int:
        return int(self.projection[g])

    def lift(self, c: int) -> int:
        return self.coset_reps[c]

    @property
    def normal_group(self) -> tuple[CayleyGroup, tuple[int, ...]]:
        return self.normal.as_group


def quotient(G: Group, N: Subgroup) -> QuotientData:
    ok, witness = is_normal(G, N)
    if not ok:
        raise NotNormalError(*witness)
    T = _require_table(G)
    n = np.array(N.elements)
    projection = np.full(G.order, -1, dtype=np.int64)
    reps: list[int] = []
    for x in range(G.order):
        if projection[x] < 0:
            projection[T[x, n]] = len(reps)
            reps.append(x)
    R = np.array(reps)
    qtable = projection[T[np.ix_(R, R)]]
    return QuotientData(G, N, tuple(reps), CayleyGroup(qtable), projection)


def check_group_axioms(G: Group, samples: int = 20000, seed: int = 0) -> None:
    """Assert identity, inverse and associativity laws.

    Associativity is exhaustive up to :data:`EXHAUSTIVE_AXIOM_ORDER`, sampled above.
    """
    n = G.order
    T = G.table
    for g in range(n):
        assert G.mul(0, g) == g and G.mul(g, 0) == g
        assert G.mul(g, G.inv(g)) == 0
        assert G.inv(G.inv(g)) == g
    if T is not None and n <= EXHAUSTIVE_AXIOM_ORDER:
        T64 = T.astype(np.int64)
        left = T64[T64[:, :, None], np.arange(n)[None, None, :]]
        right = T64[np.arange(n)[:, None, None], T64[None, :, :]]
        assert np.array_equal(left, right), "associativity fails"
        return
    rng = np.random.default_rng(seed)
    for a, b, c in rng.integers(0, n, size=(samples, 3)):
        a, b, c = int(a), int(b), int(c)
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))


def is_p_group(G: Group, p: int) -> bool:
    if p < 2:
        return False
    n = G.order
    while n % p == 0:
        n //= p
    return n == 1


# --------------------------------------------------------------------------
# group mini-language


class GroupSpecError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position


_BASIC = ("cyclic", "abelian", "ut", "sym")


def parse_group_spec(text: str) -> Group:
    """Parse ``cyclic:m``, ``abelian:a,b``, ``ut:m,p``, ``sym:n`` or
    ``product:<spec>|<spec>|...`` into a group."""
    factors = _SpecParser(text).parse()
    groups = [_build_factor(f) for f in factors]
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def _build_factor(f: Factor) -> Group:
    kind, args = f
    if kind == "cyclic":
        return build_cyclic(args[0])
    if kind == "abelian":
        return build_abelian(args)
    if kind == "ut":
        return build_unitriangular(*args)
    return build_symmetric(args[0])


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise GroupSpecError(message, self.text, self.pos)

    def parse(self) -> list[Factor]:
        if self.text.startswith("product:"):
            self.pos = len("product:")
            factors = [self.basic()]
            while self.pos < len(self.text) and self.text[self.pos] == "|":
                self.pos += 1
                factors.append(self.basic())
            if len(factors) < 2:
                self.fail("product needs at least two factors")
        else:
            factors = [self.basic()]
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")
        return factors

    def basic(self) -> Factor:
        start = self.pos
        colon = self.text.find(":", start)
        if colon < 0:
            self.fail("expected '<kind>:'")
        kind = self.text[start:colon]
        if kind not in _BASIC:
            self.fail(f"unknown group kind {kind!r}")
        self.pos = colon + 1
        args = [self.integer()]
        while self.pos < len(self.text) and self.text[self.pos] == ",":
            self.pos += 1
            args.append(self.integer())
        want = {"cyclic": 1, "ut": 2, "sym": 1}.get(kind)
        if want is not None and len(args) != want:
            self.pos = start
            self.fail(f"{kind} takes {want} argument(s), got {len(args)}")
        if kind == "ut" and not is_prime(args[1]):
            self.pos = start
            self.fail(f"ut modulus {args[1]} is not prime")
        return kind, tuple(args)

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a positive integer")
        value = int(self.text[start:self.pos])
        if value < 1:
            self.pos = start
            self.fail("expected a positive integer")
        return value


def young_subgroup_elements(G: SymmetricGroup, blocks: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """All permutations of S_n preserving each block (points are 0-based)."""
    blocks = [tuple(b) for b in blocks]
    out = []
    for images in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = list(range(G.n))
        for b, im in zip(blocks, images):
            for src, dst in zip(b, im):
                perm[src] = dst
        out.append(G.index(perm))
    return tuple(sorted(out))
