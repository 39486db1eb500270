"""Exact linear algebra inside the group algebra F_p[G].

A vector of F_p[G] is a length-|G| coefficient array: coordinate ``g`` holds
the coefficient of the basis element ``g``.
"""

from __future__ import annotations

import logging

import numpy as np

from .fields import Subspace, require_prime
from .groups import Group, _require_table

log = logging.getLogger(__name__)


class ContainmentError(ValueError):
    """``A*B`` is not inside ``C``; carries the offending product vector."""

    def __init__(self, vector: np.ndarray):
        super().__init__(f"product vector {vector.tolist()} lies outside C")
        self.vector = vector


def _table_and_inverses(G: Group) -> tuple[np.ndarray, np.ndarray]:
    T = _require_table(G).astype(np.int64)
    inv = np.array([G.inv(g) for g in range(G.order)], dtype=np.int64)
    return T, inv


def right_translate(G: Group, rows: np.ndarray, h: int) -> np.ndarray:
    """``v * h`` for each row ``v``: coefficient of ``y`` becomes that of ``y h^-1``."""
    T, inv = _table_and_inverses(G)
    return rows[..., T[:, inv[h]]]


def multiply(G: Group, p: int, a, b) -> np.ndarray:
    """Product ``a * b`` in F_p[G]."""
    T = _require_table(G)
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    out = np.zeros(G.order, dtype=np.int64)
    for g in np.flatnonzero(a):
        np.add.at(out, T[g], a[g] * b)
    return out % p


def whole_algebra(G: Group, p: int) -> Subspace:
    return Subspace.full(require_prime(p), G.order)


def augmentation_ideal(G: Group, p: int) -> Subspace:
    """Span of ``g - 1`` over all g; the kernel of the coefficient-sum map."""
    p = require_prime(p)
    n = G.order
    rows = np.eye(n, dtype=np.int64)[1:]
    rows[:, 0] = p - 1
    return Subspace.span(rows, p, n)


def subspace_product(G: Group, p: int, A: Subspace, B: Subspace) -> Subspace:
    """Span of all products ``a*b`` with a, b running over bases of A and B."""
    T, inv = _table_and_inverses(G)
    n = G.order
    out = Subspace.zero(p, n)
    if A.dim == 0 or B.dim == 0:
        return out
    # translates[h] = A * h
    support = np.flatnonzero(B.basis.any(axis=0))
    translates = {int(h): A.basis[:, T[:, inv[h]]] for h in support}
    for b in B.basis:
        prod = np.zeros_like(A.basis)
        for h in np.flatnonzero(b):
            prod += b[h] * translates[int(h)]
        out = Subspace.span(np.vstack([out.basis, prod % p]), p, n)
    return out


def ideal_powers(G: Group, p: int) -> list[Subspace]:
    """``[I^0, I^1, ..., I^e]`` for the augmentation ideal I of F_p[G].

    Built as ``I^k = sum over generators s of I^(k-1) (s - 1)``, which holds
    because I is the left ideal generated by ``s - 1`` for any generating set.
    The list ends with the zero subspace when I is nilpotent, otherwise with
    the first repeated power (the chain has stabilized).
    """
    p = require_prime(p)
    n = G.order
    T, inv = _table_and_inverses(G)
    gens = G.generators()
    powers = [whole_algebra(G, p), augmentation_ideal(G, p)]
    while powers[-1].dim > 0:
        prev = powers[-1].basis
        blocks = [(prev[:, T[:, inv[s]]] - prev) % p for s in gens]
        nxt = Subspace.span(np.vstack(blocks), p, n)
        powers.append(nxt)
        if nxt.dim == prev.shape[0]:
            log.info("augmentation ideal powers stabilized at dim %d (p=%d, |G|=%d)", nxt.dim, p, n)
            break
    return powers


def ideal_power_dims(G: Group, p: int) -> list[int]:
    """``[dim I^0, dim I^1, ...]``; ends in 0, or in a repeated value if the chain stabilizes."""
    return [S.dim for S in ideal_powers(G, p)]


def dim_at(dims: list[int], k: int) -> int:
    """``dim I^k`` for any k, extending a chain past its last computed entry."""
    return dims[k] if k < len(dims) else dims[-1]


def triple_subspace_bound(G: Group, p: int, A: Subspace, B: Subspace, C: Subspace) -> int:
    """Slice-rank upper bound ``codim A + codim B + dim C`` for subspaces with ``A*B <= C``."""
    prod = subspace_product(G, p, A, B)
    bad = C.first_outside(prod.basis)
    if bad is not None:
        raise ContainmentError(prod.basis[bad])
    return A.codim + B.codim + C.dim
