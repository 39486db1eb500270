"""Dense linear algebra over prime fields F_p.

Row reduction always picks the lowest-index pivot column and the first
available row, so reduced bases are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .arith import is_prime


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


def require_prime(p: int) -> int:
    return PrimeField(int(p)).p


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form of ``M`` mod ``p``; zero rows are dropped."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim == 1:
        A = A[None, :]
    nrows, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = (A[r] * pow(lead, -1, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    R, pivots = rref(M, p) if M.shape[0] else (np.zeros((0, ncols), dtype=np.int64), [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, pc in enumerate(pivots):
            out[i, pc] = (-R[r, f]) % p
    return out


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of F_p^ambient stored as a reduced row-echelon basis."""

    p: int
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, p: int, ambient: int) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if V.size == 0:
            return cls.zero(p, ambient)
        V = V.reshape(-1, ambient)
        R, piv = rref(V, p)
        R.setflags(write=False)
        return cls(p, ambient, R, tuple(piv))

    @classmethod
    def zero(cls, p: int, ambient: int) -> "Subspace":
        B = np.zeros((0, ambient), dtype=np.int64)
        B.setflags(write=False)
        return cls(p, ambient, B, ())

    @classmethod
    def full(cls, p: int, ambient: int) -> "Subspace":
        return cls.span(np.eye(ambient, dtype=np.int64), p, ambient)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.p, self.ambient, self.pivots) == (other.p, other.ambient, other.pivots) and np.array_equal(
            self.basis, other.basis
        )

    __hash__ = None  # type: ignore[assignment]

    def reduce(self, v) -> np.ndarray:
        """Residue of ``v`` (a vector or rows of vectors) modulo this subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        coeffs = v[..., list(self.pivots)]
        return (v - coeffs @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def first_outside(self, rows) -> int | None:
        """Index of the first row of ``rows`` not in this subspace."""
        res = self.reduce(np.asarray(rows).reshape(-1, self.ambient))
        bad = np.flatnonzero(res.any(axis=1))
        return int(bad[0]) if len(bad) else None

    def __le__(self, other: "Subspace") -> bool:
        return other.first_outside(self.basis) is None

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient)

    def annihilator(self) -> "Subspace":
        """``{c : <w, c> = 0 for every w in this subspace}``."""
        if self.dim == 0:
            return Subspace.full(self.p, self.ambient)
        return Subspace.span(nullspace(self.basis, self.p), self.p, self.ambient)

    def vectors(self) -> Iterator[np.ndarray]:
        """Every vector of the subspace, in coefficient-lexicographic order."""
        for coeffs in itertools.product(range(self.p), repeat=self.dim):
            yield (np.array(coeffs, dtype=np.int64) @ self.basis) % self.p if self.dim else np.zeros(
                self.ambient, dtype=np.int64
            )

    def to_text(self) -> str:
        sep = "" if self.p <= 10 else " "
        lines = [f"{self.p} {self.ambient} {self.dim}"]
        lines += [sep.join(str(int(x)) for x in row) for row in self.basis]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Subspace":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        p, ambient, dim = (int(x) for x in lines[0].split())
        rows = []
        for ln in lines[1:1 + dim]:
            row = [int(x) for x in ln.split()] if " " in ln.strip() else [int(c) for c in ln.strip()]
            if len(row) != ambient:
                raise ValueError(f"row has {len(row)} entries, expected {ambient}")
            rows.append(row)
        if len(rows) != dim:
            raise ValueError(f"expected {dim} rows, got {len(rows)}")
        out = cls.span(np.array(rows, dtype=np.int64).reshape(dim, ambient), p, ambient)
        if out.dim != dim:
            raise ValueError("rows are linearly dependent")
        return out


def count_subspaces(n: int, p: int) -> int:
    """Total number of subspaces of F_p^n (sum of Gaussian binomials)."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def enumerate_subspaces(n: int, p: int) -> Iterator[Subspace]:
    """Every subspace of F_p^n exactly once, via reduced-echelon canonical forms.

    Order: by dimension, then pivot set lexicographically, then free entries.
    """
    for k in range(n + 1):
        for piv in itertools.combinations(range(n), k):
            pivset = set(piv)
            slots = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
            for vals in itertools.product(range(p), repeat=len(slots)):
                B = np.zeros((k, n), dtype=np.int64)
                for r, pc in enumerate(piv):
                    B[r, pc] = 1
                for (r, c), v in zip(slots, vals):
                    B[r, c] = v
                B.setflags(write=False)
                yield Subspace(p, n, B, piv)


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        M = rng.integers(0, p, size=(n, n))
        if rank(M, p) == n:
            return M

