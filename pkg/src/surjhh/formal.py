"""Formal linear combinations and linear algebra over F2.

Coefficients are plain Python integers, so arithmetic is exact and never
overflows. Everything mod 2 goes through :meth:`FormalSum.mod2`.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from types import MappingProxyType
from typing import Generic, TypeVar

import numpy as np

G = TypeVar("G", bound=Hashable)
H = TypeVar("H", bound=Hashable)


class FormalSum(Generic[G]):
    """A finite Z-linear combination of hashable generators.

    Zero coefficients are never stored, so two sums are equal exactly when
    they have the same terms. Insertion order is kept for printing only.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[G, int] | Iterable[tuple[G, int]] | None = None):
        acc: dict[G, int] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for gen, coeff in items:
                acc[gen] = acc.get(gen, 0) + int(coeff)
        self._terms = {g: c for g, c in acc.items() if c != 0}
        self._hash: int | None = None

    @classmethod
    def single(cls, gen: G, coeff: int = 1) -> FormalSum[G]:
        return cls(((gen, coeff),))

    @property
    def terms(self) -> Mapping[G, int]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, gen: G) -> int:
        return self._terms.get(gen, 0)

    def support(self) -> frozenset[G]:
        return frozenset(self._terms)

    def __iter__(self) -> Iterator[G]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, gen: object) -> bool:
        return gen in self._terms

    def __add__(self, other: FormalSum[G]) -> FormalSum[G]:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return FormalSum([*self._terms.items(), *other._terms.items()])

    def __sub__(self, other: FormalSum[G]) -> FormalSum[G]:
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> FormalSum[G]:
        return FormalSum({g: -c for g, c in self._terms.items()})

    def __mul__(self, scalar: int) -> FormalSum[G]:
        if not isinstance(scalar, int):
            return NotImplemented
        return FormalSum({g: scalar * c for g, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FormalSum):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def mod2(self) -> FormalSum[G]:
        """Reduce every coefficient to 0 or 1."""
        return FormalSum({g: c % 2 for g, c in self._terms.items()})

    def map(self, fn: Callable[[G], FormalSum[H] | H | None]) -> FormalSum[H]:
        """Extend ``fn`` linearly. ``fn`` may return a sum, a generator or None (zero)."""
        out: list[tuple[H, int]] = []
        for gen, coeff in self._terms.items():
            image = fn(gen)
            if image is None:
                continue
            if isinstance(image, FormalSum):
                out.extend((h, coeff * c) for h, c in image.items())
            else:
                out.append((image, coeff))
        return FormalSum(out)

    def format(self, fmt: Callable[[G], str] = str) -> str:
        """Render as ``a + 2 · b - c``; the empty sum is ``0``."""
        if not self._terms:
            return "0"
        parts = []
        for i, (gen, coeff) in enumerate(self._terms.items()):
            sign = "-" if coeff < 0 else "+"
            mag = abs(coeff)
            body = fmt(gen) if mag == 1 else f"{mag} · {fmt(gen)}"
            if i == 0:
                parts.append(body if sign == "+" else f"- {body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"FormalSum({self._terms!r})"


# --- linear algebra over F2 ------------------------------------------------


def _as_f2(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=np.int64)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {arr.shape}")
    return (arr % 2).astype(np.uint8)


@dataclass(frozen=True)
class F2LinearSystem:
    """``matrix @ x = rhs`` over F2; rows index the target basis, columns the source."""

    matrix: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        m = _as_f2(self.matrix)
        b = (np.array(self.rhs, dtype=np.int64).reshape(-1) % 2).astype(np.uint8)
        if m.shape[0] != b.shape[0]:
            raise ValueError(f"matrix has {m.shape[0]} rows but rhs has length {b.shape[0]}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", b)


def rref_f2(matrix) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F2, pivoting on the first available row.

    Works on a private copy. Returns the reduced matrix and pivot columns.
    """
    a = _as_f2(matrix).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = a[:, c].astype(bool)
        hit[r] = False
        a[hit] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank_f2(matrix) -> int:
    return len(rref_f2(matrix)[1])


def kernel_f2(matrix) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column (in column order)."""
    red, pivots = rref_f2(matrix)
    ncols = red.shape[1]
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = np.zeros(ncols, dtype=np.uint8)
        v[free] = 1
        for row, p in enumerate(pivots):
            v[p] = red[row, free]
        basis.append(v)
    return basis


def solve_f2(system: F2LinearSystem) -> tuple[np.ndarray | None, list[np.ndarray]]:
    """One solution (free variables set to 0) and a kernel basis.

    The solution is None when the system is inconsistent; the kernel basis
    is returned either way.
    """
    m, b = system.matrix, system.rhs
    ncols = m.shape[1]
    aug = np.concatenate([m, b.reshape(-1, 1)], axis=1)
    red, pivots = rref_f2(aug)
    kernel = kernel_f2(m)
    if ncols in pivots:
        return None, kernel
    x = np.zeros(ncols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = red[row, ncols]
    return x, kernel


def matmul_f2(matrix, vector) -> np.ndarray:
    return (_as_f2(matrix).astype(np.int64) @ np.asarray(vector, dtype=np.int64) % 2).astype(np.uint8)
