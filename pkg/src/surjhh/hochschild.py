"""Graded F2-algebras, cochain operations and Hochschild homology.

Grading: a bar word ``a0 ⊗ a1 ⊗ ... ⊗ an`` has total degree
``sum(|ai|) - n``. The bar differential keeps ``sum(|ai|)``, drops the length
by one and so raises the total degree by one. With this convention
``1⊗α⊗α`` and ``α`` both sit in total degree 2 for the 2-sphere.

Everything here is over F2.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .formal import FormalSum, kernel_f2, rank_f2
from .operad import OperadElement, Surjection
from .simplicial import SimplicialSet, interval_cut_action

DEFAULT_TRUNCATION = 8

CUP = Surjection((1, 2))
CUP1 = Surjection((1, 2, 1))

Element = FormalSum[str]


def _element(x: Element | str | None) -> Element:
    if x is None:
        return FormalSum()
    if isinstance(x, str):
        return FormalSum.single(x)
    return x.mod2()


class GradedAlgebra:
    """A finite-dimensional graded algebra over F2 given by a product table.

    Missing products are zero, except that products with a unit basis
    element default to the unit law. Unit laws, associativity and degree
    additivity are checked on construction.
    """

    def __init__(
        self,
        degrees: Mapping[str, int],
        products: Mapping[tuple[str, str], Element | str | Iterable[str]],
        unit: str | Element,
        name: str = "",
    ):
        self.name = name
        self.degrees = dict(degrees)
        self.one = _element(unit)
        for g in self.one:
            self._require(g)
        table: dict[tuple[str, str], Element] = {}
        for (a, b), value in products.items():
            self._require(a)
            self._require(b)
            if isinstance(value, (FormalSum, str)) or value is None:
                table[a, b] = _element(value)
            else:
                table[a, b] = FormalSum((g, 1) for g in value).mod2()
        if self.unit is not None:
            for g in self.degrees:
                table.setdefault((self.unit, g), FormalSum.single(g))
                table.setdefault((g, self.unit), FormalSum.single(g))
        self._table = {k: v for k, v in table.items() if v}
        self.check()

    def _require(self, g: str) -> None:
        if g not in self.degrees:
            raise KeyError(f"unknown basis element {g!r}")

    @property
    def basis(self) -> list[str]:
        return list(self.degrees)

    @property
    def unit(self) -> str | None:
        """The unit as a basis name, when the unit is a single basis element."""
        if len(self.one) == 1:
            (g,) = self.one
            return g
        return None

    def degree(self, g: str) -> int:
        return self.degrees[g]

    def product(self, a: str, b: str) -> Element:
        return self._table.get((a, b), FormalSum())

    def mul(self, x: Element | str, y: Element | str) -> Element:
        x, y = _element(x), _element(y)
        out = FormalSum()
        for a in x:
            for b in y:
                out = out + self.product(a, b)
        return out.mod2()

    def is_commutative(self) -> bool:
        return all(self.product(a, b) == self.product(b, a) for a in self.degrees for b in self.degrees)

    def check(self) -> None:
        for (a, b), value in self._table.items():
            for c in value:
                if self.degrees[c] != self.degrees[a] + self.degrees[b]:
                    raise ValueError(f"{a}*{b} contains {c} of the wrong degree")
        for g in self.degrees:
            if self.mul(self.one, g) != FormalSum.single(g) or self.mul(g, self.one) != FormalSum.single(g):
                raise ValueError(f"unit law fails on {g}")
        for a, b, c in itertools.product(self.degrees, repeat=3):
            if self.mul(self.product(a, b), c) != self.mul(a, self.product(b, c)):
                raise ValueError(f"associativity fails on ({a},{b},{c})")

    def format(self, x: Element) -> str:
        return x.mod2().format()

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name or self.basis!r})"


class CochainAlgebra(GradedAlgebra):
    """Normalized F2-cochains on a finite simplicial set with the cup product.

    Basis elements are labelled by ``X.label(g)``; ``generator_of`` maps a
    label back to its simplex.
    """

    def __init__(self, X: SimplicialSet, max_degree: int | None = None):
        top = X.max_dim if max_degree is None else max_degree
        self.space = X
        gens = [g for g, n in X.generators.items() if n <= top]
        self.generator_of = {X.label(g): g for g in gens}
        degrees = {X.label(g): X.dim(g) for g in gens}

        products: dict[tuple[str, str], Element] = {}
        for sigma in gens:
            for (a, b), c in interval_cut_action(CUP, X, sigma).items():
                if c % 2:
                    key = (X.label(a), X.label(b))
                    products[key] = products.get(key, FormalSum()) + FormalSum.single(X.label(sigma))
        unit = FormalSum((X.label(g), 1) for g in X.generators_in(0))
        super().__init__(degrees, products, unit, name=f"N*({X.name})")

    def to_cochain(self, x: Element | str) -> FormalSum[str]:
        return _element(x).map(lambda lab: self.generator_of[lab])

    def from_cochain(self, c: FormalSum[str]) -> Element:
        return c.mod2().map(self.space.label)


def cochain_algebra(X: SimplicialSet, max_degree: int | None = None) -> CochainAlgebra:
    return CochainAlgebra(X, max_degree)


# --- cochain operations ----------------------------------------------------


def cochain_operation(
    X: SimplicialSet, op: Surjection | OperadElement, cochains: Sequence[FormalSum[str] | str]
) -> FormalSum[str]:
    """Dual of the interval-cut action: ``op(a_1..a_r)(σ) = <a_1⊗..⊗a_r, AW(op)(σ)>``."""
    arity = op.arity
    if len(cochains) != arity:
        raise ValueError(f"operation of arity {arity} got {len(cochains)} cochains")
    values = [_element(c) for c in cochains]
    out = []
    for sigma in X.generators:
        total = 0
        for t, c in interval_cut_action(op, X, sigma).items():
            if c % 2 and all(g in a for g, a in zip(t, values)):
                total += 1
        if total % 2:
            out.append((sigma, 1))
    return FormalSum(out)


def cup(X: SimplicialSet, a, b) -> FormalSum[str]:
    return cochain_operation(X, CUP, [a, b])


def cup1(X: SimplicialSet, a, b) -> FormalSum[str]:
    """``a ⌣₁ b``, the operation of ``(1,2,1)``; degree ``|a| + |b| - 1``."""
    return cochain_operation(X, CUP1, [a, b])


def coboundary(X: SimplicialSet, a) -> FormalSum[str]:
    a = _element(a)
    out = []
    for sigma in X.generators:
        if sum(1 for g, c in X.boundary(sigma).items() if c % 2 and g in a) % 2:
            out.append((sigma, 1))
    return FormalSum(out)


# --- the normalized cyclic bar complex ------------------------------------


@dataclass(frozen=True, order=True)
class BarWord:
    """``a0 ⊗ a1 ⊗ ... ⊗ an``; entries after the first are never the unit."""

    entries: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("a bar word has at least one entry")

    @property
    def length(self) -> int:
        return len(self.entries) - 1

    def __str__(self) -> str:
        return "⊗".join(self.entries)


def parse_bar_word(text: str) -> BarWord:
    parts = [p.strip() for p in re.split(r"⊗|\|", text)]
    if any(not p for p in parts):
        raise ValueError(f"empty entry in bar word {text!r}")
    return BarWord(tuple(parts))


def parse_bar_sum(text: str) -> FormalSum[BarWord]:
    if text.strip() == "0":
        return FormalSum()
    return FormalSum((parse_bar_word(t), 1) for t in text.split("+")).mod2()


class HochschildComplex:
    """Normalized cyclic bar complex of ``algebra`` with bar length at most ``truncation``.

    The differential preserves bar length exactly minus one, so homology in
    bar lengths ``< truncation`` is exact; classes of longer length are not
    seen. For algebras with all positive degrees at least 2 a class of total
    degree ``q`` has length at most ``q``.
    """

    def __init__(self, algebra: GradedAlgebra, truncation: int = DEFAULT_TRUNCATION):
        if algebra.unit is None:
            raise ValueError("the normalized bar complex needs the unit to be a basis element")
        if truncation < 1:
            raise ValueError("truncation must be positive")
        self.algebra = algebra
        self.truncation = truncation
        self.reduced = [g for g in algebra.basis if g != algebra.unit]

    def degree(self, w: BarWord) -> int:
        return sum(self.algebra.degree(a) for a in w.entries) - w.length

    def words(self, q: int, n: int) -> list[BarWord]:
        """Basis of bar length ``n`` and total degree ``q``, in a fixed order."""
        A = self.algebra
        out = []
        for a0 in A.basis:
            for rest in itertools.product(self.reduced, repeat=n):
                w = BarWord((a0, *rest))
                if self.degree(w) == q:
                    out.append(w)
        return out

    def _reduce(self, x: Element) -> Element:
        return FormalSum((g, c) for g, c in x.items() if g != self.algebra.unit)

    def boundary(self, w: BarWord | FormalSum[BarWord]) -> FormalSum[BarWord]:
        """Sum of the adjacent products and the wrap-around product, mod 2."""
        if isinstance(w, FormalSum):
            return w.map(self.boundary).mod2()
        A, e = self.algebra, w.entries
        n = w.length
        out: list[tuple[BarWord, int]] = []
        for j in range(n):
            prod = A.product(e[j], e[j + 1])
            if j > 0:
                prod = self._reduce(prod)
            for g in prod:
                out.append((BarWord(e[:j] + (g,) + e[j + 2 :]), 1))
        if n:
            for g in A.product(e[n], e[0]):
                out.append((BarWord((g,) + e[1:n]), 1))
        return FormalSum(out).mod2()

    def _matrix(self, source: list[BarWord], target: list[BarWord]) -> np.ndarray:
        index = {w: i for i, w in enumerate(target)}
        m = np.zeros((len(target), len(source)), dtype=np.uint8)
        for j, w in enumerate(source):
            for v in self.boundary(w):
                m[index[v], j] ^= 1
        return m

    def boundary_matrix(self, q: int, n: int) -> np.ndarray:
        """Matrix of the differential from (degree q, length n) to (q + 1, n - 1)."""
        return self._matrix(self.words(q, n), self.words(q + 1, n - 1) if n else [])

    def homology(self, q: int) -> list[FormalSum[BarWord]]:
        """Cycle representatives of an F2-basis of HH in total degree ``q``."""
        if self.truncation < q + 2:
            raise ValueError(f"truncation {self.truncation} too small for degree {q}; need at least {q + 2}")
        classes = []
        for n in range(self.truncation):
            cells = self.words(q, n)
            if not cells:
                continue
            outgoing = self.boundary_matrix(q, n)
            incoming = self._matrix(self.words(q - 1, n + 1), cells)
            spanned = incoming.copy()
            for z in kernel_f2(outgoing):
                trial = np.concatenate([spanned, z.reshape(-1, 1)], axis=1)
                if rank_f2(trial) > rank_f2(spanned):
                    spanned = trial
                    classes.append(FormalSum((cells[i], 1) for i in np.flatnonzero(z)))
        return classes


def bar_boundary(C: HochschildComplex, w: BarWord | FormalSum[BarWord]) -> FormalSum[BarWord]:
    return C.boundary(w)


def hh_basis(C: HochschildComplex, q: int) -> list[FormalSum[BarWord]]:
    return C.homology(q)


def format_bar_sum(x: FormalSum[BarWord]) -> str:
    return x.mod2().format()


# --- evaluation maps -------------------------------------------------------


def _bar_sum(x: BarWord | FormalSum[BarWord]) -> FormalSum[BarWord]:
    return FormalSum.single(x) if isinstance(x, BarWord) else x.mod2()


def augmentation_f(algebra: GradedAlgebra, x: BarWord | FormalSum[BarWord]) -> Element:
    """Projection onto the length-0 summand; only defined for commutative algebras."""
    if not algebra.is_commutative():
        raise ValueError("the augmentation is only defined for commutative algebras")
    return _bar_sum(x).map(lambda w: w.entries[0] if w.length == 0 else None).mod2()


def psi_eval(algebra: CochainAlgebra, cycle: BarWord | FormalSum[BarWord], primitive: OperadElement) -> Element:
    """Evaluate a cyclic-bar cycle of length at most 2 into the cochain algebra.

    Length 0 maps by the identity, length 1 by ``a⊗b -> a ⌣₁ b`` and length 2
    by the cochain operation of ``primitive`` (a V with dV = U).
    """
    cycle = _bar_sum(cycle)
    if any(w.length > 2 for w in cycle):
        raise ValueError("psi_eval handles bar length at most 2")
    if primitive.arity != 3:
        raise ValueError("the primitive must have arity 3")
    C = HochschildComplex(algebra, truncation=3)
    if C.boundary(cycle):
        raise ValueError(f"{format_bar_sum(cycle)} is not a cycle")
    X = algebra.space
    out = FormalSum()
    for w in cycle:
        cochains = [algebra.to_cochain(a) for a in w.entries]
        if w.length == 0:
            value = cochains[0]
        elif w.length == 1:
            value = cup1(X, *cochains)
        else:
            value = cochain_operation(X, primitive, cochains)
        out = out + algebra.from_cochain(value)
    return out.mod2()


def eval_fundamental(algebra: CochainAlgebra, x: Element | str) -> int:
    """Pair with the fundamental class of the underlying space, in F2."""
    X = algebra.space
    if X.fundamental is None:
        raise ValueError(f"{X.name} has no fundamental class")
    return _element(x).coefficient(X.label(X.fundamental)) % 2


# --- algebra files ---------------------------------------------------------


def parse_algebra(text: str, name: str = "") -> GradedAlgebra:
    """Read the table format.

    One ``name degree`` line per basis element (append ``unit`` to flag the
    unit), then ``a*b = c+d`` lines. Omitted products are zero apart from the
    unit law. ``#`` starts a comment.
    """
    degrees: dict[str, int] = {}
    products: dict[tuple[str, str], list[str]] = {}
    unit = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if "=" in line:
                lhs, rhs = (s.strip() for s in line.split("=", 1))
                a, b = (s.strip() for s in lhs.split("*"))
                terms = [] if rhs == "0" else [t.strip() for t in rhs.split("+")]
                if any(not t for t in terms):
                    raise ValueError("empty product term")
                products[a, b] = terms
            else:
                fields = line.split()
                if len(fields) not in (2, 3) or (len(fields) == 3 and fields[2] != "unit"):
                    raise ValueError("expected 'name degree [unit]'")
                degrees[fields[0]] = int(fields[1])
                if len(fields) == 3:
                    if unit is not None:
                        raise ValueError("second unit")
                    unit = fields[0]
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}: {raw!r}") from None
    if unit is None:
        raise ValueError("no unit flagged")
    return GradedAlgebra(degrees, products, unit, name=name)
