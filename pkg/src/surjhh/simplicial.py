"""Finite simplicial sets, normalized chains and the interval-cut action.

A simplex is named by a :class:`SimplexRef`: a strictly decreasing word of
degeneracy indices applied to a nondegenerate generator. Chains are
``FormalSum[str]`` over generator names, and r-fold tensors are
``FormalSum[tuple[str, ...]]``. Degenerate simplices are zero in both.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .formal import FormalSum
from .operad import OperadElement, Surjection, koszul_sign, permutation_sign

TENSOR = " ⊗ "

#: Interval-cut sign conventions, see :func:`interval_cuts`.
SIGN_CONVENTIONS = ("tau", "koszul")


@dataclass(frozen=True, order=True)
class SimplexRef:
    generator: str
    base_dim: int
    degeneracies: tuple[int, ...] = ()

    def __post_init__(self):
        degs = tuple(self.degeneracies)
        if any(a <= b for a, b in zip(degs, degs[1:])):
            raise ValueError(f"degeneracy word {degs} is not strictly decreasing")
        object.__setattr__(self, "degeneracies", degs)

    @property
    def dim(self) -> int:
        return self.base_dim + len(self.degeneracies)

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degeneracies)

    def __str__(self) -> str:
        word = "".join(f"s{i}" for i in self.degeneracies)
        return f"{word}({self.generator})" if word else self.generator


def normalize_degeneracies(word: Sequence[int]) -> tuple[int, ...]:
    """Rewrite ``s_{a_1} ... s_{a_m}`` (outermost first) into decreasing form.

    Uses ``s_i s_j = s_{j+1} s_i`` for ``i <= j``.
    """
    w = list(word)
    changed = True
    while changed:
        changed = False
        for p in range(len(w) - 1):
            if w[p] <= w[p + 1]:
                w[p], w[p + 1] = w[p + 1] + 1, w[p]
                changed = True
    return tuple(w)


class SimplicialSet:
    """A finite simplicial set given by generators and their faces.

    ``faces[name][i]`` is ``d_i`` of the generator, as a :class:`SimplexRef`.
    The simplicial identities are checked on construction.
    """

    def __init__(
        self,
        name: str,
        generators: Mapping[str, int],
        faces: Mapping[str, Sequence[SimplexRef]],
        *,
        fundamental: str | None = None,
        labels: Mapping[str, str] | None = None,
    ):
        self.name = name
        self.generators = dict(generators)
        self.faces = {g: tuple(fs) for g, fs in faces.items()}
        self.fundamental = fundamental
        self.labels = dict(labels or {})
        for g, n in self.generators.items():
            fs = self.faces.get(g, ())
            if n == 0 and fs:
                raise ValueError(f"vertex {g} cannot have faces")
            if n > 0 and len(fs) != n + 1:
                raise ValueError(f"{g} has dimension {n} but {len(fs)} faces")
            for f in fs:
                if f.dim != n - 1 or self.generators.get(f.generator) != f.base_dim:
                    raise ValueError(f"bad face {f} of {g}")
        self.check_identities()

    def __repr__(self) -> str:
        return f"SimplicialSet({self.name!r})"

    def dim(self, generator: str) -> int:
        try:
            return self.generators[generator]
        except KeyError:
            raise KeyError(f"{self.name} has no generator {generator!r}") from None

    def generators_in(self, n: int) -> list[str]:
        return [g for g, d in self.generators.items() if d == n]

    @property
    def max_dim(self) -> int:
        return max(self.generators.values())

    def ref(self, generator: str) -> SimplexRef:
        return SimplexRef(generator, self.dim(generator))

    def label(self, generator: str) -> str:
        """Name of the dual cochain of ``generator``."""
        return self.labels.get(generator, f"{generator}*")

    def face(self, s: SimplexRef | str, i: int) -> SimplexRef:
        """``d_i s`` in normal form."""
        if isinstance(s, str):
            s = self.ref(s)
        if not 0 <= i <= s.dim or s.dim == 0:
            raise IndexError(f"face index {i} out of range for a {s.dim}-simplex")
        prefix: list[int] = []
        for p, j in enumerate(s.degeneracies):
            if i < j:
                prefix.append(j - 1)
            elif i in (j, j + 1):
                rest = list(s.degeneracies[p + 1 :])
                return SimplexRef(s.generator, s.base_dim, normalize_degeneracies(prefix + rest))
            else:
                prefix.append(j)
                i -= 1
        inner = self.faces[s.generator][i]
        word = normalize_degeneracies(prefix + list(inner.degeneracies))
        return SimplexRef(inner.generator, inner.base_dim, word)

    def restrict(self, s: SimplexRef | str, vertices: Sequence[int]) -> SimplexRef:
        """The face of ``s`` spanned by the given increasing vertex positions."""
        if isinstance(s, str):
            s = self.ref(s)
        keep = set(vertices)
        if len(keep) != len(vertices) or any(v < 0 or v > s.dim for v in keep):
            raise ValueError(f"bad vertex list {vertices} for a {s.dim}-simplex")
        for v in sorted(set(range(s.dim + 1)) - keep, reverse=True):
            s = self.face(s, v)
        return s

    def check_identities(self) -> None:
        """Assert ``d_i d_j = d_{j-1} d_i`` (i < j) on every generator."""
        for g, n in self.generators.items():
            if n < 2:
                continue
            x = self.ref(g)
            for j in range(n + 1):
                for i in range(j):
                    lhs = self.face(self.face(x, j), i)
                    rhs = self.face(self.face(x, i), j - 1)
                    if lhs != rhs:
                        raise ValueError(f"simplicial identity fails on {g}: d{i}d{j} != d{j - 1}d{i}")

    def boundary(self, chain: FormalSum[str] | str) -> FormalSum[str]:
        """Normalized boundary ``sum (-1)^i d_i``."""
        if isinstance(chain, str):
            chain = FormalSum.single(chain)

        def d(g: str) -> FormalSum[str]:
            n = self.dim(g)
            if n == 0:
                return FormalSum()
            out = []
            for i in range(n + 1):
                f = self.face(g, i)
                if not f.is_degenerate:
                    out.append((f.generator, (-1) ** i))
            return FormalSum(out)

        return chain.map(d)

    def tensor_boundary(self, tensor: FormalSum[tuple[str, ...]]) -> FormalSum[tuple[str, ...]]:
        """Koszul boundary on ``N(X)^{⊗r}``."""

        def d(t: tuple[str, ...]) -> FormalSum[tuple[str, ...]]:
            out = []
            shift = 0
            for j, g in enumerate(t):
                sign = (-1) ** shift
                for h, c in self.boundary(g).items():
                    out.append((t[:j] + (h,) + t[j + 1 :], sign * c))
                shift += self.dim(g)
            return FormalSum(out)

        return tensor.map(d)


def standard_simplex(n: int) -> SimplicialSet:
    """``Δ^n``; generators are named ``[v0,...,vk]`` by their vertices."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def name(vs: Sequence[int]) -> str:
        return "[" + ",".join(map(str, vs)) + "]"

    generators, faces = {}, {}
    for k in range(n + 1):
        for vs in itertools.combinations(range(n + 1), k + 1):
            generators[name(vs)] = k
            if k:
                faces[name(vs)] = [
                    SimplexRef(name(vs[:i] + vs[i + 1 :]), k - 1) for i in range(k + 1)
                ]
    return SimplicialSet(f"delta:{n}", generators, faces, fundamental=name(range(n + 1)))


def sphere(n: int) -> SimplicialSet:
    """``Δ^n / ∂Δ^n``: a vertex ``e0`` and one nondegenerate ``en``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    top = f"e{n}"
    collapsed = SimplexRef("e0", 0, tuple(range(n - 2, -1, -1)))
    return SimplicialSet(
        f"sphere:{n}",
        {"e0": 0, top: n},
        {top: [collapsed] * (n + 1)},
        fundamental=top,
        labels={"e0": "1", top: "α"},
    )


def parse_space(text: str) -> SimplicialSet:
    kind, _, arg = text.strip().partition(":")
    if kind not in ("delta", "sphere") or not arg.isdigit():
        raise ValueError(f"unknown space {text!r}; expected delta:n or sphere:n")
    return standard_simplex(int(arg)) if kind == "delta" else sphere(int(arg))


_CHAIN_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*·\s*)?(\[[^\]]*\]|[A-Za-z0-9_]+)\s*")


def parse_chain(X: SimplicialSet, text: str) -> FormalSum[str]:
    """Parse ``"e2"`` or ``"[0,1,2] - 2 · [0,1,3]"`` into a chain on ``X``."""
    pos, terms = 0, []
    while pos < len(text):
        m = _CHAIN_TERM.match(text, pos)
        if m is None or m.end() == pos or (terms and m.group(1) is None):
            bad = re.compile(r"\s*[+-]?\s*").match(text, pos).end()
            raise ValueError(f"cannot parse chain {text!r} at column {bad + 1}")
        name = m.group(3)
        if name not in X.generators:
            raise ValueError(f"{X.name} has no generator {name!r} (column {m.start(3) + 1})")
        coeff = int(m.group(2) or 1)
        terms.append((name, -coeff if m.group(1) == "-" else coeff))
        pos = m.end()
    if not terms:
        raise ValueError(f"empty chain {text!r}")
    return FormalSum(terms)


def format_tensor(t: tuple[str, ...]) -> str:
    return TENSOR.join(t)


# --- interval cuts ---------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    """One way of cutting ``[0, n]`` into ``len(u)`` labelled intervals.

    ``points`` are ``0 = n_0 <= ... <= n_L = n``; interval ``i`` is
    ``[n_i, n_{i+1}]`` and carries the value ``u(i+1)``. ``factors[k-1]``
    joins the vertex lists of all intervals labelled ``k``.
    """

    points: tuple[int, ...]
    factors: tuple[tuple[int, ...], ...]
    sign: int

    @property
    def is_degenerate(self) -> bool:
        return any(a == b for f in self.factors for a, b in zip(f, f[1:]))


def _cut_sign(u: Surjection, points: Sequence[int], convention: str) -> int:
    order = sorted(range(len(u)), key=lambda i: (u.seq[i], i))
    if convention == "tau":
        return permutation_sign(order)
    if convention == "koszul":
        last = {v: i for i, v in enumerate(u.seq)}
        degrees, position = [], 0
        for i, v in enumerate(u.seq):
            length = points[i + 1] - points[i]
            inner = last[v] != i
            degrees.append(length + inner)
            if inner:
                position += points[i + 1]
        return koszul_sign(order, degrees) * (-1) ** position
    raise ValueError(f"unknown sign convention {convention!r}; use one of {SIGN_CONVENTIONS}")


def interval_cuts(u: Surjection, n: int, signs: str = "tau") -> list[Cut]:
    """Every interval cut of ``[0, n]`` for ``u``, degenerate ones included.

    ``signs="tau"`` gives each cut the sign of the permutation sorting the
    labelled intervals by value, which depends on ``u`` only. It reproduces
    the integral signs printed alongside the V-table on ``e2`` but is a chain
    map only mod 2. ``signs="koszul"`` weights each interval by its length,
    plus one for non-final occurrences, and adds the position sign
    ``(-1)^(sum of right endpoints of non-final intervals)``. That gives an
    integral chain map: ``AW(du) = ∂ AW(u) - (-1)^deg(u) AW(u) ∂``.
    """
    if u.is_degenerate:
        raise ValueError(f"{u} is degenerate")
    L = len(u)
    out = []
    for inner in itertools.combinations_with_replacement(range(n + 1), L - 1):
        points = (0, *inner, n)
        factors = []
        for k in range(1, u.arity + 1):
            vs: list[int] = []
            for i, v in enumerate(u.seq):
                if v == k:
                    vs.extend(range(points[i], points[i + 1] + 1))
            factors.append(tuple(vs))
        out.append(Cut(points, tuple(factors), _cut_sign(u, points, signs)))
    return out


def _simplex_action(u: Surjection, X: SimplicialSet, g: str, signs: str) -> FormalSum[tuple[str, ...]]:
    n = X.dim(g)
    out = []
    for cut in interval_cuts(u, n, signs):
        if cut.is_degenerate:
            continue
        faces = [X.restrict(g, f) for f in cut.factors]
        if any(f.is_degenerate for f in faces):
            continue
        out.append((tuple(f.generator for f in faces), cut.sign))
    return FormalSum(out)


def interval_cut_action(
    u: Surjection | OperadElement,
    X: SimplicialSet,
    chain: FormalSum[str] | str,
    signs: str = "tau",
) -> FormalSum[tuple[str, ...]]:
    """``AW(u)(chain)`` in ``N(X)^{⊗r}``; degenerate factors kill their term."""
    if isinstance(chain, str):
        chain = FormalSum.single(chain)
    ops: Iterable[tuple[Surjection, int]]
    ops = u if isinstance(u, OperadElement) else [(u, 1)]
    total: FormalSum[tuple[str, ...]] = FormalSum()
    for op, c in ops:
        if op.is_zero:
            continue
        total = total + chain.map(lambda g: _simplex_action(op, X, g, signs)) * c
    return total
