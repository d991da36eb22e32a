"""The surjection operad: generators, signs, differential and composition.

A generator of ``X(r)_d`` is a sequence ``(u(1), ..., u(r+d))`` hitting every
value in ``{1..r}`` with no two equal neighbours. Sequences that repeat a
neighbour or miss a value are allowed as :class:`Surjection` objects but
count as zero inside an :class:`OperadElement`.

Sign conventions
----------------
Differential: each entry of the table arrangement carries a sign. The entry
that closes row ``i`` (a caesura) gets ``(-1)**i``; the last occurrence of a
value gets the opposite of the sign on that value's previous occurrence.
This makes ``d∘d = 0`` over Z and makes composition a chain map,
``d(u ∘_k v) = du ∘_k v + (-1)**deg(u) u ∘_k dv``.

Composition: ``u`` is cut at the occurrences of ``k`` into overlapping blocks
``B_0 .. B_n`` and each splitting of ``v`` gives components ``C_1 .. C_n``.
Each piece has degree (rows of its table it touches) - 1, and the term
carries the Koszul sign of moving ``B_0..B_n C_1..C_n`` to
``B_0 C_1 B_1 ... C_n B_n``.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .formal import FormalSum


class ParseError(ValueError):
    """Raised by the text parsers; ``position`` is the 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class Surjection:
    seq: tuple[int, ...]
    arity: int | None = None

    def __post_init__(self):
        seq = tuple(int(x) for x in self.seq)
        if not seq:
            raise ValueError("a surjection needs at least one entry")
        if min(seq) < 1:
            raise ValueError(f"entries must be positive: {seq}")
        arity = max(seq) if self.arity is None else int(self.arity)
        if arity < max(seq):
            raise ValueError(f"entry {max(seq)} exceeds arity {arity}")
        object.__setattr__(self, "seq", seq)
        object.__setattr__(self, "arity", arity)

    @property
    def degree(self) -> int:
        return len(self.seq) - self.arity

    @property
    def is_surjective(self) -> bool:
        return set(self.seq) == set(range(1, self.arity + 1))

    @property
    def is_degenerate(self) -> bool:
        return is_degenerate(self)

    @property
    def is_zero(self) -> bool:
        return self.is_degenerate or not self.is_surjective

    def __len__(self) -> int:
        return len(self.seq)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.seq)) + ")"

    def __repr__(self) -> str:
        return f"Surjection({self})"


def is_degenerate(u: Surjection | Sequence[int]) -> bool:
    seq = u.seq if isinstance(u, Surjection) else tuple(u)
    return any(a == b for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class TableArrangement:
    """Rows of ``u`` split after every caesura, with per-entry signs.

    ``signs[i]`` is +1/-1 for entries whose removal can survive, 0 for the
    entries of values occurring once.
    """

    rows: tuple[tuple[int, ...], ...]
    row_of: tuple[int, ...]
    caesuras: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def caesura_signs(self) -> tuple[int, ...]:
        return tuple(self.signs[i] for i in self.caesuras)

    @property
    def final_row_signs(self) -> tuple[int, ...]:
        start = len(self.row_of) - len(self.rows[-1])
        return self.signs[start:]


def table_arrangement(u: Surjection) -> TableArrangement:
    if u.is_zero:
        raise ValueError(f"table arrangement needs a nondegenerate surjection, got {u}")
    seq = u.seq
    last = {v: i for i, v in enumerate(seq)}
    row_of, caesuras, rows, current = [], [], [], []
    row = 0
    for i, v in enumerate(seq):
        row_of.append(row)
        current.append(v)
        if last[v] != i:
            caesuras.append(i)
            rows.append(tuple(current))
            current = []
            row += 1
    rows.append(tuple(current))

    signs = [0] * len(seq)
    previous: dict[int, int] = {}
    for i, v in enumerate(seq):
        if last[v] != i:
            signs[i] = (-1) ** row_of[i]
        elif v in previous:
            signs[i] = -signs[previous[v]]
        previous[v] = i
    return TableArrangement(tuple(rows), tuple(row_of), tuple(caesuras), tuple(signs))


class OperadElement:
    """A Z-linear combination of arity-``r`` surjections.

    Zero generators (degenerate or non-surjective) are dropped on
    construction.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: FormalSum[Surjection] | Mapping | Iterable = ()):
        if not isinstance(terms, FormalSum):
            terms = FormalSum(terms)
        for u in terms:
            if u.arity != arity:
                raise ValueError(f"{u} has arity {u.arity}, expected {arity}")
        self.arity = arity
        self.terms: FormalSum[Surjection] = FormalSum(
            (u, c) for u, c in terms.items() if not u.is_zero
        )

    @classmethod
    def of(cls, u: Surjection, coeff: int = 1) -> OperadElement:
        return cls(u.arity, FormalSum.single(u, coeff))

    @classmethod
    def zero(cls, arity: int) -> OperadElement:
        return cls(arity)

    def _check(self, other: OperadElement) -> None:
        if not isinstance(other, OperadElement) or other.arity != self.arity:
            raise ValueError("operad elements must share an arity")

    def __add__(self, other: OperadElement) -> OperadElement:
        self._check(other)
        return OperadElement(self.arity, self.terms + other.terms)

    def __sub__(self, other: OperadElement) -> OperadElement:
        self._check(other)
        return OperadElement(self.arity, self.terms - other.terms)

    def __neg__(self) -> OperadElement:
        return OperadElement(self.arity, -self.terms)

    def __mul__(self, scalar: int) -> OperadElement:
        return OperadElement(self.arity, self.terms * scalar)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, OperadElement):
            return self.arity == other.arity and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.arity, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, u: Surjection | Sequence[int]) -> int:
        if not isinstance(u, Surjection):
            u = Surjection(u, self.arity)
        return self.terms.coefficient(u)

    @property
    def degrees(self) -> frozenset[int]:
        return frozenset(u.degree for u in self.terms)

    def mod2(self) -> OperadElement:
        return OperadElement(self.arity, self.terms.mod2())

    def boundary(self) -> OperadElement:
        return OperadElement(self.arity, self.terms.map(lambda u: boundary(u).terms))

    def compose(self, k: int, other: OperadElement) -> OperadElement:
        out = FormalSum()
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out = out + compose(u, k, v).terms * (a * b)
        return OperadElement(self.arity + other.arity - 1, out)

    def act(self, sigma) -> OperadElement:
        return OperadElement(self.arity, self.terms.map(lambda u: symmetric_action(u, sigma)))

    def __str__(self) -> str:
        return self.terms.format()

    def __repr__(self) -> str:
        return f"OperadElement({self.arity}, {self})"


def boundary(u: Surjection) -> OperadElement:
    """Signed sum over single-entry deletions."""
    if u.is_zero:
        return OperadElement.zero(u.arity)
    signs = table_arrangement(u).signs
    terms = []
    for i, sign in enumerate(signs):
        if sign == 0:
            continue
        t = Surjection(u.seq[:i] + u.seq[i + 1 :], u.arity)
        if not t.is_zero:
            terms.append((t, sign))
    return OperadElement(u.arity, terms)


def koszul_sign(order: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign of listing items in ``order`` when item ``i`` has degree ``degrees[i]``."""
    parity = 0
    for a, b in itertools.combinations(range(len(order)), 2):
        if order[a] > order[b]:
            parity += degrees[order[a]] * degrees[order[b]]
    return -1 if parity % 2 else 1


def permutation_sign(order: Sequence[int]) -> int:
    return koszul_sign(order, [1] * len(order))


def compose(u: Surjection, k: int, v: Surjection) -> OperadElement:
    """Operadic composition ``u ∘_k v``."""
    r, s = u.arity, v.arity
    if not 1 <= k <= r:
        raise ValueError(f"composition slot {k} out of range 1..{r}")
    arity = r + s - 1
    if u.is_zero or v.is_zero:
        return OperadElement.zero(arity)
    rows_u = table_arrangement(u).row_of
    rows_v = table_arrangement(v).row_of
    hits = [i for i, x in enumerate(u.seq) if x == k]
    n = len(hits)
    cuts_u = [0, *hits, len(u) - 1]
    block_deg = [rows_u[cuts_u[m + 1]] - rows_u[cuts_u[m]] for m in range(n + 1)]
    # B_0..B_n are items 0..n, C_1..C_n are items n+1..2n
    order = [0]
    for m in range(n):
        order += [n + 1 + m, m + 1]

    terms = []
    for inner in itertools.combinations_with_replacement(range(len(v)), n - 1):
        splits = (0, *inner, len(v) - 1)
        comp_deg = [rows_v[splits[m + 1]] - rows_v[splits[m]] for m in range(n)]
        sign = koszul_sign(order, block_deg + comp_deg)
        seq: list[int] = []
        occurrence = 0
        for x in u.seq:
            if x == k:
                a, b = splits[occurrence], splits[occurrence + 1]
                seq.extend(y + k - 1 for y in v.seq[a : b + 1])
                occurrence += 1
            else:
                seq.append(x + s - 1 if x > k else x)
        terms.append((Surjection(seq, arity), sign))
    return OperadElement(arity, terms)


def _as_permutation(sigma, r: int) -> dict[int, int]:
    if isinstance(sigma, Mapping):
        perm = {int(a): int(b) for a, b in sigma.items()}
        perm = {i: perm.get(i, i) for i in range(1, r + 1)}
    else:
        images = [int(x) for x in sigma]
        if len(images) != r:
            raise ValueError(f"permutation has {len(images)} entries, expected {r}")
        perm = {i + 1: images[i] for i in range(r)}
    if set(perm) != set(range(1, r + 1)) or sorted(perm.values()) != list(range(1, r + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{r}")
    return perm


def symmetric_action(u: Surjection, sigma) -> Surjection:
    """Relabel entries ``u(i) -> sigma(u(i))``.

    ``sigma`` is either a mapping or the image list ``(sigma(1), ..., sigma(r))``.
    """
    perm = _as_permutation(sigma, u.arity)
    return Surjection(tuple(perm[x] for x in u.seq), u.arity)


def basis(r: int, d: int) -> list[Surjection]:
    """Nondegenerate surjections onto ``{1..r}`` of degree ``d``, in lexicographic order."""
    if r < 1 or d < 0:
        raise ValueError("need r >= 1 and d >= 0")
    length = r + d
    out: list[Surjection] = []

    def extend(prefix: list[int]) -> None:
        if len(prefix) == length:
            if len(set(prefix)) == r:
                out.append(Surjection(tuple(prefix), r))
            return
        missing = r - len(set(prefix))
        if missing > length - len(prefix):
            return
        for x in range(1, r + 1):
            if not prefix or prefix[-1] != x:
                prefix.append(x)
                extend(prefix)
                prefix.pop()

    extend([])
    return out


# --- text syntax -----------------------------------------------------------

_SURJ = re.compile(r"\s*\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*")


def parse_surjection(text: str, arity: int | None = None) -> Surjection:
    """Parse ``"(3,1,2,3,1)"``. Whitespace around entries is tolerated."""
    m = _SURJ.fullmatch(text)
    if m is None:
        pos = _first_bad_column(text)
        raise ParseError("malformed surjection", text, pos)
    values = [int(x) for x in m.group(1).split(",")]
    if 0 in values:
        raise ParseError("entries must be positive", text, text.index("0"))
    return Surjection(tuple(values), arity)


def _first_bad_column(text: str) -> int:
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    if not stripped.startswith("("):
        return offset
    expect_digit = True
    for i, ch in enumerate(text[offset + 1 :], start=offset + 1):
        if ch.isspace():
            continue
        if ch.isdigit():
            expect_digit = False
        elif ch == "," and not expect_digit:
            expect_digit = True
        elif ch == ")" and not expect_digit:
            rest = text[i + 1 :]
            return i + 1 + (len(rest) - len(rest.lstrip())) if rest.strip() else i
        else:
            return i
    return len(text)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+)\s*(?:·|\*)\s*)?(\([^()]*\))\s*")


def parse_element(text: str, arity: int | None = None) -> OperadElement:
    """Parse ``"(1,3,1,2) + (1,2,3,2) - 2 · (1,2,3,1)"``."""
    if text.strip() == "0":
        if arity is None:
            raise ParseError("zero element needs an explicit arity", text, 0)
        return OperadElement.zero(arity)
    pos, terms = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (terms and m.group(1) is None):
            raise ParseError("expected a signed surjection term", text, pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        try:
            u = parse_surjection(m.group(3), arity)
        except ParseError as err:
            raise ParseError("malformed surjection", text, m.start(3) + err.position) from None
        terms.append((u, sign * coeff))
        pos = m.end()
    if not terms:
        raise ParseError("empty element", text, 0)
    r = arity if arity is not None else max(u.arity for u, _ in terms)
    return OperadElement(r, [(Surjection(u.seq, r), c) for u, c in terms])
