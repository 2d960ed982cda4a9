"""Free groups of finite rank: reduced words, cyclic words, automorphisms,
abelianization and integer linear algebra.

Words are tuples of nonzero ints: ``k`` is the k-th generator, ``-k`` its
inverse.  Everything here is immutable.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

Word = tuple[int, ...]

DEFAULT_MAX_WORD_LENGTH = 10**6


class WordLengthExceeded(RuntimeError):
    """Raised when a computation produces a word longer than the cap."""


def max_word_length() -> int:
    raw = os.environ.get("HSBLF_MAX_WORD_LENGTH")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_WORD_LENGTH


def reduce(raw: Iterable[int]) -> Word:
    out: list[int] = []
    for x in raw:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(w: Sequence[int], n: int) -> Word:
    w = reduce(w)
    if n < 0:
        w, n = inverse(w), -n
    p, core, q = _cyclic_split(w)
    return multiply(p, core * n, q)


def is_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def _cyclic_split(w: Word) -> tuple[Word, Word, Word]:
    """w = p * core * p^-1 with core cyclically reduced (w must be reduced)."""
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[:i], w[i:j + 1], w[j + 1:]


def cyclic_reduce(w: Sequence[int]) -> Word:
    return _cyclic_split(reduce(w))[1]


def cyclic_reduce_with_conjugator(w: Sequence[int]) -> tuple[Word, Word]:
    """Return (p, core) with reduce(w) == p core p^-1."""
    p, core, _ = _cyclic_split(reduce(w))
    return p, core


def letter_key(x: int) -> int:
    # x1 < x1^-1 < x2 < x2^-1 < ...
    return 2 * x - 1 if x > 0 else -2 * x


def least_rotation(w: Sequence[int]) -> int:
    """Booth's algorithm on the letter order above."""
    s = [letter_key(x) for x in w]
    n = len(s)
    if n == 0:
        return 0
    s = s + s
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n


def _rotated(w: Word) -> Word:
    k = least_rotation(w)
    return w[k:] + w[:k]


def _keyed(w: Word) -> tuple[int, ...]:
    return tuple(letter_key(x) for x in w)


@dataclass(frozen=True)
class CyclicWord:
    """A conjugacy class; with orientation_sensitive=False also up to inversion."""

    letters: Word
    orientation_sensitive: bool = True

    @classmethod
    def of(cls, w: Sequence[int], orientation_sensitive: bool = True) -> "CyclicWord":
        core = cyclic_reduce(w)
        best = _rotated(core)
        if not orientation_sensitive:
            other = _rotated(inverse(core))
            if _keyed(other) < _keyed(best):
                best = other
        return cls(best, orientation_sensitive)

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "CyclicWord":
        return CyclicWord.of(inverse(self.letters), self.orientation_sensitive)

    def unoriented(self) -> "CyclicWord":
        return CyclicWord.of(self.letters, False)


def conjugacy_class(w: Sequence[int], orientation_sensitive: bool = True) -> CyclicWord:
    return CyclicWord.of(w, orientation_sensitive)


class FreeGroup:
    """Rank bookkeeping and validation; word arithmetic lives in module functions."""

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank

    def check(self, w: Sequence[int]) -> None:
        for x in w:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"invalid generator index {x} for rank {self.rank}")

    def reduce(self, raw: Sequence[int]) -> Word:
        self.check(raw)
        return reduce(raw)

    def multiply(self, u: Sequence[int], v: Sequence[int]) -> Word:
        self.check(u)
        self.check(v)
        return multiply(u, v)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeGroup) and other.rank == self.rank

    def __hash__(self) -> int:
        return hash(("FreeGroup", self.rank))


def substitute(images: Sequence[Word], w: Sequence[int], cap: int | None = None) -> Word:
    """Image of w under the substitution x_k -> images[k-1]; images must be reduced."""
    out: list[int] = []
    limit = max_word_length() if cap is None else cap
    inv = [tuple(-y for y in reversed(im)) for im in images]
    for x in w:
        seq = images[x - 1] if x > 0 else inv[-x - 1]
        # reduced images can only cancel against the end of out
        k, n = 0, len(seq)
        while k < n and out and out[-1] == -seq[k]:
            out.pop()
            k += 1
        out.extend(seq[k:] if k else seq)
        if len(out) > limit:
            raise WordLengthExceeded(f"word of length {len(out)} exceeds cap {limit}")
    return tuple(out)


class FreeAutomorphism:
    """Automorphism given by generator images, together with its inverse."""

    __slots__ = ("rank", "images", "inverse_images", "_hash")

    def __init__(self, images: Sequence[Sequence[int]], inverse_images: Sequence[Sequence[int]]):
        if len(images) != len(inverse_images):
            raise ValueError("images and inverse_images differ in length")
        self.rank = len(images)
        self.images: tuple[Word, ...] = tuple(reduce(w) for w in images)
        self.inverse_images: tuple[Word, ...] = tuple(reduce(w) for w in inverse_images)
        self._hash: int | None = None

    @classmethod
    def _reduced(cls, images: Sequence[Word], inverse_images: Sequence[Word]) -> "FreeAutomorphism":
        # constructor for words already known to be reduced
        f = cls.__new__(cls)
        f.rank = len(images)
        f.images = tuple(images)
        f.inverse_images = tuple(inverse_images)
        f._hash = None
        return f

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        gens = [(k,) for k in range(1, rank + 1)]
        return cls(gens, gens)

    def apply(self, w: Sequence[int], cap: int | None = None) -> Word:
        return substitute(self.images, w, cap)

    def apply_inverse(self, w: Sequence[int], cap: int | None = None) -> Word:
        return substitute(self.inverse_images, w, cap)

    def apply_cyclic(self, c: CyclicWord, cap: int | None = None) -> CyclicWord:
        return CyclicWord.of(self.apply(c.letters, cap), c.orientation_sensitive)

    def inverse(self) -> "FreeAutomorphism":
        return FreeAutomorphism(self.inverse_images, self.images)

    def then(self, other: "FreeAutomorphism", cap: int | None = None) -> "FreeAutomorphism":
        """Apply self first, then other."""
        return compose(other, self, cap)

    def is_identity(self) -> bool:
        return all(im == (k + 1,) for k, im in enumerate(self.images))

    def is_consistent(self) -> bool:
        gens = tuple((k,) for k in range(1, self.rank + 1))
        a = tuple(self.apply(self.inverse_images[k]) for k in range(self.rank))
        b = tuple(self.apply_inverse(self.images[k]) for k in range(self.rank))
        return a == gens and b == gens

    def max_image_length(self) -> int:
        return max((len(w) for w in self.images), default=0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeAutomorphism) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self) -> str:
        return f"FreeAutomorphism({list(self.images)!r})"


def compose(f: FreeAutomorphism, g: FreeAutomorphism, cap: int | None = None) -> FreeAutomorphism:
    """Functional composition f∘g: apply g first, then f."""
    if f.rank != g.rank:
        raise ValueError(f"rank mismatch {f.rank} vs {g.rank}")
    images = [f.apply(w, cap) for w in g.images]
    inverse_images = [g.apply_inverse(w, cap) for w in f.inverse_images]
    return FreeAutomorphism._reduced(images, inverse_images)


def inner_automorphism(rank: int, w: Sequence[int]) -> FreeAutomorphism:
    """x -> w x w^-1."""
    w = reduce(w)
    wi = inverse(w)
    return FreeAutomorphism(
        [multiply(w, (k,), wi) for k in range(1, rank + 1)],
        [multiply(wi, (k,), w) for k in range(1, rank + 1)],
    )


# ---------------------------------------------------------------- abelian part


def abelianize(w: Sequence[int], rank: int | None = None) -> tuple[int, ...]:
    n = rank if rank is not None else max((abs(x) for x in w), default=0)
    v = [0] * n
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


class IntegerMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[int]], cols: int | None = None):
        self.entries: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in entries)
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for r in self.entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntegerMatrix":
        return cls([[c[i] for c in columns] for i in range(rows)], len(columns))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntegerMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries], other.cols
        )

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix([[-x for x in r] for r in self.entries], self.cols)

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return IntegerMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        return self + (-other)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix([list(c) for c in zip(*self.entries)], self.rows) if self.rows else IntegerMatrix.zeros(self.cols, 0)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def charpoly(self) -> tuple[int, ...]:
        """Coefficients of det(xI - M), leading first."""
        import sympy

        x = sympy.Symbol("x")
        p = sympy.Matrix(self.entries).charpoly(x)
        return tuple(int(c) for c in p.all_coeffs())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntegerMatrix({[list(r) for r in self.entries]!r})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def abelianization_matrix(f: FreeAutomorphism) -> IntegerMatrix:
    return IntegerMatrix.from_columns([abelianize(w, f.rank) for w in f.images], f.rank)


def smith_normal_form(m: IntegerMatrix) -> tuple[list[int], IntegerMatrix, IntegerMatrix]:
    """Return (invariant factors, U, V) with U*m*V diagonal, d1 | d2 | ...

    The factor list has min(rows, cols) entries including zeros.
    """
    if m.rows == 0 or m.cols == 0:
        return [], IntegerMatrix.identity(m.rows), IntegerMatrix.identity(m.cols)
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_decomp

    D, U, V = smith_normal_decomp(Matrix(m.tolist()), domain=ZZ)
    d = [abs(int(D[i, i])) for i in range(min(m.rows, m.cols))]
    U_ = IntegerMatrix([[int(U[i, j]) for j in range(U.cols)] for i in range(U.rows)])
    V_ = IntegerMatrix([[int(V[i, j]) for j in range(V.cols)] for i in range(V.rows)])
    # sympy may return negative diagonal entries; sign-normalize via U
    fixed = []
    for i in range(len(d)):
        if int(D[i, i]) < 0:
            fixed.append(i)
    if fixed:
        U_ = IntegerMatrix(
            [[-x for x in r] if i in fixed else list(r) for i, r in enumerate(U_.entries)]
        )
    return _sort_factors(d, U_, V_, m)


def _sort_factors(d, U, V, m):
    # sympy already yields a divisibility chain with zeros last; assert it.
    nz = [x for x in d if x != 0]
    for a, b in zip(nz, nz[1:]):
        if b % a != 0:
            raise ArithmeticError("invariant factors are not a divisibility chain")
    if 0 in d and any(x != 0 for x in d[d.index(0):]):
        raise ArithmeticError("zero factor before nonzero factor")
    return d, U, V


def abelian_invariants(relation_matrix: IntegerMatrix, ngens: int) -> list[int]:
    """Invariant factors of Z^ngens / rowspace: torsion d>1 ascending, then 0 per free summand."""
    if relation_matrix.rows == 0:
        return [0] * ngens
    d, _, _ = smith_normal_form(relation_matrix)
    rank = sum(1 for x in d if x != 0)
    torsion = [x for x in d if x > 1]
    return torsion + [0] * (ngens - rank)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...]

    def relation_matrix(self) -> IntegerMatrix:
        return IntegerMatrix([abelianize(r, self.generator_count) for r in self.relators], self.generator_count)

    def abelian_invariants(self) -> list[int]:
        return abelian_invariants(self.relation_matrix(), self.generator_count)

    def simplified(self, max_relator_length: int = 200, rounds: int = 50) -> "GroupPresentation":
        """Bounded Tietze moves: eliminate a generator occurring exactly once
        in some relator, drop trivial and duplicate relators."""
        n = self.generator_count
        rels = [cyclic_reduce(r) for r in self.relators]
        live = list(range(1, n + 1))
        for _ in range(rounds):
            rels = _dedupe(rels)
            move = _find_elimination(rels, live, max_relator_length)
            if move is None:
                break
            gen, idx, image = move
            rest = [r for i, r in enumerate(rels) if i != idx]
            images = [(k,) for k in range(1, n + 1)]
            images[gen - 1] = image
            rels = [cyclic_reduce(substitute(images, r)) for r in rest]
            live.remove(gen)
        rels = _dedupe(rels)
        # renumber surviving generators 1..m
        ren = {g: i + 1 for i, g in enumerate(live)}
        out = tuple(tuple(ren[abs(x)] * (1 if x > 0 else -1) for x in r) for r in rels)
        return GroupPresentation(len(live), out)


def _dedupe(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        if not r:
            continue
        key = CyclicWord.of(r, False)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def _find_elimination(rels, live, max_len):
    best = None
    for idx, r in enumerate(rels):
        for g in live:
            pos = [i for i, x in enumerate(r) if abs(x) == g]
            if len(pos) != 1:
                continue
            i = pos[0]
            # r = u g^e v  ->  g = (v u)^-1 when e=1, (v u) when e=-1
            u, v = r[:i], r[i + 1:]
            vu = multiply(v, u)
            image = inverse(vu) if r[i] > 0 else vu
            cost = sum(len(x) * sum(1 for y in x if abs(y) == g) for x in rels) * len(image)
            if best is None or cost < best[0]:
                best = (cost, g, idx, image)
    if best is None:
        return None
    _, g, idx, image = best
    if any(len(r) * max(1, len(image)) > max_len for r in rels if any(abs(y) == g for y in r)):
        return None
    return g, idx, image
