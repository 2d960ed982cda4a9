"""Combinatorial model of the surface with one boundary component.

pi_1 is free on a1, b1, ..., ag, bg (generator 2i-1 is a_i, 2i is b_i) and the
boundary loop is delta = [a1,b1]...[ag,bg].  The closed surface is the
quotient by delta.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from ..freegroup import (
    CyclicWord,
    IntegerMatrix,
    Word,
    abelianize,
    cyclic_reduce,
    reduce,
)


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    boundary_components: int = 1  # 0 = closed quotient

    def __post_init__(self):
        if self.genus < 2:
            raise ValueError(f"genus must be at least 2, got {self.genus}")
        if self.boundary_components not in (0, 1):
            raise ValueError("boundary_components must be 0 or 1")

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def generators(self) -> list[str]:
        return [f"{c}{i}" for i in range(1, self.genus + 1) for c in "ab"]

    @property
    def boundary_word(self) -> Word:
        w: list[int] = []
        for i in range(1, self.genus + 1):
            w += [2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)]
        return tuple(w)

    def closed(self) -> "SurfaceModel":
        return SurfaceModel(self.genus, 0)

    def check(self, w: Sequence[int]) -> None:
        for x in w:
            if x == 0 or abs(x) > self.rank:
                raise ValueError(f"letter {x} outside rank {self.rank}")


def standard_model(g: int) -> SurfaceModel:
    return SurfaceModel(g, 1)


# -------------------------------------------------------------- serialization

_TOKEN = re.compile(r"([ab])(\d+)(?:\^(-?\d+))?$")


def generator_name(k: int) -> str:
    i, r = divmod(abs(k) - 1, 2)
    return f"{'ab'[r]}{i + 1}"


def format_word(w: Sequence[int]) -> str:
    """Run-length tokens: ``a1 b1^2 a1^-1``."""
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        n = (j - i) * (1 if w[i] > 0 else -1)
        name = generator_name(w[i])
        out.append(name if n == 1 else f"{name}^{n}")
        i = j
    return " ".join(out)


def parse_word(text: str, rank: int | None = None) -> Word:
    letters: list[int] = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad word token {tok!r}")
        kind, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        if idx < 1:
            raise ValueError(f"bad generator {tok!r}")
        gen = 2 * idx - 1 if kind == "a" else 2 * idx
        if rank is not None and gen > rank:
            raise ValueError(f"generator {kind}{idx} outside rank {rank}")
        n = 1 if exp is None else int(exp)
        letters += [gen if n > 0 else -gen] * abs(n)
    return reduce(letters)


# ---------------------------------------------------------------------- curves


@dataclass(frozen=True)
class Curve:
    """Free homotopy class of a closed curve.  ``word`` is a cyclically reduced
    oriented representative; simplicity is a trusted input flag."""

    word: Word
    declared_simple: bool = True
    name: str | None = field(default=None, compare=False)

    @classmethod
    def of(cls, w: Sequence[int], declared_simple: bool = True, name: str | None = None) -> "Curve":
        return cls(CyclicWord.of(w).letters, declared_simple, name)

    @property
    def oriented(self) -> CyclicWord:
        return CyclicWord.of(self.word, True)

    @property
    def cls(self) -> CyclicWord:
        return CyclicWord.of(self.word, False)

    def reversed(self) -> "Curve":
        return Curve.of(tuple(-x for x in reversed(self.word)), self.declared_simple, self.name)

    def same_curve(self, other: "Curve") -> bool:
        return self.cls == other.cls

    def is_trivial(self) -> bool:
        return not cyclic_reduce(self.word)


def homology_class(curve: Curve, rank: int) -> tuple[int, ...]:
    if not curve.declared_simple:
        raise ValueError("homology classification needs a curve declared simple")
    return abelianize(curve.word, rank)


def is_separating(curve: Curve, rank: int) -> bool:
    return not any(homology_class(curve, rank))


# -------------------------------------------------------------------- homology


@dataclass(frozen=True)
class HomologyData:
    genus: int

    @property
    def rank(self) -> int:
        return 2 * self.genus

    @property
    def intersection_form(self) -> IntegerMatrix:
        n = self.rank
        rows = [[0] * n for _ in range(n)]
        for i in range(self.genus):
            rows[2 * i][2 * i + 1] = 1
            rows[2 * i + 1][2 * i] = -1
        return IntegerMatrix(rows, n)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        total = 0
        for i in range(self.genus):
            total += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i]
        return total

    def transvection(self, c: Sequence[int]) -> IntegerMatrix:
        """Matrix of x -> x + <x, c> c (columns are images of basis vectors)."""
        n = self.rank
        cols = []
        for k in range(n):
            e = [0] * n
            e[k] = 1
            p = self.pairing(e, c)
            cols.append([e[i] + p * c[i] for i in range(n)])
        return IntegerMatrix.from_columns(cols, n)

    def preserves_form(self, m: IntegerMatrix) -> bool:
        J = self.intersection_form
        return m.transpose() @ J @ m == J
