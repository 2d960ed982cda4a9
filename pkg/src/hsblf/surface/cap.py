"""Cap homomorphism for the standard round curve (the core of the last b-band).

Cutting along c = b_g leaves a surface whose fundamental group is the
subgroup H = <a_1, b_1, ..., a_{g-1}, b_{g-1}, b_g, a_g b_g a_g^-1>; its
reduced words are exactly those in which every a_g^±1 sits in a block
a_g b_g^k a_g^-1 (k != 0).  Capping the two new boundary circles kills b_g and
a_g b_g a_g^-1, which on H amounts to deleting the letters a_g^±1, b_g^±1.
A map preserving c carries H onto itself, and the induced automorphism of the
free group on the first 2g-2 generators is the capped mapping class.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..freegroup import CyclicWord, FreeAutomorphism, Word, reduce


class NotInStabilizer(ValueError):
    """The mapping class does not preserve the round curve."""


def in_complement_subgroup(w: Sequence[int], g: int) -> bool:
    a, b = 2 * g - 1, 2 * g
    i, n = 0, len(w)
    while i < n:
        x = w[i]
        if x == -a:
            return False
        if x == a:
            j = i + 1
            if j >= n or abs(w[j]) != b:
                return False
            s = w[j]
            while j < n and w[j] == s:
                j += 1
            if j >= n or w[j] != -a:
                return False
            i = j + 1
            continue
        i += 1
    return True


def cap_word(w: Sequence[int], g: int) -> Word:
    a, b = 2 * g - 1, 2 * g
    return reduce(x for x in w if abs(x) not in (a, b))


def complement_generators(g: int) -> list[Word]:
    a, b = 2 * g - 1, 2 * g
    return [(k,) for k in range(1, 2 * g - 1)] + [(b,), (a, b, -a)]


@dataclass(frozen=True)
class CapHomomorphism:
    genus: int

    @property
    def curve(self) -> CyclicWord:
        return CyclicWord.of((2 * self.genus,), False)

    def preserves(self, f: FreeAutomorphism) -> bool:
        return f.apply_cyclic(self.curve) == self.curve

    def __call__(self, f: FreeAutomorphism) -> FreeAutomorphism:
        g = self.genus
        if not self.preserves(f):
            raise NotInStabilizer("mapping class does not preserve the round curve")
        for h in complement_generators(g):
            if not (in_complement_subgroup(f.apply(h), g) and in_complement_subgroup(f.apply_inverse(h), g)):
                raise NotInStabilizer("mapping class does not restrict to the curve complement")
        n = 2 * g - 2
        images = [cap_word(f.images[k], g) for k in range(n)]
        inverse_images = [cap_word(f.inverse_images[k], g) for k in range(n)]
        return FreeAutomorphism(images, inverse_images)
