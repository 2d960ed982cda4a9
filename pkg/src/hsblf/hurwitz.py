"""Hurwitz systems: ordered factorizations into positive Dehn twists.

An entry is a base twist (a chain twist name, or an explicit curve token
``[word]``) together with a conjugator h; it stands for the twist
h^-1 * t_base * h about the curve h(c_base).  Moves:

    forward  (g_i, g_{i+1}) -> (g_{i+1}, g_{i+1}^-1 g_i g_{i+1})
    backward (g_i, g_{i+1}) -> (g_i g_{i+1} g_i^-1, g_i)
    global   (g_1, ..., g_n) -> (h^-1 g_1 h, ..., h^-1 g_n h)
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .freegroup import CyclicWord, FreeAutomorphism, WordLengthExceeded, abelianize, cyclic_reduce
from .mcg import MappingClass, _invert_tokens, _reduce_tokens, generator_automorphism
from .surface.model import Curve, parse_word
from .surface.table import chain_twists
from .surfacegroup import Verdict

FORWARD, BACKWARD = 1, -1


def base_curve(genus: int, base: str) -> Curve:
    if base.startswith("["):
        return Curve.of(parse_word(base[1:-1], 2 * genus))
    return chain_twists(genus)[base].curve


@dataclass(frozen=True, eq=False)
class Entry:
    base: str
    conjugator: MappingClass

    @property
    def genus(self) -> int:
        return self.conjugator.genus

    @cached_property
    def twist(self) -> MappingClass:
        h = self.conjugator
        return MappingClass.from_tokens(_invert_tokens(h.word) + ((self.base, 1),) + h.word, h.genus, h.model)

    @cached_property
    def curve(self) -> Curve:
        return self.conjugator.apply_curve(base_curve(self.genus, self.base))

    @property
    def key(self) -> CyclicWord:
        return self.curve.cls

    def conjugate(self, h: MappingClass) -> "Entry":
        return Entry(self.base, _extend(self.conjugator, h.word))

    def text(self) -> str:
        if not self.conjugator.word:
            return self.base
        c = self.conjugator.text()
        return f"({c})^-1 {self.base} ({c})"


@dataclass(frozen=True)
class Factorization:
    entries: tuple[Entry, ...]

    @property
    def genus(self) -> int:
        return self.entries[0].genus if self.entries else 2

    def __len__(self) -> int:
        return len(self.entries)

    def curves(self) -> list[Curve]:
        return [e.curve for e in self.entries]

    def key(self) -> tuple[CyclicWord, ...]:
        return tuple(e.key for e in self.entries)

    @classmethod
    def of(cls, entries: Iterable[Entry]) -> "Factorization":
        return cls(tuple(entries))


def _extend(f: MappingClass, tokens: Sequence[tuple[str, int]]) -> MappingClass:
    """f followed by the twist word, one generator at a time.  Composing with
    a long automorphism in one step costs the product of the image lengths;
    stepping keeps the cost proportional to the result."""
    a = f.automorphism
    for name, e in tokens:
        step = generator_automorphism(f.genus, name)
        step = step if e > 0 else step.inverse()
        for _ in range(abs(e)):
            a = a.then(step)
    return MappingClass(f.genus, f.word + tuple(tokens), a, f.model)


def entry_from(base: str, conjugator: MappingClass | None = None, genus: int = 2) -> Entry:
    return Entry(base, conjugator if conjugator is not None else MappingClass.identity(genus))


def total_monodromy(f: Factorization, genus: int | None = None) -> MappingClass:
    g = genus if genus is not None else f.genus
    toks: list[tuple[str, int]] = []
    for e in f.entries:
        h = e.conjugator.word
        toks += _invert_tokens(h) + ((e.base, 1),) + h
    return MappingClass.from_tokens(_reduce_tokens(toks), g)


def elementary_move(f: Factorization, i: int, direction: int = FORWARD) -> Factorization:
    """Move at positions (i, i+1), 1-based i with 1 <= i < len(f)."""
    n = len(f)
    if not 1 <= i < n:
        raise IndexError(f"move index {i} out of range for length {n}")
    es = list(f.entries)
    a, b = es[i - 1], es[i]
    if direction == FORWARD:
        es[i - 1], es[i] = b, a.conjugate(b.twist)
    elif direction == BACKWARD:
        es[i - 1], es[i] = b.conjugate(a.twist.inverse()), a
    else:
        raise ValueError("direction must be +1 or -1")
    return Factorization(tuple(es))


def global_conjugate(f: Factorization, h: MappingClass) -> Factorization:
    return Factorization(tuple(e.conjugate(h) for e in f.entries))


def same_factorization(f1: Factorization, f2: Factorization) -> bool:
    return f1.key() == f2.key()


def generator_ball(genus: int, radius: int) -> list[MappingClass]:
    """Reduced words of length <= radius in the table twists, shortest first."""
    names = chain_twists(genus).names
    letters = [(n, 1) for n in names] + [(n, -1) for n in names]
    words: list[tuple] = [()]
    frontier: list[tuple] = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in letters:
                if w and w[-1][0] == x[0] and w[-1][1] == -x[1]:
                    continue
                nxt.append(w + (x,))
        words += nxt
        frontier = nxt
    return [MappingClass.from_tokens(w, genus) for w in words]


# ---------------------------------------------------------------- search


class _CurveSpace:
    """Curves met during a search, keyed by unoriented canonical form.

    Each curve keeps one (base, conjugator tokens) description; twists are
    applied to curves token by token with cyclic reduction after each step,
    which is far cheaper than composing the full automorphisms.
    """

    def __init__(self, genus: int, cap: int | None = None):
        self.genus = genus
        self.cap = cap
        self.info: dict[CyclicWord, tuple[str, tuple]] = {}
        self._steps: dict[tuple[str, int], FreeAutomorphism] = {}

    def _step(self, name: str, e: int) -> FreeAutomorphism:
        key = (name, e)
        if key not in self._steps:
            a = generator_automorphism(self.genus, name)
            self._steps[key] = a if e > 0 else a.inverse()
        return self._steps[key]

    def apply(self, tokens, word) -> tuple:
        w = cyclic_reduce(word)
        for name, e in tokens:
            step = self._step(name, 1 if e > 0 else -1)
            for _ in range(abs(e)):
                w = cyclic_reduce(step.apply(w, self.cap))
        return w

    def add(self, e: Entry) -> CyclicWord:
        k = e.key
        self.info.setdefault(k, (e.base, e.conjugator.word))
        return k

    def twist_tokens(self, k: CyclicWord) -> tuple:
        base, conj = self.info[k]
        return _reduce_tokens(_invert_tokens(conj) + ((base, 1),) + conj)

    def image(self, by: CyclicWord, c: CyclicWord, inverse: bool = False) -> CyclicWord:
        """Curve t_by(c) (or t_by^-1(c)), registered with its description."""
        tw = self.twist_tokens(by)
        if inverse:
            tw = _invert_tokens(tw)
        k = CyclicWord.of(self.apply(tw, c.letters), False)
        if k not in self.info:
            base, conj = self.info[c]
            self.info[k] = (base, _reduce_tokens(conj + tw))
        return k

    def move(self, state: tuple, i: int, direction: int) -> tuple:
        s = list(state)
        a, b = s[i - 1], s[i]
        if direction == FORWARD:
            s[i - 1], s[i] = b, self.image(b, a)
        else:
            s[i - 1], s[i] = self.image(a, b, inverse=True), a
        return tuple(s)


def _bfs(space: _CurveSpace, start: tuple, depth: int) -> tuple[dict[tuple, tuple], int]:
    """(state -> moves (i, direction) reaching it from start, number of
    moves skipped because a curve outgrew the search cap)."""
    seen = {start: ()}
    pruned = 0
    queue = deque([start])
    n = len(start)
    while queue:
        s = queue.popleft()
        path = seen[s]
        if len(path) >= depth:
            continue
        for i in range(1, n):
            for d in (FORWARD, BACKWARD):
                try:
                    t = space.move(s, i, d)
                except WordLengthExceeded:
                    pruned += 1
                    continue
                if t not in seen:
                    seen[t] = path + ((i, d),)
                    queue.append(t)
    return seen, pruned


@dataclass
class HurwitzResult:
    verdict: Verdict
    conjugator: MappingClass | None = None
    moves: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        out = self.verdict.to_json()
        out["witness"] = None
        if self.verdict.is_equal:
            out["witness"] = {
                "conjugator": self.conjugator.text() if self.conjugator else "1",
                "moves": [[i, "forward" if d == FORWARD else "backward"] for i, d in self.moves],
            }
        out["reason"] = self.verdict.reason
        return out


def _charpoly(f: Factorization) -> tuple[int, ...]:
    return total_monodromy(f).homology_matrix().charpoly()


def _separating_count(f: Factorization) -> int:
    n = 2 * f.genus
    return sum(1 for c in f.curves() if not any(abelianize(c.word, n)))


def hurwitz_equivalent_bounded(
    f1: Factorization,
    f2: Factorization,
    depth: int = 6,
    ball_radius: int = 2,
    curve_cap: int | None = None,
) -> HurwitzResult:
    """Search move sequences of length <= depth (after one global conjugation
    from the generator ball) carrying f1 to f2.

    Curves longer than curve_cap (default: 8 times the longest input curve,
    at least 10000 letters) are not explored; a search that skipped moves
    this way can end in "unknown" but never in a false "distinct".
    """
    if len(f1) != len(f2):
        return HurwitzResult(Verdict("distinct", depth, None, "lengths differ"))
    if f1.key() == f2.key():
        return HurwitzResult(Verdict("equal", depth, None, "identical"), MappingClass.identity(f1.genus), [])
    if _separating_count(f1) != _separating_count(f2):
        return HurwitzResult(Verdict("distinct", depth, None, "separating counts differ"))
    if ball_radius == 0:
        if not total_monodromy(f1).automorphism == total_monodromy(f2).automorphism:
            return HurwitzResult(Verdict("distinct", depth, None, "total monodromies differ"))
    elif _charpoly(f1) != _charpoly(f2):
        return HurwitzResult(Verdict("distinct", depth, None, "total monodromy homology differs"))
    g = f1.genus
    if curve_cap is None:
        longest = max(len(k.letters) for k in f1.key() + f2.key())
        curve_cap = max(10000, 8 * longest)
    space = _CurveSpace(g, curve_cap)
    for e in f2.entries:
        space.add(e)
    back, pruned = _bfs(space, f2.key(), depth // 2)
    fwd_depth = depth - depth // 2
    seen_starts = set()
    for h in generator_ball(g, ball_radius):
        start_f = global_conjugate(f1, h) if h.word else f1
        for e in start_f.entries:
            space.add(e)
        start = start_f.key()
        if start in seen_starts:
            continue
        seen_starts.add(start)
        fwd, p = _bfs(space, start, fwd_depth)
        pruned += p
        meet = [s for s in fwd if s in back]
        if meet:
            s = min(meet, key=lambda s: (len(fwd[s]) + len(back[s]), fwd[s], back[s]))
            moves = list(fwd[s]) + [(i, -d) for i, d in reversed(back[s])]
            return HurwitzResult(Verdict("equal", depth, None, "move sequence found"), h, moves)
    reason = "search exhausted"
    if pruned:
        reason += f"; {pruned} moves skipped at curve length cap {curve_cap}"
    return HurwitzResult(Verdict("unknown", depth, None, reason))


def apply_moves(f: Factorization, moves: Sequence[tuple[int, int]]) -> Factorization:
    for i, d in moves:
        f = elementary_move(f, i, d)
    return f
