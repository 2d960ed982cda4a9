"""The closed surface group <a1,b1,...,ag,bg | delta> (g >= 2).

Every signed letter occurs exactly once in the relator delta, so pieces have
length 1 and the presentation is C'(1/7); Dehn's algorithm solves the word
problem: replace any subword that is more than half of a cyclic conjugate of
delta^±1 by the inverse of the complementary part, until none is left.

Conjugacy is handled by a bounded search over cyclically Dehn-reduced forms
and half-relator swaps.  Inequality is certified either through homology or
through a homomorphism onto a symmetric group.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .freegroup import (
    CyclicWord,
    FreeAutomorphism,
    Word,
    abelianize,
    inverse,
    multiply,
    reduce,
)


@dataclass(frozen=True)
class Verdict:
    status: str  # "equal" | "distinct" | "unknown"
    bound: int | None = None
    witness: Word | None = None
    reason: str = field(default="", compare=False)

    def __post_init__(self):
        if self.status not in ("equal", "distinct", "unknown"):
            raise ValueError(f"bad verdict status {self.status!r}")

    @property
    def is_equal(self) -> bool:
        return self.status == "equal"

    @property
    def is_distinct(self) -> bool:
        return self.status == "distinct"

    def to_json(self, format_word: Callable[[Sequence[int]], str] | None = None) -> dict:
        w = None
        if self.witness is not None:
            w = format_word(self.witness) if format_word else list(self.witness)
        return {"status": self.status, "bound": self.bound, "witness": w}


def boundary_word(g: int) -> Word:
    w: list[int] = []
    for i in range(1, g + 1):
        w += [2 * i - 1, 2 * i, -(2 * i - 1), -(2 * i)]
    return tuple(w)


@lru_cache(maxsize=None)
def _successors(g: int) -> tuple[dict[int, int], dict[int, int]]:
    d = boundary_word(g)
    di = inverse(d)
    n = len(d)
    return (
        {d[i]: d[(i + 1) % n] for i in range(n)},
        {di[i]: di[(i + 1) % n] for i in range(n)},
    )


def _run(w: Sequence[int], i: int, succ: dict[int, int], limit: int, cyclic: bool = False) -> int:
    n = len(w)
    length = 1
    j = i
    while length < limit:
        k = j + 1
        if k >= n:
            if not cyclic:
                break
            k -= n
        if w[k] != succ[w[j]]:
            break
        j = k
        length += 1
    return length


def _complement(start: int, k: int, succ: dict[int, int], rel_len: int) -> list[int]:
    """Letters following a run of length k starting at ``start``; the run
    equals the inverse of these."""
    x = start
    for _ in range(k - 1):
        x = succ[x]
    out = []
    for _ in range(rel_len - k):
        x = succ[x]
        out.append(x)
    return out


def dehn_reduce(w: Sequence[int], g: int) -> Word:
    """Shortest-rewriting fixpoint of Dehn's algorithm; empty iff w = 1."""
    succs = _successors(g)
    rel = 4 * g
    half = 2 * g
    cur = list(reduce(w))
    i = 0
    while i < len(cur):
        done = False
        for succ in succs:
            L = _run(cur, i, succ, rel)
            if L > half:
                comp = _complement(cur[i], L, succ, rel)
                cur = list(reduce(cur[:i] + [-x for x in reversed(comp)] + cur[i + L:]))
                i = max(0, i - rel)
                done = True
                break
        if not done:
            i += 1
    return tuple(cur)


def is_trivial(w: Sequence[int], g: int) -> bool:
    return not dehn_reduce(w, g)


def equal_words(u: Sequence[int], v: Sequence[int], g: int) -> bool:
    return is_trivial(multiply(u, inverse(v)), g)


def cyclic_dehn_reduce(w: Sequence[int], g: int) -> tuple[Word, Word]:
    """Return (p, core) with w = p core p^-1 in the group and core cyclically
    Dehn-reduced (no long relator run even across the wrap)."""
    succs = _successors(g)
    rel = 4 * g
    half = 2 * g
    p: Word = ()
    core = dehn_reduce(w, g)
    while True:
        q, core = _split(core)
        p = multiply(p, q)
        n = len(core)
        changed = False
        for r in range(n):
            for succ in succs:
                L = _run(core, r, succ, min(rel, n), cyclic=True)
                if L > half:
                    # rotate so the run starts at 0 : core = A B -> B A = A^-1 (A B) A
                    A = core[:r]
                    rot = core[r:] + core[:r]
                    p = multiply(p, A)
                    comp = _complement(rot[0], L, succ, rel)
                    core = dehn_reduce(tuple(-x for x in reversed(comp)) + rot[L:], g)
                    changed = True
                    break
            if changed:
                break
        if not changed:
            return p, core


def _split(w: Word) -> tuple[Word, Word]:
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[:i], w[i:j + 1]


def half_swaps(core: Word, g: int) -> Iterable[tuple[Word, Word]]:
    """Cyclic rewrites replacing one exact half-relator run by the other half.
    Yields (conjugator A, new core) with old = A new A^-1 in the group."""
    succs = _successors(g)
    rel = 4 * g
    half = 2 * g
    n = len(core)
    if n < half:
        return
    for r in range(n):
        for succ in succs:
            L = _run(core, r, succ, min(half, n), cyclic=True)
            if L == half:
                A = core[:r]
                rot = core[r:] + core[:r]
                comp = _complement(rot[0], L, succ, rel)
                new = tuple(-x for x in reversed(comp)) + rot[L:]
                q, new = _split(reduce(new))
                # old core = A rot A^-1, rot = new' in group with conjugator q
                yield multiply(A, q), new


def conjugacy_orbit(w: Sequence[int], g: int, limit: int = 2000) -> dict[CyclicWord, Word]:
    """Cyclic forms reachable by cyclic Dehn reduction and half swaps, mapped to
    a conjugator c with w = c x c^-1 for a rotation x of the form."""
    p, core = cyclic_dehn_reduce(w, g)
    out: dict[CyclicWord, Word] = {}
    queue = deque([(p, core)])
    seen = set()
    while queue and len(out) < limit:
        c, cur = queue.popleft()
        key = CyclicWord.of(cur)
        if key in seen:
            continue
        seen.add(key)
        out[key] = multiply(c, _rotation_conjugator(cur, key.letters))
        for A, new in half_swaps(cur, g):
            q, new2 = cyclic_dehn_reduce(new, g)
            queue.append((multiply(c, A, q), new2))
    return out


def _rotation_conjugator(cur: Word, target: Word) -> Word:
    """A with cur = A target A^-1 when target is a rotation of cur."""
    n = len(cur)
    for r in range(max(n, 1)):
        if cur[r:] + cur[:r] == target:
            return cur[:r]
    raise ValueError("not a rotation")


# ---------------------------------------------------------- finite quotients

Perm = tuple[int, ...]


def _pmul(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def _pinv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def _cycles(p: Perm) -> list[list[int]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(j)
                j = p[j]
            out.append(c)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in _cycles(p)))


class Representation:
    """A homomorphism from the closed surface group to S_n (letters act left to right)."""

    def __init__(self, g: int, images: Sequence[Perm]):
        self.g = g
        self.n = len(images[0])
        self.images = tuple(images)
        self.inverses = tuple(_pinv(p) for p in images)
        if self.evaluate(boundary_word(g)) != tuple(range(self.n)):
            raise ValueError("images do not satisfy the surface relator")

    def evaluate(self, w: Sequence[int]) -> Perm:
        out = tuple(range(self.n))
        for x in w:
            out = _pmul(out, self.images[x - 1] if x > 0 else self.inverses[-x - 1])
        return out

    def is_transitive(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for p in self.images:
                if p[i] not in seen:
                    seen.add(p[i])
                    stack.append(p[i])
        return len(seen) == self.n


def _solve_commutator(A: Perm, T: Perm) -> Perm | None:
    """B with B*A^-1*B^-1 = T (apply-left-first product), if one exists."""
    Ai = _pinv(A)
    ct = {}
    for c in _cycles(Ai):
        ct.setdefault(len(c), []).append(c)
    B = [None] * len(A)
    for c in _cycles(T):
        pool = ct.get(len(c))
        if not pool:
            return None
        d = pool.pop()
        for x, y in zip(c, d):
            B[x] = y
    return tuple(B)


@lru_cache(maxsize=None)
def representations(g: int, count: int = 24, seed: int = 20240601) -> tuple[Representation, ...]:
    rng = random.Random(seed + g)
    reps: list[Representation] = []
    sizes = (5, 6, 7)
    tries = 0
    while len(reps) < count and tries < count * 200:
        tries += 1
        n = sizes[len(reps) % len(sizes)]
        imgs: list[Perm] = []
        for _ in range(2 * g - 1):
            p = list(range(n))
            rng.shuffle(p)
            imgs.append(tuple(p))
        ident = tuple(range(n))
        P = ident
        for i in range(g - 1):
            a, b = imgs[2 * i], imgs[2 * i + 1]
            P = _pmul(P, _pmul(_pmul(a, b), _pmul(_pinv(a), _pinv(b))))
        A = imgs[-1]
        T = _pmul(_pinv(A), _pinv(P))
        B = _solve_commutator(A, T)
        if B is None:
            continue
        try:
            rep = Representation(g, imgs + [B])
        except ValueError:
            continue
        if rep.is_transitive():
            reps.append(rep)
    return tuple(reps)


def _simultaneously_conjugate(xs: Sequence[Perm], ys: Sequence[Perm]) -> bool:
    """Is there s with s^-1 x_k s = y_k (as functions: x_k s = s y_k)...

    Written as sigma o x_k = y_k o sigma; for a transitive family sigma is
    determined by sigma(0)."""
    n = len(xs[0])
    for t in range(n):
        sigma = [-1] * n
        used = [False] * n
        sigma[0] = t
        used[t] = True
        stack = [0]
        ok = True
        while stack and ok:
            i = stack.pop()
            for x, y in zip(xs, ys):
                j, v = x[i], y[sigma[i]]
                if sigma[j] == -1:
                    if used[v]:
                        ok = False
                        break
                    sigma[j] = v
                    used[v] = True
                    stack.append(j)
                elif sigma[j] != v:
                    ok = False
                    break
        if ok and -1 not in sigma:
            return True
        if ok and -1 in sigma:
            # not transitive after all; fall back to exhaustive search
            return _brute_conjugate(xs, ys)
    return False


def _brute_conjugate(xs, ys) -> bool:
    from itertools import permutations

    n = len(xs[0])
    for s in permutations(range(n)):
        if all(tuple(s[x[i]] for i in range(n)) == tuple(y[s[i]] for i in range(n)) for x, y in zip(xs, ys)):
            return True
    return False


# ----------------------------------------------------------------- verdicts


def conjugate_elements(u: Sequence[int], v: Sequence[int], g: int, bound: int = 2000, oriented: bool = True) -> Verdict:
    """Are u and v conjugate in the closed surface group (or u ~ v^-1 when not oriented)?"""
    targets = [tuple(v)] if oriented else [tuple(v), inverse(v)]
    orbit_u = conjugacy_orbit(u, g, bound)
    for t in targets:
        orbit_t = conjugacy_orbit(t, g, bound)
        common = set(orbit_u) & set(orbit_t)
        if common:
            key = min(common, key=lambda c: c.letters)
            # u = cu k cu^-1, t = ct k ct^-1  =>  u = (cu ct^-1) t (cu ct^-1)^-1
            return Verdict("equal", bound, multiply(orbit_u[key], inverse(orbit_t[key])), "conjugacy orbit meets")
    n = 2 * g
    hu = abelianize(u, n)
    if all(abelianize(t, n) != hu for t in targets):
        return Verdict("distinct", bound, None, "homology classes differ")
    for rep in representations(g):
        cu = cycle_type(rep.evaluate(u))
        if all(cycle_type(rep.evaluate(t)) != cu for t in targets):
            return Verdict("distinct", bound, None, f"cycle types differ in S_{rep.n}")
    return Verdict("unknown", bound, None, "search exhausted")


def inner_verdict(h: FreeAutomorphism, g: int, bound: int = 12) -> Verdict:
    """Does h act on the closed surface group as conjugation by some w?

    The witness w satisfies h(x) = w x w^-1 for every generator x.
    """
    n = 2 * g
    # homology prefilter
    for k in range(n):
        e = [0] * n
        e[k] = 1
        if list(abelianize(h.images[k], n)) != e:
            return Verdict("distinct", bound, None, "homology action differs")
    gens = range(1, n + 1)

    def works(w: Word) -> bool:
        wi = inverse(w)
        return all(is_trivial(multiply(wi, h.images[k - 1], w, (-k,)), g) for k in gens)

    tried: set[Word] = set()
    for k in gens:
        p, core = cyclic_dehn_reduce(h.images[k - 1], g)
        candidates = []
        if core == (k,):
            candidates.append(p)
        else:
            orbit = conjugacy_orbit(h.images[k - 1], g, 200)
            key = CyclicWord.of((k,))
            if key in orbit:
                candidates.append(orbit[key])
        for w0 in candidates:
            for m in sorted(range(-bound, bound + 1), key=abs):
                w = dehn_reduce(multiply(w0, (k,) * m if m >= 0 else (-k,) * -m), g)
                if w in tried:
                    continue
                tried.add(w)
                if works(w):
                    return Verdict("equal", bound, w, "conjugator found")
    for rep in representations(g):
        xs = [rep.evaluate(h.images[k - 1]) for k in gens]
        ys = [rep.images[k - 1] for k in gens]
        # h inner  =>  xs is a simultaneous conjugate of ys
        if not _simultaneously_conjugate(xs, ys):
            return Verdict("distinct", bound, None, f"finite quotient S_{rep.n} separates")
    return Verdict("unknown", bound, None, "no conjugator within bound")
