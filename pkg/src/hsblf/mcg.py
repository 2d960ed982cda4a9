"""Mapping classes as twist words with cached free-group automorphisms.

Products follow the left-to-right convention: in ``f * g`` the factor f acts
first, so the automorphism of ``f * g`` is g∘f and the twist about the image
curve f(c) is ``f^-1 * t_c * f``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import expr as E
from .freegroup import (
    CyclicWord,
    FreeAutomorphism,
    Word,
    abelianization_matrix,
    cyclic_reduce,
)
from .surface.bandmodel import symplectic_layout
from .surface.cap import CapHomomorphism
from .surface.model import Curve, format_word
from .surface.table import chain_twists
from .surfacegroup import Verdict, conjugate_elements, inner_verdict

Token = tuple[str, int]

DEFAULT_CLOSED_BOUND = 12


class UndeterminedError(RuntimeError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"closed-model search inconclusive ({verdict.reason}, bound {verdict.bound})")
        self.verdict = verdict


def _reduce_tokens(tokens: Iterable[Token]) -> tuple[Token, ...]:
    out: list[Token] = []
    for name, e in tokens:
        if e == 0:
            continue
        if out and out[-1][0] == name:
            s = out[-1][1] + e
            out.pop()
            if s:
                out.append((name, s))
        else:
            out.append((name, e))
    return tuple(out)


def _invert_tokens(tokens: Sequence[Token]) -> tuple[Token, ...]:
    return tuple((n, -e) for n, e in reversed(tokens))


@lru_cache(maxsize=None)
def explicit_twist(g: int, word: Word) -> FreeAutomorphism:
    """Twist about an explicitly given simple curve, drawn in the handle layout."""
    lay = symplectic_layout(g)
    return lay.twist(lay.traversal_of(cyclic_reduce(word)))


def curve_token(word: Word) -> str:
    return f"[{format_word(word)}]"


class MappingClass:
    __slots__ = ("genus", "word", "automorphism", "model")

    def __init__(self, genus: int, word: Sequence[Token], automorphism: FreeAutomorphism, model: str = "bounded"):
        if model not in ("bounded", "closed"):
            raise ValueError(f"unknown model {model!r}")
        self.genus = genus
        self.word = _reduce_tokens(word)
        self.automorphism = automorphism
        self.model = model

    # constructors
    @classmethod
    def identity(cls, genus: int = 2, model: str = "bounded") -> "MappingClass":
        return cls(genus, (), FreeAutomorphism.identity(2 * genus), model)

    @classmethod
    def twist(cls, name: str, genus: int = 2, model: str = "bounded") -> "MappingClass":
        return cls(genus, ((name, 1),), generator_automorphism(genus, name), model)

    @classmethod
    def from_tokens(cls, tokens: Sequence[Token], genus: int = 2, model: str = "bounded") -> "MappingClass":
        f = FreeAutomorphism.identity(2 * genus)
        for name, e in _reduce_tokens(tokens):
            a = generator_automorphism(genus, name)
            step = a if e > 0 else a.inverse()
            for _ in range(abs(e)):
                f = f.then(step)
        return cls(genus, tokens, f, model)

    @classmethod
    def parse(cls, text: str, genus: int = 2, model: str = "bounded") -> "MappingClass":
        node = parse_expression(text, genus)
        if E.is_curve(node):
            raise ValueError("expression denotes a curve, not a mapping class")
        return evaluate_mapping(node, genus, model)

    # algebra
    def _check(self, other: "MappingClass") -> None:
        if self.genus != other.genus or self.model != other.model:
            raise ValueError("mapping classes live in different models")

    def __mul__(self, other: "MappingClass") -> "MappingClass":
        self._check(other)
        return MappingClass(self.genus, self.word + other.word, self.automorphism.then(other.automorphism), self.model)

    def inverse(self) -> "MappingClass":
        return MappingClass(self.genus, _invert_tokens(self.word), self.automorphism.inverse(), self.model)

    def __pow__(self, n: int) -> "MappingClass":
        base = self if n >= 0 else self.inverse()
        out = MappingClass.identity(self.genus, self.model)
        # square-and-multiply on automorphisms; tokens repeat literally
        acc = base
        k = abs(n)
        while k:
            if k & 1:
                out = out * acc
            k >>= 1
            if k:
                acc = acc * acc
        return MappingClass(self.genus, base.word * abs(n), out.automorphism, self.model)

    def conjugated_by(self, h: "MappingClass") -> "MappingClass":
        """h^-1 * self * h."""
        return h.inverse() * self * h

    def closed(self) -> "MappingClass":
        return MappingClass(self.genus, self.word, self.automorphism, "closed")

    def bounded(self) -> "MappingClass":
        return MappingClass(self.genus, self.word, self.automorphism, "bounded")

    def apply_curve(self, c: Curve) -> Curve:
        return Curve.of(self.automorphism.apply(c.word), c.declared_simple)

    def homology_matrix(self):
        return abelianization_matrix(self.automorphism)

    def recompute(self) -> FreeAutomorphism:
        return MappingClass.from_tokens(self.word, self.genus, self.model).automorphism

    def text(self) -> str:
        if not self.word:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.word)

    def __repr__(self) -> str:
        return f"MappingClass({self.text()!r}, genus={self.genus}, model={self.model!r})"


def generator_automorphism(genus: int, name: str) -> FreeAutomorphism:
    if name.startswith("["):
        from .surface.model import parse_word

        return explicit_twist(genus, parse_word(name[1:-1], 2 * genus))
    table = chain_twists(genus)
    if name not in table:
        raise KeyError(f"unknown twist {name!r} in genus {genus}")
    return table[name].automorphism


# ------------------------------------------------------------- expressions


def parse_expression(text: str, genus: int = 2):
    twists, curves = E.names_for_genus(genus)
    node = E.parse(text, twists, curves)
    _check_macros(node, genus)
    return node


def _check_macros(node, genus: int) -> None:
    if isinstance(node, E.Name):
        if node.name == "iota2" and genus != 2:
            raise E.ExpressionSyntaxError("iota2 is defined in genus 2 only; use iota", 0)
    elif isinstance(node, E.Product):
        for f in node.factors:
            _check_macros(f, genus)
    elif isinstance(node, E.Power):
        _check_macros(node.base, genus)
    elif isinstance(node, E.Image):
        _check_macros(node.mapping, genus)
        _check_macros(node.curve, genus)


def macro_tokens(name: str, genus: int) -> tuple[Token, ...]:
    if name == "xi":
        k = 2 * genus
        return ((f"t{k}", 1), (f"t{k + 1}", 1)) * 3
    if name == "iota2":
        return (("t5", 1), ("t4", 1), ("t3", 1), ("t2", 1)) * 5
    if name == "iota":
        chain = ["t11"] + [f"t{k}" for k in range(2, 2 * genus + 2)]
        return tuple((x, 1) for x in chain + chain[::-1])
    raise KeyError(name)


def _tokens_of(node, genus: int) -> tuple[Token, ...]:
    if isinstance(node, E.Name):
        if node.name in E.MACROS:
            return macro_tokens(node.name, genus)
        return ((node.name, 1),)
    if isinstance(node, E.Product):
        out: tuple[Token, ...] = ()
        for f in node.factors:
            out += _tokens_of(f, genus)
        return out
    if isinstance(node, E.Power):
        base = _tokens_of(node.base, genus)
        if node.exponent < 0:
            base = _invert_tokens(base)
        return base * abs(node.exponent)
    raise TypeError("not a mapping-class expression")


def evaluate_mapping(node, genus: int = 2, model: str = "bounded") -> MappingClass:
    return _evaluate(node, genus, model)


def _evaluate(node, genus: int, model: str) -> MappingClass:
    if isinstance(node, E.Name):
        if node.name in E.MACROS:
            return MappingClass.from_tokens(macro_tokens(node.name, genus), genus, model)
        return MappingClass.twist(node.name, genus, model)
    if isinstance(node, E.Product):
        out = MappingClass.identity(genus, model)
        for f in node.factors:
            out = out * _evaluate(f, genus, model)
        return out
    if isinstance(node, E.Power):
        return _evaluate(node.base, genus, model) ** node.exponent
    raise TypeError("not a mapping-class expression")


@dataclass(frozen=True)
class CurveValue:
    """A curve together with how it was produced: conj(base curve), or an explicit word."""

    curve: Curve
    base: str | None  # twist name of the base curve, e.g. "t5"
    conjugator: MappingClass | None


def named_curve(name: str, genus: int = 2) -> Curve:
    table = chain_twists(genus)
    return table["t" + name[1:]].curve


def evaluate_curve(node, genus: int = 2) -> CurveValue:
    if isinstance(node, E.CurveName):
        base = "t" + node.name[1:]
        return CurveValue(named_curve(node.name, genus), base, MappingClass.identity(genus))
    if isinstance(node, E.CurveWord):
        return CurveValue(Curve.of(node.letters), None, None)
    if isinstance(node, E.Image):
        phi = _evaluate(node.mapping, genus, "bounded")
        inner = evaluate_curve(node.curve, genus)
        c = phi.apply_curve(inner.curve)
        if inner.base is None:
            return CurveValue(c, None, None)
        return CurveValue(c, inner.base, inner.conjugator * phi)
    raise TypeError("not a curve expression")


# ---------------------------------------------------------------- equality


def equal_bounded(f: MappingClass, g: MappingClass) -> bool:
    if f.genus != g.genus:
        raise ValueError("genus mismatch")
    if f.word == g.word:
        return True
    return f.automorphism == g.automorphism


def equal_closed(f: MappingClass, g: MappingClass, bound: int = DEFAULT_CLOSED_BOUND) -> Verdict:
    if f.genus != g.genus:
        raise ValueError("genus mismatch")
    if f.genus < 2:
        raise ValueError("closed model needs genus at least 2")
    if f.word == g.word:
        return Verdict("equal", bound, (), "identical words")
    h = f.automorphism.then(g.automorphism.inverse())
    return inner_verdict(h, f.genus, bound)


def verify_identity(lhs: str, rhs: str, genus: int = 2) -> bool:
    return equal_bounded(MappingClass.parse(lhs, genus), MappingClass.parse(rhs, genus))


# ------------------------------------------------------------ curve tests


def _closed_curve_verdict(a: Word, b: Word, genus: int, oriented: bool) -> bool:
    v = conjugate_elements(a, b, genus, oriented=oriented)
    if v.status == "unknown":
        raise UndeterminedError(v)
    return v.is_equal


def preserves_curve(f: MappingClass, c: Curve) -> bool:
    img = f.automorphism.apply(c.word)
    if CyclicWord.of(img, False) == c.cls:
        return True
    if f.model == "bounded":
        return False
    return _closed_curve_verdict(img, c.word, f.genus, oriented=False)


def preserves_curve_oriented(f: MappingClass, c: Curve) -> bool:
    img = f.automorphism.apply(c.word)
    if CyclicWord.of(img, True) == c.oriented:
        return True
    if f.model == "bounded":
        if CyclicWord.of(img, False) != c.cls:
            raise ValueError("mapping class does not preserve the curve")
        return False
    return _closed_curve_verdict(img, c.word, f.genus, oriented=True)


def round_curve(genus: int) -> Curve:
    t = chain_twists(genus)
    return t[t.round_name].curve


def cap_image(f: MappingClass, frame: MappingClass | None = None) -> FreeAutomorphism:
    """Capped automorphism for the curve frame(c_round) (c_round when frame is None)."""
    h = f if frame is None else frame * f * frame.inverse()
    return CapHomomorphism(f.genus)(h.bounded().automorphism)


def in_kernel_phi(f: MappingClass, frame: MappingClass | None = None, bound: int = DEFAULT_CLOSED_BOUND) -> bool:
    """Is the capped class trivial in the closed mapping class group of genus g-1?"""
    phi = cap_image(f, frame)
    if phi.is_identity():
        return True
    if f.genus - 1 == 1:
        # the torus mapping class group acts faithfully on homology
        m = abelianization_matrix(phi)
        return m == type(m).identity(2)
    v = inner_verdict(phi, f.genus - 1, bound)
    if v.status == "unknown":
        raise UndeterminedError(v)
    return v.is_equal
