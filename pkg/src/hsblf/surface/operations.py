"""Surface operations that need mapping classes (kept out of the package
namespace to avoid an import cycle with ``hsblf.mcg``)."""
from __future__ import annotations

from ..freegroup import abelianization_matrix
from ..mcg import MappingClass, UndeterminedError, macro_tokens
from ..surfacegroup import conjugate_elements
from .model import Curve
from .table import chain_twists


def twist_of_curve_image(base: str, conjugator: MappingClass) -> tuple[MappingClass, Curve]:
    """Twist about conjugator(c_base), i.e. conjugator^-1 * t_base * conjugator."""
    g = conjugator.genus
    table = chain_twists(g)
    if base not in table:
        raise KeyError(f"unknown base twist {base!r}")
    t = MappingClass.twist(base, g, conjugator.model)
    tw = conjugator.inverse() * t * conjugator
    return tw, conjugator.apply_curve(table[base].curve)


def hyperelliptic_involution(g: int = 2, model: str = "bounded") -> MappingClass:
    """The chain involution t11 t2 ... t{2g+1} t{2g+1} ... t2 t11; for g = 2 it
    equals (t5 t4 t3 t2)^5."""
    return MappingClass.from_tokens(macro_tokens("iota", g), g, model)


def closed_homology_action(iota: MappingClass):
    # H_1 of the one-boundary surface maps isomorphically onto that of the closed one
    return abelianization_matrix(iota.automorphism)


def lefschetz_number(f: MappingClass) -> int:
    return 2 - closed_homology_action(f).trace()


def is_symmetric_curve(curve: Curve, iota: MappingClass) -> bool:
    img = iota.automorphism.apply(curve.word)
    if Curve.of(img).cls == curve.cls:
        return True
    if iota.model == "bounded":
        return False
    v = conjugate_elements(img, curve.word, iota.genus, oriented=False)
    if v.status == "unknown":
        raise UndeterminedError(v)
    return v.is_equal
