"""Simplified broken Lefschetz fibration descriptors and their invariants.

A descriptor lists the Lefschetz vanishing cycles (as curve expressions,
in order), an optional round vanishing cycle and a section flag.  With a
round cycle c the data is realizable iff c is non-separating and the product
of the Lefschetz twists preserves c and lies in the kernel of the cap
homomorphism; without one, the product must be trivial in the closed
mapping class group.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from .expr import ExpressionSyntaxError, is_curve
from .freegroup import GroupPresentation
from .hurwitz import Entry, Factorization, total_monodromy
from .mcg import (
    MappingClass,
    UndeterminedError,
    curve_token,
    equal_closed,
    evaluate_curve,
    in_kernel_phi,
    parse_expression,
    preserves_curve,
    preserves_curve_oriented,
    round_curve,
)
from .surface.model import Curve, is_separating
from .surface.operations import hyperelliptic_involution, is_symmetric_curve
from .surface.table import chain_twists
from .surfacegroup import boundary_word

FORMAT_VERSION = 1


class DescriptorError(ValueError):
    """Malformed descriptor (bad JSON shape or unparsable expression)."""


@dataclass(frozen=True)
class CycleSpec:
    expr: str
    name: str | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"expr": self.expr}
        if self.name is not None:
            out["name"] = self.name
        return out


@dataclass(frozen=True)
class ResolvedCycle:
    spec: CycleSpec
    curve: Curve
    entry: Entry


def resolve_cycle(spec: CycleSpec, genus: int) -> ResolvedCycle:
    node = parse_expression(spec.expr, genus)
    if not is_curve(node):
        raise DescriptorError(f"{spec.expr!r} is not a curve expression")
    cv = evaluate_curve(node, genus)
    if cv.base is None:
        entry = Entry(curve_token(cv.curve.word), MappingClass.identity(genus))
    else:
        entry = Entry(cv.base, cv.conjugator)
    return ResolvedCycle(spec, Curve.of(cv.curve.word, True, spec.name), entry)


@dataclass(frozen=True)
class SBLFDescriptor:
    genus: int
    cycles: tuple[CycleSpec, ...]
    round_cycle: CycleSpec | None = None
    has_section: bool = False
    normalized: bool = False

    def __post_init__(self):
        if self.genus < 2:
            raise DescriptorError("genus must be at least 2")

    # resolution is cached per instance; the dataclass itself stays immutable
    @cached_property
    def resolved(self) -> tuple[ResolvedCycle, ...]:
        return tuple(resolve_cycle(c, self.genus) for c in self.cycles)

    @cached_property
    def resolved_round(self) -> ResolvedCycle | None:
        if self.round_cycle is None:
            return None
        return resolve_cycle(self.round_cycle, self.genus)

    def factorization(self) -> Factorization:
        return Factorization(tuple(r.entry for r in self.resolved))

    def monodromy(self) -> MappingClass:
        return total_monodromy(self.factorization(), self.genus)

    def to_json(self) -> dict:
        return {
            "format": FORMAT_VERSION,
            "genus": self.genus,
            "cycles": [c.to_json() for c in self.cycles],
            "round_cycle": self.round_cycle.expr if self.round_cycle else None,
            "has_section": self.has_section,
            "normalized": self.normalized,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, data: Any) -> "SBLFDescriptor":
        if not isinstance(data, dict):
            raise DescriptorError("descriptor must be a JSON object")
        fmt = data.get("format", FORMAT_VERSION)
        if fmt != FORMAT_VERSION:
            raise DescriptorError(f"unsupported descriptor format {fmt!r}")
        try:
            genus = data["genus"]
            raw = data["cycles"]
        except KeyError as e:
            raise DescriptorError(f"missing field {e.args[0]!r}") from None
        if not isinstance(genus, int) or isinstance(genus, bool):
            raise DescriptorError("genus must be an integer")
        if not isinstance(raw, list):
            raise DescriptorError("cycles must be a list")
        cycles = []
        for c in raw:
            if isinstance(c, str):
                cycles.append(CycleSpec(c))
            elif isinstance(c, dict) and isinstance(c.get("expr"), str):
                cycles.append(CycleSpec(c["expr"], c.get("name")))
            else:
                raise DescriptorError(f"bad cycle entry {c!r}")
        rc = data.get("round_cycle")
        if rc is not None and not isinstance(rc, str):
            raise DescriptorError("round_cycle must be an expression string or null")
        return cls(
            genus,
            tuple(cycles),
            CycleSpec(rc) if rc else None,
            bool(data.get("has_section", False)),
            bool(data.get("normalized", False)),
        )

    @classmethod
    def loads(cls, text: str) -> "SBLFDescriptor":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DescriptorError(f"invalid JSON: {e}") from None
        return cls.from_json(data)


# ---------------------------------------------------------------- validity


@dataclass
class ValidityCheck:
    name: str
    status: str  # "pass", "fail" or "unknown"
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class ValidationReport:
    checks: list[ValidityCheck] = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if "fail" in states:
            return "invalid"
        if "unknown" in states:
            return "unknown"
        return "valid"

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    def to_json(self) -> dict:
        return {"status": self.status, "checks": [c.to_json() for c in self.checks]}


def _round_frame(desc: SBLFDescriptor) -> MappingClass:
    """Mapping class carrying the standard round curve onto the round cycle."""
    rc = desc.resolved_round
    table = chain_twists(desc.genus)
    if rc.entry.base == table.round_name:
        return rc.entry.conjugator
    if rc.curve.cls == round_curve(desc.genus).cls:
        return MappingClass.identity(desc.genus)
    raise DescriptorError("round cycle must be given as an image of the standard round curve "
                          f"c{table.round_name[1:]}")


def validate(desc: SBLFDescriptor) -> ValidationReport:
    rep = ValidationReport()
    g = desc.genus
    try:
        cycles = desc.resolved
        rc = desc.resolved_round
    except (ExpressionSyntaxError, KeyError, ValueError) as e:
        rep.checks.append(ValidityCheck("parse", "fail", str(e)))
        return rep
    for r in cycles:
        if r.curve.is_trivial():
            rep.checks.append(ValidityCheck("essential cycles", "fail", f"{r.spec.expr} is null-homotopic"))
    total = desc.monodromy()
    if rc is None:
        v = equal_closed(total.closed(), MappingClass.identity(g, "closed"))
        state = {"equal": "pass", "distinct": "fail"}.get(v.status, "unknown")
        rep.checks.append(ValidityCheck("monodromy trivial in closed model", state, v.reason))
        return rep
    sep = is_separating(rc.curve, 2 * g)
    rep.checks.append(ValidityCheck("round cycle non-separating", "fail" if sep else "pass",
                                    "round cycle is null-homologous" if sep else ""))
    if sep:
        return rep
    try:
        frame = _round_frame(desc)
    except DescriptorError as e:
        rep.checks.append(ValidityCheck("round cycle in standard position", "fail", str(e)))
        return rep
    keeps = preserves_curve(total, rc.curve)
    rep.checks.append(ValidityCheck("monodromy preserves round cycle", "pass" if keeps else "fail"))
    if not keeps:
        return rep
    try:
        ok = in_kernel_phi(total, frame)
        state, detail = ("pass" if ok else "fail"), ""
    except UndeterminedError as e:
        state, detail = "unknown", str(e)
    rep.checks.append(ValidityCheck("monodromy in kernel of cap homomorphism", state, detail))
    return rep


# ------------------------------------------------------- classification


def is_hyperelliptic(desc: SBLFDescriptor) -> tuple[bool, bool]:
    """(verdict, under_approximation).  Every cycle is tested for symmetry
    under the standard involution only, so False may be a false negative."""
    iota = hyperelliptic_involution(desc.genus, "closed")
    curves = [r.curve for r in desc.resolved]
    if desc.resolved_round is not None:
        curves.append(desc.resolved_round.curve)
    return all(is_symmetric_curve(c, iota) for c in curves), True


@dataclass(frozen=True)
class CycleCounts:
    separating: int
    nonseparating: int

    def to_json(self) -> dict:
        return {"separating": self.separating, "nonseparating": self.nonseparating}


def classify_cycles(desc: SBLFDescriptor) -> CycleCounts:
    n = 2 * desc.genus
    s = sum(1 for r in desc.resolved if is_separating(r.curve, n))
    return CycleCounts(s, len(desc.resolved) - s)


def quotient_target(s: int) -> str:
    return f"S # {2 * s} CP²-bar"


@dataclass(frozen=True)
class FixedPointDescriptor:
    orientable_surface_part: bool
    isolated_points: int
    quotient_target: str
    round_orientation_preserved: bool | None
    bundle_type: str = "undetermined"

    def to_json(self) -> dict:
        return {
            "orientable_surface_part": self.orientable_surface_part,
            "isolated_points": self.isolated_points,
            "quotient_target": self.quotient_target,
            "round_orientation_preserved": self.round_orientation_preserved,
            "bundle_type": self.bundle_type,
        }


def fixed_point_descriptor(desc: SBLFDescriptor) -> FixedPointDescriptor:
    s = classify_cycles(desc).separating
    orient = None
    rc = desc.resolved_round
    if rc is not None:
        try:
            orient = preserves_curve_oriented(desc.monodromy(), rc.curve)
        except (ValueError, UndeterminedError):
            orient = None
    return FixedPointDescriptor(rc is None, s, quotient_target(s), orient)


# ------------------------------------------------------------ invariants


def euler_characteristic(desc: SBLFDescriptor) -> int:
    g, n = desc.genus, len(desc.cycles)
    if desc.round_cycle is not None:
        # higher side D^2 x F_g plus n 2-handles, round handle (chi 0), lower side D^2 x F_{g-1}
        return (2 - 2 * g) + n + (2 - 2 * (g - 1))
    return 2 * (2 - 2 * g) + n


class NoSectionError(ValueError):
    pass


def fundamental_group(desc: SBLFDescriptor) -> GroupPresentation:
    """Fiber group modulo the vanishing cycles (valid in the presence of a section)."""
    if not desc.has_section:
        raise NoSectionError("fundamental group needs a section (has_section is false)")
    g = desc.genus
    rels = [boundary_word(g)] + [r.curve.word for r in desc.resolved]
    if desc.resolved_round is not None:
        rels.append(desc.resolved_round.curve.word)
    if desc.normalized:
        # the multiplicity-one logarithmic transform kills the class of c11
        rels.append(chain_twists(g)["t11"].curve.word)
    return GroupPresentation(2 * g, tuple(r for r in rels if r))


def first_homology(desc: SBLFDescriptor) -> list[int]:
    return fundamental_group(desc).abelian_invariants()


@dataclass(frozen=True)
class BettiReport:
    euler_characteristic: int
    h1: tuple[int, ...]
    b0: int
    b1: int
    b2: int
    b3: int
    b4: int

    def alternating_sum(self) -> int:
        return self.b0 - self.b1 + self.b2 - self.b3 + self.b4


def betti_report(desc: SBLFDescriptor) -> BettiReport:
    h1 = first_homology(desc)
    chi = euler_characteristic(desc)
    b1 = sum(1 for d in h1 if d == 0)
    return BettiReport(chi, tuple(h1), 1, b1, chi - 2 + 2 * b1, b1, 1)


def invariants(desc: SBLFDescriptor, full: bool = False) -> dict:
    """Report with keys chi, h1, b2 (and more when full is set)."""
    br = betti_report(desc)
    out: dict[str, Any] = {"chi": br.euler_characteristic, "h1": list(br.h1), "b2": br.b2}
    if full:
        counts = classify_cycles(desc)
        out["betti"] = [br.b0, br.b1, br.b2, br.b3, br.b4]
        out["cycles"] = counts.to_json()
        out["fixed_point_set"] = fixed_point_descriptor(desc).to_json()
        out["presentation"] = {
            "generators": 2 * desc.genus,
            "relators": len(fundamental_group(desc).relators),
        }
    return out


# ------------------------------------------------------------ W_s family


def alpha_expr(i: int) -> str:
    e = 1 - i
    return "(t5^2)(c4)" if e == 0 else f"(t5^2 t4^{e})(c4)"


def beta_expr(j: int) -> str:
    return "(t4)(c5)" if j == -1 else f"(t4^{-j})(c5)"


GAMMA1 = "(t2 t3 t4 t5^2)(c11)"
GAMMA2 = "(t2 t3 t4)(c11)"


def build_Ws(s: int, normalized: bool = False) -> SBLFDescriptor:
    if s < 2:
        raise ValueError("W_s is defined for s >= 2")
    cycles: list[CycleSpec] = []
    if s == 2:
        cycles += [CycleSpec(beta_expr(1), "beta_1")]
    else:
        cycles += [CycleSpec(alpha_expr(i), f"alpha_{i}") for i in range(1, s - 1)]
        cycles += [CycleSpec(beta_expr(s - 1), f"beta_{s - 1}")]
    cycles += [
        CycleSpec(beta_expr(-1), "beta_-1"),
        CycleSpec(GAMMA1, "gamma_1"),
        CycleSpec(GAMMA2, "gamma_2"),
    ]
    return SBLFDescriptor(2, tuple(cycles), CycleSpec("c5"), True, normalized)


# ------------------------------------------------------ directed BLFs


@dataclass(frozen=True)
class DirectedBLFDescriptor:
    """Counting data of a directed BLF.

    fiber_genera lists the genus of the fiber component over each region,
    from the top (Lefschetz) level down; separating_lefschetz is s1 and
    max_components is s2, the largest number of fiber components.
    """

    fiber_genera: tuple[int, ...]
    lefschetz_count: int
    separating_lefschetz: int
    max_components: int = 1

    def __post_init__(self):
        gs = self.fiber_genera
        if not gs:
            raise DescriptorError("at least one fiber genus is required")
        if gs[0] < 1 or any(g < 0 for g in gs):
            raise DescriptorError("top fiber genus must be positive and no genus negative")
        if any(a - b != 1 for a, b in zip(gs, gs[1:])):
            raise DescriptorError("fiber genus must drop by one across each round level")
        if not 0 <= self.separating_lefschetz <= self.lefschetz_count:
            raise DescriptorError("separating count out of range")
        if self.max_components < 1:
            raise DescriptorError("max_components must be positive")

    @property
    def round_levels(self) -> int:
        return len(self.fiber_genera) - 1

    def euler_characteristic(self) -> int:
        top, bottom = self.fiber_genera[0], self.fiber_genera[-1]
        return (2 - 2 * top) + self.lefschetz_count + (2 - 2 * bottom)

    def quotient_target(self) -> str:
        return f"# {self.max_components} S # {2 * self.separating_lefschetz} CP²-bar"

    def isolated_points(self) -> int:
        return self.separating_lefschetz

    def check_monodromy(self) -> None:
        if self.round_levels > 1:
            raise NotImplementedError(
                "monodromy validity is only decided for a single round level; "
                f"this descriptor has {self.round_levels}")
