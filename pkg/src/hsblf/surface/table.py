"""Chain Dehn twists of the one-boundary surface and their self-validation.

Names: ``t11`` and ``t12`` are the twists about the two boundary-adjacent
curves (isotopic in the closed surface); ``t2 .. t{2g+1}`` the chain.  The
consecutive pairs (t11,t2), (t12,t2), (t2,t3), ... braid; all other pairs
commute.
"""
from __future__ import annotations

import contextlib
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from ..freegroup import (
    FreeAutomorphism,
    abelianization_matrix,
    abelianize,
    inner_automorphism,
    inverse,
)
from . import _frozen
from .model import Curve, HomologyData, SurfaceModel, format_word, parse_word, standard_model


class TableValidationError(RuntimeError):
    pass


@dataclass(frozen=True)
class TwistEntry:
    name: str
    curve: Curve
    automorphism: FreeAutomorphism


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


class ChainTwistTable:
    def __init__(self, genus: int, entries: Mapping[str, TwistEntry]):
        self.genus = genus
        self.rank = 2 * genus
        self.entries = dict(entries)

    def __getitem__(self, name: str) -> TwistEntry:
        return self.entries[name]

    def __contains__(self, name: object) -> bool:
        return name in self.entries

    @property
    def names(self) -> list[str]:
        return list(self.entries)

    @property
    def chain(self) -> list[str]:
        """t11, t2, ..., t{2g+1}: the chain of 2g+1 curves."""
        return ["t11"] + [f"t{k}" for k in range(2, 2 * self.genus + 2)]

    @property
    def round_name(self) -> str:
        return f"t{2 * self.genus + 1}"

    def adjacent(self, x: str, y: str) -> bool:
        pairs = set(zip(self.chain, self.chain[1:]))
        pairs.add(("t12", "t2"))
        return (x, y) in pairs or (y, x) in pairs

    def product(self, word: Iterable[tuple[str, int]]) -> FreeAutomorphism:
        """Left-to-right product: the first factor acts first."""
        f = FreeAutomorphism.identity(self.rank)
        for name, e in word:
            a = self.entries[name].automorphism
            step = a if e > 0 else a.inverse()
            for _ in range(abs(e)):
                f = f.then(step)
        return f

    def involution_word(self) -> list[tuple[str, int]]:
        c = self.chain
        return [(x, 1) for x in c + c[::-1]]

    def with_entry(self, name: str, automorphism: FreeAutomorphism) -> "ChainTwistTable":
        e = dict(self.entries)
        e[name] = TwistEntry(name, e[name].curve, automorphism)
        return ChainTwistTable(self.genus, e)


def _table_from_literal(g: int, data) -> ChainTwistTable:
    entries = {}
    for name, (word, imgs, inv) in data.items():
        entries[name] = TwistEntry(name, Curve.of(word, True, "c" + name[1:]), FreeAutomorphism(imgs, inv))
    order = ["t11", "t12"] + [f"t{k}" for k in range(2, 2 * g + 2)]
    return ChainTwistTable(g, {k: entries[k] for k in order})


def _derived_table(g: int) -> ChainTwistTable:
    from .bandmodel import derive_chain

    raw = derive_chain(g)
    data = {k: (w, f.images, f.inverse_images) for k, (w, f) in raw.items()}
    return _table_from_literal(g, data)


def validate_table(table: ChainTwistTable) -> list[Check]:
    g = table.genus
    model = standard_model(g)
    delta = model.boundary_word
    hom = HomologyData(g)
    n = table.rank
    checks: list[Check] = []

    def add(name: str, ok: bool, detail: str = "") -> None:
        checks.append(Check(name, bool(ok), detail))

    for name, e in table.entries.items():
        f = e.automorphism
        add(f"{name}: inverse images invert images", f.is_consistent())
        add(f"{name}: fixes delta", f.apply(delta) == delta)
        cls = abelianize(e.curve.word, n)
        m = abelianization_matrix(f)
        add(f"{name}: homology is the transvection of its curve", m == hom.transvection(cls))
        add(f"{name}: preserves intersection form", hom.preserves_form(m))
        add(f"{name}: fixes its own curve", f.apply_cyclic(e.curve.oriented) == e.curve.oriented)

    for x, y in itertools.combinations(table.names, 2):
        if table.adjacent(x, y):
            ok = table.product([(x, 1), (y, 1), (x, 1)]) == table.product([(y, 1), (x, 1), (y, 1)])
            add(f"braid {x} {y}", ok)
        else:
            ok = table.product([(x, 1), (y, 1)]) == table.product([(y, 1), (x, 1)])
            add(f"commute {x} {y}", ok)

    iota_w = table.involution_word()
    iota = table.product(iota_w)
    if g == 2:
        power = table.product([("t5", 1), ("t4", 1), ("t3", 1), ("t2", 1)] * 5)
        add("iota: chain power equals palindrome", power == iota)
    add(
        "iota t11 = t12 iota",
        iota.then(table["t11"].automorphism) == table["t12"].automorphism.then(iota),
    )
    for k in range(2, 2 * g + 2):
        t = table[f"t{k}"].automorphism
        add(f"iota commutes with t{k}", iota.then(t) == t.then(iota))
    sq = iota.then(iota)
    add("iota squared is conjugation by delta", sq in (inner_automorphism(n, delta), inner_automorphism(n, inverse(delta))))
    m = abelianization_matrix(iota)
    add("iota acts by -1 on homology", m == -type(m).identity(n))
    return checks


_OVERRIDES: dict[int, ChainTwistTable] = {}


@contextlib.contextmanager
def using_table(table: ChainTwistTable):
    """Temporarily replace the table of its genus (unvalidated; used to run
    the relation suites against externally supplied data)."""
    prev = _OVERRIDES.get(table.genus)
    _OVERRIDES[table.genus] = table
    try:
        yield table
    finally:
        if prev is None:
            _OVERRIDES.pop(table.genus, None)
        else:
            _OVERRIDES[table.genus] = prev


@lru_cache(maxsize=None)
def _standard_table(g: int) -> ChainTwistTable:
    if g in _frozen.TABLES:
        table = _table_from_literal(g, _frozen.TABLES[g])
    else:
        table = _derived_table(g)
    bad = [c for c in validate_table(table) if not c.passed]
    if bad:
        raise TableValidationError(f"twist table fails: {bad[0].name}")
    return table


def chain_twists(g: int = 2) -> ChainTwistTable:
    if g < 2:
        raise ValueError("genus must be at least 2")
    if g in _OVERRIDES:
        return _OVERRIDES[g]
    return _standard_table(g)


def table_for(model: SurfaceModel) -> ChainTwistTable:
    return chain_twists(model.genus)


# ------------------------------------------------------------ file format


def table_to_json(table: ChainTwistTable) -> dict:
    return {
        "format": 1,
        "genus": table.genus,
        "twists": {
            name: {
                "curve": format_word(e.curve.word),
                "images": [format_word(w) for w in e.automorphism.images],
                "inverse_images": [format_word(w) for w in e.automorphism.inverse_images],
            }
            for name, e in table.entries.items()
        },
    }


def table_from_json(data: dict) -> ChainTwistTable:
    try:
        g = int(data["genus"])
        n = 2 * g
        literal = {
            name: (
                parse_word(t["curve"], n),
                [parse_word(w, n) for w in t["images"]],
                [parse_word(w, n) for w in t["inverse_images"]],
            )
            for name, t in data["twists"].items()
        }
        return _table_from_literal(g, literal)
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed twist table: {e}") from None


def load_table(path: str) -> ChainTwistTable:
    with open(path, encoding="utf-8") as fh:
        return table_from_json(json.load(fh))
