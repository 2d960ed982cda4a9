import json

import pytest
from hypothesis import given, settings, strategies as st

from hsblf.blf import (
    CycleSpec,
    DescriptorError,
    DirectedBLFDescriptor,
    NoSectionError,
    SBLFDescriptor,
    betti_report,
    build_Ws,
    classify_cycles,
    euler_characteristic,
    first_homology,
    fixed_point_descriptor,
    fundamental_group,
    invariants,
    is_hyperelliptic,
    quotient_target,
    validate,
)
from hsblf.mcg import MappingClass, equal_bounded, in_kernel_phi

COMMUTATOR = "[a1 b1 a1^-1 b1^-1]"


def lf(genus, cycles, section=True):
    return SBLFDescriptor(genus, tuple(CycleSpec(c) for c in cycles), None, section)


# ----------------------------------------------------------------- W_s


def test_build_Ws_shapes():
    w2 = build_Ws(2)
    assert [c.name for c in w2.cycles] == ["beta_1", "beta_-1", "gamma_1", "gamma_2"]
    w5 = build_Ws(5)
    assert [c.name for c in w5.cycles] == ["alpha_1", "alpha_2", "alpha_3", "beta_4", "beta_-1", "gamma_1", "gamma_2"]
    assert w5.round_cycle.expr == "c5" and w5.has_section
    with pytest.raises(ValueError):
        build_Ws(1)


@pytest.mark.parametrize("s", range(2, 11))
def test_Ws_valid_and_invariants(s):
    w = build_Ws(s)
    rep = validate(w)
    assert rep.status == "valid", rep.to_json()
    assert euler_characteristic(w) == s
    assert first_homology(w) == [0]
    n = build_Ws(s, normalized=True)
    assert first_homology(n) == []
    assert betti_report(n).b2 == s - 2
    assert classify_cycles(w).separating == 0


@pytest.mark.parametrize("s", [2, 3, 5])
def test_Ws_total_monodromy_formula(s):
    gamma = MappingClass.parse("iota2 t5^-2 t11^-1 t2^-1 t3^-2 t2^-1 t11^-1")
    expected = MappingClass.parse(f"xi^{s - 1} t5^{-5 * s + 6}") * gamma
    total = build_Ws(s).monodromy()
    assert equal_bounded(total, expected)
    assert in_kernel_phi(total)


def test_W2_degenerates_to_S4():
    n = build_Ws(2, normalized=True)
    br = betti_report(n)
    assert (br.euler_characteristic, br.b2, br.h1) == (2, 0, ())
    assert br.alternating_sum() == br.euler_characteristic


def test_Ws_hyperelliptic():
    for s in (2, 4):
        assert is_hyperelliptic(build_Ws(s)) == (True, True)


# --------------------------------------------------------------- validate


def status_of(rep):
    return {c.name: c.status for c in rep.checks}


@pytest.mark.parametrize("drop", [0, 1])
def test_W2_with_beta_deleted_is_invalid(drop):
    w = build_Ws(2)
    d = SBLFDescriptor(2, w.cycles[:drop] + w.cycles[drop + 1:], w.round_cycle, True)
    rep = validate(d)
    assert rep.status == "invalid"
    # without the beta twist the product no longer fixes c5, so it cannot lie in the kernel
    assert status_of(rep)["monodromy preserves round cycle"] == "fail"


def test_extra_twist_fails_kernel_only():
    # t2 fixes c5 but caps to a nontrivial class
    w = build_Ws(2)
    d = SBLFDescriptor(2, w.cycles + (CycleSpec("c2"),), w.round_cycle, True)
    st_ = status_of(validate(d))
    assert st_["monodromy preserves round cycle"] == "pass"
    assert st_["monodromy in kernel of cap homomorphism"] == "fail"


def test_separating_round_cycle_is_invalid():
    d = SBLFDescriptor(2, (), CycleSpec(COMMUTATOR), True)
    rep = validate(d)
    assert rep.status == "invalid"
    assert rep.checks[0].name == "round cycle non-separating" and rep.checks[0].status == "fail"


def test_parse_failure_reported():
    d = SBLFDescriptor(2, (CycleSpec("(t6)(c4)"),), None)
    rep = validate(d)
    assert rep.status == "invalid" and rep.checks[0].name == "parse"


def test_lefschetz_without_round_uses_closed_model():
    assert validate(lf(2, [])).status == "valid"
    assert validate(lf(2, ["c5"])).status == "invalid"


def conjugate_expr(expr, h):
    if expr.startswith("("):
        inner, rest = expr[1:].split(")", 1)
        return f"({inner} {h}){rest}"
    return f"({h})({expr})"


@pytest.mark.parametrize("h", ["t4^-1", "t3 t4"])
def test_globally_conjugated_Ws_is_valid(h):
    # the round cycle moves to h(c5) and the kernel test runs in that frame
    w = build_Ws(3)
    cycles = tuple(CycleSpec(conjugate_expr(c.expr, h), c.name) for c in w.cycles)
    d = SBLFDescriptor(2, cycles, CycleSpec(conjugate_expr("c5", h)), True)
    rep = validate(d)
    assert rep.status == "valid", rep.to_json()
    assert equal_bounded(d.monodromy(), MappingClass.parse(h).inverse() * w.monodromy() * MappingClass.parse(h))


def test_round_cycle_outside_standard_position():
    d = SBLFDescriptor(2, (), CycleSpec("c4"), True)
    assert status_of(validate(d))["round cycle in standard position"] == "fail"


# ---------------------------------------------------------- classification


def test_classify_cycles_examples():
    assert classify_cycles(lf(2, [])).to_json() == {"separating": 0, "nonseparating": 0}
    c = classify_cycles(lf(2, [COMMUTATOR, "c4"]))
    assert (c.separating, c.nonseparating) == (1, 1)


def test_fixed_points_lefschetz_s2():
    d = lf(2, [COMMUTATOR, "[a2 b2 a2^-1 b2^-1]"])
    fp = fixed_point_descriptor(d)
    assert fp.orientable_surface_part
    assert fp.isolated_points == 2
    assert fp.quotient_target == "S # 4 CP²-bar"
    assert fp.bundle_type == "undetermined"


def test_fixed_points_W2():
    fp = fixed_point_descriptor(build_Ws(2))
    assert not fp.orientable_surface_part
    assert fp.isolated_points == 0
    assert fp.round_orientation_preserved in (True, False)


def test_quotient_target():
    assert quotient_target(0) == "S # 0 CP²-bar"
    assert quotient_target(3) == "S # 6 CP²-bar"


def test_genus3_asymmetric_cycle_not_hyperelliptic():
    d = lf(3, ["[a1 a2]"])
    assert is_hyperelliptic(d) == (False, True)
    assert is_hyperelliptic(lf(3, ["c5"]))[0]


@settings(max_examples=30)
@given(st.lists(st.sampled_from(["c4", "c5", "c2", COMMUTATOR, "[a2 b2 a2^-1 b2^-1]", "(t4^-1)(c5)"]), max_size=5))
def test_isolated_points_equal_separating_count(cycles):
    d = lf(2, cycles)
    assert fixed_point_descriptor(d).isolated_points == classify_cycles(d).separating


# ------------------------------------------------------------ invariants


def test_euler_characteristic_examples():
    assert euler_characteristic(build_Ws(2)) == 2
    assert euler_characteristic(lf(3, [])) == -8


def test_trivial_bundle():
    d = lf(2, [])
    assert first_homology(d) == [0, 0, 0, 0]
    br = betti_report(d)
    assert (br.euler_characteristic, br.b1, br.b2) == (-4, 4, 2)
    assert br.alternating_sum() == br.euler_characteristic


def test_no_section_refused():
    d = lf(2, [], section=False)
    with pytest.raises(NoSectionError):
        fundamental_group(d)


def test_Ms_presentation_relators():
    p = fundamental_group(build_Ws(3))
    assert p.generator_count == 4
    # boundary relator, 5 cycles, round cycle
    assert len(p.relators) == 7


@pytest.mark.parametrize("s", [2, 4])
def test_Ms_presentation_simplifies_to_Z(s):
    p = fundamental_group(build_Ws(s)).simplified()
    assert (p.generator_count, p.relators) == (1, ())
    q = fundamental_group(build_Ws(s, normalized=True)).simplified()
    assert q.generator_count == 0


def test_invariants_report_keys():
    out = invariants(build_Ws(6, normalized=True))
    assert out == {"chi": 6, "h1": [], "b2": 4}
    full = invariants(build_Ws(3), full=True)
    assert list(full) == ["chi", "h1", "b2", "betti", "cycles", "fixed_point_set", "presentation"]
    assert full["betti"] == [1, 1, 3, 1, 1]


# ------------------------------------------------------------------- JSON


@pytest.mark.parametrize("s", [2, 5])
def test_json_round_trip_bit_exact(s):
    d = build_Ws(s, normalized=s == 5)
    text = d.dumps()
    again = SBLFDescriptor.loads(text)
    assert again == d
    assert again.dumps() == text
    assert list(json.loads(text)) == ["format", "genus", "cycles", "round_cycle", "has_section", "normalized"]


@pytest.mark.parametrize("text", [
    "[]",
    "not json",
    '{"genus": 2}',
    '{"genus": "2", "cycles": []}',
    '{"genus": 2, "cycles": [3]}',
    '{"format": 2, "genus": 2, "cycles": []}',
    '{"genus": 1, "cycles": []}',
])
def test_bad_descriptors(text):
    with pytest.raises(DescriptorError):
        SBLFDescriptor.loads(text)


# ------------------------------------------------------------- directed


def test_directed_quotient_target():
    d = DirectedBLFDescriptor((3, 2), lefschetz_count=5, separating_lefschetz=1, max_components=3)
    assert d.quotient_target() == "# 3 S # 2 CP²-bar"
    assert d.isolated_points() == 1
    assert d.round_levels == 1
    assert d.euler_characteristic() == (2 - 6) + 5 + (2 - 4)
    d.check_monodromy()


def test_directed_matches_simplified_chi():
    d = DirectedBLFDescriptor((2, 1), lefschetz_count=6, separating_lefschetz=0)
    assert d.euler_characteristic() == euler_characteristic(build_Ws(4))


def test_directed_rejects_multi_level_and_bad_genera():
    d = DirectedBLFDescriptor((4, 3, 2), lefschetz_count=2, separating_lefschetz=0)
    with pytest.raises(NotImplementedError):
        d.check_monodromy()
    with pytest.raises(DescriptorError):
        DirectedBLFDescriptor((3, 3), 1, 0)
    with pytest.raises(DescriptorError):
        DirectedBLFDescriptor((2, 1), 1, 2)
    with pytest.raises(DescriptorError):
        DirectedBLFDescriptor((), 0, 0)
