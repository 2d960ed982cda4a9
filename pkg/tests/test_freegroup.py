import itertools

import pytest
from hypothesis import given, strategies as st

from hsblf.freegroup import (
    CyclicWord,
    FreeAutomorphism,
    FreeGroup,
    GroupPresentation,
    IntegerMatrix,
    WordLengthExceeded,
    abelian_invariants,
    abelianization_matrix,
    abelianize,
    compose,
    conjugacy_class,
    cyclic_reduce,
    cyclic_reduce_with_conjugator,
    inner_automorphism,
    inverse,
    is_reduced,
    multiply,
    power,
    reduce,
    smith_normal_form,
    substitute,
)
from hsblf.surface.table import chain_twists

from strategies import words


# ------------------------------------------------------------------ words


def test_reduce_examples():
    assert reduce((1, -1, 2)) == (2,)
    assert reduce(()) == ()
    assert reduce((1, 2, -2, -1)) == ()


def test_reduce_rejects_zero_letter():
    with pytest.raises(ValueError):
        FreeGroup(2).reduce((1, 0))


def test_free_group_checks_rank():
    F = FreeGroup(2)
    with pytest.raises(ValueError):
        F.reduce((3,))
    with pytest.raises(ValueError):
        F.multiply((1,), (5,))
    assert F.multiply((1, 2), (-2, 1)) == (1, 1)


def test_multiply_examples():
    assert multiply((1,), (-1,)) == ()
    assert multiply((1, 2), (-2, 3)) == (1, 3)
    assert multiply((1, 4), ()) == (1, 4)


def test_power():
    assert power((1, 2), 2) == (1, 2, 1, 2)
    assert power((1, 2), -1) == (-2, -1)
    assert power((1, 2), 0) == ()


@given(words(), words(), words())
def test_multiply_associative(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))


@given(words())
def test_inverse_and_idempotence(u):
    assert multiply(u, inverse(u)) == ()
    assert reduce(reduce(u)) == reduce(u)
    assert is_reduced(reduce(u))


# --------------------------------------------------------------- conjugacy


def test_conjugacy_examples():
    assert conjugacy_class((2, 1, -2)) == conjugacy_class((1,))
    assert conjugacy_class((1, 2)) == conjugacy_class((2, 1))
    assert conjugacy_class((1,), False) == conjugacy_class((-1,), False)
    assert conjugacy_class((1,), True) != conjugacy_class((-1,), True)


@given(words(), words())
def test_conjugacy_class_invariant(w, g):
    conj = multiply(g, w, inverse(g))
    assert conjugacy_class(conj) == conjugacy_class(w)
    assert conjugacy_class(conj, False) == conjugacy_class(inverse(w), False)


def _brute_conjugate(u, v):
    """Oracle: u, v conjugate in a free group iff their cyclic reductions are rotations."""
    a, b = cyclic_reduce(u), cyclic_reduce(v)
    if len(a) != len(b):
        return False
    return any(a[i:] + a[:i] == b for i in range(max(1, len(a))))


@given(words(3, 6), words(3, 6))
def test_conjugacy_class_matches_rotation_oracle(u, v):
    assert (conjugacy_class(u) == conjugacy_class(v)) == _brute_conjugate(u, v)


@given(words())
def test_cyclic_reduce_with_conjugator(w):
    p, core = cyclic_reduce_with_conjugator(w)
    assert multiply(p, core, inverse(p)) == w
    assert core == cyclic_reduce(w)


def test_canonical_form_order():
    # x1 < x1^-1 < x2 < ...
    assert CyclicWord.of((2, 1)).letters == (1, 2)
    assert CyclicWord.of((-1, 2)).letters == (-1, 2)


# ------------------------------------------------------------ automorphisms


def _table_autos():
    return [e.automorphism for e in chain_twists(2).entries.values()]


def test_compose_examples():
    t4 = chain_twists(2)["t4"].automorphism
    I = FreeAutomorphism.identity(4)
    assert compose(t4, t4.inverse()).is_identity()
    assert compose(I, t4) == t4
    assert compose(t4, I) == t4


def test_compose_is_functional_and_then_is_ltr():
    t2, t3 = chain_twists(2)["t2"].automorphism, chain_twists(2)["t3"].automorphism
    w = (1, 2, -3, 4)
    assert compose(t2, t3).apply(w) == t2.apply(t3.apply(w))
    assert t2.then(t3).apply(w) == t3.apply(t2.apply(w))


@given(st.lists(st.tuples(st.integers(0, 5), st.sampled_from([1, -1])), max_size=12))
def test_compose_with_inverse_is_identity(seq):
    autos = _table_autos()
    f = FreeAutomorphism.identity(4)
    for i, e in seq:
        f = f.then(autos[i] if e > 0 else autos[i].inverse())
    assert compose(f, f.inverse()).is_identity()
    assert compose(f.inverse(), f).is_identity()
    assert f.is_consistent()


def test_identity_apply_and_generator_images():
    I = FreeAutomorphism.identity(4)
    assert I.apply((3, -1, 2)) == (3, -1, 2)
    t5 = chain_twists(2)["t5"].automorphism
    for k in range(4):
        assert t5.apply((k + 1,)) == t5.images[k]


def test_apply_cyclic_recanonicalizes():
    t4 = chain_twists(2)["t4"].automorphism
    c = CyclicWord.of((2, 1, -2))
    assert t4.apply_cyclic(c) == CyclicWord.of(t4.apply((1,)))


def test_length_cap():
    f = inner_automorphism(2, (1, 2, 1, 2))
    with pytest.raises(WordLengthExceeded):
        substitute(f.images, (1,) * 10, cap=12)
    with pytest.raises(WordLengthExceeded):
        f.then(f, cap=5)


def test_length_cap_environment(monkeypatch):
    monkeypatch.setenv("HSBLF_MAX_WORD_LENGTH", "8")
    f = inner_automorphism(2, (1, 2, 1, 2))
    with pytest.raises(WordLengthExceeded):
        f.apply((1, 1, 1))


def test_inner_automorphism():
    f = inner_automorphism(3, (2,))
    assert f.apply((1,)) == (2, 1, -2)
    assert f.is_consistent()


# ------------------------------------------------------------ abelianization


def test_abelianize_examples():
    assert abelianize((1, 2, -1), 2) == (0, 1)
    assert abelianization_matrix(FreeAutomorphism.identity(4)) == IntegerMatrix.identity(4)


@given(st.integers(0, 5), st.integers(0, 5), st.sampled_from([1, -1]))
def test_abelianization_functorial(i, j, e):
    autos = _table_autos()
    f, g = autos[i], autos[j] if e > 0 else autos[j].inverse()
    assert abelianization_matrix(compose(f, g)) == abelianization_matrix(f) @ abelianization_matrix(g)


# ------------------------------------------------------------ Smith form


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    return sum((-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n))


def _gcd_list(xs):
    from math import gcd

    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def determinantal_factors(m):
    """Independent oracle: d_k = D_k / D_{k-1} with D_k the gcd of k x k minors."""
    rows, cols = len(m), len(m[0])
    D = [1]
    for k in range(1, min(rows, cols) + 1):
        minors = [
            _det([[m[i][j] for j in cs] for i in rs])
            for rs in itertools.combinations(range(rows), k)
            for cs in itertools.combinations(range(cols), k)
        ]
        D.append(_gcd_list(minors))
    out = []
    for k in range(1, len(D)):
        out.append(0 if D[k] == 0 else D[k] // D[k - 1])
    return out


def test_smith_examples():
    d, _, _ = smith_normal_form(IntegerMatrix([[2, 4], [6, 8]]))
    assert d == [2, 4]
    assert determinantal_factors([[2, 4], [6, 8]]) == [2, 4]
    assert smith_normal_form(IntegerMatrix.zeros(2, 3))[0] == [0, 0]
    assert smith_normal_form(IntegerMatrix.identity(3))[0] == [1, 1, 1]


def _unimodular(M):
    return abs(_det(M.tolist())) == 1


@given(st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_smith_reconstruction_and_oracle(rows):
    m = IntegerMatrix(rows)
    d, U, V = smith_normal_form(m)
    D = U @ m @ V
    for i in range(m.rows):
        for j in range(m.cols):
            assert D[i, j] == (d[i] if i == j else 0)
    assert _unimodular(U) and _unimodular(V)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d == determinantal_factors(rows)


def test_abelian_invariants():
    assert abelian_invariants(IntegerMatrix([[2, 0], [0, 0]]), 2) == [2, 0]
    assert abelian_invariants(IntegerMatrix.zeros(0, 3), 3) == [0, 0, 0]
    assert abelian_invariants(IntegerMatrix([[1, 0], [0, 1]]), 2) == []


def test_group_presentation():
    # <x, y | [x, y]> = Z^2; <x | x^3> = Z/3
    assert GroupPresentation(2, ((1, 2, -1, -2),)).abelian_invariants() == [0, 0]
    assert GroupPresentation(1, ((1, 1, 1),)).abelian_invariants() == [3]


def test_tietze_simplification():
    p = GroupPresentation(3, ((1, 2, -3), (3, 3, 3)))
    q = p.simplified()
    assert q.generator_count <= 2
    assert q.abelian_invariants() == p.abelian_invariants()
    # generator 3 = x1 x2 eliminated, leaving one relator (x1 x2)^3
    assert len(q.relators) == 1


def test_charpoly_and_trace():
    m = IntegerMatrix([[2, 1], [1, 1]])
    assert m.charpoly() == (1, -3, 1)
    assert m.trace() == 3
