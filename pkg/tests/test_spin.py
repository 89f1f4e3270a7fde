from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crystalkit.errors import DimensionCap, NotOrientable, NotOrthogonal, NotSpecial
from crystalkit.exactmath import matrices as mx
from crystalkit.crystal import abelianization, build_crystal
from crystalkit.groups import close_group
from crystalkit.repanalysis.random_reps import random_unimodular
from crystalkit.spin import CliffordElement, clifford_lift, invariant_form, presentation, spin_structures

h = Fraction(1, 2)
HW_MATS = [[[1, 0, 0], [0, -1, 0], [0, 0, -1]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]]
HW_VECS = [[h, h, 0], [0, h, h]]
Z3 = [[1, 0, 0], [0, 0, -1], [0, 1, -1]]


def hw():
    return build_crystal(3, HW_MATS, HW_VECS, name="hw")


def z3_dim3():
    return build_crystal(3, [Z3], [[Fraction(1, 3), 0, 0]])


def e(q, mask, c=1):
    return CliffordElement.from_dict(q, {mask: c})


# ---------------------------------------------------------------------------
# Clifford arithmetic
# ---------------------------------------------------------------------------

def test_anticommutation_and_squares():
    q = (1, 2, 3)
    e1, e2 = e(q, 0b001), e(q, 0b010)
    assert (e1 * e2).as_dict() == {0b011: 1}
    assert (e2 * e1).as_dict() == {0b011: -1}
    assert (e2 * e2).as_dict() == {0: 2}
    e12 = e1 * e2
    assert (e12 * e12).as_dict() == {0: -2}


def test_associativity_on_monomials():
    q = (1, 3, 2, 5)
    for a in range(16):
        for b in range(16):
            for c in (0b0101, 0b1110, 0b1111):
                x, y, z = e(q, a), e(q, b), e(q, c)
                assert ((x * y) * z).as_dict() == (x * (y * z)).as_dict()


def test_reverse_of_product_of_vectors():
    q = (1, 1, 1)
    u = CliffordElement.vector(q, [1, 2, 0])
    v = CliffordElement.vector(q, [0, 1, -1])
    assert ((u * v).reverse()).as_dict() == (v * u).as_dict()
    assert (u * v).norm() == 5 * 2


# ---------------------------------------------------------------------------
# invariant forms
# ---------------------------------------------------------------------------

def test_trivial_group_form():
    f = invariant_form([mx.identity(3)])
    assert f.S == mx.freeze(mx.identity(3))


def test_klein_form_is_twice_identity():
    f = invariant_form([mx.identity(2), [[1, 0], [0, -1]]])
    assert f.S == ((2, 0), (0, 2))
    assert f.q == (2, 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_form_invariant_under_conjugated_actions(seed):
    import random
    U = random_unimodular(3, random.Random(seed), steps=6)
    Ui = mx.int_inverse(U)
    H = close_group([mx.conjugate(U, g, Ui) for g in HW_MATS])
    f = invariant_form(H.elements)
    S = [list(r) for r in f.S]
    for g in H.elements:
        assert mx.matmul(mx.matmul(mx.transpose(g), S), g) == S
    P = [list(r) for r in f.P]
    D = mx.matmul(mx.matmul(mx.transpose(P), S), P)
    assert all(D[i][j] == (f.q[i] if i == j else 0) for i in range(3) for j in range(3))
    assert all(x > 0 for x in f.q)


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------

def test_lift_identity_is_one():
    assert clifford_lift(mx.identity(3), (1, 1, 1)).simplify().as_dict() == {0: 1}


def test_lift_minus_identity_in_plane():
    x = clifford_lift([[-1, 0], [0, -1]], (1, 1)).simplify()
    assert x.as_dict() in ({0b11: 1}, {0b11: -1})
    assert (x * x).simplify().as_dict() == {0: -1}


def test_lift_coordinate_rotation():
    x = clifford_lift([[1, 0, 0], [0, -1, 0], [0, 0, -1]], (1, 1, 1)).simplify()
    assert x.as_dict() in ({0b110: 1}, {0b110: -1})


def test_lift_errors():
    with pytest.raises(NotOrthogonal):
        clifford_lift([[1, 1], [0, 1]], (1, 1))
    with pytest.raises(NotSpecial):
        clifford_lift([[1, 0], [0, -1]], (1, 1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([[Z3], HW_MATS]))
def test_lift_reproduces_matrix_and_has_positive_scale(seed, gens):
    import random
    U = random_unimodular(3, random.Random(seed), steps=6)
    Ui = mx.int_inverse(U)
    H = close_group([mx.conjugate(U, g, Ui) for g in gens]).elements
    f = invariant_form(H)
    P = mx.to_fractions([list(r) for r in f.P])
    Pi = mx.inverse(P)
    for g in H:
        A = mx.matmul(mx.matmul(Pi, g), P)
        x = clifford_lift(A, f.q)
        for j in range(3):
            assert x.act([int(i == j) for i in range(3)]) == [A[i][j] for i in range(3)]
        assert x.norm() == x.mu and x.mu > 0
        assert (-x).relative_sign(x) == -1 and x.relative_sign(x) == 1


# ---------------------------------------------------------------------------
# spin structures
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_torus_has_2_to_the_n(n):
    assert spin_structures(build_crystal(n, [], [])).count == 2 ** n


def test_hw_count_matches_abelianization():
    r = spin_structures(hw())
    ab = abelianization(hw())
    assert ab.torsion == (4, 4) and ab.free_rank == 0
    assert r.count == 4 == r.expected
    for lift in r.lifts:
        assert all(ok for _, ok in lift.transcript)
        # lattice generators map to scalars
        assert all(x.is_scalar() for x in lift.elements[:3])


def test_odd_order_holonomy_is_spin():
    r = spin_structures(z3_dim3())
    assert r.exists and r.count == r.expected == 2


def test_klein_not_orientable():
    with pytest.raises(NotOrientable):
        spin_structures(build_crystal(2, [[[1, 0], [0, -1]]], [[h, 0]]))


def test_dimension_cap():
    with pytest.raises(DimensionCap):
        spin_structures(build_crystal(9, [], []))


def test_presentation_is_table_complete():
    G = hw()
    rels = presentation(G)
    assert sum(1 for r in rels if r.label.startswith("s")) == G.order ** 2
