import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from crystalkit.errors import NoCompatibleTheta, VectorObstruction
from crystalkit.exactmath import matrices as mx
from crystalkit.exactmath.polynomials import charpoly
from crystalkit.crystal import build_crystal, conjugate_crystal
from crystalkit.dynamics import (
    AffineEndo,
    anosov_scan,
    brute_force_fixed_points,
    candidate_matrices,
    certified_roots,
    check_endo,
    cohomology_action,
    ec_check,
    entropy_affine,
    fixed_point_data,
    validate_endo,
)

h = Fraction(1, 2)
CAT = [[2, 1], [1, 1]]
GOLDEN = math.log((3 + math.sqrt(5)) / 2)


def klein():
    return build_crystal(2, [[[1, 0], [0, -1]]], [[h, 0]], name="klein")


def torus(n):
    return build_crystal(n, [], [], name=f"T{n}")


def hw():
    return build_crystal(3, [[[1, 0, 0], [0, -1, 0], [0, 0, -1]], [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]],
                         [[h, h, 0], [0, h, h]], name="hw")


def z3_dim3():
    return build_crystal(3, [[[1, 0, 0], [0, 0, -1], [0, 1, -1]]], [[Fraction(1, 3), 0, 0]])


def z5_dim5():
    C5 = [[0, 0, 0, -1, 0], [1, 0, 0, -1, 0], [0, 1, 0, -1, 0], [0, 0, 1, -1, 0], [0, 0, 0, 0, 1]]
    return build_crystal(5, [C5], [[0, 0, 0, 0, Fraction(1, 5)]])


def identity_endo(G):
    return validate_endo(G, mx.identity(G.n))


def off_circle(F) -> bool:
    for fr in certified_roots(tuple(charpoly(F).integer_primitive())):
        if fr.cyclotomic_index is not None or any(r.location == "on" for r in fr.roots):
            return False
    return True


def box(n, bound):
    for vals in product(range(-bound, bound + 1), repeat=n * n):
        yield [list(vals[i * n:(i + 1) * n]) for i in range(n)]


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_torus_accepts_any_matrix():
    e = validate_endo(torus(2), [[5, -3], [7, 0]])
    assert e.d == (0, 0) and e.theta == (0,)


def test_klein_diag_3_2_valid_with_identity_theta():
    e = validate_endo(klein(), [[3, 0], [0, 2]])
    assert e.theta == (0, 1)
    assert not e.d_adjusted
    check_endo(klein(), e)


def test_klein_diag_2_2_obstructed():
    with pytest.raises(VectorObstruction) as exc:
        validate_endo(klein(), [[2, 0], [0, 2]])
    assert exc.value.element == 1


def test_klein_no_compatible_theta():
    # swaps the fixed and the reversed axis
    with pytest.raises(NoCompatibleTheta):
        validate_endo(klein(), [[0, 1], [1, 0]])


def test_singular_linear_part_uses_matching():
    # F kills the reversed direction, so theta may send A to the identity
    e = validate_endo(klein(), [[1, 0], [0, 0]])
    check_endo(klein(), e)
    assert e.theta[1] in (0, 1)


def test_translation_adjusted_when_needed():
    G = klein()
    e = validate_endo(G, [[3, 0], [0, 2]], d=[0, Fraction(1, 3)])
    check_endo(G, e)
    assert e.d_adjusted


def test_hw_identity_and_minus_identity_checks():
    G = hw()
    check_endo(G, identity_endo(G))
    e = validate_endo(G, [[3, 0, 0], [0, 3, 0], [0, 0, 3]])
    check_endo(G, e)


# ---------------------------------------------------------------------------
# fixed points
# ---------------------------------------------------------------------------

def test_cat_map_fixed_points():
    G = torus(2)
    rep = fixed_point_data(G, validate_endo(G, CAT))
    assert (rep.lefschetz, rep.nielsen, rep.anosov) == (-1, 1, True)
    counts, total = brute_force_fixed_points(G, validate_endo(G, CAT))
    assert counts == [1] and total == 1


def test_klein_counterexample_with_brute_force_lifts():
    G = klein()
    e = validate_endo(G, [[3, 0], [0, 2]])
    rep = fixed_point_data(G, e)
    assert rep.terms == (2, -6)
    assert (rep.lefschetz, rep.nielsen, rep.anosov) == (-2, 4, False)
    counts, total = brute_force_fixed_points(G, e)
    assert sorted(counts) == [2, 6]
    assert total == rep.nielsen


@pytest.mark.parametrize("make", [klein, hw, z3_dim3, lambda: torus(3), z5_dim5])
def test_identity_has_zero_numbers(make):
    G = make()
    rep = fixed_point_data(G, identity_endo(G))
    assert rep.lefschetz == 0 and rep.nielsen == 0
    assert rep.degenerate


def test_averaging_identity_is_exact():
    G = hw()
    e = validate_endo(G, [[3, 0, 0], [0, -1, 0], [0, 0, 5]])
    rep = fixed_point_data(G, e)
    dets = [mx.det(mx.sub(mx.identity(3), mx.matmul(hh, e.matrix()))) for hh in G.holonomy.elements]
    assert G.order * rep.lefschetz == sum(dets)
    assert G.order * rep.nielsen == sum(abs(x) for x in dets)


@pytest.mark.parametrize("make", [lambda: torus(2), klein])
def test_oracle_equivalence_on_small_box(make):
    G = make()
    checked = 0
    for F in box(2, 2):
        try:
            e = validate_endo(G, F)
        except (VectorObstruction, NoCompatibleTheta):
            continue
        if not off_circle(F):
            continue
        rep = fixed_point_data(G, e)
        counts, total = brute_force_fixed_points(G, e)
        assert total == rep.nielsen, F
        assert [abs(t) for t in rep.terms] == counts
        checked += 1
    assert checked >= 5


@pytest.mark.parametrize("z", [(1, 0), (0, -1), (3, 2)])
def test_integer_shift_of_translation_is_invisible(z):
    G = klein()
    e = validate_endo(G, [[3, 0], [0, 2]])
    moved = validate_endo(G, e.matrix(), d=[a + b for a, b in zip(e.d, z)])
    assert fixed_point_data(G, moved) == fixed_point_data(G, e)


@pytest.mark.parametrize("s", [(Fraction(1, 4), Fraction(1, 3)), (Fraction(-2, 5), 0)])
def test_translation_conjugation_preserves_fixed_point_data(s):
    G = klein()
    e = validate_endo(G, [[3, 0], [0, 2]])
    G2 = conjugate_crystal(G, mx.identity(2), list(s))
    F = e.matrix()
    # x -> x + s carries f to x -> F x + d + s - F s
    d2 = [a + b - c for a, b, c in zip(e.d, s, mx.matvec(F, list(s)))]
    e2 = validate_endo(G2, F, d=d2)
    assert not e2.d_adjusted
    assert fixed_point_data(G2, e2) == fixed_point_data(G, e)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_nielsen_dominates_lefschetz(vals):
    G = hw()
    F = [vals[0:3], vals[3:6], vals[6:9]]
    try:
        e = validate_endo(G, F)
    except (VectorObstruction, NoCompatibleTheta):
        return
    check_endo(G, e)
    rep = fixed_point_data(G, e)
    assert rep.nielsen >= abs(rep.lefschetz)
    assert G.order * rep.lefschetz == sum(rep.terms)


# ---------------------------------------------------------------------------
# entropy and cohomology
# ---------------------------------------------------------------------------

def test_entropy_examples():
    assert abs(entropy_affine(validate_endo(torus(2), CAT)).value - GOLDEN) < 1e-9
    assert abs(entropy_affine(validate_endo(klein(), [[3, 0], [0, 2]])).value - math.log(6)) < 1e-12
    assert entropy_affine(validate_endo(torus(2), [[0, -1], [1, 0]])).value == 0


def test_entropy_enclosure_contains_value():
    enc = entropy_affine(validate_endo(torus(3), [[1, 1, 0], [1, 2, 1], [0, 1, 3]]))
    assert enc.low <= enc.value <= enc.high
    assert enc.high - enc.low < 1e-12


def test_certified_roots_cyclotomic_and_palindromic():
    # x^2 + 1 is Phi_4; x^4 - x^3 - x^2 - x + 1 has two roots on the circle (Salem-type)
    (f,) = certified_roots((1, 0, 1))
    assert f.cyclotomic_index == 4
    (g,) = certified_roots((1, -1, -1, -1, 1))
    locs = sorted(r.location for r in g.roots)
    assert locs == ["inside", "on", "on", "outside"]


def test_cohomology_action_examples():
    assert abs(cohomology_action(torus(2), validate_endo(torus(2), CAT)).spectral_radius.value
               - (3 + math.sqrt(5)) / 2) < 1e-12
    act = cohomology_action(klein(), validate_endo(klein(), [[3, 0], [0, 2]]))
    assert act.spectral_radius.value == pytest.approx(3)
    assert len(act.bases[1]) == 1 and act.bases[2] == []
    act = cohomology_action(hw(), identity_endo(hw()))
    assert act.spectral_radius.value == 1
    # rational homology sphere: only degrees 0 and 3 carry invariants
    assert [len(act.bases[k]) for k in range(4)] == [1, 0, 0, 1]


def test_ec_examples():
    r = ec_check(torus(2), validate_endo(torus(2), CAT))
    assert r.holds and r.equality
    assert abs(r.log_sp.value - GOLDEN) < 1e-9 and abs(r.entropy.value - GOLDEN) < 1e-9
    r = ec_check(klein(), validate_endo(klein(), [[3, 0], [0, 2]]))
    assert r.holds and not r.equality
    assert r.log_sp.value == pytest.approx(math.log(3)) and r.entropy.value == pytest.approx(math.log(6))
    r = ec_check(hw(), identity_endo(hw()))
    assert r.holds and r.log_sp.value == 0 and r.entropy.value == 0
    assert "affine representative" in r.note


# ---------------------------------------------------------------------------
# scans
# ---------------------------------------------------------------------------

def test_klein_scan_bound_3_finds_counterexample():
    res = anosov_scan(klein(), 3)
    found = {e.F: rep for e, rep in res.counterexamples}
    rep = found[((3, 0), (0, 2))]
    assert (rep.lefschetz, rep.nielsen) == (-2, 4)
    for e, _ in res.valid:
        assert ec_check(klein(), e).holds


def test_torus_scan_bound_2_empty():
    res = anosov_scan(torus(2), 2)
    assert res.candidates == 625 and len(res.valid) == 625
    assert res.counterexamples == []


def test_z3_scan_bound_2_empty_and_ec_holds():
    G = z3_dim3()
    res = anosov_scan(G, 2)
    assert res.valid and res.counterexamples == []
    for e, _ in res.valid:
        assert ec_check(G, e).holds


@pytest.mark.slow
def test_z5_scan_bound_2_empty():
    res = anosov_scan(z5_dim5(), 2)
    assert res.valid and res.counterexamples == []


def test_scan_is_deterministic():
    a = anosov_scan(klein(), 2)
    b = anosov_scan(klein(), 2)
    assert [e for e, _ in a.valid] == [e for e, _ in b.valid]
    assert candidate_matrices(klein(), 2) == sorted(candidate_matrices(klein(), 2))


def test_affine_endo_matrix_roundtrip():
    e = AffineEndo(((1, 2), (3, 4)), (0, 0), (0,))
    assert e.matrix() == [[1, 2], [3, 4]] and e.n == 2
