"""Free resolutions: Betti numbers of classical examples, exactness
certificates, and unit cancellation in padded complexes."""

import pytest

from codim2.groebner import Ideal, Vec
from codim2.resolution import (
    BettiTable,
    GradedComplex,
    apply_columns,
    free_resolution,
    ideal_resolution,
    minimize_complex,
)
from codim2.ring import PolyRing

R = PolyRing(4)


def cubic_curve():
    return Ideal(R, [
        R.parse("x1^2 - x0*x2"),
        R.parse("x1*x2 - x0*x3"),
        R.parse("x2^2 - x1*x3"),
    ])


def skew_lines():
    return Ideal(R, [
        R.parse("x0*x2"), R.parse("x0*x3"), R.parse("x1*x2"), R.parse("x1*x3"),
    ])


def assert_resolution_sane(res: GradedComplex, ideal: Ideal, degs=range(0, 8)):
    assert res.check_homogeneous()
    assert res.check_composites()
    assert res.is_minimal()
    for v in degs:
        assert res.euler_dim(v) == ideal.graded_dim(v)


def test_cubic_curve_resolution():
    ideal = cubic_curve()
    res = ideal_resolution(ideal)
    assert res.betti().as_dict() == {(1, 2): 3, (2, 3): 2}
    assert_resolution_sane(res, ideal)
    assert res.betti().regularity() == 2


def test_two_disjoint_lines_resolution():
    ideal = skew_lines()
    res = ideal_resolution(ideal)
    assert res.betti().as_dict() == {(1, 2): 4, (2, 3): 4, (3, 4): 1}
    assert_resolution_sane(res, ideal)
    assert res.betti().regularity() == 2


def test_complete_intersection_resolutions():
    ci = Ideal(R, [R.random_form(2, seed=11), R.random_form(2, seed=12)])
    res = ideal_resolution(ci)
    assert res.betti().as_dict() == {(1, 2): 2, (2, 4): 1}
    assert_resolution_sane(res, ci)

    koszul = Ideal(R, [v * v for v in R.variables()])
    res4 = ideal_resolution(koszul)
    assert res4.betti().as_dict() == {(1, 2): 4, (2, 4): 6, (3, 6): 4, (4, 8): 1}
    assert_resolution_sane(res4, koszul)


def test_redundant_generators_do_not_change_the_resolution():
    gens = cubic_curve().gens
    fat = Ideal(R, gens + [R.parse("x0") * gens[0], gens[1] + gens[2]])
    res = ideal_resolution(fat)
    assert res.betti().as_dict() == {(1, 2): 3, (2, 3): 2}


def test_power_sum_identities_for_codimension_two():
    # rank and first twist sums vanish for R/I, the second gives the degree
    for ideal, d in [(cubic_curve(), 3), (skew_lines(), 2)]:
        b = ideal_resolution(ideal).betti()
        assert 1 - b.twist_power_sum(0) == 0
        assert b.twist_power_sum(1) == 0
        assert -b.twist_power_sum(2) == 2 * d


def test_betti_table_serialization():
    b = BettiTable.from_rows([[1, 5, 10], [2, 6, 12], [2, 7, 2], [3, 7, 3], [3, 8, 3], [4, 9, 1]])
    assert b.json_rows() == [[1, 5, 10], [2, 6, 12], [2, 7, 2], [3, 7, 3], [3, 8, 3], [4, 9, 1]]
    assert b.twists_at(2) == [6] * 12 + [7] * 2
    assert b.total(3) == 6
    arrow = b.arrow_text("J")
    assert arrow.startswith("0 -> R(-9) -> ")
    assert "R(-6)^12" in arrow and arrow.endswith("-> J -> 0")
    grid = b.text()
    assert "j=4" in grid and "12" in grid


def pad_with_trivial_pair(res: GradedComplex, k: int, twist: int) -> GradedComplex:
    """Insert R(-twist) == R(-twist) across levels k, k+1."""
    ring = res.ring
    twists = [list(t) for t in res.twists]
    diffs = [list(cols) for cols in res.diffs]
    twists[k].append(twist)
    twists[k + 1].append(twist)
    new_comp = len(twists[k]) - 1
    diffs[k] = diffs[k] + [Vec(ring, {new_comp: ring.one()})]
    if k >= 1:
        diffs[k - 1] = diffs[k - 1] + [Vec(ring, {})]
    return GradedComplex(ring, twists, diffs)


def mix_basis(res: GradedComplex, k: int, s: int, t: int, phi) -> GradedComplex:
    """Basis change e_s -> e_s + phi * e_t on level k (phi homogeneous of
    degree twist[s] - twist[t])."""
    ring = res.ring
    twists = [list(tw) for tw in res.twists]
    diffs = [list(cols) for cols in res.diffs]
    if k >= 1:
        cols = list(diffs[k - 1])
        cols[s] = cols[s].add(cols[t].poly_mul(phi))
        diffs[k - 1] = cols
    if k < len(diffs):
        new_cols = []
        for col in diffs[k]:
            ws = col.comps.get(s)
            if ws is not None:
                col = Vec(ring, dict(col.comps)).sub_poly_mul(Vec(ring, {t: ws}), phi)
            new_cols.append(col)
        diffs[k] = new_cols
    return GradedComplex(ring, twists, diffs)


@pytest.mark.parametrize("level", [1, 2])
def test_minimize_recovers_betti_numbers_after_padding(level):
    ideal = skew_lines()
    res = ideal_resolution(ideal)
    want = res.betti()
    padded = pad_with_trivial_pair(res, level, 3)
    # scramble with complex-preserving basis changes that entangle the pad
    n_k = len(padded.twists[level])
    for s in range(n_k - 1):
        d = padded.twists[level][n_k - 1] - padded.twists[level][s]
        if d >= 0:
            padded = mix_basis(padded, level, n_k - 1, s, R.random_form(d, seed=s + 1))
    n_up = len(padded.twists[level + 1])
    for t in range(n_up - 1):
        d = padded.twists[level + 1][n_up - 1] - padded.twists[level + 1][t]
        if d >= 0:
            padded = mix_basis(padded, level + 1, n_up - 1, t, R.random_form(d, seed=t + 9))
    assert padded.check_homogeneous()
    assert padded.check_composites()
    assert not padded.is_minimal()
    slim = minimize_complex(padded)
    assert slim.betti().as_dict() == want.as_dict()
    assert slim.check_homogeneous()
    assert slim.check_composites()
    assert slim.is_minimal()
    for v in range(0, 7):
        assert slim.euler_dim(v) == ideal.graded_dim(v)


def test_minimize_keeps_already_minimal_complexes():
    res = ideal_resolution(cubic_curve())
    slim = minimize_complex(res)
    assert slim.betti().as_dict() == res.betti().as_dict()
    assert slim.check_composites()


def test_module_resolution_with_shifted_ambient():
    # column space of the transposed cubic-curve matrix inside R(-1)^2:
    # cokernel is the degree-shifted canonical module of the curve
    x0, x1, x2, x3 = R.variables()
    cols = [
        Vec(R, {0: x0, 1: x1}),
        Vec(R, {0: x1, 1: x2}),
        Vec(R, {0: x2, 1: x3}),
    ]
    res = free_resolution(R, cols, [1, 1])
    assert res.twists[0] == [1, 1]
    assert res.betti().as_dict() == {(1, 2): 3, (2, 4): 1}
    assert res.check_composites() and res.is_minimal()
    img = apply_columns(res.diffs[0], R, res.diffs[1][0])
    assert not img
