import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mconvex import (
    SetFamily,
    compute_z,
    enumerate_flags,
    extract_antimatroid,
    generate,
    hull_as_preantimatroid,
    is_antimatroid,
    is_preantimatroid,
    mconv_fixpoint,
    mconv_recursive,
    phi,
    phi_bar,
)
from mconvex.errors import NotInHull, NotPreAntimatroid, NotSemimodular
from mconvex.flags import sample_flag
from mconvex.generators import Lcg, gen_antimatroid_lattice
from mconvex.hull import delta_step, hull_is_modular_convex
from mconvex.lattice import is_join_closed, iter_bits, mask_of, sublattice_closure


def fam(n, *sets):
    return SetFamily.of(n, (sum(1 << (i - 1) for i in s) for s in sets))


def full_chains_oracle(F):
    """Members on some length-n chain, by trying every permutation of [n]."""
    found = set()
    for order in itertools.permutations(range(F.ground_size)):
        prefixes = [0]
        for i in order:
            prefixes.append(prefixes[-1] | (1 << i))
        if all(p in F for p in prefixes):
            found.update(prefixes)
    return found


# -- fixpoint ----------------------------------------------------------------------


def test_fixpoint_of_a_flag_is_the_flag(partition4):
    for C in enumerate_flags(partition4):
        assert mconv_fixpoint(partition4, mask_of(C)) == mask_of(C)


@pytest.mark.parametrize("spec", ["boolean:3", "binary_subspace:3"])
def test_fixpoint_in_modular_lattice_is_generated_sublattice(spec):
    L = generate(spec)
    flags = enumerate_flags(L)
    for C in flags:
        for D in flags:
            seed = mask_of(C) | mask_of(D)
            assert mconv_fixpoint(L, seed) == sublattice_closure(L, seed)


def test_fixpoint_equals_recursion_boolean3(boolean3):
    flags = enumerate_flags(boolean3)
    for C in flags:
        for D in flags:
            assert mconv_fixpoint(boolean3, mask_of(C) | mask_of(D)) == mconv_recursive(boolean3, C, D).members


# -- z arrays ----------------------------------------------------------------------


def test_z_for_equal_flags(partition4):
    for C in enumerate_flags(partition4):
        z, zp = compute_z(partition4, C, C)
        assert z == C[:-1] and zp == C[1:]


def test_z_for_crossing_flags(boolean2):
    # sigma = (2, 1): z_1 = c_1 v d_0 = {1}, z'_1 = c_2 v d_1 = top,
    # z_2 = c_0 v d_1 = {2}, z'_2 = c_1 v d_2 = top
    z, zp = compute_z(boolean2, (0, 1, 3), (0, 2, 3))
    assert z == (1, 2) and zp == (3, 3)


@pytest.mark.parametrize("spec", ["partition:4", "product:3", "antimatroid_shelling:5:0"])
def test_z_prime_covers_z(spec):
    L = generate(spec)
    flags = enumerate_flags(L)
    for C in flags[::3]:
        for D in flags:
            z, zp = compute_z(L, C, D)
            assert all(L.rank[b] == L.rank[a] + 1 and L.leq(a, b) for a, b in zip(z, zp))


# -- recursion -------------------------------------------------------------------


def test_recursion_equal_flags(partition4):
    for C in enumerate_flags(partition4):
        hull = mconv_recursive(partition4, C, C)
        assert hull.members == mask_of(C)


def test_recursion_partition4_matches_fixpoint(partition4):
    flags = enumerate_flags(partition4)
    for C in flags:
        for D in flags:
            hull = mconv_recursive(partition4, C, D)
            assert hull.members == mconv_fixpoint(partition4, mask_of(C) | mask_of(D))
            assert is_join_closed(partition4, hull.members)
            assert hull_is_modular_convex(partition4, hull.members)


def test_recursion_levels_are_monotone(partition4):
    flags = enumerate_flags(partition4)
    for C in flags:
        for D in flags:
            hull = mconv_recursive(partition4, C, D)
            assert hull.levels[-1] == mask_of(D[-2:])
            for smaller, larger in zip(hull.levels[1:], hull.levels):
                assert smaller & ~larger == 0
            assert (mask_of(C) | mask_of(D)) & ~hull.members == 0


def test_hull_rejects_non_semimodular(pentagon):
    with pytest.raises(NotSemimodular):
        mconv_recursive(pentagon, (0, 1, 2, 4), (0, 3, 4))


def test_delta_step_for_equal_flags(partition4):
    for C in enumerate_flags(partition4):
        inner, delta, k = delta_step(partition4, C, C)
        assert k == 0 and delta == 1 << partition4.bottom
        assert inner == mask_of(C[1:])


def test_delta_step_decomposition(boolean3):
    flags = enumerate_flags(boolean3)
    for C in flags:
        for D in flags:
            inner, delta, k = delta_step(boolean3, C, D)
            assert inner | delta == mconv_fixpoint(boolean3, mask_of(C) | mask_of(D))
            assert delta & ~boolean3.down[C[k]] == 0


# -- phi embedding ---------------------------------------------------------------


def test_phi_extremes(partition4):
    flags = enumerate_flags(partition4)
    for C in flags:
        for D in flags[:5]:
            hull = mconv_recursive(partition4, C, D)
            assert phi(partition4, hull, partition4.bottom) == 0b111
            assert phi(partition4, hull, partition4.top) == 0


def test_phi_join_is_intersection(partition4):
    flags = enumerate_flags(partition4)
    for C in flags:
        for D in flags:
            hull = mconv_recursive(partition4, C, D)
            elems = hull.elements()
            for u in elems:
                assert partition4.rank[u] == 3 - phi(partition4, hull, u).bit_count()
                for v in elems:
                    w = partition4.join(u, v)
                    assert phi(partition4, hull, w) == phi(partition4, hull, u) & phi(partition4, hull, v)


def test_phi_outside_hull(boolean3):
    C = enumerate_flags(boolean3)[0]
    hull = mconv_recursive(boolean3, C, C)
    outside = next(iter_bits(boolean3.all_mask & ~hull.members))
    with pytest.raises(NotInHull):
        phi(boolean3, hull, outside)


# -- pre-antimatroid image -------------------------------------------------------


def test_image_of_equal_flags_is_a_chain(partition4):
    C = enumerate_flags(partition4)[4]
    K = hull_as_preantimatroid(partition4, mconv_recursive(partition4, C, C))
    sizes = [s.bit_count() for s in K]
    assert sizes == [0, 1, 2, 3]
    assert all(a & ~b == 0 for a, b in zip(K.sets, K.sets[1:]))


def test_image_of_crossing_flags_is_boolean(boolean2):
    K = hull_as_preantimatroid(boolean2, mconv_recursive(boolean2, (0, 1, 3), (0, 2, 3)))
    assert K == fam(2, (), (1,), (2,), (1, 2))


def test_image_of_flags_are_full_chains(partition4):
    flags = enumerate_flags(partition4)
    for C in flags:
        for D in flags:
            hull = mconv_recursive(partition4, C, D)
            for F in (C, D):
                chain = [phi_bar(partition4, hull, u) for u in F]
                assert [s.bit_count() for s in chain] == list(range(4))
                assert all(a & ~b == 0 for a, b in zip(chain, chain[1:]))


# -- axiom checks and K* -----------------------------------------------------------


def test_axiom_examples():
    F = fam(2, (), (1,), (1, 2))
    assert is_antimatroid(F) and is_preantimatroid(F)

    F = fam(2, (), (1, 2))
    assert not is_preantimatroid(F) and is_preantimatroid(F).axiom == "A3'"
    assert not is_antimatroid(F) and is_antimatroid(F).axiom == "A3"

    F = fam(3, (), (1,), (1, 2, 3))
    verdict = is_preantimatroid(F)
    assert not verdict and verdict.axiom == "A3'"

    F = fam(2, (1,), (1, 2))
    assert is_antimatroid(F).axiom == "A1"
    F = fam(3, (), (1,), (2,), (1, 2, 3))
    assert is_preantimatroid(F).axiom == "A2"


def test_union_closed_family_with_full_chain():
    # {}, {1}, {2}, {1,2}, {1,2,3}: the chain {} < {1} < {1,2} < {1,2,3} has length 3
    F = fam(3, (), (1,), (2,), (1, 2), (1, 2, 3))
    assert is_preantimatroid(F)
    assert is_antimatroid(F)


def test_extract_antimatroid_keeps_antimatroids():
    F = fam(2, (), (1,), (2,), (1, 2))
    assert extract_antimatroid(F) == F
    F = fam(2, (), (1,), (1, 2))
    assert extract_antimatroid(F) == F


def test_extract_antimatroid_drops_inaccessible_member():
    K = fam(3, (), (1,), (1, 2), (2, 3), (1, 2, 3))
    assert is_preantimatroid(K) and not is_antimatroid(K)
    star = extract_antimatroid(K)
    assert set(star.sets) == full_chains_oracle(K)
    assert star == fam(3, (), (1,), (1, 2), (1, 2, 3))


def test_extract_rejects_non_preantimatroid():
    with pytest.raises(NotPreAntimatroid):
        extract_antimatroid(fam(2, (), (1, 2)))


@st.composite
def union_closed_families(draw):
    n = draw(st.integers(1, 5))
    full = (1 << n) - 1
    sets = set(draw(st.lists(st.integers(0, full), max_size=12))) | {0, full}
    closed = set(sets)
    while True:
        extra = {a | b for a in closed for b in closed} - closed
        if not extra:
            break
        closed |= extra
    return SetFamily.of(n, closed)


@settings(max_examples=150, deadline=None)
@given(union_closed_families())
def test_extract_matches_chain_oracle(K):
    oracle = full_chains_oracle(K)
    if not is_preantimatroid(K):
        assert K.full not in oracle
        return
    star = extract_antimatroid(K)
    assert set(star.sets) == oracle
    assert is_antimatroid(star)
    if is_antimatroid(K):
        assert star == K


# -- random antimatroid lattices --------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["poset", "shelling"]), st.integers(2, 6), st.integers(0, 10_000))
def test_hull_invariants_on_random_lattices(kind, size, seed):
    L = gen_antimatroid_lattice(kind, size, seed)
    rng = Lcg(seed ^ 0x5EED)
    for _ in range(4):
        C, D = sample_flag(L, rng.below), sample_flag(L, rng.below)
        hull = mconv_recursive(L, C, D)
        assert hull.members == mconv_fixpoint(L, mask_of(C) | mask_of(D))
        assert is_join_closed(L, hull.members)
        K = hull_as_preantimatroid(L, hull)
        assert is_preantimatroid(K)
        assert is_antimatroid(extract_antimatroid(K))


@st.composite
def arbitrary_families(draw):
    n = draw(st.integers(1, 4))
    sets = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=10))
    return SetFamily.of(n, sets)


@settings(max_examples=300, deadline=None)
@given(arbitrary_families())
def test_axiom_checkers_match_brute_force(F):
    members = set(F.sets)
    a1 = 0 in members and F.full in members
    a2 = all(x | y in members for x in members for y in members)
    a3 = all(any(x & ~(1 << i) in members for i in range(F.ground_size) if x >> i & 1)
             for x in members if x)
    a3_prime = F.full in full_chains_oracle(F)
    assert bool(is_preantimatroid(F)) == (a1 and a2 and a3_prime)
    assert bool(is_antimatroid(F)) == (a1 and a2 and a3)
