"""Construction, classification, primes, spectra, products."""

import itertools

import pytest

from latticegames import catalog
from latticegames.errors import ForeignElement, NotALattice, NotAPoset, SizeBound
from latticegames.order import (
    build_finite_lattice,
    classify,
    has_enough_primes,
    is_frame_distributive,
    primes,
    product,
    spectrum,
    sup_family,
)


def labs(L, es):
    return sorted(L.label(e) for e in es)


# -- construction ---------------------------------------------------------------


def test_two_chain_builds():
    L = build_finite_lattice(["0", "1"], [("0", "1")])
    assert L.label(L.top) == "1" and L.label(L.bottom) == "0"
    assert L.leq(L.by_label("0"), L.by_label("1"))


def test_m3_join_meet_total(m3):
    # brute force: every pair has a least upper bound and a greatest lower bound
    for a, b in itertools.product(m3.elems, repeat=2):
        j = m3.join(a, b)
        assert m3.leq(a, j) and m3.leq(b, j)
        uppers = [c for c in m3.elems if m3.leq(a, c) and m3.leq(b, c)]
        assert all(m3.leq(j, c) for c in uppers)
        m = m3.meet(a, b)
        lowers = [c for c in m3.elems if m3.leq(c, a) and m3.leq(c, b)]
        assert all(m3.leq(c, m) for c in lowers)


def test_incomparable_pair_without_top_rejected():
    with pytest.raises(NotALattice) as exc:
        build_finite_lattice(["x", "y"], [])
    assert set(exc.value.pair) == {"x", "y"}


def test_antisymmetry_violation_rejected():
    with pytest.raises(NotAPoset):
        build_finite_lattice(["a", "b"], [("a", "b"), ("b", "a")])


def test_cross_lattice_elements_rejected(b2, m3):
    with pytest.raises(ForeignElement):
        b2.join(b2.top, m3.top)


def test_lattice_laws_exhaustive_on_catalog():
    for L in [catalog.powerset(2), catalog.m3(), catalog.n5(), catalog.chain(4),
              catalog.sierpinski(), catalog.random_topology(3, seed=5)]:
        assert len(L) <= 12
        for a in L.elems:
            assert L.join(a, a) == a and L.meet(a, a) == a
        for a, b in itertools.product(L.elems, repeat=2):
            assert L.join(a, b) == L.join(b, a)
            assert L.meet(a, b) == L.meet(b, a)
            assert L.leq(L.meet(a, b), a) and L.leq(a, L.join(a, b))
            assert L.join(a, L.meet(a, b)) == a  # absorption
            assert L.meet(a, L.join(a, b)) == a
        for a, b, c in itertools.product(L.elems, repeat=3):
            assert L.join(a, L.join(b, c)) == L.join(L.join(a, b), c)
            assert L.meet(a, L.meet(b, c)) == L.meet(L.meet(a, b), c)


# -- sup ------------------------------------------------------------------------


def test_sup_family(b2, m3):
    x, y = b2.by_label("{x}"), b2.by_label("{y}")
    assert sup_family(b2, [x, y]) == b2.top
    assert sup_family(b2, []) == b2.bottom
    a, b = m3.by_label("a"), m3.by_label("b")
    assert sup_family(m3, [a, b]) == m3.top


# -- primes ----------------------------------------------------------------------


def brute_primes(L):
    out = []
    for q in L.elems:
        if q == L.top:
            continue
        if all(L.leq(a, q) or L.leq(b, q)
               for a in L.elems for b in L.elems
               if L.leq(L.meet(a, b), q)):
            out.append(q)
    return out


def brute_enough(L):
    ps = brute_primes(L)
    for a in L.elems:
        for b in L.elems:
            if not L.leq(a, b):
                if not any(L.leq(b, q) and not L.leq(a, q) for q in ps):
                    return False, (a, b)
    return True, None


@pytest.mark.parametrize("name", ["b2", "b3", "m3", "n5", "chain(4)",
                                  "sierpinski", "topology(4,3)"])
def test_primes_match_definitional_brute_force(name):
    L = catalog.named(name)
    assert primes(L) == brute_primes(L)
    got, wit = has_enough_primes(L)
    want, wit2 = brute_enough(L)
    assert got == want


def test_primes_examples(m3, b3, chain3):
    assert primes(m3) == []
    assert labs(chain3, primes(chain3)) == ["c0", "c1"]
    assert labs(b3, primes(b3)) == ["{x,y}", "{x,z}", "{y,z}"]  # co-singletons


def test_enough_primes_examples(b2, m3):
    assert has_enough_primes(b2) == (True, None)
    ok, wit = has_enough_primes(m3)
    assert not ok and (m3.label(wit[0]), m3.label(wit[1])) == ("a", "0")
    L2 = catalog.chain(2)
    assert has_enough_primes(L2)[0]


# -- distributivity ----------------------------------------------------------------


def test_frame_distributive_m3_counterexample(m3):
    ok, ctrex = is_frame_distributive(m3)
    assert not ok
    A, b = ctrex
    assert sorted(m3.label(e) for e in A) == ["a", "b"] and m3.label(b) == "c"


@pytest.mark.parametrize("name", ["b2", "b3", "chain(4)", "sierpinski"])
def test_frame_distributive_positive(name):
    L = catalog.named(name)
    assert is_frame_distributive(L) == (True, None)


def test_binary_law_equivalent_to_exhaustive_on_small_carriers():
    # the documented optimization for larger carriers must agree with the
    # subset-exhaustive form wherever the latter is feasible
    for name in ["b2", "b3", "m3", "n5", "chain(5)", "topology(3,9)"]:
        L = catalog.named(name)
        exh, _ = is_frame_distributive(L, exhaustive_cap=12)
        binary, _ = is_frame_distributive(L, exhaustive_cap=0)
        assert exh == binary


# -- classify ------------------------------------------------------------------------


def test_classify_b2(b2):
    r = classify(b2)
    assert r.is_pawlikowski and r.is_spatial and r.is_pre_pawlikowski


def test_classify_m3(m3):
    r = classify(m3)
    assert r.is_bounded and not r.is_pre_pawlikowski
    assert not r.is_distributive_over_sups and not r.is_spatial
    assert "enough_primes" in r.witnesses


def test_classify_chain():
    r = classify(catalog.chain(4))
    assert r.is_pawlikowski and r.is_spatial


def test_classify_report_invariants():
    for name in ["b2", "m3", "n5", "chain(3)", "topology(4,1)"]:
        r = classify(catalog.named(name))
        assert r.is_pre_pawlikowski == (r.is_bounded and r.enough_primes)
        assert r.is_pawlikowski == (r.is_pre_pawlikowski and r.is_distributive_over_sups)
        assert r.is_spatial == r.enough_primes


# -- spectrum -----------------------------------------------------------------------


def test_spectrum_b2(b2):
    space, faithful = spectrum(b2)
    assert faithful and len(space.points) == 2
    xhat = space.open_of(b2.by_label("{x}"))
    assert labs(b2, xhat) == ["{y}"]  # the co-singleton prime missing x


def test_spectrum_m3(m3):
    space, faithful = spectrum(m3)
    assert space.points == () and not faithful


def test_spectrum_two_chain_collapses():
    L = catalog.chain(2)
    space, faithful = spectrum(L)
    assert faithful and len(space.points) == 1


def test_spectrum_open_algebra(b3):
    space, _ = spectrum(b3)
    for a in b3.elems:
        for b in b3.elems:
            assert space.open_of(b3.meet(a, b)) == space.open_of(a) & space.open_of(b)
            assert space.open_of(b3.join(a, b)) == space.open_of(a) | space.open_of(b)


def test_spectrum_faithful_iff_enough_primes():
    for name in ["b2", "b3", "m3", "n5", "chain(4)", "topology(5,2)", "topology(4,13)"]:
        L = catalog.named(name)
        _, faithful = spectrum(L)
        assert faithful == has_enough_primes(L)[0]


# -- product ------------------------------------------------------------------------


def order_isomorphic(L, M):
    if len(L) != len(M):
        return False
    for perm in itertools.permutations(range(len(M))):
        if all(
            L.leq(L.elems[i], L.elems[j]) == M.leq(M.elems[perm[i]], M.elems[perm[j]])
            for i in range(len(L)) for j in range(len(L))
        ):
            return True
    return False


def test_product_of_two_chains_is_square(b2):
    P = product([catalog.chain(2), catalog.chain(2)])
    assert order_isomorphic(P, b2)


def test_product_single_factor_is_copy(b2):
    P = product([b2])
    assert order_isomorphic(P, b2)


def test_product_projections_pointwise(b2, chain3):
    P = product([b2, chain3])
    for e in P.elems:
        parts = (P.project(0, e), P.project(1, e))
        assert P.from_parts(parts) == e
    a = P.from_parts((b2.by_label("{x}"), chain3.by_label("c0")))
    b = P.from_parts((b2.by_label("{y}"), chain3.by_label("c1")))
    j = P.join(a, b)
    assert P.project(0, j) == b2.top and chain3.label(P.project(1, j)) == "c1"


def test_product_primes_are_prime_in_one_slot_top_elsewhere():
    for f1, f2 in [(catalog.powerset(2), catalog.chain(2)),
                   (catalog.chain(3), catalog.chain(3)),
                   (catalog.powerset(2), catalog.powerset(2))]:
        assert len(f1) <= 5 and len(f2) <= 5
        P = product([f1, f2])
        expect = set()
        for q in primes(f1):
            expect.add(P.from_parts((q, f2.top)))
        for q in primes(f2):
            expect.add(P.from_parts((f1.top, q)))
        assert set(primes(P)) == expect


# -- generators ------------------------------------------------------------------------


def test_random_topology_deterministic():
    a = catalog.random_topology(3, seed=42)
    b = catalog.random_topology(3, seed=42)
    assert a.labels == b.labels
    assert [a._join[i][j] for i in range(len(a)) for j in range(len(a))] == \
           [b._join[i][j] for i in range(len(b)) for j in range(len(b))]


def test_random_topology_classifies_pawlikowski_spatial():
    for seed in range(8):
        L = catalog.random_topology(4, seed=seed)
        r = classify(L)
        assert r.is_pawlikowski and r.is_spatial


def test_generate_size_bound():
    with pytest.raises(SizeBound):
        catalog.random_topology(9, seed=0)
    assert len(catalog.generate("m3")) == 5
