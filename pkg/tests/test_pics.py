from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialgalois.abelian import Hom
from partialgalois.action import trivial_action
from partialgalois.group import FiniteGroup
from partialgalois.pics import (CombinedMonoid, PartialActionOnPicS, PartialRepresentation, PicSError,
                                TwistedIdempotentMonoid, alpha_star, build_symbolic_pics, check_against_tensor_oracle,
                                check_domain_identities, check_invariant_submonoid, is_pics_cocycle, phi0,
                                phi0_combined, phi_f, pics, pics_invariants, validate_partial_rep, z1_pics)
from partialgalois.ring import build_ring, quotient, zmod


def chain_monoid(ring):
    """1 >= 0 with A_1 = C2 and A_0 trivial, labelled by the idempotents of `ring`."""
    one, zero = ring.one, ring.zero
    meet = {(one, one): one, (one, zero): zero, (zero, one): zero, (zero, zero): zero}
    return build_symbolic_pics([one, zero], meet, {one: (2,), zero: ()}, ring=ring)


@pytest.fixture(scope="module")
def f3_chain(pa_f3_trivial):
    ring = pa_f3_trivial.ring
    m = chain_monoid(ring)
    flip = Hom((2,), (2,), ((1,),))
    maps = [{ring.one: ring.one, ring.zero: ring.zero}] * 2
    action = PartialActionOnPicS(m, pa_f3_trivial.group, [ring.one, ring.one], maps,
                                 [{ring.one: flip}, {ring.one: flip}])
    return m, action


def test_pics_of_f2_squared():
    r = build_ring({"factors": [zmod(2), zmod(2)]})
    m = pics(r)
    assert len(m.elements()) == 4
    assert not m.symbolic
    assert m.verify_axioms().ok
    assert m.zero().component == r.zero and m.identity().component == r.one


def test_pics_of_a_field_and_of_z4():
    for spec in ({"factors": [quotient(2, [1, 1, 1])]}, {"factors": [zmod(4)]}):
        r = build_ring(spec)
        m = pics(r)
        assert m.components == [r.zero, r.one]
        assert m.verify_axioms().ok


def test_every_element_idempotent_on_the_concrete_layer(pa_klein):
    m = pics(pa_klein.ring)
    assert all(m.is_idempotent(x) for x in m.elements())
    assert m.verify_axioms().ok


def test_symbolic_chain_is_a_three_element_inverse_monoid():
    r = build_ring({"factors": [zmod(3)]})
    m = chain_monoid(r)
    assert len(m.elements()) == 3
    assert m.verify_axioms().ok
    gen = m.element(r.one, (1,))
    assert not m.is_idempotent(gen)
    assert m.mul(gen, gen) == m.identity()
    assert m.mul(gen, m.zero()) == m.zero()


def test_symbolic_with_trivial_groups_matches_concrete():
    r = build_ring({"factors": [zmod(2), zmod(2)]})
    concrete = pics(r)
    sym = build_symbolic_pics(concrete.components, r.mul, {e: () for e in concrete.components}, ring=r)
    assert sym.elements() == concrete.elements()
    for x, y in product(sym.elements(), sym.elements()):
        assert sym.mul(x, y) == concrete.mul(x, y)


def test_broken_structural_maps_are_rejected():
    rank = {"t": 2, "m": 1, "b": 0}
    meet = lambda e, f: e if rank[e] <= rank[f] else f
    eps = {("t", "m"): [[0]], ("m", "b"): [[1]], ("t", "b"): [[1]]}
    with pytest.raises(PicSError, match=r"\['t', 'm', 'b'\]"):
        build_symbolic_pics(["t", "m", "b"], meet, {c: (2,) for c in rank}, eps)


def test_bad_meet_is_rejected():
    with pytest.raises(PicSError, match="idempotent"):
        build_symbolic_pics([0, 1], lambda e, f: 0, {0: (), 1: ()})


def test_missing_structural_map_between_nontrivial_groups():
    rank = {"t": 1, "b": 0}
    meet = lambda e, f: e if rank[e] <= rank[f] else f
    with pytest.raises(PicSError, match="missing"):
        build_symbolic_pics(["t", "b"], meet, {"t": (2,), "b": (2,)})


def test_alpha_star_examples(pa_a, pa_b):
    for pa in (pa_a, pa_b):
        act = alpha_star(pa)
        assert act.verify().ok
        for g in pa.group.elements():
            assert act.apply(g, act.dg(pa.group.inv(g))) == act.dg(g)
        assert all(act.apply(0, x) == x for x in act.monoid.elements())
    act = alpha_star(pa_b)
    el = pa_b.ring.element
    assert act.apply(1, act.monoid.element(el((0, 1)))).component == el((1, 0))


def test_alpha_star_outside_its_domain(pa_b):
    act = alpha_star(pa_b)
    with pytest.raises(PicSError, match="domain"):
        act.apply(1, act.monoid.identity())


def test_invariants(pa_a, pa_b):
    act = alpha_star(pa_b)
    inv = pics_invariants(act)
    assert [x.component for x in inv] == [pa_b.ring.zero, pa_b.ring.one]
    assert check_invariant_submonoid(act, inv).ok
    act = alpha_star(pa_a)
    assert pics_invariants(act) == act.monoid.elements()
    t = trivial_action(build_ring({"factors": [zmod(2), zmod(2)]}))
    act = alpha_star(t)
    assert pics_invariants(act) == act.monoid.elements()


def test_concrete_z1_is_the_domain_family(pa_a, pa_b, pa_klein):
    for pa in (pa_a, pa_b, pa_klein):
        act = alpha_star(pa)
        assert z1_pics(act) == [tuple(act.dg(g) for g in pa.group.elements())]
    t = trivial_action(build_ring({"factors": [zmod(4)]}))
    act = alpha_star(t)
    assert z1_pics(act) == [(act.monoid.identity(),)]


def test_symbolic_z1_counts_homomorphisms(f3_chain):
    m, action = f3_chain
    assert action.verify().ok
    cocycles = z1_pics(action)
    assert len(cocycles) == 2
    assert all(is_pics_cocycle(action, f) for f in cocycles)


def test_twisted_monoid_against_the_tensor_oracle(pa_a, pa_b):
    for pa in (pa_a, pa_b):
        report = check_against_tensor_oracle(TwistedIdempotentMonoid(pa))
        assert report.ok, report.failures()


def test_phi0(pa_a, pa_b):
    for pa in (pa_a, pa_b):
        rep = phi0(pa)
        assert validate_partial_rep(rep).ok
        assert check_domain_identities(rep).ok
        assert rep(0) == rep.identity


def test_phi0_on_ex_b_products(pa_b):
    rep = phi0(pa_b)
    tm = TwistedIdempotentMonoid(pa_b)
    for g in pa_b.group.elements():
        assert tm.mul(rep(g), rep(pa_b.group.inv(g))) == tm.dg(g)
    ring = pa_b.ring
    e = ring.mul(pa_b.act(2, ring.mul(pa_b.ones[2], pa_b.ones[1])), pa_b.ones[2])
    # 1_g 1_g^-1 = 0 here, so (g^2, e) is the zero class, labelled with the identity
    assert e == ring.zero
    assert tm.mul(rep(1), rep(1)) == tm.canonical(2, e) == tm.canonical(0, ring.zero)


def test_constant_identity_is_a_partial_representation(pa_b):
    tm = TwistedIdempotentMonoid(pa_b)
    one = tm.identity()
    rep = PartialRepresentation(pa_b.group, [one] * 3, tm.mul, one)
    assert validate_partial_rep(rep).ok


def test_replacing_a_value_by_zero_breaks_the_axioms(pa_b):
    rep = phi0(pa_b)
    tm = TwistedIdempotentMonoid(pa_b)
    zero = tm.canonical(0, pa_b.ring.zero)
    for g in pa_b.group.elements():
        values = list(rep.values)
        values[g] = zero
        broken = PartialRepresentation(pa_b.group, values, tm.mul, rep.identity)
        failed = {c.name[:4] for c in validate_partial_rep(broken).failures()}
        assert failed & {"(i) ", "(iii"}


def test_phi_f_on_fixtures(pa_a, pa_b):
    for pa in (pa_a, pa_b):
        act = alpha_star(pa)
        (f,) = z1_pics(act)
        rep = phi_f(f, pa, act)
        assert validate_partial_rep(rep).ok and check_domain_identities(rep).ok
        assert rep.values == phi0_combined(CombinedMonoid(act, pa)).values


def test_phi_f_on_symbolic_cocycles(pa_f3_trivial, f3_chain):
    _, action = f3_chain
    reps = [phi_f(f, pa_f3_trivial, action) for f in z1_pics(action)]
    assert len({tuple(r.values) for r in reps}) == 2
    for rep in reps:
        assert validate_partial_rep(rep).ok and check_domain_identities(rep).ok


def test_phi_f_rejects_non_cocycles(pa_b):
    act = alpha_star(pa_b)
    f = [act.monoid.identity()] * 3
    with pytest.raises(PicSError, match="1-cocycle"):
        phi_f(f, pa_b, act)


def test_combined_monoid_is_associative(pa_b, pa_f3_trivial, f3_chain):
    _, action = f3_chain
    for cm in (CombinedMonoid(alpha_star(pa_b), pa_b), CombinedMonoid(action, pa_f3_trivial)):
        E = cm.elements()
        for x, y, z in product(E, E, E):
            assert cm.mul(cm.mul(x, y), z) == cm.mul(x, cm.mul(y, z))
        assert all(cm.mul(cm.identity(), x) == x == cm.mul(x, cm.identity()) for x in E)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([2, 3, 4, 5]), min_size=1, max_size=3))
def test_concrete_layer_axioms_on_random_products(moduli):
    r = build_ring({"factors": [zmod(n) for n in moduli]})
    m = pics(r)
    assert len(m.components) == len(r.idempotents())
    assert m.verify_axioms().ok


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4, 6]), st.data())
def test_symbolic_chain_axioms_with_reduction_maps(n, data):
    # t >= m >= b with A_t = Z/n, A_m = Z/d reduced from A_t, and the zero component trivial
    d = data.draw(st.sampled_from([k for k in range(2, n + 1) if n % k == 0]))
    rank = {"t": 2, "m": 1, "b": 0}
    monoid = build_symbolic_pics(["t", "m", "b"], lambda e, f: e if rank[e] <= rank[f] else f,
                                 {"t": (n,), "m": (d,), "b": ()}, {("t", "m"): [[1]]})
    assert len(monoid.elements()) == n + d + 1
    assert monoid.verify_axioms().ok


def test_nontrivial_bottom_group_has_no_zero():
    rank = {"t": 1, "b": 0}
    monoid = build_symbolic_pics(["t", "b"], lambda e, f: e if rank[e] <= rank[f] else f,
                                 {"t": (2,), "b": (2,)}, {("t", "b"): [[1]]})
    assert [c.name for c in monoid.verify_axioms().failures()] == ["zero absorbs"]
