import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialgalois.action import Twisting, invariant_subring, trivial_action, validate_twisting
from partialgalois.cohomology import (Cochain, CochainError, bruteforce_oracle, cochain_complex, coboundary,
                                      cohomology_group, is_coboundary, is_cocycle)
from partialgalois.config import CapExceeded
from partialgalois.ring import build_ring, zmod


def literal_coboundary(pa, f):
    """delta straight from the formula, on dicts keyed by tuples."""
    ring, grp = pa.ring, pa.group
    n = f.degree
    G = list(grp.elements())
    value = {t: f(*t) for t in product(G, repeat=n)}

    def inv(t):
        return ring.inverse(value[t], pa.cut(t))

    out = []
    for t in product(G, repeat=n + 1):
        x = pa.alpha[t[0]][ring.mul(value[t[1:]], pa.ones[grp.inv(t[0])])]
        for i in range(1, n + 1):
            merged = t[:i - 1] + (grp.mul(t[i - 1], t[i]),) + t[i + 1:]
            x = ring.mul(x, inv(merged) if i % 2 else value[merged])
        last = t[:-1]
        x = ring.mul(x, inv(last) if (n + 1) % 2 else value[last])
        out.append(x)
    return tuple(out)


def test_delta0_of_x_is_x(pa_a, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    f = coboundary(pa_a, cx.make(0, [x]))
    assert f(0) == ring.one and f(1) == x


def test_identity_goes_to_identity(pa_a, pa_b, pa_klein):
    for pa in (pa_a, pa_b, pa_klein):
        cx = cochain_complex(pa)
        for n in range(3):
            assert cx.coboundary(cx.identity(n)).values == cx.identity(n + 1).values


def test_delta_matches_the_literal_formula(pa_a, pa_b, pa_klein):
    rng = random.Random(3)
    for pa in (pa_a, pa_b, pa_klein):
        cx = cochain_complex(pa)
        for n in range(3):
            for _ in range(40):
                f = cx.random(n, rng)
                assert cx.coboundary(f).values == literal_coboundary(pa, f)


def test_cocycle_x_is_the_coboundary_of_x(pa_a, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    f = cx.make(1, [ring.one, x])
    assert is_cocycle(pa_a, f)
    assert is_coboundary(pa_a, f).values == (x,)
    assert is_coboundary(pa_a, cx.identity(1)).values == cx.identity(0).values


def test_degree_zero_is_never_a_coboundary(pa_a):
    with pytest.raises(ValueError, match="degree-0"):
        is_coboundary(pa_a, cochain_complex(pa_a).identity(0))


def test_x_at_sigma_sigma_is_not_a_2_cocycle(pa_a, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    assert not is_cocycle(pa_a, cx.make(2, [ring.one, ring.one, ring.one, x]))


def test_cochain_membership_is_enforced(pa_b):
    cx = cochain_complex(pa_b)
    values = list(cx.identity(1).values)
    values[1] = pa_b.ring.one
    with pytest.raises(CochainError):
        cx.make(1, values)
    with pytest.raises(CochainError):
        cx.make(1, values[:2])


def test_ex_a_groups(pa_a):
    h1 = cohomology_group(pa_a, 1)
    assert (h1.z_order, h1.b_order, h1.h_order) == (3, 3, 1)
    assert cohomology_group(pa_a, 2).h_order == 1
    assert "oracle cross-check: agree" in h1.notes


def test_ex_b_groups_are_trivial(pa_b):
    cx = cochain_complex(pa_b)
    for n in range(4):
        assert cx.size(n) == 1
        h = cohomology_group(pa_b, n)
        assert (h.z_order, h.b_order, h.h_order) == (1, 1, 1)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_linearized_and_oracle_agree(pa_a, pa_b, pa_f3_trivial, n):
    for pa in (pa_a, pa_b, pa_f3_trivial):
        lin = cohomology_group(pa, n, oracle=False)
        brute = bruteforce_oracle(pa, n)
        assert (lin.z_order, lin.b_order, lin.h_order, lin.elementary_divisors) == \
               (brute.z_order, brute.b_order, brute.h_order, brute.elementary_divisors)
        assert [r.values for r in lin.representatives] == [r.values for r in brute.representatives]


def test_oracle_agrees_on_the_klein_action_in_degree_zero(pa_klein):
    h = cohomology_group(pa_klein, 0, oracle=True)
    assert h.h_order == 4 and "oracle cross-check: agree" in h.notes


def test_klein_action_low_degrees(pa_klein):
    assert cohomology_group(pa_klein, 1, oracle=False).h_order == 1
    assert cohomology_group(pa_klein, 2, oracle=False).h_order == 1


def test_trivial_group(pa_f3_trivial):
    r = build_ring({"factors": [zmod(4)]})
    pa = trivial_action(r)
    h0 = cohomology_group(pa, 0)
    assert h0.h_order == 2
    assert cohomology_group(pa, 1).h_order == 1
    # C2 acting trivially on F3: H^n = Hom-like C2 in every degree
    for n in range(4):
        assert cohomology_group(pa_f3_trivial, n).elementary_divisors == [2]


def test_h0_is_the_invariant_units(pa_a, pa_b, pa_klein):
    for pa in (pa_a, pa_b, pa_klein):
        ring = pa.ring
        inv = invariant_subring(pa)
        units = [t for t in ring.unit_group().elements if t in inv]
        assert cohomology_group(pa, 0, oracle=False).h_order == len(units)


def test_every_1_cocycle_is_normalized(pa_a, pa_f3_trivial):
    for pa in (pa_a, pa_f3_trivial):
        cx = cochain_complex(pa)
        for f in cx.enumerate(1):
            if cx.is_cocycle(f):
                assert f(0) == pa.ring.one


def test_cap_is_enforced(pa_a):
    with pytest.raises(CapExceeded):
        bruteforce_oracle(pa_a, 2, cap=10)
    with pytest.raises(CapExceeded):
        list(cochain_complex(pa_a).enumerate(2, cap=10))


def test_solve_coboundary_round_trip(pa_a, pa_klein):
    rng = random.Random(11)
    for pa in (pa_a, pa_klein):
        cx = cochain_complex(pa)
        for n in (1, 2):
            for _ in range(10):
                u = cx.random(n - 1, rng)
                f = cx.coboundary(u)
                w = cx.solve_coboundary(f)
                assert w is not None and cx.coboundary(w).values == f.values


def test_solve_coboundary_rejects_a_nontrivial_class(pa_f3_trivial):
    cx = cochain_complex(pa_f3_trivial)
    minus = pa_f3_trivial.ring.element((2,))
    one = pa_f3_trivial.ring.one
    w = cx.make(2, [one, one, one, minus])
    assert cx.is_cocycle(w)
    assert cx.solve_coboundary(w) is None
    assert cx.coboundary_witness(w) is None


def test_normalized_2_cocycles_are_exactly_the_valid_twistings(pa_a, pa_f3_trivial):
    for pa in (pa_a, pa_f3_trivial):
        cx = cochain_complex(pa)
        n = pa.group.order
        for f in cx.enumerate(2):
            tw = Twisting.from_cochain(f)
            normalized = all(f(0, g) == pa.ones[g] == f(g, 0) for g in range(n))
            valid = validate_twisting(pa, tw).ok
            assert valid == (cx.is_cocycle(f) and normalized)


def test_non_normalized_cocycles_are_not_twistings(pa_a, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    f = cx.coboundary(cx.make(1, [x, ring.one]))
    assert cx.is_cocycle(f) and f(0, 0) == x
    report = validate_twisting(pa_a, Twisting.from_cochain(f))
    assert not report.check("axiom (iv): omega(1,g) = omega(g,1) = 1_g").passed
    assert report.check("axiom (v): cocycle identity").passed


# algebraic properties on random cochains of the 3-factor Klein action

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2**32 - 1), st.integers(0, 2**32 - 1))
def test_delta_is_a_homomorphism(pa_klein, n, s1, s2):
    cx = cochain_complex(pa_klein)
    f, g = cx.random(n, random.Random(s1)), cx.random(n, random.Random(s2))
    assert cx.coboundary(cx.mul(f, g)).values == cx.mul(cx.coboundary(f), cx.coboundary(g)).values
    assert cx.coboundary(cx.inverse(f)).values == cx.inverse(cx.coboundary(f)).values


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2**32 - 1))
def test_delta_squared_is_trivial(pa_klein, n, seed):
    cx = cochain_complex(pa_klein)
    f = cx.random(n, random.Random(seed))
    assert cx.is_cocycle(cx.coboundary(f))
