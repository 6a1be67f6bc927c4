from itertools import product

import pytest

from partialgalois.action import Twisting, galois_extension, trivial_action, validate_twisting
from partialgalois.cohomology import cochain_complex
from partialgalois.crossed import (CoefficientError, CrossedProduct, TensorSquareModel, check_associativity,
                                   check_idempotent_family, detect_trivial_class, eta_iso, find_diagonal_iso,
                                   galois_idempotents, iso_from_coboundary, j_map, opposite_iso,
                                   recover_cochain, tensor_crossed)
from partialgalois.ring import build_ring, zmod


def twisting_at(pa, g, h, value):
    values = [row[:] for row in Twisting.trivial(pa).values]
    values[g][h] = value
    return Twisting(values)


def test_skew_product_on_ex_b(pa_b):
    cp = CrossedProduct(pa_b)
    el = pa_b.ring.element
    a = cp.monomial(1, pa_b.ones[1])
    b = cp.monomial(2, pa_b.ones[2])
    assert cp.multiply(a, b) == cp.monomial(0, el((1, 0)))


def test_identity_is_neutral(pa_a, pa_b):
    for pa in (pa_a, pa_b):
        cp = CrossedProduct(pa)
        one = cp.identity()
        for a in cp.elements():
            assert cp.multiply(one, a) == a == cp.multiply(a, one)


def test_x_delta_sigma_squared(pa_a, gf4):
    ring, x, _ = gf4
    cp = CrossedProduct(pa_a, twisting_at(pa_a, 1, 1, ring.one))
    m = cp.monomial(1, x)
    assert cp.multiply(m, m) == cp.monomial(0, ring.one)


def test_coefficient_outside_its_ideal(pa_b):
    cp = CrossedProduct(pa_b)
    with pytest.raises(CoefficientError):
        cp.monomial(1, pa_b.ring.element((0, 1)))
    with pytest.raises(CoefficientError):
        cp.multiply((pa_b.ring.one, pa_b.ring.one, pa_b.ring.zero), cp.identity())


def test_associativity_examples(pa_a, pa_b, gf4):
    _, x, _ = gf4
    assert check_associativity(CrossedProduct(pa_b)).ok
    report = check_associativity(CrossedProduct(pa_a, twisting_at(pa_a, 1, 1, x)))
    assert not report.ok and report.failures()[0].witness == [1, 1, 1]


def test_associative_exactly_for_cocycles(pa_a, pa_f3_trivial):
    # every 2-cochain, including non-normalized ones and random perturbations of cocycles
    for pa in (pa_a, pa_f3_trivial):
        cx = cochain_complex(pa)
        for f in cx.enumerate(2):
            cp = CrossedProduct(pa, Twisting.from_cochain(f))
            assert check_associativity(cp).ok == cx.is_cocycle(f)


def test_associativity_brute_force_on_elements(pa_b):
    cp = CrossedProduct(pa_b)
    E = list(cp.elements())
    assert len(E) == 16
    for a, b, c in product(E, E, E):
        assert cp.multiply(cp.multiply(a, b), c) == cp.multiply(a, cp.multiply(b, c))


def test_j_map_on_fixtures(ext_a, ext_b):
    for ext in (ext_a, ext_b):
        res = j_map(ext)
        assert res.report.ok
        assert res.skew_size == res.end_size == 16


def test_j_map_for_the_trivial_group():
    r = build_ring({"factors": [zmod(4)]})
    res = j_map(trivial_action(r))
    assert res.report.ok and res.skew_size == res.end_size == 4


def test_j_map_fails_off_galois(pa_f3_trivial):
    res = j_map(pa_f3_trivial)
    assert not res.report.ok
    assert not res.report.check("injective").passed


def test_tensor_square_model(ext_a, ext_b):
    for ext in (ext_a, ext_b):
        assert TensorSquareModel(ext).verify().ok


def test_galois_idempotents(ext_a, ext_b):
    for ext in (ext_a, ext_b):
        fam = galois_idempotents(ext)
        assert check_idempotent_family(fam).ok


def test_eta(ext_a, ext_b, gf4):
    ring, x, _ = gf4
    for ext in (ext_a, ext_b):
        res = eta_iso(ext)
        assert res.report.ok
        cp = CrossedProduct(ext.pa)
        assert res.forward(cp.zero) == cp.zero
        assert res.forward(cp.identity()) == galois_idempotents(ext)[0]
    assert eta_iso(ext_a, twisting_at(ext_a.pa, 1, 1, ring.one)).report.ok


def test_iso_from_identity_cochain(pa_a):
    w = Twisting.trivial(pa_a)
    u = cochain_complex(pa_a).identity(1)
    m = iso_from_coboundary(pa_a, w, w, u)
    assert m.report.ok
    assert all(m.image(a) == a for a in m.source.elements())


def test_iso_from_coboundary_on_ex_a(pa_a, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    u = cx.make(1, [ring.one, x])
    omega = Twisting.from_cochain(cx.coboundary(u))
    m = iso_from_coboundary(pa_a, omega, Twisting.trivial(pa_a), u)
    assert m.report.ok
    assert recover_cochain(m).values == u.values


def test_mismatched_u_names_the_pair(pa_a, gf4):
    ring, x, _ = gf4
    # u(sigma) = x is a 1-cocycle, so a mismatch needs u(1) != 1
    u = cochain_complex(pa_a).make(1, [x, ring.one])
    w = Twisting.trivial(pa_a)
    with pytest.raises(ValueError, match=r"\(g,h\) = \(0,0\)"):
        iso_from_coboundary(pa_a, w, w, u)


def test_detect_trivial_class(pa_a, pa_b, gf4):
    ring, x, _ = gf4
    cx = cochain_complex(pa_a)
    assert detect_trivial_class(pa_a, Twisting.trivial(pa_a)).values == cx.identity(1).values
    u = cx.make(1, [ring.one, x])
    omega = Twisting.from_cochain(cx.coboundary(u))
    for method in ("search", "linear"):
        w = detect_trivial_class(pa_a, omega, method=method)
        assert cx.coboundary(w).values == cx.coboundary(u).values
    assert detect_trivial_class(pa_b, Twisting.trivial(pa_b)) is not None


def test_nontrivial_class_has_no_diagonal_iso(pa_f3_trivial):
    # contrapositive of the iso/coboundary correspondence, on a non-Galois input with H^2 = C2
    ring = pa_f3_trivial.ring
    one, minus = ring.one, ring.element((2,))
    omega = Twisting([[one, one], [one, minus]])
    assert validate_twisting(pa_f3_trivial, omega).ok
    assert detect_trivial_class(pa_f3_trivial, omega) is None
    assert detect_trivial_class(pa_f3_trivial, omega, method="linear") is None
    assert find_diagonal_iso(pa_f3_trivial, omega, Twisting.trivial(pa_f3_trivial)) is None


def test_diagonal_iso_exists_iff_coboundary(pa_a):
    cx = cochain_complex(pa_a)
    trivial = Twisting.trivial(pa_a)
    for f in cx.enumerate(2):
        if not cx.is_cocycle(f):
            continue
        omega = Twisting.from_cochain(f)
        found = find_diagonal_iso(pa_a, omega, trivial)
        assert (found is not None) == (detect_trivial_class(pa_a, omega) is not None)


def test_opposite(pa_a, pa_b, gf4):
    ring, x, _ = gf4
    for pa in (pa_a, pa_b):
        m = opposite_iso(pa, Twisting.trivial(pa))
        assert m.report.ok
    cp = CrossedProduct(pa_b)
    m = opposite_iso(pa_b, Twisting.trivial(pa_b))
    for g, r in cp.monomials():
        gi = pa_b.group.inv(g)
        assert m.image(cp.monomial(g, r)) == cp.monomial(gi, pa_b.act(gi, r))
    u = cochain_complex(pa_a).make(1, [ring.one, x])
    omega = Twisting.from_cochain(cochain_complex(pa_a).coboundary(u))
    assert opposite_iso(pa_a, omega).report.ok


def test_tensor_of_ex_b_with_itself(ext_b):
    tc = tensor_crossed(ext_b, None, ext_b, None)
    assert tc.report.ok
    assert len(tc.product.ideals) == 9
    assert check_associativity(tc.product).ok


def test_tensor_with_the_trivial_group_keeps_the_algebra(ext_a):
    f2 = galois_extension(trivial_action(build_ring({"factors": [zmod(2)]})))
    tc = tensor_crossed(ext_a, None, f2, None)
    assert tc.report.ok
    assert tc.product.size == CrossedProduct(ext_a.pa).size


def test_tensor_of_ex_a_and_ex_b(ext_a, ext_b, gf4):
    ring, x, _ = gf4
    u = cochain_complex(ext_a.pa).make(1, [ring.one, x])
    omega = Twisting.from_cochain(cochain_complex(ext_a.pa).coboundary(u))
    tc = tensor_crossed(ext_a, omega, ext_b, None)
    assert tc.report.ok
    assert check_associativity(tc.product).ok
    assert tc.product.group.order == 6
