import pytest

from partialgalois.action import (check_galois_coordinates, galois_extension, invariant_subring, trivial_action,
                                  validate_partial_action)
from partialgalois.ring import build_ring, zmod
from partialgalois.tensor import TensorError, find_ring_isomorphism, tensor_extensions


@pytest.fixture(scope="module")
def f2_over_f2():
    return galois_extension(trivial_action(build_ring({"factors": [zmod(2)]})))


def test_ex_b_squared(ext_b):
    t = tensor_extensions(ext_b, ext_b)
    # F2^2 (x)_F2 F2^2 = F2^4
    assert t.ring.size == 16
    assert t.group.order == 9
    assert len(t.coords.xs) == 4
    assert validate_partial_action(t.pa).ok
    assert check_galois_coordinates(t.pa, t.coords).ok
    assert len(invariant_subring(t.pa)) == 2


def test_ex_a_times_ex_b(ext_a, ext_b):
    t = tensor_extensions(ext_a, ext_b)
    assert (t.ring.size, t.group.order) == (16, 6)
    assert validate_partial_action(t.pa).ok
    assert check_galois_coordinates(t.pa, t.coords).ok


def test_tensor_with_the_trivial_extension_gives_back_ex_a(ext_a, f2_over_f2):
    t = tensor_extensions(ext_a, f2_over_f2)
    iso = find_ring_isomorphism(t.ring, ext_a.ring)
    assert iso is not None
    assert t.group.order == 2
    for g in t.group.elements():
        assert all(iso[t.pa.act(g, x)] == ext_a.pa.act(g, iso[x]) for x in t.ring.elements())


def test_pure_tensors_multiply_factorwise(ext_a, ext_b):
    t = tensor_extensions(ext_a, ext_b)
    pure = t.tensor.pure
    r1, r2 = ext_a.ring, ext_b.ring
    for x in r1.elements():
        for y in r2.elements():
            for u in r1.elements():
                for v in r2.elements():
                    assert t.ring.mul(pure(x, y), pure(u, v)) == pure(r1.mul(x, u), r2.mul(y, v))


def test_mismatched_bases_are_rejected(ext_a):
    f3 = galois_extension(trivial_action(build_ring({"factors": [zmod(3)]})))
    with pytest.raises(TensorError, match="not isomorphic"):
        tensor_extensions(ext_a, f3)
