"""Tensor products of partial Galois extensions over a common base ring k.

The tensor ring R1 (x)_k R2 is realized by structure constants on the product
of explicit free k-bases. Elements are coefficient matrices (row-major
n1 x n2) over k; their labels are tuples of k-element indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .action import (GaloisCoordinates, GaloisExtension, NotGaloisError, PartialAction,
                     galois_extension, invariant_subring)
from .group import FiniteGroup
from .ring import TABLE_LIMIT, Ring


class TensorError(ValueError):
    pass


def _ring_generators(ring: Ring) -> list[int]:
    span = {ring.zero, ring.one}
    gens: list[int] = []
    for x in ring.elements():
        if x in span:
            continue
        gens.append(x)
        span = _closure(ring, [ring.one] + gens)
        if len(span) == ring.size:
            break
    return gens


def _closure(ring: Ring, gens) -> set[int]:
    span = {ring.zero, *gens}
    changed = True
    while changed:
        changed = False
        for x in list(span):
            for y in list(span):
                for z in (ring.add(x, y), ring.mul(x, y)):
                    if z not in span:
                        span.add(z)
                        changed = True
    return span


def find_ring_isomorphism(a: Ring, b: Ring) -> dict[int, int] | None:
    """Some unital ring isomorphism a -> b, by search over images of ring generators."""
    if a.size != b.size:
        return None
    gens = _ring_generators(a)
    for images in product(b.elements(), repeat=len(gens)):
        m = {a.zero: b.zero, a.one: b.one}
        ok = True
        for g, im in zip(gens, images):
            if m.get(g, im) != im:
                ok = False
                break
            m[g] = im
        changed = True
        while ok and changed:
            changed = False
            for x, fx in list(m.items()):
                for y, fy in list(m.items()):
                    for z, fz in ((a.add(x, y), b.add(fx, fy)), (a.mul(x, y), b.mul(fx, fy))):
                        if z not in m:
                            m[z] = fz
                            changed = True
                        elif m[z] != fz:
                            ok = False
        if ok and len(m) == a.size and len(set(m.values())) == a.size:
            return m
    return None


def free_basis(ring: Ring, k: Ring, emb: list[int]) -> list[int] | None:
    """A basis of `ring` as a free module over k (embedded via emb), by backtracking search."""

    def scale(c, r):
        return ring.mul(emb[c], r)

    def extend(span: set[int], b: int) -> set[int]:
        return {ring.add(s, scale(c, b)) for s in span for c in k.elements()}

    def search(basis, span):
        if len(span) == ring.size:
            return basis
        for b in ring.elements():
            if b in span:
                continue
            new = extend(span, b)
            if len(new) == len(span) * k.size:
                found = search(basis + [b], new)
                if found is not None:
                    return found
        return None

    if ring.size == 0:
        return []
    return search([], {ring.zero})


@dataclass
class TensorData:
    left: GaloisExtension
    right: GaloisExtension
    base: Ring
    emb_left: list[int]
    emb_right: list[int]
    basis_left: list[int]
    basis_right: list[int]
    coord_left: dict[int, tuple] = field(repr=False)
    coord_right: dict[int, tuple] = field(repr=False)
    pure: Callable[[int, int], int] = field(repr=False)

    def pair(self, g: int, h: int) -> int:
        return g * self.right.group.order + h


def _coordinates(ring: Ring, k: Ring, emb: list[int], basis: list[int]) -> dict[int, tuple]:
    coord = {}
    for cs in product(k.elements(), repeat=len(basis)):
        r = ring.sum(ring.mul(emb[c], b) for c, b in zip(cs, basis))
        coord[r] = cs
    return coord


def tensor_extensions(ext1: GaloisExtension, ext2: GaloisExtension) -> GaloisExtension:
    k, emb1 = ext1.invariants.as_ring()
    k2, emb2_own = ext2.invariants.as_ring()
    iso = find_ring_isomorphism(k, k2)
    if iso is None:
        raise TensorError("invariant subrings are not isomorphic")
    emb2 = [emb2_own[iso[c]] for c in k.elements()]
    r1, r2 = ext1.ring, ext2.ring
    b1 = free_basis(r1, k, emb1)
    b2 = free_basis(r2, k, emb2)
    if b1 is None or b2 is None:
        raise TensorError("no free basis over the base ring")
    n1, n2 = len(b1), len(b2)
    dim = n1 * n2
    size = k.size ** dim
    if size > TABLE_LIMIT:
        raise TensorError(f"tensor ring would have {size} elements (limit {TABLE_LIMIT})")
    c1 = _coordinates(r1, k, emb1, b1)
    c2 = _coordinates(r2, k, emb2, b2)
    kadd, kmul = k.add, k.mul

    vectors = list(product(k.elements(), repeat=dim))
    index = {v: i for i, v in enumerate(vectors)}

    def outer(u, w):
        return tuple(kmul(x, y) for x in u for y in w)

    def vadd(u, w):
        return tuple(kadd(x, y) for x, y in zip(u, w))

    def vscale(c, u):
        return tuple(kmul(c, x) for x in u)

    basis_products = [[outer(c1[r1.mul(b1[p // n2], b1[q // n2])],
                             c2[r2.mul(b2[p % n2], b2[q % n2])]) for q in range(dim)] for p in range(dim)]
    zero_vec = tuple(k.zero for _ in range(dim))

    def vmul(u, w):
        acc = zero_vec
        for p, x in enumerate(u):
            if x == k.zero:
                continue
            for q, y in enumerate(w):
                if y == k.zero:
                    continue
                acc = vadd(acc, vscale(kmul(x, y), basis_products[p][q]))
        return acc

    add_table = [[index[vadd(u, w)] for w in vectors] for u in vectors]
    mul_table = [[index[vmul(u, w)] for w in vectors] for u in vectors]
    one = index[outer(c1[r1.one], c2[r2.one])]
    ring = Ring.from_tables(add_table, mul_table, index[zero_vec], one, vectors,
                            description={"tensor": [r1.description, r2.description]})

    def pure(x: int, y: int) -> int:
        return index[outer(c1[x], c2[y])]

    g1, g2 = ext1.group, ext2.group
    grp = FiniteGroup.direct_product(g1, g2)
    pa1, pa2 = ext1.pa, ext2.pa
    ones, alpha = [], []
    for g, h in product(g1.elements(), g2.elements()):
        ones.append(pure(pa1.ones[g], pa2.ones[h]))
    for g, h in product(g1.elements(), g2.elements()):
        images = [outer(c1[pa1.act(g, b1[p // n2])], c2[pa2.act(h, b2[p % n2])]) for p in range(dim)]
        table = {}
        gi, hi = g1.inv(g), g2.inv(h)
        dom = ring.ideal(pure(pa1.ones[gi], pa2.ones[hi]))
        for x in dom.elements:
            acc = zero_vec
            for p, c in enumerate(vectors[x]):
                acc = vadd(acc, vscale(c, images[p]))
            table[x] = index[acc]
        alpha.append(table)
    pa = PartialAction(ring, grp, ones, alpha)
    xs, ys = [], []
    for (x, y), (u, z) in product(ext1.coords.pairs(), ext2.coords.pairs()):
        xs.append(pure(x, u))
        ys.append(pure(y, z))
    coords = GaloisCoordinates(tuple(xs), tuple(ys))
    try:
        ext = galois_extension(pa, coords)
    except NotGaloisError as exc:
        raise TensorError(f"product coordinates fail: {exc}") from None
    inv = invariant_subring(pa)
    scalars = {pure(emb1[c], r2.one) for c in k.elements()}
    if set(inv.elements) != scalars:
        raise TensorError("invariants of the tensor product differ from k (x) k")
    ext.tensor = TensorData(ext1, ext2, k, emb1, emb2, b1, b2, c1, c2, pure)
    return ext
