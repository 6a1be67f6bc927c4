"""Literal finite bimodules and their tensor products, computed as abelian-group quotients.

This is the brute-force oracle behind the PicS multiplication rule and the
model of R (x) R over the invariants: nothing here knows about partial
actions beyond the left/right action functions it is handed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Callable, Sequence

from . import abelian
from .ring import Ring


@dataclass
class Bimodule:
    """A finite additive group with commuting left and right actions of a ring."""

    ring: Ring
    elements: list
    zero: object
    add: Callable
    left: Callable  # (r, m) -> r * m
    right: Callable  # (m, r) -> m * r

    def __len__(self) -> int:
        return len(self.elements)


def twisted_ideal(pa, g: int, e: int) -> Bimodule:
    """The bimodule on Re with r * d = alpha_{g^-1}(r 1_g) d and d * r = d r."""
    ring = pa.ring
    gi = pa.group.inv(g)
    return Bimodule(ring, ring.ideal(e).elements, ring.zero, ring.add,
                    lambda r, d: ring.mul(pa.act(gi, r), d),
                    lambda d, r: ring.mul(d, r))


def regular_bimodule(ring: Ring) -> Bimodule:
    return Bimodule(ring, list(ring.elements()), ring.zero, ring.add,
                    lambda r, m: ring.mul(r, m), lambda m, r: ring.mul(m, r))


def tensor(m: Bimodule, n: Bimodule, scalars: Sequence[int] | None = None) -> Bimodule:
    """M (x)_S N for S = `scalars` (default: all of the ring), as a bimodule.

    Built as the Z-tensor of the two additive groups modulo the balancing
    relations (m s) (x) n = m (x) (s n), reduced by Smith normal form.
    """
    ring = m.ring
    scalars = list(ring.elements()) if scalars is None else list(scalars)
    sm = abelian.decompose(m.elements, m.add, m.zero)
    sn = abelian.decompose(n.elements, n.add, n.zero)
    pairs = [(i, j) for i in range(len(sm.orders)) for j in range(len(sn.orders))
             if gcd(sm.orders[i], sn.orders[j]) > 1]
    dim = len(pairs)
    if dim == 0:
        return _zero_module(ring)
    pos = {p: k for k, p in enumerate(pairs)}

    def vec(x, y) -> list[int]:
        a, b = sm.log[x], sn.log[y]
        return [a[i] * b[j] for i, j in pairs]

    relations = []
    for (i, j), k in pos.items():
        col = [0] * dim
        col[k] = gcd(sm.orders[i], sn.orders[j])
        relations.append(col)
    for x, y, s in product(sm.generators, sn.generators, scalars):
        u = vec(m.right(x, s), y)
        w = vec(x, n.left(s, y))
        d = [p - q for p, q in zip(u, w)]
        if any(d):
            relations.append(d)
    mat = [[rel[r] for rel in relations] for r in range(dim)]
    diag_m, u, _ = abelian.smith_normal_form(mat)
    diag = abelian.diagonal(diag_m) + [0] * (dim - min(dim, len(relations)))
    if any(d == 0 for d in diag):
        raise RuntimeError("tensor product is infinite")
    keep = [k for k in range(dim) if diag[k] != 1]
    moduli = [diag[k] for k in keep]
    uinv = abelian.inverse_unimodular(u)

    def reduce(v: Sequence[int]) -> tuple:
        y = [sum(u[k][t] * v[t] for t in range(dim)) for k in keep]
        return tuple(c % d for c, d in zip(y, moduli))

    def lift(t: tuple) -> list[int]:
        full = [0] * dim
        for k, c in zip(keep, t):
            full[k] = c
        return [sum(uinv[r][k] * full[k] for k in range(dim)) for r in range(dim)]

    gen_pairs = [(sm.generators[i], sn.generators[j]) for i, j in pairs]

    def act(t: tuple, fn) -> tuple:
        coeffs = lift(t)
        acc = [0] * dim
        for c, (x, y) in zip(coeffs, gen_pairs):
            if c:
                x2, y2 = fn(x, y)
                acc = [p + c * q for p, q in zip(acc, vec(x2, y2))]
        return reduce(acc)

    elements = list(product(*(range(d) for d in moduli)))
    zero = tuple(0 for _ in moduli)
    out = Bimodule(
        ring, elements, zero,
        lambda a, b: tuple((x + y) % d for x, y, d in zip(a, b, moduli)),
        lambda r, t: act(t, lambda x, y: (m.left(r, x), y)),
        lambda t, r: act(t, lambda x, y: (x, n.right(y, r))),
    )
    out.pure = lambda x, y: reduce(vec(x, y))
    return out


def _zero_module(ring: Ring) -> Bimodule:
    out = Bimodule(ring, [()], (), lambda a, b: (), lambda r, t: (), lambda t, r: ())
    out.pure = lambda x, y: ()
    return out


def cyclic_isomorphism(source: Bimodule, generator, target: Bimodule) -> dict | None:
    """A bimodule isomorphism source -> target, where source = generator * R as a right module.

    Searches over images of the generator; returns the map or None.
    """
    ring = source.ring
    if len(source) != len(target):
        return None
    span = {}
    for r in ring.elements():
        span.setdefault(source.right(generator, r), r)
    if len(span) != len(source):
        raise ValueError("generator does not generate the source as a right module")
    for t in target.elements:
        phi = {}
        ok = True
        for r in ring.elements():
            x, y = source.right(generator, r), target.right(t, r)
            if phi.setdefault(x, y) != y:
                ok = False
                break
        if not ok or len(set(phi.values())) != len(target):
            continue
        if all(phi[source.left(s, x)] == target.left(s, phi[x]) for s in ring.elements() for x in phi):
            return phi
    return None
