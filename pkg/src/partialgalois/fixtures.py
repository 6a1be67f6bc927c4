"""Reference extensions used throughout the tests and the CLI.

ex_a: GF(4) over F2 with C2 acting by Frobenius (a global action).
ex_b: the partial C3 action on F2 x F2 obtained by restricting the cyclic
      shift of F2^3 to e = (1, 1, 0).
"""

from __future__ import annotations

from .action import PartialAction, global_action, restrict_global_action
from .group import FiniteGroup
from .ring import Ring, build_ring, quotient, zmod

GF4 = {"factors": [quotient(2, [1, 1, 1])]}


def gf4() -> Ring:
    return build_ring(GF4)


def ex_a() -> PartialAction:
    ring = gf4()
    frob = {x: ring.mul(x, x) for x in ring.elements()}
    grp = FiniteGroup([[0, 1], [1, 0]], ["1", "s"])
    return global_action(ring, grp, [{x: x for x in ring.elements()}, frob])


def ex_b() -> PartialAction:
    ring = build_ring({"factors": [zmod(2), zmod(2)]})
    el = ring.element
    grp = FiniteGroup.cyclic(3)
    ones = [el((1, 1)), el((1, 0)), el((0, 1))]
    ident = {x: x for x in ring.elements()}
    alpha_g = {el((0, a)): el((a, 0)) for a in (0, 1)}
    alpha_g2 = {el((a, 0)): el((0, a)) for a in (0, 1)}
    return PartialAction(ring, grp, ones, [ident, alpha_g, alpha_g2])


def cyclic_shift_action(p: int, n: int) -> PartialAction:
    """C_n acting on F_p^n by g: (a_0, ..., a_{n-1}) -> (a_1, ..., a_{n-1}, a_0)."""
    ring = build_ring({"factors": [zmod(p)] * n})
    grp = FiniteGroup.cyclic(n)
    maps = []
    for k in range(n):
        maps.append({x: ring.element(_rotate(ring.label(x), k)) for x in ring.elements()})
    return global_action(ring, grp, maps)


def _rotate(t, k):
    return t[k:] + t[:k]


def klein_group() -> FiniteGroup:
    c2 = FiniteGroup([[0, 1], [1, 0]])
    return FiniteGroup.direct_product(c2, c2)


def regular_klein_action(p: int) -> PartialAction:
    """C2 x C2 permuting the four coordinates of F_p^4 by its regular representation."""
    ring = build_ring({"factors": [zmod(p)] * 4})
    grp = klein_group()
    maps = []
    for g in grp.elements():
        # coordinate k of the image is coordinate g*k of the source
        maps.append({x: ring.element(tuple(ring.label(x)[grp.mul(g, k)] for k in range(4)))
                     for x in ring.elements()})
    return global_action(ring, grp, maps)


def klein_partial(p: int = 5) -> PartialAction:
    """A partial C2 x C2 action on the 3-factor ring F_p^3."""
    pa = regular_klein_action(p)
    return restrict_global_action(pa, pa.ring.element((1, 1, 1, 0)))


def ex_b_from_restriction() -> PartialAction:
    pa = cyclic_shift_action(2, 3)
    return restrict_global_action(pa, pa.ring.element((1, 1, 0)))


def ex_a_generator(ring: Ring) -> int:
    """The class of x in GF(4) = F2[x]/(x^2+x+1)."""
    return ring.element([(0, 1)])


__all__ = ["ex_a", "ex_b", "gf4", "cyclic_shift_action", "klein_partial", "klein_group",
           "regular_klein_action", "ex_b_from_restriction", "ex_a_generator"]
