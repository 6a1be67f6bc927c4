"""Unital (twisted) partial actions of finite groups on finite rings.

`PartialAction.act(g, x)` is the total map x -> alpha_g(x 1_{g^-1}); the stored
`alpha[g]` tables live on the ideal D_{g^-1} only.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .group import FiniteGroup
from .report import ValidationReport
from .ring import Ring, RingMorphism, check_morphism


class ActionSpecError(ValueError):
    pass


class NotGaloisError(ValueError):
    pass


class PartialAction:
    """Per group element g: idempotent ones[g] = 1_g and alpha[g]: D_{g^-1} -> D_g."""

    def __init__(self, ring: Ring, group: FiniteGroup, ones: Sequence[int], alpha: Sequence[Mapping[int, int]]):
        self.ring = ring
        self.group = group
        self.ones = list(ones)
        self.alpha = [dict(a) for a in alpha]
        if len(self.ones) != group.order or len(self.alpha) != group.order:
            raise ActionSpecError("need one idempotent and one alpha table per group element")
        for g in group.elements():
            e = self.ones[g]
            if not ring.is_idempotent(e):
                raise ActionSpecError(f"1_{g} = {ring.to_json(e)} is not idempotent")
        for g in group.elements():
            dom = ring.ideal(self.ones[group.inv(g)])
            cod = ring.ideal(self.ones[g])
            if set(self.alpha[g]) != dom.members:
                raise ActionSpecError(f"alpha_{g} is not defined exactly on D_(g^-1)")
            bad = next((x for x, y in self.alpha[g].items() if y not in cod), None)
            if bad is not None:
                raise ActionSpecError(f"alpha_{g} sends {ring.to_json(bad)} outside D_{g}")
        mul = ring.mul
        self.act_table = [
            [self.alpha[g][mul(x, self.ones[group.inv(g)])] for x in ring.elements()]
            for g in group.elements()
        ]

    def act(self, g: int, x: int) -> int:
        return self.act_table[g][x]

    def one(self, g: int) -> int:
        return self.ones[g]

    def cut(self, gs: Sequence[int]) -> int:
        """1_{g1} 1_{g1 g2} ... 1_{g1...gn}."""
        ring, grp = self.ring, self.group
        e, prefix = ring.one, 0
        for g in gs:
            prefix = grp.mul(prefix, g)
            e = ring.mul(e, self.ones[prefix])
        return e

    def __repr__(self):
        return f"PartialAction(|R|={self.ring.size}, |G|={self.group.order})"


@dataclass
class Twisting:
    """omega[g][h] in U(D_g D_gh)."""

    values: list[list[int]]

    def __call__(self, g: int, h: int) -> int:
        return self.values[g][h]

    @classmethod
    def trivial(cls, pa: PartialAction) -> "Twisting":
        n = pa.group.order
        return cls([[pa.cut((g, h)) for h in range(n)] for g in range(n)])

    @classmethod
    def from_cochain(cls, f) -> "Twisting":
        n = int(round(len(f.values) ** 0.5))
        return cls([[f.values[g * n + h] for h in range(n)] for g in range(n)])


def validate_partial_action(pa: PartialAction) -> ValidationReport:
    ring, grp = pa.ring, pa.group
    mul, act, ones, inv = ring.mul, pa.act, pa.ones, grp.inv
    G = list(grp.elements())
    report = ValidationReport("partial action")
    J = ring.to_json

    iso_bad = None
    for g in G:
        m = RingMorphism(ring, ones[inv(g)], ring, ones[g], pa.alpha[g], bijective=True)
        sub = check_morphism(m)
        if not sub.ok and iso_bad is None:
            iso_bad = {"g": g, "failed": [c.name for c in sub.failures()]}
    report.add("alpha_g ring isomorphisms", iso_bad is None, iso_bad)

    ident = ones[0] == ring.one and all(pa.alpha[0][x] == x for x in ring.elements())
    report.add("axiom (i): 1_1 = 1 and alpha_1 = id", ident)

    w = None
    for g, h in product(G, G):
        src = ring.ideal(mul(ones[inv(g)], ones[h])).elements
        image = {pa.alpha[g][x] for x in src}
        if image != ring.ideal(mul(ones[g], ones[grp.mul(g, h)])).members:
            w = [g, h]
            break
    report.add("axiom (ii): alpha_g(D_g^-1 D_h) = D_g D_gh", w is None, w)

    w = None
    for g, h in product(G, G):
        gh = grp.mul(g, h)
        for t in ring.ideal(mul(ones[inv(h)], ones[inv(gh)])).elements:
            mid = pa.alpha[h][t]
            if mid not in pa.alpha[g] or pa.alpha[g][mid] != pa.alpha[gh][t]:
                w = [g, h, J(t)]
                break
        if w:
            break
    report.add("axiom (iii): alpha_g alpha_h = alpha_gh on D_h^-1 D_(gh)^-1", w is None, w)

    w = None
    for g, h in product(G, G):
        gh = grp.mul(g, h)
        for y in ring.elements():
            if act(g, act(h, y)) != mul(act(gh, y), ones[g]):
                w = [g, h, J(y)]
                break
        if w:
            break
    report.add("composition identity", w is None, w)

    w = next(([g, h] for g, h in product(G, G) if act(g, ones[h]) != mul(ones[g], ones[grp.mul(g, h)])), None)
    report.add("alpha_g(1_h 1_g^-1) = 1_g 1_gh", w is None, w)
    return report


def validate_twisting(pa: PartialAction, w: Twisting) -> ValidationReport:
    ring, grp = pa.ring, pa.group
    mul, act, ones, inv = ring.mul, pa.act, pa.ones, grp.inv
    G = list(grp.elements())
    J = ring.to_json
    report = ValidationReport("twisting")
    nonunit = None
    for g, h in product(G, G):
        e = pa.cut((g, h))
        value = w(g, h)
        if value not in ring.ideal(e):
            raise ActionSpecError(f"omega({g},{h}) = {J(value)} lies outside D_g D_gh")
        if nonunit is None and value not in ring.unit_group(e):
            nonunit = [g, h]
    report.add("omega(g,h) in U(D_g D_gh)", nonunit is None, nonunit)
    if nonunit is not None:
        return report

    bad = next(([g, h] for g, h in product(G, G)
                if (g == 0 or h == 0) and w(g, h) != ones[grp.mul(g, h)]), None)
    report.add("axiom (iv): omega(1,g) = omega(g,1) = 1_g", bad is None, bad)

    bad = None
    for g, h in product(G, G):
        gh = grp.mul(g, h)
        e = pa.cut((g, h))
        om, om_inv = w(g, h), ring.inverse(w(g, h), e)
        for t in ring.ideal(mul(ones[inv(h)], ones[inv(gh)])).elements:
            lhs = act(g, act(h, t))
            rhs = mul(mul(om, act(gh, t)), om_inv)
            if lhs != rhs:
                bad = [g, h, J(t)]
                break
        if bad:
            break
    report.add("axiom (iii): alpha_g alpha_h = omega alpha_gh omega^-1", bad is None, bad)

    bad = None
    for g, h, l in product(G, G, G):
        hl, gh = grp.mul(h, l), grp.mul(g, h)
        if mul(act(g, w(h, l)), w(g, hl)) != mul(w(g, h), w(gh, l)):
            bad = [g, h, l]
            break
    report.add("axiom (v): cocycle identity", bad is None, bad)

    bad = next(([g] for g in G if act(g, w(inv(g), g)) != w(g, inv(g))), None)
    report.add("alpha_g(omega(g^-1,g)) = omega(g,g^-1)", bad is None, bad)
    return report


@dataclass
class Subring:
    """A subring given by its element list inside an ambient ring."""

    ambient: Ring
    elements: list[int]

    def __post_init__(self):
        self.members = frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def as_ring(self) -> tuple[Ring, list[int]]:
        """A standalone ring on these elements, and its embedding (list: index -> ambient element)."""
        amb = self.ambient
        pos = {x: i for i, x in enumerate(self.elements)}
        add = [[pos[amb.add(x, y)] for y in self.elements] for x in self.elements]
        mul = [[pos[amb.mul(x, y)] for y in self.elements] for x in self.elements]
        ring = Ring.from_tables(add, mul, pos[amb.zero], pos[amb.one], [amb.label(x) for x in self.elements])
        return ring, list(self.elements)


def invariant_subring(pa: PartialAction) -> Subring:
    ring, mul = pa.ring, pa.ring.mul
    G = list(pa.group.elements())
    elems = [r for r in ring.elements() if all(pa.act(g, r) == mul(r, pa.ones[g]) for g in G)]
    sub = Subring(ring, elems)
    for x in elems:
        for y in elems:
            if ring.add(x, y) not in sub or mul(x, y) not in sub:
                raise RuntimeError("invariants are not closed under ring operations")
    return sub


def trace(pa: PartialAction, x: int) -> int:
    ring = pa.ring
    t = ring.sum(pa.act(g, x) for g in pa.group.elements())
    if not all(pa.act(g, t) == ring.mul(t, pa.ones[g]) for g in pa.group.elements()):
        raise RuntimeError("trace value is not invariant")
    return t


@dataclass(frozen=True)
class GaloisCoordinates:
    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def pairs(self):
        return list(zip(self.xs, self.ys))


def coordinate_sum(pa: PartialAction, coords: GaloisCoordinates, g: int) -> int:
    ring = pa.ring
    return ring.sum(ring.mul(x, pa.act(g, y)) for x, y in zip(coords.xs, coords.ys))


def check_galois_coordinates(pa: PartialAction, coords: GaloisCoordinates) -> ValidationReport:
    if not coords.xs or not coords.ys:
        raise ValueError("coordinate lists must be nonempty")
    if len(coords.xs) != len(coords.ys):
        raise ValueError("coordinate lists differ in length")
    ring = pa.ring
    report = ValidationReport("Galois coordinates")
    for g in pa.group.elements():
        s = coordinate_sum(pa, coords, g)
        want = ring.one if g == 0 else ring.zero
        report.add(f"g={g}", s == want, None if s == want else ring.to_json(s))
    return report


def find_galois_coordinates(pa: PartialAction, m_max: int = 2) -> GaloisCoordinates | None:
    """First coordinate system in canonical order: sorted lists of pairs (x, y), shortest first."""
    ring, G = pa.ring, list(pa.group.elements())
    n = ring.size
    add = ring.add
    pairs = [(x, y) for x in range(n) for y in range(n)]
    vecs = [tuple(ring.mul(x, pa.act(g, y)) for g in G) for x, y in pairs]
    target = tuple(ring.one if g == 0 else ring.zero for g in G)
    zero = tuple(ring.zero for _ in G)
    by_vec: dict[tuple, list[int]] = {}
    for i, v in enumerate(vecs):
        by_vec.setdefault(v, []).append(i)

    def vsub(a, b):
        return tuple(add(x, ring.neg(y)) for x, y in zip(a, b))

    def vadd(a, b):
        return tuple(add(x, y) for x, y in zip(a, b))

    def search(start, acc, left):
        if left == 1:
            need = vsub(target, acc)
            cands = by_vec.get(need, [])
            k = bisect.bisect_left(cands, start)
            return [cands[k]] if k < len(cands) else None
        for i in range(start, len(pairs)):
            found = search(i, vadd(acc, vecs[i]), left - 1)
            if found is not None:
                return [i] + found
        return None

    for m in range(1, m_max + 1):
        found = search(0, zero, m)
        if found is not None:
            chosen = [pairs[i] for i in found]
            return GaloisCoordinates(tuple(x for x, _ in chosen), tuple(y for _, y in chosen))
    return None


@dataclass
class GaloisExtension:
    pa: PartialAction
    invariants: Subring
    coords: GaloisCoordinates
    trace_witness: int
    tensor: object = field(default=None, repr=False)

    @property
    def ring(self) -> Ring:
        return self.pa.ring

    @property
    def group(self) -> FiniteGroup:
        return self.pa.group


def galois_extension(pa: PartialAction, coords: GaloisCoordinates | None = None, m_max: int = 2) -> GaloisExtension:
    if coords is None:
        coords = find_galois_coordinates(pa, m_max)
        if coords is None:
            raise NotGaloisError(f"no Galois coordinate system with m <= {m_max}")
    elif not check_galois_coordinates(pa, coords).ok:
        raise NotGaloisError("supplied coordinates fail")
    inv = invariant_subring(pa)
    c = next((c for c in pa.ring.elements() if trace(pa, c) == pa.ring.one), None)
    if c is None:
        raise NotGaloisError("no element of trace 1")
    return GaloisExtension(pa, inv, coords, c)


def global_action(ring: Ring, group: FiniteGroup, maps: Sequence[Mapping[int, int]]) -> PartialAction:
    """A global action: every 1_g = 1 and each map is an automorphism of the ring."""
    return PartialAction(ring, group, [ring.one] * group.order, maps)


def trivial_action(ring: Ring) -> PartialAction:
    return global_action(ring, FiniteGroup.trivial(), [{x: x for x in ring.elements()}])


def restrict_global_action(pa: PartialAction, e: int) -> PartialAction:
    """Restriction of a global action to the corner Se: 1_g = e beta_g(e), alpha_g = beta_g on D_g^-1."""
    ring, grp = pa.ring, pa.group
    if any(x != ring.one for x in pa.ones):
        raise ActionSpecError("restriction needs a global action (all 1_g = 1)")
    sub, inc = ring.corner(e)
    back = {v: k for k, v in inc.items()}
    ones = [back[ring.mul(e, pa.alpha[g][e])] for g in grp.elements()]
    alpha = []
    for g in grp.elements():
        dom = sub.ideal(ones[grp.inv(g)]).elements
        alpha.append({x: back[pa.alpha[g][inc[x]]] for x in dom})
    return PartialAction(sub, grp, ones, alpha)
