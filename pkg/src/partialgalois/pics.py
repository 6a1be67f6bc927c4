"""The Picard inverse monoid PicS(R) as a semilattice of abelian groups, and what acts on it.

Two layers share one class. The concrete layer, built from a finite ring, has
trivial component groups (rank-one projectives over finite local rings are
free). The symbolic layer takes arbitrary finite abelian component groups and
structural maps so that nontrivial classes can be exercised.

Group parts are written additively: a tuple of residues modulo the
component's elementary divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Mapping, Sequence

from . import bimodule
from .abelian import Hom
from .action import PartialAction
from .group import FiniteGroup
from .report import ValidationReport
from .ring import Ring


class PicSError(ValueError):
    pass


@dataclass(frozen=True)
class PicSElement:
    component: Hashable
    value: tuple = ()


def _apply(hom: Hom, a: Sequence[int]) -> tuple:
    return tuple(sum(row[j] * a[j] for j in range(len(a))) % b for row, b in zip(hom.matrix, hom.target))


def _identity_hom(divisors: tuple) -> Hom:
    n = len(divisors)
    return Hom(divisors, divisors, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _zero_hom(source: tuple, target: tuple) -> Hom:
    return Hom(source, target, tuple(tuple(0 for _ in source) for _ in target))


class PicSMonoid:
    """Commutative inverse monoid: a meet-semilattice of finite abelian groups.

    `components` are the semilattice labels in canonical order, `meet` their
    product, `groups` the elementary divisors per label and `eps[(e, f)]` the
    structural map A_e -> A_f for e >= f.
    """

    def __init__(self, components: Sequence[Hashable], meet: Callable, groups: Mapping, eps: Mapping,
                 ring: Ring | None = None, description: str = ""):
        self.components = list(components)
        self.meet = meet
        self.groups = {e: tuple(groups[e]) for e in self.components}
        self.eps = dict(eps)
        self.ring = ring
        self.description = description
        self.top = next(e for e in self.components if all(meet(e, f) == f for f in self.components))
        self.bottom = next(e for e in self.components if all(meet(e, f) == e for f in self.components))

    @property
    def symbolic(self) -> bool:
        return any(self.groups[e] for e in self.components)

    def leq(self, e, f) -> bool:
        return self.meet(e, f) == e

    def element(self, component, value: Sequence[int] | None = None) -> PicSElement:
        if component not in self.groups:
            raise PicSError(f"unknown component {component!r}")
        divisors = self.groups[component]
        value = tuple(0 for _ in divisors) if value is None else tuple(v % d for v, d in zip(value, divisors))
        if len(value) != len(divisors):
            raise PicSError("group part has the wrong length")
        return PicSElement(component, value)

    def identity(self) -> PicSElement:
        return self.element(self.top)

    def zero(self) -> PicSElement:
        return self.element(self.bottom)

    def structural(self, e, f) -> Hom:
        if e == f:
            return _identity_hom(self.groups[e])
        if (e, f) not in self.eps and not (self.groups[e] and self.groups[f]):
            return _zero_hom(self.groups[e], self.groups[f])
        return self.eps[(e, f)]

    def mul(self, x: PicSElement, y: PicSElement) -> PicSElement:
        c = self.meet(x.component, y.component)
        a = _apply(self.structural(x.component, c), x.value)
        b = _apply(self.structural(y.component, c), y.value)
        return PicSElement(c, tuple((p + q) % d for p, q, d in zip(a, b, self.groups[c])))

    def star(self, x: PicSElement) -> PicSElement:
        return PicSElement(x.component, tuple(-v % d for v, d in zip(x.value, self.groups[x.component])))

    def elements(self) -> list[PicSElement]:
        return [PicSElement(e, v) for e in self.components for v in product(*(range(d) for d in self.groups[e]))]

    def is_idempotent(self, x: PicSElement) -> bool:
        return self.mul(x, x) == x

    def units(self) -> list[PicSElement]:
        return [x for x in self.elements() if x.component == self.top]

    def verify_axioms(self) -> ValidationReport:
        """Exhaustive inverse-monoid axioms."""
        report = ValidationReport("PicS axioms")
        els = self.elements()
        mul, star = self.mul, self.star
        one, zero = self.identity(), self.zero()
        report.add("identity", all(mul(one, x) == x for x in els))
        report.add("zero absorbs", all(mul(zero, x) == zero for x in els))
        bad = next(([x, y] for x in els for y in els if mul(x, y) != mul(y, x)), None)
        report.add("commutative", bad is None, _wit(bad))
        bad = next(([x, y, z] for x in els for y in els for z in els
                    if mul(mul(x, y), z) != mul(x, mul(y, z))), None)
        report.add("associative", bad is None, _wit(bad))
        bad = next((x for x in els if mul(mul(x, star(x)), x) != x or mul(mul(star(x), x), star(x)) != star(x)), None)
        report.add("x x* x = x and x* x x* = x*", bad is None, _wit(bad))
        idem = [x for x in els if self.is_idempotent(x)]
        report.add("idempotents commute", all(mul(x, y) == mul(y, x) for x in idem for y in idem))
        report.add("idempotents are the component identities",
                   {(x.component, x.value) for x in idem} == {(e, tuple(0 for _ in self.groups[e])) for e in self.components})
        # uniqueness of inverses: any y with xyx = x, yxy = y equals x*
        bad = next(([x, y] for x in els for y in els
                    if mul(mul(x, y), x) == x and mul(mul(y, x), y) == y and y != star(x)), None)
        report.add("inverses are unique", bad is None, _wit(bad))
        report.add("units are the top component", set(self.units()) == {x for x in els if any(mul(x, y) == one for y in els)})
        return report

    def to_json(self, x: PicSElement):
        comp = self.ring.to_json(x.component) if self.ring is not None else x.component
        return {"component": comp, "value": list(x.value)}


def _wit(items):
    if items is None:
        return None
    if isinstance(items, PicSElement):
        return [items.component, list(items.value)]
    return [[x.component, list(x.value)] for x in items]


def pics(ring: Ring) -> PicSMonoid:
    """Concrete layer: one trivial group per idempotent of R."""
    comps = sorted(ring.idempotents())
    return PicSMonoid(comps, ring.mul, {e: () for e in comps}, {}, ring=ring, description="concrete")


def build_symbolic_pics(components: Sequence[Hashable], meet: Mapping | Callable, groups: Mapping,
                        eps: Mapping | None = None, ring: Ring | None = None) -> PicSMonoid:
    """Validated semilattice of groups from supplied data.

    `meet` is a callable or a dict keyed by component pairs. Missing structural
    maps default to zero only when source or target group is trivial.
    """
    comps = list(components)
    table = meet if callable(meet) else (lambda e, f: meet[(e, f)])
    for e, f in product(comps, comps):
        m = table(e, f)
        if m not in comps or m != table(f, e):
            raise PicSError(f"meet is not a commutative operation at {[e, f]}")
    for e in comps:
        if table(e, e) != e:
            raise PicSError(f"meet is not idempotent at {e!r}")
    for e, f, h in product(comps, comps, comps):
        if table(table(e, f), h) != table(e, table(f, h)):
            raise PicSError(f"meet is not associative at {[e, f, h]}")
    maps = {}
    eps = dict(eps or {})
    for e, f in product(comps, comps):
        if e == f or table(e, f) != f:
            continue
        src, dst = tuple(groups[e]), tuple(groups[f])
        if (e, f) in eps:
            given = eps[(e, f)]
            maps[(e, f)] = given if isinstance(given, Hom) else Hom(src, dst, tuple(tuple(r) for r in given))
        elif not src or not dst:
            maps[(e, f)] = _zero_hom(src, dst)
        else:
            raise PicSError(f"missing structural map for {[e, f]}")
    for (e, given) in ((k, v) for k, v in eps.items() if k[0] == k[1]):
        if any(_apply(given if isinstance(given, Hom) else Hom(tuple(groups[e[0]]), tuple(groups[e[0]]),
                                                                tuple(tuple(r) for r in given)), v) != v
               for v in product(*(range(d) for d in groups[e[0]]))):
            raise PicSError(f"structural map at {list(e)} is not the identity")
    monoid = PicSMonoid(comps, table, groups, maps, ring=ring, description="symbolic")
    for e, f, h in product(comps, comps, comps):
        if e == f or f == h or not (monoid.leq(f, e) and monoid.leq(h, f)):
            continue
        for v in product(*(range(d) for d in monoid.groups[e])):
            direct = _apply(monoid.structural(e, h), v)
            chained = _apply(monoid.structural(f, h), _apply(monoid.structural(e, f), v))
            if direct != chained:
                raise PicSError(f"structural maps do not compose along the chain {[e, f, h]}")
    return monoid


# the partial action alpha* on PicS

class PartialActionOnPicS:
    """alpha*_g: X_g^-1 -> X_g where X_g collects the classes below [D_g]."""

    def __init__(self, monoid: PicSMonoid, group: FiniteGroup, domains: Sequence, component_maps: Sequence[Mapping],
                 group_maps: Sequence[Mapping] | None = None):
        self.monoid = monoid
        self.group = group
        self.domains = list(domains)
        self.component_maps = [dict(m) for m in component_maps]
        self.group_maps = [dict(m) for m in group_maps] if group_maps else [{} for _ in group.elements()]

    def dg(self, g: int) -> PicSElement:
        return self.monoid.element(self.domains[g])

    def in_domain(self, g: int, x: PicSElement) -> bool:
        return self.monoid.leq(x.component, self.domains[g])

    def X(self, g: int) -> list[PicSElement]:
        return [x for x in self.monoid.elements() if self.in_domain(g, x)]

    def apply(self, g: int, x: PicSElement) -> PicSElement:
        gi = self.group.inv(g)
        if not self.in_domain(gi, x):
            raise PicSError(f"class in component {x.component!r} is not in the domain of alpha*_{g}")
        image = self.component_maps[g][x.component]
        hom = self.group_maps[g].get(x.component)
        value = _apply(hom, x.value) if hom is not None else tuple(0 for _ in self.monoid.groups[image])
        return self.monoid.element(image, value)

    def verify(self) -> ValidationReport:
        m, grp = self.monoid, self.group
        report = ValidationReport("alpha* on PicS")
        report.add("X_1 is everything", self.domains[0] == m.top)
        report.add("alpha*_1 = id", all(self.apply(0, x) == x for x in m.elements()))
        bad = next((g for g in grp.elements() if self.apply(g, self.dg(grp.inv(g))) != self.dg(g)), None)
        report.add("alpha*_g([D_g^-1]) = [D_g]", bad is None, bad)
        bad = None
        for g in grp.elements():
            dom = self.X(grp.inv(g))
            images = [self.apply(g, x) for x in dom]
            if set(images) != set(self.X(g)) or len(set(images)) != len(dom):
                bad = [g, "not a bijection onto X_g"]
                break
            if any(self.apply(g, m.mul(x, y)) != m.mul(self.apply(g, x), self.apply(g, y)) for x in dom for y in dom):
                bad = [g, "not multiplicative"]
                break
        report.add("alpha*_g is an isomorphism X_g^-1 -> X_g", bad is None, bad)
        bad = None
        for g, h in product(grp.elements(), grp.elements()):
            gh = grp.mul(g, h)
            for x in self.X(grp.inv(h)):
                y = self.apply(h, x)
                if self.in_domain(grp.inv(g), y) and self.apply(g, y) != self.apply(gh, x):
                    bad = [g, h, _wit(x)]
                    break
            if bad:
                break
        report.add("alpha*_g alpha*_h extends to alpha*_gh", bad is None, bad)
        return report


def alpha_star(pa: PartialAction, monoid: PicSMonoid | None = None) -> PartialActionOnPicS:
    """Concrete layer: a component e <= 1_g^-1 moves to alpha_g(e)."""
    monoid = monoid or pics(pa.ring)
    maps = []
    for g in pa.group.elements():
        gi = pa.group.inv(g)
        maps.append({e: pa.act(g, e) for e in monoid.components if monoid.leq(e, pa.ones[gi])})
    return PartialActionOnPicS(monoid, pa.group, list(pa.ones), maps)


def pics_invariants(action: PartialActionOnPicS) -> list[PicSElement]:
    """All x with alpha*_g(x [D_g^-1]) = x [D_g] for every g."""
    m, grp = action.monoid, action.group
    return [x for x in m.elements()
            if all(action.apply(g, m.mul(x, action.dg(grp.inv(g)))) == m.mul(x, action.dg(g)) for g in grp.elements())]


def check_invariant_submonoid(action: PartialActionOnPicS, inv: Sequence[PicSElement]) -> ValidationReport:
    m = action.monoid
    s = set(inv)
    report = ValidationReport("invariant submonoid")
    report.add("contains 0 and 1", m.zero() in s and m.identity() in s)
    report.add("closed under product", all(m.mul(x, y) in s for x in s for y in s))
    report.add("closed under star", all(m.star(x) in s for x in s))
    return report


def z1_pics(action: PartialActionOnPicS) -> list[tuple[PicSElement, ...]]:
    """Maps f with f(g) a unit of X_g and f(gh)[D_g] = f(g) alpha*_g(f(h)[D_g^-1])."""
    m, grp = action.monoid, action.group
    G = list(grp.elements())
    choices = [[m.element(action.domains[g], v) for v in product(*(range(d) for d in m.groups[action.domains[g]]))]
               for g in G]
    out = []
    for f in product(*choices):
        if is_pics_cocycle(action, f):
            out.append(f)
    return out


def is_pics_cocycle(action: PartialActionOnPicS, f: Sequence[PicSElement]) -> bool:
    m, grp = action.monoid, action.group
    for g, h in product(grp.elements(), grp.elements()):
        if f[g].component != action.domains[g]:
            return False
        lhs = m.mul(f[grp.mul(g, h)], action.dg(g))
        rhs = m.mul(f[g], action.apply(g, m.mul(f[h], action.dg(grp.inv(g)))))
        if lhs != rhs:
            return False
    return True


# twisted idempotent bimodules g(Re) and the combined monoid

@dataclass(frozen=True)
class Twisted:
    g: int
    e: int


class TwistedIdempotentMonoid:
    """Classes (g, e), e <= 1_g^-1, of the bimodules Re with left action r * d = alpha_g^-1(r 1_g) d.

    (g, e)(h, f) = (gh, alpha_h^-1(e 1_h) f). Two labels name the same class
    when their left actions agree on Re; the smallest group element is kept.
    """

    def __init__(self, pa: PartialAction):
        self.pa = pa
        self.ring = pa.ring
        self.group = pa.group
        self._canon: dict[tuple[int, int], Twisted] = {}

    def canonical(self, g: int, e: int) -> Twisted:
        key = (g, e)
        if key not in self._canon:
            self._canon[key] = self._canonical(g, e)
        return self._canon[key]

    def _canonical(self, g: int, e: int) -> Twisted:
        ring, pa, grp = self.ring, self.pa, self.group
        if not ring.leq(e, pa.ones[grp.inv(g)]):
            raise PicSError(f"idempotent is not below 1_g^-1 for g={g}")
        for k in grp.elements():
            if not ring.leq(e, pa.ones[grp.inv(k)]):
                continue
            if all(ring.mul(pa.act(grp.inv(g), ring.mul(r, pa.ones[g])), e) ==
                   ring.mul(pa.act(grp.inv(k), ring.mul(r, pa.ones[k])), e) for r in ring.elements()):
                return Twisted(k, e)
        raise AssertionError("unreachable: g itself always matches")

    def mul(self, x: Twisted, y: Twisted) -> Twisted:
        ring, pa, grp = self.ring, self.pa, self.group
        hi = grp.inv(y.g)
        e = ring.mul(pa.act(hi, ring.mul(x.e, pa.ones[y.g])), y.e)
        return self.canonical(grp.mul(x.g, y.g), e)

    def identity(self) -> Twisted:
        return self.canonical(0, self.ring.one)

    def dg(self, g: int) -> Twisted:
        return self.canonical(0, self.pa.ones[g])

    def star(self, x: Twisted) -> Twisted:
        return self.canonical(self.group.inv(x.g), self.pa.act(x.g, x.e))

    def elements(self) -> list[Twisted]:
        out = []
        for g in self.group.elements():
            for e in self.ring.idempotents():
                if self.ring.leq(e, self.pa.ones[self.group.inv(g)]):
                    c = self.canonical(g, e)
                    if c not in out:
                        out.append(c)
        return out

    def bimodule(self, x: Twisted) -> bimodule.Bimodule:
        return bimodule.twisted_ideal(self.pa, x.g, x.e)

    def to_json(self, x: Twisted):
        return {"g": x.g, "e": self.ring.to_json(x.e)}


def check_against_tensor_oracle(monoid: TwistedIdempotentMonoid) -> ValidationReport:
    """Compare every product with the literal tensor product of bimodules over R."""
    report = ValidationReport("twisted bimodule products vs tensor oracle")
    els = monoid.elements()
    bad = []
    for x in els:
        for y in els:
            lit = bimodule.tensor(monoid.bimodule(x), monoid.bimodule(y))
            out = monoid.bimodule(monoid.mul(x, y))
            if len(lit) != len(out):
                bad.append([monoid.to_json(x), monoid.to_json(y)])
                continue
            if len(lit) > 1 and bimodule.cyclic_isomorphism(lit, lit.pure(x.e, y.e), out) is None:
                bad.append([monoid.to_json(x), monoid.to_json(y)])
    report.add("rule matches oracle on all pairs", not bad, bad[:5] or None)
    report.note(f"{len(els) ** 2} pairs compared")
    bad = [monoid.to_json(monoid.canonical(g, e)) for g in monoid.group.elements() for e in monoid.ring.idempotents()
           if monoid.ring.leq(e, monoid.pa.ones[monoid.group.inv(g)]) and
           bimodule.cyclic_isomorphism(monoid.bimodule(Twisted(g, e)), e, monoid.bimodule(monoid.canonical(g, e))) is None]
    report.add("canonical labels name isomorphic bimodules", not bad, bad[:5] or None)
    return report


@dataclass(frozen=True)
class Combined:
    pic: PicSElement
    twist: Twisted


class CombinedMonoid:
    """Products [M] (x) g(Re) of a PicS(R) class and a twisted idempotent bimodule.

    Normal form: the idempotent part absorbs the component of [M] and the
    component of [M] is cut to alpha_g(e).
    """

    def __init__(self, action: PartialActionOnPicS, pa: PartialAction):
        self.action = action
        self.pics = action.monoid
        self.twisted = TwistedIdempotentMonoid(pa)
        self.pa = pa
        self.group = pa.group

    def normalize(self, pic: PicSElement, g: int, e: int) -> Combined:
        ring, pa = self.pa.ring, self.pa
        gi = self.group.inv(g)
        e = ring.mul(pa.act(gi, ring.mul(pic.component, pa.ones[g])), e)
        pic = self.pics.mul(pic, self.pics.element(pa.act(g, e)))
        return Combined(pic, self.twisted.canonical(g, e))

    def make(self, pic: PicSElement | None = None, twist: Twisted | None = None) -> Combined:
        pic = pic or self.pics.identity()
        twist = twist or self.twisted.identity()
        return self.normalize(pic, twist.g, twist.e)

    def mul(self, x: Combined, y: Combined) -> Combined:
        g = x.twist.g
        moved = self.action.apply(g, self.pics.mul(y.pic, self.action.dg(self.group.inv(g))))
        pic = self.pics.mul(x.pic, moved)
        t = self.twisted.mul(x.twist, y.twist)
        return self.normalize(pic, t.g, t.e)

    def identity(self) -> Combined:
        return self.make()

    def dg(self, g: int) -> Combined:
        return self.make(self.action.dg(g))

    def elements(self) -> list[Combined]:
        out = []
        for p in self.pics.elements():
            for t in self.twisted.elements():
                c = self.normalize(p, t.g, t.e)
                if c not in out:
                    out.append(c)
        return out

    def to_json(self, x: Combined):
        return {"pic": self.pics.to_json(x.pic), "twist": self.twisted.to_json(x.twist)}


# partial representations

@dataclass
class PartialRepresentation:
    group: FiniteGroup
    values: list
    mul: Callable
    identity: object
    dg: Callable[[int], object] | None = None
    to_json: Callable = field(default=repr, repr=False)

    def __call__(self, g: int):
        return self.values[g]


def validate_partial_rep(rep: PartialRepresentation) -> ValidationReport:
    """Axioms: Phi(g^-1)Phi(g)Phi(h) = Phi(g^-1)Phi(gh), the mirror identity, and Phi(1) = 1."""
    grp, mul, phi = rep.group, rep.mul, rep.values
    G = list(grp.elements())
    report = ValidationReport("partial representation")
    bad = [[g, h] for g, h in product(G, G)
           if mul(mul(phi[grp.inv(g)], phi[g]), phi[h]) != mul(phi[grp.inv(g)], phi[grp.mul(g, h)])]
    report.add("(i) Phi(g^-1)Phi(g)Phi(h) = Phi(g^-1)Phi(gh)", not bad, bad or None)
    bad = [[g, h] for g, h in product(G, G)
           if mul(mul(phi[g], phi[h]), phi[grp.inv(h)]) != mul(phi[grp.mul(g, h)], phi[grp.inv(h)])]
    report.add("(ii) Phi(g)Phi(h)Phi(h^-1) = Phi(gh)Phi(h^-1)", not bad, bad or None)
    report.add("(iii) Phi(1) = 1", phi[0] == rep.identity)
    report.note(f"{len(G) ** 2} pairs per axiom")
    return report


def check_domain_identities(rep: PartialRepresentation) -> ValidationReport:
    """Phi(g)Phi(g^-1) = [D_g] and Phi(g)[D_h] = [D_gh]Phi(g)."""
    grp, mul, phi = rep.group, rep.mul, rep.values
    G = list(grp.elements())
    report = ValidationReport("domain identities")
    bad = [g for g in G if mul(phi[g], phi[grp.inv(g)]) != rep.dg(g)]
    report.add("Phi(g)Phi(g^-1) = [D_g]", not bad, bad or None)
    bad = [[g, h] for g, h in product(G, G) if mul(phi[g], rep.dg(h)) != mul(rep.dg(grp.mul(g, h)), phi[g])]
    report.add("Phi(g)[D_h] = [D_gh]Phi(g)", not bad, bad or None)
    return report


def phi0(pa: PartialAction) -> PartialRepresentation:
    """g -> (g, 1_g^-1) in the twisted idempotent monoid."""
    tm = TwistedIdempotentMonoid(pa)
    values = [tm.canonical(g, pa.ones[pa.group.inv(g)]) for g in pa.group.elements()]
    return PartialRepresentation(pa.group, values, tm.mul, tm.identity(), tm.dg, tm.to_json)


def phi0_combined(cm: CombinedMonoid) -> PartialRepresentation:
    pa = cm.pa
    values = [cm.make(None, cm.twisted.canonical(g, pa.ones[pa.group.inv(g)])) for g in pa.group.elements()]
    return PartialRepresentation(pa.group, values, cm.mul, cm.identity(), cm.dg, cm.to_json)


def phi_f(f: Sequence[PicSElement], pa: PartialAction, action: PartialActionOnPicS | None = None) -> PartialRepresentation:
    """g -> f(g) Phi0(g) in the combined monoid."""
    action = action or alpha_star(pa)
    if not is_pics_cocycle(action, f):
        raise PicSError("f is not a 1-cocycle into PicS(R)")
    cm = CombinedMonoid(action, pa)
    base = phi0_combined(cm)
    values = [cm.mul(cm.make(f[g]), base.values[g]) for g in pa.group.elements()]
    return PartialRepresentation(pa.group, values, cm.mul, cm.identity(), cm.dg, cm.to_json)
