"""Partial crossed products R *_(alpha, omega) G and the maps between them.

An element is a tuple indexed by group elements whose g-th entry lies in D_g.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator

from . import bimodule
from .action import GaloisExtension, PartialAction, Twisting, invariant_subring
from .cohomology import Cochain, cochain_complex
from .config import require_within
from .report import ValidationReport
from .tensor import tensor_extensions


class CoefficientError(ValueError):
    pass


class CrossedProduct:
    def __init__(self, pa: PartialAction, omega: Twisting | None = None):
        self.pa = pa
        self.ring = pa.ring
        self.group = pa.group
        self.omega = omega if omega is not None else Twisting.trivial(pa)
        self.ideals = [self.ring.ideal(e) for e in pa.ones]

    @property
    def zero(self) -> tuple:
        return tuple(self.ring.zero for _ in self.group.elements())

    def monomial(self, g: int, r: int) -> tuple:
        if r not in self.ideals[g]:
            raise CoefficientError(f"coefficient {self.ring.to_json(r)} is not in D_{g}")
        out = list(self.zero)
        out[g] = r
        return tuple(out)

    def identity(self) -> tuple:
        # 1 delta_1 when omega is normalized; omega(1,1)^-1 delta_1 in general
        w = self.omega(0, 0)
        return self.monomial(0, self.ring.inverse(w, self.ring.one))

    def validate(self, a: tuple) -> None:
        if len(a) != self.group.order:
            raise CoefficientError("element has the wrong number of components")
        for g, r in enumerate(a):
            if r not in self.ideals[g]:
                raise CoefficientError(f"coefficient {self.ring.to_json(r)} is not in D_{g}")

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.ring.add(x, y) for x, y in zip(a, b))

    def multiply(self, a: tuple, b: tuple) -> tuple:
        self.validate(a)
        self.validate(b)
        return self._mul(a, b)

    def _mul(self, a: tuple, b: tuple) -> tuple:
        ring, grp = self.ring, self.group
        mul, act, w = ring.mul, self.pa.act_table, self.omega.values
        out = list(self.zero)
        for g, x in enumerate(a):
            if x == ring.zero:
                continue
            for h, y in enumerate(b):
                if y == ring.zero:
                    continue
                gh = grp.table[g][h]
                out[gh] = ring.add(out[gh], mul(mul(x, act[g][y]), w[g][h]))
        return tuple(out)

    def monomials(self) -> list[tuple[int, int]]:
        """All (g, r) with r in D_g, r nonzero."""
        return [(g, r) for g in self.group.elements() for r in self.ideals[g].elements if r != self.ring.zero]

    def elements(self) -> Iterator[tuple]:
        return product(*(ideal.elements for ideal in self.ideals))

    @property
    def size(self) -> int:
        n = 1
        for ideal in self.ideals:
            n *= len(ideal)
        return n

    def scale(self, r: int, a: tuple) -> tuple:
        """Left R-module structure: r (sum a_g delta_g) = sum r a_g delta_g."""
        return tuple(self.ring.mul(r, x) for x in a)


def _mono_product(cp: CrossedProduct, g, r, h, s):
    ring = cp.ring
    return cp.group.mul(g, h), ring.mul(ring.mul(r, cp.pa.act(g, s)), cp.omega(g, h))


def check_associativity(cp: CrossedProduct, exhaustive_limit: int = 300_000) -> ValidationReport:
    """(ab)c = a(bc) over monomials; uses additive generators of each D_g when too many triples.

    The check is trilinear, so generators suffice. The first failing triple of
    group elements (lexicographic) is reported.
    """
    report = ValidationReport("associativity")
    per_g = {g: [r for r in cp.ideals[g].elements if r != cp.ring.zero] for g in cp.group.elements()}
    total = sum(len(v) for v in per_g.values())
    if total ** 3 > exhaustive_limit:
        per_g = {g: cp.ideals[g].additive_generators() for g in cp.group.elements()}
        report.note("checked on additive generators of each D_g")
    else:
        report.note("exhaustive over monomials")
    G = list(cp.group.elements())
    witness = None
    for g, h, l in product(G, G, G):
        for r, s, t in product(per_g[g], per_g[h], per_g[l]):
            gh, c = _mono_product(cp, g, r, h, s)
            left = _mono_product(cp, gh, c, l, t)
            hl, d = _mono_product(cp, h, s, l, t)
            right = _mono_product(cp, g, r, hl, d)
            if left != right:
                witness = [g, h, l]
                break
        if witness:
            break
    report.add("associative", witness is None, witness)
    return report


# j-map

def _endomorphisms(ring, scalars, cap: int | None = None) -> set[tuple]:
    """All additive maps R -> R commuting with `scalars`, as value tables (independent enumeration)."""
    gens = ring.ideal(ring.one).additive_generators()
    require_within(ring.size ** len(gens), cap, "endomorphism enumeration")
    out = set()
    for images in product(ring.elements(), repeat=len(gens)):
        table = {ring.zero: ring.zero}
        frontier = [ring.zero]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, im in zip(gens, images):
                    y, fy = ring.add(x, g), ring.add(table[x], im)
                    if y not in table:
                        table[y] = fy
                        nxt.append(y)
                    elif table[y] != fy:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if not ok or len(table) != ring.size:
            continue
        if all(table[ring.add(x, y)] == ring.add(table[x], table[y]) for x in ring.elements() for y in gens) and \
                all(table[ring.mul(c, x)] == ring.mul(c, table[x]) for c in scalars for x in ring.elements()):
            out.add(tuple(table[x] for x in ring.elements()))
    return out


@dataclass
class JMapResult:
    report: ValidationReport
    skew_size: int
    end_size: int
    tables: dict = field(repr=False)


def j_map(ext: GaloisExtension | PartialAction, cap: int | None = None) -> JMapResult:
    """j(sum r_g delta_g)(r) = sum r_g alpha_g(r 1_g^-1), checked against all of End_{R^alpha}(R).

    Accepts a bare partial action too, so that non-Galois inputs report where
    bijectivity breaks.
    """
    pa = ext.pa if isinstance(ext, GaloisExtension) else ext
    ring = pa.ring
    scalars = invariant_subring(pa).elements
    cp = CrossedProduct(pa)
    G = list(pa.group.elements())
    report = ValidationReport("j-map")

    def j(a):
        return tuple(ring.sum(ring.mul(a[g], pa.act(g, r)) for g in G) for r in ring.elements())

    elements = list(cp.elements())
    tables = {a: j(a) for a in elements}
    ends = _endomorphisms(ring, scalars, cap)
    images = set(tables.values())
    report.add("injective", len(images) == len(elements))
    report.add("image is End_{R^alpha}(R)", images == ends,
               None if images == ends else {"image": len(images), "endomorphisms": len(ends)})
    bad = None
    for a, b in product(elements, elements):
        ja, jb = tables[a], tables[b]
        if tables[cp._mul(a, b)] != tuple(ja[y] for y in jb):
            bad = [[ring.to_json(x) for x in a], [ring.to_json(x) for x in b]]
            break
    report.add("multiplicative", bad is None, bad)
    bad = next((r for r in ring.elements() for a in elements
                if tables[cp.scale(r, a)] != tuple(ring.mul(r, v) for v in tables[a])), None)
    report.add("R-linear", bad is None, None if bad is None else ring.to_json(bad))
    return JMapResult(report, len(elements), len(ends), tables)


# R (x)_{R^alpha} R modelled as the product of the D_g

class TensorSquareModel:
    """R^e = R (x)_{R^alpha} R through psi(x (x) y) = (x alpha_g(y 1_g^-1))_g."""

    def __init__(self, ext: GaloisExtension):
        self.ext = ext
        self.pa = ext.pa
        self.ring = ext.ring
        self.group = ext.group

    def psi(self, x: int, y: int) -> tuple:
        ring, act = self.ring, self.pa.act
        return tuple(ring.mul(x, act(g, y)) for g in self.group.elements())

    def one(self) -> tuple:
        return tuple(self.pa.ones)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.ring.mul(x, y) for x, y in zip(a, b))

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(self.ring.add(x, y) for x, y in zip(a, b))

    def elements(self):
        return product(*(self.ring.ideal(e).elements for e in self.pa.ones))

    def verify(self) -> ValidationReport:
        """psi is balanced, biadditive, multiplicative and onto, and both sides have equal size."""
        ring, ext = self.ring, self.ext
        R = list(ring.elements())
        report = ValidationReport("tensor square model")
        add = ring.add
        bad = next(([x, y, z] for x, y, z in product(R, R, R)
                    if self.psi(add(x, y), z) != self.add(self.psi(x, z), self.psi(y, z))
                    or self.psi(x, add(y, z)) != self.add(self.psi(x, y), self.psi(x, z))), None)
        report.add("biadditive", bad is None, bad)
        bad = next(([x, c, y] for x, y in product(R, R) for c in ext.invariants.elements
                    if self.psi(ring.mul(x, c), y) != self.psi(x, ring.mul(c, y))), None)
        report.add("balanced over R^alpha", bad is None, bad)
        bad = next(([x, y, u, v] for x, y, u, v in product(R, R, R, R)
                    if self.psi(ring.mul(x, u), ring.mul(y, v)) != self.mul(self.psi(x, y), self.psi(u, v))), None)
        report.add("multiplicative on pure tensors", bad is None, bad)
        span = {self.psi(ring.zero, ring.zero)}
        pures = {self.psi(x, y) for x, y in product(R, R)}
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for p in pures:
                    b = self.add(a, p)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        target = len(list(self.elements()))
        report.add("onto the product of the D_g", len(span) == target)
        literal = bimodule.tensor(bimodule.regular_bimodule(ring), bimodule.regular_bimodule(ring),
                                  ext.invariants.elements)
        report.add("|R (x) R| equals |prod D_g|", len(literal) == target,
                   None if len(literal) == target else [len(literal), target])
        return report


@dataclass
class IdempotentFamily:
    model: TensorSquareModel
    idempotents: list[tuple]

    def __getitem__(self, g: int) -> tuple:
        return self.idempotents[g]


def galois_idempotents(ext: GaloisExtension) -> IdempotentFamily:
    """e_g = psi^-1 of the indicator at g^-1 carrying 1_{g^-1}."""
    model = TensorSquareModel(ext)
    ring, grp = ext.ring, ext.group
    family = []
    for g in grp.elements():
        gi = grp.inv(g)
        v = [ring.zero] * grp.order
        v[gi] = ext.pa.ones[gi]
        family.append(tuple(v))
    return IdempotentFamily(model, family)


def check_idempotent_family(fam: IdempotentFamily) -> ValidationReport:
    model = fam.model
    ring, grp, act = model.ring, model.group, model.pa.act
    G = list(grp.elements())
    report = ValidationReport("Galois idempotents")
    zero = tuple(ring.zero for _ in G)
    bad = next(([g, h] for g, h in product(G, G)
                if model.mul(fam[g], fam[h]) != (fam[g] if g == h else zero)), None)
    report.add("orthogonal idempotents", bad is None, bad)
    total = zero
    for g in G:
        total = model.add(total, fam[g])
    report.add("sum is 1", total == model.one())
    bad = next(([g, ring.to_json(x)] for g in G for x in ring.elements()
                if model.mul(model.psi(ring.one, act(g, x)), fam[g]) != model.mul(model.psi(x, ring.one), fam[g])),
               None)
    report.add("(1 (x) alpha_g(x 1_g^-1)) e_g = (x (x) 1) e_g", bad is None, bad)
    return report


@dataclass
class EtaResult:
    report: ValidationReport
    forward: Callable
    backward: Callable


def eta_iso(ext: GaloisExtension, omega: Twisting | None = None) -> EtaResult:
    """eta(sum r_g delta_g) = sum (r_g (x) 1) e_{g^-1}, with its inverse, both checked."""
    cp = CrossedProduct(ext.pa, omega)
    fam = galois_idempotents(ext)
    model = fam.model
    ring, grp = ext.ring, ext.group
    G = list(grp.elements())
    zero = tuple(ring.zero for _ in G)

    def forward(a: tuple) -> tuple:
        acc = zero
        for g, r in enumerate(a):
            acc = model.add(acc, model.mul(model.psi(r, ring.one), fam[grp.inv(g)]))
        return acc

    def backward(v: tuple) -> tuple:
        return tuple(v)

    report = ValidationReport("eta")
    monos = [cp.monomial(g, r) for g in G for r in cp.ideals[g].elements]
    bad = next((m for m in monos if backward(forward(m)) != m), None)
    report.add("round trip on monomials", bad is None, None if bad is None else [ring.to_json(x) for x in bad])
    elements = list(cp.elements())
    images = {forward(a) for a in elements}
    report.add("bijective", len(images) == len(elements) == len(list(model.elements())))
    bad = next((r for r in ring.elements() for a in elements
                if forward(cp.scale(r, a)) != model.mul(model.psi(r, ring.one), forward(a))), None)
    report.add("R-linear", bad is None, None if bad is None else ring.to_json(bad))
    bad = next(([r, s] for r in ring.elements() for s in ring.elements()
                if model.psi(r, s) != forward(tuple(ring.mul(r, ext.pa.act(g, s)) for g in G))), None)
    report.add("r (x) s = eta(sum r alpha_g(s 1_g^-1) delta_g)", bad is None, bad)
    return EtaResult(report, forward, backward)


# maps between crossed products

@dataclass
class CrossedMorphism:
    source: CrossedProduct
    target: CrossedProduct
    image: Callable[[tuple], tuple]
    report: ValidationReport

    def inverse_image(self, b: tuple) -> tuple:
        for a in self.source.elements():
            if self.image(a) == b:
                return a
        raise ValueError("not in the image")


def _check_morphism(src: CrossedProduct, dst: CrossedProduct, fn, anti: bool, name: str) -> ValidationReport:
    report = ValidationReport(name)
    ring = src.ring
    elements = list(src.elements())
    images = {fn(a) for a in elements}
    report.add("bijective", len(images) == len(elements) == dst.size)
    G = list(src.group.elements())
    monos = [src.monomial(g, r) for g, r in src.monomials()]
    bad = None
    for a, b in product(monos, monos):
        lhs = fn(src._mul(a, b))
        rhs = dst._mul(fn(b), fn(a)) if anti else dst._mul(fn(a), fn(b))
        if lhs != rhs:
            bad = [[ring.to_json(x) for x in a], [ring.to_json(x) for x in b]]
            break
    report.add("anti-multiplicative" if anti else "multiplicative", bad is None, bad)
    bad = next((a for a in elements[:64] for b in elements[:64]
                if fn(src.add(a, b)) != dst.add(fn(a), fn(b))), None)
    report.add("additive", bad is None)
    return report


def iso_from_coboundary(pa: PartialAction, omega: Twisting, omega_t: Twisting, u: Cochain) -> CrossedMorphism:
    """a_g delta_g -> a_g u_g delta_g from R *_omega G to R *_omega~ G, given omega = omega~ . delta(u)."""
    ring, grp = pa.ring, pa.group
    cochain_complex(pa).validate(u)
    for g, h in product(grp.elements(), grp.elements()):
        gh = grp.mul(g, h)
        want = ring.mul(ring.mul(ring.mul(omega_t(g, h), u(g)), pa.act(g, u(h))), ring.inverse(u(gh), pa.ones[gh]))
        if omega(g, h) != want:
            raise ValueError(f"u does not relate the twistings at (g,h) = ({g},{h})")
    src, dst = CrossedProduct(pa, omega), CrossedProduct(pa, omega_t)

    def image(a):
        return tuple(ring.mul(x, u(g)) for g, x in enumerate(a))

    return CrossedMorphism(src, dst, image, _check_morphism(src, dst, image, False, "iso from coboundary"))


def recover_cochain(m: CrossedMorphism) -> Cochain:
    """Read u back from the inverse map: phi^-1(1_g delta_g) = u_g^-1 delta_g."""
    pa = m.source.pa
    ring = pa.ring
    values = []
    for g in pa.group.elements():
        pre = m.inverse_image(m.target.monomial(g, pa.ones[g]))
        values.append(ring.inverse(pre[g], pa.ones[g]))
    return cochain_complex(pa).make(1, values)


def detect_trivial_class(pa: PartialAction, omega: Twisting, cap: int | None = None,
                         method: str = "search") -> Cochain | None:
    """First u in C^1 (canonical order) with omega = 1_alpha . delta(u).

    method="linear" solves the linearized system instead of searching; the
    witness is then some u, not necessarily the first.
    """
    cx = cochain_complex(pa)
    n = pa.group.order
    target = tuple(omega(g, h) for g in range(n) for h in range(n))
    if method == "linear":
        f = Cochain(2, target, n)
        try:
            cx.validate(f)
        except ValueError:
            return None
        return cx.solve_coboundary(f)
    if method != "search":
        raise ValueError(f"unknown method {method!r}")
    for u in cx.enumerate(1, cap):
        if cx.coboundary(u).values == target:
            return u
    return None


def find_diagonal_iso(pa: PartialAction, omega: Twisting, omega_t: Twisting, cap: int | None = None) -> Cochain | None:
    """Search all maps a_g delta_g -> a_g u_g delta_g (u_g units of D_g) for a multiplicative one."""
    cx = cochain_complex(pa)
    src, dst = CrossedProduct(pa, omega), CrossedProduct(pa, omega_t)
    monos = [src.monomial(g, r) for g, r in src.monomials()]
    ring = pa.ring
    for u in cx.enumerate(1, cap):
        def image(a, u=u):
            return tuple(ring.mul(x, u(g)) for g, x in enumerate(a))
        if all(image(src._mul(a, b)) == dst._mul(image(a), image(b)) for a in monos for b in monos):
            return u
    return None


def inverse_twisting(pa: PartialAction, omega: Twisting) -> Twisting:
    ring, n = pa.ring, pa.group.order
    return Twisting([[ring.inverse(omega(g, h), pa.cut((g, h))) for h in range(n)] for g in range(n)])


def opposite_iso(pa: PartialAction, omega: Twisting) -> CrossedMorphism:
    """r_g delta_g -> alpha_{g^-1}(r_g omega(g, g^-1)) delta_{g^-1}, an anti-isomorphism onto R *_{omega^-1} G."""
    ring, grp = pa.ring, pa.group
    src = CrossedProduct(pa, omega)
    dst = CrossedProduct(pa, inverse_twisting(pa, omega))

    def image(a):
        out = [ring.zero] * grp.order
        for g, r in enumerate(a):
            gi = grp.inv(g)
            out[gi] = ring.add(out[gi], pa.act(gi, ring.mul(r, omega(g, gi))))
        return tuple(out)

    return CrossedMorphism(src, dst, image, _check_morphism(src, dst, image, True, "opposite iso"))


@dataclass
class TensorCrossed:
    extension: GaloisExtension
    product: CrossedProduct
    xi: Callable
    report: ValidationReport


def tensor_twisting(ext: GaloisExtension, omega1: Twisting, omega2: Twisting) -> Twisting:
    td = ext.tensor
    g1, g2 = td.left.group, td.right.group
    n = ext.group.order
    values = [[None] * n for _ in range(n)]
    for (a, b), (c, d) in product(product(g1.elements(), g2.elements()), repeat=2):
        values[td.pair(a, b)][td.pair(c, d)] = td.pure(omega1(a, c), omega2(b, d))
    return Twisting(values)


def tensor_crossed(ext1: GaloisExtension, omega1: Twisting | None, ext2: GaloisExtension,
                   omega2: Twisting | None, tensor_ext: GaloisExtension | None = None) -> TensorCrossed:
    """Crossed product over G x H with twisting omega1 (x) omega2, and the map xi checked multiplicative."""
    omega1 = omega1 or Twisting.trivial(ext1.pa)
    omega2 = omega2 or Twisting.trivial(ext2.pa)
    ext = tensor_ext or tensor_extensions(ext1, ext2)
    td = ext.tensor
    cp = CrossedProduct(ext.pa, tensor_twisting(ext, omega1, omega2))
    s1, s2 = CrossedProduct(ext1.pa, omega1), CrossedProduct(ext2.pa, omega2)

    def xi(m1: tuple[int, int], m2: tuple[int, int]) -> tuple:
        (g, a), (h, b) = m1, m2
        return cp.monomial(td.pair(g, h), td.pure(a, b))

    report = ValidationReport("tensor of crossed products")
    monos1 = [(g, r) for g in ext1.group.elements() for r in s1.ideals[g].elements]
    monos2 = [(h, r) for h in ext2.group.elements() for r in s2.ideals[h].elements]
    bad = None
    for (m1, m1b), (m2, m2b) in product(product(monos1, monos1), product(monos2, monos2)):
        p1 = _mono_product(s1, m1[0], m1[1], m1b[0], m1b[1])
        p2 = _mono_product(s2, m2[0], m2[1], m2b[0], m2b[1])
        if xi(p1, p2) != cp._mul(xi(m1, m2), xi(m1b, m2b)):
            bad = [list(m1), list(m1b), list(m2), list(m2b)]
            break
    report.add("xi multiplicative on monomial pairs", bad is None, bad)
    k = td.base.size
    dims = (round(math.log(s1.size, k)) * round(math.log(s2.size, k)), round(math.log(cp.size, k)))
    report.add("k-dimensions match", dims[0] == dims[1], None if dims[0] == dims[1] else list(dims))
    return TensorCrossed(ext, cp, xi, report)
