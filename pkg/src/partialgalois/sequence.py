"""The computable maps of the seven-term sequence and empirical composite probes.

phi1: H^1(G, alpha, R) -> Pic(R^alpha) via invariant modules R_f^G.
phi2: Pic(R^alpha) -> PicS(R)^alpha* by scalar extension.
phi3: invariant Picard classes -> H^2 through a psi family.
phi4: H^2 -> crossed-product classes, compared by coboundary detection.
phi6: 1-cocycles into PicS(R) -> H^3 through the rho data of the chi maps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from . import crossed, pics
from .action import GaloisExtension, PartialAction, Twisting
from .cohomology import Cochain, CochainComplex, cochain_complex
from .config import enumeration_cap, require_within
from .report import ValidationReport
from .tensor import tensor_extensions

EMPIRICAL = "empirical: a pass is evidence, not proof"


class SequenceError(ValueError):
    pass


def _require_cocycle(cx: CochainComplex, f: Cochain, what: str) -> None:
    cx.validate(f)
    if not cx.is_cocycle(f):
        raise SequenceError(f"{what} is not a cocycle")


# phi1

@dataclass
class InvariantModuleResult:
    elements: list[int]
    generator: int | None
    pic_class: str
    report: ValidationReport
    coboundary_witness: Cochain | None = None

    @property
    def free(self) -> bool:
        return self.generator is not None


def invariant_module(ext: GaloisExtension, f: Cochain) -> list[int]:
    """R_f^G = {r : f(g) alpha_g(r 1_g^-1) = 1_g r for all g}."""
    pa, ring = ext.pa, ext.ring
    G = list(ext.group.elements())
    return [r for r in ring.elements()
            if all(ring.mul(f(g), pa.act(g, r)) == ring.mul(pa.ones[g], r) for g in G)]


def free_generator(ext: GaloisExtension, module: Sequence[int]) -> int | None:
    ring = ext.ring
    target = set(module)
    scalars = ext.invariants.elements
    for x in module:
        if {ring.mul(c, x) for c in scalars} == target and len(target) == len(scalars):
            return x
    return None


def phi1(ext: GaloisExtension, f: Cochain) -> InvariantModuleResult:
    cx = cochain_complex(ext.pa)
    _require_cocycle(cx, f, "f")
    ring = ext.ring
    module = invariant_module(ext, f)
    report = ValidationReport("phi1")
    s = set(module)
    report.add("closed under addition", all(ring.add(x, y) in s for x in s for y in s))
    report.add("closed under R^alpha scaling", all(ring.mul(c, x) in s for c in ext.invariants.elements for x in s))
    gen = free_generator(ext, module)
    report.add("free of rank one over R^alpha", gen is not None, None if gen is None else ring.to_json(gen))
    witness = cx.coboundary_witness(f) if cx.size(0) <= enumeration_cap() else cx.solve_coboundary(f)
    if witness is not None:
        a = witness()
        scaled = {ring.mul(a, x) for x in module}
        report.add("f = delta(a) gives a R_f^G = R^alpha", scaled == set(ext.invariants.elements),
                   ring.to_json(a))
    return InvariantModuleResult(module, gen, "trivial" if gen is not None else "not free", report, witness)


def phi1_multiplicativity(ext: GaloisExtension, cocycles: Sequence[Cochain]) -> ValidationReport:
    """generator(f) generator(f') generates R_{ff'}^G, for all pairs."""
    cx = cochain_complex(ext.pa)
    ring = ext.ring
    gens = {f.values: phi1(ext, f).generator for f in cocycles}
    report = ValidationReport("phi1 multiplicativity")
    bad = []
    for f, h in product(cocycles, cocycles):
        prod_ = cx.mul(f, h)
        module = set(invariant_module(ext, prod_))
        x = ring.mul(gens[f.values], gens[h.values])
        if {ring.mul(c, x) for c in ext.invariants.elements} != module:
            bad.append([list(f.values), list(h.values)])
    report.add("product of generators generates the product module", not bad, bad[:5] or None)
    report.note(f"{len(cocycles) ** 2} pairs")
    return report


# phi2

@dataclass
class Phi2Result:
    image: pics.PicSElement
    report: ValidationReport


def phi2(ext: GaloisExtension, x: pics.PicSElement | None = None, action: pics.PartialActionOnPicS | None = None,
         extension_map: Callable | None = None) -> Phi2Result:
    """[E] -> [R (x) E].

    Concretely both Picard groups are trivial and the image is [R]. With a
    symbolic action, `extension_map` supplies the scalar-extension map on classes.
    """
    base, _ = ext.invariants.as_ring()
    base_pics = pics.pics(base)
    report = ValidationReport("phi2")
    action = action or pics.alpha_star(ext.pa)
    if extension_map is None:
        x = x or base_pics.identity()
        if x not in base_pics.units():
            raise SequenceError("input is not a unit of PicS(R^alpha)")
        image = action.monoid.identity()
    else:
        image = extension_map(x)
    report.add("image is a unit of PicS(R)", image in action.monoid.units())
    report.add("image is alpha*-invariant", image in pics.pics_invariants(action))
    return Phi2Result(image, report)


# phi3

@dataclass
class PsiFamily:
    """psi_g: D_g -> D_g^-1, stored as x -> a_g alpha_g^-1(x) or as explicit tables."""

    pa: PartialAction
    units: list[int] | None = None
    tables: list[dict] | None = None

    def apply(self, g: int, x: int) -> int:
        if self.tables is not None:
            return self.tables[g][x]
        ring = self.pa.ring
        return ring.mul(self.units[g], self.pa.act(self.pa.group.inv(g), x))

    def table(self, g: int) -> dict:
        return {x: self.apply(g, x) for x in self.pa.ring.ideal(self.pa.ones[g]).elements}

    def inverse(self, g: int, y: int) -> int:
        for x, z in self.table(g).items():
            if z == y:
                return x
        raise SequenceError(f"psi_{g} does not reach the given element")

    def check(self) -> ValidationReport:
        pa, ring = self.pa, self.pa.ring
        report = ValidationReport("psi family")
        bad = None
        for g in pa.group.elements():
            t = self.table(g)
            gi = pa.group.inv(g)
            if set(t.values()) != set(ring.ideal(pa.ones[gi]).elements) or len(set(t.values())) != len(t):
                bad = [g, "not a bijection D_g -> D_g^-1"]
                break
            off = next(([r, x] for r in ring.elements() for x in t
                        if t[ring.mul(r, x)] != ring.mul(pa.act(gi, r), t[x])), None)
            if off:
                bad = [g, "twisted linearity", off]
                break
            if any(t[ring.add(x, y)] != ring.add(t[x], t[y]) for x in t for y in t):
                bad = [g, "not additive"]
                break
        report.add("twisted linear bijections", bad is None, bad)
        return report


def psi_families(pa: PartialAction) -> list[PsiFamily]:
    """Every unit-scaled family, in canonical order."""
    grp, ring = pa.group, pa.ring
    choices = [ring.unit_group(pa.ones[grp.inv(g)]).elements for g in grp.elements()]
    return [PsiFamily(pa, list(units)) for units in product(*choices)]


@dataclass
class Phi3Result:
    omega: Cochain
    report: ValidationReport


def phi3(ext: GaloisExtension, psi: PsiFamily) -> Phi3Result:
    """omega(g,h) read off psi_(gh)^-1 psi_h^-1^-1 psi_g^-1^-1 at the identity of D_g D_gh."""
    pa, ring, grp = ext.pa, ext.ring, ext.group
    check = psi.check()
    if not check.ok:
        raise SequenceError(f"psi family fails: {check.failures()[0].witness}")
    cx = cochain_complex(pa)
    report = ValidationReport("phi3")
    values = []
    bad = None
    for g, h in grp.tuples(2):
        gh = grp.mul(g, h)
        cut = pa.cut((g, h))

        def composite(x):
            y = psi.inverse(grp.inv(g), x)
            y = psi.inverse(grp.inv(h), y)
            return psi.apply(grp.inv(gh), y)

        w = composite(cut)
        values.append(w)
        if bad is None:
            off = next((x for x in ring.ideal(cut).elements if composite(x) != ring.mul(w, x)), None)
            if off is not None:
                bad = [g, h, ring.to_json(off)]
    report.add("composite is multiplication by omega(g,h)", bad is None, bad)
    omega = cx.make(2, values)
    report.add("omega is a 2-cocycle", cx.is_cocycle(omega))
    return Phi3Result(omega, report)


def psi_coboundary_witness(psi: PsiFamily) -> Cochain:
    """v_g = a_g^-1^-1, with omega = delta(v) for a unit-scaled family."""
    pa, ring, grp = psi.pa, psi.pa.ring, psi.pa.group
    cx = cochain_complex(pa)
    return cx.make(1, [ring.inverse(psi.units[grp.inv(g)], pa.ones[g]) for g in grp.elements()])


def phi3_choice_independence(ext: GaloisExtension, families: Sequence[PsiFamily] | None = None) -> ValidationReport:
    """All psi choices give cohomologous omegas, with explicitly built witnesses between every pair."""
    pa = ext.pa
    cx = cochain_complex(pa)
    families = list(families) if families is not None else psi_families(pa)
    report = ValidationReport("phi3 choice independence")
    omegas = [phi3(ext, psi) for psi in families]
    report.add("every omega is a 2-cocycle", all(r.report.ok for r in omegas))
    vs = [psi_coboundary_witness(psi) for psi in families]
    bad = next((i for i, (r, v) in enumerate(zip(omegas, vs)) if cx.coboundary(v).values != r.omega.values), None)
    report.add("omega = delta(v) with v_g = a_g^-1^-1", bad is None,
               None if bad is None else list(families[bad].units))
    bad = None
    for i, j in product(range(len(families)), repeat=2):
        w = cx.mul(vs[j], cx.inverse(vs[i]))
        if cx.mul(omegas[i].omega, cx.coboundary(w)).values != omegas[j].omega.values:
            bad = [list(families[i].units), list(families[j].units)]
            break
    report.add("omega' = omega delta(v' / v) for every pair", bad is None, bad)
    report.note(f"{len(families)} families, {len(families) ** 2} ordered pairs")
    return report


# phi4

@dataclass
class ClassRecord:
    omega: Cochain
    trivial: bool
    witness: Cochain | None
    report: ValidationReport

    @property
    def label(self) -> str:
        return "trivial" if self.trivial else "nontrivial"


def phi4(ext: GaloisExtension, omega: Cochain, method: str = "search", cap: int | None = None) -> ClassRecord:
    """Class of R *_(alpha, omega) G, recorded by coboundary detection against the trivial twisting."""
    pa = ext.pa
    cx = cochain_complex(pa)
    _require_cocycle(cx, omega, "omega")
    report = ValidationReport("phi4")
    twisting = Twisting.from_cochain(omega)
    cp = crossed.CrossedProduct(pa, twisting)
    if omega.values == cx.identity(2).values and cp.size <= 4096:
        report.extend(crossed.j_map(ext, cap).report, "skew ring: ")
    u = crossed.detect_trivial_class(pa, twisting, cap, method=method)
    if u is not None:
        report.add("coboundary witness verifies", cx.coboundary(u).values == omega.values, list(u.values))
    return ClassRecord(omega, u is not None, u, report)


def phi4_homomorphism(ext: GaloisExtension, omega: Cochain, omega_t: Cochain,
                      square: GaloisExtension | None = None) -> ValidationReport:
    """omega (x) omega~ is cohomologous to omega omega~ (x) 1 over R (x) R with G x G."""
    pa = ext.pa
    cx = cochain_complex(pa)
    _require_cocycle(cx, omega, "omega")
    _require_cocycle(cx, omega_t, "omega~")
    square = square or tensor_extensions(ext, ext)
    sx = cochain_complex(square.pa)
    left = crossed.tensor_twisting(square, Twisting.from_cochain(omega), Twisting.from_cochain(omega_t))
    right = crossed.tensor_twisting(square, Twisting.from_cochain(cx.mul(omega, omega_t)), Twisting.trivial(pa))
    report = ValidationReport("phi4 homomorphism")
    n = square.group.order
    lc = sx.make(2, [left(g, h) for g in range(n) for h in range(n)])
    rc = sx.make(2, [right(g, h) for g in range(n) for h in range(n)])
    report.add("both tensor twistings are cocycles", sx.is_cocycle(lc) and sx.is_cocycle(rc))
    u = sx.solve_coboundary(sx.mul(lc, sx.inverse(rc)))
    report.add("omega (x) omega~ ~ omega omega~ (x) 1", u is not None, None if u is None else list(u.values))
    return report


# phi6

def _word_loop(pa: PartialAction, rho: Callable[[int, int], int], g: int, h: int, l: int) -> int:
    """The scalar by which the loop of chi maps acts on u_g u_h u_l.

    Words are lists of ('s', r) scalars and ('u', k) generators; a scalar moves
    left past u_k as alpha_k(r 1_k^-1). The loop goes through
    chi_(g,h) (x) id then id (x) chi_(gh,l), and back along the inverses of
    id (x) chi_(g,hl) and id (x) chi_(h,l).
    """
    ring, grp = pa.ring, pa.group
    inv2 = {}

    def rho_inv(a, b):
        if (a, b) not in inv2:
            inv2[(a, b)] = ring.inverse(rho(a, b), pa.cut((a, b)))
        return inv2[(a, b)]

    def normal(word):
        c, us = ring.one, []
        for kind, x in word:
            if kind == "u":
                us.append(x)
                c = ring.mul(c, _cut_of(pa, us))
            else:
                for k in reversed(us):
                    x = pa.act(k, x)
                c = ring.mul(c, x)
        return c, us

    def chi(word, i):
        # merge the generators at positions i and i+1 (counting generators only)
        pos = [p for p, (kind, _) in enumerate(word) if kind == "u"]
        a, b = word[pos[i]][1], word[pos[i + 1]][1]
        return word[:pos[i]] + [("s", rho(a, b)), ("s", pa.ones[a]), ("u", grp.mul(a, b))] + word[pos[i + 1] + 1:]

    def chi_inv(word, i, a):
        pos = [p for p, (kind, _) in enumerate(word) if kind == "u"]
        k = word[pos[i]][1]
        b = grp.mul(grp.inv(a), k)
        return word[:pos[i]] + [("s", rho_inv(a, b)), ("u", a), ("u", b)] + word[pos[i] + 1:]

    start = [("u", g), ("u", h), ("u", l)]
    w = chi(chi(start, 0), 0)
    c_forward, us = normal(w)
    assert us == [grp.mul(grp.mul(g, h), l)]
    back = [("s", c_forward), ("u", us[0])]
    back = chi_inv(back, 0, g)
    back = chi_inv(back, 1, h)
    c, us = normal(back)
    assert us == [g, h, l]
    return c


def _cut_of(pa: PartialAction, us: list[int]) -> int:
    grp = pa.group
    k = 0
    for x in us:
        k = grp.mul(k, x)
    return pa.ones[k]


@dataclass
class Phi6Result:
    omega: Cochain
    report: ValidationReport


def phi6(pa: PartialAction, f: Sequence[pics.PicSElement] | None = None, rho: Cochain | None = None,
         action: pics.PartialActionOnPicS | None = None, sigmas: Sequence[Cochain] = ()) -> Phi6Result:
    """omega = delta^2(rho^-1), checked in Z^3, against the literal loop and under rho -> sigma rho."""
    cx = cochain_complex(pa)
    action = action or pics.alpha_star(pa)
    if f is not None and not pics.is_pics_cocycle(action, f):
        raise SequenceError("f is not a 1-cocycle into PicS(R)")
    rho = rho if rho is not None else cx.identity(2)
    cx.validate(rho)
    report = ValidationReport("phi6")
    omega = cx.coboundary(cx.inverse(rho))
    report.add("delta^3 omega = 1", cx.is_cocycle(omega))
    bad = next(([g, h, l] for g, h, l in pa.group.tuples(3)
                if _word_loop(pa, rho, g, h, l) != omega(g, h, l)), None)
    report.add("loop of chi maps gives delta^2(rho^-1)", bad is None, bad)
    report.add("omega is a coboundary (witness rho^-1)", True, list(cx.inverse(rho).values))
    bad = None
    for sigma in sigmas:
        moved = cx.coboundary(cx.inverse(cx.mul(sigma, rho)))
        if moved.values != cx.mul(cx.coboundary(cx.inverse(sigma)), omega).values:
            bad = list(sigma.values)
            break
    if sigmas:
        report.add("rho -> sigma rho changes omega by delta^2(sigma^-1)", bad is None, bad)
    return Phi6Result(omega, report)


def phi6_product(pa: PartialAction, rho: Cochain, rho_p: Cochain) -> ValidationReport:
    """The product family with rho_F = rho rho' gives omega_F = omega omega' pointwise."""
    cx = cochain_complex(pa)
    report = ValidationReport("phi6 product family")
    rho_f = cx.mul(rho, rho_p)
    omega = phi6(pa, rho=rho).omega
    omega_p = phi6(pa, rho=rho_p).omega
    loop = [_word_loop(pa, rho_f, *t) for t in pa.group.tuples(3)]
    report.add("omega_F = omega omega'", tuple(loop) == cx.mul(omega, omega_p).values)
    return report


# composites

@dataclass
class SequenceReport:
    subject: str
    probes: list[ValidationReport] = field(default_factory=list)
    notes: list[str] = field(default_factory=lambda: [EMPIRICAL])

    @property
    def ok(self) -> bool:
        return all(p.ok for p in self.probes)

    def to_dict(self) -> dict:
        return {"subject": self.subject, "status": "pass" if self.ok else "fail",
                "probes": [p.to_dict() for p in self.probes], "notes": list(self.notes)}


def _bounded(items: list, limit: int, seed: int = 0) -> tuple[list, bool]:
    if len(items) <= limit:
        return items, False
    rng = random.Random(seed)
    return [items[0]] + rng.sample(items[1:], limit - 1), True


def verify_composites(ext: GaloisExtension, limit: int = 256, cap: int | None = None) -> SequenceReport:
    """Probe phi2 phi1, phi3 on im(phi2), phi4 on im(phi3) and phi6 on z1_pics."""
    pa = ext.pa
    cx = cochain_complex(pa)
    out = SequenceReport(f"composites over a {ext.ring.size}-element ring, |G| = {ext.group.order}")
    action = pics.alpha_star(pa)
    identity = action.monoid.identity()

    # (a)
    probe = ValidationReport("(a) phi2 phi1 lands on [R]")
    if cx.size(1) <= (cap or enumeration_cap()):
        z1 = [f for f in cx.enumerate(1) if cx.is_cocycle(f)]
    else:
        z1 = [cx.identity(1)]
        out.notes.append("Z^1 too large to enumerate; probe (a) uses the identity cocycle")
    z1, sampled = _bounded(z1, limit)
    bad = []
    for f in z1:
        r1 = phi1(ext, f)
        r2 = phi2(ext)
        if not (r1.report.ok and r2.report.ok and r2.image == identity):
            bad.append(list(f.values))
    probe.add("every cocycle", not bad, bad[:5] or None)
    probe.note(f"{len(z1)} cocycles" + (" (sampled)" if sampled else ""))
    out.probes.append(probe)

    # (b)
    probe = ValidationReport("(b) phi3 on im(phi2) gives coboundaries")
    require_within(1, cap, "psi families")
    families, sampled = _bounded(psi_families(pa), limit)
    omegas = []
    bad = []
    for psi in families:
        r = phi3(ext, psi)
        v = psi_coboundary_witness(psi)
        omegas.append(r.omega)
        if not r.report.ok or cx.coboundary(v).values != r.omega.values:
            bad.append(list(psi.units))
    probe.add("every psi family", not bad, bad[:5] or None)
    probe.note(f"{len(families)} psi families" + (" (sampled)" if sampled else ""))
    out.probes.append(probe)

    # (c)
    probe = ValidationReport("(c) phi4 on im(phi3) is trivial")
    method = "search" if cx.size(1) <= 4096 else "linear"
    bad = []
    seen = set()
    for omega in omegas:
        if omega.values in seen:
            continue
        seen.add(omega.values)
        rec = phi4(ext, omega, method=method, cap=cap)
        if not (rec.trivial and rec.report.ok):
            bad.append(list(omega.values))
    probe.add("every class record is trivial", not bad, bad[:5] or None)
    probe.note(f"{len(seen)} distinct omegas, detection by {method}")
    out.probes.append(probe)

    # (d)
    probe = ValidationReport("(d) phi6 on z1_pics gives coboundaries")
    z1p = pics.z1_pics(action)
    probe.add("z1_pics is the singleton g -> [D_g]", z1p == [tuple(action.dg(g) for g in pa.group.elements())])
    bad = []
    for f in z1p:
        r = phi6(pa, f, action=action)
        if not r.report.ok:
            bad.append([action.monoid.to_json(x) for x in f])
    probe.add("omega = delta^2(rho^-1) with rho = 1", not bad, bad or None)
    out.probes.append(probe)
    return out
