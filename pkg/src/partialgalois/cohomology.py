"""Partial group cohomology with values in the ring of a partial action.

An n-cochain takes (g1, ..., gn) to a unit of the ideal cut by
1_{g1} 1_{g1 g2} ... 1_{g1...gn}. Tuples are indexed as base-|G| numbers, so
`Cochain.values[i]` belongs to the i-th tuple in lexicographic order.

Cochains are ordered "identity first": values compare by their position in
the unit list of their cut ideal, which starts with the ideal's identity.
Class representatives and search witnesses are the least in this order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Iterator, Sequence

from . import abelian
from .action import PartialAction
from .config import CapExceeded, require_within


@dataclass(frozen=True)
class Cochain:
    degree: int
    values: tuple[int, ...]
    group_order: int = field(compare=False, default=1)

    def __call__(self, *gs: int) -> int:
        if len(gs) != self.degree:
            raise ValueError(f"expected {self.degree} arguments")
        i = 0
        for g in gs:
            i = i * self.group_order + g
        return self.values[i]


class CochainError(ValueError):
    pass


@dataclass
class Degree:
    """Per-degree data: tuples, cut idempotents, unit groups, face maps into degree-1 cochains."""

    n: int
    tuples: list[tuple[int, ...]]
    cuts: list[int]
    units: list
    faces: list[tuple[int, ...]] = field(default_factory=list)
    first: list[int] = field(default_factory=list)

    @cached_property
    def rank(self) -> list[dict[int, int]]:
        return [{u: i for i, u in enumerate(ug.elements)} for ug in self.units]

    @property
    def size(self) -> int:
        return prod(ug.order for ug in self.units)


class CochainComplex:
    def __init__(self, pa: PartialAction):
        self.pa = pa
        self.ring = pa.ring
        self.group = pa.group
        self._degrees: dict[int, Degree] = {}
        self._linear: dict[int, tuple] = {}

    def degree(self, n: int) -> Degree:
        if n not in self._degrees:
            grp, ring = self.group, self.ring
            tuples = grp.tuples(n)
            cuts = [self.pa.cut(t) for t in tuples]
            units = [ring.unit_group(e) for e in cuts]
            d = Degree(n, tuples, cuts, units)
            if n >= 1:
                m = grp.order
                for t in tuples:
                    faces = [_index(t[1:], m)]
                    for i in range(n - 1):
                        merged = t[:i] + (grp.mul(t[i], t[i + 1]),) + t[i + 2:]
                        faces.append(_index(merged, m))
                    faces.append(_index(t[:-1], m))
                    d.faces.append(tuple(faces))
                    d.first.append(t[0])
            self._degrees[n] = d
        return self._degrees[n]

    # group structure
    def identity(self, n: int) -> Cochain:
        return Cochain(n, tuple(self.degree(n).cuts), self.group.order)

    def make(self, n: int, values: Sequence[int]) -> Cochain:
        f = Cochain(n, tuple(values), self.group.order)
        self.validate(f)
        return f

    def from_function(self, n: int, fn) -> Cochain:
        return self.make(n, [fn(*t) for t in self.degree(n).tuples])

    def validate(self, f: Cochain) -> None:
        d = self.degree(f.degree)
        if len(f.values) != len(d.tuples):
            raise CochainError(f"degree-{f.degree} cochain needs {len(d.tuples)} values")
        for t, u, ug in zip(d.tuples, f.values, d.units):
            if u not in ug:
                raise CochainError(f"value at {list(t)} is not a unit of its cut ideal")

    def mul(self, f: Cochain, g: Cochain) -> Cochain:
        m = self.ring.mul
        return Cochain(f.degree, tuple(m(a, b) for a, b in zip(f.values, g.values)), f.group_order)

    def inverse(self, f: Cochain) -> Cochain:
        d = self.degree(f.degree)
        return Cochain(f.degree, tuple(ug.inverse[u] for u, ug in zip(f.values, d.units)), f.group_order)

    def power(self, f: Cochain, k: int) -> Cochain:
        out = self.identity(f.degree)
        base = f if k >= 0 else self.inverse(f)
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out

    def key(self, f: Cochain) -> tuple[int, ...]:
        rank = self.degree(f.degree).rank
        return tuple(r[u] for r, u in zip(rank, f.values))

    def size(self, n: int) -> int:
        return self.degree(n).size

    def enumerate(self, n: int, cap: int | None = None) -> Iterator[Cochain]:
        """All n-cochains in canonical order."""
        d = self.degree(n)
        require_within(d.size, cap, f"|C^{n}|")
        m = self.group.order
        for values in product(*(ug.elements for ug in d.units)):
            yield Cochain(n, values, m)

    def random(self, n: int, rng: random.Random) -> Cochain:
        d = self.degree(n)
        return Cochain(n, tuple(rng.choice(ug.elements) for ug in d.units), self.group.order)

    # coboundary
    def coboundary(self, f: Cochain) -> Cochain:
        n = f.degree
        src = self.degree(n)
        dst = self.degree(n + 1)
        mul = self.ring.mul
        act = self.pa.act_table
        vals = f.values
        inv = [ug.inverse[u] for u, ug in zip(vals, src.units)]
        out = []
        for faces, g1 in zip(dst.faces, dst.first):
            x = act[g1][vals[faces[0]]]
            for i in range(1, n + 2):
                j = faces[i]
                x = mul(x, inv[j] if i % 2 else vals[j])
            out.append(x)
        return Cochain(n + 1, tuple(out), f.group_order)

    def is_cocycle(self, f: Cochain) -> bool:
        return self.coboundary(f).values == tuple(self.degree(f.degree + 1).cuts)

    def coboundary_witness(self, f: Cochain, cap: int | None = None) -> Cochain | None:
        """First u in C^(n-1), canonical order, with delta(u) = f."""
        if f.degree == 0:
            raise ValueError("degree-0 cochains are never coboundaries")
        for u in self.enumerate(f.degree - 1, cap):
            if self.coboundary(u).values == f.values:
                return u
        return None

    def solve_coboundary(self, f: Cochain) -> Cochain | None:
        """Some u with delta(u) = f, found by solving the linearized system mod the unit orders."""
        if f.degree == 0:
            raise ValueError("degree-0 cochains are never coboundaries")
        n = f.degree - 1
        mat = self.coboundary_matrix(n)
        _, orders = self.coordinates(f.degree)
        k = len(self.coordinates(n)[0])
        if not orders:
            u = self.identity(n)
            return u if self.coboundary(u).values == f.values else None
        big = [row + [orders[i] if j == i else 0 for j in range(len(orders))] for i, row in enumerate(mat)]
        x = abelian.solve_integer(big, self.log(f))
        if x is None:
            return None
        u = self.exp(n, x[:k])
        return u if self.coboundary(u).values == f.values else None

    # linearization
    def coordinates(self, n: int):
        """Generators (tuple index, generator) and their orders for C^n as an abelian group."""
        if n not in self._linear:
            d = self.degree(n)
            gens, orders = [], []
            for t, ug in enumerate(d.units):
                st = ug.structure
                for g, o in zip(st.generators, st.orders):
                    gens.append((t, g))
                    orders.append(o)
            self._linear[n] = (gens, orders)
        return self._linear[n]

    def log(self, f: Cochain) -> list[int]:
        d = self.degree(f.degree)
        out: list[int] = []
        for u, ug in zip(f.values, d.units):
            out.extend(ug.structure.log[u])
        return out

    def exp(self, n: int, vector: Sequence[int]) -> Cochain:
        d = self.degree(n)
        gens, orders = self.coordinates(n)
        values = list(d.cuts)
        mul = self.ring.mul
        for (t, g), k, o in zip(gens, vector, orders):
            for _ in range(k % o):
                values[t] = mul(values[t], g)
        return Cochain(n, tuple(values), self.group.order)

    def coboundary_matrix(self, n: int) -> list[list[int]]:
        """Matrix of delta^n on generator coordinates (rows: C^(n+1) coordinates)."""
        gens, _ = self.coordinates(n)
        tgt, _ = self.coordinates(n + 1)
        cols = []
        ident = list(self.degree(n).cuts)
        for t, g in gens:
            values = ident[:]
            values[t] = g
            cols.append(self.log(self.coboundary(Cochain(n, tuple(values), self.group.order))))
        return [[cols[j][i] for j in range(len(gens))] for i in range(len(tgt))]


def _index(t: Sequence[int], m: int) -> int:
    i = 0
    for g in t:
        i = i * m + g
    return i


def cochain_complex(pa: PartialAction) -> CochainComplex:
    cx = pa.__dict__.get("_cochain_complex")
    if cx is None:
        cx = CochainComplex(pa)
        pa.__dict__["_cochain_complex"] = cx
    return cx


def coboundary(pa: PartialAction, f: Cochain) -> Cochain:
    cx = cochain_complex(pa)
    cx.validate(f)
    return cx.coboundary(f)


def is_cocycle(pa: PartialAction, f: Cochain) -> bool:
    cx = cochain_complex(pa)
    cx.validate(f)
    return cx.is_cocycle(f)


def is_coboundary(pa: PartialAction, f: Cochain, cap: int | None = None) -> Cochain | None:
    cx = cochain_complex(pa)
    cx.validate(f)
    return cx.coboundary_witness(f, cap)


@dataclass
class CohomologyGroup:
    degree: int
    z_order: int
    b_order: int
    h_order: int
    elementary_divisors: list[int]
    representatives: list[Cochain] | None
    method: str
    notes: list[str] = field(default_factory=list)


def _coset_enumeration(cx: CochainComplex, n: int, b_gens: list[Cochain], cap: int | None):
    """All elements of the subgroup of C^n generated by b_gens."""
    ident = cx.identity(n)
    seen = {ident.values: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in b_gens:
                y = cx.mul(x, g)
                if y.values not in seen:
                    seen[y.values] = y
                    nxt.append(y)
                    require_within(len(seen), cap, f"|B^{n}|")
        frontier = nxt
    return list(seen.values())


def cohomology_group(pa: PartialAction, n: int, oracle: bool = True, cap: int | None = None,
                     oracle_bound: int | None = None) -> CohomologyGroup:
    """Z^n, B^n, H^n by linearizing delta over unit-group generators.

    With `oracle` set, the brute-force enumeration is run too (when |C^n| and
    |C^(n-1)| fit under `oracle_bound`, default the cap) and must agree.
    """
    if n < 0:
        raise ValueError("degree must be >= 0")
    cx = cochain_complex(pa)
    notes: list[str] = []
    _, a = cx.coordinates(n)
    dim = len(a)
    a_order = prod(a)
    if dim == 0:
        z_order = b_order = 1
        invariants: list[int] = []
        lifts: list[list[int]] = []
        kernel: list[list[int]] = []
    else:
        _, b = cx.coordinates(n + 1)
        m = cx.coboundary_matrix(n)
        if b:
            kernel = abelian.kernel_lattice(abelian.Hom(tuple(a), tuple(b), tuple(map(tuple, m))))
        else:
            kernel = [[int(i == j) for j in range(dim)] for i in range(dim)]
        z_order = a_order // abelian.lattice_index(kernel, dim)
        inner = [[a[i] if k == i else 0 for k in range(dim)] for i in range(dim)]
        if n >= 1:
            prev = cx.coboundary_matrix(n - 1)
            inner += [list(col) for col in zip(*prev)] if prev and prev[0] else []
        b_order = a_order // abelian.lattice_index(inner, dim)
        invariants, lifts = abelian.quotient_invariants(kernel, inner, dim)
    h_order = z_order // b_order
    if prod(invariants) != h_order:
        raise RuntimeError("inconsistent cohomology computation")
    divisors = abelian.elementary_divisors_of(invariants)

    reps = None
    try:
        require_within(h_order * b_order, cap, f"|Z^{n}|")
        reps = _representatives(cx, n, invariants, lifts, cap)
    except CapExceeded as exc:
        notes.append(f"representatives skipped: {exc}")
    result = CohomologyGroup(n, z_order, b_order, h_order, divisors, reps, "linearized", notes)

    if oracle:
        bound = oracle_bound
        sizes = [cx.size(n)] + ([cx.size(n - 1)] if n else [])
        try:
            for s in sizes:
                require_within(s, bound, "oracle enumeration")
        except CapExceeded as exc:
            notes.append(f"oracle cross-check skipped: {exc}")
        else:
            brute = bruteforce_oracle(pa, n, cap=bound)
            same = (brute.z_order, brute.b_order, brute.h_order, brute.elementary_divisors) == (
                z_order, b_order, h_order, divisors)
            if reps is not None:
                same = same and [r.values for r in brute.representatives] == [r.values for r in reps]
            if not same:
                raise RuntimeError(f"linearized and oracle results disagree in degree {n}")
            notes.append("oracle cross-check: agree")
    return result


def _representatives(cx: CochainComplex, n: int, invariants, lifts, cap):
    if n == 0:
        boundary = [cx.identity(0)]
    else:
        gens, _ = cx.coordinates(n - 1)
        ident = list(cx.degree(n - 1).cuts)
        images = []
        for t, g in gens:
            values = ident[:]
            values[t] = g
            images.append(cx.coboundary(Cochain(n - 1, tuple(values), cx.group.order)))
        boundary = _coset_enumeration(cx, n, images, cap)
    classes = []
    for exps in product(*(range(d) for d in invariants)):
        vec = [0] * len(cx.coordinates(n)[1])
        for e, lift in zip(exps, lifts):
            vec = [v + e * x for v, x in zip(vec, lift)]
        z = cx.exp(n, vec)
        coset = [cx.mul(z, b) for b in boundary]
        classes.append(min(coset, key=cx.key))
    classes.sort(key=cx.key)
    return classes


def bruteforce_oracle(pa: PartialAction, n: int, cap: int | None = None) -> CohomologyGroup:
    """Literal enumeration of C^n and C^(n-1); cosets of B^n in Z^n."""
    cx = cochain_complex(pa)
    target = tuple(cx.degree(n + 1).cuts)
    cocycles = [f for f in cx.enumerate(n, cap) if cx.coboundary(f).values == target]
    if n == 0:
        boundary = {cx.identity(0).values: cx.identity(0)}
    else:
        boundary = {}
        for u in cx.enumerate(n - 1, cap):
            b = cx.coboundary(u)
            boundary.setdefault(b.values, b)
    bvals = list(boundary.values())
    cocycles.sort(key=cx.key)
    rep_of: dict[tuple, Cochain] = {}
    reps = []
    for z in cocycles:
        if z.values in rep_of:
            continue
        reps.append(z)
        for b in bvals:
            rep_of[cx.mul(z, b).values] = z
    if len(rep_of) != len(cocycles):
        raise RuntimeError("B^n is not contained in Z^n")

    def qmul(x, y):
        return rep_of[cx.mul(x, y).values]

    ident = rep_of[cx.identity(n).values]
    structure = abelian.decompose(reps, qmul, ident)
    return CohomologyGroup(n, len(cocycles), len(bvals), len(reps),
                           abelian.elementary_divisors_of(structure.orders), reps, "oracle")


def cochain_to_json(pa: PartialAction, f: Cochain) -> list[dict]:
    tuples = cochain_complex(pa).degree(f.degree).tuples
    return [{"args": list(t), "value": pa.ring.to_json(v)} for t, v in zip(tuples, f.values)]
