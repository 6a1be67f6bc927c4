"""Finite commutative unital rings as products of local factors.

Elements are plain ints: the position of the element in the canonical
(tuple-lexicographic) enumeration. `Ring.label` turns an index back into its
residue tuple and `Ring.element` goes the other way.

>>> r = build_ring({"factors": [{"kind": "zmod", "modulus": 2}, {"kind": "zmod", "modulus": 2}]})
>>> [r.label(e) for e in r.idempotents()]
[(0, 0), (0, 1), (1, 0), (1, 1)]
>>> gf4 = build_ring({"factors": [{"kind": "quotient", "p": 2, "poly": [1, 1, 1]}]})
>>> gf4.unit_group().order
3
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .abelian import AbelianStructure, decompose, factorize
from .report import ValidationReport

TABLE_LIMIT = 2048


class RingSpecError(ValueError):
    """Malformed ring description."""


class Factor:
    """A finite local ring Z/p^k or F_p[x]/(poly), with residues in canonical order."""

    kind: str
    size: int
    residues: list

    def __init__(self, kind, residues, add, mul, description):
        self.kind = kind
        self.residues = residues
        self.size = len(residues)
        self.index = {r: i for i, r in enumerate(residues)}
        self.add = add
        self.mul = mul
        self.description = description

    @classmethod
    def zmod(cls, modulus: int) -> "Factor":
        if not isinstance(modulus, int) or modulus <= 0:
            raise RingSpecError(f"modulus must be a positive integer, got {modulus!r}")
        if len(factorize(modulus)) != 1:
            raise RingSpecError(f"modulus {modulus} is not a prime power; split it into factors")
        n = modulus
        add = [[(a + b) % n for b in range(n)] for a in range(n)]
        mul = [[(a * b) % n for b in range(n)] for a in range(n)]
        return cls("zmod", list(range(n)), add, mul, {"kind": "zmod", "modulus": n})

    @classmethod
    def quotient(cls, p: int, poly: Sequence[int]) -> "Factor":
        if not isinstance(p, int) or len(factorize(p)) != 1 or factorize(p).get(p) != 1:
            raise RingSpecError(f"p must be prime, got {p!r}")
        poly = [int(c) % p for c in poly]
        if len(poly) < 2:
            raise RingSpecError("polynomial must have degree >= 1")
        if poly[-1] != 1:
            raise RingSpecError(f"polynomial {list(poly)} is not monic")
        d = len(poly) - 1
        residues = list(product(range(p), repeat=d))
        pos = {r: i for i, r in enumerate(residues)}

        def reduce(c: list[int]) -> tuple:
            c = c[:]
            for top in range(len(c) - 1, d - 1, -1):
                k = c[top] % p
                if k:
                    for i in range(d + 1):
                        c[top - d + i] = (c[top - d + i] - k * poly[i]) % p
            return tuple(x % p for x in c[:d])

        def times(a, b):
            c = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        c[i + j] += x * y
            return reduce(c)

        add = [[pos[tuple((x + y) % p for x, y in zip(a, b))] for b in residues] for a in residues]
        mul = [[pos[times(a, b)] for b in residues] for a in residues]
        f = cls("quotient", residues, add, mul, {"kind": "quotient", "p": p, "poly": list(poly)})
        f.irreducible = _is_irreducible(p, poly)
        return f

    def encode(self, residue):
        if self.kind == "quotient":
            residue = tuple(residue)
        return self.index[residue]


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = a[:]
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        k = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - k * c) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def _is_irreducible(p: int, poly: Sequence[int]) -> bool:
    d = len(poly) - 1
    for deg in range(1, d // 2 + 1):
        for lower in product(range(p), repeat=deg):
            if not any(_poly_mod(list(poly), list(lower) + [1], p)):
                return False
    return True


class Ring:
    """A finite commutative unital ring on elements 0..size-1.

    Built either from local factors (`build_ring`) or from explicit tables
    (`Ring.from_tables`, used for tensor products and corners).
    """

    def __init__(self, size, add, mul, neg, zero, one, labels, factors=None, description=None, tables=None):
        self.size = size
        self.zero = zero
        self.one = one
        self.labels = labels
        self.factors = factors
        self.description = description
        self._label_index = None
        self.notes: list[str] = []
        self._add_fn, self._mul_fn, self._neg_fn = add, mul, neg
        self.add_table = self.mul_table = None
        if size <= TABLE_LIMIT:
            if tables is not None:
                self.add_table, self.mul_table = tables
            else:
                self.add_table = [[add(a, b) for b in range(size)] for a in range(size)]
                self.mul_table = [[mul(a, b) for b in range(size)] for a in range(size)]
            at, mt = self.add_table, self.mul_table
            self.add = lambda a, b: at[a][b]
            self.mul = lambda a, b: mt[a][b]
        else:
            self.add = add
            self.mul = mul
        negs = [neg(a) for a in range(size)]
        self.neg = negs.__getitem__
        self._units: dict[int, "UnitGroup"] = {}
        self._ideals: dict[int, "Ideal"] = {}

    @classmethod
    def from_factors(cls, factors: Sequence[Factor]) -> "Ring":
        if not factors:
            raise RingSpecError("factor list must be nonempty")
        sizes = [f.size for f in factors]
        size = prod(sizes)
        strides = [prod(sizes[i + 1:]) for i in range(len(sizes))]

        def split(a):
            return [(a // s) % n for s, n in zip(strides, sizes)]

        def join(parts):
            return sum(x * s for x, s in zip(parts, strides))

        def add(a, b):
            return join([f.add[x][y] for f, x, y in zip(factors, split(a), split(b))])

        def mul(a, b):
            return join([f.mul[x][y] for f, x, y in zip(factors, split(a), split(b))])

        def neg(a):
            return join([f.add[x].index(0) for f, x in zip(factors, split(a))])

        def label(a):
            return tuple(f.residues[x] for f, x in zip(factors, split(a)))

        tables = None
        if size <= TABLE_LIMIT:
            digits = [np.array([split(a)[i] for a in range(size)]) for i in range(len(factors))]
            tab_add = np.zeros((size, size), dtype=np.int64)
            tab_mul = np.zeros((size, size), dtype=np.int64)
            for f, d, s in zip(factors, digits, strides):
                fa, fm = np.array(f.add), np.array(f.mul)
                tab_add += fa[np.ix_(d, d)] * s
                tab_mul += fm[np.ix_(d, d)] * s
            tables = (tab_add.tolist(), tab_mul.tolist())
        one = join([1 if f.kind == "zmod" else f.index[(1,) + (0,) * (len(f.residues[0]) - 1)] for f in factors])
        ring = cls(size, add, mul, neg, 0, one, label, factors=list(factors),
                   description={"factors": [f.description for f in factors]}, tables=tables)
        ring._split, ring._join = split, join
        for i, f in enumerate(factors):
            if f.kind == "quotient" and not f.irreducible:
                ring.notes.append(f"factor {i}: polynomial {f.description['poly']} is reducible")
        return ring

    @classmethod
    def from_tables(cls, add_table, mul_table, zero, one, labels: Sequence, description=None) -> "Ring":
        n = len(add_table)
        neg = [next(b for b in range(n) if add_table[a][b] == zero) for a in range(n)]
        lab = list(labels)
        return cls(n, lambda a, b: add_table[a][b], lambda a, b: mul_table[a][b],
                   neg.__getitem__, zero, one, lab.__getitem__, description=description)

    # element conversion
    def label(self, a: int):
        return self.labels(a)

    def element(self, label) -> int:
        if self.factors is not None:
            label = list(label)
            if len(label) != len(self.factors):
                raise RingSpecError(f"element {label} has wrong number of coordinates")
            try:
                return self._join([f.encode(r) for f, r in zip(self.factors, label)])
            except (KeyError, TypeError):
                raise RingSpecError(f"element {label} has non-canonical residues") from None
        if self._label_index is None:
            self._label_index = {self.label(a): a for a in range(self.size)}
        return self._label_index[_freeze(label)]

    def to_json(self, a: int):
        return _thaw(self.label(a))

    # arithmetic helpers
    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def sum(self, items: Iterable[int]) -> int:
        s = self.zero
        for x in items:
            s = self.add(s, x)
        return s

    def product(self, items: Iterable[int]) -> int:
        s = self.one
        for x in items:
            s = self.mul(s, x)
        return s

    def elements(self) -> range:
        return range(self.size)

    def is_idempotent(self, e: int) -> bool:
        return self.mul(e, e) == e

    def idempotents(self) -> list[int]:
        return self._idempotents

    @cached_property
    def _idempotents(self) -> list[int]:
        return [e for e in range(self.size) if self.mul(e, e) == e]

    def ideal(self, e: int) -> "Ideal":
        if e not in self._ideals:
            if not self.is_idempotent(e):
                raise ValueError(f"{self.label(e)} is not idempotent")
            self._ideals[e] = Ideal(self, e)
        return self._ideals[e]

    def unit_group(self, e: int | None = None) -> "UnitGroup":
        e = self.one if e is None else e
        if e not in self._units:
            self._units[e] = UnitGroup(self.ideal(e))
        return self._units[e]

    def inverse(self, u: int, e: int | None = None) -> int:
        """Inverse of u inside the ideal generated by e (default: the whole ring)."""
        return self.unit_group(e).inverse[u]

    def leq(self, e: int, f: int) -> bool:
        """Order on idempotents: e <= f iff ef = e."""
        return self.mul(e, f) == e

    def corner(self, e: int) -> tuple["Ring", dict[int, int]]:
        """The ring Re with identity e, and the inclusion Re -> R as a dict."""
        ideal = self.ideal(e)
        if self.factors is not None:
            keep = [i for i, x in enumerate(self._split(e)) if x]
            if not keep:
                zero = Ring.from_tables([[0]], [[0]], 0, 0, [()], description={"factors": []})
                return zero, {0: self.zero}
            sub = Ring.from_factors([self.factors[i] for i in keep])
            inc = {}
            for a in range(sub.size):
                parts = [0] * len(self.factors)
                for i, x in zip(keep, sub._split(a)):
                    parts[i] = x
                inc[a] = self._join(parts)
            return sub, inc
        elems = ideal.elements
        pos = {x: i for i, x in enumerate(elems)}
        add = [[pos[self.add(x, y)] for y in elems] for x in elems]
        mul = [[pos[self.mul(x, y)] for y in elems] for x in elems]
        sub = Ring.from_tables(add, mul, pos[self.zero], pos[e], [self.label(x) for x in elems])
        return sub, dict(enumerate(elems))

    def check_axioms(self, samples: int = 2000, seed: int = 0) -> ValidationReport:
        """Commutativity, associativity, distributivity and unitality; exhaustive when small."""
        report = ValidationReport("ring axioms")
        if self.size ** 3 <= 10**5:
            triples = product(range(self.size), repeat=3)
            report.note("exhaustive")
        else:
            rng = random.Random(seed)
            triples = [tuple(rng.randrange(self.size) for _ in range(3)) for _ in range(samples)]
            report.note(f"sampled {samples} triples")
        bad = {}
        for a, b, c in triples:
            if "commutative" not in bad and self.mul(a, b) != self.mul(b, a):
                bad["commutative"] = (a, b)
            if "associative" not in bad and self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                bad["associative"] = (a, b, c)
            if "additive associative" not in bad and self.add(self.add(a, b), c) != self.add(a, self.add(b, c)):
                bad["additive associative"] = (a, b, c)
            if "distributive" not in bad and self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)):
                bad["distributive"] = (a, b, c)
            if "unital" not in bad and self.mul(self.one, a) != a:
                bad["unital"] = (a,)
        for name in ("commutative", "associative", "additive associative", "distributive", "unital"):
            w = bad.get(name)
            report.add(name, w is None, None if w is None else [self.to_json(x) for x in w])
        return report

    def __repr__(self):
        return f"Ring(size={self.size}, description={self.description})"


def _freeze(x):
    if isinstance(x, (list, tuple)):
        return tuple(_freeze(y) for y in x)
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(y) for y in x]
    return x


class Ideal:
    """The ideal Re generated by an idempotent e; e is its identity."""

    def __init__(self, ring: Ring, e: int):
        self.ring = ring
        self.identity = e
        self.elements = sorted({ring.mul(r, e) for r in ring.elements()})
        self.members = frozenset(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.elements)

    def additive_generators(self) -> list[int]:
        """A small generating set of the additive group, chosen greedily."""
        ring = self.ring
        span = {ring.zero}
        gens: list[int] = []
        for x in self.elements:
            if x in span:
                continue
            gens.append(x)
            frontier = list(span)
            while frontier:
                nxt = []
                for y in frontier:
                    for g in gens:
                        z = ring.add(y, g)
                        if z not in span:
                            span.add(z)
                            nxt.append(z)
                frontier = nxt
        return gens


class UnitGroup:
    """Units of an ideal Re, listed identity first then by element index."""

    def __init__(self, ideal: Ideal):
        ring = ideal.ring
        e = ideal.identity
        self.ideal = ideal
        self.identity = e
        inverse = {}
        for u in ideal.elements:
            if u in inverse:
                continue
            for v in ideal.elements:
                if ring.mul(u, v) == e:
                    inverse[u] = v
                    inverse[v] = u
                    break
        self.inverse = inverse
        self.elements = [e] + sorted(u for u in inverse if u != e) if inverse else []
        self.members = frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, u: int) -> bool:
        return u in self.members

    @cached_property
    def structure(self) -> AbelianStructure:
        return decompose(self.elements, self.ideal.ring.mul, self.identity)

    @property
    def elementary_divisors(self) -> list[int]:
        return self.structure.orders


def build_ring(spec: Mapping) -> Ring:
    """Build a ring from {"factors": [{"kind": "zmod", "modulus": 4} | {"kind": "quotient", "p": 2, "poly": [1, 1, 1]}]}."""
    if not isinstance(spec, Mapping) or "factors" not in spec:
        raise RingSpecError("ring description needs a 'factors' list")
    factors = []
    for i, f in enumerate(spec["factors"]):
        if not isinstance(f, Mapping):
            raise RingSpecError(f"factor {i} is not an object")
        kind = f.get("kind")
        try:
            if kind == "zmod":
                factors.append(Factor.zmod(f["modulus"]))
            elif kind == "quotient":
                factors.append(Factor.quotient(f["p"], f["poly"]))
            else:
                raise RingSpecError(f"factor {i}: unknown kind {kind!r}")
        except KeyError as exc:
            raise RingSpecError(f"factor {i}: missing field {exc}") from None
    ring = Ring.from_factors(factors)
    report = ring.check_axioms(samples=500)
    if not report.ok:
        raise RingSpecError(f"ring axioms fail: {report.failures()}")
    return ring


def zmod(n: int) -> dict:
    return {"kind": "zmod", "modulus": n}


def quotient(p: int, poly: Sequence[int]) -> dict:
    return {"kind": "quotient", "p": p, "poly": list(poly)}


@dataclass
class RingMorphism:
    """A map between carriers (ring, idempotent) given by its value table."""

    source: Ring
    source_unit: int
    target: Ring
    target_unit: int
    table: dict[int, int] = field(repr=False)
    bijective: bool = False

    def __call__(self, x: int) -> int:
        return self.table[x]


def check_morphism(m: RingMorphism) -> ValidationReport:
    src, dst = m.source, m.target
    dom = src.ideal(m.source_unit)
    cod = dst.ideal(m.target_unit)
    missing = [x for x in dom.elements if x not in m.table]
    if missing:
        raise ValueError(f"morphism table misses {len(missing)} source elements, e.g. {src.to_json(missing[0])}")
    report = ValidationReport("ring morphism")
    outside = next((x for x in dom.elements if m.table[x] not in cod), None)
    report.add("lands in target", outside is None, None if outside is None else src.to_json(outside))
    add_bad = mul_bad = None
    for x in dom.elements:
        for y in dom.elements:
            if add_bad is None and m.table[src.add(x, y)] != dst.add(m.table[x], m.table[y]):
                add_bad = (x, y)
            if mul_bad is None and m.table[src.mul(x, y)] != dst.mul(m.table[x], m.table[y]):
                mul_bad = (x, y)
    pair = lambda w: None if w is None else [src.to_json(w[0]), src.to_json(w[1])]
    report.add("additive", add_bad is None, pair(add_bad))
    report.add("multiplicative", mul_bad is None, pair(mul_bad))
    unital = m.table[m.source_unit] == m.target_unit
    report.add("unital", unital, None if unital else src.to_json(m.source_unit))
    if m.bijective:
        image = {m.table[x] for x in dom.elements}
        report.add("bijective", image == cod.members and len(image) == len(dom),
                   None if image == cod.members else f"image size {len(image)} of {len(cod)}")
    return report
