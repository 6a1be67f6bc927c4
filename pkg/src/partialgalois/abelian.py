"""Finite abelian groups: integer Smith normal form and structure by order analysis.

>>> smith_normal_form([[2, 4], [6, 8]])[0]
[[2, 0], [0, 4]]
>>> elementary_divisors_of([6, 4])
[2, 4, 3]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Callable, Hashable, Sequence


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix: Sequence[Sequence[int]]):
    """Return (D, U, V) with U * A * V = D, D diagonal, d1 | d2 | ... and U, V unimodular."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        if q:
            ra, rs = a[dst], a[src]
            for k in range(n):
                if rs[k]:
                    ra[k] += q * rs[k]
            ua, us = u[dst], u[src]
            for k in range(m):
                if us[k]:
                    ua[k] += q * us[k]

    def add_col(dst, src, q):
        if q:
            for row in a:
                if row[src]:
                    row[dst] += q * row[src]
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        clean = False
            if not clean:
                best = None
                for i in range(t + 1, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, None)
                for j in range(t + 1, n):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), None, j)
                if best[1] is not None:
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[2])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def diagonal(d: Sequence[Sequence[int]]) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def matmul(a, b):
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def inverse_unimodular(u: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer inverse of a unimodular matrix (via its own Smith form)."""
    n = len(u)
    d, p, q = smith_normal_form(u)
    # p u q = I (diagonal of units, normalized positive), so u^-1 = q p
    assert all(d[i][i] == 1 for i in range(n))
    return matmul(q, p)


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def elementary_divisors_of(invariants: Sequence[int]) -> list[int]:
    """Split cyclic orders into prime powers, grouped by prime then ascending."""
    powers: dict[int, list[int]] = {}
    for d in invariants:
        for p, k in factorize(d).items():
            powers.setdefault(p, []).append(p**k)
    return [q for p in sorted(powers) for q in sorted(powers[p])]


@dataclass
class AbelianStructure:
    """A finite abelian group with a basis of prime-power order generators.

    `log` maps each element to its exponent vector on `generators`.
    """

    identity: Hashable
    generators: list
    orders: list[int]
    log: dict = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.orders)

    @property
    def elementary_divisors(self) -> list[int]:
        return list(self.orders)


def _span(gens, mul, identity):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def decompose(elements: Sequence, mul: Callable, identity) -> AbelianStructure:
    """Decompose a finite abelian group given by its elements into prime-power cyclic factors."""
    elements = list(elements)
    order_of = {}
    for x in elements:
        k, y = 1, x
        while y != identity:
            y = mul(y, x)
            k += 1
        order_of[x] = k
    size = len(elements)
    gens: list = []
    orders: list[int] = []
    for p in sorted(factorize(size)):
        part = [x for x in elements if not factorize(order_of[x]).keys() - {p}]
        # partition from |P[p^k]| = p^(sum min(lambda_i, k))
        counts = []
        k = 0
        while True:
            c = sum(1 for x in part if (p**k) % order_of[x] == 0)
            counts.append(c)
            if c == len(part):
                break
            k += 1
        exps = [round(_ilog(c, p)) for c in counts]
        lam = []
        for k in range(1, len(exps)):
            # number of parts >= k
            lam.append(exps[k] - exps[k - 1])
        parts = []
        for k in range(len(lam)):
            nxt = lam[k + 1] if k + 1 < len(lam) else 0
            parts += [k + 1] * (lam[k] - nxt)
        parts.sort(reverse=True)
        basis = _pick_basis(part, [p**e for e in parts], order_of, mul, identity)
        for g, e in zip(basis, parts):
            gens.append(g)
            orders.append(p**e)
    # order generators by prime then ascending order, matching elementary_divisors_of
    pairs = sorted(zip(gens, orders), key=lambda go: (min(factorize(go[1])), go[1]))
    gens = [g for g, _ in pairs]
    orders = [o for _, o in pairs]
    log = {}
    for exps in product(*(range(o) for o in orders)):
        x = identity
        for g, e in zip(gens, exps):
            for _ in range(e):
                x = mul(x, g)
        log[x] = exps
    if len(log) != size:
        raise RuntimeError("abelian decomposition failed; group may be non-abelian")
    return AbelianStructure(identity, gens, orders, log)


def _ilog(c: int, p: int) -> int:
    e = 0
    while c > 1:
        c //= p
        e += 1
    return e


def _pick_basis(part, wanted, order_of, mul, identity):
    def search(chosen, span):
        i = len(chosen)
        if i == len(wanted):
            return chosen
        for x in part:
            if order_of[x] != wanted[i] or x in span:
                continue
            new = _span(list(chosen) + [x], mul, identity)
            if len(new) == len(span) * wanted[i]:
                found = search(chosen + [x], new)
                if found is not None:
                    return found
        return None

    result = search([], {identity})
    if result is None:
        raise RuntimeError("no basis found")
    return result


@dataclass(frozen=True)
class Hom:
    """Homomorphism Z^n/a -> Z^m/b given by an integer matrix (m x n)."""

    source: tuple[int, ...]
    target: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for j, a in enumerate(self.source):
            for i, b in enumerate(self.target):
                if (self.matrix[i][j] * a) % b:
                    raise ValueError("matrix does not define a homomorphism")


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Basis (as columns) of the integer lattice spanned by `vectors` in Z^dim."""
    if not vectors:
        return []
    cols = [list(c) for c in zip(*vectors)]  # dim x k matrix, columns are vectors
    d, u, v = smith_normal_form(cols)
    uinv = inverse_unimodular(u)
    basis = []
    for i, x in enumerate(diagonal(d)):
        if x:
            basis.append([uinv[r][i] * x for r in range(dim)])
    return basis


def solve_in_basis(basis: Sequence[Sequence[int]], vector: Sequence[int]) -> list[int]:
    """Integer coordinates of `vector` on a lattice basis (raises if not in the lattice)."""
    dim = len(vector)
    cols = [[b[r] for b in basis] for r in range(dim)]
    d, u, v = smith_normal_form(cols)
    rhs = [sum(u[i][k] * vector[k] for k in range(dim)) for i in range(dim)]
    r = len(basis)
    y = []
    for i in range(r):
        if d[i][i] == 0 or rhs[i] % d[i][i]:
            raise ValueError("vector not in lattice")
        y.append(rhs[i] // d[i][i])
    if any(rhs[i] for i in range(r, dim)):
        raise ValueError("vector not in lattice")
    return [sum(v[j][i] * y[i] for i in range(r)) for j in range(r)]


def kernel_lattice(hom: Hom) -> list[list[int]]:
    """Spanning vectors of {x in Z^n : M x in b Z^m}."""
    n, m = len(hom.source), len(hom.target)
    if m == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    big = [list(hom.matrix[i]) + [hom.target[i] if k == i else 0 for k in range(m)] for i in range(m)]
    d, u, v = smith_normal_form(big)
    rank = sum(1 for x in diagonal(d) if x)
    return [[v[r][c] for r in range(n)] for c in range(rank, n + m)]


def quotient_invariants(outer: Sequence[Sequence[int]], inner: Sequence[Sequence[int]], dim: int):
    """Invariant factors of L/N for lattices N <= L in Z^dim (N of full rank in L).

    Returns (invariants, lift) where lift(i) gives a vector of L generating the i-th cyclic factor.
    """
    basis = lattice_basis(outer, dim)
    if not basis:
        return [], []
    coords = [solve_in_basis(basis, w) for w in inner]
    r = len(basis)
    rel = [[c[i] for c in coords] for i in range(r)]  # r x k
    if not coords:
        raise ValueError("inner lattice must have full rank")
    d, u, v = smith_normal_form(rel)
    diag = diagonal(d) + [0] * (r - min(r, len(coords)))
    if any(x == 0 for x in diag[:r]):
        raise ValueError("quotient is infinite")
    uinv = inverse_unimodular(u)
    invariants, lifts = [], []
    for i in range(r):
        if diag[i] != 1:
            invariants.append(diag[i])
            coeff = [uinv[k][i] for k in range(r)]
            lifts.append([sum(coeff[k] * basis[k][t] for k in range(r)) for t in range(dim)])
    return invariants, lifts


def lattice_index(vectors: Sequence[Sequence[int]], dim: int) -> int:
    """Index of the span of `vectors` in Z^dim (must be full rank)."""
    if dim == 0:
        return 1
    cols = [list(c) for c in zip(*vectors)] if vectors else [[] for _ in range(dim)]
    if not vectors:
        raise ValueError("lattice not of full rank")
    d, _, _ = smith_normal_form(cols)
    diag = diagonal(d)
    if len(diag) < dim or any(x == 0 for x in diag):
        raise ValueError("lattice not of full rank")
    return prod(diag)


def solve_integer(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """Some integer x with A x = b, or None when there is none."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if n == 0:
        return [] if not any(rhs) else None
    d, u, v = smith_normal_form(matrix)
    c = [sum(u[i][k] * rhs[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        s = d[i][i] if i < n else 0
        if s == 0:
            if c[i]:
                return None
        elif c[i] % s:
            return None
        else:
            y[i] = c[i] // s
    return [sum(v[j][i] * y[i] for i in range(n)) for j in range(n)]
