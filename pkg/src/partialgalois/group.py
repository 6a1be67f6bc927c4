"""Finite groups given by multiplication tables; element 0 is the identity."""

from __future__ import annotations

from itertools import product
from typing import Sequence


class GroupSpecError(ValueError):
    pass


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        n = len(table)
        self.order = n
        self.table = [list(row) for row in table]
        self.names = list(names) if names else [f"g{i}" for i in range(n)]
        self._validate()
        self.inverse = [self.table[g].index(0) for g in range(n)]

    def _validate(self):
        n = self.order
        if n == 0:
            raise GroupSpecError("group must be nonempty")
        full = set(range(n))
        for i, row in enumerate(self.table):
            if len(row) != n or set(row) != full:
                raise GroupSpecError(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise GroupSpecError(f"column {j} is not a permutation of 0..{n - 1}")
        if self.table[0] != list(range(n)) or [row[0] for row in self.table] != list(range(n)):
            raise GroupSpecError("element 0 must be the identity")
        t = self.table
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupSpecError(f"associativity fails at ({a}, {b}, {c})")

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def elements(self) -> range:
        return range(self.order)

    def tuples(self, n: int):
        """All n-tuples in lexicographic order (index = base-|G| number)."""
        return list(product(range(self.order), repeat=n))

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        names = ["1"] + [f"g^{k}" if k > 1 else "g" for k in range(1, n)]
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], names)

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], ["1"])

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        """Pairs (a, b) are indexed a * |H| + b."""
        m = h.order
        n = g.order * m
        table = [[g.table[x // m][y // m] * m + h.table[x % m][y % m] for y in range(n)] for x in range(n)]
        names = [f"({a},{b})" for a in g.names for b in h.names]
        return cls(table, names)

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table}

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"
