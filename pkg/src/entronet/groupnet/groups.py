"""Finite groups by multiplication table and finite abelian modules over them.

Group elements are indices 0..n-1 with the identity at index 0.  A module is
a product of cyclic groups Z/m_i; its elements are integer tuples reduced
mod the moduli, and the group acts through per-element automorphism
matrices.  Both structures are validated on construction.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

UElt = tuple[int, ...]


class GroupValidationError(ValueError):
    pass


class Group:
    def __init__(self, table, names: tuple[str, ...] | None = None, check: bool = True):
        tab = np.asarray(table, dtype=np.int64)
        if tab.ndim != 2 or tab.shape[0] != tab.shape[1]:
            raise GroupValidationError("multiplication table must be square")
        self.table = tab
        self.order = tab.shape[0]
        self.names = names or tuple(f"g{i}" for i in range(self.order))
        if check:
            self._check_axioms()
        self.inverse = self._inverses()

    def _check_axioms(self) -> None:
        n = self.order
        t = self.table
        if t.min() < 0 or t.max() >= n:
            raise GroupValidationError("table entries out of range")
        if not (np.array_equal(t[0, :], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
            raise GroupValidationError("index 0 is not an identity")
        # each row/column a permutation (cancellation)
        for i in range(n):
            if len(set(t[i, :].tolist())) != n or len(set(t[:, i].tolist())) != n:
                raise GroupValidationError(f"row or column {i} is not a permutation")
        if not np.array_equal(t[t, :], t[:, t]):
            raise GroupValidationError("multiplication is not associative")

    def _inverses(self) -> np.ndarray:
        inv = np.full(self.order, -1, dtype=np.int64)
        rows, cols = np.nonzero(self.table == 0)
        inv[rows] = cols
        if (inv < 0).any():
            raise GroupValidationError("missing inverses")
        return inv

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = self.mul(x, i)
                k += 1
            out.append(k)
        return tuple(out)

    def order_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for k in self.element_orders:
            prof[k] = prof.get(k, 0) + 1
        return prof

    def is_abelian(self) -> bool:
        return np.array_equal(self.table, self.table.T)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group(order={self.order})"

    # -- constructors -------------------------------------------------------

    @classmethod
    def cyclic(cls, n: int) -> "Group":
        if n < 1:
            raise GroupValidationError("cyclic group needs n >= 1")
        idx = np.arange(n)
        return cls((idx[:, None] + idx[None, :]) % n, names=tuple(str(i) for i in range(n)))

    @classmethod
    def direct_product(cls, g: "Group", h: "Group") -> "Group":
        n, m = g.order, h.order
        table = np.zeros((n * m, n * m), dtype=np.int64)
        for a in range(n):
            for b in range(m):
                for c in range(n):
                    for d in range(m):
                        table[a * m + b, c * m + d] = g.mul(a, c) * m + h.mul(b, d)
        names = tuple(f"({g.names[a]},{h.names[b]})" for a in range(n) for b in range(m))
        return cls(table, names=names)

    @classmethod
    def aff1_mod_p(cls, p: int) -> "Group":
        """Affine transformations x -> c*x + a of the field with p elements."""
        from ..scalars import is_prime

        if not is_prime(p):
            raise GroupValidationError(f"{p} is not prime")
        elems = [(0, 1)] + [(a, c) for c in range(1, p) for a in range(p) if (a, c) != (0, 1)]
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        table = np.zeros((n, n), dtype=np.int64)
        for i, (a1, c1) in enumerate(elems):
            for j, (a2, c2) in enumerate(elems):
                table[i, j] = index[((a1 + c1 * a2) % p, (c1 * c2) % p)]
        names = tuple(f"({a},{c})" for a, c in elems)
        return cls(table, names=names)

    @classmethod
    def from_table(cls, table) -> "Group":
        return cls(table)


def _reduce(u: UElt, moduli: tuple[int, ...]) -> UElt:
    return tuple(x % m for x, m in zip(u, moduli))


class GModule:
    """Finite abelian group prod Z/m_i with a G-action by automorphisms."""

    def __init__(self, group: Group, moduli, action: dict[int, list[list[int]]] | None = None,
                 check: bool = True):
        self.group = group
        self.moduli = tuple(int(m) for m in moduli)
        if any(m < 1 for m in self.moduli):
            raise GroupValidationError("moduli must be positive")
        self.rank = len(self.moduli)
        if action is None:
            eye = [[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)]
            action = {g: eye for g in group.elements()}
        self.action = {g: tuple(tuple(int(x) for x in row) for row in mat)
                       for g, mat in action.items()}
        if check:
            self._check_action()

    def _check_action(self) -> None:
        r = self.rank
        if set(self.action) != set(self.group.elements()):
            raise GroupValidationError("action table keys must be exactly the group elements")
        for g in self.group.elements():
            mat = self.action[g]
            if len(mat) != r or any(len(row) != r for row in mat):
                raise GroupValidationError("action matrix has wrong shape")
            # well-defined on each Z/m_i and invertible on the module
            for jcol, m_src in enumerate(self.moduli):
                for irow, m_dst in enumerate(self.moduli):
                    if (mat[irow][jcol] * m_src) % m_dst != 0:
                        raise GroupValidationError("action matrix not well-defined mod moduli")
        if self.action_matrix(0) != self._eye():
            raise GroupValidationError("identity must act trivially")
        for g in self.group.elements():
            for h in self.group.elements():
                gh = self.group.mul(g, h)
                for u in self._basis():
                    if self.act(gh, u) != self.act(g, self.act(h, u)):
                        raise GroupValidationError("action is not a homomorphism")
        for g in self.group.elements():
            if len({self.act(g, u) for u in self.elements()}) != self.size():
                raise GroupValidationError(f"element {g} does not act bijectively")

    def _eye(self):
        return tuple(tuple(1 if i == j else 0 for j in range(self.rank)) for i in range(self.rank))

    def _basis(self):
        for i in range(self.rank):
            yield tuple(1 if j == i else 0 for j in range(self.rank))

    def action_matrix(self, g: int):
        return self.action[g]

    def zero(self) -> UElt:
        return (0,) * self.rank

    def add(self, u: UElt, v: UElt) -> UElt:
        return _reduce(tuple(a + b for a, b in zip(u, v)), self.moduli)

    def neg(self, u: UElt) -> UElt:
        return _reduce(tuple(-a for a in u), self.moduli)

    def sub(self, u: UElt, v: UElt) -> UElt:
        return self.add(u, self.neg(v))

    def smul(self, k: int, u: UElt) -> UElt:
        return _reduce(tuple(k * a for a in u), self.moduli)

    def act(self, g: int, u: UElt) -> UElt:
        mat = self.action[g]
        return _reduce(
            tuple(sum(mat[i][j] * u[j] for j in range(self.rank)) for i in range(self.rank)),
            self.moduli,
        )

    def reduce(self, u) -> UElt:
        if len(u) != self.rank:
            raise GroupValidationError("element has wrong rank")
        return _reduce(tuple(int(x) for x in u), self.moduli)

    def elements(self):
        def rec(i: int, prefix: tuple[int, ...]):
            if i == self.rank:
                yield prefix
                return
            for x in range(self.moduli[i]):
                yield from rec(i + 1, prefix + (x,))

        yield from rec(0, ())

    def size(self) -> int:
        out = 1
        for m in self.moduli:
            out *= m
        return out

    def element_order(self, u: UElt) -> int:
        k, x = 1, u
        while any(x):
            x = self.add(x, u)
            k += 1
        return k

    @classmethod
    def trivial(cls, group: Group, moduli) -> "GModule":
        return cls(group, moduli)

    @classmethod
    def scaling_action(cls, group: Group, modulus: int, scalars: dict[int, int]) -> "GModule":
        """Rank-one module Z/m with each group element acting by a scalar."""
        action = {g: [[scalars[g] % modulus]] for g in group.elements()}
        return cls(group, (modulus,), action)
