"""Finite complete lattices.

Two realizations sit behind one interface: ``FiniteLattice`` stores the order
as a bit matrix and computes joins/meets on demand; ``PowersetLattice``
represents 2^k symbolically, with the element index being the subset mask
itself, so carriers like 2^(X x X) never materialize order tables.
"""

from __future__ import annotations

from collections.abc import Iterable

from . import config, order
from .errors import InputError


class Lattice:
    """Complete lattice on indices 0..n-1. join([]) = bottom, meet([]) = top."""

    n: int
    bottom: int
    top: int

    def leq(self, i: int, j: int) -> bool:
        raise NotImplementedError

    def join_pair(self, i: int, j: int) -> int:
        raise NotImplementedError

    def meet_pair(self, i: int, j: int) -> int:
        raise NotImplementedError

    def join(self, members: Iterable[int]) -> int:
        acc = self.bottom
        for i in members:
            acc = self.join_pair(acc, i)
        return acc

    def meet(self, members: Iterable[int]) -> int:
        acc = self.top
        for i in members:
            acc = self.meet_pair(acc, i)
        return acc

    def elements(self) -> range:
        return range(self.n)

    def atoms(self) -> tuple[int, ...]:
        bot = self.bottom
        out = []
        for i in range(self.n):
            if i == bot:
                continue
            if all(j == bot or j == i or not self.leq(j, i) for j in range(self.n)):
                out.append(i)
        return tuple(out)

    def atoms_below(self, i: int) -> tuple[int, ...]:
        return tuple(a for a in self.atoms() if self.leq(a, i))

    def is_atomic_boolean(self) -> bool:
        """True iff the lattice is order-isomorphic to the powerset of its atoms."""
        ats = self.atoms()
        if self.n != 1 << len(ats):
            return False
        seen = set()
        for i in range(self.n):
            below = self.atoms_below(i)
            if self.join(below) != i:
                return False
            seen.add(below)
        return len(seen) == self.n

    def is_frame(self) -> bool:
        """Binary meet-over-join distributivity; with completeness this is the
        full locale law on a finite carrier (the empty join is the bottom case,
        which holds in every lattice)."""
        w = self.frame_witness()
        return w is None

    def frame_witness(self) -> tuple[int, int, int] | None:
        for a in range(self.n):
            for b in range(self.n):
                for c in range(self.n):
                    lhs = self.meet_pair(a, self.join_pair(b, c))
                    rhs = self.join_pair(self.meet_pair(a, b), self.meet_pair(a, c))
                    if lhs != rhs:
                        return (a, b, c)
        return None


class FiniteLattice(Lattice):
    def __init__(self, up: tuple[int, ...], validate: bool = True,
                 limits: config.Limits | None = None):
        lim = config.get(limits)
        n = len(up)
        if n == 0:
            raise InputError("empty carrier")
        if n > lim.max_table_carrier:
            raise InputError(
                f"table-backed carrier of size {n} exceeds limit {lim.max_table_carrier}")
        self.n = n
        self.up = tuple(up)
        self.down = order.transpose(self.up)
        self._full = (1 << n) - 1
        if validate:
            bad = order.check_partial_order(self.up)
            if bad is not None:
                raise InputError(f"order is not a partial order: {bad[0]} fails at {bad[1]}")
        bot = order.least_member(self._full, self.up)
        top = order.least_member(self._full, self.down)
        if bot is None or top is None:
            raise InputError("order has no bottom or no top")
        self.bottom = bot
        self.top = top
        if validate:
            for i in range(n):
                for j in range(i, n):
                    if order.lub([i, j], self.up, self._full) is None:
                        raise InputError(f"elements {i},{j} have no join")
                    if order.lub([i, j], self.down, self._full) is None:
                        raise InputError(f"elements {i},{j} have no meet")

    @classmethod
    def from_leq(cls, n: int, leq, **kw) -> "FiniteLattice":
        up = tuple(order.mask_of(j for j in range(n) if leq(i, j)) for i in range(n))
        return cls(up, **kw)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], **kw) -> "FiniteLattice":
        """Build from the reflexive-transitive closure of the given i <= j pairs."""
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"order pair {(i, j)} out of range")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                row = up[i]
                for j in order.bits(row):
                    row |= up[j]
                if row != up[i]:
                    up[i] = row
                    changed = True
        return cls(tuple(up), **kw)

    @classmethod
    def chain(cls, n: int) -> "FiniteLattice":
        return cls.from_leq(n, lambda i, j: i <= j, validate=False)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def join_pair(self, i: int, j: int) -> int:
        k = order.least_member(self.up[i] & self.up[j], self.up)
        assert k is not None
        return k

    def meet_pair(self, i: int, j: int) -> int:
        k = order.least_member(self.down[i] & self.down[j], self.down)
        assert k is not None
        return k

    def atoms(self) -> tuple[int, ...]:
        bot_bit = 1 << self.bottom
        return tuple(i for i in range(self.n)
                     if i != self.bottom and self.down[i] == bot_bit | 1 << i)


class PowersetLattice(Lattice):
    """The lattice 2^width, elements being subset masks, ordered by inclusion."""

    def __init__(self, width: int):
        if width < 0:
            raise InputError("negative width")
        self.width = width
        self.n = 1 << width
        self.bottom = 0
        self.top = self.n - 1

    def leq(self, i: int, j: int) -> bool:
        return i & ~j == 0

    def join_pair(self, i: int, j: int) -> int:
        return i | j

    def meet_pair(self, i: int, j: int) -> int:
        return i & j

    def atoms(self) -> tuple[int, ...]:
        return tuple(1 << k for k in range(self.width))

    def atoms_below(self, i: int) -> tuple[int, ...]:
        return tuple(1 << k for k in order.bits(i))

    def is_atomic_boolean(self) -> bool:
        return True

    def is_frame(self) -> bool:
        # set algebra; agreement with the brute-force triple check is covered
        # by tests on small widths
        return True

    def frame_witness(self) -> None:
        return None
