"""Finite inverse semigroups and the pseudogroup property.

The natural order is computed table-side as s <= t iff s = t(s^-1 s), which
matches the idempotent-restriction definition. A compatible subset is a
pairwise compatible one; since binary joins of compatible pairs stay
compatible with common partners (this is one of the checked conditions),
closure under binary compatible joins gives closure under all finite
compatible joins, which on a finite carrier is all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import order
from .errors import InputError, PreconditionError


class FiniteInverseSemigroup:
    """Multiplication table plus inverse map on indices 0..n-1.

    ``keys`` optionally records what each index stands for in an ambient
    structure (a quantale element, an arrow set); purely bookkeeping.
    """

    def __init__(self, mult_rows, inv_row, keys=None):
        mult_rows = tuple(tuple(row) for row in mult_rows)
        inv_row = tuple(inv_row)
        n = len(mult_rows)
        if any(len(r) != n for r in mult_rows):
            raise InputError("multiplication table is not square")
        if any(not 0 <= v < n for r in mult_rows for v in r):
            raise InputError("multiplication table entry out of range")
        if len(inv_row) != n or any(not 0 <= v < n for v in inv_row):
            raise InputError("inverse map is not total")
        self.n = n
        self._mult = mult_rows
        self._inv = inv_row
        self.keys = tuple(keys) if keys is not None else None

    def mult(self, s: int, t: int) -> int:
        return self._mult[s][t]

    def inv(self, s: int) -> int:
        return self._inv[s]

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in range(self.n) if self._mult[e][e] == e)

    @cached_property
    def idempotent_mask(self) -> int:
        return order.mask_of(self.idempotents)

    def is_idempotent(self, s: int) -> bool:
        return self._mult[s][s] == s

    def natural_leq(self, s: int, t: int) -> bool:
        return s == self._mult[t][self._mult[self._inv[s]][s]]

    @cached_property
    def up(self) -> tuple[int, ...]:
        """up[s] = mask of t with s <= t in the natural order."""
        n = self.n
        return tuple(order.mask_of(t for t in range(n) if self.natural_leq(s, t))
                     for s in range(n))

    @cached_property
    def down(self) -> tuple[int, ...]:
        return order.transpose(self.up)

    def compatible(self, s: int, t: int) -> bool:
        m = self.idempotent_mask
        return bool(m >> self._mult[self._inv[s]][t] & 1
                    and m >> self._mult[s][self._inv[t]] & 1)

    @cached_property
    def compatible_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((s, t) for s in range(self.n) for t in range(s + 1, self.n)
                     if self.compatible(s, t))

    def zero(self) -> int | None:
        """Least element in the natural order, if any."""
        return order.least_member((1 << self.n) - 1, self.up)

    def join(self, members) -> int | None:
        """Least upper bound in the natural order, scanned within S; None if absent."""
        members = list(members)
        if not members:
            return self.zero()
        return order.lub(members, self.up, (1 << self.n) - 1)

    def restricted_to(self, indices) -> "FiniteInverseSemigroup":
        """Subtable on the given indices; raises if not closed."""
        indices = list(indices)
        pos = {s: i for i, s in enumerate(indices)}
        rows = []
        for s in indices:
            row = []
            for t in indices:
                v = self._mult[s][t]
                if v not in pos:
                    raise InputError(f"subset not closed under product at ({s}, {t})")
                row.append(pos[v])
            rows.append(row)
        inv = []
        for s in indices:
            v = self._inv[s]
            if v not in pos:
                raise InputError(f"subset not closed under inverse at {s}")
            inv.append(pos[v])
        keys = [self.keys[s] for s in indices] if self.keys is not None else indices
        return FiniteInverseSemigroup(rows, inv, keys=keys)


@dataclass
class SemigroupReport:
    ok: bool
    failures: list[tuple[str, tuple[int, ...]]]


def verify_inverse_semigroup(s: FiniteInverseSemigroup) -> SemigroupReport:
    """Associativity, s s^-1 s = s, involutivity, commuting idempotents, and
    uniqueness of the recorded inverse. Least witness per failing law."""
    n = s.n
    mult = s.mult
    inv = s.inv
    failures: list[tuple[str, tuple[int, ...]]] = []

    def assoc():
        for a in range(n):
            for b in range(n):
                ab = mult(a, b)
                for c in range(n):
                    if mult(ab, c) != mult(a, mult(b, c)):
                        return (a, b, c)
        return None

    w = assoc()
    if w is not None:
        failures.append(("associativity", w))

    for a in range(n):
        if mult(mult(a, inv(a)), a) != a:
            failures.append(("regularity", (a,)))
            break
    for a in range(n):
        if inv(inv(a)) != a:
            failures.append(("inverse_involutive", (a,)))
            break

    ids = s.idempotents
    done = False
    for e in ids:
        for f in ids:
            if mult(e, f) != mult(f, e):
                failures.append(("idempotents_commute", (e, f)))
                done = True
                break
        if done:
            break

    def distinct_inverse():
        for a in range(n):
            for t in range(n):
                if t != inv(a) and mult(mult(a, t), a) == a and mult(mult(t, a), t) == t:
                    return (a, t)
        return None

    w = distinct_inverse()
    if w is not None:
        failures.append(("inverse_unique", w))

    return SemigroupReport(not failures, failures)


def pseudogroup_failure(s: FiniteInverseSemigroup) -> tuple[str, tuple[int, ...]] | None:
    """First obstruction to being a pseudogroup, or None.

    Checks: a zero exists and is absorbing (the empty compatible join and
    distributivity over it), every compatible pair has a join, binary joins
    of compatible pairs remain compatible with common partners, and
    multiplication distributes over binary compatible joins on both sides.
    """
    rep = verify_inverse_semigroup(s)
    if not rep.ok:
        raise PreconditionError(f"not an inverse semigroup: {rep.failures[0]}")

    z = s.zero()
    if z is None:
        return ("empty_join", ())
    for a in range(s.n):
        if s.mult(a, z) != z or s.mult(z, a) != z:
            return ("zero_absorption", (a,))

    joins: dict[tuple[int, int], int] = {}
    for t, u in s.compatible_pairs:
        j = s.join([t, u])
        if j is None:
            return ("compatible_join_missing", (t, u))
        joins[(t, u)] = j

    for (t, u), j in joins.items():
        for v in range(s.n):
            if s.compatible(t, v) and s.compatible(u, v) and not s.compatible(j, v):
                return ("compatibility_not_preserved", (t, u, v))

    for (t, u), j in joins.items():
        for a in range(s.n):
            lhs = s.mult(a, j)
            rhs = s.join([s.mult(a, t), s.mult(a, u)])
            if rhs is None or lhs != rhs:
                return ("left_distributivity", (a, t, u))
            lhs = s.mult(j, a)
            rhs = s.join([s.mult(t, a), s.mult(u, a)])
            if rhs is None or lhs != rhs:
                return ("right_distributivity", (a, t, u))
    return None


def is_pseudogroup(s: FiniteInverseSemigroup) -> bool:
    return pseudogroup_failure(s) is None


def natural_order_is_partial_order(s: FiniteInverseSemigroup) -> bool:
    return order.check_partial_order(s.up) is None


def symmetric_inverse_monoid(n: int) -> FiniteInverseSemigroup:
    """All partial bijections on an n-set; elements keyed by their graph as a
    tuple of (output, input) pairs."""
    elems: list[tuple[tuple[int, int], ...]] = []
    seen = set()

    def grow(pairs, used_out, used_in, start):
        key = tuple(sorted(pairs))
        if key not in seen:
            seen.add(key)
            elems.append(key)
        for z in range(n):
            if used_out >> z & 1:
                continue
            for y in range(start, n):
                if used_in >> y & 1:
                    continue
                grow(pairs + [(z, y)], used_out | 1 << z, used_in | 1 << y, 0)

    grow([], 0, 0, 0)
    elems.sort()
    index = {e: i for i, e in enumerate(elems)}

    rows = []
    for f in elems:
        fmap = {y: z for z, y in f}
        row = []
        for g in elems:
            comp = tuple(sorted((fmap[zg], yg) for zg, yg in g if zg in fmap))
            row.append(index[comp])
        rows.append(row)
    inv = [index[tuple(sorted((y, z) for z, y in f))] for f in elems]
    return FiniteInverseSemigroup(rows, inv, keys=elems)
