"""Compatible ideals of a pseudogroup and the induced quantale.

A compatible ideal is a downward-closed subset closed under joins of
compatible subsets; it always contains the zero (the empty join). Ideals are
bitmasks over semigroup indices. The ideal lattice ordered by inclusion
carries a quantale structure: the product of two ideals is the least ideal
containing their pointwise product, the involution is pointwise, binary
meets are intersections, and the unit is the idempotent set.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config, order
from .errors import PreconditionError, ResourceLimitError, TheoremViolation
from .lattice import FiniteLattice
from .quantale import InvolutiveQuantale, TableQuantale
from .semigroup import FiniteInverseSemigroup, pseudogroup_failure


def is_compatible_ideal(s: FiniteInverseSemigroup, mask: int) -> bool:
    """Direct definition check: nonempty via zero, down-closed, join-closed."""
    z = s.zero()
    if z is None or not mask >> z & 1:
        return False
    for t in order.bits(mask):
        if s.down[t] & ~mask:
            return False
    for t, u in s.compatible_pairs:
        if mask >> t & 1 and mask >> u & 1:
            j = s.join([t, u])
            if j is None or not mask >> j & 1:
                return False
    return True


class _Closer:
    def __init__(self, s: FiniteInverseSemigroup):
        self.s = s
        z = s.zero()
        assert z is not None
        self.zero_bit = 1 << z
        # per element: the compatible partners with the join each pair makes
        self.partners: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            [] for _ in range(s.n))
        partners = [[] for _ in range(s.n)]
        for t, u in s.compatible_pairs:
            j = s.join([t, u])
            partners[t].append((u, 1 << j))
            partners[u].append((t, 1 << j))
        self.partners = tuple(tuple(p) for p in partners)
        self.down = s.down

    def close(self, mask: int) -> int:
        return self.extend(self.zero_bit, mask)

    def extend(self, closed: int, extra: int) -> int:
        # incremental: only elements newly joining the set are examined, for
        # their down-sets and their pair joins against everything present
        mask = closed | self.zero_bit
        todo = list(order.bits(extra & ~mask))
        mask |= extra
        while todo:
            t = todo.pop()
            fresh = self.down[t] & ~mask
            if fresh:
                mask |= fresh
                todo.extend(order.bits(fresh))
            for u, jbit in self.partners[t]:
                if mask >> u & 1 and not mask & jbit:
                    mask |= jbit
                    todo.append(jbit.bit_length() - 1)
        return mask


def principal_ideal(s: FiniteInverseSemigroup, elem: int) -> int:
    """The down-set of elem (always a compatible ideal), as a mask."""
    return s.down[elem]


@dataclass
class Completion:
    semigroup: FiniteInverseSemigroup
    ideals: tuple[int, ...]           # masks, ascending
    quantale: TableQuantale
    principal: tuple[int, ...]        # element -> ideal index of its down-set
    _index: dict[int, int]
    _closer: "_Closer"

    def index_of(self, mask: int) -> int:
        try:
            return self._index[mask]
        except KeyError:
            raise PreconditionError(f"mask {mask:#x} is not a compatible ideal")

    def generated_by(self, mask: int) -> int:
        """Index of the least compatible ideal containing the given elements."""
        return self._index[self._closer.close(mask)]

    def members(self, ideal_index: int) -> tuple[int, ...]:
        return tuple(order.bits(self.ideals[ideal_index]))

    @property
    def n(self) -> int:
        return len(self.ideals)


def compatible_ideals(s: FiniteInverseSemigroup,
                      limits: config.Limits | None = None) -> Completion:
    """Enumerate every compatible ideal and build the completion quantale.

    Enumeration closes the set of principal ideals under pairwise joins
    (union followed by ideal closure); every ideal is such a join. The map
    sending an element to its down-set is verified to be a homomorphism.
    """
    lim = config.get(limits)
    if s.n > lim.max_completion_elements:
        raise ResourceLimitError(
            f"ideal enumeration over {s.n} elements exceeds bound "
            f"{lim.max_completion_elements}")
    bad = pseudogroup_failure(s)
    if bad is not None:
        raise PreconditionError(f"not a pseudogroup: {bad[0]} at {bad[1]}")
    closer = _Closer(s)

    # every ideal is a join of principal ideals, and joining one generator at
    # a time reaches them all
    generators = sorted({closer.close(0)} | {closer.close(1 << t) for t in range(s.n)})
    known = set(generators)
    frontier = list(generators)
    while frontier:
        fresh = []
        for a in frontier:
            for g in generators:
                j = closer.extend(a, g)
                if j not in known:
                    known.add(j)
                    fresh.append(j)
                    if len(known) > lim.max_ideals:
                        raise ResourceLimitError(
                            f"more than {lim.max_ideals} compatible ideals")
        frontier = fresh

    ideals = tuple(sorted(known))
    index = {m: i for i, m in enumerate(ideals)}

    up = tuple(order.mask_of(j for j, mj in enumerate(ideals) if not mi & ~mj)
               for mi in ideals)
    lat = FiniteLattice(up, validate=False, limits=lim)

    mult_rows = []
    for mi in ideals:
        row = []
        for mj in ideals:
            prod = 0
            for t in order.bits(mi):
                mr = s._mult[t]
                for u in order.bits(mj):
                    prod |= 1 << mr[u]
            row.append(index[closer.close(prod)])
        mult_rows.append(row)

    inv_row = []
    for mi in ideals:
        im = 0
        for t in order.bits(mi):
            im |= 1 << s.inv(t)
        im = closer.close(im)
        inv_row.append(index[im])

    emask = closer.close(s.idempotent_mask)
    if emask != s.idempotent_mask:
        raise TheoremViolation("idempotent_set_is_ideal", emask)
    quantale = TableQuantale(lat, mult_rows, inv_row, unit=index[emask])

    principal = tuple(index[s.down[t]] for t in range(s.n))
    comp = Completion(s, ideals, quantale, principal, index, closer)
    _verify_principal_embedding(comp)
    return comp


def _verify_principal_embedding(comp: Completion) -> None:
    """The down-set map preserves products, inverses and compatible joins."""
    s = comp.semigroup
    q = comp.quantale
    pr = comp.principal
    for a in range(s.n):
        for b in range(s.n):
            if pr[s.mult(a, b)] != q.mult(pr[a], pr[b]):
                raise TheoremViolation("principal_embedding_mult", (a, b))
    for a in range(s.n):
        if pr[s.inv(a)] != q.inv(pr[a]):
            raise TheoremViolation("principal_embedding_inv", (a,))
    for t, u in s.compatible_pairs:
        j = s.join([t, u])
        if pr[j] != q.join_pair(pr[t], pr[u]):
            raise TheoremViolation("principal_embedding_join", (t, u))
    z = s.zero()
    if pr[z] != q.bottom:
        raise TheoremViolation("principal_embedding_zero", (z,))


@dataclass
class HomExtension:
    completion: Completion
    target: InvolutiveQuantale
    base: tuple[int, ...]     # element -> target element
    values: tuple[int, ...]   # ideal index -> target element


def check_semigroup_hom_into_quantale(s: FiniteInverseSemigroup,
                                      target: InvolutiveQuantale,
                                      phi) -> tuple[str, tuple[int, ...]] | None:
    """First violation of phi(st) = phi(s)phi(t), phi(s^-1) = phi(s)*, or
    preservation of compatible joins (including the empty one), else None."""
    phi = tuple(phi)
    for a in range(s.n):
        for b in range(s.n):
            if phi[s.mult(a, b)] != target.mult(phi[a], phi[b]):
                return ("mult", (a, b))
    for a in range(s.n):
        if phi[s.inv(a)] != target.inv(phi[a]):
            return ("involution", (a,))
    z = s.zero()
    if z is not None and phi[z] != target.bottom:
        return ("empty_join", (z,))
    for t, u in s.compatible_pairs:
        j = s.join([t, u])
        if j is None or phi[j] != target.join_pair(phi[t], phi[u]):
            return ("compatible_join", (t, u))
    return None


def extend_hom(comp: Completion, target: InvolutiveQuantale, phi) -> HomExtension:
    """Extend a homomorphism S -> Q to the ideal quantale by joining images.

    Verifies the extension is a homomorphism of involutive quantales, that it
    restricts to phi on principal ideals, and that principal ideals
    join-generate (which pins the extension down uniquely).
    """
    s = comp.semigroup
    phi = tuple(phi)
    if len(phi) != s.n or any(not 0 <= v < target.n for v in phi):
        raise PreconditionError("base map is not total into the target")
    bad = check_semigroup_hom_into_quantale(s, target, phi)
    if bad is not None:
        raise PreconditionError(f"base map is not a homomorphism: {bad[0]} at {bad[1]}")

    values = tuple(target.join(phi[t] for t in order.bits(mask)) for mask in comp.ideals)
    q = comp.quantale

    for i in range(comp.n):
        for j in range(comp.n):
            if values[q.join_pair(i, j)] != target.join_pair(values[i], values[j]):
                raise TheoremViolation("extension_join", (i, j))
            if values[q.mult(i, j)] != target.mult(values[i], values[j]):
                raise TheoremViolation("extension_mult", (i, j))
    for i in range(comp.n):
        if values[q.inv(i)] != target.inv(values[i]):
            raise TheoremViolation("extension_inv", (i,))
    if values[q.bottom] != target.bottom:
        raise TheoremViolation("extension_bottom", ())

    for t in range(s.n):
        if values[comp.principal[t]] != phi[t]:
            raise TheoremViolation("extension_restricts", (t,))

    for i, mask in enumerate(comp.ideals):
        if q.join(comp.principal[t] for t in order.bits(mask)) != i:
            raise TheoremViolation("principal_ideals_join_generate", (i,))

    return HomExtension(comp, target, phi, values)
