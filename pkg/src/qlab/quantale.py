"""Involutive quantales over finite lattices.

A quantale here is a complete lattice with an associative multiplication that
preserves arbitrary joins in each argument, plus a join-preserving involution
with (ab)* = b*a*. Table-backed and symbolic (powerset-of-atoms) realizations
share one interface; every law check is exhaustive and returns the least
falsifier in index order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config, order, parallel
from .errors import InputError, PreconditionError, ResourceLimitError
from .lattice import FiniteLattice, Lattice, PowersetLattice


class InvolutiveQuantale:
    lat: Lattice
    unit: int | None = None

    def mult(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    # lattice delegates
    @property
    def n(self) -> int:
        return self.lat.n

    def leq(self, a: int, b: int) -> bool:
        return self.lat.leq(a, b)

    def join(self, members) -> int:
        return self.lat.join(members)

    def join_pair(self, a: int, b: int) -> int:
        return self.lat.join_pair(a, b)

    def meet(self, members) -> int:
        return self.lat.meet(members)

    def meet_pair(self, a: int, b: int) -> int:
        return self.lat.meet_pair(a, b)

    @property
    def bottom(self) -> int:
        return self.lat.bottom

    @property
    def top(self) -> int:
        return self.lat.top


class TableQuantale(InvolutiveQuantale):
    def __init__(self, lat: Lattice, mult_rows, inv_row, unit: int | None = None):
        n = lat.n
        mult_rows = tuple(tuple(row) for row in mult_rows)
        inv_row = tuple(inv_row)
        if len(mult_rows) != n or any(len(r) != n for r in mult_rows):
            raise InputError("multiplication table is not total")
        if any(not 0 <= v < n for r in mult_rows for v in r):
            raise InputError("multiplication table entry out of range")
        if len(inv_row) != n or any(not 0 <= v < n for v in inv_row):
            raise InputError("involution table is not total")
        if unit is not None and not 0 <= unit < n:
            raise InputError("unit index out of range")
        self.lat = lat
        self._mult = mult_rows
        self._inv = inv_row
        self.unit = unit

    def mult(self, a: int, b: int) -> int:
        return self._mult[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]


class PointwiseQuantale(InvolutiveQuantale):
    """Powerset carrier with operations extended pointwise from atoms.

    ``atom_mult(p, q)`` and ``atom_inv(p)`` act on bit positions and return
    element masks; the extension to arbitrary masks is bilinear. Nothing is
    tabulated at carrier scale.
    """

    width: int

    def __init__(self, width: int, unit_mask: int):
        self.width = width
        self.lat = PowersetLattice(width)
        self.unit = unit_mask

    def atom_mult(self, p: int, q: int) -> int:
        raise NotImplementedError

    def atom_inv(self, p: int) -> int:
        raise NotImplementedError

    def mult(self, a: int, b: int) -> int:
        out = 0
        for p in order.bits(a):
            for q in order.bits(b):
                out |= self.atom_mult(p, q)
        return out

    def inv(self, a: int) -> int:
        out = 0
        for p in order.bits(a):
            out |= self.atom_inv(p)
        return out


class RelationQuantale(PointwiseQuantale):
    """All binary relations on a finite set, under relational composition.

    A relation is a mask with bit z*n + y standing for the pair (z, y); the
    product RS relates (z, x) whenever (z, y) is in R and (y, x) is in S for
    some middle y, and the involution is the converse relation. The unit is
    the diagonal. Everything is computed per call on the masks.
    """

    def __init__(self, nset: int):
        if nset < 0:
            raise InputError("negative base set size")
        self.nset = nset
        self._rowmask = (1 << nset) - 1
        diag = 0
        for i in range(nset):
            diag |= 1 << (i * nset + i)
        super().__init__(nset * nset, diag)

    def mult(self, a: int, b: int) -> int:
        n = self.nset
        rowmask = self._rowmask
        out = 0
        for z in range(n):
            arow = a >> (z * n) & rowmask
            if not arow:
                continue
            acc = 0
            y = 0
            while arow:
                if arow & 1:
                    acc |= b >> (y * n) & rowmask
                arow >>= 1
                y += 1
            out |= acc << (z * n)
        return out

    def inv(self, a: int) -> int:
        n = self.nset
        out = 0
        for p in order.bits(a):
            z, y = divmod(p, n)
            out |= 1 << (y * n + z)
        return out

    def atom_mult(self, p: int, q: int) -> int:
        n = self.nset
        z, y = divmod(p, n)
        y2, x = divmod(q, n)
        return 1 << (z * n + x) if y == y2 else 0

    def atom_inv(self, p: int) -> int:
        z, y = divmod(p, self.nset)
        return 1 << (y * self.nset + z)

    def pair_mask(self, z: int, y: int) -> int:
        return 1 << (z * self.nset + y)

    def pairs_of(self, a: int) -> tuple[tuple[int, int], ...]:
        return tuple(divmod(p, self.nset) for p in order.bits(a))


def rel_quantale(nset: int) -> RelationQuantale:
    return RelationQuantale(nset)


def _gate(q: InvolutiveQuantale, limits: config.Limits | None, what: str) -> config.Limits:
    lim = config.get(limits)
    if q.n > lim.max_exhaustive:
        raise ResourceLimitError(
            f"{what}: carrier size {q.n} exceeds exhaustiveness bound {lim.max_exhaustive}")
    return lim


@dataclass
class AxiomReport:
    ok: bool
    failures: list[tuple[str, tuple[int, ...]]]
    strategy: str

    def witness(self, law: str):
        for name, w in self.failures:
            if name == law:
                return w
        return None


def check_axioms(q: InvolutiveQuantale, limits: config.Limits | None = None) -> AxiomReport:
    """Exhaustively verify the quantale laws, one least witness per failing law.

    On atomistic powerset carriers the join laws are checked through the atom
    decomposition (a bilinear map that agrees with its atomwise extension
    preserves all joins, the empty join being the zero case), and
    associativity plus the involution antihomomorphism law then only need the
    atoms. On table carriers everything is checked cubically.
    """
    lim = _gate(q, limits, "check_axioms")
    if isinstance(q, PointwiseQuantale):
        return _check_axioms_atomic(q)
    return _check_axioms_table(q, lim)


def _check_axioms_table(q: InvolutiveQuantale, lim: config.Limits) -> AxiomReport:
    n = q.n
    mult = q.mult
    inv = q.inv
    jp = q.join_pair
    bot = q.bottom
    failures: list[tuple[str, tuple[int, ...]]] = []

    for a in range(n):
        if mult(a, bot) != bot or mult(bot, a) != bot:
            failures.append(("zero_absorption", (a,)))
            break

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

    def joins():
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    bc = jp(b, c)
                    if mult(a, bc) != jp(mult(a, b), mult(a, c)):
                        return ("right", a, b, c)
                    if mult(bc, a) != jp(mult(b, a), mult(c, a)):
                        return ("left", a, b, c)
        return None

    w = joins()
    if w is not None:
        failures.append(("join_preservation", w[1:]))

    for a in range(n):
        if inv(inv(a)) != a:
            failures.append(("involution_involutive", (a,)))
            break
    for a in range(n):
        done = False
        for b in range(n):
            if inv(jp(a, b)) != jp(inv(a), inv(b)):
                failures.append(("involution_join_preservation", (a, b)))
                done = True
                break
            if inv(mult(a, b)) != mult(inv(b), inv(a)):
                failures.append(("involution_antihomomorphism", (a, b)))
                done = True
                break
        if done:
            break

    if q.unit is not None:
        e = q.unit
        for a in range(n):
            if mult(e, a) != a or mult(a, e) != a:
                failures.append(("unit_laws", (e, a)))
                break

    return AxiomReport(not failures, failures, "table")


def _check_axioms_atomic(q: PointwiseQuantale) -> AxiomReport:
    n = q.n
    k = q.width
    mult = q.mult
    inv = q.inv
    failures: list[tuple[str, tuple[int, ...]]] = []
    atom_masks = [1 << p for p in range(k)]

    # rows[p][b] = product of atom p with element b
    rows = [[mult(atom_masks[p], b) for b in range(n)] for p in range(k)]

    def row_consistency():
        # atom rows must themselves be the atomwise extension
        for p in range(k):
            rp = rows[p]
            am = q.atom_mult
            for b in range(n):
                acc = 0
                for qq in order.bits(b):
                    acc |= am(p, qq)
                if rp[b] != acc:
                    return (atom_masks[p], b)
        return None

    def bilinear():
        for a in range(n):
            pl = [rows[p] for p in order.bits(a)]
            for b in range(n):
                acc = 0
                for rp in pl:
                    acc |= rp[b]
                if mult(a, b) != acc:
                    return (a, b)
        return None

    w = row_consistency() or bilinear()
    if w is not None:
        failures.append(("join_preservation", w))

    def assoc_atoms():
        for p in atom_masks:
            for qq in atom_masks:
                pq = mult(p, qq)
                for r in atom_masks:
                    if mult(pq, r) != mult(p, mult(qq, r)):
                        return (p, qq, r)
        return None

    w = assoc_atoms()
    if w is not None:
        failures.append(("associativity", w))

    for a in range(n):
        if inv(inv(a)) != a:
            failures.append(("involution_involutive", (a,)))
            break
    for a in range(n):
        acc = 0
        for p in order.bits(a):
            acc |= q.atom_inv(p)
        if inv(a) != acc:
            failures.append(("involution_join_preservation", (a,)))
            break
    for p in atom_masks:
        done = False
        for qq in atom_masks:
            if inv(mult(p, qq)) != mult(inv(qq), inv(p)):
                failures.append(("involution_antihomomorphism", (p, qq)))
                done = True
                break
        if done:
            break

    if q.unit is not None:
        e = q.unit
        for a in range(n):
            if mult(e, a) != a or mult(a, e) != a:
                failures.append(("unit_laws", (e, a)))
                break

    return AxiomReport(not failures, failures, "atomic")


# ---------------------------------------------------------------------------
# element classes and the Gelfand hierarchy


def is_right_sided(q: InvolutiveQuantale, a: int) -> bool:
    return q.leq(q.mult(a, q.top), a)


def is_left_sided(q: InvolutiveQuantale, a: int) -> bool:
    return q.leq(q.mult(q.top, a), a)


def two_sided(q: InvolutiveQuantale, limits: config.Limits | None = None) -> tuple[int, ...]:
    _gate(q, limits, "two_sided")
    top = q.top
    return tuple(a for a in range(q.n)
                 if q.leq(q.mult(a, top), a) and q.leq(q.mult(top, a), a))


def gelfand_witness(q: InvolutiveQuantale, limits: config.Limits | None = None) -> int | None:
    """Least right-sided a with a a* a != a, or None."""
    lim = _gate(q, limits, "gelfand")
    top = q.top

    def bad(a):
        if not q.leq(q.mult(a, top), a):
            return None
        s = q.mult(q.mult(a, q.inv(a)), a)
        return a if s != a else None

    return parallel.scan_least(q.n, bad, lim.jobs)


def stably_gelfand_witness(q: InvolutiveQuantale, limits: config.Limits | None = None) -> int | None:
    """Least a with a a* a <= a but a a* a != a, or None."""
    lim = _gate(q, limits, "stably_gelfand")

    def bad(a):
        s = q.mult(q.mult(a, q.inv(a)), a)
        return a if q.leq(s, a) and s != a else None

    return parallel.scan_least(q.n, bad, lim.jobs)


def strongly_gelfand_witness(q: InvolutiveQuantale, limits: config.Limits | None = None) -> int | None:
    """Least a with not a <= a a* a, or None."""
    lim = _gate(q, limits, "strongly_gelfand")

    def bad(a):
        s = q.mult(q.mult(a, q.inv(a)), a)
        return a if not q.leq(a, s) else None

    return parallel.scan_least(q.n, bad, lim.jobs)


def is_gelfand(q, limits=None) -> bool:
    return gelfand_witness(q, limits) is None


def is_stably_gelfand(q, limits=None) -> bool:
    return stably_gelfand_witness(q, limits) is None


def is_strongly_gelfand(q, limits=None) -> bool:
    return strongly_gelfand_witness(q, limits) is None


def is_projection(q: InvolutiveQuantale, b: int) -> bool:
    return q.mult(b, b) == b and q.inv(b) == b


def projections(q: InvolutiveQuantale, limits: config.Limits | None = None) -> tuple[int, ...]:
    _gate(q, limits, "projections")
    return tuple(b for b in range(q.n) if q.mult(b, b) == b and q.inv(b) == b)


def require_unit(q: InvolutiveQuantale) -> int:
    if q.unit is None:
        raise PreconditionError("operation requires a unital quantale")
    return q.unit


def partial_units(q: InvolutiveQuantale, limits: config.Limits | None = None) -> tuple[int, ...]:
    """All a with a* a <= e and a a* <= e."""
    e = require_unit(q)
    _gate(q, limits, "partial_units")
    out = []
    for a in range(q.n):
        ai = q.inv(a)
        if q.leq(q.mult(ai, a), e) and q.leq(q.mult(a, ai), e):
            out.append(a)
    return tuple(out)


def covering_holds(q: InvolutiveQuantale, limits: config.Limits | None = None) -> bool:
    return q.join(partial_units(q, limits)) == q.top


def supported_witness(q: InvolutiveQuantale, limits: config.Limits | None = None) -> int | None:
    """Least a failing a1 & e <= a a* or a <= (a1 & e) a, or None."""
    e = require_unit(q)
    lim = _gate(q, limits, "supported")
    top = q.top

    def bad(a):
        s = q.meet_pair(q.mult(a, top), e)
        if not q.leq(s, q.mult(a, q.inv(a))):
            return a
        if not q.leq(a, q.mult(s, a)):
            return a
        return None

    return parallel.scan_least(q.n, bad, lim.jobs)


def is_supported(q, limits=None) -> bool:
    return supported_witness(q, limits) is None


def is_quantal_frame(q: InvolutiveQuantale) -> bool:
    return q.lat.is_frame()


def find_unit(q: InvolutiveQuantale, limits: config.Limits | None = None) -> int | None:
    """The declared unit, or the least two-sided identity found by scan."""
    if q.unit is not None:
        return q.unit
    _gate(q, limits, "find_unit")
    for e in range(q.n):
        if all(q.mult(e, a) == a and q.mult(a, e) == a for a in range(q.n)):
            return e
    return None


@dataclass
class QuantaleClassReport:
    is_unital: bool
    unit: int | None
    is_gelfand: bool
    is_stably_gelfand: bool
    is_strongly_gelfand: bool
    is_quantal_frame: bool
    is_supported: bool
    covering_holds: bool
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "is_unital": self.is_unital,
            "is_gelfand": self.is_gelfand,
            "is_stably_gelfand": self.is_stably_gelfand,
            "is_strongly_gelfand": self.is_strongly_gelfand,
            "is_quantal_frame": self.is_quantal_frame,
            "is_supported": self.is_supported,
            "covering_holds": self.covering_holds,
        }


def classify(q: InvolutiveQuantale, limits: config.Limits | None = None) -> QuantaleClassReport:
    """Aggregate flag report; every False flag carries a replayable witness."""
    lim = _gate(q, limits, "classify")
    witnesses: dict[str, tuple[int, ...]] = {}
    notes: dict[str, str] = {}

    unit = find_unit(q, lim)
    unital = unit is not None

    gw = gelfand_witness(q, lim)
    if gw is not None:
        witnesses["is_gelfand"] = (gw,)
    sgw = stably_gelfand_witness(q, lim)
    if sgw is not None:
        witnesses["is_stably_gelfand"] = (sgw,)
    stw = strongly_gelfand_witness(q, lim)
    if stw is not None:
        witnesses["is_strongly_gelfand"] = (stw,)

    frame = is_quantal_frame(q)
    if not frame:
        fw = q.lat.frame_witness()
        if fw is not None:
            witnesses["is_quantal_frame"] = fw

    if unital:
        probe = q if q.unit is not None else _with_unit(q, unit)
        sw = supported_witness(probe, lim)
        supported = sw is None
        if sw is not None:
            witnesses["is_supported"] = (sw,)
        covering = covering_holds(probe, lim)
        if not covering:
            witnesses["covering_holds"] = (q.join(partial_units(probe, lim)),)
    else:
        supported = False
        covering = False
        notes["is_supported"] = "no unit"
        notes["covering_holds"] = "no unit"

    return QuantaleClassReport(
        is_unital=unital,
        unit=unit,
        is_gelfand=gw is None,
        is_stably_gelfand=sgw is None,
        is_strongly_gelfand=stw is None,
        is_quantal_frame=frame,
        is_supported=supported,
        covering_holds=covering,
        witnesses=witnesses,
        notes=notes,
    )


class _UnitView(InvolutiveQuantale):
    def __init__(self, base: InvolutiveQuantale, unit: int):
        self.lat = base.lat
        self.unit = unit
        self._base = base

    def mult(self, a, b):
        return self._base.mult(a, b)

    def inv(self, a):
        return self._base.inv(a)


def _with_unit(q: InvolutiveQuantale, unit: int) -> InvolutiveQuantale:
    return _UnitView(q, unit)


def down_set(q: InvolutiveQuantale, b: int) -> tuple[int, ...]:
    return tuple(a for a in range(q.n) if q.leq(a, b))


def two_sided_below(q: InvolutiveQuantale, b: int,
                    limits: config.Limits | None = None) -> tuple[int, ...]:
    """Two-sided elements of the subquantale of everything below b."""
    _gate(q, limits, "two_sided_below")
    return tuple(a for a in range(q.n)
                 if q.leq(a, b) and q.leq(q.mult(a, b), a) and q.leq(q.mult(b, a), a))
