"""Per-projection analysis of a stably Gelfand quantale.

For a projection b, the elements that behave like partial units relative to b
form an inverse monoid inside the quantale; this module extracts it, verifies
the structural facts that make it a pseudogroup, completes it to an ideal
quantale, and studies the join-of-ideal map back into the quantale (whose
injectivity is equivalent to the image being a frame).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config
from .completion import Completion, compatible_ideals, extend_hom
from .errors import PreconditionError, TheoremViolation
from .lattice import FiniteLattice
from .quantale import (InvolutiveQuantale, _gate, _with_unit, find_unit,
                       is_projection, is_quantal_frame, partial_units,
                       stably_gelfand_witness, two_sided_below)
from .semigroup import FiniteInverseSemigroup, pseudogroup_failure, verify_inverse_semigroup


def raw_relative_units(q: InvolutiveQuantale, b: int,
                       limits: config.Limits | None = None) -> tuple[int, ...]:
    """Filter for a* a <= b, a a* <= b, ab <= a, ba <= a; no assumptions on b."""
    _gate(q, limits, "relative_units")
    out = []
    for a in range(q.n):
        ai = q.inv(a)
        if (q.leq(q.mult(ai, a), b) and q.leq(q.mult(a, ai), b)
                and q.leq(q.mult(a, b), a) and q.leq(q.mult(b, a), a)):
            out.append(a)
    return tuple(out)


def partial_units_relative(q: InvolutiveQuantale, b: int,
                           limits: config.Limits | None = None) -> tuple[int, ...]:
    if not is_projection(q, b):
        raise PreconditionError(f"element {b} is not a projection")
    return raw_relative_units(q, b, limits)


@dataclass
class ProjectionDossier:
    quantale: InvolutiveQuantale
    b: int
    units: tuple[int, ...]                  # partial units relative to b
    two_sided_below_b: tuple[int, ...]      # two-sided elements of the subquantale below b
    semigroup: FiniteInverseSemigroup       # induced structure on units (keys = quantale elements)
    completion: Completion | None = None
    ideal_join: tuple[int, ...] | None = None   # ideal index -> quantale element
    image: tuple[int, ...] | None = None
    localic: bool | None = None
    # finite distributive lattices always have enough points
    spatial: bool = True
    notes: dict[str, str] = field(default_factory=dict)

    def unit_elements(self) -> tuple[int, ...]:
        return self.units


def pseudogroup_of(q: InvolutiveQuantale, b: int,
                   limits: config.Limits | None = None) -> ProjectionDossier:
    """Extract and verify the inverse monoid of partial units relative to b.

    Verified facts, each raising TheoremViolation with a witness on failure
    (which signals either a bug or a non-stably-Gelfand input): closure under
    products and nonempty meets, s = sb = bs = s s* s for each member, the
    idempotents being exactly the two-sided elements below b, commuting
    idempotents, coincidence of the natural order with the quantale order,
    and completeness plus distributivity over compatible joins computed in
    the ambient quantale.
    """
    lim = config.get(limits)
    if not is_projection(q, b):
        raise PreconditionError(f"element {b} is not a projection")
    units = raw_relative_units(q, b, lim)
    pos = {a: i for i, a in enumerate(units)}

    if b not in pos:
        raise TheoremViolation("projection_is_relative_unit", (b,))

    for s in units:
        sb = q.mult(s, b)
        bs = q.mult(b, s)
        sss = q.mult(q.mult(s, q.inv(s)), s)
        if sb != s or bs != s or sss != s:
            raise TheoremViolation("relative_unit_identities", (s,))

    rows = []
    for s in units:
        row = []
        for t in units:
            st = q.mult(s, t)
            if st not in pos:
                raise TheoremViolation("closed_under_mult", (s, t, st))
            row.append(pos[st])
        rows.append(row)
    inv = []
    for s in units:
        si = q.inv(s)
        if si not in pos:
            raise TheoremViolation("closed_under_involution", (s,))
        inv.append(pos[si])
    sg = FiniteInverseSemigroup(rows, inv, keys=units)

    for i, s in enumerate(units):
        for j, t in enumerate(units):
            m = q.meet_pair(s, t)
            if m not in pos:
                raise TheoremViolation("closed_under_nonempty_meets", (s, t, m))
            if sg.natural_leq(i, j) != q.leq(s, t):
                raise TheoremViolation("natural_order_matches_quantale_order", (s, t))

    ts_b = two_sided_below(q, b, lim)
    idem = tuple(units[i] for i in sg.idempotents)
    if tuple(sorted(idem)) != tuple(sorted(ts_b)):
        raise TheoremViolation("idempotents_are_two_sided_below_b",
                               (tuple(idem), tuple(ts_b)))

    rep = verify_inverse_semigroup(sg)
    if not rep.ok:
        law, w = rep.failures[0]
        raise TheoremViolation(f"inverse_semigroup_{law}",
                               tuple(units[i] for i in w))

    for i, j in sg.compatible_pairs:
        jq = q.join_pair(units[i], units[j])
        if jq not in pos:
            raise TheoremViolation("compatible_join_stays_inside", (units[i], units[j], jq))

    bad = pseudogroup_failure(sg)
    if bad is not None:
        law, w = bad
        raise TheoremViolation(f"pseudogroup_{law}", tuple(units[i] for i in w))

    return ProjectionDossier(
        quantale=q, b=b, units=units, two_sided_below_b=ts_b, semigroup=sg)


def ideal_join_map(q: InvolutiveQuantale, b: int,
                   dossier: ProjectionDossier | None = None,
                   limits: config.Limits | None = None) -> ProjectionDossier:
    """Complete the relative-unit pseudogroup and map each ideal to its join.

    The resulting map out of the ideal quantale is verified to be a
    homomorphism of involutive quantales extending the inclusion of the
    relative units; the image is recorded.
    """
    lim = config.get(limits)
    if dossier is None:
        dossier = pseudogroup_of(q, b, lim)
    comp = compatible_ideals(dossier.semigroup, lim)
    ext = extend_hom(comp, q, dossier.semigroup.keys)
    dossier.completion = comp
    dossier.ideal_join = ext.values
    dossier.image = tuple(sorted(set(ext.values)))
    return dossier


def image_lattice(q: InvolutiveQuantale, image: tuple[int, ...]) -> FiniteLattice:
    """The image with the induced order (a complete lattice: it is closed
    under joins of the ambient quantale, and meets are computed inside it)."""
    return FiniteLattice.from_leq(
        len(image), lambda i, j: q.leq(image[i], image[j]), validate=False)


def is_localic(q: InvolutiveQuantale, b: int,
               dossier: ProjectionDossier | None = None,
               limits: config.Limits | None = None) -> bool:
    dossier = _with_image(q, b, dossier, limits)
    lat = image_lattice(q, dossier.image)
    dossier.localic = lat.is_frame()
    return dossier.localic


def _with_image(q, b, dossier, limits) -> ProjectionDossier:
    if dossier is None or dossier.image is None:
        dossier = ideal_join_map(q, b, dossier, limits)
    return dossier


@dataclass
class EquivalenceReport:
    b: int
    localic: bool
    injective: bool
    surjective: bool          # definitionally: the inverse image is injective
    consistent: bool
    witness: tuple | None = None


def injectivity_witness(dossier: ProjectionDossier) -> tuple[int, int] | None:
    seen: dict[int, int] = {}
    for i, v in enumerate(dossier.ideal_join):
        if v in seen:
            return (seen[v], i)
        seen[v] = i
    return None


def localic_equivalence_report(q: InvolutiveQuantale, b: int,
                               dossier: ProjectionDossier | None = None,
                               limits: config.Limits | None = None) -> EquivalenceReport:
    """Check that the image being a frame is equivalent to injectivity of the
    join-of-ideal map; surjectivity of the dual map is recorded as the same
    condition by definition, not recomputed."""
    dossier = _with_image(q, b, dossier, limits)
    localic = is_localic(q, b, dossier, limits)
    w = injectivity_witness(dossier)
    injective = w is None
    witness = None
    if localic != injective:
        witness = w if w is not None else image_lattice(q, dossier.image).frame_witness()
    return EquivalenceReport(b=b, localic=localic, injective=injective,
                             surjective=injective,
                             consistent=localic == injective, witness=witness)


@dataclass
class FrameTheoremReport:
    b: int
    verdict: str              # PASS / FAIL / SKIP
    skip_reason: str | None = None
    witness: tuple | None = None


def frame_injectivity_report(q: InvolutiveQuantale, b: int,
                             dossier: ProjectionDossier | None = None,
                             limits: config.Limits | None = None) -> FrameTheoremReport:
    """On a stably Gelfand quantal frame the join-of-ideal map is injective
    and preserves binary meets; when the relative units join to the top it is
    additionally a locale homomorphism (preserves the top)."""
    lim = config.get(limits)
    if not is_quantal_frame(q):
        return FrameTheoremReport(b, "SKIP", skip_reason="quantal_frame")
    if stably_gelfand_witness(q, lim) is not None:
        return FrameTheoremReport(b, "SKIP", skip_reason="stably_gelfand")
    dossier = _with_image(q, b, dossier, lim)
    w = injectivity_witness(dossier)
    if w is not None:
        return FrameTheoremReport(b, "FAIL", witness=("injective",) + w)
    comp = dossier.completion
    vals = dossier.ideal_join
    lat = comp.quantale.lat
    for i in range(comp.n):
        for j in range(comp.n):
            if vals[lat.meet_pair(i, j)] != q.meet_pair(vals[i], vals[j]):
                return FrameTheoremReport(b, "FAIL", witness=("binary_meets", i, j))
    if q.join(dossier.units) == q.top:
        if vals[lat.top] != q.top:
            return FrameTheoremReport(b, "FAIL", witness=("top", lat.top))
    return FrameTheoremReport(b, "PASS")


@dataclass
class IqfsResult:
    hypotheses: dict[str, bool]
    verdict: str                  # PASS / FAIL / SKIP
    failed_hypothesis: str | None = None
    forward: tuple[int, ...] | None = None   # ideal index -> quantale element
    inverse: tuple[int, ...] | None = None   # quantale element -> ideal index
    witness: tuple | None = None
    dossier: ProjectionDossier | None = None


def inverse_quantal_frame_check(q: InvolutiveQuantale,
                                limits: config.Limits | None = None) -> IqfsResult:
    """If the quantale is stably Gelfand, unital, a quantal frame, and its
    partial units join to the top, certify that the join-of-ideal map at the
    unit is an isomorphism onto the quantale, returning the inverse map.

    When a hypothesis fails, no claim is made; the report names it.
    """
    lim = config.get(limits)
    unit = find_unit(q, lim)
    hyp = {"unital": unit is not None}
    probe = q if q.unit is not None else (_with_unit(q, unit) if unit is not None else q)
    hyp["stably_gelfand"] = stably_gelfand_witness(q, lim) is None
    hyp["quantal_frame"] = is_quantal_frame(q)
    hyp["covering"] = (hyp["unital"]
                       and q.join(partial_units(probe, lim)) == q.top)
    for name in ("stably_gelfand", "unital", "quantal_frame", "covering"):
        if not hyp[name]:
            return IqfsResult(hyp, "SKIP", failed_hypothesis=name)

    dossier = ideal_join_map(probe, unit, limits=lim)
    vals = dossier.ideal_join
    w = injectivity_witness(dossier)
    if w is not None:
        return IqfsResult(hyp, "FAIL", witness=("injective",) + w, dossier=dossier)
    if len(set(vals)) != q.n:
        missing = next(a for a in range(q.n) if a not in set(vals))
        return IqfsResult(hyp, "FAIL", witness=("surjective", missing), dossier=dossier)

    inverse = [0] * q.n
    for i, v in enumerate(vals):
        inverse[v] = i
    cq = dossier.completion.quantale
    for x in range(q.n):
        for y in range(q.n):
            if inverse[q.mult(x, y)] != cq.mult(inverse[x], inverse[y]):
                return IqfsResult(hyp, "FAIL", witness=("inverse_mult", x, y), dossier=dossier)
            if inverse[q.join_pair(x, y)] != cq.join_pair(inverse[x], inverse[y]):
                return IqfsResult(hyp, "FAIL", witness=("inverse_join", x, y), dossier=dossier)
    for x in range(q.n):
        if inverse[q.inv(x)] != cq.inv(inverse[x]):
            return IqfsResult(hyp, "FAIL", witness=("inverse_inv", x), dossier=dossier)
    if inverse[probe.unit] != cq.unit:
        return IqfsResult(hyp, "FAIL", witness=("inverse_unit", probe.unit), dossier=dossier)

    return IqfsResult(hyp, "PASS", forward=tuple(vals), inverse=tuple(inverse),
                      dossier=dossier)
