"""Maps of involutive quantales, held contravariantly.

A map p: Q -> R is stored as its inverse-image homomorphism star: R -> Q;
this is the primary data and all direction bookkeeping hangs off it. p is a
surjection iff star is injective, and semiopen iff star has a left adjoint
(equivalently, on finite carriers, iff star preserves all meets), in which
case the direct image bang: Q -> R is the adjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .errors import PreconditionError, TheoremViolation
from .order import bits
from .projections import ProjectionDossier, ideal_join_map, injectivity_witness
from .quantale import InvolutiveQuantale, is_projection, require_unit


@dataclass
class QuantaleMap:
    source: InvolutiveQuantale            # Q, for p: Q -> R
    target: InvolutiveQuantale            # R
    star: tuple[int, ...]                 # R element -> Q element (inverse image)
    bang: tuple[int, ...] | None = None   # Q element -> R element (direct image)
    unital: bool = False


def star_hom_failure(source: InvolutiveQuantale, target: InvolutiveQuantale,
                     star, unital: bool = False) -> tuple[str, tuple[int, ...]] | None:
    star = tuple(star)
    if len(star) != target.n or any(not 0 <= v < source.n for v in star):
        return ("total", ())
    if star[target.bottom] != source.bottom:
        return ("bottom", (target.bottom,))
    for x in range(target.n):
        for y in range(target.n):
            if star[target.join_pair(x, y)] != source.join_pair(star[x], star[y]):
                return ("join", (x, y))
            if star[target.mult(x, y)] != source.mult(star[x], star[y]):
                return ("mult", (x, y))
    for x in range(target.n):
        if star[target.inv(x)] != source.inv(star[x]):
            return ("involution", (x,))
    if unital:
        if star[require_unit(target)] != require_unit(source):
            return ("unit", (target.unit,))
    return None


def make_map(source: InvolutiveQuantale, target: InvolutiveQuantale,
             star, unital: bool = False) -> QuantaleMap:
    bad = star_hom_failure(source, target, star, unital)
    if bad is not None:
        raise PreconditionError(f"inverse image is not a homomorphism: {bad[0]} at {bad[1]}")
    return QuantaleMap(source, target, tuple(star), unital=unital)


def identity_map(q: InvolutiveQuantale) -> QuantaleMap:
    return QuantaleMap(q, q, tuple(range(q.n)), unital=q.unit is not None)


def is_surjection(p: QuantaleMap) -> bool:
    return len(set(p.star)) == p.target.n


def map_pb(q: InvolutiveQuantale, b: int,
           limits: config.Limits | None = None) -> tuple[QuantaleMap, ProjectionDossier]:
    """The map from q onto the ideal quantale of the projection b, whose
    inverse image is the join-of-ideal homomorphism."""
    dossier = ideal_join_map(q, b, limits=limits)
    p = QuantaleMap(q, dossier.completion.quantale, dossier.ideal_join)
    return p, dossier


def direct_image(p: QuantaleMap) -> QuantaleMap | None:
    """Left adjoint of the inverse image, when it exists.

    The only candidate sends a to the meet of {x : a <= star(x)}; the map is
    semiopen iff that candidate satisfies both adjunction inequalities, and
    absence is a result, not an error.
    """
    src, tgt, star = p.source, p.target, p.star
    bang = []
    for a in range(src.n):
        bang.append(tgt.meet(x for x in range(tgt.n) if src.leq(a, star[x])))
    for a in range(src.n):
        for x in range(tgt.n):
            if tgt.leq(bang[a], x) != src.leq(a, star[x]):
                return None
    return QuantaleMap(src, tgt, star, bang=tuple(bang), unital=p.unital)


def is_semiopen(p: QuantaleMap) -> bool:
    return direct_image(p) is not None


def frobenius_check(p: QuantaleMap) -> tuple[bool, tuple[int, int, int] | None]:
    """Two-sided reciprocity bang(a star(x) a') = bang(a) x bang(a') over all
    triples; requires a semiopen map with unital target."""
    if p.bang is None:
        raise PreconditionError("map is not semiopen (no direct image attached)")
    require_unit(p.target)
    src, tgt, star, bang = p.source, p.target, p.star, p.bang
    for a in range(src.n):
        for x in range(tgt.n):
            sx = star[x]
            xb = tgt.mult
            for a2 in range(src.n):
                lhs = bang[src.mult(a, src.mult(sx, a2))]
                rhs = xb(bang[a], xb(x, bang[a2]))
                if lhs != rhs:
                    return (False, (a, x, a2))
    return (True, None)


@dataclass
class ComparisonResult:
    b: int
    k: QuantaleMap                       # from the ideal quantale of b to the target
    dossier: ProjectionDossier           # of (source, b)
    target_dossier: ProjectionDossier    # of (target, unit)
    q_surjection: bool
    k_surjection: bool


def comparison_map(qm: QuantaleMap, limits: config.Limits | None = None) -> ComparisonResult:
    """The unique map k from the ideal quantale of b := star(unit) to the
    target, commuting with the given map over the source.

    The target must be an inverse quantal frame (its partial units must
    completion back onto it); the inverse image of the given map is verified
    to send the target's partial units into the relative units of b, the
    induced pseudogroup homomorphism is completed functorially, and the
    resulting triangle, unit preservation, uniqueness via join-density, and
    surjectivity transfer are all checked.
    """
    lim = config.get(limits)
    src, tgt, star = qm.source, qm.target, qm.star
    e_r = require_unit(tgt)
    b = star[e_r]
    if not is_projection(src, b):
        raise TheoremViolation("inverse_image_of_unit_is_projection", (b,))

    dossier = ideal_join_map(src, b, limits=lim)
    tdossier = ideal_join_map(tgt, e_r, limits=lim)
    tvals = tdossier.ideal_join
    if injectivity_witness(tdossier) is not None or len(set(tvals)) != tgt.n:
        raise PreconditionError("target is not an inverse quantal frame")
    inverse_t = [0] * tgt.n
    for i, v in enumerate(tvals):
        inverse_t[v] = i

    # the inverse iso must read an element as the down-set of partial units
    tsg = tdossier.semigroup
    for x in range(tgt.n):
        mask = 0
        for i, s in enumerate(tsg.keys):
            if tgt.leq(s, x):
                mask |= 1 << i
        if tdossier.completion.ideals[inverse_t[x]] != mask:
            raise TheoremViolation("element_ideal_is_downset", (x,))
        if tgt.join(s for s in tsg.keys if tgt.leq(s, x)) != x:
            raise TheoremViolation("partial_units_join_dense", (x,))

    sgq = dossier.semigroup
    qpos = {s: i for i, s in enumerate(sgq.keys)}
    f0 = []
    for s in tsg.keys:
        img = star[s]
        if img not in qpos:
            raise TheoremViolation("partial_units_into_relative_units", (s, img))
        f0.append(qpos[img])
    for i in range(tsg.n):
        for j in range(tsg.n):
            if f0[tsg.mult(i, j)] != sgq.mult(f0[i], f0[j]):
                raise TheoremViolation("restricted_hom_mult", (i, j))
    for i in range(tsg.n):
        if f0[tsg.inv(i)] != sgq.inv(f0[i]):
            raise TheoremViolation("restricted_hom_inv", (i,))
    for i, j in tsg.compatible_pairs:
        jt = tsg.join([i, j])
        if sgq.join([f0[i], f0[j]]) != f0[jt]:
            raise TheoremViolation("restricted_hom_join", (i, j))

    comp = dossier.completion
    k_star = []
    for x in range(tgt.n):
        tmask = tdossier.completion.ideals[inverse_t[x]]
        qmask = 0
        for i in bits(tmask):
            qmask |= 1 << f0[i]
        k_star.append(comp.generated_by(qmask))

    cq = comp.quantale
    bad = star_hom_failure(cq, tgt, k_star, unital=False)
    if bad is not None:
        raise TheoremViolation(f"comparison_inverse_image_{bad[0]}", bad[1])
    if k_star[e_r] != cq.unit:
        raise TheoremViolation("comparison_preserves_unit", (e_r,))

    vals = dossier.ideal_join
    for x in range(tgt.n):
        if vals[k_star[x]] != star[x]:
            raise TheoremViolation("comparison_triangle", (x,))

    # uniqueness: values on the join-dense partial units are forced to be
    # principal ideals of their images
    for i, s in enumerate(tsg.keys):
        if k_star[s] != comp.principal[f0[i]]:
            raise TheoremViolation("comparison_forced_on_units", (s,))

    q_surj = is_surjection(qm)
    k = QuantaleMap(cq, tgt, tuple(k_star))
    k_surj = is_surjection(k)
    if q_surj and not k_surj:
        raise TheoremViolation("comparison_surjection_transfer", ())
    return ComparisonResult(b=b, k=k, dossier=dossier, target_dossier=tdossier,
                            q_surjection=q_surj, k_surjection=k_surj)


@dataclass
class SplitResult:
    comparison: ComparisonResult
    section_star: tuple[int, ...]   # ideal index -> target element


def split_surjection_check(qm: QuantaleMap,
                           limits: config.Limits | None = None) -> SplitResult:
    """For a semiopen surjection with two-sided reciprocity onto an inverse
    quantal frame, produce the section of the comparison map.

    The direct image is shown to send relative units of b to partial units of
    the target and to be a pseudogroup homomorphism; its completion, read
    back along the target's ideal iso, is verified to invert the comparison
    map's inverse image exactly.
    """
    lim = config.get(limits)
    if not is_surjection(qm):
        raise PreconditionError("map is not a surjection")
    pm = direct_image(qm)
    if pm is None:
        raise PreconditionError("map is not semiopen")
    ok, w = frobenius_check(pm)
    if not ok:
        raise PreconditionError(f"two-sided reciprocity fails at {w}")

    cmp_res = comparison_map(qm, lim)
    dossier = cmp_res.dossier
    tgt = qm.target
    e_r = require_unit(tgt)
    bang = pm.bang

    sgq = dossier.semigroup
    for s in sgq.keys:
        v = bang[s]
        vi = tgt.inv(v)
        if not (tgt.leq(tgt.mult(vi, v), e_r) and tgt.leq(tgt.mult(v, vi), e_r)):
            raise TheoremViolation("direct_image_lands_in_partial_units", (s, v))
    tsg = cmp_res.target_dossier.semigroup
    tpos = {s: i for i, s in enumerate(tsg.keys)}
    f = [tpos[bang[s]] for s in sgq.keys]
    for i in range(sgq.n):
        for j in range(sgq.n):
            if f[sgq.mult(i, j)] != tsg.mult(f[i], f[j]):
                raise TheoremViolation("section_hom_mult", (i, j))
    for i in range(sgq.n):
        if f[sgq.inv(i)] != tsg.inv(f[i]):
            raise TheoremViolation("section_hom_inv", (i,))
    for i, j in sgq.compatible_pairs:
        jt = sgq.join([i, j])
        if tsg.join([f[i], f[j]]) != f[jt]:
            raise TheoremViolation("section_hom_join", (i, j))

    comp = dossier.completion
    sigma_star = []
    for mask in comp.ideals:
        sigma_star.append(tgt.join(bang[sgq.keys[i]] for i in bits(mask)))
    cq = comp.quantale
    bad = star_hom_failure(tgt, cq, sigma_star, unital=False)
    if bad is not None:
        raise TheoremViolation(f"section_inverse_image_{bad[0]}", bad[1])

    k_star = cmp_res.k.star
    for x in range(tgt.n):
        if sigma_star[k_star[x]] != x:
            raise TheoremViolation("section_splits_comparison", (x,))
    return SplitResult(comparison=cmp_res, section_star=tuple(sigma_star))


@dataclass
class ReflectionReport:
    b: int
    unit_component_ok: bool
    counit_verdict: str          # PASS / FAIL / SKIP:<hypothesis>


def reflection_component_check(q: InvolutiveQuantale, b: int,
                               limits: config.Limits | None = None) -> ReflectionReport:
    """Componentwise adjunction facts: the map of the projection b sends the
    target's unit back to b, and on inverse quantal frames the completion of
    the partial units is isomorphic to the quantale itself."""
    from .projections import inverse_quantal_frame_check

    lim = config.get(limits)
    dossier = ideal_join_map(q, b, limits=lim)
    unit_ok = dossier.ideal_join[dossier.completion.quantale.unit] == b
    res = inverse_quantal_frame_check(q, lim)
    if res.verdict == "SKIP":
        counit = f"SKIP:{res.failed_hypothesis}"
    else:
        counit = res.verdict
    return ReflectionReport(b=b, unit_component_ok=unit_ok, counit_verdict=counit)
