"""Finite discrete groupoids, their powerset quantales, and germ models.

Composition is function-style: u . v is defined when dom(u) = cod(v). In the
pair groupoid on n points the arrow (z, y) runs from y to z and is indexed as
z*n + y, which makes the open-set quantale of the pair groupoid literally the
binary-relation quantale, mask for mask.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import config, order
from .completion import compatible_ideals
from .errors import (InputError, PreconditionError, ResourceLimitError,
                     TheoremViolation, UnsupportedCaseError)
from .lattice import FiniteLattice
from .quantale import PointwiseQuantale, partial_units
from .semigroup import FiniteInverseSemigroup, pseudogroup_failure


class FiniteGroupoid:
    def __init__(self, n_objects, dom, cod, comp, inv, unit,
                 arrow_keys=None, object_keys=None, validate=True):
        self.n_objects = n_objects
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self.comp = tuple(tuple(row) for row in comp)   # None when not composable
        self.inv = tuple(inv)
        self.unit = tuple(unit)                          # object -> arrow
        self.arrow_keys = tuple(arrow_keys) if arrow_keys is not None else None
        self.object_keys = tuple(object_keys) if object_keys is not None else None
        if validate:
            self._validate()

    @property
    def n_arrows(self) -> int:
        return len(self.dom)

    def _validate(self):
        n = self.n_arrows
        if len(self.cod) != n or len(self.inv) != n or len(self.comp) != n:
            raise InputError("arrow data is not total")
        if any(len(row) != n for row in self.comp):
            raise InputError("composition table is not square")
        if any(not 0 <= x < self.n_objects for x in self.dom + self.cod):
            raise InputError("dom/cod out of range")
        if len(self.unit) != self.n_objects:
            raise InputError("unit map is not total")
        for x, u in enumerate(self.unit):
            if not 0 <= u < n or self.dom[u] != x or self.cod[u] != x:
                raise InputError(f"unit arrow of object {x} is malformed")
        for u in range(n):
            for v in range(n):
                c = self.comp[u][v]
                if (c is not None) != (self.dom[u] == self.cod[v]):
                    raise InputError(f"composability mismatch at ({u}, {v})")
                if c is not None:
                    if not 0 <= c < n:
                        raise InputError(f"composite out of range at ({u}, {v})")
                    if self.dom[c] != self.dom[v] or self.cod[c] != self.cod[u]:
                        raise InputError(f"composite endpoints wrong at ({u}, {v})")
        for u in range(n):
            if self.comp[u][self.unit[self.dom[u]]] != u:
                raise InputError(f"right unit law fails at {u}")
            if self.comp[self.unit[self.cod[u]]][u] != u:
                raise InputError(f"left unit law fails at {u}")
            ui = self.inv[u]
            if self.dom[ui] != self.cod[u] or self.cod[ui] != self.dom[u]:
                raise InputError(f"inverse endpoints wrong at {u}")
            if self.inv[ui] != u:
                raise InputError(f"inversion not involutive at {u}")
            if self.comp[u][ui] != self.unit[self.cod[u]]:
                raise InputError(f"u . u^-1 is not a unit at {u}")
            if self.comp[ui][u] != self.unit[self.dom[u]]:
                raise InputError(f"u^-1 . u is not a unit at {u}")
        for u in range(n):
            for v in range(n):
                if self.dom[u] != self.cod[v]:
                    continue
                uv = self.comp[u][v]
                for w in range(n):
                    if self.dom[v] != self.cod[w]:
                        continue
                    if self.comp[uv][w] != self.comp[u][self.comp[v][w]]:
                        raise InputError(f"associativity fails at ({u}, {v}, {w})")


def pair_groupoid(n: int) -> FiniteGroupoid:
    dom = [0] * (n * n)
    cod = [0] * (n * n)
    for z in range(n):
        for y in range(n):
            a = z * n + y
            dom[a] = y
            cod[a] = z
    comp = [[None] * (n * n) for _ in range(n * n)]
    for z in range(n):
        for y in range(n):
            for x in range(n):
                comp[z * n + y][y * n + x] = z * n + x
    inv = [(a % n) * n + a // n for a in range(n * n)]
    unit = [x * n + x for x in range(n)]
    keys = [(a // n, a % n) for a in range(n * n)]
    return FiniteGroupoid(n, dom, cod, comp, inv, unit, arrow_keys=keys)


def discrete_groupoid(n: int) -> FiniteGroupoid:
    comp = [[i if i == j else None for j in range(n)] for i in range(n)]
    return FiniteGroupoid(n, range(n), range(n), comp, range(n), range(n))


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid(0, (), (), (), (), ())


# multiplication tables of the groups used for random instances; identity is 0
_GROUPS: dict[str, tuple[tuple[int, ...], ...]] = {}


def _group_table(name: str) -> tuple[tuple[int, ...], ...]:
    if name in _GROUPS:
        return _GROUPS[name]
    if name.startswith("Z"):
        m = int(name[1:])
        table = tuple(tuple((i + j) % m for j in range(m)) for i in range(m))
    elif name == "V4":
        table = tuple(tuple(i ^ j for j in range(4)) for i in range(4))
    elif name == "S3":
        perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
        idx = {p: i for i, p in enumerate(perms)}
        table = tuple(tuple(idx[tuple(p[q[k]] for k in range(3))] for q in perms)
                      for p in perms)
    else:
        raise InputError(f"unknown group {name}")
    _GROUPS[name] = table
    return table


def transitive_groupoid(n_objects: int, group: str) -> FiniteGroupoid:
    """One connected component: arrows (to, from, g) over a single group."""
    table = _group_table(group)
    m = len(table)
    ginv = [next(j for j in range(m) if table[i][j] == 0) for i in range(m)]
    arrows = [(i, j, g) for i in range(n_objects) for j in range(n_objects)
              for g in range(m)]
    idx = {a: k for k, a in enumerate(arrows)}
    dom = [j for (_, j, _) in arrows]
    cod = [i for (i, _, _) in arrows]
    comp = [[None] * len(arrows) for _ in arrows]
    for k, (i, j, g) in enumerate(arrows):
        for l, (j2, t, h) in enumerate(arrows):
            if j == j2:
                comp[k][l] = idx[(i, t, table[g][h])]
    inv = [idx[(j, i, ginv[g])] for (i, j, g) in arrows]
    unit = [idx[(x, x, 0)] for x in range(n_objects)]
    return FiniteGroupoid(n_objects, dom, cod, comp, inv, unit, arrow_keys=arrows)


def disjoint_union(parts: list[FiniteGroupoid]) -> FiniteGroupoid:
    dom, cod, inv, unit, keys = [], [], [], [], []
    obj_off = 0
    arr_off = 0
    blocks = []
    for g in parts:
        dom += [d + obj_off for d in g.dom]
        cod += [c + obj_off for c in g.cod]
        inv += [u + arr_off for u in g.inv]
        unit += [u + arr_off for u in g.unit]
        keys += [(len(blocks), k) for k in (g.arrow_keys or range(g.n_arrows))]
        blocks.append((arr_off, g))
        obj_off += g.n_objects
        arr_off += g.n_arrows
    n = arr_off
    comp = [[None] * n for _ in range(n)]
    for off, g in blocks:
        for u in range(g.n_arrows):
            for v in range(g.n_arrows):
                c = g.comp[u][v]
                if c is not None:
                    comp[off + u][off + v] = off + c
    return FiniteGroupoid(obj_off, dom, cod, comp, inv, unit, arrow_keys=keys)


def random_groupoid(rng: random.Random, max_arrows: int = 6) -> FiniteGroupoid:
    """Disjoint union of transitive components with at most max_arrows arrows."""
    shapes = [(k, g) for k in (1, 2) for g in ("Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "V4", "S3")
              if k * k * len(_group_table(g)) <= max_arrows]
    parts = []
    budget = max_arrows
    while budget > 0:
        options = [(k, g) for k, g in shapes if k * k * len(_group_table(g)) <= budget]
        if not options or (parts and rng.random() < 0.4):
            break
        k, g = rng.choice(options)
        parts.append(transitive_groupoid(k, g))
        budget -= k * k * len(_group_table(g))
    if not parts:
        parts = [discrete_groupoid(1)]
    return disjoint_union(parts)


class GroupoidQuantale(PointwiseQuantale):
    """Powerset of the arrow set with pointwise groupoid operations."""

    def __init__(self, g: FiniteGroupoid, limits: config.Limits | None = None):
        lim = config.get(limits)
        if 1 << g.n_arrows > lim.max_exhaustive:
            raise ResourceLimitError(
                f"2^{g.n_arrows} opens exceed bound {lim.max_exhaustive}")
        self.groupoid = g
        unit_mask = order.mask_of(g.unit)
        super().__init__(g.n_arrows, unit_mask)
        self._comp = g.comp
        self._ainv = g.inv

    def atom_mult(self, p: int, q: int) -> int:
        c = self._comp[p][q]
        return 0 if c is None else 1 << c

    def atom_inv(self, p: int) -> int:
        return 1 << self._ainv[p]

    def mult(self, a: int, b: int) -> int:
        out = 0
        comp = self._comp
        for p in order.bits(a):
            row = comp[p]
            for q in order.bits(b):
                c = row[q]
                if c is not None:
                    out |= 1 << c
        return out

    def inv(self, a: int) -> int:
        out = 0
        for p in order.bits(a):
            out |= 1 << self._ainv[p]
        return out


def opens_quantale(g: FiniteGroupoid, limits: config.Limits | None = None) -> GroupoidQuantale:
    return GroupoidQuantale(g, limits)


def bisections(g: FiniteGroupoid, limits: config.Limits | None = None,
               oq: GroupoidQuantale | None = None) -> FiniteInverseSemigroup:
    """Arrow sets on which dom and cod are both injective, as an inverse
    semigroup under pointwise operations; keys are arrow masks.

    Cross-checked against the partial units of the open-set quantale.
    """
    lim = config.get(limits)
    if oq is None:
        oq = opens_quantale(g, lim)
    masks = []
    for mask in range(1 << g.n_arrows):
        doms = 0
        cods = 0
        ok = True
        for u in order.bits(mask):
            db = 1 << g.dom[u]
            cb = 1 << g.cod[u]
            if doms & db or cods & cb:
                ok = False
                break
            doms |= db
            cods |= cb
        if ok:
            masks.append(mask)
    units = partial_units(oq, lim)
    if tuple(masks) != tuple(units):
        raise TheoremViolation("bisections_are_partial_units",
                               (len(masks), len(units)))
    pos = {m: i for i, m in enumerate(masks)}
    rows = []
    for a in masks:
        row = []
        for b in masks:
            ab = oq.mult(a, b)
            if ab not in pos:
                raise TheoremViolation("bisections_closed_under_mult", (a, b))
            row.append(pos[ab])
        rows.append(row)
    inv = [pos[oq.inv(a)] for a in masks]
    return FiniteInverseSemigroup(rows, inv, keys=masks)


def idempotent_lattice(s: FiniteInverseSemigroup) -> tuple[FiniteLattice, tuple[int, ...]]:
    """The idempotents under the natural order, with the index translation."""
    ids = s.idempotents
    lat = FiniteLattice.from_leq(
        len(ids), lambda i, j: s.natural_leq(ids[i], ids[j]))
    return lat, ids


def germ_groupoid(s: FiniteInverseSemigroup, verify: bool = True,
                  limits: config.Limits | None = None) -> FiniteGroupoid:
    """Germ model of a pseudogroup whose idempotent lattice is atomic boolean.

    Objects are the atoms of the idempotent lattice. A germ class of (t, x)
    with x an atom below t^-1 t is determined by the product t x, so arrows
    are exactly the elements whose domain idempotent is an atom, with
    composition and inversion inherited. Non-atomic idempotent lattices are
    rejected loudly.

    With verify=True the open-set quantale of the result is checked to be
    isomorphic to the ideal-completion quantale of the pseudogroup, via the
    map reading an ideal as its set of atomic-domain members.
    """
    lim = config.get(limits)
    bad = pseudogroup_failure(s)
    if bad is not None:
        raise PreconditionError(f"not a pseudogroup: {bad[0]} at {bad[1]}")
    elat, ids = idempotent_lattice(s)
    if not elat.is_atomic_boolean():
        raise UnsupportedCaseError("idempotent lattice is not atomic boolean")
    atom_elems = tuple(ids[i] for i in elat.atoms())
    obj_of = {t: x for x, t in enumerate(atom_elems)}

    arrows = [t for t in range(s.n) if s.mult(s.inv(t), t) in obj_of]
    apos = {t: k for k, t in enumerate(arrows)}
    dom = []
    cod = []
    for t in arrows:
        dom.append(obj_of[s.mult(s.inv(t), t)])
        c = s.mult(t, s.inv(t))
        if c not in obj_of:
            raise TheoremViolation("germ_codomain_is_atom", (t,))
        cod.append(obj_of[c])
    n = len(arrows)
    comp = [[None] * n for _ in range(n)]
    for k, u in enumerate(arrows):
        for l, v in enumerate(arrows):
            if dom[k] == cod[l]:
                uv = s.mult(u, v)
                if uv not in apos:
                    raise TheoremViolation("germ_composition_closed", (u, v))
                comp[k][l] = apos[uv]
    inv = [apos[s.inv(t)] for t in arrows]
    unit = [apos[t] for t in atom_elems]
    g = FiniteGroupoid(len(atom_elems), dom, cod, comp, inv, unit,
                       arrow_keys=arrows, object_keys=atom_elems)
    if verify:
        _verify_opens_match_completion(s, g, arrows, lim)
    return g


def _verify_opens_match_completion(s, g, arrows, lim):
    comp = compatible_ideals(s, lim)
    oq = opens_quantale(g, lim)
    if comp.n != oq.n:
        raise TheoremViolation("opens_vs_completion_size", (comp.n, oq.n))
    arrow_bit = {t: 1 << k for k, t in enumerate(arrows)}
    theta = []
    for mask in comp.ideals:
        m = 0
        for t in order.bits(mask):
            if t in arrow_bit:
                m |= arrow_bit[t]
        theta.append(m)
    if len(set(theta)) != comp.n:
        raise TheoremViolation("opens_vs_completion_injective", ())
    cq = comp.quantale
    for i in range(comp.n):
        for j in range(comp.n):
            if theta[cq.mult(i, j)] != oq.mult(theta[i], theta[j]):
                raise TheoremViolation("opens_vs_completion_mult", (i, j))
            if theta[cq.join_pair(i, j)] != theta[i] | theta[j]:
                raise TheoremViolation("opens_vs_completion_join", (i, j))
    for i in range(comp.n):
        if theta[cq.inv(i)] != oq.inv(theta[i]):
            raise TheoremViolation("opens_vs_completion_inv", (i,))
    if theta[cq.unit] != oq.unit:
        raise TheoremViolation("opens_vs_completion_unit", ())


def full_subgroupoid(g: FiniteGroupoid, objects) -> FiniteGroupoid:
    objects = sorted(set(objects))
    omap = {x: i for i, x in enumerate(objects)}
    keep = [u for u in range(g.n_arrows)
            if g.dom[u] in omap and g.cod[u] in omap]
    amap = {u: k for k, u in enumerate(keep)}
    comp = [[amap[g.comp[u][v]] if g.comp[u][v] is not None else None
             for v in keep] for u in keep]
    # composability within the subgroupoid is inherited directly
    return FiniteGroupoid(
        len(objects),
        [omap[g.dom[u]] for u in keep],
        [omap[g.cod[u]] for u in keep],
        comp,
        [amap[g.inv[u]] for u in keep],
        [amap[g.unit[x]] for x in objects],
        arrow_keys=keep, object_keys=objects)


def orbit_groupoid(g: FiniteGroupoid) -> FiniteGroupoid:
    """Orbits of objects, as a discrete groupoid (the orbit space)."""
    parent = list(range(g.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(g.n_arrows):
        a, b = find(g.dom[u]), find(g.cod[u])
        if a != b:
            parent[max(a, b)] = min(a, b)
    reps = sorted({find(x) for x in range(g.n_objects)})
    h = discrete_groupoid(len(reps))
    h.object_keys = tuple(tuple(sorted(x for x in range(g.n_objects)
                                       if find(x) == r)) for r in reps)
    return h


@dataclass
class GroupoidIso:
    objects: tuple[int, ...]
    arrows: tuple[int, ...]


def groupoid_isomorphism(g: FiniteGroupoid, h: FiniteGroupoid) -> GroupoidIso | None:
    """Backtracking search, pruned by object degree invariants."""
    if g.n_objects != h.n_objects or g.n_arrows != h.n_arrows:
        return None

    def hom_sizes(k: FiniteGroupoid):
        hs = [[0] * k.n_objects for _ in range(k.n_objects)]
        for u in range(k.n_arrows):
            hs[k.dom[u]][k.cod[u]] += 1
        return hs

    hs_g = hom_sizes(g)
    hs_h = hom_sizes(h)

    def obj_inv(hs, x):
        return (hs[x][x], tuple(sorted(hs[x])), tuple(sorted(row[x] for row in hs)))

    inv_g = [obj_inv(hs_g, x) for x in range(g.n_objects)]
    inv_h = [obj_inv(hs_h, x) for x in range(h.n_objects)]
    if sorted(inv_g) != sorted(inv_h):
        return None

    omap = [-1] * g.n_objects
    used_obj = [False] * h.n_objects

    def assign_objects(x):
        if x == g.n_objects:
            return match_arrows()
        for y in range(h.n_objects):
            if used_obj[y] or inv_g[x] != inv_h[y]:
                continue
            if any(omap[z] != -1 and hs_g[x][z] != hs_h[y][omap[z]] for z in range(g.n_objects)):
                continue
            if any(omap[z] != -1 and hs_g[z][x] != hs_h[omap[z]][y] for z in range(g.n_objects)):
                continue
            omap[x] = y
            used_obj[y] = True
            res = assign_objects(x + 1)
            if res is not None:
                return res
            omap[x] = -1
            used_obj[y] = False
        return None

    def match_arrows():
        amap = [-1] * g.n_arrows
        used = [False] * h.n_arrows

        def ok(u, v):
            if h.dom[v] != omap[g.dom[u]] or h.cod[v] != omap[g.cod[u]]:
                return False
            if (g.unit[g.dom[u]] == u) != (h.unit[h.dom[v]] == v):
                return False
            iu = g.inv[u]
            if amap[iu] != -1 and amap[iu] != h.inv[v]:
                return False
            for w in range(g.n_arrows):
                if amap[w] == -1:
                    continue
                if g.dom[u] == g.cod[w]:
                    c = amap[g.comp[u][w]]
                    if c != -1 and h.comp[v][amap[w]] != c:
                        return False
                if g.dom[w] == g.cod[u]:
                    c = amap[g.comp[w][u]]
                    if c != -1 and h.comp[amap[w]][v] != c:
                        return False
            return True

        def assign(u):
            if u == g.n_arrows:
                for a in range(g.n_arrows):
                    for bb in range(g.n_arrows):
                        if g.comp[a][bb] is not None:
                            if h.comp[amap[a]][amap[bb]] != amap[g.comp[a][bb]]:
                                return None
                return GroupoidIso(tuple(omap), tuple(amap))
            for v in range(h.n_arrows):
                if used[v] or not ok(u, v):
                    continue
                amap[u] = v
                used[v] = True
                res = assign(u + 1)
                if res is not None:
                    return res
                amap[u] = -1
                used[v] = False
            return None

        return assign(0)

    return assign_objects(0)


# ---------------------------------------------------------------------------
# quotienting a relation quantale by one of its projections


@dataclass
class QuotientIso:
    nset: int
    rel: int
    classes: tuple[tuple[int, ...], ...]
    quotient: "RelationQuantale"
    forward: dict[int, int]      # relative unit -> partial bijection on classes
    backward: dict[int, int]


def quotient_iso(nset: int, rel: int, limits: config.Limits | None = None) -> QuotientIso:
    """The relative units of a partial equivalence relation on an n-set are
    isomorphic, as a pseudogroup, to the partial bijections on its classes.

    Builds both directions (read a relation classwise / blow a class map up
    to pairs), verifies both round trips, that the forward map is a
    homomorphism of pseudogroups, and the bijection itself.
    """
    from .projections import pseudogroup_of
    from .quantale import RelationQuantale, is_projection

    lim = config.get(limits)
    q = RelationQuantale(nset)
    if not is_projection(q, rel):
        raise PreconditionError("relation is not a partial equivalence")

    members = sorted({y for y in range(nset) if rel >> (y * nset + y) & 1})
    class_of: dict[int, int] = {}
    classes: list[tuple[int, ...]] = []
    for y in members:
        if y in class_of:
            continue
        cls = tuple(z for z in members if rel >> (z * nset + y) & 1)
        for z in cls:
            class_of[z] = len(classes)
        classes.append(cls)
    k = len(classes)
    qp = RelationQuantale(k)

    def alpha_of(u: int) -> int:
        out = 0
        for p in order.bits(u):
            zp, yp = divmod(p, nset)
            out |= 1 << (class_of[zp] * k + class_of[yp])
        return out

    def u_of(alpha: int) -> int:
        out = 0
        for p in order.bits(alpha):
            cz, cy = divmod(p, k)
            for z in classes[cz]:
                for y in classes[cy]:
                    out |= 1 << (z * nset + y)
        return out

    dossier = pseudogroup_of(q, rel, lim)
    units = dossier.units
    alphas = partial_units(qp, lim)
    alpha_set = set(alphas)

    forward: dict[int, int] = {}
    for u in units:
        a = alpha_of(u)
        if a not in alpha_set:
            raise TheoremViolation("classwise_image_is_partial_bijection", (u,))
        if u_of(a) != u:
            raise TheoremViolation("roundtrip_on_relative_units", (u,))
        forward[u] = a
    for a in alphas:
        u = u_of(a)
        if u not in forward or forward[u] != a:
            raise TheoremViolation("roundtrip_on_partial_bijections", (a,))
    if len(set(forward.values())) != len(alphas):
        raise TheoremViolation("classwise_map_bijective",
                               (len(set(forward.values())), len(alphas)))

    sg = dossier.semigroup
    keys = sg.keys
    for i in range(sg.n):
        for j in range(sg.n):
            if forward[keys[sg.mult(i, j)]] != qp.mult(forward[keys[i]], forward[keys[j]]):
                raise TheoremViolation("classwise_map_mult", (keys[i], keys[j]))
    for i in range(sg.n):
        if forward[keys[sg.inv(i)]] != qp.inv(forward[keys[i]]):
            raise TheoremViolation("classwise_map_inv", (keys[i],))
    for i, j in sg.compatible_pairs:
        jq = q.join_pair(keys[i], keys[j])
        if forward[jq] != forward[keys[i]] | forward[keys[j]]:
            raise TheoremViolation("classwise_map_join", (keys[i], keys[j]))

    backward = {a: u for u, a in forward.items()}
    return QuotientIso(nset, rel, tuple(classes), qp, forward, backward)
