"""Enumeration of small structures and constraint-driven search.

Lattices are enumerated up to isomorphism with the bottom first and the top
last; multiplications are enumerated through their values on join-irreducible
pairs (a join-preserving bilinear map is determined there), then filtered by
the remaining laws, so the stream is exhaustive for each carrier.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import config, order
from .errors import InputError, ResourceLimitError
from .lattice import FiniteLattice
from .quantale import TableQuantale, check_axioms, classify, find_unit

_LATTICE_CACHE: dict[int, tuple[FiniteLattice, ...]] = {}


def enumerate_lattices(n: int) -> tuple[FiniteLattice, ...]:
    """All lattices on n elements up to isomorphism (element 0 the bottom,
    element n-1 the top, indices a linear extension)."""
    if n in _LATTICE_CACHE:
        return _LATTICE_CACHE[n]
    if n <= 0:
        raise InputError("carrier must be nonempty")
    if n == 1:
        out = (FiniteLattice((1,), validate=False),)
        _LATTICE_CACHE[n] = out
        return out
    mids = range(1, n - 1)
    candidate_pairs = [(i, j) for i in mids for j in mids if i < j]
    seen = set()
    found = []
    for choice in itertools.product((False, True), repeat=len(candidate_pairs)):
        pairs = [p for p, c in zip(candidate_pairs, choice) if c]
        pairs += [(0, i) for i in range(1, n)]
        pairs += [(i, n - 1) for i in range(n - 1)]
        try:
            lat = FiniteLattice.from_pairs(n, pairs)
        except InputError:
            continue
        key = _canonical_key(lat)
        if key in seen:
            continue
        seen.add(key)
        found.append(lat)
    out = tuple(found)
    _LATTICE_CACHE[n] = out
    return out


def _canonical_key(lat: FiniteLattice) -> tuple:
    n = lat.n
    best = None
    for perm in itertools.permutations(range(1, n - 1)):
        full = (0, *perm, n - 1) if n >= 2 else (0,)
        inv = [0] * n
        for new, old in enumerate(full):
            inv[old] = new
        rows = tuple(order.mask_of(inv[j] for j in order.bits(lat.up[old]))
                     for old in full)
        if best is None or rows < best:
            best = rows
    return best


def join_irreducibles(lat: FiniteLattice) -> tuple[int, ...]:
    out = []
    for p in range(lat.n):
        if p == lat.bottom:
            continue
        below = [x for x in range(lat.n) if x != p and lat.leq(x, p)]
        if lat.join(below) != p:
            out.append(p)
    return tuple(out)


def join_preserving_maps(lat: FiniteLattice) -> tuple[tuple[int, ...], ...]:
    """All unary maps preserving arbitrary joins, as full value tables."""
    ji = join_irreducibles(lat)
    ji_below = [tuple(p for p in ji if lat.leq(p, a)) for a in range(lat.n)]
    maps = []
    for values in itertools.product(range(lat.n), repeat=len(ji)):
        g = dict(zip(ji, values))
        f = tuple(lat.join(g[p] for p in ji_below[a]) for a in range(lat.n))
        ok = True
        for a in range(lat.n):
            for b in range(lat.n):
                if f[lat.join_pair(a, b)] != lat.join_pair(f[a], f[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            maps.append(f)
    return tuple(sorted(set(maps)))


def enumerate_quantales(lat: FiniteLattice):
    """Every involutive quantale structure on the lattice, in a fixed order."""
    n = lat.n
    ji = join_irreducibles(lat)
    ji_below = [tuple(p for p in ji if lat.leq(p, a)) for a in range(n)]
    jp = join_preserving_maps(lat)

    mult_tables = []
    for rows in itertools.product(jp, repeat=len(ji)):
        byp = dict(zip(ji, rows))
        table = tuple(
            tuple(lat.join(byp[p][b] for p in ji_below[a]) for b in range(n))
            for a in range(n))
        ok = True
        for a in range(n):
            for b in range(n):
                if table[lat.join_pair(a, b)] != tuple(
                        lat.join_pair(table[a][c], table[b][c]) for c in range(n)):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        assoc = True
        for a in range(n):
            for b in range(n):
                ab = table[a][b]
                for c in range(n):
                    if table[ab][c] != table[a][table[b][c]]:
                        assoc = False
                        break
                if not assoc:
                    break
            if not assoc:
                break
        if assoc:
            mult_tables.append(table)

    involutions = []
    for f in jp:
        if any(f[f[a]] != a for a in range(n)):
            continue
        involutions.append(f)

    for table in mult_tables:
        for inv in involutions:
            if any(inv[table[a][b]] != table[inv[b]][inv[a]]
                   for a in range(n) for b in range(n)):
                continue
            q = TableQuantale(lat, table, inv)
            q.unit = find_unit(q)
            yield q


def enumerate_all_quantales(max_size: int):
    for n in range(1, max_size + 1):
        for lat in enumerate_lattices(n):
            yield from enumerate_quantales(lat)


CONSTRAINT_NAMES = ("unital", "gelfand", "stably_gelfand", "strongly_gelfand",
                    "quantal_frame", "supported", "covering")


def _flag(report, name: str) -> bool:
    return {
        "unital": report.is_unital,
        "gelfand": report.is_gelfand,
        "stably_gelfand": report.is_stably_gelfand,
        "strongly_gelfand": report.is_strongly_gelfand,
        "quantal_frame": report.is_quantal_frame,
        "supported": report.is_supported,
        "covering": report.covering_holds,
    }[name]


@dataclass
class SearchHit:
    size: int
    mult: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    up: tuple[int, ...]
    unit: int | None
    flags: dict[str, bool]


@dataclass
class SearchResult:
    mode: str
    tried: int
    hits: list[SearchHit] = field(default_factory=list)
    exhausted: bool = False
    vacuous: bool = False


def random_quantale(rng: random.Random, max_size: int) -> TableQuantale | None:
    """One random candidate: random tables on a random small lattice,
    discarded unless the axioms hold."""
    n = rng.randint(1, max_size)
    lats = enumerate_lattices(n)
    lat = lats[rng.randrange(len(lats))]
    table = tuple(tuple(rng.randrange(n) for _ in range(n)) for _ in range(n))
    inv = tuple(rng.randrange(n) for _ in range(n))
    q = TableQuantale(lat, table, inv)
    if not check_axioms(q).ok:
        return None
    q.unit = find_unit(q)
    return q


def search(require: list[str], forbid: list[str], max_size: int,
           seed: int = 0, mode: str = "exhaustive", max_hits: int = 1,
           trials: int = 2000, limits: config.Limits | None = None) -> SearchResult:
    """Stream candidate quantales and keep those matching the constraints.

    Exhaustive mode enumerates every structure up to the size bound; random
    mode draws seeded random tables and filters by the axioms. Contradictory
    constraints are flagged vacuous without searching.
    """
    lim = config.get(limits)
    if max_size > lim.max_search_size:
        raise ResourceLimitError(
            f"size bound {max_size} exceeds search limit {lim.max_search_size}")
    for name in list(require) + list(forbid):
        if name not in CONSTRAINT_NAMES:
            raise InputError(f"unknown constraint {name!r}")
    result = SearchResult(mode=mode, tried=0)
    if set(require) & set(forbid):
        result.vacuous = True
        result.exhausted = True
        return result
    if max_size <= 0:
        result.exhausted = True
        return result

    def matches(q) -> SearchHit | None:
        rep = classify(q, lim)
        if all(_flag(rep, c) for c in require) and not any(_flag(rep, c) for c in forbid):
            flags = {c: _flag(rep, c) for c in CONSTRAINT_NAMES}
            up = getattr(q.lat, "up", tuple((1 << q.n) - 1 for _ in range(q.n)))
            return SearchHit(size=q.n, mult=tuple(tuple(q.mult(a, b) for b in range(q.n))
                                                  for a in range(q.n)),
                             inv=tuple(q.inv(a) for a in range(q.n)),
                             up=tuple(up), unit=q.unit, flags=flags)
        return None

    if mode == "exhaustive":
        for q in enumerate_all_quantales(max_size):
            result.tried += 1
            hit = matches(q)
            if hit is not None:
                result.hits.append(hit)
                if len(result.hits) >= max_hits:
                    return result
        result.exhausted = True
        return result
    if mode == "random":
        rng = random.Random(seed)
        for _ in range(trials):
            result.tried += 1
            q = random_quantale(rng, max_size)
            if q is None:
                continue
            hit = matches(q)
            if hit is not None:
                result.hits.append(hit)
                if len(result.hits) >= max_hits:
                    return result
        return result
    raise InputError(f"unknown search mode {mode!r}")
