"""Independent reference implementations used as test oracles.

Everything here recomputes expected values from first principles (set
comprehensions, subset enumeration) and stays independent of the code paths
it checks.
"""

from itertools import combinations


def compose_pairs(r, s):
    return frozenset((z, x) for (z, y) in r for (y2, x) in s if y == y2)


def converse_pairs(r):
    return frozenset((y, z) for (z, y) in r)


def mask_from_pairs(pairs, n):
    m = 0
    for z, y in pairs:
        m |= 1 << (z * n + y)
    return m


def pairs_from_mask(mask, n):
    return frozenset((p // n, p % n) for p in range(n * n) if mask >> p & 1)


def all_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def all_pers(n):
    """All partial equivalence relations on an n-set, as pair frozensets:
    equivalence relations on each subset, enumerated via set partitions."""
    out = set()
    base = list(range(n))
    for k in range(n + 1):
        for subset in combinations(base, k):
            for part in all_partitions(subset):
                rel = frozenset((a, b) for block in part for a in block for b in block)
                out.add(rel)
    return out


def all_partial_bijections(n):
    """Graphs of bijections between subsets of an n-set, as (out, in) pairs."""
    out = set()

    def grow(pairs, used_out, used_in):
        out.add(frozenset(pairs))
        for z in range(n):
            if z in used_out:
                continue
            for y in range(n):
                if y in used_in:
                    continue
                grow(pairs | {(z, y)}, used_out | {z}, used_in | {y})

    grow(frozenset(), frozenset(), frozenset())
    return out


def brute_force_ideals(s):
    """All compatible ideals of a finite inverse semigroup by subset scan;
    feasible up to ten or so elements."""
    from qlab.completion import is_compatible_ideal

    return {mask for mask in range(1 << s.n) if is_compatible_ideal(s, mask)}


def brute_force_is_pseudogroup(s):
    """Direct quantifier check over every subset: pairwise compatible subsets
    must have joins, and multiplication must distribute over them."""
    masks = []
    for mask in range(1 << s.n):
        members = [i for i in range(s.n) if mask >> i & 1]
        if all(s.compatible(a, b) for a in members for b in members):
            masks.append(members)
    for members in masks:
        j = s.join(members)
        if j is None:
            return False
        for a in range(s.n):
            left = [s.mult(a, t) for t in members]
            right = [s.mult(t, a) for t in members]
            if s.join(left) != s.mult(a, j) or s.join(right) != s.mult(j, a):
                return False
    return True
