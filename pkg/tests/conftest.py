import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qlab.groupoid import opens_quantale, pair_groupoid, random_groupoid
from qlab.lattice import FiniteLattice
from qlab.quantale import TableQuantale, rel_quantale, stably_gelfand_witness
from qlab.search import enumerate_all_quantales
from qlab.semigroup import FiniteInverseSemigroup, symmetric_inverse_monoid


@pytest.fixture(scope="session")
def rel1():
    return rel_quantale(1)


@pytest.fixture(scope="session")
def rel2():
    return rel_quantale(2)


@pytest.fixture(scope="session")
def rel3():
    return rel_quantale(3)


@pytest.fixture(scope="session")
def small_quantales():
    """Every involutive quantale with carrier at most 4, up to lattice iso."""
    return tuple(enumerate_all_quantales(4))


@pytest.fixture(scope="session")
def stably_gelfand_small(small_quantales):
    return tuple(q for q in small_quantales if stably_gelfand_witness(q) is None)


@pytest.fixture(scope="session")
def groupoid_corpus():
    """A dozen seeded random discrete groupoids with at most 6 arrows."""
    rng = random.Random(20240917)
    gs = [random_groupoid(rng, 6) for _ in range(9)]
    gs.append(pair_groupoid(2))
    gs.append(pair_groupoid(1))
    return tuple(gs)


@pytest.fixture(scope="session")
def groupoid_quantales(groupoid_corpus):
    return tuple(opens_quantale(g) for g in groupoid_corpus)


def two_chain_pseudogroup():
    # 0 < s, both idempotent
    return FiniteInverseSemigroup(((0, 0), (0, 1)), (0, 1))


def three_chain_idempotents():
    # 0 < a < b, multiplication is min
    return FiniteInverseSemigroup(
        ((0, 0, 0), (0, 1, 1), (0, 1, 2)), (0, 1, 2))


def boolean_idempotents():
    # the four subsets of a 2-set under intersection
    masks = (0, 1, 2, 3)
    idx = {m: i for i, m in enumerate(masks)}
    rows = tuple(tuple(idx[a & b] for b in masks) for a in masks)
    return FiniteInverseSemigroup(rows, (0, 1, 2, 3))


def z2_with_zero():
    # {0, e, g} with g*g = e; the zero makes the empty join exist
    rows = ((0, 0, 0), (0, 1, 2), (0, 2, 1))
    return FiniteInverseSemigroup(rows, (0, 1, 2))


@pytest.fixture(scope="session")
def pseudogroup_corpus(groupoid_corpus):
    """Named pseudogroups with at most 10 elements."""
    from qlab.groupoid import bisections

    out = {
        "trivial": FiniteInverseSemigroup(((0,),), (0,)),
        "two_chain": two_chain_pseudogroup(),
        "three_chain_idem": three_chain_idempotents(),
        "boolean_idem": boolean_idempotents(),
        "z2_with_zero": z2_with_zero(),
        "sim2": symmetric_inverse_monoid(2),
    }
    for i, g in enumerate(groupoid_corpus):
        if g.n_arrows <= 3:
            out[f"bisections[{i}]"] = bisections(g)
    return out


def m3_lattice():
    # bottom 0, atoms 1..3, top 4
    return FiniteLattice.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def zero_mult_quantale(lat):
    bot = lat.bottom
    rows = tuple(tuple(bot for _ in range(lat.n)) for _ in range(lat.n))
    return TableQuantale(lat, rows, tuple(range(lat.n)))


def chain3_gelfand_probe():
    """Chain 0 < m < 1 with meet multiplication except m.m = 0, identity
    involution; the stated class flags are frozen from a by-hand table scan
    in the tests that use it."""
    lat = FiniteLattice.chain(3)
    rows = ((0, 0, 0), (0, 0, 1), (0, 1, 2))
    return TableQuantale(lat, rows, (0, 1, 2))


def m3_unital_quantale():
    """Strongly Gelfand, unital, covering fails and the carrier is not a
    frame; the unit is one of the atoms."""
    rows = (
        (0, 0, 0, 0, 0),
        (0, 1, 2, 3, 4),
        (0, 2, 2, 0, 2),
        (0, 3, 0, 3, 3),
        (0, 4, 2, 3, 4),
    )
    return TableQuantale(m3_lattice(), rows, (0, 1, 2, 3, 4), unit=1)


def chain3_subunit_quantale():
    """Strongly Gelfand quantal frame whose unit is the middle of the chain,
    so the partial units join below the top."""
    lat = FiniteLattice.chain(3)
    return TableQuantale(lat, ((0, 0, 0), (0, 1, 2), (0, 2, 2)), (0, 1, 2), unit=1)


def chain3_nonunital_quantale():
    """Strongly Gelfand quantal frame with no unit at all."""
    lat = FiniteLattice.chain(3)
    return TableQuantale(lat, ((0, 0, 0), (0, 2, 2), (0, 2, 2)), (0, 1, 2))
