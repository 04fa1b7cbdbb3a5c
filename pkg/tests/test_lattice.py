import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlab.errors import InputError
from qlab.lattice import FiniteLattice, Lattice, PowersetLattice

from conftest import m3_lattice


def test_empty_join_is_bottom_empty_meet_is_top():
    lat = FiniteLattice.chain(4)
    assert lat.join([]) == lat.bottom == 0
    assert lat.meet([]) == lat.top == 3
    pl = PowersetLattice(3)
    assert pl.join([]) == 0
    assert pl.meet([]) == 7


def test_powerset_join_is_union():
    pl = PowersetLattice(2)
    assert pl.join_pair(0b01, 0b10) == 0b11
    assert pl.meet_pair(0b01, 0b11) == 0b01
    assert pl.leq(0b01, 0b11) and not pl.leq(0b11, 0b01)


def test_m3_join_of_two_atoms_is_top():
    # frozen by scanning the 5-element order by hand: the only upper bound of
    # two distinct atoms is the top
    lat = m3_lattice()
    a, b, c = lat.atoms()
    assert (a, b, c) == (1, 2, 3)
    for x, y in [(a, b), (a, c), (b, c)]:
        uppers = [u for u in range(5) if lat.leq(x, u) and lat.leq(y, u)]
        assert uppers == [4]
        assert lat.join_pair(x, y) == 4
        assert lat.meet_pair(x, y) == 0


def test_m3_is_not_a_frame_but_chains_and_powersets_are():
    lat = m3_lattice()
    assert not lat.is_frame()
    a, b, c = lat.frame_witness()
    assert lat.meet_pair(a, lat.join_pair(b, c)) != lat.join_pair(
        lat.meet_pair(a, b), lat.meet_pair(a, c))
    assert FiniteLattice.chain(2).is_frame()
    assert FiniteLattice.chain(5).is_frame()
    assert PowersetLattice(3).is_frame()


def test_powerset_frame_shortcut_agrees_with_brute_force():
    for width in range(4):
        pl = PowersetLattice(width)
        assert Lattice.frame_witness(pl) is None


def test_atoms_and_atomic_boolean():
    pl = PowersetLattice(3)
    assert pl.atoms() == (1, 2, 4)
    assert pl.is_atomic_boolean()
    chain = FiniteLattice.chain(3)
    assert chain.atoms() == (1,)
    assert not chain.is_atomic_boolean()
    m3 = m3_lattice()
    assert len(m3.atoms()) == 3
    assert not m3.is_atomic_boolean()  # would need 8 elements, has 5


def test_table_powerset_matches_symbolic():
    pl = PowersetLattice(3)
    tab = FiniteLattice.from_leq(8, lambda i, j: i & ~j == 0)
    for i in range(8):
        for j in range(8):
            assert tab.leq(i, j) == pl.leq(i, j)
            assert tab.join_pair(i, j) == pl.join_pair(i, j)
            assert tab.meet_pair(i, j) == pl.meet_pair(i, j)
    assert tab.is_atomic_boolean()
    assert tab.atoms() == pl.atoms()


def test_invalid_orders_are_rejected():
    with pytest.raises(InputError):
        FiniteLattice.from_pairs(2, [])  # two incomparable elements, no top
    with pytest.raises(InputError):
        FiniteLattice((0b11, 0b11), validate=True)  # antisymmetry fails
    with pytest.raises(InputError):
        # two maximal elements above a shared bottom: no join
        FiniteLattice.from_pairs(3, [(0, 1), (0, 2)])


def test_carrier_size_cap():
    import qlab.config as config

    lim = config.Limits(max_table_carrier=4)
    with pytest.raises(InputError):
        FiniteLattice.chain(5).__class__.from_leq(5, lambda i, j: i <= j, limits=lim)


@st.composite
def lattice_and_subset(draw):
    from qlab.search import enumerate_lattices

    pool = [lat for n in range(1, 6) for lat in enumerate_lattices(n)]
    pool.append(PowersetLattice(4))
    pool.append(PowersetLattice(6))
    lat = draw(st.sampled_from(pool))
    subset = draw(st.lists(st.integers(0, lat.n - 1), max_size=6))
    return lat, subset


@settings(max_examples=200, deadline=None)
@given(lattice_and_subset())
def test_join_is_least_upper_bound(data):
    lat, subset = data
    j = lat.join(subset)
    assert all(lat.leq(x, j) for x in subset)
    # any other upper bound dominates the join; quantified over the carrier
    # for table lattices, over a mask sample for the big powerset
    if lat.n <= 64:
        for u in range(lat.n):
            if all(lat.leq(x, u) for x in subset):
                assert lat.leq(j, u)
    else:
        for x in subset:
            assert lat.leq(lat.meet_pair(j, x), j)


@settings(max_examples=100, deadline=None)
@given(lattice_and_subset())
def test_meet_is_greatest_lower_bound(data):
    lat, subset = data
    m = lat.meet(subset)
    assert all(lat.leq(m, x) for x in subset)
    if lat.n <= 64:
        for u in range(lat.n):
            if all(lat.leq(u, x) for x in subset):
                assert lat.leq(u, m)
