import pytest

from qlab.completion import (compatible_ideals, extend_hom, is_compatible_ideal,
                             principal_ideal)
from qlab.config import Limits
from qlab.errors import PreconditionError, ResourceLimitError
from qlab.lattice import FiniteLattice
from qlab.quantale import (TableQuantale, check_axioms, classify, partial_units,
                           projections)
from qlab.semigroup import FiniteInverseSemigroup, symmetric_inverse_monoid

import oracles
from conftest import two_chain_pseudogroup


def test_two_chain_completion_is_two_chain():
    s = two_chain_pseudogroup()
    comp = compatible_ideals(s)
    assert comp.ideals == (0b01, 0b11)
    q = comp.quantale
    assert q.n == 2
    assert q.unit == 1           # both elements are idempotent
    assert check_axioms(q).ok


def test_enumeration_matches_subset_oracle(pseudogroup_corpus):
    for name, s in pseudogroup_corpus.items():
        if s.n > 10:
            continue
        comp = compatible_ideals(s)
        assert set(comp.ideals) == oracles.brute_force_ideals(s), name


def test_ideal_product_matches_least_containing_ideal(pseudogroup_corpus):
    for name, s in pseudogroup_corpus.items():
        if s.n > 7:
            continue
        comp = compatible_ideals(s)
        all_ideals = sorted(oracles.brute_force_ideals(s))
        q = comp.quantale
        for i, mi in enumerate(comp.ideals):
            for j, mj in enumerate(comp.ideals):
                prod = 0
                for a in range(s.n):
                    if mi >> a & 1:
                        for b in range(s.n):
                            if mj >> b & 1:
                                prod |= 1 << s.mult(a, b)
                containing = [m for m in all_ideals if prod & ~m == 0]
                least = min(containing, key=lambda m: (bin(m).count("1"), m))
                assert all(m & least == least for m in containing)
                assert comp.ideals[q.mult(i, j)] == least, name


def test_sim2_completion_is_the_full_relation_algebra_size():
    comp = compatible_ideals(symmetric_inverse_monoid(2))
    assert comp.n == 16
    rep = classify(comp.quantale)
    assert all(rep.flags().values())


def test_completions_are_inverse_quantal_frames(pseudogroup_corpus):
    for name, s in pseudogroup_corpus.items():
        comp = compatible_ideals(s)
        q = comp.quantale
        assert check_axioms(q).ok, name
        rep = classify(q)
        assert rep.is_unital and rep.is_quantal_frame, name
        assert rep.is_supported and rep.covering_holds, name
        assert rep.is_stably_gelfand and rep.is_strongly_gelfand, name


def test_partial_units_of_completion_are_the_principal_ideals(pseudogroup_corpus):
    """Round trip at the pseudogroup level: the partial units of the ideal
    quantale are exactly the down-sets, and element -> down-set is an
    isomorphism of inverse semigroups."""
    for name, s in pseudogroup_corpus.items():
        comp = compatible_ideals(s)
        q = comp.quantale
        units = partial_units(q)
        assert sorted(units) == sorted(set(comp.principal)), name
        assert len(set(comp.principal)) == s.n, name
        back = {p: t for t, p in enumerate(comp.principal)}
        for a in range(s.n):
            for b in range(s.n):
                assert back[q.mult(comp.principal[a], comp.principal[b])] == s.mult(a, b)
            assert back[q.inv(comp.principal[a])] == s.inv(a)


def test_principal_ideal_shapes():
    s = symmetric_inverse_monoid(2)
    idx = {f: i for i, f in enumerate(s.keys)}
    zero = idx[()]
    assert principal_ideal(s, zero) == 1 << zero
    e = idx[((0, 0), (1, 1))]
    # the identity dominates every idempotent
    assert principal_ideal(s, e) == s.down[e]
    # the transposition dominates the zero map and its two restrictions,
    # per a direct natural-order scan
    t = idx[((0, 1), (1, 0))]
    members = {s.keys[i] for i in range(s.n) if principal_ideal(s, t) >> i & 1}
    want = {i for i in range(s.n) if s.natural_leq(i, t)}
    assert members == {s.keys[i] for i in want}
    assert members == {(), ((0, 1),), ((1, 0),), ((0, 1), (1, 0))}


def test_extend_hom_along_itself_is_identity():
    s = symmetric_inverse_monoid(2)
    comp = compatible_ideals(s)
    ext = extend_hom(comp, comp.quantale, comp.principal)
    assert ext.values == tuple(range(comp.n))


def test_extend_hom_zero_map():
    s = FiniteInverseSemigroup(((0,),), (0,))
    comp = compatible_ideals(s)
    lat = FiniteLattice.chain(1)
    target = TableQuantale(lat, ((0,),), (0,), unit=0)
    ext = extend_hom(comp, target, (0,))
    assert ext.values == (0,)


def test_extend_hom_rejects_non_homomorphisms(rel2):
    s = two_chain_pseudogroup()
    comp = compatible_ideals(s)
    # send the top idempotent to a non-idempotent relation
    bad = (0, 2)
    with pytest.raises(PreconditionError):
        extend_hom(comp, rel2, bad)


def test_completion_resource_bounds():
    s = symmetric_inverse_monoid(3)
    with pytest.raises(ResourceLimitError):
        compatible_ideals(s, Limits(max_completion_elements=10))
    with pytest.raises(ResourceLimitError):
        compatible_ideals(symmetric_inverse_monoid(2), Limits(max_ideals=5))


def test_is_compatible_ideal_direct_definition():
    s = two_chain_pseudogroup()
    assert is_compatible_ideal(s, 0b01)
    assert is_compatible_ideal(s, 0b11)
    assert not is_compatible_ideal(s, 0b10)  # not downward closed (0 missing)
    assert not is_compatible_ideal(s, 0b00)  # the empty join is missing
