import itertools

import pytest

from zdlc import ba_core
from zdlc.ba_core import (
    CapacityError,
    FiniteBA,
    check_lba,
    dump,
    elements_as_ambient,
    flatten,
    generate_subalgebra,
    ideal,
    ideal_pseudocomplement,
    is_simple_ideal,
    powerset_algebra,
    ultrafilters,
)


def closure_oracle(ambient, gens):
    """Exhaustive closure under complement and meet until fixpoint."""
    elems = {ambient.bottom, ambient.top} | {frozenset(g) for g in gens}
    changed = True
    while changed:
        changed = False
        for a, b in itertools.product(list(elems), repeat=2):
            for c in (ambient.complement(a), ambient.meet(a, b), ambient.join(a, b)):
                if c not in elems:
                    elems.add(c)
                    changed = True
    return elems


def test_one_generator_gives_four_elements():
    amb = powerset_algebra(range(1, 5))
    sub = generate_subalgebra(amb, [{1, 2}])
    got = set(elements_as_ambient(sub))
    assert got == {frozenset(), frozenset({1, 2}), frozenset({3, 4}), frozenset({1, 2, 3, 4})}


def test_singletons_generate_full_powerset():
    amb = powerset_algebra(range(3))
    sub = generate_subalgebra(amb, [{0}, {1}, {2}])
    assert sub.size == 8
    assert set(elements_as_ambient(sub)) == set(amb.elements())


def test_two_generators_against_closure_oracle():
    amb = powerset_algebra(range(1, 7))
    gens = [{1, 2, 3}, {3, 4}]
    sub = generate_subalgebra(amb, gens)
    assert set(sub.atoms) == {frozenset({1, 2}), frozenset({3}), frozenset({4}),
                              frozenset({5, 6})}
    assert sub.size == 16
    assert set(elements_as_ambient(sub)) == closure_oracle(amb, gens)


def test_generate_subalgebra_idempotent_and_monotone():
    amb = powerset_algebra(range(6))
    g1 = [frozenset({0, 1}), frozenset({2})]
    g2 = g1 + [frozenset({3, 4})]
    sub1 = generate_subalgebra(amb, g1)
    again = generate_subalgebra(amb, elements_as_ambient(sub1)[1:])
    assert set(elements_as_ambient(again)) == set(elements_as_ambient(sub1))
    sub2 = generate_subalgebra(amb, g2)
    assert set(elements_as_ambient(sub1)) <= set(elements_as_ambient(sub2))


def test_flatten():
    amb = powerset_algebra(range(4))
    sub = generate_subalgebra(amb, [{0, 1}])
    for e in sub.elements():
        assert flatten(e) == frozenset().union(*e) if e else flatten(e) == frozenset()


def test_pseudocomplement_principal():
    a3 = powerset_algebra(range(1, 4))
    j = ideal(a3, [{1}])
    nj = ideal_pseudocomplement(a3, j)
    assert nj.join_of_generators == frozenset({2, 3})


def test_pseudocomplement_of_zero_is_everything():
    a3 = powerset_algebra(range(1, 4))
    j = ideal(a3, [frozenset()])
    assert ideal_pseudocomplement(a3, j).join_of_generators == a3.top


def test_pseudocomplement_brute_force():
    a4 = powerset_algebra(range(1, 5))
    j = ideal(a4, [{1}, {2}])
    nj = ideal_pseudocomplement(a4, j)
    # oracle: test all 16 elements for meet-zero against every ideal member
    members = set(j.elements())
    expected = {a for a in a4.elements() if all(not (a & m) for m in members)}
    assert set(nj.elements()) == expected
    assert nj.join_of_generators == frozenset({3, 4})


def test_simple_ideal_certificates():
    a3 = powerset_algebra(range(3))
    j = ideal(a3, [{0}])
    ok, cert = is_simple_ideal(a3, j)
    assert ok and cert.verify(a3, j)
    assert (cert.a, cert.b) == (frozenset({0}), frozenset({1, 2}))
    whole = ideal(a3, [a3.top])
    ok, cert = is_simple_ideal(a3, whole)
    assert ok and cert.verify(a3, whole)
    assert cert.b == frozenset()


def test_ultrafilters_are_atoms():
    assert ultrafilters(powerset_algebra(["x"])) == ("x",)
    assert len(ultrafilters(powerset_algebra(range(3)))) == 3
    sub = generate_subalgebra(powerset_algebra(range(1, 7)), [{1, 2, 3}, {3, 4}])
    assert len(ultrafilters(sub)) == 4


def test_check_lba_finite():
    b = powerset_algebra(range(2))
    assert check_lba(b, ideal(b, [b.top])).ok
    rep = check_lba(b, ideal(b, [frozenset()]))
    assert not rep.ok and rep.failing is not None


def test_finite_dense_ideals_are_improper():
    # regression guard: on the finite tier density forces I = A
    for n in range(1, 5):
        algebra = powerset_algebra(range(n))
        for a in algebra.elements():
            rep = check_lba(algebra, ideal(algebra, [a]))
            assert rep.ok == (a == algebra.top)


def test_capacity_errors():
    with pytest.raises(CapacityError):
        FiniteBA(tuple(range(17)))
    amb = powerset_algebra(range(16))
    with pytest.raises(CapacityError):
        generate_subalgebra(amb, [{i} for i in range(16)] + [{0, 1}])


def test_dump_sorted():
    text = dump(powerset_algebra(range(2)))
    assert text.splitlines()[0] == "{}"
    assert len(text.splitlines()) == 4
