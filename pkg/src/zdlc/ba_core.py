"""Explicit finite Boolean algebras and their ideals.

Elements are canonical atom sets (frozensets over the algebra's atom tuple),
so every law check is a plain equality.  Finite algebras are the oracle tier:
every ideal here is principal, every dense ideal improper, which is exactly
why the symbolic tier in `duality` exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

MAX_ATOMS = 16
MAX_ELEMENTS = 1 << 16


class CapacityError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteBA:
    atoms: tuple

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise ValueError("atoms must be distinct")
        if len(self.atoms) > MAX_ATOMS:
            raise CapacityError(f"{len(self.atoms)} atoms exceeds the bound {MAX_ATOMS}")

    @property
    def top(self):
        return frozenset(self.atoms)

    @property
    def bottom(self):
        return frozenset()

    def check_element(self, a):
        a = frozenset(a)
        if not a <= self.top:
            raise ValueError(f"{a!r} is not an element")
        return a

    def complement(self, a):
        return self.top - self.check_element(a)

    def meet(self, a, b):
        return self.check_element(a) & self.check_element(b)

    def join(self, a, b):
        return self.check_element(a) | self.check_element(b)

    def leq(self, a, b):
        return self.check_element(a) <= self.check_element(b)

    def elements(self):
        if 1 << len(self.atoms) > MAX_ELEMENTS:
            raise CapacityError("element enumeration exceeds the bound")
        for r in range(len(self.atoms) + 1):
            for combo in itertools.combinations(self.atoms, r):
                yield frozenset(combo)

    @property
    def size(self):
        return 1 << len(self.atoms)


def powerset_algebra(universe) -> FiniteBA:
    return FiniteBA(tuple(universe))


def generate_subalgebra(ambient: FiniteBA, gens) -> FiniteBA:
    """Smallest subalgebra of ambient containing gens.

    Its atoms are the nonempty Venn regions of the generators, each kept as a
    frozenset of ambient atoms; an element of the subalgebra is a set of
    regions and flattens to the corresponding ambient element.
    """
    gens = [ambient.check_element(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    regions = {}
    for atom in ambient.atoms:
        sig = tuple(atom in g for g in gens)
        regions.setdefault(sig, set()).add(atom)
    region_atoms = tuple(sorted((frozenset(r) for r in regions.values()),
                                key=lambda r: sorted(map(repr, r))))
    if len(region_atoms) > MAX_ATOMS or 1 << len(region_atoms) > MAX_ELEMENTS:
        raise CapacityError("generated subalgebra exceeds the capacity bounds")
    return FiniteBA(region_atoms)


def flatten(sub_element) -> frozenset:
    """View a subalgebra element (set of regions) as an ambient element."""
    out = set()
    for region in sub_element:
        out |= region
    return frozenset(out)


def elements_as_ambient(sub: FiniteBA):
    return sorted((flatten(e) for e in sub.elements()), key=lambda s: (len(s), sorted(map(repr, s))))


@dataclass(frozen=True)
class IdealPresentation:
    """Ideal of a finite BA given by generators: downward closure + finite joins."""

    algebra: FiniteBA
    generators: tuple

    def __post_init__(self):
        for g in self.generators:
            self.algebra.check_element(g)

    @property
    def join_of_generators(self):
        out = frozenset()
        for g in self.generators:
            out |= g
        return out

    def member(self, a) -> bool:
        return self.algebra.check_element(a) <= self.join_of_generators

    def elements(self):
        g = self.join_of_generators
        for r in range(len(g) + 1):
            for combo in itertools.combinations(sorted(g, key=repr), r):
                yield frozenset(combo)


def ideal(algebra: FiniteBA, generators) -> IdealPresentation:
    return IdealPresentation(algebra, tuple(frozenset(g) for g in generators))


def ideal_pseudocomplement(algebra: FiniteBA, J: IdealPresentation) -> IdealPresentation:
    """not-J = all a with a meet j = 0 for every j in J; here the principal
    ideal below the complement of J's generator join."""
    return ideal(algebra, (algebra.complement(J.join_of_generators),))


@dataclass(frozen=True)
class SimplicityCertificate:
    """Witness (a in J, b in not-J, a join b = 1) that J is complemented."""

    a: frozenset
    b: frozenset

    def verify(self, algebra: FiniteBA, J: IdealPresentation) -> bool:
        in_j = J.member(self.a)
        in_nj = ideal_pseudocomplement(algebra, J).member(self.b)
        return in_j and in_nj and algebra.join(self.a, self.b) == algebra.top


def is_simple_ideal(algebra: FiniteBA, J: IdealPresentation):
    """In a finite BA every ideal is principal, hence simple; the certificate
    is the generator join with its complement."""
    g = J.join_of_generators
    cert = SimplicityCertificate(g, algebra.complement(g))
    ok = algebra.join(g, algebra.complement(g)) == algebra.top
    return ok, cert


def ultrafilters(algebra: FiniteBA):
    """One principal ultrafilter per atom; the atom is the handle."""
    return tuple(algebra.atoms)


@dataclass(frozen=True)
class LbaReport:
    ok: bool
    failing: object = None


def check_lba(algebra: FiniteBA, I: IdealPresentation) -> LbaReport:
    """Dense-ideal check on the finite tier.

    Density means every nonzero element bounds a nonzero ideal element from
    above; atom-wise this forces every atom into I, so only I = A passes.
    """
    if I.algebra is not algebra and I.algebra != algebra:
        return LbaReport(False, "ideal carried by a different algebra")
    g = I.join_of_generators
    for atom in algebra.atoms:
        if atom not in g:
            return LbaReport(False, frozenset({atom}))
    return LbaReport(True)


def dump(algebra: FiniteBA) -> str:
    """Debug dump: sorted element list in the CLI text style."""
    lines = []
    for e in sorted(algebra.elements(), key=lambda s: (len(s), sorted(map(repr, s)))):
        lines.append("{" + ", ".join(sorted(map(repr, e))) + "}")
    return "\n".join(lines)
