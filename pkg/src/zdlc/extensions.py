"""Locally compact zero-dimensional extensions of a pierced world.

An extension is stored by its remainder structure, the (partition, filled)
pair of its algebra; equivalence of extensions is structural equality, which
is exactly the granularity at which the correspondence with admissible pairs
is an order isomorphism.  The catalog enumerates all of them; its size is the
Bell number of m+1 because filled partitions of a subset of the punctures are
partial partitions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import duality
from .cantor import World
from .duality import (
    DualSpace,
    InvalidZlbaError,
    Zlba,
    banaschewski_zlba,
    block_neighborhood,
    check_zlba,
    dual_space,
    filled_blocks,
    is_compact_pair,
    leq0,
    space_algebra,
    zlba,
)


class CatalogBoundError(ValueError):
    pass


@dataclass(frozen=True)
class Extension:
    world: World
    pair: Zlba

    @property
    def space(self) -> DualSpace:
        return dual_space(self.pair)

    def is_compact(self) -> bool:
        return self.space.is_compact()

    def __str__(self):
        return f"extension {self.pair}"


def beta0(z: Zlba) -> Extension:
    """Pair to extension: the dual space with the principal-point embedding."""
    rep = check_zlba(z)
    if not rep.ok:
        raise InvalidZlbaError("pair fails the join condition", rep.certificate)
    return Extension(z.world, z)


def alpha0(e: Extension) -> Zlba:
    """Extension to pair: pull the space's clopens and compact clopens back
    along the dense embedding."""
    return space_algebra(e.space)


def extension_leq(e1: Extension, e2: Extension):
    """Extension order, decided by the remainder-assignment oracle.

    e1 <= e2 iff some continuous map from e2's space to e1's space fixes the
    dense copy.  Principal points are forced; each infinity point of e2 must
    go to an infinity point of e1 or nowhere, so the finitely many assignments
    are searched and each is checked for continuity against separating base
    clopens of the target space.
    """
    if e1.world != e2.world:
        raise ValueError("extensions of different worlds are incomparable")
    z1, z2 = e1.pair, e2.pair
    s1, s2 = filled_blocks(z1), filled_blocks(z2)
    if not s2:
        return True, {}
    if not s1:
        return False, None
    for choice in itertools.product(range(len(s1)), repeat=len(s2)):
        ok = True
        for b2, i1 in zip(s2, choice):
            b1 = s1[i1]
            # continuity at the infinity of b2: the preimage of every base
            # neighborhood of b1's infinity must be open, i.e. contain a
            # neighborhood of b2's punctures; a separating base clopen
            # around b1 witnesses failure as soon as b2 escapes b1
            witness = block_neighborhood(z1, b1)
            if not all(i in z1.world.flags(witness) for i in b2):
                ok = False
                break
        if ok:
            return True, {b2: s1[i1] for b2, i1 in zip(s2, choice)}
    return False, None


# ---------------------------------------------------------------------------
# enumeration


def set_partitions(items):
    items = list(items)
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield part + (frozenset({first}),)
        for i, block in enumerate(part):
            yield part[:i] + (block | {first},) + part[i + 1:]


def partial_partitions(m: int):
    """All (blocks, filled) presentations: a partition of a subset with the
    leftover punctures as unfilled singletons."""
    for filled_set in itertools.chain.from_iterable(
            itertools.combinations(range(m), k) for k in range(m + 1)):
        rest = [i for i in range(m) if i not in filled_set]
        for part in set_partitions(filled_set):
            blocks = list(part) + [frozenset({i}) for i in rest]
            blocks = tuple(sorted(blocks, key=min))
            filled = frozenset(i for i, b in enumerate(blocks) if b in part)
            yield blocks, filled


def count_by_padding(m: int) -> int:
    """Independent partial-partition count: partitions of m+1 items, reading
    the block of the extra item as the unfilled set."""
    return sum(1 for _ in set_partitions(range(m + 1)))


def bell_number(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


@dataclass(frozen=True)
class Catalog:
    world: World
    pairs: tuple  # all valid Zlbas, canonical order
    leq_matrix: tuple  # via the pair order
    ext_matrix: tuple  # via the remainder-assignment oracle

    @property
    def size(self):
        return len(self.pairs)

    def covers(self):
        return transitive_reduction(self.leq_matrix)

    def compact_indices(self):
        return tuple(i for i, z in enumerate(self.pairs) if is_compact_pair(z))


def enumerate_catalog(w: World, bound: int = duality.CATALOG_BOUND) -> Catalog:
    if w.m > bound:
        raise CatalogBoundError(f"world has {w.m} punctures, bound is {bound}")
    pairs = []
    for blocks, filled in partial_partitions(w.m):
        z = zlba(w, blocks, filled)
        assert check_zlba(z).ok
        pairs.append(z)
    pairs = tuple(sorted(pairs, key=lambda z: (str(z))))
    n = len(pairs)
    leq_m = tuple(tuple(leq0(pairs[i], pairs[j]) for j in range(n)) for i in range(n))
    ext_m = tuple(tuple(extension_leq(beta0(pairs[i]), beta0(pairs[j]))[0]
                        for j in range(n)) for i in range(n))
    return Catalog(w, pairs, leq_m, ext_m)


def transitive_reduction(leq_matrix):
    """Cover pairs of the strict order: standard reduction, deterministic."""
    n = len(leq_matrix)
    strict = [[leq_matrix[i][j] and i != j and not leq_matrix[j][i] for j in range(n)]
              for i in range(n)]
    covers = []
    for i, j in itertools.product(range(n), repeat=2):
        if strict[i][j] and not any(strict[i][k] and strict[k][j] for k in range(n)):
            covers.append((i, j))
    return tuple(covers)


def banaschewski(w: World) -> Extension:
    """The maximal representable compactification: every puncture restored as
    its own point, the top of the compact sub-poset of the catalog."""
    return beta0(banaschewski_zlba(w))


def catalog_dot(cat: Catalog) -> str:
    """Hasse diagram in DOT text form, edges pointing up the cover relation."""
    lines = ["digraph catalog {", "  rankdir=BT;"]
    for i, z in enumerate(cat.pairs):
        blocks = "".join("{" + ",".join(str(k + 1) for k in sorted(b)) + "}" for b in z.blocks)
        filled = ",".join(str(k + 1) for k in sorted(z.filled))
        label = f"({blocks}|{filled})"
        shape = " shape=box" if is_compact_pair(z) else ""
        lines.append(f'  n{i} [label="{label}"{shape}];')
    for i, j in cat.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
