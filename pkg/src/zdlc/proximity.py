"""Zero-dimensional local proximities on pierced worlds.

A local proximity is a nearness relation together with a boundedness ideal.
Two constructions are provided and must agree: from an extension, nearness is
meeting of closures and boundedness is compactness of the closure; from an
admissible pair, both are defined by quantifying over the ideal and decided
here by a finite case split (overlap, point hit, or a filled block bridging
the two sides), validated in the tests against bounded-depth enumeration of
the quantifier.

Predicates are exact on representable arguments, clopen traces plus finite
point sets, and only sampled elsewhere; the axioms quantify over all subsets,
so checking them is a verification over a witness family, not a proof.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import cantor
from .cantor import (
    Clopen,
    EMPTY,
    FULL,
    Point,
    Region,
    as_region,
    clopen,
    cylinder,
    cylinder_around,
    cylinder_avoiding,
    from_mask,
    region,
    separating_cylinder,
    some_point,
    to_mask,
)
from .duality import (
    Zlba,
    block_neighborhood,
    filled_blocks,
    filled_punctures,
    grow,
    in_algebra,
    zlba,
)
from .extensions import Extension


class NotRepresentableError(ValueError):
    pass


@dataclass(frozen=True)
class LocalProximity:
    """Decidable nearness and boundedness backed by a pair presentation."""

    pair: Zlba
    route: str  # 'extension' | 'quantifier'

    @property
    def world(self):
        return self.pair.world

    def _coerce(self, arg) -> Region:
        r = as_region(arg)
        for p in r.points:
            if p in self.world.punctures:
                raise NotRepresentableError(f"{p} is a puncture, not a space point")
        return r

    def near(self, a, b) -> bool:
        a, b = self._coerce(a), self._coerce(b)
        if self.route == "extension":
            return _near_closure(self.pair, a, b)
        return _near_quantifier(self.pair, a, b)

    def bounded(self, a) -> bool:
        a = self._coerce(a)
        if self.route == "extension":
            return self.world.flags(a.clopen) <= filled_punctures(self.pair)
        return _bounded_quantifier(self.pair, a)

    def ll(self, a: Clopen, b: Clopen) -> bool:
        """Way below: a is not near the complement of b."""
        return not self.near(a, ~b)


def proximity_of_extension(e: Extension) -> LocalProximity:
    """Nearness = closures meet in the extension space; bounded = the closure
    is compact, i.e. every puncture direction of the set is filled."""
    return LocalProximity(e.pair, "extension")


def proximity_of_zlba(z: Zlba) -> LocalProximity:
    """Nearness and boundedness by quantifying over the ideal elements."""
    return LocalProximity(z, "quantifier")


# -- the extension route ----------------------------------------------------


def _near_closure(z: Zlba, a: Region, b: Region) -> bool:
    if a.clopen & b.clopen:
        return True
    if any(cantor.contains_point(b.clopen, p) for p in a.points):
        return True
    if any(cantor.contains_point(a.clopen, p) for p in b.points):
        return True
    if set(a.points) & set(b.points):
        return True
    fa, fb = z.world.flags(a.clopen), z.world.flags(b.clopen)
    return any((blk & fa) and (blk & fb) for blk in filled_blocks(z))


# -- the quantifier route ---------------------------------------------------


def _bounded_quantifier(z: Zlba, a: Region) -> bool:
    """Some ideal element contains a: attempt the canonical growth."""
    base = a.clopen
    for p in a.points:
        base = base | cylinder_around(p, avoid_points=z.world.punctures)
    return grow(z, base) is not None


def _delta_on_bounded(z: Zlba, m: Region, n: Region) -> bool:
    """Nearness of bounded sets: every ideal element containing the first
    meets the second; decided by attempting to build a separating element."""
    if m.clopen & n.clopen or set(m.points) & set(n.points):
        return True
    if any(cantor.contains_point(n.clopen, p) for p in m.points):
        return True
    if any(cantor.contains_point(m.clopen, p) for p in n.points):
        return True
    base = m.clopen
    for p in m.points:
        base = base | cylinder_around(p, avoid=n.clopen,
                                      avoid_points=tuple(z.world.punctures) + n.points)
    separator = grow(z, base, avoid=n.clopen, avoid_points=n.points)
    return separator is None


def _near_quantifier(z: Zlba, a: Region, b: Region) -> bool:
    """General nearness: some bounded subsets of the two sides are near.

    The candidate bounded witnesses are a common sub-cylinder, a shared or
    contained point, and one small capture on each side of a filled block
    touching both; no other shape can be near, because bounded nearness
    forces either overlap or a common forced block.
    """
    overlap = a.clopen & b.clopen
    if overlap:
        small = cylinder_avoiding(overlap, z.world.punctures)
        if _delta_on_bounded(z, region(small), region(small)):
            return True
    for p in a.points:
        if cantor.contains_point(b.clopen, p) or p in b.points:
            if _delta_on_bounded(z, region(EMPTY, (p,)), region(EMPTY, (p,))):
                return True
    for p in b.points:
        if cantor.contains_point(a.clopen, p):
            if _delta_on_bounded(z, region(EMPTY, (p,)), region(EMPTY, (p,))):
                return True
    fa, fb = z.world.flags(a.clopen), z.world.flags(b.clopen)
    for blk in filled_blocks(z):
        ia, ib = sorted(blk & fa), sorted(blk & fb)
        if not ia or not ib:
            continue
        pa = z.world.punctures[ia[0]]
        pb = z.world.punctures[ib[0]]
        others_a = tuple(q for j, q in enumerate(z.world.punctures) if j != ia[0])
        others_b = tuple(q for j, q in enumerate(z.world.punctures) if j != ib[0])
        ma = region(cylinder_around(pa, within=a.clopen, avoid_points=others_a))
        nb = region(cylinder_around(pb, within=b.clopen, avoid_points=others_b))
        if _delta_on_bounded(z, ma, nb):
            return True
    return False


# ---------------------------------------------------------------------------
# the pair recovered from the proximity


def zlba_of_proximity(lp: LocalProximity) -> Zlba:
    """Recover the admissible pair from the proximity predicates alone.

    The algebra is the family of representables way below themselves, which
    pins the filled blocks: a puncture is filled iff its separating cylinder
    is bounded, and two filled punctures share a block iff their disjoint
    separating cylinders are near.
    """
    w = lp.world
    seps = [separating_cylinder(p, [q for q in w.punctures if q != p]) for p in w.punctures]
    filled = [i for i in range(w.m) if lp.bounded(seps[i])]
    blocks = []
    for i in filled:
        placed = False
        for blk in blocks:
            if lp.near(seps[i], seps[blk[0]]):
                blk.append(i)
                placed = True
                break
        if not placed:
            blocks.append([i])
    parts = [frozenset(b) for b in blocks]
    parts += [frozenset({i}) for i in range(w.m) if i not in filled]
    parts = sorted(parts, key=min)
    return zlba(w, parts, [i for i, b in enumerate(parts) if set(b) <= set(filled)])


def interpolant(lp: LocalProximity, a: Clopen, b: Clopen) -> Clopen:
    """The canonical set between a and b that is way below itself: the trace
    of the closure of a in the extension space, grown to a clopen inside b."""
    out = grow(lp.pair, a, inside=b)
    if out is None:
        raise NotRepresentableError("no interpolant: the pair is not way below")
    return out


# ---------------------------------------------------------------------------
# sample families


def sample_family(world, seed: int, n_random: int = 500, cylinder_depth: int = 3,
                  random_depth: int = 6):
    """The seeded family: the empty set, every cylinder to the given depth,
    and random clopens drawn as leaf masks."""
    rng = random.Random(seed)
    fam = [EMPTY, FULL]
    for d in range(1, cylinder_depth + 1):
        for w in itertools.product("01", repeat=d):
            fam.append(cylinder("".join(w)))
    seen = {c.words for c in fam}
    while n_random > 0:
        c = from_mask(rng.getrandbits(1 << random_depth), random_depth)
        n_random -= 1
        if c.words not in seen:
            seen.add(c.words)
            fam.append(c)
    return tuple(fam)


@dataclass
class _MaskContext:
    """Mask view of a sample family for one extension-backed proximity."""

    family: tuple
    masks: list
    blockbits: list
    cobits: list  # filled blocks touching the complement
    bounded: list

    def near(self, i, j):
        return bool(self.masks[i] & self.masks[j]) or bool(self.blockbits[i] & self.blockbits[j])

    def union_near(self, i, j, k):
        return bool(self.masks[i] & (self.masks[j] | self.masks[k])) \
            or bool(self.blockbits[i] & (self.blockbits[j] | self.blockbits[k]))

    def ll(self, i, j):
        inside = self.masks[i] & ~self.masks[j] == 0
        return inside and not (self.blockbits[i] & self.cobits[j])


@dataclass
class _PredicateContext:
    """Fallback that evaluates the proximity's own predicates, used for
    quantifier-backed proximities and for deliberately broken fixtures."""

    lp: object
    family: tuple
    bounded: list

    def near(self, i, j):
        return self.lp.near(self.family[i], self.family[j])

    def union_near(self, i, j, k):
        return self.lp.near(self.family[i], self.family[j] | self.family[k])

    def ll(self, i, j):
        return self.lp.ll(self.family[i], self.family[j])


def prepare(lp, family):
    if type(lp) is not LocalProximity or lp.route != "extension":
        return _PredicateContext(lp, tuple(family), [lp.bounded(c) for c in family])
    z = lp.pair
    depth = max(c.depth for c in family)
    blocks = filled_blocks(z)
    unfilled = frozenset(range(z.world.m)) - filled_punctures(z)
    masks, blockbits, cobits, bounded = [], [], [], []
    for c in family:
        flags = z.world.flags(c)
        coflags = frozenset(range(z.world.m)) - flags
        masks.append(to_mask(c, depth))
        blockbits.append(sum(1 << k for k, b in enumerate(blocks) if b & flags))
        cobits.append(sum(1 << k for k, b in enumerate(blocks) if b & coflags))
        bounded.append(not (flags & unfilled))
    return _MaskContext(tuple(family), masks, blockbits, cobits, bounded)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    ok: bool
    checked: int
    witness: object = None


@dataclass(frozen=True)
class AxiomReport:
    results: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def __str__(self):
        return "\n".join(
            f"{r.axiom:12s} {'pass' if r.ok else 'FAIL'} ({r.checked} checks)"
            + (f" witness: {r.witness}" if r.witness is not None else "")
            for r in self.results)


def _family_points(lp: LocalProximity, family, limit=24):
    pts = []
    for c in family[:limit]:
        if c:
            pts.append(some_point(c, avoid=lp.world.punctures))
    seen, out = set(), []
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def check_axioms(lp: LocalProximity, family, seed: int = 0,
                 triple_budget: int = 20000, pair_budget: int = 2000) -> AxiomReport:
    """Verify the proximity axioms over the family.

    Pairwise clauses run over every pair.  The union clause runs over all
    triples of the depth-bounded cylinders plus a seeded random sample of
    triples, and the constructive clauses build their witnesses on every
    qualifying pair (interpolation) or a seeded sample of qualifying pairs
    (bounded refinement), since all pairs would be quadratic in the family
    times the construction cost.
    """
    fast = prepare(lp, family)
    n = len(family)
    depth = max(c.depth for c in family)
    results = []

    bad = next((i for i in range(n) if family[i] == EMPTY and
                any(fast.near(i, j) for j in range(n))), None)
    results.append(AxiomResult("empty-far", bad is None, n, bad))

    bad = next((family[i] for i in range(n) if family[i] and not fast.near(i, i)), None)
    results.append(AxiomResult("self-near", bad is None, n, bad))

    # symmetry over all pairs
    near = fast.near
    sym_ok, checked, wit = True, 0, None
    for i in range(n):
        for j in range(i + 1, n):
            checked += 1
            if near(i, j) != near(j, i):
                sym_ok, wit = False, (family[i], family[j])
    results.append(AxiomResult("symmetric", sym_ok, checked, wit))

    # union clause on cylinder triples plus a random sample
    cyl = [i for i in range(n) if len(family[i].words) <= 1 and family[i].depth <= 3]
    rng = random.Random(seed)
    triples = list(itertools.product(cyl, repeat=3))
    triples += [(rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(triple_budget)]
    u_ok, wit = True, None
    for i, j, k in triples:
        if fast.union_near(i, j, k) != (near(i, j) or near(i, k)):
            u_ok, wit = False, (family[i], family[j], family[k])
            break
    results.append(AxiomResult("union", u_ok, len(triples), wit))

    # separatedness on sampled points
    pts = _family_points(lp, family)
    sep_ok, checked, wit = True, 0, None
    for p, q in itertools.combinations(pts, 2):
        checked += 1
        if lp.near(p, q) != (p == q):
            sep_ok, wit = False, (p, q)  # pragma: no cover
    for p in pts:
        checked += 1
        if not lp.near(p, p):
            sep_ok, wit = False, p  # pragma: no cover
    results.append(AxiomResult("separated", sep_ok, checked, wit))

    # bounded interpolation: a bounded and way below c gives a bounded b between
    bc1_ok, checked, wit = True, 0, None
    for i in range(n):
        if not fast.bounded[i]:
            continue
        for j in range(n):
            if not fast.ll(i, j):
                continue
            checked += 1
            b = grow(lp.pair, family[i], inside=family[j])
            if lp.route == "extension":
                good = (b is not None and _bounded_direct(lp.pair, b)
                        and _ll_direct(lp.pair, family[i], b, depth)
                        and _ll_direct(lp.pair, b, family[j], depth))
            else:
                good = (b is not None and lp.bounded(b)
                        and lp.ll(family[i], b) and lp.ll(b, family[j]))
            if not good:
                bc1_ok, wit = False, (family[i], family[j])  # pragma: no cover
    results.append(AxiomResult("interpolate", bc1_ok, checked, wit))

    # bounded refinement: near sets are near to a bounded subset
    near_pairs = [(i, j) for i in range(len(cyl)) for j in range(len(cyl))
                  if fast.near(cyl[i], cyl[j])]
    near_pairs = [(cyl[i], cyl[j]) for i, j in near_pairs]
    pool = [(rng.randrange(n), rng.randrange(n)) for _ in range(pair_budget * 3)]
    near_pairs += [(i, j) for i, j in pool if fast.near(i, j)][:pair_budget]
    bc2_ok, wit = True, None
    for i, j in near_pairs:
        b = _bounded_refinement(lp, family[i], family[j])
        if b is None or not (lp.bounded(b) and b <= family[j] and lp.near(family[i], b)):
            bc2_ok, wit = False, (family[i], family[j])  # pragma: no cover
            break
    results.append(AxiomResult("refine", bc2_ok, len(near_pairs), wit))

    return AxiomReport(tuple(results))


def _bounded_refinement(lp: LocalProximity, a: Clopen, c: Clopen) -> Clopen | None:
    """A bounded subset of c still near a: a common cell, or a small capture
    of a filled block bridging the two."""
    z = lp.pair
    overlap = a & c
    if overlap:
        return cylinder_avoiding(overlap, z.world.punctures)
    fa, fc = z.world.flags(a), z.world.flags(c)
    for blk in filled_blocks(z):
        if (blk & fa) and (blk & fc):
            i = sorted(blk & fc)[0]
            p = z.world.punctures[i]
            others = tuple(q for j, q in enumerate(z.world.punctures) if j != i)
            return cylinder_around(p, within=c, avoid_points=others)
    return None


def _ll_direct(z: Zlba, a: Clopen, b: Clopen, depth: int) -> bool:
    """Way-below from the definitions, on masks and flags: containment plus
    no filled block bridging a with the complement of b."""
    d = max(depth, a.depth, b.depth)
    if to_mask(a, d) & ~to_mask(b, d):
        return False
    fa = z.world.flags(a)
    fb_out = frozenset(range(z.world.m)) - z.world.flags(b)
    return not any((blk & fa) and (blk & fb_out) for blk in filled_blocks(z))


def _bounded_direct(z: Zlba, a: Clopen) -> bool:
    return z.world.flags(a) <= filled_punctures(z)


def zero_dimensionality(lp: LocalProximity, family):
    """Interpolants with themselves way below, for every bounded pair of the
    family with one side way below the other."""
    fast = prepare(lp, family)
    n = len(family)
    depth = max(c.depth for c in family)
    out = []
    for i in range(n):
        if not fast.bounded[i]:
            continue
        for j in range(n):
            if not fast.bounded[j] or not fast.ll(i, j):
                continue
            c = grow(lp.pair, family[i], inside=family[j])
            good = (c is not None
                    and _ll_direct(lp.pair, family[i], c, depth)
                    and _ll_direct(lp.pair, c, family[j], depth)
                    and _ll_direct(lp.pair, c, c, depth))
            if not good:
                return False, out  # pragma: no cover
            out.append((family[i], family[j], c))
    return True, out


# ---------------------------------------------------------------------------
# equicontinuity


def image_region(f, r: Region) -> Region:
    img = f.image(r.clopen)
    pts = tuple(f.point_image(p) for p in r.points)
    return region(img.clopen, img.points + pts)


def map_sample_regions(f, z1: Zlba, z2: Zlba, seed: int = 0, n_random: int = 60):
    """Deterministic family of domain regions for equicontinuity checks:
    depth-bounded cylinders, escalating captures of every puncture and of
    every puncture-fiber point, and seeded random clopens."""
    w1 = z1.world
    fam = [EMPTY, FULL]
    for d in (1, 2):
        for wrd in itertools.product("01", repeat=d):
            fam.append(cylinder("".join(wrd)))
    for i, p in enumerate(w1.punctures):
        others = [q for q in w1.punctures if q != p]
        base = separating_cylinder(p, others)
        for extra in (0, 2, 4):
            fam.append(cylinder(p.prefix(len(base.words[0]) + extra)))
    for blk in filled_blocks(z1):
        g = grow(z1, block_neighborhood(z1, blk))
        if g is not None:
            fam.append(g)
    for q in z2.world.punctures:
        pts, _ = f.fiber(q)
        for x in pts:
            if x in w1.punctures:
                continue
            fam.append(cylinder_around(x, avoid_points=w1.punctures))
    rng = random.Random(seed)
    for _ in range(n_random):
        fam.append(from_mask(rng.getrandbits(16), 4))
    seen, out = set(), []
    for c in fam:
        if c.words not in seen:
            seen.add(c.words)
            out.append(region(c))
    return tuple(out)


def equicontinuous(f, lp1: LocalProximity, lp2: LocalProximity, regions=None, seed: int = 0):
    """Leader's two conditions over the sampled family: nearness is preserved
    by images, and bounded sets have bounded images."""
    if regions is None:
        regions = map_sample_regions(f, lp1.pair, lp2.pair, seed)
    images = [image_region(f, r) for r in regions]
    for r, img in zip(regions, images):
        if lp1.bounded(r) and not lp2.bounded(img):
            return False, ("bounded-image", r)
    for i, j in itertools.combinations(range(len(regions)), 2):
        if lp1.near(regions[i], regions[j]) and not lp2.near(images[i], images[j]):
            return False, ("near-image", (regions[i], regions[j]))
    return True, None
