"""Clopen-set calculus on Cantor space and on pierced worlds.

A clopen subset of 2^omega is a finite union of cylinders [w], where w is a
finite binary word and [w] is the set of all infinite sequences extending w.
The canonical representation is the unique prefix-free antichain of words in
which every sibling pair w0, w1 has been merged to w; equality of sets is
then structural equality.  Points are eventually periodic sequences, the only
ones we ever need to puncture or map to, and every membership question about
them is decided by unrolling finitely many letters.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

# Depth budget for cylinder words.  Exceeding it raises instead of silently
# truncating; every instance this workbench targets stays far below it.
DEPTH_LIMIT = 32


class DepthLimitError(ValueError):
    pass


class ImpossibleInputError(ValueError):
    pass


def _flip(bit: str) -> str:
    return "1" if bit == "0" else "0"


def _absorb(words):
    ws = set(words)
    return {w for w in ws if not any(v != w and w.startswith(v) for v in ws)}


def _normalize(words) -> tuple:
    """Canonical antichain: absorb extensions, merge sibling pairs to fixpoint."""
    ws = _absorb(words)
    for w in ws:
        if len(w) > DEPTH_LIMIT:
            raise DepthLimitError(f"cylinder word longer than {DEPTH_LIMIT}: {w!r}")
    changed = True
    while changed:
        changed = False
        for w in sorted(ws, key=len, reverse=True):
            if not w or w not in ws:
                continue
            sib = w[:-1] + _flip(w[-1])
            if sib in ws:
                ws.discard(w)
                ws.discard(sib)
                ws.add(w[:-1])
                changed = True
    return tuple(sorted(ws))


@dataclass(frozen=True)
class Clopen:
    """A clopen subset of 2^omega in canonical cylinder-antichain form."""

    words: tuple

    def __post_init__(self):
        if self.words != _normalize(self.words):
            raise ValueError(f"non-canonical word set {self.words!r}; use clopen()")

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    def __invert__(self):
        return complement(self)

    def __sub__(self, other):
        return minus(self, other)

    def __le__(self, other):
        return subset(self, other)

    def __bool__(self):
        return bool(self.words)

    def __contains__(self, p):
        return contains_point(self, p)

    @property
    def depth(self) -> int:
        return max((len(w) for w in self.words), default=0)

    def __str__(self):
        if not self.words:
            return "{}"
        return "{" + ", ".join(w if w else "e" for w in self.words) + "}"


def clopen(words) -> Clopen:
    return Clopen(_normalize(words))


EMPTY = clopen(())
FULL = clopen(("",))


def cylinder(word: str) -> Clopen:
    return clopen((word,))


def complement(a: Clopen) -> Clopen:
    def comp(ws):
        if not ws:
            return [""]
        if "" in ws:
            return []
        c0 = comp([w[1:] for w in ws if w[0] == "0"])
        c1 = comp([w[1:] for w in ws if w[0] == "1"])
        return ["0" + w for w in c0] + ["1" + w for w in c1]

    return clopen(comp(list(a.words)))


def meet(a: Clopen, b: Clopen) -> Clopen:
    out = []
    for w, v in itertools.product(a.words, b.words):
        if w.startswith(v):
            out.append(w)
        elif v.startswith(w):
            out.append(v)
    return clopen(out)


def join(a: Clopen, b: Clopen) -> Clopen:
    return clopen(a.words + b.words)


def minus(a: Clopen, b: Clopen) -> Clopen:
    return meet(a, complement(b))


def subset(a: Clopen, b: Clopen) -> bool:
    return not minus(a, b)


def disjoint(a: Clopen, b: Clopen) -> bool:
    return not meet(a, b)


def is_empty(a: Clopen) -> bool:
    return not a.words


def to_mask(a: Clopen, depth: int) -> int:
    """Bitset of the depth-d leaves inside a; requires a.depth <= depth."""
    if a.depth > depth:
        raise ValueError(f"clopen of depth {a.depth} not representable at depth {depth}")
    mask = 0
    for w in a.words:
        k = depth - len(w)
        base = int(w, 2) << k if w else 0
        mask |= ((1 << (1 << k)) - 1) << base
    return mask


def from_mask(mask: int, depth: int) -> Clopen:
    words = [format(i, f"0{depth}b") if depth else "" for i in range(1 << depth) if mask >> i & 1]
    return clopen(words)


@dataclass(frozen=True)
class Point:
    """Eventually periodic sequence pre . cycle^omega, in canonical form.

    Canonical means the cycle is primitive and the preperiod is shortest, so
    structural equality decides equality of sequences.
    """

    pre: str
    cycle: str

    def __post_init__(self):
        if not self.cycle or any(c not in "01" for c in self.pre + self.cycle):
            raise ValueError(f"bad point {self.pre!r}({self.cycle!r})")
        if self.cycle != _primitive(self.cycle):
            raise ValueError(f"cycle {self.cycle!r} is not primitive; use point()")
        if self.pre and self.pre[-1] == self.cycle[-1]:
            raise ValueError(f"preperiod {self.pre!r} not minimal; use point()")

    def prefix(self, n: int) -> str:
        if n <= len(self.pre):
            return self.pre[:n]
        k = n - len(self.pre)
        reps = -(-k // len(self.cycle))
        return self.pre + (self.cycle * reps)[:k]

    def tail(self, k: int) -> "Point":
        """The sequence with its first k letters dropped."""
        if k <= len(self.pre):
            return point(self.pre[k:], self.cycle)
        r = (k - len(self.pre)) % len(self.cycle)
        return point("", self.cycle[r:] + self.cycle[:r])

    def __str__(self):
        return f"{self.pre}({self.cycle})"


def _primitive(cycle: str) -> str:
    n = len(cycle)
    for d in range(1, n):
        if n % d == 0 and cycle == cycle[:d] * (n // d):
            return cycle[:d]
    return cycle


def point(pre: str, cycle: str) -> Point:
    if not cycle or any(c not in "01" for c in pre + cycle):
        raise ValueError(f"bad point {pre!r}({cycle!r})")
    cycle = _primitive(cycle)
    while pre and pre[-1] == cycle[-1]:
        pre = pre[:-1]
        cycle = cycle[-1] + cycle[:-1]
    return Point(pre, cycle)


def prepend(word: str, p: Point) -> Point:
    return point(word + p.pre, p.cycle)


def contains_point(a: Clopen, p: Point) -> bool:
    return any(p.prefix(len(w)) == w for w in a.words)


def point_in_word(p: Point, w: str) -> bool:
    return p.prefix(len(w)) == w


def separating_cylinder(p: Point, avoid) -> Clopen:
    """Minimal-depth cylinder containing p and no point of avoid."""
    avoid = tuple(avoid)
    if p in avoid:
        raise ImpossibleInputError(f"{p} is in the avoid set")
    for d in range(DEPTH_LIMIT + 1):
        w = p.prefix(d)
        if all(q.prefix(d) != w for q in avoid):
            return cylinder(w)
    raise DepthLimitError("separation exceeded the depth limit")


def cylinder_around(p: Point, within: Clopen = FULL, avoid: Clopen = EMPTY,
                    avoid_points=()) -> Clopen:
    """A cylinder containing p, inside `within`, disjoint from `avoid`,
    missing every avoid point.

    Containment and disjointness of a cylinder against a canonical antichain
    are prefix comparisons: [w] lies inside iff w extends one of the words,
    and meets a set iff some word is prefix-comparable with w.
    """
    avoid_points = tuple(avoid_points)
    if p in avoid_points or not contains_point(within, p) or contains_point(avoid, p):
        raise ImpossibleInputError(f"no cylinder around {p} inside {within}")
    for d in range(DEPTH_LIMIT + 1):
        w = p.prefix(d)
        if not any(w.startswith(v) for v in within.words):
            continue
        if any(u.startswith(w) or w.startswith(u) for u in avoid.words):
            continue
        if any(point_in_word(q, w) for q in avoid_points):
            continue
        return cylinder(w)
    raise DepthLimitError("cylinder search exceeded the depth limit")


def cylinder_avoiding(a: Clopen, points) -> Clopen:
    """Some cylinder inside nonempty a that misses every given point.

    Extending the word one letter away from a remaining point never lets a new
    point in, so at most len(points) extensions are needed.
    """
    if not a:
        raise ImpossibleInputError("empty clopen has no sub-cylinder")
    w = min(a.words, key=lambda v: (len(v), v))
    while True:
        inside = [p for p in points if point_in_word(p, w)]
        if not inside:
            return cylinder(w)
        w += _flip(inside[0].prefix(len(w) + 1)[-1])
        if len(w) > DEPTH_LIMIT:
            raise DepthLimitError("avoidance search exceeded the depth limit")


def some_point(a: Clopen, avoid=()) -> Point:
    """A concrete eventually periodic point of a that avoids the given points."""
    w = cylinder_avoiding(a, avoid).words[0]
    for cyc in ("01", "0", "1", "011"):
        cand = point(w, cyc)
        if cand not in avoid:
            return cand
    raise ImpossibleInputError("could not pick a point")  # pragma: no cover


@dataclass(frozen=True)
class Region:
    """A representable subset of a pierced space: a clopen trace plus finitely
    many extra points (how images of maps with constant pieces look)."""

    clopen: Clopen
    points: tuple

    def __str__(self):
        extra = ", ".join(str(p) for p in self.points)
        return f"{self.clopen}" + (f" + {{{extra}}}" if extra else "")


def region(a: Clopen, points=()) -> Region:
    pts = sorted({p for p in points if not contains_point(a, p)},
                 key=lambda p: (p.pre, p.cycle))
    return Region(a, tuple(pts))


def as_region(arg) -> Region:
    if isinstance(arg, Region):
        return arg
    if isinstance(arg, Clopen):
        return region(arg)
    if isinstance(arg, Point):
        return region(EMPTY, (arg,))
    return region(EMPTY, tuple(arg))


@dataclass(frozen=True)
class World:
    """Cantor space pierced at finitely many eventually periodic points."""

    punctures: tuple

    def __post_init__(self):
        if len(set(self.punctures)) != len(self.punctures):
            raise ValueError("punctures must be pairwise distinct")

    @property
    def m(self) -> int:
        return len(self.punctures)

    def flags(self, a: Clopen) -> frozenset:
        """Indices of punctures lying in a (equivalently in cl_X-bar of the trace)."""
        return frozenset(i for i, p in enumerate(self.punctures) if contains_point(a, p))

    def trace_compact(self, a: Clopen) -> bool:
        """The trace a & X has compact closure in X iff a misses every puncture."""
        return not self.flags(a)

    def __str__(self):
        return "world punctures=[" + ", ".join(str(p) for p in self.punctures) + "]"


def world(points_seq) -> World:
    return World(tuple(points_seq))


def trace_closure(a: Clopen, w: World):
    """The trace of a in w's space together with its puncture flags.

    Clopens of the pierced space are determined by their Cantor part because no
    puncture is isolated; the flags are exactly the punctures in the closure.
    """
    return a, w.flags(a)
