"""Command-line front end: instance files, reports, DOT emission, verify.

Exit codes: 0 success or checked-true, 1 checked-false, 2 usage or parse
error, 3 internal invariant violation.  Reports are plain text with stable
field ordering; the only randomness is the explicit seed flag.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import duality, suite
from .cantor import Clopen, Point, World, clopen, point, world
from .duality import (
    InternalInvariantError,
    InvalidZlbaError,
    Zlba,
    check_admissible,
    check_zlba,
    dual_space,
    filled_blocks,
    leq0,
    zlba,
)
from .extensions import (
    Extension,
    alpha0,
    beta0,
    catalog_dot,
    enumerate_catalog,
    extension_leq,
)
from .maps import (
    CONST,
    REPLACE,
    ExtensionObstruction,
    PresentedMap,
    check_zeq,
    extend,
    presented_map,
    verify_main_theorem,
)
from .proximity import check_axioms, proximity_of_extension, sample_family


class ParseError(ValueError):
    def __init__(self, path, lineno, message):
        super().__init__(f"{path}:{lineno}: {message}")


_POINT_RE = re.compile(r"^([01]*)\(([01]+)\)$")


def parse_point(text: str):
    m = _POINT_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad point syntax {text!r}, expected pre(cycle)")
    return point(m.group(1), m.group(2))


def format_point(p: Point) -> str:
    return f"{p.pre}({p.cycle})"


def parse_word(text: str) -> str:
    text = text.strip()
    if text == "e":
        return ""
    if text and all(c in "01" for c in text):
        return text
    raise ValueError(f"bad word {text!r}, expected bits or e")


def parse_clopen(text: str) -> Clopen:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"bad cylinder set {text!r}")
    body = text[1:-1].strip()
    if not body:
        return clopen(())
    return clopen([parse_word(t) for t in body.split(",")])


def format_clopen(c: Clopen) -> str:
    return str(c)


_FIELD_RE = re.compile(r"(\w+)=((?:\[[^\]]*\])|(?:\{(?:[^{}]|\{[^{}]*\})*\})|\S+)")


def _split_fields(rest: str):
    fields = {}
    for key, value in _FIELD_RE.findall(rest):
        fields[key] = value
    return fields


def _parse_blocks(text: str):
    if not re.fullmatch(r"\{(\{\d+(,\d+)*\}(,\{\d+(,\d+)*\})*)?\}", text.replace(" ", "")):
        raise ValueError(f"bad blocks {text!r}")
    blocks = []
    for m in re.finditer(r"\{([\d,]+)\}", text[1:-1]):
        blocks.append(frozenset(int(k) - 1 for k in m.group(1).split(",")))
    return blocks


def _parse_indices(text: str):
    body = text.strip()[1:-1].strip()
    if not body:
        return frozenset()
    return frozenset(int(k) - 1 for k in body.split(","))


class InstanceFile:
    """Parsed line-oriented instance file: one world, named pairs and maps."""

    def __init__(self, path):
        self.path = path
        self.world = None
        self.zlbas = {}
        self.extensions = {}
        self.maps = {}  # name -> list of piece specs, bound to a world on demand
        self._parse()

    def _parse(self):
        with open(self.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        for lineno, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                self._parse_line(line)
            except ParseError:
                raise
            except Exception as exc:
                raise ParseError(self.path, lineno, str(exc)) from exc

    def _parse_line(self, line):
        head, _, rest = line.partition(" ")
        if head == "world":
            fields = _split_fields(rest)
            if set(fields) != {"punctures"}:
                raise ValueError(f"world takes punctures=[...], got {sorted(fields)}")
            body = fields["punctures"].strip()[1:-1].strip()
            pts = [parse_point(t) for t in body.split(",")] if body else []
            self.world = world(pts)
        elif head in ("zlba", "extension"):
            name, _, rest2 = rest.partition(" ")
            fields = _split_fields(rest2)
            if set(fields) != {"blocks", "filled"} or not name:
                raise ValueError(f"{head} NAME blocks={{...}} filled={{...}}, got {line!r}")
            if self.world is None:
                raise ValueError("world line must come first")
            blocks = _parse_blocks(fields["blocks"])
            covered = set().union(*blocks) if blocks else set()
            blocks += [frozenset({i}) for i in range(self.world.m) if i not in covered]
            blocks = sorted(blocks, key=lambda b: min(b) if b else -1)
            filled_blocks_given = _parse_indices(fields["filled"])
            # filled indices refer to positions in the blocks field as written
            written = _parse_blocks(fields["blocks"])
            filled = frozenset(i for i, b in enumerate(blocks)
                               if any(b == written[k] for k in filled_blocks_given))
            z = zlba(self.world, blocks, filled)
            (self.zlbas if head == "zlba" else self.extensions)[name] = z
        elif head == "map":
            name, _, rest2 = rest.partition(" ")
            fields = _split_fields(rest2)
            if not name or not (set(fields) in ({"pieces"}, {"const"})):
                raise ValueError(f"map NAME pieces=[...] or const=P, got {line!r}")
            if "const" in fields:
                self.maps[name] = ("const", parse_point(fields["const"]))
            else:
                body = fields["pieces"].strip()[1:-1]
                pieces = []
                for item in body.split(","):
                    src, arrow, dst = item.partition("->")
                    if not arrow:
                        raise ValueError(f"bad piece {item!r}")
                    pieces.append((parse_word(src), parse_word(dst)))
                self.maps[name] = ("pieces", pieces)
        else:
            raise ValueError(f"unknown declaration {head!r}")

    def get_zlba(self, name) -> Zlba:
        if name in self.zlbas:
            return self.zlbas[name]
        if name in self.extensions:
            return self.extensions[name]
        raise KeyError(f"no zlba named {name!r} in {self.path}")

    def get_map(self, name, codomain: World) -> PresentedMap:
        if name not in self.maps:
            raise KeyError(f"no map named {name!r} in {self.path}")
        kind, payload = self.maps[name]
        if kind == "const":
            return presented_map(self.world, codomain, [("", CONST, payload)])
        return presented_map(self.world, codomain,
                             [(w, REPLACE, v) for w, v in payload])


def format_zlba(name: str, z: Zlba, head="zlba") -> str:
    return f"{head} {name} {z}"


def format_world(w: World) -> str:
    return "world punctures=[" + ", ".join(format_point(p) for p in w.punctures) + "]"


# ---------------------------------------------------------------------------
# subcommands


def _one_zlba(args, inst):
    if len(args.zlba) != 1:
        raise KeyError("exactly one --zlba name expected")
    return inst.get_zlba(args.zlba[0])


def cmd_check_zlba(args):
    inst = InstanceFile(args.world)
    z = _one_zlba(args, inst)
    adm = check_admissible(z)
    rep = check_zlba(z)
    print(f"pair: {z}")
    print(f"admissible: {'yes' if adm.ok else 'no (' + adm.clause + ')'}")
    print(f"join-condition: {'yes' if rep.ok else 'no'}")
    if rep.certificate is not None:
        cert = rep.certificate
        print("non-join certificate:")
        print(f"  unfilled block: {{{','.join(str(i + 1) for i in sorted(cert.block))}}}")
        print(f"  isolating cylinder: {cert.isolating}")
        print("  descending upper bounds: " + "; ".join(str(u) for u in cert.chain))
        print(f"  certificate verified: {'yes' if cert.verify() else 'no'}")
    return 0 if (adm.ok and rep.ok) else 1


def cmd_dual(args):
    inst = InstanceFile(args.world)
    z = _one_zlba(args, inst)
    y = dual_space(z)
    print(f"space of: {z}")
    print(f"compact: {'yes' if y.is_compact() else 'no'}")
    infs = y.infinity_points()
    print(f"points at infinity: {len(infs)}")
    for ref in infs:
        print(f"  {ref}")
    return 0


def cmd_alpha(args):
    inst = InstanceFile(args.world)
    name = args.extension or args.zlba[0]
    z = inst.get_zlba(name)
    e = beta0(z)
    back = alpha0(e)
    print(format_zlba(name, back))
    return 0


def cmd_beta(args):
    inst = InstanceFile(args.world)
    z = _one_zlba(args, inst)
    e = beta0(z)
    print(format_zlba(args.zlba[0], e.pair, head="extension"))
    print(f"compact: {'yes' if e.is_compact() else 'no'}")
    print(f"remainder points: {len(filled_blocks(z))}")
    return 0


def cmd_order(args):
    inst = InstanceFile(args.world)
    if len(args.zlba) != 2:
        print("order needs two --zlba names", file=sys.stderr)
        return 2
    z1, z2 = (inst.get_zlba(n) for n in args.zlba)
    forward = leq0(z1, z2)
    backward = leq0(z2, z1)
    oracle, _ = extension_leq(beta0(z1), beta0(z2))
    print(f"{args.zlba[0]} <= {args.zlba[1]}: {'yes' if forward else 'no'}")
    print(f"{args.zlba[1]} <= {args.zlba[0]}: {'yes' if backward else 'no'}")
    print(f"extension-order oracle agrees: {'yes' if oracle == forward else 'no'}")
    if oracle != forward:
        raise InternalInvariantError("order routes disagree")
    return 0 if forward else 1


def cmd_catalog(args):
    inst = InstanceFile(args.world)
    cat = enumerate_catalog(inst.world)
    print(f"{format_world(inst.world)}")
    print(f"extensions: {cat.size}")
    for i, z in enumerate(cat.pairs):
        compact = " compact" if not duality.unfilled_punctures(z) else ""
        print(f"  n{i}: {z}{compact}")
    print("covers:")
    for i, j in cat.covers():
        print(f"  n{i} < n{j}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(catalog_dot(cat))
        print(f"dot written to {args.dot}")
    return 0


def cmd_extend_map(args):
    inst1 = InstanceFile(args.world1)
    inst2 = InstanceFile(args.world2) if args.world2 else inst1
    z1 = inst1.get_zlba(args.zlba1)
    z2 = inst2.get_zlba(args.zlba2)
    f = inst1.get_map(args.map[0], inst2.world)
    rep = check_zeq(f, z1, z2)
    print(f"condition preimages-in-algebra: {'yes' if rep.zeq1 else 'no'}")
    print(f"condition bounded-images: {'yes' if rep.zeq2 else 'no'}")
    if not rep.ok:
        if rep.witness_algebra is not None:
            print(f"witness algebra element: {rep.witness_algebra}")
        if rep.witness_ideal is not None:
            print(f"witness ideal element: {rep.witness_ideal}"
                  f" (image reaches {format_point(rep.witness_puncture)})")
        return 1
    g = extend(f, z1, z2)
    print("extension exists; remainder actions:")
    for b, ref in g.remainder:
        print(f"  inf {{{','.join(str(i + 1) for i in sorted(b))}}} -> {ref}")
    if args.verify:
        theorem = verify_main_theorem(f, z1, z2)
        print("clause table:")
        for c, p, a in theorem.rows:
            print(f"  ({c}) predicted={'yes' if p else 'no'} actual={'yes' if a else 'no'}")
        if not theorem.ok:
            raise InternalInvariantError(f"clause mismatch: {theorem.mismatches}")
    return 0


def cmd_proximity(args):
    inst = InstanceFile(args.world)
    z = _one_zlba(args, inst)
    lp = proximity_of_extension(beta0(z))
    fam = sample_family(inst.world, seed=args.seed)
    rep = check_axioms(lp, fam, seed=args.seed)
    print(f"pair: {z}")
    print(f"sample family: {len(fam)} sets, seed {args.seed}")
    print(rep)
    return 0 if rep.ok else 1


def cmd_verify(args):
    results = suite.run_criteria(level=args.level, seed=args.seed)
    for r in results:
        print(r.line())
    ok = all(r.ok for r in results)
    print(f"verify: {'all criteria pass' if ok else 'FAILURES PRESENT'}"
          f" (level={args.level}, seed={args.seed})")
    return 0 if ok else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="zdlc",
        description="workbench for zero-dimensional locally compact extensions")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, world=True, zlba=False, needs_map=False):
        if world:
            p.add_argument("--world", required=True, help="instance file")
        if zlba:
            p.add_argument("--zlba", action="append", default=[], help="pair name")
        if needs_map:
            p.add_argument("--map", action="append", default=[], help="map name")

    p = sub.add_parser("check-zlba", help="admissibility and the join condition")
    common(p, zlba=True)
    p.set_defaults(func=cmd_check_zlba)

    p = sub.add_parser("dual", help="describe the dual space of a pair")
    common(p, zlba=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("alpha", help="pair of an extension")
    common(p, zlba=True)
    p.add_argument("--extension", help="extension name")
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("beta", help="extension of a pair")
    common(p, zlba=True)
    p.set_defaults(func=cmd_beta)

    p = sub.add_parser("order", help="compare two pairs, both routes")
    common(p, zlba=True)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("catalog", help="enumerate all extensions of a world")
    common(p)
    p.add_argument("--dot", help="write the Hasse diagram to this DOT file")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("extend-map", help="extend a map over two pairs")
    p.add_argument("--world1", required=True)
    p.add_argument("--world2")
    p.add_argument("--zlba1", required=True)
    p.add_argument("--zlba2", required=True)
    p.add_argument("--map", action="append", required=True)
    p.add_argument("--verify", action="store_true", help="run the clause table")
    p.set_defaults(func=cmd_extend_map)

    p = sub.add_parser("proximity", help="check the proximity axioms of a pair")
    common(p, zlba=True)
    p.add_argument("--check-axioms", action="store_true", default=True)
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    p.set_defaults(func=cmd_proximity)

    p = sub.add_parser("verify", help="run the acceptance battery")
    p.add_argument("--level", choices=("smoke", "full"), default="full")
    p.add_argument("--seed", type=int, default=suite.DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidZlbaError, ExtensionObstruction) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
