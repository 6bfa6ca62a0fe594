"""The `.rg` text format for packaged ribbon graphs.

Line-oriented, `#` starts a comment::

    edges: e+ f+ g-          # sign per edge
    vertex v1: e.1 f.1 e.2 g.1   # cyclic order as written
    vertex v2: f.2 g.2
    vblock 0: v1 v2          # weight, then the block's vertices
    bblock 2: b1 b3          # boundary ids are the canonical b1, b2, ...

Omitted vblock/bblock sections default to the discrete weight-0 partition.
"""

from __future__ import annotations

import re

from .packaged import (PackagedRibbonGraph, PackagingError, WeightedPartition)
from .ribbon import RibbonGraph, RibbonGraphError, trace_boundaries


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_EDGE_DECL = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)([+-])$")
_END_REF = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\.([12])$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


def parse(text: str) -> PackagedRibbonGraph:
    sign: dict[str, int] = {}
    vertices: list[str] = []
    rotation: dict[str, tuple] = {}
    vblocks: list[tuple[set, int]] = []
    bblocks: list[tuple[set, int]] = []
    edge_decl_line: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"syntax error: expected ':' in {line!r}", lineno)
        head = head.strip()
        fields = rest.split()
        if head == "edges":
            for pos, tok in enumerate(fields):
                m = _EDGE_DECL.match(tok)
                if not m:
                    raise ParseError(
                        f"syntax error: bad edge declaration {tok!r}",
                        lineno, raw.find(tok) + 1)
                name = m.group(1)
                if name in sign:
                    raise ParseError(f"edge {name} declared twice", lineno)
                sign[name] = 1 if m.group(2) == "+" else -1
                edge_decl_line[name] = lineno
        elif head.startswith("vertex"):
            parts = head.split()
            if len(parts) != 2 or not _NAME.match(parts[1]):
                raise ParseError(f"syntax error: bad vertex header {head!r}",
                                 lineno)
            vname = parts[1]
            if vname in rotation:
                raise ParseError(f"vertex {vname} declared twice", lineno)
            ends = []
            for tok in fields:
                m = _END_REF.match(tok)
                if not m:
                    raise ParseError(
                        f"syntax error: bad edge end {tok!r}", lineno,
                        raw.find(tok) + 1)
                ends.append((m.group(1), int(m.group(2))))
            vertices.append(vname)
            rotation[vname] = tuple(ends)
        elif head.startswith("vblock") or head.startswith("bblock"):
            parts = head.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(
                    f"syntax error: bad block header {head!r} "
                    "(expected weight)", lineno)
            weight = int(parts[1])
            members = set()
            for tok in fields:
                if not _NAME.match(tok):
                    raise ParseError(f"syntax error: bad id {tok!r}", lineno,
                                     raw.find(tok) + 1)
                members.add(tok)
            if not members:
                raise ParseError("partition error: empty block", lineno)
            (vblocks if head.startswith("vblock") else bblocks).append(
                (members, weight))
        else:
            raise ParseError(f"syntax error: unknown directive {head!r}",
                             lineno)

    if not vertices:
        raise ParseError("no vertices", max(1, text.count("\n") + 1))

    try:
        graph = RibbonGraph.build(vertices, rotation, sign)
    except RibbonGraphError as ex:
        raise ParseError(f"invalid ribbon graph: {ex}", 1) from ex

    bids = [c.id for c in trace_boundaries(graph)]
    try:
        vparts = (WeightedPartition.build(vertices, vblocks) if vblocks
                  else WeightedPartition.discrete(vertices))
    except PackagingError as ex:
        msg = str(ex)
        prefix = "unknown vertex id" if "unknown id" in msg else "partition error"
        raise ParseError(f"{prefix}: {msg}", 1) from ex
    try:
        bparts = (WeightedPartition.build(bids, bblocks) if bblocks
                  else WeightedPartition.discrete(bids))
    except PackagingError as ex:
        msg = str(ex)
        prefix = ("unknown boundary id" if "unknown id" in msg
                  else "partition error")
        raise ParseError(f"{prefix}: {msg}", 1) from ex
    return PackagedRibbonGraph.build(graph, vparts, bparts)


def render(pg: PackagedRibbonGraph) -> str:
    g = pg.graph
    lines = []
    decls = " ".join(f"{e}{'+' if g.sign[e] == 1 else '-'}" for e in g.edges)
    if g.edges:
        lines.append(f"edges: {decls}")
    for v in g.vertices:
        ends = " ".join(f"{e}.{i}" for e, i in g.rotation.get(v, ()))
        lines.append(f"vertex {v}: {ends}".rstrip())
    for blk, w in zip(pg.vparts.blocks, pg.vparts.weights):
        lines.append(f"vblock {w}: " + " ".join(sorted(blk)))
    for blk, w in zip(pg.bparts.blocks, pg.bparts.weights):
        lines.append(f"bblock {w}: " + " ".join(sorted(blk)))
    return "\n".join(lines) + "\n"
