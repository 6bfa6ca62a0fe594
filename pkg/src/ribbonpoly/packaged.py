"""Packaged ribbon graphs: weighted partitions of vertices and boundaries.

A packaged ribbon graph carries, on top of the rotation system, a weighted
partition of its vertices and a weighted partition of its boundary
components.  Deletion and contraction update the partitions through four
block/weight cases each; the quotient multigraph of either partition (the
*packaging*) supplies the nullities and per-component genus corrections used
by the invariant polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .ribbon import (Dart, RibbonGraph, RibbonGraphError, connected_components,
                     contract_edge, delete_edge, dual_correspondences,
                     induced_subgraph, isomorphisms, restrict,
                     trace_boundaries)


class PackagingError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedPartition:
    """Disjoint blocks covering a ground set, each with an integer weight."""
    blocks: tuple[frozenset[str], ...]
    weights: tuple[int, ...]

    @staticmethod
    def build(ground: Iterable[str],
              blocks: Iterable[tuple[Iterable[str], int]]) -> "WeightedPartition":
        ground = set(ground)
        items = [(frozenset(b), int(w)) for b, w in blocks]
        seen: set[str] = set()
        for b, w in items:
            if not b:
                raise PackagingError("empty block")
            if w < 0:
                raise PackagingError(f"negative weight {w}")
            unknown = b - ground
            if unknown:
                raise PackagingError(f"unknown id {sorted(unknown)[0]}")
            if b & seen:
                raise PackagingError(
                    f"element {sorted(b & seen)[0]} in two blocks")
            seen |= b
        missing = ground - seen
        if missing:
            raise PackagingError(f"element {sorted(missing)[0]} not in any block")
        items.sort(key=lambda bw: min(bw[0]))
        return WeightedPartition(tuple(b for b, _ in items),
                                 tuple(w for _, w in items))

    @staticmethod
    def discrete(ground: Iterable[str]) -> "WeightedPartition":
        ground = list(ground)
        return WeightedPartition.build(ground, [({x}, 0) for x in ground])

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(x for b in self.blocks for x in b)

    def block_index(self, x: str) -> int:
        for i, b in enumerate(self.blocks):
            if x in b:
                return i
        raise KeyError(x)

    def weight_of(self, x: str) -> int:
        return self.weights[self.block_index(x)]

    def shape(self) -> frozenset:
        """Partition structure with weights, for equality up to relabelling
        of block order."""
        return frozenset(zip(self.blocks, self.weights))

    def relabel(self, mapping: dict[str, str]) -> "WeightedPartition":
        return WeightedPartition.build(
            {mapping[x] for x in self.ground},
            [({mapping[x] for x in b}, w)
             for b, w in zip(self.blocks, self.weights)])


@dataclass(frozen=True)
class PackagedRibbonGraph:
    graph: RibbonGraph
    vparts: WeightedPartition
    bparts: WeightedPartition

    @staticmethod
    def build(graph: RibbonGraph, vparts: WeightedPartition,
              bparts: WeightedPartition) -> "PackagedRibbonGraph":
        if vparts.ground != frozenset(graph.vertices):
            raise PackagingError("vertex partition does not cover the vertices")
        bids = frozenset(c.id for c in trace_boundaries(graph))
        if bparts.ground != bids:
            raise PackagingError(
                "boundary partition does not cover the boundary components")
        return PackagedRibbonGraph(graph, vparts, bparts)

    @staticmethod
    def discrete(graph: RibbonGraph) -> "PackagedRibbonGraph":
        return PackagedRibbonGraph(
            graph,
            WeightedPartition.discrete(graph.vertices),
            WeightedPartition.discrete(c.id for c in trace_boundaries(graph)))


@dataclass(frozen=True)
class PackagingGraph:
    """Quotient multigraph of a ribbon graph by a weighted partition.

    ``blocks`` hold partition elements (vertex or boundary ids); ``edges``
    are (block index, block index, ribbon edge) triples; ``vertex_block``
    maps each ribbon-graph vertex to its block index.
    """
    blocks: tuple[frozenset[str], ...]
    weights: tuple[int, ...]
    edges: tuple[tuple[int, int, str], ...]
    vertex_block: tuple[tuple[str, int], ...]

    def components(self) -> list[frozenset[int]]:
        parent = list(range(len(self.blocks)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j, _ in self.edges:
            parent[find(i)] = find(j)
        groups: dict[int, set[int]] = {}
        for i in range(len(self.blocks)):
            groups.setdefault(find(i), set()).add(i)
        return sorted((frozenset(s) for s in groups.values()), key=min)


def nullity(pk: PackagingGraph) -> int:
    """e - v + k of the packaging multigraph."""
    return len(pk.edges) - len(pk.blocks) + len(pk.components())


def packaging(pg: PackagedRibbonGraph) -> PackagingGraph:
    """Quotient of the underlying graph by the vertex partition."""
    return quotient(pg.graph, pg.vparts, {v: v for v in pg.graph.vertices})


def quotient(g: RibbonGraph, parts: WeightedPartition,
             elem_of_vertex: dict[str, str]) -> PackagingGraph:
    """Packaging of ``g`` by ``parts``; ``elem_of_vertex`` names the partition
    element each ribbon vertex stands for (identity on the vertex side, the
    boundary id of the dual vertex on the boundary side)."""
    idx = {x: i for i, b in enumerate(parts.blocks) for x in b}
    vb = {v: idx[elem_of_vertex[v]] for v in g.vertices}
    edges = tuple(sorted((min(vb[u], vb[w]), max(vb[u], vb[w]), e)
                         for e in g.sign
                         for u, w in [g.endpoints(e)]))
    return PackagingGraph(parts.blocks, parts.weights, edges,
                          tuple(sorted(vb.items())))


def component_gamma_values(sub: RibbonGraph, pk: PackagingGraph) -> list[int]:
    """Per connected component K of the packaging: 2 + e(K) - v(K) + w(K)
    minus the boundary count of the induced ribbon subgraph on K."""
    out = []
    vb = dict(pk.vertex_block)
    for comp in pk.components():
        e_k = [e for i, j, e in pk.edges if i in comp]
        verts = [v for v, i in vb.items() if i in comp]
        induced = induced_subgraph(sub, verts, e_k)
        b_k = len(trace_boundaries(induced))
        w_k = sum(pk.weights[i] for i in comp)
        out.append(2 + len(e_k) - len(comp) + w_k - b_k)
    return out


def component_gamma(pg: PackagedRibbonGraph, side: str,
                    component: Iterable[str]) -> int:
    """Genus correction of one connected packaging component.

    ``side`` is "vertex" or "boundary"; ``component`` lists the partition
    elements (vertex ids or boundary ids) of the component's blocks.
    """
    if side == "vertex":
        g = pg.graph
        parts = pg.vparts
        elem = {v: v for v in g.vertices}
    elif side == "boundary":
        gd, b_to_v, _ = dual_correspondences(pg.graph)
        g = gd
        parts = pg.bparts
        elem = {v: b for b, v in b_to_v.items()}
    else:
        raise PackagingError(f"unknown side {side!r}")
    pk = quotient(g, parts, elem)
    want = frozenset(parts.block_index(x) for x in component)
    for comp, gamma in zip(pk.components(), component_gamma_values(g, pk)):
        if comp == want:
            return gamma
    raise PackagingError("not a connected component of the packaging")


def restricted_packagings(pg: PackagedRibbonGraph,
                          a: Iterable[str]) -> tuple[PackagingGraph,
                                                     PackagingGraph]:
    """Packagings of (g|A, vertex partition) and (g*|A^c, boundary partition)."""
    aset = set(a)
    g = pg.graph
    first = quotient(restrict(g, aset), pg.vparts, {v: v for v in g.vertices})
    gd, b_to_v, _ = dual_correspondences(g)
    elem = {v: b for b, v in b_to_v.items()}
    second = quotient(restrict(gd, set(g.sign) - aset), pg.bparts, elem)
    return first, second


def packaged_dual(pg: PackagedRibbonGraph) -> PackagedRibbonGraph:
    """Dual graph with both partitions transported across the duality."""
    gd, b_to_v, v_to_b = dual_correspondences(pg.graph)
    return PackagedRibbonGraph.build(gd, pg.bparts.relabel(b_to_v),
                                     pg.vparts.relabel(v_to_b))


# ---------------------------------------------------------------------------
# packaged deletion

def _side_components(g: RibbonGraph, e: str) -> tuple[str, str, dict]:
    """Boundary ids visited by the two free sides of the band of ``e``."""
    comps = trace_boundaries(g)
    of: dict[Dart, str] = {}
    for c in comps:
        for d in c.visits:
            of[d] = c.id
    return of[(e, 1, "L")], of[(e, 1, "R")], of


def packaged_delete(pg: PackagedRibbonGraph,
                    e: str) -> PackagedRibbonGraph:
    return _packaged_delete_case(pg, e)[0]


def _packaged_delete_case(pg: PackagedRibbonGraph,
                          e: str) -> tuple[PackagedRibbonGraph, int]:
    """Delete ``e``; returns the result and which of the four boundary cases
    (1: merge, 2: same block, 3: split, 4: persist) applied."""
    g = pg.graph
    if e not in g.sign:
        raise RibbonGraphError(f"unknown edge {e}")
    s_a, s_b, _ = _side_components(g, e)
    res = delete_edge(g, e)

    old = trace_boundaries(g)
    new = trace_boundaries(res)
    new_by_dart = {d: c.id for c in new for d in c.visits}
    match: dict[str, str] = {}
    for comp in old:
        if comp.id in (s_a, s_b):
            continue
        targets = {new_by_dart[d] for d in comp.visits if d[0] != e}
        if comp.vertex is not None:
            targets = {c.id for c in new if c.vertex == comp.vertex}
        if len(targets) != 1:
            raise RibbonGraphError("deletion boundary correspondence failed")
        match[comp.id] = targets.pop()
    rem = sorted(set(c.id for c in new) - set(match.values()))

    # blocks transported into the new id space; sides of e dropped for now
    blocks = [[{match[b] for b in blk if b in match}, w]
              for blk, w in zip(pg.bparts.blocks, pg.bparts.weights)]
    if s_a != s_b:
        if len(rem) != 1:
            raise RibbonGraphError("deletion case mismatch")
        ia = pg.bparts.block_index(s_a)
        ib = pg.bparts.block_index(s_b)
        if ia != ib:
            case = 1
            merged = [blocks[ia][0] | blocks[ib][0] | {rem[0]},
                      blocks[ia][1] + blocks[ib][1]]
            blocks = [bw for i, bw in enumerate(blocks) if i not in (ia, ib)]
            blocks.append(merged)
        else:
            case = 2
            blocks[ia] = [blocks[ia][0] | {rem[0]}, blocks[ia][1] + 1]
    else:
        i = pg.bparts.block_index(s_a)
        if len(rem) == 2:
            case = 3
        elif len(rem) == 1:
            case = 4
        else:
            raise RibbonGraphError("deletion case mismatch")
        blocks[i] = [blocks[i][0] | set(rem), blocks[i][1] + 1]

    return (PackagedRibbonGraph.build(
        res, pg.vparts,
        WeightedPartition.build((c.id for c in new), blocks)), case)


# ---------------------------------------------------------------------------
# packaged contraction

def packaged_contract(pg: PackagedRibbonGraph,
                      e: str) -> PackagedRibbonGraph:
    return _packaged_contract_case(pg, e)[0]


def _packaged_contract_case(pg: PackagedRibbonGraph,
                            e: str) -> tuple[PackagedRibbonGraph, int]:
    """Contract ``e``; returns the result and which of the four vertex cases
    (1: merge, 2: same block, 3: orientable loop, 4: non-orientable loop)
    applied."""
    g = pg.graph
    res, bcorr = contract_edge(g, e)
    u, w = g.endpoints(e)
    removed = set(g.vertices) - set(res.vertices)
    fresh = sorted(set(res.vertices) - set(g.vertices))

    blocks = list(zip(pg.vparts.blocks, pg.vparts.weights))
    if u != w:
        if removed != {u, w} or len(fresh) != 1:
            raise RibbonGraphError("contraction case mismatch")
        iu = pg.vparts.block_index(u)
        iw = pg.vparts.block_index(w)
        if iu != iw:
            case = 1
            merged = ((blocks[iu][0] | blocks[iw][0]) - {u, w} | {fresh[0]},
                      blocks[iu][1] + blocks[iw][1])
            blocks = [bw for i, bw in enumerate(blocks) if i not in (iu, iw)]
            blocks.append(merged)
        else:
            case = 2
            blocks[iu] = (blocks[iu][0] - {u, w} | {fresh[0]},
                          blocks[iu][1] + 1)
    else:
        if removed != {u}:
            raise RibbonGraphError("contraction case mismatch")
        i = pg.vparts.block_index(u)
        if g.sign[e] == 1:
            case = 3
            if len(fresh) != 2:
                raise RibbonGraphError("contraction case mismatch")
        else:
            case = 4
            if len(fresh) != 1:
                raise RibbonGraphError("contraction case mismatch")
        blocks[i] = (blocks[i][0] - {u} | set(fresh), blocks[i][1] + 1)

    new_bparts = pg.bparts.relabel(bcorr)
    return (PackagedRibbonGraph.build(
        res, WeightedPartition.build(res.vertices, blocks), new_bparts), case)


# ---------------------------------------------------------------------------
# isomorphism of packaged graphs (test oracle)

def packaged_isomorphic(p1: PackagedRibbonGraph,
                        p2: PackagedRibbonGraph) -> bool:
    if p1.graph.edges and len(p1.graph.edges) != len(p2.graph.edges):
        return False
    b2 = trace_boundaries(p2.graph)
    for iso in isomorphisms(p1.graph, p2.graph):
        if p1.vparts.relabel(iso.vertex_map).shape() != p2.vparts.shape():
            continue
        dm = iso.dart_map(p1.graph)
        by_dart = {d: c.id for c in b2 for d in c.visits}
        by_vertex = {c.vertex: c.id for c in b2 if c.vertex is not None}
        bmap = {}
        ok = True
        for comp in trace_boundaries(p1.graph):
            if comp.vertex is not None:
                bmap[comp.id] = by_vertex[iso.vertex_map[comp.vertex]]
                continue
            targets = {by_dart[dm[d]] for d in comp.visits}
            if len(targets) != 1:
                ok = False
                break
            bmap[comp.id] = targets.pop()
        if not ok:
            continue
        if p1.bparts.relabel(bmap).shape() == p2.bparts.shape():
            return True
    return False
