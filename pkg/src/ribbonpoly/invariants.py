"""Evaluation pipelines for the packaged invariant polynomial.

Three routes compute the same polynomial: a state sum over edge subsets, a
deletion-contraction recursion, and a quasi-tree expansion.  On top of these
sit the specializations (surface version for orientable graphs, the
four-variable alpha/beta/a/b polynomial with its own quasi-tree expansion,
and the classical Tutte polynomial), a small-instance corpus generator and a
cross-validation driver.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .packaged import (PackagedRibbonGraph, PackagingGraph, WeightedPartition,
                       component_gamma_values, nullity, packaged_contract,
                       packaged_delete, quotient)
from .poly import HalfExpPoly, MultiPoly
from .ribbon import (RibbonGraph, RibbonGraphError, activities, certificate,
                     classify_edge, connected_components, delete_edge,
                     dual_correspondences, enumerate_quasi_trees, euler_genus,
                     EdgeKind, orientable, restrict, trace_boundaries)


# ---------------------------------------------------------------------------
# state sum

def _dual_setup(pg: PackagedRibbonGraph):
    gd, b_to_v, _ = dual_correspondences(pg.graph)
    elem = {v: b for b, v in b_to_v.items()}
    return gd, elem


def _subset_term(pg, gd, elem, aset: frozenset) -> MultiPoly:
    g = pg.graph
    sub1 = restrict(g, aset)
    pk1 = quotient(sub1, pg.vparts, {v: v for v in g.vertices})
    sub2 = restrict(gd, set(g.sign) - aset)
    pk2 = quotient(sub2, pg.bparts, elem)
    term = MultiPoly.x(nullity(pk2)) * MultiPoly.y(nullity(pk1))
    for gamma in component_gamma_values(sub2, pk2):
        term = term * MultiPoly.xg(gamma)
    for gamma in component_gamma_values(sub1, pk1):
        term = term * MultiPoly.yg(gamma)
    return term


def pst_state_sum(pg: PackagedRibbonGraph) -> MultiPoly:
    """Sum over all edge subsets A of x^{n(dual packaging of A^c)} times
    y^{n(packaging of A)} times the per-component genus variables."""
    gd, elem = _dual_setup(pg)
    edges = pg.graph.edges
    total = MultiPoly.zero()
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            total = total + _subset_term(pg, gd, elem, frozenset(combo))
    return total


# ---------------------------------------------------------------------------
# deletion-contraction

def _terminal(pg: PackagedRibbonGraph) -> MultiPoly:
    out = MultiPoly.const(1)
    for blk, w in zip(pg.bparts.blocks, pg.bparts.weights):
        out = out * MultiPoly.xg(1 - len(blk) + w)
    for blk, w in zip(pg.vparts.blocks, pg.vparts.weights):
        out = out * MultiPoly.yg(1 - len(blk) + w)
    return out


def _pivot(pg: PackagedRibbonGraph, rule) -> str:
    edges = pg.graph.edges
    if callable(rule):
        return rule(pg)
    if rule == "first":
        return edges[0]
    if rule == "last":
        return edges[-1]
    raise ValueError(f"unknown pivot rule {rule!r}")


def pst_delcon(pg: PackagedRibbonGraph, pivot_rule="first",
               _counter: list | None = None) -> MultiPoly:
    """Deletion-contraction recursion; the result is pivot-independent."""
    if _counter is not None:
        _counter[0] += 1
    g = pg.graph
    if not g.sign:
        return _terminal(pg)
    e = _pivot(pg, pivot_rule)

    from .packaged import _side_components
    s_a, s_b, _ = _side_components(g, e)
    alpha = 1 if pg.bparts.block_index(s_a) == pg.bparts.block_index(s_b) else 0
    u, w = g.endpoints(e)
    beta = 1 if pg.vparts.block_index(u) == pg.vparts.block_index(w) else 0

    return (MultiPoly.x(alpha) * pst_delcon(packaged_delete(pg, e),
                                            pivot_rule, _counter)
            + MultiPoly.y(beta) * pst_delcon(packaged_contract(pg, e),
                                             pivot_rule, _counter))


# ---------------------------------------------------------------------------
# quasi-tree expansion

def _quasitree_minor(pg: PackagedRibbonGraph, deleted: Iterable[str],
                     contracted: Iterable[str],
                     contract_first: bool = False) -> PackagedRibbonGraph:
    cur = pg
    if contract_first:
        for e in sorted(contracted):
            cur = packaged_contract(cur, e)
        for e in sorted(deleted):
            cur = packaged_delete(cur, e)
    else:
        for e in sorted(deleted):
            cur = packaged_delete(cur, e)
        for e in sorted(contracted):
            cur = packaged_contract(cur, e)
    return cur


def _quasitree_terms(pg: PackagedRibbonGraph, order: list[str]):
    """Yield (Q, activity report, x/y prefactor, minor) per quasi-tree."""
    g = pg.graph
    gd, elem = _dual_setup(pg)
    for q in enumerate_quasi_trees(g):
        act = activities(g, q, order)
        dn = act.contracted_part()
        dn_star = act.deleted_part()
        pk1 = quotient(restrict(g, dn), pg.vparts,
                       {v: v for v in g.vertices})
        pk2 = quotient(restrict(gd, dn_star), pg.bparts, elem)
        pre = MultiPoly.x(nullity(pk2)) * MultiPoly.y(nullity(pk1))
        minor = _quasitree_minor(pg, dn_star, dn)
        yield q, act, pre, minor


def pst_quasitree(pg: PackagedRibbonGraph, order: Iterable[str]) -> MultiPoly:
    """Quasi-tree expansion; each quasi-tree contributes its activity minor's
    polynomial with a nullity prefactor."""
    order = list(order)
    if len(connected_components(pg.graph)) != 1:
        raise RibbonGraphError("quasi-tree expansion requires a connected graph")
    total = MultiPoly.zero()
    for _, _, pre, minor in _quasitree_terms(pg, order):
        total = total + pre * pst_delcon(minor)
    return total


def minor_shape_check(pg: PackagedRibbonGraph, q: Iterable[str],
                      order: Iterable[str]) -> bool:
    """In the activity minor, internal live orientable edges must be bridges
    and external live orientable edges plane loops."""
    g = pg.graph
    act = activities(g, frozenset(q), list(order))
    minor = _quasitree_minor(pg, act.deleted_part(), act.contracted_part())
    mg = minor.graph
    for e in act.internal_live_orientable:
        if classify_edge(mg, e) != EdgeKind.BRIDGE:
            return False
    for e in act.external_live_orientable:
        if classify_edge(mg, e) != EdgeKind.PLANE_LOOP:
            return False
    return True


# ---------------------------------------------------------------------------
# specializations

def surface_tutte(g: RibbonGraph) -> MultiPoly:
    """The orientable-case specialization: discrete weight-0 packaging, then
    every genus index halved."""
    if not orientable(g):
        raise RibbonGraphError("surface specialization requires an orientable "
                               "ribbon graph")
    return pst_state_sum(PackagedRibbonGraph.discrete(g)).reindex_halved()


def _krushkal_direct(g: RibbonGraph) -> HalfExpPoly:
    gd, _, _ = dual_correspondences(g)
    k = len(connected_components(g))
    kd = len(connected_components(gd))
    edges = g.edges
    total = HalfExpPoly.zero()
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            aset = set(combo)
            sub = restrict(g, aset)
            subd = restrict(gd, set(edges) - aset)
            term = (HalfExpPoly.alpha(len(connected_components(sub)) - k)
                    * HalfExpPoly.beta(len(connected_components(subd)) - kd)
                    * HalfExpPoly.a_half(euler_genus(sub))
                    * HalfExpPoly.b_half(euler_genus(subd)))
            total = total + term
    return total


def _krushkal_substitution(g: RibbonGraph) -> HalfExpPoly:
    t = pst_state_sum(PackagedRibbonGraph.discrete(g))
    k = len(connected_components(g))
    one = HalfExpPoly.const(1)
    image = t.substitute(
        x=one, y=one,
        xg=lambda gamma: HalfExpPoly.beta() * HalfExpPoly.b_half(gamma),
        yg=lambda gamma: HalfExpPoly.alpha() * HalfExpPoly.a_half(gamma),
        ring=HalfExpPoly)
    return HalfExpPoly.alpha(-k) * HalfExpPoly.beta(-k) * image


def krushkal(g: RibbonGraph) -> tuple[HalfExpPoly, HalfExpPoly]:
    """The four-variable polynomial computed two ways: direct subset sum and
    substitution into the packaged polynomial.  Both are returned; they must
    agree."""
    return _krushkal_direct(g), _krushkal_substitution(g)


# ---------------------------------------------------------------------------
# classical Tutte polynomial of an abstract multigraph

@dataclass(frozen=True)
class Multigraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, str], ...]  # (name, endpoint, endpoint)


def _mg_counts(vertices, edges) -> tuple[int, int]:
    """(k, n) of the multigraph."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, w in edges:
        parent[find(u)] = find(w)
    k = len({find(v) for v in vertices})
    n = len(edges) - len(vertices) + k
    return k, n


def classical_tutte(h: Multigraph, subset_nullity: bool = True) -> MultiPoly:
    """Subset sum of (x-1)^{k(h|A)-k(h)} (y-1)^{n(h|A)}.

    ``subset_nullity=False`` uses n(h) instead of n(h|A); that variant is not
    the Tutte polynomial and exists only as a pinned regression contrast.
    """
    xm1 = MultiPoly.x() - 1
    ym1 = MultiPoly.y() - 1
    k_h, n_h = _mg_counts(h.vertices, h.edges)
    total = MultiPoly.zero()
    for r in range(len(h.edges) + 1):
        for combo in itertools.combinations(h.edges, r):
            k_a, n_a = _mg_counts(h.vertices, combo)
            total = total + (xm1 ** (k_a - k_h)) * \
                (ym1 ** (n_a if subset_nullity else n_h))
    return total


def underlying_multigraph(g: RibbonGraph) -> Multigraph:
    return Multigraph(tuple(g.vertices),
                      tuple((e, *g.endpoints(e)) for e in g.edges))


def _tutte_in(h: Multigraph, xrepl: HalfExpPoly, yrepl: HalfExpPoly,
              subset_nullity: bool = True) -> HalfExpPoly:
    t = classical_tutte(h, subset_nullity=subset_nullity)
    return t.substitute(x=xrepl, y=yrepl, ring=HalfExpPoly)


def krushkal_quasitree(g: RibbonGraph, order: Iterable[str],
                       subset_nullity: bool = True) -> HalfExpPoly:
    """Quasi-tree expansion of the four-variable polynomial.

    ``subset_nullity=False`` propagates the non-Tutte contrast variant of
    :func:`classical_tutte`; it provably breaks the expansion and exists only
    for the pinning regression test.
    """
    order = list(order)
    if len(connected_components(g)) != 1:
        raise RibbonGraphError("quasi-tree expansion requires a connected graph")
    gd, _, _ = dual_correspondences(g)
    alpha_p1 = HalfExpPoly.alpha() + 1
    beta_p1 = HalfExpPoly.beta() + 1
    a_p1 = HalfExpPoly.a_half(2) + 1
    b_p1 = HalfExpPoly.b_half(2) + 1
    total = HalfExpPoly.zero()
    for q in enumerate_quasi_trees(g):
        act = activities(g, q, order)
        dn = act.contracted_part()
        dn_star = act.deleted_part()
        sub = restrict(g, dn)
        subd = restrict(gd, dn_star)
        g_q = Multigraph(
            tuple(min(c) for c in connected_components(sub)),
            tuple((e, _comp_of(sub, g.endpoints(e)[0]),
                   _comp_of(sub, g.endpoints(e)[1]))
                  for e in sorted(act.internal_live_orientable)))
        g_qs = Multigraph(
            tuple(min(c) for c in connected_components(subd)),
            tuple((e, _comp_of(subd, gd.endpoints(e)[0]),
                   _comp_of(subd, gd.endpoints(e)[1]))
                  for e in sorted(act.external_live_orientable)))
        term = (_tutte_in(g_q, alpha_p1, a_p1, subset_nullity)
                * _tutte_in(g_qs, beta_p1, b_p1, subset_nullity)
                * HalfExpPoly.a_half(euler_genus(sub))
                * HalfExpPoly.b_half(euler_genus(subd)))
        total = total + term
    return total


def _comp_of(g: RibbonGraph, v: str) -> str:
    for c in connected_components(g):
        if v in c:
            return min(c)
    raise KeyError(v)


# ---------------------------------------------------------------------------
# corpus

def _cyclic_partitions(slots: int, max_vertices: int):
    """Distribute slot indices 0..slots-1 into 1..max_vertices nonempty
    ordered groups (cyclic order as listed)."""
    if slots == 0:
        return
    for v in range(1, max_vertices + 1):
        for cuts in itertools.combinations(range(1, slots), v - 1):
            bounds = (0,) + cuts + (slots,)
            yield [list(range(bounds[i], bounds[i + 1])) for i in range(v)]


def _pairings(slots: list[int]):
    if not slots:
        yield []
        return
    first, rest = slots[0], slots[1:]
    for i, other in enumerate(rest):
        for sub in _pairings(rest[:i] + rest[i + 1:]):
            yield [(first, other)] + sub


def enumerate_connected(max_edges: int,
                        max_vertices: int = 4) -> Iterator[RibbonGraph]:
    """Exhaustively enumerate connected signed rotation systems, deduplicated
    up to isomorphism."""
    seen = set()
    g0 = RibbonGraph.build(["v1"], {"v1": []}, {})
    seen.add(certificate(g0))
    yield g0
    for m in range(1, max_edges + 1):
        names = [f"e{i + 1}" for i in range(m)]
        for groups in _cyclic_partitions(2 * m, max_vertices):
            vnames = [f"v{i + 1}" for i in range(len(groups))]
            for pairing in _pairings(list(range(2 * m))):
                slot_end = {}
                for name, (s1, s2) in zip(names, pairing):
                    slot_end[s1] = (name, 1)
                    slot_end[s2] = (name, 2)
                rotation = {v: tuple(slot_end[s] for s in grp)
                            for v, grp in zip(vnames, groups)}
                base = RibbonGraph(tuple(vnames), rotation,
                                   {n: 1 for n in names})
                if len(connected_components(base)) != 1:
                    continue
                for signs in itertools.product((1, -1), repeat=m):
                    g = RibbonGraph(base.vertices, base.rotation,
                                    dict(zip(names, signs)))
                    cert = certificate(g)
                    if cert in seen:
                        continue
                    seen.add(cert)
                    yield g


def _random_partition(rng: random.Random,
                      ground: list[str]) -> WeightedPartition:
    if not ground:
        return WeightedPartition((), ())
    nblocks = rng.randint(1, min(len(ground), 3))
    assignment = {}
    chosen = rng.sample(ground, nblocks)
    for i, x in enumerate(chosen):
        assignment[x] = i
    for x in ground:
        if x not in assignment:
            assignment[x] = rng.randrange(nblocks)
    blocks = []
    for i in range(nblocks):
        members = {x for x, j in assignment.items() if j == i}
        blocks.append((members, rng.randint(0, 2)))
    return WeightedPartition.build(ground, blocks)


def corpus(max_edges: int, seed: int,
           random_packagings: int = 1,
           max_vertices: int = 4) -> Iterator[tuple[RibbonGraph,
                                                    PackagedRibbonGraph]]:
    """Connected instances up to the size bounds, each emitted with the
    discrete weight-0 packaging followed by seeded random packagings."""
    rng = random.Random(seed)
    for g in enumerate_connected(max_edges, max_vertices):
        yield g, PackagedRibbonGraph.discrete(g)
        bids = [c.id for c in trace_boundaries(g)]
        for _ in range(random_packagings):
            pg = PackagedRibbonGraph.build(
                g, _random_partition(rng, list(g.vertices)),
                _random_partition(rng, bids))
            yield g, pg


# ---------------------------------------------------------------------------
# cross-validation

@dataclass
class ValidationReport:
    state_sum: MultiPoly
    delcon: MultiPoly
    quasitree: dict[tuple[str, ...], MultiPoly]
    equal: bool
    shape_checks_passed: bool
    breakdown: dict[tuple[str, ...], list] = field(default_factory=dict)
    delcon_nodes: int = 0


def cross_validate(pg: PackagedRibbonGraph,
                   orders: Iterable[Iterable[str]]) -> ValidationReport:
    """Run all three pipelines, compare exactly, and shape-check every
    quasi-tree minor."""
    counter = [0]
    ss = pst_state_sum(pg)
    dc = pst_delcon(pg, _counter=counter)
    qt: dict[tuple[str, ...], MultiPoly] = {}
    breakdown: dict[tuple[str, ...], list] = {}
    shapes_ok = True
    connected = len(connected_components(pg.graph)) == 1
    for order in orders:
        order = tuple(order)
        if not connected:
            continue
        total = MultiPoly.zero()
        rows = []
        for q, act, pre, minor in _quasitree_terms(pg, list(order)):
            contrib = pre * pst_delcon(minor)
            total = total + contrib
            rows.append((tuple(sorted(q)), act, contrib))
            if not minor_shape_check(pg, q, order):
                shapes_ok = False
        qt[order] = total
        breakdown[order] = rows
    equal = ss == dc and all(p == ss for p in qt.values())
    return ValidationReport(ss, dc, qt, equal, shapes_ok, breakdown,
                            counter[0])
