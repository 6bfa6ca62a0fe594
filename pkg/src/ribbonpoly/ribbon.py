"""Ribbon graphs as signed rotation systems.

A ribbon graph is stored as a rotation system: every vertex carries a cyclic
sequence of edge ends, and every edge carries a sign (-1 marks a twisted
band).  Edge ends are pairs ``(edge, i)`` with ``i`` in ``{1, 2}``.  Boundary
components are traced as cyclic walks of *darts* ``(edge, i, side)`` with
``side`` in ``{"L", "R"}``; every dart is visited exactly once across all
boundary walks.

Topological operations (duals, partial duals) are carried out in the flag
model: the darts together with three pairings

* ``t0`` -- crossing an edge band along one of its free sides,
* ``t1`` -- crossing a vertex corner between consecutive ends,
* ``t2`` -- crossing an end between its two sides,

encode the ribbon graph completely.  Vertices are the orbits of ``t1, t2``,
edges the orbits of ``t0, t2`` and boundary components the orbits of
``t0, t1``.  The partial dual with respect to an edge subset swaps ``t0`` and
``t2`` on the darts of those edges; applied to every edge this is the
geometric dual.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional

End = tuple[str, int]
Dart = tuple[str, int, str]


class RibbonGraphError(ValueError):
    pass


@dataclass(frozen=True)
class RibbonGraph:
    vertices: tuple[str, ...]
    rotation: dict[str, tuple[End, ...]]
    sign: dict[str, int]

    @staticmethod
    def build(vertices: Iterable[str],
              rotation: dict[str, Iterable[End]],
              sign: dict[str, int]) -> "RibbonGraph":
        vs = tuple(vertices)
        rot = {v: tuple((str(e), int(i)) for e, i in rotation.get(v, ())) for v in vs}
        g = RibbonGraph(vs, rot, dict(sign))
        faults = validate(g)
        if faults:
            raise RibbonGraphError("; ".join(faults))
        return g

    @property
    def edges(self) -> tuple[str, ...]:
        return tuple(sorted(self.sign))

    def vertex_of_end(self, end: End) -> str:
        for v, rot in self.rotation.items():
            if end in rot:
                return v
        raise KeyError(end)

    def endpoints(self, e: str) -> tuple[str, str]:
        """Vertices of the two ends of ``e`` (equal for a loop)."""
        return (self.vertex_of_end((e, 1)), self.vertex_of_end((e, 2)))

    def is_loop(self, e: str) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def darts(self) -> list[Dart]:
        return sorted((e, i, s) for e in self.sign for i in (1, 2) for s in "LR")


def validate(g: RibbonGraph) -> list[str]:
    """Return a list of structural faults; empty means the graph is valid."""
    faults = []
    if len(set(g.vertices)) != len(g.vertices):
        faults.append("duplicate vertex identifier")
    seen: dict[End, int] = {}
    for v in g.vertices:
        for end in g.rotation.get(v, ()):
            seen[end] = seen.get(end, 0) + 1
    for end, n in seen.items():
        e, i = end
        if e not in g.sign:
            faults.append(f"end {e}.{i} references undeclared edge {e}")
        if n > 1:
            faults.append(f"end {e}.{i} placed twice")
    for e, s in g.sign.items():
        if s not in (1, -1):
            faults.append(f"edge {e} has sign {s}, expected +1 or -1")
        for i in (1, 2):
            if (e, i) not in seen:
                faults.append(f"edge {e} is missing end {e}.{i}")
    for v in g.rotation:
        if v not in g.vertices:
            faults.append(f"rotation given for unknown vertex {v}")
    return faults


# ---------------------------------------------------------------------------
# flag pairings

def _tau1(g: RibbonGraph) -> dict[Dart, Dart]:
    """Corner pairing: arriving on side R continues at the next end's L side."""
    t1 = {}
    for v in g.vertices:
        rot = g.rotation.get(v, ())
        n = len(rot)
        for p, end in enumerate(rot):
            nxt = rot[(p + 1) % n]
            t1[(end[0], end[1], "R")] = (nxt[0], nxt[1], "L")
            t1[(nxt[0], nxt[1], "L")] = (end[0], end[1], "R")
    return t1


def _tau2(g: RibbonGraph) -> dict[Dart, Dart]:
    t2 = {}
    for e in g.sign:
        for i in (1, 2):
            t2[(e, i, "L")] = (e, i, "R")
            t2[(e, i, "R")] = (e, i, "L")
    return t2


def _tau0(g: RibbonGraph) -> dict[Dart, Dart]:
    """Band-side pairing; an untwisted band exchanges L and R."""
    t0 = {}
    for e, s in g.sign.items():
        for i, side in itertools.product((1, 2), "LR"):
            j = 3 - i
            other = ("R" if side == "L" else "L") if s == 1 else side
            t0[(e, i, side)] = (e, j, other)
    return t0


# ---------------------------------------------------------------------------
# boundary tracing

@dataclass(frozen=True)
class BoundaryComponent:
    id: str
    visits: tuple[Dart, ...]
    vertex: Optional[str] = None  # set for an isolated-vertex component

    def dart_set(self) -> frozenset[Dart]:
        return frozenset(self.visits)


def trace_boundaries(g: RibbonGraph) -> list[BoundaryComponent]:
    """All boundary components, canonically ordered and labelled b1, b2, ...

    Each walk starts at its minimal unused dart; walks with edges come first,
    then one empty component per isolated vertex, in vertex order.
    """
    t0 = _tau0(g)
    t1 = _tau1(g)
    unused = set(t0)
    comps = []
    while unused:
        d0 = min(unused)
        walk = []
        cur = d0
        while True:
            walk.append(cur)
            unused.discard(cur)
            arr = t0[cur]
            walk.append(arr)
            unused.discard(arr)
            cur = t1[arr]
            if cur == d0:
                break
        comps.append(tuple(walk))
    out = [BoundaryComponent(f"b{i + 1}", w) for i, w in enumerate(comps)]
    n = len(out)
    for v in sorted(g.vertices):
        if not g.rotation.get(v, ()):
            n += 1
            out.append(BoundaryComponent(f"b{n}", (), vertex=v))
    return out


def counts(g: RibbonGraph) -> tuple[int, int, int, int]:
    """(v, e, k, b)."""
    return (len(g.vertices), len(g.sign), len(connected_components(g)),
            len(trace_boundaries(g)))


def connected_components(g: RibbonGraph) -> list[frozenset[str]]:
    """Vertex partition into connected components (isolated vertices count)."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.sign:
        u, v = g.endpoints(e)
        parent[find(u)] = find(v)
    groups: dict[str, set[str]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


def euler_genus(g: RibbonGraph) -> int:
    v, e, k, b = counts(g)
    return 2 * k - v + e - b


def orientable(g: RibbonGraph) -> bool:
    """True iff per-vertex reflections can make every edge sign +1."""
    flip: dict[str, int] = {}
    adj: dict[str, list[tuple[str, int]]] = {v: [] for v in g.vertices}
    for e, s in g.sign.items():
        u, v = g.endpoints(e)
        if u == v:
            if s == -1:
                return False
        else:
            adj[u].append((v, s))
            adj[v].append((u, s))
    for root in g.vertices:
        if root in flip:
            continue
        flip[root] = 0
        stack = [root]
        while stack:
            u = stack.pop()
            for w, s in adj[u]:
                want = flip[u] ^ (1 if s == -1 else 0)
                if w not in flip:
                    flip[w] = want
                    stack.append(w)
                elif flip[w] != want:
                    return False
    return True


# ---------------------------------------------------------------------------
# subgraphs, deletion

def restrict(g: RibbonGraph, edges: Iterable[str]) -> RibbonGraph:
    """Spanning ribbon subgraph on the given edge subset."""
    keep = set(edges)
    unknown = keep - set(g.sign)
    if unknown:
        raise RibbonGraphError(f"unknown edge {sorted(unknown)[0]}")
    rot = {v: tuple(end for end in g.rotation.get(v, ()) if end[0] in keep)
           for v in g.vertices}
    return RibbonGraph(g.vertices, rot, {e: s for e, s in g.sign.items() if e in keep})


def delete_edge(g: RibbonGraph, e: str) -> RibbonGraph:
    if e not in g.sign:
        raise RibbonGraphError(f"unknown edge {e}")
    return restrict(g, set(g.sign) - {e})


def induced_subgraph(g: RibbonGraph, vertices: Iterable[str],
                     edges: Iterable[str]) -> RibbonGraph:
    """Subgraph on the given vertices and edges (all edge ends must land on
    kept vertices)."""
    vs = [v for v in g.vertices if v in set(vertices)]
    keep = set(edges)
    rot = {v: tuple(end for end in g.rotation.get(v, ()) if end[0] in keep)
           for v in vs}
    placed = sum(len(r) for r in rot.values())
    if placed != 2 * len(keep):
        raise RibbonGraphError("induced subgraph drops an edge end")
    return RibbonGraph(tuple(vs), rot, {e: g.sign[e] for e in keep})


def delete_isolated_vertices(g: RibbonGraph, vs: Iterable[str]) -> RibbonGraph:
    drop = set(vs)
    for v in drop:
        if v not in g.vertices:
            raise RibbonGraphError(f"unknown vertex {v}")
        if g.rotation.get(v, ()):
            raise RibbonGraphError(f"vertex {v} is not isolated")
    kept = tuple(v for v in g.vertices if v not in drop)
    return RibbonGraph(kept, {v: g.rotation[v] for v in kept}, dict(g.sign))


# ---------------------------------------------------------------------------
# partial duality

def _fresh_names(taken: set[str], n: int) -> list[str]:
    out = []
    i = 1
    while len(out) < n:
        name = f"w{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def _rebuild_from_flags(g: RibbonGraph, t0: dict[Dart, Dart],
                        t2: dict[Dart, Dart]) -> tuple[RibbonGraph, dict[Dart, Dart]]:
    """Reconstruct a rotation system from modified flag pairings.

    Vertices whose flag orbit is unchanged keep their identity and rotation;
    changed orbits become fresh vertices named w1, w2, ... in order of their
    minimal dart.  Also returns the dart relabelling (old dart -> dart of the
    rebuilt graph), since end indices and sides on fresh vertices may be
    renamed.
    """
    t1 = _tau1(g)
    old_orbit = {v: frozenset((e, i, s) for (e, i) in g.rotation.get(v, ())
                              for s in "LR") for v in g.vertices}
    orbit_of = {fs: v for v, fs in old_orbit.items() if fs}

    seen: set[Dart] = set()
    orbits = []
    for d in sorted(t0):
        if d in seen:
            continue
        orbit = set()
        stack = [d]
        while stack:
            f = stack.pop()
            if f in orbit:
                continue
            orbit.add(f)
            stack.extend((t1[f], t2[f]))
        seen |= orbit
        orbits.append(frozenset(orbit))

    def end_of_pair(pair: frozenset[Dart]) -> End:
        e = next(iter(pair))[0]
        return (e, 1) if (e, 1, "L") in pair else (e, 2)

    vertices: list[str] = []
    rotation: dict[str, tuple[End, ...]] = {}
    lflag: dict[End, Dart] = {}
    dart_map: dict[Dart, Dart] = {}
    fresh = iter(_fresh_names(set(g.vertices), len(orbits)))

    def untouched(orbit: frozenset[Dart]) -> bool:
        # Reusing the old rotation verbatim is only sound when the side
        # pairing on every end of the vertex is still the standard one.
        v = orbit_of.get(orbit)
        if v is None:
            return False
        return all(t2[(e0, i0, "L")] == (e0, i0, "R")
                   for (e0, i0) in g.rotation[v])

    for orbit in orbits:
        if untouched(orbit):
            v = orbit_of[orbit]
            vertices.append(v)
            rotation[v] = g.rotation[v]
            for end in g.rotation[v]:
                lflag[end] = (end[0], end[1], "L")
                dart_map[(end[0], end[1], "L")] = (end[0], end[1], "L")
                dart_map[(end[0], end[1], "R")] = (end[0], end[1], "R")
            continue
        v = next(fresh)
        f0 = min(orbit)
        rot = []
        cur = f0
        while True:
            partner = t2[cur]
            end = end_of_pair(frozenset((cur, partner)))
            rot.append(end)
            lflag[end] = cur
            dart_map[cur] = (end[0], end[1], "L")
            dart_map[partner] = (end[0], end[1], "R")
            cur = t1[partner]
            if cur == f0:
                break
        if 2 * len(rot) != len(orbit):
            raise RibbonGraphError("inconsistent flag structure")
        vertices.append(v)
        rotation[v] = tuple(rot)

    for v in g.vertices:  # isolated vertices carry no flags
        if not g.rotation.get(v, ()):
            vertices.append(v)
            rotation[v] = ()

    sign = {}
    for e in g.sign:
        l1 = lflag[(e, 1)]
        image = t0[l1]
        l2 = lflag[(e, 2)]
        r2 = t2[l2]
        if image == r2:
            sign[e] = 1
        elif image == l2:
            sign[e] = -1
        else:
            raise RibbonGraphError("inconsistent flag structure")

    order = {v: i for i, v in enumerate(vertices)}
    vertices.sort(key=lambda v: order[v])
    return RibbonGraph(tuple(vertices), rotation, sign), dart_map


def partial_dual_with_map(g: RibbonGraph,
                          edges: Iterable[str]) -> tuple[RibbonGraph, dict[Dart, Dart]]:
    """Partial dual together with the dart relabelling it induces."""
    a = set(edges)
    unknown = a - set(g.sign)
    if unknown:
        raise RibbonGraphError(f"unknown edge {sorted(unknown)[0]}")
    if not a:
        return g, {d: d for d in g.darts()}
    t0 = _tau0(g)
    t2 = _tau2(g)
    for e in a:
        for i, s in itertools.product((1, 2), "LR"):
            d = (e, i, s)
            t0[d], t2[d] = t2[d], t0[d]
    return _rebuild_from_flags(g, t0, t2)


def partial_dual(g: RibbonGraph, edges: Iterable[str]) -> RibbonGraph:
    return partial_dual_with_map(g, edges)[0]


def dual(g: RibbonGraph) -> tuple[RibbonGraph, dict[str, str], dict[str, str]]:
    """Geometric dual, the boundary-id -> dual-vertex correspondence, and the
    (identity) edge map."""
    gd, corr, _ = dual_correspondences(g)
    return gd, corr, {e: e for e in g.sign}


def dual_correspondences(g: RibbonGraph) -> tuple[RibbonGraph, dict[str, str],
                                                  dict[str, str]]:
    """Dual plus both correspondences: boundary id -> dual vertex and
    vertex -> dual boundary id."""
    gd, dart_map = partial_dual_with_map(g, g.sign)
    flags_of = {v: frozenset((e, i, s) for (e, i) in gd.rotation.get(v, ())
                             for s in "LR") for v in gd.vertices}
    b_to_v = {}
    for comp in trace_boundaries(g):
        if comp.vertex is not None:
            b_to_v[comp.id] = comp.vertex
            continue
        darts = frozenset(dart_map[d] for d in comp.visits)
        for v, fs in flags_of.items():
            if fs == darts:
                b_to_v[comp.id] = v
                break
        else:
            raise RibbonGraphError("dual vertex not found for boundary component")

    inv = {new: old for old, new in dart_map.items()}
    old_flags = {v: frozenset((e, i, s) for (e, i) in g.rotation.get(v, ())
                              for s in "LR") for v in g.vertices}
    v_to_b = {}
    for comp in trace_boundaries(gd):
        if comp.vertex is not None:
            v_to_b[comp.vertex] = comp.id
            continue
        darts = frozenset(inv[d] for d in comp.visits)
        for v, fs in old_flags.items():
            if fs == darts:
                v_to_b[v] = comp.id
                break
        else:
            raise RibbonGraphError("dual boundary not found for vertex")
    return gd, b_to_v, v_to_b


# ---------------------------------------------------------------------------
# contraction

def contract_edge(g: RibbonGraph, e: str) -> tuple[RibbonGraph, dict[str, str]]:
    """Contract ``e``; also return the boundary correspondence b(g) -> b(g/e).

    Implemented through the partial dual (g/e equals the partial dual at e
    with e deleted); the correspondence matches boundary components sharing a
    dart on a surviving edge, with leftover empty components paired in
    canonical order.
    """
    if e not in g.sign:
        raise RibbonGraphError(f"unknown edge {e}")
    pd, dart_map = partial_dual_with_map(g, {e})
    res = delete_edge(pd, e)

    old = trace_boundaries(g)
    new = trace_boundaries(res)
    corr: dict[str, str] = {}
    new_by_dart: dict[Dart, str] = {}
    for comp in new:
        for d in comp.visits:
            new_by_dart[d] = comp.id
    matched_new = set()
    leftover_old = []
    for comp in old:
        targets = {new_by_dart[dart_map[d]] for d in comp.visits if d[0] != e}
        if len(targets) > 1:
            raise RibbonGraphError("boundary correspondence is not a bijection")
        if targets:
            (t,) = targets
            if t in matched_new:
                raise RibbonGraphError("boundary correspondence is not a bijection")
            corr[comp.id] = t
            matched_new.add(t)
        else:
            leftover_old.append(comp)
    leftover_new = [c for c in new if c.id not in matched_new]
    # prefer identical isolated-vertex components, then pair in trace order
    by_vertex = {c.vertex: c for c in leftover_new if c.vertex is not None}
    rest_old = []
    for comp in leftover_old:
        tgt = by_vertex.get(comp.vertex) if comp.vertex is not None else None
        if tgt is not None and tgt.id not in matched_new:
            corr[comp.id] = tgt.id
            matched_new.add(tgt.id)
        else:
            rest_old.append(comp)
    remaining = [c for c in leftover_new if c.id not in matched_new]
    if len(rest_old) != len(remaining):
        raise RibbonGraphError("boundary correspondence is not a bijection")
    for a, b in zip(rest_old, remaining):
        corr[a.id] = b.id
    return res, corr


# ---------------------------------------------------------------------------
# edge classification

class EdgeKind(Enum):
    BRIDGE = "bridge"
    ORDINARY = "ordinary non-loop"
    PLANE_LOOP = "orientable plane loop"
    NONPLANE_LOOP = "orientable non-plane loop"
    NONORIENTABLE_LOOP = "non-orientable loop"


def classify_edge(g: RibbonGraph, e: str) -> EdgeKind:
    if e not in g.sign:
        raise RibbonGraphError(f"unknown edge {e}")
    u, v = g.endpoints(e)
    if u != v:
        k = len(connected_components(g))
        if len(connected_components(delete_edge(g, e))) > k:
            return EdgeKind.BRIDGE
        return EdgeKind.ORDINARY
    if g.sign[e] == -1:
        return EdgeKind.NONORIENTABLE_LOOP
    k = len(connected_components(g))
    contracted, _ = contract_edge(g, e)
    if len(connected_components(contracted)) > k:
        return EdgeKind.PLANE_LOOP
    return EdgeKind.NONPLANE_LOOP


def interlaced(g: RibbonGraph, e: str, f: str) -> bool:
    """True iff loops ``e`` and ``f`` share a vertex with ends in order efef."""
    if e == f or not (g.is_loop(e) and g.is_loop(f)):
        return False
    ve = g.vertex_of_end((e, 1))
    if ve != g.vertex_of_end((f, 1)):
        return False
    pattern = [end[0] for end in g.rotation[ve] if end[0] in (e, f)]
    return len(pattern) == 4 and pattern[0] != pattern[1] and pattern[1] != pattern[2] \
        and pattern[2] != pattern[3]


# ---------------------------------------------------------------------------
# quasi-trees and activities

def enumerate_quasi_trees(g: RibbonGraph) -> list[frozenset[str]]:
    """All spanning edge subsets with exactly one boundary component."""
    if len(connected_components(g)) != 1:
        raise RibbonGraphError("quasi-tree enumeration requires a connected graph")
    edges = g.edges
    out = []
    for r in range(len(edges) + 1):
        for combo in itertools.combinations(edges, r):
            if len(trace_boundaries(restrict(g, combo))) == 1:
                out.append(frozenset(combo))
    return out


@dataclass(frozen=True)
class ActivityReport:
    """The six activity classes of edges relative to a quasi-tree and order."""
    internal_dead: frozenset[str]
    external_dead: frozenset[str]
    internal_live_orientable: frozenset[str]
    external_live_orientable: frozenset[str]
    internal_live_nonorientable: frozenset[str]
    external_live_nonorientable: frozenset[str]

    def contracted_part(self) -> frozenset[str]:
        return self.internal_dead | self.internal_live_nonorientable

    def deleted_part(self) -> frozenset[str]:
        return self.external_dead | self.external_live_nonorientable


def activities(g: RibbonGraph, q: Iterable[str],
               order: Iterable[str]) -> ActivityReport:
    qset = frozenset(q)
    order = list(order)
    if set(order) != set(g.sign) or len(order) != len(g.sign):
        raise RibbonGraphError("order must be a total order on the edges")
    if len(trace_boundaries(restrict(g, qset))) != 1:
        raise RibbonGraphError("not a quasi-tree")
    h = partial_dual(g, qset)
    if len([v for v in h.vertices if h.rotation.get(v, ())]) > 1:
        raise RibbonGraphError("quasi-tree partial dual has more than one vertex")
    rank = {e: i for i, e in enumerate(order)}
    sets: dict[str, set[str]] = {k: set() for k in "D D* O O* N N*".split()}
    for e in g.sign:
        dead = any(rank[f] < rank[e] and interlaced(h, e, f) for f in g.sign)
        nonor = h.sign[e] == -1
        internal = e in qset
        if dead:
            key = "D" if internal else "D*"
        elif nonor:
            key = "N" if internal else "N*"
        else:
            key = "O" if internal else "O*"
        sets[key].add(e)
    return ActivityReport(frozenset(sets["D"]), frozenset(sets["D*"]),
                          frozenset(sets["O"]), frozenset(sets["O*"]),
                          frozenset(sets["N"]), frozenset(sets["N*"]))


# ---------------------------------------------------------------------------
# isomorphism (test oracle; brute force, fine for small graphs)

@dataclass
class Isomorphism:
    vertex_map: dict[str, str]
    end_map: dict[End, End]
    edge_map: dict[str, str] = field(default_factory=dict)
    flip: dict[str, int] = field(default_factory=dict)

    def dart_map(self, g1: RibbonGraph) -> dict[Dart, Dart]:
        out = {}
        for end, img in self.end_map.items():
            flipped = self.flip[g1.vertex_of_end(end)]
            for s in "LR":
                t = ("R" if s == "L" else "L") if flipped else s
                out[(end[0], end[1], s)] = (img[0], img[1], t)
        return out


def isomorphisms(g1: RibbonGraph, g2: RibbonGraph) -> Iterator[Isomorphism]:
    if len(g1.vertices) != len(g2.vertices) or len(g1.sign) != len(g2.sign):
        return
    deg1 = sorted(len(g1.rotation.get(v, ())) for v in g1.vertices)
    deg2 = sorted(len(g2.rotation.get(v, ())) for v in g2.vertices)
    if deg1 != deg2:
        return
    verts1 = sorted(g1.vertices, key=lambda v: -len(g1.rotation.get(v, ())))
    vertex_of_1 = {end: v for v in g1.vertices for end in g1.rotation.get(v, ())}
    vertex_of_2 = {end: v for v in g2.vertices for end in g2.rotation.get(v, ())}

    def extend(idx, vmap, emap, endmap, flips):
        if idx == len(verts1):
            yield Isomorphism(dict(vmap), dict(endmap), dict(emap), dict(flips))
            return
        v1 = verts1[idx]
        rot1 = g1.rotation.get(v1, ())
        for v2 in g2.vertices:
            if v2 in vmap.values():
                continue
            rot2 = g2.rotation.get(v2, ())
            if len(rot1) != len(rot2):
                continue
            n = len(rot1)
            alignments = [(0, 0)] if n == 0 else [(o, fl) for o in range(n)
                                                 for fl in (0, 1)]
            for off, fl in alignments:
                new_emap = dict(emap)
                new_endmap = dict(endmap)
                ok = True
                for p in range(n):
                    end1 = rot1[p]
                    end2 = rot2[(off + p) % n] if not fl else rot2[(off - p) % n]
                    if end1 in new_endmap:
                        if new_endmap[end1] != end2:
                            ok = False
                            break
                        continue
                    if end2 in new_endmap.values():
                        ok = False
                        break
                    e1, e2 = end1[0], end2[0]
                    if e1 in new_emap:
                        if new_emap[e1] != e2:
                            ok = False
                            break
                    elif e2 in new_emap.values():
                        ok = False
                        break
                    else:
                        new_emap[e1] = e2
                    new_endmap[end1] = end2
                if not ok:
                    continue
                new_flips = dict(flips)
                new_flips[v1] = fl
                # check signs of edges with both ends now mapped
                sign_ok = True
                for e1, e2 in new_emap.items():
                    if (e1, 1) in new_endmap and (e1, 2) in new_endmap:
                        if {new_endmap[(e1, 1)], new_endmap[(e1, 2)]} != \
                                {(e2, 1), (e2, 2)}:
                            sign_ok = False
                            break
                        u = vertex_of_1[(e1, 1)]
                        w = vertex_of_1[(e1, 2)]
                        if u in new_flips and w in new_flips:
                            parity = 0 if u == w else new_flips[u] ^ new_flips[w]
                            want = g1.sign[e1] * (-1 if parity else 1)
                            if g2.sign[e2] != want:
                                sign_ok = False
                                break
                if not sign_ok:
                    continue
                yield from extend(idx + 1, {**vmap, v1: v2}, new_emap,
                                  new_endmap, new_flips)

    yield from extend(0, {}, {}, {}, {})


def isomorphic(g1: RibbonGraph, g2: RibbonGraph) -> bool:
    return next(isomorphisms(g1, g2), None) is not None


# ---------------------------------------------------------------------------
# canonical certificate (used by the corpus generator for deduplication)

def certificate(g: RibbonGraph) -> tuple:
    """A value equal on isomorphic graphs and distinct otherwise.

    Works on the flag structure: a deterministic traversal from every start
    dart relabels the darts; the minimum encoding over all starts is invariant
    under vertex/edge relabelling, reflections and end swaps.  Requires a
    connected graph.
    """
    if not g.sign:
        return ("vertices", len(g.vertices))
    t = (_tau0(g), _tau1(g), _tau2(g))
    darts = sorted(t[0])
    best = None
    for start in darts:
        label = {start: 0}
        queue = [start]
        enc = []
        qi = 0
        while qi < len(queue):
            d = queue[qi]
            qi += 1
            row = []
            for ti in t:
                nb = ti[d]
                if nb not in label:
                    label[nb] = len(label)
                    queue.append(nb)
                row.append(label[nb])
            enc.append(tuple(row))
        key = tuple(enc)
        if best is None or key < best:
            best = key
    return ("flags", len(g.vertices), best)
