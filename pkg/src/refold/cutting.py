"""Cut surgery: refine a surface so cut paths run along complex edges,
then open those edges into boundary.

Geodesic cuts arrive as per-face chords (from tracing).  Each affected face
is re-triangulated in its own frame with the chords as constraint edges;
sub-faces inherit the parent frame, so only genuinely new adjacencies get
nontrivial transition maps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CutGraphError, DegenerateInput
from .geom import (segment_intersection_param, segments_intersect, v_cross,
                   v_dist, v_dot, v_lerp, v_sub)
from .surface import Face, GeodesicSegment, Surface

# ---------------------------------------------------------------------------
# cut specifications


@dataclass(frozen=True)
class EdgeCut:
    """Cut along an existing complex edge, directed corner e -> e+1 of face."""

    edge: tuple  # (face_id, edge_index)
    reverse: bool = False


@dataclass
class CutSide:
    """Boundary copies of one cut, as directed new-edge chains in cut order.

    Each entry is (edge_ref, forward) where forward says whether the stored
    directed edge runs along the cut direction.
    """

    left: list
    right: list


@dataclass
class CutResult:
    surface: Surface
    sides: list  # CutSide per input cut
    label_map: dict  # old label name -> same name (labels carried over)
    face_origin: dict = field(default_factory=dict)  # new face id -> old face id


# ---------------------------------------------------------------------------
# planar triangulation of one face


class _FaceMesh:
    """Constrained triangulation of one convex face in its own frame."""

    def __init__(self, pts, snap):
        self.snap = snap
        self.nodes = [tuple(p) for p in pts]
        n = len(pts)
        self.boundary = [(i, (i + 1) % n) for i in range(n)]  # original edge k
        self.edge_nodes = {k: [] for k in range(n)}  # k -> [(t, node_id)]
        self.tris = []  # list of (a, b, c) CCW or None (deleted)
        self.half = {}  # directed (a, b) -> triangle index
        self.n_corners = n

    # .. node management ....................................................

    def find_node(self, p):
        for i, q in enumerate(self.nodes):
            if v_dist(p, q) <= self.snap:
                return i
        return None

    def add_edge_node(self, k, t):
        a = self.nodes[k]
        b = self.nodes[(k + 1) % self.n_corners]
        p = v_lerp(a, b, t)
        i = self.find_node(p)
        if i is None:
            i = len(self.nodes)
            self.nodes.append(p)
            self.edge_nodes[k].append((t, i))
        elif i >= self.n_corners:
            if not any(j == i for _, j in self.edge_nodes[k]):
                self.edge_nodes[k].append((t, i))
        return i

    def add_point(self, p):
        i = self.find_node(p)
        if i is not None:
            return i
        # on an original boundary edge?
        for k in range(self.n_corners):
            a = self.nodes[k]
            b = self.nodes[(k + 1) % self.n_corners]
            L = v_dist(a, b)
            d = v_sub(b, a)
            t = (v_dot(v_sub(p, a), d)) / (L * L)
            if -1e-12 <= t <= 1.0 + 1e-12:
                q = v_lerp(a, b, t)
                if v_dist(p, q) <= self.snap:
                    return self.add_edge_node(k, min(max(t, 0.0), 1.0))
        i = len(self.nodes)
        self.nodes.append(tuple(p))
        return i

    # .. initial triangulation ..............................................

    def build_initial(self):
        """Ear-clip the convex polygon with its boundary nodes (which may be
        collinear with the corners)."""
        ring = []
        for k in range(self.n_corners):
            ring.append(k)
            for t, i in sorted(self.edge_nodes[k]):
                ring.append(i)
        self.ring = list(ring)
        for tri in _ear_clip(self.nodes, ring, self.snap):
            self._add_tri(*tri)

    def _add_tri(self, a, b, c):
        if _tri_area2(self.nodes[a], self.nodes[b], self.nodes[c]) < 0:
            a, b, c = a, c, b
        idx = len(self.tris)
        self.tris.append((a, b, c))
        for u, v in ((a, b), (b, c), (c, a)):
            self.half[(u, v)] = idx
        return idx

    def _remove_tri(self, idx):
        t = self.tris[idx]
        if t is None:
            return
        a, b, c = t
        for u, v in ((a, b), (b, c), (c, a)):
            if self.half.get((u, v)) == idx:
                del self.half[(u, v)]
        self.tris[idx] = None

    def locate(self, p):
        for idx, t in enumerate(self.tris):
            if t is None:
                continue
            a, b, c = (self.nodes[i] for i in t)
            if _point_in_tri(p, a, b, c, self.snap):
                return idx
        return None

    def _referenced(self, i):
        for key in self.half:
            if i in key:
                return True
        return False

    def ensure_node(self, p):
        """Node id for p, inserting it into the triangulation if needed."""
        i = self.find_node(p)
        if i is not None and self._referenced(i):
            return i
        # on an interior triangulation edge?
        for (u, v) in list(self.half.keys()):
            if (v, u) < (u, v):
                continue
            a, b = self.nodes[u], self.nodes[v]
            L = v_dist(a, b)
            d = v_sub(b, a)
            t = v_dot(v_sub(p, a), d) / (L * L)
            if 1e-9 < t < 1.0 - 1e-9:
                q = v_lerp(a, b, t)
                if v_dist(p, q) <= self.snap:
                    return self._split_edge(u, v, p, existing=i)
        idx = self.locate(p)
        if idx is None:
            raise DegenerateInput("point lies outside face")
        a, b, c = self.tris[idx]
        if i is None:
            i = len(self.nodes)
            self.nodes.append(tuple(p))
        self._remove_tri(idx)
        self._add_tri(a, b, i)
        self._add_tri(b, c, i)
        self._add_tri(c, a, i)
        return i

    def _split_edge(self, u, v, p, existing=None):
        i = existing
        if i is None:
            i = len(self.nodes)
            self.nodes.append(tuple(p))
        for (x, y) in ((u, v), (v, u)):
            idx = self.half.get((x, y))
            if idx is None:
                continue
            a, b, c = self.tris[idx]
            # rotate so edge is (a, b)
            for _ in range(3):
                if (a, b) == (x, y):
                    break
                a, b, c = b, c, a
            self._remove_tri(idx)
            self._add_tri(a, i, c)
            self._add_tri(i, b, c)
        return i

    # .. constraint insertion ..............................................

    def insert_constraint(self, u, w):
        """Force edge (u, w); returns the node chain realizing it."""
        if u == w:
            raise CutGraphError("zero-length constraint")
        if (u, w) in self.half or (w, u) in self.half:
            return [u, w]
        pu, pw = self.nodes[u], self.nodes[w]
        # collinear intermediate node?
        for i, q in enumerate(self.nodes):
            if i in (u, w):
                continue
            if _strictly_between(pu, pw, q, self.snap):
                left = self.insert_constraint(u, i)
                right = self.insert_constraint(i, w)
                return left + right[1:]
        crossed = self._channel(u, w)
        if not crossed:
            raise CutGraphError("constraint channel not found")
        region_edges = {}
        for idx in crossed:
            a, b, c = self.tris[idx]
            for x, y in ((a, b), (b, c), (c, a)):
                if (y, x) in region_edges:
                    del region_edges[(y, x)]
                else:
                    region_edges[(x, y)] = True
        for idx in crossed:
            self._remove_tri(idx)
        # boundary cycle of the removed region
        succ = {x: y for (x, y) in region_edges}
        cycle = [u]
        cur = u
        for _ in range(len(succ) + 1):
            cur = succ[cur]
            if cur == u:
                break
            cycle.append(cur)
        if len(cycle) != len(succ):
            raise CutGraphError("constraint channel boundary is not a simple cycle")
        wi = cycle.index(w)
        chain1 = cycle[1:wi]                       # one side, in order u -> w
        chain2 = list(reversed(cycle[wi + 1:]))    # other side, in order u -> w
        for tri in _ear_clip(self.nodes, [u] + chain1 + [w], self.snap):
            self._add_tri(*tri)
        for tri in _ear_clip(self.nodes, [w] + chain2[::-1] + [u], self.snap):
            self._add_tri(*tri)
        return [u, w]

    def _channel(self, u, w):
        """Triangles crossed by the open segment u->w."""
        pu, pw = self.nodes[u], self.nodes[w]
        crossed = []
        for idx, t in enumerate(self.tris):
            if t is None:
                continue
            a, b, c = t
            if u in t and w in t:
                continue
            pa, pb, pc = self.nodes[a], self.nodes[b], self.nodes[c]
            if _segment_meets_triangle_interior(pu, pw, pa, pb, pc, self.snap):
                crossed.append(idx)
        return crossed

    def triangles(self):
        return [t for t in self.tris if t is not None]


def _degenerate_tri(pa, pb, pc, snap):
    """Min altitude at or below snap."""
    area2 = _tri_area2(pa, pb, pc)
    longest = max(v_dist(pa, pb), v_dist(pb, pc), v_dist(pc, pa))
    return area2 <= snap * max(longest, snap)


def _ear_clip(nodes, ring, snap):
    """Triangulate a simple polygon (node-id ring, CCW); collinear vertices
    are fine.  O(n^2), adequate at this scale."""
    ring = list(ring)
    tris = []
    guard = 0
    while len(ring) > 3:
        guard += 1
        if guard > 10000:
            raise DegenerateInput("ear clipping failed to terminate")
        n = len(ring)
        clipped = False
        for i in range(n):
            a, b, c = ring[(i - 1) % n], ring[i], ring[(i + 1) % n]
            pa, pb, pc = nodes[a], nodes[b], nodes[c]
            if _degenerate_tri(pa, pb, pc, snap):
                continue
            ok = True
            for r in ring:
                if r in (a, b, c):
                    continue
                if _point_in_tri(nodes[r], pa, pb, pc, snap):
                    ok = False
                    break
            if ok:
                tris.append((a, b, c))
                ring.pop(i)
                clipped = True
                break
        if not clipped:
            raise DegenerateInput("no clippable ear found")
    pa, pb, pc = (nodes[i] for i in ring)
    if not _degenerate_tri(pa, pb, pc, snap):
        tris.append(tuple(ring))
    else:
        raise DegenerateInput("degenerate final triangle in ear clip")
    return tris


def _tri_area2(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _point_in_tri(p, a, b, c, eps):
    s1 = _tri_area2(a, b, p)
    s2 = _tri_area2(b, c, p)
    s3 = _tri_area2(c, a, p)
    lo = -eps * max(v_dist(a, b), v_dist(b, c), v_dist(c, a), 1.0)
    return s1 >= lo and s2 >= lo and s3 >= lo


def _strictly_between(a, b, p, snap):
    if v_dist(p, a) <= snap or v_dist(p, b) <= snap:
        return False
    L = v_dist(a, b)
    d = v_sub(b, a)
    t = v_dot(v_sub(p, a), d) / (L * L)
    if t <= 0.0 or t >= 1.0:
        return False
    return v_dist(p, v_lerp(a, b, t)) <= snap


def _segment_meets_triangle_interior(p, q, a, b, c, snap):
    """Open segment pq passes through the open interior of triangle abc.

    Clip the segment against the triangle's three half-planes and check the
    clipped midpoint is strictly interior (grazing along edges rejected).
    """
    t0, t1 = 0.0, 1.0
    d = v_sub(q, p)
    for (u, v) in ((a, b), (b, c), (c, a)):
        nx = -(v[1] - u[1])
        ny = v[0] - u[0]
        # interior satisfies n . (x - u) >= 0 for CCW triangles
        denom = nx * d[0] + ny * d[1]
        num = nx * (p[0] - u[0]) + ny * (p[1] - u[1])
        if abs(denom) < 1e-300:
            if num < 0.0:
                return False
            continue
        t_hit = -num / denom
        if denom > 0.0:
            t0 = max(t0, t_hit)
        else:
            t1 = min(t1, t_hit)
        if t0 >= t1:
            return False
    L = v_dist(p, q)
    if (t1 - t0) * L <= snap:
        return False
    mid = v_lerp(p, q, 0.5 * (t0 + t1))
    # strictly inside: positive distance from every edge
    for (u, v) in ((a, b), (b, c), (c, a)):
        cr = (v[0] - u[0]) * (mid[1] - u[1]) - (v[1] - u[1]) * (mid[0] - u[0])
        if cr <= snap * v_dist(u, v):
            return False
    return True


# ---------------------------------------------------------------------------
# complex-level cutting


def cut_along(surface: Surface, cuts, allow_existing_boundary=True) -> CutResult:
    """Open the surface along the given cuts.

    ``cuts`` mixes GeodesicSegment (traced paths; endpoints may be interior,
    on edges, or at vertices) and EdgeCut (existing complex edges).  Cut
    segments may share endpoints but must not cross, and their union must be
    acyclic.
    """
    _validate_cut_graph(surface, cuts)
    snap = surface.snap

    # per-face plans
    plans = {}  # face_id -> _FaceMesh (lazy)
    chord_records = []  # per cut: list of (face, p, q) or ('edge', edge_ref)
    edge_splits = {}  # canonical undirected edge -> set of params (canonical side)

    def canon_edge(e):
        p = surface.partner(e)
        if p is None or tuple(e) <= tuple(p):
            return tuple(e), False
        return tuple(p), True

    def schedule_edge_split(e, u):
        ce, flip = canon_edge(e)
        t = 1.0 - u if flip else u
        edge_splits.setdefault(ce, set()).add(t)

    for cut in cuts:
        if isinstance(cut, EdgeCut):
            chord_records.append(("edge", cut))
            continue
        rec = []
        for (f, p, q) in cut.chords:
            if v_dist(p, q) <= snap:
                continue
            rec.append((f, tuple(p), tuple(q)))
        chord_records.append(("chords", rec))
        for (eref, u) in cut.crossings:
            if eref[0] == "vertex":
                continue
            schedule_edge_split(eref, u)
        # endpoints on edges need splits too
        for sp, corner in ((cut.start, cut.start_vertex), (cut.end, cut.end_vertex)):
            if corner is not None:
                continue
            hit = _edge_hit(surface, sp.face, sp.xy, snap)
            if hit is not None:
                schedule_edge_split(*hit)

    # apply scheduled edge splits to both incident faces
    split_points = {}  # face -> list of (edge_idx, t)
    for (f, e), params in edge_splits.items():
        for t in sorted(params):
            split_points.setdefault(f, []).append((e, t))
            p = surface.partner((f, e))
            if p is not None:
                split_points.setdefault(p[0], []).append((p[1], 1.0 - t))

    affected = set(split_points)
    for kind, rec in chord_records:
        if kind == "chords":
            for (f, _, _) in rec:
                affected.add(f)

    meshes = {}
    for f in affected:
        mesh = _FaceMesh(surface.faces[f].pts, snap)
        for (e, t) in split_points.get(f, []):
            mesh.add_edge_node(e, t)
        mesh.build_initial()
        meshes[f] = mesh

    # insert chord endpoints into the triangulations
    constraint_chains = []  # per cut: list of (face, [node ids along chord])
    for kind, rec in chord_records:
        if kind == "edge":
            constraint_chains.append(("edge", rec))
            continue
        chains = []
        for (f, p, q) in rec:
            mesh = meshes[f]
            a = mesh.ensure_node(p)
            b = mesh.ensure_node(q)
            chains.append((f, (a, b)))
        constraint_chains.append(("chords", chains))

    # constraints after all endpoint insertions
    resolved_chains = []
    for kind, chains in constraint_chains:
        if kind == "edge":
            resolved_chains.append(("edge", chains))
            continue
        out = []
        for (f, (a, b)) in chains:
            chain = meshes[f].insert_constraint(a, b)
            out.append((f, chain))
        resolved_chains.append(("chords", out))

    new_surface, edge_lookup, label_map, face_origin = _assemble(surface, meshes)

    # resolve cut sides and drop their gluings
    gluings = dict(new_surface.gluings)
    sides = []
    for kind, data in resolved_chains:
        if kind == "edge":
            side = _open_edge_cut(surface, meshes, gluings, edge_lookup, data)
        else:
            side = _open_chord_cut(gluings, edge_lookup, data)
        sides.append(side)

    final = Surface(new_surface.faces.values(), _unique_gluings(gluings),
                    labels=new_surface.labels, tol=surface.tol, check=False)
    # area preservation is structural; verify cheaply
    if abs(final.total_area() - surface.total_area()) > 1e-9 * max(1.0, surface.total_area()):
        raise DegenerateInput("cut surgery changed total area")
    return CutResult(final, sides, label_map, face_origin)


def refine_boundary_edges(surface: Surface, splits):
    """Split boundary edges at the given parameters.

    ``splits`` maps directed boundary edge refs to parameter lists in (0, 1).
    Returns (new_surface, chains) where chains maps each old boundary edge to
    its ordered list of new directed sub-edges.
    """
    meshes = {}
    for (f, e), ts in splits.items():
        if (f, e) in surface.gluings:
            raise DegenerateInput("refine_boundary_edges expects boundary edges")
        mesh = meshes.get(f)
        if mesh is None:
            mesh = meshes[f] = _FaceMesh(surface.faces[f].pts, surface.snap)
        for t in ts:
            if surface.snap < t * surface.faces[f].edge_length(e):
                mesh.add_edge_node(e, t)
    for mesh in meshes.values():
        mesh.build_initial()
    new_surface, edge_lookup, _, _ = _assemble(surface, meshes)
    chains = {}
    for f in surface.faces:
        for e in range(surface.faces[f].n):
            if (f, e) in surface.gluings:
                continue
            chains[(f, e)] = _edge_chain(surface, meshes, edge_lookup, f, e)
    return new_surface, chains


def _edge_hit(surface, f, p, snap):
    face = surface.faces[f]
    for k in range(face.n):
        a, b = face.edge(k)
        L = v_dist(a, b)
        d = v_sub(b, a)
        t = v_dot(v_sub(p, a), d) / (L * L)
        if snap / L < t < 1.0 - snap / L:
            if v_dist(p, v_lerp(a, b, t)) <= snap:
                return (f, k), t
    return None


def _validate_cut_graph(surface, cuts):
    snap = surface.snap
    # endpoint keys
    def endpoint_key(cut, which):
        if isinstance(cut, EdgeCut):
            f, e = cut.edge
            n = surface.faces[f].n
            c = (f, e) if which == 0 else (f, (e + 1) % n)
            if cut.reverse:
                c = (f, (e + 1) % n) if which == 0 else (f, e)
            return ("orbit", surface.orbit_of[c])
        corner = cut.start_vertex if which == 0 else cut.end_vertex
        if corner is not None:
            return ("orbit", surface.orbit_of[corner])
        sp = cut.start if which == 0 else cut.end
        return ("pt", sp.face, round(sp.xy[0] / snap), round(sp.xy[1] / snap))

    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cut in cuts:
        a, b = endpoint_key(cut, 0), endpoint_key(cut, 1)
        ra, rb = find(a), find(b)
        if ra == rb:
            raise CutGraphError("cut set contains a cycle")
        parent[ra] = rb

    # pairwise chord crossing test per face
    per_face = {}
    for ci, cut in enumerate(cuts):
        if isinstance(cut, EdgeCut):
            continue
        for (f, p, q) in cut.chords:
            if v_dist(p, q) <= snap:
                continue
            per_face.setdefault(f, []).append((ci, p, q))
    for f, chords in per_face.items():
        for i in range(len(chords)):
            for j in range(i + 1, len(chords)):
                ci, p, q = chords[i]
                cj, r, s = chords[j]
                if _proper_cross(p, q, r, s, snap):
                    raise CutGraphError(
                        f"cut segments {ci} and {cj} cross inside face {f}")


def _proper_cross(p, q, r, s, snap):
    if not segments_intersect(p, q, r, s, 1e-12):
        return False
    # allow shared endpoints
    for a in (p, q):
        for b in (r, s):
            if v_dist(a, b) <= snap:
                return False
    # allow touching at an endpoint of one segment
    hit = segment_intersection_param(p, v_sub(q, p), r, v_sub(s, r))
    if hit is None:
        return True
    t, u = hit
    tl = snap / max(v_dist(p, q), 1e-300)
    ul = snap / max(v_dist(r, s), 1e-300)
    return tl < t < 1 - tl and ul < u < 1 - ul


def _assemble(surface: Surface, meshes):
    """Replace remeshed faces, rebuilding all gluings."""
    new_faces = {}
    next_id = max(surface.faces) + 1
    face_tris = {}  # old face -> list of (new_id, (a, b, c))
    face_origin = {f: f for f in surface.faces if f not in meshes}
    for f, face in surface.faces.items():
        if f not in meshes:
            new_faces[f] = face
            continue
        mesh = meshes[f]
        tris = []
        for (a, b, c) in mesh.triangles():
            nf = Face(next_id, (mesh.nodes[a], mesh.nodes[b], mesh.nodes[c]))
            new_faces[next_id] = nf
            tris.append((next_id, (a, b, c)))
            face_origin[next_id] = f
            next_id += 1
        face_tris[f] = tris

    # edge lookup: directed node pair -> (new_face, edge_idx), per old face
    edge_lookup = {}
    for f, tris in face_tris.items():
        table = {}
        for nf, (a, b, c) in tris:
            table[(a, b)] = (nf, 0)
            table[(b, c)] = (nf, 1)
            table[(c, a)] = (nf, 2)
        edge_lookup[f] = table

    gluings = {}
    # interior edges of remeshed faces
    for f, table in edge_lookup.items():
        for (a, b), ref in table.items():
            if (b, a) in table:
                gluings[ref] = table[(b, a)]

    # original gluings (possibly subdivided)
    for (f, e), (g, j) in surface.gluings.items():
        if (f, e) > (g, j):
            continue
        f_chain = _edge_chain(surface, meshes, edge_lookup, f, e)
        g_chain = _edge_chain(surface, meshes, edge_lookup, g, j)
        if len(f_chain) != len(g_chain):
            raise DegenerateInput(
                f"edge subdivision mismatch on {(f, e)} vs {(g, j)}")
        for fe, ge in zip(f_chain, reversed(g_chain)):
            gluings[fe] = ge
            gluings[ge] = fe

    labels = {}
    for name, (f, c) in surface.labels.items():
        if f not in meshes:
            labels[name] = (f, c)
            continue
        mesh = meshes[f]
        pos = surface.faces[f].pts[c]
        nid = mesh.find_node(pos)
        for nf, (a, b, cc) in face_tris[f]:
            for idx, node in enumerate((a, b, cc)):
                if node == nid:
                    labels[name] = (nf, idx)
                    break
            if name in labels:
                break

    out = Surface(new_faces.values(), _unique_gluings(gluings), labels=labels,
                  tol=surface.tol, check=False)
    return out, edge_lookup, {name: name for name in labels}, face_origin


def _edge_chain(surface, meshes, edge_lookup, f, e):
    """New directed sub-edges along old edge (f, e), in edge order."""
    if f not in meshes:
        return [(f, e)]
    mesh = meshes[f]
    chain_nodes = [e] + [i for _, i in sorted(mesh.edge_nodes[e])] + [(e + 1) % mesh.n_corners]
    out = []
    for a, b in zip(chain_nodes, chain_nodes[1:]):
        ref = edge_lookup[f].get((a, b))
        if ref is None:
            raise DegenerateInput(f"missing sub-edge ({a},{b}) on face {f} edge {e}")
        out.append(ref)
    return out


def _unique_gluings(gluings):
    out = {}
    for a, b in gluings.items():
        if a <= b:
            out[a] = b
    return out


def _pop_gluing(gluings, ref):
    p = gluings.pop(ref)
    gluings.pop(p, None)
    return p


def _open_edge_cut(surface, meshes, gluings, edge_lookup, cut: EdgeCut):
    f, e = cut.edge
    if surface.partner((f, e)) is None:
        raise CutGraphError(f"edge {(f, e)} is already boundary")
    f_chain = _edge_chain(surface, meshes, edge_lookup, f, e)
    left = [(ref, True) for ref in f_chain]
    right = []
    for ref in f_chain:
        p = _pop_gluing(gluings, ref)
        right.append((p, False))
    if cut.reverse:
        new_left = [(r, not fw) for (r, fw) in reversed(right)]
        new_right = [(r, not fw) for (r, fw) in reversed(left)]
        left, right = new_left, new_right
    return CutSide(left=left, right=right)


def _open_chord_cut(gluings, edge_lookup, chains):
    left = []
    right = []
    for (f, chain) in chains:
        table = edge_lookup[f]
        for a, b in zip(chain, chain[1:]):
            fwd = table.get((a, b))
            bwd = table.get((b, a))
            # a chord along the original face boundary opens the gluing to
            # the neighboring face instead of an interior triangulation edge
            if fwd is not None:
                lref = fwd
                rref = bwd if bwd is not None else gluings.get(fwd)
            elif bwd is not None:
                rref = bwd
                lref = gluings.get(bwd)
            else:
                raise CutGraphError(f"cut chord ({a},{b}) missing from face {f}")
            if lref is None or rref is None:
                raise CutGraphError(
                    f"cut chord ({a},{b}) runs along an open boundary of face {f}")
            if gluings.get(lref) != rref:
                raise CutGraphError("cut chord already opened or misglued")
            _pop_gluing(gluings, lref)
            left.append((lref, True))
            right.append((rref, False))
    return CutSide(left=left, right=right)
