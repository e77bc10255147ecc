"""Finite abstract simplicial complexes and the constructions built on them.

Conventions used everywhere in this package:

* a vertex is identified by its position in the complex's total vertex order;
* a simplex is a strictly increasing tuple of vertex indices, the empty
  simplex is ``()`` and has dimension -1;
* every complex contains the empty simplex and is downward closed;
* the complex with no vertices at all (just the empty simplex) is legal.
"""

from __future__ import annotations

import json
from itertools import combinations

from .errors import (
    DuplicateVertex,
    InvalidParameter,
    NameCollision,
    SimplexNotInComplex,
    UnknownVertex,
)

Simplex = tuple  # strictly increasing tuple of vertex indices; () is the empty simplex


def sort_with_sign(vertices):
    """Normalize an ordered vertex sequence to (sign, ascending tuple).

    Returns ``(0, None)`` when the sequence has a repeated vertex, otherwise
    the parity of the sorting permutation and the canonical representative.
    """
    seq = list(vertices)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    # insertion sort; the input is tiny and mostly sorted already
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


class SimplicialComplex:
    """An immutable finite abstract simplicial complex with ordered vertices."""

    __slots__ = ("vertices", "simplices", "_index", "_by_dim", "_hash")

    def __init__(self, vertices, simplices):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise DuplicateVertex(f"duplicate vertex names in {vertices}")
        simplices = frozenset(tuple(s) for s in simplices) | {()}
        m = len(vertices)
        for s in simplices:
            if any(not (0 <= v < m) for v in s):
                raise UnknownVertex(f"simplex {s} uses an undeclared vertex index")
            if tuple(sorted(set(s))) != s:
                raise InvalidParameter(f"simplex {s} is not a sorted duplicate-free tuple")
        for v in range(m):
            if (v,) not in simplices:
                raise InvalidParameter(f"declared vertex {vertices[v]!r} is not a 0-simplex")
        for s in simplices:
            if not s:
                continue
            for face in combinations(s, len(s) - 1):
                if face not in simplices:
                    raise InvalidParameter(f"not downward closed: {face} missing under {s}")
        self.vertices = vertices
        self.simplices = simplices
        self._index = {name: i for i, name in enumerate(vertices)}
        by_dim = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {k: sorted(v) for k, v in by_dim.items()}
        self._hash = hash((vertices, simplices))

    # -- basic queries ----------------------------------------------------

    def __contains__(self, simplex):
        return tuple(simplex) in self.simplices

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self.simplices == other.simplices

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, f={self.f_vector()})"

    @property
    def dim(self):
        return max(len(s) for s in self.simplices) - 1

    def faces(self, k):
        """All k-dimensional simplices in canonical (lexicographic) order."""
        return self._by_dim.get(k, [])

    def f_vector(self):
        return tuple(len(self.faces(k)) for k in range(self.dim + 1))

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {name!r}") from None

    def simplex_of_names(self, names):
        s = tuple(sorted(self.index_of(n) for n in names))
        if len(set(s)) != len(s):
            raise InvalidParameter(f"repeated vertex in {names}")
        return s

    def names_of(self, simplex):
        return tuple(self.vertices[v] for v in simplex)

    def facets(self):
        """Maximal nonempty simplices, canonical order."""
        out = []
        for s in sorted(self.simplices):
            if s == ():
                continue
            if not any(s != t and set(s) <= set(t) for t in self.simplices):
                out.append(s)
        return out

    def is_subcomplex_of(self, other):
        """True when every simplex of self, read through vertex names, is in other."""
        try:
            return all(
                tuple(sorted(other.index_of(n) for n in self.names_of(s))) in other.simplices
                for s in self.simplices
            )
        except UnknownVertex:
            return False

    def subcomplex(self, simplices):
        """The subcomplex on a downward-closed set of self's simplices.

        Keeps self's vertex order, restricted to vertices that appear.
        """
        simplices = set(tuple(s) for s in simplices) | {()}
        used = sorted({v for s in simplices for v in s})
        remap = {v: i for i, v in enumerate(used)}
        return SimplicialComplex(
            [self.vertices[v] for v in used],
            [tuple(remap[v] for v in s) for s in simplices],
        )


# -- constructors ---------------------------------------------------------


def from_facets(vertex_names, facets):
    """Downward closure of the given facets over the declared vertex list."""
    vertex_names = list(vertex_names)
    if len(set(vertex_names)) != len(vertex_names):
        raise DuplicateVertex(f"duplicate vertex names in {vertex_names}")
    index = {n: i for i, n in enumerate(vertex_names)}
    simplices = {()}
    for facet in facets:
        try:
            s = tuple(sorted(index[n] for n in facet))
        except KeyError as e:
            raise UnknownVertex(f"facet {facet} names unknown vertex {e.args[0]!r}") from None
        if len(set(s)) != len(s):
            raise InvalidParameter(f"facet {facet} repeats a vertex")
        for k in range(len(s) + 1):
            simplices.update(combinations(s, k))
    simplices.update((i,) for i in range(len(vertex_names)))
    return SimplicialComplex(vertex_names, simplices)


def link(K, simplex):
    """link_K(sigma) = {tau : sigma and tau disjoint, their union in K}."""
    sigma = tuple(simplex)
    if sigma not in K.simplices:
        raise SimplexNotInComplex(f"{sigma} not in the complex")
    sset = set(sigma)
    members = set()
    for tau in K.simplices:
        if sset.isdisjoint(tau) and tuple(sorted(sset.union(tau))) in K.simplices:
            members.add(tau)
    return K.subcomplex(members)


def star_closure(K, simplex):
    """Closure of the star of a simplex: all faces of simplices containing it."""
    sigma = set(simplex)
    members = set()
    for tau in K.simplices:
        if sigma <= set(tau):
            for k in range(len(tau) + 1):
                members.update(combinations(tau, k))
    return members


def stellar_subdivide(K, simplex, new_vertex):
    """Stellar subdivision of K on a simplex, new vertex appended at the end.

    The empty simplex leaves K unchanged; a vertex is renamed in place; for
    larger simplices the star of sigma is replaced by the cone from the new
    vertex over (boundary of sigma) * link(sigma).
    """
    sigma = tuple(simplex)
    if sigma not in K.simplices:
        raise SimplexNotInComplex(f"{sigma} not in the complex")
    if sigma == ():
        return K
    if new_vertex in K.vertices:
        raise NameCollision(f"vertex name {new_vertex!r} already used")
    if len(sigma) == 1:
        names = list(K.vertices)
        names[sigma[0]] = new_vertex
        return SimplicialComplex(names, K.simplices)
    v = len(K.vertices)
    simplices = {tau for tau in K.simplices if not set(sigma) <= set(tau)}
    lk = {tau for tau in K.simplices
          if set(sigma).isdisjoint(tau) and tuple(sorted(set(sigma) | set(tau))) in K.simplices}
    new = set()
    for sub in combinations(sigma, len(sigma) - 1):  # facets of the boundary of sigma
        for tau in lk:
            base = tuple(sorted(set(sub) | set(tau)))
            for k in range(len(base) + 1):
                for face in combinations(base, k):
                    new.add(tuple(sorted(face + (v,))))
                    new.add(face)
    return SimplicialComplex(K.vertices + (new_vertex,), simplices | new)


def _checked_disjoint_names(K, L):
    clash = set(K.vertices) & set(L.vertices)
    if clash:
        raise NameCollision(f"vertex names shared by both complexes: {sorted(clash)}")


def join(K, L):
    """Join K * L; vertex order is all of K's vertices then all of L's."""
    _checked_disjoint_names(K, L)
    off = len(K.vertices)
    simplices = set()
    for s in K.simplices:
        for t in L.simplices:
            simplices.add(s + tuple(v + off for v in t))
    return SimplicialComplex(K.vertices + L.vertices, simplices)


def disjoint_union(K, L):
    """K disjoint-union L (the join restricted to the two factors)."""
    _checked_disjoint_names(K, L)
    off = len(K.vertices)
    simplices = set(K.simplices) | {tuple(v + off for v in t) for t in L.simplices}
    return SimplicialComplex(K.vertices + L.vertices, simplices)


def cone_n(K, n):
    """Join of K with n isolated apex vertices; cone for n=1, suspension for n=2."""
    if n < 1:
        raise InvalidParameter("cone_n needs n >= 1")
    apexes = generate("points", n)
    names = [f"apex{i}" for i in range(n)]
    if set(names) & set(K.vertices):
        names = [f"apex{i}_" for i in range(n)]
    apexes = SimplicialComplex(names, apexes.simplices)
    return join(K, apexes)


def wedge(K, L, k_vertex, l_vertex):
    """One-point union of K and L along the two named vertices."""
    ki = K.index_of(k_vertex)
    L.index_of(l_vertex)
    clash = (set(K.vertices) & set(L.vertices)) - ({k_vertex} if k_vertex == l_vertex else set())
    if clash:
        raise NameCollision(f"vertex names shared by both complexes: {sorted(clash)}")
    names = list(K.vertices)
    lmap = {}
    for i, name in enumerate(L.vertices):
        if name == l_vertex:
            lmap[i] = ki
        else:
            lmap[i] = len(names)
            names.append(name)
    simplices = set(K.simplices)
    for t in L.simplices:
        simplices.add(tuple(sorted(lmap[v] for v in t)))
    return SimplicialComplex(names, simplices)


def cartesian_product(K, L):
    """Staircase triangulation of |K| x |L| over lexicographically ordered pairs.

    A simplex is a chain in the coordinatewise partial order on vertex pairs
    whose two projections, after deduplication, are simplices of the factors.
    """
    pairs = [(i, j) for i in range(len(K.vertices)) for j in range(len(L.vertices))]
    index = {p: n for n, p in enumerate(pairs)}
    names = [f"({K.vertices[i]},{L.vertices[j]})" for i, j in pairs]
    simplices = set()

    def chains(grid, prefix, start):
        simplices.add(tuple(index[p] for p in prefix))
        for n in range(start, len(grid)):
            p = grid[n]
            if not prefix or (p[0] >= prefix[-1][0] and p[1] >= prefix[-1][1]):
                chains(grid, prefix + [p], n + 1)

    for f in K.facets() or [()]:
        for g in L.facets() or [()]:
            grid = sorted((i, j) for i in f for j in g)
            chains(grid, [], 0)
    simplices.add(())
    return SimplicialComplex(names, simplices)


def generate(kind, n=None):
    """Standard generators with deterministic vertex names.

    kind: simplex(n) | disk(n) | sphere(n) | path(n) | cycle(n) | points(n).
    disk(n) is the full simplex on n+1 vertices, sphere(n) its boundary on
    n+2 vertices, path(n) has n edges, cycle(n) is an n-gon.
    """
    if n is None or n < 0:
        raise InvalidParameter(f"generate({kind!r}) needs n >= 0, got {n}")
    names = lambda m: [f"v{i}" for i in range(m)]
    if kind in ("simplex", "disk"):
        return from_facets(names(n + 1), [names(n + 1)])
    if kind == "sphere":
        vs = names(n + 2)
        return from_facets(vs, [vs[:i] + vs[i + 1:] for i in range(n + 2)])
    if kind == "path":
        if n < 1:
            raise InvalidParameter("path needs n >= 1")
        vs = names(n + 1)
        return from_facets(vs, [[vs[i], vs[i + 1]] for i in range(n)])
    if kind == "cycle":
        if n < 3:
            raise InvalidParameter("cycle needs n >= 3")
        vs = names(n)
        return from_facets(vs, [[vs[i], vs[(i + 1) % n]] for i in range(n)])
    if kind == "points":
        return from_facets(names(n), [])
    raise InvalidParameter(f"unknown generator kind {kind!r}")


# -- text / JSON round trip ----------------------------------------------


def to_text(K):
    lines = ["# vertices: " + " ".join(K.vertices)]
    for f in K.facets():
        lines.append(" ".join(K.names_of(f)))
    return "\n".join(lines) + "\n"


def from_text(text):
    declared = None
    facets = []
    seen = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# vertices:"):
            declared = line[len("# vertices:"):].split()
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        facet = line.split()
        facets.append(facet)
        for name in facet:
            if name not in seen:
                seen.append(name)
    return from_facets(declared if declared is not None else seen, facets)


def to_json_dict(K):
    return {"vertices": list(K.vertices), "facets": [list(K.names_of(f)) for f in K.facets()]}


def from_json_dict(data):
    return from_facets(data["vertices"], data["facets"])


def to_json(K):
    return json.dumps(to_json_dict(K))


def from_json(text):
    return from_json_dict(json.loads(text))


# -- pseudomanifold utilities ----------------------------------------------


def top_dimensional_boundary(K):
    """Simplices of the boundary: closure of codim-1 faces lying in one facet.

    K is assumed pure of its dimension; the result is the simplex set of the
    boundary subcomplex (possibly just {()}).
    """
    n = K.dim
    counts = {}
    for top in K.faces(n):
        for i in range(len(top)):
            face = top[:i] + top[i + 1:]
            counts[face] = counts.get(face, 0) + 1
    members = {()}
    for face, c in counts.items():
        if c == 1:
            for k in range(len(face) + 1):
                members.update(combinations(face, k))
    return members


def propagate_orientation(tops):
    """Coherent signs on top simplices across faces shared by exactly two.

    Seeds each connected component at its lexicographically least member with
    +1 and spreads the pseudomanifold compatibility condition; raises
    NotOrientable on any conflict.  Faces shared by three or more simplices
    impose no constraint.
    """
    from .errors import NotOrientable

    tops = sorted(tops)
    by_face = {}
    for idx, top in enumerate(tops):
        for i in range(len(top)):
            face = top[:i] + top[i + 1:]
            by_face.setdefault(face, []).append((idx, i))
    signs = {}
    for seed in range(len(tops)):
        if seed in signs:
            continue
        signs[seed] = 1
        queue = [seed]
        while queue:
            cur = queue.pop()
            top = tops[cur]
            for i in range(len(top)):
                face = top[:i] + top[i + 1:]
                sharers = by_face[face]
                if len(sharers) != 2:
                    continue
                for other, j in sharers:
                    if other == cur:
                        continue
                    induced = signs[cur] * (-1) ** i
                    needed = -induced * (-1) ** j
                    if other in signs:
                        if signs[other] != needed:
                            raise NotOrientable("orientation propagation conflict")
                    else:
                        signs[other] = needed
                        queue.append(other)
    return {tops[i]: sg for i, sg in signs.items()}
