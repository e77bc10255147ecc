"""Named fixtures used by the verification harness and the test suite."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    SimplicialComplex,
    cartesian_product,
    cone_n,
    from_facets,
    generate,
    join,
    stellar_subdivide,
    wedge,
)
from .morphisms import SolidMap, check_solid


@dataclass(frozen=True)
class HomeotopyGraphs:
    """Two graphs of the same homeotopy type that are not homeomorphic.

    x is a triangle with a whisker, y the bare triangle; f folds the whisker
    endpoint onto a triangle vertex, g is the inclusion, and g . f induces
    the identity on all pages from page one on.
    """

    x: SimplicialComplex
    y: SimplicialComplex
    f: SolidMap
    g: SolidMap


def homeotopy_graphs():
    x = from_facets(["v0", "v1", "v2", "v3"],
                    [["v0", "v1"], ["v1", "v2"], ["v1", "v3"], ["v2", "v3"]])
    y = from_facets(["w1", "w2", "w3"],
                    [["w1", "w2"], ["w1", "w3"], ["w2", "w3"]])
    f = check_solid(x, y, {"v0": "w3", "v1": "w1", "v2": "w2", "v3": "w3"})
    g = check_solid(y, x, {"w1": "v1", "w2": "v2", "w3": "v3"})
    return HomeotopyGraphs(x, y, f, g)


@dataclass(frozen=True)
class PrismFigure:
    """The drawn cylinder over the whisker graph with its folding self-map.

    The complex triangulates interval x graph: one square over the whisker
    edge (cut by the diagonal bottom-v0 to top-v1) and a cylinder over the
    triangle, with the square over the v1-v3 edge cut by the opposite
    diagonal.  The solid self-map folds the whisker square onto the v1-v3
    square, matching the two labelled triangles.
    """

    complex: SimplicialComplex
    fold: SolidMap
    whisker_triangles: tuple
    image_triangles: tuple


def prism_figure():
    verts = [f"{i}{v}" for v in ("v0", "v1", "v2", "v3") for i in (0, 1)]
    # names: 0v0, 1v0, 0v1, 1v1, 0v2, 1v2, 0v3, 1v3
    facets = [
        # square over v0-v1, diagonal (0,v0)-(1,v1)
        ["0v0", "1v0", "1v1"], ["0v0", "0v1", "1v1"],
        # square over v1-v2, diagonal (0,v1)-(1,v2)
        ["0v1", "1v1", "1v2"], ["0v1", "0v2", "1v2"],
        # square over v2-v3, diagonal (0,v2)-(1,v3)
        ["0v2", "1v2", "1v3"], ["0v2", "0v3", "1v3"],
        # square over v1-v3, diagonal (1,v1)-(0,v3)
        ["0v1", "1v1", "0v3"], ["1v1", "0v3", "1v3"],
    ]
    prism = from_facets(verts, facets)
    fold_names = {f"{i}{v}": f"{i}{v}" for v in ("v1", "v2", "v3") for i in (0, 1)}
    fold_names["0v0"] = "0v3"
    fold_names["1v0"] = "1v3"
    fold = check_solid(prism, prism, fold_names)
    whisker = (prism.simplex_of_names(("0v0", "1v0", "1v1")),
               prism.simplex_of_names(("0v0", "0v1", "1v1")))
    image = (prism.simplex_of_names(("0v3", "1v3", "1v1")),
             prism.simplex_of_names(("0v3", "0v1", "1v1")))
    return PrismFigure(prism, fold, whisker, image)


def glued_disks(m, n, k):
    """Two full simplices of dimensions m and n sharing a common k-face."""
    if not (0 <= k < min(m, n)):
        raise ValueError("need 0 <= k < min(m, n)")
    shared = [f"a{i}" for i in range(k + 1)]
    left = shared + [f"b{i}" for i in range(m - k)]
    right = shared + [f"c{i}" for i in range(n - k)]
    return from_facets(left + right[k + 1:], [left, right])


def suspension(K):
    return cone_n(K, 2)


def wedge_of_suspensions(K):
    """SK wedge SK with fresh vertex names, joined at the first apex."""
    s1 = suspension(K)
    s2 = SimplicialComplex(tuple(f"{name}'" for name in s1.vertices), s1.simplices)
    return wedge(s1, s2, "apex0", "apex0'")


def annulus():
    """Triangulated cylinder: interval times a triangle."""
    i1 = generate("path", 1)
    c3 = SimplicialComplex(("x", "y", "z"), generate("cycle", 3).simplices)
    return cartesian_product(i1, c3)


def moebius_band():
    return from_facets(list("abcde"),
                       [["a", "b", "c"], ["b", "c", "d"], ["c", "d", "e"],
                        ["d", "e", "a"], ["e", "a", "b"]])


def random_complex(rng, max_vertices=8, max_dim=3):
    """A random nonempty complex with deterministic naming."""
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    facets = []
    for _ in range(rng.randint(1, 2 * n)):
        size = rng.randint(1, min(max_dim + 1, n))
        facets.append(rng.sample(names, size))
    return from_facets(names, facets)


def random_connected_graph(rng, max_vertices=7):
    """A pure 1-dimensional connected complex without isolated vertices."""
    n = rng.randint(3, max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges = {(i, (i + 1) % n) for i in range(n)}   # spine cycle keeps it pure
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return from_facets(names, [[names[a], names[b]] for a, b in edges])


def random_subdivision_chain(K, rng, length):
    """Iterated stellar subdivisions on random positive-dimensional simplices."""
    out = [K]
    current = K
    for step in range(length):
        candidates = [s for s in sorted(current.simplices) if len(s) >= 2]
        if not candidates:
            break
        sigma = candidates[rng.randrange(len(candidates))]
        current = stellar_subdivide(current, sigma, f"sd{step}_{len(current.vertices)}")
        out.append(current)
    return out


def random_stacked_sphere(rng, dim=2, steps=3):
    """Boundary of a stacked polytope: repeated stellar subdivision at facets."""
    K = generate("sphere", dim)
    for step in range(steps):
        facets = K.faces(dim)
        sigma = facets[rng.randrange(len(facets))]
        K = stellar_subdivide(K, sigma, f"p{step}")
    return K
