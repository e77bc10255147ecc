import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homeolab.complexes import (
    SimplicialComplex,
    cartesian_product,
    cone_n,
    disjoint_union,
    from_facets,
    from_json,
    from_text,
    generate,
    join,
    link,
    stellar_subdivide,
    to_json,
    to_text,
    wedge,
)
from homeolab.errors import (
    DuplicateVertex,
    InvalidParameter,
    NameCollision,
    SimplexNotInComplex,
    UnknownVertex,
)


def rename(K, names):
    return SimplicialComplex(tuple(names), K.simplices)


def rnd_complex(rng, max_vertices=8, max_dim=3):
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    facets = [rng.sample(names, rng.randint(1, min(max_dim + 1, n)))
              for _ in range(rng.randint(1, 2 * n))]
    return from_facets(names, facets)


def test_from_facets_examples():
    assert from_facets([], []).simplices == frozenset({()})
    full = from_facets(["a", "b", "c"], [["a", "b", "c"]])
    assert len(full.simplices) == 8
    boundary = from_facets(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])
    assert len(boundary.simplices) == 7
    with pytest.raises(UnknownVertex):
        from_facets(["a"], [["a", "b"]])
    with pytest.raises(DuplicateVertex):
        from_facets(["a", "a"], [])


def test_downward_closure_always(seed=3):
    rng = random.Random(seed)
    for _ in range(25):
        K = rnd_complex(rng)
        for s in K.simplices:
            for i in range(len(s)):
                assert s[:i] + s[i + 1:] in K.simplices


def test_link_examples():
    boundary = from_facets(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])
    assert link(boundary, ()) == boundary
    assert link(boundary, (0,)).f_vector() == (2,)
    full = generate("disk", 3)
    assert link(full, (0, 1)).f_vector() == (2, 1)
    with pytest.raises(SimplexNotInComplex):
        link(boundary, (0, 1, 2))


def test_stellar_subdivision_examples():
    edge = generate("disk", 1)
    assert stellar_subdivide(edge, (0, 1), "m").f_vector() == (3, 2)
    boundary = from_facets(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])
    assert stellar_subdivide(boundary, (0, 1), "m").f_vector() == (4, 4)
    assert stellar_subdivide(boundary, (), "m") == boundary
    renamed = stellar_subdivide(boundary, (1,), "m")
    assert renamed.vertices == ("a", "m", "c")
    assert renamed.f_vector() == boundary.f_vector()
    with pytest.raises(NameCollision):
        stellar_subdivide(boundary, (0, 1), "c")


def test_stellar_f_vector_identity(seed=7):
    """f_k(S_sigma K) = f_k(K) - #{tau >= sigma, dim k} + #{new simplices of dim k}."""
    rng = random.Random(seed)
    for _ in range(20):
        K = rnd_complex(rng, max_vertices=8)
        candidates = [s for s in sorted(K.simplices) if len(s) >= 2]
        if not candidates:
            continue
        sigma = candidates[rng.randrange(len(candidates))]
        S = stellar_subdivide(K, sigma, "new")
        lk = link(K, sigma)
        lk_sets = {frozenset(K.index_of(n) for n in lk.names_of(s))
                   for s in lk.simplices}
        from itertools import combinations
        proper = [frozenset(c) for k in range(len(sigma))
                  for c in combinations(sigma, k)]
        for k in range(0, S.dim + 1):
            removed = sum(1 for tau in K.faces(k) if set(sigma) <= set(tau))
            added = sum(1 for sp in proper for tau in lk_sets
                        if sp.isdisjoint(tau) and len(sp | tau) + 1 == k + 1)
            expected = len(K.faces(k)) - removed + added
            assert len(S.faces(k)) == expected, (k, sigma)


def test_join_examples():
    s0 = generate("sphere", 0)
    t0 = rename(s0, ("w0", "w1"))
    assert join(from_facets([], []), s0) == s0
    cone = join(rename(generate("points", 1), ("p",)), s0)
    assert cone.f_vector() == (3, 2)
    square = join(s0, t0)
    assert square.f_vector() == (4, 4)
    with pytest.raises(NameCollision):
        join(s0, s0)


def test_join_links_factor(seed=5):
    rng = random.Random(seed)
    for _ in range(10):
        K = rnd_complex(rng, 4, 2)
        L = rnd_complex(rng, 3, 1)
        L = rename(L, tuple(f"w{i}" for i in range(len(L.vertices))))
        J = join(K, L)
        off = len(K.vertices)
        sigma = sorted(K.simplices)[rng.randrange(len(K.simplices))]
        tau = sorted(L.simplices)[rng.randrange(len(L.simplices))]
        combined = sigma + tuple(v + off for v in tau)
        lk = link(J, combined)
        expected = join(link(K, sigma), link(L, tau))
        assert lk.f_vector() == expected.f_vector()
        assert {lk.names_of(s) for s in lk.simplices} == \
            {expected.names_of(s) for s in expected.simplices}


def test_cartesian_product_examples():
    i1 = generate("path", 1)
    i1b = rename(i1, ("u0", "u1"))
    assert cartesian_product(i1, i1b).f_vector() == (4, 5, 2)
    point = rename(generate("points", 1), ("z",))
    boundary = from_facets(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])
    assert cartesian_product(boundary, point).f_vector() == boundary.f_vector()


def test_cartesian_product_dimension(seed=2):
    rng = random.Random(seed)
    for _ in range(8):
        K = rnd_complex(rng, 4, 2)
        L = rnd_complex(rng, 3, 1)
        L = rename(L, tuple(f"w{i}" for i in range(len(L.vertices))))
        P = cartesian_product(K, L)
        assert P.dim == K.dim + L.dim


def test_cone_and_wedge():
    assert cone_n(generate("points", 1), 1).f_vector() == (2, 1)
    s1 = cone_n(generate("sphere", 0), 2)
    assert s1.f_vector() == (4, 4)
    a = generate("cycle", 3)
    b = rename(generate("cycle", 3), ("p", "q", "r"))
    w = wedge(a, b, "v0", "p")
    assert w.f_vector() == (5, 6)
    with pytest.raises(InvalidParameter):
        cone_n(generate("points", 1), 0)


def test_generators():
    assert generate("sphere", 0).f_vector() == (2,)
    assert generate("disk", 2).f_vector() == (3, 3, 1)
    assert generate("path", 3).f_vector() == (4, 3)
    assert generate("cycle", 4).f_vector() == (4, 4)
    assert generate("points", 3).f_vector() == (3,)
    with pytest.raises(InvalidParameter):
        generate("cycle", 2)
    with pytest.raises(InvalidParameter):
        generate("widget", 1)


def test_disjoint_union():
    u = disjoint_union(generate("cycle", 3),
                       rename(generate("points", 1), ("z",)))
    assert u.f_vector() == (4, 3)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_text_and_json_round_trip(seed):
    rng = random.Random(seed)
    K = rnd_complex(rng)
    assert from_text(to_text(K)) == K
    assert from_json(to_json(K)) == K
