"""Verification harnesses: invariance fuzzing, convergence, fixture tables.

Each runner returns a Report whose details map subcheck names to outcomes;
the CLI and the acceptance tests share these entry points.  All randomness
is seeded, so identical configurations reproduce identical runs.
"""

from __future__ import annotations

import random

from .bicomplex import COHOMEOLOGY, HOMEOLOGY, build
from .chains import Report, chain_complex, cochain_complex, homology
from .complexes import SimplicialComplex, disjoint_union, generate, join
from .exact import Q, Z, Zp, AbelianGroupPresentation, TRIVIAL_GROUP, free_group
from .fixtures import (
    annulus,
    glued_disks,
    homeotopy_graphs,
    random_complex,
    random_connected_graph,
    random_stacked_sphere,
    random_subdivision_chain,
    wedge_of_suspensions,
)
from .spectral import (
    PageComputation,
    check_cm_structure,
    check_lefschetz_remark,
    check_page0_links,
    check_reduced_unreduced_sequence,
    limit,
    pages_equal,
    pages_for,
    stable_page_index,
)

STANDARD_COEFFS = (Z, Q, Zp(2))


def _nonzero_table(page):
    return {st: g for st, g in page.groups.items() if not g.is_trivial}


def verify_disk_sphere_tables(n_max=4, coeff=Z):
    """Concentration of the reduced pages of disks and spheres at (n, n)."""
    failures = []
    for n in range(1, n_max + 1):
        for kind in ("disk", "sphere"):
            K = generate(kind, n)
            comp = pages_for(K, COHOMEOLOGY, reduced=True, coeff=coeff)
            for r in range(1, n + 3):
                r_eff = min(r, comp.r_max)
                table = _nonzero_table(comp.pages[r_eff])
                if table != {(n, n): free_group(1)}:
                    failures.append(f"{kind}({n}) page {r}: {table}")
    return Report(not failures, failures, {"n_max": n_max})


def verify_pure_one_dimensional(seed=0, trials=5, coeff=Z):
    """Reduced pages of pure 1-dimensional complexes live at (1, 1) only."""
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        K = random_connected_graph(rng)
        comp = pages_for(K, COHOMEOLOGY, reduced=True, coeff=coeff)
        for r in range(1, comp.r_max + 1):
            table = _nonzero_table(comp.pages[r])
            if set(table) != {(1, 1)} or table[(1, 1)] != free_group(1):
                failures.append(f"trial {t} page {r}: {table}")
    return Report(not failures, failures, {"trials": trials})


def verify_glued_disks(cases=((2, 2, 0), (3, 3, 1), (3, 4, 1), (2, 3, 1)), coeff=Z):
    """Unreduced page-1 tables of two disks glued along a common face."""
    failures = []
    for (m, n, k) in cases:
        K = glued_disks(m, n, k)
        comp = pages_for(K, COHOMEOLOGY, reduced=False, coeff=coeff, r_max=1)
        table = _nonzero_table(comp.pages[1])
        expected = {}
        if k + 1 < min(m, n):
            for st in ((m, m), (n, n), (k, k + 1)):
                expected[st] = expected.get(st, TRIVIAL_GROUP).direct_sum(free_group(1))
        else:  # k + 1 == m <= n
            expected[(n, n)] = free_group(1)
        if table != expected:
            failures.append(f"D^{m} u_(D^{k}) D^{n}: {table} != {expected}")
    return Report(not failures, failures, {"cases": list(cases)})


def verify_homotopy_noninvariance(coeff=Z):
    """Suspension wedge vs triple cone over the circle at bidegree (2, 2)."""
    circle = generate("cycle", 3)
    wedge2 = wedge_of_suspensions(circle)
    c3x = join(circle, SimplicialComplex(("p0", "p1", "p2"),
                                         generate("points", 3).simplices))
    a = pages_for(wedge2, COHOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    b = pages_for(c3x, COHOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    failures = []
    if a.group((2, 2)) != free_group(2):
        failures.append(f"wedge of suspensions: {a.group((2, 2))} != Z^2")
    if b.group((2, 2)) != free_group(1):
        failures.append(f"triple cone: {b.group((2, 2))} != Z")
    return Report(not failures, failures,
                  {"wedge": str(a.group((2, 2))), "cone": str(b.group((2, 2)))})


def verify_invariance(seed=0, trials=20, chain_length=3, pages=(1, 2, 3),
                      coeffs=STANDARD_COEFFS, max_vertices=8, max_dim=3,
                      log=None):
    """Stellar invariance fuzz: pages r >= 1 agree along subdivision chains."""
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        K = random_complex(rng, max_vertices, max_dim)
        chain = random_subdivision_chain(K, rng, rng.randint(1, chain_length))
        for coeff in coeffs:
            for reduced in (True, False):
                for variant in (COHOMEOLOGY, HOMEOLOGY):
                    base = pages_for(K, variant, reduced, coeff)
                    other = pages_for(chain[-1], variant, reduced, coeff)
                    for r in pages:
                        pg_a = base.pages[min(r, base.r_max)]
                        pg_b = other.pages[min(r, other.r_max)]
                        if not pages_equal(pg_a, pg_b):
                            failures.append(
                                f"trial {t} {variant} reduced={reduced} {coeff} "
                                f"page {r}: mismatch")
        if log is not None:
            log(f"trial {t}: f={K.f_vector()} -> f={chain[-1].f_vector()} "
                f"{'FAIL' if failures else 'ok'}")
    return Report(not failures, failures, {"trials": trials, "seed": seed})


def verify_convergence(K, coeffs=STANDARD_COEFFS):
    """Limits of the four variants against direct (co)homology."""
    failures = []
    for coeff in coeffs:
        for variant in (COHOMEOLOGY, HOMEOLOGY):
            direct = homology(
                cochain_complex(K) if variant == COHOMEOLOGY else chain_complex(K),
                coeff)
            lim = limit(build(K, variant, reduced=False), coeff)
            for deg in set(direct) | set(lim.groups):
                want = direct.get(deg, TRIVIAL_GROUP)
                got = lim.groups.get(deg, TRIVIAL_GROUP)
                if want != got:
                    failures.append(f"{variant} {coeff} degree {deg}: "
                                    f"limit {got} != {want}")
            if not lim.consistent:
                failures.append(f"{variant} {coeff}: {lim.notes}")
            red = limit(build(K, variant, reduced=True), coeff)
            expected = {0: free_group(1)}
            got = {d: g for d, g in red.groups.items() if not g.is_trivial}
            if K.simplices != frozenset({()}) and got != expected:
                failures.append(f"{variant} {coeff} reduced limit: {got}")
    return Report(not failures, failures, {"complex": K.f_vector()})


def verify_page0(K, coeffs=STANDARD_COEFFS):
    failures = []
    for coeff in coeffs:
        for reduced in (True, False):
            rep = check_page0_links(K, coeff, reduced=reduced)
            if not rep.passed:
                failures.extend(f"{coeff} reduced={reduced}: {f}" for f in rep.failures)
    return Report(not failures, failures, {})


def verify_sequences(K, coeffs=STANDARD_COEFFS):
    failures = []
    for coeff in coeffs:
        rep = check_reduced_unreduced_sequence(K, coeff)
        if not rep.passed:
            failures.extend(f"{coeff}: {f}" for f in rep.failures)
    return Report(not failures, failures, {})


def verify_cm(seed=0, coeffs=(Z,)):
    """CM shape checks on the named fixtures plus a random stacked sphere."""
    rng = random.Random(seed)
    fixtures = [
        ("disk3", generate("disk", 3)),
        ("sphere2", generate("sphere", 2)),
        ("points4", generate("points", 4)),
        ("stacked", random_stacked_sphere(rng)),
    ]
    failures = []
    for name, K in fixtures:
        for coeff in coeffs:
            rep = check_cm_structure(K, coeff)
            if not rep.passed:
                failures.extend(f"{name} {coeff}: {f}" for f in rep.failures)
    bad = disjoint_union(generate("points", 1),
                         SimplicialComplex(("x", "y"), generate("disk", 1).simplices))
    if check_cm_structure(bad, Z).passed:
        failures.append("disjoint union of a point and an edge passed as CM")
    return Report(not failures, failures, {"fixtures": [n for n, _ in fixtures]})


def verify_lefschetz(coeff=Z):
    failures = []
    for name, K in (("annulus", annulus()), ("disk2", generate("disk", 2))):
        rep = check_lefschetz_remark(K, coeff)
        if not rep.passed:
            failures.extend(f"{name}: {f}" for f in rep.failures)
    return Report(not failures, failures, {})


def verify_blocks(seed=0, coeffs=STANDARD_COEFFS):
    """Block pages equal simplicial pages for the certified constructions."""
    from .blocks import (
        block_bicomplex,
        product_block_complex,
        subdivision_block_complex,
        trivial_block_complex,
        upper_set_cochain_complex,
        validate,
    )

    failures = []
    cases = []
    K1 = generate("sphere", 1)
    cases.append(("trivial sphere(1)", trivial_block_complex(K1), K1))
    K2 = generate("sphere", 2)
    sub = subdivision_block_complex(K2, K2.faces(2)[0], "c")
    cases.append(("subdivision sphere(2)", sub, K2))
    i1 = generate("path", 1)
    i1b = SimplicialComplex(("u0", "u1"), i1.simplices)
    prod = product_block_complex(trivial_block_complex(i1), trivial_block_complex(i1b))
    cases.append(("product I x I", prod, prod.host))
    for name, B, host in cases:
        rep = validate(B)
        if not rep.passed:
            failures.extend(f"{name}: {f}" for f in rep.failures)
            continue
        for coeff in coeffs:
            for reduced in (True, False):
                bb = block_bicomplex(B, COHOMEOLOGY, reduced)
                comp = PageComputation(bb, coeff)
                ref = pages_for(host, COHOMEOLOGY, reduced, coeff)
                for r in range(1, min(comp.r_max, ref.r_max) + 1):
                    if not pages_equal(comp.pages[r], ref.pages[r]):
                        failures.append(f"{name} {coeff} reduced={reduced} page {r}")
                # page 0 against the upper-set description
                pg0 = comp.pages[0]
                for (m, n) in pg0.groups:
                    expected = TRIVIAL_GROUP
                    for b in B.by_dim(m):
                        C = upper_set_cochain_complex(B, b.label)
                        expected = expected.direct_sum(
                            homology(C, coeff).get(n, TRIVIAL_GROUP))
                    if pg0.group((m, n)) != expected:
                        failures.append(f"{name} {coeff} reduced={reduced} "
                                        f"page0 at {(m, n)}")
        if name.startswith("subdivision"):
            host2 = B.host
            for coeff in coeffs:
                bb = block_bicomplex(B, COHOMEOLOGY, True)
                comp = PageComputation(bb, coeff)
                ref = pages_for(host2, COHOMEOLOGY, True, coeff)
                for r in range(1, min(comp.r_max, ref.r_max) + 1):
                    if not pages_equal(comp.pages[r], ref.pages[r]):
                        failures.append(f"{name} vs subdivided host {coeff} page {r}")
    return Report(not failures, failures, {"cases": [c[0] for c in cases]})


def verify_join_shift(coeff=Z):
    """Pages of iterated cones sit at the (1, 1)-shifted spots of the factor."""
    failures = []
    xs = [("sphere0", generate("sphere", 0)),
          ("sphere1", generate("cycle", 3)),
          ("points3", generate("points", 3))]
    for name, X in xs:
        base = pages_for(X, COHOMEOLOGY, reduced=True, coeff=coeff)
        for n_apex in (1, 2, 3):
            apexes = SimplicialComplex(tuple(f"c{i}" for i in range(n_apex)),
                                       generate("points", n_apex).simplices)
            CX = join(X, apexes)
            cone_pages = pages_for(CX, COHOMEOLOGY, reduced=True, coeff=coeff)
            for r in range(1, min(base.r_max, cone_pages.r_max) + 1):
                pg_base = base.pages[r]
                pg_cone = cone_pages.pages[r]
                for (s, t), g in pg_base.groups.items():
                    if s >= 0 and t >= 0:
                        if pg_cone.group((s + 1, t + 1)) != g:
                            failures.append(f"{name} n={n_apex} page {r} at "
                                            f"{(s + 1, t + 1)}")
                for (s, t), g in pg_cone.groups.items():
                    if (s == 0 or t == 0) and not g.is_trivial:
                        failures.append(f"{name} n={n_apex} page {r}: nonzero "
                                        f"at boundary spot {(s, t)}")
                    if s >= 1 and t >= 1 and g != pg_base.group((s - 1, t - 1)):
                        failures.append(f"{name} n={n_apex} page {r} at {(s, t)}: "
                                        "unexpected entry")
    return Report(not failures, failures, {})


def verify_disjoint_union_additivity(coeff=Z):
    """Unreduced pages of a disjoint union are the direct sums of the parts."""
    failures = []
    K = generate("cycle", 3)
    L = SimplicialComplex(("q0", "q1"), generate("sphere", 0).simplices)
    U = disjoint_union(K, L)
    a = pages_for(K, COHOMEOLOGY, reduced=False, coeff=coeff)
    b = pages_for(L, COHOMEOLOGY, reduced=False, coeff=coeff)
    u = pages_for(U, COHOMEOLOGY, reduced=False, coeff=coeff)
    for r in range(0, min(a.r_max, b.r_max, u.r_max) + 1):
        keys = set(a.pages[r].groups) | set(b.pages[r].groups) | set(u.pages[r].groups)
        for st in keys:
            want = a.pages[r].group(st).direct_sum(b.pages[r].group(st))
            if u.pages[r].group(st) != want:
                failures.append(f"page {r} at {st}: {u.pages[r].group(st)} != {want}")
    return Report(not failures, failures, {})


def verify_fixture_tables(coeff=Z):
    """The headline tables: disks, spheres, graphs, cones, wedges, glued disks."""
    parts = {
        "disk_sphere": verify_disk_sphere_tables(3, coeff),
        "pure_1_dim": verify_pure_one_dimensional(seed=5, trials=3, coeff=coeff),
        "glued_disks": verify_glued_disks(coeff=coeff),
        "noninvariance": verify_homotopy_noninvariance(coeff),
        "join_shift": verify_join_shift(coeff),
        "disjoint_union": verify_disjoint_union_additivity(coeff),
    }
    failures = [f"{name}: {f}" for name, rep in parts.items()
                for f in rep.failures]
    return Report(not failures, failures,
                  {name: rep.passed for name, rep in parts.items()})
