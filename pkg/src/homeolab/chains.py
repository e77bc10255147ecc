"""Simplicial chain and cochain complexes: plain, reduced, and relative.

Basis convention: in degree k the basis is the list of k-simplices in
lexicographic order (for relative complexes, those not in the subcomplex).
Reduced complexes include degree -1 with basis [()].  Cochain differentials
are the transposes of the chain differentials in these bases.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import SimplicialComplex
from .errors import NotASubcomplex
from .exact import (
    Matrix,
    Z,
    homology_of_pair,
    homology_subquotient,
    kernel_basis,
    presentation_relations,
    same_column_span,
    solve,
    subquotient,
)

HOMOLOGICAL = "homological"
COHOMOLOGICAL = "cohomological"


@dataclass(frozen=True)
class ChainComplexRep:
    """A finitely generated based (co)chain complex.

    ``diff[k]`` maps degree k to k-1 (homological) or k to k+1
    (cohomological).  Missing degrees are zero.
    """

    basis: dict
    diff: dict
    direction: str
    reduced: bool

    def degrees(self):
        return sorted(self.basis)

    def dim_at(self, k):
        return len(self.basis.get(k, ()))

    def matrix(self, k):
        """The differential leaving degree k (zero matrix when absent)."""
        if k in self.diff:
            return self.diff[k]
        target = k - 1 if self.direction == HOMOLOGICAL else k + 1
        return Matrix.zero(self.dim_at(target), self.dim_at(k))

    def incoming(self, k):
        source = k + 1 if self.direction == HOMOLOGICAL else k - 1
        return self.matrix(source) if self.dim_at(source) else Matrix.zero(self.dim_at(k), 0)


def _boundary_matrix(K, k, lower, upper, reduced):
    """Matrix of d: C_k -> C_{k-1} in lexicographic bases."""
    index = {s: i for i, s in enumerate(lower)}
    data = {}
    for j, s in enumerate(upper):
        if k == 0:
            if reduced:
                data[(0, j)] = 1  # d[v] = [()]
            continue
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            data[(index[face], j)] = 1 if i % 2 == 0 else -1
    return Matrix(len(lower), len(upper), data)


def chain_complex(K, reduced=False):
    """The simplicial chain complex of K (augmented when reduced)."""
    bottom = -1 if reduced else 0
    basis = {k: list(K.faces(k)) for k in range(bottom, K.dim + 1) if K.faces(k)}
    if reduced:
        basis[-1] = [()]
    diff = {}
    for k in sorted(basis):
        if k - 1 in basis:
            diff[k] = _boundary_matrix(K, k, basis[k - 1], basis[k], reduced)
    return ChainComplexRep(basis, diff, HOMOLOGICAL, reduced)


def cochain_complex(K, reduced=False):
    """The simplicial cochain complex; matrices are transposed boundaries."""
    c = chain_complex(K, reduced)
    diff = {k - 1: m.transpose() for k, m in c.diff.items()}
    return ChainComplexRep(c.basis, diff, COHOMOLOGICAL, reduced)


def _subcomplex_simplex_map(K, L):
    """Map L-simplices to K-simplices through vertex names; NotASubcomplex if impossible."""
    try:
        trans = {i: K.index_of(name) for i, name in enumerate(L.vertices)}
    except Exception:
        raise NotASubcomplex("subcomplex uses vertex names not present in the complex")
    out = {}
    for s in L.simplices:
        t = tuple(sorted(trans[v] for v in s))
        if t not in K.simplices:
            raise NotASubcomplex(f"simplex {s} of the subcomplex is not in the complex")
        out[s] = t
    return out


def relative_complex(K, L, direction=HOMOLOGICAL, reduced=False):
    """C(K, L): basis the simplices of K not in L.

    The homological differential is the quotient differential, the
    cohomological one its transpose (the subcomplex of cochains supported off
    L).  The reduced and plain versions agree for nonempty L; reduced=True
    with empty L additionally strips nothing but keeps () out of the basis
    only when it lies in L.
    """
    image = set(_subcomplex_simplex_map(K, L).values())
    bottom = -1 if reduced else 0
    basis = {}
    for k in range(bottom, K.dim + 1):
        faces = [s for s in (K.faces(k) if k >= 0 else [()]) if s not in image]
        if faces:
            basis[k] = faces
    diff = {}
    for k in sorted(basis):
        if k - 1 not in basis:
            continue
        index = {s: i for i, s in enumerate(basis[k - 1])}
        data = {}
        for j, s in enumerate(basis[k]):
            if k == 0:
                if reduced and () in index:
                    data[(index[()], j)] = 1
                continue
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                if face in index:
                    data[(index[face], j)] = 1 if i % 2 == 0 else -1
        diff[k] = Matrix(len(basis[k - 1]), len(basis[k]), data)
    rep = ChainComplexRep(basis, diff, HOMOLOGICAL, reduced)
    if direction == HOMOLOGICAL:
        return rep
    return ChainComplexRep(basis, {k - 1: m.transpose() for k, m in rep.diff.items()},
                           COHOMOLOGICAL, reduced)


def homology(C, coeff=Z):
    """Degreewise homology of a ChainComplexRep as group presentations."""
    return {k: homology_of_pair(C.matrix(k), C.incoming(k), coeff) for k in C.degrees()}


def homology_with_lifts(C, k, coeff=Z):
    """Homology at one degree with generators, lifts and a coords() solver."""
    return homology_subquotient(C.matrix(k), C.incoming(k), coeff)


# -- long exact sequence of a pair ------------------------------------------


@dataclass
class Report:
    """Outcome of a verification routine: ok flag plus human-readable notes."""

    passed: bool
    failures: list
    details: dict

    def __bool__(self):
        return self.passed


def _connecting_map(K, L, n, hK, hL_prev, coeff):
    """Boundary map H_n(K,L) -> H_{n-1}(L) computed from explicit lifts."""
    rel = relative_complex(K, L)
    CK = chain_complex(K)
    CL = chain_complex(L)
    smap = _subcomplex_simplex_map(K, L)
    rel_basis = rel.basis.get(n, [])
    k_index = {s: i for i, s in enumerate(CK.basis.get(n, []))}
    l_index = {s: i for i, s in enumerate(CL.basis.get(n - 1, []))}
    k_to_l = {v: k for k, v in smap.items()}
    h_rel = homology_with_lifts(rel, n, coeff)
    cols = []
    dK = CK.matrix(n)
    for g in range(h_rel.n_generators):
        chain = h_rel.lift_of(g)
        full = [0] * len(k_index)
        for i, c in enumerate(chain):
            full[k_index[rel_basis[i]]] = c
        boundary = dK.apply(full)
        lvec = [0] * len(l_index)
        for i, c in enumerate(boundary):
            if not c:
                continue
            s = CK.basis[n - 1][i]
            lvec[l_index[k_to_l[s]]] = c  # lands in L by exactness of the pair
        cols.append({i: v for i, v in enumerate(hL_prev.coords(lvec)) if v})
    return Matrix.from_columns(hL_prev.n_generators, cols), h_rel


def les_check(K, L, coeff=Z):
    """Verify exactness of ... -> H_n(L) -> H_n(K) -> H_n(K,L) -> H_{n-1}(L) -> ...

    Over a field this checks the alternating rank condition; over Z it builds
    the three maps at every node explicitly and compares image and kernel
    lattices in generator coordinates.
    """
    smap = _subcomplex_simplex_map(K, L)
    CK, CL = chain_complex(K), chain_complex(L)
    rel = relative_complex(K, L)
    failures = []
    degrees = sorted(set(CK.degrees()) | set(CL.degrees()) | set(rel.degrees()))
    if not degrees:
        return Report(True, [], {})
    top = max(degrees) + 1
    hK = {n: homology_with_lifts(CK, n, coeff) for n in range(0, top + 1)}
    hL = {n: homology_with_lifts(CL, n, coeff) for n in range(0, top + 1)}
    hR = {n: homology_with_lifts(rel, n, coeff) for n in range(0, top + 1)}

    def push(sub_from, sub_to, basis_from, basis_to, translate):
        index_to = {s: i for i, s in enumerate(basis_to)}
        cols = []
        for g in range(sub_from.n_generators):
            chain = sub_from.lift_of(g)
            vec = [0] * len(basis_to)
            for i, c in enumerate(chain):
                if not c:
                    continue
                t = translate(basis_from[i])
                if t is None:
                    continue  # killed by the quotient
                vec[index_to[t]] = c
            cols.append({i: v for i, v in enumerate(sub_to.coords(vec)) if v})
        return Matrix.from_columns(sub_to.n_generators, cols)

    rel_set = {n: set(b) for n, b in rel.basis.items()}
    maps_i = {}
    maps_p = {}
    maps_d = {}
    for n in range(0, top + 1):
        bK, bL = CK.basis.get(n, []), CL.basis.get(n, [])
        bR = rel.basis.get(n, [])
        maps_i[n] = push(hL[n], hK[n], bL, bK, lambda s: smap[s])
        maps_p[n] = push(hK[n], hR[n], bK, bR,
                         lambda s, _m=rel_set.get(n, set()): s if s in _m else None)
        if n >= 1:
            maps_d[n], _ = _connecting_map(K, L, n, hK, hL[n - 1], coeff)

    def check_exact(node, incoming, outgoing, src_pres, mid_pres, tgt_pres):
        comp = outgoing @ incoming
        lattice_in = incoming.hstack(presentation_relations(mid_pres))
        ker = _kernel_lattice(outgoing, mid_pres, tgt_pres)
        if not _zero_in_presentation(comp, tgt_pres):
            failures.append(f"composite not zero at {node}")
        elif not same_column_span(lattice_in, ker, coeff):
            failures.append(f"image != kernel at {node}")

    def _zero_in_presentation(Mtx, pres):
        rels = presentation_relations(pres)
        return all(solve(rels, Mtx.column_vector(j), coeff) is not None
                   for j in range(Mtx.cols))

    def _kernel_lattice(Mtx, src_pres, tgt_pres):
        rels_t = presentation_relations(tgt_pres)
        stacked = Mtx.hstack(-rels_t) if rels_t.cols else Mtx
        ker = kernel_basis(stacked, coeff)
        n_src = len(src_pres.torsion) + src_pres.free_rank
        return ker.take_rows(list(range(n_src))).hstack(presentation_relations(src_pres))

    for n in range(0, top + 1):
        # at H_n(K): H_n(L) -> H_n(K) -> H_n(K,L)
        check_exact(f"H_{n}(K)", maps_i[n], maps_p[n], hL[n].group, hK[n].group, hR[n].group)
        # at H_n(K,L): H_n(K) -> H_n(K,L) -> H_{n-1}(L)
        if n >= 1:
            check_exact(f"H_{n}(K,L)", maps_p[n], maps_d[n], hK[n].group, hR[n].group,
                        hL[n - 1].group)
            # at H_{n-1}(L): H_n(K,L) -> H_{n-1}(L) -> H_{n-1}(K)
            check_exact(f"H_{n-1}(L)", maps_d[n], maps_i[n - 1], hR[n].group,
                        hL[n - 1].group, hK[n - 1].group)
    groups = {
        "H(L)": {n: hL[n].group for n in hL},
        "H(K)": {n: hK[n].group for n in hK},
        "H(K,L)": {n: hR[n].group for n in hR},
    }
    return Report(not failures, failures, groups)
