"""Double complexes on nested simplex pairs.

The cohomeology variant carries the differential that applies the boundary
to the small simplex and, with a sign depending on its dimension, the
coboundary to the big one; the homeology variant is its transpose by
definition.  Bidegree (s, t) = (dim sigma, dim tau); basis pairs are sorted
lexicographically by (sigma, tau).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import ChainComplexRep, COHOMOLOGICAL
from .complexes import link as link_of
from .errors import NotASubcomplex, WrongVariant
from .exact import Matrix

COHOMEOLOGY = "cohomeology"
HOMEOLOGY = "homeology"


def _parity_sign(k):
    return 1 if k % 2 == 0 else -1


@dataclass
class Bicomplex:
    """Bigraded free module with the two differential components.

    d_h and d_v are keyed by source bidegree.  For the cohomeology variant
    d_h: (s,t) -> (s-1,t) and d_v: (s,t) -> (s,t+1); for homeology the arrows
    are reversed: d_h: (s,t) -> (s+1,t) and d_v: (s,t) -> (s,t-1).
    """

    variant: str
    reduced: bool
    basis: dict
    d_h: dict
    d_v: dict
    pair_index: dict = field(default=None, repr=False)

    def __post_init__(self):
        if self.pair_index is None:
            self.pair_index = {}
            for st, pairs in self.basis.items():
                for i, p in enumerate(pairs):
                    self.pair_index[p] = (st, i)

    def bidegrees(self):
        return sorted(self.basis)

    def dim_at(self, st):
        return len(self.basis.get(st, ()))

    def horizontal_target(self, st):
        s, t = st
        return (s - 1, t) if self.variant == COHOMEOLOGY else (s + 1, t)

    def vertical_target(self, st):
        s, t = st
        return (s, t + 1) if self.variant == COHOMEOLOGY else (s, t - 1)

    def horizontal(self, st):
        if st in self.d_h:
            return self.d_h[st]
        return Matrix.zero(self.dim_at(self.horizontal_target(st)), self.dim_at(st))

    def vertical(self, st):
        if st in self.d_v:
            return self.d_v[st]
        return Matrix.zero(self.dim_at(self.vertical_target(st)), self.dim_at(st))

    def total_rank(self):
        return sum(len(v) for v in self.basis.values())


def _pair_basis(K, reduced):
    """All nested pairs grouped by bidegree, lexicographic within a bidegree."""
    basis = {}
    for tau in sorted(K.simplices):
        if not reduced and not tau:
            continue
        subsets = [()] if reduced else []
        # enumerate subsets of tau (as sorted tuples)
        stack = subsets + [tau[i:i + 1] for i in range(len(tau))]
        seen = set(stack)
        out = list(stack)
        while stack:
            cur = stack.pop()
            last = cur[-1] if cur else -1
            for v in tau:
                if v > last:
                    nxt = cur + (v,)
                    if nxt not in seen:
                        seen.add(nxt)
                        out.append(nxt)
                        stack.append(nxt)
        for sigma in out:
            basis.setdefault((len(sigma) - 1, len(tau) - 1), []).append((sigma, tau))
    return {st: sorted(pairs) for st, pairs in basis.items()}


def _coboundary_terms(K, tau):
    """(sign, tau + {v}) terms of the simplicial coboundary of tau."""
    out = []
    members = set(tau)
    for v in range(len(K.vertices)):
        if v in members:
            continue
        enlarged = tuple(sorted(tau + (v,)))
        if enlarged not in K.simplices:
            continue
        position = enlarged.index(v)
        out.append((_parity_sign(position), enlarged))
    return out


def build(K, variant=COHOMEOLOGY, reduced=False):
    """The (co)homeology double complex of a simplicial complex."""
    basis = _pair_basis(K, reduced)
    index = {}
    for st, pairs in basis.items():
        for i, p in enumerate(pairs):
            index[p] = (st, i)
    d_h, d_v = {}, {}
    for (s, t), pairs in basis.items():
        h_data, v_data = {}, {}
        for j, (sigma, tau) in enumerate(pairs):
            # boundary of sigma: drop one vertex; reduced d sends a vertex to ()
            if s > 0 or (s == 0 and reduced):
                for i in range(len(sigma)):
                    face = sigma[:i] + sigma[i + 1:]
                    key = index.get((face, tau))
                    if key is not None:
                        h_data[(key[1], j)] = _parity_sign(i)
            # coboundary of tau, with the dimension sign of sigma
            sign = _parity_sign(s)
            for c, enlarged in _coboundary_terms(K, tau):
                key = index.get((sigma, enlarged))
                if key is not None:
                    v_data[(key[1], j)] = sign * c
        if h_data:
            d_h[(s, t)] = Matrix(len(basis.get((s - 1, t), ())), len(pairs), h_data)
        if v_data:
            d_v[(s, t)] = Matrix(len(basis.get((s, t + 1), ())), len(pairs), v_data)
    B = Bicomplex(COHOMEOLOGY, reduced, basis, d_h, d_v)
    if variant == COHOMEOLOGY:
        return B
    return transpose_bicomplex(B)


def transpose_bicomplex(B):
    """The dual double complex: homeology from cohomeology and back."""
    other = HOMEOLOGY if B.variant == COHOMEOLOGY else COHOMEOLOGY
    d_h, d_v = {}, {}
    for st, m in B.d_h.items():
        d_h[B.horizontal_target(st)] = m.transpose()
    for st, m in B.d_v.items():
        d_v[B.vertical_target(st)] = m.transpose()
    return Bicomplex(other, B.reduced, B.basis, d_h, d_v, pair_index=B.pair_index)


def build_relative(K, L, variant=COHOMEOLOGY, reduced=False):
    """Relative double complex of a pair: the pairs whose big simplex is off L.

    For cohomeology this is the kernel subcomplex of restriction to L, for
    homeology the quotient by the subcomplex of L-pairs; both have the same
    basis, with the matrices restricted to it.
    """
    from .chains import _subcomplex_simplex_map

    in_l = set(_subcomplex_simplex_map(K, L).values())
    full = build(K, COHOMEOLOGY, reduced)
    keep = {st: [i for i, (sg, tau) in enumerate(pairs) if tau not in in_l]
            for st, pairs in full.basis.items()}
    basis = {st: [full.basis[st][i] for i in idx] for st, idx in keep.items() if idx}
    d_h, d_v = {}, {}
    for st in basis:
        tgt = full.horizontal_target(st)
        if st in full.d_h and tgt in basis:
            d_h[st] = full.d_h[st].take_rows(keep[tgt]).take_columns(keep[st])
        tgt = full.vertical_target(st)
        if st in full.d_v and tgt in basis:
            d_v[st] = full.d_v[st].take_rows(keep[tgt]).take_columns(keep[st])
    B = Bicomplex(COHOMEOLOGY, reduced, basis, d_h, d_v)
    return B if variant == COHOMEOLOGY else transpose_bicomplex(B)


# -- link-form relabeling ------------------------------------------------------


def concat_sign(first, second):
    """Sign of sorting the concatenation of two disjoint ascending tuples."""
    sign = 1
    for x in first:
        sign *= _parity_sign(sum(1 for y in second if y < x))
    return sign


@dataclass
class LinkForm:
    """The same cohomeology bicomplex relabeled per link classes.

    Basis element (sigma, tau_link) stands for the class labelled by the
    chain simplex of tau_link over the link of sigma; columns are grouped by
    sigma so the vertical differential is block diagonal, one block per
    sigma, equal (up to the dimension sign) to the reduced coboundary of the
    link of sigma.
    """

    reduced: bool
    basis: dict       # (s,t) -> ordered list of (sigma, tau_link)
    d_h: dict
    d_v: dict
    sigma_columns: dict   # (s,t) -> {sigma: [positions]}


def to_link_form(B):
    """Relabel a cohomeology bicomplex along sigma tensor (tau' cup sigma)."""
    if B.variant != COHOMEOLOGY:
        raise WrongVariant("link form applies to the cohomeology variant")
    new_basis, perm, signs = {}, {}, {}
    for st, pairs in B.basis.items():
        labelled = []
        for i, (sigma, tau) in enumerate(pairs):
            tau_link = tuple(v for v in tau if v not in set(sigma))
            labelled.append(((sigma, tau_link), i, concat_sign(tau_link, sigma)))
        labelled.sort(key=lambda item: item[0])
        new_basis[st] = [lab for lab, _, _ in labelled]
        perm[st] = [i for _, i, _ in labelled]
        signs[st] = [sg for _, _, sg in labelled]

    def conjugate(m, src, tgt):
        src_pos = {old: new for new, old in enumerate(perm[src])}
        tgt_pos = {old: new for new, old in enumerate(perm[tgt])}
        src_sign, tgt_sign = signs[src], signs[tgt]
        data = {}
        for (i_old, j_old), v in m.data.items():
            i, j = tgt_pos[i_old], src_pos[j_old]
            data[(i, j)] = tgt_sign[i] * v * src_sign[j]
        return Matrix(m.rows, m.cols, data)

    d_h = {st: conjugate(m, st, B.horizontal_target(st)) for st, m in B.d_h.items()}
    d_v = {st: conjugate(m, st, B.vertical_target(st)) for st, m in B.d_v.items()}
    sigma_columns = {}
    for st, labels in new_basis.items():
        groups = {}
        for pos, (sigma, _) in enumerate(labels):
            groups.setdefault(sigma, []).append(pos)
        sigma_columns[st] = groups
    return LinkForm(B.reduced, new_basis, d_h, d_v, sigma_columns)
