"""Solid maps, induced page maps, cup and external products, module actions.

Page-level products are computed over field coefficients only; the chain
level cup product (the five-case endpoint-gluing formula) is available over
any coefficients.  Induced maps push generator lifts through the chain-level
map and express the result in the target page's generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bicomplex import COHOMEOLOGY, HOMEOLOGY, Bicomplex, build, transpose_bicomplex
from .blocks import (
    _simplex_label,
    block_bicomplex,
    product_block_complex,
    trivial_block_complex,
)
from .complexes import (
    SimplicialComplex,
    cartesian_product,
    join as join_complexes,
    sort_with_sign,
)
from .errors import (
    InvalidParameter,
    NonFieldCoefficients,
    NotMonotone,
    NotSimplicial,
    NotSolid,
    PageMismatch,
)
from .exact import Matrix, Z, ring_ops, smith_normal_form
from .spectral import PageComputation, express, express_or_zero


@dataclass(frozen=True)
class SolidMap:
    """A simplicial map certified to preserve the dimension of every simplex."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: tuple   # source vertex index -> target vertex index

    def image_simplex(self, simplex):
        return tuple(sorted(self.vertex_map[v] for v in simplex))

    def image_chain(self, simplex):
        """(sign, canonical image) of an ascending chain simplex."""
        return sort_with_sign(self.vertex_map[v] for v in simplex)

    def compose(self, other):
        """self after other (other first)."""
        if other.target is not self.source and other.target != self.source:
            raise InvalidParameter("composition mismatch")
        vm = tuple(self.vertex_map[w] for w in other.vertex_map)
        return SolidMap(other.source, self.target, vm)

    @property
    def is_monotone(self):
        return all(a <= b for a, b in zip(self.vertex_map, self.vertex_map[1:]))


def check_solid(source, target, vertex_map):
    """Certify a vertex map as a solid simplicial map.

    vertex_map may be a dict of vertex names or a tuple of target indices.
    """
    if isinstance(vertex_map, dict):
        vm = tuple(target.index_of(vertex_map[name]) for name in source.vertices)
    else:
        vm = tuple(vertex_map)
    if len(vm) != len(source.vertices):
        raise InvalidParameter("vertex map must cover every source vertex")
    for s in source.simplices:
        image = tuple(sorted({vm[v] for v in s}))
        if image not in target.simplices:
            raise NotSimplicial(source.names_of(s))
        if len(image) != len(s):
            raise NotSolid(source.names_of(s))
    return SolidMap(source, target, vm)


def identity_map(K):
    return SolidMap(K, K, tuple(range(len(K.vertices))))


def inclusion_map(L, K):
    return check_solid(L, K, tuple(K.index_of(name) for name in L.vertices))


# -- induced maps on the double complexes --------------------------------------


def induced_bicomplex_map(f, variant=COHOMEOLOGY, reduced=False):
    """Per-bidegree matrices of the induced map of double complexes.

    Homeology: the push-forward from the source's to the target's bicomplex.
    Cohomeology: the pull-back, its transpose, from the target's to the
    source's.  Returns (matrices, source_bicomplex, target_bicomplex) with
    matrices keyed by bidegree.
    """
    BK = build(f.source, HOMEOLOGY, reduced)
    BL = build(f.target, HOMEOLOGY, reduced)
    push = {}
    for st, pairs in BK.basis.items():
        data = {}
        for j, (sigma, tau) in enumerate(pairs):
            sign_s, image_s = f.image_chain(sigma)
            sign_t, image_t = f.image_chain(tau)
            if not sign_s or not sign_t:
                continue
            key = BL.pair_index.get((image_s, image_t))
            if key is None:
                continue
            data[(key[1], j)] = sign_s * sign_t
        push[st] = Matrix(BL.dim_at(st), len(pairs), data)
    if variant == HOMEOLOGY:
        return push, BK, BL
    pull = {st: m.transpose() for st, m in push.items()}
    return pull, build(f.target, COHOMEOLOGY, reduced), build(f.source, COHOMEOLOGY, reduced)


def _apply_pair_map(matrices, src_bicomplex, tgt_bicomplex, chain):
    out = {}
    for pair, c in chain.items():
        st, idx = src_bicomplex.pair_index[pair]
        m = matrices.get(st)
        if m is None:
            continue
        for (i, j), v in m.data.items():
            if j == idx:
                key = tgt_bicomplex.basis[st][i]
                out[key] = out.get(key, 0) + c * v
    return {k: v for k, v in out.items() if v}


@dataclass
class PageMap:
    """A page homomorphism in generator coordinates, keyed by bidegree."""

    r: int
    variant: str
    reduced: bool
    coeff: object
    source_pages: object
    target_pages: object
    blocks: dict

    def matrix(self, st):
        if st in self.blocks:
            return self.blocks[st]
        src = self.source_pages.pages[self.r].group(st)
        tgt = self.target_pages.pages[self.r].group(st)
        return Matrix.zero(len(tgt.torsion) + tgt.free_rank,
                           len(src.torsion) + src.free_rank)

    def commutes_with_differentials(self):
        """Check d_r(target) . f = f . d_r(source) in presentation coordinates."""
        from .exact import presentation_relations, solve

        src_pg = self.source_pages.pages[self.r]
        tgt_pg = self.target_pages.pages[self.r]
        for st in set(src_pg.groups):
            tgt_st = src_pg.differential_target(st)
            lhs = tgt_pg.differential(st) @ self.matrix(st)
            rhs = self.matrix(tgt_st) @ src_pg.differential(st)
            diff = lhs - rhs
            pres = tgt_pg.group(tgt_st)
            rels = presentation_relations(pres)
            for j in range(diff.cols):
                col = diff.column_vector(j)
                if any(col) and solve(rels, col, self.coeff) is None:
                    return False
        return True


def _entry_chain(entry, g):
    lift = entry.solver.lift_of(g)
    return {entry.slice_pairs[i]: c for i, c in enumerate(lift) if c}


def induced_page_map(f, r, coeff=Z, variant=COHOMEOLOGY, reduced=False):
    """The map induced on page r by a solid map.

    For homeology this goes from the source's pages to the target's; for
    cohomeology the other way around.
    """
    matrices, B_from, B_to = induced_bicomplex_map(f, variant, reduced)
    comp_from = PageComputation(B_from, coeff, r_max=r)
    comp_to = PageComputation(B_to, coeff, r_max=r)
    pg_from, pg_to = comp_from.pages[r], comp_to.pages[r]
    blocks = {}
    for st, entry in pg_from.entries.items():
        cols = []
        n_tgt = (pg_to.entries[st].solver.n_generators if st in pg_to.entries else 0)
        for g in range(entry.solver.n_generators):
            chain = _entry_chain(entry, g)
            image = _apply_pair_map(matrices, B_from, B_to, chain)
            coords = express_or_zero(comp_to, r, st, image)
            cols.append({i: v for i, v in enumerate(coords) if v})
        if cols:
            m = Matrix.from_columns(n_tgt, cols)
            if not m.is_zero:
                blocks[st] = m
    return PageMap(r, variant, reduced, coeff, comp_from, comp_to, blocks)


# -- cup product ----------------------------------------------------------------


def cup_chain_pairs(a_sigma, a_tau, b_sigma, b_tau):
    """The endpoint-gluing product on basis pairs, before normalization.

    Nonzero only when one factor's big simplex ends where the other's begins
    and the shared vertex lies in one of the small simplices; returns
    (sign, sigma_symbol, tau_symbol) or None.
    """
    if not a_tau or not b_tau:
        return None
    s, k = len(a_sigma) - 1, len(a_tau) - 1
    t, l = len(b_sigma) - 1, len(b_tau) - 1
    if a_tau[-1] == b_tau[0]:
        glue = a_tau[-1]
        if a_sigma and a_sigma[-1] == glue:
            sig = a_sigma[:-1] + b_sigma
        elif b_sigma and b_sigma[0] == glue:
            sig = a_sigma + b_sigma[1:]
        else:
            return None
        return (-1) ** (k * t), sig, a_tau + b_tau[1:]
    if b_tau[-1] == a_tau[0]:
        glue = b_tau[-1]
        if b_sigma and b_sigma[-1] == glue:
            sig = b_sigma[:-1] + a_sigma
        elif a_sigma and a_sigma[0] == glue:
            sig = b_sigma + a_sigma[1:]
        else:
            return None
        return (-1) ** (s * t + k * t + k * l), sig, b_tau + a_tau[1:]
    return None


def cup_chain(K, x, y):
    """Chain-level cup product of two pair chains over the same complex."""
    out = {}
    for (sa, ta), ca in x.items():
        for (sb, tb), cb in y.items():
            r = cup_chain_pairs(sa, ta, sb, tb)
            if r is None:
                continue
            coef, sig, tau = r
            sign_s, canon_s = sort_with_sign(sig)
            sign_t, canon_t = sort_with_sign(tau)
            if not sign_s or not sign_t or canon_t not in K.simplices:
                continue
            if not set(canon_s) <= set(canon_t):
                continue
            key = (canon_s, canon_t)
            out[key] = out.get(key, 0) + coef * ca * cb * sign_s * sign_t
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class PageClass:
    """A page class: its computation context, bidegree and coordinates."""

    computation: object
    r: int
    bidegree: tuple
    coords: tuple

    def chain(self):
        entry = self.computation.pages[self.r].entries[self.bidegree]
        out = {}
        for g, c in enumerate(self.coords):
            if not c:
                continue
            for pair, v in _entry_chain(entry, g).items():
                out[pair] = out.get(pair, 0) + c * v
        return {k: v for k, v in out.items() if v}


def page_class(computation, r, bidegree, coords):
    return PageClass(computation, r, bidegree, tuple(coords))


def page_generators(computation, r):
    """All generator classes of one page."""
    out = []
    pg = computation.pages[r]
    for st, entry in sorted(pg.entries.items()):
        for g in range(entry.solver.n_generators):
            coords = [0] * entry.solver.n_generators
            coords[g] = 1
            out.append(PageClass(computation, r, st, tuple(coords)))
    return out


def cup_product(x, y, K):
    """Page-level cup product of two cohomeology classes of the same complex.

    The chain-level product of lifts is expressed at the summed bidegree;
    classes must live on the same page of the same computation, over field
    coefficients.
    """
    if x.computation is not y.computation or x.r != y.r:
        raise PageMismatch("classes live on different pages")
    coeff = x.computation.coeff
    if not coeff.is_field:
        raise NonFieldCoefficients("page-level products need field coefficients")
    prod = cup_chain(K, x.chain(), y.chain())
    st = (x.bidegree[0] + y.bidegree[0], x.bidegree[1] + y.bidegree[1])
    pg = x.computation.pages[x.r]
    coords = express_or_zero(x.computation, x.r, st, prod)
    return PageClass(x.computation, x.r, st, tuple(coords))



# -- external products -----------------------------------------------------------


def _tensor_sign_product(t_u, s_v):
    return -1 if (t_u * s_v) % 2 else 1


def external_product_blocks(x, y, coeff=None):
    """External product via the product block complex of the trivial blocks.

    x and y are page classes of the simplicial (co)homeology of K and L;
    the result is the corresponding class on the product block complex of
    K x L, at the componentwise-sum bidegree.
    """
    comp_x, comp_y = x.computation, y.computation
    coeff = coeff or comp_x.coeff
    if not coeff.is_field:
        raise NonFieldCoefficients("external products need field coefficients")
    if x.r != y.r:
        raise PageMismatch("classes on different pages")
    KX = comp_x.B
    KY = comp_y.B
    if KX.variant != KY.variant:
        raise PageMismatch("mixed variants")
    K = comp_x.complex_ref
    L = comp_y.complex_ref
    BK = trivial_block_complex(K)
    BL = trivial_block_complex(L)
    PB = product_block_complex(BK, BL)
    bic = block_bicomplex(PB, KX.variant, KX.reduced)
    comp = PageComputation(bic, coeff, r_max=x.r)
    comp.product_of = (K, L, PB)
    chain = {}
    for (s1, t1), c1 in x.chain().items():
        for (s2, t2), c2 in y.chain().items():
            lbl = ((f"({_simplex_label(K, s1)})x({_simplex_label(L, s2)})"),
                   (f"({_simplex_label(K, t1)})x({_simplex_label(L, t2)})"))
            sign = _tensor_sign_product(len(t1) - 1, len(s2) - 1)
            chain[lbl] = chain.get(lbl, 0) + sign * c1 * c2
    st = (x.bidegree[0] + y.bidegree[0], x.bidegree[1] + y.bidegree[1])
    pg = comp.pages[x.r]
    coords = express_or_zero(comp, x.r, st, {k: v for k, v in chain.items() if v})
    return PageClass(comp, x.r, st, tuple(coords))


def _join_sign(s2, t1):
    """Koszul sign of the pair tensor -> join relabeling."""
    exponent = (s2 + 1) * t1 + s2
    return -1 if exponent % 2 else 1


def external_product_join(x, y):
    """External product landing on the reduced pages of the join K * L.

    Bidegrees add and shift by (1, 1): reduced pair chains of the factors
    concatenate to reduced pair chains of the join.
    """
    comp_x, comp_y = x.computation, y.computation
    coeff = comp_x.coeff
    if not coeff.is_field:
        raise NonFieldCoefficients("external products need field coefficients")
    if x.r != y.r:
        raise PageMismatch("classes on different pages")
    if not (comp_x.B.reduced and comp_y.B.reduced):
        raise PageMismatch("join route needs reduced classes")
    K = comp_x.complex_ref
    L = comp_y.complex_ref
    KL = join_complexes(K, L)
    comp = PageComputation(build(KL, comp_x.B.variant, reduced=True), coeff, r_max=x.r)
    comp.complex_ref = KL
    off = len(K.vertices)
    chain = {}
    for (s1, t1), c1 in x.chain().items():
        for (s2, t2), c2 in y.chain().items():
            sig = s1 + tuple(v + off for v in s2)
            tau = t1 + tuple(v + off for v in t2)
            sign = _join_sign(len(s2) - 1, len(t1) - 1)
            chain[(sig, tau)] = chain.get((sig, tau), 0) + sign * c1 * c2
    st = (x.bidegree[0] + y.bidegree[0] + 1, x.bidegree[1] + y.bidegree[1] + 1)
    pg = comp.pages[x.r]
    coords = express_or_zero(comp, x.r, st, {k: v for k, v in chain.items() if v})
    return PageClass(comp, x.r, st, tuple(coords))


def external_product(x, y, route="product", coeff=None):
    """Bilinear external product of page classes (field coefficients).

    route="product": class on the product block complex of K x L.
    route="join": class on the reduced pages of K * L, bidegree shifted
    by (1, 1).
    """
    if route == "product":
        return external_product_blocks(x, y, coeff)
    if route == "join":
        return external_product_join(x, y)
    raise InvalidParameter(f"unknown external product route {route!r}")


# -- graph maps and the module action ---------------------------------------------


def make_monotone(f):
    """Reorder the source's vertices so the map becomes order preserving.

    Stable sort by image position; the result is a solid map from a relabeled
    copy of the source (an isomorphic complex) with the same geometric
    content.
    """
    order = sorted(range(len(f.source.vertices)), key=lambda v: (f.vertex_map[v], v))
    inverse = {old: new for new, old in enumerate(order)}
    names = [f.source.vertices[v] for v in order]
    simplices = {tuple(sorted(inverse[v] for v in s)) for s in f.source.simplices}
    source = SimplicialComplex(names, simplices)
    vm = tuple(f.vertex_map[order[v]] for v in range(len(names)))
    return SolidMap(source, f.target, vm)


def graph_map(f):
    """The graph of a simplicial map as a solid map into the product.

    The input need not be solid (it may collapse simplices) but must be
    monotone; use make_monotone first otherwise (NotMonotone here).
    """
    if not f.is_monotone:
        raise NotMonotone("graph maps need an order-preserving vertex map; "
                          "use make_monotone first")
    K, L = f.source, f.target
    KL = cartesian_product(K, L)
    nL = len(L.vertices)
    vm = tuple(v * nL + f.vertex_map[v] for v in range(len(K.vertices)))
    return check_solid(K, KL, vm)


def _mixed_bicomplex(K, BlocksB, reduced):
    """The comparison complex: simplicial chains against block cochains.

    Basis pairs (sigma, block) with sigma in the block; the differentials are
    the simplicial boundary and the block coboundary with the usual sign.
    """
    from .blocks import connecting_coefficient

    bottom = -1 if reduced else 0
    basis = {}
    for b in BlocksB.blocks:
        if b.dim < bottom:
            continue
        for sigma in sorted(b.simplices):
            if not reduced and not sigma:
                continue
            basis.setdefault((len(sigma) - 1, b.dim), []).append((sigma, b.label))
    basis = {st: sorted(p) for st, p in basis.items()}
    index = {}
    for st, lst in basis.items():
        for i, p in enumerate(lst):
            index[p] = (st, i)
    d_h, d_v = {}, {}
    for (s, t), lst in basis.items():
        h_data, v_data = {}, {}
        for j, (sigma, label) in enumerate(lst):
            block = BlocksB.block(label)
            if s > 0 or (s == 0 and reduced):
                for i in range(len(sigma)):
                    face = sigma[:i] + sigma[i + 1:]
                    key = index.get((face, label))
                    if key is not None:
                        h_data[(key[1], j)] = 1 if i % 2 == 0 else -1
            sign = 1 if s % 2 == 0 else -1
            if t == -1:
                for c in BlocksB.by_dim(0):
                    key = index.get((sigma, c.label))
                    if key is not None:
                        v_data[(key[1], j)] = sign
            else:
                for c in BlocksB.by_dim(t + 1):
                    v = connecting_coefficient(BlocksB, c, block)
                    if v:
                        key = index.get((sigma, c.label))
                        if key is not None:
                            v_data[(key[1], j)] = sign * v
        if h_data:
            d_h[(s, t)] = Matrix(len(basis.get((s - 1, t), ())), len(lst), h_data)
        if v_data:
            d_v[(s, t)] = Matrix(len(basis.get((s, t + 1), ())), len(lst), v_data)
    return Bicomplex(COHOMEOLOGY, reduced, basis, d_h, d_v)


def _page_iso_through(chain_map, src_comp, tgt_comp, r):
    """Matrices per bidegree of a chain-level map between page computations."""
    out = {}
    pg_src = src_comp.pages[r]
    pg_tgt = tgt_comp.pages[r]
    for st, entry in pg_src.entries.items():
        cols = []
        n_tgt = pg_tgt.entries[st].solver.n_generators if st in pg_tgt.entries else 0
        for g in range(entry.solver.n_generators):
            image = chain_map(_entry_chain(entry, g))
            coords = express_or_zero(tgt_comp, r, st, image)
            cols.append({i: v for i, v in enumerate(coords) if v})
        out[st] = Matrix.from_columns(n_tgt, cols)
    return out


def _invert_field_matrix(m, coeff):
    if m.rows != m.cols:
        raise InvalidParameter("cannot invert a non-square page matrix")
    dec = smith_normal_form(m, coeff)
    if dec.rank != m.rows:
        raise InvalidParameter("page comparison matrix is singular")
    return (dec.V @ dec.U).reduce_mod(coeff)


def transport_block_class_to_simplicial(xprod, PB, KL, coeff):
    """Carry a product-block page class over to the simplicial pages of K x L.

    Uses the two comparison chain maps of the mixed complex: blocks expand to
    their positive top chains, and simplicial big simplices project to the
    unique block whose interior carries them.  Both induce page isomorphisms,
    so the composite is computed by inverting the simplicial-side matrix over
    the field.
    """
    r = xprod.r
    reduced = xprod.computation.B.reduced
    variant = xprod.computation.B.variant
    mixed = _mixed_bicomplex(KL, PB, reduced)
    if variant == HOMEOLOGY:
        mixed = transpose_bicomplex(mixed)
    comp_mixed = PageComputation(mixed, coeff, r_max=r)
    comp_simp = PageComputation(build(KL, variant, reduced), coeff, r_max=r)
    comp_simp.complex_ref = KL
    blocks_by_label = {b.label: b for b in PB.blocks}
    interior_owner = {}
    for b in PB.blocks:
        for s in b.interior:
            if len(s) - 1 == b.dim:
                interior_owner[s] = b.label

    def psi(chain):   # block pair -> mixed pair: expand the small block
        out = {}
        for (small_l, big_l), c in chain.items():
            small = blocks_by_label[small_l]
            for top, sign in small.orientation:
                key = (top, big_l)
                out[key] = out.get(key, 0) + c * sign
        return {k: v for k, v in out.items() if v}

    def j_map(chain):
        # simplicial pair -> mixed pair: a big simplex interior to a block of
        # its own dimension projects to that block, weighted by orientation
        out = {}
        for (sigma, tau), c in chain.items():
            owner = interior_owner.get(tau)
            if owner is None:
                continue
            sign = blocks_by_label[owner].sign(tau)
            out[(sigma, owner)] = out.get((sigma, owner), 0) + c * sign
        return {k: v for k, v in out.items() if v}

    st = xprod.bidegree
    mixed_coords = express_or_zero(comp_mixed, r, st, psi(xprod.chain()))
    j_matrix = _page_iso_through(j_map, comp_simp, comp_mixed, r).get(st)
    if j_matrix is None or j_matrix.cols == 0:
        if any(mixed_coords):
            raise InvalidParameter("transport hit a missing simplicial entry")
        return PageClass(comp_simp, r, st, ())
    inv = _invert_field_matrix(j_matrix, coeff)
    coords = inv.apply(list(mixed_coords))
    ops = ring_ops(coeff)
    return PageClass(comp_simp, r, st, tuple(ops.normalize(c) for c in coords))


def module_action(f, x, rho, coeff=None):
    """Action of a page class of the target on a page class of the source.

    Computes the external product of x and rho on the product block pages,
    transports it to the simplicial pages of source x target, and pulls back
    along the graph map of f.  Field coefficients only; f must be monotone
    (make_monotone first otherwise).
    """
    coeff = coeff or x.computation.coeff
    if not coeff.is_field:
        raise NonFieldCoefficients("the module action needs field coefficients")
    X, Y = f.source, f.target
    gmap = graph_map(f)
    KL = gmap.target
    xp = external_product_blocks(x, rho, coeff)
    BX = trivial_block_complex(X)
    BY = trivial_block_complex(Y)
    PB = product_block_complex(BX, BY)
    simp_class = transport_block_class_to_simplicial(xp, PB, KL, coeff)
    pmap = induced_page_map(gmap, x.r, coeff, COHOMEOLOGY, x.computation.B.reduced)
    st = simp_class.bidegree
    m = pmap.matrix(st)
    coords = m.apply(list(simp_class.coords)) if simp_class.coords else []
    ops = ring_ops(coeff)
    return PageClass(pmap.target_pages, x.r, st, tuple(ops.normalize(c) for c in coords))
