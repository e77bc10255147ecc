"""Spectral sequence pages of the filtered double complexes.

Page indexing follows the convention in which the sequence starts at r = 0
with the link-cohomology page; internally this is the classical E_{r+1} of
the filtration by the first degree.  Every page entry keeps generator lifts
into the total complex, so page differentials and induced maps can be
evaluated on actual chains.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bicomplex import COHOMEOLOGY, HOMEOLOGY, Bicomplex, build, to_link_form
from .chains import Report, chain_complex, cochain_complex, homology, homology_with_lifts
from .complexes import link as link_of
from .errors import InvalidParameter, NotOrientable
from .exact import (
    TRIVIAL_GROUP,
    Matrix,
    Subquotient,
    Z,
    homology_of_pair,
    kernel_basis,
    presented_cokernel,
    presented_kernel,
    presented_map_is_iso,
    ring_ops,
)


def _st_to_fn(variant, st):
    s, t = st
    return (s, t - s) if variant == COHOMEOLOGY else (-s, s - t)


def _fn_to_st(variant, f, n):
    return (f, n + f) if variant == COHOMEOLOGY else (-f, -f - n)


class _FilteredComplex:
    """The total complex of a bicomplex, graded and filtered for the engine.

    Slots are (f, n) with f the filtration index and n the internal total
    degree; the differential raises n by one and never raises f.
    """

    def __init__(self, B):
        self.B = B
        self.pieces = {}      # n -> list of (f, st) ascending in f
        self.offsets = {}     # (n, f) -> column offset
        self.total_dim = {}   # n -> dimension of C(n)
        for st in B.bidegrees():
            f, n = _st_to_fn(B.variant, st)
            self.pieces.setdefault(n, []).append((f, st))
        for n, lst in self.pieces.items():
            lst.sort()
            off = 0
            for f, st in lst:
                self.offsets[(n, f)] = off
                off += B.dim_at(st)
            self.total_dim[n] = off
        self.fmin = {n: lst[0][0] for n, lst in self.pieces.items()}
        self.fmax = {n: lst[-1][0] for n, lst in self.pieces.items()}
        self.D = {n: self._assemble(n) for n in self.pieces}
        self._a_cache = {}

    def _assemble(self, n):
        rows = self.total_dim.get(n + 1, 0)
        cols = self.total_dim[n]
        data = {}
        for f, st in self.pieces[n]:
            col0 = self.offsets[(n, f)]
            for m, tgt in ((self.B.d_h.get(st), self.B.horizontal_target(st)),
                           (self.B.d_v.get(st), self.B.vertical_target(st))):
                if m is None or tgt not in self.B.basis:
                    continue
                tf, tn = _st_to_fn(self.B.variant, tgt)
                if (tn, tf) not in self.offsets:
                    continue
                row0 = self.offsets[(tn, tf)]
                for (i, j), v in m.data.items():
                    data[(row0 + i, col0 + j)] = v
        return Matrix(rows, cols, data)

    def slice_dim(self, n, f):
        """Dimension of the filtration-level-f part of C(n)."""
        dim = 0
        for g, st in self.pieces.get(n, ()):
            if g > f:
                break
            dim = self.offsets[(n, g)] + self.B.dim_at(st)
        return dim

    def a_basis(self, n, f, k, coeff):
        """Basis of {x in F_f(n) : Dx in F_{f-k}(n+1)} over coeff.

        Saturated over Z.  f above the top filtration level is clamped, which
        shifts k accordingly; missing degrees give empty bases.
        """
        if n not in self.pieces:
            return Matrix.zero(0, 0)
        top = self.fmax[n]
        if f > top:
            k = max(0, k - (f - top))
            f = top
        if f < self.fmin[n]:
            return Matrix.zero(0, 0)
        key = (n, f, k, coeff)
        if key in self._a_cache:
            return self._a_cache[key]
        dim = self.slice_dim(n, f)
        if k == 0:
            out = Matrix.identity(dim)
        else:
            prev = self.a_basis(n, f, k - 1, coeff)
            level = f - k + 1
            rows = self._level_rows(n + 1, level)
            if rows is None:
                out = prev
            else:
                restricted = self.D.get(n, Matrix.zero(0, dim)).take_rows(rows)
                restricted = restricted.take_columns(list(range(dim)))
                m = (restricted @ prev).reduce_mod(coeff)
                out = prev @ kernel_basis(m, coeff)
        self._a_cache[key] = out
        return out

    def _level_rows(self, n, f):
        if (n, f) not in self.offsets:
            return None
        off = self.offsets[(n, f)]
        st = next(st for g, st in self.pieces[n] if g == f)
        return list(range(off, off + self.B.dim_at(st)))

    def boundary_image(self, n, f, k, coeff, ambient):
        """D(A_k(f, n-1)) as columns over the first `ambient` coordinates of C(n)."""
        src = self.a_basis(n - 1, f, k, coeff)
        if src.cols == 0 or (n - 1) not in self.pieces:
            return Matrix.zero(ambient, 0)
        full_dim = self.slice_dim(n - 1, min(f, self.fmax[n - 1]))
        D = self.D[n - 1].take_columns(list(range(full_dim)))
        image = (D @ src).reduce_mod(coeff)
        for (i, _), v in image.data.items():
            if i >= ambient and v:
                raise AssertionError("boundary image escapes the filtration slice")
        return image.take_rows(list(range(ambient)))


@dataclass
class PageEntry:
    """One bigraded spot of a page: the group, plus lifts into the total complex."""

    group: object
    slice_pairs: tuple       # ambient basis labels, filtration-ascending
    solver: Subquotient = field(repr=False)

    @property
    def lifts(self):
        return self.solver.lift


@dataclass
class SpectralPage:
    """All bigraded groups of one page with the page differential matrices.

    ``differentials[(s,t)]`` is written in generator coordinates (torsion
    generators first) of the source and target entries.
    """

    r: int
    variant: str
    reduced: bool
    coeff: object
    entries: dict
    differentials: dict

    @property
    def groups(self):
        return {st: e.group for st, e in self.entries.items()}

    def group(self, st):
        e = self.entries.get(st)
        return e.group if e else TRIVIAL_GROUP

    def entry(self, st):
        return self.entries.get(st)

    def differential_target(self, st):
        s, t = st
        if self.variant == COHOMEOLOGY:
            return (s - self.r - 1, t - self.r)
        return (s + self.r + 1, t + self.r)

    def differential(self, st):
        if st in self.differentials:
            return self.differentials[st]
        src = self.group(st)
        tgt = self.group(self.differential_target(st))
        return Matrix.zero(len(tgt.torsion) + tgt.free_rank,
                           len(src.torsion) + src.free_rank)

    def nonzero_bidegrees(self):
        return sorted(st for st, e in self.entries.items() if not e.group.is_trivial)


def pages_equal(p, q):
    """Presentation equality per bidegree, absent entries counting as trivial."""
    keys = set(p.groups) | set(q.groups)
    return all(p.group(st) == q.group(st) for st in keys)


class PageComputation:
    """Pages 0..r_max of one bicomplex over one coefficient ring."""

    def __init__(self, B, coeff=Z, r_max=None, complex_ref=None):
        self.B = B
        self.coeff = coeff
        self.complex_ref = complex_ref
        self.fc = _FilteredComplex(B)
        if r_max is None:
            r_max = stable_page_index(B)
        self.r_max = r_max
        self.pages = {}
        for r in range(r_max + 1):
            self.pages[r] = self._compute_page(r)

    def _compute_page(self, r):
        fc, coeff = self.fc, self.coeff
        entries = {}
        for n, lst in sorted(fc.pieces.items()):
            for f, st in lst:
                ambient = fc.slice_dim(n, f)
                a = fc.a_basis(n, f, r + 1, coeff)
                parts = []
                below = fc.a_basis(n, f - 1, r, coeff)
                if below.cols:
                    parts.append(below.pad_rows(ambient))
                bd = fc.boundary_image(n, f + r, r, coeff, ambient)
                if bd.cols:
                    parts.append(bd)
                b = parts[0] if parts else Matrix.zero(ambient, 0)
                for extra in parts[1:]:
                    b = b.hstack(extra)
                solver = Subquotient(ambient, a, b, coeff)
                slice_pairs = []
                for g, pst in lst:
                    if g > f:
                        break
                    slice_pairs.extend(self.B.basis[pst])
                entries[st] = PageEntry(solver.group, tuple(slice_pairs), solver)
        page = SpectralPage(r, self.B.variant, self.B.reduced, coeff, entries, {})
        page.differentials = self._page_differentials(page)
        return page

    def _page_differentials(self, page):
        fc, coeff, r = self.fc, self.coeff, page.r
        ops = ring_ops(coeff)
        out = {}
        for st, entry in page.entries.items():
            f, n = _st_to_fn(self.B.variant, st)
            tgt_st = page.differential_target(st)
            tgt = page.entries.get(tgt_st)
            src_dim = entry.solver.n_generators
            if src_dim == 0:
                continue
            D = fc.D.get(n)
            cols = []
            tgt_ambient = fc.slice_dim(n + 1, f - r - 1) if tgt else 0
            for g in range(src_dim):
                lift = entry.solver.lift_of(g)
                full = lift + [0] * (fc.total_dim[n] - len(lift))
                image = [ops.normalize(c) for c in D.apply(full)] if D else []
                if any(image[tgt_ambient:]):
                    raise AssertionError("page differential escapes its filtration")
                if tgt is None:
                    if any(image):
                        raise AssertionError("nonzero differential into a missing slot")
                    continue
                cols.append({i: v for i, v in enumerate(tgt.solver.coords(image[:tgt_ambient])) if v})
            if tgt is not None and cols:
                m = Matrix.from_columns(tgt.solver.n_generators, cols)
                if not m.is_zero:
                    out[st] = m
        return out


def stable_page_index(B):
    """Past this page all differentials vanish for bidegree reasons."""
    if not B.basis:
        return 1
    ts = [t for (_, t) in B.basis]
    return max(ts) - min(ts) + 1


_page_cache = {}


def pages_for(K, variant=COHOMEOLOGY, reduced=False, coeff=Z, r_max=None):
    """Cached page computation for a complex (bicomplex built on demand)."""
    key = (K, variant, reduced, coeff, r_max)
    if key not in _page_cache:
        B = build(K, variant, reduced)
        _page_cache[key] = PageComputation(B, coeff, r_max, complex_ref=K)
    return _page_cache[key]


def page(B, r, coeff=Z):
    """Page r (>= 0) of a bicomplex over coeff."""
    if r < 0:
        raise InvalidParameter("page index must be >= 0")
    comp = PageComputation(B, coeff, r_max=max(r, 0))
    return comp.pages[r]


def express(page_obj, st, chain):
    """Coordinates of a total-complex chain {pair: coefficient} in a page entry.

    The chain must be supported in the filtration slice of the entry; raises
    when it is not (or when it does not represent a class on this page).
    """
    entry = page_obj.entries.get(st)
    if entry is None:
        if chain:
            raise InvalidParameter(f"no page entry at {st}")
        return []
    pos = {p: i for i, p in enumerate(entry.slice_pairs)}
    vec = [0] * len(entry.slice_pairs)
    for pair, c in chain.items():
        if not c:
            continue
        if pair not in pos:
            raise InvalidParameter(f"chain not supported in the slice at {st}: {pair}")
        vec[pos[pair]] = c
    return entry.solver.coords(vec)


def express_or_zero(comp, r, st, chain):
    """Like express, but an absent entry reads as the zero group.

    The chain must still respect the filtration slice: every pair needs the
    right total degree and a filtration index within the slice bound.
    """
    page_obj = comp.pages[r]
    if st in page_obj.entries:
        return express(page_obj, st, chain)
    f, n = _st_to_fn(comp.B.variant, st)
    for pair in chain:
        pst, _ = comp.B.pair_index[pair]
        pf, pn = _st_to_fn(comp.B.variant, pst)
        if pn != n:
            raise InvalidParameter(f"chain has wrong total degree at {pst}")
        if pf > f:
            raise InvalidParameter("chain escapes the filtration slice")
    return []


# -- limits -------------------------------------------------------------------


@dataclass
class LimitGroups:
    """Total-complex (co)homology by degree, with the stabilized page attached."""

    groups: dict
    stable_r: int
    stable_page: SpectralPage
    consistent: bool
    notes: list


def limit(B, coeff=Z):
    """The convergence groups of the filtration, computed from the total complex.

    Keys are the geometric degrees t - s.  The stabilized page is recomputed
    alongside and its graded pieces are checked against the limit (dimension
    over a field, free rank over Z).
    """
    fc = _FilteredComplex(B)
    sign = 1 if B.variant == COHOMEOLOGY else -1
    groups = {}
    for n in fc.pieces:
        d_out = fc.D.get(n, Matrix.zero(0, fc.total_dim[n]))
        prev = fc.D.get(n - 1)
        d_in = prev if prev is not None else Matrix.zero(fc.total_dim[n], 0)
        groups[sign * n] = homology_of_pair(d_out, d_in, coeff)
    r_stable = stable_page_index(B)
    comp = PageComputation(B, coeff, r_max=r_stable)
    stable = comp.pages[r_stable]
    notes = []
    if not pages_equal(stable, comp.pages[max(0, r_stable - 1)]):
        notes.append("pages still moving at the stability bound")
    for deg, g in groups.items():
        graded = [stable.group(st) for st in stable.groups
                  if st[1] - st[0] == deg]
        free = sum(x.free_rank for x in graded)
        if coeff.is_field:
            if free != g.free_rank:
                notes.append(f"degree {deg}: graded dimension {free} != limit {g.free_rank}")
        else:
            if free != g.free_rank:
                notes.append(f"degree {deg}: graded free rank {free} != limit {g.free_rank}")
    return LimitGroups(groups, r_stable, stable, not notes, notes)


# -- structural checks ----------------------------------------------------------


def _link_local(K, sigma):
    """The link of sigma plus the K-index -> local-index dictionary."""
    lk = link_of(K, sigma)
    to_local = {K.index_of(name): i for i, name in enumerate(lk.vertices)}
    return lk, to_local


def _link_cohomology_lifts(K, sigma, degree, coeff):
    lk, to_local = _link_local(K, sigma)
    C = cochain_complex(lk, reduced=True)
    return homology_with_lifts(C, degree, coeff), lk, to_local, C


def _zero_in_presentation(m, pres, coeff):
    from .exact import presentation_relations, solve

    rels = presentation_relations(pres)
    return all(solve(rels, m.column_vector(j), coeff) is not None for j in range(m.cols))


def check_page0_links(K, coeff=Z, reduced=True):
    """Page 0 against the direct sum of reduced link cohomologies.

    Checks group isomorphism through the explicit pair-to-link relabeling
    (not just presentation equality) and that the page-0 differential agrees
    with the sum of the vertex-removal maps on link classes; in the
    unreduced case the differential out of vertex columns is zero.
    """
    from .bicomplex import concat_sign

    comp = pages_for(K, COHOMEOLOGY, reduced=reduced, coeff=coeff, r_max=1)
    pg0 = comp.pages[0]
    failures = []
    # link cohomology with lifts per simplex and relevant degree
    link_data = {}

    def link_h(sigma, degree):
        key = (sigma, degree)
        if key not in link_data:
            link_data[key] = _link_cohomology_lifts(K, sigma, degree, coeff)
        return link_data[key]

    iso_cols = {}   # st -> matrix engine gens -> direct-sum gens, plus block layout
    layout = {}     # st -> list of (sigma, h) in block order
    for st in sorted(pg0.groups):
        s, t = st
        sigmas = K.faces(s) if s >= 0 else ([()] if reduced else [])
        blocks = []
        expected = TRIVIAL_GROUP
        for sigma in sigmas:
            h, lk, to_local, C = link_h(sigma, t - s - 1)
            blocks.append((sigma, h, lk, to_local, C))
            expected = expected.direct_sum(h.group)
        layout[st] = blocks
        if expected != pg0.group(st):
            failures.append(f"page0 group mismatch at {st}: {pg0.group(st)} vs {expected}")
            continue
        entry = pg0.entry(st)
        if entry is None:
            continue
        # express each engine generator as a sum of link classes
        offsets, total = [], 0
        for _, h, *_ in blocks:
            offsets.append(total)
            total += h.n_generators
        cols = []
        for g in range(entry.solver.n_generators):
            lift = entry.solver.lift_of(g)
            per_sigma = {}
            for pos, c in enumerate(lift):
                if not c:
                    continue
                sigma, tau = entry.slice_pairs[pos]
                if len(sigma) - 1 != s:
                    continue  # lower filtration part does not matter on page 0
                tau_link = tuple(v for v in tau if v not in set(sigma))
                per_sigma.setdefault(sigma, {})[tau_link] = (
                    per_sigma.get(sigma, {}).get(tau_link, 0)
                    + c * concat_sign(tau_link, sigma))
            col = {}
            for bi, (sigma, h, lk, to_local, C) in enumerate(blocks):
                chain = per_sigma.get(sigma)
                if not chain:
                    continue
                vec = [0] * len(C.basis.get(t - s - 1, ()))
                index = {x: i for i, x in enumerate(C.basis.get(t - s - 1, ()))}
                for tau_link, c in chain.items():
                    local = tuple(sorted(to_local[v] for v in tau_link))
                    vec[index[local]] = c
                for i, c in enumerate(h.coords(vec)):
                    if c:
                        col[offsets[bi] + i] = c
            cols.append(col)
        iso = Matrix.from_columns(total, cols)
        iso_cols[st] = (iso, offsets, blocks)
        if not presented_map_is_iso(iso, pg0.group(st), expected, coeff):
            failures.append(f"page0 relabeling at {st} is not an isomorphism")

    # differential comparison: engine Delta_0 vs vertex-removal formula
    for st in sorted(pg0.groups):
        s, t = st
        tgt_st = (s - 1, t)
        if st not in iso_cols or tgt_st not in iso_cols:
            continue
        iso_src, off_src, blocks_src = iso_cols[st]
        iso_tgt, off_tgt, blocks_tgt = iso_cols[tgt_st]
        tgt_pos = {sigma: bi for bi, (sigma, *_) in enumerate(blocks_tgt)}
        formula_cols = []
        for bi, (sigma, h, lk, to_local, C) in enumerate(blocks_src):
            for g in range(h.n_generators):
                col = {}
                if s > 0 or (reduced and s == 0):
                    x = h.lift_of(g)   # cocycle in C~^{t-s-1}(link sigma)
                    basis_here = C.basis.get(t - s - 1, ())
                    for vi in sigma:
                        sigma_i = tuple(u for u in sigma if u != vi)
                        h2, lk2, to_local2, C2 = link_h(sigma_i, t - s)
                        deg_basis = C2.basis.get(t - s, ())
                        index2 = {x2: i for i, x2 in enumerate(deg_basis)}
                        vec = [0] * len(deg_basis)
                        for pos, c in enumerate(x):
                            if not c:
                                continue
                            tau_local = basis_here[pos]
                            tau_k = tuple(sorted(K.index_of(lk.vertices[v])
                                                 for v in tau_local))
                            enlarged = tau_k + (vi,)
                            sign = (-1) ** sum(1 for u in tau_k if u > vi)
                            local = tuple(sorted(to_local2[u] for u in enlarged))
                            vec[index2[local]] += c * sign
                        for i, c in enumerate(h2.coords(vec)):
                            if c:
                                key = off_tgt[tgt_pos[sigma_i]] + i
                                col[key] = col.get(key, 0) + c
                formula_cols.append(col)
        total_tgt = iso_tgt.rows
        formula = Matrix.from_columns(total_tgt, formula_cols)
        engine = pg0.differential(st)
        lhs = iso_tgt @ engine
        expected_pres = TRIVIAL_GROUP
        for _, h, *_ in blocks_tgt:
            expected_pres = expected_pres.direct_sum(h.group)
        diff = (lhs - formula @ iso_src).reduce_mod(coeff)
        if not _zero_in_presentation(diff, expected_pres, coeff):
            failures.append(f"page0 differential mismatch at {st}")
    return Report(not failures, failures, {"bidegrees": sorted(pg0.groups)})


def check_reduced_unreduced_sequence(K, coeff=Z, n=None):
    """The four-term sequences tying reduced and unreduced page-1 groups.

    For each total degree n: 0 -> rH^{0,n} -> H^{0,n} -> rH^n(K) -> rH^{-1,n} -> 0
    on the cohomeology side, its mirror on the homeology side, and the
    equality of reduced and unreduced groups in filtration degrees s > 0.
    """
    failures = []
    red = pages_for(K, COHOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    unred = pages_for(K, COHOMEOLOGY, reduced=False, coeff=coeff, r_max=1).pages[1]
    red_h = pages_for(K, HOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    unred_h = pages_for(K, HOMEOLOGY, reduced=False, coeff=coeff, r_max=1).pages[1]
    coh = homology(cochain_complex(K, reduced=True), coeff)
    hom = homology(chain_complex(K, reduced=True), coeff)
    degrees = [n] if n is not None else sorted({t for (_, t) in
                                                set(red.groups) | set(unred.groups)} | set(coh))
    degrees = [d for d in degrees if d >= 0]

    def seq_check(label, a, b, c, d):
        ranks = a.free_rank - b.free_rank + c.free_rank - d.free_rank
        if ranks != 0:
            failures.append(f"{label}: alternating rank sum {ranks} != 0")
        if not coeff.is_field and all(g.free_rank == 0 for g in (a, b, c, d)):
            if a.order() * c.order() != b.order() * d.order():
                failures.append(f"{label}: torsion orders violate exactness")

    for deg in degrees:
        seq_check(f"cohomeology n={deg}",
                  red.group((0, deg)), unred.group((0, deg)),
                  coh.get(deg, TRIVIAL_GROUP), red.group((-1, deg)))
        seq_check(f"homeology n={deg}",
                  red_h.group((-1, deg)), hom.get(deg, TRIVIAL_GROUP),
                  unred_h.group((0, deg)), red_h.group((0, deg)))
        for s in range(1, K.dim + 1):
            if unred.group((s, deg)) != red.group((s, deg)):
                failures.append(f"H^{{{s},{deg}}} != reduced version")
            if unred_h.group((s, deg)) != red_h.group((s, deg)):
                failures.append(f"H_{{{s},{deg}}} != reduced version")
    return Report(not failures, failures, {"degrees": degrees})


def is_cohen_macaulay(K, coeff=Z):
    """CM test: every link has reduced cohomology only in its top degree."""
    n = K.dim
    for s in range(-1, n + 1):
        for sigma in (K.faces(s) if s >= 0 else [()]):
            lk = link_of(K, sigma)
            h = homology(cochain_complex(lk, reduced=True), coeff)
            for t, g in h.items():
                if t != n - s - 1 and not g.is_trivial:
                    return False, (sigma, t, g)
    return True, None


def check_cm_structure(K, coeff=Z):
    """Verify the collapsed page shape forced by the Cohen-Macaulay condition.

    For CM dimension n and pages r = 1..n-1: entries only in the top row
    (s, n), s >= r, agreeing with page 1, and in the corner row (-1, t),
    t <= n-r, agreeing with page 0; the arrow (r,n) -> (-1,n-r) is an
    isomorphism.  The page-n arrow (n,n) -> (-1,0) is onto with kernel the
    coefficient module, and page n+1 has only the coefficient module at (n,n).
    """
    failures = []
    cm, witness = is_cohen_macaulay(K, coeff)
    if not cm:
        return Report(False, [f"not Cohen-Macaulay: link of {witness[0]} has "
                              f"{witness[2]} in degree {witness[1]}"],
                      {"cohen_macaulay": False})
    n = K.dim
    comp = pages_for(K, COHOMEOLOGY, reduced=True, coeff=coeff, r_max=n + 2)
    pages = comp.pages
    one_module = AbelianGroupPresentation_one(coeff)
    for r in range(1, n):
        pg = pages[r]
        for st, g in pg.groups.items():
            s, t = st
            allowed = (t == n and r <= s <= n) or (s == -1 and 0 <= t <= n - r)
            if not g.is_trivial and not allowed:
                failures.append(f"page {r}: unexpected entry {g} at {st}")
        for s in range(r, n + 1):
            if pg.group((s, n)) != pages[1].group((s, n)):
                failures.append(f"page {r}: top row at ({s},{n}) moved")
        for t in range(0, n - r + 1):
            if pg.group((-1, t)) != pages[0].group((-1, t)):
                failures.append(f"page {r}: corner at (-1,{t}) moved")
        m = pg.differential((r, n))
        src, tgt = pg.group((r, n)), pg.group((-1, n - r))
        if src != tgt:
            failures.append(f"page {r}: ({r},{n}) and (-1,{n-r}) differ as groups")
        elif not presented_map_is_iso(m, src, tgt, coeff):
            failures.append(f"page {r}: arrow ({r},{n}) -> (-1,{n-r}) not an isomorphism")
    pg_n = pages[n]
    m = pg_n.differential((n, n))
    coker = presented_cokernel(m, pg_n.group((-1, 0)), coeff)
    ker = presented_kernel(m, pg_n.group((n, n)), pg_n.group((-1, 0)), coeff)
    if not coker.is_trivial:
        failures.append(f"page {n}: arrow ({n},{n}) -> (-1,0) not onto")
    if ker != one_module:
        failures.append(f"page {n}: kernel of the final arrow is {ker}")
    top = pages[n + 1]
    for st, g in top.groups.items():
        want = one_module if st == (n, n) else TRIVIAL_GROUP
        if g != want:
            failures.append(f"page {n+1}: {g} at {st}")
    if top.group((n, n)) != one_module:
        failures.append(f"page {n+1}: missing coefficient module at ({n},{n})")
    return Report(not failures, failures, {"cohen_macaulay": True, "dimension": n})


def AbelianGroupPresentation_one(coeff):
    """The coefficient module as a presentation: rank-one over any of Z, Q, Z/p."""
    from .exact import free_group

    return free_group(1)


def check_lefschetz_remark(K, coeff=Z):
    """Top row of page 1 against relative (co)homology of (M, boundary).

    Requires a pure orientable complex; orientability is certified by sign
    propagation over the top simplices (NotOrientable otherwise).
    """
    from .chains import relative_complex
    from .complexes import propagate_orientation, top_dimensional_boundary

    n = K.dim
    lengths = {len(f) for f in K.facets()}
    if lengths != {n + 1}:
        raise InvalidParameter("complex is not pure; not a triangulated manifold")
    propagate_orientation(K.faces(n))  # raises NotOrientable on a twist
    boundary = K.subcomplex(top_dimensional_boundary(K))
    rel_h = homology(relative_complex(K, boundary), coeff)
    rel_c = homology(relative_complex(K, boundary, direction="cohomological"), coeff)
    pg = pages_for(K, COHOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    pg_h = pages_for(K, HOMEOLOGY, reduced=True, coeff=coeff, r_max=1).pages[1]
    failures = []
    for k in range(0, n + 1):
        want = rel_h.get(k, TRIVIAL_GROUP)
        got = pg.group((k, n))
        if got != want:
            failures.append(f"cohomeology ({k},{n}) = {got}, relative H_{k} = {want}")
        want_c = rel_c.get(k, TRIVIAL_GROUP)
        got_h = pg_h.group((k, n))
        if got_h != want_c:
            failures.append(f"homeology ({k},{n}) = {got_h}, relative H^{k} = {want_c}")
    return Report(not failures, failures,
                  {"dimension": n, "boundary_f_vector": boundary.f_vector()})
