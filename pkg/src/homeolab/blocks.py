"""Block complexes: disk decompositions supporting a coarser bicomplex.

A block is a subcomplex of the host that triangulates a disk; the interiors
of the blocks partition the host's simplices (the empty simplex belongs to
the unique (-1)-block).  Disk-ness is certified at the homology level only:
blocks must look like points, their boundaries like spheres and their
boundary links like disks.  The complexes constructed here (trivial,
subdivision, product) satisfy the real geometric conditions by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .bicomplex import COHOMEOLOGY, HOMEOLOGY, Bicomplex, transpose_bicomplex
from .chains import ChainComplexRep, HOMOLOGICAL, COHOMOLOGICAL, chain_complex, homology
from .complexes import (
    SimplicialComplex,
    cartesian_product,
    from_facets,
    link as link_of,
    propagate_orientation,
    stellar_subdivide,
    top_dimensional_boundary,
)
from .chains import Report
from .errors import InvalidBlockComplex, SimplexNotInComplex
from .exact import Matrix, Z, AbelianGroupPresentation, TRIVIAL_GROUP
from .spectral import PageComputation, page as spectral_page


@dataclass(frozen=True)
class Block:
    """One block: a subcomplex of the host given as a set of simplices."""

    label: str
    dim: int
    simplices: frozenset
    boundary: frozenset
    orientation: tuple  # ((top simplex, sign), ...) for the top simplices

    @property
    def interior(self):
        if self.dim == -1:
            return frozenset({()})
        return frozenset(s for s in self.simplices if s and s not in self.boundary)

    def tops(self):
        return sorted(s for s in self.simplices if len(s) == self.dim + 1)

    def sign(self, top):
        return dict(self.orientation)[top]

    def contains(self, other):
        return other.simplices <= self.simplices


def make_block(label, simplices, orientation=None):
    """Build a block from a downward-closed simplex set, orienting it."""
    simplices = frozenset(simplices) | {()}
    dim = max(len(s) for s in simplices) - 1
    if dim == -1:
        return Block(label, -1, simplices, frozenset(), (((), 1),))
    tops = [s for s in simplices if len(s) == dim + 1]
    proxy = _SimplexSet(simplices, dim)
    boundary = frozenset(top_dimensional_boundary(proxy))
    if orientation is None:
        orientation = propagate_orientation(tops)
    return Block(label, dim, simplices, boundary, tuple(sorted(orientation.items())))


class _SimplexSet:
    """Minimal stand-in exposing dim/faces for the boundary utility."""

    def __init__(self, simplices, dim):
        self._simplices = simplices
        self.dim = dim

    def faces(self, k):
        return sorted(s for s in self._simplices if len(s) == k + 1)


@dataclass
class BlockComplex:
    host: SimplicialComplex
    blocks: list

    def __post_init__(self):
        self.blocks = sorted(self.blocks, key=lambda b: (b.dim, b.label))
        self._by_label = {b.label: b for b in self.blocks}

    def block(self, label):
        return self._by_label[label]

    def by_dim(self, n):
        return [b for b in self.blocks if b.dim == n]

    @property
    def dim(self):
        return max(b.dim for b in self.blocks)


# -- constructions -----------------------------------------------------------


def _simplex_label(K, s):
    return "|".join(K.names_of(s)) if s else "(empty)"


def trivial_block_complex(K):
    """One block per simplex: its full face power set."""
    blocks = []
    for s in sorted(K.simplices):
        faces = {tuple(c) for k in range(len(s) + 1) for c in combinations(s, k)}
        blocks.append(make_block(_simplex_label(K, s), faces))
    return BlockComplex(K, blocks)


def subdivision_block_complex(K, sigma, new_vertex):
    """Blocks over a stellar subdivision, one per simplex of the original.

    The simplices avoiding sigma keep their power-set blocks; those containing
    it get the subdivided power set.
    """
    sigma = tuple(sigma)
    if sigma not in K.simplices or not sigma:
        raise SimplexNotInComplex(f"{sigma} is not a positive-dimensional simplex of K")
    host = stellar_subdivide(K, sigma, new_vertex)
    sset = set(sigma)
    v = host.index_of(new_vertex)
    blocks = []
    for tau in sorted(K.simplices):
        label = "sd:" + _simplex_label(K, tau)
        faces = {tuple(c) for k in range(len(tau) + 1) for c in combinations(tau, k)}
        if not sset <= set(tau) or len(sigma) == 1:
            blocks.append(make_block(label, faces))
            continue
        kept = {rho for rho in faces if not sset <= set(rho)}
        coned = set()
        rest = tuple(u for u in tau if u not in sset)
        rest_faces = [tuple(c) for k in range(len(rest) + 1) for c in combinations(rest, k)]
        for prop in combinations(sigma, len(sigma) - 1):
            prop_faces = [tuple(c) for k in range(len(prop) + 1)
                          for c in combinations(prop, k)]
            for a in prop_faces:
                for b in rest_faces:
                    base = tuple(sorted(a + b))
                    coned.add(base)
                    coned.add(tuple(sorted(base + (v,))))
        blocks.append(make_block(label, kept | coned))
    return BlockComplex(host, blocks)


def _shuffle_sign(pairs):
    """Sign of the lattice path through a product top simplex.

    Inversions are (vertical step, later horizontal step) pairs of the move
    word; the path must consist of unit steps, which is what top simplices of
    the staircase product look like.
    """
    moves = [(pairs[i + 1][0] - pairs[i][0], pairs[i + 1][1] - pairs[i][1])
             for i in range(len(pairs) - 1)]
    inv = 0
    for i, m in enumerate(moves):
        if m[1] and not m[0]:   # vertical move
            inv += sum(1 for m2 in moves[i + 1:] if m2[0] and not m2[1])
    return -1 if inv % 2 else 1


def product_block_complex(BK, BL):
    """Product blocks over the staircase product of the hosts.

    The orientation of a product block is the shuffle orientation induced by
    the factors, so the block pair bicomplex is the tensor product of the
    factors' bicomplexes on the nose.
    """
    K, L = BK.host, BL.host
    host = cartesian_product(K, L)
    nL = len(L.vertices)

    def host_index(i, j):
        return i * nL + j

    pair_of = {idx: (idx // nL, idx % nL) for idx in range(len(host.vertices))}
    blocks = [make_block("(empty)", {()})]
    for a in BK.blocks:
        if a.dim == -1:
            continue
        for b in BL.blocks:
            if b.dim == -1:
                continue
            simplices = set()
            for s in host.simplices:
                pk = tuple(sorted({pair_of[x][0] for x in s}))
                pl = tuple(sorted({pair_of[x][1] for x in s}))
                if pk in a.simplices and pl in b.simplices:
                    simplices.add(s)
            orientation = {}
            for top in simplices:
                if len(top) != a.dim + b.dim + 1:
                    continue
                pairs = sorted(pair_of[x] for x in top)
                pk = tuple(sorted({p[0] for p in pairs}))
                pl = tuple(sorted({p[1] for p in pairs}))
                orientation[top] = (a.sign(pk) * b.sign(pl) * _shuffle_sign(pairs))
            blocks.append(make_block(f"({a.label})x({b.label})", simplices, orientation))
    return BlockComplex(host, blocks)


# -- validation ---------------------------------------------------------------


def _sub_as_complex(host, simplices):
    return host.subcomplex(simplices)


def _reduced_homology_of_set(host, simplices, expect_sphere_dim=None):
    sub = _sub_as_complex(host, simplices)
    return homology(chain_complex(sub, reduced=True), Z)


def connecting_coefficient(B, big, small, all_witnesses=False):
    """The incidence sign between an n-block and an (n-1)-block.

    Zero when the small block is not a face of the big one; otherwise the
    sign comparing a positive chain simplex of the big block against the
    orientation of the small one.  With all_witnesses the consistency over
    every witness is verified (InvalidBlockComplex on disagreement).
    """
    if small.dim != big.dim - 1 or not big.contains(small):
        return 0
    values = set()
    for f in small.tops():
        fs = set(f)
        carriers = [t for t in big.tops() if fs <= set(t)]
        for t in carriers:
            (v,) = set(t) - fs
            position = t.index(v)
            sign = (1 if position % 2 == 0 else -1) * big.sign(t) * small.sign(f)
            values.add(sign)
            if not all_witnesses:
                return sign
    if len(values) != 1:
        raise InvalidBlockComplex(
            f"connecting coefficient between {big.label} and {small.label} "
            f"depends on the witness: {sorted(values)}")
    return values.pop()


def validate(B):
    """Check the block complex axioms, at the homology level where needed.

    The partition condition is checked in its combinatorial form (every
    nonempty simplex interior to exactly one block); that restatement of the
    geometric condition is what this implementation certifies.
    """
    failures = []
    host = B.host
    minus_one = B.by_dim(-1)
    if len(minus_one) != 1:
        failures.append(f"expected exactly one (-1)-block, found {len(minus_one)}")
    owners = {}
    for b in B.blocks:
        if not b.simplices <= host.simplices:
            failures.append(f"block {b.label} is not a subcomplex of the host")
        tops = b.tops()
        if b.dim >= 0 and not tops:
            failures.append(f"block {b.label} has no top simplices")
        maximal = {s for s in b.simplices
                   if s and not any(s != t and set(s) <= set(t) for t in b.simplices)}
        if any(len(s) != b.dim + 1 for s in maximal):
            failures.append(f"block {b.label} is not pure of dimension {b.dim}")
        for s in b.interior:
            owners.setdefault(s, []).append(b.label)
    for s in sorted(host.simplices):
        got = owners.get(s, [])
        if len(got) != 1:
            failures.append(f"simplex {s} interior to {len(got)} blocks: {got}")
    # boundaries are unions of lower blocks
    for b in B.blocks:
        if b.dim < 0:
            continue
        lower = [c for c in B.by_dim(b.dim - 1) if c.simplices <= b.boundary | {()}]
        union = {()}
        for c in lower:
            union |= c.simplices
        if union != (b.boundary | {()}):
            failures.append(f"boundary of {b.label} is not a union of "
                            f"{b.dim - 1}-blocks")
    # pairwise intersections are unions of mutual faces (each a block)
    for i, b in enumerate(B.blocks):
        for c in B.blocks[i + 1:]:
            inter = b.simplices & c.simplices
            union = {()}
            for d in B.blocks:
                if d.simplices <= inter:
                    union |= d.simplices
            if inter != union:
                failures.append(f"intersection of {b.label} and {c.label} "
                                "is not a union of mutual faces")
    # homology-level disk certificates
    for b in B.blocks:
        if b.dim < 0:
            continue
        h = _reduced_homology_of_set(host, b.simplices)
        if any(not g.is_trivial for g in h.values()):
            failures.append(f"block {b.label} does not have point homology: "
                            f"{ {k: str(v) for k, v in h.items() if not v.is_trivial} }")
        if b.dim >= 1:
            hb = _reduced_homology_of_set(host, b.boundary | {()})
            want = {b.dim - 1: AbelianGroupPresentation(1)}
            got = {k: v for k, v in hb.items() if not v.is_trivial}
            if got != want:
                failures.append(f"boundary of {b.label} is not a homology "
                                f"{b.dim - 1}-sphere")
            sub = _sub_as_complex(host, b.simplices)
            for s in sorted(b.boundary):
                if not s:
                    continue
                lk = link_of(sub, sub.simplex_of_names(host.names_of(s)))
                hl = homology(chain_complex(lk, reduced=True), Z)
                if any(not g.is_trivial for g in hl.values()):
                    failures.append(f"link of {s} in block {b.label} is not "
                                    "a homology disk")
        # orientation coherence
        try:
            reference = propagate_orientation(b.tops())
        except Exception:
            failures.append(f"block {b.label} top simplices are not orientable")
            continue
        signs = {t: b.sign(t) for t in b.tops()}
        if b.dim >= 1 and not _orientation_ratio_consistent(b, reference, signs):
            failures.append(f"block {b.label} orientation is incoherent")
    # connecting coefficients are witness-independent
    for b in B.blocks:
        for c in B.by_dim(b.dim - 1):
            try:
                connecting_coefficient(B, b, c, all_witnesses=True)
            except InvalidBlockComplex as e:
                failures.append(str(e))
    notes = {"partition_check": "combinatorial surrogate for the geometric "
                                "partition condition"}
    report = Report(not failures, failures, notes)
    B._validation = report
    return report


def _ensure_valid(B):
    report = getattr(B, "_validation", None)
    if report is None:
        report = validate(B)
    if not report.passed:
        raise InvalidBlockComplex("; ".join(report.failures[:3]))


def _orientation_ratio_consistent(b, reference, signs):
    """True when stored signs differ from propagated ones by a per-component unit."""
    tops = b.tops()
    adj = {t: [] for t in tops}
    by_face = {}
    for t in tops:
        for i in range(len(t)):
            by_face.setdefault(t[:i] + t[i + 1:], []).append(t)
    for sharers in by_face.values():
        if len(sharers) == 2:
            adj[sharers[0]].append(sharers[1])
            adj[sharers[1]].append(sharers[0])
    seen = {}
    for seed in tops:
        if seed in seen:
            continue
        ratio = signs[seed] * reference[seed]
        stack = [seed]
        seen[seed] = True
        while stack:
            cur = stack.pop()
            if signs[cur] * reference[cur] != ratio:
                return False
            for other in adj[cur]:
                if other not in seen:
                    seen[other] = True
                    stack.append(other)
    return True


# -- block (co)chain complexes and bicomplexes ---------------------------------


def block_boundary_matrix(B, reduced=False, direction=HOMOLOGICAL):
    """The block chain complex (or its cochain transpose) of a block complex."""
    _ensure_valid(B)
    bottom = -1 if reduced else 0
    basis = {}
    for n in range(bottom, B.dim + 1):
        blocks = B.by_dim(n)
        if blocks:
            basis[n] = [b.label for b in blocks]
    diff = {}
    for n in sorted(basis):
        if n - 1 not in basis:
            continue
        lower = [B.block(l) for l in basis[n - 1]]
        data = {}
        for j, label in enumerate(basis[n]):
            b = B.block(label)
            if n == 0:
                if reduced:
                    data[(0, j)] = 1
                continue
            for i, c in enumerate(lower):
                v = connecting_coefficient(B, b, c)
                if v:
                    data[(i, j)] = v
        diff[n] = Matrix(len(basis[n - 1]), len(basis[n]), data)
    rep = ChainComplexRep(basis, diff, HOMOLOGICAL, reduced)
    for n in sorted(diff):
        if n + 1 in diff:
            if not (diff[n] @ diff[n + 1]).is_zero:
                raise InvalidBlockComplex("block boundary does not square to zero")
    if direction == HOMOLOGICAL:
        return rep
    return ChainComplexRep(basis, {k - 1: m.transpose() for k, m in rep.diff.items()},
                           COHOMOLOGICAL, reduced)


def block_bicomplex(B, variant=COHOMEOLOGY, reduced=False):
    """Double complex on nested block pairs, same engine-facing shape."""
    _ensure_valid(B)
    bottom = -1 if reduced else 0
    pairs = {}
    blocks = [b for b in B.blocks if b.dim >= bottom]
    for small in blocks:
        for big in blocks:
            if big.contains(small):
                pairs.setdefault((small.dim, big.dim), []).append(
                    (small.label, big.label))
    basis = {st: sorted(p) for st, p in pairs.items()}
    index = {}
    for st, lst in basis.items():
        for i, p in enumerate(lst):
            index[p] = (st, i)
    labels_by_dim = {n: [b.label for b in B.by_dim(n)] for n in range(-1, B.dim + 1)}
    d_h, d_v = {}, {}
    for (s, t), lst in basis.items():
        h_data, v_data = {}, {}
        for j, (small_l, big_l) in enumerate(lst):
            small, big = B.block(small_l), B.block(big_l)
            # boundary of the small block
            if s > 0 or (s == 0 and reduced):
                if s == 0:
                    key = index.get((labels_by_dim[-1][0], big_l))
                    if key is not None:
                        h_data[(key[1], j)] = 1
                else:
                    for c in B.by_dim(s - 1):
                        v = connecting_coefficient(B, small, c)
                        if v:
                            key = index.get((c.label, big_l))
                            if key is not None:
                                h_data[(key[1], j)] = v
            # coboundary of the big block, with the dimension sign
            sign = 1 if s % 2 == 0 else -1
            if t == -1:
                for c in B.by_dim(0):
                    key = index.get((small_l, c.label))
                    if key is not None:
                        v_data[(key[1], j)] = sign
            else:
                for c in B.by_dim(t + 1):
                    v = connecting_coefficient(B, c, big)
                    if v:
                        key = index.get((small_l, c.label))
                        if key is not None:
                            v_data[(key[1], j)] = sign * v
        if h_data:
            d_h[(s, t)] = Matrix(len(basis.get((s - 1, t), ())), len(lst), h_data)
        if v_data:
            d_v[(s, t)] = Matrix(len(basis.get((s, t + 1), ())), len(lst), v_data)
    out = Bicomplex(COHOMEOLOGY, reduced, basis, d_h, d_v)
    return out if variant == COHOMEOLOGY else transpose_bicomplex(out)


def block_page(B, r, coeff=Z, variant=COHOMEOLOGY, reduced=False):
    return spectral_page(block_bicomplex(B, variant, reduced), r, coeff)


def upper_set_cochain_complex(B, alpha):
    """Cochain complex on the blocks containing a given one (Thm-1.9 style oracle)."""
    base = B.block(alpha) if isinstance(alpha, str) else alpha
    members = [b for b in B.blocks if base.simplices <= b.simplices]
    basis = {}
    for b in members:
        basis.setdefault(b.dim, []).append(b.label)
    basis = {n: sorted(v) for n, v in basis.items()}
    diff = {}
    for n in sorted(basis):
        if n + 1 not in basis:
            continue
        upper = basis[n + 1]
        data = {}
        for j, label in enumerate(basis[n]):
            small = B.block(label)
            for i, lab2 in enumerate(upper):
                big = B.block(lab2)
                if n == -1:
                    data[(i, j)] = 1
                else:
                    v = connecting_coefficient(B, big, small)
                    if v:
                        data[(i, j)] = v
        diff[n] = Matrix(len(upper), len(basis[n]), data)
    return ChainComplexRep(basis, diff, COHOMOLOGICAL, reduced=True)


# -- JSON ----------------------------------------------------------------------


def block_complex_to_json(B):
    from .complexes import to_json_dict

    return {
        "host": to_json_dict(B.host),
        "blocks": [{"dim": b.dim, "label": b.label,
                    "facets": [list(B.host.names_of(t)) for t in b.tops()]}
                   for b in B.blocks],
    }


def block_complex_from_json(data):
    from .complexes import from_json_dict

    host = from_json_dict(data["host"])
    blocks = []
    for spec in data["blocks"]:
        if spec["dim"] == -1 or not spec["facets"]:
            blocks.append(make_block(spec["label"], {()}))
            continue
        simp = set()
        for facet in spec["facets"]:
            s = host.simplex_of_names(facet)
            for k in range(len(s) + 1):
                simp.update(combinations(s, k))
        blocks.append(make_block(spec["label"], simp))
    return BlockComplex(host, blocks)
