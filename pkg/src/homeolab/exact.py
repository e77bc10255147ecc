"""Exact linear algebra over Z, Q and Z/p.

Everything in the package that is a "group" is computed here: Smith normal
form with unimodular transforms, kernels, solving, and subquotient
presentations of lattices.  Entries are Python ints (Z and Z/p) or Fractions
(Q); there is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import InvalidParameter, NotAComplex, NotASubgroup

# -- coefficients -----------------------------------------------------------


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Coefficients:
    """The coefficient rings supported: Z, Q, or Z/p with p prime."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Zp"):
            raise InvalidParameter(f"unknown coefficient tag {self.tag!r}")
        if self.tag == "Zp" and not _is_prime(self.p or 0):
            raise InvalidParameter(f"Z/p needs a prime p, got {self.p}")
        if self.tag != "Zp" and self.p is not None:
            raise InvalidParameter("p is only meaningful for Zp")

    @property
    def is_field(self):
        return self.tag != "Z"

    def __str__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.tag, f"Z/{self.p}")


Z = Coefficients("Z")
Q = Coefficients("Q")


def Zp(p):
    return Coefficients("Zp", p)


def parse_coefficients(text):
    """Parse 'Z', 'Q', 'Z2', 'Z/2', 'Zp:5' and friends."""
    t = text.strip()
    if t == "Z":
        return Z
    if t == "Q":
        return Q
    for prefix in ("Z/", "Zp:", "Z"):
        if t.startswith(prefix) and t[len(prefix):].isdigit():
            return Zp(int(t[len(prefix):]))
    raise InvalidParameter(f"cannot parse coefficients {text!r}")


# -- abelian group presentations ---------------------------------------------


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(divisors):
    """Canonical invariant-factor chain from an arbitrary multiset of cyclic orders."""
    primes = {}
    for d in divisors:
        if d in (0, 1):
            continue
        for p, e in _factorize(abs(d)).items():
            primes.setdefault(p, []).append(e)
    if not primes:
        return ()
    width = max(len(v) for v in primes.values())
    factors = []
    for i in range(width):
        f = 1
        for p, es in primes.items():
            es = sorted(es, reverse=True)
            if i < len(es):
                f *= p ** es[i]
        factors.append(f)
    return tuple(reversed(factors))  # ascending, each divides the next


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Z^free_rank plus cyclic torsion in invariant-factor form (ascending)."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvalidParameter("negative free rank")
        t = tuple(self.torsion)
        for a, b in zip(t, t[1:]):
            if b % a != 0:
                raise InvalidParameter(f"torsion {t} is not a divisibility chain")
        if any(d < 2 for d in t):
            raise InvalidParameter(f"torsion entries must be >= 2, got {t}")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_divisors(cls, free_rank, divisors):
        return cls(free_rank, _invariant_factors(divisors))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def direct_sum(self, *others):
        free = self.free_rank + sum(o.free_rank for o in others)
        divs = list(self.torsion)
        for o in others:
            divs.extend(o.torsion)
        return AbelianGroupPresentation.from_divisors(free, divs)

    def dim_mod(self, p):
        """Dimension of (self tensor Z/p) over Z/p."""
        return self.free_rank + sum(1 for d in self.torsion if d % p == 0)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


TRIVIAL_GROUP = AbelianGroupPresentation(0)


def free_group(rank):
    return AbelianGroupPresentation(rank)


# -- ring adapters ------------------------------------------------------------


class _ZOps:
    is_field = False

    @staticmethod
    def norm(x):
        return x if x >= 0 else -x

    @staticmethod
    def divmod_(a, b):
        return divmod(a, b)

    @staticmethod
    def unit_to_one(x):  # unit u with u*x canonical (positive)
        return 1 if x > 0 else -1

    @staticmethod
    def normalize(x):
        return x


class _QOps:
    is_field = True

    @staticmethod
    def norm(x):
        x = Fraction(x)
        return x.numerator.bit_length() + x.denominator.bit_length()

    @staticmethod
    def divmod_(a, b):
        return Fraction(a) / Fraction(b), Fraction(0)

    @staticmethod
    def unit_to_one(x):
        return 1 / Fraction(x)

    @staticmethod
    def normalize(x):
        x = Fraction(x)
        return int(x) if x.denominator == 1 else x


class _FpOps:
    is_field = True

    def __init__(self, p):
        self.p = p

    @staticmethod
    def norm(x):
        return 1

    def divmod_(self, a, b):
        return a * pow(b, -1, self.p) % self.p, 0

    def unit_to_one(self, x):
        return pow(x, -1, self.p)

    def normalize(self, x):
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return x % self.p


def ring_ops(coeff):
    if coeff.tag == "Z":
        return _ZOps()
    if coeff.tag == "Q":
        return _QOps()
    return _FpOps(coeff.p)


# -- sparse exact matrices -----------------------------------------------------


class Matrix:
    """Immutable-by-convention sparse matrix with exact entries.

    Entries are ints (over Z and Z/p, the latter stored as residues) or
    Fractions (over Q); zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        if rows < 0 or cols < 0:
            raise InvalidParameter("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        self.data = {}
        if data:
            for (i, j), v in data.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise InvalidParameter(f"entry ({i},{j}) outside {rows}x{cols}")
                if v:
                    self.data[(i, j)] = v

    # construction

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def diagonal(cls, rows, cols, diag):
        return cls(rows, cols, {(i, i): d for i, d in enumerate(diag) if d})

    @classmethod
    def from_dense(cls, rows_list):
        rows = len(rows_list)
        cols = len(rows_list[0]) if rows else 0
        return cls(rows, cols, {(i, j): v for i, row in enumerate(rows_list)
                                for j, v in enumerate(row) if v})

    @classmethod
    def column(cls, vector):
        return cls(len(vector), 1, {(i, 0): v for i, v in enumerate(vector) if v})

    @classmethod
    def from_columns(cls, rows, columns):
        data = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    data[(i, j)] = v
        return cls(rows, len(columns), data)

    # queries

    def __getitem__(self, key):
        return self.data.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.data.items())))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {len(self.data)} nonzero)"

    @property
    def is_zero(self):
        return not self.data

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.data.items():
            out[i][j] = v
        return out

    def column_dict(self, j):
        return {i: v for (i, jj), v in self.data.items() if jj == j}

    def column_vector(self, j):
        col = [0] * self.rows
        for (i, jj), v in self.data.items():
            if jj == j:
                col[i] = v
        return col

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for (i, j), v in self.data.items():
            cols[j][i] = v
        return cols

    def to_triplets(self):
        return sorted([i, j, v] for (i, j), v in self.data.items())

    # arithmetic

    def transpose(self):
        return Matrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.data.items()})

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidParameter("shape mismatch in +")
        data = dict(self.data)
        for k, v in other.data.items():
            data[k] = data.get(k, 0) + v
        return Matrix(self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.rows, self.cols, {k: -v for k, v in self.data.items()})

    def scale(self, c):
        if not c:
            return Matrix.zero(self.rows, self.cols)
        return Matrix(self.rows, self.cols, {k: c * v for k, v in self.data.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InvalidParameter(f"shape mismatch in @: {self.cols} vs {other.rows}")
        by_row = {}
        for (i, j), v in self.data.items():
            by_row.setdefault(i, {})[j] = v
        other_rows = {}
        for (j, k), w in other.data.items():
            other_rows.setdefault(j, {})[k] = w
        data = {}
        for i, row in by_row.items():
            acc = {}
            for j, v in row.items():
                for k, w in other_rows.get(j, {}).items():
                    acc[k] = acc.get(k, 0) + v * w
            for k, s in acc.items():
                if s:
                    data[(i, k)] = s
        return Matrix(self.rows, other.cols, data)

    def apply(self, vector):
        """Matrix times a dense vector (list) -> dense vector."""
        if len(vector) != self.cols:
            raise InvalidParameter("vector length mismatch")
        out = [0] * self.rows
        for (i, j), v in self.data.items():
            if vector[j]:
                out[i] += v * vector[j]
        return out

    def hstack(self, other):
        if self.rows != other.rows:
            raise InvalidParameter("row mismatch in hstack")
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i, j + self.cols)] = v
        return Matrix(self.rows, self.cols + other.cols, data)

    def vstack(self, other):
        if self.cols != other.cols:
            raise InvalidParameter("column mismatch in vstack")
        data = dict(self.data)
        for (i, j), v in other.data.items():
            data[(i + self.rows, j)] = v
        return Matrix(self.rows + other.rows, self.cols, data)

    def take_rows(self, row_indices):
        sel = {r: i for i, r in enumerate(row_indices)}
        return Matrix(len(row_indices), self.cols,
                      {(sel[i], j): v for (i, j), v in self.data.items() if i in sel})

    def take_columns(self, col_indices):
        sel = {c: j for j, c in enumerate(col_indices)}
        return Matrix(self.rows, len(col_indices),
                      {(i, sel[j]): v for (i, j), v in self.data.items() if j in sel})

    def pad_rows(self, rows, offset=0):
        """Embed into a taller matrix, rows shifted down by offset."""
        return Matrix(rows, self.cols, {(i + offset, j): v for (i, j), v in self.data.items()})

    def map_entries(self, f):
        return Matrix(self.rows, self.cols, {k: f(v) for k, v in self.data.items()})

    def reduce_mod(self, coeff):
        ops = ring_ops(coeff)
        return self.map_entries(ops.normalize)


def int_matrix(rows, cols, entries=None):
    """Spec-facing constructor for integer matrices (triplet dict or iterable)."""
    if entries is None:
        return Matrix.zero(rows, cols)
    if isinstance(entries, dict):
        return Matrix(rows, cols, entries)
    return Matrix(rows, cols, {(i, j): v for i, j, v in entries})


# -- Smith-style diagonalization ----------------------------------------------


@dataclass
class SmithDecomposition:
    """U @ M @ V = S with S diagonal; over Z the diagonal is a divisor chain."""

    U: Matrix
    V: Matrix
    S: Matrix
    Uinv: Matrix
    Vinv: Matrix
    diagonal: list
    rank: int
    coeff: Coefficients = field(default=Z)


class _Reducer:
    """Row/column reduction workspace with the four transforms tracked.

    Invariant throughout: rows == U @ M @ V, with U stored by rows, U^-1 by
    columns, V by columns and V^-1 by rows, so every elementary operation
    touches exactly one or two dicts.
    """

    def __init__(self, M, ops):
        self.m, self.n = M.rows, M.cols
        self.ops = ops
        self.rows = [dict() for _ in range(self.m)]
        self.colnz = [set() for _ in range(self.n)]
        for (i, j), v in M.data.items():
            v = ops.normalize(v)
            if v:
                self.rows[i][j] = v
                self.colnz[j].add(i)
        self.U = [{i: 1} for i in range(self.m)]       # row dicts
        self.Uinv_cols = [{i: 1} for i in range(self.m)]  # column dicts
        self.V_cols = [{j: 1} for j in range(self.n)]     # column dicts
        self.Vinv = [{j: 1} for j in range(self.n)]       # row dicts

    def _combine_dicts(self, da, db, x, y, u, v):
        """(da, db) <- (x*da + y*db, u*da + v*db)."""
        keys = set(da) | set(db)
        na, nb = {}, {}
        for k in keys:
            p, q = da.get(k, 0), db.get(k, 0)
            s = self.ops.normalize(x * p + y * q)
            t = self.ops.normalize(u * p + v * q)
            if s:
                na[k] = s
            if t:
                nb[k] = t
        return na, nb

    def _axpy_into(self, target, source, c):
        for k, v in source.items():
            s = self.ops.normalize(target.get(k, 0) + c * v)
            if s:
                target[k] = s
            else:
                target.pop(k, None)

    # -- row operations (update U rows directly, Uinv columns by the inverse) --

    def swap_rows(self, a, b):
        if a == b:
            return
        for j in self.rows[a]:
            self.colnz[j].discard(a)
        for j in self.rows[b]:
            self.colnz[j].discard(b)
        self.rows[a], self.rows[b] = self.rows[b], self.rows[a]
        for j in self.rows[a]:
            self.colnz[j].add(a)
        for j in self.rows[b]:
            self.colnz[j].add(b)
        self.U[a], self.U[b] = self.U[b], self.U[a]
        self.Uinv_cols[a], self.Uinv_cols[b] = self.Uinv_cols[b], self.Uinv_cols[a]

    def row_axpy(self, dst, src, c):
        """row[dst] += c * row[src]."""
        if not c:
            return
        row = self.rows[dst]
        for j, v in self.rows[src].items():
            s = self.ops.normalize(row.get(j, 0) + c * v)
            if s:
                row[j] = s
                self.colnz[j].add(dst)
            else:
                row.pop(j, None)
                self.colnz[j].discard(dst)
        self._axpy_into(self.U[dst], self.U[src], c)
        self._axpy_into(self.Uinv_cols[src], self.Uinv_cols[dst], -c)

    def row_combine(self, a, b, x, y, u, v):
        """rows (a,b) <- (x*ra + y*rb, u*ra + v*rb) with xv - yu = 1."""
        na, nb = self._combine_dicts(self.rows[a], self.rows[b], x, y, u, v)
        for j in set(self.rows[a]) | set(self.rows[b]) | set(na) | set(nb):
            self.colnz[j].discard(a)
            self.colnz[j].discard(b)
        self.rows[a], self.rows[b] = na, nb
        for j in na:
            self.colnz[j].add(a)
        for j in nb:
            self.colnz[j].add(b)
        self.U[a], self.U[b] = self._combine_dicts(self.U[a], self.U[b], x, y, u, v)
        # E^-1 = [[v,-y],[-u,x]]; columns of Uinv transform by right multiplication
        self.Uinv_cols[a], self.Uinv_cols[b] = self._combine_dicts(
            self.Uinv_cols[a], self.Uinv_cols[b], v, -u, -y, x)

    def scale_row(self, i, c):
        """row[i] *= c for a unit c."""
        if c == 1:
            return
        row = self.rows[i]
        for j in list(row):
            s = self.ops.normalize(c * row[j])
            if s:
                row[j] = s
            else:
                del row[j]
                self.colnz[j].discard(i)
        self.U[i] = {k: self.ops.normalize(c * v) for k, v in self.U[i].items()}
        inv = self.ops.unit_to_one(c)
        self.Uinv_cols[i] = {k: self.ops.normalize(inv * v)
                             for k, v in self.Uinv_cols[i].items()}

    # -- column operations (update V columns directly, Vinv rows by the inverse) --

    def swap_cols(self, a, b):
        if a == b:
            return
        for i in list(self.colnz[a] | self.colnz[b]):
            row = self.rows[i]
            va, vb = row.pop(a, None), row.pop(b, None)
            if vb is not None:
                row[a] = vb
            if va is not None:
                row[b] = va
        self.colnz[a], self.colnz[b] = self.colnz[b], self.colnz[a]
        self.V_cols[a], self.V_cols[b] = self.V_cols[b], self.V_cols[a]
        self.Vinv[a], self.Vinv[b] = self.Vinv[b], self.Vinv[a]

    def col_axpy(self, dst, src, c):
        """col[dst] += c * col[src]."""
        if not c:
            return
        for i in list(self.colnz[src]):
            row = self.rows[i]
            s = self.ops.normalize(row.get(dst, 0) + c * row[src])
            if s:
                row[dst] = s
                self.colnz[dst].add(i)
            else:
                row.pop(dst, None)
                self.colnz[dst].discard(i)
        self._axpy_into(self.V_cols[dst], self.V_cols[src], c)
        self._axpy_into(self.Vinv[src], self.Vinv[dst], -c)

    def col_combine(self, a, b, x, y, u, v):
        """cols (a,b) <- (x*ca + y*cb, u*ca + v*cb) with xv - yu = 1."""
        for i in list(self.colnz[a] | self.colnz[b]):
            row = self.rows[i]
            p, q = row.get(a, 0), row.get(b, 0)
            s = self.ops.normalize(x * p + y * q)
            t = self.ops.normalize(u * p + v * q)
            if s:
                row[a] = s
                self.colnz[a].add(i)
            else:
                row.pop(a, None)
                self.colnz[a].discard(i)
            if t:
                row[b] = t
                self.colnz[b].add(i)
            else:
                row.pop(b, None)
                self.colnz[b].discard(i)
        self.V_cols[a], self.V_cols[b] = self._combine_dicts(
            self.V_cols[a], self.V_cols[b], x, y, u, v)
        # F^-1 = [[v,-u],[-y,x]]; rows of Vinv transform by left multiplication
        self.Vinv[a], self.Vinv[b] = self._combine_dicts(
            self.Vinv[a], self.Vinv[b], v, -u, -y, x)


def _xgcd(a, b):
    x, nx, y, ny, g, ng = 1, 0, 0, 1, a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _select_pivot(red, k):
    best = None
    for i in range(k, red.m):
        for j, v in red.rows[i].items():
            if j < k:
                continue
            measure = (red.ops.norm(v),
                       len(red.rows[i]) + len(red.colnz[j]), i, j)
            if best is None or measure < best[0]:
                best = (measure, i, j)
    return (best[1], best[2]) if best else None


def smith_normal_form(M, coeff=Z):
    """Diagonalize M by invertible row/column transforms over coeff.

    Over Z this is the Smith normal form proper: the diagonal is positive and
    each entry divides the next.  Over Q and Z/p the diagonal is all ones
    (Gaussian elimination with the same interface).  The pivot rule is
    smallest norm first, then least fill-in, then position.
    """
    ops = ring_ops(coeff)
    red = _Reducer(M, ops)
    k = 0
    limit = min(red.m, red.n)
    while k < limit:
        pos = _select_pivot(red, k)
        if pos is None:
            break
        red.swap_rows(k, pos[0])
        red.swap_cols(k, pos[1])
        while True:
            # clear column k below the pivot, then row k; combines can refill
            # the other one, hence the inner loop
            progressed = True
            while progressed:
                progressed = False
                pivot = red.rows[k][k]
                for i in sorted(red.colnz[k]):
                    if i == k:
                        continue
                    b = red.rows[i].get(k, 0)
                    if not b:
                        continue
                    q, r = ops.divmod_(b, pivot)
                    if r == 0:
                        red.row_axpy(i, k, -q)
                    else:
                        g, x, y = _xgcd(pivot, b)
                        red.row_combine(k, i, x, y, -(b // g), pivot // g)
                        pivot = red.rows[k][k]
                        progressed = True
                pivot = red.rows[k][k]
                for j in sorted(red.rows[k]):
                    if j == k:
                        continue
                    b = red.rows[k].get(j, 0)
                    if not b:
                        continue
                    q, r = ops.divmod_(b, pivot)
                    if r == 0:
                        red.col_axpy(j, k, -q)
                    else:
                        g, x, y = _xgcd(pivot, b)
                        red.col_combine(k, j, x, y, -(b // g), pivot // g)
                        pivot = red.rows[k][k]
                        progressed = True
            if ops.is_field:
                break
            # make the pivot divide everything that is left
            pivot = red.rows[k][k]
            offender = None
            for i in range(k + 1, red.m):
                for j, v in red.rows[i].items():
                    if j > k and v % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            red.row_axpy(k, offender, 1)
        k += 1
    rank = k
    diag = []
    for i in range(rank):
        d = red.rows[i][i]
        if ops.is_field:
            red.scale_row(i, ops.unit_to_one(d))
            d = 1
        elif d < 0:
            red.scale_row(i, -1)
            d = -d
        diag.append(d)

    def from_rows(rows, nrows, ncols):
        return Matrix(nrows, ncols, {(i, j): v for i, row in enumerate(rows)
                                     for j, v in row.items()})

    def from_cols(cols, nrows, ncols):
        return Matrix(nrows, ncols, {(i, j): v for j, col in enumerate(cols)
                                     for i, v in col.items()})

    S = Matrix(red.m, red.n, {(i, i): d for i, d in enumerate(diag) if d})
    return SmithDecomposition(
        U=from_rows(red.U, red.m, red.m),
        V=from_cols(red.V_cols, red.n, red.n),
        S=S,
        Uinv=from_cols(red.Uinv_cols, red.m, red.m),
        Vinv=from_rows(red.Vinv, red.n, red.n),
        diagonal=diag,
        rank=rank,
        coeff=coeff,
    )


# -- derived operations --------------------------------------------------------


def rank(M, coeff=Z):
    return smith_normal_form(M, coeff).rank


def kernel_basis(M, coeff=Z):
    """Columns spanning ker(M) over coeff; over Z the lattice is saturated."""
    dec = smith_normal_form(M, coeff)
    cols = list(range(dec.rank, M.cols))
    return dec.V.take_columns(cols)


def solve(M, v, coeff=Z):
    """Some x with M @ x = v over coeff, or None.

    v is a dense list of length M.rows; the result is a dense list of length
    M.cols.  Over Z the solution is integral or None.
    """
    dec = smith_normal_form(M, coeff)
    ops = ring_ops(coeff)
    y = dec.U.apply([ops.normalize(c) for c in v])
    x = [0] * M.cols
    for i in range(M.rows):
        yi = ops.normalize(y[i])
        if i >= dec.rank:
            if yi:
                return None
            continue
        d = dec.diagonal[i]
        q, r = ops.divmod_(yi, d)
        if r != 0:
            return None
        x[i] = q
    return [ops.normalize(c) for c in dec.V.apply(x)]


def solve_membership(M, v, coeff=Z):
    """Spec alias for solve(): membership of v in the column span of M."""
    return solve(M, v, coeff)


def in_column_span(M, v, coeff=Z):
    return solve(M, v, coeff) is not None


def same_column_span(A, B, coeff=Z):
    """Do A and B generate the same submodule of the ambient module?"""
    return (all(in_column_span(A, B.column_vector(j), coeff) for j in range(B.cols))
            and all(in_column_span(B, A.column_vector(j), coeff) for j in range(A.cols)))


class Subquotient:
    """A/B for lattices B <= A <= ambient^rank, with generator bookkeeping.

    Generators are ordered: torsion generators first (invariant factors
    ascending), then free generators.  ``lift`` expresses them as ambient
    vectors; ``coords`` writes any ambient element of A in these generators,
    reducing torsion coordinates into [0, d).
    """

    def __init__(self, ambient_rank, a_gens, b_gens, coeff=Z):
        self.ambient_rank = ambient_rank
        self.coeff = coeff
        ops = ring_ops(coeff)
        if a_gens.rows != ambient_rank or b_gens.rows != ambient_rank:
            raise InvalidParameter("generator matrices must have ambient_rank rows")
        a_gens = a_gens.reduce_mod(coeff)
        b_gens = b_gens.reduce_mod(coeff)
        dec_a = smith_normal_form(a_gens, coeff)
        r = dec_a.rank
        self._rank_a = r
        self._U_a = dec_a.U
        self._d_a = dec_a.diagonal
        # basis of the lattice A: columns d_i * Uinv[:, i]
        self._P = dec_a.Uinv.take_columns(list(range(r))) @ Matrix.diagonal(
            r, r, dec_a.diagonal)
        X = self._express_in_a(b_gens, NotASubgroup)
        dec_x = smith_normal_form(X, coeff)
        factors = dec_x.diagonal + [0] * (r - dec_x.rank)
        self._U_x = dec_x.U
        self._gen_positions = []   # positions in the SNF basis of Z^r
        torsion = []
        for i, d in enumerate(factors):
            if d == 0:
                continue
            if d != 1:
                self._gen_positions.append(i)
                torsion.append(d)
        free_positions = list(range(dec_x.rank, r))
        self._gen_positions.extend(free_positions)
        self._factors = torsion + [0] * len(free_positions)
        self.group = AbelianGroupPresentation(len(free_positions), tuple(torsion))
        G = dec_x.Uinv.take_columns(self._gen_positions)
        self.lift = (self._P @ G).reduce_mod(coeff)
        self._ops = ops

    def _express_in_a(self, cols_matrix, error_cls):
        """Write columns in the lattice basis P; raises error_cls if not in A."""
        ops = ring_ops(self.coeff)
        y = (self._U_a @ cols_matrix).reduce_mod(self.coeff)
        data = {}
        for (i, j), v in y.data.items():
            if i >= self._rank_a:
                raise error_cls("vector outside the subgroup spanned by A_gens")
            q, r = ops.divmod_(v, self._d_a[i])
            if r != 0:
                raise error_cls("vector outside the subgroup spanned by A_gens")
            if q:
                data[(i, j)] = q
        return Matrix(self._rank_a, cols_matrix.cols, data)

    @property
    def n_generators(self):
        return len(self._gen_positions)

    def coords(self, vector):
        """Coordinates of an ambient vector (dense list) in the generators."""
        col = Matrix.column([self._ops.normalize(c) for c in vector])
        y = self._express_in_a(col, NotASubgroup)
        w = self._U_x @ y
        out = []
        for pos, d in zip(self._gen_positions, self._factors):
            c = self._ops.normalize(w[(pos, 0)])
            if d:
                c = c % d
            out.append(c)
        return out

    def contains(self, vector):
        try:
            self.coords(vector)
            return True
        except NotASubgroup:
            return False

    def lift_of(self, gen_index):
        return self.lift.column_vector(gen_index)


def subquotient(ambient_rank, a_gens, b_gens, coeff=Z):
    """Present (column span of a_gens)/(column span of b_gens); see Subquotient."""
    return Subquotient(ambient_rank, a_gens, b_gens, coeff)


def homology_of_pair(d_out, d_in, coeff=Z):
    """ker(d_out)/im(d_in) as a group presentation.

    d_out consumes the degree in question, d_in feeds it; their composite must
    vanish (NotAComplex otherwise).
    """
    if d_out.cols != d_in.rows:
        raise InvalidParameter("d_out.cols must equal d_in.rows")
    if not (d_out @ d_in).reduce_mod(coeff).is_zero:
        raise NotAComplex("d_out @ d_in != 0")
    kernel = kernel_basis(d_out.reduce_mod(coeff), coeff)
    return Subquotient(d_out.cols, kernel, d_in, coeff).group


def homology_subquotient(d_out, d_in, coeff=Z):
    """Like homology_of_pair but keeping generators, lifts and coords."""
    if not (d_out @ d_in).reduce_mod(coeff).is_zero:
        raise NotAComplex("d_out @ d_in != 0")
    kernel = kernel_basis(d_out.reduce_mod(coeff), coeff)
    return Subquotient(d_out.cols, kernel, d_in, coeff)


# -- maps between presented groups ----------------------------------------------


def presentation_relations(pres):
    """Relation matrix of a presentation in its generator order (torsion first)."""
    n = len(pres.torsion) + pres.free_rank
    return Matrix(n, len(pres.torsion),
                  {(i, i): d for i, d in enumerate(pres.torsion)})


def presented_cokernel(matrix, target_pres, coeff=Z):
    """Cokernel of a map into a presented group, as a presentation."""
    rels = presentation_relations(target_pres)
    n = len(target_pres.torsion) + target_pres.free_rank
    return Subquotient(n, Matrix.identity(n), matrix.hstack(rels), coeff).group


def presented_kernel(matrix, source_pres, target_pres, coeff=Z):
    """Kernel of a map of presented groups, as a presentation."""
    n_src = len(source_pres.torsion) + source_pres.free_rank
    rels_src = presentation_relations(source_pres)
    rels_tgt = presentation_relations(target_pres)
    stacked = matrix.hstack(-rels_tgt)
    ker = kernel_basis(stacked, coeff)
    projected = ker.take_rows(list(range(n_src)))
    return Subquotient(n_src, projected.hstack(rels_src), rels_src, coeff).group


def presented_map_is_iso(matrix, source_pres, target_pres, coeff=Z):
    """Is the generator-matrix map between two presented groups an isomorphism?"""
    return (presented_kernel(matrix, source_pres, target_pres, coeff).is_trivial
            and presented_cokernel(matrix, target_pres, coeff).is_trivial)
