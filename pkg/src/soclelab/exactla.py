"""Exact matrices and subspaces over F_q.

Everything is canonical: a subspace is stored as the reduced row echelon
form of any spanning set, so equality, deduplication and deterministic
search results come for free.  The cost is re-echelonization on each
operation, which is fine at desk scale (dimensions in the tens).

Two row-reduction paths live behind the same interface: a generic one that
works over any F_q through the field tables, and a GF(2) path that packs
rows into machine integers and eliminates with XOR.  RREF is unique, so
both produce identical output; tests cross-check them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce

from .errors import InputError
from .gf import Field

Vec = tuple  # tuple of element codes


# ---------------------------------------------------------------------------
# low-level row reduction
# ---------------------------------------------------------------------------

def _rref_generic(rows: list[list[int]], ncols: int, field: Field) -> tuple[list[list[int]], list[int]]:
    rows = [list(r) for r in rows]
    nrows = len(rows)
    sub, mul, inv = field.sub, field.mul, field.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        head = rows[r][c]
        if head != 1:
            f = inv(head)
            rows[r] = [mul(f, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[: len(pivots)] + [row for row in rows[len(pivots):] if any(row)], pivots


def _pack_gf2(row) -> int:
    word = 0
    for j, x in enumerate(row):
        if x:
            word |= 1 << j
    return word


def _unpack_gf2(word: int, ncols: int) -> list[int]:
    return [(word >> j) & 1 for j in range(ncols)]


def _rref_gf2(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    packed = [_pack_gf2(r) for r in rows]
    nrows = len(packed)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        piv = None
        for i in range(r, nrows):
            if packed[i] & bit:
                piv = i
                break
        if piv is None:
            continue
        packed[r], packed[piv] = packed[piv], packed[r]
        prow = packed[r]
        for i in range(nrows):
            if i != r and packed[i] & bit:
                packed[i] ^= prow
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [_unpack_gf2(w, ncols) for w in packed[: len(pivots)]], pivots


def rref_rows(rows, ncols: int, field: Field, force_generic: bool = False) -> tuple[list[list[int]], list[int]]:
    """RREF of a list of row vectors; returns (nonzero rows, pivot columns)."""
    if field.is_gf2 and not force_generic:
        return _rref_gf2([list(r) for r in rows], ncols)
    reduced, pivots = _rref_generic(rows, ncols, field)
    return reduced[: len(pivots)], pivots


# ---------------------------------------------------------------------------
# incremental row space (membership and rank without full re-reduction)
# ---------------------------------------------------------------------------

class RowBasis:
    """Mutable accumulator for a row space, kept in reduced echelon form.

    add() returns True when the vector enlarged the space.  snapshot() emits
    the canonical RREF rows sorted by pivot column.
    """

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self._by_pivot: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self._by_pivot)

    def reduce(self, vec) -> list[int]:
        field = self.field
        sub, mul = field.sub, field.mul
        v = list(vec)
        for c, row in self._by_pivot.items():
            f = v[c]
            if f:
                v = [sub(x, mul(f, y)) for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        pivot = next((c for c, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        field = self.field
        head = v[pivot]
        if head != 1:
            f = field.inv(head)
            v = [field.mul(f, x) for x in v]
        sub, mul = field.sub, field.mul
        for c, row in self._by_pivot.items():
            f = row[pivot]
            if f:
                self._by_pivot[c] = [sub(x, mul(f, y)) for x, y in zip(row, v)]
        self._by_pivot[pivot] = v
        return True

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def snapshot(self) -> list[tuple[int, ...]]:
        return [tuple(self._by_pivot[c]) for c in sorted(self._by_pivot)]


class SpanTracker:
    """Row space that can express members as combinations of the vectors added.

    Rows are kept reduced together with the coefficient record of how each
    reduced row was built from the inputs; express() then recovers, for any
    member of the span, coefficients over the original input vectors.
    """

    def __init__(self, field: Field, ncols: int, n_inputs: int):
        self.field = field
        self.ncols = ncols
        self.n_inputs = n_inputs
        self._added = 0
        self._rows: dict[int, tuple[list[int], list[int]]] = {}  # pivot -> (row, combo)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec, combo):
        field = self.field
        sub, mul = field.sub, field.mul
        v, w = list(vec), list(combo)
        for c, (row, rcombo) in self._rows.items():
            f = v[c]
            if f:
                v = [sub(x, mul(f, y)) for x, y in zip(v, row)]
                w = [sub(x, mul(f, y)) for x, y in zip(w, rcombo)]
        return v, w

    def add(self, vec) -> bool:
        if self._added >= self.n_inputs:
            raise InputError("SpanTracker capacity exceeded")
        combo = [0] * self.n_inputs
        combo[self._added] = 1
        self._added += 1
        v, w = self._reduce(vec, combo)
        pivot = next((c for c, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        field = self.field
        head = v[pivot]
        if head != 1:
            f = field.inv(head)
            v = [field.mul(f, x) for x in v]
            w = [field.mul(f, x) for x in w]
        sub, mul = field.sub, field.mul
        for c, (row, rcombo) in self._rows.items():
            f = row[pivot]
            if f:
                self._rows[c] = (
                    [sub(x, mul(f, y)) for x, y in zip(row, v)],
                    [sub(x, mul(f, y)) for x, y in zip(rcombo, w)],
                )
        self._rows[pivot] = (v, w)
        return True

    def express(self, vec):
        """Coefficients over the added vectors, or None when not in the span."""
        zero_combo = [0] * self.n_inputs
        v, w = self._reduce(vec, zero_combo)
        if any(v):
            return None
        return tuple(self.field.neg(x) for x in w)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat:
    """Immutable row-major matrix over a fixed finite field."""

    field: Field
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError(f"matrix literal has {len(self.entries)} entries, needs {self.rows * self.cols}")
        if any(not (0 <= x < self.field.q) for x in self.entries):
            raise InputError("matrix entry out of field range")

    # construction ----------------------------------------------------------
    @staticmethod
    def from_rows(field: Field, rows) -> "Mat":
        rows = [tuple(int(x) % field.q if isinstance(x, int) else x for x in r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise InputError("ragged matrix literal")
        return Mat(field, len(rows), ncols, tuple(x for r in rows for x in r))

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Mat":
        return Mat(field, rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        return Mat(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def unit(field: Field, rows: int, cols: int, i: int, j: int) -> "Mat":
        return Mat(field, rows, cols, tuple(1 if (r, c) == (i, j) else 0 for r in range(rows) for c in range(cols)))

    # access ------------------------------------------------------------------
    def __getitem__(self, rc: tuple[int, int]) -> int:
        i, j = rc
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vec:
        return self.entries[i * self.cols: (i + 1) * self.cols]

    def col(self, j: int) -> Vec:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self) -> list[Vec]:
        return [self.row(i) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    # arithmetic ----------------------------------------------------------------
    def _same_shape(self, other: "Mat"):
        if self.field != other.field:
            raise InputError("mixed fields")
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InputError("shape mismatch")

    def add(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        add = self.field.add
        return Mat(self.field, self.rows, self.cols, tuple(add(a, b) for a, b in zip(self.entries, other.entries)))

    def sub(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        sub = self.field.sub
        return Mat(self.field, self.rows, self.cols, tuple(sub(a, b) for a, b in zip(self.entries, other.entries)))

    def neg(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, self.rows, self.cols, tuple(neg(a) for a in self.entries))

    def scale(self, c: int) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, self.rows, self.cols, tuple(mul(c, a) for a in self.entries))

    def mul(self, other: "Mat") -> "Mat":
        if self.field != other.field:
            raise InputError("mixed fields")
        if self.cols != other.rows:
            raise InputError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        field = self.field
        add, mul = field.add, field.mul
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k: (i + 1) * k]
            orow = out[i * m: (i + 1) * m]
            for t in range(k):
                f = arow[t]
                if f:
                    brow = b[t * m: (t + 1) * m]
                    orow = [add(x, mul(f, y)) for x, y in zip(orow, brow)]
            out[i * m: (i + 1) * m] = orow
        return Mat(field, n, m, tuple(out))

    def apply(self, vec) -> Vec:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise InputError("vector length mismatch")
        field = self.field
        add, mul = field.add, field.mul
        out = []
        for i in range(self.rows):
            acc = 0
            row = self.row(i)
            for x, v in zip(row, vec):
                if x and v:
                    acc = add(acc, mul(x, v))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Mat":
        return Mat(self.field, self.cols, self.rows,
                   tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    def flatten(self) -> Vec:
        return self.entries

    # reduction ----------------------------------------------------------------
    def rref(self, force_generic: bool = False) -> tuple["Mat", int]:
        """Reduced row echelon form (zero rows dropped to the bottom) and rank."""
        reduced, pivots = rref_rows(self.row_list(), self.cols, self.field, force_generic)
        rank = len(pivots)
        rows = reduced + [[0] * self.cols] * (self.rows - rank)
        return Mat.from_rows(self.field, rows) if rows else Mat.zero(self.field, 0, self.cols), rank

    def rank(self) -> int:
        return len(rref_rows(self.row_list(), self.cols, self.field)[1])

    # JSON ----------------------------------------------------------------------
    def to_json(self) -> dict:
        e = self.field.e
        def enc(x):
            return x if e == 1 else list(self.field.coeffs(x))
        return {
            "field": self.field.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[enc(self[i, j]) for j in range(self.cols)] for i in range(self.rows)],
        }

    @staticmethod
    def from_json(data: dict, field: Field | None = None) -> "Mat":
        if field is None:
            field = Field.from_json(data.get("field", {}))
        def dec(x):
            if isinstance(x, list):
                return field.from_coeffs(x)
            return int(x) % field.q
        try:
            rows = [[dec(x) for x in row] for row in data["entries"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad matrix JSON: {exc}")
        mat = Mat.from_rows(field, rows) if rows else Mat.zero(field, 0, int(data.get("cols", 0)))
        if mat.rows != int(data["rows"]) or mat.cols != int(data["cols"]):
            raise InputError("matrix JSON shape disagrees with entries")
        return mat


def mat_vec(mats: list[Mat], coords) -> Mat:
    """Linear combination of matrices with the given coefficients."""
    if not mats:
        raise InputError("empty combination")
    field = mats[0].field
    out = Mat.zero(field, mats[0].rows, mats[0].cols)
    for c, m in zip(coords, mats):
        if c:
            out = out.add(m.scale(c))
    return out


def vec_add(field: Field, a, b) -> Vec:
    return tuple(field.add(x, y) for x, y in zip(a, b))


def vec_scale(field: Field, c: int, a) -> Vec:
    return tuple(field.mul(c, x) for x in a)


def vec_combo(field: Field, vectors, coeffs) -> Vec:
    out = (0,) * len(vectors[0])
    for c, v in zip(coeffs, vectors):
        if c:
            out = vec_add(field, out, vec_scale(field, c, v))
    return out


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n in canonical form: basis rows in RREF, no zero rows.

    Two equal subspaces always have identical basis matrices, so dataclass
    equality and hashing are semantic.
    """

    field: Field
    ambient_dim: int
    basis_rows: tuple[Vec, ...]
    pivots: tuple[int, ...]

    @staticmethod
    def from_vectors(field: Field, ambient_dim: int, vectors) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise InputError("vector length disagrees with ambient dimension")
        reduced, pivots = rref_rows(vectors, ambient_dim, field)
        return Subspace(field, ambient_dim, tuple(tuple(r) for r in reduced), tuple(pivots))

    @staticmethod
    def zero(field: Field, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, (), ())

    @staticmethod
    def full(field: Field, ambient_dim: int) -> "Subspace":
        rows = tuple(tuple(1 if i == j else 0 for j in range(ambient_dim)) for i in range(ambient_dim))
        return Subspace(field, ambient_dim, rows, tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def basis_mat(self) -> Mat:
        if not self.basis_rows:
            return Mat.zero(self.field, 0, self.ambient_dim)
        return Mat.from_rows(self.field, self.basis_rows)

    def reduce(self, vec) -> Vec:
        field = self.field
        sub, mul = field.sub, field.mul
        v = list(vec)
        for prow, c in zip(self.basis_rows, self.pivots):
            f = v[c]
            if f:
                v = [sub(x, mul(f, y)) for x, y in zip(v, prow)]
        return tuple(v)

    def contains_vector(self, vec) -> bool:
        return not any(self.reduce(vec))

    def coordinates_of(self, vec) -> Vec:
        """Coefficients of vec in the canonical basis; errors if not a member."""
        coords = tuple(vec[c] for c in self.pivots)
        if not self.contains_vector(vec):
            raise InputError("vector outside subspace")
        return coords

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(v) for v in other.basis_rows)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.field, self.ambient_dim, list(self.basis_rows) + list(other.basis_rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        ra, rb = self.dim, other.dim
        if ra == 0 or rb == 0:
            return Subspace.zero(self.field, self.ambient_dim)
        field = self.field
        # columns: basis of self, then negated basis of other; kernel gives combos
        cols = [list(v) for v in self.basis_rows] + [[field.neg(x) for x in v] for v in other.basis_rows]
        m = Mat.from_rows(field, [[cols[k][i] for k in range(ra + rb)] for i in range(self.ambient_dim)])
        combos = kernel(m)
        vectors = [vec_combo(field, list(self.basis_rows), combo[:ra]) for combo in combos.basis_rows]
        return Subspace.from_vectors(field, self.ambient_dim, vectors)

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field or self.ambient_dim != other.ambient_dim:
            raise InputError("ambient mismatch")

    def sort_key(self):
        return (self.dim, self.pivots, self.basis_rows)

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "ambient_dim": self.ambient_dim, "basis": self.basis_mat().to_json()}

    @staticmethod
    def from_json(data: dict) -> "Subspace":
        field = Field.from_json(data["field"])
        basis = Mat.from_json(data["basis"], field)
        return Subspace.from_vectors(field, int(data["ambient_dim"]), basis.row_list())


def subspace_ops(a: Subspace, b: Subspace, op: str):
    """Dispatch helper mirroring the sum/intersect/contains/equals contract."""
    if op == "sum":
        return a.sum(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "contains":
        a._check_compatible(b)
        return a.contains(b)
    if op == "equals":
        a._check_compatible(b)
        return a == b
    raise InputError(f"unknown subspace op {op!r}")


def kernel(m: Mat) -> Subspace:
    """Right null space {v : m v = 0}, canonical."""
    reduced, pivots = rref_rows(m.row_list(), m.cols, m.field)
    field = m.field
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = field.neg(reduced[i][f])
        basis.append(v)
    return Subspace.from_vectors(field, m.cols, basis)


def image(m: Mat) -> Subspace:
    """Column space of m, as a subspace of F_q^rows."""
    return Subspace.from_vectors(m.field, m.rows, m.transpose().row_list())


def solve(m: Mat, target) -> Vec | None:
    """One solution x of m x = target, or None when inconsistent."""
    field = m.field
    aug_rows = [list(m.row(i)) + [target[i]] for i in range(m.rows)]
    reduced, pivots = rref_rows(aug_rows, m.cols + 1, field)
    if m.cols in pivots:
        return None
    x = [0] * m.cols
    for row, p in zip(reduced, pivots):
        x[p] = row[m.cols]
    return tuple(x)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def num_projective_points(dim: int, q: int) -> int:
    return (q**dim - 1) // (q - 1)


def enum_coeff_points(field: Field, dim: int):
    """Canonical representatives of the 1-dim subspaces of F_q^dim.

    Yields vectors whose first nonzero coordinate is 1; one per projective
    point, in a fixed order (leading position ascending, tail in code order).
    """
    for lead in range(dim):
        tail_len = dim - lead - 1
        for tail in itertools.product(field.elements(), repeat=tail_len):
            yield (0,) * lead + (1,) + tail


def enum_points(s: Subspace):
    """Projective-point representatives of a subspace, in its ambient space."""
    if s.dim == 0:
        raise InputError("zero subspace has no projective points")
    field = s.field
    basis = list(s.basis_rows)
    for coeffs in enum_coeff_points(field, s.dim):
        yield vec_combo(field, basis, coeffs)


def enum_hyperplanes(s: Subspace):
    """All codimension-1 subspaces of s, canonical, in a fixed order."""
    if s.dim == 0:
        raise InputError("zero subspace has no hyperplanes")
    field = s.field
    basis = list(s.basis_rows)
    d = s.dim
    for phi in enum_coeff_points(field, d):
        # coefficient vectors orthogonal to phi, mapped through the basis
        phi_mat = Mat.from_rows(field, [list(phi)])
        coeff_kernel = kernel(phi_mat)
        vectors = [vec_combo(field, basis, c) for c in coeff_kernel.basis_rows]
        yield Subspace.from_vectors(field, s.ambient_dim, vectors)


def enum_subspaces(field: Field, n: int, dim: int):
    """All dim-dimensional subspaces of F_q^n by direct RREF enumeration."""
    if dim == 0:
        yield Subspace.zero(field, n)
        return
    for pivots in itertools.combinations(range(n), dim):
        pivot_set = set(pivots)
        free_positions = [
            (i, j)
            for i in range(dim)
            for j in range(pivots[i] + 1, n)
            if j not in pivot_set
        ]
        for values in itertools.product(field.elements(), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(dim)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            yield Subspace(field, n, tuple(tuple(r) for r in rows), tuple(pivots))


def all_subspaces(field: Field, n: int, dims=None):
    """Every subspace of F_q^n (optionally restricted to given dimensions)."""
    for d in dims if dims is not None else range(n + 1):
        yield from enum_subspaces(field, n, d)


def enum_vectors(field: Field, dim: int):
    """All of F_q^dim in code order (including zero)."""
    return itertools.product(field.elements(), repeat=dim)
