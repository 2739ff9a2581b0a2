"""Rank-one coverage of tensor subspaces.

A TensorSubspace is a subspace A of the m*n matrices over F_q, thought of
as a subspace of (row space) tensor (column space).  The two coverage
conditions ask that every projective point of F_q^m occurs as the row
factor of a nonzero rank-one element of A, and dually for column factors.
When both hold, dim(A) >= m + n - 1; a verified instance violating that
bound is reported as a theorem violation (a bug), never as a result.

Both conditions quantify over projective points rather than all nonzero
vectors: rank-one membership is scalar-homogeneous, so nothing is lost and
the work drops by a factor of (q - 1).  Minimality is decided on hyperplanes
only, which suffices because the conditions are upward monotone (tested).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

from .budget import Budget, default_budget
from .errors import InputError, PreconditionError, TheoremViolation
from .exactla import (
    Mat,
    RowBasis,
    Subspace,
    enum_coeff_points,
    enum_subspaces,
    gaussian_binomial,
    kernel,
    mat_vec,
    vec_combo,
)
from .gf import Field


@dataclass(frozen=True)
class TensorSubspace:
    """Subspace of the m*n matrices over F_q, given by an independent basis."""

    field: Field
    m: int
    n: int
    basis: tuple[Mat, ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InputError("tensor factors must be nonzero")
        for mat in self.basis:
            if mat.field != self.field or (mat.rows, mat.cols) != (self.m, self.n):
                raise InputError("basis matrix shape or field mismatch")
        if self.flat().dim != len(self.basis):
            raise InputError("basis matrices are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def flat(self) -> Subspace:
        """The same space as a canonical subspace of F_q^(m*n), row-major."""
        return Subspace.from_vectors(self.field, self.m * self.n, [mat.flatten() for mat in self.basis])

    @staticmethod
    def from_flat(field: Field, m: int, n: int, flat: Subspace) -> "TensorSubspace":
        mats = tuple(Mat(field, m, n, row) for row in flat.basis_rows)
        return TensorSubspace(field, m, n, mats)

    @staticmethod
    def full(field: Field, m: int, n: int) -> "TensorSubspace":
        return TensorSubspace.from_flat(field, m, n, Subspace.full(field, m * n))

    def contains_matrix(self, mat: Mat) -> bool:
        return self.flat().contains_vector(mat.flatten())

    def transpose(self) -> "TensorSubspace":
        return TensorSubspace(self.field, self.n, self.m, tuple(mat.transpose() for mat in self.basis))

    def sort_key(self):
        return self.flat().sort_key()

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "m": self.m,
            "n": self.n,
            "basis": [mat.to_json() for mat in self.basis],
        }

    @staticmethod
    def from_json(data: dict) -> "TensorSubspace":
        field = Field.from_json(data["field"])
        basis = tuple(Mat.from_json(mj, field) for mj in data["basis"])
        return TensorSubspace(field, int(data["m"]), int(data["n"]), basis)


def rank_one(field: Field, b, c) -> Mat:
    """The matrix b (x) c with entries b_i * c_j."""
    mul = field.mul
    return Mat(field, len(b), len(c), tuple(mul(x, y) for x in b for y in c))


# ---------------------------------------------------------------------------
# the coverage conditions
# ---------------------------------------------------------------------------

def _partner_space(flat: Subspace, b, n: int):
    """Basis of {c : b (x) c lies in the flat space}, given a row factor b."""
    field = flat.field
    mul = field.mul
    residuals = []
    for j in range(n):
        v = [0] * (len(b) * n)
        for i, bi in enumerate(b):
            if bi:
                v[i * n + j] = bi
        residuals.append(flat.reduce(v))
    # c must combine the residual columns to zero
    mat = Mat.from_rows(field, [[residuals[j][k] for j in range(n)] for k in range(len(b) * n)])
    return kernel(mat)


def _covers_rows_flat(flat: Subspace, m: int, n: int) -> bool:
    field = flat.field
    for b in enum_coeff_points(field, m):
        if _partner_space(flat, b, n).dim == 0:
            return False
    return True


def _transpose_flat(flat: Subspace, m: int, n: int) -> Subspace:
    # position (j, i) of the transposed n x m matrix reads entry (i, j)
    perm = [i * n + j for j in range(n) for i in range(m)]
    rows = [tuple(row[k] for k in perm) for row in flat.basis_rows]
    return Subspace.from_vectors(flat.field, m * n, rows)


def _covers_cols_flat(flat: Subspace, m: int, n: int) -> bool:
    return _covers_rows_flat(_transpose_flat(flat, m, n), n, m)


def _both_conditions_flat(flat: Subspace, m: int, n: int) -> bool:
    return _covers_rows_flat(flat, m, n) and _covers_cols_flat(flat, m, n)


@dataclass
class CoverageSide:
    holds: bool
    witnesses: list  # (point, partner) pairs for covered points
    failing: tuple | None  # first uncovered projective point, if any

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "witnesses": [[list(b), list(c)] for b, c in self.witnesses],
            "failing": list(self.failing) if self.failing is not None else None,
        }


def check_cond_b(a: TensorSubspace) -> CoverageSide:
    """Row coverage: every projective point of F_q^m is a row factor in A.

    Witnesses are re-verified by membership before being reported.
    """
    flat = a.flat()
    witnesses = []
    for b in enum_coeff_points(a.field, a.m):
        partner = _partner_space(flat, b, a.n)
        if partner.dim == 0:
            return CoverageSide(False, witnesses, b)
        c = partner.basis_rows[0]
        if not a.contains_matrix(rank_one(a.field, b, c)):
            raise TheoremViolation("coverage witness failed membership re-check")
        witnesses.append((b, c))
    return CoverageSide(True, witnesses, None)


def check_cond_c(a: TensorSubspace) -> CoverageSide:
    """Column coverage, computed as row coverage of the transposed space."""
    side = check_cond_b(a.transpose())
    return CoverageSide(side.holds, [(b, c) for (c, b) in side.witnesses], side.failing)


@dataclass
class CoverageReport:
    m: int
    n: int
    dim_A: int
    cond_b: CoverageSide
    cond_c: CoverageSide
    bound_holds: bool
    minimal: bool | None = None
    violating_hyperplane: TensorSubspace | None = None

    @property
    def both_hold(self) -> bool:
        return self.cond_b.holds and self.cond_c.holds

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "n": self.n,
            "dim_A": self.dim_A,
            "cond_b": self.cond_b.to_json(),
            "cond_c": self.cond_c.to_json(),
            "bound": {"lower": self.m + self.n - 1, "holds": self.bound_holds},
        }
        if self.minimal is not None:
            out["minimal"] = self.minimal
            if self.violating_hyperplane is not None:
                out["violating_hyperplane"] = self.violating_hyperplane.to_json()
        return out


def check_bound(a: TensorSubspace, check_minimality: bool = False) -> CoverageReport:
    """Run both coverage conditions and compare dim(A) with m + n - 1.

    A verified instance where both conditions hold but the bound fails is an
    implementation bug by definition and raises TheoremViolation.
    """
    cond_b = check_cond_b(a)
    cond_c = check_cond_c(a)
    bound_holds = a.dim >= a.m + a.n - 1
    report = CoverageReport(a.m, a.n, a.dim, cond_b, cond_c, bound_holds)
    if report.both_hold and not bound_holds:
        raise TheoremViolation(
            f"coverage conditions hold but dim {a.dim} < {a.m}+{a.n}-1 for m={a.m}, n={a.n}, q={a.field.q}"
        )
    if check_minimality and report.both_hold:
        report.minimal, report.violating_hyperplane = check_minimal(a)
    return report


def check_minimal(a: TensorSubspace) -> tuple[bool, TensorSubspace | None]:
    """True when no hyperplane of A satisfies both coverage conditions.

    Hyperplanes suffice: the conditions are upward monotone (if a subspace
    satisfies them, so does everything between it and A), so any satisfying
    proper subspace extends to a satisfying hyperplane.
    """
    if not (check_cond_b(a).holds and check_cond_c(a).holds):
        raise PreconditionError("minimality is only defined for spaces satisfying both coverage conditions")
    field = a.field
    d = a.dim
    basis = list(a.basis)
    for phi in enum_coeff_points(field, d):
        coeff_kernel = kernel(Mat.from_rows(field, [list(phi)]))
        sub_basis = tuple(mat_vec(basis, coeffs) for coeffs in coeff_kernel.basis_rows)
        candidate = TensorSubspace(field, a.m, a.n, sub_basis)
        flat = candidate.flat()
        if _both_conditions_flat(flat, a.m, a.n):
            return False, candidate
    return True, None


# ---------------------------------------------------------------------------
# exhaustive search oracle
# ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    minimal: list[TensorSubspace]
    complete: bool
    examined: int

    def to_json(self) -> dict:
        return {
            "complete": self.complete,
            "examined": self.examined,
            "minimal": [t.to_json() for t in self.minimal],
        }


def _scan_dimension(field: Field, m: int, n: int, dim: int, cap: int) -> tuple[list[Subspace], int, bool]:
    """Scan all dim-dimensional subspaces; returns (satisfiers, examined, complete)."""
    found = []
    examined = 0
    for flat in enum_subspaces(field, m * n, dim):
        if examined >= cap:
            return found, examined, False
        examined += 1
        if _both_conditions_flat(flat, m, n):
            found.append(flat)
    return found, examined, True


def _scan_pivot_shard(args) -> tuple[list[tuple], int]:
    """Worker for parallel search: one pivot pattern of one dimension."""
    field_json, m, n, dim, pivots = args
    field = Field.from_json(field_json)
    mn = m * n
    pivot_set = set(pivots)
    free_positions = [
        (i, j) for i in range(dim) for j in range(pivots[i] + 1, mn) if j not in pivot_set
    ]
    found = []
    examined = 0
    for values in itertools.product(field.elements(), repeat=len(free_positions)):
        rows = [[0] * mn for _ in range(dim)]
        for i, p in enumerate(pivots):
            rows[i][p] = 1
        for (i, j), v in zip(free_positions, values):
            rows[i][j] = v
        flat = Subspace(field, mn, tuple(tuple(r) for r in rows), tuple(pivots))
        examined += 1
        if _both_conditions_flat(flat, m, n):
            found.append(flat.basis_rows)
    return found, examined


def search_minimal(
    m: int,
    n: int,
    field: Field,
    budget: Budget | None = None,
    threads: int = 1,
    parallel_threshold: int = 512,
) -> SearchResult:
    """Exhaustively enumerate subspaces of the m*n matrices, in increasing
    dimension, and return every one that satisfies both coverage conditions
    and has no satisfying hyperplane.

    Dimensions are scanned low to high, and a satisfier is minimal exactly
    when none of its hyperplanes satisfies both conditions (upward
    monotonicity).  The budget caps the number of subspaces examined; on
    exhaustion the partial result is flagged incomplete.
    """
    budget = budget or default_budget()
    mn = m * n
    cap = budget.max_enumeration
    examined = 0
    minimal: list[TensorSubspace] = []
    complete = True
    for dim in range(0, mn + 1):
        remaining = cap - examined
        if remaining <= 0:
            complete = False
            break
        count_here = gaussian_binomial(mn, dim, field.q)
        if threads > 1 and count_here > parallel_threshold:
            satisfiers, scanned, done = _scan_dimension_parallel(field, m, n, dim, remaining, threads)
        else:
            satisfiers, scanned, done = _scan_dimension(field, m, n, dim, remaining)
        examined += scanned
        if not done:
            complete = False
        for flat in satisfiers:
            ts = TensorSubspace.from_flat(field, m, n, flat)
            is_min, _ = check_minimal(ts)
            if is_min:
                minimal.append(ts)
        if not complete:
            break
    minimal.sort(key=lambda t: t.sort_key())
    return SearchResult(minimal, complete, examined)


def _scan_dimension_parallel(field: Field, m: int, n: int, dim: int, cap: int, threads: int):
    mn = m * n
    shards = [
        (field.to_json(), m, n, dim, pivots)
        for pivots in itertools.combinations(range(mn), dim)
    ]
    found: list[Subspace] = []
    examined = 0
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for rows_list, scanned in pool.map(_scan_pivot_shard, shards):
            examined += scanned
            for rows in rows_list:
                found.append(Subspace.from_vectors(field, mn, rows))
    found.sort(key=lambda s: s.sort_key())
    if examined > cap:
        # parallel scan does not interleave with the cap; report honest overrun
        return found, examined, False
    return found, examined, True


# ---------------------------------------------------------------------------
# conversion to the bilinear-system view
# ---------------------------------------------------------------------------

def to_bilinear(a: TensorSubspace):
    """Reinterpret A as a system of linear maps F_q^m -> F_q^n over trivial
    block structure (S = T = F_q acting by scalars).

    Each basis matrix t becomes the map b |-> t^T b, so that a rank-one
    element b (x) c acts with kernel the hyperplane orthogonal to b and image
    spanned by c.  Under this dualization row coverage of A becomes the
    maximal-submodule annihilation condition of the system and column
    coverage becomes the simple-image condition (a tested invariant).
    """
    from .strongness import BilinearSystem, BlockSpec

    maps = tuple(mat.transpose() for mat in a.basis)
    return BilinearSystem(
        field=a.field,
        s_blocks=(BlockSpec(1, a.m),),
        t_blocks=(BlockSpec(1, a.n),),
        a_basis=maps,
    )
