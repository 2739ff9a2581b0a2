"""Finite-dimensional associative F_q-algebras with identity.

An Algebra carries verified structure constants (associativity and the
identity law are checked on all basis triples at construction) and an
optional certificate: the radical as an explicit nilpotent two-sided ideal,
plus either matrix-unit bases exhibiting the semisimple quotient as a
product of full matrix algebras over F_q ("split"), or a verified division
quotient ("local", possibly non-split).  Certified claims are never trusted
blindly; every piece is re-verified at construction time.

The radical certificate has an independent oracle: an exhaustive scan of the
whole ring by quasi-regularity (x is radical iff 1 - rx is invertible for
every r).  The scan enumerates every element once for unit flags, then
decides membership per element by walking the principal left ideal Rx with
early exit.  Unit testing goes through a faithful matrix representation
when one is available (invertibility in the matrix ring equals
invertibility in the subalgebra), else through the regular representation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .budget import Budget, default_budget
from .errors import InputError, NotSplitError, PreconditionError, TheoremViolation
from .exactla import Mat, RowBasis, SpanTracker, Subspace, kernel, vec_add
from .gf import Field

Coords = tuple


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    """One full matrix-algebra factor of the semisimple quotient.

    matrix_units holds lifts to R of an n*n matrix-unit basis of the factor,
    row-major; all relations are verified modulo the radical.
    """

    n: int
    matrix_units: tuple[Coords, ...]

    def unit(self, i: int, j: int) -> Coords:
        return self.matrix_units[i * self.n + j]


@dataclass(frozen=True)
class CertifiedStructure:
    radical: Subspace
    split: bool
    blocks: tuple[Block, ...]  # empty unless split
    local: bool

    def idempotent(self, field: Field, f: int) -> Coords:
        block = self.blocks[f]
        total = (0,) * self.radical.ambient_dim
        for i in range(block.n):
            total = vec_add(field, total, block.unit(i, i))
        return total


# ---------------------------------------------------------------------------
# the algebra
# ---------------------------------------------------------------------------

class Algebra:
    """Verified associative unital algebra over F_q, dim d, basis-indexed."""

    def __init__(
        self,
        field: Field,
        dim: int,
        mult: tuple,  # mult[i][j] = coords of b_i * b_j
        one: Coords,
        matrix_basis: tuple[Mat, ...] | None = None,
        certificate: CertifiedStructure | None = None,
        _skip_verify: bool = False,
    ):
        self.field = field
        self.dim = dim
        self.mult = mult
        self.one = tuple(one)
        self.matrix_basis = matrix_basis
        self.certificate = certificate
        self._radical_cache: Subspace | None = None
        self._local_cache: bool | None = None
        self.left_mats = tuple(
            Mat(field, dim, dim, tuple(mult[i][j][k] for k in range(dim) for j in range(dim)))
            for i in range(dim)
        )
        self.right_mats = tuple(
            Mat(field, dim, dim, tuple(mult[j][i][k] for k in range(dim) for j in range(dim)))
            for i in range(dim)
        )
        if not _skip_verify:
            self._verify_structure()
        if certificate is not None:
            self._verify_certificate(certificate)

    # -- arithmetic on coordinate vectors ------------------------------------
    def left_mult_mat(self, x: Coords) -> Mat:
        out = Mat.zero(self.field, self.dim, self.dim)
        for c, L in zip(x, self.left_mats):
            if c:
                out = out.add(L.scale(c))
        return out

    def right_mult_mat(self, x: Coords) -> Mat:
        out = Mat.zero(self.field, self.dim, self.dim)
        for c, R in zip(x, self.right_mats):
            if c:
                out = out.add(R.scale(c))
        return out

    def mul_coords(self, x: Coords, y: Coords) -> Coords:
        field = self.field
        add, mul = field.add, field.mul
        out = [0] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if yj:
                    f = mul(xi, yj)
                    cij = row[j]
                    for k, ck in enumerate(cij):
                        if ck:
                            out[k] = add(out[k], mul(f, ck))
        return tuple(out)

    def basis_coords(self, i: int) -> Coords:
        return tuple(1 if k == i else 0 for k in range(self.dim))

    def element_codes(self) -> int:
        return self.field.q ** self.dim

    # -- verification ----------------------------------------------------------
    def _verify_structure(self):
        d = self.dim
        for i in range(d):
            bi = self.basis_coords(i)
            if self.mul_coords(self.one, bi) != bi or self.mul_coords(bi, self.one) != bi:
                raise InputError(f"identity law fails on basis element {i}")
        for i in range(d):
            for j in range(d):
                ij = self.mult[i][j]
                for k in range(d):
                    lhs = self.mul_coords(ij, self.basis_coords(k))
                    rhs = self.mul_coords(self.basis_coords(i), self.mult[j][k])
                    if lhs != rhs:
                        raise InputError(f"associativity fails on basis triple ({i}, {j}, {k})")

    def _verify_certificate(self, cert: CertifiedStructure):
        J = cert.radical
        if J.ambient_dim != self.dim or J.field != self.field:
            raise InputError("bad certificate: radical basis lives in the wrong space")
        # two-sided ideal
        for v in J.basis_rows:
            for i in range(self.dim):
                if not J.contains_vector(self.mul_coords(self.basis_coords(i), v)):
                    raise InputError("bad certificate: claimed radical is not a left ideal")
                if not J.contains_vector(self.mul_coords(v, self.basis_coords(i))):
                    raise InputError("bad certificate: claimed radical is not a right ideal")
        # nilpotent
        power = J
        for _ in range(self.dim + 1):
            if power.dim == 0:
                break
            vectors = [
                self.mul_coords(x, y) for x in power.basis_rows for y in J.basis_rows
            ]
            nxt = Subspace.from_vectors(self.field, self.dim, vectors)
            if nxt.dim >= power.dim and nxt.dim > 0:
                raise InputError("bad certificate: claimed radical is not nilpotent")
            power = nxt
        if power.dim != 0:
            raise InputError("bad certificate: claimed radical is not nilpotent")
        if cert.split:
            self._verify_split_blocks(cert)
        elif cert.local:
            if not self._residue_is_division(J):
                raise InputError("bad certificate: quotient by claimed radical is not a division ring")
        else:
            raise InputError("certificate must claim split blocks or a local (division) quotient")

    def _verify_split_blocks(self, cert: CertifiedStructure):
        J = cert.radical
        total = sum(b.n * b.n for b in cert.blocks)
        if total != self.dim - J.dim:
            raise InputError("bad certificate: block sizes do not fill the semisimple quotient")
        residuals = RowBasis(self.field, self.dim)
        for row in J.basis_rows:
            residuals.add(row)
        for block in cert.blocks:
            for u in block.matrix_units:
                if not residuals.add(u):
                    raise InputError("bad certificate: matrix units dependent modulo the radical")
        # unit relations modulo J, including across blocks
        for f, bf in enumerate(cert.blocks):
            for g, bg in enumerate(cert.blocks):
                for i in range(bf.n):
                    for j in range(bf.n):
                        for k in range(bg.n):
                            for l in range(bg.n):
                                prod = self.mul_coords(bf.unit(i, j), bg.unit(k, l))
                                expect = bf.unit(i, l) if (f == g and j == k) else None
                                diff = prod if expect is None else tuple(
                                    self.field.sub(a, b) for a, b in zip(prod, expect)
                                )
                                if not J.contains_vector(diff):
                                    raise InputError(
                                        f"bad certificate: matrix-unit relation fails at blocks ({f},{g})"
                                    )
        total_one = (0,) * self.dim
        for f in range(len(cert.blocks)):
            total_one = vec_add(self.field, total_one, cert.idempotent(self.field, f))
        diff = tuple(self.field.sub(a, b) for a, b in zip(total_one, self.one))
        if not J.contains_vector(diff):
            raise InputError("bad certificate: block idempotents do not sum to the identity modulo J")

    # -- residue-field machinery -------------------------------------------------
    def quotient_by(self, ideal: Subspace):
        """Quotient algebra data: (dim, mult, one, project, lift)."""
        pivots = set(ideal.pivots)
        free = [k for k in range(self.dim) if k not in pivots]
        dim_res = len(free)

        def project(coords: Coords) -> Coords:
            red = ideal.reduce(coords)
            return tuple(red[k] for k in free)

        def lift(res: Coords) -> Coords:
            out = [0] * self.dim
            for k, v in zip(free, res):
                out[k] = v
            return tuple(out)

        mult_res = tuple(
            tuple(project(self.mul_coords(lift(self._res_basis(dim_res, i)), lift(self._res_basis(dim_res, j))))
                  for j in range(dim_res))
            for i in range(dim_res)
        )
        return dim_res, mult_res, project(self.one), project, lift

    @staticmethod
    def _res_basis(dim_res: int, i: int) -> Coords:
        return tuple(1 if k == i else 0 for k in range(dim_res))

    def _residue_is_division(self, J: Subspace) -> bool:
        dim_res, mult_res, one_res, project, lift = self.quotient_by(J)
        if dim_res == 0:
            return False
        field = self.field
        add, mul = field.add, field.mul
        for coords in itertools.product(field.elements(), repeat=dim_res):
            if not any(coords):
                continue
            # left multiplication matrix in the quotient
            rows = [[0] * dim_res for _ in range(dim_res)]
            for j in range(dim_res):
                col = [0] * dim_res
                for i, xi in enumerate(coords):
                    if xi:
                        cij = mult_res[i][j]
                        col = [add(a, mul(xi, b)) for a, b in zip(col, cij)]
                for k in range(dim_res):
                    rows[k][j] = col[k]
            if Mat.from_rows(field, rows).rank() != dim_res:
                return False
        return True

    # -- radical access ------------------------------------------------------------
    def radical(self, budget: Budget | None = None) -> Subspace:
        """The Jacobson radical: certified when available, else brute-forced."""
        if self.certificate is not None:
            return self.certificate.radical
        if self._radical_cache is None:
            self._radical_cache = radical_bruteforce(self, budget)
        return self._radical_cache

    def is_local(self, budget: Budget | None = None) -> bool:
        if self.certificate is not None and self.certificate.local:
            return True
        if self.certificate is not None and self.certificate.split:
            return len(self.certificate.blocks) == 1 and self.certificate.blocks[0].n == 1
        if self._local_cache is None:
            self._local_cache = self._residue_is_division(self.radical(budget))
        return self._local_cache

    def residue_dim(self, budget: Budget | None = None) -> int:
        return self.dim - self.radical(budget).dim

    def blocks(self) -> tuple[Block, ...]:
        if self.certificate is None or not self.certificate.split:
            raise NotSplitError("operation requires a split certificate (matrix-unit blocks)")
        return self.certificate.blocks

    def block_idempotent(self, f: int) -> Coords:
        return self.certificate.idempotent(self.field, f)

    # -- serialization ----------------------------------------------------------------
    def to_json(self) -> dict:
        def enc_coords(coords):
            e = self.field.e
            return [c if e == 1 else list(self.field.coeffs(c)) for c in coords]

        out: dict = {
            "field": self.field.to_json(),
            "dim": self.dim,
            "one": enc_coords(self.one),
            "mult": [[enc_coords(self.mult[i][j]) for j in range(self.dim)] for i in range(self.dim)],
        }
        if self.matrix_basis is not None:
            out["matrix_basis"] = [m.to_json() for m in self.matrix_basis]
        if self.certificate is not None:
            cert: dict = {
                "radical_basis": [enc_coords(v) for v in self.certificate.radical.basis_rows],
                "split": self.certificate.split,
                "local": self.certificate.local,
            }
            if self.certificate.split:
                cert["blocks"] = [
                    {"n": b.n, "matrix_units": [enc_coords(u) for u in b.matrix_units]}
                    for b in self.certificate.blocks
                ]
            out["certificate"] = cert
        return out

    @staticmethod
    def from_json(data: dict) -> "Algebra":
        field = Field.from_json(data["field"])

        def dec_coords(raw, width):
            coords = [field.from_coeffs(x) if isinstance(x, list) else int(x) % field.q for x in raw]
            if len(coords) != width:
                raise InputError("coordinate vector has wrong length")
            return tuple(coords)

        dim = int(data["dim"])
        matrix_basis = None
        if "matrix_basis" in data:
            matrix_basis = [Mat.from_json(mj, field) for mj in data["matrix_basis"]]
        mult = None
        if "mult" in data:
            mult = [[dec_coords(data["mult"][i][j], dim) for j in range(dim)] for i in range(dim)]
        one = dec_coords(data["one"], dim) if "one" in data else None
        cert_spec = None
        if data.get("certificate"):
            raw = data["certificate"]
            cert_spec = {
                "radical_basis": [dec_coords(v, dim) for v in raw.get("radical_basis", [])],
                "split": bool(raw.get("split", False)),
                "local": bool(raw.get("local", False)),
                "blocks": [
                    {"n": int(b["n"]), "matrix_units": [dec_coords(u, dim) for u in b["matrix_units"]]}
                    for b in raw.get("blocks", [])
                ],
            }
        return algebra_make(field, dim=dim, mult=mult, matrix_basis=matrix_basis, one=one, certificate=cert_spec)


def algebra_make(
    field: Field,
    dim: int | None = None,
    mult=None,
    matrix_basis=None,
    one=None,
    certificate: dict | None = None,
) -> Algebra:
    """Build and fully verify an algebra from structure constants or a
    product-closed matrix basis; rejections name the first failing datum."""
    if matrix_basis is not None:
        matrix_basis = tuple(matrix_basis)
        if not matrix_basis:
            raise InputError("empty matrix basis")
        d = len(matrix_basis)
        if dim is not None and dim != d:
            raise InputError("dim disagrees with matrix basis length")
        nsz = matrix_basis[0].rows
        if any(m.rows != nsz or m.cols != nsz or m.field != field for m in matrix_basis):
            raise InputError("matrix basis must be square matrices over one field")
        tracker = SpanTracker(field, nsz * nsz, d)
        for idx, m in enumerate(matrix_basis):
            if not tracker.add(m.flatten()):
                raise InputError(f"matrix basis element {idx} is dependent on earlier ones")
        derived_mult = []
        for i in range(d):
            row = []
            for j in range(d):
                prod = matrix_basis[i].mul(matrix_basis[j])
                coords = tracker.express(prod.flatten())
                if coords is None:
                    raise InputError(f"matrix basis is not product-closed at pair ({i}, {j})")
                row.append(coords)
            derived_mult.append(tuple(row))
        if mult is not None:
            for i in range(d):
                for j in range(d):
                    if tuple(mult[i][j]) != derived_mult[i][j]:
                        raise InputError(f"supplied structure constants disagree with matrix basis at ({i}, {j})")
        mult = tuple(derived_mult)
        if one is None:
            one = tracker.express(Mat.identity(field, nsz).flatten())
            if one is None:
                raise InputError("matrix basis does not span an identity element")
        dim = d
    else:
        if mult is None or dim is None or one is None:
            raise InputError("need structure constants with dim and identity coordinates, or a matrix basis")
        mult = tuple(tuple(tuple(c) for c in row) for row in mult)
        one = tuple(one)
        if len(mult) != dim or any(len(row) != dim for row in mult):
            raise InputError("structure constant table has wrong shape")

    cert_obj = None
    if certificate is not None:
        radical = Subspace.from_vectors(field, dim, certificate.get("radical_basis", []))
        split = bool(certificate.get("split", False))
        blocks = tuple(
            Block(int(b["n"]), tuple(tuple(u) for u in b["matrix_units"]))
            for b in certificate.get("blocks", [])
        )
        local = bool(certificate.get("local", False)) or (split and len(blocks) == 1 and blocks[0].n == 1)
        cert_obj = CertifiedStructure(radical, split, blocks if split else (), local)

    return Algebra(field, dim, mult, tuple(one), matrix_basis, cert_obj)


# ---------------------------------------------------------------------------
# brute-force radical oracle
# ---------------------------------------------------------------------------

def _action_flats(r: Algebra) -> tuple[list[tuple[int, ...]], int]:
    """Flattened matrices of a faithful representation, one per basis element."""
    if r.matrix_basis is not None:
        n = r.matrix_basis[0].rows
        return [m.entries for m in r.matrix_basis], n
    return [L.entries for L in r.left_mats], r.dim


def _full_rank_flat(flat: list[int], n: int, field: Field) -> bool:
    """Early-exit full-rank test on a flat row-major n*n matrix."""
    sub, mul, inv = field.sub, field.mul, field.inv
    rows = [list(flat[i * n: (i + 1) * n]) for i in range(n)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return False
        rows[c], rows[piv] = rows[piv], rows[c]
        prow = rows[c]
        head = prow[c]
        if head != 1:
            f = inv(head)
            rows[c] = prow = [mul(f, x) for x in prow]
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], prow)]
    return True


def _unit_flags(r: Algebra) -> bytearray:
    """unit[code] = 1 when the element with that coordinate code is invertible.

    Walks all q^dim coordinate vectors with an odometer, maintaining the
    representing matrix incrementally (one scaled basis matrix per digit
    change), and runs an early-exit rank test on each.
    """
    field = r.field
    q, d = field.q, r.dim
    flats, n = _action_flats(r)
    add = field.add
    scaled = [[None] * q for _ in range(d)]
    for k in range(d):
        for v in range(1, q):
            scaled[k][v] = [field.mul(v, x) for x in flats[k]]
    size = q**d
    unit = bytearray(size)
    digits = [0] * d
    acc = [[0] * (n * n) for _ in range(d + 1)]  # acc[k] = contribution of digits k..d-1
    code = 0
    while True:
        unit[code] = 1 if _full_rank_flat(acc[0], n, field) else 0
        code += 1
        if code >= size:
            break
        k = 0
        while digits[k] == q - 1:
            digits[k] = 0
            k += 1
        digits[k] += 1
        base = acc[k + 1]
        s = scaled[k][digits[k]]
        acc[k] = [add(a, b) for a, b in zip(base, s)]
        for j in range(k - 1, -1, -1):
            acc[j] = acc[j + 1]
    return unit


def _decode_coords(code: int, q: int, d: int) -> Coords:
    out = []
    for _ in range(d):
        out.append(code % q)
        code //= q
    return tuple(out)


def _encode_coords(coords, q: int) -> int:
    code = 0
    for c in reversed(coords):
        code = code * q + c
    return code


def radical_bruteforce(r: Algebra, budget: Budget | None = None) -> Subspace:
    """Exhaustive quasi-regularity oracle for the Jacobson radical.

    Membership is decided exactly: x is radical iff every element of the
    principal left ideal Rx is quasi-regular (1 - y invertible for all
    y in Rx).  Units can never be radical and are skipped outright; elements
    already inside the span of verified members are radical by linearity.
    The result is re-verified as a nilpotent two-sided ideal.
    """
    budget = budget or default_budget()
    field = r.field
    q, d = field.q, r.dim
    size = q**d
    budget.guard_ring("radical oracle", size)

    unit = _unit_flags(r)
    one_coords = r.one

    sub = field.sub
    qr = bytearray(size)
    coords = [0] * d
    for code in range(size):
        diff = tuple(sub(a, b) for a, b in zip(one_coords, coords))
        qr[code] = unit[_encode_coords(diff, q)]
        if code + 1 < size:
            k = 0
            while coords[k] == q - 1:
                coords[k] = 0
                k += 1
            coords[k] += 1

    jbasis = RowBasis(field, d)

    def ideal_inside_qr(x: Coords) -> bool:
        # basis of Rx
        images = [r.mul_coords(r.basis_coords(i), x) for i in range(d)]
        span = RowBasis(field, d)
        for v in images:
            span.add(v)
        rows = span.snapshot()
        # single-coordinate multiples first: cheap witnesses live here
        for row in rows:
            for c in field.nonzero():
                y = tuple(field.mul(c, t) for t in row)
                if qr[_encode_coords(y, q)] == 0:
                    return False
        for combo in itertools.product(field.elements(), repeat=len(rows)):
            y = (0,) * d
            for c, row in zip(combo, rows):
                if c:
                    y = tuple(field.add(a, field.mul(c, b)) for a, b in zip(y, row))
            if qr[_encode_coords(y, q)] == 0:
                return False
        return True

    for code in range(size):
        if unit[code] or not qr[code]:
            continue
        x = _decode_coords(code, q, d)
        if jbasis.contains(x):
            continue
        if ideal_inside_qr(x):
            jbasis.add(x)

    radical = Subspace.from_vectors(field, d, jbasis.snapshot())

    # sanity: two-sided nilpotent ideal
    for v in radical.basis_rows:
        for i in range(d):
            if not radical.contains_vector(r.mul_coords(r.basis_coords(i), v)):
                raise TheoremViolation("radical oracle produced a non-left-ideal")
            if not radical.contains_vector(r.mul_coords(v, r.basis_coords(i))):
                raise TheoremViolation("radical oracle produced a non-right-ideal")
    power = radical
    for _ in range(d + 1):
        if power.dim == 0:
            break
        vectors = [r.mul_coords(x, y) for x in power.basis_rows for y in radical.basis_rows]
        power = Subspace.from_vectors(field, d, vectors)
    if power.dim != 0:
        raise TheoremViolation("radical oracle produced a non-nilpotent ideal")
    return radical


# ---------------------------------------------------------------------------
# socles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SocleTriple:
    left: Subspace
    right: Subspace
    twosided: Subspace


def socles(r: Algebra, budget: Budget | None = None) -> SocleTriple:
    """Left socle {x : Jx = 0}, right socle {x : xJ = 0}, and their
    intersection (the two-sided socle).  Valid because J is nilpotent."""
    J = r.radical(budget)
    if J.dim == 0:
        full = Subspace.full(r.field, r.dim)
        return SocleTriple(full, full, full)
    left_rows = []
    right_rows = []
    for v in J.basis_rows:
        left_rows.extend(r.left_mult_mat(v).row_list())
        right_rows.extend(r.right_mult_mat(v).row_list())
    left = kernel(Mat.from_rows(r.field, left_rows))
    right = kernel(Mat.from_rows(r.field, right_rows))
    return SocleTriple(left, right, left.intersect(right))


# ---------------------------------------------------------------------------
# bimodule lengths and the socle graph
# ---------------------------------------------------------------------------

def _corner_space(r: Algebra, f: Coords, ideal: Subspace, e: Coords) -> Subspace:
    vectors = [r.mul_coords(r.mul_coords(f, v), e) for v in ideal.basis_rows]
    return Subspace.from_vectors(r.field, r.dim, vectors)


def _check_killed_by_radical(r: Algebra, ideal: Subspace, J: Subspace):
    zero = (0,) * r.dim
    for v in ideal.basis_rows:
        for j in J.basis_rows:
            if r.mul_coords(j, v) != zero or r.mul_coords(v, j) != zero:
                raise PreconditionError("ideal is not killed by the radical on both sides")


def bimodule_length(r: Algebra, ideal: Subspace, budget: Budget | None = None) -> int:
    """Length of a J-killed two-sided ideal as a bimodule over the split
    semisimple quotient: sum over block pairs of dim(f X e) / (n_f n_e)."""
    blocks = r.blocks()
    J = r.radical(budget)
    _check_killed_by_radical(r, ideal, J)
    total = 0
    for fi, bf in enumerate(blocks):
        f = r.block_idempotent(fi)
        for ei, be in enumerate(blocks):
            e = r.block_idempotent(ei)
            corner = _corner_space(r, f, ideal, e)
            if corner.dim == 0:
                continue
            n_pair = bf.n * be.n
            if corner.dim % n_pair:
                raise TheoremViolation(
                    f"corner dimension {corner.dim} not divisible by {n_pair}: certificate corrupt"
                )
            total += corner.dim // n_pair
    return total


@dataclass(frozen=True)
class SocleGraph:
    """Bipartite graph on quotient blocks with edges where f soc(R) e != 0.

    chi is vertices minus edges; edge_lengths are bimodule lengths of the
    corner spaces, parallel to edges.
    """

    left_vertices: tuple[int, ...]
    right_vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    edge_lengths: tuple[int, ...]
    chi: int

    def __post_init__(self):
        if self.chi != len(self.left_vertices) + len(self.right_vertices) - len(self.edges):
            raise InputError("inconsistent Euler characteristic")
        left, right = set(self.left_vertices), set(self.right_vertices)
        for f, e in self.edges:
            if f not in left or e not in right:
                raise InputError("edge endpoint is not a vertex")
        if any(l < 1 for l in self.edge_lengths):
            raise InputError("edge lengths must be >= 1")

    @property
    def socle_bimodule_length(self) -> int:
        return sum(self.edge_lengths)

    def to_json(self) -> dict:
        return {
            "left_vertices": list(self.left_vertices),
            "right_vertices": list(self.right_vertices),
            "edges": [list(e) for e in self.edges],
            "edge_lengths": list(self.edge_lengths),
            "chi": self.chi,
        }


def socle_graph(r: Algebra, budget: Budget | None = None) -> SocleGraph:
    """Build the socle graph from block idempotents acting on soc(R)."""
    blocks = r.blocks()
    soc = socles(r, budget).twosided
    J = r.radical(budget)
    _check_killed_by_radical(r, soc, J)
    idempotents = [r.block_idempotent(i) for i in range(len(blocks))]
    left_vertices = []
    right_vertices = []
    for i, f in enumerate(idempotents):
        if Subspace.from_vectors(r.field, r.dim, [r.mul_coords(f, v) for v in soc.basis_rows]).dim:
            left_vertices.append(i)
        if Subspace.from_vectors(r.field, r.dim, [r.mul_coords(v, f) for v in soc.basis_rows]).dim:
            right_vertices.append(i)
    edges = []
    lengths = []
    for fi in left_vertices:
        for ei in right_vertices:
            corner = _corner_space(r, idempotents[fi], soc, idempotents[ei])
            if corner.dim:
                n_pair = blocks[fi].n * blocks[ei].n
                if corner.dim % n_pair:
                    raise TheoremViolation("corner dimension not divisible by block sizes")
                edges.append((fi, ei))
                lengths.append(corner.dim // n_pair)
    chi = len(left_vertices) + len(right_vertices) - len(edges)
    return SocleGraph(tuple(left_vertices), tuple(right_vertices), tuple(edges), tuple(lengths), chi)


def socle_is_central(r: Algebra, budget: Budget | None = None) -> bool:
    """Whether every two-sided-socle element commutes with every element."""
    soc = socles(r, budget).twosided
    for v in soc.basis_rows:
        for i in range(r.dim):
            b = r.basis_coords(i)
            if r.mul_coords(v, b) != r.mul_coords(b, v):
                return False
    return True


def improved_bound_value(chi: int, edge_lengths, socle_len: int) -> int:
    """The formula behind improved_bound: with nonnegative chi add it; with
    negative chi subtract the -chi smallest edge lengths instead."""
    if chi >= 0:
        return socle_len + chi
    drop = -chi
    if drop > len(edge_lengths):
        raise TheoremViolation("graph has fewer edges than vertices minus chi allows")
    return socle_len - sum(sorted(edge_lengths)[:drop])


def improved_bound(g: SocleGraph, socle_len: int) -> int:
    """Sharper right-hand side for the length inequality, from the graph."""
    return improved_bound_value(g.chi, g.edge_lengths, socle_len)
