"""Left modules over a verified algebra, as explicit action matrices.

A ModuleRep stores one dim x dim matrix per algebra basis element; the
defining relations (bilinearity against the structure constants, identity
acting as identity) are checked on every basis pair at construction, and a
rejection names the failing pair.

The submodule lattice is driven blockwise through a split certificate:
maximal submodules of M are preimages of hyperplanes of the block
multiplicity spaces of M/JM, and simple submodules of soc(M) come from
projective points of the multiplicity spaces of the socle.  Faithfulness is
upward monotone, so minimality checks only need maximal submodules and
simple quotient kernels.

The shrinking constructions follow the recursive proofs: pick cyclic pieces
with simple top (descending through maximal submodules), or co-pieces with
simple essential socle (growing a complement above the kernel of the socle
projection), then accumulate greedily while the annihilator inside the
two-sided socle strictly drops.  Every output is re-verified against the
bound it is supposed to satisfy; a failure raises TheoremViolation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, bimodule_length, socle_graph, socle_is_central, socles
from .budget import Budget, default_budget
from .errors import InputError, NotSplitError, PreconditionError, TheoremViolation
from .exactla import (
    Mat,
    RowBasis,
    Subspace,
    enum_coeff_points,
    enum_hyperplanes,
    image,
    kernel,
    vec_combo,
)
from .strongness import BilinearSystem, BlockSpec, SystemReport, prop41_check


class ModuleRep:
    """A left module given by action matrices, one per algebra basis element."""

    def __init__(self, algebra: Algebra, dim: int, action: tuple[Mat, ...], _skip_verify: bool = False):
        self.algebra = algebra
        self.dim = dim
        self.action = tuple(action)
        if len(self.action) != algebra.dim:
            raise InputError("need one action matrix per algebra basis element")
        for mat in self.action:
            if mat.field != algebra.field or (mat.rows, mat.cols) != (dim, dim):
                raise InputError("action matrix shape or field mismatch")
        if not _skip_verify:
            self._verify()

    @property
    def field(self):
        return self.algebra.field

    def act_mat(self, coords) -> Mat:
        out = Mat.zero(self.field, self.dim, self.dim)
        for c, mat in zip(coords, self.action):
            if c:
                out = out.add(mat.scale(c))
        return out

    def _verify(self):
        alg = self.algebra
        ident = Mat.identity(self.field, self.dim)
        if self.act_mat(alg.one) != ident:
            raise InputError("identity element does not act as the identity")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = self.action[i].mul(self.action[j])
                rhs = self.act_mat(alg.mult[i][j])
                if lhs != rhs:
                    raise InputError(f"action violates the structure constants at basis pair ({i}, {j})")

    def direct_sum(self, other: "ModuleRep") -> "ModuleRep":
        if other.algebra is not self.algebra and other.algebra.to_json() != self.algebra.to_json():
            raise InputError("direct sum needs modules over the same algebra")
        n1, n2 = self.dim, other.dim
        mats = []
        for a, b in zip(self.action, other.action):
            entries = []
            for i in range(n1):
                entries.extend(list(a.row(i)) + [0] * n2)
            for i in range(n2):
                entries.extend([0] * n1 + list(b.row(i)))
            mats.append(Mat(self.field, n1 + n2, n1 + n2, tuple(entries)))
        return ModuleRep(self.algebra, n1 + n2, tuple(mats), _skip_verify=True)

    def to_json(self, inline_algebra: bool = True) -> dict:
        out = {"dim": self.dim, "action": [m.to_json() for m in self.action]}
        if inline_algebra:
            out["algebra"] = self.algebra.to_json()
        return out

    @staticmethod
    def from_json(data: dict, algebra: Algebra | None = None) -> "ModuleRep":
        if algebra is None:
            if "algebra" not in data:
                raise InputError("module JSON needs an inline algebra or a resolved algebra_ref")
            algebra = Algebra.from_json(data["algebra"])
        action = tuple(Mat.from_json(mj, algebra.field) for mj in data["action"])
        return module_make(algebra, action)


def module_make(algebra: Algebra, action) -> ModuleRep:
    action = tuple(action)
    dim = action[0].rows if action else 0
    return ModuleRep(algebra, dim, action)


def regular_module(algebra: Algebra) -> ModuleRep:
    """The algebra acting on itself by left multiplication."""
    return ModuleRep(algebra, algebra.dim, algebra.left_mats, _skip_verify=True)


# ---------------------------------------------------------------------------
# faithfulness
# ---------------------------------------------------------------------------

def annihilator(m: ModuleRep) -> Subspace:
    """Kernel of the algebra's map into endomorphisms, in algebra coordinates."""
    field = m.field
    d = m.algebra.dim
    rows = []
    for k in range(m.dim * m.dim):
        rows.append([m.action[i].entries[k] for i in range(d)])
    return kernel(Mat.from_rows(field, rows))


def faithful(m: ModuleRep) -> tuple[bool, Subspace]:
    ann = annihilator(m)
    return ann.dim == 0, ann


def annihilator_of_subspace(m: ModuleRep, w: Subspace) -> Subspace:
    """{r : r acts as zero on w}, in algebra coordinates."""
    field = m.field
    d = m.algebra.dim
    rows = []
    for v in w.basis_rows:
        images = [m.action[i].apply(v) for i in range(d)]
        for coord in range(m.dim):
            rows.append([images[i][coord] for i in range(d)])
    if not rows:
        return Subspace.full(field, d)
    return kernel(Mat.from_rows(field, rows))


def annihilator_of_quotient(m: ModuleRep, k_sub: Subspace) -> Subspace:
    """{r : r M is contained in k_sub}, in algebra coordinates."""
    field = m.field
    d = m.algebra.dim
    rows = []
    for v_idx in range(m.dim):
        basis_vec = tuple(1 if t == v_idx else 0 for t in range(m.dim))
        residuals = [k_sub.reduce(m.action[i].apply(basis_vec)) for i in range(d)]
        for coord in range(m.dim):
            rows.append([residuals[i][coord] for i in range(d)])
    return kernel(Mat.from_rows(field, rows))


# ---------------------------------------------------------------------------
# submodules, quotients, closures
# ---------------------------------------------------------------------------

def submodule_closure(m: ModuleRep, vectors) -> Subspace:
    """Smallest action-invariant subspace containing the given vectors."""
    basis = RowBasis(m.field, m.dim)
    frontier = []
    for v in vectors:
        if basis.add(v):
            frontier.append(tuple(v))
    while frontier:
        nxt = []
        for v in frontier:
            for mat in m.action:
                w = mat.apply(v)
                if basis.add(w):
                    nxt.append(w)
        frontier = nxt
    return Subspace.from_vectors(m.field, m.dim, basis.snapshot())


def _check_invariant(m: ModuleRep, sub: Subspace):
    for v in sub.basis_rows:
        for mat in m.action:
            if not sub.contains_vector(mat.apply(v)):
                raise PreconditionError("subspace is not action-invariant")


def restrict_action(m: ModuleRep, sub: Subspace) -> ModuleRep:
    """The submodule as a module in its own right, in the canonical basis."""
    _check_invariant(m, sub)
    mats = []
    for mat in m.action:
        cols = [sub.coordinates_of(mat.apply(v)) for v in sub.basis_rows]
        entries = tuple(cols[j][i] for i in range(sub.dim) for j in range(sub.dim))
        mats.append(Mat(m.field, sub.dim, sub.dim, entries))
    return ModuleRep(m.algebra, sub.dim, tuple(mats), _skip_verify=True)


@dataclass
class QuotientData:
    rep: ModuleRep
    sub: Subspace
    free_positions: tuple[int, ...]

    def project(self, vec) -> tuple:
        red = self.sub.reduce(vec)
        return tuple(red[k] for k in self.free_positions)

    def lift(self, qvec) -> tuple:
        out = [0] * self.sub.ambient_dim
        for k, v in zip(self.free_positions, qvec):
            out[k] = v
        return tuple(out)


def quotient_action(m: ModuleRep, sub: Subspace) -> QuotientData:
    """The quotient module M/sub in complement coordinates."""
    _check_invariant(m, sub)
    pivots = set(sub.pivots)
    free = tuple(k for k in range(m.dim) if k not in pivots)
    qdim = len(free)
    placeholder = ModuleRep(m.algebra, 0, tuple(Mat.zero(m.field, 0, 0) for _ in m.action), _skip_verify=True)
    data = QuotientData(placeholder, sub, free)
    mats = []
    for mat in m.action:
        cols = []
        for j in range(qdim):
            lifted = data.lift(tuple(1 if t == j else 0 for t in range(qdim)))
            cols.append(data.project(mat.apply(lifted)))
        entries = tuple(cols[j][i] for i in range(qdim) for j in range(qdim))
        mats.append(Mat(m.field, qdim, qdim, entries))
    data.rep = ModuleRep(m.algebra, qdim, tuple(mats), _skip_verify=True)
    return data


def radical_image(m: ModuleRep, budget: Budget | None = None) -> Subspace:
    """JM: the span of the radical's action images."""
    J = m.algebra.radical(budget)
    vectors = []
    for j in J.basis_rows:
        jmat = m.act_mat(j)
        vectors.extend(image(jmat).basis_rows)
    return Subspace.from_vectors(m.field, m.dim, vectors)


def socle_subspace(m: ModuleRep, budget: Budget | None = None) -> Subspace:
    """{v : J v = 0}; equals the sum of the simple submodules since J is nilpotent."""
    J = m.algebra.radical(budget)
    if J.dim == 0:
        return Subspace.full(m.field, m.dim)
    rows = []
    for j in J.basis_rows:
        rows.extend(m.act_mat(j).row_list())
    return kernel(Mat.from_rows(m.field, rows))


# ---------------------------------------------------------------------------
# blockwise lengths over the split quotient
# ---------------------------------------------------------------------------

def _block_action(rep: ModuleRep, coords) -> Mat:
    return rep.act_mat(coords)


def semisimple_lengths(rep: ModuleRep, budget: Budget | None = None) -> dict[int, int]:
    """Per-block lengths of a module killed by the radical.

    Computed as rank of the block idempotent's action divided by the block's
    matrix size; integrality failures signal a corrupt certificate."""
    alg = rep.algebra
    blocks = alg.blocks()
    J = alg.radical(budget)
    for j in J.basis_rows:
        if not rep.act_mat(j).is_zero():
            raise PreconditionError("module is not killed by the radical")
    lengths = {}
    total_rank = 0
    for f, block in enumerate(blocks):
        rank = rep.act_mat(alg.block_idempotent(f)).rank()
        if rank % block.n:
            raise TheoremViolation("block rank not divisible by block size: certificate corrupt")
        total_rank += rank
        lengths[f] = rank // block.n
    if total_rank != rep.dim:
        raise TheoremViolation("block projections do not decompose the module")
    return lengths


@dataclass
class TopSocle:
    top_length: int
    socle_length: int
    jm: Subspace
    soc: Subspace


def top_socle(m: ModuleRep, budget: Budget | None = None) -> TopSocle:
    """Lengths of M/JM and soc(M) over the split semisimple quotient."""
    jm = radical_image(m, budget)
    soc = socle_subspace(m, budget)
    top_rep = quotient_action(m, jm).rep
    soc_rep = restrict_action(m, soc)
    top_len = sum(semisimple_lengths(top_rep, budget).values())
    soc_len = sum(semisimple_lengths(soc_rep, budget).values())
    return TopSocle(top_len, soc_len, jm, soc)


# ---------------------------------------------------------------------------
# submodule lattice, blockwise
# ---------------------------------------------------------------------------

def _unit_coords(alg: Algebra, f: int, i: int, j: int):
    return alg.blocks()[f].unit(i, j)


def maximal_submodules(m: ModuleRep, budget: Budget | None = None):
    """Yield every maximal submodule of M as a subspace of M.

    Maximal submodules contain JM and correspond to block-multiplicity
    hyperplanes of the top."""
    alg = m.algebra
    blocks = alg.blocks()
    jm = radical_image(m, budget)
    qd = quotient_action(m, jm)
    top = qd.rep
    for f, block in enumerate(blocks):
        a11 = top.act_mat(_unit_coords(alg, f, 0, 0))
        mult_space = image(a11)
        if mult_space.dim == 0:
            continue
        extractors = [top.act_mat(_unit_coords(alg, f, 0, i)) for i in range(block.n)]
        for hyper in enum_hyperplanes(mult_space):
            cond_rows = []
            for ext in extractors:
                reduced_cols = [hyper.reduce(ext.col(j)) for j in range(top.dim)]
                for coord in range(top.dim):
                    cond_rows.append([reduced_cols[j][coord] for j in range(top.dim)])
            y_space = kernel(Mat.from_rows(m.field, cond_rows))
            vectors = list(jm.basis_rows) + [qd.lift(y) for y in y_space.basis_rows]
            yield f, hyper, Subspace.from_vectors(m.field, m.dim, vectors)


def simple_socle_submodules(m: ModuleRep, budget: Budget | None = None):
    """Yield every simple submodule of soc(M), blockwise, as (f, generator,
    subspace of M)."""
    alg = m.algebra
    blocks = alg.blocks()
    soc = socle_subspace(m, budget)
    for f, block in enumerate(blocks):
        a11 = m.act_mat(_unit_coords(alg, f, 0, 0))
        mult_vectors = [a11.apply(v) for v in soc.basis_rows]
        mult_space = Subspace.from_vectors(m.field, m.dim, mult_vectors)
        if mult_space.dim == 0:
            continue
        injectors = [m.act_mat(_unit_coords(alg, f, i, 0)) for i in range(block.n)]
        for coeffs in enum_coeff_points(m.field, mult_space.dim):
            u = vec_combo(m.field, list(mult_space.basis_rows), coeffs)
            vectors = [inj.apply(u) for inj in injectors]
            yield f, u, Subspace.from_vectors(m.field, m.dim, vectors)


@dataclass
class MinimalityReport:
    no_faithful_max_submodule: bool
    no_faithful_simple_quotient: bool
    submodule_witness: Subspace | None
    quotient_witness: Subspace | None

    @property
    def minimal(self) -> bool:
        return self.no_faithful_max_submodule and self.no_faithful_simple_quotient


def minimal_faithful(m: ModuleRep, budget: Budget | None = None) -> MinimalityReport:
    """Check both minimality properties of a faithful module.

    Faithfulness is upward monotone, so no proper faithful submodule exists
    iff no maximal one is faithful, and dually a faithful proper quotient
    exists iff M/L is faithful for some simple L in the socle."""
    ok, _ = faithful(m)
    if not ok:
        raise PreconditionError("minimality is only defined for faithful modules")
    sub_flag, sub_wit = True, None
    for _f, _h, w in maximal_submodules(m, budget):
        if annihilator_of_subspace(m, w).dim == 0:
            sub_flag, sub_wit = False, w
            break
    quot_flag, quot_wit = True, None
    for _f, _u, l_sub in simple_socle_submodules(m, budget):
        if annihilator_of_quotient(m, l_sub).dim == 0:
            quot_flag, quot_wit = False, l_sub
            break
    return MinimalityReport(sub_flag, quot_flag, sub_wit, quot_wit)


# ---------------------------------------------------------------------------
# the two inequalities
# ---------------------------------------------------------------------------

@dataclass
class ModuleReport:
    faithful: bool
    annihilator_dim: int
    top_length: int | None = None
    socle_length: int | None = None
    no_faithful_max_submodule: bool | None = None
    no_faithful_simple_quotient: bool | None = None
    inequality: dict | None = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "faithful": self.faithful,
            "annihilator_dim": self.annihilator_dim,
            "top_length": self.top_length,
            "socle_length": self.socle_length,
            "no_faithful_max_submodule": self.no_faithful_max_submodule,
            "no_faithful_simple_quotient": self.no_faithful_simple_quotient,
            "inequality": self.inequality,
            "notes": list(self.notes),
        }


def _require_split_local(alg: Algebra):
    blocks = alg.blocks()
    if len(blocks) != 1 or blocks[0].n != 1:
        raise PreconditionError("operation requires a local algebra (single block of size one)")


def local_socle_check(m: ModuleRep, budget: Budget | None = None) -> ModuleReport:
    """The local bound: over a local algebra with central socle, a faithful
    module with both minimality properties satisfies
    top_length + socle_length <= dim soc(R) + 1.

    The statement carries no field-size hypothesis, so a verified instance
    violating it is an implementation bug (TheoremViolation)."""
    budget = budget or default_budget()
    alg = m.algebra
    _require_split_local(alg)
    if not socle_is_central(alg, budget):
        raise PreconditionError("socle of the algebra is not central")
    ok, ann = faithful(m)
    if not ok:
        raise PreconditionError("module is not faithful")
    minimality = minimal_faithful(m, budget)
    if not minimality.minimal:
        raise PreconditionError("module is not minimal (a proper faithful submodule or quotient exists)")
    ts = top_socle(m, budget)
    soc_r = socles(alg, budget).twosided
    lhs = ts.top_length + ts.socle_length
    rhs = soc_r.dim + 1
    if lhs > rhs:
        raise TheoremViolation(
            f"local socle bound failed: {ts.top_length}+{ts.socle_length} > {soc_r.dim}+1"
        )
    return ModuleReport(
        faithful=True,
        annihilator_dim=0,
        top_length=ts.top_length,
        socle_length=ts.socle_length,
        no_faithful_max_submodule=True,
        no_faithful_simple_quotient=True,
        inequality={
            "kind": "local",
            "lhs": lhs,
            "rhs": rhs,
            "holds": True,
            "socle_dim": soc_r.dim,
        },
    )


def system_from_module(m: ModuleRep, budget: Budget | None = None) -> BilinearSystem:
    """The induced system: soc(R) acting from M/JM into soc(M), written in
    block-standard coordinates via adapted bases on both sides."""
    alg = m.algebra
    blocks = alg.blocks()
    soc_r = socles(alg, budget).twosided
    jm = radical_image(m, budget)
    qd = quotient_action(m, jm)
    soc_m = socle_subspace(m, budget)
    soc_rep = restrict_action(m, soc_m)

    def adapted(rep: ModuleRep) -> tuple[tuple[BlockSpec, ...], list[tuple]]:
        specs = []
        columns = []
        for f, block in enumerate(blocks):
            a11 = rep.act_mat(_unit_coords(alg, f, 0, 0))
            mult_space = image(a11)
            specs.append(BlockSpec(block.n, mult_space.dim))
            injectors = [rep.act_mat(_unit_coords(alg, f, i, 0)) for i in range(block.n)]
            for u in mult_space.basis_rows:
                for inj in injectors:
                    columns.append(inj.apply(u))
        stacked = Subspace.from_vectors(rep.field, rep.dim, columns)
        if stacked.dim != rep.dim or len(columns) != rep.dim:
            raise TheoremViolation("adapted block basis failed to decompose the module")
        return tuple(specs), columns

    s_blocks, b_columns = adapted(qd.rep)
    t_blocks, c_columns = adapted(soc_rep)
    # change of basis: standard layout -> module coordinates
    c_basis_mat = Mat.from_rows(m.field, c_columns).transpose()  # soc_rep coords x dim_c
    a_mats = []
    for a in soc_r.basis_rows:
        act = m.act_mat(a)
        cols = []
        for col_vec in b_columns:
            w = act.apply(qd.lift(col_vec))
            w_soc = soc_m.coordinates_of(w)
            y = _solve_columns(c_basis_mat, w_soc)
            cols.append(y)
        dim_c, dim_b = len(c_columns), len(b_columns)
        entries = tuple(cols[j][i] for i in range(dim_c) for j in range(dim_b))
        a_mats.append(Mat(m.field, dim_c, dim_b, entries))
    return BilinearSystem(m.field, s_blocks, t_blocks, tuple(a_mats))


def _solve_columns(basis_mat: Mat, target) -> tuple:
    from .exactla import solve

    sol = solve(basis_mat, target)
    if sol is None:
        raise TheoremViolation("socle image left the adapted socle basis span")
    return sol


def graph_socle_check(m: ModuleRep, budget: Budget | None = None) -> ModuleReport:
    """The block-graph bound: for a faithful module with both minimality
    properties over a split-certified algebra,
    top_length + socle_length <= bimodule length of soc(R) + chi(G).

    Over a finite field the proved statement's field-size hypothesis fails,
    so holds = False is a legitimate outcome; the attached system report
    records which hypotheses were actually met."""
    budget = budget or default_budget()
    alg = m.algebra
    alg.blocks()  # raises NotSplitError when absent
    ok, ann = faithful(m)
    if not ok:
        raise PreconditionError("module is not faithful")
    minimality = minimal_faithful(m, budget)
    if not minimality.minimal:
        raise PreconditionError("module is not minimal (a proper faithful submodule or quotient exists)")
    ts = top_socle(m, budget)
    soc_r = socles(alg, budget).twosided
    graph = socle_graph(alg, budget)
    soc_len = bimodule_length(alg, soc_r, budget)
    lhs = ts.top_length + ts.socle_length
    rhs = soc_len + graph.chi
    system = system_from_module(m, budget)
    sys_report = prop41_check(system, budget)
    notes = []
    if not (lhs <= rhs):
        failed = [k for k, v in sys_report.hypotheses_met.items() if not v]
        notes.append(
            "inequality fails over F_%d; unmet hypotheses: %s (the proved statement assumes an infinite field)"
            % (m.field.q, ", ".join(failed) if failed else "none")
        )
    return ModuleReport(
        faithful=True,
        annihilator_dim=0,
        top_length=ts.top_length,
        socle_length=ts.socle_length,
        no_faithful_max_submodule=True,
        no_faithful_simple_quotient=True,
        inequality={
            "kind": "socle_graph",
            "lhs": lhs,
            "rhs": rhs,
            "holds": lhs <= rhs,
            "socle_bimodule_length": soc_len,
            "chi": graph.chi,
            "hypotheses_met": sys_report.hypotheses_met,
            "system": sys_report.to_json(),
        },
        notes=tuple(notes),
    )


def module_report(m: ModuleRep, budget: Budget | None = None) -> ModuleReport:
    """Best-effort report for the CLI: fills whatever applies, never raises
    for unmet preconditions (they become notes)."""
    budget = budget or default_budget()
    ok, ann = faithful(m)
    report = ModuleReport(faithful=ok, annihilator_dim=ann.dim)
    notes = []
    try:
        m.algebra.blocks()
        split = True
    except NotSplitError:
        split = False
        notes.append("algebra is not split-certified: lengths and minimality unavailable")
    if split:
        ts = top_socle(m, budget)
        report.top_length, report.socle_length = ts.top_length, ts.socle_length
        if ok:
            minimality = minimal_faithful(m, budget)
            report.no_faithful_max_submodule = minimality.no_faithful_max_submodule
            report.no_faithful_simple_quotient = minimality.no_faithful_simple_quotient
            if minimality.minimal:
                blocks = m.algebra.blocks()
                if len(blocks) == 1 and blocks[0].n == 1 and socle_is_central(m.algebra, budget):
                    inner = local_socle_check(m, budget)
                else:
                    inner = graph_socle_check(m, budget)
                report.inequality = inner.inequality
                notes.extend(inner.notes)
            else:
                notes.append("module is not minimal: no inequality asserted")
        else:
            notes.append("module is not faithful: minimality and bounds not applicable")
    report.notes = tuple(notes)
    return report


# ---------------------------------------------------------------------------
# shrinking constructions
# ---------------------------------------------------------------------------

def _soc_annihilator_of_subspace(m: ModuleRep, w: Subspace, soc_r: Subspace) -> Subspace:
    return soc_r.intersect(annihilator_of_subspace(m, w))


def _soc_annihilator_of_quotient(m: ModuleRep, k_sub: Subspace, soc_r: Subspace) -> Subspace:
    return soc_r.intersect(annihilator_of_quotient(m, k_sub))


def _top_summands(m: ModuleRep, budget: Budget | None = None):
    """Decompose M/JM into simple summands; yield (f, lift_of_generator,
    top_subspace_of_summand, quotient_data)."""
    alg = m.algebra
    blocks = alg.blocks()
    jm = radical_image(m, budget)
    qd = quotient_action(m, jm)
    top = qd.rep
    out = []
    for f, block in enumerate(blocks):
        a11 = top.act_mat(_unit_coords(alg, f, 0, 0))
        mult_space = image(a11)
        injectors = [top.act_mat(_unit_coords(alg, f, i, 0)) for i in range(block.n)]
        for u in mult_space.basis_rows:
            l_top = Subspace.from_vectors(m.field, top.dim, [inj.apply(u) for inj in injectors])
            x = qd.lift(u)
            out.append((f, x, l_top))
    return out, qd


def shrink_submodule(m: ModuleRep, budget: Budget | None = None) -> ModuleRep:
    """Faithful submodule M' with top length at most the bimodule length of
    soc(R), built from cyclic pieces with simple tops accumulated while the
    annihilator inside soc(R) strictly drops."""
    budget = budget or default_budget()
    alg = m.algebra
    ok, _ = faithful(m)
    if not ok:
        raise PreconditionError("shrinking needs a faithful module")
    soc_r = socles(alg, budget).twosided
    n_bound = bimodule_length(alg, soc_r, budget)
    summands, qd = _top_summands(m, budget)

    pieces = []
    for f, x, l_top in summands:
        n_sub = submodule_closure(m, [x])
        while True:
            shrunk = False
            rep = restrict_action(m, n_sub)
            for _f2, _h, w_local in maximal_submodules(rep, budget):
                w_m = Subspace.from_vectors(
                    m.field, m.dim,
                    [vec_combo(m.field, list(n_sub.basis_rows), c) for c in w_local.basis_rows],
                )
                w_top = Subspace.from_vectors(m.field, qd.rep.dim, [qd.project(v) for v in w_m.basis_rows])
                if w_top == l_top:
                    n_sub = w_m
                    shrunk = True
                    break
            if not shrunk:
                break
        top_len = sum(semisimple_lengths(quotient_action(
            restrict_action(m, n_sub), radical_image(restrict_action(m, n_sub), budget)).rep, budget).values())
        if top_len != 1:
            raise TheoremViolation("cyclic piece failed to have simple top")
        pieces.append(n_sub)

    chosen = Subspace.zero(m.field, m.dim)
    ann_cur = soc_r
    used = [False] * len(pieces)
    steps = 0
    while ann_cur.dim > 0:
        progressed = False
        for idx, piece in enumerate(pieces):
            if used[idx]:
                continue
            cand = chosen.sum(piece)
            ann_new = _soc_annihilator_of_subspace(m, cand, soc_r)
            if ann_new.dim < ann_cur.dim:
                chosen, ann_cur = cand, ann_new
                used[idx] = True
                progressed = True
                steps += 1
                break
        if not progressed:
            raise TheoremViolation("no cyclic piece shrinks the socle annihilator of a faithful module")
        if steps > n_bound:
            raise TheoremViolation("annihilator chain exceeded the bimodule length of the socle")
    result = restrict_action(m, chosen)
    ok, _ = faithful(result)
    if not ok:
        raise TheoremViolation("shrunk submodule lost faithfulness")
    ts = top_socle(result, budget)
    if ts.top_length > n_bound:
        raise TheoremViolation("shrunk submodule exceeds the top-length bound")
    return result


def _socle_summands(m: ModuleRep, budget: Budget | None = None):
    """Decompose soc(M) into simple summands; yield (f, generator, subspace)."""
    alg = m.algebra
    blocks = alg.blocks()
    soc = socle_subspace(m, budget)
    out = []
    for f, block in enumerate(blocks):
        a11 = m.act_mat(_unit_coords(alg, f, 0, 0))
        mult_space = Subspace.from_vectors(m.field, m.dim, [a11.apply(v) for v in soc.basis_rows])
        injectors = [m.act_mat(_unit_coords(alg, f, i, 0)) for i in range(block.n)]
        for u in mult_space.basis_rows:
            l_sub = Subspace.from_vectors(m.field, m.dim, [inj.apply(u) for inj in injectors])
            out.append((f, u, l_sub))
    return out, soc


def shrink_quotient(m: ModuleRep, budget: Budget | None = None) -> ModuleRep:
    """Faithful quotient M'' with socle length at most the bimodule length of
    soc(R), via co-pieces with simple essential socle."""
    budget = budget or default_budget()
    alg = m.algebra
    ok, _ = faithful(m)
    if not ok:
        raise PreconditionError("shrinking needs a faithful module")
    soc_r = socles(alg, budget).twosided
    n_bound = bimodule_length(alg, soc_r, budget)
    summands, soc = _socle_summands(m, budget)

    kernels = []
    for j, (f, u, l_sub) in enumerate(summands):
        k_vectors = []
        for j2, (_f2, _u2, l2) in enumerate(summands):
            if j2 != j:
                k_vectors.extend(l2.basis_rows)
        k_j = Subspace.from_vectors(m.field, m.dim, k_vectors)
        qd = quotient_action(m, k_j)
        l_bar = Subspace.from_vectors(m.field, qd.rep.dim, [qd.project(v) for v in l_sub.basis_rows])
        n_bar = Subspace.zero(m.field, qd.rep.dim)
        grown = True
        while grown:
            grown = False
            for coeffs in enum_coeff_points(m.field, qd.rep.dim):
                if n_bar.contains_vector(coeffs):
                    continue
                cyc = submodule_closure(qd.rep, [coeffs])
                cand = n_bar.sum(cyc)
                if cand.intersect(l_bar).dim == 0:
                    n_bar = cand
                    grown = True
                    break
        n_j = Subspace.from_vectors(
            m.field, m.dim,
            list(k_j.basis_rows) + [qd.lift(v) for v in n_bar.basis_rows],
        )
        factor = quotient_action(m, n_j)
        soc_len = sum(semisimple_lengths(
            restrict_action(factor.rep, socle_subspace(factor.rep, budget)), budget).values())
        if soc_len != 1:
            raise TheoremViolation("co-piece failed to have simple socle")
        kernels.append(n_j)

    k_cur = Subspace.full(m.field, m.dim)
    ann_cur = soc_r
    used = [False] * len(kernels)
    steps = 0
    while ann_cur.dim > 0:
        progressed = False
        for idx, n_j in enumerate(kernels):
            if used[idx]:
                continue
            cand = k_cur.intersect(n_j)
            ann_new = _soc_annihilator_of_quotient(m, cand, soc_r)
            if ann_new.dim < ann_cur.dim:
                k_cur, ann_cur = cand, ann_new
                used[idx] = True
                progressed = True
                steps += 1
                break
        if not progressed:
            raise TheoremViolation("no co-piece shrinks the socle annihilator of a faithful module")
        if steps > n_bound:
            raise TheoremViolation("annihilator chain exceeded the bimodule length of the socle")
    result = quotient_action(m, k_cur).rep
    ok, _ = faithful(result)
    if not ok:
        raise TheoremViolation("shrunk quotient lost faithfulness")
    soc_len = sum(semisimple_lengths(
        restrict_action(result, socle_subspace(result, budget)), budget).values())
    if soc_len > n_bound:
        raise TheoremViolation("shrunk quotient exceeds the socle-length bound")
    return result


def shrink_subfactor(m: ModuleRep, budget: Budget | None = None) -> ModuleRep:
    """Faithful subfactor satisfying both shrink bounds: quotient-shrink the
    submodule-shrink.  Both bounds are re-verified on the result."""
    budget = budget or default_budget()
    first = shrink_submodule(m, budget)
    second = shrink_quotient(first, budget)
    soc_r = socles(m.algebra, budget).twosided
    n_bound = bimodule_length(m.algebra, soc_r, budget)
    ts = top_socle(second, budget)
    if ts.top_length > n_bound or ts.socle_length > n_bound:
        raise TheoremViolation("subfactor violates a shrink bound")
    return second
