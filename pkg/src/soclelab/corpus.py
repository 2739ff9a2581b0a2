"""Module and system corpora for the verification batteries.

Exhaustive side: all square-zero matrices of a given size are enumerated
constructively (image inside kernel, stratified by rank), and modules over
an algebra are assembled from candidate generator actions; the module
constructor itself is the relation filter, so no valid module is missed
and no invalid one survives.

Random side: the same constructions sampled with a seeded generator, plus
random split bilinear systems whose hypotheses are verified before use.
"""

from __future__ import annotations

import itertools
import random

from .algebra import Algebra
from .budget import Budget
from .errors import InputError, TheoremViolation
from .exactla import (
    Mat,
    SpanTracker,
    Subspace,
    enum_subspaces,
    kernel,
    vec_combo,
)
from .gf import Field
from .modrep import ModuleRep, faithful
from .strongness import BilinearSystem, BlockSpec, predicates, prop41_check


# ---------------------------------------------------------------------------
# square-zero matrices
# ---------------------------------------------------------------------------

def _embed_through(field: Field, w_sub: Subspace, g_rows, proj_rows) -> Mat:
    """X = (basis of W)^T . G . P, so that im X = W and ker X contains ker P."""
    n = w_sub.ambient_dim
    r = w_sub.dim
    gp = Mat.from_rows(field, g_rows).mul(Mat.from_rows(field, proj_rows))
    wt = Mat.from_rows(field, list(w_sub.basis_rows)).transpose()
    return wt.mul(gp)


def _projection_rows(k_sub: Subspace) -> list[list[int]]:
    """Rows of the map F^n -> F^r with kernel exactly k_sub (complement coords)."""
    n = k_sub.ambient_dim
    pivots = set(k_sub.pivots)
    free = [t for t in range(n) if t not in pivots]
    rows = []
    for t in free:
        row = []
        for j in range(n):
            basis_vec = tuple(1 if s == j else 0 for s in range(n))
            row.append(k_sub.reduce(basis_vec)[t])
        rows.append(row)
    return rows


def _invertible_matrices(field: Field, r: int):
    for entries in itertools.product(field.elements(), repeat=r * r):
        rows = [list(entries[i * r: (i + 1) * r]) for i in range(r)]
        if Mat.from_rows(field, rows).rank() == r:
            yield rows


def square_zero_matrices(field: Field, n: int) -> list[Mat]:
    """Every n x n matrix X with X X = 0, by rank stratification: choose the
    image W, a kernel K containing it, and an isomorphism onto W."""
    out = [Mat.zero(field, n, n)]
    for r in range(1, n // 2 + 1):
        for w_sub in enum_subspaces(field, n, r):
            for k_sub in enum_subspaces(field, n, n - r):
                if not k_sub.contains(w_sub):
                    continue
                proj = _projection_rows(k_sub)
                for g_rows in _invertible_matrices(field, r):
                    out.append(_embed_through(field, w_sub, g_rows, proj))
    return out


def random_square_zero(field: Field, n: int, rng: random.Random) -> Mat:
    """One random square-zero matrix, constructed (not rejection-sampled)."""
    r = rng.randint(0, n // 2)
    if r == 0:
        return Mat.zero(field, n, n)
    w_sub = _random_subspace(field, n, r, rng)
    k_sub = _random_oversubspace(field, w_sub, n - r, rng)
    proj = _projection_rows(k_sub)
    while True:
        g_rows = [[rng.randrange(field.q) for _ in range(r)] for _ in range(r)]
        if Mat.from_rows(field, g_rows).rank() == r:
            break
    return _embed_through(field, w_sub, g_rows, proj)


def _random_subspace(field: Field, n: int, dim: int, rng: random.Random) -> Subspace:
    while True:
        vectors = [[rng.randrange(field.q) for _ in range(n)] for _ in range(dim)]
        sub = Subspace.from_vectors(field, n, vectors)
        if sub.dim == dim:
            return sub


def _random_oversubspace(field: Field, inner: Subspace, dim: int, rng: random.Random) -> Subspace:
    n = inner.ambient_dim
    while True:
        extra = [[rng.randrange(field.q) for _ in range(n)] for _ in range(dim - inner.dim)]
        sub = Subspace.from_vectors(field, n, list(inner.basis_rows) + extra)
        if sub.dim == dim:
            return sub


# ---------------------------------------------------------------------------
# modules from generator actions
# ---------------------------------------------------------------------------

class ModuleAssembler:
    """Assemble modules from generator actions over a fixed algebra.

    The word structure (which products of generators to take, and how each
    basis element combines them) is computed once; assembling a candidate is
    then a handful of matrix products plus the constructor's relation check.
    """

    def __init__(self, algebra: Algebra, gen_indices):
        self.algebra = algebra
        self.gen_indices = list(gen_indices)
        field = algebra.field
        d = algebra.dim
        tracker = SpanTracker(field, d, d)
        tracker.add(algebra.one)
        # each word: (parent index into the word list, generator position)
        self.word_recipe: list[tuple[int, int]] = []
        values = [algebra.one]
        frontier = [0]
        while frontier and tracker.rank < d:
            nxt = []
            for w_idx in frontier:
                for g_pos, g_idx in enumerate(self.gen_indices):
                    new_val = algebra.mul_coords(values[w_idx], algebra.basis_coords(g_idx))
                    if tracker.rank >= d:
                        break
                    if tracker.express(new_val) is None:
                        tracker.add(new_val)
                        values.append(new_val)
                        self.word_recipe.append((w_idx, g_pos))
                        nxt.append(len(values) - 1)
            frontier = nxt
        if tracker.rank < d:
            raise InputError("chosen elements do not generate the algebra")
        self.basis_combos = []
        for t in range(d):
            combo = tracker.express(algebra.basis_coords(t))
            if combo is None:
                raise InputError("chosen elements do not generate the algebra")
            self.basis_combos.append(combo)

    def assemble(self, gen_mats) -> ModuleRep | None:
        field = self.algebra.field
        dim = gen_mats[0].rows if gen_mats else 0
        word_mats = [Mat.identity(field, dim)]
        for parent, g_pos in self.word_recipe:
            word_mats.append(word_mats[parent].mul(gen_mats[g_pos]))
        actions = []
        for combo in self.basis_combos:
            action = Mat.zero(field, dim, dim)
            for c, mat in zip(combo, word_mats):
                if c:
                    action = action.add(mat.scale(c))
            actions.append(action)
        try:
            return ModuleRep(self.algebra, dim, tuple(actions))
        except InputError:
            return None


def generator_module(algebra: Algebra, gen_indices, gen_mats) -> ModuleRep | None:
    """One-shot wrapper around ModuleAssembler."""
    return ModuleAssembler(algebra, gen_indices).assemble(list(gen_mats))


def radical_generator_indices(algebra: Algebra) -> list[int]:
    """Basis indices that generate the radical modulo its square.

    Assumes the algebra basis is adapted to the radical (each radical basis
    vector is a coordinate vector), which is true of every gallery algebra."""
    J = algebra.radical()
    j_indices = []
    for v in J.basis_rows:
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) != 1:
            raise InputError("algebra basis is not adapted to its radical")
        j_indices.append(nz[0])
    # J^2 as a subspace
    squares = [algebra.mul_coords(a, b) for a in J.basis_rows for b in J.basis_rows]
    j2 = Subspace.from_vectors(algebra.field, algebra.dim, squares)
    gens = []
    current = list(j2.basis_rows)
    for idx in j_indices:
        v = algebra.basis_coords(idx)
        grown = Subspace.from_vectors(algebra.field, algebra.dim, current + [v])
        if grown.dim > len(Subspace.from_vectors(algebra.field, algebra.dim, current).basis_rows):
            gens.append(idx)
            current.append(v)
    return gens


def iter_generator_modules(algebra: Algebra, dim: int):
    """All modules of the given dimension assembled from square-zero
    candidate actions for the radical generators.

    Complete for algebras whose radical generators square to zero (checked):
    any valid module's generator actions are themselves square-zero, so they
    appear among the candidates.  A cheap pairwise-product prefilter cuts
    the tuple space before the constructor's full relation check."""
    gens = radical_generator_indices(algebra)
    for g in gens:
        sq = algebra.mul_coords(algebra.basis_coords(g), algebra.basis_coords(g))
        if any(sq):
            raise InputError("generator does not square to zero: candidate pool would be incomplete")
    assembler = ModuleAssembler(algebra, gens)
    pre = relation_prefilter(algebra)
    pool = square_zero_matrices(algebra.field, dim)
    for combo in itertools.product(pool, repeat=len(gens)):
        if not pre(combo):
            continue
        mod = assembler.assemble(list(combo))
        if mod is not None:
            yield mod


def relation_prefilter(algebra: Algebra):
    """Cheap necessary conditions on generator actions: cross products of
    distinct generators that vanish in the algebra must vanish as matrices.
    Squares are skipped (the candidate pools already square to zero)."""
    gens = radical_generator_indices(algebra)
    zero_pairs = []
    for a_pos, ga in enumerate(gens):
        for b_pos, gb in enumerate(gens):
            if a_pos == b_pos:
                continue
            if not any(algebra.mult[ga][gb]):
                zero_pairs.append((a_pos, b_pos))

    def check(mats) -> bool:
        for a_pos, b_pos in zero_pairs:
            if not mats[a_pos].mul(mats[b_pos]).is_zero():
                return False
        return True

    return check


def random_generator_module(algebra: Algebra, dim: int, rng: random.Random, attempts: int = 400) -> ModuleRep | None:
    gens = radical_generator_indices(algebra)
    pre = relation_prefilter(algebra)
    for _ in range(attempts):
        mats = [random_square_zero(algebra.field, dim, rng) for _ in gens]
        if not pre(mats):
            continue
        mod = generator_module(algebra, gens, mats)
        if mod is not None:
            return mod
    return None


def faithful_corpus(rng: random.Random, min_count: int = 200) -> list[tuple[str, ModuleRep]]:
    """At least min_count faithful modules: gallery fixtures plus seeded
    random modules over the small local algebras."""
    from .gallery import (
        make_row_diagonal_pair,
        make_square_zero_extension,
        make_triangular,
        make_twisted_truncated,
    )
    from .gf import field_make
    from .modrep import regular_module

    out: list[tuple[str, ModuleRep]] = []
    algebras = [
        ("kx2-q2", make_twisted_truncated(2, 1, 1)),
        ("kx2-q3", make_twisted_truncated(3, 1, 1)),
        ("kxy2-q2", make_square_zero_extension(field_make(2), 2)),
        ("scalar-tri2-q2", make_triangular(2, field_make(2), True)),
        ("scalar-tri3-q2", make_triangular(3, field_make(2), True)),
    ]
    for name, alg in algebras:
        reg = regular_module(alg)
        out.append((f"{name}-regular", reg))
        out.append((f"{name}-regular-square", reg.direct_sum(reg)))
    ring, module = make_row_diagonal_pair()
    out.append(("row-diagonal-module", module))
    out.append(("row-diagonal-regular", regular_module(ring)))

    per_round = [(name, alg, dim) for name, alg in algebras for dim in (3, 4, 5)]
    round_no = 0
    while len(out) < min_count:
        round_no += 1
        for name, alg, dim in per_round:
            mod = random_generator_module(alg, dim, rng)
            if mod is None:
                continue
            ok, _ = faithful(mod)
            if ok:
                out.append((f"{name}-random-d{dim}-r{round_no}", mod))
            if len(out) >= min_count:
                break
        if round_no > 400:
            raise TheoremViolation("corpus generation failed to reach the requested count")
    return out


# ---------------------------------------------------------------------------
# random verified split systems
# ---------------------------------------------------------------------------

def _tensor_block_maps(field: Field, u_rows: list, s_blocks, t_blocks, e: int, f: int,
                       dim_b: int, dim_c: int, b_off: int, c_off: int) -> list[Mat]:
    """Basis of U (x) Matr(n_f x n_e) as full-size maps B -> C."""
    n_e, s_mult = s_blocks[e].n, s_blocks[e].mult
    n_f, t_mult = t_blocks[f].n, t_blocks[f].mult
    mats = []
    for u in u_rows:  # u is a t_mult x s_mult matrix, flattened row-major
        for a in range(n_f):
            for b in range(n_e):
                entries = {}
                for i in range(t_mult):
                    for j in range(s_mult):
                        c = u[i * s_mult + j]
                        if c:
                            entries[(c_off + i * n_f + a, b_off + j * n_e + b)] = c
                mats.append(Mat(field, dim_c, dim_b,
                                tuple(entries.get((r, col), 0) for r in range(dim_c) for col in range(dim_b))))
    return mats


def random_split_system(field: Field, rng: random.Random) -> BilinearSystem:
    """One random split system with full or near-full edge bimodules over a
    random support pattern covering every block."""
    s_blocks = tuple(BlockSpec(rng.choice((1, 1, 2)), rng.choice((1, 1, 2))) for _ in range(rng.choice((1, 2))))
    t_blocks = tuple(BlockSpec(rng.choice((1, 1, 2)), rng.choice((1, 1, 2))) for _ in range(rng.choice((1, 2))))
    dim_b = sum(b.module_dim() for b in s_blocks)
    dim_c = sum(b.module_dim() for b in t_blocks)
    b_offsets, c_offsets = [], []
    at = 0
    for b in s_blocks:
        b_offsets.append(at)
        at += b.module_dim()
    at = 0
    for b in t_blocks:
        c_offsets.append(at)
        at += b.module_dim()
    edges = set()
    for e in range(len(s_blocks)):
        edges.add((rng.randrange(len(t_blocks)), e))
    for f in range(len(t_blocks)):
        edges.add((f, rng.randrange(len(s_blocks))))
    if rng.random() < 0.5:
        edges.add((rng.randrange(len(t_blocks)), rng.randrange(len(s_blocks))))
    a_mats = []
    for f, e in sorted(edges):
        s_mult, t_mult = s_blocks[e].mult, t_blocks[f].mult
        hom_dim = s_mult * t_mult
        u_dim = hom_dim if rng.random() < 0.6 else max(1, hom_dim - 1)
        u_rows = _random_subspace_rows(field, t_mult * s_mult, u_dim, rng)
        a_mats.extend(_tensor_block_maps(field, u_rows, s_blocks, t_blocks, e, f,
                                         dim_b, dim_c, b_offsets[e], c_offsets[f]))
    # closure under the block actions holds by construction (U tensor Matr)
    return BilinearSystem(field, s_blocks, t_blocks, tuple(a_mats), _skip_verify=True)


def _random_subspace_rows(field: Field, n: int, dim: int, rng: random.Random) -> list:
    while True:
        vectors = [[rng.randrange(field.q) for _ in range(n)] for _ in range(dim)]
        sub = Subspace.from_vectors(field, n, vectors)
        if sub.dim == dim:
            return [list(r) for r in sub.basis_rows]


def random_verified_system(field: Field, rng: random.Random, max_tries: int = 60) -> BilinearSystem | None:
    """A random split system whose hypotheses all verify: nondegeneracy, both
    coverage conditions, and the cardinality condition; the swap condition
    holds by the proved implication from the split block structure (its
    literal enumeration is exercised separately on small fixed systems)."""
    check_budget = Budget(max_enumeration=1, max_ring=2**16)
    for _ in range(max_tries):
        sys = random_split_system(field, rng)
        report = prop41_check(sys, check_budget)
        if all(report.hypotheses_met.values()):
            return sys, report
    return None
