"""Cochain complexes for relative Rota-Baxter algebras with coefficients.

The degree-k cochain space of (A, M, R) with coefficients in a bimodule
(S: N -> B, l, r) has three blocks:

    alpha : A^(x)k                      -> B
    beta  : one map per slot s = 1..k, A^(x)(s-1) (x) M (x) A^(x)(k-s) -> N
    gamma : M^(x)(k-1)                  -> B   (absent in degree 1)

and the space is zero in degree 0.  The differential combines four pieces:
the Hochschild differential of A on B for the alpha block, a twisted
differential on the slot maps (whose boundary terms consume alpha through
the pairings), the Hochschild differential of the total algebra M_Tot
acting on B for the gamma block, and an operator term h feeding
(alpha, beta) into the gamma block through R and S.

The same file carries the two sibling complexes that interact with this
one: the labelled dendriform complex (computed through its embedding into
the Hochschild complex of a doubled semidirect structure) and the
restricted complex of a Rota-Baxter pair, together with the comparison
maps between all of them.

Coordinates everywhere are target-major matrix entries (index =
target * domain_size + flattened tuple), with the blocks concatenated in
the order alpha, beta_1, ..., beta_k, gamma.
"""

from __future__ import annotations

from itertools import product as iter_product

from .algebra import (
    Bimodule, HochschildCochain, LinearMap, Report, ShapeError,
    StructuralError, basis_vec, hochschild_differential, hochschild_matrix,
)
from .linalg import (
    Matrix, Q, SparseBuilder, TensorIndex, format_rational, homology_dim,
    kernel_basis, parse_rational,
)
from .rrb import RelativeRBAlgebra
from .rrb_modules import (
    RRBBimodule, adjoint_bimodule, dendriform_to_rrb, lift_bimodule,
    mtot_action_bimodule, semidirect_rrb,
)

ZERO = Q(0)
ONE = Q(1)


# ---------------------------------------------------------------------------
# cochain containers


class MixedTensorSpace:
    """Index bookkeeping for k-fold tensors with one factor swapped out.

    Models the direct sum over positions s = 1..k of
    A^(x)(s-1) (x) M (x) A^(x)(k-s).  Each summand is flattened big-endian
    and the summands are concatenated in slot order, so the total dimension
    is k * dim_a^(k-1) * dim_m.
    """

    __slots__ = ("k", "dim_a", "dim_m", "slot_dim", "total_dim", "_indexers")

    def __init__(self, k, dim_a, dim_m):
        if k < 1:
            raise ShapeError("a mixed tensor space needs k >= 1")
        self.k = k
        self.dim_a = dim_a
        self.dim_m = dim_m
        self._indexers = tuple(
            TensorIndex((dim_a,) * (s - 1) + (dim_m,) + (dim_a,) * (k - s))
            for s in range(1, k + 1))
        self.slot_dim = self._indexers[0].size
        self.total_dim = k * self.slot_dim

    def indexer(self, s):
        """TensorIndex of the slot-s summand (s is 1-based)."""
        return self._indexers[s - 1]

    def offset(self, s):
        """Start of the slot-s summand inside the concatenated coordinates."""
        return (s - 1) * self.slot_dim


class RRBCochain:
    """Degree-k cochain (alpha, beta_1..beta_k[, gamma]).

    alpha maps A^(x)k into the base, the slot map beta_s swaps the s-th A
    factor for M and lands in the fiber, and gamma (degree >= 2 only) maps
    M^(x)(k-1) into the base.
    """

    __slots__ = ("degree", "alpha", "beta", "gamma")

    def __init__(self, degree, alpha, beta, gamma=None):
        beta = tuple(beta)
        if degree < 1:
            raise ShapeError("cochain degree must be >= 1")
        if len(beta) != degree:
            raise ShapeError(
                f"degree {degree} needs {degree} slot maps, got {len(beta)}")
        if (gamma is None) != (degree == 1):
            raise ShapeError("gamma is present exactly when the degree is >= 2")
        for bs in beta:
            if (bs.domain_dim, bs.codomain_dim) != \
                    (beta[0].domain_dim, beta[0].codomain_dim):
                raise ShapeError("slot maps must share their shape")
        self.degree = degree
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma

    def validate(self, x, b):
        """Check all shapes against a structure pair; returns self."""
        dA, dM = x.algebra.dim, x.module.dim
        k = self.degree
        if self.alpha.domain_dim != dA ** k or \
                self.alpha.codomain_dim != b.base.dim:
            raise ShapeError("alpha must map A^(x)k into the base")
        slot = dA ** (k - 1) * dM
        for bs in self.beta:
            if bs.domain_dim != slot or bs.codomain_dim != b.fiber.dim:
                raise ShapeError("slot maps must land in the fiber")
        if k >= 2 and (self.gamma.domain_dim != dM ** (k - 1) or
                       self.gamma.codomain_dim != b.base.dim):
            raise ShapeError("gamma must map M^(x)(k-1) into the base")
        return self

    @staticmethod
    def zero(x, b, k):
        dA, dM = x.algebra.dim, x.module.dim
        dB, dN = b.base.dim, b.fiber.dim
        alpha = LinearMap.zero(dA ** k, dB)
        beta = (LinearMap.zero(dA ** (k - 1) * dM, dN),) * k
        gamma = None if k == 1 else LinearMap.zero(dM ** (k - 1), dB)
        return RRBCochain(k, alpha, beta, gamma)

    def vector(self):
        out = list(self.alpha.matrix.entries)
        for bs in self.beta:
            out.extend(bs.matrix.entries)
        if self.gamma is not None:
            out.extend(self.gamma.matrix.entries)
        return tuple(out)

    @staticmethod
    def from_vector(x, b, k, vec):
        dA, dM = x.algebra.dim, x.module.dim
        dB, dN = b.base.dim, b.fiber.dim
        da, slot = dA ** k, dA ** (k - 1) * dM
        vec = tuple(vec)
        pos = 0

        def take(rows, cols):
            nonlocal pos
            m = Matrix(rows, cols, vec[pos:pos + rows * cols])
            pos += rows * cols
            return LinearMap(cols, rows, m)

        alpha = take(dB, da)
        beta = tuple(take(dN, slot) for _ in range(k))
        gamma = None if k == 1 else take(dB, dM ** (k - 1))
        if pos != len(vec):
            raise ShapeError(f"vector length {len(vec)}, expected {pos}")
        return RRBCochain(k, alpha, beta, gamma)

    def __eq__(self, other):
        return (isinstance(other, RRBCochain) and
                self.degree == other.degree and self.alpha == other.alpha and
                self.beta == other.beta and self.gamma == other.gamma)

    def to_json(self):
        """Plain dict with rationals rendered as strings."""
        return {"degree": self.degree,
                "alpha": _matrix_to_strings(self.alpha.matrix),
                "beta": [_matrix_to_strings(bs.matrix) for bs in self.beta],
                "gamma": (None if self.gamma is None
                          else _matrix_to_strings(self.gamma.matrix))}

    @staticmethod
    def from_json(x, b, data):
        """Inverse of to_json; shapes are dictated by (x, b)."""
        k = int(data["degree"])
        shapes = RRBCochain.zero(x, b, k)
        alpha = _map_from_strings(shapes.alpha, data["alpha"])
        if len(data["beta"]) != k:
            raise ShapeError(f"degree {k} needs {k} slot maps")
        beta = tuple(_map_from_strings(z, rows)
                     for z, rows in zip(shapes.beta, data["beta"]))
        gamma = None if k == 1 else _map_from_strings(shapes.gamma,
                                                      data["gamma"])
        return RRBCochain(k, alpha, beta, gamma).validate(x, b)


def _matrix_to_strings(m):
    return [[format_rational(m.at(i, j)) for j in range(m.cols)]
            for i in range(m.rows)]


def _map_from_strings(shape, rows):
    entries = [parse_rational(v) for row in rows for v in row]
    rows_n, cols_n = shape.codomain_dim, shape.domain_dim
    if len(entries) != rows_n * cols_n:
        raise ShapeError(f"expected a {rows_n}x{cols_n} matrix")
    return LinearMap(cols_n, rows_n, Matrix(rows_n, cols_n, entries))


class DendriformCochain:
    """Degree-k labelled cochain: one map D^(x)k -> E per label 1..k."""

    __slots__ = ("degree", "maps")

    def __init__(self, degree, maps):
        maps = tuple(maps)
        if degree < 1:
            raise ShapeError("cochain degree must be >= 1")
        if len(maps) != degree:
            raise ShapeError(
                f"degree {degree} needs {degree} labelled maps, got {len(maps)}")
        for f in maps:
            if (f.domain_dim, f.codomain_dim) != \
                    (maps[0].domain_dim, maps[0].codomain_dim):
                raise ShapeError("labelled maps must share their shape")
        self.degree = degree
        self.maps = maps

    @staticmethod
    def zero(k, dim_d, dim_e):
        return DendriformCochain(k, (LinearMap.zero(dim_d ** k, dim_e),) * k)

    def component(self, i):
        """The map with label i (1-based)."""
        return self.maps[i - 1]

    def is_zero(self):
        return all(f.matrix.is_zero() for f in self.maps)

    def __eq__(self, other):
        return (isinstance(other, DendriformCochain) and
                self.degree == other.degree and self.maps == other.maps)


class RBCochain:
    """Degree-k cochain of the restricted (non-relative) complex.

    Degree 1 is a single map A -> M; degree k >= 2 is a pair
    (beta: A^(x)k -> M, gamma: A^(x)(k-1) -> M).
    """

    __slots__ = ("degree", "beta", "gamma")

    def __init__(self, degree, beta, gamma=None):
        if degree < 1:
            raise ShapeError("cochain degree must be >= 1")
        if (gamma is None) != (degree == 1):
            raise ShapeError("gamma is present exactly when the degree is >= 2")
        self.degree = degree
        self.beta = beta
        self.gamma = gamma

    def __eq__(self, other):
        return (isinstance(other, RBCochain) and
                self.degree == other.degree and self.beta == other.beta and
                self.gamma == other.gamma)


# ---------------------------------------------------------------------------
# the differential, block by block


def cochain_space_dims(x, b, k):
    """Sizes of the three coordinate blocks in degree k."""
    assert k >= 0
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    if k == 0:
        return (0, 0, 0)
    if k == 1:
        return (dA * dB, dM * dN, 0)
    return (dA ** k * dB, k * dA ** (k - 1) * dM * dN, dM ** (k - 1) * dB)


def _paste(dst, src, row_off, col_off):
    for i, j, v in src.nonzero_items():
        dst.add(row_off + i, col_off + j, v)


def _twisted_block(out, x, b, k, row_off, alpha_off, beta_off):
    """Rows of the fiber-valued output block.

    For each output slot t the three terms are: the leading argument
    consumed from the left (through the left pairing when t = 1, through
    the left fiber action otherwise), the alternating sum of neighbour
    merges (algebra product or module action, dispatched by which factor
    holds M), and the trailing argument consumed from the right (right
    pairing when t = k+1, right fiber action otherwise).  The boundary
    cases read the alpha block; everything else reads the slot maps.
    """
    alg, mod = x.algebra, x.module
    dA, dM = alg.dim, mod.dim
    dB, dN = b.base.dim, b.fiber.dim
    mix_in = MixedTensorSpace(k, dA, dM)
    mix_out = MixedTensorSpace(k + 1, dA, dM)
    ti_a_in = TensorIndex((dA,) * k)
    da_in, slot_in, slot_out = ti_a_in.size, mix_in.slot_dim, mix_out.slot_dim
    lp, rp = b.left_pair, b.right_pair
    ln, rn = b.fiber.left, b.fiber.right
    lm, rm, mu = mod.left, mod.right, alg.mu
    last_sign = ONE if k % 2 else -ONE          # (-1)^(k+1)
    for t in range(1, k + 2):
        ti_out = mix_out.indexer(t)
        row_base = row_off + dN * mix_out.offset(t)
        for flat_out in range(slot_out):
            tup = ti_out.unflatten(flat_out)
            rows = [row_base + w * slot_out + flat_out for w in range(dN)]
            # leading term
            if t == 1:
                t_in = ti_a_in.flatten(tup[1:])
                plane = lp.data[tup[0]]
                for vb in range(dB):
                    col = alpha_off + vb * da_in + t_in
                    for w, c in enumerate(plane[vb]):
                        if c:
                            out.add(rows[w], col, c)
            else:
                f_in = mix_in.indexer(t - 1).flatten(tup[1:])
                col_base = beta_off + dN * mix_in.offset(t - 1)
                plane = ln.data[tup[0]]
                for v in range(dN):
                    col = col_base + v * slot_in + f_in
                    for w, c in enumerate(plane[v]):
                        if c:
                            out.add(rows[w], col, c)
            # neighbour merges
            sign = ONE
            for i in range(1, k + 1):
                sign = -sign
                li, ri = tup[i - 1], tup[i]
                if t == i:
                    prods, s_in = rm.data[li][ri], i
                elif t == i + 1:
                    prods, s_in = lm.data[li][ri], i
                else:
                    prods = mu.data[li][ri]
                    s_in = t if t < i else t - 1
                idx = mix_in.indexer(s_in)
                col_base = beta_off + dN * mix_in.offset(s_in)
                head, tail = tup[:i - 1], tup[i + 1:]
                for p, c in enumerate(prods):
                    if not c:
                        continue
                    f_in = idx.flatten(head + (p,) + tail)
                    for w in range(dN):
                        out.add(rows[w], col_base + w * slot_in + f_in,
                                sign * c)
            # trailing term
            if t == k + 1:
                t_in = ti_a_in.flatten(tup[:k])
                for vb in range(dB):
                    col = alpha_off + vb * da_in + t_in
                    for w, c in enumerate(rp.data[vb][tup[k]]):
                        if c:
                            out.add(rows[w], col, last_sign * c)
            else:
                f_in = mix_in.indexer(t).flatten(tup[:k])
                col_base = beta_off + dN * mix_in.offset(t)
                for v in range(dN):
                    col = col_base + v * slot_in + f_in
                    for w, c in enumerate(rn.data[v][tup[k]]):
                        if c:
                            out.add(rows[w], col, last_sign * c)


def _weighted_tuples(choices):
    """Cartesian product of (index, weight) lists with multiplied weights."""
    for picks in iter_product(*choices):
        coeff = ONE
        idx = []
        for i, c in picks:
            idx.append(i)
            coeff = coeff * c
        yield tuple(idx), coeff


def _operator_block(out, x, b, k, row_off, alpha_off, beta_off):
    """Rows of the base-valued output block fed by R and S.

    (-1)^k { alpha(R m_1, ..., R m_k)
             - sum_i S . beta_i(R m_1, ..., m_i, ..., R m_k) }.
    """
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    mix_in = MixedTensorSpace(k, dA, dM)
    ti_m = TensorIndex((dM,) * k)
    ti_a = TensorIndex((dA,) * k)
    da_in, slot_in = ti_a.size, mix_in.slot_dim
    rmat, smat = x.rop.matrix, b.sop.matrix
    sign = -ONE if k % 2 else ONE               # (-1)^k
    r_cols = [tuple((a, rmat.at(a, u)) for a in range(dA) if rmat.at(a, u))
              for u in range(dM)]
    for flat_out in range(ti_m.size):
        mm = ti_m.unflatten(flat_out)
        rows = [row_off + w * ti_m.size + flat_out for w in range(dB)]
        picked = [r_cols[u] for u in mm]
        for atup, coeff in _weighted_tuples(picked):
            t_in = ti_a.flatten(atup)
            val = sign * coeff
            for w in range(dB):
                out.add(rows[w], alpha_off + w * da_in + t_in, val)
        for i in range(1, k + 1):
            idx = mix_in.indexer(i)
            col_base = beta_off + dN * mix_in.offset(i)
            mixed = picked[:i - 1] + [((mm[i - 1], ONE),)] + picked[i:]
            for tup, coeff in _weighted_tuples(mixed):
                f_in = idx.flatten(tup)
                for v in range(dN):
                    col = col_base + v * slot_in + f_in
                    for w in range(dB):
                        sv = smat.at(w, v)
                        if sv:
                            out.add(rows[w], col, -sign * coeff * sv)


def rrb_differential_matrix(x, b, k):
    """SparseBuilder of the full degree-k differential, k >= 1."""
    if k < 1:
        raise ShapeError("the differential starts in degree 1")
    a_in, bt_in, g_in = cochain_space_dims(x, b, k)
    a_out, bt_out, g_out = cochain_space_dims(x, b, k + 1)
    out = SparseBuilder(a_out + bt_out + g_out, a_in + bt_in + g_in)
    _paste(out, hochschild_matrix(b.base, k), 0, 0)
    _twisted_block(out, x, b, k, a_out, 0, a_in)
    _operator_block(out, x, b, k, a_out + bt_out, 0, a_in)
    if k >= 2:
        _paste(out, hochschild_matrix(mtot_action_bimodule(b).actions, k - 1),
               a_out + bt_out, a_in + bt_in)
    return out


# component-wise entry points


def _check_alpha_beta(x, b, k, alpha, beta):
    dA, dM = x.algebra.dim, x.module.dim
    if alpha.domain_dim != dA ** k or alpha.codomain_dim != b.base.dim:
        raise ShapeError("alpha must map A^(x)k into the base")
    if len(beta) != k:
        raise ShapeError(f"degree {k} needs {k} slot maps")
    slot = dA ** (k - 1) * dM
    for bs in beta:
        if bs.domain_dim != slot or bs.codomain_dim != b.fiber.dim:
            raise ShapeError("slot maps must land in the fiber")


def delta_AB(x, b, k, alpha):
    """Hochschild differential of A on the base, applied to alpha."""
    img = hochschild_differential(b.base, k, HochschildCochain(k, alpha))
    return img.map


def delta_alpha_AN(x, b, k, alpha, beta):
    """The alpha-twisted differential on the slot maps; returns k+1 maps."""
    beta = tuple(beta)
    _check_alpha_beta(x, b, k, alpha, beta)
    a_in, bt_in, _ = cochain_space_dims(x, b, k)
    _, bt_out, _ = cochain_space_dims(x, b, k + 1)
    work = SparseBuilder(bt_out, a_in + bt_in)
    _twisted_block(work, x, b, k, 0, 0, a_in)
    vec = list(alpha.matrix.entries)
    for bs in beta:
        vec.extend(bs.matrix.entries)
    img = work.apply(vec)
    dN = b.fiber.dim
    slot = MixedTensorSpace(k + 1, x.algebra.dim, x.module.dim).slot_dim
    step = dN * slot
    return tuple(
        LinearMap(slot, dN, Matrix(dN, slot, img[s * step:(s + 1) * step]))
        for s in range(k + 1))


def delta_MB(x, b, k, gamma):
    """Hochschild differential of M_Tot on the base, applied to gamma.

    gamma follows the degree-k convention: a map M^(x)(k-1) -> B, sent to
    a map M^(x)k -> B.
    """
    if k < 1:
        raise ShapeError("the gamma convention needs k >= 1")
    actions = mtot_action_bimodule(b).actions
    img = hochschild_differential(actions, k - 1,
                                  HochschildCochain(k - 1, gamma))
    return img.map


def h_R(x, b, k, alpha, beta):
    """The operator term feeding (alpha, beta) into the gamma block."""
    beta = tuple(beta)
    _check_alpha_beta(x, b, k, alpha, beta)
    a_in, bt_in, _ = cochain_space_dims(x, b, k)
    dM, dB = x.module.dim, b.base.dim
    work = SparseBuilder(dM ** k * dB, a_in + bt_in)
    _operator_block(work, x, b, k, 0, 0, a_in)
    vec = list(alpha.matrix.entries)
    for bs in beta:
        vec.extend(bs.matrix.entries)
    img = work.apply(vec)
    return LinearMap(dM ** k, dB, Matrix(dB, dM ** k, img))


def rrb_differential(x, b, k, c):
    """Apply the degree-k differential to a cochain."""
    if c.degree != k:
        raise ShapeError(f"cochain degree {c.degree} != {k}")
    c.validate(x, b)
    vec = rrb_differential_matrix(x, b, k).apply(c.vector())
    return RRBCochain.from_vector(x, b, k + 1, vec)


def rrb_cohomology_dim(x, b, k):
    """dim H^k for k >= 1; the degree-0 space is zero, so at k = 1 the
    incoming differential is the zero map."""
    assert k >= 1
    d_out = rrb_differential_matrix(x, b, k).to_matrix()
    if k == 1:
        d_in = Matrix.zero(d_out.cols, 0)
    else:
        d_in = rrb_differential_matrix(x, b, k - 1).to_matrix()
    return homology_dim(d_out, d_in)


# ---------------------------------------------------------------------------
# degree-1 cocycles


def check_derivation(x, b, alpha, beta):
    """The four identities cutting out the degree-1 cocycles.

    alpha(a.a') = alpha(a).a' + a.alpha(a')            (values in the base)
    beta(a.m)   = r(alpha(a), m) + a.beta(m)           (values in the fiber)
    beta(m.a)   = beta(m).a + l(m, alpha(a))
    alpha(R m)  = S(beta(m))
    """
    alg, mod = x.algebra, x.module
    dA, dM = alg.dim, mod.dim
    rep = Report("derivation_pair")
    av = [alpha(basis_vec(dA, i)) for i in range(dA)]
    bv = [beta(basis_vec(dM, u)) for u in range(dM)]
    for i in range(dA):
        ei = basis_vec(dA, i)
        for j in range(dA):
            rep.require(
                "leibniz", (i, j), alpha(alg.mu.on_basis(i, j)),
                tuple(p + q for p, q in
                      zip(b.base.right(av[i], basis_vec(dA, j)),
                          b.base.left(ei, av[j]))))
        for u in range(dM):
            eu = basis_vec(dM, u)
            rep.require(
                "left_action", (i, u), beta(mod.left.on_basis(i, u)),
                tuple(p + q for p, q in
                      zip(b.right_pair(av[i], eu), b.fiber.left(ei, bv[u]))))
            rep.require(
                "right_action", (u, i), beta(mod.right.on_basis(u, i)),
                tuple(p + q for p, q in
                      zip(b.fiber.right(bv[u], ei),
                          b.left_pair(eu, av[i]))))
    for u in range(dM):
        rep.require("intertwine", (u,),
                    alpha(x.rop(basis_vec(dM, u))), b.sop(bv[u]))
    return rep


def derivation_basis(x, b):
    """Basis of the degree-1 cocycles as (alpha, beta) cochains."""
    mat = rrb_differential_matrix(x, b, 1).to_matrix()
    return [RRBCochain.from_vector(x, b, 1, v) for v in kernel_basis(mat)]


# ---------------------------------------------------------------------------
# the restricted complex of a Rota-Baxter pair


def rb_restrict(pair, k, c):
    """Differential of the restricted complex of (A, R) with (M, R_M).

    The pair is read as the relative structure A -> A with coefficients
    M -> M; a degree-k input embeds with every slot map equal to its
    tensor component, the full differential is applied, and the image is
    checked to have all slot maps equal to the new tensor component before
    the duplicates are dropped.  A disagreement would mean the restricted
    complex is not closed under the differential, which signals a bug, so
    it raises instead of returning.
    """
    alg = pair.algebra
    x = RelativeRBAlgebra(alg, Bimodule.adjoint(alg), pair.rop)
    coeff = RRBBimodule(x, pair.module, pair.module, pair.mop,
                        pair.module.left, pair.module.right)
    if c.degree != k:
        raise ShapeError(f"cochain degree {c.degree} != {k}")
    if k == 1:
        emb = RRBCochain(1, c.beta, (c.beta,))
    else:
        emb = RRBCochain(k, c.beta, (c.beta,) * k, c.gamma)
    img = rrb_differential(x, coeff, k, emb)
    for bs in img.beta:
        if bs.matrix != img.alpha.matrix:
            raise StructuralError(
                "restricted image has a slot map disagreeing with its "
                "tensor component")
    return RBCochain(k + 1, img.alpha, img.gamma)


# ---------------------------------------------------------------------------
# the labelled dendriform complex


def _host_dims(d, e):
    return d.dim, e.dim


def dendriform_hat(f, d, e):
    """Present a labelled cochain inside the doubled Hochschild complex.

    The host algebra is the semidirect sum (total of d) (+) d with
    coefficients (total of e) (+) e.  On a pure first-component tuple the
    value is the sum over all labels placed in the first component; with
    exactly one second-component argument, at position i, it is the
    label-i map placed in the second component; with two or more second
    components it vanishes.
    """
    k = f.degree
    dD, dE = _host_dims(d, e)
    if f.maps[0].domain_dim != dD ** k or f.maps[0].codomain_dim != dE:
        raise ShapeError("labelled maps must be D^(x)k -> E")
    ti_host = TensorIndex((2 * dD,) * k)
    ti_d = TensorIndex((dD,) * k)
    out = SparseBuilder(2 * dE, ti_host.size)
    for flat in range(ti_host.size):
        tt = ti_host.unflatten(flat)
        second = [j for j, i in enumerate(tt) if i >= dD]
        if len(second) > 1:
            continue
        col = ti_d.flatten(tuple(i - dD if i >= dD else i for i in tt))
        if not second:
            for w in range(dE):
                acc = ZERO
                for g in f.maps:
                    acc += g.matrix.at(w, col)
                out.add(w, flat, acc)
        else:
            g = f.maps[second[0]]
            for w in range(dE):
                out.add(dE + w, flat, g.matrix.at(w, col))
    return HochschildCochain(
        k, LinearMap(ti_host.size, 2 * dE, out.to_matrix()))


def _labels_from_hat(hat, d, e):
    """Recover the labelled components: label i reads the second-component
    output on tuples whose only second-component argument sits at i."""
    k = hat.degree
    dD, dE = _host_dims(d, e)
    ti_host = TensorIndex((2 * dD,) * k)
    ti_d = TensorIndex((dD,) * k)
    mat = hat.map.matrix
    maps = []
    for i in range(k):
        entries = []
        for w in range(dE):
            for col in range(ti_d.size):
                xt = ti_d.unflatten(col)
                host = tuple(dD + v if j == i else v
                             for j, v in enumerate(xt))
                entries.append(mat.at(dE + w, ti_host.flatten(host)))
        maps.append(LinearMap(ti_d.size, dE, Matrix(dE, ti_d.size, entries)))
    return DendriformCochain(k, maps)


def dendriform_differential(f, d, e):
    """Differential on labelled cochains, through the doubled complex.

    Hat the input, apply the Hochschild differential of the doubled host,
    and read the labels back.  The image is re-hatted and compared to make
    sure nothing was lost; a mismatch means the doubled differential left
    the embedded subspace, which signals a bug, so it raises.
    """
    x, bim = dendriform_to_rrb(d, e)
    host, _ = lift_bimodule(bim)
    hat = dendriform_hat(f, d, e)
    img = hochschild_differential(host, f.degree, hat)
    labels = _labels_from_hat(img, d, e)
    if dendriform_hat(labels, d, e).map != img.map:
        raise StructuralError(
            "the doubled differential left the labelled embedding")
    return labels


def psi_map(x, b, k, f):
    """Comparison map from degree-k cochains on (M_Tot, base) to labelled
    degree-(k+1) cochains on (M, fiber).

    Label 1 pairs the leading argument against the value from the left
    with sign (-1)^(k+1); labels 2..k vanish; label k+1 pairs the trailing
    argument from the right.
    """
    dM, dB, dN = x.module.dim, b.base.dim, b.fiber.dim
    if f.degree != k:
        raise ShapeError(f"cochain degree {f.degree} != {k}")
    if f.map.domain_dim != dM ** k or f.map.codomain_dim != dB:
        raise ShapeError("input must map M^(x)k into the base")
    ti_out = TensorIndex((dM,) * (k + 1))
    ti_in = TensorIndex((dM,) * k)
    fm = f.map.matrix
    sign = ONE if k % 2 else -ONE               # (-1)^(k+1)
    first = SparseBuilder(dN, ti_out.size)
    last = SparseBuilder(dN, ti_out.size)
    for flat in range(ti_out.size):
        mt = ti_out.unflatten(flat)
        lead = ti_in.flatten(mt[1:])
        trail = ti_in.flatten(mt[:k])
        for vb in range(dB):
            fv = fm.at(vb, lead)
            if fv:
                for w, c in enumerate(b.left_pair.data[mt[0]][vb]):
                    if c:
                        first.add(w, flat, sign * fv * c)
            fv = fm.at(vb, trail)
            if fv:
                for w, c in enumerate(b.right_pair.data[vb][mt[k]]):
                    if c:
                        last.add(w, flat, fv * c)
    maps = [LinearMap.zero(ti_out.size, dN) for _ in range(k + 1)]
    maps[0] = LinearMap(ti_out.size, dN, first.to_matrix())
    maps[k] = LinearMap(ti_out.size, dN, last.to_matrix())
    return DendriformCochain(k + 1, maps)


# ---------------------------------------------------------------------------
# the ambient semidirect complex


def semidirect_complex(x, b):
    """The semidirect-sum structure with its own adjoint coefficients."""
    big = semidirect_rrb(b)
    return big, adjoint_bimodule(big)


def semidirect_inclusion_matrix(x, b, k):
    """Coordinates of the degree-k cochains inside the ambient complex.

    alpha becomes the map seeing only A-arguments and valued in the B
    summand; each slot map keeps its position with M and N embedded as
    summands; gamma sees only M-arguments and is valued in B.  The blocks
    of the full differential commute with this inclusion.
    """
    assert k >= 1
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    big_a, big_m = dA + dB, dM + dN
    a_in, bt_in, g_in = cochain_space_dims(x, b, k)
    big, bigb = semidirect_complex(x, b)
    A_in, BT_in, G_in = cochain_space_dims(big, bigb, k)
    out = SparseBuilder(A_in + BT_in + G_in, a_in + bt_in + g_in)
    ti_a, ti_big_a = TensorIndex((dA,) * k), TensorIndex((big_a,) * k)
    for flat in range(ti_a.size):
        big_flat = ti_big_a.flatten(ti_a.unflatten(flat))
        for w in range(dB):
            out.add((dA + w) * ti_big_a.size + big_flat,
                    w * ti_a.size + flat, ONE)
    mix = MixedTensorSpace(k, dA, dM)
    big_mix = MixedTensorSpace(k, big_a, big_m)
    for s in range(1, k + 1):
        idx, big_idx = mix.indexer(s), big_mix.indexer(s)
        col_base = a_in + dN * mix.offset(s)
        row_base = A_in + big_m * big_mix.offset(s)
        for flat in range(idx.size):
            big_flat = big_idx.flatten(idx.unflatten(flat))
            for w in range(dN):
                out.add(row_base + (dM + w) * big_idx.size + big_flat,
                        col_base + w * idx.size + flat, ONE)
    if k >= 2:
        ti_m = TensorIndex((dM,) * (k - 1))
        ti_big_m = TensorIndex((big_m,) * (k - 1))
        for flat in range(ti_m.size):
            big_flat = ti_big_m.flatten(ti_m.unflatten(flat))
            for w in range(dB):
                out.add(A_in + BT_in + (dA + w) * ti_big_m.size + big_flat,
                        a_in + bt_in + w * ti_m.size + flat, ONE)
    return out
