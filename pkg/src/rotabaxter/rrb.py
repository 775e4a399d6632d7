"""Relative Rota-Baxter algebras and their basic constructions.

A relative Rota-Baxter algebra is a triple (A, M, R): an associative algebra
A, an A-bimodule M, and a linear operator R: M -> A satisfying

    R(m) . R(m') = R( R(m) . m' + m . R(m') )

(weight zero).  This module provides the axiom checks, the lift of R to a
Rota-Baxter operator on the semidirect product A (+) M, the induced dendriform
structure on M, the r-matrix (associative Yang-Baxter) constructions, and the
endomorphism example built from a 2-term chain complex.
"""

from __future__ import annotations

from .algebra import (
    AssocAlgebra, Bimodule, DendriformAlgebra, LinearMap, Report, ShapeError,
    StructureConstants, add_vec, basis_vec, semidirect_algebra, total_algebra,
    zero_vec,
)
from .linalg import Matrix, Q, TensorIndex, kernel_basis, solve


class RelativeRBAlgebra:
    """(A, M, R): algebra, bimodule, and the operator R: M -> A."""

    __slots__ = ("algebra", "module", "rop")

    def __init__(self, algebra, module, rop):
        if module.over is not algebra and module.over.mu != algebra.mu:
            raise ShapeError("module is not over the given algebra")
        if rop.domain_dim != module.dim or rop.codomain_dim != algebra.dim:
            raise ShapeError("operator must map the module into the algebra")
        self.algebra = algebra
        self.module = module
        self.rop = rop

    @staticmethod
    def zero_operator(module):
        return RelativeRBAlgebra(
            module.over, module,
            LinearMap.zero(module.dim, module.over.dim))


class RRBMorphism:
    """(phi, psi) between relative Rota-Baxter algebras."""

    __slots__ = ("source", "target", "phi", "psi")

    def __init__(self, source, target, phi, psi):
        if phi.domain_dim != source.algebra.dim or \
                phi.codomain_dim != target.algebra.dim:
            raise ShapeError("phi must map source algebra to target algebra")
        if psi.domain_dim != source.module.dim or \
                psi.codomain_dim != target.module.dim:
            raise ShapeError("psi must map source module to target module")
        self.source = source
        self.target = target
        self.phi = phi
        self.psi = psi

    @staticmethod
    def identity(x):
        return RRBMorphism(x, x, LinearMap.identity(x.algebra.dim),
                           LinearMap.identity(x.module.dim))


class RMatrix:
    """Element r = sum r[i][j] e_i (x) e_j of A (x) A."""

    __slots__ = ("over", "tensor")

    def __init__(self, over, tensor):
        tensor = tuple(tuple(Q(x) for x in row) for row in tensor)
        if len(tensor) != over.dim or \
                any(len(row) != over.dim for row in tensor):
            raise ShapeError("r-matrix tensor must be dimA x dimA")
        self.over = over
        self.tensor = tensor


class TwoTermComplex:
    """A 2-term chain complex A_1 -> A_0 (no condition beyond shapes)."""

    __slots__ = ("dim0", "dim1", "d")

    def __init__(self, dim0, dim1, d):
        if d.domain_dim != dim1 or d.codomain_dim != dim0:
            raise ShapeError("differential must map degree 1 to degree 0")
        self.dim0 = dim0
        self.dim1 = dim1
        self.d = d


def check_relative_rb(x):
    """The relative Rota-Baxter identity on all basis pairs of M."""
    rep = Report("relative_rota_baxter")
    alg, mod, rop = x.algebra, x.module, x.rop
    dM = mod.dim
    rm = [rop(basis_vec(dM, u)) for u in range(dM)]
    for u in range(dM):
        for w in range(dM):
            lhs = alg.mu(rm[u], rm[w])
            inner = add_vec(mod.left(rm[u], basis_vec(dM, w)),
                            mod.right(basis_vec(dM, u), rm[w]))
            rep.require("rrb_identity", (u, w), lhs, rop(inner))
    return rep


def check_rota_baxter(alg, rop):
    """The (plain) Rota-Baxter identity of an operator A -> A."""
    if rop.domain_dim != alg.dim or rop.codomain_dim != alg.dim:
        raise ShapeError("Rota-Baxter operator must be an endomorphism")
    return check_relative_rb(
        RelativeRBAlgebra(alg, Bimodule.adjoint(alg), rop))


def check_morphism(mor):
    """The four morphism conditions, reported in order of first failure."""
    rep = Report("rrb_morphism")
    src, tgt = mor.source, mor.target
    phi, psi = mor.phi, mor.psi
    dA, dM = src.algebra.dim, src.module.dim
    fa = [phi(basis_vec(dA, i)) for i in range(dA)]
    fm = [psi(basis_vec(dM, u)) for u in range(dM)]
    for i in range(dA):
        for j in range(dA):
            rep.require("algebra_morphism", (i, j),
                        phi(src.algebra.mu.on_basis(i, j)),
                        tgt.algebra.mu(fa[i], fa[j]))
    for i in range(dA):
        for u in range(dM):
            rep.require("left_action_intertwine", (i, u),
                        psi(src.module.left.on_basis(i, u)),
                        tgt.module.left(fa[i], fm[u]))
            rep.require("right_action_intertwine", (u, i),
                        psi(src.module.right.on_basis(u, i)),
                        tgt.module.right(fm[u], fa[i]))
    for u in range(dM):
        rep.require("operator_intertwine", (u,),
                    phi(src.rop(basis_vec(dM, u))), tgt.rop(fm[u]))
    return rep


def lift_to_rb(x):
    """Lift R to the operator (a, m) -> (R(m), 0) on A (+) M.

    Returns the semidirect product algebra and the lifted operator; the
    operator satisfies the Rota-Baxter identity exactly when x passes
    check_relative_rb.
    """
    total = semidirect_algebra(x.module)
    dA, dM = x.algebra.dim, x.module.dim
    n = dA + dM
    rows = []
    for i in range(dA):
        rows.append([Q(0)] * dA + list(x.rop.matrix.row(i)))
    for _ in range(dM):
        rows.append([Q(0)] * n)
    return total, LinearMap(n, n, Matrix.from_rows(rows))


def induced_dendriform(x):
    """Dendriform structure m < m' = m.R(m'), m > m' = R(m).m' on M.

    Returns (dendriform algebra, its total associative algebra M_Tot, report
    checking that R: M_Tot -> A is an algebra morphism).
    """
    mod, alg, rop = x.module, x.algebra, x.rop
    dM = mod.dim
    rm = [rop(basis_vec(dM, u)) for u in range(dM)]
    prec = StructureConstants.build(
        dM, dM, dM, lambda u, w: mod.right(basis_vec(dM, u), rm[w]))
    succ = StructureConstants.build(
        dM, dM, dM, lambda u, w: mod.left(rm[u], basis_vec(dM, w)))
    den = DendriformAlgebra(dM, prec, succ, mod.basis_names)
    mtot = total_algebra(den)
    rep = Report("total_operator_is_algebra_morphism")
    for u in range(dM):
        for w in range(dM):
            rep.require("R_multiplicative", (u, w),
                        rop(mtot.mu.on_basis(u, w)),
                        alg.mu(rm[u], rm[w]))
    return den, mtot, rep


def aybe_check(r):
    """Associative Yang-Baxter equation, coordinatewise in A (x) A (x) A.

    With r = sum r[i][j] e_i (x) e_j and a second copy indexed (p, q):
      r13 r12 = (e_i e_p) (x) e_q (x) e_j
      r12 r23 = e_i (x) (e_j e_p) (x) e_q
      r23 r13 = e_i (x) e_p (x) (e_q e_j)
    and the equation is r13 r12 - r12 r23 + r23 r13 = 0.
    """
    alg, t = r.over, r.tensor
    d = alg.dim
    total = [[[Q(0)] * d for _ in range(d)] for _ in range(d)]
    mu = alg.mu.data
    for i in range(d):
        for j in range(d):
            rij = t[i][j]
            if not rij:
                continue
            for p in range(d):
                for q in range(d):
                    c = rij * t[p][q]
                    if not c:
                        continue
                    for s in range(d):
                        v = mu[i][p][s]
                        if v:
                            total[s][q][j] += c * v
                        v = mu[j][p][s]
                        if v:
                            total[i][s][q] -= c * v
                        v = mu[q][j][s]
                        if v:
                            total[i][p][s] += c * v
    rep = Report("aybe")
    for a in range(d):
        for b in range(d):
            for c in range(d):
                if total[a][b][c]:
                    rep.require("aybe_coordinate", (a, b, c),
                                (total[a][b][c],), (Q(0),))
    return rep


def rb_from_r_matrix(r):
    """The Rota-Baxter operator R(a) = sum r[i][j] e_i . a . e_j."""
    alg, t = r.over, r.tensor
    d = alg.dim
    cols = []
    for a in range(d):
        v = zero_vec(d)
        for i in range(d):
            for j in range(d):
                if t[i][j]:
                    w = alg.mu(alg.mu.on_basis(i, a), basis_vec(d, j))
                    v = add_vec(v, tuple(t[i][j] * x for x in w))
        cols.append(v)
    m = Matrix.from_rows([[cols[a][i] for a in range(d)] for i in range(d)])
    return alg, LinearMap(d, d, m)


def rb_bimodule_from_r_matrix(r, mod):
    """The induced operator R_M(m) = sum r[i][j] e_i . m . e_j on a bimodule."""
    alg, t = r.over, r.tensor
    if mod.over.mu != alg.mu:
        raise ShapeError("bimodule must be over the r-matrix algebra")
    d, dM = alg.dim, mod.dim
    cols = []
    for u in range(dM):
        v = zero_vec(dM)
        for i in range(d):
            for j in range(d):
                if t[i][j]:
                    w = mod.right(mod.left.on_basis(i, u), basis_vec(d, j))
                    v = add_vec(v, tuple(t[i][j] * x for x in w))
        cols.append(v)
    m = Matrix.from_rows([[cols[u][p] for u in range(dM)]
                          for p in range(dM)])
    return LinearMap(dM, dM, m)


class RBBimodulePair:
    """(M, R_M) over a Rota-Baxter algebra (A, R)."""

    __slots__ = ("algebra", "rop", "module", "mop")

    def __init__(self, algebra, rop, module, mop):
        if mop.domain_dim != module.dim or mop.codomain_dim != module.dim:
            raise ShapeError("module operator must be an endomorphism of M")
        if rop.domain_dim != algebra.dim or rop.codomain_dim != algebra.dim:
            raise ShapeError("algebra operator must be an endomorphism of A")
        self.algebra = algebra
        self.rop = rop
        self.module = module
        self.mop = mop


def check_rb_bimodule(pair):
    """The two Rota-Baxter bimodule identities on basis pairs:

      R(a) . R_M(m) = R_M( R(a) . m + a . R_M(m) )
      R_M(m) . R(a) = R_M( R_M(m) . a + m . R(a) )
    """
    rep = Report("rb_bimodule")
    alg, mod = pair.algebra, pair.module
    dA, dM = alg.dim, mod.dim
    ra = [pair.rop(basis_vec(dA, i)) for i in range(dA)]
    rm = [pair.mop(basis_vec(dM, u)) for u in range(dM)]
    for i in range(dA):
        a = basis_vec(dA, i)
        for u in range(dM):
            m = basis_vec(dM, u)
            rep.require(
                "rb_bimodule_left", (i, u),
                mod.left(ra[i], rm[u]),
                pair.mop(add_vec(mod.left(ra[i], m), mod.left(a, rm[u]))))
            rep.require(
                "rb_bimodule_right", (u, i),
                mod.right(rm[u], ra[i]),
                pair.mop(add_vec(mod.right(rm[u], a), mod.right(m, ra[i]))))
    return rep


def _reshape(vec, rows, cols):
    return Matrix(rows, cols, vec)


def endomorphism_rrb(cx):
    """The relative Rota-Baxter algebra of a 2-term complex A_1 -> A_0.

    A = End(complex) = {(f_0, f_1) : f_0 d = d f_1} with composition;
    M = Hom(A_0, ker d) with (f_0, f_1) . phi = f_1 phi and
    phi . (f_0, f_1) = phi f_0; R(phi) = (0, phi d).

    The basis of A is the deterministic kernel basis of the chain-map
    condition (f_0 coordinates row-major, then f_1); the basis of M is
    k_s (x) e_j^* over the kernel basis (k_s) of d, ordered (s, j).
    """
    d0, d1 = cx.dim0, cx.dim1
    dmat = cx.d.matrix  # d0 x d1
    nvars = d0 * d0 + d1 * d1
    cond = []
    for i in range(d0):
        for q in range(d1):
            row = [Q(0)] * nvars
            for j in range(d0):
                row[i * d0 + j] += dmat.at(j, q)
            for p in range(d1):
                row[d0 * d0 + p * d1 + q] -= dmat.at(i, p)
            cond.append(row)
    cond_m = Matrix.from_rows(cond) if cond else Matrix.zero(0, nvars)
    end_basis = kernel_basis(cond_m)
    n = len(end_basis)
    kmat = Matrix.from_rows([[v[t] for v in end_basis]
                             for t in range(nvars)]) if n else \
        Matrix.zero(nvars, 0)

    def coords_in_end(vec):
        x = solve(kmat, vec)
        assert x is not None, "vector is not a chain map"
        return x

    def split(vec):
        f0 = _reshape(vec[:d0 * d0], d0, d0)
        f1 = _reshape(vec[d0 * d0:], d1, d1)
        return f0, f1

    def product(i, j):
        a0, a1 = split(end_basis[i])
        b0, b1 = split(end_basis[j])
        c0, c1 = a0 * b0, a1 * b1
        return coords_in_end(c0.entries + c1.entries)

    alg = AssocAlgebra(n, StructureConstants.build(n, n, n, product))

    kd = kernel_basis(dmat)
    rM = len(kd)
    dM = rM * d0
    kdmat = Matrix.from_rows([[v[p] for v in kd]
                              for p in range(d1)]) if rM else \
        Matrix.zero(d1, 0)

    def kd_coords(vec):
        x = solve(kdmat, vec)
        assert x is not None, "vector is not in ker d"
        return x

    def left_act(i, su):
        s, j = divmod(su, d0)
        _, f1 = split(end_basis[i])
        img = kd_coords(f1.apply(kd[s]))
        out = [Q(0)] * dM
        for t in range(rM):
            out[t * d0 + j] = img[t]
        return out

    def right_act(su, i):
        s, j0 = divmod(su, d0)
        f0, _ = split(end_basis[i])
        out = [Q(0)] * dM
        for j in range(d0):
            out[s * d0 + j] = f0.at(j0, j)
        return out

    mod = Bimodule(alg, dM,
                   StructureConstants.build(n, dM, dM, left_act),
                   StructureConstants.build(dM, n, dM, right_act))

    rop_cols = []
    for su in range(dM):
        s, j = divmod(su, d0)
        f1_flat = tuple(dmat.at(j, q) * kd[s][p]
                        for p in range(d1) for q in range(d1))
        rop_cols.append(coords_in_end(tuple([Q(0)] * (d0 * d0)) + f1_flat))
    rop = LinearMap(dM, n, Matrix.from_rows(
        [[rop_cols[su][t] for su in range(dM)] for t in range(n)]))
    return RelativeRBAlgebra(alg, mod, rop)
