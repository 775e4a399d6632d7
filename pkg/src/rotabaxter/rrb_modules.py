"""Bimodules over relative Rota-Baxter algebras and their constructions.

A bimodule over a relative Rota-Baxter algebra (A, M, R) is a 2-term complex
S: N -> B of A-bimodules together with two pairings

    l: M (x) B -> N      and      r: B (x) M -> N

subject to six identities tying the pairings to the A-actions and two
identities coupling R with S:

    R(m) . S(n) = S( R(m) . n + l(m, S(n)) )
    S(n) . R(m) = S( r(S(n), m) + n . R(m) )

This module provides the axiom check plus the standard constructions:
adjoint, dual, coadjoint, pullback along a morphism, semidirect product,
the lift to a Rota-Baxter bimodule over A (+) M, the bimodule structure of
the total algebra M_Tot on B, the induced dendriform representation, and
the two inverse routes (from dendriform data, and from invertible
derivation pairs).
"""

from __future__ import annotations

from .algebra import (
    Bimodule, DendriformRepresentation, LinearMap, Report, ShapeError,
    StructuralError, StructureConstants, add_vec, basis_vec, dual_bimodule,
    semidirect_algebra, total_algebra,
)
from .linalg import Matrix, Q, inverse
# Rota-Baxter bimodule pairs are re-exported here so they live next to the
# rest of the bimodule machinery.
from .rrb import (
    RBBimodulePair, RelativeRBAlgebra, check_rb_bimodule, induced_dendriform,
)

ZERO = Q(0)


class RRBBimodule:
    """Bimodule (S: N -> B, l, r) over a relative Rota-Baxter algebra.

    `base` (B) and `fiber` (N) are bimodules over the algebra A of `over`,
    `sop` is the complex map S: N -> B, and the two pairings consume the
    module M of `over`: left_pair is l: M (x) B -> N, right_pair is
    r: B (x) M -> N.
    """

    __slots__ = ("over", "base", "fiber", "sop", "left_pair", "right_pair")

    def __init__(self, over, base, fiber, sop, left_pair, right_pair):
        alg = over.algebra
        for part in (base, fiber):
            if part.over is not alg and part.over.mu != alg.mu:
                raise ShapeError("base and fiber must be bimodules over A")
        if sop.domain_dim != fiber.dim or sop.codomain_dim != base.dim:
            raise ShapeError("complex map must send the fiber into the base")
        dM = over.module.dim
        if (left_pair.dim_left, left_pair.dim_right, left_pair.dim_out) != \
                (dM, base.dim, fiber.dim):
            raise ShapeError("left pairing must be dimM x dimB -> dimN")
        if (right_pair.dim_left, right_pair.dim_right,
                right_pair.dim_out) != (base.dim, dM, fiber.dim):
            raise ShapeError("right pairing must be dimB x dimM -> dimN")
        self.over = over
        self.base = base
        self.fiber = fiber
        self.sop = sop
        self.left_pair = left_pair
        self.right_pair = right_pair

    @staticmethod
    def zero(over, dim_base, dim_fiber):
        """All-zero base, fiber, complex map and pairings."""
        alg = over.algebra
        return RRBBimodule(
            over,
            Bimodule.zero_actions(alg, dim_base),
            Bimodule.zero_actions(alg, dim_fiber),
            LinearMap.zero(dim_fiber, dim_base),
            StructureConstants.zero(over.module.dim, dim_base, dim_fiber),
            StructureConstants.zero(dim_base, over.module.dim, dim_fiber))


class MTotActionBimodule:
    """The base space B as a bimodule over the total algebra M_Tot.

    Actions: m |> b = R(m).b - S(l(m, b)) and b <| m = b.R(m) - S(r(b, m)).
    """

    __slots__ = ("total", "actions")

    def __init__(self, total, actions):
        if actions.over is not total:
            raise ShapeError("actions must be a bimodule over the total algebra")
        self.total = total
        self.actions = actions


def check_pairing_identities(module, base, fiber, left_pair, right_pair):
    """The six identities tying the pairings to the three A-bimodules.

    l(a.m, b) = a.l(m, b)    l(m.a, b) = l(m, a.b)    l(m, b.a) = l(m, b).a
    r(a.b, m) = a.r(b, m)    r(b.a, m) = r(b, a.m)    r(b, m.a) = r(b, m).a
    """
    rep = Report("pairing_identities")
    alg = module.over
    dA, dM, dB = alg.dim, module.dim, base.dim
    for i in range(dA):
        a = basis_vec(dA, i)
        for u in range(dM):
            m = basis_vec(dM, u)
            for w in range(dB):
                b = basis_vec(dB, w)
                rep.require("pair_l_left", (i, u, w),
                            left_pair(module.left.on_basis(i, u), b),
                            fiber.left(a, left_pair.on_basis(u, w)))
                rep.require("pair_l_middle", (u, i, w),
                            left_pair(module.right.on_basis(u, i), b),
                            left_pair(m, base.left.on_basis(i, w)))
                rep.require("pair_l_right", (u, w, i),
                            left_pair(m, base.right.on_basis(w, i)),
                            fiber.right(left_pair.on_basis(u, w), a))
                rep.require("pair_r_left", (i, w, u),
                            right_pair(base.left.on_basis(i, w), m),
                            fiber.left(a, right_pair.on_basis(w, u)))
                rep.require("pair_r_middle", (w, i, u),
                            right_pair(base.right.on_basis(w, i), m),
                            right_pair(b, module.left.on_basis(i, u)))
                rep.require("pair_r_right", (w, u, i),
                            right_pair(b, module.right.on_basis(u, i)),
                            fiber.right(right_pair.on_basis(w, u), a))
    return rep


def check_operator_identities(b):
    """The two identities coupling R with the complex map S."""
    rep = Report("operator_identities")
    x = b.over
    dM, dN = x.module.dim, b.fiber.dim
    rm = [x.rop(basis_vec(dM, u)) for u in range(dM)]
    sn = [b.sop(basis_vec(dN, v)) for v in range(dN)]
    for u in range(dM):
        m = basis_vec(dM, u)
        for v in range(dN):
            n = basis_vec(dN, v)
            rep.require("operator_left", (u, v),
                        b.base.left(rm[u], sn[v]),
                        b.sop(add_vec(b.fiber.left(rm[u], n),
                                      b.left_pair(m, sn[v]))))
            rep.require("operator_right", (v, u),
                        b.base.right(sn[v], rm[u]),
                        b.sop(add_vec(b.right_pair(sn[v], m),
                                      b.fiber.right(n, rm[u]))))
    return rep


def check_rrb_bimodule(b):
    """All eight defining identities, exactly, on basis tuples."""
    rep = Report("rrb_bimodule")
    rep.merge(check_pairing_identities(
        b.over.module, b.base, b.fiber, b.left_pair, b.right_pair))
    rep.merge(check_operator_identities(b))
    return rep


def adjoint_bimodule(x):
    """The structure as a bimodule over itself: B = A, N = M, S = R.

    l is the right A-action on M and r is the left A-action on M.
    """
    return RRBBimodule(x, Bimodule.adjoint(x.algebra), x.module, x.rop,
                       x.module.right, x.module.left)


def dual_rrb_bimodule(b):
    """The dual bimodule on the transposed complex -S*: B* -> N*.

    New base N*, new fiber B*, A-actions by the dual bimodules, pairings
    l*(m, f_N)(b) = f_N(r(b, m)) and r*(f_N, m)(b) = f_N(l(m, b)).
    """
    dM = b.over.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    lstar = StructureConstants.build(
        dM, dN, dB,
        lambda u, v: tuple(b.right_pair.data[w][u][v] for w in range(dB)))
    rstar = StructureConstants.build(
        dN, dM, dB,
        lambda v, u: tuple(b.left_pair.data[u][w][v] for w in range(dB)))
    return RRBBimodule(b.over, dual_bimodule(b.fiber), dual_bimodule(b.base),
                       -b.sop.transpose(), lstar, rstar)


def coadjoint_bimodule(x):
    """Dual of the adjoint: complex -R*: A* -> M* with transposed pairings."""
    return dual_rrb_bimodule(adjoint_bimodule(x))


def morphism_induced_bimodule(mor):
    """Pull the target structure back along a morphism (phi, psi).

    A acts on the target's algebra B and module N through phi, and the
    pairings use psi: l(m, b) = psi(m).b, r(b, m) = b.psi(m).
    """
    src, tgt = mor.source, mor.target
    alg = src.algebra
    dA, dM = alg.dim, src.module.dim
    dB, dN = tgt.algebra.dim, tgt.module.dim
    fa = [mor.phi(basis_vec(dA, i)) for i in range(dA)]
    fm = [mor.psi(basis_vec(dM, u)) for u in range(dM)]
    base = Bimodule(
        alg, dB,
        StructureConstants.build(
            dA, dB, dB, lambda i, w: tgt.algebra.mu(fa[i], basis_vec(dB, w))),
        StructureConstants.build(
            dB, dA, dB, lambda w, i: tgt.algebra.mu(basis_vec(dB, w), fa[i])),
        tgt.algebra.basis_names)
    fiber = Bimodule(
        alg, dN,
        StructureConstants.build(
            dA, dN, dN,
            lambda i, v: tgt.module.left(fa[i], basis_vec(dN, v))),
        StructureConstants.build(
            dN, dA, dN,
            lambda v, i: tgt.module.right(basis_vec(dN, v), fa[i])),
        tgt.module.basis_names)
    left_pair = StructureConstants.build(
        dM, dB, dN, lambda u, w: tgt.module.right(fm[u], basis_vec(dB, w)))
    right_pair = StructureConstants.build(
        dB, dM, dN, lambda w, u: tgt.module.left(basis_vec(dB, w), fm[u]))
    return RRBBimodule(src, base, fiber, tgt.rop, left_pair, right_pair)


def semidirect_rrb(b):
    """The semidirect structure M (+) N -> A (+) B.

    Algebra: semidirect product of A with B.  Module actions:
      (a, b) |> (m, n) = (a.m, a.n + r(b, m))
      (m, n) <| (a, b) = (m.a, l(m, b) + n.a)
    Operator: R (+) S, block diagonal.  Basis order: A then B, M then N.
    """
    x = b.over
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    big_alg = semidirect_algebra(b.base)
    nA, nM = dA + dB, dM + dN

    def left_act(i, u):
        out = [ZERO] * nM
        if i < dA and u < dM:
            for k, v in enumerate(x.module.left.data[i][u]):
                out[k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.left.data[i][u - dM]):
                out[dM + k] = v
        elif u < dM:
            for k, v in enumerate(b.right_pair.data[i - dA][u]):
                out[dM + k] = v
        return out

    def right_act(u, i):
        out = [ZERO] * nM
        if u < dM and i < dA:
            for k, v in enumerate(x.module.right.data[u][i]):
                out[k] = v
        elif u < dM:
            for k, v in enumerate(b.left_pair.data[u][i - dA]):
                out[dM + k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.right.data[u - dM][i]):
                out[dM + k] = v
        return out

    big_mod = Bimodule(
        big_alg, nM,
        StructureConstants.build(nA, nM, nM, left_act),
        StructureConstants.build(nM, nA, nM, right_act),
        x.module.basis_names + b.fiber.basis_names)
    rows = []
    for i in range(dA):
        rows.append(list(x.rop.matrix.row(i)) + [ZERO] * dN)
    for w in range(dB):
        rows.append([ZERO] * dM + list(b.sop.matrix.row(w)))
    return RelativeRBAlgebra(big_alg, big_mod,
                             LinearMap(nM, nA, Matrix.from_rows(rows)))


def lift_bimodule(b):
    """Lift to an (A (+) M)-bimodule on B (+) N with the shifted map S-hat.

    Actions:  (a, m).(b, n) = (a.b, a.n + l(m, b))
              (b, n).(a, m) = (b.a, r(b, m) + n.a)
    and S-hat(b, n) = (S(n), 0).  Requires only the six pairing identities;
    the pair (B (+) N, S-hat) then satisfies the two Rota-Baxter bimodule
    identities over (A (+) M, R-hat) exactly when the two operator
    identities hold.
    """
    pairing = check_pairing_identities(
        b.over.module, b.base, b.fiber, b.left_pair, b.right_pair)
    if not pairing:
        raise StructuralError("pairing identities fail:\n" +
                              pairing.describe())
    x = b.over
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = b.base.dim, b.fiber.dim
    host = semidirect_algebra(x.module)
    nB = dB + dN

    def left_act(i, w):
        out = [ZERO] * nB
        if i < dA and w < dB:
            for k, v in enumerate(b.base.left.data[i][w]):
                out[k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.left.data[i][w - dB]):
                out[dB + k] = v
        elif w < dB:
            for k, v in enumerate(b.left_pair.data[i - dA][w]):
                out[dB + k] = v
        return out

    def right_act(w, i):
        out = [ZERO] * nB
        if w < dB and i < dA:
            for k, v in enumerate(b.base.right.data[w][i]):
                out[k] = v
        elif w < dB:
            for k, v in enumerate(b.right_pair.data[w][i - dA]):
                out[dB + k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.right.data[w - dB][i]):
                out[dB + k] = v
        return out

    lifted = Bimodule(
        host, nB,
        StructureConstants.build(dA + dM, nB, nB, left_act),
        StructureConstants.build(nB, dA + dM, nB, right_act),
        b.base.basis_names + b.fiber.basis_names)
    rows = []
    for w in range(dB):
        rows.append([ZERO] * dB + list(b.sop.matrix.row(w)))
    for _ in range(dN):
        rows.append([ZERO] * nB)
    return lifted, LinearMap(nB, nB, Matrix.from_rows(rows))


def mtot_action_bimodule(b):
    """B as a bimodule over the total algebra M_Tot of the induced products.

    m |> b = R(m).b - S(l(m, b)) and b <| m = b.R(m) - S(r(b, m)).
    """
    x = b.over
    _, mtot, _ = induced_dendriform(x)
    dM, dB = x.module.dim, b.base.dim
    rm = [x.rop(basis_vec(dM, u)) for u in range(dM)]

    def left_act(u, w):
        drop = b.sop(b.left_pair.on_basis(u, w))
        hit = b.base.left(rm[u], basis_vec(dB, w))
        return tuple(p - q for p, q in zip(hit, drop))

    def right_act(w, u):
        drop = b.sop(b.right_pair.on_basis(w, u))
        hit = b.base.right(basis_vec(dB, w), rm[u])
        return tuple(p - q for p, q in zip(hit, drop))

    actions = Bimodule(
        mtot, dB,
        StructureConstants.build(dM, dB, dB, left_act),
        StructureConstants.build(dB, dM, dB, right_act),
        b.base.basis_names)
    return MTotActionBimodule(mtot, actions)


def induced_dendriform_representation(b):
    """N as a representation of the induced dendriform structure on M.

    m < n = l(m, S(n)),  m > n = R(m).n,  n < m = n.R(m),  n > m = r(S(n), m).
    """
    x = b.over
    den, _, _ = induced_dendriform(x)
    dM, dN = x.module.dim, b.fiber.dim
    rm = [x.rop(basis_vec(dM, u)) for u in range(dM)]
    sn = [b.sop(basis_vec(dN, v)) for v in range(dN)]
    left_prec = StructureConstants.build(
        dM, dN, dN, lambda u, v: b.left_pair(basis_vec(dM, u), sn[v]))
    left_succ = StructureConstants.build(
        dM, dN, dN, lambda u, v: b.fiber.left(rm[u], basis_vec(dN, v)))
    right_prec = StructureConstants.build(
        dN, dM, dN, lambda v, u: b.fiber.right(basis_vec(dN, v), rm[u]))
    right_succ = StructureConstants.build(
        dN, dM, dN, lambda v, u: b.right_pair(sn[v], basis_vec(dM, u)))
    return DendriformRepresentation(
        den, dN, left_prec, left_succ, right_prec, right_succ,
        b.fiber.basis_names)


def dendriform_to_rrb(d, e):
    """Present dendriform data (D, E) as a relative Rota-Baxter structure.

    D with the identity operator into its total algebra D_Tot, where D_Tot
    acts on D by x.y = x > y and y.x = y < x; E with the identity into
    E_Tot, where E_Tot carries the summed actions and E the one-sided ones;
    pairings l(x, e) = x < e and r(e, x) = e > x.  The induced dendriform
    structure and representation recover (d, e) tensor for tensor.
    """
    dtot = total_algebra(d)
    dmod = Bimodule(dtot, d.dim, d.succ, d.prec, d.basis_names)
    x = RelativeRBAlgebra(dtot, dmod, LinearMap.identity(d.dim))
    etot = Bimodule(dtot, e.dim,
                    e.left_prec + e.left_succ,
                    e.right_prec + e.right_succ,
                    e.basis_names)
    efib = Bimodule(dtot, e.dim, e.left_succ, e.right_prec, e.basis_names)
    bim = RRBBimodule(x, etot, efib, LinearMap.identity(e.dim),
                      e.left_prec, e.right_succ)
    return x, bim


class DifferentialPair:
    """A derivation d: A -> M together with a compatible map delta: B -> N.

    d satisfies d(a.a') = a.d(a') + d(a).a'; base and fiber are A-bimodules
    whose pairings l, r satisfy the six pairing identities; delta satisfies
      delta(a.b) = a.delta(b) + l(d(a), b)
      delta(b.a) = r(b, d(a)) + delta(b).a
    """

    __slots__ = ("algebra", "module", "base", "fiber", "d", "delta",
                 "left_pair", "right_pair")

    def __init__(self, algebra, module, base, fiber, d, delta,
                 left_pair, right_pair):
        if d.domain_dim != algebra.dim or d.codomain_dim != module.dim:
            raise ShapeError("derivation must map the algebra into the module")
        if delta.domain_dim != base.dim or delta.codomain_dim != fiber.dim:
            raise ShapeError("delta must map the base into the fiber")
        self.algebra = algebra
        self.module = module
        self.base = base
        self.fiber = fiber
        self.d = d
        self.delta = delta
        self.left_pair = left_pair
        self.right_pair = right_pair


def check_differential_pair(p):
    """Derivation law, pairing identities, and the two delta laws."""
    rep = Report("differential_pair")
    alg = p.algebra
    dA, dB = alg.dim, p.base.dim
    da = [p.d(basis_vec(dA, i)) for i in range(dA)]
    for i in range(dA):
        a = basis_vec(dA, i)
        for j in range(dA):
            rep.require("derivation", (i, j),
                        p.d(alg.mu.on_basis(i, j)),
                        add_vec(p.module.left(a, da[j]),
                                p.module.right(da[i], basis_vec(dA, j))))
    rep.merge(check_pairing_identities(
        p.module, p.base, p.fiber, p.left_pair, p.right_pair))
    for i in range(dA):
        a = basis_vec(dA, i)
        for w in range(dB):
            b = basis_vec(dB, w)
            rep.require("delta_left", (i, w),
                        p.delta(p.base.left.on_basis(i, w)),
                        add_vec(p.fiber.left(a, p.delta(b)),
                                p.left_pair(da[i], b)))
            rep.require("delta_right", (w, i),
                        p.delta(p.base.right.on_basis(w, i)),
                        add_vec(p.right_pair(b, da[i]),
                                p.fiber.right(p.delta(b), a)))
    return rep


def invert_differential_pair(p):
    """Invert d and delta into a relative Rota-Baxter structure.

    Needs dim M = dim A and dim N = dim B with both maps invertible; then
    R = d^{-1} and S = delta^{-1} satisfy the operator identities because
    the derivation and delta laws transport across the inverses.
    """
    check = check_differential_pair(p)
    if not check:
        raise StructuralError("differential pair laws fail:\n" +
                              check.describe())
    if p.d.domain_dim != p.d.codomain_dim or \
            p.delta.domain_dim != p.delta.codomain_dim:
        raise StructuralError("inversion needs dim M = dim A, dim N = dim B")
    rinv = inverse(p.d.matrix)
    sinv = inverse(p.delta.matrix)
    if rinv is None or sinv is None:
        raise StructuralError("derivation or delta is not invertible")
    x = RelativeRBAlgebra(p.algebra, p.module, LinearMap.from_matrix(rinv))
    bim = RRBBimodule(x, p.base, p.fiber, LinearMap.from_matrix(sinv),
                      p.left_pair, p.right_pair)
    return x, bim
