"""Extensions of relative Rota-Baxter algebras and two-term homotopy data.

First half: an abelian extension glues a base structure (A, M, R) to a
two-term complex S: N -> B so that both the algebra row and the module
row are short exact and every product touching the embedded fiber
vanishes.  A section (a pair of right inverses of the projections)
induces a bimodule on the fiber and measures its own failure to split
the products by a degree-2 cochain; that cochain is a cocycle, its
class does not depend on the section, and cocycles differing by a
coboundary give isomorphic extensions.  build_extension and
extract_cocycle are the two constructive directions.

Second half: two-term homotopy data, meaning a chain complex with a
binary product that is associative only up to a ternary corrector, a
matching two-term bimodule, and an operator triple whose defects are
controlled by a bilinear corrector.  When both differentials vanish
("skeletal") the degree-0 layers form an ordinary relative Rota-Baxter
algebra with a bimodule, and the three correctors assemble into a
degree-3 cocycle.  skeletal_to_triple and triple_to_skeletal convert in
both directions, tensor-exactly.
"""

from __future__ import annotations

from itertools import product

from .algebra import (
    AssocAlgebra, Bimodule, LinearMap, Report, ShapeError, StructuralError,
    StructureConstants, Violation, add_vec, basis_vec, check_associativity,
    check_bimodule, sub_vec,
)
from .cohomology import RRBCochain, rrb_differential, rrb_differential_matrix
from .linalg import Matrix, Q, rank, solve
from .rrb import (
    RelativeRBAlgebra, RRBMorphism, TwoTermComplex, check_morphism,
    check_relative_rb,
)
from .rrb_modules import RRBBimodule, check_rrb_bimodule

ZERO = Q(0)
ONE = Q(1)


# ---------------------------------------------------------------------------
# abelian extensions


class AbelianExtension:
    """A total structure exhibiting a base and a two-term fiber complex.

    `fiber` is a TwoTermComplex read as S: N -> B, with dim1 the module
    fiber N and dim0 the algebra fiber B.  The four maps embed the fiber
    into the total structure and project the total onto the base:

        alg_incl: B -> A-hat      alg_proj: A-hat -> A
        mod_incl: N -> M-hat      mod_proj: M-hat -> M

    The constructor only checks shapes; exactness of both rows, the
    morphism property of the four maps and the vanishing of products
    meeting the fiber are the job of check_abelian_extension.
    """

    __slots__ = ("base", "fiber", "total", "alg_incl", "mod_incl",
                 "alg_proj", "mod_proj")

    def __init__(self, base, fiber, total, alg_incl, mod_incl,
                 alg_proj, mod_proj):
        dA, dM = base.algebra.dim, base.module.dim
        dB, dN = fiber.dim0, fiber.dim1
        if total.algebra.dim != dA + dB or total.module.dim != dM + dN:
            raise ShapeError("total dimensions must be base plus fiber")
        if (alg_incl.domain_dim, alg_incl.codomain_dim) != \
                (dB, total.algebra.dim):
            raise ShapeError("algebra embedding must send the fiber into "
                             "the total")
        if (mod_incl.domain_dim, mod_incl.codomain_dim) != \
                (dN, total.module.dim):
            raise ShapeError("module embedding must send the fiber into "
                             "the total")
        if (alg_proj.domain_dim, alg_proj.codomain_dim) != \
                (total.algebra.dim, dA):
            raise ShapeError("algebra projection must send the total onto "
                             "the base")
        if (mod_proj.domain_dim, mod_proj.codomain_dim) != \
                (total.module.dim, dM):
            raise ShapeError("module projection must send the total onto "
                             "the base")
        self.base = base
        self.fiber = fiber
        self.total = total
        self.alg_incl = alg_incl
        self.mod_incl = mod_incl
        self.alg_proj = alg_proj
        self.mod_proj = mod_proj


class Section:
    """Right inverses (s, sbar) of the two projections of an extension."""

    __slots__ = ("s", "sbar")

    def __init__(self, s, sbar):
        self.s = s
        self.sbar = sbar

    def validate(self, e):
        """Shapes plus proj o s = id on both rows; returns self."""
        dA, dM = e.base.algebra.dim, e.base.module.dim
        if (self.s.domain_dim, self.s.codomain_dim) != \
                (dA, e.total.algebra.dim):
            raise ShapeError("s must map the base algebra into the total")
        if (self.sbar.domain_dim, self.sbar.codomain_dim) != \
                (dM, e.total.module.dim):
            raise ShapeError("sbar must map the base module into the total")
        if e.alg_proj.compose(self.s).matrix != Matrix.identity(dA):
            raise StructuralError("s is not a right inverse of the algebra "
                                  "projection")
        if e.mod_proj.compose(self.sbar).matrix != Matrix.identity(dM):
            raise StructuralError("sbar is not a right inverse of the module "
                                  "projection")
        return self


def _right_inverse(p):
    # columns solved with all free coordinates zero, hence deterministic
    cols = []
    for i in range(p.codomain_dim):
        sol = solve(p.matrix, basis_vec(p.codomain_dim, i))
        if sol is None:
            raise StructuralError("projection is not surjective")
        cols.append(sol)
    return _map_from_columns(cols, p.codomain_dim, p.domain_dim)


def _map_from_columns(cols, dom, cod):
    entries = tuple(cols[j][i] for i in range(cod) for j in range(dom))
    return LinearMap(dom, cod, Matrix(cod, dom, entries))


def canonical_section(e):
    """The deterministic section with all free fiber coordinates zero.

    On an extension produced by build_extension (coordinates ordered
    base then fiber) this is a |-> (a, 0) and m |-> (m, 0).
    """
    return Section(_right_inverse(e.alg_proj),
                   _right_inverse(e.mod_proj)).validate(e)


def _fiber_coords(incl, vec, what):
    """Coordinates of a vector inside the image of an embedding."""
    sol = solve(incl.matrix, tuple(vec))
    if sol is None:
        raise StructuralError(what + " does not land in the fiber")
    return sol


def _fiber_rrb(fiber):
    # the complex alone, with zero products and zero actions
    alg = AssocAlgebra.zero(fiber.dim0)
    return RelativeRBAlgebra(alg, Bimodule.zero_actions(alg, fiber.dim1),
                             fiber.d)


def _merge_prefixed(rep, sub, prefix):
    for v in sub.violations:
        rep.violations.append(Violation(prefix + ":" + v.law, v.args,
                                        v.lhs, v.rhs))


def check_abelian_extension(e):
    """Exact rows, structure maps are morphisms, the total is genuine.

    The embedding is checked as a morphism out of the fiber complex with
    its zero products, which is exactly the requirement that products
    and actions meeting the embedded fiber vanish inside the total.
    """
    rep = Report("abelian_extension")
    dA, dM = e.base.algebra.dim, e.base.module.dim
    dB, dN = e.fiber.dim0, e.fiber.dim1
    rep.require("alg_embedding_injective", (),
                (rank(e.alg_incl.matrix),), (dB,))
    rep.require("mod_embedding_injective", (),
                (rank(e.mod_incl.matrix),), (dN,))
    rep.require("alg_projection_surjective", (),
                (rank(e.alg_proj.matrix),), (dA,))
    rep.require("mod_projection_surjective", (),
                (rank(e.mod_proj.matrix),), (dM,))
    # with the rank and dimension facts above, proj o incl = 0 pins
    # image of the embedding = kernel of the projection on both rows
    rep.require("alg_row_exact", (),
                e.alg_proj.compose(e.alg_incl).matrix.entries,
                Matrix.zero(dA, dB).entries)
    rep.require("mod_row_exact", (),
                e.mod_proj.compose(e.mod_incl).matrix.entries,
                Matrix.zero(dM, dN).entries)
    _merge_prefixed(rep, check_morphism(
        RRBMorphism(_fiber_rrb(e.fiber), e.total, e.alg_incl, e.mod_incl)),
        "fiber_embedding")
    _merge_prefixed(rep, check_morphism(
        RRBMorphism(e.total, e.base, e.alg_proj, e.mod_proj)),
        "base_projection")
    _merge_prefixed(rep, check_relative_rb(e.total), "total")
    _merge_prefixed(rep, check_associativity(e.total.algebra), "total")
    _merge_prefixed(rep, check_bimodule(e.total.module), "total")
    return rep


def _nonzero_blocks(c):
    names = []
    if not c.alpha.matrix.is_zero():
        names.append("alpha")
    for s, bs in enumerate(c.beta, start=1):
        if not bs.matrix.is_zero():
            names.append(f"beta[slot {s}]")
    if c.gamma is not None and not c.gamma.matrix.is_zero():
        names.append("gamma")
    return names


def _require_cocycle(x, b, c):
    image = rrb_differential(x, b, c.degree, c)
    bad = _nonzero_blocks(image)
    if bad:
        raise StructuralError(
            "not a cocycle: the differential is nonzero in " + ", ".join(bad))


def _block_incl(small, big, offset):
    entries = tuple(ONE if i == offset + j else ZERO
                    for i in range(big) for j in range(small))
    return LinearMap(small, big, Matrix(big, small, entries))


def _block_proj(big, small):
    entries = tuple(ONE if i == j else ZERO
                    for i in range(small) for j in range(big))
    return LinearMap(big, small, Matrix(small, big, entries))


def build_extension(x, b, c):
    """Glue the base x to the fiber of b along a degree-2 cocycle.

    Products, actions and operator on A (+) B and M (+) N:

        (a, b)(a', b') = (a a', a.b' + b.a' + alpha(a, a'))
        (a, b).(m, n)  = (a.m,  a.n + r(b, m) + beta_2(a, m))
        (m, n).(a, b)  = (m.a,  l(m, b) + n.a + beta_1(m, a))
        R-hat(m, n)    = (R(m), S(n) + gamma(m))

    with beta_1, beta_2 the two slot maps of the cochain.  Gluing along
    the zero cocycle reproduces the semidirect structure of b.
    """
    if c.degree != 2:
        raise ShapeError("extensions are glued along degree-2 cochains")
    c.validate(x, b)
    _require_cocycle(x, b, c)
    alg, mod = x.algebra, x.module
    dA, dM = alg.dim, mod.dim
    dB, dN = b.base.dim, b.fiber.dim
    nA, nM = dA + dB, dM + dN
    alpha, (beta1, beta2), gamma = c.alpha, c.beta, c.gamma

    def hat_mu(i, j):
        out = [ZERO] * nA
        if i < dA and j < dA:
            for k, v in enumerate(alg.mu.data[i][j]):
                out[k] = v
            for k, v in enumerate(alpha(basis_vec(dA * dA, i * dA + j))):
                out[dA + k] = v
        elif i < dA:
            for k, v in enumerate(b.base.left.data[i][j - dA]):
                out[dA + k] = v
        elif j < dA:
            for k, v in enumerate(b.base.right.data[i - dA][j]):
                out[dA + k] = v
        return out

    def hat_left(i, u):
        out = [ZERO] * nM
        if i < dA and u < dM:
            for k, v in enumerate(mod.left.data[i][u]):
                out[k] = v
            for k, v in enumerate(beta2(basis_vec(dA * dM, i * dM + u))):
                out[dM + k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.left.data[i][u - dM]):
                out[dM + k] = v
        elif u < dM:
            for k, v in enumerate(b.right_pair.data[i - dA][u]):
                out[dM + k] = v
        return out

    def hat_right(u, i):
        out = [ZERO] * nM
        if u < dM and i < dA:
            for k, v in enumerate(mod.right.data[u][i]):
                out[k] = v
            for k, v in enumerate(beta1(basis_vec(dM * dA, u * dA + i))):
                out[dM + k] = v
        elif u < dM:
            for k, v in enumerate(b.left_pair.data[u][i - dA]):
                out[dM + k] = v
        elif i < dA:
            for k, v in enumerate(b.fiber.right.data[u - dM][i]):
                out[dM + k] = v
        return out

    big_alg = AssocAlgebra(
        nA, StructureConstants.build(nA, nA, nA, hat_mu),
        alg.basis_names + b.base.basis_names)
    big_mod = Bimodule(
        big_alg, nM,
        StructureConstants.build(nA, nM, nM, hat_left),
        StructureConstants.build(nM, nA, nM, hat_right),
        mod.basis_names + b.fiber.basis_names)
    flat = []
    for i in range(dA):
        flat.extend(x.rop.matrix.row(i))
        flat.extend([ZERO] * dN)
    for w in range(dB):
        flat.extend(gamma.matrix.row(w))
        flat.extend(b.sop.matrix.row(w))
    total = RelativeRBAlgebra(big_alg, big_mod,
                              LinearMap(nM, nA, Matrix(nA, nM, flat)))
    for bad in (check_associativity(big_alg), check_bimodule(big_mod),
                check_relative_rb(total)):
        if not bad:
            raise StructuralError(
                "glued total fails its axioms, so the coefficient bimodule "
                "is not valid:\n" + bad.describe())
    return AbelianExtension(
        x, TwoTermComplex(dB, dN, b.sop), total,
        _block_incl(dB, nA, dA), _block_incl(dN, nM, dM),
        _block_proj(nA, dA), _block_proj(nM, dM))


def extract_cocycle(e, sec):
    """The degree-2 cochain measuring the section's failure to split.

    alpha(a, a') = s(a) s(a') - s(a a')        (product defect)
    beta_1(m, a) = sbar(m) s(a) - sbar(m a)    (right action defect)
    beta_2(a, m) = s(a) sbar(m) - sbar(a m)    (left action defect)
    gamma(m)     = R-hat(sbar(m)) - s(R(m))    (operator defect)

    Each defect is checked to land in the embedded fiber and returned
    in fiber coordinates.  For an extension made by build_extension,
    read with its canonical section, this recovers the glued cocycle
    exactly.
    """
    sec.validate(e)
    base, tot = e.base, e.total
    dA, dM = base.algebra.dim, base.module.dim
    sa = [sec.s(basis_vec(dA, i)) for i in range(dA)]
    sm = [sec.sbar(basis_vec(dM, u)) for u in range(dM)]
    alpha_cols, beta1_cols, beta2_cols, gamma_cols = {}, {}, {}, {}
    for i in range(dA):
        for j in range(dA):
            defect = sub_vec(tot.algebra.mu(sa[i], sa[j]),
                             sec.s(base.algebra.mu.on_basis(i, j)))
            alpha_cols[i * dA + j] = _fiber_coords(
                e.alg_incl, defect, "product defect")
    for u in range(dM):
        for i in range(dA):
            defect = sub_vec(tot.module.right(sm[u], sa[i]),
                             sec.sbar(base.module.right.on_basis(u, i)))
            beta1_cols[u * dA + i] = _fiber_coords(
                e.mod_incl, defect, "right action defect")
            defect = sub_vec(tot.module.left(sa[i], sm[u]),
                             sec.sbar(base.module.left.on_basis(i, u)))
            beta2_cols[i * dM + u] = _fiber_coords(
                e.mod_incl, defect, "left action defect")
    for u in range(dM):
        defect = sub_vec(tot.rop(sm[u]), sec.s(base.rop(basis_vec(dM, u))))
        gamma_cols[u] = _fiber_coords(e.alg_incl, defect, "operator defect")
    dB, dN = e.fiber.dim0, e.fiber.dim1
    return RRBCochain(
        2,
        _map_from_columns(alpha_cols, dA * dA, dB),
        (_map_from_columns(beta1_cols, dM * dA, dN),
         _map_from_columns(beta2_cols, dA * dM, dN)),
        _map_from_columns(gamma_cols, dM, dB))


def induced_fiber_bimodule(e, sec):
    """Push the total structure onto the fiber through a section.

    Base actions   a.b = s(a)  i(b),   b.a = i(b)  s(a)
    Fiber actions  a.n = s(a)  i(n),   n.a = i(n)  s(a)
    Pairings       l(m, b) = sbar(m) i(b),   r(b, m) = i(b) sbar(m)

    Every value is checked to land back in the embedded fiber.  The
    result does not depend on the chosen section, because sections
    differ by fiber values and products of fiber values vanish.
    """
    sec.validate(e)
    tot = e.total
    dA, dM = e.base.algebra.dim, e.base.module.dim
    dB, dN = e.fiber.dim0, e.fiber.dim1
    sa = [sec.s(basis_vec(dA, i)) for i in range(dA)]
    sm = [sec.sbar(basis_vec(dM, u)) for u in range(dM)]
    ib = [e.alg_incl(basis_vec(dB, w)) for w in range(dB)]
    im = [e.mod_incl(basis_vec(dN, v)) for v in range(dN)]

    def in_b(vec):
        return _fiber_coords(e.alg_incl, vec, "induced product")

    def in_n(vec):
        return _fiber_coords(e.mod_incl, vec, "induced action")

    base = Bimodule(
        e.base.algebra, dB,
        StructureConstants.build(
            dA, dB, dB, lambda i, w: in_b(tot.algebra.mu(sa[i], ib[w]))),
        StructureConstants.build(
            dB, dA, dB, lambda w, i: in_b(tot.algebra.mu(ib[w], sa[i]))))
    fiber = Bimodule(
        e.base.algebra, dN,
        StructureConstants.build(
            dA, dN, dN, lambda i, v: in_n(tot.module.left(sa[i], im[v]))),
        StructureConstants.build(
            dN, dA, dN, lambda v, i: in_n(tot.module.right(im[v], sa[i]))))
    left_pair = StructureConstants.build(
        dM, dB, dN, lambda u, w: in_n(tot.module.right(sm[u], ib[w])))
    right_pair = StructureConstants.build(
        dB, dM, dN, lambda w, u: in_n(tot.module.left(ib[w], sm[u])))
    return RRBBimodule(e.base, base, fiber, e.fiber.d, left_pair, right_pair)


def cobounding_cochain(x, b, c1, c2):
    """A cochain whose differential is c1 - c2, or None if none exists.

    Decides whether two cocycles of equal degree are cohomologous; the
    witness returned has one degree less and all free coordinates zero.
    """
    if c1.degree != c2.degree or c1.degree < 2:
        raise ShapeError("cobounding needs two cochains of equal degree >= 2")
    mat = rrb_differential_matrix(x, b, c1.degree - 1).to_matrix()
    diff = tuple(p - q for p, q in zip(c1.vector(), c2.vector()))
    sol = solve(mat, diff)
    if sol is None:
        return None
    return RRBCochain.from_vector(x, b, c1.degree - 1, sol)


def _same_bimodule(b1, b2):
    return (b1.base.left.data == b2.base.left.data and
            b1.base.right.data == b2.base.right.data and
            b1.fiber.left.data == b2.fiber.left.data and
            b1.fiber.right.data == b2.fiber.right.data and
            b1.sop == b2.sop and
            b1.left_pair.data == b2.left_pair.data and
            b1.right_pair.data == b2.right_pair.data)


def _shear(e1, e2, sec1, sec2, corr, incl1, incl2, proj):
    # v |-> s2(p(v)) + i2( i1-coords(v - s1(p(v))) + corr(p(v)) )
    n = proj.domain_dim
    cod = incl2.codomain_dim
    cols = []
    for j in range(n):
        v = basis_vec(n, j)
        a = proj(v)
        y = _fiber_coords(incl1, sub_vec(v, sec1(a)), "section complement")
        cols.append(add_vec(sec2(a), incl2(add_vec(y, corr(a)))))
    return _map_from_columns(cols, n, cod)


def extension_iso_from_cobounding(e1, e2, theta, vartheta):
    """The isomorphism (a, b) -> (a, b + theta(a)) between extensions.

    e1 and e2 must extend the same base by the same fiber, with
    extracted cocycles differing by the differential of the degree-1
    cochain (theta, vartheta).  In the canonical coordinates of each
    side the morphism is phi(a, b) = (a, b + theta(a)) paired with
    psi(m, n) = (m, n + vartheta(m)); it restricts to the identity on
    the fiber and covers the identity on the base.
    """
    x = e1.base
    dA, dM = x.algebra.dim, x.module.dim
    dB, dN = e1.fiber.dim0, e1.fiber.dim1
    if (theta.domain_dim, theta.codomain_dim) != (dA, dB):
        raise ShapeError("theta must map the base algebra into the fiber")
    if (vartheta.domain_dim, vartheta.codomain_dim) != (dM, dN):
        raise ShapeError("vartheta must map the base module into the fiber")
    sec1, sec2 = canonical_section(e1), canonical_section(e2)
    coeff = induced_fiber_bimodule(e1, sec1)
    if not _same_bimodule(coeff, induced_fiber_bimodule(e2, sec2)):
        raise StructuralError("the extensions induce different fiber "
                              "bimodules")
    c1 = extract_cocycle(e1, sec1)
    c2 = extract_cocycle(e2, sec2)
    bound = rrb_differential(x, coeff, 1, RRBCochain(1, theta, (vartheta,)))
    diff = tuple(p - q for p, q in zip(c1.vector(), c2.vector()))
    if tuple(bound.vector()) != diff:
        raise StructuralError("the cochain does not cobound the difference "
                              "of the extracted cocycles")
    phi = _shear(e1, e2, sec1.s, sec2.s, theta,
                 e1.alg_incl, e2.alg_incl, e1.alg_proj)
    psi = _shear(e1, e2, sec1.sbar, sec2.sbar, vartheta,
                 e1.mod_incl, e2.mod_incl, e1.mod_proj)
    mor = RRBMorphism(e1.total, e2.total, phi, psi)
    rep = check_morphism(mor)
    if not rep:
        raise StructuralError("glued map fails the morphism laws:\n" +
                              rep.describe())
    return mor


def check_extension_morphism(e1, e2, mor):
    """Morphism laws plus commutation with both extension rows.

    Beyond the four morphism identities, the map must restrict to the
    identity on the fiber (phi o i1 = i2 and likewise on modules) and
    cover the identity on the base (p2 o phi = p1 and likewise).
    """
    rep = Report("extension_morphism")
    rep.merge(check_morphism(mor))
    rep.require("fixes_fiber_algebra", (),
                mor.phi.compose(e1.alg_incl).matrix.entries,
                e2.alg_incl.matrix.entries)
    rep.require("fixes_fiber_module", (),
                mor.psi.compose(e1.mod_incl).matrix.entries,
                e2.mod_incl.matrix.entries)
    rep.require("covers_base_algebra", (),
                e2.alg_proj.compose(mor.phi).matrix.entries,
                e1.alg_proj.matrix.entries)
    rep.require("covers_base_module", (),
                e2.mod_proj.compose(mor.psi).matrix.entries,
                e1.mod_proj.matrix.entries)
    return rep


# ---------------------------------------------------------------------------
# two-term homotopy data


class TwoTermAInfty:
    """Chain complex d: A1 -> A0 with a product and a ternary corrector.

    The product has the three blocks degree allows,

        mu00: A0 (x) A0 -> A0,  mu01: A0 (x) A1 -> A1,  mu10: A1 (x) A0 -> A1

    (a block on A1 (x) A1 would land in degree 2 and is absent), and the
    corrector mu3 maps A0 (x) A0 (x) A0 to A1, stored on the flattened
    cube with the first factor most significant.
    """

    __slots__ = ("dim0", "dim1", "d", "mu00", "mu01", "mu10", "mu3")

    def __init__(self, dim0, dim1, d, mu2, mu3):
        mu00, mu01, mu10 = mu2
        if (d.domain_dim, d.codomain_dim) != (dim1, dim0):
            raise ShapeError("differential must map degree 1 to degree 0")
        if (mu00.dim_left, mu00.dim_right, mu00.dim_out) != \
                (dim0, dim0, dim0):
            raise ShapeError("degree (0,0) block must be A0 x A0 -> A0")
        if (mu01.dim_left, mu01.dim_right, mu01.dim_out) != \
                (dim0, dim1, dim1):
            raise ShapeError("degree (0,1) block must be A0 x A1 -> A1")
        if (mu10.dim_left, mu10.dim_right, mu10.dim_out) != \
                (dim1, dim0, dim1):
            raise ShapeError("degree (1,0) block must be A1 x A0 -> A1")
        if (mu3.domain_dim, mu3.codomain_dim) != (dim0 ** 3, dim1):
            raise ShapeError("corrector must map the degree-0 cube into A1")
        self.dim0 = dim0
        self.dim1 = dim1
        self.d = d
        self.mu00 = mu00
        self.mu01 = mu01
        self.mu10 = mu10
        self.mu3 = mu3

    @staticmethod
    def zero(dim0, dim1):
        return TwoTermAInfty(
            dim0, dim1, LinearMap.zero(dim1, dim0),
            (StructureConstants.zero(dim0, dim0, dim0),
             StructureConstants.zero(dim0, dim1, dim1),
             StructureConstants.zero(dim1, dim0, dim1)),
            LinearMap.zero(dim0 ** 3, dim1))

    @property
    def skeletal(self):
        return self.d.matrix.is_zero()


class AInftyBimodule:
    """Two-term bimodule over a TwoTermAInfty.

    Action blocks, named by the degrees of the two inputs:

        left00: A0 (x) M0 -> M0     right00: M0 (x) A0 -> M0
        left01: A0 (x) M1 -> M1     right01: M0 (x) A1 -> M1
        left10: A1 (x) M0 -> M1     right10: M1 (x) A0 -> M1

    The corrector mu3m has one block per position of the degree-0 module
    factor among three inputs, each stored on the flattened triple
    product with the first factor most significant.
    """

    __slots__ = ("over", "dim0", "dim1", "dm", "left00", "left01", "left10",
                 "right00", "right01", "right10", "mu3m")

    def __init__(self, over, dim0, dim1, dm, left, right, mu3m):
        left00, left01, left10 = left
        right00, right01, right10 = right
        mu3m = tuple(mu3m)
        d0, d1 = over.dim0, over.dim1
        if (dm.domain_dim, dm.codomain_dim) != (dim1, dim0):
            raise ShapeError("differential must map degree 1 to degree 0")
        blocks = ((left00, (d0, dim0, dim0), "left00"),
                  (left01, (d0, dim1, dim1), "left01"),
                  (left10, (d1, dim0, dim1), "left10"),
                  (right00, (dim0, d0, dim0), "right00"),
                  (right01, (dim0, d1, dim1), "right01"),
                  (right10, (dim1, d0, dim1), "right10"))
        for block, want, name in blocks:
            got = (block.dim_left, block.dim_right, block.dim_out)
            if got != want:
                raise ShapeError(f"{name} block must be "
                                 f"{want[0]} x {want[1]} -> {want[2]}")
        if len(mu3m) != 3:
            raise ShapeError("the corrector needs three slot blocks")
        for s, block in enumerate(mu3m, start=1):
            if (block.domain_dim, block.codomain_dim) != \
                    (d0 * d0 * dim0, dim1):
                raise ShapeError(f"corrector slot {s} must map the mixed "
                                 "triple product into M1")
        self.over = over
        self.dim0 = dim0
        self.dim1 = dim1
        self.dm = dm
        self.left00 = left00
        self.left01 = left01
        self.left10 = left10
        self.right00 = right00
        self.right01 = right01
        self.right10 = right10
        self.mu3m = mu3m

    @staticmethod
    def zero(over, dim0, dim1):
        d0, d1 = over.dim0, over.dim1
        return AInftyBimodule(
            over, dim0, dim1, LinearMap.zero(dim1, dim0),
            (StructureConstants.zero(d0, dim0, dim0),
             StructureConstants.zero(d0, dim1, dim1),
             StructureConstants.zero(d1, dim0, dim1)),
            (StructureConstants.zero(dim0, d0, dim0),
             StructureConstants.zero(dim0, d1, dim1),
             StructureConstants.zero(dim1, d0, dim1)),
            tuple(LinearMap.zero(d0 * d0 * dim0, dim1) for _ in range(3)))

    @staticmethod
    def adjoint(over):
        """The algebra as a bimodule over itself, layer by layer."""
        return AInftyBimodule(
            over, over.dim0, over.dim1, over.d,
            (over.mu00, over.mu01, over.mu10),
            (over.mu00, over.mu01, over.mu10),
            (over.mu3, over.mu3, over.mu3))

    @property
    def skeletal(self):
        return self.dm.matrix.is_zero()


class HomotopyRRBOperator:
    """Operator triple (r0, r1, r2) from a module pair to an algebra pair.

    r0 and r1 act degreewise from the module complex into the algebra
    complex; r2 is a bilinear corrector M0 (x) M0 -> A1 absorbing the
    operator defects.
    """

    __slots__ = ("r0", "r1", "r2")

    def __init__(self, r0, r1, r2):
        if (r2.dim_left, r2.dim_right) != \
                (r0.domain_dim, r0.domain_dim):
            raise ShapeError("corrector must consume two degree-0 module "
                             "factors")
        if r2.dim_out != r1.codomain_dim:
            raise ShapeError("corrector must land in the degree-1 algebra "
                             "layer")
        self.r0 = r0
        self.r1 = r1
        self.r2 = r2

    @staticmethod
    def zero(a, m):
        return HomotopyRRBOperator(
            LinearMap.zero(m.dim0, a.dim0),
            LinearMap.zero(m.dim1, a.dim1),
            StructureConstants.zero(m.dim0, m.dim0, a.dim1))


def _kron3(u, v, w):
    return tuple(p * q * r for p in u for q in v for r in w)


class _Graded:
    """A vector tagged by layer: space "a" or "m", degree 0 or 1."""

    __slots__ = ("space", "deg", "vec")

    def __init__(self, space, deg, vec):
        self.space = space
        self.deg = deg
        self.vec = tuple(vec)

    def __add__(self, other):
        assert (self.space, self.deg) == (other.space, other.deg)
        return _Graded(self.space, self.deg, add_vec(self.vec, other.vec))

    def __sub__(self, other):
        assert (self.space, self.deg) == (other.space, other.deg)
        return _Graded(self.space, self.deg, sub_vec(self.vec, other.vec))


class _TwoTermEnv:
    """Evaluates d, mu2, mu3 on layer-tagged vectors by block dispatch.

    Writing the defining identities once against this dispatcher yields
    both the algebra check (all inputs in the "a" layer) and the full
    substituted bimodule identity list (exactly one input moved to the
    "m" layer) without spelling the expansions out by hand.
    """

    __slots__ = ("alg", "mod", "blocks")

    def __init__(self, alg, mod=None):
        self.alg = alg
        self.mod = mod
        self.blocks = {("a", 0, "a", 0): alg.mu00,
                       ("a", 0, "a", 1): alg.mu01,
                       ("a", 1, "a", 0): alg.mu10}
        if mod is not None:
            self.blocks.update({("a", 0, "m", 0): mod.left00,
                                ("a", 0, "m", 1): mod.left01,
                                ("a", 1, "m", 0): mod.left10,
                                ("m", 0, "a", 0): mod.right00,
                                ("m", 0, "a", 1): mod.right01,
                                ("m", 1, "a", 0): mod.right10})

    def d(self, x):
        lin = self.alg.d if x.space == "a" else self.mod.dm
        return _Graded(x.space, 0, lin(x.vec))

    def mu2(self, x, y):
        block = self.blocks[(x.space, x.deg, y.space, y.deg)]
        space = "m" if "m" in (x.space, y.space) else "a"
        return _Graded(space, x.deg + y.deg, block(x.vec, y.vec))

    def mu3(self, x, y, z):
        spaces = (x.space, y.space, z.space)
        flat = _kron3(x.vec, y.vec, z.vec)
        if spaces == ("a", "a", "a"):
            return _Graded("a", 1, self.alg.mu3(flat))
        return _Graded("m", 1, self.mod.mu3m[spaces.index("m")](flat))


# each law: name, input degrees, and both sides as expressions over the
# dispatcher; substituting layers is then purely mechanical
_TWO_TERM_LAWS = (
    ("complex_right", (0, 1),
     lambda E, a, p: E.d(E.mu2(a, p)),
     lambda E, a, p: E.mu2(a, E.d(p))),
    ("complex_left", (1, 0),
     lambda E, p, a: E.d(E.mu2(p, a)),
     lambda E, p, a: E.mu2(E.d(p), a)),
    ("complex_exchange", (1, 1),
     lambda E, p, q: E.mu2(E.d(p), q),
     lambda E, p, q: E.mu2(p, E.d(q))),
    ("associator_boundary", (0, 0, 0),
     lambda E, a, b, c: E.d(E.mu3(a, b, c)),
     lambda E, a, b, c: E.mu2(E.mu2(a, b), c) - E.mu2(a, E.mu2(b, c))),
    ("associator_right", (0, 0, 1),
     lambda E, a, b, p: E.mu3(a, b, E.d(p)),
     lambda E, a, b, p: E.mu2(E.mu2(a, b), p) - E.mu2(a, E.mu2(b, p))),
    ("associator_middle", (0, 1, 0),
     lambda E, a, p, c: E.mu3(a, E.d(p), c),
     lambda E, a, p, c: E.mu2(E.mu2(a, p), c) - E.mu2(a, E.mu2(p, c))),
    ("associator_left", (1, 0, 0),
     lambda E, p, b, c: E.mu3(E.d(p), b, c),
     lambda E, p, b, c: E.mu2(E.mu2(p, b), c) - E.mu2(p, E.mu2(b, c))),
    ("corrector_cocycle", (0, 0, 0, 0),
     lambda E, a, b, c, e: (E.mu3(E.mu2(a, b), c, e) -
                            E.mu3(a, E.mu2(b, c), e) +
                            E.mu3(a, b, E.mu2(c, e))),
     lambda E, a, b, c, e: (E.mu2(E.mu3(a, b, c), e) +
                            E.mu2(a, E.mu3(b, c, e)))),
)


def _basis_elements(env, degs, spaces):
    dims = []
    for deg, space in zip(degs, spaces):
        if space == "a":
            dims.append(env.alg.dim0 if deg == 0 else env.alg.dim1)
        else:
            dims.append(env.mod.dim0 if deg == 0 else env.mod.dim1)
    for combo in product(*(range(n) for n in dims)):
        yield combo, [_Graded(space, deg, basis_vec(dim, idx))
                      for space, deg, dim, idx
                      in zip(spaces, degs, dims, combo)]


def check_two_term_ainfty(a):
    """All defining identities on all basis tuples, degrees forced."""
    rep = Report("two_term_ainfty")
    env = _TwoTermEnv(a)
    for law, degs, lhs, rhs in _TWO_TERM_LAWS:
        spaces = ("a",) * len(degs)
        for combo, elems in _basis_elements(env, degs, spaces):
            rep.require(law, combo,
                        lhs(env, *elems).vec, rhs(env, *elems).vec)
    return rep


def check_ainfty_bimodule(a, m):
    """Every defining identity with exactly one input in the module layer."""
    if (m.left00.dim_left, m.left10.dim_left) != (a.dim0, a.dim1):
        raise ShapeError("bimodule blocks do not fit the algebra dimensions")
    rep = Report("ainfty_bimodule")
    env = _TwoTermEnv(a, m)
    for law, degs, lhs, rhs in _TWO_TERM_LAWS:
        for pos in range(len(degs)):
            spaces = tuple("m" if q == pos else "a"
                           for q in range(len(degs)))
            for combo, elems in _basis_elements(env, degs, spaces):
                rep.require(f"{law}/input {pos + 1}", combo,
                            lhs(env, *elems).vec, rhs(env, *elems).vec)
    return rep


def check_homotopy_rrb_operator(a, m, r):
    """The five operator conditions on all basis tuples.

    In the final condition the three mixed-corrector terms are composed
    with r1 so that every term lands in the degree-1 algebra layer.
    """
    if (r.r0.domain_dim, r.r0.codomain_dim) != (m.dim0, a.dim0) or \
            (r.r1.domain_dim, r.r1.codomain_dim) != (m.dim1, a.dim1):
        raise ShapeError("operator layers must map the module complex into "
                         "the algebra complex")
    rep = Report("homotopy_rrb_operator")
    d0, d1 = m.dim0, m.dim1
    r0m = [r.r0(basis_vec(d0, u)) for u in range(d0)]
    r1n = [r.r1(basis_vec(d1, v)) for v in range(d1)]
    # the operator intertwines the two complexes
    for v in range(d1):
        rep.require("chain_map", (v,),
                    a.d(r1n[v]), r.r0(m.dm(basis_vec(d1, v))))
    # the degree-0 defect is the boundary of the corrector
    for u in range(d0):
        eu = basis_vec(d0, u)
        for w in range(d0):
            ew = basis_vec(d0, w)
            inner = add_vec(m.left00(r0m[u], ew), m.right00(eu, r0m[w]))
            rep.require("baxter_boundary", (u, w),
                        sub_vec(r.r0(inner), a.mu00(r0m[u], r0m[w])),
                        a.d(r.r2.on_basis(u, w)))
    # the degree-1 defects are corrector values on boundaries
    for u in range(d0):
        eu = basis_vec(d0, u)
        for v in range(d1):
            nv = basis_vec(d1, v)
            dn = m.dm(nv)
            inner = add_vec(m.left01(r0m[u], nv), m.right01(eu, r1n[v]))
            rep.require("baxter_right", (u, v),
                        sub_vec(r.r1(inner), a.mu01(r0m[u], r1n[v])),
                        r.r2(eu, dn))
            inner = add_vec(m.left10(r1n[v], eu), m.right10(nv, r0m[u]))
            rep.require("baxter_left", (v, u),
                        sub_vec(r.r1(inner), a.mu10(r1n[v], r0m[u])),
                        r.r2(dn, eu))
    # the two correctors are compatible
    for u in range(d0):
        eu = basis_vec(d0, u)
        for w in range(d0):
            ew = basis_vec(d0, w)
            r2uw = r.r2.on_basis(u, w)
            circ_uw = add_vec(m.left00(r0m[u], ew), m.right00(eu, r0m[w]))
            for z in range(d0):
                ez = basis_vec(d0, z)
                r2wz = r.r2.on_basis(w, z)
                circ_wz = add_vec(m.left00(r0m[w], ez),
                                  m.right00(ew, r0m[z]))
                acc = a.mu01(r0m[u], r2wz)
                acc = sub_vec(acc, r.r1(m.right01(eu, r2wz)))
                acc = sub_vec(acc, r.r2(circ_uw, ez))
                acc = add_vec(acc, r.r2(eu, circ_wz))
                acc = sub_vec(acc, a.mu10(r2uw, r0m[z]))
                acc = add_vec(acc, r.r1(m.left10(r2uw, ez)))
                acc = add_vec(acc, r.r1(m.mu3m[0](
                    _kron3(eu, r0m[w], r0m[z]))))
                acc = add_vec(acc, r.r1(m.mu3m[1](
                    _kron3(r0m[u], ew, r0m[z]))))
                acc = add_vec(acc, r.r1(m.mu3m[2](
                    _kron3(r0m[u], r0m[w], ez))))
                rep.require("baxter_corrector", (u, w, z), acc,
                            a.mu3(_kron3(r0m[u], r0m[w], r0m[z])))
    return rep


# ---------------------------------------------------------------------------
# the skeletal correspondence


def skeletal_to_triple(a, m, r, verify=True):
    """Read a skeletal pair plus operator triple as a structure triple.

    The degree-0 layers form the relative Rota-Baxter algebra, the
    degree-1 layers its coefficient bimodule with the mixed action
    blocks as pairings, and the three correctors a degree-3 cochain:

        algebra (A0, mu00), module (M0, left00/right00), operator r0;
        base (A1, mu01/mu10), fiber (M1, left01/right10), complex map
        r1, pairings l = right01 and r = left10;
        cochain (mu3, mu3m, r2).

    With verify on, the assembled triple must pass its three checks;
    a failure signals inconsistent input and raises.
    """
    if not (a.skeletal and m.skeletal):
        raise StructuralError("both differentials must vanish")
    alg = AssocAlgebra(a.dim0, a.mu00)
    module = Bimodule(alg, m.dim0, m.left00, m.right00)
    x = RelativeRBAlgebra(alg, module, r.r0)
    coeff = RRBBimodule(
        x,
        Bimodule(alg, a.dim1, a.mu01, a.mu10),
        Bimodule(alg, m.dim1, m.left01, m.right10),
        r.r1, m.right01, m.left10)
    gamma = LinearMap(
        m.dim0 ** 2, a.dim1,
        Matrix(a.dim1, m.dim0 ** 2,
               tuple(r.r2.data[u][v][w] for w in range(a.dim1)
                     for u in range(m.dim0) for v in range(m.dim0))))
    c = RRBCochain(3, a.mu3, m.mu3m, gamma)
    if verify:
        for bad in (check_relative_rb(x), check_rrb_bimodule(coeff)):
            if not bad:
                raise StructuralError("skeletal data does not flatten to a "
                                      "valid triple:\n" + bad.describe())
        _require_cocycle(x, coeff, c)
    return x, coeff, c


def triple_to_skeletal(x, b, c, verify=True):
    """Spread a structure triple across two skeletal layers.

    Inverse of skeletal_to_triple on the nose: the base algebra and
    module sit in degree 0, the coefficient base and fiber in degree 1
    with the pairings as mixed action blocks, and the cochain becomes
    the three correctors.  With verify on, c must be a degree-3
    cocycle.
    """
    if c.degree != 3:
        raise ShapeError("skeletal data encodes a degree-3 cochain")
    c.validate(x, b)
    if verify:
        _require_cocycle(x, b, c)
    dM, dB = x.module.dim, b.base.dim
    a = TwoTermAInfty(
        x.algebra.dim, dB, LinearMap.zero(dB, x.algebra.dim),
        (x.algebra.mu, b.base.left, b.base.right), c.alpha)
    m = AInftyBimodule(
        a, dM, b.fiber.dim, LinearMap.zero(b.fiber.dim, dM),
        (x.module.left, b.fiber.left, b.right_pair),
        (x.module.right, b.left_pair, b.fiber.right),
        c.beta)
    r = HomotopyRRBOperator(
        x.rop, b.sop,
        StructureConstants.build(
            dM, dM, dB,
            lambda u, v: c.gamma(basis_vec(dM * dM, u * dM + v))))
    return a, m, r
