"""Associative algebras, bimodules and dendriform structures by structure constants.

All products and actions are bilinear maps stored as rank-3 rational tensors
c[i][j][k]: the product of the i-th and j-th input basis vectors has k-th
output coordinate c[i][j][k].  Axioms are multilinear, so every check below
verifies them on basis tuples only; that is equivalent to the full statement.

Hochschild cochains of degree k are linear maps A^{(x) k} -> M, flattened with
the big-endian convention of linalg.TensorIndex.  Degree 0 cochains are
elements of M, i.e. maps from the empty tensor product (the base field).
"""

from __future__ import annotations

from .linalg import (
    Matrix, Q, SparseBuilder, TensorIndex, ZERO, homology_dim,
)


def basis_vec(n, i):
    return tuple(Q(1) if j == i else Q(0) for j in range(n))


def zero_vec(n):
    return (Q(0),) * n


def add_vec(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale_vec(c, u):
    return tuple(c * a for a in u)


class Violation:
    """One failed axiom instance: which law, at which basis tuple, both sides."""

    __slots__ = ("law", "args", "lhs", "rhs")

    def __init__(self, law, args, lhs, rhs):
        self.law = law
        self.args = tuple(args)
        self.lhs = tuple(lhs)
        self.rhs = tuple(rhs)

    def __repr__(self):
        return (f"Violation({self.law} at {self.args}: "
                f"lhs={self.lhs} rhs={self.rhs})")


class Report:
    """Outcome of an axiom check: pass, or every violated basis tuple."""

    def __init__(self, subject, violations=()):
        self.subject = subject
        self.violations = list(violations)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def require(self, law, args, lhs, rhs):
        if tuple(lhs) != tuple(rhs):
            self.violations.append(Violation(law, args, lhs, rhs))

    def merge(self, other):
        self.violations.extend(other.violations)
        return self

    def describe(self):
        if self.ok:
            return f"{self.subject}: pass"
        lines = [f"{self.subject}: FAIL ({len(self.violations)} violations)"]
        for v in self.violations:
            lines.append(f"  {v.law} at {v.args}: lhs={v.lhs} rhs={v.rhs}")
        return "\n".join(lines)


class ShapeError(ValueError):
    """Tensor or matrix dimensions inconsistent with the declared spaces."""


class StructuralError(RuntimeError):
    """An internal mathematical invariant failed: implementation bug signal."""


class StructureConstants:
    """Bilinear map U (x) V -> W as the tensor c[i][j][k]."""

    __slots__ = ("dim_left", "dim_right", "dim_out", "data")

    def __init__(self, dim_left, dim_right, dim_out, data):
        data = tuple(tuple(tuple(Q(x) for x in row) for row in plane)
                     for plane in data)
        if len(data) != dim_left or any(len(p) != dim_right for p in data) \
                or any(len(r) != dim_out for p in data for r in p):
            raise ShapeError(
                f"structure constants must be {dim_left}x{dim_right}x{dim_out}")
        self.dim_left = dim_left
        self.dim_right = dim_right
        self.dim_out = dim_out
        self.data = data

    @staticmethod
    def zero(dim_left, dim_right, dim_out):
        return StructureConstants(
            dim_left, dim_right, dim_out,
            [[[ZERO] * dim_out for _ in range(dim_right)]
             for _ in range(dim_left)])

    @staticmethod
    def build(dim_left, dim_right, dim_out, fn):
        """fn(i, j) -> output coordinate vector."""
        return StructureConstants(
            dim_left, dim_right, dim_out,
            [[list(fn(i, j)) for j in range(dim_right)]
             for i in range(dim_left)])

    def on_basis(self, i, j):
        return self.data[i][j]

    def __call__(self, x, y):
        assert len(x) == self.dim_left and len(y) == self.dim_right
        out = [ZERO] * self.dim_out
        for i, xi in enumerate(x):
            if not xi:
                continue
            plane = self.data[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, v in enumerate(plane[j]):
                    if v:
                        out[k] += c * v
        return tuple(out)

    def items(self):
        """Nonzero entries as (i, j, k, value)."""
        for i, plane in enumerate(self.data):
            for j, row in enumerate(plane):
                for k, v in enumerate(row):
                    if v:
                        yield i, j, k, v

    def is_zero(self):
        return all(not v for p in self.data for r in p for v in r)

    def __eq__(self, other):
        return (isinstance(other, StructureConstants)
                and self.data == other.data
                and (self.dim_left, self.dim_right, self.dim_out)
                == (other.dim_left, other.dim_right, other.dim_out))

    def __hash__(self):
        return hash(self.data)

    def __add__(self, other):
        assert (self.dim_left, self.dim_right, self.dim_out) == \
            (other.dim_left, other.dim_right, other.dim_out)
        return StructureConstants.build(
            self.dim_left, self.dim_right, self.dim_out,
            lambda i, j: add_vec(self.data[i][j], other.data[i][j]))

    def __neg__(self):
        return StructureConstants.build(
            self.dim_left, self.dim_right, self.dim_out,
            lambda i, j: scale_vec(Q(-1), self.data[i][j]))

    def __sub__(self, other):
        return self + (-other)

    def flip(self):
        """Swap the two inputs: c'[j][i][k] = c[i][j][k]."""
        return StructureConstants.build(
            self.dim_right, self.dim_left, self.dim_out,
            lambda j, i: self.data[i][j])


class LinearMap:
    """Linear map with explicit domain/codomain dims and a dense matrix."""

    __slots__ = ("domain_dim", "codomain_dim", "matrix")

    def __init__(self, domain_dim, codomain_dim, matrix):
        if matrix.rows != codomain_dim or matrix.cols != domain_dim:
            raise ShapeError(
                f"matrix is {matrix.rows}x{matrix.cols}, map needs "
                f"{codomain_dim}x{domain_dim}")
        self.domain_dim = domain_dim
        self.codomain_dim = codomain_dim
        self.matrix = matrix

    @staticmethod
    def zero(domain_dim, codomain_dim):
        return LinearMap(domain_dim, codomain_dim,
                         Matrix.zero(codomain_dim, domain_dim))

    @staticmethod
    def identity(n):
        return LinearMap(n, n, Matrix.identity(n))

    @staticmethod
    def from_matrix(matrix):
        return LinearMap(matrix.cols, matrix.rows, matrix)

    def __call__(self, vec):
        return self.matrix.apply(vec)

    def compose(self, inner):
        """self after inner."""
        assert inner.codomain_dim == self.domain_dim
        return LinearMap(inner.domain_dim, self.codomain_dim,
                         self.matrix * inner.matrix)

    def __add__(self, other):
        return LinearMap(self.domain_dim, self.codomain_dim,
                         self.matrix + other.matrix)

    def __neg__(self):
        return LinearMap(self.domain_dim, self.codomain_dim, -self.matrix)

    def __sub__(self, other):
        return self + (-other)

    def transpose(self):
        return LinearMap(self.codomain_dim, self.domain_dim,
                         self.matrix.transpose())

    def __eq__(self, other):
        return isinstance(other, LinearMap) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def default_names(prefix, dim):
    return tuple(f"{prefix}{i}" for i in range(dim))


class AssocAlgebra:
    """Finite-dimensional algebra (A, mu) by structure constants."""

    __slots__ = ("dim", "mu", "basis_names")

    def __init__(self, dim, mu, basis_names=None):
        if (mu.dim_left, mu.dim_right, mu.dim_out) != (dim, dim, dim):
            raise ShapeError("product tensor must be dim x dim x dim")
        self.dim = dim
        self.mu = mu
        self.basis_names = tuple(basis_names or default_names("e", dim))
        assert len(self.basis_names) == dim

    @staticmethod
    def zero(dim, basis_names=None):
        return AssocAlgebra(dim, StructureConstants.zero(dim, dim, dim),
                            basis_names)

    def multiply(self, x, y):
        return self.mu(x, y)


class Bimodule:
    """A-bimodule M: left action A (x) M -> M, right action M (x) A -> M."""

    __slots__ = ("over", "dim", "left", "right", "basis_names")

    def __init__(self, over, dim, left, right, basis_names=None):
        if (left.dim_left, left.dim_right, left.dim_out) != \
                (over.dim, dim, dim):
            raise ShapeError("left action tensor must be dimA x dimM x dimM")
        if (right.dim_left, right.dim_right, right.dim_out) != \
                (dim, over.dim, dim):
            raise ShapeError("right action tensor must be dimM x dimA x dimM")
        self.over = over
        self.dim = dim
        self.left = left
        self.right = right
        self.basis_names = tuple(basis_names or default_names("m", dim))
        assert len(self.basis_names) == dim

    @staticmethod
    def zero_actions(over, dim, basis_names=None):
        return Bimodule(over, dim,
                        StructureConstants.zero(over.dim, dim, dim),
                        StructureConstants.zero(dim, over.dim, dim),
                        basis_names)

    @staticmethod
    def adjoint(over, basis_names=None):
        """The algebra acting on itself by its own multiplication."""
        return Bimodule(over, over.dim, over.mu, over.mu,
                        basis_names or over.basis_names)

    def act_left(self, a, m):
        return self.left(a, m)

    def act_right(self, m, a):
        return self.right(m, a)


def check_associativity(alg):
    """(e_i e_j) e_k == e_i (e_j e_k) for all basis triples."""
    rep = Report("associativity")
    mu = alg.mu
    for i in range(alg.dim):
        for j in range(alg.dim):
            ij = mu.on_basis(i, j)
            for k in range(alg.dim):
                lhs = mu(ij, basis_vec(alg.dim, k))
                rhs = mu(basis_vec(alg.dim, i), mu.on_basis(j, k))
                rep.require("assoc", (i, j, k), lhs, rhs)
    return rep


def check_bimodule(mod):
    """The three compatibility identities of a bimodule, on basis triples."""
    rep = Report("bimodule")
    alg = mod.over
    dA, dM = alg.dim, mod.dim
    for i in range(dA):
        for j in range(dA):
            ij = alg.mu.on_basis(i, j)
            for w in range(dM):
                m = basis_vec(dM, w)
                a = basis_vec(dA, i)
                b = basis_vec(dA, j)
                # (a a') . m = a . (a' . m)
                rep.require("left_assoc", (i, j, w),
                            mod.left(ij, m), mod.left(a, mod.left(b, m)))
                # (a . m) . a' = a . (m . a')
                rep.require("middle_assoc", (i, w, j),
                            mod.right(mod.left(a, m), b),
                            mod.left(a, mod.right(m, b)))
                # (m . a) . a' = m . (a a')
                rep.require("right_assoc", (w, i, j),
                            mod.right(mod.right(m, a), b), mod.right(m, ij))
    return rep


def dual_bimodule(mod):
    """Dual actions (a.f)(m) = f(m.a) and (f.a)(m) = f(a.m)."""
    alg = mod.over
    dA, dM = alg.dim, mod.dim
    left = StructureConstants.build(
        dA, dM, dM, lambda a, v: tuple(mod.right.data[w][a][v]
                                       for w in range(dM)))
    right = StructureConstants.build(
        dM, dA, dM, lambda v, a: tuple(mod.left.data[a][w][v]
                                       for w in range(dM)))
    names = tuple(n + "*" for n in mod.basis_names)
    return Bimodule(alg, dM, left, right, names)


def semidirect_algebra(mod):
    """Algebra on A (+) M with (a,m)(a',m') = (a a', a.m' + m.a').

    Basis order: A basis first, then M basis.
    """
    alg = mod.over
    dA, dM = alg.dim, mod.dim
    n = dA + dM

    def product(i, j):
        out = [ZERO] * n
        if i < dA and j < dA:
            for k, v in enumerate(alg.mu.data[i][j]):
                out[k] = v
        elif i < dA:
            for k, v in enumerate(mod.left.data[i][j - dA]):
                out[dA + k] = v
        elif j < dA:
            for k, v in enumerate(mod.right.data[i - dA][j]):
                out[dA + k] = v
        return out

    names = alg.basis_names + mod.basis_names
    return AssocAlgebra(n, StructureConstants.build(n, n, n, product), names)


class HochschildCochain:
    """Degree-k cochain: a linear map A^{(x) k} -> M."""

    __slots__ = ("degree", "map")

    def __init__(self, degree, linmap, alg_dim=None):
        assert degree >= 0
        if alg_dim is not None and linmap.domain_dim != alg_dim ** degree:
            raise ShapeError(
                f"degree-{degree} cochain needs domain {alg_dim ** degree}")
        self.degree = degree
        self.map = linmap

    def vector(self):
        """Row-major flattening of the matrix: coordinate order (target, tuple)."""
        return self.map.matrix.entries

    @staticmethod
    def from_vector(degree, dim_dom, dim_cod, vec):
        return HochschildCochain(
            degree, LinearMap(dim_dom, dim_cod,
                              Matrix(dim_cod, dim_dom, vec)))


def hochschild_matrix(mod, k):
    """Matrix of the Hochschild differential C^k(A, M) -> C^{k+1}(A, M).

    Cochain coordinates are row-major matrix entries: index = w * dimA^k + t
    for target coordinate w and flattened input tuple t.
    """
    alg = mod.over
    dA, dM = alg.dim, mod.dim
    dom = dA ** k
    cod = dA ** (k + 1)
    out = SparseBuilder(dM * cod, dM * dom)
    if k == 0:
        # (delta m)(a) = a.m - m.a
        for a in range(dA):
            for w in range(dM):
                for v in range(dM):
                    out.add(w * dA + a, v,
                            mod.left.data[a][v][w] - mod.right.data[v][a][w])
        return out
    ti_out = TensorIndex((dA,) * (k + 1))
    ti_in = TensorIndex((dA,) * k)
    for t_out in range(cod):
        tup = ti_out.unflatten(t_out)
        # first term: a_1 . f(a_2 ... a_{k+1})
        t_in = ti_in.flatten(tup[1:])
        for w in range(dM):
            row = w * cod + t_out
            for v in range(dM):
                out.add(row, v * dom + t_in, mod.left.data[tup[0]][v][w])
        # middle terms: (-1)^i f(..., a_i a_{i+1}, ...)
        sign = Q(1)
        for i in range(k):
            sign = -sign
            prod = alg.mu.data[tup[i]][tup[i + 1]]
            for p, c in enumerate(prod):
                if not c:
                    continue
                t_in = ti_in.flatten(tup[:i] + (p,) + tup[i + 2:])
                for w in range(dM):
                    out.add(w * cod + t_out, w * dom + t_in, sign * c)
        # last term: (-1)^{k+1} f(a_1 ... a_k) . a_{k+1}
        sign = -sign
        t_in = ti_in.flatten(tup[:k])
        for w in range(dM):
            row = w * cod + t_out
            for v in range(dM):
                out.add(row, v * dom + t_in,
                        sign * mod.right.data[v][tup[k]][w])
    return out


def hochschild_differential(mod, k, cochain):
    """Apply the degree-k Hochschild differential to a cochain."""
    alg = mod.over
    if cochain.degree != k:
        raise ShapeError(f"cochain degree {cochain.degree} != {k}")
    if cochain.map.domain_dim != alg.dim ** k or \
            cochain.map.codomain_dim != mod.dim:
        raise ShapeError("cochain shape does not match (algebra, bimodule)")
    vec = hochschild_matrix(mod, k).apply(cochain.vector())
    return HochschildCochain.from_vector(
        k + 1, alg.dim ** (k + 1), mod.dim, vec)


def hochschild_cohomology_dim(mod, k):
    """dim H^k(A, M), with C^0 = M and the standard differentials."""
    assert k >= 0
    d_out = hochschild_matrix(mod, k).to_matrix()
    if k == 0:
        d_in = Matrix.zero(mod.dim * (mod.over.dim ** 0), 0)
    else:
        d_in = hochschild_matrix(mod, k - 1).to_matrix()
    return homology_dim(d_out, d_in)


class DendriformAlgebra:
    """Two products prec, succ whose axioms make prec + succ associative."""

    __slots__ = ("dim", "prec", "succ", "basis_names")

    def __init__(self, dim, prec, succ, basis_names=None):
        for t in (prec, succ):
            if (t.dim_left, t.dim_right, t.dim_out) != (dim, dim, dim):
                raise ShapeError("dendriform tensors must be dim^3")
        self.dim = dim
        self.prec = prec
        self.succ = succ
        self.basis_names = tuple(basis_names or default_names("x", dim))

    @staticmethod
    def zero(dim):
        z = StructureConstants.zero(dim, dim, dim)
        return DendriformAlgebra(dim, z, z)

    def star(self, x, y):
        return add_vec(self.prec(x, y), self.succ(x, y))


def check_dendriform(den):
    """The three splitting axioms on all basis triples.

    axiom1: (x < y) < z == x < (y * z)
    axiom2: (x > y) < z == x > (y < z)
    axiom3: (x * y) > z == x > (y > z)        (* = < + >)
    """
    rep = Report("dendriform")
    d = den.dim
    for i in range(d):
        x = basis_vec(d, i)
        for j in range(d):
            y = basis_vec(d, j)
            xy_prec = den.prec(x, y)
            xy_succ = den.succ(x, y)
            xy_star = add_vec(xy_prec, xy_succ)
            for k in range(d):
                z = basis_vec(d, k)
                rep.require("axiom1", (i, j, k),
                            den.prec(xy_prec, z), den.prec(x, den.star(y, z)))
                rep.require("axiom2", (i, j, k),
                            den.prec(xy_succ, z), den.succ(x, den.prec(y, z)))
                rep.require("axiom3", (i, j, k),
                            den.succ(xy_star, z), den.succ(x, den.succ(y, z)))
    return rep


def total_algebra(den):
    """The associative algebra with product prec + succ."""
    return AssocAlgebra(den.dim, den.prec + den.succ, den.basis_names)


class DendriformRepresentation:
    """Representation space E of a dendriform algebra D.

    Four actions: left_prec, left_succ: D (x) E -> E and right_prec,
    right_succ: E (x) D -> E, subject to the nine identities obtained from the
    three dendriform axioms by letting one argument range over E.
    """

    __slots__ = ("over", "dim", "left_prec", "left_succ", "right_prec",
                 "right_succ", "basis_names")

    def __init__(self, over, dim, left_prec, left_succ, right_prec,
                 right_succ, basis_names=None):
        for t in (left_prec, left_succ):
            if (t.dim_left, t.dim_right, t.dim_out) != (over.dim, dim, dim):
                raise ShapeError("left action tensors must be dimD x dimE x dimE")
        for t in (right_prec, right_succ):
            if (t.dim_left, t.dim_right, t.dim_out) != (dim, over.dim, dim):
                raise ShapeError("right action tensors must be dimE x dimD x dimE")
        self.over = over
        self.dim = dim
        self.left_prec = left_prec
        self.left_succ = left_succ
        self.right_prec = right_prec
        self.right_succ = right_succ
        self.basis_names = tuple(basis_names or default_names("v", dim))

    @staticmethod
    def zero(over, dim):
        return DendriformRepresentation(
            over, dim,
            StructureConstants.zero(over.dim, dim, dim),
            StructureConstants.zero(over.dim, dim, dim),
            StructureConstants.zero(dim, over.dim, dim),
            StructureConstants.zero(dim, over.dim, dim))

    @staticmethod
    def adjoint(over):
        """D acting on itself by its own dendriform products."""
        return DendriformRepresentation(
            over, over.dim, over.prec, over.succ, over.prec, over.succ,
            over.basis_names)


def _square_zero_dendriform(rep):
    """Dendriform-shaped structure on D (+) E, zero on E (x) E.

    Mixed products use the four action tensors; this encodes the nine
    representation identities: evaluating the three dendriform axioms on
    tuples with exactly one E slot reproduces, slot by slot, each axiom with
    one argument replaced by a representation element, which is exactly how
    the identity list is generated.  Tuples with two or more E slots vanish
    identically on both sides, so nothing extra is imposed.
    """
    dD, dE = rep.over.dim, rep.dim
    n = dD + dE

    def embed(tensor, row_off, col_off):
        def fn(i, j):
            out = [ZERO] * n
            if row_off <= i < row_off + tensor.dim_left and \
                    col_off <= j < col_off + tensor.dim_right:
                for k, v in enumerate(
                        tensor.data[i - row_off][j - col_off]):
                    out[dD + k] = v  # outputs land in the E block
            return out
        return fn

    def combine(pure, left_act, right_act):
        def fn(i, j):
            if i < dD and j < dD:
                out = [ZERO] * n
                for k, v in enumerate(pure.data[i][j]):
                    out[k] = v
                return out
            if i < dD:
                return embed(left_act, 0, dD)(i, j)
            if j < dD:
                return embed(right_act, dD, 0)(i, j)
            return [ZERO] * n
        return fn

    den = rep.over
    prec = StructureConstants.build(
        n, n, n, combine(den.prec, rep.left_prec, rep.right_prec))
    succ = StructureConstants.build(
        n, n, n, combine(den.succ, rep.left_succ, rep.right_succ))
    return DendriformAlgebra(n, prec, succ)


def check_dendriform_representation(rep):
    """The nine identities, generated mechanically by slot substitution."""
    big = _square_zero_dendriform(rep)
    dD = rep.over.dim
    n = big.dim
    out = Report("dendriform_representation")
    for i in range(n):
        x = basis_vec(n, i)
        for j in range(n):
            y = basis_vec(n, j)
            xy_prec = big.prec(x, y)
            xy_succ = big.succ(x, y)
            for k in range(n):
                # exactly one of the three slots in the E block
                if (i >= dD) + (j >= dD) + (k >= dD) != 1:
                    continue
                z = basis_vec(n, k)
                slot = "E@" + str([i >= dD, j >= dD, k >= dD].index(True) + 1)
                out.require(f"axiom1[{slot}]", (i, j, k),
                            big.prec(xy_prec, z),
                            big.prec(x, big.star(y, z)))
                out.require(f"axiom2[{slot}]", (i, j, k),
                            big.prec(xy_succ, z),
                            big.succ(x, big.prec(y, z)))
                out.require(f"axiom3[{slot}]", (i, j, k),
                            big.succ(add_vec(xy_prec, xy_succ), z),
                            big.succ(x, big.succ(y, z)))
    return out
