"""Small hand-built structures shared across test modules."""

from rotabaxter.algebra import (
    AssocAlgebra, Bimodule, LinearMap, StructureConstants,
)
from rotabaxter.linalg import Matrix, Q
from rotabaxter.rrb import RelativeRBAlgebra


def sc(dim_left, dim_right, dim_out, entries):
    """Structure constants from a sparse {(i,j,k): value} dict."""
    t = StructureConstants.zero(dim_left, dim_right, dim_out)
    data = [[[v for v in row] for row in plane] for plane in t.data]
    for (i, j, k), v in entries.items():
        data[i][j][k] = Q(v)
    return StructureConstants(dim_left, dim_right, dim_out, data)


def linmap(rows):
    return LinearMap.from_matrix(Matrix.from_rows([[Q(x) for x in r]
                                                   for r in rows]))


def field_algebra():
    """The base field as a 1-dimensional algebra, e.e = e."""
    return AssocAlgebra(1, sc(1, 1, 1, {(0, 0, 0): 1}))


def dual_numbers():
    """k[x]/(x^2), basis (1, x)."""
    return AssocAlgebra(2, sc(2, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1,
                                        (1, 0, 1): 1}))


def truncated_cubic():
    """k[x]/(x^3), basis (1, x, x^2)."""
    e = {}
    for i in range(3):
        for j in range(3):
            if i + j < 3:
                e[(i, j, i + j)] = 1
    return AssocAlgebra(3, sc(3, 3, 3, e))


def zero_rrb(dim_a=1, dim_m=1):
    """All products, actions and operator identically zero."""
    alg = AssocAlgebra.zero(dim_a)
    return RelativeRBAlgebra.zero_operator(Bimodule.zero_actions(alg, dim_m))


def field_adjoint_rrb():
    """A = k with e.e = e, M = adjoint, R = 0."""
    return RelativeRBAlgebra.zero_operator(Bimodule.adjoint(field_algebra()))


def one_sided_rrb():
    """A = k, M 1-dim with only the right action m.e = m, R = identity.

    Passes the relative Rota-Baxter identity: R(m)R(m) = e and
    R(R(m).m + m.R(m)) = R(0 + m) = e.
    """
    alg = field_algebra()
    mod = Bimodule(alg, 1, sc(1, 1, 1, {}), sc(1, 1, 1, {(0, 0, 0): 1}))
    return RelativeRBAlgebra(alg, mod, linmap([[1]]))


def nilpotent_shift_rrb():
    """A = k[x]/(x^2), M = adjoint, R(1) = x, R(x) = 0.

    Both sides of the relative Rota-Baxter identity land in x^2 = 0.
    """
    alg = dual_numbers()
    return RelativeRBAlgebra(alg, Bimodule.adjoint(alg),
                             linmap([[0, 0], [1, 0]]))
